import datetime
import sys

from dateutil.relativedelta import relativedelta

from subspace.core.env import settings
from .colors import colors

START_TIME = None


def _unpack_msg(*msg) -> str:
    """
    Convert all message elements to string
    """
    return " ".join(str(m) for m in msg)


def _msg(label: str, *msg) -> None:
    """
    Prints a message with a label on stderr. Stdout is reserved
    for the reports
    """
    if settings.quiet is True:
        return
    print("[" + label + "] " + _unpack_msg(*msg), file=sys.stderr)


def msg_info(*msg) -> None:
    """
    Prints a message with an info prefix
    """
    _msg(colors.blue("INFO"), *msg)


def msg_start(*msg) -> None:
    """
    Prints a start message and starts the timer used by ``msg_end``
    """
    global START_TIME
    START_TIME = datetime.datetime.now()
    _msg(colors.purple("START"), *msg)


def _endmsg(rd: relativedelta) -> str:
    """
    Returns an end message with elapsed time
    """
    msg = ""
    if rd.hours > 0:
        s = "s" if rd.hours > 1 else ""
        msg += colors.bold(str(rd.hours)) + " hour" + s + " "
    if rd.minutes > 0:
        s = "s" if rd.minutes > 1 else ""
        msg += colors.bold(str(rd.minutes)) + " minute" + s + " "
    milliseconds = int(rd.microseconds / 1000)
    msg += colors.bold(str(rd.seconds) + "." + str(milliseconds).zfill(3))
    msg += " seconds"
    return msg


def msg_end(*msg) -> None:
    """
    Prints an end message with the time elapsed since ``msg_start``
    """
    global START_TIME
    if START_TIME is None:
        msg_warning("No start time set: use msg_start() before msg_end()")
        return
    rd = relativedelta(datetime.datetime.now(), START_TIME)
    msg += ("in " + _endmsg(rd),)
    _msg(colors.purple("END"), *msg)
    START_TIME = None


def msg_warning(*msg) -> None:
    """
    Prints a warning
    """
    _msg(colors.yellow("WARNING"), *msg)


def msg_ok(*msg) -> None:
    """
    Prints a message with an ok prefix
    """
    _msg(colors.green("OK"), *msg)


def msg_fail(*msg) -> None:
    """
    Prints a failure
    """
    _msg(colors.red("FAIL"), *msg)
