# -*- coding: utf-8 -*-
import sys


class Colors:
    """
    ANSI color helpers for console labels. Colors are dropped when
    stderr is not a terminal so that redirected logs stay readable
    """

    enabled: bool = True

    def __init__(self, enabled: bool = None) -> None:
        if enabled is None:
            enabled = hasattr(sys.stderr, "isatty") and sys.stderr.isatty()
        self.enabled = enabled

    def red(self, *msg) -> str:
        return self._msg("\033[91m", *msg)

    def blue(self, *msg) -> str:
        return self._msg("\033[94m", *msg)

    def green(self, *msg) -> str:
        return self._msg("\033[92m", *msg)

    def yellow(self, *msg) -> str:
        return self._msg("\033[93m", *msg)

    def purple(self, *msg) -> str:
        return self._msg("\033[95m", *msg)

    def bold(self, *msg) -> str:
        return self._msg("\033[1m", *msg)

    def _msg(self, color: str, *msg) -> str:
        txt = " ".join(str(m) for m in msg)
        if not self.enabled:
            return txt
        return color + txt + "\033[0m"


colors = Colors()
