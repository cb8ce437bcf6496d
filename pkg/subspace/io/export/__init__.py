import json
import sys
from typing import Dict

import pandas as pd

from subspace.utils.messages import msg_end, msg_start

FLOAT_FORMAT = "%.17g"


def export_csv(df: pd.DataFrame, filepath: str = None, **kwargs) -> None:
    """
    Writes a frame as CSV with LF line endings and 17 significant digits.
    Empty cells stand for missing values. Without ``filepath`` the CSV
    goes to stdout
    """
    options = dict(index=False, float_format=FLOAT_FORMAT, lineterminator="\n", na_rep="")
    options.update(kwargs)
    if filepath is None:
        df.to_csv(sys.stdout, **options)
        return
    try:
        msg_start("Saving data to " + filepath + " ...")
        df.to_csv(filepath, encoding="utf-8", **options)
        msg_end("Data exported to", filepath)
    except OSError as e:
        raise OSError("Can not write csv file " + filepath) from e


def export_json(doc: Dict, filepath: str = None) -> None:
    """
    Writes a JSON document as UTF-8, to stdout without ``filepath``
    """
    text = json.dumps(doc, indent=2, ensure_ascii=False, allow_nan=False)
    if filepath is None:
        sys.stdout.write(text + "\n")
        return
    try:
        msg_start("Saving report to " + filepath + " ...")
        with open(filepath, "w", encoding="utf-8", newline="\n") as f:
            f.write(text + "\n")
        msg_end("Report exported to", filepath)
    except OSError as e:
        raise OSError("Can not write json file " + filepath) from e
