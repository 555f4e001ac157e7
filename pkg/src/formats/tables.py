"""
Plot-ready CSV tables for experiment and report output.
"""

import sys
from pathlib import Path
from typing import Optional, Union

import pandas as pd


def write_table(frame: pd.DataFrame, destination: Optional[Union[str, Path]] = None) -> None:
    """Write a table as CSV to a path, or to standard output when none (or '-') is given."""
    if destination is None or str(destination) == "-":
        frame.to_csv(sys.stdout, index=False)
        sys.stdout.flush()
        return
    frame.to_csv(destination, index=False)
