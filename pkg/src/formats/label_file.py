"""
Label files: CSV of anomalous regions with half-open ``start,end`` sample indices.
"""

import io
from pathlib import Path
from typing import Iterable, List, Optional, Tuple, Union

import numpy as np
import pandas as pd

from ..dictionary.segments import merge_segments
from ..errors import ParseError, SchemaError


COLUMNS = ["start", "end"]

PathLike = Union[str, Path]
Region = Tuple[int, int]


def write_labels(regions: Iterable[Region], path: PathLike) -> None:
    """Write regions as a label file."""
    frame = pd.DataFrame([(int(s), int(e)) for s, e in regions], columns=COLUMNS)
    frame.to_csv(path, index=False)


def read_labels(path: PathLike, n: Optional[int] = None) -> List[Region]:
    """
    Read a label file and normalize overlapping regions.

    Args:
        path: Label file
        n: Series length the regions refer to (bounds check when given)

    Returns:
        Sorted, disjoint regions

    Raises:
        ParseError: malformed rows
        SchemaError: wrong columns or regions outside [0, n)
    """
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("Label file is not valid UTF-8 text", details={"offset": e.start}) from e

    try:
        frame = pd.read_csv(io.StringIO(text), dtype=np.int64)
    except pd.errors.EmptyDataError as e:
        raise ParseError("Label file has no header row", line=1) from e
    except (pd.errors.ParserError, ValueError, TypeError, OverflowError) as e:
        raise ParseError(f"Malformed label rows: {e}") from e

    if list(frame.columns) != COLUMNS:
        raise SchemaError(
            f"Expected columns {COLUMNS}",
            details={"columns": [str(c) for c in frame.columns]}
        )

    regions = []
    # data rows start on line 2
    for line_no, (start, end) in enumerate(frame.itertuples(index=False, name=None), start=2):
        start, end = int(start), int(end)
        if start < 0 or end <= start or (n is not None and end > n):
            raise SchemaError(
                f"Region [{start}, {end}) is invalid",
                details={"line": line_no, "start": start, "end": end, "n": n}
            )
        regions.append((start, end))
    return merge_segments(regions)
