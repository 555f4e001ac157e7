"""
Profile files: plot-ready CSV of a matrix profile.

The first line records the window length and join kind as a comment
(``# m=<m>,kind=<kind>``), followed by a header row and one row per window.
"""

import io
import sys
from contextlib import nullcontext
from pathlib import Path
from typing import Dict, Optional, Union

import numpy as np
import pandas as pd

from ..errors import ParseError, SchemaError
from ..profiles.models import JoinKind, MatrixProfile


COLUMNS = ["window_start", "distance", "nn_index"]

PathLike = Union[str, Path]


def profile_to_frame(profile: MatrixProfile) -> pd.DataFrame:
    """Tabular form of a matrix profile."""
    return pd.DataFrame({
        "window_start": np.arange(len(profile), dtype=np.int64),
        "distance": profile.values,
        "nn_index": profile.indices
    }, columns=COLUMNS)


def write_profile(profile: MatrixProfile, destination: Optional[PathLike] = None) -> None:
    """Write a profile file, or the same text to standard output when no path (or '-') is given."""
    if destination is None or str(destination) == "-":
        handle = nullcontext(sys.stdout)
    else:
        handle = open(destination, "w", encoding="utf-8", newline="")
    with handle as out:
        out.write(f"# m={profile.m},kind={profile.kind.value}\n")
        profile_to_frame(profile).to_csv(out, index=False)
        out.flush()


def _parse_metadata(line: str) -> Dict[str, str]:
    if not line.startswith("#"):
        raise ParseError("Missing '# m=...,kind=...' metadata line", line=1)
    fields = {}
    for part in line[1:].strip().split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise ParseError("Malformed metadata entry", line=1, field=part.strip())
        fields[key.strip()] = value.strip()
    for name in ("m", "kind"):
        if name not in fields:
            raise ParseError("Metadata entry missing", line=1, field=name)
    return fields


def read_profile(path: PathLike) -> MatrixProfile:
    """
    Read a profile file.

    Raises:
        ParseError: malformed metadata or rows
        SchemaError: wrong columns or non-contiguous window starts
    """
    try:
        text = Path(path).read_bytes().decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("Profile file is not valid UTF-8 text", details={"offset": e.start}) from e

    first, _, body = text.partition("\n")
    metadata = _parse_metadata(first.strip())
    try:
        m = int(metadata["m"])
    except ValueError as e:
        raise ParseError("Window length is not an integer", line=1, field="m") from e
    try:
        kind = JoinKind(metadata["kind"])
    except ValueError as e:
        raise ParseError(f"Unknown join kind {metadata['kind']!r}", line=1, field="kind") from e

    try:
        frame = pd.read_csv(
            io.StringIO(body),
            dtype={"window_start": np.int64, "distance": np.float64, "nn_index": np.int64},
            float_precision="round_trip"
        )
    except pd.errors.EmptyDataError as e:
        raise ParseError("Profile file has no header row", line=2) from e
    except (pd.errors.ParserError, ValueError, TypeError, OverflowError) as e:
        raise ParseError(f"Malformed profile rows: {e}") from e

    if list(frame.columns) != COLUMNS:
        raise SchemaError(
            f"Expected columns {COLUMNS}",
            details={"columns": [str(c) for c in frame.columns]}
        )
    if frame.empty:
        raise SchemaError("Profile file has no rows")
    if not np.array_equal(frame["window_start"].to_numpy(), np.arange(len(frame))):
        raise SchemaError("window_start must run 0, 1, ..., n - m")
    if frame["distance"].isna().any():
        raise SchemaError("Missing distance values")

    return MatrixProfile(
        values=frame["distance"].to_numpy(dtype=np.float64),
        indices=frame["nn_index"].to_numpy(dtype=np.int64),
        kind=kind,
        m=m
    )
