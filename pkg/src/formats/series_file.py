"""
Series files.

Text form: one decimal sample per line, optionally preceded by a ``# n=<count>``
header. Binary form: magic ``MPD1``, little-endian int64 sample count, then the
samples as little-endian float64.
"""

from pathlib import Path
from typing import Union

import numpy as np

from ..errors import ParseError
from ..series.core import SeriesLike, TimeSeries, as_series


MAGIC = b"MPD1"
HEADER_SIZE = len(MAGIC) + 8
COUNT_DTYPE = np.dtype("<i8")
SAMPLE_DTYPE = np.dtype("<f8")

PathLike = Union[str, Path]


def write_series(series: SeriesLike, path: PathLike, binary: bool = False) -> None:
    """
    Write a series in text (default) or binary form.

    Text samples use shortest round-trip decimal formatting.
    """
    series = as_series(series)
    path = Path(path)
    if binary:
        payload = (
            MAGIC
            + np.array([series.n], dtype=COUNT_DTYPE).tobytes()
            + series.values.astype(SAMPLE_DTYPE).tobytes()
        )
        path.write_bytes(payload)
        return

    lines = [f"# n={series.n}"]
    lines.extend(repr(float(value)) for value in series.values)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _read_binary(data: bytes) -> TimeSeries:
    if len(data) < HEADER_SIZE:
        raise ParseError("Truncated binary header", field="length")
    count = int(np.frombuffer(data, dtype=COUNT_DTYPE, count=1, offset=len(MAGIC))[0])
    expected = HEADER_SIZE + count * SAMPLE_DTYPE.itemsize
    if count <= 0 or len(data) != expected:
        raise ParseError(
            "Binary sample count does not match the payload",
            field="length",
            details={"count": count, "bytes": len(data)}
        )
    return TimeSeries(np.frombuffer(data, dtype=SAMPLE_DTYPE, offset=HEADER_SIZE))


def _parse_header(line: str, line_no: int) -> int:
    body = line[1:].strip()
    key, sep, value = body.partition("=")
    if not sep or key.strip() != "n":
        raise ParseError("Unrecognized header", line=line_no, field="n")
    try:
        count = int(value.strip())
    except ValueError as e:
        raise ParseError("Header count is not an integer", line=line_no, field="n") from e
    if count < 0:
        raise ParseError("Header count is negative", line=line_no, field="n")
    return count


def _read_text(data: bytes) -> TimeSeries:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError("Series file is not valid UTF-8 text", details={"offset": e.start}) from e

    declared = None
    samples = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            if declared is not None or samples:
                raise ParseError("Header must precede all samples", line=line_no, field="n")
            declared = _parse_header(line, line_no)
            continue
        try:
            samples.append(float(line))
        except ValueError as e:
            raise ParseError("Sample is not a decimal number", line=line_no, field="value") from e

    if not samples:
        raise ParseError("Series file holds no samples")
    if declared is not None and declared != len(samples):
        raise ParseError(
            f"Header declares {declared} samples but the file holds {len(samples)}",
            field="n",
            details={"declared": declared, "found": len(samples)}
        )
    return TimeSeries(np.array(samples, dtype=np.float64))


def read_series(path: PathLike) -> TimeSeries:
    """
    Read a series file, detecting the binary form by its magic.

    Raises:
        ParseError: empty, truncated or malformed content
        NonFiniteInput: a sample is NaN or infinite
    """
    data = Path(path).read_bytes()
    if not data:
        raise ParseError("Series file is empty", line=1)
    if data.startswith(MAGIC):
        return _read_binary(data)
    return _read_text(data)
