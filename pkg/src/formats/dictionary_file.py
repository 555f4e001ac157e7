"""
Dictionary files: a self-contained JSON document holding the learned segments
inline, their source offsets and the certified error bound.
"""

import json
import math
from pathlib import Path
from typing import Any, Dict, List, Union

from ..dictionary.models import Dictionary, Segment
from ..errors import ParseError, SchemaError, VersionError


FORMAT_VERSION = 1
SPACE_SAVING_TOLERANCE = 1e-12

REQUIRED_FIELDS = ("format_version", "m", "k", "source_length", "space_saving", "e_max", "core_starts", "segments")
OPTIONAL_FIELDS = ("stop_reason", "iterations", "constant_threshold")
SEGMENT_FIELDS = ("start", "length", "values")

PathLike = Union[str, Path]


def dictionary_to_document(dictionary: Dictionary) -> Dict[str, Any]:
    """Serializable form of a dictionary."""
    return {
        "format_version": FORMAT_VERSION,
        "m": dictionary.m,
        "k": float(dictionary.k),
        "source_length": dictionary.source_length,
        "space_saving": dictionary.space_saving,
        "e_max": dictionary.e_max,
        "core_starts": list(dictionary.core_starts),
        "segments": [
            {
                "start": segment.start,
                "length": len(segment),
                "values": [float(value) for value in segment.values]
            }
            for segment in dictionary.segments
        ],
        "stop_reason": dictionary.stop_reason,
        "iterations": dictionary.iterations,
        "constant_threshold": dictionary.constant_threshold
    }


def write_dictionary(dictionary: Dictionary, path: PathLike) -> None:
    """Write a dictionary file (reals in shortest round-trip form)."""
    text = json.dumps(dictionary_to_document(dictionary), allow_nan=False, indent=1)
    Path(path).write_text(text + "\n", encoding="utf-8")


def _reject_constant(token: str):
    raise ValueError(f"non-finite constant {token}")


def _integer(document: Dict[str, Any], name: str, minimum: int, where: str = "") -> int:
    value = document[name]
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaError(f"Field '{where}{name}' must be an integer", details={"field": where + name})
    if value < minimum:
        raise SchemaError(
            f"Field '{where}{name}' must be >= {minimum}",
            details={"field": where + name, "value": value}
        )
    return value


def _real(value: Any, name: str) -> float:
    if not isinstance(value, bool) and isinstance(value, (int, float)):
        try:
            if math.isfinite(value):
                return float(value)
        except OverflowError:
            pass
    raise SchemaError(f"Field '{name}' must be a finite number", details={"field": name})


def _check_fields(document: Dict[str, Any], required, optional, where: str) -> None:
    unknown = sorted(set(document) - set(required) - set(optional))
    if unknown:
        raise VersionError(
            f"Unknown fields for format version {FORMAT_VERSION}: {', '.join(unknown)}",
            details={"fields": unknown, "where": where or "document"}
        )
    missing = [name for name in required if name not in document]
    if missing:
        raise SchemaError(
            f"Missing fields: {', '.join(missing)}",
            details={"fields": missing, "where": where or "document"}
        )


def _parse_segments(raw: Any) -> List[Segment]:
    if not isinstance(raw, list):
        raise SchemaError("Field 'segments' must be a list", details={"field": "segments"})

    segments = []
    for position, item in enumerate(raw):
        where = f"segments[{position}]."
        if not isinstance(item, dict):
            raise SchemaError(f"Segment {position} must be an object", details={"segment": position})
        _check_fields(item, SEGMENT_FIELDS, (), where)
        start = _integer(item, "start", 0, where)
        length = _integer(item, "length", 1, where)
        values = item["values"]
        if not isinstance(values, list):
            raise SchemaError(f"Field '{where}values' must be a list", details={"segment": position})
        if len(values) != length:
            raise SchemaError(
                f"Segment {position} declares {length} samples but holds {len(values)}",
                details={"segment": position, "length": length, "values": len(values)}
            )
        segments.append(Segment(start=start, values=[_real(v, where + "values") for v in values]))
    return segments


def document_to_dictionary(document: Any) -> Dictionary:
    """
    Validate a parsed document and build the Dictionary.

    Raises:
        VersionError: unsupported version or unknown fields
        SchemaError: invariant violations
    """
    if not isinstance(document, dict):
        raise SchemaError("Dictionary document must be a JSON object")
    version = document.get("format_version")
    if version != FORMAT_VERSION or isinstance(version, bool):
        raise VersionError(
            f"Unsupported format_version {version!r}",
            details={"format_version": version, "supported": FORMAT_VERSION}
        )
    _check_fields(document, REQUIRED_FIELDS, OPTIONAL_FIELDS, "")

    m = _integer(document, "m", 2)
    k = _real(document["k"], "k")
    if k < 0:
        raise SchemaError("Field 'k' must be non-negative", details={"field": "k", "value": k})
    source_length = _integer(document, "source_length", 1)
    space_saving = _real(document["space_saving"], "space_saving")

    e_max = document["e_max"]
    if e_max is not None:
        e_max = _real(e_max, "e_max")
        if e_max < 0:
            raise SchemaError("Field 'e_max' must be non-negative", details={"field": "e_max", "value": e_max})

    core_starts = document["core_starts"]
    if not isinstance(core_starts, list) or any(
        isinstance(c, bool) or not isinstance(c, int) or c < 0 for c in core_starts
    ):
        raise SchemaError("Field 'core_starts' must be a list of non-negative integers", details={"field": "core_starts"})

    stop_reason = document.get("stop_reason")
    if stop_reason is not None and not isinstance(stop_reason, str):
        raise SchemaError("Field 'stop_reason' must be a string", details={"field": "stop_reason"})
    iterations = _integer(document, "iterations", 0) if "iterations" in document else len(core_starts)
    constant_threshold = document.get("constant_threshold")
    if constant_threshold is not None:
        constant_threshold = _real(constant_threshold, "constant_threshold")

    dictionary = Dictionary(
        segments=tuple(_parse_segments(document["segments"])),
        m=m,
        k=k,
        source_length=source_length,
        core_starts=tuple(core_starts),
        e_max=e_max,
        stop_reason=stop_reason,
        iterations=iterations,
        constant_threshold=constant_threshold
    )
    if abs(dictionary.space_saving - space_saving) > SPACE_SAVING_TOLERANCE:
        raise SchemaError(
            "Stored space_saving does not match the segments",
            details={"stored": space_saving, "computed": dictionary.space_saving}
        )
    return dictionary


def read_dictionary(path: PathLike) -> Dictionary:
    """
    Read and validate a dictionary file.

    Raises:
        ParseError: not valid JSON text
        VersionError: unsupported version or unknown fields
        SchemaError: invariant violations
    """
    data = Path(path).read_bytes()
    if not data.strip():
        raise ParseError("Dictionary file is empty", line=1)
    try:
        document = json.loads(data.decode("utf-8"), parse_constant=_reject_constant)
    except UnicodeDecodeError as e:
        raise ParseError("Dictionary file is not valid UTF-8 text", details={"offset": e.start}) from e
    except json.JSONDecodeError as e:
        raise ParseError(f"Invalid JSON: {e.msg}", line=e.lineno, details={"column": e.colno}) from e
    except (ValueError, RecursionError) as e:
        raise ParseError(f"Invalid JSON: {e}") from e
    return document_to_dictionary(document)
