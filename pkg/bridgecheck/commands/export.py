"""
Result-file export.

Tables are written as CSV (pandas) or as a JSON mirror with identical
field names (orjson). Every float is rounded to 6 significant digits, rates
are decimals in [0, 1], and line endings are LF, so result files are
byte-identical across runs with the same seed.
"""

import logging
import math
from pathlib import Path
from typing import Any, Dict, Iterable, List, Sequence, Union

import orjson
import pandas as pd
from pydantic import ValidationError

from ..config import settings
from ..errors import ManifestFormatError
from ..models import DynamicsTrace
from ..schemas import (
    GAP_COLUMNS,
    RESULT_COLUMNS,
    TRACE_COLUMNS,
    GapRow,
    ResultRow,
    RunManifest,
    TraceRow,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]
FORMATS = ("csv", "json")
JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE


def round_sig(value: float, digits: int = settings.FLOAT_SIG_DIGITS) -> float:
    """Round to ``digits`` significant digits, as printed in CSV cells."""
    return float(f"{value:.{digits}g}")


def _rounded(record: Dict[str, Any]) -> Dict[str, Any]:
    return {
        key: round_sig(value) if isinstance(value, float) else value
        for key, value in record.items()
    }


def _plain(value: Any) -> Any:
    """numpy scalars to Python values, NaN to None."""
    if hasattr(value, "item"):
        value = value.item()
    if isinstance(value, float) and math.isnan(value):
        return None
    return value


def write_table(
    path: PathLike,
    records: Sequence[Dict[str, Any]],
    columns: List[str],
    fmt: str = "csv",
) -> Path:
    """
    Write records as CSV or JSON.

    Args:
        path: Output file; its suffix is replaced by ``fmt``
        records: Rows keyed by column name
        columns: Column order
        fmt: ``csv`` or ``json``

    Returns:
        Path: The file written
    """
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format '{fmt}', expected csv or json")
    target = Path(path).with_suffix(f".{fmt}")
    target.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        frame = pd.DataFrame(list(records), columns=columns)
        frame.to_csv(
            target,
            index=False,
            float_format=settings.float_format,
            lineterminator="\n",
        )
    else:
        rows = [_rounded({column: record[column] for column in columns}) for record in records]
        target.write_bytes(orjson.dumps(rows, option=JSON_OPTIONS))
    logger.info(f"Wrote {len(records)} rows to {target}")
    return target


def read_table(path: PathLike) -> List[Dict[str, Any]]:
    """Read a table written by ``write_table`` back into plain records."""
    source = Path(path)
    if source.suffix == ".json":
        return orjson.loads(source.read_bytes())
    frame = pd.read_csv(source, dtype={"experiment": str, "strategy": str})
    return [
        {key: _plain(value) for key, value in record.items()}
        for record in frame.to_dict(orient="records")
    ]


def write_results(path: PathLike, rows: Iterable[ResultRow], fmt: str = "csv") -> Path:
    records = [row.model_dump(by_alias=True, mode="json") for row in rows]
    return write_table(path, records, RESULT_COLUMNS, fmt)


def read_results(path: PathLike) -> List[ResultRow]:
    return [ResultRow.model_validate(record) for record in read_table(path)]


def write_trace(
    path: PathLike,
    standard: DynamicsTrace,
    weighted: DynamicsTrace,
    fmt: str = "csv",
) -> Path:
    """Side-by-side Standard / Weighted trace: ``step,p_standard,p_weighted``."""
    if len(standard.probs) != len(weighted.probs):
        raise ValueError("Traces differ in length")
    records = [
        TraceRow(step=step, p_standard=ps, p_weighted=pw).model_dump()
        for step, (ps, pw) in enumerate(zip(standard.probs, weighted.probs))
    ]
    return write_table(path, records, TRACE_COLUMNS, fmt)


def write_gap(path: PathLike, rows: Iterable[GapRow], fmt: str = "csv") -> Path:
    return write_table(path, [row.model_dump() for row in rows], GAP_COLUMNS, fmt)


def manifest_path(result_path: PathLike) -> Path:
    result = Path(result_path)
    return result.with_name(f"{result.stem}.manifest.json")


def write_manifest(result_path: PathLike, manifest: RunManifest) -> Path:
    target = manifest_path(result_path)
    target.write_bytes(orjson.dumps(manifest.model_dump(mode="json"), option=JSON_OPTIONS))
    logger.info(f"Wrote manifest {target}")
    return target


def read_manifest(path: PathLike) -> RunManifest:
    """
    Load a manifest written by ``write_manifest``.

    Raises:
        ManifestFormatError: not JSON or not a manifest
    """
    try:
        payload = orjson.loads(Path(path).read_bytes())
    except orjson.JSONDecodeError as e:
        raise ManifestFormatError(str(path), f"not valid JSON ({e})")
    try:
        return RunManifest.model_validate(payload)
    except ValidationError as e:
        first = e.errors()[0]
        raise ManifestFormatError(str(path), f"invalid field {first['loc']}: {first['msg']}")
