"""
Edge-list text format.

Edge list: first line ``n m``, then ``m`` lines ``u v`` with 0-based vertex
indices in ascending (u, v) order, LF line endings. Frequency file: ``m``
lines, one decimal probability per edge, same order.
"""

import logging
from pathlib import Path
from typing import List, Union

from ..errors import BridgecheckError, EdgeListFormatError
from .models import FrequencyModel, Graph

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]


def _read_lines(path: PathLike) -> List[str]:
    try:
        raw = Path(path).read_bytes()
    except OSError as e:
        raise EdgeListFormatError(str(path), 0, f"cannot read file: {e.strerror or e}")
    try:
        return raw.decode("utf-8").splitlines()
    except UnicodeDecodeError as e:
        line_no = raw.count(b"\n", 0, e.start) + 1
        raise EdgeListFormatError(str(path), line_no, f"invalid UTF-8 byte 0x{raw[e.start]:02x}")


def _parse_ints(path: PathLike, line_no: int, line: str, expected: int) -> List[int]:
    parts = line.split()
    if len(parts) != expected:
        raise EdgeListFormatError(
            str(path), line_no, f"expected {expected} integers, got {len(parts)} fields"
        )
    try:
        return [int(p) for p in parts]
    except ValueError:
        raise EdgeListFormatError(str(path), line_no, f"not an integer in '{line.strip()}'")


def read_edge_list(path: PathLike) -> Graph:
    """
    Read a graph in edge-list format.

    Raises:
        EdgeListFormatError: unreadable file, malformed header or edge line,
            edge count mismatch, or an edge the Graph type rejects; the
            message names the offending 1-based line
    """
    lines = _read_lines(path)
    if not lines or not lines[0].strip():
        raise EdgeListFormatError(str(path), 1, "missing 'n m' header")
    n, m = _parse_ints(path, 1, lines[0], 2)
    body = lines[1:]
    # trailing blank lines are tolerated
    while body and not body[-1].strip():
        body.pop()
    if len(body) != m:
        raise EdgeListFormatError(
            str(path), min(len(body), m) + 2, f"header declares {m} edges, file has {len(body)}"
        )

    edges = []
    seen = set()
    for offset, line in enumerate(body):
        line_no = offset + 2
        u, v = _parse_ints(path, line_no, line, 2)
        if u > v:
            u, v = v, u
        if u == v:
            raise EdgeListFormatError(str(path), line_no, f"self-loop at vertex {u}")
        if u < 0 or v >= n:
            raise EdgeListFormatError(str(path), line_no, f"vertex outside 0..{n - 1}")
        if (u, v) in seen:
            raise EdgeListFormatError(str(path), line_no, f"duplicate edge ({u}, {v})")
        seen.add((u, v))
        edges.append((u, v))

    try:
        graph = Graph(n=n, edges=tuple(edges))
    except BridgecheckError as e:
        raise EdgeListFormatError(str(path), 1, e.message)
    logger.debug(f"Read graph from {path}: n={graph.n}, m={graph.m}")
    return graph


def write_edge_list(path: PathLike, graph: Graph) -> None:
    lines = [f"{graph.n} {graph.m}"]
    lines.extend(f"{u} {v}" for u, v in graph.edges)
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")


def read_frequency_file(path: PathLike, m: int) -> FrequencyModel:
    """Read ``m`` per-edge probabilities; line numbers in errors are 1-based."""
    lines = _read_lines(path)
    while lines and not lines[-1].strip():
        lines.pop()
    if len(lines) != m:
        raise EdgeListFormatError(str(path), len(lines) + 1, f"expected {m} frequencies, got {len(lines)}")
    values = []
    for offset, line in enumerate(lines):
        try:
            value = float(line.strip())
        except ValueError:
            raise EdgeListFormatError(str(path), offset + 1, f"not a number: '{line.strip()}'")
        if not 0.0 <= value <= 1.0:
            raise EdgeListFormatError(str(path), offset + 1, f"probability {value} outside [0, 1]")
        values.append(value)
    return FrequencyModel(tuple(values))


def write_frequency_file(path: PathLike, freq: FrequencyModel) -> None:
    lines = [repr(float(p)) for p in freq.freq]
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8", newline="\n")
