"""Line-oriented mesh file format for 10-node tetrahedral elements.

Format (UTF-8; ``#`` starts a comment, blank lines are ignored)::

    tet10 v1
    elem <id> [density <rho0>]
    x y z            # node 1
    ...              # nodes 2..10 in package node order

Node order: vertices 1-4, then mid-edge nodes 5:(1,2) 6:(2,3) 7:(1,3)
8:(1,4) 9:(2,4) 10:(3,4).  Coordinates serialize with repr so a round
trip preserves doubles bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

MESH_HEADER = "tet10 v1"


class MeshParseError(ValueError):
    """Malformed mesh file; carries the offending 1-based line number."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


@dataclass
class MeshElement:
    elem_id: str
    nodes: np.ndarray
    density: float | None = None


def _content_lines(text: str):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_float(token: str, what: str, lineno: int) -> float:
    try:
        value = float(token)
    except ValueError:
        raise MeshParseError(f"non-numeric {what} {token!r}", lineno) from None
    if not math.isfinite(value):
        raise MeshParseError(f"non-finite {what} {token!r}", lineno)
    return value


def parse_mesh(text: str) -> list[MeshElement]:
    """Parse mesh text into elements, or raise :class:`MeshParseError`."""
    lines = _content_lines(text)
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise MeshParseError("empty mesh file") from None
    if line.split() != MESH_HEADER.split():
        raise MeshParseError(f"expected header {MESH_HEADER!r}, got {line!r}", lineno)

    elements: list[MeshElement] = []
    seen: set[str] = set()
    current_id: str | None = None
    current_density: float | None = None
    coords: list[list[float]] = []
    last_lineno = lineno

    def finish(lineno_at_end: int):
        if current_id is None:
            return
        if len(coords) != 10:
            raise MeshParseError(
                f"expected 10 nodes for element {current_id!r}, got {len(coords)}",
                lineno_at_end,
            )
        elements.append(MeshElement(current_id, np.array(coords), current_density))

    for lineno, line in lines:
        tokens = line.split()
        if tokens[0] == "elem":
            finish(lineno)
            coords = []
            if len(tokens) == 2:
                current_id, current_density = tokens[1], None
            elif len(tokens) == 4 and tokens[2] == "density":
                current_id = tokens[1]
                current_density = _parse_float(tokens[3], "density", lineno)
            else:
                raise MeshParseError(
                    "malformed element line; expected 'elem <id> [density <rho0>]'",
                    lineno,
                )
            if current_id in seen:
                raise MeshParseError(f"duplicate element id {current_id!r}", lineno)
            seen.add(current_id)
        else:
            if current_id is None:
                raise MeshParseError("coordinate line before any 'elem' line", lineno)
            if len(coords) >= 10:
                raise MeshParseError(
                    f"more than 10 nodes for element {current_id!r}", lineno
                )
            if len(tokens) != 3:
                raise MeshParseError(
                    f"expected 3 coordinates, got {len(tokens)}", lineno
                )
            coords.append([_parse_float(tok, "coordinate", lineno) for tok in tokens])
        last_lineno = lineno

    finish(last_lineno + 1)
    if not elements:
        raise MeshParseError("mesh file contains no elements")
    return elements


def serialize_mesh(elements) -> str:
    """Inverse of :func:`parse_mesh`; coordinates round-trip exactly."""
    out = [MESH_HEADER]
    for elem in elements:
        head = f"elem {elem.elem_id}"
        if elem.density is not None:
            head += f" density {float(elem.density)!r}"
        out.append(head)
        for x, y, z in np.asarray(elem.nodes, dtype=float).tolist():
            out.append(f"{x!r} {y!r} {z!r}")
    return "\n".join(out) + "\n"


def load_mesh(path) -> list[MeshElement]:
    return parse_mesh(Path(path).read_text(encoding="utf-8"))


def save_mesh(elements, path) -> None:
    Path(path).write_text(serialize_mesh(elements), encoding="utf-8")
