"""CSV serialization of results.

Every CSV starts with ``# key=value`` metadata lines (tool version, and
for studies the seed and generator contract) so a result file is
self-describing and byte-reproducible.  Floats are written with repr,
which round-trips doubles exactly and is locale-independent.
"""

from __future__ import annotations

import csv
import io

from . import __version__
from .study import StudyResult

STUDY_COLUMNS = (
    "delta", "scheme", "mean_error", "min_error", "max_error",
    "stddev", "n_elements", "n_rejected",
)
MASS_COLUMNS = ("element_id", "scheme", "i", "j", "value")


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(float(value))  # plain-float repr even for numpy scalars
    return str(value)


def _render(meta: dict, header, rows) -> str:
    buf = io.StringIO()
    for key, value in meta.items():
        buf.write(f"# {key}={value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def study_csv(result: StudyResult) -> str:
    meta = {
        "tool": "tet10mass",
        "version": __version__,
        "seed": result.config.seed,
        "rng": result.generator,
        "elements_per_delta": result.config.elements_per_delta,
        "density": repr(result.config.rho0),
        "schemes": "|".join(result.config.schemes),
    }
    rows = [
        (r.delta, r.scheme, r.mean_error, r.min_error, r.max_error,
         r.stddev, r.n_elements, r.n_rejected)
        for r in result.rows
    ]
    return _render(meta, STUDY_COLUMNS, rows)


def mass_csv(entries, scheme: str, density_note: str) -> str:
    """CSV of full 10x10 matrices; entries are (element_id, matrix) pairs.

    Indices i, j are 1-based to match the node numbering convention.
    """
    meta = {
        "tool": "tet10mass",
        "version": __version__,
        "scheme": scheme,
        "density": density_note,
    }
    rows = []
    for element_id, matrix in entries:
        for i in range(10):
            for j in range(10):
                rows.append((element_id, scheme, i + 1, j + 1, float(matrix[i, j])))
    return _render(meta, MASS_COLUMNS, rows)
