"""Plain-text formats for point clouds, Čech complexes and vertex maps.

Point cloud::

    # dim=2 count=3
    1.0,0.0
    ...

Complex (one simplex per line, sorted vertex indices)::

    # cech epsilon=0.4 dmax=2 nverts=3
    0
    0 1

Map (assignment per source vertex)::

    # map source=nx.txt target=ny.txt
    0 -> 5
"""

import re
from pathlib import Path

import numpy as np
from numpy.typing import ArrayLike

from src.nerve_recon.complex import SimplicialComplex, SimplicialMap
from src.nerve_recon.errors import FileFormatError
from src.nerve_recon.geometry import PointCloud, as_cloud

_CLOUD_HEADER = re.compile(r"^#\s*dim=(\d+)\s+count=(\d+)\s*$")
_COMPLEX_HEADER = re.compile(r"^#\s*cech\s+epsilon=(\S+)\s+dmax=(\d+)\s+nverts=(\d+)\s*$")
_MAP_HEADER = re.compile(r"^#\s*map\s+source=(\S*)\s+target=(\S*)\s*$")
_MAP_LINE = re.compile(r"^\s*(\d+)\s*->\s*(\d+)\s*$")


def _lines(path: str | Path) -> list[str]:
    try:
        text = Path(path).read_text()
    except FileNotFoundError as exc:
        raise FileFormatError(f"file not found: {path}") from exc
    lines = [line.rstrip("\n") for line in text.splitlines()]
    if not lines:
        raise FileFormatError(f"{path} is empty")
    return lines


# ── point clouds ──


def format_point_cloud(points: ArrayLike) -> str:
    cloud = as_cloud(points)
    count, dim = cloud.shape
    rows = [",".join(repr(float(v)) for v in row) for row in cloud]
    return "\n".join([f"# dim={dim} count={count}", *rows]) + "\n"


def write_point_cloud(points: ArrayLike, path: str | Path) -> Path:
    target = Path(path)
    target.write_text(format_point_cloud(points))
    return target


def read_point_cloud(path: str | Path) -> PointCloud:
    lines = _lines(path)
    header = _CLOUD_HEADER.match(lines[0])
    if header is None:
        raise FileFormatError(f"{path}: expected '# dim=<n> count=<N>' header, got {lines[0]!r}")
    dim, count = int(header.group(1)), int(header.group(2))
    rows = [line for line in lines[1:] if line.strip()]
    if len(rows) != count:
        raise FileFormatError(f"{path}: header promises {count} points, found {len(rows)}")
    try:
        values = [[float(token) for token in row.split(",")] for row in rows]
    except ValueError as exc:
        raise FileFormatError(f"{path}: non-numeric coordinate: {exc}") from exc
    if any(len(row) != dim for row in values):
        raise FileFormatError(f"{path}: every point must have {dim} coordinates")
    return np.asarray(values, dtype=float).reshape(count, dim)


# ── complexes ──


def format_complex(complex_: SimplicialComplex) -> str:
    epsilon = complex_.epsilon if complex_.epsilon is not None else 0.0
    lines = [f"# cech epsilon={epsilon!r} dmax={complex_.d_max} nverts={complex_.vertex_count}"]
    lines.extend(" ".join(str(v) for v in simplex) for simplex in complex_.iter_simplices())
    return "\n".join(lines) + "\n"


def write_complex(complex_: SimplicialComplex, path: str | Path) -> Path:
    target = Path(path)
    target.write_text(format_complex(complex_))
    return target


def read_complex(path: str | Path, points: ArrayLike | None = None) -> SimplicialComplex:
    """Load a complex; attach ``points`` to restore the geometric ball test."""
    lines = _lines(path)
    header = _COMPLEX_HEADER.match(lines[0])
    if header is None:
        raise FileFormatError(f"{path}: expected '# cech epsilon=.. dmax=.. nverts=..' header")
    epsilon, d_max, nverts = float(header.group(1)), int(header.group(2)), int(header.group(3))
    try:
        simplices = [tuple(int(t) for t in line.split()) for line in lines[1:] if line.strip()]
    except ValueError as exc:
        raise FileFormatError(f"{path}: non-integer vertex index: {exc}") from exc
    if any(len(s) - 1 > d_max for s in simplices):
        raise FileFormatError(f"{path}: simplex above dmax={d_max}")
    cloud = as_cloud(points) if points is not None else None
    complex_ = SimplicialComplex.from_simplices(
        simplices, d_max=d_max, points=cloud, epsilon=epsilon if epsilon > 0 else None
    )
    if complex_.vertex_count != nverts:
        raise FileFormatError(f"{path}: header promises {nverts} vertices, found {complex_.vertex_count}")
    return complex_


# ── maps ──


def format_map(phi: SimplicialMap, source: str = "", target: str = "") -> str:
    lines = [f"# map source={source} target={target}"]
    lines.extend(f"{i} -> {j}" for i, j in enumerate(phi.assignment))
    return "\n".join(lines) + "\n"


def write_map(phi: SimplicialMap, path: str | Path, source: str = "", target: str = "") -> Path:
    out = Path(path)
    out.write_text(format_map(phi, source, target))
    return out


def read_map(path: str | Path) -> tuple[SimplicialMap, str, str]:
    """Return the map and the source/target complex file names from its header."""
    lines = _lines(path)
    header = _MAP_HEADER.match(lines[0])
    if header is None:
        raise FileFormatError(f"{path}: expected '# map source=.. target=..' header")
    pairs: dict[int, int] = {}
    for line in lines[1:]:
        if not line.strip():
            continue
        match = _MAP_LINE.match(line)
        if match is None:
            raise FileFormatError(f"{path}: malformed assignment line {line!r}")
        pairs[int(match.group(1))] = int(match.group(2))
    if sorted(pairs) != list(range(len(pairs))):
        raise FileFormatError(f"{path}: assignment must cover vertices 0..{len(pairs) - 1}")
    phi = SimplicialMap(assignment=tuple(pairs[i] for i in range(len(pairs))))
    return phi, header.group(1), header.group(2)
