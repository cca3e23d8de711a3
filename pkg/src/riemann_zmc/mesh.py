"""Triangle meshes of a family over a parameter grid, coloured by causal character.

Each grid row keeps its regular nodes and gains the refined lightlike zeros
found by the row scan, so a lightlike locus that falls between nodes still
shows up as a strip of green vertices. Consecutive rows are stitched with a
zipper triangulation; rows outside the domain leave a hole.
"""
from __future__ import annotations

import io
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .classify import Grid, scan_grid
from .families import SurfaceFamily
from .minkowski import CausalCharacter

COLORS = {
    CausalCharacter.SPACELIKE: (0, 0, 255),
    CausalCharacter.TIMELIKE: (255, 0, 0),
    CausalCharacter.LIGHTLIKE: (0, 255, 0),
}
_BY_LETTER = {c.letter: c for c in CausalCharacter}


@dataclass(frozen=True)
class MeshOutput:
    """Vertices with parameters and causal letters, plus triangle faces."""

    params: np.ndarray  # (n, 2)
    points: np.ndarray  # (n, 3)
    causal: tuple[str, ...]  # "S" | "T" | "L" per vertex
    faces: np.ndarray  # (m, 3) int

    def __post_init__(self):
        n = len(self.points)
        if len(self.params) != n or len(self.causal) != n:
            raise ValueError("params, points and causal must have equal length")
        if len(self.faces) and (self.faces.min() < 0 or self.faces.max() >= n):
            raise ValueError("face index out of range")

    @property
    def characters(self) -> frozenset:
        return frozenset(_BY_LETTER[c] for c in self.causal)

    def count(self, letter: str) -> int:
        return sum(1 for c in self.causal if c == letter)


def _zipper(top: np.ndarray, bottom: np.ndarray, i0: int, j0: int) -> list[tuple[int, int, int]]:
    """Triangulate the strip between two sorted rows of p2 values.

    ``i0`` and ``j0`` are the global indices of the first vertex of each row.
    """
    faces = []
    i = j = 0
    while i < len(top) - 1 or j < len(bottom) - 1:
        adv_top = j == len(bottom) - 1 or (i < len(top) - 1 and top[i + 1] <= bottom[j + 1])
        if adv_top:
            faces.append((i0 + i, i0 + i + 1, j0 + j))
            i += 1
        else:
            faces.append((i0 + i, j0 + j + 1, j0 + j))
            j += 1
    return faces


def build_mesh(f: SurfaceFamily, grid: Grid, workers: int = 1) -> MeshOutput:
    p1_axis, p2 = grid.axes()
    rows = scan_grid(f, grid, workers)
    index_of = {float(v): k for k, v in enumerate(p1_axis)}
    dp2 = float(p2[1] - p2[0])
    params, points, letters, faces = [], [], [], []
    prev = None  # (grid index, p2 values, first vertex index)
    count = 0
    for row in rows:
        letter = np.where(row.det > row.band, "S", np.where(row.det < -row.band, "T", "L"))
        # zeros that coincide with a node only recolour it
        z = np.asarray(row.zeros, dtype=float)
        near = np.abs(z[:, None] - p2[None, :]) <= 1e-9 * dp2
        letter = letter.copy()
        letter[near.any(axis=0)] = "L"
        extra = z[~near.any(axis=1)]
        q = np.concatenate([p2, extra])
        tags = np.concatenate([letter, np.full(len(extra), "L")])
        order = np.argsort(q, kind="stable")
        q, tags = q[order], tags[order]
        pts = f.position(row.p1, q)
        params.append(np.column_stack([np.full(len(q), row.p1), q]))
        points.append(pts)
        letters.extend(str(t) for t in tags)
        k = index_of[row.p1]
        if prev is not None and prev[0] == k - 1:
            faces.extend(_zipper(prev[1], q, prev[2], count))
        prev = (k, q, count)
        count += len(q)
    return MeshOutput(
        np.vstack(params),
        np.vstack(points),
        tuple(letters),
        np.array(faces, dtype=np.int64).reshape(-1, 3),
    )


def _fmt(x: float) -> str:
    return repr(float(x))


def ply_text(mesh: MeshOutput) -> str:
    out = io.StringIO()
    out.write("ply\nformat ascii 1.0\n")
    out.write(f"element vertex {len(mesh.points)}\n")
    for name in ("x", "y", "t"):
        out.write(f"property double {name}\n")
    for name in ("red", "green", "blue"):
        out.write(f"property uchar {name}\n")
    out.write(f"element face {len(mesh.faces)}\n")
    out.write("property list uchar int vertex_indices\n")
    out.write("end_header\n")
    for p, c in zip(mesh.points, mesh.causal):
        r, g, b = COLORS[_BY_LETTER[c]]
        out.write(f"{_fmt(p[0])} {_fmt(p[1])} {_fmt(p[2])} {r} {g} {b}\n")
    for fa in mesh.faces:
        out.write(f"3 {int(fa[0])} {int(fa[1])} {int(fa[2])}\n")
    return out.getvalue()


def csv_text(mesh: MeshOutput) -> str:
    out = io.StringIO()
    out.write("p1,p2,x,y,t,causal\n")
    for (a, b), p, c in zip(mesh.params, mesh.points, mesh.causal):
        out.write(f"{_fmt(a)},{_fmt(b)},{_fmt(p[0])},{_fmt(p[1])},{_fmt(p[2])},{c}\n")
    return out.getvalue()


def read_ply(path: str | Path) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(points, colours, faces) from an ascii PLY written by :func:`ply_text`."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    nv = nf = 0
    k = 0
    while lines[k] != "end_header":
        parts = lines[k].split()
        if parts[:2] == ["element", "vertex"]:
            nv = int(parts[2])
        elif parts[:2] == ["element", "face"]:
            nf = int(parts[2])
        k += 1
    body = lines[k + 1:]
    verts = np.array([ln.split() for ln in body[:nv]], dtype=float).reshape(-1, 6)
    faces = np.array([ln.split()[1:] for ln in body[nv:nv + nf]], dtype=np.int64).reshape(-1, 3)
    return verts[:, :3], verts[:, 3:].astype(int), faces


__all__ = ["COLORS", "MeshOutput", "build_mesh", "csv_text", "ply_text", "read_ply"]
