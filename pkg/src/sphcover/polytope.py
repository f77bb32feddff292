"""Exact vertex enumeration for halfspace-defined polytopes.

The enumerator is an incremental double description method run on the
homogenization cone in E^(n+1): pick a simplicial subcone from independent
constraint rows, insert the remaining halfspaces one at a time, and combine
adjacent ray pairs that straddle each new hyperplane.  Adjacency is
certified algebraically by the rank of the common tight set, so the heavily
degenerate polytopes produced by symmetric configurations need no
perturbation.  Exact backends run on integer (or integer-quadratic) ray
coordinates; the float backend uses fixed relative tolerances.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from pathlib import Path

from . import _linalg
from .configgen import Configuration
from .scalar import (
    Field,
    Quadratic,
    Scalar,
    Vector,
    format_scalar,
    parse_scalar,
    sign_of,
)

__all__ = [
    "HPolytope",
    "Halfspace",
    "Unbounded",
    "VertexSet",
    "dump_hpolytope",
    "dump_vertices",
    "enumerate_vertices",
    "load_hpolytope",
    "load_vertices",
    "max_squared_norm",
    "polar_hrep",
    "symmetry_cone",
]

logger = logging.getLogger(__name__)

ZERO_EPS = 1e-9  # float tight/straddle classification, relative to row norms
DEDUP_EPS = 1e-8  # float vertex deduplication, componentwise

POLAR = "polar"  # <v, x> <= 1
CONE = "cone"  # <c, x> >= 0


class Unbounded(Exception):
    """The polyhedron admits a recession direction.

    For a polar system without cone rows this means the origin is not
    interior to the convex hull of the configuration.
    """

    def __init__(self, direction: Vector):
        self.direction = direction
        super().__init__(
            "polyhedron is unbounded along ("
            + ", ".join(format_scalar(x) for x in direction)
            + ")"
        )


@dataclass(frozen=True)
class Halfspace:
    normal: Vector
    kind: str  # POLAR or CONE

    def __post_init__(self):
        if self.kind not in (POLAR, CONE):
            raise ValueError(f"unknown halfspace kind {self.kind!r}")
        if all(sign_of(x) == 0 for x in self.normal):
            raise ValueError("halfspace normal must be nonzero")


@dataclass(frozen=True)
class HPolytope:
    dimension: int
    halfspaces: tuple
    field: Field


@dataclass(frozen=True)
class VertexSet:
    vertices: tuple  # tuple[Vector, ...]
    tight_sets: tuple  # tuple[tuple[int, ...], ...], halfspace indices


def polar_hrep(config: Configuration) -> HPolytope:
    """One halfspace <v, x> <= 1 per point of the (unnormalized) set.

    The resulting polytope is the polar body scaled by the common point
    norm; the covering module folds the scale back in.
    """
    return HPolytope(
        config.dimension,
        tuple(Halfspace(p, POLAR) for p in config.points),
        config.field,
    )


def symmetry_cone(n: int, field: Field) -> tuple:
    """The fundamental cone x1 >= 0, x1 >= x2 >= ... >= xn."""
    if n < 2:
        raise ValueError(f"symmetry cone needs dimension >= 2, got {n}")
    one, zero = field.one, field.zero
    rows = [tuple(one if j == 0 else zero for j in range(n))]
    for i in range(n - 1):
        rows.append(
            tuple(
                one if j == i else (-one if j == i + 1 else zero) for j in range(n)
            )
        )
    return tuple(Halfspace(r, CONE) for r in rows)


# -- raw arithmetic kernels --------------------------------------------------


def _int_sign(x: int) -> int:
    return (x > 0) - (x < 0)


class _RationalKernel:
    """Rays as integer tuples with content 1."""

    def vec_from_scalars(self, scalars) -> tuple:
        fracs = []
        for x in scalars:
            if isinstance(x, Quadratic):
                if x.b != 0:
                    raise TypeError("quadratic value in a rational system")
                x = x.a
            fracs.append(Fraction(x))
        den = 1
        for f in fracs:
            den = den * f.denominator // gcd(den, f.denominator)
        return self.reduce(tuple(int(f * den) for f in fracs))

    def reduce(self, vec: tuple) -> tuple:
        g = 0
        for x in vec:
            g = gcd(g, x)
        if g > 1:
            return tuple(x // g for x in vec)
        return vec

    def dot(self, u: tuple, v: tuple) -> int:
        return sum(a * b for a, b in zip(u, v))

    def sign(self, s: int) -> int:
        return _int_sign(s)

    def combine(self, sp: int, rm: tuple, sm: int, rp: tuple) -> tuple:
        return self.reduce(tuple(sp * b - sm * a for a, b in zip(rp, rm)))

    def dehomogenize(self, ray: tuple) -> tuple:
        t = ray[0]
        return tuple(Fraction(x, t) for x in ray[1:])

    def to_scalar(self, raw: int) -> Scalar:
        return Fraction(raw)

    def rank_at_least(self, rows, k: int) -> bool:
        return _exact_rank_at_least(rows, k, self)

    def row_sub(self, pivot_val, row, factor, pivot_row):
        # pivot_val * row - factor * pivot_row, componentwise
        return tuple(pivot_val * a - factor * b for a, b in zip(row, pivot_row))

    def is_zero(self, x: int) -> bool:
        return x == 0


class _QuadraticKernel:
    """Rays as tuples of (a, b) integer pairs meaning a + b*sqrt(d)."""

    def __init__(self, d: int):
        self.d = d

    def vec_from_scalars(self, scalars) -> tuple:
        parts = []
        for x in scalars:
            if isinstance(x, Quadratic):
                if x.d != self.d and x.b != 0:
                    raise TypeError(f"sqrt({x.d}) value in a sqrt({self.d}) system")
                parts.append((x.a, x.b))
            else:
                parts.append((Fraction(x), Fraction(0)))
        den = 1
        for a, b in parts:
            den = den * a.denominator // gcd(den, a.denominator)
            den = den * b.denominator // gcd(den, b.denominator)
        return self.reduce(tuple((int(a * den), int(b * den)) for a, b in parts))

    def reduce(self, vec: tuple) -> tuple:
        g = 0
        for a, b in vec:
            g = gcd(gcd(g, a), b)
        if g > 1:
            return tuple((a // g, b // g) for a, b in vec)
        return vec

    def _mul(self, x, y):
        return (x[0] * y[0] + x[1] * y[1] * self.d, x[0] * y[1] + x[1] * y[0])

    def dot(self, u: tuple, v: tuple) -> tuple:
        a = b = 0
        d = self.d
        for (xa, xb), (ya, yb) in zip(u, v):
            a += xa * ya + xb * yb * d
            b += xa * yb + xb * ya
        return (a, b)

    def sign(self, s: tuple) -> int:
        a, b = s
        if b == 0:
            return _int_sign(a)
        if a == 0:
            return _int_sign(b)
        sa, sb = _int_sign(a), _int_sign(b)
        if sa == sb:
            return sa
        return sa * _int_sign(a * a - b * b * self.d)

    def combine(self, sp: tuple, rm: tuple, sm: tuple, rp: tuple) -> tuple:
        out = []
        for a, b in zip(rp, rm):
            pb = self._mul(sp, b)
            ma = self._mul(sm, a)
            out.append((pb[0] - ma[0], pb[1] - ma[1]))
        return self.reduce(tuple(out))

    def dehomogenize(self, ray: tuple) -> tuple:
        t = Quadratic(ray[0][0], ray[0][1], self.d)
        out = []
        for a, b in ray[1:]:
            q = Quadratic(a, b, self.d) / t
            out.append(q.a if isinstance(q, Quadratic) and q.b == 0 else q)
        return tuple(out)

    def to_scalar(self, raw: tuple) -> Scalar:
        a, b = raw
        return Fraction(a) if b == 0 else Quadratic(a, b, self.d)

    def rank_at_least(self, rows, k: int) -> bool:
        return _exact_rank_at_least(rows, k, self)

    def row_sub(self, pivot_val, row, factor, pivot_row):
        out = []
        for a, b in zip(row, pivot_row):
            pa = self._mul(pivot_val, a)
            fb = self._mul(factor, b)
            out.append((pa[0] - fb[0], pa[1] - fb[1]))
        return tuple(out)

    def is_zero(self, x: tuple) -> bool:
        return x == (0, 0)


class _FloatKernel:
    """Rays as float tuples scaled to unit max-norm."""

    def vec_from_scalars(self, scalars) -> tuple:
        return self.reduce(tuple(float(x) for x in scalars))

    def reduce(self, vec: tuple) -> tuple:
        scale = max(abs(x) for x in vec)
        if scale == 0.0 or scale == 1.0:
            return vec
        return tuple(x / scale for x in vec)

    def dot(self, u: tuple, v: tuple) -> float:
        return sum(a * b for a, b in zip(u, v))

    def sign(self, s: float) -> int:
        if s > ZERO_EPS:
            return 1
        if s < -ZERO_EPS:
            return -1
        return 0

    def combine(self, sp: float, rm: tuple, sm: float, rp: tuple) -> tuple:
        return self.reduce(tuple(sp * b - sm * a for a, b in zip(rp, rm)))

    def dehomogenize(self, ray: tuple) -> tuple:
        t = ray[0]
        return tuple(x / t for x in ray[1:])

    def to_scalar(self, raw: float) -> Scalar:
        return raw

    def rank_at_least(self, rows, k: int) -> bool:
        work = [list(r) for r in rows]
        ncols = len(work[0]) if work else 0
        rank = 0
        for col in range(ncols):
            best, pivot_row = ZERO_EPS, None
            for i in range(rank, len(work)):
                if abs(work[i][col]) > best:
                    best, pivot_row = abs(work[i][col]), i
            if pivot_row is None:
                continue
            work[rank], work[pivot_row] = work[pivot_row], work[rank]
            pivot = work[rank][col]
            for i in range(rank + 1, len(work)):
                f = work[i][col] / pivot
                if f != 0.0:
                    row = work[i]
                    prow = work[rank]
                    for j in range(col, ncols):
                        row[j] -= f * prow[j]
                    scale = max(abs(x) for x in row)
                    if scale > 1.0:
                        for j in range(ncols):
                            row[j] /= scale
            rank += 1
            if rank >= k:
                return True
        return rank >= k

    def is_zero(self, x: float) -> bool:
        return abs(x) <= ZERO_EPS


def _exact_rank_at_least(rows, k: int, kernel) -> bool:
    """Streaming fraction-free elimination with early exit at rank k."""
    if k <= 0:
        return True
    echelon = []  # list of (pivot_col, row)
    remaining = len(rows)
    for row in rows:
        if len(echelon) + remaining < k:
            return False
        remaining -= 1
        for pivot_col, pivot_row in echelon:
            factor = row[pivot_col]
            if kernel.is_zero(factor):
                continue
            row = kernel.row_sub(pivot_row[pivot_col], row, factor, pivot_row)
            row = kernel.reduce(row)
        pivot_col = next(
            (j for j, x in enumerate(row) if not kernel.is_zero(x)), None
        )
        if pivot_col is None:
            continue
        echelon.append((pivot_col, row))
        if len(echelon) >= k:
            return True
    return False


def _kernel_for(field: Field):
    if field.kind == "rational":
        return _RationalKernel()
    if field.kind == "quadratic":
        return _QuadraticKernel(field.d)
    return _FloatKernel()


# -- double description core -------------------------------------------------


def _homogenized_rows(poly: HPolytope, kernel) -> list:
    """Row 0 is t >= 0; polar <v,x> <= 1 becomes (1, -v); cone stays (0, c)."""
    n = poly.dimension
    zero, one = poly.field.zero, poly.field.one
    rows = [kernel.vec_from_scalars((one,) + (zero,) * n)]
    for hs in poly.halfspaces:
        if len(hs.normal) != n:
            raise ValueError("halfspace dimension mismatch")
        if hs.kind == POLAR:
            rows.append(kernel.vec_from_scalars((one,) + tuple(-x for x in hs.normal)))
        else:
            rows.append(kernel.vec_from_scalars((zero,) + tuple(hs.normal)))
    return rows


def _lineality_direction(poly: HPolytope) -> Vector:
    """A nonzero x-direction orthogonal to every constraint normal."""
    n = poly.dimension
    field = poly.field
    rows = [tuple(hs.normal) for hs in poly.halfspaces]
    # find a free coordinate assignment via field-level elimination
    work = [list(r) for r in rows]
    pivots = {}
    for row in work:
        for col, piv_row in pivots.items():
            factor = row[col]
            if field.is_exact:
                if sign_of(factor) == 0:
                    continue
            elif abs(factor) <= _linalg.FLOAT_PIVOT_TOL:
                continue
            for j in range(n):
                row[j] = row[j] - factor * piv_row[j]
        pivot_col = None
        for j in range(n):
            nz = sign_of(row[j]) != 0 if field.is_exact else abs(row[j]) > 1e-9
            if nz:
                pivot_col = j
                break
        if pivot_col is None:
            continue
        piv = row[pivot_col]
        pivots[pivot_col] = [x / piv for x in row]
    free = next(j for j in range(n) if j not in pivots)
    direction = [field.zero] * n
    direction[free] = field.one
    for col, piv_row in pivots.items():
        direction[col] = -piv_row[free]
    return tuple(direction)


def enumerate_vertices(poly: HPolytope) -> VertexSet:
    """Complete vertex set of a bounded H-polytope, exact over its field.

    Raises :class:`Unbounded` when a recession direction survives all
    insertions, which for a pure polar system means the origin is not
    interior to the convex hull of the defining points.
    """
    n = poly.dimension
    dim = n + 1
    field = poly.field
    kernel = _kernel_for(field)
    rows = _homogenized_rows(poly, kernel)

    # greedy simplicial initialization from independent rows
    selected = []
    scalar_rows = []
    for idx, row in enumerate(rows):
        candidate = scalar_rows + [[kernel.to_scalar(x) for x in row]]
        if _linalg.rank(candidate, field) > len(scalar_rows):
            selected.append(idx)
            scalar_rows = candidate
            if len(selected) == dim:
                break
    if len(selected) < dim:
        raise Unbounded(_lineality_direction(poly))

    inverse = _linalg.invert([scalar_rows[i] for i in range(dim)], field)
    if inverse is None:  # numerically singular float system
        raise Unbounded(_lineality_direction(poly))

    rays = []
    sel_mask = 0
    for idx in selected:
        sel_mask |= 1 << idx
    for j in range(dim):
        column = [inverse[i][j] for i in range(dim)]
        vec = kernel.vec_from_scalars(column)
        rays.append((vec, sel_mask & ~(1 << selected[j])))
    rays.sort()

    remaining = [i for i in range(len(rows)) if i not in set(selected)]
    need = dim - 2
    for step, idx in enumerate(remaining):
        w = rows[idx]
        bit = 1 << idx
        plus, zero, minus = [], [], []
        for vec, mask in rays:
            s = kernel.dot(w, vec)
            sg = kernel.sign(s)
            if sg > 0:
                plus.append((vec, mask, s))
            elif sg < 0:
                minus.append((vec, mask, s))
            else:
                zero.append((vec, mask | bit))
        if not minus:
            rays = [(v, m) for v, m, _ in plus] + zero
            rays.sort()
            continue
        fresh = []
        for vp, mp, sp in plus:
            for vm, mm, sm in minus:
                common = mp & mm
                if common.bit_count() < need:
                    continue
                tight_rows = []
                m = common
                while m:
                    low = m & -m
                    tight_rows.append(rows[low.bit_length() - 1])
                    m ^= low
                if not kernel.rank_at_least(tight_rows, need):
                    continue
                fresh.append((kernel.combine(sp, vm, sm, vp), common | bit))
        rays = [(v, m) for v, m, _ in plus] + zero + fresh
        if not rays:
            raise ValueError("constraint system is infeasible")
        rays.sort()
        logger.debug(
            "inserted %d/%d halfspaces, %d rays", step + 1, len(remaining), len(rays)
        )

    for vec, _ in rays:
        if kernel.sign(vec[0]) == 0:
            raise Unbounded(tuple(kernel.to_scalar(x) for x in vec[1:]))

    if field.kind == "float":
        rays = _refine_float_rays(rows, rays)

    results = []
    for vec, mask in rays:
        coords = kernel.dehomogenize(vec)
        tight = []
        m = mask >> 1  # drop the t >= 0 row; halfspace i sits at bit i+1
        i = 0
        while m:
            if m & 1:
                tight.append(i)
            m >>= 1
            i += 1
        results.append((coords, tuple(tight)))

    if field.kind == "float":
        deduped = {}
        for coords, tight in results:
            key = tuple(round(x / DEDUP_EPS) for x in coords)
            deduped.setdefault(key, (coords, tight))
        results = list(deduped.values())

    results.sort(key=lambda item: item[0])
    return VertexSet(
        tuple(coords for coords, _ in results),
        tuple(tight for _, tight in results),
    )


def _refine_float_rays(rows, rays):
    """Re-solve each float ray from its tight rows to remove drift."""
    import numpy as np

    dim = len(rays[0][0]) if rays else 0
    refined = []
    for vec, mask in rays:
        tight = []
        m = mask
        while m:
            low = m & -m
            tight.append(rows[low.bit_length() - 1])
            m ^= low
        matrix = np.array(tight, dtype=float)
        _, svals, vt = np.linalg.svd(matrix)
        rank_est = int((svals > 1e-9 * svals[0]).sum()) if len(svals) else 0
        null = vt[-1]
        if rank_est != dim - 1 or abs(null[0]) < 1e-12:
            refined.append((vec, mask))
            continue
        null = null / null[0]
        drift = np.abs(np.asarray(vec) / vec[0] - null).max()
        if drift < 1e-5:
            scale = np.abs(null).max()
            refined.append((tuple(float(x) / scale for x in null), mask))
        else:
            refined.append((vec, mask))
    return refined


def max_squared_norm(vertices: VertexSet):
    """Exact maximum of sum(x_i^2) over vertices, with one attaining vertex."""
    if not vertices.vertices:
        raise ValueError("empty vertex set")
    best_val = None
    best_vec = None
    for vec in vertices.vertices:
        total = None
        for x in vec:
            total = x * x if total is None else total + x * x
        if best_val is None or sign_of(total - best_val) > 0:
            best_val, best_vec = total, vec
    return best_val, best_vec


# -- debug dump format ---------------------------------------------------------


def _field_tag(field: Field) -> str:
    if field.kind == "quadratic":
        return f"quadratic:{field.d}"
    return field.kind


def _field_from_tag(tag: str) -> Field:
    if tag.startswith("quadratic:"):
        return Field("quadratic", int(tag.split(":", 1)[1]))
    return Field(tag)


def dump_hpolytope(poly: HPolytope, path: str | Path) -> None:
    lines = [f"hpolytope dim={poly.dimension} field={_field_tag(poly.field)}"]
    for hs in poly.halfspaces:
        lines.append(f"{hs.kind}: " + " ".join(format_scalar(x) for x in hs.normal))
    Path(path).write_text("\n".join(lines) + "\n")


def load_hpolytope(path: str | Path) -> HPolytope:
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("hpolytope "):
        raise ValueError(f"{path}: not an hpolytope dump")
    header = dict(part.split("=", 1) for part in lines[0].split()[1:])
    n = int(header["dim"])
    field = _field_from_tag(header["field"])
    halfspaces = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        kind, _, rest = line.partition(":")
        kind = kind.strip()
        if kind not in (POLAR, CONE):
            raise ValueError(f"{path}:{lineno}: unknown row kind {kind!r}")
        normal = tuple(parse_scalar(tok, field) for tok in rest.split())
        if len(normal) != n:
            raise ValueError(f"{path}:{lineno}: expected {n} coordinates")
        halfspaces.append(Halfspace(normal, kind))
    return HPolytope(n, tuple(halfspaces), field)


def dump_vertices(vertices: VertexSet, dimension: int, field: Field,
                  path: str | Path) -> None:
    lines = [f"vertexset dim={dimension} field={_field_tag(field)}"]
    for vec in vertices.vertices:
        lines.append("vertex: " + " ".join(format_scalar(x) for x in vec))
    Path(path).write_text("\n".join(lines) + "\n")


def load_vertices(path: str | Path) -> tuple:
    lines = Path(path).read_text().splitlines()
    if not lines or not lines[0].startswith("vertexset "):
        raise ValueError(f"{path}: not a vertexset dump")
    header = dict(part.split("=", 1) for part in lines[0].split()[1:])
    n = int(header["dim"])
    field = _field_from_tag(header["field"])
    out = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        kind, _, rest = line.partition(":")
        if kind.strip() != "vertex":
            raise ValueError(f"{path}:{lineno}: unknown row kind")
        vec = tuple(parse_scalar(tok, field) for tok in rest.split())
        if len(vec) != n:
            raise ValueError(f"{path}:{lineno}: expected {n} coordinates")
        out.append(vec)
    return tuple(out)
