"""Quiver data model, Euler-form arithmetic, and Sigma-set combinatorics.

Orientation convention for the Euler form: an arrow a: i -> j contributes
-a_i * b_j, i.e. the source indexes the left argument.  This is exercised by
the genus-g identity sym_euler_form = 2(1-g)de on the one-vertex g-loop
quiver.
"""

from __future__ import annotations

import hashlib
import itertools
import json
from collections import Counter
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence, Union


class QuiverError(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """An enumeration outgrew its configured budget (an error, not a wrong answer)."""


class DimVector(tuple):
    """Natural-number vector indexed by the quiver's (canonically ordered) vertices."""

    def __new__(cls, entries: Iterable[int]):
        vals = tuple(int(x) for x in entries)
        if any(x < 0 for x in vals):
            raise QuiverError(f"dimension vector entries must be >= 0: {vals}")
        return super().__new__(cls, vals)

    def __add__(self, other):
        return DimVector(a + b for a, b in zip(self, other, strict=True))

    def __sub__(self, other):
        return DimVector(a - b for a, b in zip(self, other, strict=True))

    def __mul__(self, k: int):
        return DimVector(k * a for a in self)

    __rmul__ = __mul__

    def norm(self) -> int:
        return sum(self)

    def is_zero(self) -> bool:
        return not any(self)

    def leq(self, other) -> bool:
        return all(a <= b for a, b in zip(self, other, strict=True))

    @classmethod
    def unit(cls, n: int, i: int) -> "DimVector":
        return cls(1 if j == i else 0 for j in range(n))

    @classmethod
    def zero(cls, n: int) -> "DimVector":
        return cls([0] * n)


class VertexClass(Enum):
    REAL = "real"          # no loops
    ISOTROPIC = "isotropic"  # exactly one loop
    HYPERBOLIC = "hyperbolic"  # two or more loops


@dataclass(frozen=True)
class SignTwist:
    """Bilinear form psi with psi(a,b)+psi(b,a) = (a,b) mod 2; stored, never used
    in characters (they are sign-blind)."""

    matrix: tuple[tuple[int, ...], ...]

    def value(self, a: "DimVector", b: "DimVector") -> int:
        return sum(a[i] * self.matrix[i][j] * b[j]
                   for i in range(len(a)) for j in range(len(b)))


class Quiver:
    """Finite directed multigraph; loops and parallel arrows allowed.

    The canonical form sorts vertices and arrows, so two quivers presenting
    the same data compare and hash equal.
    """

    def __init__(self, vertices: Sequence[str], arrows: Iterable[tuple[str, str]]):
        verts = [str(v) for v in vertices]
        if len(set(verts)) != len(verts):
            raise QuiverError("duplicate vertex names")
        self.vertices: tuple[str, ...] = tuple(sorted(verts))
        arrs = [(str(s), str(t)) for s, t in arrows]
        vset = set(self.vertices)
        for s, t in arrs:
            if s not in vset or t not in vset:
                raise QuiverError(f"arrow ({s},{t}) has an undeclared endpoint")
        self.arrows: tuple[tuple[str, str], ...] = tuple(sorted(arrs))
        self._index = {v: i for i, v in enumerate(self.vertices)}
        n = len(self.vertices)
        counts = [[0] * n for _ in range(n)]
        for s, t in self.arrows:
            counts[self._index[s]][self._index[t]] += 1
        #: arrow_counts[i][j] = number of arrows i -> j
        self.arrow_counts: tuple[tuple[int, ...], ...] = tuple(map(tuple, counts))

    # -- constructors ------------------------------------------------------

    @classmethod
    def loops(cls, g: int, vertex: str = "v") -> "Quiver":
        """One vertex with g loops (g=1 is the Jordan quiver)."""
        return cls([vertex], [(vertex, vertex)] * g)

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise QuiverError(f"invalid quiver JSON: {exc}") from exc
        if not isinstance(data, dict) or "vertices" not in data or "arrows" not in data:
            raise QuiverError('quiver JSON must be {"vertices": [...], "arrows": [[s,t], ...]}')
        arrows = []
        for a in data["arrows"]:
            if not isinstance(a, (list, tuple)) or len(a) != 2:
                raise QuiverError(f"arrow entries must be [source, target] pairs: {a!r}")
            arrows.append((a[0], a[1]))
        return cls(data["vertices"], arrows)

    def to_json(self) -> str:
        return json.dumps(
            {"vertices": list(self.vertices), "arrows": [list(a) for a in self.arrows]},
            separators=(",", ":"), sort_keys=True)

    def canonical_hash(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()

    # -- basic structure -----------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def loops_at(self, v: str) -> int:
        i = self._index[v]
        return self.arrow_counts[i][i]

    def dim_vector(self, d: Union[DimVector, Mapping[str, int], Sequence[int]]) -> DimVector:
        """Normalize dict/sequence input to a DimVector on this quiver's vertices."""
        if isinstance(d, DimVector):
            if len(d) != self.num_vertices:
                raise QuiverError(f"dimension vector length {len(d)} != {self.num_vertices} vertices")
            return d
        if isinstance(d, Mapping):
            if set(d) != set(self.vertices):
                raise QuiverError(f"dimension vector keys {sorted(d)} != vertices {list(self.vertices)}")
            return DimVector(d[v] for v in self.vertices)
        vec = DimVector(d)
        if len(vec) != self.num_vertices:
            raise QuiverError(f"dimension vector length {len(vec)} != {self.num_vertices} vertices")
        return vec

    def unit_vector(self, v: str) -> DimVector:
        return DimVector.unit(self.num_vertices, self._index[v])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Quiver):
            return NotImplemented
        return self.vertices == other.vertices and self.arrows == other.arrows

    def __hash__(self) -> int:
        return hash((self.vertices, self.arrows))

    def __repr__(self) -> str:
        return f"Quiver(vertices={list(self.vertices)}, arrows={list(self.arrows)})"

    # -- doubling / tripling ---------------------------------------------------

    def double(self) -> "Quiver":
        """Add a reversed copy of every arrow."""
        return Quiver(self.vertices, list(self.arrows) + [(t, s) for s, t in self.arrows])

    def triple(self) -> "Quiver":
        """Double, then add one loop per vertex."""
        return Quiver(self.vertices,
                      list(self.double().arrows) + [(v, v) for v in self.vertices])


# -- Euler forms --------------------------------------------------------------


def euler_form(Q: Quiver, a, b) -> int:
    """<a,b> = sum_i a_i b_i - sum_{arrows i->j} a_i b_j."""
    a = Q.dim_vector(a)
    b = Q.dim_vector(b)
    n = Q.num_vertices
    total = sum(a[i] * b[i] for i in range(n))
    for i in range(n):
        row = Q.arrow_counts[i]
        if a[i]:
            total -= a[i] * sum(row[j] * b[j] for j in range(n))
    return total


def sym_euler_form(Q: Quiver, a, b) -> int:
    """(a,b) = <a,b> + <b,a>; the Euler form of the doubled theory."""
    return euler_form(Q, a, b) + euler_form(Q, b, a)


def euler_matrix(Q: Quiver) -> tuple[tuple[int, ...], ...]:
    """Gram matrix of <,> on unit vectors."""
    n = Q.num_vertices
    units = [DimVector.unit(n, i) for i in range(n)]
    return tuple(tuple(euler_form(Q, units[i], units[j]) for j in range(n)) for i in range(n))


def sign_twist(Q: Quiver) -> SignTwist:
    """psi = <,>_Q, the valid sign-twist choice; its symmetrisation is (,) mod 2."""
    return SignTwist(euler_matrix(Q))


def vertex_classes(Q: Quiver) -> dict[str, VertexClass]:
    out = {}
    for v in Q.vertices:
        g = Q.loops_at(v)
        out[v] = (VertexClass.REAL if g == 0
                  else VertexClass.ISOTROPIC if g == 1
                  else VertexClass.HYPERBOLIC)
    return out


def is_totally_negative(Q: Quiver) -> bool:
    """(d,e) < 0 for all nonzero d,e.

    Combinatorial criterion: >= 2 loops at every vertex and >= 1 arrow (in
    either direction) between any two distinct vertices.  Asserted equivalent
    to negativity of the symmetrised form on unit vectors.
    """
    n = Q.num_vertices
    if n == 0:
        return False
    ok = all(Q.loops_at(v) >= 2 for v in Q.vertices)
    if ok:
        for i in range(n):
            for j in range(i + 1, n):
                if Q.arrow_counts[i][j] + Q.arrow_counts[j][i] == 0:
                    ok = False
    units = [DimVector.unit(n, i) for i in range(n)]
    basis_negative = all(sym_euler_form(Q, units[i], units[j]) < 0
                         for i in range(n) for j in range(n))
    assert ok == basis_negative, "combinatorial criterion out of sync with the form"
    return ok


# -- p-values and the Sigma set -------------------------------------------------


def p_value(Q: Quiver, d) -> int:
    """p(d) = 2 - (d,d).  Defined for d = 0 too (value 2; see p_value_flagged)."""
    d = Q.dim_vector(d)
    return 2 - sym_euler_form(Q, d, d)


def p_value_flagged(Q: Quiver, d) -> tuple[int, bool]:
    """(p(d), d == 0); the flag marks the degenerate zero-vector case."""
    d = Q.dim_vector(d)
    return 2 - sym_euler_form(Q, d, d), d.is_zero()


def in_r_plus(Q: Quiver, d) -> bool:
    d = Q.dim_vector(d)
    return (not d.is_zero()) and p_value(Q, d) >= 0


def _descend(parts: list[DimVector], remaining: DimVector, cap: DimVector,
             count: list[int], budget: int):
    """Yield multiset decompositions of `remaining` into nonzero parts, listed
    nonincreasingly in lex order (so each multiset appears once).  A part must
    be componentwise <= remaining and lex <= cap (the previous part)."""
    if remaining.is_zero():
        yield list(parts)
        return
    for piece in _vectors_upto(remaining):
        if piece.is_zero() or tuple(piece) > tuple(cap):
            continue
        count[0] += 1
        if count[0] > budget:
            raise BudgetExceeded(
                f"decomposition enumeration exceeded budget {budget}")
        parts.append(piece)
        yield from _descend(parts, remaining - piece, piece, count, budget)
        parts.pop()


def _vectors_upto(bound: DimVector):
    """All vectors 0 <= v <= bound, lexicographically decreasing."""
    ranges = [range(b, -1, -1) for b in bound]
    for tup in itertools.product(*ranges):
        yield DimVector(tup)


def decompositions(d: DimVector, budget: int = 200_000):
    """Multiset decompositions of d into >= 2 nonzero parts."""
    for parts in _descend([], d, d, [0], budget):
        if len(parts) >= 2:
            yield parts


def in_sigma(Q: Quiver, d, budget: int = 200_000) -> bool:
    """d lies in Sigma: p(d) strictly exceeds sum of p over every decomposition
    of d into >= 2 nonzero R+ vectors (and d itself lies in R+).

    Exact enumeration; exceeding `budget` raises BudgetExceeded.
    """
    d = Q.dim_vector(d)
    if d.is_zero():
        raise QuiverError("Sigma membership is defined for nonzero vectors")
    if not in_r_plus(Q, d):
        return False
    pd = p_value(Q, d)
    for parts in decompositions(d, budget=budget):
        if all(in_r_plus(Q, a) for a in parts):
            if pd <= sum(p_value(Q, a) for a in parts):
                return False
    return True


# -- RHom virtual ranks and the dimension-shift identity -------------------------


def rhom_vrank(Q: Quiver, d1, d2) -> tuple[int, int, int, int]:
    """Ranks (r_-1, r_0, r_+1) of the three-term complex computing morphisms
    between representations of dimensions d1, d2 over the doubled quiver, and
    its virtual rank r_0 - r_-1 - r_+1.

    Asserts -vrank == (d1,d2).
    """
    d1 = Q.dim_vector(d1)
    d2 = Q.dim_vector(d2)
    n = Q.num_vertices
    r_end = sum(d1[i] * d2[i] for i in range(n))
    dbl = Q.double()
    r_mid = 0
    for i in range(n):
        for j in range(n):
            r_mid += dbl.arrow_counts[i][j] * d2[i] * d1[j]
    vrank = r_mid - 2 * r_end
    assert -vrank == sym_euler_form(Q, d1, d2), \
        f"virtual rank {vrank} inconsistent with symmetrised form"
    return (r_end, r_mid, r_end, vrank)


def shift_identity_check(Q: Quiver, d1, d2) -> bool:
    """Check dim(levi fibre) + dim(flag stack) - dim(Z stack) == -<d1,d2> - <d2,d1>.

    Every stack dimension is assembled from the explicit spaces: the parabolic
    P preserving the graded subspace, the flag variety F of doubled-quiver
    representations preserving it, and the incidence space Z cut out by the
    moment values landing in the Levi.
    """
    d1 = Q.dim_vector(d1)
    d2 = Q.dim_vector(d2)
    n = Q.num_vertices
    d = d1 + d2
    dbl = Q.double()

    dim_p = sum(d[i] ** 2 - d1[i] * d2[i] for i in range(n))
    dim_n = sum(d1[i] * d2[i] for i in range(n))           # nilpotent radical
    dim_F = sum(dbl.arrow_counts[i][j] * (d[i] * d[j] - d1[i] * d2[j])
                for i in range(n) for j in range(n))
    dim_X1 = sum(dbl.arrow_counts[i][j] * d1[i] * d1[j] for i in range(n) for j in range(n))
    dim_X2 = sum(dbl.arrow_counts[i][j] * d2[i] * d2[j] for i in range(n) for j in range(n))
    dim_Z = dim_X1 + dim_X2 + dim_n

    dim_flag_stack = dim_F - dim_p
    dim_z_stack = dim_Z - dim_p
    dim_levi_fibre = -sum(d1[i] * d2[i] for i in range(n))

    lhs = dim_levi_fibre + dim_flag_stack - dim_z_stack
    rhs = -euler_form(Q, d1, d2) - euler_form(Q, d2, d1)
    rhs2 = (-sym_euler_form(Q, d, d) + sym_euler_form(Q, d1, d1)
            + sym_euler_form(Q, d2, d2)) // 2
    return lhs == rhs and rhs == rhs2


# -- closed-form Euler forms for the other in-scope module categories -------------


def euler_form_surface(v: tuple[int, int, int], w: tuple[int, int, int]) -> int:
    """Euler pairing of Mukai vectors (rank, c1-degree, ch2) on a symplectic
    surface: -c1.c1' + 2 r r' + r ch2' + ch2 r'."""
    r1, c1, ch1 = v
    r2, c2, ch2 = w
    return -c1 * c2 + 2 * r1 * r2 + r1 * ch2 + ch1 * r2


def euler_form_fundamental_group(g: int, d: int, e: int) -> int:
    """Euler form of the genus-g punctured-surface group algebra: 2(1-g)de."""
    return 2 * (1 - g) * d * e


def euler_form_higgs(g: int, v: tuple[int, int], w: tuple[int, int]) -> int:
    """Euler form on (rank, degree) classes of Higgs sheaves over a genus-g
    curve: 2(1-g) rank rank' (it factors through rank)."""
    return 2 * (1 - g) * v[0] * w[0]
