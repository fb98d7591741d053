"""Finite-field enumeration kernels: representation counts, iso-class counts
(Burnside), and moment-map fiber counts.

Every kernel returns an exact integer.  Enumeration domains are split into
fixed-order chunks whose partial sums are combined in a fixed order, so thread
count never changes a result.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Iterable, Sequence

from .ffield import (FqField, FqMatrix, get_field, intertwiner_dim, rank)
from .laurent import LaurentPoly, lagrange_interpolate
from .quiver import BudgetExceeded, DimVector, Quiver

DEFAULT_ENUM_BUDGET = 300_000


def chunked_sum(values: Iterable[int], threads: int = 1, chunk: int = 4096) -> int:
    """Sum exact integers chunk by chunk; with threads > 1 the chunks are
    evaluated concurrently but always combined in submission order."""
    if threads <= 1:
        return sum(values)
    it = iter(values)
    chunks = []
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            break
        chunks.append(block)
    with ThreadPoolExecutor(max_workers=threads) as pool:
        partials = list(pool.map(sum, chunks))
    return sum(partials)


def gl_order(d: int, q: int) -> int:
    """|GL_d(F_q)| = prod_{i<d} (q^d - q^i)."""
    out = 1
    for i in range(d):
        out *= q ** d - q ** i
    return out


def gl_tuple_order(d: Sequence[int], q: int) -> int:
    out = 1
    for di in d:
        out *= gl_order(di, q)
    return out


def count_all_reps(Q: Quiver, d, q: int) -> int:
    """|X_{Q,d}(F_q)| = q^(sum over arrows i->j of d_i d_j)."""
    d = Q.dim_vector(d)
    n = Q.num_vertices
    e = sum(Q.arrow_counts[i][j] * d[i] * d[j] for i in range(n) for j in range(n))
    return q ** e


def rep_space_dim(Q: Quiver, d) -> int:
    d = Q.dim_vector(d)
    n = Q.num_vertices
    return sum(Q.arrow_counts[i][j] * d[i] * d[j] for i in range(n) for j in range(n))


# -- GL enumeration ---------------------------------------------------------------


def _all_matrices(field: FqField, n: int):
    q = field.q
    for flat in itertools.product(range(q), repeat=n * n):
        yield FqMatrix(field, [flat[i * n:(i + 1) * n] for i in range(n)])


def gl_elements(field: FqField, n: int):
    if n == 0:
        yield FqMatrix(field, [])
        return
    for m in _all_matrices(field, n):
        if m.is_invertible():
            yield m


def centralizer_dim_histogram(q: int, n: int, budget: int = DEFAULT_ENUM_BUDGET,
                              threads: int = 1, field_budget: int | None = None) -> dict[int, int]:
    """Histogram {c : #elements of GL_n(F_q) with dim centralizer c}.

    This is the whole elementwise Burnside input for any loop-only vertex:
    the fixed-point count of g on g-tuples of loops is q^(loops * c(g)).
    """
    if gl_order(n, q) > budget:
        raise BudgetExceeded(
            f"|GL_{n}(F_{q})| = {gl_order(n, q)} exceeds elementwise budget {budget}")
    field = get_field(q, *(() if field_budget is None else (field_budget,)))
    hist: dict[int, int] = {}
    for g in gl_elements(field, n):
        c = _fast_centralizer_dim(field, g)
        hist[c] = hist.get(c, 0) + 1
    # the histogram partitions the group
    assert sum(hist.values()) == gl_order(n, q)
    return hist


def _fast_centralizer_dim(field: FqField, g: FqMatrix) -> int:
    """Nullity of ad_g acting on n x n matrices, built without FqMatrix overhead."""
    n = g.nrows
    if n == 0:
        return 0
    f = field
    rows = []
    grows = g.rows
    for a in range(n):
        for b in range(n):
            row = [0] * (n * n)
            for j in range(n):
                row[a * n + j] = f.add(row[a * n + j], grows[j][b])
            for i in range(n):
                row[i * n + b] = f.sub(row[i * n + b], grows[a][i])
            rows.append(row)
    return n * n - rank(f, rows)


def count_iso_classes_element(Q: Quiver, d, q: int, budget: int = DEFAULT_ENUM_BUDGET,
                              threads: int = 1, field_budget: int | None = None) -> int:
    """Burnside count of iso classes by elementwise enumeration of GL_d(F_q).

    M_d(q) = |GL_d|^-1 sum_g q^(fix(g)), fix(g) = sum over arrows i->j of
    dim{X : X g_i = g_j X}.
    """
    d = Q.dim_vector(d)
    n = Q.num_vertices
    order = gl_tuple_order(d, q)
    if order > budget:
        raise BudgetExceeded(f"|GL_d(F_q)| = {order} exceeds elementwise budget {budget}")
    field = get_field(q, *(() if field_budget is None else (field_budget,)))

    loops_only = all(Q.arrow_counts[i][j] == 0
                     for i in range(n) for j in range(n) if i != j)
    if n == 1 or (loops_only and n >= 1):
        # product of independent per-vertex sums
        total = 1
        for i in range(n):
            g = Q.arrow_counts[i][i]
            hist = centralizer_dim_histogram(q, d[i], budget=budget, threads=threads,
                                             field_budget=field_budget)
            total *= sum(cnt * q ** (g * c) for c, cnt in hist.items())
        quotient = Fraction(total, order)
    else:
        def fixes():
            pools = [list(gl_elements(field, d[i])) for i in range(n)]
            for tup in itertools.product(*pools):
                e = 0
                for i in range(n):
                    for j in range(n):
                        m = Q.arrow_counts[i][j]
                        if m:
                            if i == j:
                                e += m * _fast_centralizer_dim(field, tup[i])
                            else:
                                e += m * intertwiner_dim(field, tup[j], tup[i])
                yield q ** e
        quotient = Fraction(chunked_sum(fixes(), threads=threads), order)
    if quotient.denominator != 1:
        raise AssertionError(f"Burnside sum not divisible by |GL|: {quotient}")
    return int(quotient)


def count_iso_classes_classes(Q: Quiver, d, q: int,
                              field_budget: int | None = None) -> int:
    """Burnside count via conjugacy classes aggregated by rational-canonical-form
    type; see classtypes.py.  Handles d_i <= 4 per vertex at any sample field."""
    from .classtypes import burnside_by_types
    return burnside_by_types(Q, Q.dim_vector(d), q, field_budget=field_budget)


def count_iso_classes(Q: Quiver, d, q: int, strategy: str = "auto",
                      budget: int = DEFAULT_ENUM_BUDGET, threads: int = 1,
                      field_budget: int | None = None) -> int:
    """Number of isomorphism classes of d-dimensional F_q-representations of Q."""
    d = Q.dim_vector(d)
    if strategy == "element":
        return count_iso_classes_element(Q, d, q, budget=budget, threads=threads,
                                         field_budget=field_budget)
    if strategy == "classes":
        return count_iso_classes_classes(Q, d, q, field_budget=field_budget)
    if strategy == "auto":
        if gl_tuple_order(d, q) <= min(budget, 30_000):
            return count_iso_classes_element(Q, d, q, budget=budget, threads=threads,
                                             field_budget=field_budget)
        if all(x <= 4 for x in d):
            return count_iso_classes_classes(Q, d, q, field_budget=field_budget)
        return count_iso_classes_element(Q, d, q, budget=budget, threads=threads,
                                         field_budget=field_budget)
    raise ValueError(f"unknown strategy {strategy!r}")


# -- moment-map fiber counts -------------------------------------------------------


def _gl_block_index(d: DimVector) -> list[tuple[int, int, int]]:
    """(vertex, row, col) coordinates for points of the Lie algebra gl_d."""
    out = []
    for i, di in enumerate(d):
        for a in range(di):
            for b in range(di):
                out.append((i, a, b))
    return out


def count_moment_fiber_naive(Q: Quiver, d, q: int, budget: int = DEFAULT_ENUM_BUDGET,
                             threads: int = 1) -> int:
    """Count doubled-quiver representations with vanishing moment map by
    enumerating all arrow tuples."""
    d = Q.dim_vector(d)
    field = get_field(q)
    arrows = [(Q._index[s], Q._index[t]) for s, t in Q.arrows]
    sizes = [q ** (2 * d[i] * d[j]) for i, j in arrows]
    total = 1
    for s in sizes:
        total *= s
    if total > budget:
        raise BudgetExceeded(f"naive moment enumeration size {total} exceeds budget {budget}")

    def contributions(i: int, j: int):
        """All (x, x*) pairs for one arrow i->j, with their commutator value
        flattened over gl_{d_i} + gl_{d_j}."""
        di, dj = d[i], d[j]
        pairs = []
        for xf in itertools.product(range(q), repeat=di * dj):
            x = FqMatrix(field, [xf[r * di:(r + 1) * di] for r in range(dj)])  # d_j x d_i
            for yf in itertools.product(range(q), repeat=di * dj):
                y = FqMatrix(field, [yf[r * dj:(r + 1) * dj] for r in range(di)])  # d_i x d_j
                pairs.append(_commutator_value(field, d, i, j, x, y))
        return pairs

    values = [contributions(i, j) for i, j in arrows]
    count = 0
    zero = _zero_glpoint(d)
    for combo in itertools.product(*values):
        acc = zero
        for v in combo:
            acc = _add_glpoint(field, acc, v)
        if acc == zero:
            count += 1
    return count


def _zero_glpoint(d: DimVector) -> tuple[int, ...]:
    return tuple([0] * sum(x * x for x in d))


def _add_glpoint(field: FqField, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(field.add(x, y) for x, y in zip(a, b))


def _commutator_value(field: FqField, d: DimVector, i: int, j: int,
                      x: FqMatrix, y: FqMatrix) -> tuple[int, ...]:
    """[x, y] for x: V_i -> V_j and y: V_j -> V_i, flattened over + gl_{d_k}:
    +xy at vertex j, -yx at vertex i (for loops both land at i=j)."""
    n = len(d)
    offsets = []
    off = 0
    for k in range(n):
        offsets.append(off)
        off += d[k] * d[k]
    flat = [0] * off

    def bump(vertex: int, mat: FqMatrix, sign: int):
        base = offsets[vertex]
        m = d[vertex]
        for a in range(m):
            for b in range(m):
                v = mat.rows[a][b] if sign > 0 else field.neg(mat.rows[a][b])
                flat[base + a * m + b] = field.add(flat[base + a * m + b], v)

    bump(j, x.mul(y), +1)
    bump(i, y.mul(x), -1)
    return tuple(flat)


def _arrow_distribution(field: FqField, d: DimVector, i: int, j: int,
                        budget: int) -> dict[tuple[int, ...], int]:
    """Distribution of the commutator contribution of one arrow i->j over the
    ambient + gl_{d_k}(F_q).

    For fixed x the map y -> [x,y] is linear, so the pairs sharing an x spread
    uniformly over an affine-free image subspace: enumerate its points once
    with multiplicity q^(dim ker).  Falls back to plain pair enumeration when
    that is smaller.
    """
    q = field.q
    di, dj = d[i], d[j]
    m = di * dj
    dist: dict[tuple[int, ...], int] = {}
    if q ** (2 * m) <= min(budget, 80_000):
        for xf in itertools.product(range(q), repeat=m):
            x = FqMatrix(field, [xf[r * di:(r + 1) * di] for r in range(dj)])
            for yf in itertools.product(range(q), repeat=m):
                y = FqMatrix(field, [yf[r * dj:(r + 1) * dj] for r in range(di)])
                v = _commutator_value(field, d, i, j, x, y)
                dist[v] = dist.get(v, 0) + 1
        return dist
    # y -> [x,y] kills at least a max(d_i,d_j)-dimensional space, so the image
    # sweep costs at most q^(m - max) points per x
    est = q ** m * q ** (m - max(di, dj))
    if q ** m > budget or est > 8 * budget:
        raise BudgetExceeded(
            f"arrow tabulation cost ~{est} exceeds budget {budget}")
    basis_y = []
    for r in range(di):
        for c in range(dj):
            mat = [[0] * dj for _ in range(di)]
            mat[r][c] = 1
            basis_y.append(FqMatrix(field, mat))
    for xf in itertools.product(range(q), repeat=m):
        x = FqMatrix(field, [xf[r * di:(r + 1) * di] for r in range(dj)])
        images = [_commutator_value(field, d, i, j, x, yb) for yb in basis_y]
        # span the image lattice of y -> [x,y]
        span: dict[tuple[int, ...], None] = {_zero_glpoint(d): None}
        for img in images:
            if img in span:
                continue
            new = {}
            scaled = [img]
            for s in range(2, q):
                scaled.append(tuple(field.mul(s, v) for v in img))
            for base in span:
                for sc in scaled:
                    pt = _add_glpoint(field, base, sc)
                    if pt not in span:
                        new[pt] = None
            span.update(new)
        mult = q ** m // len(span)
        for pt in span:
            dist[pt] = dist.get(pt, 0) + mult
    return dist


def count_moment_fiber_convolution(Q: Quiver, d, q: int,
                                   budget: int = DEFAULT_ENUM_BUDGET) -> int:
    """Per-arrow distribution convolution: tabulate the commutator-contribution
    distribution of each arrow over + gl_{d_i}(F_q), convolve additively, read
    off the count at zero."""
    d = Q.dim_vector(d)
    field = get_field(q)
    glsize = q ** sum(x * x for x in d)
    arrows = [(Q._index[s], Q._index[t]) for s, t in Q.arrows]
    if glsize > budget:
        raise BudgetExceeded(
            f"convolution table size {glsize} exceeds budget {budget}")

    if not arrows:
        return 1
    acc: dict[tuple[int, ...], int] | None = None
    for (i, j) in arrows:
        dist = _arrow_distribution(field, d, i, j, budget)
        if acc is None:
            acc = dist
            continue
        if len(acc) * len(dist) > 40 * budget:
            raise BudgetExceeded(
                f"convolution of tables sized {len(acc)} x {len(dist)} exceeds budget")
        nxt: dict[tuple[int, ...], int] = {}
        for v1, c1 in acc.items():
            for v2, c2 in dist.items():
                v = _add_glpoint(field, v1, v2)
                nxt[v] = nxt.get(v, 0) + c1 * c2
        acc = nxt
    total = sum(acc.values())
    assert total == count_all_reps(Q.double(), d, q)
    return acc.get(_zero_glpoint(d), 0)


def count_moment_fiber(Q: Quiver, d, q: int, budget: int = DEFAULT_ENUM_BUDGET,
                       threads: int = 1) -> int:
    """|mu_d^{-1}(0)(F_q)| for the doubled quiver's quadratic moment map."""
    d = Q.dim_vector(d)
    if d.is_zero() or not Q.arrows:
        return 1
    naive_cost = 1
    for s, t in Q.arrows:
        i, j = Q._index[s], Q._index[t]
        naive_cost *= q ** (2 * d[i] * d[j])
        if naive_cost > budget:
            break
    if naive_cost <= min(budget, 70_000):
        return count_moment_fiber_naive(Q, d, q, budget=budget, threads=threads)
    return count_moment_fiber_convolution(Q, d, q, budget=budget)


# -- exact interpolation ---------------------------------------------------------


def interpolate_poly(samples: Sequence[tuple[int, int | Fraction]],
                     degree_bound: int) -> LaurentPoly:
    """Exact Lagrange interpolation of counting samples (q, value).

    Requires at least degree_bound + 1 samples at distinct points; asserts the
    interpolant reproduces every sample (so extra samples act as a check that
    the counted quantity really is a polynomial of the claimed degree).
    """
    if len(samples) < degree_bound + 1:
        raise ValueError(
            f"need at least {degree_bound + 1} samples for degree {degree_bound}, "
            f"got {len(samples)}")
    poly = lagrange_interpolate(samples)
    for x, y in samples:
        got = poly.evaluate(x)
        if got != Fraction(y):
            raise AssertionError(
                f"interpolant fails to reproduce sample ({x}, {y}): got {got}; "
                "the counted quantity is not a polynomial of the claimed degree")
    if not poly.is_zero() and poly.min_doubled_exponent() < 0:
        raise AssertionError("counting interpolant has negative exponents")
    return poly
