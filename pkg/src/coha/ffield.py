"""Small finite fields F_q and dense matrices over them.

Elements are integers 0..q-1.  For prime q they are residues with native
mod-p arithmetic; for prime powers q = p^r they encode polynomial
coefficients base p, with multiplication through a precomputed q x q table
and inversion through Zech-style log/antilog tables for a primitive element.

Field axioms are verified exhaustively at construction for q <= 16.
"""

from __future__ import annotations

from functools import lru_cache

DEFAULT_FIELD_BUDGET = 64


class FieldBudgetError(RuntimeError):
    pass


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def factor_prime_power(q: int) -> tuple[int, int]:
    """q = p^r with p prime, else ValueError."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    for p in range(2, q + 1):
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            if m != 1:
                raise ValueError(f"{q} is not a prime power")
            return p, r
    raise ValueError(f"{q} is not a prime power")


def prime_powers(limit: int) -> list[int]:
    out = []
    for q in range(2, limit + 1):
        try:
            factor_prime_power(q)
        except ValueError:
            continue
        out.append(q)
    return out


# -- polynomial helpers over an arbitrary FqField (coeff lists, low degree first) --


def poly_mulmod(field: "FqField", a, b, mod):
    """a*b modulo the monic polynomial `mod`, coefficients in the field."""
    deg = len(mod) - 1
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(ai, bj))
    for i in range(len(out) - 1, deg - 1, -1):
        c = out[i]
        if c:
            out[i] = 0
            for k in range(deg):
                out[i - deg + k] = field.sub(out[i - deg + k], field.mul(c, mod[k]))
    out = out[:deg]
    while len(out) < deg:
        out.append(0)
    return out


def poly_powmod_x(field: "FqField", e: int, mod):
    """x^e modulo the monic polynomial `mod`."""
    result = [1] + [0] * (len(mod) - 2)
    base = ([0, 1] + [0] * (len(mod) - 3)) if len(mod) > 2 else [field.neg(mod[0])]
    while e:
        if e & 1:
            result = poly_mulmod(field, result, base, mod)
        base = poly_mulmod(field, base, base, mod)
        e >>= 1
    return result


def poly_gcd(field: "FqField", a, b):
    a = list(a)
    b = list(b)
    while any(b):
        while b and b[-1] == 0:
            b.pop()
        if not b:
            break
        inv = field.inv(b[-1])
        db = len(b) - 1
        while True:
            while a and a[-1] == 0:
                a.pop()
            if not a or len(a) - 1 < db:
                break
            c = field.mul(a[-1], inv)
            shift = len(a) - 1 - db
            for i, bi in enumerate(b):
                a[shift + i] = field.sub(a[shift + i], field.mul(c, bi))
        a, b = b, a
    while a and a[-1] == 0:
        a.pop()
    return a


def is_irreducible(field: "FqField", coeffs) -> bool:
    """Rabin irreducibility test for a monic polynomial over the field."""
    n = len(coeffs) - 1
    if n < 1 or coeffs[-1] != 1:
        raise ValueError("polynomial must be monic of degree >= 1")
    if n == 1:
        return True
    q = field.q
    xq = poly_powmod_x(field, q ** n, coeffs)
    expect = [0, 1] + [0] * (n - 2)
    if xq != expect[:n]:
        return False
    primes = set()
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            primes.add(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        primes.add(m)
    for ell in primes:
        xe = poly_powmod_x(field, q ** (n // ell), coeffs)
        diff = list(xe)
        diff[1] = field.sub(diff[1], 1)
        g = poly_gcd(field, coeffs, diff)
        if len(g) - 1 > 0:
            return False
    return True


def monic_irreducibles(field: "FqField", degree: int, count: int | None = None,
                       skip_x: bool = False):
    """Yield monic irreducibles of the given degree over the field in lex order
    of coefficient tuples; stop after `count` if given.  skip_x drops the
    polynomial x (relevant when enumerating invertible eigenvalue data)."""
    found = 0
    for body in _lex_tuples(field.q, degree):
        if skip_x and degree == 1 and body == (0,):
            continue
        coeffs = list(body) + [1]
        if is_irreducible(field, coeffs):
            yield coeffs
            found += 1
            if count is not None and found >= count:
                return


def _lex_tuples(q: int, n: int):
    if n == 0:
        yield ()
        return
    for rest in _lex_tuples(q, n - 1):
        for c in range(q):
            yield rest + (c,)


def count_irreducibles(q: int, degree: int) -> int:
    """Number of monic irreducibles of the given degree over F_q, by Moebius
    inversion of q^n = sum_{d|n} d N_d."""
    from .series import mobius
    n = degree
    total = sum(mobius(n // d) * q ** d for d in range(1, n + 1) if n % d == 0)
    assert total % n == 0
    return total // n


class FqField:
    """The field with q = p^r elements, elements encoded as ints 0..q-1."""

    def __init__(self, q: int, budget: int = DEFAULT_FIELD_BUDGET):
        if q > budget:
            raise FieldBudgetError(f"field size {q} exceeds budget {budget}")
        p, r = factor_prime_power(q)
        self.q = q
        self.p = p
        self.r = r
        if r == 1:
            self.modulus = [0, 1]  # the polynomial x; arithmetic is plain mod p
            self._mul_table = None
        else:
            base = FqField(p) if p > 16 else get_field(p)
            self.modulus = next(monic_irreducibles(base, r, count=1))
            self._build_tables()
        self._exp_log_tables()
        if q <= 16:
            self._verify_axioms()

    # -- encoding: int <-> coefficient vector base p --------------------------

    def _decode(self, a: int) -> list[int]:
        out = []
        for _ in range(self.r):
            out.append(a % self.p)
            a //= self.p
        return out

    def _encode(self, coeffs) -> int:
        a = 0
        for c in reversed(list(coeffs)):
            a = a * self.p + (c % self.p)
        return a

    def _build_tables(self):
        q, p, r = self.q, self.p, self.r
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            va = self._decode(a)
            for b in range(a, q):
                vb = self._decode(b)
                s = self._encode((x + y) % p for x, y in zip(va, vb))
                add[a][b] = add[b][a] = s
                m = self._encode(_poly_mulmod(va, vb, self.modulus, p))
                mul[a][b] = mul[b][a] = m
        self._add_table = add
        self._mul_table = mul

    def _exp_log_tables(self):
        """Zech-style discrete log/antilog for a primitive element."""
        q = self.q
        for g in range(2, q):
            seen = [False] * q
            x = 1
            ok = True
            for _ in range(q - 1):
                if seen[x]:
                    ok = False
                    break
                seen[x] = True
                x = self.mul(x, g)
            if ok and x == 1 and all(seen[1:]):
                exp = [0] * (q - 1)
                log = [0] * q
                x = 1
                for i in range(q - 1):
                    exp[i] = x
                    log[x] = i
                    x = self.mul(x, g)
                self.primitive = g
                self._exp = exp
                self._log = log
                return
        raise AssertionError("no primitive element found (field construction bug)")

    # -- arithmetic -----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a + b) % self.p
        return self._add_table[a][b]

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.r == 1:
            return (-a) % self.p
        return self._encode((-c) % self.p for c in self._decode(a))

    def mul(self, a: int, b: int) -> int:
        if self.r == 1:
            return (a * b) % self.p
        return self._mul_table[a][b]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        if self.r == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(self.q - 1 - self._log[a]) % (self.q - 1)]

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        out = 1
        while e:
            if e & 1:
                out = self.mul(out, a)
            a = self.mul(a, a)
            e >>= 1
        return out

    def elements(self) -> range:
        return range(self.q)

    # -- polynomial embedding: reduce a monic F_p[x] polynomial's root field ---

    def poly_companion(self, coeffs: list[int]):
        """Companion matrix (as row tuples) of a monic polynomial over this field.

        coeffs is low-degree-first with leading 1, entries already in 0..q-1.
        """
        n = len(coeffs) - 1
        rows = [[0] * n for _ in range(n)]
        for i in range(1, n):
            rows[i][i - 1] = 1
        for i in range(n):
            rows[i][n - 1] = self.neg(coeffs[i])
        return tuple(tuple(r) for r in rows)

    def _verify_axioms(self):
        q = self.q
        for a in range(q):
            assert self.add(a, 0) == a and self.mul(a, 1) == a
            assert self.add(a, self.neg(a)) == 0
            if a:
                assert self.mul(a, self.inv(a)) == 1
            for b in range(q):
                assert self.add(a, b) == self.add(b, a)
                assert self.mul(a, b) == self.mul(b, a)
                for c in range(q):
                    assert self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                    assert self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                    assert self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))

    def __repr__(self) -> str:
        return f"FqField({self.q})"


@lru_cache(maxsize=None)
def get_field(q: int, budget: int = DEFAULT_FIELD_BUDGET) -> FqField:
    return FqField(q, budget=budget)


class FqMatrix:
    """Dense matrix over an FqField; rows is a tuple of row tuples."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field: FqField, rows):
        self.field = field
        self.rows = tuple(tuple(r) for r in rows)
        self.nrows = len(self.rows)
        self.ncols = len(self.rows[0]) if self.rows else 0
        for r in self.rows:
            if len(r) != self.ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def zero(cls, field: FqField, nrows: int, ncols: int) -> "FqMatrix":
        return cls(field, [[0] * ncols for _ in range(nrows)])

    @classmethod
    def identity(cls, field: FqField, n: int) -> "FqMatrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other) -> bool:
        return (isinstance(other, FqMatrix) and self.field.q == other.field.q
                and self.rows == other.rows)

    def __hash__(self) -> int:
        return hash((self.field.q, self.rows))

    def add(self, other: "FqMatrix") -> "FqMatrix":
        f = self.field
        return FqMatrix(f, [[f.add(a, b) for a, b in zip(r1, r2)]
                            for r1, r2 in zip(self.rows, other.rows)])

    def mul(self, other: "FqMatrix") -> "FqMatrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        f = self.field
        ocols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for c in ocols:
                s = 0
                for a, b in zip(r, c):
                    if a and b:
                        s = f.add(s, f.mul(a, b))
                row.append(s)
            out.append(row)
        return FqMatrix(f, out)

    def scale(self, c: int) -> "FqMatrix":
        f = self.field
        return FqMatrix(f, [[f.mul(c, a) for a in r] for r in self.rows])

    def neg(self) -> "FqMatrix":
        f = self.field
        return FqMatrix(f, [[f.neg(a) for a in r] for r in self.rows])

    def sub(self, other: "FqMatrix") -> "FqMatrix":
        return self.add(other.neg())

    def rank(self) -> int:
        return rank(self.field, [list(r) for r in self.rows])

    def nullity(self) -> int:
        return self.ncols - self.rank()

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def __repr__(self) -> str:
        return f"FqMatrix(q={self.field.q}, {self.rows})"


def rank(field: FqField, rows: list[list[int]]) -> int:
    """Row-reduction rank; mutates `rows`."""
    if not rows:
        return 0
    ncols = len(rows[0])
    nrows = len(rows)
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = field.inv(rows[r][col])
        if inv != 1:
            rows[r] = [field.mul(inv, x) for x in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][col]:
                c = rows[i][col]
                ri = rows[i]
                rows[i] = [field.sub(x, field.mul(c, y)) for x, y in zip(ri, prow)]
        r += 1
        if r == nrows:
            break
    return r


def intertwiner_dim(field: FqField, g_target: FqMatrix, g_source: FqMatrix) -> int:
    """dim { X : X g_source = g_target X }, i.e. morphisms from the module
    defined by g_source into the one defined by g_target.

    X is (dim target) x (dim source); the constraint is linear in X.
    """
    n = g_target.nrows
    m = g_source.nrows
    if n == 0 or m == 0:
        return 0
    f = field
    # Row per constraint entry (a,b), column per unknown X[i][j].
    rows = []
    for a in range(n):
        for b in range(m):
            row = [0] * (n * m)
            # (X g_source)[a][b] = sum_j X[a][j] g_source[j][b]
            for j in range(m):
                row[a * m + j] = f.add(row[a * m + j], g_source.rows[j][b])
            # -(g_target X)[a][b] = -sum_i g_target[a][i] X[i][b]
            for i in range(n):
                row[i * m + b] = f.sub(row[i * m + b], g_target.rows[a][i])
            rows.append(row)
    return n * m - rank(f, rows)


def centralizer_dim(field: FqField, g: FqMatrix) -> int:
    """dim { X : Xg = gX } in the full matrix algebra."""
    return intertwiner_dim(field, g, g)
