"""Exact scalars: Laurent polynomials and rational functions in the deformation
parameter q, modular specialisation, and rank computation backends.

The ground field is Q(q).  A `Scalar` is a reduced fraction of `LaurentPoly`
values with a canonical denominator (lowest exponent 0, leading coefficient 1),
so equality of scalars is structural equality.  `ModScalar` is the image of a
scalar under q -> q0 over F_p; it backs the randomised modular rank path.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Union

Coeff = Union[int, Fraction]


class BadEvaluationPoint(Exception):
    """A denominator vanished at the chosen (prime, q0) point; retry with a new one."""


def _canon_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """Laurent polynomial in q with exact rational coefficients.

    Stored as a map exponent -> coefficient with no zero coefficients.
    Instances are treated as immutable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Mapping[int, Coeff] | None = None):
        d = {}
        if coeffs:
            for e, c in coeffs.items():
                if c:
                    d[int(e)] = _canon_coeff(c)
        self.coeffs = d

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero() -> "LaurentPoly":
        return _LP_ZERO

    @staticmethod
    def one() -> "LaurentPoly":
        return _LP_ONE

    @staticmethod
    def from_int(n: int) -> "LaurentPoly":
        return LaurentPoly({0: n})

    @staticmethod
    def q_power(n: int, coeff: Coeff = 1) -> "LaurentPoly":
        return LaurentPoly({n: coeff})

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == {0: 1}

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def is_constant(self) -> bool:
        return not self.coeffs or set(self.coeffs) == {0}

    def constant_value(self) -> Coeff:
        if self.is_zero():
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return self.coeffs[0]

    # -- structure -----------------------------------------------------

    def min_exp(self) -> int:
        return min(self.coeffs)

    def max_exp(self) -> int:
        return max(self.coeffs)

    def term_count(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, LaurentPoly) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(frozenset(self.coeffs.items()))

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.coeffs:
            return other
        if not other.coeffs:
            return self
        d = dict(self.coeffs)
        for e, c in other.coeffs.items():
            s = d.get(e, 0) + c
            if s:
                d[e] = _canon_coeff(s)
            else:
                d.pop(e, None)
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = d
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: -c for e, c in self.coeffs.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not self.coeffs or not other.coeffs:
            return _LP_ZERO
        a, b = self.coeffs, other.coeffs
        if len(a) > len(b):
            a, b = b, a
        d: dict[int, Coeff] = {}
        for e1, c1 in a.items():
            for e2, c2 in b.items():
                e = e1 + e2
                s = d.get(e, 0) + c1 * c2
                if s:
                    d[e] = s
                else:
                    del d[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: _canon_coeff(c) for e, c in d.items()}
        return out

    def scale(self, c: Coeff) -> "LaurentPoly":
        if not c:
            return _LP_ZERO
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e: _canon_coeff(v * c) for e, v in self.coeffs.items()}
        return out

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by q^n."""
        if n == 0:
            return self
        out = LaurentPoly.__new__(LaurentPoly)
        out.coeffs = {e + n: c for e, c in self.coeffs.items()}
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative power of a Laurent polynomial")
        result = _LP_ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- division ------------------------------------------------------

    def divexact(self, other: "LaurentPoly") -> "LaurentPoly":
        """Exact division; raises ValueError if the division is not exact."""
        q = self.try_divexact(other)
        if q is None:
            raise ValueError("inexact polynomial division")
        return q

    def try_divexact(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact division, or None when the division is not exact."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.is_zero():
            return _LP_ZERO
        sa, sb = self.min_exp(), other.min_exp()
        if len(other.coeffs) == 1:
            c = other.coeffs[sb]
            if c == 1:
                return self.shift(-sb)
            inv = Fraction(1) if c == 1 else Fraction(1, c) if isinstance(c, int) else 1 / c
            return self.shift(-sb).scale(inv)
        num = {e - sa: c for e, c in self.coeffs.items()}
        den = {e - sb: c for e, c in other.coeffs.items()}
        dden = max(den)
        lead = den[dden]
        int_side = not isinstance(lead, Fraction)
        quo: dict[int, Coeff] = {}
        dnum = max(num)
        if dnum - dden < 0:
            return None
        while num:
            dnum = max(num)
            if dnum < dden:
                return None
            top = num[dnum]
            if int_side and not isinstance(top, Fraction):
                c, r = divmod(top, lead)
                if r:
                    c = Fraction(top, lead)
            else:
                c = top / lead if isinstance(top, Fraction) or isinstance(lead, Fraction) \
                    else Fraction(top, lead)
            k = dnum - dden
            quo[k] = c
            for e, dc in den.items():
                t = e + k
                s = num.get(t, 0) - c * dc
                if s:
                    num[t] = s
                else:
                    num.pop(t, None)
        return LaurentPoly({e + sa - sb: c for e, c in quo.items()})

    @staticmethod
    def gcd(a: "LaurentPoly", b: "LaurentPoly") -> "LaurentPoly":
        """Monic gcd with lowest exponent 0 (units q^n are divided out).

        Computed by a primitive pseudo-remainder sequence over the integers,
        which avoids Fraction arithmetic in the inner loop.
        """
        if a.is_zero():
            return b.monic_shifted()
        if b.is_zero():
            return a.monic_shifted()
        if len(a.coeffs) == 1 or len(b.coeffs) == 1:
            return _LP_ONE
        fa = _int_primitive(a)
        fb = _int_primitive(b)
        if len(fa) > 80 or len(fb) > 80:
            # degree guard: fall back to monic Euclid over Fraction
            ra = {e: Fraction(c) for e, c in fa.items()}
            rb = {e: Fraction(c) for e, c in fb.items()}
            while rb:
                ra = _poly_mod(ra, rb)
                ra, rb = rb, ra
            lead = ra[max(ra)]
            return LaurentPoly({e: c / lead for e, c in ra.items()})
        while fb:
            fa = _int_pseudo_mod(fa, fb)
            if fa:
                fa = _strip_content(fa)
            fa, fb = fb, fa
        lead = fa[max(fa)]
        if lead == 1:
            return LaurentPoly(fa)
        return LaurentPoly({e: Fraction(c, lead) for e, c in fa.items()})

    def monic_shifted(self) -> "LaurentPoly":
        """Divide out the unit: shift lowest exponent to 0 and make the leading
        (highest-exponent) coefficient 1."""
        if self.is_zero():
            return _LP_ZERO
        m = self.min_exp()
        lead = self.coeffs[self.max_exp()]
        return LaurentPoly({e - m: Fraction(c, 1) / lead if not isinstance(c, Fraction) else c / lead
                            for e, c in self.coeffs.items()})

    # -- evaluation ----------------------------------------------------

    def evaluate(self, x: Fraction) -> Fraction:
        total = Fraction(0)
        for e, c in self.coeffs.items():
            total += Fraction(c) * x ** e
        return total

    def evaluate_mod(self, p: int, q0: int) -> int:
        total = 0
        q0inv = None
        for e, c in self.coeffs.items():
            if isinstance(c, Fraction):
                cv = c.numerator % p * pow(c.denominator % p, p - 2, p) % p
            else:
                cv = c % p
            if e >= 0:
                total += cv * pow(q0, e, p)
            else:
                if q0inv is None:
                    q0inv = pow(q0, p - 2, p)
                total += cv * pow(q0inv, -e, p)
        return total % p

    # -- display ---------------------------------------------------------

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        pieces = []
        for e in sorted(self.coeffs, reverse=True):
            c = self.coeffs[e]
            if e == 0:
                pieces.append(f"{c}")
            elif e == 1:
                pieces.append(f"{c}*q" if c != 1 else "q")
            else:
                pieces.append(f"{c}*q^{e}" if c != 1 else f"q^{e}")
        return " + ".join(pieces).replace("+ -", "- ")


def _int_primitive(p: "LaurentPoly") -> dict[int, int]:
    """Shift to lowest exponent 0, clear coefficient denominators, divide by
    integer content; sign of the leading coefficient is made positive."""
    from math import gcd as igcd

    m = p.min_exp()
    lcm = 1
    for c in p.coeffs.values():
        if isinstance(c, Fraction):
            d = c.denominator
            lcm = lcm // igcd(lcm, d) * d
    out = {}
    for e, c in p.coeffs.items():
        v = c * lcm
        out[e - m] = int(v)
    g = 0
    for v in out.values():
        g = igcd(g, v)
    if out[max(out)] < 0:
        g = -g
    if g not in (0, 1):
        out = {e: v // g for e, v in out.items()}
    return out


def _strip_content(p: dict[int, int]) -> dict[int, int]:
    from math import gcd as igcd

    g = 0
    for v in p.values():
        g = igcd(g, v)
    m = min(p)
    if p[max(p)] < 0:
        g = -g
    if g == 1 and m == 0:
        return p
    return {e - m: v // g for e, v in p.items()}


def _int_pseudo_mod(a: dict[int, int], b: dict[int, int]) -> dict[int, int]:
    """Pseudo-remainder of integer polynomial dicts: each step replaces
    r by lead(b) * r - r_top * x^k * b, killing the top term over Z."""
    db = max(b)
    lead = b[db]
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        c = r[dr]
        k = dr - db
        if lead != 1:
            r = {e: v * lead for e, v in r.items()}
        for e, bc in b.items():
            t = e + k
            s = r.get(t, 0) - c * bc
            if s:
                r[t] = s
            else:
                r.pop(t, None)
    return r


def _poly_mod(a: dict[int, Fraction], b: dict[int, Fraction]) -> dict[int, Fraction]:
    """Remainder of a by b; both are plain polynomial dicts over Fraction."""
    db = max(b)
    lead = b[db]
    r = dict(a)
    while r:
        dr = max(r)
        if dr < db:
            break
        c = r[dr] / lead
        k = dr - db
        for e, bc in b.items():
            t = e + k
            s = r.get(t, Fraction(0)) - c * bc
            if s:
                r[t] = s
            else:
                r.pop(t, None)
    return r


_LP_ZERO = LaurentPoly.__new__(LaurentPoly)
_LP_ZERO.coeffs = {}
_LP_ONE = LaurentPoly.__new__(LaurentPoly)
_LP_ONE.coeffs = {0: 1}


class Scalar:
    """Element of the field Q(q), stored as a reduced, canonical fraction.

    Invariants: den != 0, gcd(num, den) = 1, den has lowest exponent 0 and
    leading coefficient 1.  Equal field elements have identical representations.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly = _LP_ONE, _normalized: bool = False):
        if _normalized:
            self.num = num
            self.den = den
            return
        n, d = _normalize_pair(num, den)
        self.num = n
        self.den = d

    # -- constructors ----------------------------------------------------

    @staticmethod
    def zero() -> "Scalar":
        return _S_ZERO

    @staticmethod
    def one() -> "Scalar":
        return _S_ONE

    @staticmethod
    def from_int(n: int) -> "Scalar":
        return Scalar(LaurentPoly.from_int(n), _LP_ONE, _normalized=True)

    @staticmethod
    def from_fraction(c: Fraction) -> "Scalar":
        return Scalar(LaurentPoly({0: c}), _LP_ONE, _normalized=True)

    @staticmethod
    def q_power(n: int, coeff: Coeff = 1) -> "Scalar":
        return Scalar(LaurentPoly.q_power(n, coeff), _LP_ONE, _normalized=True)

    @staticmethod
    def from_poly(p: LaurentPoly) -> "Scalar":
        return Scalar(p, _LP_ONE, _normalized=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num.is_one() and self.den.is_one()

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.den.is_one() and self.num.is_constant()

    def constant_value(self) -> Coeff:
        if not self.is_constant():
            raise ValueError(f"not a constant: {self!r}")
        return self.num.constant_value()

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Scalar") -> "Scalar":
        if self.num.is_zero():
            return other
        if other.num.is_zero():
            return self
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num + other.num, _LP_ONE, _normalized=True)
        if self.den == other.den:
            return Scalar(self.num + other.num, self.den)
        return Scalar(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "Scalar":
        return Scalar(-self.num, self.den, _normalized=True)

    def __sub__(self, other: "Scalar") -> "Scalar":
        return self + (-other)

    def __mul__(self, other: "Scalar") -> "Scalar":
        if self.num.is_zero() or other.num.is_zero():
            return _S_ZERO
        if self.den.is_one() and other.den.is_one():
            return Scalar(self.num * other.num, _LP_ONE, _normalized=True)
        return Scalar(self.num * other.num, self.den * other.den)

    def inverse(self) -> "Scalar":
        if self.num.is_zero():
            raise ZeroDivisionError("division by zero")
        return Scalar(self.den, self.num)

    def __truediv__(self, other: "Scalar") -> "Scalar":
        if other.num.is_zero():
            raise ZeroDivisionError("division by zero")
        if self.num.is_zero():
            return _S_ZERO
        return Scalar(self.num * other.den, self.den * other.num)

    def scale_int(self, n: int) -> "Scalar":
        if n == 0:
            return _S_ZERO
        return Scalar(self.num.scale(n), self.den, _normalized=(abs(n) == 1))

    def __eq__(self, other) -> bool:
        return isinstance(other, Scalar) and self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    # -- evaluation ----------------------------------------------------------

    def evaluate(self, x: Fraction) -> Fraction:
        d = self.den.evaluate(x)
        if d == 0:
            raise ZeroDivisionError("denominator vanishes at evaluation point")
        return self.num.evaluate(x) / d

    def __repr__(self) -> str:
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _normalize_pair(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("division by zero")
    if num.is_zero():
        return _LP_ZERO, _LP_ONE
    if den.is_one():
        return num, den
    if len(den.coeffs) == 1:
        # monomial denominator reduces to a unit
        m = den.min_exp()
        c = den.coeffs[m]
        if c == 1:
            return num.shift(-m), _LP_ONE
        inv = Fraction(1, c) if isinstance(c, int) else 1 / c
        return num.shift(-m).scale(inv), _LP_ONE
    q = num.try_divexact(den)
    if q is not None:
        return q, _LP_ONE
    g = LaurentPoly.gcd(num, den)
    if not g.is_one():
        num = num.divexact(g)
        den = den.divexact(g)
    # canonical denominator: lowest exponent 0, leading coefficient 1
    m = den.min_exp()
    if m:
        num = num.shift(-m)
        den = den.shift(-m)
    lead = den.coeffs[den.max_exp()]
    if lead != 1:
        inv = Fraction(1, 1) / lead
        num = num.scale(inv)
        den = den.scale(inv)
    if den.is_one():
        den = _LP_ONE
    return num, den


_S_ZERO = Scalar(_LP_ZERO, _LP_ONE, _normalized=True)
_S_ONE = Scalar(_LP_ONE, _LP_ONE, _normalized=True)

# Frequently used elements of Q(q).
Q = Scalar.q_power(1)
QINV = Scalar.q_power(-1)
QHAT = Q - QINV          # q - 1/q
QCHECK = Q + QINV        # q + 1/q


def normalize(num: LaurentPoly, den: LaurentPoly) -> Scalar:
    """Reduced canonical fraction num/den; raises ZeroDivisionError for den = 0."""
    return Scalar(num, den)


@dataclass(frozen=True)
class ModScalar:
    """Residue of a scalar after substituting q -> qpoint over F_prime."""

    value: int
    prime: int
    qpoint: int

    def __post_init__(self):
        object.__setattr__(self, "value", self.value % self.prime)

    def _check(self, other: "ModScalar"):
        if self.prime != other.prime or self.qpoint != other.qpoint:
            raise ValueError("mixed modular contexts")

    def __add__(self, other: "ModScalar") -> "ModScalar":
        self._check(other)
        return ModScalar((self.value + other.value) % self.prime, self.prime, self.qpoint)

    def __sub__(self, other: "ModScalar") -> "ModScalar":
        self._check(other)
        return ModScalar((self.value - other.value) % self.prime, self.prime, self.qpoint)

    def __mul__(self, other: "ModScalar") -> "ModScalar":
        self._check(other)
        return ModScalar(self.value * other.value % self.prime, self.prime, self.qpoint)

    def __neg__(self) -> "ModScalar":
        return ModScalar(-self.value % self.prime, self.prime, self.qpoint)

    def inverse(self) -> "ModScalar":
        if self.value == 0:
            raise ZeroDivisionError("division by zero")
        return ModScalar(pow(self.value, self.prime - 2, self.prime), self.prime, self.qpoint)

    def is_zero(self) -> bool:
        return self.value == 0


def specialize(x: Scalar, p: int, q0: int) -> ModScalar:
    """Ring homomorphism Q(q) -> F_p, q -> q0.

    Raises BadEvaluationPoint when the denominator vanishes at (p, q0).
    """
    if q0 % p == 0:
        raise BadEvaluationPoint("q0 must be nonzero mod p")
    d = x.den.evaluate_mod(p, q0)
    if d == 0:
        raise BadEvaluationPoint(f"denominator vanishes at q0={q0} mod {p}")
    n = x.num.evaluate_mod(p, q0)
    return ModScalar(n * pow(d, p - 2, p) % p, p, q0)


# ---------------------------------------------------------------------------
# Primes for the modular backend
# ---------------------------------------------------------------------------

def _is_probable_prime(n: int) -> bool:
    # deterministic Miller-Rabin for n < 3.3 * 10^24
    if n < 2:
        return False
    for sp in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % sp == 0:
            return n == sp
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def primes_above(bound: int, count: int) -> list[int]:
    """The first `count` primes greater than `bound`."""
    out = []
    n = bound + 1
    while len(out) < count:
        if _is_probable_prime(n):
            out.append(n)
        n += 1
    return out


DEFAULT_PRIME_BOUND = 2**31
MAX_POINT_RETRIES = 32


# ---------------------------------------------------------------------------
# Sparse matrices and rank
# ---------------------------------------------------------------------------

class SparseMatrix:
    """Sparse matrix with Scalar (or ModScalar) entries; no stored zeros."""

    __slots__ = ("nrows", "ncols", "entries")

    def __init__(self, nrows: int, ncols: int,
                 entries: Mapping[tuple[int, int], Scalar] | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.entries: dict[tuple[int, int], Scalar] = {}
        if entries:
            for (r, c), v in entries.items():
                if not (0 <= r < nrows and 0 <= c < ncols):
                    raise IndexError(f"entry ({r},{c}) out of range")
                if not v.is_zero():
                    self.entries[(r, c)] = v

    def set(self, r: int, c: int, v: Scalar):
        if not (0 <= r < self.nrows and 0 <= c < self.ncols):
            raise IndexError(f"entry ({r},{c}) out of range")
        if v.is_zero():
            self.entries.pop((r, c), None)
        else:
            self.entries[(r, c)] = v

    def rows(self) -> list[dict[int, Scalar]]:
        out: list[dict[int, Scalar]] = [dict() for _ in range(self.nrows)]
        for (r, c), v in self.entries.items():
            out[r][c] = v
        return out

    @staticmethod
    def from_columns(columns: Iterable[dict[int, Scalar]], nrows: int) -> "SparseMatrix":
        cols = list(columns)
        m = SparseMatrix(nrows, len(cols))
        for j, col in enumerate(cols):
            for i, v in col.items():
                if not v.is_zero():
                    m.entries[(i, j)] = v
        return m


def rank_exact(m: SparseMatrix) -> int:
    """Rank over Q(q) by fraction-free (Bareiss) elimination.

    Rows are first cleared of denominators; pivots are chosen by minimal term
    count to limit coefficient growth.  Elimination stops as soon as all
    remaining rows are zero, so the cost scales with the true rank.
    """
    rows: list[dict[int, LaurentPoly]] = []
    for row in m.rows():
        if not row:
            continue
        den = _LP_ONE
        for v in row.values():
            if not v.den.is_one():
                g = LaurentPoly.gcd(den, v.den)
                den = den * v.den.divexact(g)
        cleared = {}
        for c, v in row.items():
            p = v.num * den.divexact(v.den)
            if not p.is_zero():
                cleared[c] = p
        if cleared:
            rows.append(cleared)

    rank = 0
    prev = _LP_ONE
    for col in range(m.ncols):
        if not rows:
            break
        pivot_idx = -1
        best = None
        for i, row in enumerate(rows):
            v = row.get(col)
            if v is not None:
                size = v.term_count()
                if best is None or size < best:
                    best = size
                    pivot_idx = i
        if pivot_idx < 0:
            continue
        pivot_row = rows.pop(pivot_idx)
        pivot = pivot_row[col]
        new_rows = []
        for row in rows:
            rc = row.pop(col, None)
            new_row: dict[int, LaurentPoly] = {}
            if rc is None:
                for c, v in row.items():
                    nv = (pivot * v).divexact(prev)
                    if not nv.is_zero():
                        new_row[c] = nv
            else:
                for c, v in row.items():
                    nv = pivot * v - rc * pivot_row.get(c, _LP_ZERO)
                    if not nv.is_zero():
                        new_row[c] = nv.divexact(prev)
                for c, pv in pivot_row.items():
                    if c not in row and c != col:
                        nv = -(rc * pv)
                        if not nv.is_zero():
                            new_row[c] = nv.divexact(prev)
            if new_row:
                new_rows.append(new_row)
        rows = new_rows
        prev = pivot
        rank += 1
    return rank


@dataclass(frozen=True)
class ModularRank:
    """Result of the randomised modular rank computation.

    The value is a certified lower bound on the rank over Q(q); it equals the
    true rank with probability at least 1 - deg/(p-3) per trial.
    """

    value: int
    primes: tuple[int, ...]
    trials: int
    lower_bound: bool = True


def modular_rank(m: SparseMatrix, primes: int = 3, trials: int = 2,
                 seed: int = 0, prime_bound: int = DEFAULT_PRIME_BOUND) -> ModularRank:
    import numpy as np

    from .modmat import rank_mod

    plist = primes_above(prime_bound, primes)
    rng = random.Random(seed)
    best = 0
    for p in plist:
        for _ in range(trials):
            a = _specialized_dense(m, p, rng)
            best = max(best, rank_mod(a, p))
    return ModularRank(best, tuple(plist), trials)


def _specialized_dense(m: SparseMatrix, p: int, rng: random.Random):
    import numpy as np

    for _ in range(MAX_POINT_RETRIES):
        q0 = rng.randint(2, p - 2)
        a = np.zeros((m.nrows, m.ncols), dtype=np.int64)
        try:
            for (r, c), v in m.entries.items():
                if isinstance(v, ModScalar):
                    a[r, c] = v.value
                else:
                    a[r, c] = specialize(v, p, q0).value
        except BadEvaluationPoint:
            continue
        return a
    raise BadEvaluationPoint(f"no admissible evaluation point found mod {p} "
                             f"after {MAX_POINT_RETRIES} retries")


def rank(m: SparseMatrix, mode: str = "exact", primes: int = 3, trials: int = 2,
         seed: int = 0) -> int:
    """Rank of a sparse matrix: `mode="exact"` over Q(q) or `mode="modular"`.

    Modular mode returns the maximum rank over all (prime, q0) evaluation
    points, a certified lower bound on the exact rank.
    """
    if mode == "exact":
        return rank_exact(m)
    if mode == "modular":
        return modular_rank(m, primes=primes, trials=trials, seed=seed).value
    raise ValueError(f"unknown rank mode: {mode!r}")
