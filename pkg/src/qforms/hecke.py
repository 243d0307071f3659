"""The Iwahori-Hecke algebra H_k of type A_{k-1} over Q(q).

Basis {T_w : w in S_k} with T_s T_w = T_{sw} when lengths add and
T_s T_w = (q - 1/q) T_w + T_{sw} otherwise; equivalently T_i^2 = (q - 1/q) T_i + 1
together with the braid relations.

Irreducible representations are realised in quantum seminormal form on standard
tableaux.  The construction is not taken on faith: the test suite checks the
braid and quadratic relations, sum d^2 = k!, and the eigenvalue
characterisations of the row/column representations.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import symgroup as sg
from .partitions import Partition, conjugate, dim_irrep, partitions, weight
from .scalars import QHAT, Scalar
from .symgroup import Perm, group_tables

MAX_EXACT_DEGREE = 5  # 120-term basis; larger k is outside the verification envelope


def _check_degree(k: int):
    if k < 1:
        raise ValueError("degree must be >= 1")
    if k > MAX_EXACT_DEGREE:
        raise ValueError(f"H_{k} exceeds the exact-mode cap k <= {MAX_EXACT_DEGREE}")


class HeckeElt:
    """Element of H_k as a sparse map permutation -> Scalar in the T_w basis."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: dict[Perm, Scalar] | None = None):
        _check_degree(k)
        self.k = k
        self.coeffs: dict[Perm, Scalar] = {}
        if coeffs:
            for w, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[w] = c

    @staticmethod
    def unit(k: int) -> "HeckeElt":
        return HeckeElt(k, {sg.identity(k): Scalar.one()})

    @staticmethod
    def basis(k: int, w: Perm) -> "HeckeElt":
        return HeckeElt(k, {w: Scalar.one()})

    @staticmethod
    def generator(k: int, i: int) -> "HeckeElt":
        return HeckeElt.basis(k, sg.simple(k, i))

    def _add_term(self, w: Perm, c: Scalar):
        cur = self.coeffs.get(w)
        s = c if cur is None else cur + c
        if s.is_zero():
            self.coeffs.pop(w, None)
        else:
            self.coeffs[w] = s

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        out = HeckeElt(self.k, self.coeffs)
        for w, c in other.coeffs.items():
            out._add_term(w, c)
        return out

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        out = HeckeElt(self.k, self.coeffs)
        for w, c in other.coeffs.items():
            out._add_term(w, -c)
        return out

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.k, {w: -c for w, c in self.coeffs.items()})

    def scale(self, c: Scalar) -> "HeckeElt":
        if c.is_zero():
            return HeckeElt(self.k)
        return HeckeElt(self.k, {w: v * c for w, v in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, HeckeElt) and self.k == other.k \
            and self.coeffs == other.coeffs

    def _check(self, other: "HeckeElt"):
        if self.k != other.k:
            raise ValueError(f"degree mismatch: H_{self.k} vs H_{other.k}")

    def coefficient(self, w: Perm) -> Scalar:
        return self.coeffs.get(w, Scalar.zero())

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        bits = [f"({c!r})*T{list(w)}" for w, c in sorted(self.coeffs.items())]
        return " + ".join(bits)


def left_mul_generator(i: int, a: HeckeElt) -> HeckeElt:
    """T_i * a via the defining relations."""
    tables = group_tables(a.k)
    out = HeckeElt(a.k)
    lm = tables.left_mult[i - 1]
    for w, c in a.coeffs.items():
        n = tables.index[w]
        sn = lm[n]
        if tables.length[sn] > tables.length[n]:
            out._add_term(tables.elements[sn], c)
        else:
            out._add_term(w, QHAT * c)
            out._add_term(tables.elements[sn], c)
    return out


def multiply(a: HeckeElt, b: HeckeElt) -> HeckeElt:
    """Product in H_k, by chaining generator multiplications along reduced words."""
    a._check(b)
    tables = group_tables(a.k)
    out = HeckeElt(a.k)
    for w, c in a.coeffs.items():
        cur = b
        for i in reversed(tables.word[tables.index[w]]):
            cur = left_mul_generator(i, cur)
        for v, cv in cur.coeffs.items():
            out._add_term(v, c * cv)
    return out


@lru_cache(maxsize=None)
def _invert_basis_cached(k: int, w: Perm) -> HeckeElt:
    out = HeckeElt.unit(k)
    # T_w^{-1} = T_{i_r}^{-1} ... T_{i_1}^{-1} with T_i^{-1} = T_i - (q - 1/q)
    for i in sg.reduced_word(w):
        out = left_mul_generator(i, out) - out.scale(QHAT)
    return out


def invert_basis(k: int, w: Perm) -> HeckeElt:
    """T_w^{-1} as an element of H_k."""
    return _invert_basis_cached(k, w)


def star(a: HeckeElt) -> HeckeElt:
    """The involutive anti-automorphism with T_w -> T_{w^-1}."""
    return HeckeElt(a.k, {sg.inverse(w): c for w, c in a.coeffs.items()})


def prime(a: HeckeElt) -> HeckeElt:
    """The involutive anti-automorphism with T_s -> -T_s^{-1} = (q - 1/q) - T_s,
    i.e. T_w -> (-1)^{l(w)} T_w^{-1}."""
    out = HeckeElt(a.k)
    tables = group_tables(a.k)
    for w, c in a.coeffs.items():
        sign = -1 if tables.length[tables.index[w]] % 2 else 1
        inv = invert_basis(a.k, w)
        for v, cv in inv.coeffs.items():
            out._add_term(v, (c * cv).scale_int(sign))
    return out


def bilinear(a: HeckeElt, b: HeckeElt) -> Scalar:
    """<a, b> = coefficient of T_1 in ab; symmetric and associative,
    with <T_v, T_w> = 1 iff vw = 1."""
    a._check(b)
    ident = sg.identity(a.k)
    total = Scalar.zero()
    tables = group_tables(a.k)
    for w, c in a.coeffs.items():
        cur = b
        for i in reversed(tables.word[tables.index[w]]):
            cur = left_mul_generator(i, cur)
        cv = cur.coeffs.get(ident)
        if cv is not None:
            total = total + c * cv
    return total


@lru_cache(maxsize=None)
def central_t(k: int) -> HeckeElt:
    """t = sum_w T_w T_{w^-1}; central in H_k."""
    out = HeckeElt(k)
    for w in group_tables(k).elements:
        prod = multiply(HeckeElt.basis(k, w), HeckeElt.basis(k, sg.inverse(w)))
        for v, c in prod.coeffs.items():
            out._add_term(v, c)
    return out


# ---------------------------------------------------------------------------
# Seminormal representations
# ---------------------------------------------------------------------------

Tableau = tuple[tuple[int, ...], ...]


@lru_cache(maxsize=None)
def standard_tableaux(lam: Partition) -> tuple[Tableau, ...]:
    """All standard Young tableaux of shape lam, in a fixed insertion order."""
    k = weight(lam)
    rows = len(lam)
    out: list[Tableau] = []

    def rec(m: int, fill: list[list[int]], heights: list[int]):
        if m > k:
            out.append(tuple(tuple(r) for r in fill))
            return
        for r in range(rows):
            c = heights[r]
            if c < lam[r] and (r == 0 or heights[r - 1] > c):
                fill[r].append(m)
                heights[r] += 1
                rec(m + 1, fill, heights)
                fill[r].pop()
                heights[r] -= 1

    rec(1, [[] for _ in range(rows)], [0] * rows)
    return tuple(out)


def _position(t: Tableau, m: int) -> tuple[int, int]:
    for i, row in enumerate(t):
        for j, v in enumerate(row):
            if v == m:
                return i + 1, j + 1
    raise ValueError(f"{m} not in tableau")


def _swap_entries(t: Tableau, m: int) -> Tableau:
    return tuple(tuple(m + 1 if v == m else m if v == m + 1 else v for v in row)
                 for row in t)


def _diag_coeff(a: int) -> Scalar:
    # (q - 1/q) / (1 - q^{-2a}); equals q for a = 1 and -1/q for a = -1
    from .scalars import LaurentPoly
    num = LaurentPoly({1: 1, -1: -1})
    den = LaurentPoly({0: 1, -2 * a: -1})
    return Scalar(num, den)


def _offdiag_product(a: int) -> Scalar:
    # (1 - q^{-2(a-1)})(1 - q^{-2(a+1)}) / (1 - q^{-2a})^2, symmetric in a -> -a
    from .scalars import LaurentPoly
    f1 = LaurentPoly({0: 1, -2 * (a - 1): -1})
    f2 = LaurentPoly({0: 1, -2 * (a + 1): -1})
    den = LaurentPoly({0: 1, -2 * a: -1})
    return Scalar(f1 * f2, den * den)


Matrix = list[list[Scalar]]


@dataclass(frozen=True)
class SeminormalRep:
    """Quantum seminormal model of the irreducible H_k-module labelled by a
    partition: one generator matrix per T_i, acting on standard tableaux."""

    shape: Partition
    tableaux: tuple[Tableau, ...]
    generator_matrices: tuple[tuple[tuple[Scalar, ...], ...], ...]

    @property
    def dim(self) -> int:
        return len(self.tableaux)


@lru_cache(maxsize=None)
def seminormal(lam: Partition) -> SeminormalRep:
    k = weight(lam)
    _check_degree(k)
    tabs = standard_tableaux(lam)
    index = {t: n for n, t in enumerate(tabs)}
    d = len(tabs)
    mats = []
    for i in range(1, k):
        m = [[Scalar.zero() for _ in range(d)] for _ in range(d)]
        for col, t in enumerate(tabs):
            ri, ci = _position(t, i)
            rj, cj = _position(t, i + 1)
            if ri == rj:
                m[col][col] = Scalar.q_power(1)
            elif ci == cj:
                m[col][col] = Scalar.q_power(-1, -1)
            else:
                a = (cj - rj) - (ci - ri)
                m[col][col] = _diag_coeff(a)
                t2 = _swap_entries(t, i)
                col2 = index[t2]
                m[col2][col] = Scalar.one() if col < col2 else _offdiag_product(-a)
        mats.append(tuple(tuple(row) for row in m))
    return SeminormalRep(lam, tabs, tuple(mats))


def _mat_mul(a: Matrix, b: Matrix) -> Matrix:
    n = len(a)
    out = [[Scalar.zero() for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for l in range(n):
            ail = a[i][l]
            if ail.is_zero():
                continue
            for j in range(n):
                if not b[l][j].is_zero():
                    out[i][j] = out[i][j] + ail * b[l][j]
    return out


@lru_cache(maxsize=None)
def _rep_matrix(lam: Partition, w: Perm) -> tuple[tuple[Scalar, ...], ...]:
    rep = seminormal(lam)
    d = rep.dim
    word = sg.reduced_word(w)
    if not word:
        ident = [[Scalar.one() if i == j else Scalar.zero() for j in range(d)]
                 for i in range(d)]
        return tuple(tuple(row) for row in ident)
    k = weight(lam)
    rest = sg.compose(sg.simple(k, word[0]), w)
    tail = _rep_matrix(lam, rest)
    head = [list(r) for r in rep.generator_matrices[word[0] - 1]]
    out = _mat_mul(head, [list(r) for r in tail])
    return tuple(tuple(row) for row in out)


def rep_matrix(lam: Partition, w: Perm) -> Matrix:
    """Matrix of T_w in the seminormal model for lam."""
    return [list(r) for r in _rep_matrix(lam, w)]


def rep_apply(lam: Partition, a: HeckeElt) -> Matrix:
    d = dim_irrep(lam)
    out = [[Scalar.zero() for _ in range(d)] for _ in range(d)]
    for w, c in a.coeffs.items():
        m = _rep_matrix(lam, w)
        for i in range(d):
            for j in range(d):
                if not m[i][j].is_zero():
                    out[i][j] = out[i][j] + c * m[i][j]
    return out


@lru_cache(maxsize=None)
def character(lam: Partition, w: Perm) -> Scalar:
    """chi^lam(T_w): trace of the seminormal matrix of T_w."""
    m = _rep_matrix(lam, w)
    total = Scalar.zero()
    for i in range(len(m)):
        total = total + m[i][i]
    return total


def character_elt(lam: Partition, a: HeckeElt) -> Scalar:
    total = Scalar.zero()
    for w, c in a.coeffs.items():
        total = total + c * character(lam, w)
    return total


@lru_cache(maxsize=None)
def t_lambda_direct(lam: Partition) -> Scalar:
    """t_lam = sum_w chi^lam(T_w) chi^lam(T_{w^-1}); the defining computation."""
    k = weight(lam)
    total = Scalar.zero()
    for w in group_tables(k).elements:
        total = total + character(lam, w) * character(lam, sg.inverse(w))
    return total


@lru_cache(maxsize=None)
def central_idempotent(lam: Partition) -> HeckeElt:
    """z_lam = (d_lam / t_lam) sum_w chi^lam(T_w) T_{w^-1}."""
    k = weight(lam)
    t = t_lambda_direct(lam)
    if t.is_zero():
        raise ZeroDivisionError(f"t_lambda vanishes for {lam}")
    factor = Scalar.from_int(dim_irrep(lam)) / t
    out = HeckeElt(k)
    for w in group_tables(k).elements:
        c = character(lam, w)
        if not c.is_zero():
            out._add_term(sg.inverse(w), factor * c)
    return out


def _solve_dense(a: list[list[Scalar]], rhs: list[list[Scalar]]) -> list[list[Scalar]]:
    """Solve a x = rhs columnwise by Gaussian elimination; a is m x n with
    m >= n allowed (consistent overdetermined systems only)."""
    m = len(a)
    n = len(a[0])
    ncols = len(rhs[0])
    aug = [row[:] + rrow[:] for row, rrow in zip(a, rhs)]
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, m):
            if not aug[i][c].is_zero():
                piv = i
                break
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c].inverse()
        aug[r] = [v * inv for v in aug[r]]
        for i in range(m):
            if i != r and not aug[i][c].is_zero():
                f = aug[i][c]
                aug[i] = [vi - f * vr for vi, vr in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
    for i in range(r, m):
        if any(not v.is_zero() for v in aug[i][n:]):
            raise ValueError("inconsistent linear system")
    x = [[Scalar.zero() for _ in range(ncols)] for _ in range(n)]
    for row, c in enumerate(pivots):
        x[c] = aug[row][n:]
    return x


@lru_cache(maxsize=None)
def minimal_idempotents(lam: Partition) -> tuple[HeckeElt, ...]:
    """d_lam orthogonal minimal idempotents summing to z_lam, obtained by
    transporting the diagonal seminormal matrix units through z_lam H_k."""
    k = weight(lam)
    d = dim_irrep(lam)
    z = central_idempotent(lam)
    if d == 1:
        return (z,)
    elements = group_tables(k).elements
    # rows: matrix positions (i, j); columns: group elements
    a = [[_rep_matrix(lam, w)[i][j] for w in elements]
         for i in range(d) for j in range(d)]
    rhs = [[Scalar.one() if (i == j and i == col) else Scalar.zero()
            for col in range(d)]
           for i in range(d) for j in range(d)]
    x = _solve_dense(a, rhs)
    out = []
    for col in range(d):
        h = HeckeElt(k, {w: x[n][col] for n, w in enumerate(elements)})
        out.append(multiply(z, h))
    return tuple(out)
