"""Partition combinatorics: conjugates, hooks, contents, dimension counts,
Schur polynomials by tableau enumeration, and the counting identities behind
the Poincare series checks.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Mapping

from .scalars import LaurentPoly, Scalar

Partition = tuple[int, ...]


def is_partition(parts) -> bool:
    parts = tuple(parts)
    return all(isinstance(x, int) and x > 0 for x in parts) and \
        all(parts[i] >= parts[i + 1] for i in range(len(parts) - 1))


def weight(lam: Partition) -> int:
    return sum(lam)


@lru_cache(maxsize=None)
def partitions(k: int) -> tuple[Partition, ...]:
    """All partitions of k, in reverse-lexicographic order; () for k = 0."""
    if k == 0:
        return ((),)
    out: list[Partition] = []

    def rec(rest: int, maxpart: int, acc: list[int]):
        if rest == 0:
            out.append(tuple(acc))
            return
        for part in range(min(rest, maxpart), 0, -1):
            acc.append(part)
            rec(rest - part, part, acc)
            acc.pop()

    rec(k, k, [])
    return tuple(out)


def conjugate(lam: Partition) -> Partition:
    if not lam:
        return ()
    return tuple(sum(1 for x in lam if x >= i) for i in range(1, lam[0] + 1))


def boxes(lam: Partition):
    """(i, j) positions of the diagram, 1-based."""
    for i, row in enumerate(lam, start=1):
        for j in range(1, row + 1):
            yield i, j


def hook_length(lam: Partition, i: int, j: int) -> int:
    lamc = conjugate(lam)
    return lam[i - 1] + lamc[j - 1] - i - j + 1


def hook_product(lam: Partition) -> int:
    h = 1
    for i, j in boxes(lam):
        h *= hook_length(lam, i, j)
    return h


def content_sum(lam: Partition) -> int:
    return sum(j - i for i, j in boxes(lam))


def dim_irrep(lam: Partition) -> int:
    """Number of standard tableaux of shape lam (hook length formula)."""
    if not lam:
        return 1
    return factorial(weight(lam)) // hook_product(lam)


def hooks_and_dims(lam: Partition, k: int) -> tuple[int, int, int]:
    """(hook product, irreducible dimension, content sum) for lam of weight k."""
    if weight(lam) != k:
        raise ValueError(f"partition {lam} does not have weight {k}")
    return hook_product(lam), dim_irrep(lam), content_sum(lam)


def delta(lam: Partition, n: int) -> int:
    """s_lam(1, ..., 1) with n ones: prod (n + j - i) / hook product.

    Zero exactly when the diagram has more than n rows.
    """
    if not lam:
        return 1
    num = 1
    for i, j in boxes(lam):
        num *= n + j - i
    return num // hook_product(lam)


# ---------------------------------------------------------------------------
# Polynomials in x_1..x_N
# ---------------------------------------------------------------------------

class MultiPoly:
    """Polynomial in commuting variables x_1..x_N with ring coefficients.

    Terms map exponent tuples to nonzero coefficients (int, Fraction or Scalar).
    """

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Mapping[tuple[int, ...], object] | None = None):
        self.nvars = nvars
        self.terms: dict[tuple[int, ...], object] = {}
        if terms:
            for e, c in terms.items():
                if _nonzero(c):
                    self.terms[tuple(e)] = c

    @staticmethod
    def zero(nvars: int) -> "MultiPoly":
        return MultiPoly(nvars)

    def add_term(self, exps: tuple[int, ...], c):
        cur = self.terms.get(exps)
        s = c if cur is None else cur + c
        if _nonzero(s):
            self.terms[exps] = s
        else:
            self.terms.pop(exps, None)

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        out = MultiPoly(self.nvars, self.terms)
        for e, c in other.terms.items():
            out.add_term(e, c)
        return out

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        out = MultiPoly(self.nvars, self.terms)
        for e, c in other.terms.items():
            out.add_term(e, -c)
        return out

    def __mul__(self, other: "MultiPoly") -> "MultiPoly":
        out = MultiPoly(self.nvars)
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                out.add_term(tuple(a + b for a, b in zip(e1, e2)), c1 * c2)
        return out

    def scale(self, c) -> "MultiPoly":
        out = MultiPoly(self.nvars)
        for e, v in self.terms.items():
            out.add_term(e, v * c)
        return out

    def map_coeffs(self, f) -> "MultiPoly":
        out = MultiPoly(self.nvars)
        for e, v in self.terms.items():
            out.add_term(e, f(v))
        return out

    def eval_ones(self):
        total = None
        for c in self.terms.values():
            total = c if total is None else total + c
        return 0 if total is None else total

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars \
            and self.terms == other.terms

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        bits = []
        for e in sorted(self.terms, reverse=True):
            mono = "*".join(f"x{i+1}^{p}" if p > 1 else f"x{i+1}"
                            for i, p in enumerate(e) if p)
            c = self.terms[e]
            bits.append(f"({c})*{mono}" if mono else f"({c})")
        return " + ".join(bits)


def _nonzero(c) -> bool:
    if isinstance(c, Scalar):
        return not c.is_zero()
    return bool(c)


def schur_poly(lam: Partition, n: int) -> MultiPoly:
    """Schur polynomial s_lam(x_1..x_n) as a sum over semistandard tableaux."""
    out = MultiPoly(n)
    if not lam:
        out.add_term((0,) * n, 1)
        return out
    if len(lam) > n:
        return out
    rows = len(lam)

    def fill(i: int, j: int, tab: list[list[int]], counts: list[int]):
        if i == rows:
            out.add_term(tuple(counts), 1)
            return
        ni, nj = (i, j + 1) if j + 1 < lam[i] else (i + 1, 0)
        lo = tab[i][j - 1] if j > 0 else 1
        if i > 0:
            lo = max(lo, tab[i - 1][j] + 1)
        for v in range(lo, n + 1):
            tab[i][j] = v
            counts[v - 1] += 1
            fill(ni, nj, tab, counts)
            counts[v - 1] -= 1

    tab = [[0] * r for r in lam]
    fill(0, 0, tab, [0] * n)
    return out


def quantum_int(n: int) -> LaurentPoly:
    """[n]_q = (q^n - q^-n)/(q - q^-1) = q^(n-1) + q^(n-3) + ... + q^(1-n)."""
    if n < 0:
        raise ValueError("quantum integer of negative n")
    return LaurentPoly({n - 1 - 2 * j: 1 for j in range(n)})


def t_lambda(lam: Partition, k: int) -> Scalar:
    """Closed form for the eigenvalue of the central element sum_w T_w T_{w^-1}
    on the lam-block: k! q^{c(lam)} prod_x [h(x)]_q / h(lam).

    Cross-checked in the test suite against the direct character sum.
    """
    if weight(lam) != k:
        raise ValueError(f"partition {lam} does not have weight {k}")
    prod = LaurentPoly.one()
    for i, j in boxes(lam):
        prod = prod * quantum_int(hook_length(lam, i, j))
    h = hook_product(lam)
    coeff = Fraction(factorial(k), h)
    return Scalar.from_poly(prod.shift(content_sum(lam)).scale(coeff))


# ---------------------------------------------------------------------------
# Counting identities
# ---------------------------------------------------------------------------

def sum_delta_pairs(n: int, k: int) -> int:
    """sum over lam |- k of delta_{lam'}(n) * delta_lam(n); equals C(n^2, k)."""
    return sum(delta(conjugate(lam), n) * delta(lam, n) for lam in partitions(k))


def self_conjugate_count(n: int, k: int) -> int:
    """Number of self-conjugate partitions of k with at most n rows."""
    return sum(1 for lam in partitions(k)
               if lam == conjugate(lam) and len(lam) <= n)


def odd_parts_series_coeffs(n: int, kmax: int) -> list[int]:
    """Coefficients of (1+t)(1+t^3)...(1+t^(2n-1)) up to degree kmax."""
    coeffs = [0] * (kmax + 1)
    coeffs[0] = 1
    for part in range(1, 2 * n, 2):
        for k in range(kmax, part - 1, -1):
            coeffs[k] += coeffs[k - part]
    return coeffs


def distinct_odd_parts_count(n: int, k: int) -> int:
    """Partitions of k into distinct odd parts < 2n (brute force)."""
    odds = list(range(1, 2 * n, 2))

    def rec(rest: int, idx: int) -> int:
        if rest == 0:
            return 1
        total = 0
        for m in range(idx, len(odds)):
            if odds[m] <= rest:
                total += rec(rest - odds[m], m + 1)
        return total

    return rec(k, 0)


def count_checks(n: int, kmax: int) -> list[dict]:
    """For each k <= kmax, the three counting identities as a table of rows:
    binomial vs delta pairing, self-conjugate count vs series coefficient,
    series coefficient vs distinct odd part count.
    """
    series = odd_parts_series_coeffs(n, kmax)
    rows = []
    for k in range(kmax + 1):
        dd = sum_delta_pairs(n, k)
        sc = self_conjugate_count(n, k)
        dop = distinct_odd_parts_count(n, k)
        rows.append({
            "k": k,
            "delta_pair_sum": dd,
            "binomial": comb(n * n, k),
            "self_conjugate": sc,
            "series_coeff": series[k],
            "distinct_odd": dop,
            "ok": dd == comb(n * n, k) and sc == series[k] and dop == series[k],
        })
    return rows
