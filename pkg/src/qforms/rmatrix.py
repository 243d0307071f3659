"""The GL_q(N) R-matrix family, the Hecke algebra representations rho and
rho_c on tensor powers of V, content projectors, and the trace functional TR
with values in polynomials in x_1..x_N.

Index convention: operators map input column indices to output row indices;
the convention is pinned operationally by the quadratic relation for rho and
the Schur-function trace identities, both enforced in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import symgroup as sg
from .hecke import HeckeElt
from .partitions import MultiPoly, Partition, conjugate, dim_irrep, partitions
from .scalars import Scalar, SparseMatrix, rank_exact
from .symgroup import Perm
from .tensorop import EXACT, TensorOp, digits_index, index_digits


@dataclass(frozen=True)
class RMatrixFamily:
    """All two-leg operators attached to the fundamental R-matrix of GL_q(N)."""

    n: int
    rhat: TensorOp
    rhat_inv: TensorOp
    rcheck: TensorOp
    rcheck_inv: TensorOp
    rtilde_plus: TensorOp
    rtilde_minus: TensorOp
    rgrave_plus: TensorOp
    rgrave_minus: TensorOp
    p_plus: TensorOp
    p_minus: TensorOp
    p0: TensorOp
    p1: TensorOp
    sbar: Scalar

    def rhat_pow(self, tau: int) -> TensorOp:
        return self.rhat if tau > 0 else self.rhat_inv

    def rcheck_pow(self, tau: int) -> TensorOp:
        return self.rcheck if tau > 0 else self.rcheck_inv

    def rtilde(self, tau: int) -> TensorOp:
        return self.rtilde_plus if tau > 0 else self.rtilde_minus

    def rtilde_inv(self, tau: int) -> TensorOp:
        # (Rtilde^+)^-1 = Rgrave^-, (Rtilde^-)^-1 = Rgrave^+
        return self.rgrave_minus if tau > 0 else self.rgrave_plus


def _rhat_entry_table(n: int) -> dict[tuple[int, int], dict[tuple[int, int], Scalar]]:
    """Column (r, s) -> {(a, b): coefficient}, all indices 1-based."""
    from .scalars import QHAT

    q = Scalar.q_power(1)
    one = Scalar.one()
    table: dict[tuple[int, int], dict[tuple[int, int], Scalar]] = {}
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            if r == s:
                table[(r, s)] = {(r, r): q}
            elif r < s:
                table[(r, s)] = {(s, r): one, (r, s): QHAT}
            else:
                table[(r, s)] = {(s, r): one}
    return table


def _two_leg_op(n: int, entry_fn) -> TensorOp:
    """Build a two-leg operator from a function (a, b, r, s) -> Scalar,
    indices 1-based."""
    op = TensorOp(2, n, EXACT)
    for r in range(1, n + 1):
        for s in range(1, n + 1):
            j = (r - 1) * n + (s - 1)
            for a in range(1, n + 1):
                for b in range(1, n + 1):
                    c = entry_fn(a, b, r, s)
                    if not c.is_zero():
                        op.set_entry((a - 1) * n + (b - 1), j, c)
    return op


@lru_cache(maxsize=None)
def build_family(n: int) -> RMatrixFamily:
    """All R-matrix variants and projectors on V (x) V for GL_q(n)."""
    if n < 2:
        raise ValueError("N must be >= 2")
    from .scalars import QCHECK, QHAT

    rhat_tab = _rhat_entry_table(n)

    def rhat_entry(a, b, r, s):
        return rhat_tab[(r, s)].get((a, b), Scalar.zero())

    rhat = _two_leg_op(n, rhat_entry)
    # T^2 = (q - 1/q) T + 1  =>  Rhat^{-1} = Rhat - (q - 1/q) I
    rhat_inv = rhat - TensorOp.identity(2, n, EXACT).scale(QHAT)

    def rhat_inv_entry(a, b, r, s):
        return rhat_inv.entry((a - 1) * n + (b - 1), (r - 1) * n + (s - 1))

    rcheck = _two_leg_op(n, lambda a, b, r, s: rhat_entry(b, a, s, r))
    rcheck_inv = _two_leg_op(n, lambda a, b, r, s: rhat_inv_entry(b, a, s, r))
    rtilde_plus = _two_leg_op(n, lambda a, b, r, s: rhat_entry(r, a, s, b))
    rtilde_minus = _two_leg_op(n, lambda a, b, r, s: rhat_inv_entry(r, a, s, b))
    rgrave_plus = _two_leg_op(
        n, lambda a, b, r, s: Scalar.q_power(2 * s - 2 * a) * rhat_entry(b, s, a, r))
    rgrave_minus = _two_leg_op(
        n, lambda a, b, r, s: Scalar.q_power(2 * s - 2 * a) * rhat_inv_entry(b, s, a, r))

    ident = TensorOp.identity(2, n, EXACT)
    qc_inv = QCHECK.inverse()
    p_plus = (ident.scale(Scalar.q_power(-1)) + rhat).scale(qc_inv)
    p_minus = (ident.scale(Scalar.q_power(1)) - rhat).scale(qc_inv)

    sbar = Scalar.zero()
    for i in range(1, n + 1):
        sbar = sbar + Scalar.q_power(-2 * i)
    sbar_inv = sbar.inverse()
    p0 = _two_leg_op(
        n, lambda a, b, r, s: sbar_inv * Scalar.q_power(-2 * a)
        if (a == b and r == s) else Scalar.zero())
    p1 = ident - p0

    return RMatrixFamily(n, rhat, rhat_inv, rcheck, rcheck_inv,
                         rtilde_plus, rtilde_minus, rgrave_plus, rgrave_minus,
                         p_plus, p_minus, p0, p1, sbar)


def sbar_plus(n: int) -> Scalar:
    return Scalar.one() + build_family(n).sbar + Scalar.q_power(-2 * n - 2)


def sbar_minus(n: int) -> Scalar:
    return build_family(n).sbar - Scalar.q_power(-2) - Scalar.q_power(-2 * n)


# ---------------------------------------------------------------------------
# Representations rho and rho_c of H_k on V^(x k)
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _rep_basis_op(n: int, k: int, w: Perm, conj: bool) -> TensorOp:
    fam = build_family(n)
    gen = fam.rcheck if conj else fam.rhat
    word = sg.reduced_word(w)
    if not word:
        return TensorOp.identity(k, n, EXACT)

    def apply(v):
        out = v
        for i in reversed(word):
            out = gen.apply_embedded(out, i - 1, k)
        return out

    from .tensorop import materialize
    return materialize(apply, k, n, EXACT)


def rep_rho_basis(k: int, w: Perm, n: int) -> TensorOp:
    """rho(T_w): the product of R-hat factors along a reduced word of w."""
    return _rep_basis_op(n, k, w, False)


def rep_rho_c_basis(k: int, w: Perm, n: int) -> TensorOp:
    """rho_c(T_w): the conjugated representation built from R-check."""
    return _rep_basis_op(n, k, w, True)


def _rep_elt(k: int, h: HeckeElt, n: int, conj: bool) -> TensorOp:
    if h.k != k:
        raise ValueError("degree mismatch")
    out = TensorOp(k, n, EXACT)
    for w, c in h.coeffs.items():
        out = out + _rep_basis_op(n, k, w, conj).scale(c)
    return out


def rep_rho(k: int, h: HeckeElt, n: int) -> TensorOp:
    """The representation rho of H_k on V^(x k) extended linearly."""
    return _rep_elt(k, h, n, False)


def rep_rho_c(k: int, h: HeckeElt, n: int) -> TensorOp:
    return _rep_elt(k, h, n, True)


def content_of_index(idx: int, k: int, n: int) -> tuple[int, ...]:
    """Content composition of a basis vector of V^(x k): letter multiplicities."""
    counts = [0] * n
    for d in index_digits(idx, k, n):
        counts[d] += 1
    return tuple(counts)


def content_projector(c: tuple[int, ...], k: int, n: int) -> TensorOp:
    """E_c: diagonal projector onto tensors of content c."""
    op = TensorOp(k, n, EXACT)
    one = Scalar.one()
    for idx in range(n ** k):
        if content_of_index(idx, k, n) == tuple(c):
            op.set_entry(idx, idx, one)
    return op


def compositions(k: int, n: int) -> list[tuple[int, ...]]:
    if n == 1:
        return [(k,)]
    out = []
    for first in range(k + 1):
        for rest in compositions(k - first, n - 1):
            out.append((first,) + rest)
    return out


def trace_functional(k: int, h: HeckeElt, n: int, conj: bool = False) -> MultiPoly:
    """TR(h) = sum over contents c of x^c tr(E_c rho(h)); a trace functional
    with values in polynomials in x_1..x_N (Scalar coefficients)."""
    op = _rep_elt(k, h, n, conj)
    out = MultiPoly(n)
    for j, col in op.cols.items():
        d = col.get(j)
        if d is not None and not d.is_zero():
            out.add_term(content_of_index(j, k, n), d)
    return out


def schur_weyl_dims(k: int, n: int) -> tuple[int, list[Partition]]:
    """(dim span{rho(T_w)}, partitions lam with rho(z_lam) = 0).

    The span dimension must equal sum of d_lam^2 over lam with at most n rows;
    the vanishing set must be exactly the partitions with more than n rows.
    """
    from .hecke import central_idempotent

    elements = sg.group_tables(k).elements
    dim = n ** (2 * k)
    m = SparseMatrix(len(elements), dim)
    for row, w in enumerate(elements):
        op = rep_rho_basis(k, w, n)
        for j, col in op.cols.items():
            for i, c in col.items():
                m.entries[(row, i * n ** k + j)] = c
    span_dim = rank_exact(m)
    vanishing = [lam for lam in partitions(k)
                 if rep_rho(k, central_idempotent(lam), n).is_zero()]
    return span_dim, vanishing
