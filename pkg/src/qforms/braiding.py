"""The braiding of the N^2-dimensional calculus, Woronowicz antisymmetrizers
via the shuffle recursion, the abstract antisymmetrizer in H_k (x) H_k, its
spectral idempotents, the staircase intertwiner between the two pictures, and
the longest-word braiding.

Leg layout: calculus-side coordinates are interleaved (i1 j1 i2 j2 ...), so the
braiding at calculus position i occupies V-legs 2i-1..2i+2 (1-based).  The
representation rho_tau lives on the block layout (i1..ik j1..jk); the staircase
intertwiner converts between the two and is pinned by its intertwining test.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import hecke as hk
from . import symgroup as sg
from .hecke import HeckeElt
from .partitions import Partition, conjugate, partitions
from .rmatrix import RMatrixFamily, build_family
from .scalars import Scalar
from .symgroup import Perm
from .tensorop import EXACT, TensorOp, Vec, materialize, vec_add_scaled


# ---------------------------------------------------------------------------
# H_k (x) H_k
# ---------------------------------------------------------------------------

class HHElt:
    """Element of H_k (x) H_k: sparse map (v, w) -> Scalar with factorwise
    multiplication (a (x) b)(c (x) d) = ac (x) bd."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: dict[tuple[Perm, Perm], Scalar] | None = None):
        self.k = k
        self.coeffs: dict[tuple[Perm, Perm], Scalar] = {}
        if coeffs:
            for key, c in coeffs.items():
                if not c.is_zero():
                    self.coeffs[key] = c

    @staticmethod
    def unit(k: int) -> "HHElt":
        ident = sg.identity(k)
        return HHElt(k, {(ident, ident): Scalar.one()})

    @staticmethod
    def from_pair(a: HeckeElt, b: HeckeElt) -> "HHElt":
        if a.k != b.k:
            raise ValueError("degree mismatch")
        out = HHElt(a.k)
        for v, cv in a.coeffs.items():
            for w, cw in b.coeffs.items():
                out._add_term(v, w, cv * cw)
        return out

    def _add_term(self, v: Perm, w: Perm, c: Scalar):
        key = (v, w)
        cur = self.coeffs.get(key)
        s = c if cur is None else cur + c
        if s.is_zero():
            self.coeffs.pop(key, None)
        else:
            self.coeffs[key] = s

    def __add__(self, other: "HHElt") -> "HHElt":
        out = HHElt(self.k, self.coeffs)
        for (v, w), c in other.coeffs.items():
            out._add_term(v, w, c)
        return out

    def __sub__(self, other: "HHElt") -> "HHElt":
        out = HHElt(self.k, self.coeffs)
        for (v, w), c in other.coeffs.items():
            out._add_term(v, w, -c)
        return out

    def scale(self, c: Scalar) -> "HHElt":
        if c.is_zero():
            return HHElt(self.k)
        return HHElt(self.k, {key: val * c for key, val in self.coeffs.items()})

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return isinstance(other, HHElt) and self.k == other.k \
            and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(f"({c!r})*T{list(v)}(x)T{list(w)}"
                          for (v, w), c in sorted(self.coeffs.items()))


@lru_cache(maxsize=None)
def _basis_product(k: int, a: Perm, b: Perm) -> HeckeElt:
    return hk.multiply(HeckeElt.basis(k, a), HeckeElt.basis(k, b))


def hh_multiply(a: HHElt, b: HHElt) -> HHElt:
    if a.k != b.k:
        raise ValueError("degree mismatch")
    out = HHElt(a.k)
    for (v1, w1), c1 in a.coeffs.items():
        for (v2, w2), c2 in b.coeffs.items():
            c = c1 * c2
            left = _basis_product(a.k, v1, v2)
            right = _basis_product(a.k, w1, w2)
            for v, cv in left.coeffs.items():
                cvc = c * cv
                for w, cw in right.coeffs.items():
                    out._add_term(v, w, cvc * cw)
    return out


def hh_multiply_left_factor(h: HeckeElt, a: HHElt) -> HHElt:
    """(h (x) 1) * a."""
    return hh_multiply(HHElt.from_pair(h, HeckeElt.unit(a.k)), a)


def bsig_generator(k: int, i: int) -> HHElt:
    """The braid generator image T_i^{-1} (x) T_i in H_k (x) H_k."""
    return HHElt.from_pair(hk.invert_basis(k, sg.simple(k, i)),
                           HeckeElt.generator(k, i))


@lru_cache(maxsize=None)
def bsig_word(k: int, w: Perm) -> HHElt:
    """Image of the braid-group lift b_w: the product of T_i^{-1} (x) T_i
    along a reduced word of w."""
    out = HHElt.unit(k)
    for i in sg.reduced_word(w):
        out = hh_multiply(out, bsig_generator(k, i))
    return out


@lru_cache(maxsize=None)
def abstract_antisym(k: int) -> HHElt:
    """The antisymmetrizer sum_w T_w' (x) T_w* in H_k (x) H_k."""
    out = HHElt(k)
    for w in sg.group_tables(k).elements:
        left = hk.prime(HeckeElt.basis(k, w))
        winv = sg.inverse(w)
        for v, c in left.coeffs.items():
            out._add_term(v, winv, c)
    return out


def abstract_antisym_bruteforce(k: int) -> HHElt:
    """sum_w (-1)^{l(w)} bsig(b_w); must agree with abstract_antisym."""
    out = HHElt(k)
    tables = sg.group_tables(k)
    for n, w in enumerate(tables.elements):
        sign = -1 if tables.length[n] % 2 else 1
        term = bsig_word(k, w)
        for (v, u), c in term.coeffs.items():
            out._add_term(v, u, c.scale_int(sign))
    return out


def abstract_antisym_shuffle(k: int) -> HHElt:
    """The shuffle recursion evaluated inside H_k (x) H_k.

    Level j multiplies by the signed sum of ascending generator chains
    b_{j-m}...b_{j-1}, the braid lifts of the shuffles with cut j-1 under the
    position-composition convention; each chain extends the previous one by a
    single outer factor.
    """
    cur = HHElt.unit(k)
    for j in range(2, k + 1):
        acc = cur
        term = cur
        sign = 1
        for m in range(1, j):
            term = hh_multiply(bsig_generator(k, j - m), term)
            sign = -sign
            acc = acc + term.scale(Scalar.from_int(sign))
        cur = acc
    return cur


def pi_lambda(k: int, lam: Partition) -> HHElt:
    """pi_lam = t_lam^{-1} A_k (z_{lam'} (x) z_lam): the spectral idempotents."""
    t = hk.t_lambda_direct(lam)
    if t.is_zero():
        raise ZeroDivisionError(f"t_lambda vanishes for {lam}")
    return hh_multiply(abstract_antisym(k), zz_pair(lam)).scale(t.inverse())


def zz_pair(lam: Partition) -> HHElt:
    """z_{lam'} (x) z_lam."""
    return HHElt.from_pair(hk.central_idempotent(conjugate(lam)),
                           hk.central_idempotent(lam))


# ---------------------------------------------------------------------------
# The braiding sigma on the calculus side
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BraidingOp:
    """The braiding of the calculus on V^(x4) (interleaved layout), plus the
    two-leg constituents needed to embed it anywhere."""

    tau: int  # +1 or -1
    n: int
    sigma: TensorOp  # on V^(x4)

    def apply_at(self, v: Vec, i: int, k: int) -> Vec:
        """Apply sigma at calculus position i (1-based) inside V^(x 2k)."""
        return self.sigma.apply_embedded(v, 2 * (i - 1), 2 * k)


def parse_tau(tau) -> int:
    if tau in (1, -1):
        return tau
    if tau in ("+", "plus", "+1"):
        return 1
    if tau in ("-", "minus", "-1", "−"):
        return -1
    raise ValueError(f"invalid tau: {tau!r}")


@lru_cache(maxsize=None)
def build_sigma(tau, n: int) -> BraidingOp:
    """sigma_tau = Rtilde_23 Rcheck^{-tau}_12 Rhat^{tau}_34 (Rtilde_23)^{-1}."""
    t = parse_tau(tau)
    fam = build_family(n)
    rt = fam.rtilde(t)
    rt_inv = fam.rtilde_inv(t)
    rc = fam.rcheck_pow(-t)
    rh = fam.rhat_pow(t)

    def apply(v: Vec) -> Vec:
        out = rt_inv.apply_embedded(v, 1, 4)
        out = rh.apply_embedded(out, 2, 4)
        out = rc.apply_embedded(out, 0, 4)
        return rt.apply_embedded(out, 1, 4)

    sigma = materialize(apply, 4, n, EXACT)
    return BraidingOp(t, n, sigma)


def theta_vector(n: int) -> Vec:
    """theta = sum_i q^{-2i} e_i (x) e_i in V (x) V."""
    return {(i - 1) * n + (i - 1): Scalar.q_power(-2 * i) for i in range(1, n + 1)}


# ---------------------------------------------------------------------------
# Antisymmetrizer recursion (generic over the vector representation)
# ---------------------------------------------------------------------------

def antisym_apply(k: int, x, apply_sigma, add, scale_sign):
    """Evaluate A_k x through A_k = A_{k,k-1}(A_{k-1} (x) I), where A_{k,k-1}
    is the signed sum of ascending chains sigma_{k-m}...sigma_{k-1} (the braid
    lifts of the cut-(k-1) shuffles); each chain reuses the previous one, so
    the whole evaluation costs k(k-1)/2 braiding applications.

    `apply_sigma(i, y)` applies the braiding at calculus position i,
    `add(a, b)` adds vectors, `scale_sign(y, s)` scales by +-1.
    """
    cur = x
    for j in range(2, k + 1):
        acc = cur
        term = cur
        sign = 1
        for m in range(1, j):
            term = apply_sigma(j - m, term)
            sign = -sign
            acc = add(acc, scale_sign(term, sign))
        cur = acc
    return cur


def _vec_add(field):
    def add(a: Vec, b: Vec) -> Vec:
        out = dict(a)
        vec_add_scaled(field, out, b, field.one())
        return out
    return add


def _vec_sign(field):
    def scale_sign(v: Vec, s: int) -> Vec:
        if s == 1:
            return v
        return {i: field.neg(c) for i, c in v.items()}
    return scale_sign


def antisym_apply_vec(k: int, sigma: BraidingOp, v: Vec) -> Vec:
    field = sigma.sigma.field
    return antisym_apply(k, v, lambda i, y: sigma.apply_at(y, i, k),
                         _vec_add(field), _vec_sign(field))


def woronowicz_antisym(k: int, sigma: BraidingOp) -> TensorOp:
    """A_k on V^(x 2k) via the shuffle recursion."""
    return materialize(lambda v: antisym_apply_vec(k, sigma, v),
                       2 * k, sigma.n, sigma.sigma.field)


def woronowicz_antisym_bruteforce(k: int, sigma: BraidingOp) -> TensorOp:
    """sum over S_k of (-1)^{l(w)} sigma_w, term by term (small k only)."""
    field = sigma.sigma.field
    tables = sg.group_tables(k)

    def apply(v: Vec) -> Vec:
        out: Vec = {}
        for nidx, w in enumerate(tables.elements):
            term = v
            for i in reversed(tables.word[nidx]):
                term = sigma.apply_at(term, i, k)
            sign = field.from_int((-1) ** tables.length[nidx])
            vec_add_scaled(field, out, term, sign)
        return out

    return materialize(apply, 2 * k, sigma.n, field)


def sigma_w_apply(sigma: BraidingOp, w: Perm, v: Vec, k: int) -> Vec:
    """sigma_w = product of braidings along a reduced word of w."""
    for i in reversed(sg.reduced_word(w)):
        v = sigma.apply_at(v, i, k)
    return v


def sigma_w0(k: int, sigma: BraidingOp) -> TensorOp:
    """The braiding of the longest word of S_k on V^(x 2k)."""
    w0 = sg.longest_element(k)
    return materialize(lambda v: sigma_w_apply(sigma, w0, v, k),
                       2 * k, sigma.n, sigma.sigma.field)


# ---------------------------------------------------------------------------
# rho_tau on the block layout and the staircase intertwiner
# ---------------------------------------------------------------------------

def rho_tau_generator_apply(tau, fam: RMatrixFamily, k: int, i: int, v: Vec) -> Vec:
    """Apply rho_tau(T_i^{-1} (x) T_i) on the block layout (2k legs)."""
    t = parse_tau(tau)
    if t > 0:
        # rho_c(T_i^{-1}) on dual legs, rho(T_i) on vector legs
        v = fam.rcheck_inv.apply_embedded(v, i - 1, 2 * k)
        return fam.rhat.apply_embedded(v, k + i - 1, 2 * k)
    v = fam.rcheck.apply_embedded(v, i - 1, 2 * k)
    return fam.rhat_inv.apply_embedded(v, k + i - 1, 2 * k)


def rho_tau_pair_op(tau, v: Perm, w: Perm, k: int, n: int) -> TensorOp:
    """rho_tau(T_v (x) T_w) on the block layout."""
    from .rmatrix import rep_rho_basis, rep_rho_c_basis

    t = parse_tau(tau)
    if t > 0:
        left, right = rep_rho_c_basis(k, v, n), rep_rho_basis(k, w, n)
    else:
        left, right = rep_rho_c_basis(k, w, n), rep_rho_basis(k, v, n)
    field = left.field
    nk = n ** k
    cols: dict[int, Vec] = {}
    for j1, col1 in left.cols.items():
        for j2, col2 in right.cols.items():
            col: Vec = {}
            for i1, c1 in col1.items():
                for i2, c2 in col2.items():
                    col[i1 * nk + i2] = field.mul(c1, c2)
            if col:
                cols[j1 * nk + j2] = col
    return TensorOp(2 * k, n, field, cols)


def rho_tau(tau, h: HHElt, k: int, n: int) -> TensorOp:
    """rho_+ = rho_c (x) rho, rho_- = (rho_c (x) rho) after swapping factors."""
    if h.k != k:
        raise ValueError("degree mismatch")
    out = TensorOp(2 * k, n, EXACT)
    for (v, w), c in h.coeffs.items():
        out = out + rho_tau_pair_op(tau, v, w, k, n).scale(c)
    return out


def abstract_antisym_apply_vec(tau, k: int, n: int, v: Vec,
                               fam: RMatrixFamily | None = None) -> Vec:
    """a_k v = rho_tau(A_k) v through the shuffle recursion (block layout)."""
    fam = fam or build_family(n)
    field = fam.rhat.field
    return antisym_apply(
        k, v, lambda i, y: rho_tau_generator_apply(tau, fam, k, i, y),
        _vec_add(field), _vec_sign(field))


def abstract_antisym_op(tau, k: int, n: int) -> TensorOp:
    """a_k = rho_tau(A_k) materialised on V^(x 2k)."""
    fam = build_family(n)
    return materialize(lambda v: abstract_antisym_apply_vec(tau, k, n, v, fam),
                       2 * k, n, EXACT)


def bsig_w0_apply_vec(tau, k: int, n: int, v: Vec) -> Vec:
    """rho_tau(bsig(b_{w0})) v: the longest-word chain of T^{-1} (x) T images."""
    fam = build_family(n)
    for i in reversed(sg.reduced_word(sg.longest_element(k))):
        v = rho_tau_generator_apply(tau, fam, k, i, v)
    return v


@lru_cache(maxsize=None)
def theta_iso(k: int, tau, n: int) -> TensorOp:
    """The staircase isomorphism between the block and interleaved layouts:
    Theta_1 = I, Theta_k = prod_{i=k-1..1} (Rt_{2i} Rt_{2i+1} ... Rt_{k+i-1}),
    with Rt at V-leg positions (1-based).  Invertible; intertwines a_k with A_k.
    """
    t = parse_tau(tau)
    fam = build_family(n)
    rt = fam.rtilde(t)
    if k == 1:
        return TensorOp.identity(2, n, EXACT)

    # positions, leftmost factor first
    positions: list[int] = []
    for i in range(k - 1, 0, -1):
        positions.extend(range(2 * i, k + i))

    def apply(v: Vec) -> Vec:
        for pos in reversed(positions):
            v = rt.apply_embedded(v, pos - 1, 2 * k)
        return v

    return materialize(apply, 2 * k, n, EXACT)


def theta_iso_apply_vec(k: int, tau, n: int, v: Vec) -> Vec:
    t = parse_tau(tau)
    fam = build_family(n)
    rt = fam.rtilde(t)
    positions: list[int] = []
    for i in range(k - 1, 0, -1):
        positions.extend(range(2 * i, k + i))
    for pos in reversed(positions):
        v = rt.apply_embedded(v, pos - 1, 2 * k)
    return v


# ---------------------------------------------------------------------------
# Modular fast path: numpy blocks of column vectors
# ---------------------------------------------------------------------------

class ModularSigma:
    """sigma_tau and the rho_tau generators specialised at (p, q0), acting on
    numpy blocks of columns via leg-index reshapes."""

    def __init__(self, tau, n: int, p: int, q0: int):
        import numpy as np

        self.tau = parse_tau(tau)
        self.n = n
        self.p = p
        self.q0 = q0
        fam = build_family(n)
        sig = build_sigma(self.tau, n)
        self.sigma4 = sig.sigma.to_numpy_mod(p, q0)      # N^4 x N^4
        self.rhat = fam.rhat.to_numpy_mod(p, q0)
        self.rhat_inv = fam.rhat_inv.to_numpy_mod(p, q0)
        self.rcheck = fam.rcheck.to_numpy_mod(p, q0)
        self.rcheck_inv = fam.rcheck_inv.to_numpy_mod(p, q0)

    def _apply(self, mat, x, offset_legs: int, op_legs: int, total_legs: int):
        import numpy as np

        from .modmat import apply_axis1_mod

        n = self.n
        cols = x.shape[1]
        pre = n ** offset_legs
        blk = n ** op_legs
        post = n ** (total_legs - offset_legs - op_legs)
        y = np.ascontiguousarray(x).reshape(pre, blk, post * cols)
        out = apply_axis1_mod(mat, y, self.p)
        return out.reshape(pre * blk * post, cols)

    def apply_sigma(self, i: int, x, k: int):
        """sigma at calculus position i on V^(x 2k) column block."""
        return self._apply(self.sigma4, x, 2 * (i - 1), 4, 2 * k)

    def apply_rho_generator(self, i: int, x, k: int):
        if self.tau > 0:
            x = self._apply(self.rcheck_inv, x, i - 1, 2, 2 * k)
            return self._apply(self.rhat, x, k + i - 1, 2, 2 * k)
        x = self._apply(self.rcheck, x, i - 1, 2, 2 * k)
        return self._apply(self.rhat_inv, x, k + i - 1, 2, 2 * k)

    def antisym_block(self, k: int, x, side: str = "sigma"):
        """A_k (side="sigma", interleaved) or a_k (side="rho", block layout)
        applied to a column block."""
        apply = (lambda i, y: self.apply_sigma(i, y, k)) if side == "sigma" \
            else (lambda i, y: self.apply_rho_generator(i, y, k))
        return antisym_apply(k, x, apply,
                             lambda a, b: (a + b) % self.p,
                             lambda y, s: y if s == 1 else (-y) % self.p)
