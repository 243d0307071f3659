"""Sparse operators on tensor powers of V = C^N with exact or modular entries.

Operators are stored column-major (input basis index -> sparse output column).
Embedding into larger tensor powers ("leg numbering") is index arithmetic on
basis indices, never an explicit Kronecker product with identities.
"""
from __future__ import annotations

from typing import Callable, Iterable

from .scalars import BadEvaluationPoint, Scalar, specialize


class ExactField:
    """Adapter exposing Q(q) scalars through the coefficient-field interface."""

    name = "exact"

    def zero(self):
        return Scalar.zero()

    def one(self):
        return Scalar.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return a.inverse()

    def is_zero(self, a) -> bool:
        return a.is_zero()

    def from_int(self, n: int):
        return Scalar.from_int(n)

    def q_power(self, n: int, coeff: int = 1):
        return Scalar.q_power(n, coeff)

    def from_scalar(self, s: Scalar):
        return s

    def key(self):
        return "exact"


class ModField:
    """The field F_p with q specialised to q0; elements are plain ints."""

    name = "modular"

    def __init__(self, p: int, q0: int):
        self.p = p
        self.q0 = q0 % p
        if self.q0 == 0:
            raise BadEvaluationPoint("q0 must be nonzero mod p")
        self._q0_inv = pow(self.q0, p - 2, p)

    def zero(self):
        return 0

    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return a * b % self.p

    def neg(self, a):
        return -a % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a) -> bool:
        return a % self.p == 0

    def from_int(self, n: int):
        return n % self.p

    def q_power(self, n: int, coeff: int = 1):
        base = self.q0 if n >= 0 else self._q0_inv
        return coeff % self.p * pow(base, abs(n), self.p) % self.p

    def from_scalar(self, s: Scalar):
        return specialize(s, self.p, self.q0).value

    def key(self):
        return ("mod", self.p, self.q0)


EXACT = ExactField()

Vec = dict  # basis index -> coefficient


def vec_add_scaled(field, acc: Vec, v: Vec, c) -> None:
    """acc += c * v in place."""
    if field.is_zero(c):
        return
    for i, a in v.items():
        s = field.add(acc.get(i, field.zero()), field.mul(c, a))
        if field.is_zero(s):
            acc.pop(i, None)
        else:
            acc[i] = s


def vec_sub(field, a: Vec, b: Vec) -> Vec:
    out = dict(a)
    for i, c in b.items():
        s = field.sub(out.get(i, field.zero()), c)
        if field.is_zero(s):
            out.pop(i, None)
        else:
            out[i] = s
    return out


def vec_scale(field, v: Vec, c) -> Vec:
    if field.is_zero(c):
        return {}
    return {i: field.mul(c, a) for i, a in v.items()}


def vec_equal(field, a: Vec, b: Vec) -> bool:
    if len(a) != len(b):
        return False
    z = field.zero()
    for i, c in a.items():
        d = b.get(i)
        if d is None or not field.is_zero(field.sub(c, d)):
            return False
    return True


class TensorOp:
    """Sparse linear operator on V^(x legs), V = C^N."""

    __slots__ = ("legs", "n", "field", "cols")

    def __init__(self, legs: int, n: int, field, cols: dict[int, Vec] | None = None):
        self.legs = legs
        self.n = n
        self.field = field
        self.cols: dict[int, Vec] = cols if cols is not None else {}

    @property
    def dim(self) -> int:
        return self.n ** self.legs

    @staticmethod
    def identity(legs: int, n: int, field) -> "TensorOp":
        one = field.one()
        return TensorOp(legs, n, field, {i: {i: one} for i in range(n ** legs)})

    def clone(self) -> "TensorOp":
        return TensorOp(self.legs, self.n, self.field,
                        {j: dict(col) for j, col in self.cols.items()})

    def set_entry(self, out_idx: int, in_idx: int, c):
        if self.field.is_zero(c):
            return
        self.cols.setdefault(in_idx, {})[out_idx] = c

    def entry(self, out_idx: int, in_idx: int):
        return self.cols.get(in_idx, {}).get(out_idx, self.field.zero())

    def nnz(self) -> int:
        return sum(len(c) for c in self.cols.values())

    def apply_vec(self, v: Vec) -> Vec:
        field = self.field
        out: Vec = {}
        for j, c in v.items():
            col = self.cols.get(j)
            if col:
                vec_add_scaled(field, out, col, c)
        return out

    def compose(self, other: "TensorOp") -> "TensorOp":
        """self o other: apply other first."""
        if (self.legs, self.n) != (other.legs, other.n):
            raise ValueError("operator shape mismatch")
        cols = {}
        for j, col in other.cols.items():
            image = self.apply_vec(col)
            if image:
                cols[j] = image
        return TensorOp(self.legs, self.n, self.field, cols)

    def __add__(self, other: "TensorOp") -> "TensorOp":
        if (self.legs, self.n) != (other.legs, other.n):
            raise ValueError("operator shape mismatch")
        field = self.field
        cols = {j: dict(col) for j, col in self.cols.items()}
        for j, col in other.cols.items():
            acc = cols.setdefault(j, {})
            vec_add_scaled(field, acc, col, field.one())
            if not acc:
                del cols[j]
        return TensorOp(self.legs, self.n, field, cols)

    def __sub__(self, other: "TensorOp") -> "TensorOp":
        return self + other.scale(self.field.from_int(-1))

    def scale(self, c) -> "TensorOp":
        field = self.field
        if field.is_zero(c):
            return TensorOp(self.legs, self.n, field)
        return TensorOp(self.legs, self.n, field,
                        {j: {i: field.mul(c, v) for i, v in col.items()}
                         for j, col in self.cols.items()})

    def transpose(self) -> "TensorOp":
        cols: dict[int, Vec] = {}
        for j, col in self.cols.items():
            for i, c in col.items():
                cols.setdefault(i, {})[j] = c
        return TensorOp(self.legs, self.n, self.field, cols)

    def is_zero(self) -> bool:
        return all(not col for col in self.cols.values())

    def equals(self, other: "TensorOp") -> bool:
        if (self.legs, self.n) != (other.legs, other.n):
            return False
        keys = set(self.cols) | set(other.cols)
        for j in keys:
            if not vec_equal(self.field, self.cols.get(j, {}), other.cols.get(j, {})):
                return False
        return True

    # -- embedding into larger tensor powers ---------------------------------

    def apply_embedded(self, v: Vec, offset: int, total_legs: int) -> Vec:
        """Apply self on legs [offset, offset + self.legs) of V^(x total_legs)."""
        n = self.n
        block = n ** self.legs
        suffix = n ** (total_legs - offset - self.legs)
        bs = block * suffix
        field = self.field
        out: Vec = {}
        for idx, c in v.items():
            pre = idx // bs
            rem = idx - pre * bs
            b = rem // suffix
            suf = rem - b * suffix
            col = self.cols.get(b)
            if not col:
                continue
            base = pre * bs + suf
            for r, a in col.items():
                t = base + r * suffix
                s = field.add(out.get(t, field.zero()), field.mul(a, c))
                if field.is_zero(s):
                    out.pop(t, None)
                else:
                    out[t] = s
        return out

    # -- conversions ----------------------------------------------------------

    def to_sparse_matrix(self):
        from .scalars import SparseMatrix

        m = SparseMatrix(self.dim, self.dim)
        for j, col in self.cols.items():
            for i, c in col.items():
                if not self.field.is_zero(c):
                    m.entries[(i, j)] = c
        return m

    def map_field(self, new_field, convert: Callable) -> "TensorOp":
        cols = {}
        for j, col in self.cols.items():
            nc = {}
            for i, c in col.items():
                v = convert(c)
                if not new_field.is_zero(v):
                    nc[i] = v
            if nc:
                cols[j] = nc
        return TensorOp(self.legs, self.n, new_field, cols)

    def to_numpy_mod(self, p: int, q0: int):
        """Dense int64 matrix of the operator specialised at (p, q0)."""
        import numpy as np

        a = np.zeros((self.dim, self.dim), dtype=np.int64)
        for j, col in self.cols.items():
            for i, c in col.items():
                if isinstance(c, Scalar):
                    a[i, j] = specialize(c, p, q0).value
                else:
                    a[i, j] = c % p
        return a


def materialize(apply_fn: Callable[[Vec], Vec], legs: int, n: int, field) -> TensorOp:
    """Build the matrix of a linear map given as a vector-level callable."""
    one = field.one()
    cols = {}
    for j in range(n ** legs):
        image = apply_fn({j: one})
        if image:
            cols[j] = image
    return TensorOp(legs, n, field, cols)


def index_digits(idx: int, legs: int, n: int) -> tuple[int, ...]:
    """Basis index -> leg digits (leftmost tensor factor first), 0-based."""
    out = []
    for _ in range(legs):
        idx, d = divmod(idx, n)
        out.append(d)
    return tuple(reversed(out))


def digits_index(digits: Iterable[int], n: int) -> int:
    idx = 0
    for d in digits:
        idx = idx * n + d
    return idx
