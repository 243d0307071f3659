"""Symmetric group combinatorics: permutations in one-line notation, lengths,
canonical reduced words, shuffles and the shuffle decomposition.

Permutations are tuples (p(1), ..., p(k)) with values 1..k.  Composition acts
on positions: (p * r)(x) = p(r(x)).  Under this convention T_v T_w = T_{vw}
whenever lengths add, which is tested at the Hecke level.
"""
from __future__ import annotations

import itertools
from functools import lru_cache
from math import comb

Perm = tuple[int, ...]


def identity(k: int) -> Perm:
    return tuple(range(1, k + 1))


def is_perm(p: Perm) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def compose(p: Perm, r: Perm) -> Perm:
    """(p * r)(x) = p(r(x))."""
    return tuple(p[r[x] - 1] for x in range(len(p)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, v in enumerate(p):
        out[v - 1] = i + 1
    return tuple(out)


def simple(k: int, i: int) -> Perm:
    """The simple transposition s_i in S_k (1 <= i <= k-1)."""
    if not 1 <= i < k:
        raise ValueError(f"generator index {i} out of range for S_{k}")
    p = list(range(1, k + 1))
    p[i - 1], p[i] = p[i], p[i - 1]
    return tuple(p)


def length(p: Perm) -> int:
    """Coxeter length = inversion count."""
    n = len(p)
    return sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])


def longest_element(k: int) -> Perm:
    if k < 1:
        raise ValueError("k must be positive")
    return tuple(range(k, 0, -1))


def reduced_word(p: Perm) -> tuple[int, ...]:
    """Canonical reduced word: repeatedly strip the smallest descent.

    Evaluating the word left to right with `compose` reproduces p, and the
    word length equals length(p).
    """
    word_rev: list[int] = []
    cur = list(p)
    k = len(cur)
    while True:
        for i in range(k - 1):
            if cur[i] > cur[i + 1]:
                cur[i], cur[i + 1] = cur[i + 1], cur[i]
                word_rev.append(i + 1)
                break
        else:
            break
    return tuple(reversed(word_rev))


def eval_word(k: int, word: tuple[int, ...]) -> Perm:
    p = identity(k)
    for i in word:
        p = compose(p, simple(k, i))
    return p


def all_perms(k: int) -> list[Perm]:
    return [tuple(p) for p in itertools.permutations(range(1, k + 1))]


def shuffles(k: int, i: int) -> list[Perm]:
    """Permutations increasing on 1..i and on i+1..k; there are C(k, i) of them.

    Each is determined by the image set of {1..i}.
    """
    if not 1 <= i < k:
        raise ValueError(f"shuffle cut {i} out of range for S_{k}")
    out = []
    universe = range(1, k + 1)
    for subset in itertools.combinations(universe, i):
        rest = sorted(set(universe) - set(subset))
        out.append(tuple(list(subset) + rest))
    assert len(out) == comb(k, i)
    return out


def is_shuffle(p: Perm, i: int) -> bool:
    k = len(p)
    return all(p[m] < p[n] for m in range(i) for n in range(m + 1, i)) and \
        all(p[m] < p[n] for m in range(i, k) for n in range(m + 1, k))


def shuffle_decompose(p: Perm, i: int) -> tuple[Perm, Perm, Perm]:
    """Unique p = p1 * p2 * p3 with p1 a shuffle, p2 fixing i+1..k, p3 fixing 1..i.

    Lengths add: length(p) = length(p1) + length(p2) + length(p3).
    """
    k = len(p)
    if not 1 <= i < k:
        raise ValueError(f"shuffle cut {i} out of range for S_{k}")
    image = sorted(p[:i])
    rest = sorted(set(range(1, k + 1)) - set(image))
    p1 = tuple(image + rest)
    q = compose(inverse(p1), p)
    if any(q[m] > i for m in range(i)) or any(q[m] <= i for m in range(i, k)):
        raise AssertionError("shuffle decomposition failed to split into blocks")
    p2 = tuple(list(q[:i]) + list(range(i + 1, k + 1)))
    p3 = tuple(list(range(1, i + 1)) + list(q[i:]))
    return p1, p2, p3


class GroupTables:
    """Precomputed tables for S_k: element list, lengths, reduced words,
    inverses, and left multiplication by generators.  Built once per k and
    shared read-only afterwards."""

    def __init__(self, k: int):
        self.k = k
        self.elements = all_perms(k)
        self.index = {p: n for n, p in enumerate(self.elements)}
        self.length = [length(p) for p in self.elements]
        self.word = [reduced_word(p) for p in self.elements]
        self.inverse = [self.index[inverse(p)] for p in self.elements]
        # left_mult[i-1][n] = index of s_i * w_n
        self.left_mult = []
        for i in range(1, k):
            s = simple(k, i)
            self.left_mult.append([self.index[compose(s, w)] for w in self.elements])

    def id_index(self) -> int:
        return self.index[identity(self.k)]


@lru_cache(maxsize=None)
def group_tables(k: int) -> GroupTables:
    return GroupTables(k)
