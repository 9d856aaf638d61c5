"""Canonical storage for symmetric tensors of order d and dimension n.

Entries are keyed by sorted (non-decreasing) 1-based index tuples; a single
default value covers every canonical tuple absent from the map, which matches
the "value v otherwise" shape of the motivating examples.  Values may be exact
``fractions.Fraction`` (rational mode) or floats; the hierarchy modules state
which mode they require.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from types import MappingProxyType
from typing import Iterator, Mapping, Sequence

from .combinatorics import enumerate_exponents, tuple_multiplicity

Scalar = Fraction | int | float
Index = tuple[int, ...]


def canonicalize(idx: Sequence[int], n: int) -> Index:
    """Sort an index tuple into canonical non-decreasing form.

    Raises ValueError if any component falls outside 1..n.
    """
    for i in idx:
        if not 1 <= i <= n:
            raise ValueError(f"index component {i} out of range 1..{n}")
    return tuple(sorted(idx))


def canonical_tuples(n: int, d: int) -> Iterator[Index]:
    """All sorted index tuples of length d over 1..n, lexicographic order."""
    return itertools.combinations_with_replacement(range(1, n + 1), d)


@dataclass(frozen=True)
class SymTensor:
    """Immutable symmetric tensor; mutate through :class:`SymTensorBuilder`."""

    n: int
    d: int
    entries: Mapping[Index, Scalar] = field(default_factory=dict)
    default: Scalar = 0

    def __post_init__(self):
        if self.n < 1 or self.d < 1:
            raise ValueError("n and d must be positive")
        for key in self.entries:
            if len(key) != self.d:
                raise ValueError(f"key {key} has length {len(key)}, expected {self.d}")
            if canonicalize(key, self.n) != key:
                raise ValueError(f"key {key} is not in canonical sorted form")
        object.__setattr__(self, "entries", MappingProxyType(dict(self.entries)))

    def get(self, idx: Sequence[int]) -> Scalar:
        key = canonicalize(idx, self.n)
        if len(key) != self.d:
            raise ValueError(f"index length {len(key)} does not match order {self.d}")
        return self.entries.get(key, self.default)

    def is_rational(self) -> bool:
        """True when every value (including the default) is exact."""
        if not isinstance(self.default, Rational):
            return False
        return all(isinstance(v, Rational) for v in self.entries.values())

    def max_abs_entry(self) -> float:
        vals = [abs(self.default)] + [abs(v) for v in self.entries.values()]
        return max(vals)

    def items(self) -> Iterator[tuple[Index, Scalar]]:
        """All (canonical tuple, value) pairs, defaults included, lex order."""
        for key in canonical_tuples(self.n, self.d):
            yield key, self.entries.get(key, self.default)

    def nonzero_items(self) -> Iterator[tuple[Index, Scalar]]:
        if self.default != 0:
            yield from self.items()
            return
        for key in sorted(self.entries):
            v = self.entries[key]
            if v != 0:
                yield key, v

    def diag_vector(self) -> tuple[Scalar, ...]:
        return tuple(self.get((i,) * self.d) for i in range(1, self.n + 1))


class SymTensorBuilder:
    """The only mutation path; produces immutable SymTensor values."""

    def __init__(self, n: int, d: int, default: Scalar = 0):
        if n < 1 or d < 1:
            raise ValueError("n and d must be positive")
        self.n = n
        self.d = d
        self.default = default
        self._entries: dict[Index, Scalar] = {}

    def set(self, idx: Sequence[int], value: Scalar) -> "SymTensorBuilder":
        if len(idx) != self.d:
            raise ValueError(f"index length {len(idx)} does not match order {self.d}")
        self._entries[canonicalize(idx, self.n)] = value
        return self

    def build(self) -> SymTensor:
        return SymTensor(self.n, self.d, dict(self._entries), self.default)


def from_matrix(rows: Sequence[Sequence[Scalar]]) -> SymTensor:
    """Order-2 tensor from a symmetric matrix given as nested rows."""
    n = len(rows)
    b = SymTensorBuilder(n, 2)
    for i in range(n):
        if len(rows[i]) != n:
            raise ValueError("matrix is not square")
        for j in range(i, n):
            if rows[i][j] != rows[j][i]:
                raise ValueError("matrix is not symmetric")
            if rows[i][j] != 0:
                b.set((i + 1, j + 1), rows[i][j])
    return b.build()


def diag_tensor(theta: Sequence[Scalar], d: int) -> SymTensor:
    """Diagonal tensor of order d with theta_i at position (i,...,i)."""
    n = len(theta)
    b = SymTensorBuilder(n, d)
    for i, v in enumerate(theta, start=1):
        if v != 0:
            b.set((i,) * d, v)
    return b.build()


def rank_one(x: Sequence[Scalar], d: int) -> SymTensor:
    """The d-fold tensor power of x: entry (i_1..i_d) is x_{i_1}...x_{i_d}."""
    if d < 1:
        raise ValueError("d must be >= 1")
    n = len(x)
    b = SymTensorBuilder(n, d)
    for key in canonical_tuples(n, d):
        v = 1
        for i in key:
            v = v * x[i - 1]
        if v != 0:
            b.set(key, v)
    return b.build()


def mixed_rank_one(u: Sequence[Scalar], v: Sequence[Scalar], a: int, d: int) -> SymTensor:
    """Symmetrization of the split product u^(x a) (x) v^(x (d-a)).

    Entry at (i_1..i_d) averages over the binomial(d, a) position choices for
    the u-factors, so pairing with any symmetric tensor reproduces the plain
    (unsymmetrized) product pairing.
    """
    if not 1 <= a <= d - 1:
        raise ValueError(f"split a={a} out of range 1..{d - 1}")
    if len(u) != len(v):
        raise ValueError("u and v must have the same dimension")
    n = len(u)
    b = SymTensorBuilder(n, d)
    positions = list(range(d))
    nchoices = 0
    for key in canonical_tuples(n, d):
        total = 0
        nchoices = 0
        for chosen in itertools.combinations(positions, a):
            cs = set(chosen)
            term = 1
            for p, i in enumerate(key):
                term = term * (u[i - 1] if p in cs else v[i - 1])
            total = total + term
            nchoices += 1
        if total != 0:
            b.set(key, Fraction(total, nchoices) if isinstance(total, (int, Fraction))
                  else total / nchoices)
    return b.build()


def eval_form(A: SymTensor, x: Sequence[Scalar]) -> Scalar:
    """The associated homogeneous form: sum over all n^d index tuples of
    a_{i_1..i_d} x_{i_1}...x_{i_d}, computed over canonical tuples weighted by
    permutation multiplicity.  Exact when A and x are rational.
    """
    if len(x) != A.n:
        raise ValueError(f"vector has dimension {len(x)}, tensor has n={A.n}")
    total = 0
    for key, a in A.items():
        if a == 0:
            continue
        term = a
        for i in key:
            term = term * x[i - 1]
        total = total + tuple_multiplicity(key) * term
    return total


def inner_product(A: SymTensor, B: SymTensor) -> Scalar:
    """<A, B> = sum over all n^d tuples of a_t * b_t."""
    if (A.n, A.d) != (B.n, B.d):
        raise ValueError(f"shape mismatch: ({A.n},{A.d}) vs ({B.n},{B.d})")
    total = 0
    for key, a in A.items():
        b = B.entries.get(key, B.default)
        if a == 0 or b == 0:
            continue
        total = total + tuple_multiplicity(key) * a * b
    return total


def multi_product(A: SymTensor, vectors: Sequence[Sequence[Scalar]]) -> Scalar:
    """<A, w_1 (x) w_2 (x) ... (x) w_d> by summation over all n^d tuples.

    The factors need not coincide, so no multiplicity shortcut applies; sizes
    stay small enough (n^d) that the literal sum is fine.
    """
    if len(vectors) != A.d:
        raise ValueError(f"expected {A.d} factors, got {len(vectors)}")
    for w in vectors:
        if len(w) != A.n:
            raise ValueError("factor dimension mismatch")
    total = 0
    for tup in itertools.product(range(1, A.n + 1), repeat=A.d):
        a = A.entries.get(tuple(sorted(tup)), A.default)
        if a == 0:
            continue
        term = a
        for w, i in zip(vectors, tup):
            term = term * w[i - 1]
        total = total + term
    return total


@dataclass(frozen=True)
class ScreenResult:
    passed: bool
    reason: str | None = None
    witness_index: Index | None = None


def necessary_screen(A: SymTensor) -> ScreenResult:
    """Necessary conditions for copositivity; a fail proves non-copositivity.

    Fails when some diagonal entry is negative, or when a zero diagonal entry
    at index i coexists with a negative entry whose index tuple mixes i with
    other indices.
    """
    for i in range(1, A.n + 1):
        diag = A.get((i,) * A.d)
        if diag < 0:
            return ScreenResult(False, f"diagonal entry at index {i} is negative",
                                (i,) * A.d)
    for i in range(1, A.n + 1):
        if A.get((i,) * A.d) != 0:
            continue
        for key, v in A.items():
            if v < 0 and i in key and key != (i,) * A.d:
                return ScreenResult(
                    False,
                    f"zero diagonal at index {i} with negative mixed entry {key}",
                    key)
    return ScreenResult(True)


def as_float(A: SymTensor) -> SymTensor:
    """Float-mode copy (used by the sampling oracle and the SOS solver)."""
    b = SymTensorBuilder(A.n, A.d, float(A.default))
    for key, v in A.entries.items():
        b.set(key, float(v))
    return b.build()


def num_canonical_tuples(n: int, d: int) -> int:
    return len(enumerate_exponents(n, d))
