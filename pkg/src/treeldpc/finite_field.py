"""
GF(p^s) arithmetic on integer labels and the MOLS family built from it.

Elements are labelled by their polynomial coefficients read as base-p digits:
the label of c_0 + c_1 x + ... + c_{s-1} x^{s-1} is sum(c_i * p**i).  For
p = 2 addition is therefore XOR of labels.

The q - 1 mutually orthogonal Latin squares of order q are

    M[k][j, t] = j + k * t        (k = 1 .. q-1, arithmetic in GF(q))

and M[0] (k = 0) is the degenerate square whose every column is [0..q-1].
All squares have first column [0, 1, ..., q-1].
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from itertools import product

import numpy as np

MAX_ORDER = 64

# Monic modulus polynomials, coefficients low degree first.
MODULUS_TABLE: dict[tuple[int, int], tuple[int, ...]] = {
    (2, 2): (1, 1, 1),  # x^2 + x + 1
    (2, 3): (1, 1, 0, 1),  # x^3 + x + 1
    (2, 4): (1, 1, 0, 0, 1),  # x^4 + x + 1
    (2, 5): (1, 0, 1, 0, 0, 1),  # x^5 + x^2 + 1
    (2, 6): (1, 1, 0, 0, 0, 0, 1),  # x^6 + x + 1
    (3, 2): (2, 2, 1),  # x^2 + 2x + 2
    (3, 3): (1, 2, 0, 1),  # x^3 + 2x + 1
    (5, 2): (2, 4, 1),  # x^2 + 4x + 2
    (7, 2): (3, 6, 1),  # x^2 + 6x + 3
}


class FieldError(ValueError):
    """Unsupported or invalid field parameters."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _poly_mod(a: list[int], b: tuple[int, ...], p: int) -> list[int]:
    """Remainder of a by the monic polynomial b over GF(p), low degree first."""
    a = list(a)
    db = len(b) - 1
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] % p
        if c:
            for j in range(db + 1):
                a[i - db + j] = (a[i - db + j] - c * b[j]) % p
    return [x % p for x in a[:db]]


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive check: no monic divisor of degree 1 .. deg/2 over GF(p)."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(_poly_mod(list(poly), tuple(low) + (1,), p)):
                return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """GF(p^s) with precomputed addition and multiplication tables."""

    p: int
    s: int
    modulus_poly: tuple[int, ...]
    add_table: np.ndarray = dc_field(repr=False, compare=False)
    mul_table: np.ndarray = dc_field(repr=False, compare=False)

    @property
    def q(self) -> int:
        return self.p**self.s

    def digits(self, label: int) -> list[int]:
        return [(label // self.p**i) % self.p for i in range(self.s)]

    def label(self, digits) -> int:
        return sum(int(c) * self.p**i for i, c in enumerate(digits))

    def _check(self, *labels: int) -> None:
        for a in labels:
            if not 0 <= a < self.q:
                raise FieldError(f"element label {a} out of range for GF({self.q})")

    def add(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.add_table[a, b])

    def mul(self, a: int, b: int) -> int:
        self._check(a, b)
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        self._check(a)
        return self.label((-c) % self.p for c in self.digits(a))


def _build_tables(p: int, s: int, modulus: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    q = p**s
    digits = [[(a // p**i) % p for i in range(s)] for a in range(q)]

    def to_label(cs):
        return sum(c * p**i for i, c in enumerate(cs))

    add = np.empty((q, q), dtype=np.int64)
    mul = np.empty((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(q):
            add[a, b] = to_label((x + y) % p for x, y in zip(digits[a], digits[b]))
            prod = [0] * (2 * s - 1)
            for i, x in enumerate(digits[a]):
                for j, y in enumerate(digits[b]):
                    prod[i + j] += x * y
            mul[a, b] = to_label(_poly_mod(prod, modulus, p) if s > 1 else [prod[0] % p])
    add.setflags(write=False)
    mul.setflags(write=False)
    return add, mul


@lru_cache(maxsize=None)
def make_field(p: int, s: int = 1) -> FieldSpec:
    """Return GF(p^s) using the fixed modulus polynomial for (p, s).

    Raises FieldError for non-prime p, s < 1, or p^s outside [2, 64].
    """
    if not isinstance(p, int) or not is_prime(p):
        raise FieldError(f"p={p} is not prime")
    if not isinstance(s, int) or s < 1:
        raise FieldError(f"s={s} must be a positive integer")
    q = p**s
    if q > MAX_ORDER:
        raise FieldError(f"field order {q} exceeds supported maximum {MAX_ORDER}")
    if s == 1:
        modulus = (0, 1)
    else:
        modulus = MODULUS_TABLE[(p, s)]
        if not is_irreducible(modulus, p):
            raise FieldError(f"modulus {modulus} is reducible over GF({p})")
    add, mul = _build_tables(p, s, modulus)
    return FieldSpec(p, s, modulus, add, mul)


def field_add(fs: FieldSpec, a: int, b: int) -> int:
    return fs.add(a, b)


def field_mul(fs: FieldSpec, a: int, b: int) -> int:
    return fs.mul(a, b)


@dataclass(frozen=True)
class MolsFamily:
    """The q squares M[0], ..., M[q-1]; M[0] is column-constant, the rest are MOLS."""

    field: FieldSpec
    squares: tuple[np.ndarray, ...] = dc_field(repr=False)

    @property
    def q(self) -> int:
        return self.field.q

    def __getitem__(self, k: int) -> np.ndarray:
        return self.squares[k]

    def __len__(self) -> int:
        return len(self.squares)


def build_mols(fs: FieldSpec) -> MolsFamily:
    q = fs.q
    rows = np.arange(q)
    squares = []
    for k in range(q):
        # entry (j, t) = j + k*t
        sq = fs.add_table[rows[:, None], fs.mul_table[k][None, :]].copy()
        sq.setflags(write=False)
        squares.append(sq)
    return MolsFamily(fs, tuple(squares))


def is_latin(square: np.ndarray) -> bool:
    sq = np.asarray(square)
    q = sq.shape[0]
    target = np.arange(q)
    return sq.shape == (q, q) and all(
        np.array_equal(np.sort(sq[i]), target) and np.array_equal(np.sort(sq[:, i]), target)
        for i in range(q)
    )


def are_orthogonal(a: np.ndarray, b: np.ndarray) -> bool:
    a = np.asarray(a)
    b = np.asarray(b)
    q = a.shape[0]
    pairs = set(zip(a.ravel().tolist(), b.ravel().tolist()))
    return len(pairs) == q * q


def validate_mols(fam: MolsFamily) -> list[str]:
    """List every violated MOLS-family property; an empty list means valid."""
    q = fam.q
    col = np.arange(q)
    violations = []
    if len(fam.squares) != q:
        violations.append(f"expected {q} squares, got {len(fam.squares)}")
    for k, sq in enumerate(fam.squares):
        sq = np.asarray(sq)
        if sq.shape != (q, q):
            violations.append(f"square {k}: shape {sq.shape} != ({q}, {q})")
            continue
        if not np.array_equal(sq[:, 0], col):
            violations.append(f"square {k}: first column is not [0..{q - 1}]")
        if k == 0:
            if not all(np.array_equal(sq[:, t], col) for t in range(q)):
                violations.append("square 0: columns are not all [0..q-1]")
        elif not is_latin(sq):
            violations.append(f"square {k}: not a Latin square")
    for k in range(1, len(fam.squares)):
        for k2 in range(k + 1, len(fam.squares)):
            if np.shape(fam.squares[k]) == np.shape(fam.squares[k2]) == (q, q):
                if not are_orthogonal(fam.squares[k], fam.squares[k2]):
                    violations.append(f"squares {k} and {k2}: not orthogonal")
    return violations
