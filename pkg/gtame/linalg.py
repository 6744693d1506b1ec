"""Exact dense linear algebra over a prime field F_p.

Matrices are numpy int64 arrays holding residues in [0, p). Products are
split into 15-bit halves so that no intermediate value leaves int64 for
any p < 2^31.
"""

from __future__ import annotations

import logging
from collections.abc import Sequence

import numpy as np
import sympy

logger = logging.getLogger(__name__)

DEFAULT_PRIME = 1_000_000_007
MAX_PRIME = 2**31

_SPLIT_BITS = 15
_SPLIT_MASK = (1 << _SPLIT_BITS) - 1
# Inner-dimension chunk: k * (p-1) * 2^15 < 2^63 for k <= 2^15 and p < 2^31.
_CHUNK = 1 << 15


def is_prime(value: int) -> bool:
    """Deterministic primality test."""
    return bool(sympy.isprime(int(value)))


def previous_prime(value: int) -> int:
    """Largest prime strictly below value."""
    return int(sympy.prevprime(int(value)))


class PrimeField:
    """Arithmetic and elimination routines over F_p.

    Instances are immutable and cheap; two fields compare equal when their
    moduli do.
    """

    __slots__ = ("p",)

    def __init__(self, p: int = DEFAULT_PRIME):
        p = int(p)
        if not 2 <= p < MAX_PRIME or not is_prime(p):
            raise ValueError(f"modulus must be a prime below 2^31, got {p}")
        self.p = p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("PrimeField", self.p))

    # ------------------------------------------------------------------
    # Elementwise helpers
    # ------------------------------------------------------------------

    def reduce(self, values: np.ndarray | Sequence | int) -> np.ndarray:
        """Map integers (possibly negative or huge Python ints) into [0, p)."""
        arr = np.asarray(values)
        if arr.dtype == object:
            arr = np.vectorize(lambda v: int(v) % self.p, otypes=[np.int64])(arr)
            return arr.astype(np.int64)
        return np.mod(arr.astype(np.int64), self.p)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        return np.zeros((rows, cols), dtype=np.int64)

    def identity(self, n: int) -> np.ndarray:
        return np.eye(n, dtype=np.int64)

    def inv(self, value: int) -> int:
        value = int(value) % self.p
        if value == 0:
            raise ZeroDivisionError("zero has no inverse in F_p")
        return pow(value, self.p - 2, self.p)

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Exact product a @ b mod p.

        Args:
            a: (r, k) residues
            b: (k, c) residues

        Returns:
            (r, c) residues
        """
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        vector = b.ndim == 1
        if vector:
            b = b[:, None]
        k = a.shape[1]
        out = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for start in range(0, k, _CHUNK):
            stop = min(start + _CHUNK, k)
            lhs = a[:, start:stop]
            rhs = b[start:stop]
            lo = rhs & _SPLIT_MASK
            hi = rhs >> _SPLIT_BITS
            part = (lhs @ hi) % self.p
            part = (part * (1 << _SPLIT_BITS)) % self.p
            part = (part + (lhs @ lo) % self.p) % self.p
            out = (out + part) % self.p
        return out[:, 0] if vector else out

    # ------------------------------------------------------------------
    # Elimination
    # ------------------------------------------------------------------

    def rref(self, m: np.ndarray) -> tuple[np.ndarray, list[int]]:
        """Reduced row echelon form.

        Returns:
            (R, pivots) where R has the same shape as m, the first len(pivots)
            rows of R are the nonzero ones and pivots lists their pivot columns.
        """
        a = self.reduce(m).copy()
        if a.ndim != 2:
            raise ValueError("rref expects a 2-d array")
        rows, cols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(cols):
            if r == rows:
                break
            nz = np.flatnonzero(a[r:, c])
            if nz.size == 0:
                continue
            pivot = r + int(nz[0])
            if pivot != r:
                a[[r, pivot]] = a[[pivot, r]]
            a[r] = (a[r] * self.inv(a[r, c])) % self.p
            factors = a[:, c].copy()
            factors[r] = 0
            hits = np.flatnonzero(factors)
            if hits.size:
                # Residues below 2^31, so each product stays below 2^62.
                a[hits] = (a[hits] - np.outer(factors[hits], a[r]) % self.p) % self.p
            pivots.append(c)
            r += 1
        return a, pivots

    def rank(self, m: np.ndarray) -> int:
        m = np.asarray(m)
        if m.size == 0:
            return 0
        return len(self.rref(m)[1])

    def nullspace_basis(self, m: np.ndarray) -> np.ndarray:
        """Columns spanning the right kernel of m.

        Returns:
            (cols, cols - rank) array whose columns are independent and
            annihilated by m.
        """
        m = np.asarray(m)
        cols = m.shape[1]
        if m.shape[0] == 0:
            return self.identity(cols)
        r, pivots = self.rref(m)
        free = [c for c in range(cols) if c not in set(pivots)]
        basis = self.zeros(cols, len(free))
        for k, f in enumerate(free):
            basis[f, k] = 1
            for row, pc in enumerate(pivots):
                basis[pc, k] = (-r[row, f]) % self.p
        return basis

    def column_basis(self, m: np.ndarray) -> np.ndarray:
        """Independent columns of m spanning its column space."""
        m = np.asarray(m, dtype=np.int64)
        if m.size == 0:
            return self.zeros(m.shape[0], 0)
        _, pivots = self.rref(m)
        return m[:, pivots] % self.p

    def complement_basis(self, basis: np.ndarray) -> np.ndarray:
        """Unit vectors completing the columns of basis to a basis of F_p^d."""
        basis = np.asarray(basis, dtype=np.int64)
        d = basis.shape[0]
        if basis.shape[1] == 0:
            return self.identity(d)
        _, pivots = self.rref(basis.T)
        free = [c for c in range(d) if c not in set(pivots)]
        out = self.zeros(d, len(free))
        for k, f in enumerate(free):
            out[f, k] = 1
        return out

    def solve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Solve a @ x = b for x.

        Raises:
            ValueError: the system is inconsistent
        """
        a = self.reduce(a)
        b = self.reduce(b)
        vector = b.ndim == 1
        if vector:
            b = b[:, None]
        cols = a.shape[1]
        aug = np.hstack([a, b]) if a.shape[0] else self.zeros(0, cols + b.shape[1])
        r, pivots = self.rref(aug)
        if any(c >= cols for c in pivots):
            raise ValueError("inconsistent linear system")
        x = self.zeros(cols, b.shape[1])
        for row, c in enumerate(pivots):
            x[c] = r[row, cols:]
        return x[:, 0] if vector else x

    def inverse(self, m: np.ndarray) -> np.ndarray:
        m = self.reduce(m)
        n = m.shape[0]
        if m.shape != (n, n):
            raise ValueError("inverse expects a square matrix")
        r, pivots = self.rref(np.hstack([m, self.identity(n)]))
        if pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return r[:, n:]

    # ------------------------------------------------------------------
    # Sampling
    # ------------------------------------------------------------------

    def random_matrix(self, rows: int, cols: int, rng: np.random.Generator) -> np.ndarray:
        """Uniform matrix over F_p drawn from an explicit stream."""
        return rng.integers(0, self.p, size=(rows, cols), dtype=np.int64)

    # ------------------------------------------------------------------
    # Polynomials
    # ------------------------------------------------------------------

    def factor(self, coefficients: Sequence[int]) -> list[tuple[tuple[int, ...], int]]:
        """Monic irreducible factors over F_p with their multiplicities.

        Coefficients are listed highest degree first, both on input and in
        the returned factors, which are sorted. Constants have no factors.
        """
        coeffs = [int(c) % self.p for c in coefficients]
        while coeffs and coeffs[0] == 0:
            coeffs.pop(0)
        if len(coeffs) < 2:
            return []
        x = sympy.Symbol("x")
        poly = sympy.Poly(coeffs, x, modulus=self.p)
        out = []
        for factor, multiplicity in poly.factor_list()[1]:
            residues = [int(c) % self.p for c in factor.all_coeffs()]
            lead = self.inv(residues[0])
            out.append((tuple(c * lead % self.p for c in residues), int(multiplicity)))
        return sorted(out)

    def charpoly(self, m: np.ndarray) -> list[int]:
        """Characteristic polynomial of a square matrix, highest degree first."""
        m = self.reduce(m)
        if m.shape[0] == 0:
            return [1]
        poly = sympy.Matrix(m.tolist()).charpoly()
        return [int(c) % self.p for c in poly.all_coeffs()]


def integer_rank(vectors: Sequence[Sequence[int]]) -> int:
    """Rank over Q of integer vectors, by fraction-free elimination."""
    rows = [list(map(int, v)) for v in vectors]
    if not rows or not rows[0]:
        return 0
    return int(sympy.Matrix(rows).rank(iszerofunc=lambda e: e == 0))
