"""Exact integer linear algebra: Hermite/Smith normal forms, kernels, lattices.

Everything here is exact: entries are Python ints, transforms are unimodular,
and no floating point is ever involved.  Rank, kernel, membership and span
queries for the rest of the package all flow through the two normal forms.

Conventions (these make normal forms canonical, so lattices can be compared
by equality of representations):

* HNF is row-style: pivots positive, entries above a pivot reduced into
  [0, pivot), zero rows at the bottom, pivot columns strictly increasing.
* SNF diagonal entries are nonnegative and form a divisibility chain.
* A ``LatticeBasis`` always stores the HNF of its generators, so two values
  describing the same lattice are structurally equal.

The reduction loops are implemented twice: a compiled extension
(``tau2._kernels``) and a pure-Python fallback (``tau2._kernels_py``).  The
fallback is selected automatically when the extension is unavailable, or
explicitly via the ``TAU2_PURE_KERNELS`` environment variable.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DimensionMismatchError

if os.environ.get("TAU2_PURE_KERNELS"):
    from . import _kernels_py as _kern
else:
    try:
        from . import _kernels as _kern  # type: ignore[attr-defined]
    except ImportError:
        from . import _kernels_py as _kern


def kernel_backend() -> str:
    """Name of the reduction backend in use ('c' or 'python')."""
    return _kern.BACKEND


Vec = tuple[int, ...]


@dataclass(frozen=True)
class IntMatrix:
    """Immutable integer matrix, row-major."""

    rows: int
    cols: int
    entries: tuple[Vec, ...]

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        rws = tuple(tuple(int(x) for x in r) for r in rows)
        if rws:
            width = len(rws[0])
            if any(len(r) != width for r in rws):
                raise DimensionMismatchError("ragged rows")
            if cols is not None and cols != width:
                raise DimensionMismatchError(f"expected {cols} columns, got {width}")
            cols = width
        elif cols is None:
            cols = 0
        return cls(len(rws), cols, rws)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "IntMatrix":
        return cls(rows, cols, tuple((0,) * cols for _ in range(rows)))

    def tolists(self) -> list[list[int]]:
        return [list(r) for r in self.entries]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(
            self.cols, self.rows, tuple(tuple(r[j] for r in self.entries) for j in range(self.cols))
        )

    def mul(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise DimensionMismatchError(f"{self.rows}x{self.cols} times {other.rows}x{other.cols}")
        ot = other.transpose().entries
        return IntMatrix(
            self.rows,
            other.cols,
            tuple(
                tuple(sum(a * b for a, b in zip(row, col)) for col in ot) for row in self.entries
            ),
        )

    def mul_vec(self, v: Sequence[int]) -> Vec:
        if len(v) != self.cols:
            raise DimensionMismatchError(f"vector length {len(v)} vs {self.cols} columns")
        return tuple(sum(a * b for a, b in zip(row, v)) for row in self.entries)

    def __mul__(self, other):
        if isinstance(other, IntMatrix):
            return self.mul(other)
        return NotImplemented

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in r) for r in self.entries)


@dataclass(frozen=True)
class SmithDecomposition:
    """u * m * v == s with s diagonal, nonnegative, in a divisibility chain."""

    s: IntMatrix
    u: IntMatrix
    v: IntMatrix

    @property
    def diagonal(self) -> Vec:
        n = min(self.s.rows, self.s.cols)
        return tuple(self.s.entries[i][i] for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d != 0)


def hnf(m: IntMatrix) -> tuple[IntMatrix, IntMatrix]:
    """Row-style Hermite normal form: returns (h, u) with u*m == h, u unimodular."""
    a = m.tolists()
    u = IntMatrix.identity(m.rows).tolists()
    _kern.hnf_inplace(a, u)
    return IntMatrix.from_rows(a, m.cols), IntMatrix.from_rows(u, m.rows)


def snf(m: IntMatrix) -> SmithDecomposition:
    """Smith normal form decomposition of an integer matrix."""
    a = m.tolists()
    u = IntMatrix.identity(m.rows).tolists()
    v = IntMatrix.identity(m.cols).tolists()
    _kern.snf_inplace(a, u, v)
    return SmithDecomposition(
        IntMatrix.from_rows(a, m.cols),
        IntMatrix.from_rows(u, m.rows),
        IntMatrix.from_rows(v, m.cols),
    )


def rank(m: IntMatrix) -> int:
    """Rank over the integers (equivalently over the rationals)."""
    a = m.tolists()
    u = IntMatrix.identity(m.rows).tolists()
    return len(_kern.hnf_inplace(a, u))


def rank_fraction_free(m: IntMatrix) -> int:
    """Rank by fraction-free (Bareiss) Gaussian elimination.

    Deliberately independent of the HNF/SNF reduction path; used to
    cross-check ``rank``.
    """
    a = m.tolists()
    rows, cols = m.rows, m.cols
    r = 0
    prev = 1
    for c in range(cols):
        piv = -1
        for i in range(r, rows):
            if a[i][c] != 0:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) // prev
            a[i][c] = 0
        prev = a[r][c]
        r += 1
        if r >= rows:
            break
    return r


def determinant(m: IntMatrix) -> int:
    """Exact determinant of a square matrix (Bareiss)."""
    if m.rows != m.cols:
        raise DimensionMismatchError("determinant of a non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = m.tolists()
    sign = 1
    prev = 1
    for c in range(n - 1):
        if a[c][c] == 0:
            piv = -1
            for i in range(c + 1, n):
                if a[i][c] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            a[c], a[piv] = a[piv], a[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                a[i][j] = (a[c][c] * a[i][j] - a[i][c] * a[c][j]) // prev
            a[i][c] = 0
        prev = a[c][c]
    return sign * a[n - 1][n - 1]


@dataclass(frozen=True)
class LatticeBasis:
    """Sublattice of Z^ambient given by its canonical (HNF) basis rows.

    Construct through :meth:`from_vectors`: the stored rows are the nonzero
    rows of the HNF of the generators, which are linearly independent and
    uniquely determined by the lattice.  Structural equality therefore *is*
    lattice equality.
    """

    ambient: int
    vectors: tuple[Vec, ...]

    @classmethod
    def from_vectors(cls, ambient: int, vectors: Iterable[Sequence[int]]) -> "LatticeBasis":
        vecs = [tuple(int(x) for x in v) for v in vectors]
        for v in vecs:
            if len(v) != ambient:
                raise DimensionMismatchError(f"vector length {len(v)} vs ambient {ambient}")
        if not vecs:
            return cls(ambient, ())
        h, _ = hnf(IntMatrix.from_rows(vecs, ambient))
        return cls(ambient, tuple(r for r in h.entries if any(x != 0 for x in r)))

    @property
    def rank(self) -> int:
        return len(self.vectors)

    def contains(self, v: Sequence[int]) -> bool:
        return lattice_contains(self, v)


def kernel_basis(m: IntMatrix) -> LatticeBasis:
    """Basis of the integer kernel {v : m*v == 0}.

    Row-reducing the transpose with a tracked unimodular transform makes the
    kernel appear as the transform rows matching zero rows of the echelon
    form.  Kernels of integer matrices are saturated sublattices, so lattice
    equality against a kernel is an exact test of solution sets.
    """
    mt = m.transpose()
    a = mt.tolists()
    u = IntMatrix.identity(mt.rows).tolists()
    pivots = _kern.hnf_inplace(a, u)
    rnk = len(pivots)
    return LatticeBasis.from_vectors(m.cols, u[rnk:])


def lattice_contains(lattice: LatticeBasis, v: Sequence[int]) -> bool:
    """True when v is an integer combination of the basis vectors."""
    if len(v) != lattice.ambient:
        raise DimensionMismatchError(f"vector length {len(v)} vs ambient {lattice.ambient}")
    rem = [int(x) for x in v]
    for row in lattice.vectors:
        # Rows are in HNF, so the leading entry is a positive pivot.
        c = 0
        while row[c] == 0:
            c += 1
        q, r = divmod(rem[c], row[c])
        if r != 0:
            return False
        if q != 0:
            for k in range(c, lattice.ambient):
                rem[k] -= q * row[k]
    return all(x == 0 for x in rem)


def lattice_equal(l1: LatticeBasis, l2: LatticeBasis) -> bool:
    """True when the generated lattices coincide."""
    if l1.ambient != l2.ambient:
        raise DimensionMismatchError(f"ambient {l1.ambient} vs {l2.ambient}")
    return l1.vectors == l2.vectors


def in_rational_span(rows: Sequence[Sequence[int]], v: Sequence[int]) -> bool:
    """True when some nonzero integer multiple of v lies in the row lattice.

    Equivalently, v belongs to the Q-span of the rows; decided by a rank
    comparison, no division needed.
    """
    rows = [tuple(int(x) for x in r) for r in rows]
    v = tuple(int(x) for x in v)
    for r in rows:
        if len(r) != len(v):
            raise DimensionMismatchError("inconsistent row dimensions")
    base = rank(IntMatrix.from_rows(rows, len(v)))
    ext = rank(IntMatrix.from_rows(rows + [v], len(v)))
    return ext == base
