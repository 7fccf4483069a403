"""Exact rational linear algebra.

Everything here works over ``fractions.Fraction``.  Matrices are immutable
and row-major; vectors are plain tuples of Fractions.  Subspaces are stored
by their reduced row-echelon basis, so equality of subspaces is equality of
data.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def to_fraction(x) -> Fraction:
    """Coerce ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot interpret {x!r} as a rational")


def format_fraction(q: Fraction) -> str:
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def vec(values: Iterable) -> Vector:
    return tuple(to_fraction(v) for v in values)


def zero_vector(n: int) -> Vector:
    return (ZERO,) * n


def unit_vector(n: int, i: int) -> Vector:
    return tuple(ONE if k == i else ZERO for k in range(n))


def vadd(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector lengths differ")
    return tuple(a + b if b else a for a, b in zip(u, v))


def vsub(u: Sequence, v: Sequence) -> Vector:
    if len(u) != len(v):
        raise ValueError("vector lengths differ")
    return tuple(a - b if b else a for a, b in zip(u, v))


def vscale(c, u: Sequence) -> Vector:
    return tuple(c * a for a in u)


def is_zero(u: Sequence) -> bool:
    return all(a == 0 for a in u)


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    data: tuple  # tuple of row tuples

    def __post_init__(self):
        if len(self.data) != self.rows or any(len(r) != self.cols for r in self.data):
            raise ValueError("matrix entries do not match its shape")

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable], cols: int | None = None) -> "Matrix":
        data = tuple(vec(r) for r in rows)
        if cols is None:
            if not data:
                raise ValueError("column count required for a matrix with no rows")
            cols = len(data[0])
        return cls(len(data), cols, data)

    @classmethod
    def from_columns(cls, columns: Iterable[Iterable], rows: int) -> "Matrix":
        columns = [vec(c) for c in columns]
        return cls(rows, len(columns), tuple(tuple(c[i] for c in columns) for i in range(rows)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, tuple(unit_vector(n, i) for i in range(n)))

    @classmethod
    def block_diag(cls, a: "Matrix", b: "Matrix") -> "Matrix":
        rows = [r + (ZERO,) * b.cols for r in a.data]
        rows += [(ZERO,) * a.cols + r for r in b.data]
        return cls(a.rows + b.rows, a.cols + b.cols, tuple(rows))

    def __getitem__(self, idx):
        i, j = idx
        return self.data[i][j]

    def row(self, i: int) -> Vector:
        return self.data[i]

    def col(self, j: int) -> Vector:
        return tuple(r[j] for r in self.data)

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix(self.cols, 0, tuple(() for _ in range(self.cols)))
        return Matrix(self.cols, self.rows, tuple(zip(*self.data)))

    def flatten(self) -> Vector:
        return tuple(a for r in self.data for a in r)

    @classmethod
    def unflatten(cls, values: Sequence, rows: int, cols: int) -> "Matrix":
        values = vec(values)
        if len(values) != rows * cols:
            raise ValueError("wrong number of entries")
        return cls(rows, cols, tuple(values[i * cols:(i + 1) * cols] for i in range(rows)))

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.cols:
            raise ValueError(f"vector of length {len(v)} for matrix with {self.cols} columns")
        return tuple(sum((a * b for a, b in zip(r, v) if a and b), ZERO) for r in self.data)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        n = other.cols
        orows = other.data
        data = []
        for r in self.data:
            acc = [ZERO] * n
            for s, a in enumerate(r):
                if a:
                    for j, b in enumerate(orows[s]):
                        if b:
                            acc[j] += a * b
            data.append(tuple(acc))
        return Matrix(self.rows, n, tuple(data))

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vadd(r, s) for r, s in zip(self.data, other.data)))

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(self.rows, self.cols, tuple(vsub(r, s) for r, s in zip(self.data, other.data)))

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = to_fraction(c)
        return Matrix(self.rows, self.cols, tuple(vscale(c, r) for r in self.data))

    def is_zero(self) -> bool:
        return all(is_zero(r) for r in self.data)

    def _same_shape(self, other: "Matrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self.data]

    def __repr__(self) -> str:
        body = "; ".join(" ".join(format_fraction(a) for a in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: [{body}])"


def commutator(a: Matrix, b: Matrix) -> Matrix:
    return a @ b - b @ a


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    rows = blocks[0].rows
    data = tuple(tuple(a for b in blocks for a in b.data[i]) for i in range(rows))
    return Matrix(rows, sum(b.cols for b in blocks), data)


def vstack(blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    if cols is None:
        cols = blocks[0].cols
    data = tuple(r for b in blocks for r in b.data)
    return Matrix(len(data), cols, data)


def _rref_rows(rows: list[list[Fraction]], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    rows = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == len(rows):
            break
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        piv = rows[r][c]
        if piv != 1:
            rows[r] = [a / piv for a in rows[r]]
        prow = rows[r]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [a - f * b if b else a for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    """Reduced row-echelon form with zero rows dropped, plus pivot columns."""
    rows, pivots = _rref_rows([list(r) for r in m.data], m.cols)
    return Matrix(len(rows), m.cols, tuple(tuple(r) for r in rows)), pivots


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


@dataclass(frozen=True)
class Subspace:
    """A linear subspace of Q^ambient_dim held by its canonical RREF basis."""

    ambient_dim: int
    basis: Matrix

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        rows = [vec(v) for v in vectors]
        for v in rows:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        basis, _ = rref(Matrix(len(rows), ambient_dim, tuple(rows)))
        return cls(ambient_dim, basis)

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, Matrix.zeros(0, n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, Matrix.identity(n))

    @property
    def dim(self) -> int:
        return self.basis.rows

    @cached_property
    def pivots(self) -> list[int]:
        return [next(j for j, a in enumerate(r) if a != 0) for r in self.basis.data]

    def vectors(self) -> tuple:
        return self.basis.data

    def coordinates(self, v: Sequence) -> Vector:
        """Coefficients of ``v`` in the RREF basis; ``v`` must lie in the subspace."""
        coords = tuple(to_fraction(v[p]) for p in self.pivots)
        if tuple(vec(v)) != self.combine(coords):
            raise ValueError("vector is not in the subspace")
        return coords

    def combine(self, coords: Sequence) -> Vector:
        out = [ZERO] * self.ambient_dim
        for c, b in zip(coords, self.basis.data, strict=True):
            if c:
                for j, a in enumerate(b):
                    if a:
                        out[j] += c * a
        return tuple(out)

    def contains(self, other: "Subspace") -> bool:
        return all(membership(self, v) for v in other.vectors())

    def __add__(self, other: "Subspace") -> "Subspace":
        return Subspace.span(self.vectors() + other.vectors(), self.ambient_dim)


def nullspace(m: Matrix) -> Subspace:
    """Kernel of ``m`` (acting on column vectors) as a canonical Subspace."""
    r, pivots = rref(m)
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    vectors = []
    for f in free:
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, p in zip(r.data, pivots):
            v[p] = -row[f]
        vectors.append(v)
    return Subspace.span(vectors, m.cols)


def solve(a: Matrix, b: Sequence) -> Vector | None:
    """Solve ``a x = b``; free variables are set to zero.  None if inconsistent."""
    b = vec(b)
    if len(b) != a.rows:
        raise ValueError("right-hand side length does not match matrix rows")
    aug = [list(r) + [rhs] for r, rhs in zip(a.data, b)]
    rows, pivots = _rref_rows(aug, a.cols + 1)
    if pivots and pivots[-1] == a.cols:
        return None
    x = [ZERO] * a.cols
    for row, p in zip(rows, pivots):
        x[p] = row[-1]
    return tuple(x)


def quotient_coordinates(ambient_dim: int, sub: Subspace) -> tuple[Matrix, Matrix]:
    """Projection Q^ambient -> Q^(ambient - dim sub) killing ``sub`` and a right inverse.

    Quotient coordinates are the non-pivot coordinates of the RREF basis of
    ``sub`` after subtracting the ``sub``-component read off at the pivots.
    """
    if sub.ambient_dim != ambient_dim:
        raise ValueError("subspace lives in a different ambient space")
    pivots = sub.pivots
    pivset = set(pivots)
    free = [j for j in range(ambient_dim) if j not in pivset]
    proj_rows = []
    for f in free:
        row = [ZERO] * ambient_dim
        row[f] = ONE
        for b, p in zip(sub.basis.data, pivots):
            if b[f]:
                row[p] -= b[f]
        proj_rows.append(tuple(row))
    projection = Matrix(len(free), ambient_dim, tuple(proj_rows))
    section = Matrix.from_columns((unit_vector(ambient_dim, f) for f in free), ambient_dim)
    if not free:
        section = Matrix.zeros(ambient_dim, 0)
    return projection, section


def membership(sub: Subspace, v: Sequence) -> bool:
    v = vec(v)
    if len(v) != sub.ambient_dim:
        raise ValueError("vector length does not match ambient dimension")
    residual = list(v)
    for b, p in zip(sub.basis.data, sub.pivots):
        f = residual[p]
        if f:
            residual = [x - f * y for x, y in zip(residual, b)]
    return all(x == 0 for x in residual)


def inverse(m: Matrix) -> Matrix | None:
    """Exact inverse, or None when ``m`` is singular or not square."""
    if m.rows != m.cols:
        return None
    n = m.rows
    aug = [list(r) + list(unit_vector(n, i)) for i, r in enumerate(m.data)]
    rows, pivots = _rref_rows(aug, 2 * n)
    if pivots[:n] != list(range(n)):
        return None
    return Matrix(n, n, tuple(tuple(r[n:]) for r in rows))
