"""Finite-dimensional Lie algebras over Q given by structure constants.

Brackets are stored sparsely as ``(i, j, k, value)`` with ``i < j``, meaning
``[e_i, e_j]`` has coefficient ``value`` on ``e_k``.  The opposite pairs are
always synthesized by antisymmetry.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import InternalCheckFailure, InvalidAlgebra, NotCentral
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    commutator,
    is_zero,
    membership,
    nullspace,
    quotient_coordinates,
    to_fraction,
    unit_vector,
    vadd,
    vec,
    zero_vector,
)


@dataclass(frozen=True)
class LieAlgebra:
    dim: int
    brackets: tuple = ()
    basis_names: tuple = field(default=(), compare=False)

    def __post_init__(self):
        merged: dict[tuple[int, int, int], object] = {}
        for i, j, k, value in self.brackets:
            value = to_fraction(value)
            if not (0 <= i < self.dim and 0 <= j < self.dim and 0 <= k < self.dim):
                raise ValueError(f"bracket index out of range: {(i, j, k)}")
            if i == j:
                raise ValueError(f"bracket of e{i} with itself cannot be specified")
            if i > j:
                i, j, value = j, i, -value
            merged[(i, j, k)] = merged.get((i, j, k), ZERO) + value
        normal = tuple(sorted((i, j, k, v) for (i, j, k), v in merged.items() if v))
        object.__setattr__(self, "brackets", normal)
        names = tuple(self.basis_names) or tuple(f"e{i + 1}" for i in range(self.dim))
        if len(names) != self.dim:
            raise ValueError("number of basis names does not match dimension")
        object.__setattr__(self, "basis_names", names)

    @cached_property
    def table(self) -> tuple:
        """``table[i][j]`` is the coordinate vector of ``[e_i, e_j]``."""
        n = self.dim
        rows = [[[ZERO] * n for _ in range(n)] for _ in range(n)]
        for i, j, k, v in self.brackets:
            rows[i][j][k] += v
            rows[j][i][k] -= v
        return tuple(tuple(tuple(c) for c in r) for r in rows)

    def structure_constant(self, i: int, j: int, k: int):
        return self.table[i][j][k]

    def ad(self, u: Sequence) -> Matrix:
        """Matrix of ``v -> [u, v]``."""
        return Matrix.from_columns((bracket(self, u, unit_vector(self.dim, j)) for j in range(self.dim)), self.dim)

    @cached_property
    def ad_basis(self) -> tuple:
        return tuple(self.ad(unit_vector(self.dim, i)) for i in range(self.dim))

    def is_abelian(self) -> bool:
        return not self.brackets


def bracket(g: LieAlgebra, u: Sequence, v: Sequence) -> Vector:
    if len(u) != g.dim or len(v) != g.dim:
        raise ValueError("vector length does not match algebra dimension")
    out = [ZERO] * g.dim
    for i, a in enumerate(u):
        if not a:
            continue
        row = g.table[i]
        for j, b in enumerate(v):
            if not b:
                continue
            ab = a * b
            for k, c in enumerate(row[j]):
                if c:
                    out[k] += ab * c
    return tuple(out)


def abelian(n: int) -> LieAlgebra:
    return LieAlgebra(n, ())


def heisenberg() -> LieAlgebra:
    return LieAlgebra(3, ((0, 1, 2, 1),), ("x", "y", "z"))


def sl2() -> LieAlgebra:
    # basis e, f, h
    return LieAlgebra(3, ((0, 1, 2, 1), (0, 2, 0, -2), (1, 2, 1, 2)), ("e", "f", "h"))


def so3() -> LieAlgebra:
    return LieAlgebra(3, ((0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)), ("l1", "l2", "l3"))


# ---------------------------------------------------------------- validation


@dataclass
class ValidationReport:
    antisymmetry: list = field(default_factory=list)  # (i, j, residual)
    jacobi: list = field(default_factory=list)  # (i, j, k, residual)

    @property
    def valid(self) -> bool:
        return not self.antisymmetry and not self.jacobi

    def summary(self) -> str:
        if self.valid:
            return "valid"
        parts = []
        if self.antisymmetry:
            parts.append("antisymmetry fails on " + ", ".join(str((i, j)) for i, j, _ in self.antisymmetry))
        if self.jacobi:
            parts.append("Jacobi fails on " + ", ".join(str((i, j, k)) for i, j, k, _ in self.jacobi))
        return "; ".join(parts)


def _dense_table(n: int, tensor) -> list:
    return [[vec(tensor[i][j]) for j in range(n)] for i in range(n)]


def validate(g) -> ValidationReport:
    """Check antisymmetry and the Jacobi identity on all basis pairs/triples.

    ``g`` is either a LieAlgebra or a raw dense tensor ``c[i][j][k]``; only
    the raw form can fail antisymmetry.
    """
    if isinstance(g, LieAlgebra):
        n, table = g.dim, g.table
    else:
        n = len(g)
        table = _dense_table(n, g)
    report = ValidationReport()
    for i in range(n):
        for j in range(i, n):
            residual = vadd(table[i][j], table[j][i])
            if not is_zero(residual):
                report.antisymmetry.append((i, j, residual))

    sparse = [[[(k, c) for k, c in enumerate(table[i][j]) if c] for j in range(n)] for i in range(n)]

    def double(i, j, k):
        # [[e_i, e_j], e_k]
        return [(l, a * c) for m, a in sparse[i][j] for l, c in sparse[m][k]]

    # Jacobi over all triples when antisymmetry is not guaranteed
    triples = combinations(range(n), 3) if not report.antisymmetry else (
        (i, j, k) for i in range(n) for j in range(n) for k in range(n)
    )
    for i, j, k in triples:
        acc = {}
        for l, v in double(i, j, k) + double(j, k, i) + double(k, i, j):
            acc[l] = acc.get(l, ZERO) + v
        if any(acc.values()):
            residual = tuple(acc.get(l, ZERO) for l in range(n))
            report.jacobi.append((i, j, k, residual))
    return report


def require_valid(g: LieAlgebra) -> None:
    report = validate(g)
    if not report.valid:
        raise InvalidAlgebra(report)


# ---------------------------------------------------------------- derived objects


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    # row (j, k): coefficient of e_k in [u, e_j] as a linear form in u
    rows = [tuple(g.table[i][j][k] for i in range(n)) for j in range(n) for k in range(n)]
    return nullspace(Matrix(len(rows), n, tuple(rows)))


def derivation_matrix_system(g: LieAlgebra) -> Matrix:
    """Linear system in the n^2 entries of D (row-major) whose kernel is Der(g)."""
    n = g.dim
    c = g.table
    rows = []
    for i, j in combinations(range(n), 2):
        for k in range(n):
            row = [ZERO] * (n * n)
            # D[e_i, e_j]_k = sum_r c[i][j][r] D[k][r]
            for r in range(n):
                if c[i][j][r]:
                    row[k * n + r] += c[i][j][r]
            # -[D e_i, e_j]_k = -sum_r D[r][i] c[r][j][k]
            # -[e_i, D e_j]_k = -sum_r D[r][j] c[i][r][k]
            for r in range(n):
                if c[r][j][k]:
                    row[r * n + i] -= c[r][j][k]
                if c[i][r][k]:
                    row[r * n + j] -= c[i][r][k]
            rows.append(tuple(row))
    return Matrix(len(rows), n * n, tuple(rows))


def is_derivation(g: LieAlgebra, d: Matrix) -> bool:
    n = g.dim
    for i, j in combinations(range(n), 2):
        lhs = d.apply(g.table[i][j])
        rhs = vadd(bracket(g, d.col(i), unit_vector(n, j)), bracket(g, unit_vector(n, i), d.col(j)))
        if lhs != rhs:
            return False
    return True


@dataclass(frozen=True)
class DerivationSpaces:
    """Der(g), Inn(g) inside gl(n) (row-major coordinates) and Out(g) = Der/Inn.

    Out coordinates are quotient coordinates of the Der coordinates;
    ``section`` picks a fixed representative derivation for every Out
    coordinate vector.
    """

    algebra: LieAlgebra
    der: Subspace
    inn: Subspace
    inn_in_der: Subspace
    natural_projection: Matrix  # Der coordinates -> Out coordinates
    section: Matrix  # Out coordinates -> Der coordinates

    @cached_property
    def out_algebra(self) -> LieAlgebra:
        """Out(g) with the bracket induced from commutators of the section's representatives."""
        reps = [self.representative(unit_vector(self.out_dim, a)) for a in range(self.out_dim)]
        brackets = []
        for a, b in combinations(range(len(reps)), 2):
            for k, v in enumerate(self.outer(commutator(reps[a], reps[b]))):
                if v:
                    brackets.append((a, b, k, v))
        out = LieAlgebra(len(reps), tuple(brackets))
        if not validate(out).valid:
            raise InternalCheckFailure("bracket induced on outer derivations fails Jacobi")
        return out

    @property
    def out_dim(self) -> int:
        return self.natural_projection.rows

    @property
    def out_bracket(self) -> tuple:
        return self.out_algebra.brackets

    def is_derivation(self, d: Matrix) -> bool:
        return membership(self.der, d.flatten())

    def is_inner(self, d: Matrix) -> bool:
        return membership(self.inn, d.flatten())

    def der_coordinates(self, d: Matrix) -> Vector:
        return self.der.coordinates(d.flatten())

    def outer(self, d: Matrix) -> Vector:
        """Image of a derivation in Out(g)."""
        return self.natural_projection.apply(self.der_coordinates(d))

    def representative(self, xi: Sequence) -> Matrix:
        n = self.algebra.dim
        return Matrix.unflatten(self.der.combine(self.section.apply(vec(xi))), n, n)

    def inner_derivation(self, u: Sequence) -> Matrix:
        return self.algebra.ad(u)


def derivation_spaces(g: LieAlgebra) -> DerivationSpaces:
    require_valid(g)
    n = g.dim
    der = nullspace(derivation_matrix_system(g))
    inn = Subspace.span((a.flatten() for a in g.ad_basis), n * n)
    if not der.contains(inn):
        raise InternalCheckFailure("inner derivations are not all derivations")
    inn_in_der = Subspace.span((der.coordinates(v) for v in inn.vectors()), der.dim)
    projection, section = quotient_coordinates(der.dim, inn_in_der)

    der_mats = [Matrix.unflatten(v, n, n) for v in der.vectors()]
    for d in der_mats:
        for a in g.ad_basis:
            if not membership(inn, commutator(d, a).flatten()):
                raise InternalCheckFailure("inner derivations are not an ideal in Der")
    return DerivationSpaces(g, der, inn, inn_in_der, projection, section)


# ---------------------------------------------------------------- homomorphisms, sums, quotients


@dataclass(frozen=True)
class LieHom:
    source: LieAlgebra
    target: LieAlgebra
    matrix: Matrix  # target.dim x source.dim

    def __call__(self, u: Sequence) -> Vector:
        return self.matrix.apply(u)

    def defects(self) -> list:
        """Basis pairs on which the bracket is not preserved."""
        n = self.source.dim
        bad = []
        for i, j in combinations(range(n), 2):
            lhs = self(self.source.table[i][j])
            rhs = bracket(self.target, self.matrix.col(i), self.matrix.col(j))
            if lhs != rhs:
                bad.append((i, j))
        return bad

    def is_homomorphism(self) -> bool:
        return not self.defects()


def direct_sum(g1: LieAlgebra, g2: LieAlgebra) -> LieAlgebra:
    n1 = g1.dim
    brackets = list(g1.brackets) + [(i + n1, j + n1, k + n1, v) for i, j, k, v in g2.brackets]
    names = list(g1.basis_names) + list(g2.basis_names)
    if len(set(names)) != len(names):
        names = [f"{s}_1" for s in g1.basis_names] + [f"{s}_2" for s in g2.basis_names]
    return LieAlgebra(g1.dim + g2.dim, tuple(brackets), tuple(names))


def is_central(g: LieAlgebra, u: Sequence) -> bool:
    return all(is_zero(bracket(g, u, unit_vector(g.dim, j))) for j in range(g.dim))


def quotient_by_central_subspace(g: LieAlgebra, s: Subspace) -> tuple[LieAlgebra, LieHom]:
    """Quotient of ``g`` by a central subspace, on the non-pivot coordinates of ``s``."""
    for v in s.vectors():
        if not is_central(g, v):
            raise NotCentral(f"basis vector {v} of the subspace is not central")
    projection, section = quotient_coordinates(g.dim, s)
    q = projection.rows
    lifts = [section.col(a) for a in range(q)]
    brackets = []
    for a, b in combinations(range(q), 2):
        for k, v in enumerate(projection.apply(bracket(g, lifts[a], lifts[b]))):
            if v:
                brackets.append((a, b, k, v))
    free = [j for j in range(g.dim) if j not in set(s.pivots)]
    quotient = LieAlgebra(q, tuple(brackets), tuple(g.basis_names[j] for j in free))
    require_valid(quotient)
    hom = LieHom(g, quotient, projection)
    if not hom.is_homomorphism():
        raise InternalCheckFailure("quotient projection does not preserve brackets")
    return quotient, hom


def embed(v: Sequence, offset: int, total: int) -> Vector:
    out = list(zero_vector(total))
    out[offset:offset + len(v)] = v
    return tuple(out)


def algebra_from_matrices(dim: int, table: Iterable) -> LieAlgebra:
    """Build from a dense ``c[i][j]`` vector table, reading only ``i < j``."""
    table = [list(r) for r in table]
    brackets = [
        (i, j, k, v)
        for i, j in combinations(range(dim), 2)
        for k, v in enumerate(vec(table[i][j]))
        if v
    ]
    return LieAlgebra(dim, tuple(brackets))
