"""Chevalley-Eilenberg cochains of a base Lie algebra T with coefficients in a T-module.

A cochain of degree k stores one module vector per increasing index tuple
``i_1 < ... < i_k``, in ``itertools.combinations`` order.  The differential
is

    (dc)(X_0..X_k) = sum_i (-1)^i rho(X_i) c(..^X_i..)
                   + sum_{i<j} (-1)^(i+j) c([X_i, X_j], ..^X_i..^X_j..)

and is defined for any action, flat or not; cohomology requires flatness.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb
from typing import Mapping, Sequence

from .errors import (
    DegreeOverflow,
    ModuleMismatch,
    NotCocycle,
    NotFlat,
    NotIntertwining,
    NotInvertible,
)
from .lie import LieAlgebra
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    Vector,
    commutator,
    inverse,
    is_zero,
    nullspace,
    quotient_coordinates,
    to_fraction,
    vadd,
    vec,
    vscale,
    zero_vector,
)


@lru_cache(maxsize=None)
def index_tuples(m: int, k: int) -> tuple:
    return tuple(combinations(range(m), k))


@lru_cache(maxsize=None)
def _tuple_positions(m: int, k: int) -> dict:
    return {t: p for p, t in enumerate(index_tuples(m, k))}


def sort_sign(indices: Sequence[int]) -> tuple[int, tuple] | tuple[int, None]:
    """Sign of the sorting permutation and the sorted tuple; (0, None) on repeats."""
    idx = list(indices)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    for i in range(len(idx)):
        for j in range(len(idx) - 1 - i):
            if idx[j] > idx[j + 1]:
                idx[j], idx[j + 1] = idx[j + 1], idx[j]
                sign = -sign
    return sign, tuple(idx)


@dataclass(frozen=True)
class TModule:
    base: LieAlgebra
    module_dim: int
    action: tuple  # one module_dim x module_dim Matrix per basis element of base

    def __post_init__(self):
        action = tuple(self.action)
        if len(action) != self.base.dim:
            raise ValueError("need one action matrix per basis element of the base algebra")
        for a in action:
            if (a.rows, a.cols) != (self.module_dim, self.module_dim):
                raise ValueError("action matrices must be module_dim x module_dim")
        object.__setattr__(self, "action", action)

    @classmethod
    def trivial(cls, base: LieAlgebra, module_dim: int = 1) -> "TModule":
        return cls(base, module_dim, tuple(Matrix.zeros(module_dim, module_dim) for _ in range(base.dim)))

    def act(self, i: int, v: Sequence) -> Vector:
        return self.action[i].apply(v)

    def act_vector(self, x: Sequence, v: Sequence) -> Vector:
        out = zero_vector(self.module_dim)
        for i, a in enumerate(x):
            if a:
                out = vadd(out, vscale(a, self.act(i, v)))
        return out

    def combined_action(self, x: Sequence) -> Matrix:
        out = Matrix.zeros(self.module_dim, self.module_dim)
        for i, a in enumerate(x):
            if a:
                out = out + self.action[i].scale(a)
        return out

    def flatness_defects(self) -> list:
        out = []
        for i, j in combinations(range(self.base.dim), 2):
            defect = commutator(self.action[i], self.action[j]) - self.combined_action(self.base.table[i][j])
            if not defect.is_zero():
                out.append(((i, j), defect))
        return out

    @cached_property
    def is_flat(self) -> bool:
        return not self.flatness_defects()

    def require_flat(self) -> None:
        defects = self.flatness_defects()
        if defects:
            raise NotFlat(*defects[0])

    def direct_sum(self, other: "TModule") -> "TModule":
        if self.base != other.base:
            raise ModuleMismatch("modules over different base algebras")
        return TModule(
            self.base,
            self.module_dim + other.module_dim,
            tuple(Matrix.block_diag(a, b) for a, b in zip(self.action, other.action)),
        )


@dataclass(frozen=True)
class Cochain:
    degree: int
    module: TModule
    values: tuple  # module vectors, aligned with index_tuples(m, degree)

    def __post_init__(self):
        values = tuple(vec(v) for v in self.values)
        if len(values) != comb(self.module.base.dim, self.degree):
            raise ValueError("cochain must have one value per increasing index tuple")
        for v in values:
            if len(v) != self.module.module_dim:
                raise ValueError("cochain value has wrong length")
        object.__setattr__(self, "values", values)

    @classmethod
    def zero(cls, module: TModule, degree: int) -> "Cochain":
        n = comb(module.base.dim, degree)
        return cls(degree, module, (zero_vector(module.module_dim),) * n)

    @classmethod
    def from_mapping(cls, module: TModule, degree: int, values: Mapping) -> "Cochain":
        """Build from ``{index tuple: vector}``; unlisted tuples are zero, unsorted tuples are alternated."""
        m, d = module.base.dim, module.module_dim
        out = {t: zero_vector(d) for t in index_tuples(m, degree)}
        for t, v in values.items():
            sign, st = sort_sign(t)
            if st is None or st not in out:
                raise ValueError(f"invalid index tuple {t}")
            out[st] = vadd(out[st], vscale(sign, vec(v)))
        return cls(degree, module, tuple(out[t] for t in index_tuples(m, degree)))

    @classmethod
    def from_vector(cls, module: TModule, degree: int, flat: Sequence) -> "Cochain":
        d = module.module_dim
        flat = vec(flat)
        n = comb(module.base.dim, degree)
        return cls(degree, module, tuple(flat[p * d:(p + 1) * d] for p in range(n)))

    def to_vector(self) -> Vector:
        return tuple(a for v in self.values for a in v)

    @property
    def tuples(self) -> tuple:
        return index_tuples(self.module.base.dim, self.degree)

    def items(self):
        return zip(self.tuples, self.values)

    def __call__(self, *indices: int) -> Vector:
        """Value on basis elements in any order (alternating extension)."""
        sign, st = sort_sign(indices)
        if st is None:
            return zero_vector(self.module.module_dim)
        v = self.values[_tuple_positions(self.module.base.dim, self.degree)[st]]
        return v if sign == 1 else vscale(-1, v)

    def evaluate(self, vectors: Sequence[Sequence]) -> Vector:
        """Value on arbitrary base vectors by multilinearity."""
        out = zero_vector(self.module.module_dim)
        m = self.module.base.dim

        def rec(pos, coeff, idx):
            nonlocal out
            if pos == len(vectors):
                out = vadd(out, vscale(coeff, self(*idx)))
                return
            for i in range(m):
                a = vectors[pos][i]
                if a and i not in idx:
                    rec(pos + 1, coeff * a, idx + (i,))

        rec(0, to_fraction(1), ())
        return out

    def map_values(self, matrix: Matrix, module: TModule) -> "Cochain":
        return Cochain(self.degree, module, tuple(matrix.apply(v) for v in self.values))

    def _check_compatible(self, other: "Cochain") -> None:
        if self.degree != other.degree or self.module != other.module:
            raise ModuleMismatch("cochains of different degree or module")

    def __add__(self, other: "Cochain") -> "Cochain":
        self._check_compatible(other)
        return Cochain(self.degree, self.module, tuple(vadd(a, b) for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        return self + other.scale(-1)

    def scale(self, c) -> "Cochain":
        c = to_fraction(c)
        return Cochain(self.degree, self.module, tuple(vscale(c, v) for v in self.values))

    def is_zero(self) -> bool:
        return all(is_zero(v) for v in self.values)


def ce_differential(c: Cochain) -> Cochain:
    """CE differential of ``c`` using the module's action (flat or not)."""
    module = c.module
    base = module.base
    m, k = base.dim, c.degree
    if k > m:
        raise DegreeOverflow(f"degree {k} exceeds dimension {m} of the base algebra")
    d = module.module_dim
    out = []
    for t in index_tuples(m, k + 1):
        acc = [ZERO] * d
        for i, xi in enumerate(t):
            rest = t[:i] + t[i + 1:]
            v = module.act(xi, c(*rest))
            s = 1 if i % 2 == 0 else -1
            for a in range(d):
                if v[a]:
                    acc[a] += s * v[a]
        for i, j in combinations(range(k + 1), 2):
            br = base.table[t[i]][t[j]]
            rest = t[:i] + t[i + 1:j] + t[j + 1:]
            s = 1 if (i + j) % 2 == 0 else -1
            for l, coeff in enumerate(br):
                if coeff:
                    v = c(l, *rest)
                    for a in range(d):
                        if v[a]:
                            acc[a] += s * coeff * v[a]
        out.append(tuple(acc))
    return Cochain(k + 1, module, tuple(out))


@lru_cache(maxsize=256)
def differential_matrix(module: TModule, k: int) -> Matrix:
    """Matrix of d_k : C^k -> C^(k+1) on flattened cochain vectors; zero map past the top degree."""
    m, d = module.base.dim, module.module_dim
    n_src = comb(m, k) * d if k >= 0 else 0
    n_tgt = comb(m, k + 1) * d
    if k < 0 or k > m:
        return Matrix.zeros(n_tgt, n_src)
    columns = []
    for p in range(n_src):
        unit = [ZERO] * n_src
        unit[p] = to_fraction(1)
        columns.append(ce_differential(Cochain.from_vector(module, k, unit)).to_vector())
    if not columns:
        return Matrix.zeros(n_tgt, 0)
    return Matrix.from_columns(columns, n_tgt)


@dataclass(frozen=True)
class CohomologySpace:
    """H^k as ker(d_k) / im(d_(k-1)) with canonical quotient coordinates."""

    module: TModule
    degree: int
    kernel: Subspace  # inside C^k
    image_in_kernel: Subspace  # im(d_(k-1)) in kernel coordinates
    projection: Matrix  # kernel coordinates -> class coordinates
    section: Matrix  # class coordinates -> kernel coordinates

    @property
    def betti(self) -> int:
        return self.projection.rows

    def representative(self, coordinates: Sequence) -> Cochain:
        kc = self.section.apply(vec(coordinates))
        return Cochain.from_vector(self.module, self.degree, self.kernel.combine(kc))


@lru_cache(maxsize=256)
def cohomology(module: TModule, k: int) -> CohomologySpace:
    module.require_flat()
    m, _d = module.base.dim, module.module_dim
    if k < 0 or k > m:
        kernel = Subspace.zero(0)
    else:
        kernel = nullspace(differential_matrix(module, k))
    if k - 1 >= 0 and k <= m:
        prev = differential_matrix(module, k - 1)
        image = [prev.col(j) for j in range(prev.cols)]
    else:
        image = []
    image_in_kernel = Subspace.span((kernel.coordinates(v) for v in image), kernel.dim)
    projection, section = quotient_coordinates(kernel.dim, image_in_kernel)
    return CohomologySpace(module, k, kernel, image_in_kernel, projection, section)


def betti(module: TModule, k: int) -> int:
    return cohomology(module, k).betti


@dataclass(frozen=True)
class CohomologyClass:
    degree: int
    module: TModule
    coordinates: tuple

    def is_zero(self) -> bool:
        return is_zero(self.coordinates)

    def _check(self, other: "CohomologyClass") -> None:
        if self.degree != other.degree or self.module != other.module:
            raise ModuleMismatch("classes live in different cohomology groups")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        return CohomologyClass(self.degree, self.module, vadd(self.coordinates, other.coordinates))

    def scale(self, c) -> "CohomologyClass":
        return CohomologyClass(self.degree, self.module, vscale(to_fraction(c), self.coordinates))


def class_of(cocycle: Cochain) -> CohomologyClass:
    module = cocycle.module
    if cocycle.degree <= module.base.dim and not ce_differential(cocycle).is_zero():
        raise NotCocycle("cochain is not closed")
    space = cohomology(module, cocycle.degree)
    kc = space.kernel.coordinates(cocycle.to_vector())
    return CohomologyClass(cocycle.degree, module, space.projection.apply(kc))


def zero_class(module: TModule, k: int) -> CohomologyClass:
    return CohomologyClass(k, module, zero_vector(cohomology(module, k).betti))


def classes_equal(a: CohomologyClass, b: CohomologyClass) -> bool:
    a._check(b)
    return a.coordinates == b.coordinates


def representative(cls: CohomologyClass) -> Cochain:
    return cohomology(cls.module, cls.degree).representative(cls.coordinates)


def check_intertwining(iso: Matrix, source: TModule, target: TModule) -> None:
    if source.base != target.base:
        raise ModuleMismatch("modules over different base algebras")
    if (iso.rows, iso.cols) != (target.module_dim, source.module_dim):
        raise ModuleMismatch("map has the wrong shape for these modules")
    if inverse(iso) is None:
        raise NotInvertible("map between modules is not invertible")
    for i, (a, b) in enumerate(zip(source.action, target.action)):
        defect = iso @ a - b @ iso
        if not defect.is_zero():
            raise NotIntertwining(i, defect)


def pushforward(iso: Matrix, obj, target: TModule):
    """Transport a cochain or a class along an intertwining isomorphism."""
    check_intertwining(iso, obj.module, target)
    if isinstance(obj, Cochain):
        return obj.map_values(iso, target)
    if isinstance(obj, CohomologyClass):
        return class_of(representative(obj).map_values(iso, target))
    raise TypeError(f"cannot push forward {type(obj).__name__}")


def induced_map(matrix: Matrix, cls: CohomologyClass, target: TModule) -> CohomologyClass:
    """Image of a class under a module homomorphism (not necessarily invertible)."""
    source = cls.module
    if (matrix.rows, matrix.cols) != (target.module_dim, source.module_dim):
        raise ModuleMismatch("map has the wrong shape for these modules")
    for i, (a, b) in enumerate(zip(source.action, target.action)):
        defect = matrix @ a - b @ matrix
        if not defect.is_zero():
            raise NotIntertwining(i, defect)
    return class_of(representative(cls).map_values(matrix, target))
