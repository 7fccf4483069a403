"""Obstruction classes of couplings and the extensions they allow.

A coupling of a base algebra T with a fiber algebra g is given by one
derivation of g per basis element of T, read modulo inner derivations.
The pipeline lifts it to a connection, takes the curvature, lifts that
through ``ad`` to a g-valued 2-cochain ``omega``, differentiates, and reads
the result as a 3-cocycle with values in the center of g.
"""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .ce import (
    Cochain,
    CohomologyClass,
    TModule,
    class_of,
    classes_equal,
    cohomology,
    ce_differential,
    differential_matrix,
)
from .errors import (
    CurvatureNotInner,
    InternalCheckFailure,
    IndependenceViolation,
    JacobiFailure,
    NoPreimage,
    NotClosed,
    NotCouplingHomomorphism,
    NotDerivation,
    NotInner,
    InvariantViolation,
)
from .lie import (
    DerivationSpaces,
    LieAlgebra,
    LieHom,
    center as _center,
    derivation_spaces as _derivation_spaces,
    require_valid,
    validate,
)
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    commutator,
    is_zero,
    membership,
    nullspace,
    solve,
    unit_vector,
    vscale,
)


@lru_cache(maxsize=128)
def derivation_spaces(g: LieAlgebra) -> DerivationSpaces:
    return _derivation_spaces(g)


@lru_cache(maxsize=128)
def center(g: LieAlgebra) -> Subspace:
    return _center(g)


class ValueNotCentral(InvariantViolation):
    def __init__(self, tup):
        self.tuple = tup
        super().__init__(f"d(omega) is not central on {tup}")


def linear_combination(matrices: Sequence[Matrix], coeffs: Sequence, n: int) -> Matrix:
    out = Matrix.zeros(n, n)
    for c, m in zip(coeffs, matrices):
        if c:
            out = out + m.scale(c)
    return out


@dataclass(frozen=True)
class Coupling:
    base: LieAlgebra
    fiber: LieAlgebra
    spaces: DerivationSpaces
    xi_reps: tuple
    zmodule: TModule = field(compare=False)

    @property
    def center(self) -> Subspace:
        return center(self.fiber)

    def xi_at(self, x: Sequence) -> Matrix:
        return linear_combination(self.xi_reps, x, self.fiber.dim)

    def outer_images(self) -> tuple:
        return tuple(self.spaces.outer(d) for d in self.xi_reps)


def _restrict_to_center(fiber: LieAlgebra, d: Matrix) -> Matrix:
    z = center(fiber)
    cols = []
    for v in z.vectors():
        image = d.apply(v)
        if not membership(z, image):
            raise InternalCheckFailure("derivation does not preserve the center")
        cols.append(z.coordinates(image))
    if not cols:
        return Matrix.zeros(0, 0)
    return Matrix.from_columns(cols, z.dim)


def validate_coupling(base: LieAlgebra, fiber: LieAlgebra, xi_reps: Sequence[Matrix]) -> Coupling:
    require_valid(base)
    require_valid(fiber)
    xi_reps = tuple(xi_reps)
    n = fiber.dim
    if len(xi_reps) != base.dim:
        raise ValueError(f"need {base.dim} representatives, got {len(xi_reps)}")
    for d in xi_reps:
        if (d.rows, d.cols) != (n, n):
            raise ValueError(f"representatives must be {n}x{n} matrices")
    spaces = derivation_spaces(fiber)
    for i, d in enumerate(xi_reps):
        if not spaces.is_derivation(d):
            raise NotDerivation(i)
    for i, j in combinations(range(base.dim), 2):
        defect = commutator(xi_reps[i], xi_reps[j]) - linear_combination(xi_reps, base.table[i][j], n)
        if not spaces.is_inner(defect):
            distance = sum(1 for a in spaces.outer(defect) if a)
            raise NotCouplingHomomorphism((i, j), defect, distance)
    zmodule = induced_center_module_from(base, fiber, xi_reps)
    return Coupling(base, fiber, spaces, xi_reps, zmodule)


def induced_center_module_from(base: LieAlgebra, fiber: LieAlgebra, xi_reps) -> TModule:
    z = center(fiber)
    # inner derivations kill the center, so the restriction ignores the choice of representative
    for a in fiber.ad_basis:
        for v in z.vectors():
            if not is_zero(a.apply(v)):
                raise InternalCheckFailure("inner derivation acts nontrivially on the center")
    module = TModule(base, z.dim, tuple(_restrict_to_center(fiber, d) for d in xi_reps))
    if not module.is_flat:
        raise InternalCheckFailure("induced action on the center is not flat")
    return module


def induced_center_module(c: Coupling) -> TModule:
    return induced_center_module_from(c.base, c.fiber, c.xi_reps)


# ---------------------------------------------------------------- lifts


@dataclass(frozen=True)
class ConnectionLift:
    coupling: Coupling
    nabla: tuple

    @property
    def fiber_module(self) -> TModule:
        """The fiber g with the (generally non-flat) action of the connection."""
        return TModule(self.coupling.base, self.coupling.fiber.dim, self.nabla)

    @property
    def der_module(self) -> TModule:
        """gl(g) with the action M -> [nabla_i, M], row-major coordinates."""
        n = self.coupling.fiber.dim
        return TModule(self.coupling.base, n * n, tuple(_commutator_action(d) for d in self.nabla))


def _commutator_action(d: Matrix) -> Matrix:
    n = d.rows
    rows = [[ZERO] * (n * n) for _ in range(n * n)]
    for r in range(n):
        for c in range(n):
            out = r * n + c
            for s in range(n):
                if d[r, s]:
                    rows[out][s * n + c] += d[r, s]
                if d[s, c]:
                    rows[out][r * n + s] -= d[s, c]
    return Matrix.from_rows(rows, n * n)


def lift_connection(c: Coupling) -> ConnectionLift:
    return ConnectionLift(c, c.xi_reps)


def lift_connection_shifted(c: Coupling, shifts: Sequence[Matrix]) -> ConnectionLift:
    shifts = tuple(shifts)
    if len(shifts) != c.base.dim:
        raise ValueError("need one shift per basis element of the base algebra")
    for i, s in enumerate(shifts):
        if not c.spaces.is_inner(s):
            raise NotInner(i)
    return ConnectionLift(c, tuple(d + s for d, s in zip(c.xi_reps, shifts)))


def curvature(lift: ConnectionLift) -> Cochain:
    """R(X_i, X_j) = [nabla_i, nabla_j] - nabla_[X_i, X_j], as flattened matrices."""
    c = lift.coupling
    n = c.fiber.dim
    values = []
    for i, j in combinations(range(c.base.dim), 2):
        r = commutator(lift.nabla[i], lift.nabla[j]) - linear_combination(lift.nabla, c.base.table[i][j], n)
        if not c.spaces.is_inner(r):
            raise CurvatureNotInner(f"curvature on {(i, j)} is not inner")
        values.append(r.flatten())
    return Cochain(2, lift.der_module, tuple(values))


@lru_cache(maxsize=128)
def ad_matrix(g: LieAlgebra) -> Matrix:
    """n^2 x n matrix sending u to the flattened ad_u."""
    return Matrix.from_columns((a.flatten() for a in g.ad_basis), g.dim * g.dim)


@dataclass(frozen=True)
class OmegaLift:
    lift: ConnectionLift
    omega: Cochain  # degree 2, values in the fiber


def lift_omega(lift: ConnectionLift, curv: Cochain | None = None) -> OmegaLift:
    if curv is None:
        curv = curvature(lift)
    a = ad_matrix(lift.coupling.fiber)
    values = []
    for t, r in curv.items():
        u = solve(a, r)
        if u is None:
            raise NoPreimage(f"curvature on {t} has no preimage under ad")
        values.append(u)
    return OmegaLift(lift, Cochain(2, lift.fiber_module, tuple(values)))


def center_to_fiber(c: Coupling, cochain: Cochain, module: TModule) -> Cochain:
    """Re-express a center-coordinate cochain as a fiber-valued one."""
    z = c.center
    return Cochain(cochain.degree, module, tuple(z.combine(v) for v in cochain.values))


def lift_omega_shifted(lift: ConnectionLift, shift: Cochain) -> OmegaLift:
    """Default omega plus a center-valued 2-cochain given in center coordinates."""
    base = lift_omega(lift)
    return OmegaLift(lift, base.omega + center_to_fiber(lift.coupling, shift, lift.fiber_module))


# ---------------------------------------------------------------- the obstruction


@dataclass(frozen=True)
class ObstructionResult:
    cocycle: Cochain  # degree 3, center coordinates
    zmodule: TModule
    cls: CohomologyClass
    trivial: bool
    omega: OmegaLift = field(compare=False, repr=False)

    @property
    def center_dim(self) -> int:
        return self.zmodule.module_dim

    @property
    def betti3(self) -> int:
        return cohomology(self.zmodule, 3).betti


def _differential_or_zero(c: Cochain) -> Cochain:
    if c.degree > c.module.base.dim:
        return Cochain.zero(c.module, c.degree + 1)
    return ce_differential(c)


def omega_differential(o: OmegaLift) -> Cochain:
    """d^nabla omega, fiber-valued, using the non-flat connection action."""
    return _differential_or_zero(o.omega)


def obstruction_cocycle(o: OmegaLift) -> Cochain:
    c = o.lift.coupling
    z = c.center
    d_omega = omega_differential(o)
    values = []
    for t, v in d_omega.items():
        if not membership(z, v):
            raise ValueNotCentral(t)
        values.append(z.coordinates(v))
    u = Cochain(3, c.zmodule, tuple(values))
    if not _differential_or_zero(u).is_zero():
        raise NotClosed("obstruction cocycle is not closed")
    return u


def obstruction_class(
    c: Coupling,
    lift: ConnectionLift | None = None,
    omega: OmegaLift | None = None,
) -> ObstructionResult:
    if omega is None:
        omega = lift_omega(lift if lift is not None else lift_connection(c))
    u = obstruction_cocycle(omega)
    cls = class_of(u)
    return ObstructionResult(u, c.zmodule, cls, cls.is_zero(), omega)


def bianchi_sides(o: OmegaLift) -> tuple[Cochain, Cochain]:
    """ad applied to d^nabla omega, and the connection differential of the curvature.

    Both are gl(g)-valued 3-cochains; they agree for every valid lift.
    """
    lift = o.lift
    a = ad_matrix(lift.coupling.fiber)
    der = lift.der_module
    left = omega_differential(o).map_values(a, der)
    right = _differential_or_zero(curvature(lift))
    return left, right


# ---------------------------------------------------------------- independence of choices


def random_rational(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(-5, 5), rng.randint(1, 3))


def random_shifts(c: Coupling, seed: int, trial: int) -> tuple[tuple, Cochain]:
    """Inner shifts of the connection and a center-valued shift of omega.

    Drawn from a generator seeded by ``(seed, trial)`` alone; every entry is
    p/q with |p| <= 5 and 1 <= q <= 3.
    """
    rng = random.Random(f"{seed}:{trial}")
    n = c.fiber.dim
    shifts = tuple(c.fiber.ad(tuple(random_rational(rng) for _ in range(n))) for _ in range(c.base.dim))
    zdim = c.zmodule.module_dim
    count = len(Cochain.zero(c.zmodule, 2).values)
    values = tuple(tuple(random_rational(rng) for _ in range(zdim)) for _ in range(count))
    return shifts, Cochain(2, c.zmodule, values)


def _trial_class(c: Coupling, seed: int, trial: int) -> CohomologyClass:
    shifts, omega_shift = random_shifts(c, seed, trial)
    lift = lift_connection_shifted(c, shifts)
    return obstruction_class(c, omega=lift_omega_shifted(lift, omega_shift)).cls


@dataclass
class IndependenceReport:
    trials: int
    seed: int
    default: CohomologyClass
    classes: list
    failures: list

    @property
    def passed(self) -> bool:
        return not self.failures


def verify_independence(c: Coupling, trials: int, seed: int, workers: int = 1, strict: bool = True) -> IndependenceReport:
    default = obstruction_class(c).cls
    if workers > 1 and trials > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            classes = list(pool.map(_trial_class, [c] * trials, [seed] * trials, range(trials)))
    else:
        classes = [_trial_class(c, seed, t) for t in range(trials)]
    failures = [t for t, cls in enumerate(classes) if not classes_equal(cls, default)]
    report = IndependenceReport(trials, seed, default, classes, failures)
    if failures and strict:
        t = failures[0]
        raise IndependenceViolation(
            f"trial {t} gives a different obstruction class", witness=random_shifts(c, seed, t)
        )
    return report


# ---------------------------------------------------------------- extensions


@dataclass(frozen=True)
class ExtensionResult:
    total: LieAlgebra
    anchor: LieHom
    kernel_inclusion: LieHom
    omega: Cochain


def extension_algebra(base: LieAlgebra, fiber: LieAlgebra, nabla: Sequence[Matrix], omega: Cochain) -> LieAlgebra:
    """Bracket on T + g from a connection and a g-valued 2-cochain."""
    m, n = base.dim, fiber.dim
    brackets = []
    for (i, j), w in omega.items():
        for l, v in enumerate(base.table[i][j]):
            if v:
                brackets.append((i, j, l, v))
        for a, v in enumerate(w):
            if v:
                brackets.append((i, j, m + a, v))
    for i in range(m):
        for a in range(n):
            for b, v in enumerate(nabla[i].col(a)):
                if v:
                    brackets.append((i, m + a, m + b, v))
    for a, b, k, v in fiber.brackets:
        brackets.append((m + a, m + b, m + k, v))
    names = list(base.basis_names) + list(fiber.basis_names)
    if len(set(names)) != len(names):
        names = [f"T.{s}" for s in base.basis_names] + [f"g.{s}" for s in fiber.basis_names]
    return LieAlgebra(m + n, tuple(brackets), tuple(names))


def construct_extension(c: Coupling) -> ExtensionResult | None:
    result = obstruction_class(c)
    if not result.trivial:
        return None
    o = result.omega
    u = result.cocycle
    zmod = c.zmodule
    m, n = c.base.dim, c.fiber.dim
    if m >= 2 and zmod.module_dim:
        x = solve(differential_matrix(zmod, 2), vscale(-1, u.to_vector()))
        if x is None:
            raise InternalCheckFailure("trivial obstruction class but -U is not a coboundary")
        correction = Cochain.from_vector(zmod, 2, x)
        omega = o.omega + center_to_fiber(c, correction, o.omega.module)
    else:
        omega = o.omega
    if not omega_differential(OmegaLift(o.lift, omega)).is_zero():
        raise InternalCheckFailure("corrected omega is not closed")
    total = extension_algebra(c.base, c.fiber, o.lift.nabla, omega)
    report = validate(total)
    if not report.valid:
        i, j, k, residual = report.jacobi[0]
        raise JacobiFailure((i, j, k), residual)
    anchor = LieHom(total, c.base, Matrix.from_rows(
        [unit_vector(m + n, i) for i in range(m)], m + n))
    inclusion = LieHom(c.fiber, total, Matrix.from_columns(
        [unit_vector(m + n, m + a) for a in range(n)], m + n))
    if not anchor.is_homomorphism() or not inclusion.is_homomorphism():
        raise InternalCheckFailure("anchor or kernel inclusion is not a homomorphism")
    if nullspace(anchor.matrix) != Subspace.span([inclusion.matrix.col(a) for a in range(n)], m + n):
        raise InternalCheckFailure("anchor kernel differs from the embedded fiber")
    return ExtensionResult(total, anchor, inclusion, omega)


def atiyah_exact(e: ExtensionResult) -> bool:
    """Kernel of the anchor is exactly the embedded fiber and the anchor is onto."""
    a = e.anchor.matrix
    n = e.kernel_inclusion.source.dim
    image = Subspace.span([e.kernel_inclusion.matrix.col(k) for k in range(n)], e.total.dim)
    onto = Subspace.span([a.col(j) for j in range(a.cols)], a.rows) == Subspace.full(a.rows)
    return onto and nullspace(a) == image
