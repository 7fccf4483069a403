"""Couplings with a fixed center module, and the linear structure on their obstructions.

An element of Coup(Z) is a coupling together with an isomorphism ``phi``
from the induced center module onto a fixed reference module Z.  Its
obstruction, transported by ``phi``, lands in H^3(T; Z).  ``combine``
builds from two elements and scalars (a, b) a third element whose
obstruction is ``a * uobs(c1) + b * uobs(c2)``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .ce import CohomologyClass, TModule, check_intertwining, classes_equal, induced_map, pushforward
from .errors import (
    BaseMismatch,
    CenterGrew,
    DimensionMismatch,
    InputError,
    InternalCheckFailure,
    InvariantViolation,
    LinearityViolation,
    ReferenceMismatch,
    ScalarsBothZero,
    SubspaceNotPreserved,
)
from .lie import direct_sum, quotient_by_central_subspace
from .linalg import (
    ZERO,
    Matrix,
    Subspace,
    hstack,
    inverse,
    membership,
    nullspace,
    quotient_coordinates,
    solve,
    to_fraction,
)
from .obstruction import Coupling, obstruction_class, validate_coupling


@dataclass(frozen=True)
class CoupElement:
    coupling: Coupling
    reference: TModule
    phi: Matrix  # center coordinates of the fiber -> reference module


def make_element(coupling: Coupling, reference: TModule, phi: Matrix) -> CoupElement:
    reference.require_flat()
    zdim = coupling.zmodule.module_dim
    if reference.base != coupling.base:
        raise DimensionMismatch("reference module lives over a different base algebra")
    if reference.module_dim != zdim or (phi.rows, phi.cols) != (reference.module_dim, zdim):
        raise DimensionMismatch(
            f"center has dimension {zdim}, reference {reference.module_dim}, phi is {phi.rows}x{phi.cols}"
        )
    check_intertwining(phi, coupling.zmodule, reference)
    return CoupElement(coupling, reference, phi)


def uobs(e: CoupElement) -> CohomologyClass:
    return pushforward(e.phi, obstruction_class(e.coupling).cls, e.reference)


def direct_sum_element(c1: CoupElement, c2: CoupElement) -> CoupElement:
    """(L1 + L2, Xi1 + Xi2, phi1 + phi2) over the reference module Z + Z."""
    k1, k2 = c1.coupling, c2.coupling
    if k1.base != k2.base:
        raise BaseMismatch("elements live over different base algebras")
    fiber = direct_sum(k1.fiber, k2.fiber)
    xi = [Matrix.block_diag(a, b) for a, b in zip(k1.xi_reps, k2.xi_reps)]
    coupling = validate_coupling(k1.base, fiber, xi)
    # the canonical center basis of a direct sum is the block union of the summands' bases
    expected = Subspace.span(
        [v + (ZERO,) * k2.fiber.dim for v in k1.center.vectors()]
        + [(ZERO,) * k1.fiber.dim + v for v in k2.center.vectors()],
        fiber.dim,
    )
    if coupling.center != expected:
        raise InternalCheckFailure("center of a direct sum is not the sum of the centers")
    reference = c1.reference.direct_sum(c2.reference)
    return make_element(coupling, reference, Matrix.block_diag(c1.phi, c2.phi))


def block_projections(d1: int, d2: int) -> tuple[Matrix, Matrix]:
    return (
        hstack([Matrix.identity(d1), Matrix.zeros(d1, d2)]),
        hstack([Matrix.zeros(d2, d1), Matrix.identity(d2)]),
    )


def split_sum_class(
    total: CoupElement, ref1: TModule, ref2: TModule | None = None
) -> tuple[CohomologyClass, CohomologyClass]:
    """The two block components of uobs of a direct-sum element."""
    ref2 = ref1 if ref2 is None else ref2
    cls = uobs(total)
    p1, p2 = block_projections(ref1.module_dim, ref2.module_dim)
    return induced_map(p1, cls, ref1), induced_map(p2, cls, ref2)


@dataclass
class CombineAudit:
    z0: Subspace
    psi_image: Subspace
    quotient_projection: Matrix
    class1: CohomologyClass
    class2: CohomologyClass
    class3: CohomologyClass


@dataclass
class CombineResult:
    element: CoupElement
    audit: CombineAudit
    alpha: Fraction
    beta: Fraction


def combine(c1: CoupElement, c2: CoupElement, alpha, beta) -> CombineResult:
    alpha, beta = to_fraction(alpha), to_fraction(beta)
    if alpha == 0 and beta == 0:
        raise ScalarsBothZero("alpha and beta are both zero")
    if c1.coupling.base != c2.coupling.base:
        raise BaseMismatch("elements live over different base algebras")
    if c1.reference != c2.reference:
        raise ReferenceMismatch("elements use different reference modules")
    ref = c1.reference
    d = ref.module_dim

    total = direct_sum_element(c1, c2)
    fiber = total.coupling.fiber
    zsum = total.coupling.center

    theta = hstack([Matrix.identity(d).scale(alpha), Matrix.identity(d).scale(beta)])
    z0 = nullspace(theta)
    phi_inv = inverse(total.phi)
    psi_image = Subspace.span([zsum.combine(phi_inv.apply(v)) for v in z0.vectors()], fiber.dim)

    for i, dmat in enumerate(total.coupling.xi_reps):
        if not all(membership(psi_image, dmat.apply(v)) for v in psi_image.vectors()):
            raise SubspaceNotPreserved(i)
    quotient, proj = quotient_by_central_subspace(fiber, psi_image)
    p = proj.matrix
    _, section = quotient_coordinates(fiber.dim, psi_image)
    xi3 = [p @ dmat @ section for dmat in total.coupling.xi_reps]
    coupling3 = validate_coupling(total.coupling.base, quotient, xi3)

    z3 = coupling3.center
    if z3.dim > d:
        raise CenterGrew(d, z3.dim)
    images = [p.apply(v) for v in zsum.vectors()]
    if Subspace.span(images, quotient.dim) != z3:
        raise InternalCheckFailure("image of the summand centers is not the center of the quotient")

    # phi3 is induced by theta o (phi1 + phi2) on the summand centers
    through = theta @ total.phi
    for v in psi_image.vectors():
        if any(through.apply(zsum.coordinates(v))):
            raise InternalCheckFailure("theta o phi does not vanish on the factored subspace")
    lift = Matrix.from_columns(images, quotient.dim)
    columns = []
    for w in z3.vectors():
        y = solve(lift, w)
        if y is None:
            raise InternalCheckFailure("center vector of the quotient has no preimage")
        columns.append(through.apply(y))
    phi3 = Matrix.from_columns(columns, d) if columns else Matrix.zeros(d, 0)
    c3 = make_element(coupling3, ref, phi3)

    u1, u2, u3 = uobs(c1), uobs(c2), uobs(c3)
    audit = CombineAudit(z0, psi_image, p, u1, u2, u3)
    if not classes_equal(u3, u1.scale(alpha) + u2.scale(beta)):
        raise LinearityViolation(u1, u2, u3, alpha, beta)
    return CombineResult(c3, audit, alpha, beta)


def seeded_scalar_pairs(seed: int, count: int) -> list[tuple[Fraction, Fraction]]:
    """Pairs p/q with 1 <= |p| <= 5 and 1 <= q <= 3, both entries nonzero."""
    rng = random.Random(f"scalars:{seed}")
    out = []
    for _ in range(count):
        pair = tuple(Fraction(rng.choice([-5, -4, -3, -2, -1, 1, 2, 3, 4, 5]), rng.randint(1, 3)) for _ in range(2))
        out.append(pair)
    return out


@dataclass
class LinearitySample:
    alpha: Fraction
    beta: Fraction
    passed: bool
    result: CombineResult | None = None
    error: str | None = None


@dataclass
class LinearityReport:
    samples: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(s.passed for s in self.samples)


def verify_linearity(c1: CoupElement, c2: CoupElement, samples: Sequence[tuple]) -> LinearityReport:
    report = LinearityReport()
    for alpha, beta in samples:
        alpha, beta = to_fraction(alpha), to_fraction(beta)
        try:
            result = combine(c1, c2, alpha, beta)
        except (InputError, InvariantViolation) as exc:
            report.samples.append(LinearitySample(alpha, beta, False, error=f"{type(exc).__name__}: {exc}"))
        else:
            report.samples.append(LinearitySample(alpha, beta, True, result))
    return report
