"""The lattice-level mirror map.

An elliptic fibration with section gives classes f (fiber) and sigma0
(section) with f^2 = 0, f.sigma0 = 1, sigma0^2 = -2, hence a hyperbolic
summand U' spanned by v = f, v* = f + sigma0, and a splitting
Gamma = Gamma' + U' with Gamma' = (U')^perp.

The mirror map swaps U' with the (r, s) Mukai block U via v -> w = (0,0,-1),
v* -> w* = (1,0,0) (equivalently f -> w, sigma0 -> (1,0,1)) and is the
identity on Gamma'.  On period data ((P, omega), B), with P spanned by Omega,
Im(Omega) orthogonal to v, and omega, B in Gamma'_R + R*v, it acts by

    mirror Omega   = (pr(B + i omega) - 1/2 (B + i omega)^2 v + v*) / (Re(Omega).v)
    mirror B+i omega = (pr(Omega) - (Omega.B) v) / (Re(Omega).v)

where pr kills the U' components.  Applying the map twice returns the input
period exactly whenever the input satisfies Omega^2 = 0; for non-null inputs
(e.g. unnormalized hyperkaehler data) only the Kaehler-side data returns, and
the involution check reports that honestly instead of asserting it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import QuadScalar
from .intmat import rank_generic
from .lattice import (
    GAMMA,
    MUKAI_W,
    MUKAI_WSTAR,
    ComplexVector,
    GramLattice,
    LatticeVector,
    MukaiVector,
    Sublattice,
    embed_gamma,
    orth_complement,
    pair,
    project_off_hyperbolic,
)


class BadFibrationClasses(ValueError):
    """f, sigma0 fail the pairing relations of a fibration with section."""


class NormalizationFailure(ValueError):
    """Re(Omega).v = 0: the mirror formulas cannot be normalized."""


class PreconditionViolation(ValueError):
    """An input violates a documented precondition."""


@dataclass(frozen=True)
class SplitData:
    """A fixed hyperbolic splitting Gamma = Gamma' + U' with U' = <f, f+sigma0>."""

    lat: GramLattice
    f: LatticeVector
    sigma0: LatticeVector
    v: LatticeVector
    vstar: LatticeVector
    gamma_prime: Sublattice

    def project(self, x):
        """Projection pr onto Gamma'_R (kills v and v* components)."""
        return project_off_hyperbolic(self.lat, self.v, self.vstar, x)


def make_split(f: LatticeVector, sigma0: LatticeVector, lat: GramLattice = GAMMA) -> SplitData:
    if pair(lat, f, f) != 0 or pair(lat, f, sigma0) != 1 or pair(lat, sigma0, sigma0) != -2:
        raise BadFibrationClasses(
            "need f^2 = 0, f.sigma0 = 1, sigma0^2 = -2; got "
            f"{pair(lat, f, f)}, {pair(lat, f, sigma0)}, {pair(lat, sigma0, sigma0)}"
        )
    v = f
    vstar = f + sigma0
    gamma_prime = orth_complement(lat, [f, sigma0])
    return SplitData(lat=lat, f=f, sigma0=sigma0, v=v, vstar=vstar, gamma_prime=gamma_prime)


@dataclass(frozen=True)
class MirrorTriple:
    """Mirror period Omega, complexified Kaehler class omega and B-field."""

    Omega_check: ComplexVector
    omega_check: LatticeVector
    B_check: LatticeVector


def mirror_period(
    split: SplitData, Omega: ComplexVector, omega: LatticeVector, B: LatticeVector
) -> MirrorTriple:
    """Apply the mirror map to period data; all scalars exact."""
    lat = split.lat
    v, vstar = split.v, split.vstar
    if pair(lat, Omega.im, v):
        raise PreconditionViolation("Im(Omega) must be orthogonal to v")
    if pair(lat, omega, v) or pair(lat, B, v):
        raise PreconditionViolation("omega and B must lie in Gamma'_R + R*v")
    if pair(lat, omega, omega).sign() <= 0:
        raise PreconditionViolation("omega^2 must be positive")
    rev = pair(lat, Omega.re, v)
    if not rev:
        raise NormalizationFailure("Re(Omega).v = 0")
    scale = rev.inverse()
    x = ComplexVector(B, omega)
    x_sq = pair(lat, x, x)
    omega_check_cplx = (
        split.project(x)
        - ComplexVector(v).scale(x_sq * Fraction(1, 2))
        + ComplexVector(vstar)
    ).scale(scale)
    shift = pair(lat, Omega, ComplexVector(B))
    kahler_side = (split.project(Omega) - ComplexVector(v).scale(shift)).scale(scale)
    triple = MirrorTriple(
        Omega_check=omega_check_cplx,
        omega_check=kahler_side.im,
        B_check=kahler_side.re,
    )
    # structural invariants of the output period
    assert not pair(lat, triple.Omega_check, triple.Omega_check), "mirror period is not null"
    conj_norm = pair(lat, triple.Omega_check, triple.Omega_check.conj())
    assert not conj_norm.im and conj_norm.re.sign() > 0, "mirror period plane is not positive"
    return triple


def canonicalize_period(split: SplitData, Omega: ComplexVector) -> ComplexVector:
    """Rescale a period so its v*-coefficient (= Omega.v) equals 1."""
    coeff = pair(split.lat, Omega, ComplexVector(split.v))
    if not coeff:
        raise NormalizationFailure("period has no v* component")
    return Omega.scale(coeff.inverse())


def mirror_class(split: SplitData, cls: LatticeVector) -> MukaiVector:
    """Mukai vector of the mirror of an integral class.

    Decompose cls = pr(cls) + a v + b v*; the result is (b, pr(cls), -a), the
    identity on Gamma' with f -> (0,0,-1) and sigma0 -> (1,0,1).
    """
    if not cls.is_integral:
        raise ValueError("mirror_class requires an integral class")
    lat = split.lat
    a = pair(lat, cls, split.vstar).as_int()
    b = pair(lat, cls, split.v).as_int()
    core = cls - a * split.v - b * split.vstar
    return MukaiVector(b, core, -a)


def tube_map(split: SplitData, z: ComplexVector) -> ComplexVector:
    """Tube-domain coordinate to period: z - 1/2 z^2 v + v*."""
    lat = split.lat
    if pair(lat, z, ComplexVector(split.v)) or pair(lat, z, ComplexVector(split.vstar)):
        raise PreconditionViolation("tube coordinate must be orthogonal to U'")
    z_sq = pair(lat, z, z)
    return z - ComplexVector(split.v).scale(z_sq * Fraction(1, 2)) + ComplexVector(split.vstar)


def period_embed(
    split: SplitData,
    p_basis: Sequence[LatticeVector],
    omega: LatticeVector,
    B: LatticeVector,
) -> tuple[list[LatticeVector], list[LatticeVector]]:
    """Embed ((P, omega), B) as an orthogonal pair of 2-planes in Gamma + U.

    H1 = {x - (x.B) w : x in P};  H2 is spanned by 1/2(omega^2 - B^2) w + w* + B
    and omega - (omega.B) w.  Returned in rank-24 Mukai coordinates.
    """
    lat = split.lat
    if len(p_basis) != 2:
        raise PreconditionViolation("P needs exactly two spanning vectors")
    g00 = pair(lat, p_basis[0], p_basis[0])
    g01 = pair(lat, p_basis[0], p_basis[1])
    g11 = pair(lat, p_basis[1], p_basis[1])
    if g00.sign() <= 0 or (g00 * g11 - g01 * g01).sign() <= 0:
        raise PreconditionViolation("P must span a positive definite 2-plane")
    if pair(lat, omega, p_basis[0]) or pair(lat, omega, p_basis[1]):
        raise PreconditionViolation("omega must be orthogonal to P")
    if pair(lat, omega, omega).sign() <= 0:
        raise PreconditionViolation("omega^2 must be positive")
    w = MUKAI_W.to_ambient()
    wstar = MUKAI_WSTAR.to_ambient()
    h1 = [embed_gamma(x) - pair(lat, x, B) * w for x in p_basis]
    half = QuadScalar(Fraction(1, 2))
    norm_coeff = half * (pair(lat, omega, omega) - pair(lat, B, B))
    h2 = [
        norm_coeff * w + wstar + embed_gamma(B),
        embed_gamma(omega) - pair(lat, omega, B) * w,
    ]
    return h1, h2


@dataclass(frozen=True)
class InvolutionReport:
    """Outcome of applying the mirror map twice."""

    span_equal: bool
    omega_recovered: bool  # up to a multiple of v
    b_recovered: bool
    omega_v_shift: QuadScalar  # coefficient of v in (omega'' - omega)
    first: MirrorTriple
    second: MirrorTriple

    @property
    def holds(self) -> bool:
        return self.span_equal and self.omega_recovered and self.b_recovered


def mirror_involution_check(
    split: SplitData, Omega: ComplexVector, omega: LatticeVector, B: LatticeVector
) -> InvolutionReport:
    """Apply the mirror map twice and compare with the input.

    The period-plane equality is guaranteed for null input periods
    (Omega^2 = 0); the Kaehler-side data returns exactly in B and up to an
    explicit v-multiple in omega, whose coefficient is reported.
    """
    lat = split.lat
    first = mirror_period(split, Omega, omega, B)
    second = mirror_period(split, first.Omega_check, first.omega_check, first.B_check)
    plane_in = [list(Omega.re.coords), list(Omega.im.coords)]
    plane_out = [list(second.Omega_check.re.coords), list(second.Omega_check.im.coords)]
    span_equal = (
        rank_generic(plane_in) == 2
        and rank_generic(plane_out) == 2
        and rank_generic(plane_in + plane_out) == 2
    )
    b_recovered = second.B_check == B
    delta = second.omega_check - omega
    shift, along_v = _component_along(lat.rank, split.v, delta)
    return InvolutionReport(
        span_equal=span_equal,
        omega_recovered=along_v,
        b_recovered=b_recovered,
        omega_v_shift=shift,
        first=first,
        second=second,
    )


def _component_along(rank: int, v: LatticeVector, delta: LatticeVector):
    """Return (t, True) when delta = t*v, else (0, False)."""
    if not delta:
        return QuadScalar(0), True
    idx = next((i for i in range(rank) if v.coords[i]), None)
    if idx is None:
        return QuadScalar(0), False
    t = delta.coords[idx] / v.coords[idx]
    return t, delta == t * v
