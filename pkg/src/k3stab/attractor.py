"""Attractor data for a charge (p, q) on K3 x T^2.

For p, q in the K3 lattice with D = p^2 q^2 - (p.q)^2 > 0 the attractor
equation fixes the torus modulus tau = (p.q + i*sqrt(D)) / p^2 and the K3
period Omega = q - conj(tau) p.  Everything here is exact: sqrt(D) lives in
Q(sqrt(m)) for the square-free part m of D.

The hyperkaehler rotation bookkeeping follows the standard triple (I, J, K):
the given complex structure is J, rotation to I turns holomorphic cycles into
special Lagrangians, and

    omega_I     = Im(tau) p          (the Kaehler class of I, up to scale)
    Im(Omega_I) = q - Re(tau) p
    Re(Omega_I) = omega_J            (the chosen Kaehler representative of J)

The normalization omega_J^2 = D / p^2 that would make Omega_I a genuine null
period is recorded (``is_normalized``) but never enforced: the downstream
reality and wall statements are invariant under positive rescaling of omega_J,
and the perturbation searches need the scale free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .exact import QuadComplex, QuadScalar
from .lattice import (
    GAMMA,
    ComplexVector,
    GramLattice,
    LatticeVector,
    Sublattice,
    orth_complement,
    pair,
)


class DegenerateCharge(ValueError):
    """p^2 = 0 or D <= 0: the attractor equation has no solution."""


class NotAttractor(ValueError):
    """The supplied (tau, Omega) do not decompose the charge."""


class NotOrthogonal(ValueError):
    """omega_J fails to annihilate the charge pair."""


class NotPositive(ValueError):
    """A class required to have positive square does not."""


@dataclass(frozen=True)
class Charge:
    """An integral pair (p, q) in the K3 lattice."""

    p: LatticeVector
    q: LatticeVector
    lat: GramLattice = GAMMA

    def __post_init__(self):
        if not (self.p.is_integral and self.q.is_integral):
            raise ValueError("charge vectors must be integral")

    @cached_property
    def p2(self) -> int:
        return pair(self.lat, self.p, self.p).as_int()

    @cached_property
    def q2(self) -> int:
        return pair(self.lat, self.q, self.q).as_int()

    @cached_property
    def pq(self) -> int:
        return pair(self.lat, self.p, self.q).as_int()

    @cached_property
    def disc(self) -> int:
        """D = p^2 q^2 - (p.q)^2."""
        return self.p2 * self.q2 - self.pq * self.pq


def solve_attractor(charge: Charge) -> tuple[QuadComplex, ComplexVector]:
    """Exact attractor solution (tau, Omega) with Omega = q - conj(tau) p."""
    if charge.p2 == 0 or charge.disc <= 0:
        raise DegenerateCharge(f"p^2={charge.p2}, D={charge.disc}")
    re = QuadScalar(Fraction(charge.pq, charge.p2))
    im = QuadScalar.sqrt(charge.disc) * Fraction(1, charge.p2)
    tau = QuadComplex(re, im)
    omega = ComplexVector(charge.q - re * charge.p, im * charge.p)
    return tau, omega


def verify_attractor(charge: Charge, tau: QuadComplex, omega: ComplexVector) -> QuadComplex:
    """Solve the decomposition p dx + q dy = lambda * (dx + tau dy) ^ Omega + c.c.

    Equating dx and dy components gives an overdetermined linear system for
    lambda; the unique solution is returned when the system is consistent and
    Omega is a genuine period (Omega^2 = 0, Omega.conj(Omega) > 0).  Any
    perturbation of the attractor solution makes some equation fail.
    """
    lat = charge.lat
    disc = charge.disc
    if disc == 0:
        raise NotAttractor("p and q are not independent")
    if pair(lat, omega, omega):
        raise NotAttractor("Omega^2 is nonzero: not a period vector")
    norm = pair(lat, omega, omega.conj())
    if norm.im or norm.re.sign() <= 0:
        raise NotAttractor("Omega . conj(Omega) is not positive")
    # coefficients of Omega in the (p, q) plane
    op = pair(lat, omega, ComplexVector(charge.p))
    oq = pair(lat, omega, ComplexVector(charge.q))
    d = Fraction(1, disc)
    coeff_p = (op * charge.q2 - oq * charge.pq) * d
    coeff_q = (oq * charge.p2 - op * charge.pq) * d
    # dx components: lambda*A + mu*conj(A) = 1 (p part), lambda*B + mu*conj(B) = 0 (q part)
    det = coeff_p * coeff_q.conj() - coeff_p.conj() * coeff_q
    if not det:
        raise NotAttractor("decomposition system is singular")
    lam = coeff_q.conj() / det
    mu = -coeff_q / det
    if mu != lam.conj():
        raise NotAttractor("decomposition requires a non-conjugate pair")
    lam_bar = lam.conj()
    dx = omega.scale(lam) + omega.conj().scale(lam_bar)
    if dx != ComplexVector(charge.p):
        raise NotAttractor("dx component mismatch")
    dy = omega.scale(lam * tau) + omega.conj().scale(lam_bar * tau.conj())
    if dy != ComplexVector(charge.q):
        raise NotAttractor("dy component mismatch")
    return lam


@dataclass(frozen=True)
class AttractorData:
    """A charge together with its solved modulus and rotation bookkeeping."""

    charge: Charge
    tau: QuadComplex
    omega_J: LatticeVector
    Omega_J: ComplexVector
    omega_I: LatticeVector
    im_omega_I: LatticeVector
    is_normalized: bool
    m: int  # square-free radicand of the scenario field (0 when rational)

    @property
    def Omega_I(self) -> ComplexVector:
        """omega_J + i (q - Re(tau) p)."""
        return ComplexVector(self.omega_J, self.im_omega_I)


def hyperkahler_rotate(charge: Charge, tau: QuadComplex, omega_J: LatticeVector) -> AttractorData:
    """Rotate the solved background to the complex structure I.

    omega_J must annihilate p and q and have positive square; whether it also
    satisfies the unit normalization omega_J^2 = D / p^2 is recorded, not
    required.
    """
    lat = charge.lat
    if pair(lat, omega_J, charge.p) or pair(lat, omega_J, charge.q):
        raise NotOrthogonal("omega_J must pair to zero with p and q")
    w2 = pair(lat, omega_J, omega_J)
    if w2.sign() <= 0:
        raise NotPositive("omega_J^2 must be positive")
    omega_I = tau.im * charge.p
    im_omega_I = charge.q - tau.re * charge.p
    omega_big_j = ComplexVector(im_omega_I, omega_I)
    # period sanity for the J structure
    if pair(lat, omega_big_j, omega_big_j):
        raise NotAttractor("Omega_J is not null")
    normalized = w2 == pair(lat, omega_I, omega_I)
    return AttractorData(
        charge=charge,
        tau=tau,
        omega_J=omega_J,
        Omega_J=omega_big_j,
        omega_I=omega_I,
        im_omega_I=im_omega_I,
        is_normalized=normalized,
        m=tau.im.m,
    )


def ns_lattice(charge: Charge) -> Sublattice:
    """Neron-Severi lattice of the background: the complement of <p, q>."""
    sub = orth_complement(charge.lat, [charge.p, charge.q])
    if sub.rank != charge.lat.rank - 2:
        raise DegenerateCharge("charge pair does not span a rank-2 sublattice")
    return sub


def z_k3(lat: GramLattice, omega_J: LatticeVector, cls: LatticeVector) -> QuadScalar:
    """K3 central charge of a class: omega_J . cls."""
    return pair(lat, omega_J, cls)


def threefold_central_charge(
    data: AttractorData, p_prime: LatticeVector, q_prime: LatticeVector
) -> QuadComplex:
    """Central charge of p' dx + q' dy against Omega_I ^ (dx + tau dy).

    With the unit torus normalization the pairing collapses to
    Omega_I . (q' - tau p').
    """
    lat = data.charge.lat
    combo = ComplexVector(q_prime) - ComplexVector(p_prime).scale(data.tau)
    return pair(lat, data.Omega_I, combo)
