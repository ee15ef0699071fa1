"""Central charges, the stability point exp(B + i omega), and wall certificates.

A Mukai vector is an integral triple (r, D, s) paired by
((r1,D1,s1),(r2,D2,s2)) = D1.D2 - r1 s2 - r2 s1.  For a B-field and a class
omega with omega^2 > 0 the stability point is the complex triple

    Psi = exp(B + i omega) = (1, B + i omega, 1/2 (B + i omega)^2)

and the central charge of v is Z(v) = (Psi, v).  Two nonzero charges lie on a
common generalized wall at Psi when Z(v1)/Z(v2) is a positive real number; a
zero charge has no phase and fails every wall test.

The regular-point search ("is Psi away from every delta-perp with
delta^2 = -2?") is a falsifier, not a proof: it enumerates candidates delta =
(r, D, s) with |r|, |s| bounded and D confined to a coefficient box of the
mirror Neron-Severi basis, and reports the bound with every verdict.  Only
the fibration-supported family D = m f + n sigma0 admits a finite exact
certificate, equivalent to D != 2 p^2.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .attractor import AttractorData, Charge, NotPositive, hyperkahler_rotate
from .exact import QuadComplex, QuadScalar
from .intmat import (
    enumerate_quadric,
    is_negative_definite,
    kernel_basis,
    mat_vec_int,
    solve_integer,
)
from .lattice import (
    GAMMA,
    ComplexVector,
    GramLattice,
    LatticeVector,
    MukaiVector,
    Sublattice,
    pair,
)
from .mirror import MirrorTriple, PreconditionViolation, SplitData, mirror_class, mirror_period


class ExpansionMismatch(RuntimeError):
    """The two central-charge formulas disagreed: an internal bug."""


class RealityViolation(ValueError):
    """A mirror central charge has a nonzero imaginary part."""

    def __init__(self, cls: LatticeVector, value: QuadComplex):
        self.cls = cls
        self.value = value
        super().__init__(f"Z({cls}) = {value} is not real")


class WallFailure(ValueError):
    """A pair of charges fails the generalized wall condition."""


class SearchObstructed(ValueError):
    """The fibration obstruction D = 2 p^2 holds: no Kaehler class can work."""

    def __init__(self, obstruction: "ObstructionCheck"):
        self.obstruction = obstruction
        super().__init__(f"obstructed by {obstruction.delta}")


class SearchExhausted(RuntimeError):
    """All candidate Kaehler classes failed; diagnostics attached."""

    def __init__(self, rejections: list[tuple[int, str]]):
        self.rejections = rejections
        super().__init__(f"no candidate passed after {len(rejections)} tries")


# ---------------------------------------------------------------------------
# Mukai pairing and stability points.


@dataclass(frozen=True)
class StabilityPoint:
    """exp(B + i omega) as an exact complex Mukai triple."""

    B: LatticeVector
    omega: LatticeVector
    lat: GramLattice = GAMMA

    @property
    def d_part(self) -> ComplexVector:
        return ComplexVector(self.B, self.omega)

    @property
    def s_part(self) -> QuadComplex:
        x_sq = pair(self.lat, self.d_part, self.d_part)
        return x_sq * Fraction(1, 2)

    def triple(self) -> tuple[QuadComplex, ComplexVector, QuadComplex]:
        return QuadComplex(1), self.d_part, self.s_part


def exp_point(B: LatticeVector, omega: LatticeVector, lat: GramLattice = GAMMA) -> StabilityPoint:
    if pair(lat, omega, omega).sign() <= 0:
        raise NotPositive("omega^2 must be positive")
    return StabilityPoint(B=B, omega=omega, lat=lat)


def _as_triple(x, lat):
    if isinstance(x, MukaiVector):
        return QuadComplex(x.r), ComplexVector(x.D), QuadComplex(x.s)
    if isinstance(x, StabilityPoint):
        return x.triple()
    if isinstance(x, tuple) and len(x) == 3:
        return x
    raise TypeError(f"not a Mukai triple: {x!r}")


def mukai_pair(x, y, lat: GramLattice = GAMMA):
    """The Mukai pairing, extended bilinearly to complex triples.

    Returns a QuadScalar for two integral vectors, a QuadComplex otherwise.
    """
    if isinstance(x, MukaiVector) and isinstance(y, MukaiVector):
        return pair(lat, x.D, y.D) - QuadScalar(x.r * y.s + y.r * x.s)
    r1, d1, s1 = _as_triple(x, lat)
    r2, d2, s2 = _as_triple(y, lat)
    return pair(lat, d1, d2) - r1 * s2 - r2 * s1


def central_charge(psi: StabilityPoint, v: MukaiVector) -> QuadComplex:
    """Z(v) = (exp(B + i omega), v), cross-checked against the expanded forms."""
    value = mukai_pair(psi, v, psi.lat)
    lat, B, omega = psi.lat, psi.B, psi.omega
    d_min_rb = v.D - v.r * B
    im = pair(lat, d_min_rb, omega)
    if v.r == 0:
        re = pair(lat, v.D, B) - QuadScalar(v.s)
    else:
        d2 = pair(lat, v.D, v.D)
        w2 = pair(lat, omega, omega)
        re = (
            d2
            - QuadScalar(2 * v.r * v.s)
            + QuadScalar(v.r * v.r) * w2
            - pair(lat, d_min_rb, d_min_rb)
        ) * Fraction(1, 2 * v.r)
    if value != QuadComplex(re, im):
        raise ExpansionMismatch(f"{value} vs {QuadComplex(re, im)} for v={v}")
    return value


def is_positive_plane(psi: StabilityPoint) -> bool:
    """Exact positive-definiteness of the (Re Psi, Im Psi) Gram matrix."""
    lat = psi.lat
    s = psi.s_part
    re_t = (QuadComplex(1), ComplexVector(psi.B), QuadComplex(s.re))
    im_t = (QuadComplex(0), ComplexVector(psi.omega), QuadComplex(s.im))
    g11 = mukai_pair(re_t, re_t, lat).re
    g12 = mukai_pair(re_t, im_t, lat).re
    g22 = mukai_pair(im_t, im_t, lat).re
    return g11.sign() > 0 and (g11 * g22 - g12 * g12).sign() > 0


def plane_gram(psi: StabilityPoint) -> list[list[QuadScalar]]:
    lat = psi.lat
    s = psi.s_part
    re_t = (QuadComplex(1), ComplexVector(psi.B), QuadComplex(s.re))
    im_t = (QuadComplex(0), ComplexVector(psi.omega), QuadComplex(s.im))
    g11 = mukai_pair(re_t, re_t, lat).re
    g12 = mukai_pair(re_t, im_t, lat).re
    g22 = mukai_pair(im_t, im_t, lat).re
    return [[g11, g12], [g12, g22]]


def ns_of_mirror(omega_check: ComplexVector, lat: GramLattice = GAMMA) -> Sublattice:
    """Integral classes orthogonal to both Re and Im of the mirror period."""
    rows: list[list[int]] = []
    for vec in (omega_check.re, omega_check.im):
        coeffs = [pair(lat, vec, lat.basis(i)) for i in range(lat.rank)]
        split_rows = _integer_rows(coeffs, QuadScalar(0))
        assert split_rows is not None
        rows.extend(r for r, _ in split_rows)
    if not rows:
        return Sublattice(lat, [lat.basis(i) for i in range(lat.rank)])
    return Sublattice(lat, [lat.vector(v) for v in kernel_basis(rows, lat.rank)])


# ---------------------------------------------------------------------------
# Bounded search for (-2)-classes annihilating Psi.


def _integer_rows(coeffs: Sequence[QuadScalar], rhs: QuadScalar):
    """Split a Q(sqrt m)-linear condition into integer rows (row, rhs).

    Returns None when the condition is unsatisfiable (a zero functional with a
    nonzero target on one of the two rational components).
    """
    out = []
    for part in ("a", "b"):
        cs = [getattr(c, part) for c in coeffs]
        target = getattr(rhs, part)
        if not any(cs):
            if target:
                return None
            continue
        denom = 1
        for x in cs + [target]:
            denom = denom * x.denominator // _gcd(denom, x.denominator)
        out.append(
            (
                [int(x * denom) for x in cs],
                int(target * denom),
            )
        )
    return out


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def p0_violations(psi: StabilityPoint, ns: Sublattice, bound: int) -> list[MukaiVector]:
    """All delta = (r, D, s) with delta^2 = -2, |r|,|s| <= bound, D in the
    coefficient box of the ns basis, and (Psi, delta) = 0 exactly.

    Ordered by (r, s, coefficient tuple).  Exactness: the annihilation
    condition splits into rational linear constraints on the coefficients;
    the remaining quadratic equation is enumerated on the constraint kernel
    (negative definite in all geometric cases, with a pruned box scan as the
    general fallback) and every reported hit is re-verified against the exact
    Mukai pairing.
    """
    lat = ns.ambient
    k = ns.rank
    gram = ns.gram()
    cw = [pair(lat, psi.omega, b) for b in ns.basis]
    cb = [pair(lat, psi.B, b) for b in ns.basis]
    b_dot_w = pair(lat, psi.B, psi.omega)
    b_sq = pair(lat, psi.B, psi.B)
    w_sq = pair(lat, psi.omega, psi.omega)
    # The left-hand rows are independent of (r, s); only the targets move.
    functionals = _functional_rows([cw, cb])
    solver = _KernelQuadricSolver(gram, [row for row, _ in functionals if row is not None], k)
    found: list[tuple[int, int, tuple[int, ...]]] = []
    for r in range(-bound, bound + 1):
        for s in range(-bound, bound + 1):
            target = 2 * r * s - 2
            rhs_values = _functional_rhs(
                functionals,
                [r * b_dot_w, QuadScalar(Fraction(r, 2)) * (b_sq - w_sq) + s],
            )
            if rhs_values is None:
                continue
            for coeffs in solver.solve(rhs_values, target, bound):
                found.append((r, s, coeffs))
    found.sort()
    out = []
    for r, s, coeffs in found:
        delta = MukaiVector(r, ns.from_coefficients(coeffs), s)
        value = mukai_pair(psi, delta, lat)
        assert not value, f"false positive {delta}: pairing {value}"
        assert mukai_pair(delta, delta, lat) == -2
        out.append(delta)
    return out


def _functional_rows(functionals: Sequence[Sequence[QuadScalar]]):
    """Clear denominators of the rational and radical parts of each functional.

    Returns a list of (row_or_None, (functional_index, part, denominator))
    with one entry per component; a None row marks an identically-zero
    functional component whose target must vanish.
    """
    out = []
    for idx, coeffs in enumerate(functionals):
        for part in ("a", "b"):
            cs = [getattr(c, part) for c in coeffs]
            if not any(cs):
                out.append((None, (idx, part, 1)))
                continue
            denom = 1
            for x in cs:
                denom = denom * x.denominator // _gcd(denom, x.denominator)
            out.append((([int(x * denom) for x in cs]), (idx, part, denom)))
    return out


def _functional_rhs(functionals, targets: Sequence[QuadScalar]):
    """Scaled integer targets for the active rows; None when unsatisfiable."""
    rhs = []
    for row, (idx, part, denom) in functionals:
        value = getattr(targets[idx], part) * denom
        if row is None:
            if value:
                return None
            continue
        if value.denominator != 1:
            return None
        rhs.append(value.numerator)
    return rhs


class _KernelQuadricSolver:
    """Solve {A x = rhs, x^T G x = target, |x_i| <= bound} for varying rhs.

    The kernel of A and its Gram matrix are fixed, so the negative-definite
    fast path sets up its data once.
    """

    def __init__(self, gram, rows, k):
        self.gram = gram
        self.rows = rows
        self.k = k
        if rows:
            self.kern = kernel_basis(rows, k)
        else:
            self.kern = [[1 if i == j else 0 for j in range(k)] for i in range(k)]
        if self.kern:
            self.gk = [
                [
                    sum(u[i] * gram[i][j] * w[j] for i in range(k) for j in range(k))
                    for w in self.kern
                ]
                for u in self.kern
            ]
            self.definite = is_negative_definite(self.gk)
        else:
            self.gk = []
            self.definite = True

    def solve(self, rhs, target, bound):
        k = self.k
        if k == 0:
            return [()] if target == 0 and not any(rhs) else []
        if self.rows:
            x0 = solve_integer(self.rows, rhs)
            if x0 is None:
                return []
        else:
            x0 = [0] * k
        if not self.kern:
            if all(abs(c) <= bound for c in x0):
                value = sum(
                    x0[i] * self.gram[i][j] * x0[j] for i in range(k) for j in range(k)
                )
                if value == target:
                    return [tuple(x0)]
            return []
        if self.definite:
            return _enumerate_coset(self.gram, self.gk, self.kern, x0, target, bound, k)
        return _box_scan(self.gram, self.rows, rhs, target, bound, k)


def p0_falsifier(psi: StabilityPoint, ns: Sublattice, bound: int) -> Optional[MukaiVector]:
    """First annihilating (-2)-class within the bound, or None.

    Absence is evidence up to the stated bound, never a proof.
    """
    hits = p0_violations(psi, ns, bound)
    return hits[0] if hits else None


def _enumerate_coset(gram, gk, kern, x0, target, bound, k):
    m = len(kern)
    gx0 = mat_vec_int(gram, x0)
    lin = [sum(v[i] * gx0[i] for i in range(k)) for v in kern]  # K^T G x0
    c0 = sum(x0[i] * gx0[i] for i in range(k))
    p = [[Fraction(-gk[i][j]) for j in range(m)] for i in range(m)]
    # solve P w = -? : Q(y) = y gk y + 2 lin.y + c0 = target
    #   <=> (y - w)^T P (y - w) = w.P.w + c0 - target with P w = lin
    w = _solve_rational(p, [Fraction(x) for x in lin])
    radius = sum(wi * li for wi, li in zip(w, lin)) + c0 - target
    out = []
    for y in enumerate_quadric(p, w, radius):
        x = list(x0)
        for coeff, v in zip(y, kern):
            if coeff:
                for i in range(k):
                    x[i] += coeff * v[i]
        if all(abs(c) <= bound for c in x):
            out.append(tuple(x))
    return sorted(out)


def _solve_rational(a, b):
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(i for i in range(col, n) if m[i][col])
        m[col], m[piv] = m[piv], m[col]
        inv = m[col][col]
        m[col] = [x / inv for x in m[col]]
        for i in range(n):
            if i != col and m[i][col]:
                f = m[i][col]
                m[i] = [x - f * y for x, y in zip(m[i], m[col])]
    return [m[i][n] for i in range(n)]


def _box_scan(gram, rows, rhs, target, bound, k):
    """Pruned DFS over the full coefficient box; indefinite-kernel fallback."""
    abs_suffix = [0] * (k + 1)
    for d in range(k - 1, -1, -1):
        abs_suffix[d] = abs_suffix[d + 1] + abs(gram[d][d])
        for j in range(d + 1, k):
            abs_suffix[d] += 2 * abs(gram[d][j])
    out = []
    coeffs = [0] * k
    lin = [0] * k
    partial_rows = [0] * len(rows)

    def descend(d: int, value: int):
        if d == k:
            if value == target and all(pr == rr for pr, rr in zip(partial_rows, rhs)):
                out.append(tuple(coeffs))
            return
        lin_span = 2 * bound * sum(abs(lin[j]) for j in range(d, k))
        quad_mag = bound * bound * abs_suffix[d]
        if not (value - lin_span - quad_mag <= target <= value + lin_span + quad_mag):
            return
        for idx, row in enumerate(rows):
            slack = bound * sum(abs(row[j]) for j in range(d, k))
            if not (partial_rows[idx] - slack <= rhs[idx] <= partial_rows[idx] + slack):
                return
        grow = gram[d]
        for t in range(-bound, bound + 1):
            coeffs[d] = t
            new_value = value + 2 * t * lin[d] + t * t * grow[d]
            if t:
                for j in range(k):
                    lin[j] += t * grow[j]
                for idx, row in enumerate(rows):
                    partial_rows[idx] += t * row[d]
            descend(d + 1, new_value)
            if t:
                for j in range(k):
                    lin[j] -= t * grow[j]
                for idx, row in enumerate(rows):
                    partial_rows[idx] -= t * row[d]
        coeffs[d] = 0

    descend(0, 0)
    return out


# ---------------------------------------------------------------------------
# The finite certificate for classes supported on the fibration summand.


@dataclass(frozen=True)
class ObstructionCheck:
    """Exact case analysis of (-2)-classes D = m f + n sigma0 killing Psi.

    Annihilation forces n (m - n) = -1, so (m, n) is (0, 1) or (0, -1), and
    then m - n + (D_pq / 2 p^2) n = 0, which is exactly D_pq = 2 p^2.
    """

    obstructed: bool
    delta: Optional[MukaiVector]
    solutions: tuple[tuple[int, int], ...]
    residuals: tuple[Fraction, ...]
    disc: int
    p2: int


def fibration_obstruction(charge: Charge, split: SplitData) -> ObstructionCheck:
    lat = charge.lat
    for cls in (split.f, split.sigma0):
        if pair(lat, cls, charge.p) or pair(lat, cls, charge.q):
            raise PreconditionViolation("fibration classes must be orthogonal to the charge")
    solutions = ((0, 1), (0, -1))
    ratio = Fraction(charge.disc, 2 * charge.p2)
    residuals = tuple(Fraction(m - n) + ratio * n for m, n in solutions)
    obstructed = any(r == 0 for r in residuals)
    delta = None
    if obstructed:
        m, n = next(mn for mn, r in zip(solutions, residuals) if r == 0)
        delta = MukaiVector(0, m * split.f + n * split.sigma0, 0)
    return ObstructionCheck(
        obstructed=obstructed,
        delta=delta,
        solutions=solutions,
        residuals=residuals,
        disc=charge.disc,
        p2=charge.p2,
    )


# ---------------------------------------------------------------------------
# Walls.


@dataclass(frozen=True)
class WallReport:
    i: int
    j: int
    member: bool
    z_i: QuadComplex
    z_j: QuadComplex


def wall_member(psi: StabilityPoint, v1: MukaiVector, v2: MukaiVector) -> WallReport:
    """Generalized wall membership: Z(v1)/Z(v2) in R_{>0}, decided exactly.

    Zero central charges have no phase and fail membership.
    """
    z1 = central_charge(psi, v1)
    z2 = central_charge(psi, v2)
    member = False
    if z1 and z2:
        cross = z1.re * z2.im - z1.im * z2.re
        dot = z1.re * z2.re + z1.im * z2.im
        member = not cross and dot.sign() > 0
    return WallReport(i=0, j=1, member=member, z_i=z1, z_j=z2)


# ---------------------------------------------------------------------------
# Theorem-level verifiers.


def verify_reality(
    split: SplitData, psi: StabilityPoint, classes: Sequence[LatticeVector]
) -> list[tuple[LatticeVector, QuadScalar]]:
    """Check that every Z(mu(l)) is exactly real; return the real values."""
    out = []
    for cls in classes:
        z = central_charge(psi, mirror_class(split, cls))
        if z.im:
            raise RealityViolation(cls, z)
        out.append((cls, z.re))
    return out


@dataclass
class SearchParams:
    """Candidate schedule for the Kaehler-class search.

    Candidates are omega = beta * omega0 + sum(alpha_k n_k) + c_sigma * sigma0
    + c_eta * eta, with the two perturbation scalars shrunk geometrically
    (factor 1/2 per step) along the schedule and eta regenerated (seeded,
    deterministic) every `shrinks` steps when no explicit direction is given.
    """

    omega0: LatticeVector
    eta: Optional[LatticeVector] = None
    c_sigma: Union[Fraction, QuadScalar] = Fraction(0)
    c_eta: Union[Fraction, QuadScalar] = Fraction(1, 10)
    alphas: tuple = ()
    beta: Fraction = Fraction(1)
    bound: int = 3
    max_iter: int = 24
    shrinks: int = 6


@dataclass
class SearchResult:
    omega_J: LatticeVector
    candidate_index: int
    candidates_tried: int
    bound: int
    eta: Optional[LatticeVector]
    psi: StabilityPoint
    triple: MirrorTriple
    data: AttractorData
    charges: list[tuple[LatticeVector, QuadScalar]]
    rejections: list[tuple[int, str]] = field(default_factory=list)


def _generated_eta(
    basis: Sequence[LatticeVector], seed: int, rank: int, gram=None
) -> LatticeVector:
    """Deterministic perturbation directions inside a negative definite lattice.

    Seed 0 picks the integral vector dual to the basis (eta . b_i constant and
    nonzero for every i), which in root-lattice blocks pairs with each root by
    a multiple of its height and so avoids every root hyperplane.  Later seeds
    fall back to pseudorandom small weights.
    """
    if seed == 0 and gram is not None:
        try:
            coeffs = _solve_rational(
                [[Fraction(x) for x in row] for row in gram],
                [Fraction(-1)] * len(gram),
            )
            denom = 1
            for c in coeffs:
                denom = denom * c.denominator // _gcd(denom, c.denominator)
            eta = LatticeVector.zero(rank)
            for c, b in zip(coeffs, basis):
                eta = eta + int(c * denom) * b
            if eta:
                return eta
        except StopIteration:  # singular gram: fall through to random weights
            pass
    rng = random.Random(seed)
    eta = LatticeVector.zero(rank)
    for b in basis:
        eta = eta + rng.randint(1, 9) * b
    return eta


def search_kahler_class(
    charge: Charge,
    split: SplitData,
    tau: QuadComplex,
    pic_basis: Sequence[LatticeVector],
    params: SearchParams,
    eta_basis: Optional[Sequence[LatticeVector]] = None,
) -> SearchResult:
    """Find omega_J making exp(mirror B + i mirror omega) a regular point.

    Fails fast with SearchObstructed when D = 2 p^2 (no candidate can work);
    otherwise walks the deterministic schedule and returns the first candidate
    that passes the positivity proxy, has all twenty mirror charges real with
    nonzero real part, and survives the bounded (-2)-class falsifier.
    """
    lat = charge.lat
    obstruction = fibration_obstruction(charge, split)
    if obstruction.obstructed:
        raise SearchObstructed(obstruction)
    if eta_basis is None:
        from .lattice import orth_complement

        eta_basis = orth_complement(
            lat, [charge.p, charge.q, split.f, split.sigma0]
        ).basis
    eta_gram = [
        [pair(lat, x, y).as_int() for y in eta_basis] for x in eta_basis
    ]
    alphas = tuple(params.alphas) + (Fraction(0),) * (len(pic_basis) - len(params.alphas))
    base = params.beta * params.omega0
    for alpha, cls in zip(alphas, pic_basis):
        if alpha:
            base = base + alpha * cls
    zero_b = LatticeVector.zero(lat.rank)
    rejections: list[tuple[int, str]] = []
    for idx in range(params.max_iter):
        seed = idx // params.shrinks
        shrink = Fraction(1, 2 ** (idx % params.shrinks))
        eta = (
            params.eta
            if params.eta is not None
            else _generated_eta(eta_basis, seed, lat.rank, eta_gram)
        )
        omega = base
        if params.c_sigma:
            omega = omega + (params.c_sigma * shrink) * split.sigma0
        if params.c_eta:
            omega = omega + (params.c_eta * shrink) * eta
        reason = _check_candidate(charge, split, tau, pic_basis, params.bound, omega, params.omega0)
        if isinstance(reason, str):
            rejections.append((idx, reason))
            continue
        data, triple, psi, charges = reason
        return SearchResult(
            omega_J=omega,
            candidate_index=idx,
            candidates_tried=idx + 1,
            bound=params.bound,
            eta=eta if params.c_eta else None,
            psi=psi,
            triple=triple,
            data=data,
            charges=charges,
            rejections=rejections,
        )
    raise SearchExhausted(rejections)


def _check_candidate(charge, split, tau, pic_basis, bound, omega, omega_ref):
    lat = charge.lat
    if pair(lat, omega, charge.p) or pair(lat, omega, charge.q):
        return "candidate not orthogonal to the charge"
    if pair(lat, omega, omega).sign() <= 0:
        return "candidate has nonpositive square"
    if pair(lat, omega, split.f).sign() <= 0:
        return "candidate does not pair positively with the fiber class"
    if pair(lat, omega, omega_ref).sign() <= 0:
        return "candidate leaves the reference cone"
    data = hyperkahler_rotate(charge, tau, omega)
    triple = mirror_period(split, data.Omega_I, data.omega_I, LatticeVector.zero(lat.rank))
    psi = exp_point(triple.B_check, triple.omega_check, lat)
    if not is_positive_plane(psi):
        return "stability point plane is not positive definite"
    charges = []
    for cls in pic_basis:
        z = central_charge(psi, mirror_class(split, cls))
        if z.im:
            raise RealityViolation(cls, z)
        if not z.re:
            return f"zero real charge for class {cls}"
        charges.append((cls, z.re))
    ns = ns_of_mirror(triple.Omega_check, lat)
    hit = p0_falsifier(psi, ns, bound)
    if hit is not None:
        return f"annihilating class within bound: {hit}"
    return data, triple, psi, charges


@dataclass
class WallIntersectionResult:
    flips: list[bool]
    reports: list[WallReport]
    charges: list[QuadScalar]

    @property
    def all_member(self) -> bool:
        return all(r.member for r in self.reports)


def wall_intersection(
    split: SplitData, psi: StabilityPoint, classes: Sequence[LatticeVector]
) -> WallIntersectionResult:
    """Sign-normalize the classes and certify every pairwise generalized wall.

    After flipping l -> -l wherever Z(mu(l)) < 0, all charges are positive
    reals, so all pairs must be members; a failure raises WallFailure.
    """
    values = verify_reality(split, psi, classes)
    flips = []
    vectors = []
    charges = []
    for cls, z in values:
        if not z:
            raise WallFailure(f"zero charge for {cls}: no phase to align")
        flip = z.sign() < 0
        flips.append(flip)
        vectors.append(mirror_class(split, -cls if flip else cls))
        charges.append(-z if flip else z)
    reports = []
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            rep = wall_member(psi, vectors[i], vectors[j])
            rep = WallReport(i=i, j=j, member=rep.member, z_i=rep.z_i, z_j=rep.z_j)
            if not rep.member:
                raise WallFailure(f"pair ({i},{j}) is not on a common wall")
            reports.append(rep)
    return WallIntersectionResult(flips=flips, reports=reports, charges=charges)
