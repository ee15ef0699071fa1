import random
from fractions import Fraction

import pytest

from k3stab.attractor import hyperkahler_rotate
from k3stab.exact import QuadComplex, QuadScalar
from k3stab.lattice import (
    GAMMA,
    MUKAI,
    ComplexVector,
    LatticeVector,
    gram_of,
    pair,
)
from k3stab.mirror import (
    BadFibrationClasses,
    NormalizationFailure,
    PreconditionViolation,
    canonicalize_period,
    make_split,
    mirror_class,
    mirror_involution_check,
    mirror_period,
    period_embed,
    tube_map,
)

F = GAMMA.basis(0)
E2 = GAMMA.basis(1)
SIGMA0 = E2 - F
ZERO = LatticeVector.zero(22)


@pytest.fixture(scope="module")
def split():
    return make_split(F, SIGMA0)


def test_make_split(split):
    assert split.gamma_prime.rank == 20
    assert pair(GAMMA, split.vstar, split.vstar) == 0
    assert pair(GAMMA, split.v, split.vstar) == 1


def test_make_split_rejects_bad_classes():
    with pytest.raises(BadFibrationClasses):
        make_split(F, E2)  # sigma0^2 = 0 != -2


def mirror_b0_oracle(split, tau, charge, omega_J):
    """Independent evaluation of the B = 0 mirror formulas from raw scalars."""
    lat = split.lat
    scale = pair(lat, omega_J, split.f).inverse()
    omega_check = scale * (charge.q - tau.re * charge.p)
    b_check = scale * split.project(omega_J)
    f_coeff = tau.im * tau.im * charge.p2 * Fraction(1, 2) + 1
    omega_big = ComplexVector(
        scale * (f_coeff * split.f + split.sigma0), (scale * tau.im) * charge.p
    )
    return omega_big, omega_check, b_check


def test_mirror_diag_2_8(split, sc28):
    triple = sc28.triple
    assert triple.Omega_check == ComplexVector(5 * F + SIGMA0, 2 * sc28.charge.p)
    assert triple.omega_check == sc28.charge.q
    assert not triple.B_check


def test_mirror_diag_2_2(split, sc22):
    triple = sc22.triple
    assert triple.Omega_check == ComplexVector(2 * F + SIGMA0, sc22.charge.p)
    assert triple.omega_check == sc22.charge.q
    assert not triple.B_check


def test_general_formula_matches_b0_specialization(split, sc28):
    eta = sc28.eta_basis[0] + 2 * sc28.eta_basis[5]
    for omega_J in [2 * F + SIGMA0, 6 * F + 3 * SIGMA0 + eta, 9 * F + 2 * SIGMA0 + eta]:
        if pair(GAMMA, omega_J, omega_J).sign() <= 0:
            continue
        data = hyperkahler_rotate(sc28.charge, sc28.tau, omega_J)
        triple = mirror_period(split, data.Omega_I, data.omega_I, ZERO)
        omega_big, omega_check, b_check = mirror_b0_oracle(split, sc28.tau, sc28.charge, omega_J)
        assert triple.Omega_check == omega_big
        assert triple.omega_check == omega_check
        assert triple.B_check == b_check


def test_b_zero_with_projected_omega_gives_zero_b(split, sc28):
    triple = mirror_period(split, sc28.data.Omega_I, sc28.data.omega_I, ZERO)
    assert not triple.B_check  # pr(2f + sigma0) = 0


def test_mirror_preconditions(split, sc28):
    # Re(Omega).v = 0
    bad = ComplexVector(sc28.charge.q, sc28.charge.p)
    with pytest.raises(NormalizationFailure):
        mirror_period(split, bad, sc28.charge.p, ZERO)
    # omega with a v* component
    with pytest.raises(PreconditionViolation):
        mirror_period(split, sc28.data.Omega_I, sc28.charge.p + E2, ZERO)
    # nonpositive omega^2
    with pytest.raises(PreconditionViolation):
        mirror_period(split, sc28.data.Omega_I, GAMMA.basis(6), ZERO)
    # Im(Omega) not orthogonal to v
    skew = ComplexVector(sc28.data.omega_J, E2)
    with pytest.raises(PreconditionViolation):
        mirror_period(split, skew, sc28.data.omega_I, ZERO)


def test_mirror_class_anchors(split):
    w = mirror_class(split, F)
    assert (w.r, w.s) == (0, -1) and not w.D
    ws = mirror_class(split, SIGMA0)
    assert (ws.r, ws.s) == (1, 1) and not ws.D
    for cls in [GAMMA.basis(6), GAMMA.basis(2) + GAMMA.basis(3)]:
        mc = mirror_class(split, cls)
        assert (mc.r, mc.s) == (0, 0) and mc.D == cls


def test_mirror_class_preserves_pairing(split):
    count = 0
    for i in range(22):
        for j in range(22):
            x, y = GAMMA.basis(i), GAMMA.basis(j)
            image = pair(
                MUKAI,
                mirror_class(split, x).to_ambient(),
                mirror_class(split, y).to_ambient(),
            )
            assert image == pair(GAMMA, x, y)
            count += 1
    assert count == 484


def test_tube_map(split, sc28):
    q = sc28.charge.q
    assert tube_map(split, ComplexVector(ZERO)) == ComplexVector(split.vstar)
    image = tube_map(split, ComplexVector(ZERO, q))
    assert image == ComplexVector(4 * split.v + split.vstar, q)
    rng = random.Random(11)
    for _ in range(10):
        coeffs = [rng.randint(-3, 3) for _ in range(4)]
        z = ComplexVector(
            coeffs[0] * sc28.charge.p + coeffs[1] * GAMMA.basis(6),
            coeffs[2] * q + coeffs[3] * GAMMA.basis(14),
        )
        assert pair(GAMMA, tube_map(split, z), ComplexVector(split.v)) == QuadComplex(1)
    with pytest.raises(PreconditionViolation):
        tube_map(split, ComplexVector(E2))


def test_period_embed_diag_2_8(split, sc28):
    p, q = sc28.charge.p, sc28.charge.q
    h1, h2 = period_embed(split, [5 * F + SIGMA0, 2 * p], q, ZERO)
    gram = gram_of(MUKAI, h1 + h2)
    expected = [[QuadScalar(8 if i == j else 0) for j in range(4)] for i in range(4)]
    assert gram == expected


def test_period_embed_b_zero_keeps_p_basis(split, sc28):
    p = sc28.charge.p
    h1, _ = period_embed(split, [5 * F + SIGMA0, 2 * p], sc28.charge.q, ZERO)
    assert [v.int_coords()[:22] for v in h1] == [
        (5 * F + SIGMA0).int_coords(),
        (2 * p).int_coords(),
    ]
    assert all(v.int_coords()[22:] == [0, 0] for v in h1)


def test_period_embed_orthogonality_with_b_field(split, sc28):
    p, q = sc28.charge.p, sc28.charge.q
    b = GAMMA.basis(6) + 2 * q
    omega = q + GAMMA.basis(6)  # orthogonal to P, positive square 6
    h1, h2 = period_embed(split, [5 * F + SIGMA0, 2 * p], omega, b)
    for x in h1:
        for y in h2:
            assert pair(MUKAI, x, y) == 0


def test_period_embed_preconditions(split, sc28):
    p, q = sc28.charge.p, sc28.charge.q
    with pytest.raises(PreconditionViolation):
        period_embed(split, [F, SIGMA0], q, ZERO)  # not positive definite
    with pytest.raises(PreconditionViolation):
        period_embed(split, [5 * F + SIGMA0, 2 * p], p, ZERO)  # omega not orthogonal


def test_canonicalize_period(split, sc28):
    scaled = sc28.triple.Omega_check.scale(QuadComplex(3, 2))
    canonical = canonicalize_period(split, scaled)
    assert pair(GAMMA, canonical, ComplexVector(split.v)) == QuadComplex(1)


def test_involution_diag_2_8(split, sc28):
    # norm-matched null representative of the rotated period plane
    omega = ComplexVector(2 * F + SIGMA0, Fraction(1, 2) * sc28.charge.q)
    assert pair(GAMMA, omega, omega) == QuadComplex(0)
    report = mirror_involution_check(split, omega, sc28.data.omega_I, ZERO)
    assert report.holds and report.span_equal
    assert report.second.Omega_check == omega
    assert report.omega_v_shift == QuadScalar(0)


def test_involution_diag_2_2(split, sc22):
    omega = ComplexVector(2 * F + SIGMA0, sc22.charge.q)
    assert pair(GAMMA, omega, omega) == QuadComplex(0)
    report = mirror_involution_check(split, omega, sc22.data.omega_I, ZERO)
    assert report.holds


def test_involution_on_random_tube_periods(split, sc28):
    rng = random.Random(5)
    p, q = sc28.charge.p, sc28.charge.q
    produced = 0
    while produced < 10:
        a, b = rng.randint(-3, 3), rng.randint(-3, 3)
        c, d = rng.randint(-2, 2), rng.randint(-2, 2)
        omega0 = a * p + b * q + c * GAMMA.basis(7)
        if pair(GAMMA, omega0, omega0).sign() <= 0:
            continue
        b0 = d * GAMMA.basis(15) + c * p
        period = tube_map(split, ComplexVector(b0, omega0))
        # a second, independent Kaehler slot for the involution input
        omega1 = (a * a + 1) * q + d * GAMMA.basis(8) + rng.randint(0, 2) * split.v
        if pair(GAMMA, omega1, omega1).sign() <= 0:
            continue
        b1 = rng.randint(-2, 2) * GAMMA.basis(16) + rng.randint(-2, 2) * split.v
        report = mirror_involution_check(split, period, omega1, b1)
        assert report.span_equal
        assert report.second.Omega_check == period
        assert report.b_recovered
        assert report.omega_recovered  # up to the reported v-multiple
        produced += 1


def test_involution_reports_failure_for_non_null_input(split, sc28):
    # unnormalized rotated data is not a period: the check must say so
    report = mirror_involution_check(split, sc28.data.Omega_I, sc28.data.omega_I, ZERO)
    assert not report.span_equal
