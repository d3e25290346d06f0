"""Cleft extensions, crossed products, and gauge equivalence."""

import random

import pytest

from hgx.cleft import (CleftExtension, GammaNotColinear, GaugeElement,
                       MeasuringFails, NotConvolutionInvertible,
                       check_measuring_cocycle, cleaving_from_normal_basis,
                       cleft_to_galois, cocycle_ring_identity,
                       crossed_is_cleft, crossed_product,
                       extract_from_cleft, extract_gauge,
                       gamma_crossed_product, gauge_iso, gauge_transform,
                       identity_cleaving, normal_basis_iso,
                       trivial_measuring_cocycle,
                       verify_cleaving_identities)
from hgx.fields import QQ
from hgx.io import decode_coefficient_table
from hgx.linalg import Lin, vaddmul

from conftest import MODEL_NAMES

one = QQ.one


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_identity_cleaving(models, name):
    lbg = models[name]
    C = identity_cleaving(lbg)
    assert verify_cleaving_identities(C).ok
    cleft_to_galois(C)


def test_gamma_must_be_colinear(z2):
    C = identity_cleaving(z2)
    gamma2 = Lin(QQ, 2, 2, [z2.s_of(z2.eps[x]) for x in range(2)])
    with pytest.raises(GammaNotColinear):
        CleftExtension(C.ca, gamma2)


@pytest.fixture(scope="module")
def sign_pair(docs, z2):
    NA, sigma = decode_coefficient_table(docs["sigma_sign_z2"], z2)
    NA2, act = decode_coefficient_table(docs["measuring_trivial_z2"], z2)
    meas, coc = check_measuring_cocycle(z2, NA, act, sigma)
    return NA, meas, coc


def test_trivial_crossed_products(models):
    for name in MODEL_NAMES:
        lbg = models[name]
        meas, coc = trivial_measuring_cocycle(lbg)
        assert cocycle_ring_identity(lbg, meas, coc).ok
        cp = crossed_product(lbg, coc.NA, coc, meas, nbar=coc.nbar)
        C = crossed_is_cleft(cp)
        extract_from_cleft(C)


def test_sign_crossed_product_deforms_the_ring(z2, sign_pair):
    NA, meas, coc = sign_pair
    cp = crossed_product(z2, NA, coc, meas)
    # k_sigma[Z2] with sigma(g,g) = -1: the class algebra with g^2 = -1
    g = cp.inc({(1,): one}, {(0,): one})
    sq = cp.alg.mul(g, g)
    unit = cp.inc({(0,): one}, {(0,): one})
    assert sq == {k: -c for k, c in unit.items()}


def test_extraction_roundtrip_is_exact(z2, sign_pair):
    NA, meas, coc = sign_pair
    cp = crossed_product(z2, NA, coc, meas)
    C = crossed_is_cleft(cp)
    meas2, coc2 = extract_from_cleft(C)
    assert coc2.sigma == coc.sigma
    assert meas2.act == meas.act
    assert crossed_product(z2, NA, coc2, meas2).alg.table == \
        gamma_crossed_product(C).alg.table


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_normal_basis_iso(models, name):
    lbg = models[name]
    C = identity_cleaving(lbg)
    cp = gamma_crossed_product(C)
    _, phi, phi_inv = normal_basis_iso(C, cp)
    cleaving_from_normal_basis(C.ca, cp, phi, phi_inv,
                               iotabar=C.iotabar)


def _random_gauge(z2, NA, rng):
    num = rng.randrange(1, 40)
    den = rng.randrange(1, 40)
    c = QQ.of(num) / QQ.of(den)
    return GaugeElement(z2, NA, [{0: one}, {0: c}])


def test_seeded_random_gauge_roundtrip(z2, sign_pair):
    NA, meas, coc = sign_pair
    rng = random.Random(20260823)
    for _ in range(3):
        u = _random_gauge(z2, NA, rng)
        m2, c2 = gauge_transform(coc, meas, u)
        # conjugating back with the inverse restores the pair exactly
        uinv = GaugeElement(z2, NA, u.u_inv, u_inv=u.u)
        m3, c3 = gauge_transform(c2, m2, uinv)
        assert c3.sigma == coc.sigma and m3.act == meas.act
        # the crossed products are isomorphic along the gauge element
        cp_a = crossed_product(z2, NA, coc, meas)
        cp_b = crossed_product(z2, NA, c2, m2)
        gauge_iso(cp_a, cp_b, u)


def test_extract_gauge_recovers_the_element(z2, sign_pair):
    NA, meas, coc = sign_pair
    cp = crossed_product(z2, NA, coc, meas)
    C = crossed_is_cleft(cp)
    rng = random.Random(7)
    u = _random_gauge(z2, NA, rng)
    # gamma' = gamma * u by convolution on the same comodule algebra
    cols = []
    for x in range(z2.alg.dim):
        acc = {}
        for (x1, x2), c in z2.delta[x].items():
            acc = vaddmul(acc, c * u.u[x1][0],
                          C.gamma.apply({x2: one}))
        cols.append(acc)
    gamma2 = Lin(QQ, C.gamma.nrows, z2.alg.dim, cols)
    C2 = CleftExtension(C.ca, gamma2, iotabar=C.iotabar)
    got = extract_gauge(C, C2)
    # the formula reads off the inverse of the convolving element
    assert got.u == u.u_inv
    assert got.u_inv == u.u


def test_measuring_axioms_rejected(z2, sign_pair):
    NA, meas, coc = sign_pair
    act = [[{0: one}], [{0: QQ.of(2)}]]   # g |> 1 = 2 breaks unitality
    with pytest.raises(MeasuringFails):
        check_measuring_cocycle(z2, NA, act, coc.sigma)


def test_singular_sigma_rejected(z2, sign_pair):
    NA, meas, coc = sign_pair
    sigma = [row[:] for row in coc.sigma]
    sigma[1][1] = {}
    with pytest.raises(NotConvolutionInvertible):
        check_measuring_cocycle(z2, NA, meas.act, sigma)
