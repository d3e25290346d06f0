"""Base-valued cocycles and the two-sided product deformation."""

import pytest

from hgx.fields import QQ
from hgx.galois import GaloisExtension, left_self_extension
from hgx.io import decode_form
from hgx.twist import (CocycleLawFails, NotConvolutionInvertible,
                       NotNormalized, check_cocycle, convolution_inverse,
                       inverse_cocycle, trivial_cocycle, trivial_form,
                       twist_bialgebroid, twist_comodule_algebra_left,
                       twisted_translation, verify_cocycle_pair_identities,
                       verify_twist_well_defined)

from conftest import GROUP_MODELS, MODEL_NAMES

one = QQ.one


@pytest.mark.parametrize("name", MODEL_NAMES)
def test_trivial_cocycle_twist_is_bit_identical(models, name):
    lbg = models[name]
    tw = twist_bialgebroid(lbg, trivial_cocycle(lbg))
    assert tw.alg.table == lbg.alg.table
    assert tw.delta == lbg.delta
    assert tw.eps == lbg.eps


@pytest.fixture(scope="module")
def sign_cocycle(docs, z2z2):
    form = decode_form(docs["cocycle_minus"], z2z2)
    inv = decode_form(docs["cocycle_minus"], z2z2, "inverse_form")
    return check_cocycle(z2z2, form, inverse_form=inv)


def test_sign_cocycle_validates(sign_cocycle):
    assert verify_cocycle_pair_identities(sign_cocycle).ok


def test_closed_inverse_matches_generic_solve(z2z2, sign_cocycle):
    """The sign bicharacter is its own convolution inverse; the generic
    linear solve must find exactly that table."""
    assert convolution_inverse(z2z2, sign_cocycle.form) == \
        sign_cocycle.inverse_form
    assert sign_cocycle.inverse_form == sign_cocycle.form


@pytest.mark.parametrize("name", GROUP_MODELS)
def test_twist_lift_independence(models, name):
    lbg = models[name]
    assert verify_twist_well_defined(lbg, trivial_cocycle(lbg)).ok


def test_twist_lift_independence_sign(z2z2, sign_cocycle):
    assert verify_twist_well_defined(z2z2, sign_cocycle).ok


def test_untwist_roundtrip(z2z2, sign_cocycle):
    tw = twist_bialgebroid(z2z2, sign_cocycle)
    # two-sided scalars cancel on grouplike elements
    assert tw.alg.table == z2z2.alg.table
    inv = inverse_cocycle(sign_cocycle, tw)
    back = twist_bialgebroid(tw, inv)
    assert back.alg.table == z2z2.alg.table
    assert back.delta == z2z2.delta and back.eps == z2z2.eps


def test_one_sided_twist_anticommutes(z2z2, sign_cocycle):
    """The deformed comodule-algebra product satisfies gh = -hg."""
    ca = twist_comodule_algebra_left(left_self_extension(z2z2),
                                     sign_cocycle)
    P = ca.alg
    g, h = {2: one}, {1: one}
    gh = P.mul(g, h)
    hg = P.mul(h, g)
    assert gh == {3: one}
    assert hg == {3: -one}


def test_twisted_translation(z2z2, sign_cocycle):
    G = GaloisExtension(left_self_extension(z2z2))
    twisted_translation(G, sign_cocycle)


def test_not_normalized_rejected(z2):
    form = trivial_form(z2)
    form[0][1] = {0: QQ.of(2)}
    with pytest.raises(NotNormalized):
        check_cocycle(z2, form)


def test_not_invertible_rejected(z2):
    form = trivial_form(z2)
    form[1][1] = {}
    with pytest.raises(NotConvolutionInvertible):
        check_cocycle(z2, form)


def test_cocycle_law_violation_rejected(z2z2, docs):
    form = decode_form(docs["cocycle_minus"], z2z2)
    form[3][3] = {0: -c for _, c in form[3][3].items()}
    with pytest.raises(CocycleLawFails):
        check_cocycle(z2z2, form)
