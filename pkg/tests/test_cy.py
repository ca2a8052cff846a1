import random
from fractions import Fraction

import pytest

from test_algebra import quantum_plane, sl2_crossed  # noqa: F401
from test_datum import (
    linked_a2a2_datum,
    mono,
    quantum_sl2_datum,
    rank2_a1a1_datum,
    random_twist,
)

from hopfcy.algebra import ActionData, inner_conjugation
from hopfcy.cy import (
    CYError,
    IntegralCharacter,
    antipode_pullback,
    antipode_squared,
    decide_cy_cleft,
    decide_cy_crossed,
    decide_cy_hopf,
    decide_cy_smash,
    inner_witness,
    integral_character,
    kk1_nakayama,
    nakayama_cleft,
    nakayama_crossed,
    nakayama_hopf,
    nakayama_hopf_alt,
    winding,
)
from hopfcy.datum import (
    CocycleData,
    cleft_from_linking,
    make_cleft,
    validate_datum,
)
from hopfcy.koszul import KoszulAction, SkewActionGen, quantum_affine_space
from hopfcy.scalars import Character, Monomial, RationalFunction

Q = mono(1, (1,))
ZERO = RationalFunction.zero(1)
ONE = RationalFunction.one(1)


def plane_smash_data():
    """The quantum plane acted on by the rank-one two-vertex Hopf algebra."""
    plane = quantum_affine_space(2, Q, ("q",), var_names=("u", "v"))
    chi_u = Character(((1,),))
    chi_v = Character(((-1,),))
    koszul_side = KoszulAction(
        plane,
        2,
        (chi_u, chi_v),
        (
            SkewActionGen((1,), ((ZERO, ZERO), (ONE, ZERO))),
            SkewActionGen((1,), ((ZERO, Q.as_rf()), (ZERO, ZERO))),
        ),
    )
    presentation_side = ActionData(
        aff=quantum_plane(),
        eig=(chi_u, chi_v),
        xact=(
            ((ZERO, ZERO), (ONE, ZERO)),
            ((ZERO, Q.as_rf()), (ZERO, ZERO)),
        ),
    )
    return koszul_side, presentation_side


def group_rank2_datum():
    """Plain rank-two group algebra: no skew-primitives at all."""
    return validate_datum(params=("q",), g=[], chi=[], s=2)


def commutative_plane_action():
    aff = quantum_affine_space(2, Monomial.one(1), ("q",), var_names=("x1", "x2"))
    eig = Character(((1,), (-1,)))
    return KoszulAction(aff, 2, (eig, eig))


def test_integral_characters():
    z = integral_character(quantum_sl2_datum())
    assert z.is_trivial and z.gldim == 3 and z.theta == 2

    z = integral_character(rank2_a1a1_datum())
    assert z.on_group.rows == ((6,), (-6,))
    assert z.gldim == 4
    assert "zeta(g1) = q^6" in z.describe(("q",))[0]

    z = integral_character(linked_a2a2_datum())
    assert z.is_trivial and z.gldim == 2 * 3 + 2

    z = integral_character(group_rank2_datum())
    assert z.is_trivial and z.gldim == 2 and z.theta == 0


def test_nakayama_hopf_closed_form():
    mu = nakayama_hopf(quantum_sl2_datum())
    assert mu.x_scalars == (mono(1, (2,)), mono(1, (-2,)))
    assert mu.group_char.is_trivial

    mu = nakayama_hopf(rank2_a1a1_datum())
    assert mu.group_char.rows == ((6,), (-6,))

    # no skew-primitives: the map is the identity twisted by nothing
    mu = nakayama_hopf(group_rank2_datum())
    assert mu.is_diagonal_identity


def test_nakayama_hopf_alt_and_conjugation_identity():
    d = quantum_sl2_datum()
    nu = nakayama_hopf_alt(d)
    # each scalar is the opposite vertex's character value
    assert nu.x_scalars == (mono(1, (-2,)), mono(1, (2,)))
    # the cross-check against conjugation by the sum of root group-likes
    # also runs for the linked A2 x A2 datum without raising
    nu = nakayama_hopf_alt(linked_a2a2_datum())
    assert nu.group_char.is_trivial
    assert nakayama_hopf_alt(group_rank2_datum()).is_diagonal_identity


def test_decide_cy_hopf_with_witness():
    r = decide_cy_hopf(quantum_sl2_datum())
    assert r.is_cy and r.twisted_cy
    assert r.witness == (1,) and r.witness_text == "g"
    assert r.kernel == ()
    assert all(ok for _, ok, _ in r.conditions)
    # the witness really conjugates to the Nakayama map
    mu = r.nakayama
    assert inner_conjugation(mu.p, r.witness).same_map(mu)


def test_decide_cy_hopf_a2a2_witness_by_normal_forms():
    d = linked_a2a2_datum()
    r = decide_cy_hopf(d)
    assert r.is_cy and r.witness == (2, 2)
    assert r.witness_text == "g1^2 g2^2"
    p = r.nakayama.p
    conj = inner_conjugation(p, (2, 2))
    for k in range(4):
        assert conj.apply(p.xgen(k)) == p.xgen(k).scale(d.q(k, k))


def test_decide_cy_hopf_negative():
    r = decide_cy_hopf(rank2_a1a1_datum())
    assert not r.is_cy and r.twisted_cy
    label, ok, detail = r.conditions[0]
    assert label == "integral character trivial" and not ok
    assert "q^6" in detail
    assert r.witness is None
    lines = r.describe()
    assert any(line.startswith("Calabi-Yau: no") for line in lines)


def test_cleft_nakayama_and_route_independence():
    d = rank2_a1a1_datum()
    sig = CocycleData.from_ratios(2, 1, {(1, 0): (3,)})
    mu = nakayama_cleft(make_cleft(d, sig, {}))
    assert mu.x_scalars == (mono(1, (2,)), mono(1, (-2,)))
    assert mu.group_char.rows == ((6,), (-6,))

    # the Hopf algebra itself as a cleft object gives back the Hopf map
    d = quantum_sl2_datum()
    assert nakayama_cleft(cleft_from_linking(d)).x_scalars == nakayama_hopf(d).x_scalars


def test_cleft_route_independence_random_cocycles():
    # the internal cross-check against the double inverse-antipode composite
    # must hold for any group cocycle, twisted representative or not
    d = rank2_a1a1_datum()
    rng = random.Random(20250823)
    for _ in range(30):
        sig = CocycleData.from_ratios(2, 1, {(1, 0): (rng.randint(-5, 5),)})
        if rng.random() < 0.5:
            sig = CocycleData(2, 1, sig.u, random_twist(rng, 2, 1))
        mu = nakayama_cleft(make_cleft(d, sig, {}))
        assert mu.x_scalars == (mono(1, (2,)), mono(1, (-2,)))


def test_decide_cy_cleft_ratio_cube():
    d = rank2_a1a1_datum()
    sig = CocycleData.from_ratios(2, 1, {(1, 0): (3,)})
    r = decide_cy_cleft(make_cleft(d, sig, {}))
    assert r.is_cy
    assert r.witness == (2, 2) and r.kernel == ()
    assert r.witness_text == "g1^2 g2^2"
    assert inner_conjugation(r.nakayama.p, r.witness).same_map(r.nakayama)


def test_decide_cy_cleft_independent_parameter_infeasible():
    d = linked_a2a2_datum()
    sig = CocycleData.from_ratios(2, 2, {(1, 0): (0, 1)})
    r = decide_cy_cleft(make_cleft(d, sig, {}))
    assert not r.is_cy and r.twisted_cy
    assert r.certificate is not None
    assert r.certificate.describe() == "0 = 2"
    assert any("box sweep" in label and ok for label, ok, _ in r.conditions)


def test_decide_cy_cleft_trivial_cocycle_matches_hopf():
    d = quantum_sl2_datum()
    r = decide_cy_cleft(cleft_from_linking(d))
    assert r.is_cy and r.witness == decide_cy_hopf(d).witness


def test_cleft_decisions_invariant_under_normalization():
    d = rank2_a1a1_datum()
    rng = random.Random(11)
    yes = make_cleft(d, CocycleData.from_ratios(2, 1, {(1, 0): (3,)}), {})
    no = make_cleft(
        linked_a2a2_datum(), CocycleData.from_ratios(2, 2, {(1, 0): (0, 1)}), {}
    )
    for _ in range(10):
        f = random_twist(rng, 2, 1)
        r = decide_cy_cleft(yes.normalized(f))
        assert r.is_cy and r.witness == (2, 2)
        f2 = random_twist(rng, 2, 2)
        r = decide_cy_cleft(no.normalized(f2))
        assert not r.is_cy and r.certificate.describe() == "0 = 2"


def test_winding_maps():
    d = quantum_sl2_datum()
    eps = IntegralCharacter(Character.trivial(1, 1), 3, 2)
    assert winding(d, eps, "left").is_diagonal_identity
    assert winding(d, eps, "right").is_diagonal_identity

    d2 = rank2_a1a1_datum()
    zeta = integral_character(d2)
    wl = winding(d2, zeta, "left")
    assert wl.x_scalars == (mono(1, (6,)), mono(1, (-6,)))
    assert wl.group_char.rows == ((6,), (-6,))
    wr = winding(d2, zeta, "right")
    assert all(c.is_one for c in wr.x_scalars)
    assert wr.group_char.rows == ((6,), (-6,))

    with pytest.raises(CYError):
        winding(d, zeta, "sideways")
    # a character that moves the linked group-like is not an algebra map
    with pytest.raises(CYError):
        winding(d, IntegralCharacter(Character(((1,),)), 3, 2), "left")


def test_kk1_nakayama():
    d = quantum_sl2_datum()
    eps = IntegralCharacter(Character.trivial(1, 1), 3, 2)
    nu = kk1_nakayama(d, eps)
    assert nu.same_map(antipode_squared(d, nu.p))

    d2 = rank2_a1a1_datum()
    zeta = integral_character(d2)
    nu = kk1_nakayama(d2, zeta)
    assert nu.group_char.rows == ((6,), (-6,))
    # zeta(g_k) q_kk^-1 on the skew-primitives
    assert nu.x_scalars == (mono(1, (4,)), mono(1, (-4,)))
    eta = antipode_pullback(zeta)
    assert eta.on_group.rows == ((-6,), (6,))


def test_crossed_eg1_smash_is_cy():
    d = quantum_sl2_datum()
    koszul_side, presentation_side = plane_smash_data()
    nk = nakayama_crossed(d=d, action=koszul_side, presentation_action=presentation_side)
    assert [m.render(("q",)) for m in nk.mu_a] == ["q", "q^-1"]
    assert nk.hdet_group.is_trivial
    assert all(v.is_zero for v in nk.hdet_x)
    assert nk.endo is not None
    # the Hopf-side part of rho is exactly the inverse antipode square
    assert nk.x_scalars == antipode_squared(d, inverse=True).x_scalars
    assert nk.group_char.is_trivial

    r = decide_cy_smash(koszul_side, d, presentation_action=presentation_side)
    assert r.is_cy and r.witness == (1,) and r.witness_text == "g"
    assert r.kernel == ()
    assert inner_conjugation(r.nakayama.p, r.witness).same_map(r.nakayama)


def test_identity_with_antipode_square_not_inner():
    d = quantum_sl2_datum()
    ans = inner_witness(
        d,
        eig=(Character(((1,),)), Character(((-1,),))),
        u_targets=(Monomial.one(1), Monomial.one(1)),
        x_targets=(mono(1, (-2,)), mono(1, (2,))),
        group_targets=Character.trivial(1, 1),
    )
    assert not ans.feasible
    assert ans.certificate is not None


def test_crossed_group_factor_smash_not_cy():
    r = decide_cy_smash(commutative_plane_action(), group_rank2_datum())
    assert not r.is_cy
    assert r.certificate.describe() == "0 = 2"
    assert any("box sweep" in label for label, _, _ in r.conditions)


def test_crossed_group_factor_with_ratio_is_cy():
    d = group_rank2_datum()
    act = commutative_plane_action()
    nk = nakayama_crossed(act, d)
    assert nk.hdet_group.rows == ((2,), (-2,))
    assert [m.render(("q",)) for m in nk.mu_a] == ["1", "1"]
    sig = CocycleData.from_ratios(2, 1, {(1, 0): (1,)})
    r = decide_cy_crossed(act, d, sig)
    assert r.is_cy and r.witness == (2, 2) and r.kernel == ()
    assert r.witness_text == "g1^2 g2^2"


def test_crossed_mu_single_source_of_truth():
    d = group_rank2_datum()
    act = commutative_plane_action()
    ok = (Monomial.one(1), Monomial.one(1))
    nakayama_crossed(act, d, expected_mu=ok)
    with pytest.raises(CYError):
        nakayama_crossed(act, d, expected_mu=(mono(1, (2,)), Monomial.one(1)))


def test_crossed_input_validation():
    d = quantum_sl2_datum()
    plane2 = quantum_affine_space(2, mono(1, (1, 0)), ("q", "t"), var_names=("u", "v"))
    bad = KoszulAction(plane2, 2, (Character(((1, 0),)), Character(((-1, 0),))))
    with pytest.raises(CYError):
        nakayama_crossed(bad, d)
    plane = quantum_affine_space(2, Q, ("q",), var_names=("u", "v"))
    wrong_rank = KoszulAction(plane, 2, (Character(((1,), (0,))), Character(((-1,), (0,)))))
    with pytest.raises(CYError):
        nakayama_crossed(wrong_rank, d)


def test_report_payload_round_trip():
    r = decide_cy_hopf(quantum_sl2_datum())
    data = r.payload()
    assert data["kind"] == "hopf" and data["is_cy"] is True
    assert data["witness"] == [1] and data["witness_text"] == "g"
    assert data["certificate"] is None
    assert isinstance(data["nakayama"], list) and data["nakayama"]
    neg = decide_cy_smash(commutative_plane_action(), group_rank2_datum()).payload()
    assert neg["is_cy"] is False
    assert neg["certificate"]["text"] == "0 = 2"
