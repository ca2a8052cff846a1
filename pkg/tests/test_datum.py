import random
from fractions import Fraction

import pytest

from hopfcy.datum import (
    CleftDatum,
    CocycleData,
    DatumError,
    braiding_matrix,
    chi_sigma,
    cleft_from_linking,
    cocycle_ratio,
    deform_datum,
    make_cleft,
    normalize_pair,
    root_group_and_char,
    root_system,
    tau_from_cleft,
    validate_datum,
    xi_set,
)
from hopfcy.scalars import Character, Monomial, parse_scalar

A2xA2 = [
    [2, -1, 0, 0],
    [-1, 2, 0, 0],
    [0, 0, 2, -1],
    [0, 0, -1, 2],
]


def mono(c, e):
    return Monomial(Fraction(c), tuple(e))


def quantum_sl2_datum():
    # rank-1 group, two linked A1 vertices, chi(g) = q^2 and q^-2
    return validate_datum(
        params=("q",),
        cartan=[[2, 0], [0, 2]],
        g=[(1,), (1,)],
        chi=[((2,),), ((-2,),)],
        lam={(0, 1): "1/(q - q^-1)"},
    )


def rank2_a1a1_datum():
    # chi_1 = (q^2, q^-4), chi_2 = (q^4, q^-2) on generators y1, y2
    return validate_datum(
        params=("q",),
        cartan=[[2, 0], [0, 2]],
        g=[(1, 0), (0, 1)],
        chi=[((2,), (-4,)), ((4,), (-2,))],
    )


def linked_a2a2_datum(params=("q", "u")):
    # two A2 blocks with chi_3 = chi_1^-1, chi_4 = chi_2^-1 and cross linking
    m = len(params)
    pad = (0,) * (m - 1)
    def row(k):
        return (k,) + pad
    chi1 = (row(2), row(-1))
    chi2 = (row(-1), row(2))
    inv = lambda rows: tuple(tuple(-x for x in r) for r in rows)
    return validate_datum(
        params=params,
        cartan=A2xA2,
        g=[(1, 0), (0, 1), (1, 0), (0, 1)],
        chi=[chi1, chi2, inv(chi1), inv(chi2)],
        lam={(0, 2): 1, (1, 3): 1},
    )


def test_quantum_sl2_datum_valid():
    d = quantum_sl2_datum()
    assert d.theta == 2 and d.s == 1
    assert d.qI == (mono(1, (2,)), mono(1, (-2,)))
    q = braiding_matrix(d)
    assert q[0][0] == mono(1, (2,))
    assert q[1][1] == mono(1, (-2,))
    assert q[0][1] * q[1][0] == mono(1, (0,))
    assert d.lam_at(0, 1) == parse_scalar("1/(q - q^-1)", ("q",))


def test_rank2_datum_valid_and_braiding():
    d = rank2_a1a1_datum()
    q = braiding_matrix(d)
    assert q[0][1] * q[1][0] == mono(1, (0,))
    assert d.qI == (mono(1, (2,)), mono(1, (-2,)))
    assert not d.lam


def test_linked_a2a2_datum_valid():
    d = linked_a2a2_datum()
    assert d.cartan.components == ((0, 1), (2, 3))
    rs = root_system(d)
    assert rs.p == 6
    # product of all root characters is trivial
    total = Character.trivial(d.s, d.m)
    for coords in rs.roots:
        total = total * root_group_and_char(d, coords)[1]
    assert total.is_trivial


def test_root_group_and_char_values():
    d = quantum_sl2_datum()
    gb, cb = root_group_and_char(d, (1, 1))
    assert gb == (2,)
    assert cb.is_trivial
    d2 = linked_a2a2_datum(params=("q",))
    gb, cb = root_group_and_char(d2, (1, 1, 0, 0))
    assert gb == (1, 1)
    assert cb.eval((1, 0)) == mono(1, (1,))  # q^2 * q^-1


def test_braiding_incompatibility_rejected():
    # flipping one character exponent breaks q_22 = q_I within the A2 block
    chi1 = ((2, 0), (-1, 0))
    chi2_bad = ((-1, 0), (-2, 0))
    with pytest.raises(DatumError):
        validate_datum(
            params=("q", "u"),
            cartan=A2xA2,
            g=[(1, 0), (0, 1), (1, 0), (0, 1)],
            chi=[
                chi1,
                chi2_bad,
                tuple(tuple(-x for x in r) for r in chi1),
                tuple(tuple(-x for x in r) for r in chi2_bad),
            ],
        )


def test_root_of_unity_and_shape_errors():
    with pytest.raises(DatumError):
        validate_datum(
            params=("q",),
            cartan=[[2]],
            g=[(1,)],
            chi=[((0,),)],  # q_11 = 1, excluded
        )
    with pytest.raises(DatumError):
        validate_datum(
            params=("q",),
            cartan=[[2, 0], [0, 2]],
            g=[(1,)],
            chi=[((2,),)],
        )


def test_linking_constraints():
    # linking within a component is always rejected
    with pytest.raises(DatumError):
        validate_datum(
            params=("q",),
            cartan=[[2, -1], [-1, 2]],
            g=[(1, 0), (0, 1)],
            chi=[((2,), (-1,)), ((-1,), (2,))],
            lam={(0, 1): 1},
        )
    # g_i g_j = identity with nonzero linking is rejected
    with pytest.raises(DatumError):
        validate_datum(
            params=("q",),
            cartan=[[2, 0], [0, 2]],
            g=[(1,), (-1,)],
            chi=[((2,),), ((-2,),)],
            lam={(0, 1): 1},
        )
    # chi_i chi_j nontrivial: error in strict mode, warning in permissive
    kwargs = dict(
        params=("q",),
        cartan=[[2, 0], [0, 2]],
        g=[(1, 0), (0, 1)],
        chi=[((-2,), (1,)), ((-1,), (2,))],
        lam={(0, 1): "1/(q - 1)"},
    )
    with pytest.raises(DatumError):
        validate_datum(**kwargs)
    d = validate_datum(mode="permissive", **kwargs)
    assert d.warnings and "not trivial" in d.warnings[0]
    assert d.lam_at(0, 1) == parse_scalar("1/(q-1)", ("q",))


def test_group_algebra_datum():
    d = validate_datum(params=("q",), g=[], chi=[])
    assert d.theta == 0 and d.cartan is None
    assert braiding_matrix(d) == ()
    assert root_system(d) is None


def test_cocycle_ratio_values():
    sig = CocycleData.from_ratios(2, 1, {(1, 0): (3,)})
    assert cocycle_ratio(sig, (2, 2), (1, 0)) == mono(1, (6,))
    assert cocycle_ratio(sig, (2, 2), (0, 1)) == mono(1, (-6,))
    assert cocycle_ratio(sig, (5, -3), (5, -3)) == mono(1, (0,))
    # representative is consistent with the ratio
    for a, b in [((1, 0), (0, 1)), ((2, -1), (1, 3)), ((0, 2), (2, 0))]:
        assert sig.value(a, b) * sig.value(b, a).inv() == sig.ratio(a, b)


def random_twist(rng, s, m):
    coeffs = [
        [rng.randint(-2, 2) for _ in range(s * (s + 1) // 2 + s)] for _ in range(m)
    ]
    def f(g):
        exps = []
        for row in coeffs:
            it = iter(row)
            total = 0
            for i in range(s):
                for j in range(i, s):
                    total += next(it) * g[i] * g[j]
            for i in range(s):
                total += next(it) * g[i]
            exps.append(total)
        return Monomial(Fraction(1), tuple(exps))
    return f


def test_ratio_bimultiplicative_including_twists():
    rng = random.Random(20240817)
    for trial in range(1000):
        s = rng.randint(1, 3)
        m = rng.randint(1, 2)
        ratios = {
            (j, k): tuple(rng.randint(-3, 3) for _ in range(m))
            for j in range(s)
            for k in range(j + 1, s)
        }
        sig = CocycleData.from_ratios(s, m, ratios)
        if trial % 3 == 0:
            sig = CocycleData(s, m, sig.u, random_twist(rng, s, m))
        g, k, h = (
            tuple(rng.randint(-4, 4) for _ in range(s)) for _ in range(3)
        )
        gk = tuple(x + y for x, y in zip(g, k))
        assert sig.ratio(gk, h) == sig.ratio(g, h) * sig.ratio(k, h)
        assert sig.ratio(h, gk) == sig.ratio(h, g) * sig.ratio(h, k)
        # the representative's antisymmetrization equals the ratio
        assert sig.value(g, h) * sig.value(h, g).inv() == sig.ratio(g, h)
        # cocycle normalization on the identity
        zero = (0,) * s
        if sig.twist is None:
            assert sig.value(g, zero).is_one and sig.value(zero, h).is_one


def test_chi_sigma_frozen_value():
    # ratio sigma(y2,y1)/sigma(y1,y2) = q^3 deforms chi_1(y2) from q^-4 to q^-1
    d = rank2_a1a1_datum()
    sig = CocycleData.from_ratios(2, 1, {(1, 0): (3,)})
    cs = chi_sigma(d, sig)
    assert cs[0].eval((0, 1)) == mono(1, (-1,))
    assert cs[0].eval((1, 0)) == mono(1, (2,))  # q_11 unchanged
    assert cs[1].eval((1, 0)) == mono(1, (1,))
    assert cs[1].eval((0, 1)) == mono(1, (-2,))
    # q^sigma_ij q^sigma_ji is preserved
    for i in range(2):
        for j in range(2):
            lhs = cs[j].eval(d.g[i]) * cs[i].eval(d.g[j])
            rhs = d.q(i, j) * d.q(j, i)
            assert lhs == rhs


def test_deform_round_trip():
    d = quantum_sl2_datum()
    sig = CocycleData.from_ratios(1, 1, {})
    assert chi_sigma(d, sig) == d.chi

    d2 = linked_a2a2_datum()
    sig = CocycleData.from_ratios(2, 2, {(0, 1): (1, -2)})
    inv = CocycleData(2, 2, tuple(tuple(tuple(-x for x in e) for e in row) for row in sig.u))
    forward = deform_datum(d2, sig, mode="permissive")
    back = deform_datum(forward, inv, mode="permissive")
    assert back.chi == d2.chi
    for key in d2.lam:
        assert back.lam_at(*key) == d2.lam_at(*key)


def test_xi_set_and_cleft_support():
    d = linked_a2a2_datum()
    trivial = CocycleData.zero(2, 2)
    assert xi_set(d, trivial) == {(0, 2), (1, 3)}
    # a transcendental ratio parameter kills every admissible pair
    sig = CocycleData.from_ratios(2, 2, {(1, 0): (0, 1)})
    assert xi_set(d, sig) == frozenset()
    with pytest.raises(DatumError):
        make_cleft(d, sig, {(0, 2): 1})
    cd = make_cleft(d, sig)
    assert cd.pi == {}

    own = cleft_from_linking(d)
    assert set(own.pi) == {(0, 2), (1, 3)}


def test_tau_values():
    d = quantum_sl2_datum()
    own = cleft_from_linking(d)
    tau = tau_from_cleft(own)
    # the Hopf algebra itself: lambda sigma(g_i,g_j) - pi = lambda - lambda = 0
    assert not tau.xx

    lam = parse_scalar("1/(q - q^-1)", ("q",))
    plain = CleftDatum(d, CocycleData.zero(1, 1), {})
    tau = tau_from_cleft(plain)
    assert tau.xx_value(0, 1, 1) == lam
    assert tau.xx_inv(0, 1, 1) == -lam
    assert tau.gg((3,), (2,)).is_one


def test_normalize_pair_keeps_ratio_and_xi():
    rng = random.Random(5)
    d = rank2_a1a1_datum()
    sig = CocycleData.from_ratios(2, 1, {(1, 0): (3,)})
    pi = {}
    f = random_twist(rng, 2, 1)
    sig2, pi2 = normalize_pair(d, sig, pi, f)
    assert sig2.u == sig.u
    assert xi_set(d, sig2) == xi_set(d, sig)
    assert pi2 == {}
    # twisted values still antisymmetrize to the same ratio
    for _ in range(20):
        a = (rng.randint(-3, 3), rng.randint(-3, 3))
        b = (rng.randint(-3, 3), rng.randint(-3, 3))
        assert sig2.value(a, b) * sig2.value(b, a).inv() == sig.ratio(a, b)
        zero = (0, 0)
        assert sig2.value(a, zero).is_one and sig2.value(zero, b).is_one
