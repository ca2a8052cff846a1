import random

import pytest

from hopfcy.cartan import (
    CartanError,
    positive_roots,
    reflect,
    validate_cartan,
)

A1 = [[2]]
A2 = [[2, -1], [-1, 2]]
A3 = [[2, -1, 0], [-1, 2, -1], [0, -1, 2]]
A4 = [[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]
B2 = [[2, -1], [-2, 2]]
G2 = [[2, -1], [-3, 2]]
A1xA1 = [[2, 0], [0, 2]]


def interval_roots(n):
    """Type A_n positive roots are sums of consecutive simple roots."""
    out = set()
    for i in range(n):
        for j in range(i, n):
            out.add(tuple(1 if i <= t <= j else 0 for t in range(n)))
    return out


def test_classical_counts_and_symmetrizers():
    table = [
        (A1, 1, (1,)),
        (A2, 3, (1, 1)),
        (A3, 6, (1, 1, 1)),
        (A4, 10, (1, 1, 1, 1)),
        (B2, 4, (2, 1)),
        (G2, 6, (3, 1)),
        (A1xA1, 2, (1, 1)),
    ]
    for matrix, count, d in table:
        cm = validate_cartan(matrix)
        assert cm.d == d
        rs = positive_roots(cm)
        assert rs.p == count
        # every simple root appears exactly once and j points at it
        for k in range(cm.theta):
            simple = tuple(1 if t == k else 0 for t in range(cm.theta))
            assert rs.roots.count(simple) == 1
            assert rs.roots[rs.j[k]] == simple


def test_type_a_roots_match_interval_oracle():
    for matrix, n in [(A2, 2), (A3, 3), (A4, 4)]:
        rs = positive_roots(validate_cartan(matrix))
        assert set(rs.roots) == interval_roots(n)


def test_a2_root_list_in_canonical_order():
    rs = positive_roots(validate_cartan(A2))
    assert rs.roots == ((0, 1), (1, 0), (1, 1))


def test_b2_g2_root_sets():
    rs = positive_roots(validate_cartan(B2))
    assert set(rs.roots) == {(1, 0), (0, 1), (1, 1), (1, 2)}
    rs = positive_roots(validate_cartan(G2))
    assert set(rs.roots) == {(1, 0), (0, 1), (1, 1), (1, 2), (1, 3), (2, 3)}


def test_components():
    assert validate_cartan(A2).components == ((0, 1),)
    assert validate_cartan(A1xA1).components == ((0,), (1,))
    two_a2 = [
        [2, -1, 0, 0],
        [-1, 2, 0, 0],
        [0, 0, 2, -1],
        [0, 0, -1, 2],
    ]
    cm = validate_cartan(two_a2)
    assert cm.components == ((0, 1), (2, 3))
    assert cm.same_component(0, 1)
    assert not cm.same_component(1, 2)
    assert positive_roots(cm).p == 6


def test_reflections_permute_other_positive_roots():
    for matrix in [A2, A3, B2, G2]:
        cm = validate_cartan(matrix)
        rs = positive_roots(cm)
        for i in range(cm.theta):
            simple = tuple(1 if t == i else 0 for t in range(cm.theta))
            others = {m for m in rs.roots if m != simple}
            image = {reflect(cm, i, m) for m in others}
            assert image == others
            # and s_i sends alpha_i to a negative vector
            assert all(x <= 0 for x in reflect(cm, i, simple))


def test_generation_is_idempotent():
    for matrix in [A2, B2, G2, A4]:
        cm = validate_cartan(matrix)
        assert positive_roots(cm).roots == positive_roots(cm).roots


def test_rejections():
    bad = [
        [[2, -2], [-2, 2]],            # determinant 0, affine not finite
        [[2, -3], [-3, 2]],            # negative determinant
        [[3, -1], [-1, 2]],            # diagonal not 2
        [[2, 1], [-1, 2]],             # positive off-diagonal
        [[2, 0], [-1, 2]],             # asymmetric zero pattern
        [[2, -1], [-1, 2], [0, 0]],    # not square
        [[2, -1, -2], [-2, 2, -1], [-1, -2, 2]],  # unsymmetrizable triangle
        [],
    ]
    for matrix in bad:
        with pytest.raises(CartanError):
            validate_cartan(matrix)


def test_random_permuted_a3_is_still_valid():
    # relabelling the vertices of a valid diagram must stay valid with the
    # permuted symmetrizers and the same root count
    rng = random.Random(7)
    base = validate_cartan(B2)
    rs_base = positive_roots(base)
    for _ in range(20):
        perm = list(range(2))
        rng.shuffle(perm)
        matrix = [[B2[perm[i]][perm[j]] for j in range(2)] for i in range(2)]
        cm = validate_cartan(matrix)
        assert sorted(cm.d) == sorted(base.d)
        assert positive_roots(cm).p == rs_base.p
