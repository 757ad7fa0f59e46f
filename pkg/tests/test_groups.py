import itertools
import math

import numpy as np
import pytest

from partialpi.config import Caps
from partialpi.errors import (
    BadAction,
    ClosureCapExceeded,
    ElementNotInGroup,
    IsoCapExceeded,
    NotNormal,
)
from partialpi.groups import (
    alternating,
    center,
    core,
    cyclic,
    derived_subgroup,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    general_linear_3_2,
    group_from_generators,
    is_isomorphic,
    normalizer,
    quotient,
    semidihedral,
    semidirect_product,
    special_linear_2_3,
    subgroup_generated,
    symmetric,
    trivial_group,
    vector_action_group,
)
from partialpi.perms import parse_cycles


def test_group_from_generators_examples():
    g = group_from_generators(3, [parse_cycles("(1 2 3)", 3)])
    assert g.order == 3
    s4 = group_from_generators(4, [parse_cycles("(1 2 3 4)", 4),
                                   parse_cycles("(1 2)", 4)])
    assert s4.order == 24
    assert group_from_generators(1, []).order == 1


def test_closure_cap():
    with pytest.raises(ClosureCapExceeded):
        group_from_generators(5, [parse_cycles("(1 2 3 4 5)", 5),
                                  parse_cycles("(1 2)", 5)],
                              caps=Caps(closure=100))


def test_elements_sorted_and_identity_first():
    s3 = symmetric(3)
    rows = s3.element_array
    assert (rows[0] == np.arange(3)).all()
    for i in range(len(rows) - 1):
        assert tuple(rows[i]) < tuple(rows[i + 1])


def test_generators_in_elements_and_lagrange():
    for g in (symmetric(4), alternating(4), dicyclic(8), dihedral(10)):
        for gen in g.generators:
            assert gen in g
        assert math.factorial(g.degree) % g.order == 0


def test_subgroup_generated():
    s4 = symmetric(4)
    v4 = subgroup_generated(s4, [parse_cycles("(1 2)(3 4)", 4),
                                 parse_cycles("(1 3)(2 4)", 4)])
    assert v4.order == 4
    assert subgroup_generated(s4, []).order == 1
    c4 = subgroup_generated(s4, [parse_cycles("(1 2 3 4)", 4)])
    assert c4.order == 4
    with pytest.raises(ElementNotInGroup):
        subgroup_generated(alternating(4), [parse_cycles("(1 2)", 4)])
    # Lagrange on every generated subgroup
    for gens in [["(1 2)"], ["(1 2 3)"], ["(1 2)", "(3 4)"]]:
        H = subgroup_generated(s4, [parse_cycles(t, 4) for t in gens])
        assert s4.order % H.order == 0


def brute_normalizer(G, H):
    mem = set(H.members)
    return [g for g in G.elements
            if all(g.inverse() * h * g in mem for h in mem)]


def test_normalizer_examples_and_oracle():
    s4 = symmetric(4)
    c4 = subgroup_generated(s4, [parse_cycles("(1 2 3 4)", 4)])
    n = normalizer(s4, c4)
    assert n.order == 8
    assert n.contains(c4)
    a4 = alternating(4)
    h = subgroup_generated(a4, [parse_cycles("(1 2)(3 4)", 4)])
    assert normalizer(a4, h).order == 4
    # H normal => normalizer is everything
    v4 = subgroup_generated(s4, [parse_cycles("(1 2)(3 4)", 4),
                                 parse_cycles("(1 3)(2 4)", 4)])
    assert normalizer(s4, v4).order == 24
    # brute-force agreement
    for H in (c4, v4, h.ambient.trivial_subgroup()):
        G = H.ambient
        assert sorted(p.images for p in normalizer(G, H).members) == \
            sorted(p.images for p in brute_normalizer(G, H))


def test_core_examples():
    s4 = symmetric(4)
    v4 = subgroup_generated(s4, [parse_cycles("(1 2)(3 4)", 4),
                                 parse_cycles("(1 3)(2 4)", 4)])
    assert core(s4, v4).order == 4  # normal: core = H
    c4 = subgroup_generated(s4, [parse_cycles("(1 2 3 4)", 4)])
    # independent oracle: intersect all conjugates directly
    mem = set(c4.members)
    inter = set(mem)
    for g in s4.elements:
        inter &= {g.inverse() * h * g for h in mem}
    got = core(s4, c4)
    assert {p.images for p in got.members} == {p.images for p in inter}
    assert got.order == 1  # the three C4's of S4 meet trivially
    assert got.is_normal()
    s3 = symmetric(3)
    c2 = subgroup_generated(s3, [parse_cycles("(1 2)", 3)])
    assert core(s3, c2).order == 1


def test_quotient_examples():
    s4 = symmetric(4)
    v4 = subgroup_generated(s4, [parse_cycles("(1 2)(3 4)", 4),
                                 parse_cycles("(1 3)(2 4)", 4)])
    q = quotient(s4, v4)
    assert q.target.order == 6
    assert is_isomorphic(q.target, symmetric(3))
    g = cyclic(6)
    assert quotient(g, g.trivial_subgroup()).target.order == 6
    assert quotient(g, g.as_subgroup()).target.order == 1
    c4 = subgroup_generated(s4, [parse_cycles("(1 2 3 4)", 4)])
    with pytest.raises(NotNormal):
        quotient(s4, c4)


@pytest.mark.parametrize("builder", [
    lambda: symmetric(4),
    lambda: dicyclic(12),
    lambda: semidirect_product(3, 2, [[2, 0], [0, 2]], 2),
])
def test_quotient_push_is_homomorphism_exhaustive(builder):
    G = builder()
    assert G.order <= 100
    from partialpi.chiefs import normal_subgroups
    for N in normal_subgroups(G):
        q = quotient(G, N)
        assert q.target.order * N.order == G.order
        push = q.push
        for g1, g2 in itertools.product(G.elements, G.elements):
            assert push(g1 * g2) == push(g1) * push(g2)
        for h in q.target.elements:
            assert q.push(q.pull(h)) == h


def test_direct_product():
    c2 = cyclic(2)
    v4 = direct_product(c2, c2)
    assert v4.order == 4
    assert all(int(o) <= 2 for o in v4.element_orders)
    big = direct_product(elementary_abelian(2, 2), elementary_abelian(2, 2))
    assert big.order == 16 and all(int(o) <= 2 for o in big.element_orders)
    s3c2 = direct_product(symmetric(3), cyclic(2))
    assert s3c2.order == 12
    with pytest.raises(ClosureCapExceeded):
        direct_product(symmetric(4), symmetric(4), caps=Caps(closure=100))


def test_semidirect_product():
    g = semidirect_product(2, 2, [[0, 1], [1, 1]], 3)
    assert g.order == 12
    assert is_isomorphic(g, alternating(4))
    s3 = semidirect_product(3, 1, [[2]], 2)
    assert s3.order == 6 and is_isomorphic(s3, symmetric(3))
    ea = semidirect_product(5, 1, [[1]], 1)
    assert ea.order == 5
    trivial_action = semidirect_product(2, 2, [[1, 0], [0, 1]], 3)
    assert trivial_action.order == 12  # direct product (C2)^2 x C3
    with pytest.raises(BadAction):
        semidirect_product(2, 2, [[1, 1], [1, 1]], 2)  # singular
    with pytest.raises(BadAction):
        semidirect_product(2, 2, [[0, 1], [1, 1]], 2)  # A^2 != I
    with pytest.raises(BadAction):
        semidirect_product(2, 1, [[1]], 2)  # gcd(m, p) != 1


def test_sylow_part_of_semidirect():
    g = semidirect_product(2, 4,
                           [[0, 1, 0, 0], [1, 1, 0, 0],
                            [0, 0, 0, 1], [0, 0, 1, 1]], 3)
    assert g.order == 48
    from partialpi.structure import sylow
    P = sylow(g, 2)
    assert P.order == 16
    assert all(int(o) <= 2 for o in g.element_orders[P.idx])


def test_named_constructors():
    assert trivial_group().order == 1
    assert cyclic(12).order == 12
    assert dihedral(16).order == 16
    assert dicyclic(16).order == 16
    assert semidihedral(16).order == 16
    assert special_linear_2_3().order == 24
    assert general_linear_3_2().order == 168
    assert vector_action_group(7, 2, [[[0, 6], [1, 6]], [[0, 1], [1, 0]]]).order == 294
    # defining relations of the dicyclic family: b^2 = a^n, a^b = a^-1
    for order in (8, 12, 16):
        q = dicyclic(order)
        a, b = q.generators if q.generators[0].order() > 2 else q.generators[::-1]
        n = order // 4
        assert a.order() == 2 * n
        assert b * b == a ** n
        assert b.inverse() * a * b == a.inverse()
    # semidihedral relation: a^b = a^(2^(n-2) - 1)
    sd = semidihedral(16)
    a = next(p for p in sd.elements if p.order() == 8)
    bs = [p for p in sd.elements if p.order() == 2
          and p.inverse() * a * p == a ** 3]
    assert bs, "semidihedral relation witness"


def test_is_isomorphic_examples():
    a4 = alternating(4)
    assert is_isomorphic(a4, a4)
    assert not is_isomorphic(dihedral(8), dicyclic(8))
    assert is_isomorphic(semidirect_product(2, 2, [[0, 1], [1, 1]], 3), a4)
    # different orders
    assert not is_isomorphic(cyclic(4), elementary_abelian(2, 2))
    assert not is_isomorphic(cyclic(6), symmetric(3))
    with pytest.raises(IsoCapExceeded):
        is_isomorphic(symmetric(4), symmetric(4), caps=Caps(iso=10))


def test_is_isomorphic_equivalence_relation(groups):
    names = ["S3", "A4", "Q8", "D8", "C12", "V4"]
    gs = [groups[n] for n in names]
    for g in gs:
        assert is_isomorphic(g, g)
    for a, b in itertools.combinations(gs, 2):
        assert is_isomorphic(a, b) == is_isomorphic(b, a)
    # transitivity on a sampled triple of isomorphic groups
    from partialpi.groups import semidirect_product as sdp
    t1 = alternating(4)
    t2 = sdp(2, 2, [[0, 1], [1, 1]], 3)
    t3 = sdp(2, 2, [[1, 1], [1, 0]], 3)
    assert is_isomorphic(t1, t2) and is_isomorphic(t2, t3) \
        and is_isomorphic(t1, t3)


from hypothesis import given, settings, strategies as st


@given(st.lists(st.permutations(list(range(1, 6))), min_size=0, max_size=2))
@settings(max_examples=25, deadline=None)
def test_random_generated_group_invariants(images_list):
    gens = [__import__("partialpi.perms", fromlist=["Perm"]).Perm(imgs)
            for imgs in images_list]
    G = group_from_generators(5, gens)
    assert math.factorial(5) % G.order == 0
    for g in gens:
        assert g in G
    # closed under composition and inverse
    for a in G.elements[:6]:
        for b in G.elements[:6]:
            assert a * b in G
        assert a.inverse() in G
    H = subgroup_generated(G, gens[:1])
    N = normalizer(G, H)
    assert N.contains(H)
    assert core(G, H).is_normal()


def test_center_and_derived():
    s3 = symmetric(3)
    assert center(s3).order == 1
    assert derived_subgroup(s3).order == 3
    q8 = dicyclic(8)
    assert center(q8).order == 2
    assert derived_subgroup(symmetric(4)).order == 12
