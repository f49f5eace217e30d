import pytest

from bicayley import (
    AbelianPairGroup,
    GroupMap,
    apply_map,
    check_generator_images,
    compose_maps,
    identity_map,
    is_automorphism_pair,
    make_automorphism,
    make_group,
    map_order,
)
from bicayley.errors import BudgetError, InvalidMapError, ParameterError

from .oracles import (
    check_regular_action_exhaustive,
    derived_by_all_commutators,
    frattini_by_maximal_intersection,
    order_by_iteration,
    power_by_iteration,
    subgroup_is_abelian,
)


def test_make_group_orders():
    assert make_group(3, 2, 1, 1).order == 27
    assert make_group(3, 2, 2, 1).order == 81
    assert make_group(3, 3, 1, 2).order == 81


def test_make_group_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        make_group(3, 1, 1, 1)  # violates r < m
    with pytest.raises(ParameterError):
        make_group(3, 3, 1, 1)  # violates m <= n + r
    with pytest.raises(ParameterError):
        make_group(2, 2, 1, 1)  # even prime
    with pytest.raises(ParameterError):
        make_group(9, 2, 1, 1)  # not prime
    with pytest.raises(ParameterError):
        make_group(3, 2, 0, 1)


def test_make_group_word_budget():
    with pytest.raises(OverflowError):
        make_group(3, 50, 1, 49)  # 3^50 > 2^63


def test_mul_frozen_examples(group27):
    G = group27
    assert G.mul((0, 1), (1, 0)) == (1, 4)  # a*b = b*a^4
    assert G.mul((1, 1), (2, 2)) == (0, 0)
    for g in G.elements():
        assert G.mul(G.identity, g) == g
        assert G.mul(g, G.identity) == g


def test_commutation_law_exhaustive():
    # a^i b^j = b^j a^(i * (1+p^r)^j) on the two smallest groups
    for G in (make_group(3, 2, 1, 1), make_group(3, 2, 2, 1)):
        a, b = G.gen_a, G.gen_b
        for i in range(G.mod_i):
            for j in range(G.mod_j):
                lhs = G.mul(G.pow(a, i), G.pow(b, j))
                rhs = G.mul(G.pow(b, j), G.pow(a, i * G.twist_pow(j)))
                assert lhs == rhs


def test_pow_frozen_examples(group27):
    G = group27
    assert G.pow((1, 1), 2) == (2, 5)
    assert G.pow((1, 1), 3) == (0, 3)
    for g in G.elements():
        assert G.pow(g, 0) == G.identity


def test_pow_matches_iterated_mul(group27):
    G = group27
    ks = [-7, -1, 0, 1, 2, 3, 5, 9, 26, 27, 28, 80, 243]
    for g in G.elements():
        for k in ks:
            assert G.pow(g, k) == power_by_iteration(G, g, k)


def test_inv_frozen_examples(group27):
    G = group27
    assert G.inv((0, 1)) == (0, 8)
    assert G.inv((1, 0)) == (2, 0)
    assert G.inv((1, 1)) == (2, 2)
    assert G.mul((1, 1), (2, 2)) == G.identity
    for g in G.elements():
        assert G.mul(g, G.inv(g)) == G.identity
        assert G.mul(G.inv(g), g) == G.identity


def test_commutator_and_conj(group27):
    G = group27
    a, b = G.gen_a, G.gen_b
    assert G.commutator(a, b) == (0, 3)  # [a, b] = a^3
    assert G.conj(a, b) == (0, 4)  # b^-1 a b = a^4
    for g in G.elements():
        assert G.commutator(g, g) == G.identity


def test_element_order(group27):
    G = group27
    assert G.element_order(G.gen_a) == 9
    assert G.element_order(G.identity) == 1
    assert G.element_order((1, 1)) == 9
    for g in G.elements():
        assert G.element_order(g) == order_by_iteration(G, g)


def test_closure_sizes(group27):
    G = group27
    a, b = G.gen_a, G.gen_b
    assert len(G.closure([a])) == 9
    assert len(G.closure([a, b])) == 27
    assert G.closure([G.pow(a, 3)]) == G.derived_subgroup()


def test_closure_budget():
    G = make_group(3, 13, 1, 12)  # order 3^14 > 3^12
    with pytest.raises(BudgetError):
        G.closure([G.gen_a, G.gen_b])
    with pytest.raises(BudgetError):
        G.elements()


def test_derived_subgroup(group27):
    G = group27
    derived = G.derived_subgroup()
    assert derived == frozenset({(0, 0), (0, 3), (0, 6)})
    assert derived == derived_by_all_commutators(G)


def test_derived_subgroup_abelian_guard():
    G = AbelianPairGroup(3, 9)
    assert G.derived_subgroup() == frozenset({G.identity})


def test_frattini(group27, group81a):
    assert len(group81a.frattini_subgroup()) == 9
    for G in (group27, group81a):
        assert G.frattini_subgroup() == frattini_by_maximal_intersection(G)


def test_center(group27):
    assert group27.center() == frozenset({(0, 0), (0, 3), (0, 6)})


def test_is_inner_abelian(group27, group81a):
    assert group27.is_inner_abelian()
    assert group81a.is_inner_abelian()
    big = make_group(3, 3, 2, 1)  # r != m-1
    assert not big.is_inner_abelian()
    # oracle: exhaustive abelianness of every maximal subgroup
    flags = [subgroup_is_abelian(big, s) for _, s in big.maximal_subgroups()]
    assert not all(flags)
    assert all(subgroup_is_abelian(group27, s) for _, s in group27.maximal_subgroups())


def test_inner_abelian_power_law(group27, group81a, group81b):
    # in inner-abelian groups: (1+p^r)^k = 1 + k p^r mod p^m, and g^p = (pj, pi)
    for G in (group27, group81a, group81b):
        p, m, r = G.p, G.m, G.r
        assert r == m - 1
        for k in range(G.mod_j):
            assert G.twist_pow(k) == (1 + k * p**r) % G.mod_i
        for g in G.elements():
            j, i = g
            assert G.pow(g, p) == ((p * j) % G.mod_j, (p * i) % G.mod_i)
        assert len(G.derived_subgroup()) == p


def test_regular_representation(group27):
    G = group27
    reg = G.regular_representation()
    assert reg.degree == 27
    assert reg.order() == 27
    assert check_regular_action_exhaustive(G)
    from bicayley.permgroup import cycle_type

    perm_a = reg.generators[0]
    assert cycle_type(perm_a) == (9, 9, 9)


# -- generator-image maps ------------------------------------------------------


def _claim_images(G, t):
    a, b = G.gen_a, G.gen_b
    x = G.mul(G.pow(a, -2), b)
    y = G.mul(G.pow(a, 3**t - 3), b)
    return x, y


def test_automorphism_pair_accepts_rotation(group27):
    G = group27
    x, y = _claim_images(G, 1)
    assert y == (1, 0)  # a^{3^1-3} b = b
    assert is_automorphism_pair(G, x, y)


def test_automorphism_pair_rejects_inversion(group27):
    G = group27
    a, b = G.gen_a, G.gen_b
    x = G.inv(a)
    y = G.mul(G.pow(a, 3), G.inv(b))
    assert x == (0, 8) and y == (2, 3)
    rep = check_generator_images(G, x, y)
    assert not rep.ok
    assert not rep.conjugation_ok
    assert 2 * 3 in rep.forced_a_exponents  # forces a^(2*3^t) = 1 at t = 1


def test_automorphism_pair_rejects_swap(group27):
    G = group27
    a, b = G.gen_a, G.gen_b
    x = G.mul(G.inv(b), a)
    y = G.inv(b)
    assert x == (2, 1) and y == (2, 0)
    rep = check_generator_images(G, x, y)
    assert not rep.ok and not rep.conjugation_ok
    assert 6 in rep.forced_a_exponents


def test_apply_map(group27):
    G = group27
    a = G.gen_a
    x, y = _claim_images(G, 1)
    f = make_automorphism(G, x, y)
    assert apply_map(G, f, G.identity) == G.identity
    assert apply_map(G, f, a) == x
    aib = G.mul(G.inv(a), G.gen_b)
    assert apply_map(G, f, aib) == G.inv(a)


def test_apply_map_preserves_mul_exhaustive(group27):
    G = group27
    x, y = _claim_images(G, 1)
    f = make_automorphism(G, x, y)
    els = G.elements()
    img = {g: apply_map(G, f, g) for g in els}
    for g in els:
        for h in els:
            assert img[G.mul(g, h)] == G.mul(img[g], img[h])
    assert len(set(img.values())) == G.order


def test_unvalidated_map_rejected(group27):
    G = group27
    f = GroupMap(G.gen_a, G.gen_b, validated=False)
    with pytest.raises(InvalidMapError):
        apply_map(G, f, G.gen_a)
    with pytest.raises(InvalidMapError):
        make_automorphism(G, G.gen_a, G.gen_a)  # images do not generate


def test_compose_and_map_order(group27):
    G = group27
    x, y = _claim_images(G, 1)
    f = make_automorphism(G, x, y)
    ident = identity_map(G)
    assert compose_maps(G, f, ident) == f
    assert map_order(G, ident) == 1
    assert map_order(G, f) == 3
    # oracle: iterate images until both generators are fixed
    cur_a, cur_b = G.gen_a, G.gen_b
    k = 0
    while True:
        cur_a, cur_b = apply_map(G, f, cur_a), apply_map(G, f, cur_b)
        k += 1
        if (cur_a, cur_b) == (G.gen_a, G.gen_b):
            break
    assert k == 3


def test_element_serialization(group27):
    G = group27
    assert G.element_str((2, 5)) == "b^2*a^5"
    assert G.parse_element("b^2*a^5") == (2, 5)
    assert G.parse_element(G.element_str((1, 8))) == (1, 8)


def test_regular_action_exhaustive_up_to_order_243():
    # associativity in bulk: the regular action is a homomorphism on all pairs
    for params in ((3, 2, 1, 1), (3, 2, 2, 1), (3, 3, 2, 2)):
        assert check_regular_action_exhaustive(make_group(*params))


def test_apply_map_preserves_mul_order_243():
    G = make_group(3, 3, 2, 2)
    x, y = _claim_images(G, 2)
    f = make_automorphism(G, x, y)
    els = G.elements()
    img = {g: apply_map(G, f, g) for g in els}
    for g in els:
        gi = img[g]
        for h in els:
            assert img[G.mul(g, h)] == G.mul(gi, img[h])
