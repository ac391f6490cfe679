import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ringlab.constructions import (
    edge_ideal_all_squares,
    named_graph,
    whiskered_edge_ideal,
    whisker_names,
)
from ringlab.fields import QQ
from ringlab.graphs import Graph, enumerate_graphs
from ringlab.monomials import (
    MonomialIdeal,
    Presentation,
    add_squares,
    contains,
    edge_ideal,
    eliminate_variables,
    fiber_product_presentation,
    format_poly,
    parse_monomial,
    parse_poly,
    polarize,
    presentation_from_json,
    presentation_of,
    presentation_to_json,
    rename_ideal,
    substitute,
    substitute_ideal,
    to_monomial_ideal,
    variable_partition_decomposable,
)


def ideal(vars_, *gens):
    return MonomialIdeal(vars_, [parse_monomial(vars_, g) for g in gens])


# -- edge ideals -------------------------------------------------------------


def test_edge_ideal_k2():
    assert edge_ideal(named_graph("k2")).gen_strings() == ["v1*v2"]


def test_edge_ideal_whiskered_k2():
    assert whiskered_edge_ideal(named_graph("k2")).gen_strings() == ["v1*v2", "v1*w1", "v2*w2"]


def test_edge_ideal_edgeless_is_zero():
    assert edge_ideal(Graph(3)).is_zero()


# -- add_squares -------------------------------------------------------------


def test_add_squares_p3():
    # exponent two on every vertex: the definition wins over the typo'd display
    got = edge_ideal_all_squares(named_graph("p3"))
    assert got.gen_strings() == ["v1^2", "v1*v2", "v2^2", "v2*v3", "v3^2"]


def test_add_squares_zero_ideal():
    base = MonomialIdeal(["x"], [])
    assert add_squares(base, ["x"]).gen_strings() == ["x^2"]


def test_add_squares_idempotent_on_overlap():
    base = ideal(["x"], "x^2")
    assert add_squares(base, ["x"]) == base


def test_add_squares_unknown_variable():
    with pytest.raises(ValueError):
        add_squares(ideal(["x"], "x^2"), ["y"])


# -- polarization ------------------------------------------------------------


def test_polarize_single_square():
    got = polarize(ideal(["x"], "x^2"))
    assert got.ambient == ("x", "x'")
    assert got.gen_strings() == ["x*x'"]


def test_polarize_squarefree_identity():
    sq = ideal(["x", "y"], "x*y")
    assert polarize(sq) == sq


def test_polarize_idempotent():
    once = polarize(ideal(["x", "y"], "x^2*y", "y^3"))
    assert polarize(once) == once


def test_polarize_cube():
    got = polarize(ideal(["x"], "x^3"))
    assert got.ambient == ("x", "x'", "x''")
    assert got.gen_strings() == ["x*x'*x''"]


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_polarized_squares_equal_whiskered_ideal(n):
    # polarize(I(G) + all squares) = I(Sigma G) under the canonical renaming
    for g in enumerate_graphs(n):
        pol = polarize(edge_ideal_all_squares(g))
        target = whiskered_edge_ideal(g)
        assert pol.nvars == target.nvars
        assert rename_ideal(pol, whisker_names(n)) == target


# -- substitution ------------------------------------------------------------


def test_substitute_whisker_collapse_k2():
    pres = presentation_of(whiskered_edge_ideal(named_graph("k2")), QQ)
    got = to_monomial_ideal(substitute(pres, {"w1": "v1", "w2": "v2"}))
    assert got.gen_strings() == ["v1^2", "v1*v2", "v2^2"]


def test_substitute_identity_map():
    pres = presentation_of(whiskered_edge_ideal(named_graph("k2")), QQ)
    assert substitute(pres, {}) == pres


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_substitute_collapse_corpus(n):
    mapping = {f"w{i}": f"v{i}" for i in range(1, n + 1)}
    for g in enumerate_graphs(n):
        pres = presentation_of(whiskered_edge_ideal(g), QQ)
        got = to_monomial_ideal(substitute(pres, mapping))
        assert got == edge_ideal_all_squares(g)


def test_substitute_cancellation():
    amb = ["x", "y"]
    pres = Presentation(amb, [parse_poly(amb, "x - y", QQ)], QQ)
    got = substitute(pres, {"y": "x"})
    assert got.gens == ()


def test_substitute_ideal_requires_known_vars():
    with pytest.raises(ValueError):
        substitute_ideal(ideal(["x"], "x^2"), {"x": "z"})


# -- fiber products ----------------------------------------------------------


def test_fiber_product_two_duals():
    ps = presentation_from_json('{"vars": ["x"], "gens": ["x^2"], "field": "q"}')
    pt = presentation_from_json('{"vars": ["y"], "gens": ["y^2"], "field": "q"}')
    fp = fiber_product_presentation(ps, pt)
    assert fp.ambient == ("x", "y")
    assert fp.gen_strings() == ["x^2", "y^2", "x*y"]


def test_fiber_product_zero_ideals():
    ps = Presentation(["x"], [], QQ)
    pt = Presentation(["y"], [], QQ)
    fp = fiber_product_presentation(ps, pt)
    assert fp.gen_strings() == ["x*y"]


def test_fiber_product_mixed():
    ps = Presentation(["x"], [parse_poly(["x"], "x^3", QQ)], QQ)
    pt = Presentation(["y", "z"], [parse_poly(["y", "z"], "y*z", QQ)], QQ)
    fp = fiber_product_presentation(ps, pt)
    assert fp.gen_strings() == ["x^3", "y*z", "x*y", "x*z"]


def test_fiber_product_generator_count():
    ps = Presentation(["x", "y"], [parse_poly(["x", "y"], s, QQ) for s in ("x^2", "y^3")], QQ)
    pt = Presentation(["u", "v", "w"], [parse_poly(["u", "v", "w"], "u*v", QQ)], QQ)
    fp = fiber_product_presentation(ps, pt)
    assert len(fp.gens) == 2 + 1 + 2 * 3


def test_fiber_product_renames_clashes():
    ps = Presentation(["x"], [parse_poly(["x"], "x^2", QQ)], QQ)
    pt = Presentation(["x"], [parse_poly(["x"], "x^3", QQ)], QQ)
    fp = fiber_product_presentation(ps, pt)
    assert fp.ambient == ("x", "x~")


# -- membership --------------------------------------------------------------


def test_contains_examples():
    i = ideal(["x", "y"], "x*y")
    assert contains(i, parse_monomial(["x", "y"], "x^2*y"))
    assert not contains(i, parse_monomial(["x", "y"], "x^2"))
    k3 = edge_ideal(named_graph("k3"))
    assert contains(k3, parse_monomial(k3.ambient, "v1*v2*v3"))


# -- decomposability ----------------------------------------------------------


def test_partition_two_duals():
    split = variable_partition_decomposable(ideal(["x", "y"], "x^2", "y^2", "x*y"))
    assert {split[0], split[1]} == {frozenset({"x"}), frozenset({"y"})}


def test_partition_kprime_p3():
    split = variable_partition_decomposable(edge_ideal_all_squares(named_graph("p3")))
    assert {split[0], split[1]} == {frozenset({"v2"}), frozenset({"v1", "v3"})}


def test_partition_connected_cross_graph():
    assert variable_partition_decomposable(ideal(["x", "y"], "x^2")) is None


def test_partition_rejects_variable_generator():
    with pytest.raises(ValueError):
        variable_partition_decomposable(MonomialIdeal(["x", "y"], [(1, 0)]))


def test_partition_star_vertex_is_first_part():
    # when the last vertex is a star vertex the returned pair isolates it
    g = named_graph("k3")
    split = variable_partition_decomposable(edge_ideal_all_squares(g))
    assert split[0] == frozenset({"v3"})


# -- presentations, parsing, elimination --------------------------------------


def test_presentation_rejects_constant_term():
    with pytest.raises(ValueError):
        Presentation(["x"], [parse_poly(["x"], "x + 1", QQ)], QQ)


def test_parse_and_format_round_trip():
    amb = ["x", "y"]
    for text in ("x^2", "x*y", "2*x + 1/2*y^3", "-x + y", "x^2 - 3*x*y"):
        p = parse_poly(amb, text, QQ)
        again = parse_poly(amb, format_poly(amb, p), QQ)
        assert p == again


def test_parse_fraction_coefficients_mod_p():
    from ringlab.fields import FieldSpec

    p = parse_poly(["x"], "1/2*x", FieldSpec.prime(5))
    ((_, coeff),) = p.terms.items()
    assert coeff == 3  # 1/2 = 3 mod 5


def test_presentation_json_round_trip():
    text = '{"vars": ["x", "y"], "gens": ["x^2", "x*y", "y^2"], "field": "q"}'
    pres = presentation_from_json(text)
    again = presentation_from_json(presentation_to_json(pres))
    assert again == pres


def test_eliminate_variables():
    amb = ["x", "y", "z"]
    pres = Presentation(amb, [parse_poly(amb, s, QQ) for s in ("x^2", "x*y", "y^2")], QQ)
    got = eliminate_variables(pres, ["z"])
    assert got.ambient == ("x", "y")
    assert len(got.gens) == 3
    withz = Presentation(amb, [parse_poly(amb, s, QQ) for s in ("x^2", "z*y")], QQ)
    got2 = eliminate_variables(withz, ["z"])
    assert got2.gen_strings() == ["x^2"]


def test_minimalization_invariant():
    i = MonomialIdeal(["x", "y"], [(1, 1), (2, 1), (0, 2)])
    assert i.gen_strings() == ["x*y", "y^2"]


def test_unit_generator_rejected():
    with pytest.raises(ValueError):
        MonomialIdeal(["x"], [(0,)])


@st.composite
def squarefree_ideals(draw):
    nv = draw(st.integers(min_value=1, max_value=5))
    names = [f"x{i}" for i in range(nv)]
    gens = draw(
        st.lists(
            st.lists(st.integers(min_value=0, max_value=1), min_size=nv, max_size=nv).filter(
                lambda e: sum(e) >= 1
            ),
            max_size=5,
        )
    )
    return MonomialIdeal(names, [tuple(g) for g in gens])


@given(squarefree_ideals())
@settings(max_examples=60, deadline=None)
def test_polarize_fixed_on_squarefree(i):
    assert polarize(i) == i
