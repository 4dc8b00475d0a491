"""Crystal operators, components, Demazure subsets, tau aliases."""

from __future__ import annotations

import json
import math
import random

import pytest

from crystalminor.errors import CapExceeded, ColorOutOfRange, NotTauRenderable
from crystalminor.crystal import (
    CrystalConfig,
    DemazureSpec,
    a_monomial,
    apply_e,
    apply_f,
    component,
    demazure,
    demazure_polynomial,
    ell,
    graph_to_dot,
    graph_to_json,
    kashiwara_rows,
    node_stats,
    tau_index,
    tau_render,
    tau_render_poly,
    tau_var,
)
from crystalminor.laurent import LaurentPoly, Monomial, VarId


def _m(*pairs):
    return Monomial.of(*((VarId(s, i), e) for s, i, e in pairs))


def test_ell_staircase():
    assert [ell(4, s) for s in range(5)] == [0, 4, 7, 9, 10]
    assert ell(1, 1) == 1
    with pytest.raises(ValueError):
        ell(3, 4)


def test_a_monomial_interior_and_edges():
    cfg = CrystalConfig(4)
    assert a_monomial(cfg, 0, 2) == _m((0, 2, 1), (1, 2, 1), (1, 1, -1), (0, 3, -1))
    assert a_monomial(cfg, 1, 1) == _m((1, 1, 1), (2, 1, 1), (1, 2, -1))
    assert a_monomial(cfg, 0, 4) == _m((0, 4, 1), (1, 4, 1), (1, 3, -1))
    # rank one keeps only the two same-color factors
    assert a_monomial(CrystalConfig(1), 3, 1) == _m((3, 1, 1), (4, 1, 1))
    with pytest.raises(ColorOutOfRange):
        a_monomial(cfg, 0, 5)


def test_stats_of_single_variable():
    cfg = CrystalConfig(4)
    st = node_stats(cfg, _m((-1, 3, 1)))
    assert st.weight == (0, 0, 1, 0)
    assert st.phi == (0, 0, 1, 0)
    assert st.epsilon == (0, 0, 0, 0)


def test_stats_empty_monomial():
    cfg = CrystalConfig(3)
    st = node_stats(cfg, Monomial.one())
    assert st.weight == (0, 0, 0)
    assert st.phi == (0, 0, 0)
    assert st.epsilon == (0, 0, 0)


def test_phi_includes_empty_partial_sum():
    cfg = CrystalConfig(2)
    st = node_stats(cfg, _m((0, 1, -1)))
    assert st.phi == (0, 0)
    assert st.epsilon == (1, 0)


def test_kashiwara_rows_simple():
    cfg = CrystalConfig(4)
    # inverse variable: raising acts just below its shift
    assert kashiwara_rows(cfg, _m((2, 2, -1)), 2) == (1, None)
    # plain variable: lowering acts at its shift
    assert kashiwara_rows(cfg, _m((-1, 3, 1)), 3) == (None, -1)


def test_kashiwara_rows_plateau():
    cfg = CrystalConfig(1)
    # profile +1 at 0, -1 at 1, +1 at 3, -1 at 5: partial sums 1,0,1,0
    m = _m((0, 1, 1), (1, 1, -1), (3, 1, 1), (5, 1, -1))
    raise_row, lower_row = kashiwara_rows(cfg, m, 1)
    assert lower_row == 0  # first shift attaining phi = 1
    assert raise_row == 4  # last shift where the running sum still sits at 1


def test_operator_pair_inverts():
    cfg = CrystalConfig(4)
    m = _m((-1, 3, 1))
    down = apply_f(cfg, m, 3)
    assert down is not None
    assert apply_e(cfg, down, 3) == m


def test_first_lowering_step_of_intro_seed():
    cfg = CrystalConfig(4)
    m = _m((-1, 3, 1))
    assert apply_f(cfg, m, 3) == _m((-1, 4, 1), (0, 2, 1), (0, 3, -1))
    assert apply_f(cfg, m, 1) is None
    assert apply_f(cfg, m, 2) is None
    assert apply_f(cfg, m, 4) is None


# ---------------------------------------------------------------------------
# the rank-four component with ten nodes, frozen edge by edge

INTRO_EDGES = [
    ("τ_{-2}", 3, "τ_{-1}τ_2/τ_3"),
    ("τ_{-1}τ_2/τ_3", 2, "τ_{-1}τ_5/τ_6"),
    ("τ_{-1}τ_2/τ_3", 4, "τ_2/τ_4"),
    ("τ_2/τ_4", 2, "τ_3τ_5/(τ_4τ_6)"),
    ("τ_{-1}τ_5/τ_6", 1, "τ_{-1}/τ_8"),
    ("τ_{-1}τ_5/τ_6", 4, "τ_3τ_5/(τ_4τ_6)"),
    ("τ_3τ_5/(τ_4τ_6)", 1, "τ_3/(τ_4τ_8)"),
    ("τ_3τ_5/(τ_4τ_6)", 3, "τ_5/τ_7"),
    ("τ_{-1}/τ_8", 4, "τ_3/(τ_4τ_8)"),
    ("τ_5/τ_7", 1, "τ_6/(τ_7τ_8)"),
    ("τ_3/(τ_4τ_8)", 3, "τ_6/(τ_7τ_8)"),
    ("τ_6/(τ_7τ_8)", 2, "1/τ_9"),
]


def _intro_component():
    cfg = CrystalConfig(4)
    return cfg, component(cfg, _m((-1, 3, 1)))


def test_intro_component_shape():
    cfg, g = _intro_component()
    assert g.node_count() == 10
    assert g.edge_count() == 12
    rendered = {
        (tau_render(cfg, g.nodes[a].monomial), i, tau_render(cfg, g.nodes[b].monomial))
        for a, i, b in g.edges
    }
    assert rendered == set(INTRO_EDGES)


def test_intro_component_extremes():
    cfg, g = _intro_component()
    sources = g.sources()
    sinks = g.sinks()
    assert len(sources) == 1 and len(sinks) == 1
    assert tau_render(cfg, sources[0].monomial) == "τ_{-2}"
    assert sources[0].weight == (0, 0, 1, 0)
    assert tau_render(cfg, sinks[0].monomial) == "1/τ_9"
    assert sinks[0].weight == (0, -1, 0, 0)


def test_component_fundamental_sizes():
    # the component seeded at a single variable of color d has binomial size
    for r in range(1, 6):
        cfg = CrystalConfig(r)
        for d in range(1, r + 1):
            g = component(cfg, _m((0, d, 1)))
            assert g.node_count() == math.comb(r + 1, d)


def test_component_cap():
    cfg = CrystalConfig(4)
    with pytest.raises(CapExceeded):
        component(cfg, _m((-1, 3, 1)), cap=5)


def test_component_deterministic():
    cfg = CrystalConfig(4)
    g1 = component(cfg, _m((-1, 3, 1)))
    g2 = component(cfg, _m((-1, 3, 1)))
    assert [n.monomial for n in g1.nodes] == [n.monomial for n in g2.nodes]
    assert g1.edges == g2.edges


def _crystal_axioms(cfg, g):
    """Check the defining axioms on every node of a component."""
    for node in g.nodes:
        m = node.monomial
        for i in cfg.colors():
            ii = i - 1
            # phi - epsilon is the pairing of the weight with color i
            assert node.phi[ii] - node.epsilon[ii] == node.weight[ii]
            assert node.phi[ii] >= 0 and node.epsilon[ii] >= 0
            up = apply_e(cfg, m, i)
            assert (up is None) == (node.epsilon[ii] == 0)
            if up is not None:
                st = node_stats(cfg, up)
                # weight moves by the color-i root
                for j in cfg.colors():
                    expected = 2 if j == i else (-1 if abs(j - i) == 1 else 0)
                    assert st.weight[j - 1] - node.weight[j - 1] == expected
                assert st.epsilon[ii] == node.epsilon[ii] - 1
                assert st.phi[ii] == node.phi[ii] + 1
                assert apply_f(cfg, up, i) == m
            down = apply_f(cfg, m, i)
            assert (down is None) == (node.phi[ii] == 0)
            if down is not None:
                st = node_stats(cfg, down)
                assert st.phi[ii] == node.phi[ii] - 1
                assert st.epsilon[ii] == node.epsilon[ii] + 1
                assert apply_e(cfg, down, i) == m


def test_axioms_on_intro_component():
    cfg, g = _intro_component()
    _crystal_axioms(cfg, g)


def test_axioms_on_fundamental_components():
    for r in (2, 3):
        cfg = CrystalConfig(r)
        for d in range(1, r + 1):
            _crystal_axioms(cfg, component(cfg, _m((0, d, 1))))


def test_operator_locality():
    # the acting shift only depends on the color-i part of the monomial
    rng = random.Random(808)
    cfg = CrystalConfig(3)
    for _ in range(200):
        pairs = [
            (rng.randint(-2, 2), rng.randint(1, 3), rng.randint(-2, 2))
            for _ in range(rng.randint(1, 5))
        ]
        m = _m(*pairs)
        for i in cfg.colors():
            stripped = Monomial.of(*((v, e) for v, e in m.factors if v.i == i))
            assert kashiwara_rows(cfg, m, i) == kashiwara_rows(cfg, stripped, i)


# ---------------------------------------------------------------------------
# Demazure subsets

GOLDEN_DEMAZURE = [
    "τ_2/τ_4",
    "τ_3τ_5/(τ_4τ_6)",
    "τ_5/τ_7",
    "τ_3/(τ_4τ_8)",
    "τ_6/(τ_7τ_8)",
    "1/τ_9",
]


def test_demazure_intro_golden():
    cfg = CrystalConfig(4)
    spec = DemazureSpec(word=(1, 2, 3, 4, 1, 2), sign="minus", seed=_m((2, 2, -1)))
    got = demazure(cfg, spec)
    assert len(got) == 6
    assert {tau_render(cfg, m) for m in got} == set(GOLDEN_DEMAZURE)
    poly = demazure_polynomial(cfg, spec)
    assert tau_render_poly(cfg, poly) == " + ".join(GOLDEN_DEMAZURE)


def test_demazure_empty_word():
    cfg = CrystalConfig(2)
    seed = _m((1, 2, -1))
    assert demazure(cfg, DemazureSpec((), "minus", seed)) == (seed,)


def test_demazure_rejects_bad_seed():
    cfg = CrystalConfig(2)
    with pytest.raises(ValueError):
        demazure(cfg, DemazureSpec((1,), "minus", _m((0, 1, 1))))
    with pytest.raises(ValueError):
        demazure(cfg, DemazureSpec((1,), "plus", _m((0, 1, -1))))


def test_demazure_rejects_bad_color():
    cfg = CrystalConfig(2)
    with pytest.raises(ColorOutOfRange):
        demazure(cfg, DemazureSpec((3,), "minus", _m((0, 1, -1))))


def test_demazure_plus_mirrors_minus_on_fundamental():
    # growing down from the top of a fundamental component sweeps it all
    cfg = CrystalConfig(3)
    top = _m((0, 2, 1))
    full_word = (1, 2, 3, 1, 2, 1)
    got = demazure(cfg, DemazureSpec(full_word, "plus", top))
    assert len(got) == math.comb(4, 2)
    assert set(got) == {n.monomial for n in component(cfg, top).nodes}


def test_demazure_suffix_containment():
    cfg = CrystalConfig(4)
    word = (1, 2, 3, 4, 1, 2)
    seed = _m((2, 2, -1))
    sets = []
    for j in range(len(word) + 1):
        sets.append(set(demazure(cfg, DemazureSpec(word[j:], "minus", seed))))
    for earlier, later in zip(sets[1:], sets):
        assert earlier <= later


def test_demazure_cap():
    cfg = CrystalConfig(4)
    spec = DemazureSpec((1, 2, 3, 4, 1, 2), "minus", _m((2, 2, -1)))
    with pytest.raises(CapExceeded):
        demazure(cfg, spec, cap=3)


# ---------------------------------------------------------------------------
# tau aliases and rendering


def test_tau_index_window():
    assert tau_index(4, VarId(2, 2)) == 9
    assert tau_index(4, VarId(3, 1)) == 10
    assert tau_index(4, VarId(-1, 3)) == -2
    assert tau_index(4, VarId(-1, 4)) == -1
    assert tau_index(4, VarId(0, 1)) == 1


def test_tau_index_rejects_outside_window():
    for v in (VarId(3, 2), VarId(-2, 1), VarId(4, 1), VarId(-1, 5)):
        with pytest.raises(NotTauRenderable):
            tau_index(4, v)


def test_tau_var_round_trip():
    for r in range(1, 6):
        ks = list(range(-r, 0)) + list(range(1, ell(r, r) + 1))
        for k in ks:
            assert tau_index(r, tau_var(r, k)) == k
    with pytest.raises(ValueError):
        tau_var(2, 4)
    with pytest.raises(ValueError):
        tau_var(2, -3)


def test_tau_render_forms():
    cfg = CrystalConfig(4)
    assert tau_render(cfg, _m((-1, 3, 1))) == "τ_{-2}"
    assert tau_render(cfg, _m((2, 2, -1))) == "1/τ_9"
    assert tau_render(cfg, _m((0, 3, 1), (1, 1, 1), (0, 4, -1), (1, 2, -1))) == "τ_3τ_5/(τ_4τ_6)"
    assert tau_render(cfg, _m((1, 1, 1), (1, 3, -1))) == "τ_5/τ_7"
    assert tau_render(cfg, _m((0, 1, 2), (0, 2, -2))) == "τ_1^2/τ_2^2"
    assert tau_render(cfg, Monomial.one()) == "1"


def test_tau_render_poly_uses_canonical_order():
    cfg = CrystalConfig(4)
    terms = [
        _m((0, 2, 1), (0, 4, -1)),
        _m((0, 3, 1), (1, 1, 1), (0, 4, -1), (1, 2, -1)),
        _m((1, 1, 1), (1, 3, -1)),
        _m((0, 3, 1), (0, 4, -1), (2, 1, -1)),
        _m((1, 2, 1), (1, 3, -1), (2, 1, -1)),
        _m((2, 2, -1)),
    ]
    rng = random.Random(99)
    rng.shuffle(terms)
    poly = LaurentPoly.from_terms((m, 1) for m in terms)
    assert tau_render_poly(cfg, poly) == " + ".join(GOLDEN_DEMAZURE)


# ---------------------------------------------------------------------------
# export


def test_graph_dot_contains_nodes_and_edges():
    cfg, g = _intro_component()
    dot = graph_to_dot(g)
    assert dot.startswith("digraph crystal {")
    assert '[label="τ_{-2}"];' in dot
    assert dot.count(" -> ") == 12
    # y-form export never needs aliases
    assert 'Y[-1,3]' in graph_to_dot(g, form="y")


def test_graph_json_round_trip_fields():
    _, g = _intro_component()
    data = json.loads(graph_to_json(g))
    assert data["r"] == 4
    assert len(data["nodes"]) == 10
    assert len(data["edges"]) == 12
    assert data["nodes"][0]["tau"] == "τ_{-2}"
    assert data["nodes"][0]["weight"] == [0, 0, 1, 0]
    ids = [n["id"] for n in data["nodes"]]
    assert ids == list(range(10))


def test_graph_json_null_tau_outside_window():
    cfg = CrystalConfig(2)
    g = component(cfg, _m((0, 1, 1)))
    data = json.loads(graph_to_json(g))
    assert any(n["tau"] is None for n in data["nodes"])
