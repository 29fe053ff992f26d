from fractions import Fraction as F

import pytest

from instantons.algebra.bivariate import Poly2
from instantons.algebra.tower import TowerError
from instantons.cli.parser import parse_curve
from instantons import curves
from instantons.curves import (
    SingularityError, curve_invariants, delta_and_branches, jet_colength,
    milnor_tjurina, multiplicity, reducedness_check,
)


def xy(d):
    return Poly2({k: F(v) for k, v in d.items()})


CORPUS = {
    "x^5*y - y^4": (9, 17, 17, 2),
    "x^8 - x^5*y^2 - x^3*y^2 + y^4": (9, 17, 15, 2),
    "x^2 - y^7": (3, 6, 6, 1),
    "x^3 - y^4": (3, 6, 6, 1),
    "x*y": (1, 1, 1, 2),
    "x^2 - y^3": (1, 2, 2, 1),
    "x^2 - y^5": (2, 4, 4, 1),
}


def test_multiplicity_examples():
    assert multiplicity(parse_curve("x^2 - y^7")) == 2
    assert multiplicity(parse_curve("x^5*y - y^4")) == 4
    assert multiplicity(parse_curve("x*y")) == 2
    with pytest.raises(SingularityError):
        multiplicity(Poly2())


def test_jet_colength_examples():
    assert jet_colength([xy({(1, 0): 2}), xy({(0, 6): -7})]) == 6
    assert jet_colength([xy({(1, 0): 1}), xy({(0, 1): 1})]) == 1
    assert jet_colength([xy({(0, 0): 1})]) == 0
    with pytest.raises(SingularityError, match="non-isolated"):
        jet_colength([xy({(1, 0): 1}), xy({(2, 0): 1})], 12)


def test_milnor_tjurina_examples():
    assert milnor_tjurina(parse_curve("x^5*y - y^4")) == (17, 17)
    assert milnor_tjurina(parse_curve("x^8 - x^5*y^2 - x^3*y^2 + y^4")) == (17, 15)
    assert milnor_tjurina(parse_curve("x^3 - y^4")) == (6, 6)


def test_delta_examples():
    assert delta_and_branches(parse_curve("x^5*y - y^4"))[:2] == (9, 2)
    assert delta_and_branches(parse_curve("x*y"))[:2] == (1, 2)
    assert delta_and_branches(parse_curve("x^2 - y^7"))[:2] == (3, 1)


def test_resolution_of_table_curve():
    _, _, tree = delta_and_branches(parse_curve("x^5*y - y^4"))
    seq = tree.multiplicity_sequence()
    assert [(d, m) for d, m, _ in seq if m > 1] == [(0, 4), (1, 3)]


def test_reducedness_examples():
    assert not reducedness_check(parse_curve("x^2*y"))
    assert reducedness_check(parse_curve("x*y"))
    assert not reducedness_check(parse_curve("x^4 - 2*x^2*y^3 + y^6"))
    with pytest.raises(SingularityError, match="not reduced"):
        delta_and_branches(parse_curve("x^4 - 2*x^2*y^3 + y^6"))


@pytest.mark.parametrize("text", sorted(CORPUS))
def test_corpus_invariants_and_milnor_relation(text):
    inv = curve_invariants(parse_curve(text))
    assert (inv.delta, inv.milnor, inv.tjurina, inv.branches) == CORPUS[text]
    assert inv.consistent and inv.tjurina <= inv.milnor


@pytest.mark.parametrize("text", sorted(CORPUS))
def test_swap_invariance(text):
    g = parse_curve(text)
    assert delta_and_branches(g)[:2] == delta_and_branches(g.swap())[:2]


@pytest.mark.parametrize("n,m", [(2, 3), (2, 7), (3, 4), (2, 5)])
def test_quasi_homogeneous_tau_equals_mu(n, m):
    mu, tau = milnor_tjurina(xy({(0, n): 1, (m, 0): -1}))
    assert mu == tau == (n - 1) * (m - 1)


IRRATIONAL = [
    "x^2 + y^2",
    "x^2 - 2*y^2",
    "x^4 - x^2*y^2 - 2*y^4 + x^5",
    "y^3 - 2*x^3 + x^4",
    "x^5 - 5*x^3*y^2 + 6*x*y^4 + y^6",
    "x^4 - 2*x^2*y^2 + y^4 + x^6 + x^5*y",
    "x^5 - 2*x^3*y^2 + x*y^4 + x^4*y - 2*x^2*y^3 + y^5 + x^7",
]


@pytest.mark.parametrize("text", IRRATIONAL)
def test_towers_keep_milnor_relation(text):
    inv = curve_invariants(parse_curve(text))
    assert inv.consistent


def test_reducible_tangent_cone_splits_orbit():
    # tangent cone (y-x)^2 (y+x)^2 is handled as one orbit of degree 2, then
    # splits when the two points turn out to behave differently
    _, r, tree = delta_and_branches(parse_curve("x^4 - 2*x^2*y^2 + y^4 + x^6 + x^5*y"))
    depth_one = [n for n in tree.nodes() if n.depth == 1]
    assert sorted(n.orbit_degree for n in depth_one) == [1, 1]
    assert r == 4


def test_tower_nesting_limit(monkeypatch):
    monkeypatch.setattr(curves, "MAX_TOWER", 0)
    with pytest.raises(TowerError, match="unsupported field tower"):
        delta_and_branches(parse_curve("x^2 - 2*y^2"))
