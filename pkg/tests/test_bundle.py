from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from instantons.algebra.bivariate import Poly2
from instantons.algebra.laurent import LaurentZU
from instantons.bundle import (
    CanonicalBundle, ExtensionClassError, RawExtensionData, canonicalize, embed_next,
    from_curve, in_window, splits_on_neighborhood, window_monomials, window_size,
)


def zu(d):
    return LaurentZU(d)


def xy(d):
    return Poly2({k: F(v) for k, v in d.items()})


def test_canonicalize_examples():
    assert canonicalize(RawExtensionData(4, zu({(1, 6): 1, (4, 4): -1}))).p == zu({})
    raw = zu({(0, 8): 1, (2, 7): -1, (2, 5): -1, (4, 4): 1})
    assert canonicalize(RawExtensionData(4, raw)).p == zu({(2, 5): -1})
    assert canonicalize(RawExtensionData(3, zu({}))).p == zu({})
    assert canonicalize(RawExtensionData(2, zu({(1, 2): 1, (2, 2): 1}))).p == zu({(1, 2): 1})


def test_u_degree_zero_rejected():
    with pytest.raises(ExtensionClassError, match="u-degree-0"):
        canonicalize(RawExtensionData(3, zu({(1, 0): 1})))


def test_from_curve_examples():
    assert from_curve(xy({(2, 0): 1, (0, 7): -1}), 4) == CanonicalBundle(4, zu({(0, 2): 1}))
    assert from_curve(xy({(3, 0): 1, (0, 4): -1}), 4) == CanonicalBundle(4, zu({(0, 3): 1}))
    assert from_curve(xy({(5, 1): 1, (0, 4): -1}), 4).p == zu({})
    with pytest.raises(ExtensionClassError, match="origin"):
        from_curve(xy({(0, 0): 1, (1, 0): 1}), 4)


def test_embed_next_examples():
    assert embed_next(CanonicalBundle(2, zu({(1, 2): 1}))) == CanonicalBundle(3, zu({(2, 4): 1}))
    assert embed_next(CanonicalBundle(5, zu({}))) == CanonicalBundle(6, zu({}))
    b = CanonicalBundle(3, zu({(0, 2): 1, (2, 4): 1}))
    assert embed_next(b).p == zu({(1, 4): 1, (3, 6): 1})


def test_splits_on_neighborhood_examples():
    b = CanonicalBundle(4, zu({(0, 2): 1}))
    assert splits_on_neighborhood(b, 1) and not splits_on_neighborhood(b, 2)
    assert all(splits_on_neighborhood(CanonicalBundle(3, zu({})), n) for n in range(6))
    a = CanonicalBundle(2, zu({(1, 2): 1}))
    assert splits_on_neighborhood(a, 1) and not splits_on_neighborhood(a, 2)


def test_window_shape():
    for j in range(1, 7):
        mons = window_monomials(j)
        assert len(mons) == window_size(j) == (j - 1) * (2 * j - 1)
        assert all(in_window(j, l, i) for l, i in mons)
    assert window_monomials(2) == [(0, 1), (1, 1), (1, 2)]


def test_canonical_bundle_rejects_out_of_window():
    with pytest.raises(ExtensionClassError):
        CanonicalBundle(2, zu({(2, 1): 1}))


def test_transition_matrix():
    b = CanonicalBundle(2, zu({(1, 2): 1}))
    (a, p), (zero, c) = b.transition_matrix()
    assert a == zu({(2, 0): 1}) and p == b.p and not zero and c == zu({(-2, 0): 1})


@st.composite
def canonical(draw, jmin=1, jmax=6):
    j = draw(st.integers(jmin, jmax))
    coeffs = draw(st.lists(st.integers(-3, 3), min_size=window_size(j), max_size=window_size(j)))
    return CanonicalBundle(j, zu(dict(zip(window_monomials(j), coeffs))))


@st.composite
def raw_classes(draw):
    j = draw(st.integers(1, 5))
    terms = draw(st.dictionaries(
        st.tuples(st.integers(-2 * j, 2 * j), st.integers(1, 3 * j)), st.integers(-3, 3), max_size=10))
    return RawExtensionData(j, zu(terms))


@settings(max_examples=150, deadline=None)
@given(raw_classes())
def test_canonicalize_idempotent(raw):
    once = canonicalize(raw)
    assert canonicalize(once) == once
    assert all(in_window(once.j, l, i) for (l, i) in once.p.terms)


@settings(max_examples=150, deadline=None)
@given(canonical())
def test_embedding_window_closure(b):
    img = embed_next(b)
    assert canonicalize(RawExtensionData(img.j, img.p)) == img
    assert splits_on_neighborhood(img, 2)
