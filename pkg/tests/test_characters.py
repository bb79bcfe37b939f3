"""Freudenthal characters, restriction, and branching decompositions."""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from liebranch.characters import (
    decompose,
    dominant_character,
    dominant_character_product,
    dominant_weights,
    is_multiplicity_free,
    multiplicity_of,
    restrict_collapsed,
)
from liebranch.embeddings import load_catalog
from liebranch.rootsys import LieError, ProductSystem, SimpleType, root_system

CAT = load_catalog()


def total_dimension(t, lam):
    rs = root_system(t)
    return sum(m * rs.orbit_size(mu) for mu, m in dominant_character(t, lam).items())


FREUDENTHAL_CASES = [
    (SimpleType("A", 1), (7,)),
    (SimpleType("A", 2), (1, 1)),
    (SimpleType("A", 2), (2, 2)),
    (SimpleType("A", 5), (0, 1, 0, 1, 0)),
    (SimpleType("B", 3), (1, 0, 2)),
    (SimpleType("C", 3), (0, 1, 0)),
    (SimpleType("C", 4), (0, 1, 0, 1)),
    (SimpleType("D", 4), (1, 1, 1, 1)),
    (SimpleType("D", 5), (0, 0, 0, 0, 1)),
    (SimpleType("G", 2), (0, 1)),
    (SimpleType("G", 2), (2, 1)),
    (SimpleType("F", 4), (1, 0, 0, 1)),
    (SimpleType("E", 6), (1, 0, 0, 0, 0, 1)),
    (SimpleType("E", 7), (1, 0, 0, 0, 0, 0, 0)),
]


@pytest.mark.parametrize("t,lam", FREUDENTHAL_CASES)
def test_freudenthal_total_matches_weyl_dimension(t, lam):
    assert total_dimension(t, lam) == root_system(t).weyl_dimension(lam)


@given(
    st.sampled_from([SimpleType("A", 2), SimpleType("A", 3), SimpleType("B", 2),
                     SimpleType("B", 3), SimpleType("C", 3), SimpleType("D", 4),
                     SimpleType("G", 2)]),
    st.data(),
)
@settings(max_examples=50, deadline=None)
def test_freudenthal_total_random(t, data):
    lam = tuple(
        data.draw(st.integers(0, 3), label=f"lam{j}") for j in range(t.rank)
    )
    assert total_dimension(t, lam) == root_system(t).weyl_dimension(lam)


def test_zero_weight_multiplicity_in_adjoint_is_rank():
    adjoint = {
        SimpleType("A", 2): (1, 1),
        SimpleType("B", 3): (0, 1, 0),
        SimpleType("G", 2): (0, 1),
        SimpleType("F", 4): (1, 0, 0, 0),
        SimpleType("E", 6): (0, 1, 0, 0, 0, 0),
    }
    for t, lam in adjoint.items():
        ch = dominant_character(t, lam)
        assert ch[(0,) * t.rank] == t.rank


def test_known_inner_multiplicities():
    # sp6: the 14-dimensional fundamental module has a double zero weight
    ch = dominant_character(SimpleType("C", 3), (0, 1, 0))
    assert ch[(0, 0, 0)] == 2
    # sl2 strings are multiplicity-free
    ch = dominant_character(SimpleType("A", 1), (6,))
    assert set(ch.values()) == {1}
    # minuscule modules have a single dominant class
    for t, lam in [
        (SimpleType("B", 4), (0, 0, 0, 1)),
        (SimpleType("D", 5), (0, 0, 0, 0, 1)),
        (SimpleType("E", 6), (1, 0, 0, 0, 0, 0)),
        (SimpleType("E", 7), (0, 0, 0, 0, 0, 0, 1)),
    ]:
        assert dominant_character(t, lam) == {lam: 1}


def test_dominant_weights_shape():
    rs = root_system(SimpleType("G", 2))
    wts = dominant_weights(rs, (1, 1))
    assert wts[0] == (1, 1)
    assert all(rs.is_dominant(w) for w in wts)
    keys = [rs.height_key(w) for w in wts]
    assert keys == sorted(keys, reverse=True)
    with pytest.raises(LieError):
        dominant_weights(rs, (-1, 0))


def test_character_duality():
    t = SimpleType("A", 3)
    rs = root_system(t)
    lam = (2, 0, 1)
    ch = dominant_character(t, lam)
    dual = dominant_character(t, rs.dual_weight(lam))
    assert dual == {rs.dual_weight(mu): m for mu, m in ch.items()}


def test_product_character():
    ps = ProductSystem(CAT.get("E6", "A5xA1").spec)
    ch = dominant_character_product(ps, (1, 0, 0, 0, 1, 2))
    total = sum(m * ps.orbit_size(mu) for mu, m in ch.items())
    assert total == ps.weyl_dimension((1, 0, 0, 0, 1, 2))


RESTRICTION_MASS_CASES = [
    ("G2", "A2", (1, 0)),
    ("G2", "A2", (0, 2)),
    ("F4", "B4", (1, 0, 0, 0)),
    ("E6", "F4", (0, 0, 0, 0, 0, 1)),
    ("E6", "D5xT1", (1, 0, 0, 0, 0, 0)),
    ("E7", "E6xT1", (0, 0, 0, 0, 0, 0, 1)),
]


@pytest.mark.parametrize("g,h,lam", RESTRICTION_MASS_CASES)
def test_restriction_preserves_dimension(g, h, lam):
    emb = CAT.get(g, h)
    mass = sum(restrict_collapsed(emb, lam).values())
    assert mass == root_system(emb.ambient).weyl_dimension(lam)


# (g, h, highest weight) -> {(subgroup weight, charge): multiplicity}
DECOMPOSE_GOLDENS = {
    ("G2", "A2", (1, 0)): {
        ((0, 0), 0): 1, ((1, 0), 0): 1, ((0, 1), 0): 1,
    },
    ("G2", "A2", (0, 1)): {
        ((1, 0), 0): 1, ((0, 1), 0): 1, ((1, 1), 0): 1,
    },
    ("F4", "B4", (0, 0, 0, 1)): {
        ((0, 0, 0, 0), 0): 1, ((1, 0, 0, 0), 0): 1, ((0, 0, 0, 1), 0): 1,
    },
    ("F4", "B4", (1, 0, 0, 0)): {
        ((0, 1, 0, 0), 0): 1, ((0, 0, 0, 1), 0): 1,
    },
    ("E6", "A5xA1", (1, 0, 0, 0, 0, 0)): {
        ((1, 0, 0, 0, 0, 1), 0): 1, ((0, 0, 0, 1, 0, 0), 0): 1,
    },
    ("E6", "F4", (0, 0, 0, 0, 0, 1)): {
        ((0, 0, 0, 0), 0): 1, ((0, 0, 0, 1), 0): 1,
    },
    ("E6", "F4", (0, 1, 0, 0, 0, 0)): {
        ((1, 0, 0, 0), 0): 1, ((0, 0, 0, 1), 0): 1,
    },
    ("E6", "F4", (0, 0, 0, 0, 1, 0)): {
        ((1, 0, 0, 0), 0): 1, ((0, 0, 1, 0), 0): 1, ((0, 0, 0, 1), 0): 1,
    },
    ("E6", "C4", (0, 0, 0, 0, 0, 1)): {
        ((0, 1, 0, 0), 0): 1,
    },
    ("E6", "C4", (0, 0, 0, 0, 0, 2)): {
        ((0, 0, 0, 0), 0): 1, ((0, 2, 0, 0), 0): 1, ((0, 0, 0, 1), 0): 1,
    },
    ("E6", "D5xT1", (0, 0, 0, 0, 0, 1)): {
        ((0, 0, 0, 0, 0), -4): 1, ((1, 0, 0, 0, 0), 2): 1,
        ((0, 0, 0, 0, 1), -1): 1,
    },
    ("E7", "A7", (0, 0, 0, 0, 0, 0, 1)): {
        ((0, 1, 0, 0, 0, 0, 0), 0): 1, ((0, 0, 0, 0, 0, 1, 0), 0): 1,
    },
    ("E7", "A7", (0, 0, 0, 0, 0, 0, 2)): {
        ((0, 0, 0, 0, 0, 0, 0), 0): 1, ((0, 2, 0, 0, 0, 0, 0), 0): 1,
        ((0, 0, 0, 0, 0, 2, 0), 0): 1, ((0, 1, 0, 0, 0, 1, 0), 0): 1,
        ((0, 0, 0, 1, 0, 0, 0), 0): 1,
    },
    ("E7", "D6xA1", (0, 0, 0, 0, 0, 0, 1)): {
        ((1, 0, 0, 0, 0, 0, 1), 0): 1, ((0, 0, 0, 0, 0, 1, 0), 0): 1,
    },
    ("E7", "E6xT1", (0, 0, 0, 0, 0, 0, 1)): {
        ((0, 0, 0, 0, 0, 0), 3): 1, ((0, 0, 0, 0, 0, 1), 1): 1,
        ((1, 0, 0, 0, 0, 0), -1): 1, ((0, 0, 0, 0, 0, 0), -3): 1,
    },
    ("E7", "E6xT1", (1, 0, 0, 0, 0, 0, 0)): {
        ((0, 1, 0, 0, 0, 0), 0): 1, ((1, 0, 0, 0, 0, 0), 2): 1,
        ((0, 0, 0, 0, 0, 1), -2): 1, ((0, 0, 0, 0, 0, 0), 0): 1,
    },
}


@pytest.mark.parametrize("g,h,lam", sorted(DECOMPOSE_GOLDENS))
def test_decompose_goldens(g, h, lam):
    assert decompose(CAT.get(g, h), lam) == DECOMPOSE_GOLDENS[(g, h, lam)]


DIMENSION_CONSERVATION = [
    ("G2", "A2", (2, 1)),
    ("G2", "A2", (0, 3)),
    ("F4", "B4", (0, 0, 0, 3)),
    ("F4", "B4", (1, 0, 0, 1)),
    ("E6", "A5xA1", (2, 0, 0, 0, 0, 1)),
    ("E6", "F4", (1, 0, 0, 0, 0, 1)),
    ("E6", "C4", (0, 0, 0, 0, 0, 3)),
    ("E6", "D5xT1", (1, 1, 0, 0, 0, 0)),
    ("E7", "A7", (0, 0, 0, 0, 0, 0, 3)),
    ("E7", "D6xA1", (0, 0, 0, 0, 0, 0, 2)),
    ("E7", "E6xT1", (0, 1, 0, 0, 0, 0, 0)),
    ("E7", "A1xF4", (0, 0, 0, 0, 0, 0, 2)),
]


@pytest.mark.parametrize("g,h,lam", DIMENSION_CONSERVATION)
def test_decompose_conserves_dimension(g, h, lam):
    emb = CAT.get(g, h)
    ps = ProductSystem(emb.spec)
    out = decompose(emb, lam)
    total = sum(c * ps.weyl_dimension(w) for (w, _), c in out.items())
    assert total == root_system(emb.ambient).weyl_dimension(lam)


def test_racah_matches_decompose():
    emb = CAT.get("E7", "A7")
    lam = (0, 0, 0, 0, 0, 0, 2)
    collapsed = restrict_collapsed(emb, lam)
    full = decompose(emb, lam, collapsed=collapsed)
    for w in [
        (0, 0, 0, 0, 0, 0, 0), (0, 2, 0, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0, 0),
        (1, 0, 0, 0, 0, 0, 1), (0, 1, 0, 0, 0, 1, 0),
    ]:
        assert multiplicity_of(emb, lam, w, collapsed=collapsed) == full.get((w, 0), 0)


def test_racah_charge_sectors():
    emb = CAT.get("E7", "E6xT1")
    lam = (0, 0, 0, 0, 0, 0, 1)
    collapsed = restrict_collapsed(emb, lam)
    zero = (0, 0, 0, 0, 0, 0)
    assert multiplicity_of(emb, lam, zero, charge=3, collapsed=collapsed) == 1
    assert multiplicity_of(emb, lam, zero, charge=-3, collapsed=collapsed) == 1
    assert multiplicity_of(emb, lam, zero, charge=0, collapsed=collapsed) == 0
    assert multiplicity_of(emb, lam, (0, 0, 0, 0, 0, 1), charge=1, collapsed=collapsed) == 1


def test_multiplicity_two_counterexamples():
    # the cheapest pair with genuine multiplicity: top component class
    # appears twice in the fourth power of the adjoint-type generator
    emb = CAT.get("E6", "A5xA1")
    lam = (0, 4, 0, 0, 0, 0)
    collapsed = restrict_collapsed(emb, lam)
    assert multiplicity_of(emb, lam, (0, 0, 2, 0, 0, 2), collapsed=collapsed) == 2
    # the A1 charge of a class is tied to the parity of its A5 part, so
    # an odd A1 weight over the even class cannot occur
    assert multiplicity_of(emb, lam, (0, 0, 2, 0, 0, 3), collapsed=collapsed) == 0


def test_multiplicity_free_flags():
    assert is_multiplicity_free(CAT.get("E6", "C4"), (0, 0, 0, 0, 0, 2))
    assert is_multiplicity_free(CAT.get("E7", "A7"), (0, 0, 0, 0, 0, 0, 2))
    assert not is_multiplicity_free(CAT.get("E6", "A5xA1"), (0, 4, 0, 0, 0, 0))


def test_bad_inputs():
    emb = CAT.get("G2", "A2")
    with pytest.raises(LieError):
        decompose(emb, (-1, 0))
    with pytest.raises(LieError):
        multiplicity_of(emb, (1, 0), (0, -1))
    with pytest.raises(LieError):
        decompose(CAT.get("E7", "G2xC3"), (0, 0, 0, 0, 0, 0, 1))
