import json

import pytest
from hypothesis import given, strategies as st

from floorgw.diagram import (
    Color,
    FloorDiagram,
    MultiplicityVector,
    Template,
    canonical_serializations,
    derived_data,
    divergence,
    from_dict,
    from_json,
    multiplicity,
    to_dict,
    validate,
)
from floorgw.enumeration import EnumerationQuery, enumerate_diagrams
from floorgw.verify import genus_one_example

B, G, W = Color.BLACK, Color.GRAY, Color.WHITE


def test_genus_one_example_clauses():
    d = genus_one_example()
    assert validate(d, 2).ok
    assert validate(d, 1).clause == "black-divergence"
    assert multiplicity(d) == 6
    assert derived_data(d).genus == 1


def test_round_trip():
    d = genus_one_example()
    assert from_dict(to_dict(d)) == d
    assert from_json(d.to_json()) == d
    assert json.loads(d.to_json()) == to_dict(d)


def test_disconnected_diagram_rejected():
    t = Template([B, B], [None, None], gray_edges=[], whitec_edges=[], x=(-1, 1),
                 l_attach=(0,), r_attach=(1,))
    d = FloorDiagram.from_gray_weights(t, ())
    assert validate(d, 0).clause == "connectivity"


def test_white_on_wrong_side_rejected():
    t = Template([B, W], [None, -1], gray_edges=[], whitec_edges=[0], x=(), l_attach=(), r_attach=())
    assert validate(FloorDiagram.from_gray_weights(t, ()), 1).clause == "direction"


def test_gray_divergence_clause():
    t = Template([B, G, B], [None, None, None], gray_edges=[(0, 2)], whitec_edges=[],
                 x=(-1, 1), l_attach=(0,), r_attach=(2,))
    d = FloorDiagram.from_gray_weights(t, (1,))
    weights = list(d.weights)
    ids = [e.id for e in t.edges()]
    weights[ids.index("G1+")] = 2
    bad = FloorDiagram(t, tuple(weights))
    assert validate(bad, 0).clause == "gray-divergence"


def test_template_shape_errors():
    with pytest.raises(ValueError):
        Template([B, W], [None, None], gray_edges=[], whitec_edges=[0])
    with pytest.raises(ValueError):
        Template([B, G], [None, None], gray_edges=[], whitec_edges=[])
    with pytest.raises(ValueError):
        Template([B], [None], gray_edges=[], whitec_edges=[], x=(-1,), l_attach=(3,))


def test_multiplicity_vector_compact():
    mv = MultiplicityVector.from_divergences((-2, -2, -1, 1), (-1, 2, -3, 1, -1))
    assert mv.compact() == "12,201,1,11"
    assert mv.b == 4 and mv.negative_total == 10


@given(st.lists(st.integers(-5, 5).filter(bool), max_size=5),
       st.lists(st.integers(-5, 5).filter(bool), max_size=5))
def test_multiplicity_vector_counts(x, y):
    mv = MultiplicityVector.from_divergences(x, y)
    assert mv.b == sum(v for v in x + y if v > 0)
    assert mv.negative_total == -sum(v for v in x + y if v < 0)
    assert sorted(mv.left_right_sequence()) == sorted(x)
    assert sorted(mv.white_divergences()) == sorted(y)
    assert MultiplicityVector.from_sparse(*mv.sparse().values()) == mv


@pytest.mark.parametrize("q", [
    EnumerationQuery(2, 0, 1, (-1, 3), (-4,)),
    EnumerationQuery(2, 1, 1, (-2, 1), (-1,)),
    EnumerationQuery(3, 0, 1, (-2,), (-1, 1, -1)),
])
def test_every_enumerated_diagram_is_valid(q):
    seen = 0
    for d, m in enumerate_diagrams(q):
        seen += 1
        assert validate(d, q.k).ok
        assert m == multiplicity(d)
        assert all(divergence(d, ("C", p)) == q.k for p in d.template.positions(Color.BLACK))
        assert derived_data(d).genus == q.g
    assert seen > 0


def test_canonical_serializations_counts_duplicates():
    d = genus_one_example()
    c = canonical_serializations([d, d])
    assert list(c.values()) == [2]
