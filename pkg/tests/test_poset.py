import json

import pytest

from polyquilt.poset import FacePoset, PosetError, face_poset_from_json


def pentagon():
    """Face poset of a convex pentagon: 5 vertices, 5 edges, 1 top cell."""
    elements = [(i, 0, f"v{i}") for i in range(5)]
    elements += [(5 + i, 1, f"e{i}") for i in range(5)]
    elements += [(10, 2, "P")]
    covers = []
    for i in range(5):
        covers.append((i, 5 + i))
        covers.append(((i + 1) % 5, 5 + i))
        covers.append((5 + i, 10))
    return FacePoset(elements, covers)


def point():
    return FacePoset([(0, 0, "pt")], [])


def interval():
    return FacePoset(
        [(0, 0, "a"), (1, 0, "b"), (2, 1, "ab")], [(0, 2), (1, 2)]
    )


def test_f_vector_and_euler():
    assert pentagon().f_vector() == (5, 5, 1)
    assert pentagon().euler_characteristic() == 1
    assert point().f_vector() == (1,)
    assert point().euler_characteristic() == 1
    assert interval().f_vector() == (2, 1)
    assert interval().euler_characteristic() == 1


def test_abstract_polytope_pentagon():
    rep = pentagon().check_abstract_polytope()
    assert rep == {"graded": True, "diamond": True, "flag_connected": True}


def test_abstract_polytope_point():
    rep = point().check_abstract_polytope()
    assert rep == {"graded": True, "diamond": True, "flag_connected": True}


def test_diamond_fails_after_cover_deletion():
    p = pentagon()
    covers = [c for c in p.covers if c != (0, 5)]
    broken = FacePoset([(f.id, f.dim, f.payload) for f in p.faces], covers)
    assert broken.check_diamond() is False


def test_malformed_cover_reported():
    with pytest.raises(PosetError, match=r"\(0,2\)"):
        FacePoset([(0, 0, "a"), (1, 1, "b"), (2, 2, "c")], [(0, 2)])
    with pytest.raises(PosetError, match="unknown face"):
        FacePoset([(0, 0, "a"), (1, 1, "b")], [(0, 7)])


def test_unique_top_required():
    with pytest.raises(PosetError, match="unique maximal"):
        FacePoset([(0, 0, "a"), (1, 0, "b")], [])


def test_order_and_below():
    p = pentagon()
    assert p.leq(0, 5)
    assert p.leq(0, 10)
    assert not p.leq(0, 6)  # vertex 0 is not on edge e1 = {v1,v2}
    assert p.below(5) == [0, 1, 5]


def test_export_point_and_interval():
    dot = point().export_hasse("dot").decode()
    assert dot.count("[label=") == 1
    assert "->" not in dot
    dot = interval().export_hasse("dot").decode()
    assert dot.count("[label=") == 3
    assert dot.count("->") == 2


def test_export_pentagon_counts():
    # 11 nodes; cover edges: 5 vertex-edge incidences x2 plus 5 edge-top
    dot = pentagon().export_hasse("dot").decode()
    assert dot.count("[label=") == 11
    assert dot.count("->") == 15


def test_json_roundtrip_deterministic():
    p = pentagon()
    blob1 = p.export_hasse("json")
    blob2 = p.export_hasse("json")
    assert blob1 == blob2
    q = face_poset_from_json(json.loads(blob1.decode()))
    assert q.f_vector() == p.f_vector()
    assert q.covers == p.covers


def test_flags_pentagon():
    fl = pentagon().flags()
    assert len(fl) == 10  # 5 edges x 2 endpoints
    assert all(len(f) == 3 for f in fl)
