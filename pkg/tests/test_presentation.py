import json
import random

import pytest

from _gen import rand_trace
from torelli_kit.errors import DimensionMismatch, SchemaError
from torelli_kit.families import Z_FORM, xn_family, z_fixture
from torelli_kit.linalg import IntMatrix
from torelli_kit.presentation import (CapData, LinkTrace, betti_sanity, boundary_homology,
                                      intersection_form)


def test_from_framings():
    t = LinkTrace.from_framings([0, -1], [[0, 1], [1, 0]])
    assert t.linking == IntMatrix([[0, 1], [1, -1]])
    assert t.framings == (0, -1)
    assert t.component_labels() == ("K1", "K2")
    with pytest.raises(ValueError):
        LinkTrace.from_framings([0, 0], [[3, 1], [1, 0]])


def test_rejects_asymmetric():
    with pytest.raises(ValueError):
        LinkTrace(IntMatrix([[0, 1], [0, 0]]))
    with pytest.raises(DimensionMismatch):
        LinkTrace(IntMatrix([[0]]), ("a", "b"))


def test_json_roundtrip():
    t = LinkTrace(Z_FORM, ("A", "B", "C", "D"))
    data = json.loads(json.dumps(t.to_json()))
    assert data["schema"] == "torelli-kit/1"
    assert LinkTrace.from_json(data) == t


@pytest.mark.parametrize("bad", [
    {},
    {"components": 1, "framings": [0]},
    {"components": 2, "framings": [0], "linking": [[0]]},
    {"components": 1, "framings": [1], "linking": [[0]]},
    {"components": 2, "framings": [0, 0], "linking": [[0, 1], [2, 0]]},
    {"components": 1, "framings": [0], "linking": [[0]], "schema": "other/9"},
    {"components": 1, "framings": [True], "linking": [[True]]},
])
def test_json_schema_violations(bad):
    with pytest.raises(SchemaError):
        LinkTrace.from_json(bad)


def test_cap_roundtrip():
    _, cap = z_fixture()
    again = CapData.from_json(json.loads(json.dumps(cap.to_json())))
    assert again == cap and again.boundary_generators == cap.boundary_generators
    with pytest.raises(SchemaError):
        CapData.from_json({"cap_h1_vanishes": "yes"})


def test_xn_homology():
    for n in range(1, 6):
        t, _ = xn_family(n)
        assert intersection_form(t).is_zero()
        bd = boundary_homology(t)
        assert str(bd.h1) == "Z^2"
        assert bd.h2_boundary.ncols == 2


def test_z_fixture_homology():
    t, cap = z_fixture()
    assert t.linking == IntMatrix([[0, 1, 0, 0], [1, -2, 0, 0], [0, 0, 0, 0], [0, 0, 0, 0]])
    bd = boundary_homology(t)
    assert str(bd.h1) == "Z^2"
    v1 = bd.boundary_map(cap.boundary_generators["v1"])
    v2 = bd.boundary_map(cap.boundary_generators["v2"])
    assert abs(IntMatrix([v1, v2]).det()) == 1
    image = bd.boundary_map(cap.basic_class_restriction)
    assert image == tuple(-2 * (a + b) for a, b in zip(v1, v2))


def test_lens_space_and_homology_sphere():
    assert str(boundary_homology(LinkTrace(IntMatrix([[-3]]))).h1) == "Z/3"
    assert str(boundary_homology(LinkTrace(IntMatrix([[0, 1], [1, 0]]))).h1) == "0"
    assert str(boundary_homology(LinkTrace(IntMatrix([[0]]))).h1) == "Z"


def test_betti_sanity_random():
    rng = random.Random(17)
    for _ in range(200):
        t = rand_trace(rng, rng.randint(1, 5))
        rep = betti_sanity(t)
        assert rep.consistent, rep.violations
        assert rep.b2 >= rep.b1_boundary


def test_boundary_map_kills_image_of_form():
    rng = random.Random(19)
    for _ in range(100):
        t = rand_trace(rng, rng.randint(1, 5))
        bd = boundary_homology(t)
        for col in t.linking.columns():
            assert not any(bd.boundary_map(col))
