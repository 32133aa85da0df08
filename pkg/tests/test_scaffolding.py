import pytest

from fanokit.errors import NonSimplicial, SchemaError, Unbounded
from fanokit.polyhedra import halfspaces, vertices
from fanokit.scaffolding import (
    Scaffolding,
    ShapeVariety,
    Strut,
    build_qs,
    normal_fan,
    scaffolding_from_json,
    theta_matrix,
    variable_names,
)

HEX = [(2, 1), (1, 2), (-1, 2), (-2, -1), (-1, -2), (1, -2)]

QS_NORMALS = (
    (-1, -1, 2),
    (-1, -1, -2),
    (1, -2, 1),
    (-2, 1, -1),
    (1, 0, 0),
    (0, 1, 0),
)

CONES = (
    (0, 1, 2),
    (0, 1, 3),
    (0, 2, 4),
    (0, 3, 5),
    (0, 4, 5),
    (1, 2, 4),
    (1, 3, 5),
    (1, 4, 5),
)


def hex_scaffolding(target=HEX):
    shape = ShapeVariety((1,))
    struts = (
        Strut("x1", (1, 1), (2,)),
        Strut("x2", (1, 1), (-2,)),
        Strut("y1", (-1, 2), (1,)),
        Strut("y2", (2, -1), (-1,)),
    )
    return Scaffolding(shape, 1, struts, target)


def square_scaffolding():
    shape = ShapeVariety((1,))
    struts = (
        Strut("x1", (1, 1), (1,)),
        Strut("x2", (1, 1), (-1,)),
    )
    square = [(1, 1), (-1, 1), (-1, -1), (1, -1)]
    return Scaffolding(shape, 1, struts, square)


def test_shape_variety_basics():
    z = ShapeVariety((1,))
    assert z.nbar_rank == 1 and z.divisor_count == 2 and z.picard_rank == 1
    assert z.ray_map() == ((1,), (-1,))
    assert z.degrees((1, 1)) == (2,)
    assert sorted(z.moment_vertices((1, 1))) == [(-1,), (1,)]
    assert sorted(z.moment_vertices((-1, 2))) == [(1,), (2,)]

    p2 = ShapeVariety((2,))
    assert p2.ray_map() == ((1, 0), (0, 1), (-1, -1))
    assert sorted(p2.moment_vertices((1, 0, 0))) == [(-1, 0), (-1, 1), (0, 0)]
    with pytest.raises(SchemaError):
        ShapeVariety(())
    with pytest.raises(SchemaError):
        z.moment_vertices((-2, 1))

    both = ShapeVariety((1, 2))
    assert both.divisor_count == 5
    assert both.ray_map() == (
        (1, 0, 0),
        (-1, 0, 0),
        (0, 1, 0),
        (0, 0, 1),
        (0, -1, -1),
    )
    assert len(both.moment_vertices((1, 1, 1, 0, 0))) == 6


def test_strut_validation():
    shape = ShapeVariety((1,))
    with pytest.raises(SchemaError):
        Scaffolding(shape, 1, (Strut("a", (1,), (0,)),))
    with pytest.raises(SchemaError):
        Scaffolding(shape, 1, (Strut("a", (1, 1), ()),))
    with pytest.raises(SchemaError):
        Scaffolding(shape, 1, (Strut("a", (-2, 1), (0,)),))  # not nef
    with pytest.raises(SchemaError):
        Scaffolding(
            shape, 1, (Strut("a", (1, 1), (0,)), Strut("a", (1, 1), (1,)))
        )


def test_build_qs_hexagon():
    qs = build_qs(hex_scaffolding())
    assert qs.dim == 3
    assert qs.normals == QS_NORMALS
    assert qs.bounds == (-1, -1, -1, -1, 0, 0)
    assert len(vertices(qs)) == 8


def test_build_qs_errors_and_square():
    shape = ShapeVariety((1,))
    with pytest.raises(SchemaError):
        build_qs(Scaffolding(shape, 1, ()))
    qs = build_qs(square_scaffolding())
    assert len(qs.normals) == 4
    assert qs.normals == ((-1, -1, 1), (-1, -1, -1), (1, 0, 0), (0, 1, 0))


def test_hull_checks():
    assert hex_scaffolding().hull_equals_target()
    assert square_scaffolding().hull_equals_target()
    assert not hex_scaffolding(target=[(1, 0), (0, 1), (-1, -1)]).hull_equals_target()
    with pytest.raises(SchemaError):
        hex_scaffolding(target=None).hull_equals_target()


def test_normal_fan_hexagon():
    fan = normal_fan(build_qs(hex_scaffolding()))
    assert fan.rays == QS_NORMALS
    assert fan.max_cones == CONES
    assert fan.facet_rows == (0, 1, 2, 3, 4, 5)


def test_normal_fan_cube():
    cube = halfspaces(
        3,
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
        [-1] * 6,
    )
    fan = normal_fan(cube)
    assert len(fan.rays) == 6
    assert len(fan.max_cones) == 8
    for cone in fan.max_cones:
        assert len(cone) == 3


def test_normal_fan_errors():
    # square pyramid: apex meets four facets
    pyramid = halfspaces(
        3,
        [(0, 0, 1), (1, 0, -1), (-1, 0, -1), (0, 1, -1), (0, -1, -1)],
        [0, -1, -1, -1, -1],
    )
    with pytest.raises(NonSimplicial):
        normal_fan(pyramid)
    with pytest.raises(Unbounded):
        normal_fan(halfspaces(2, [(1, 0), (0, 1)], [0, 0]))
    # flat region: not full-dimensional
    flat = halfspaces(2, [(1, 0), (-1, 0), (0, 1), (0, -1)], [0, 0, -1, -1])
    with pytest.raises(NonSimplicial):
        normal_fan(flat)


def test_redundant_inequality_dropped():
    square = halfspaces(
        2,
        [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1)],
        [-1, -1, -1, -1, -3],
    )
    fan = normal_fan(square)
    assert fan.facet_rows == (0, 1, 2, 3)
    assert len(fan.max_cones) == 4


def test_theta_matrix():
    th = theta_matrix(hex_scaffolding())
    assert th == ((1, 0), (-1, 0), (0, 1))


def test_variable_names():
    assert variable_names(hex_scaffolding()) == ("x1", "x2", "y1", "y2", "z1", "z2")


def test_scaffolding_json():
    data = {
        "shape": {"projective_dims": [1]},
        "n_u_rank": 1,
        "struts": [
            {"name": "x1", "divisor": [1, 1], "chi": [2]},
            {"name": "x2", "divisor": [1, 1], "chi": [-2]},
            {"name": "y1", "divisor": [-1, 2], "chi": [1]},
            {"name": "y2", "divisor": [2, -1], "chi": [-1]},
        ],
        "target": HEX,
    }
    s = scaffolding_from_json(data)
    assert s == hex_scaffolding()
    assert build_qs(s).normals == QS_NORMALS

    for broken in [
        {},
        {"shape": {}, "n_u_rank": 1, "struts": data["struts"]},
        {"shape": {"projective_dims": [1]}, "struts": data["struts"]},
        {"shape": {"projective_dims": [1]}, "n_u_rank": 1, "struts": []},
        {
            "shape": {"projective_dims": [1]},
            "n_u_rank": 1,
            "struts": [{"name": "x1", "divisor": [1, 1]}],
        },
    ]:
        with pytest.raises(SchemaError):
            scaffolding_from_json(broken)
