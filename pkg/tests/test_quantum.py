from fractions import Fraction

import pytest

from fanokit.cox import (
    CoxPresentation,
    change_class_basis,
    cox_presentation,
    hypersurface_from_scaffolding,
)
from fanokit.errors import NonSimplicial, Unbounded
from fanokit.laurent import LaurentPolynomial, classical_period
from fanokit.linalg import dot
from fanokit.polyhedra import HalfspaceSystem, dual_cone, halfspaces, integer_points
from fanokit.quantum import lambda_cone, mori_and_nef, quantum_period, walls
from fanokit.scaffolding import (
    Scaffolding,
    ShapeVariety,
    Strut,
    build_qs,
    normal_fan,
    variable_names,
)
from fanokit.series import first_mismatch

FIXTURE_W = ((0, 0, 1, 1, 1, 1), (0, 1, 3, 1, 0, 6), (1, 0, 1, 3, 6, 0))

REGULARIZED = [
    1,
    0,
    16,
    0,
    936,
    520,
    76840,
    131880,
    7360920,
    22806000,
    770459256,
    3451657440,
    85553394696,
]


def hex_cox(fixture_basis=True):
    s = Scaffolding(
        ShapeVariety((1,)),
        1,
        (
            Strut("x1", (1, 1), (2,)),
            Strut("x2", (1, 1), (-2,)),
            Strut("y1", (-1, 2), (1,)),
            Strut("y2", (2, -1), (-1,)),
        ),
    )
    fan = normal_fan(build_qs(s))
    cox = cox_presentation(fan.rays, fan.max_cones, variable_names(s))
    if fixture_basis:
        cox = change_class_basis(cox, FIXTURE_W)
    return s, cox


def p2_cox():
    return cox_presentation(
        ((1, 0), (0, 1), (-1, -1)), ((0, 1), (0, 2), (1, 2)), ("x", "y", "z")
    )


def test_walls_hexagon():
    _, cox = hex_cox()
    ws = walls(cox)
    assert len(ws) == 12
    by_wall = {w.wall: w for w in ws}
    assert by_wall[(4, 5)].relation == (1, 1, 0, 0, 2, 2)
    assert by_wall[(4, 5)].curve_class == (-4, 1, 1)
    for w in ws:
        # the relation is an actual linear relation among the rays
        for j in range(3):
            assert sum(w.relation[i] * cox.rays[i][j] for i in range(6)) == 0
        # and the curve class pairs with each variable by its coefficient
        for i in range(6):
            assert dot(w.curve_class, cox.class_of(i)) == w.relation[i]


def test_walls_incomplete_fan():
    open_fan = CoxPresentation(("a", "b"), ((1, 0), (0, 1)), ((0, 1),), ())
    with pytest.raises(NonSimplicial):
        walls(open_fan)


def test_mori_and_nef_hexagon():
    _, cox = hex_cox()
    ws, mori, nef = mori_and_nef(cox)
    assert nef == ((1, 3, 3), (4, 9, 9), (5, 9, 15), (5, 15, 9))
    assert mori == ((-18, 3, 5), (-18, 5, 3), (3, -1, 0), (3, 0, -1))
    for w in ws:
        for n in nef:
            assert dot(n, w.curve_class) >= 0
    for m in mori:
        for n in nef:
            assert dot(n, m) >= 0


def test_mori_and_nef_p2():
    _, mori, nef = mori_and_nef(p2_cox())
    assert nef == ((1,),)
    assert mori == ((1,),)


def test_lambda_cone_hexagon():
    _, cox = hex_cox()
    _, _, nef = mori_and_nef(cox)
    lam = lambda_cone(cox, nef, (2, 5, 5))
    assert lam.rays == (
        (-6, 1, 3),
        (-6, 3, 1),
        (-4, 1, 1),
        (0, 0, 1),
        (0, 1, 0),
        (1, 0, 0),
    )
    # same cone as the explicit ten-inequality description
    explicit = halfspaces(
        3,
        (
            (1, 3, 3),
            (4, 9, 9),
            (5, 9, 15),
            (5, 15, 9),
            (0, 0, 1),
            (0, 1, 0),
            (1, 3, 1),
            (1, 1, 3),
            (1, 0, 6),
            (1, 6, 0),
        ),
    )
    assert set(dual_cone(explicit).rays) == set(lam.rays)
    assert lam.contains((-4, 1, 1))
    assert not lam.contains((-1, 0, 0))

    trunc = HalfspaceSystem(
        3,
        lam.system.normals + ((-2, -5, -5),),
        lam.system.bounds + (-2,),
    )
    assert integer_points(trunc) == [(-4, 1, 1), (0, 0, 0), (1, 0, 0)]

    with pytest.raises(Unbounded):
        lambda_cone(cox, nef, (0, 0, 0))


def test_quantum_period_hexagon():
    _, cox = hex_cox()
    G, reg = quantum_period(cox, (2, 6, 6), 12)
    assert G.coeffs[0] == 1 and G.coeffs[1] == 0
    assert G.coeffs[2] == 8
    assert G.coeffs[4] == 39
    assert G.coeffs[5] == Fraction(13, 3)
    assert G.coeffs[12] == Fraction(5143903, 28800)
    assert list(reg.coeffs) == REGULARIZED


def test_quantum_period_basis_independent():
    s, cox = hex_cox()
    _, _, eq = hypersurface_from_scaffolding(s, cox)
    s0, cox0 = hex_cox(fixture_basis=False)
    _, _, eq0 = hypersurface_from_scaffolding(s0, cox0)
    _, reg = quantum_period(cox, eq.class_vector(cox.weights), 8)
    _, reg0 = quantum_period(cox0, eq0.class_vector(cox0.weights), 8)
    assert reg.coeffs == reg0.coeffs


def test_quantum_period_truncation_and_errors():
    _, cox = hex_cox()
    G, reg = quantum_period(cox, (2, 6, 6), 0)
    assert list(G.coeffs) == [1] and list(reg.coeffs) == [1]
    with pytest.raises(ValueError):
        quantum_period(cox, (2, 6, 6), -1)
    with pytest.raises(Unbounded):
        quantum_period(cox, (-1, 0, 0), 4)


def test_quantum_period_p2_matches_mirror():
    _, reg = quantum_period(p2_cox(), (0,), 9)
    assert list(reg.coeffs) == [1, 0, 0, 6, 0, 0, 90, 0, 0, 1680]
    f = LaurentPolynomial(
        2,
        (),
        {(1, 0): Fraction(1), (0, 1): Fraction(1), (-1, -1): Fraction(1)},
    )
    assert first_mismatch(reg, classical_period(f, 9), 9) is None
