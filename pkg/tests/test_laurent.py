import random
from fractions import Fraction
from itertools import combinations_with_replacement
from math import factorial

import pytest

from fanokit.errors import SchemaError
from fanokit.laurent import (
    LaurentPolynomial,
    classical_period,
    edge_binomial_skeleton,
    laurent_from_json,
    laurent_to_json,
)
from fanokit.polygon import validate_fano
from fanokit.series import PowerSeries
from fanokit.symbolic import ParamPoly

HEX = [(2, 1), (1, 2), (-1, 2), (-2, -1), (-1, -2), (1, -2)]

F_PARAMS = ("a1", "a2", "b1", "b2", "c1", "c2")
A1, A2, B1, B2, C1, C2 = (ParamPoly.variable(p, F_PARAMS) for p in F_PARAMS)


def hex_laurent():
    """The six-parameter Laurent polynomial supported on the hexagon."""
    terms = {
        (2, 1): Fraction(1),
        (1, 2): Fraction(1),
        (-1, 2): Fraction(1),
        (-2, -1): Fraction(1),
        (-1, -2): Fraction(1),
        (1, -2): Fraction(1),
        (0, 2): Fraction(2),
        (0, -2): Fraction(2),
        (1, 1): A1,
        (-1, -1): A2,
        (1, 0): B1,
        (-1, 0): B2,
        (1, -1): C1,
        (-1, 1): C2,
    }
    return LaurentPolynomial(2, F_PARAMS, terms)


def p2_laurent():
    # x + y + 1/(xy)
    return LaurentPolynomial(
        2, (), {(1, 0): Fraction(1), (0, 1): Fraction(1), (-1, -1): Fraction(1)}
    )


def constant_term_of_power(f, k):
    """Constant term of f^k via the multinomial theorem (independent oracle)."""
    monos = list(f.terms.items())
    total = Fraction(0)
    for combo in combinations_with_replacement(range(len(monos)), k):
        ex = sum(monos[i][0][0] for i in combo), sum(monos[i][0][1] for i in combo)
        if ex != (0, 0):
            continue
        mult = factorial(k)
        coeff = Fraction(1)
        run = 1
        for j, i in enumerate(combo):
            coeff *= monos[i][1]
            if j and combo[j] == combo[j - 1]:
                run += 1
            else:
                run = 1
            mult //= run
        total += mult * coeff
    return total


def test_laurent_basics():
    f = p2_laurent()
    assert f.constant_term() == 0
    g = f * f
    assert g.terms[(2, 0)] == 1
    assert g.terms[(1, 1)] == 2
    assert (0, 0) not in g.terms
    with pytest.raises(ValueError):
        LaurentPolynomial(2, (), {(1, 0, 0): 1})


def test_classical_period_p2():
    pi = classical_period(p2_laurent(), 9)
    for d in range(10):
        k, r = divmod(d, 3)
        expected = Fraction(factorial(3 * k), factorial(k) ** 3) if r == 0 else 0
        assert pi[d] == expected
    assert pi[3] == 6 and pi[6] == 90 and pi[9] == 1680


def test_classical_period_multinomial_oracle():
    rng = random.Random(20260815)
    vals = {p: Fraction(rng.randint(-3, 3)) for p in F_PARAMS}
    f = hex_laurent().specialize(vals)
    pi = classical_period(f, 5)
    for k in range(6):
        assert pi[k] == constant_term_of_power(f, k)


def test_symbolic_period_low_orders():
    pi = classical_period(hex_laurent(), 3)
    assert pi[0] == 1
    assert pi[1] == 0
    assert pi[2] == 2 * A1 * A2 + 2 * B1 * B2 + 2 * C1 * C2 + 14
    assert pi[3] == (
        6 * A1 * B1
        + 12 * A1 * C2
        + 6 * A2 * B2
        + 12 * A2 * C1
        + 24 * B1
        + 24 * B2
        + 6 * C1
        + 6 * C2
    )


def test_specialized_period_through_order_12():
    f = hex_laurent().specialize({"a1": 1, "a2": 1, "b1": 0, "b2": 0, "c1": 0, "c2": 0})
    assert f.params == ()
    pi = classical_period(f, 12)
    assert pi == PowerSeries(
        12,
        [
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
        ],
    )


def test_substitution_matches_symbolic_specialization():
    sym = classical_period(hex_laurent(), 4)
    vals = {"a1": 2, "a2": -1, "b1": 0, "b2": 3, "c1": 1, "c2": -2}
    spec = classical_period(hex_laurent().specialize(vals), 4)
    assert sym.specialize(vals) == spec


def test_period_invariant_under_unimodular_substitution():
    f = hex_laurent()
    pi = classical_period(f, 4)
    for g in [((1, 1), (0, 1)), ((0, -1), (1, 0)), ((-1, 0), (0, -1))]:
        assert classical_period(f.monomial_substitution(g), 4) == pi
    with pytest.raises(ValueError):
        f.monomial_substitution(((1, 1), (1, 1)))


def test_edge_binomial_skeleton_hexagon():
    P = validate_fano(HEX)
    skel, naming = edge_binomial_skeleton(P)
    assert len(naming) == 8
    assert (0, 0) not in skel.terms
    for v in P.vertices:
        assert skel.terms[v] == 1
    assert skel.terms[(0, 2)] == 2 and skel.terms[(0, -2)] == 2
    # lexicographic parameter naming over the interior points
    assert naming[(-1, -1)] == "p1"
    assert naming[(1, 1)] == "p8"

    # zeroing the two axis parameters and matching the rest recovers hex_laurent
    rename = {
        (1, 1): "a1",
        (-1, -1): "a2",
        (1, 0): "b1",
        (-1, 0): "b2",
        (1, -1): "c1",
        (-1, 1): "c2",
    }
    vals = {naming[(0, 1)]: 0, naming[(0, -1)]: 0}
    probe = {}
    for i, (pt, name) in enumerate(sorted(rename.items())):
        probe[pt] = Fraction(i + 2)
        vals[naming[pt]] = Fraction(i + 2)
    reduced = skel.specialize(vals)
    target = hex_laurent().specialize(
        {rename[pt]: val for pt, val in probe.items()}
    )
    assert reduced == target


def test_edge_binomial_skeleton_p2():
    P = validate_fano([(1, 0), (0, 1), (-1, -1)])
    skel, naming = edge_binomial_skeleton(P)
    assert naming == {}
    assert skel == p2_laurent()


def test_laurent_json_roundtrip():
    f = hex_laurent()
    g = laurent_from_json(laurent_to_json(f))
    assert g == f and g.params == f.params
    assert laurent_to_json(g) == laurent_to_json(f)


def test_laurent_json_errors():
    with pytest.raises(SchemaError):
        laurent_from_json({"params": []})
    with pytest.raises(SchemaError):
        laurent_from_json({"terms": [{"exp": [1, 0]}]})
    with pytest.raises(SchemaError):
        laurent_from_json({"terms": [{"exp": [1], "coeff": "1"}, {"exp": [1, 0], "coeff": "1"}]})
    with pytest.raises(SchemaError):
        laurent_from_json({"terms": []})
