"""JSON-level pipeline stages shared by the CLI and the test suite.

Each run_* function takes already-parsed input JSON and returns a plain dict
that serializes deterministically: integers stay integers, every non-integer
rational is rendered as a string like "22/15", and symbolic coefficients use
their canonical string form.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product

from .cox import (
    chart_analysis,
    change_class_basis,
    cox_presentation,
    deformation_family,
    fiber_avoidance,
    hypersurface_from_scaffolding,
    section_monomials,
    unstable_locus_equal,
)
from .errors import NonSimplicial, SchemaError
from .laurent import classical_period, laurent_from_json
from .linalg import vec_sub
from .polygon import (
    barycenter,
    is_k_polystable,
    lattice_symmetries,
    normalized_volume,
    polar,
    qg_dimension,
    singularity_multiset,
    singularity_report,
    validate_fano,
)
from .quantum import quantum_period
from .scaffolding import build_qs, normal_fan, scaffolding_from_json, variable_names
from .series import first_mismatch


def _num(x):
    """JSON value for an exact number: int when integral, else 'p/q'."""
    f = Fraction(x)
    return int(f) if f.denominator == 1 else str(f)


def _series_json(ps):
    return {"order": ps.order, "coeffs": [str(c) for c in ps.coeffs]}


def run_polygon(data):
    if not isinstance(data, dict) or "vertices" not in data:
        raise SchemaError("polygon JSON needs a 'vertices' list")
    P = validate_fano(data["vertices"])
    pol = polar(P)
    multiset = singularity_multiset(P)
    return {
        "vertices": [list(v) for v in P.vertices],
        "singularities": [
            {
                "edge": r.edge,
                "quotient": str(r.quotient),
                "length": r.length,
                "height": r.height,
                "t_count": r.t_count,
                "residue": r.residue,
                "smooth": r.is_smooth,
                "t_cone": r.is_T,
                "rigid": r.is_rigid,
            }
            for r in singularity_report(P)
        ],
        "singularity_multiset": {str(q): n for q, n in multiset.items()},
        "polar": {
            "vertices": [[_num(c) for c in v] for v in pol.vertices],
            "normalized_volume": _num(normalized_volume(pol)),
            "barycenter": [_num(c) for c in barycenter(pol)],
        },
        "k_polystable": is_k_polystable(P),
        "symmetry_order": len(lattice_symmetries(P)),
        "qg_dimension": qg_dimension(P),
    }


def _cox_stage(data):
    """Scaffolding JSON -> (scaffolding, qs, fan, cox, hypersurface data)."""
    s = scaffolding_from_json(data)
    dim = s.shape.divisor_count + s.n_u_rank
    if dim > 3:
        raise SchemaError(
            f"Q_S lives in dimension {dim}; this tool supports dimension <= 3"
        )
    qs = build_qs(s)
    fan = normal_fan(qs)
    if fan.facet_rows != tuple(range(len(qs.normals))):
        raise NonSimplicial(
            "an inequality of Q_S does not define a facet; "
            "strut names cannot transfer to rays"
        )
    cox = cox_presentation(fan.rays, fan.max_cones, variable_names(s))
    basis = "canonical"
    if "class_basis" in data:
        try:
            cox = change_class_basis(cox, data["class_basis"])
        except ValueError as e:
            raise SchemaError(str(e)) from None
        basis = "input"
    h, pairings, equation = hypersurface_from_scaffolding(s, cox)
    return s, qs, fan, cox, basis, h, pairings, equation


def run_scaffold(data, check_hull=False):
    s, qs, fan, cox, basis, h, pairings, equation = _cox_stage(data)
    report = {}
    if check_hull:
        report["hull_equals_target"] = s.hull_equals_target()
    x_class = equation.class_vector(cox.weights)
    sections = section_monomials(cox, x_class)
    family = deformation_family(cox, equation)
    charts = chart_analysis(cox, family)
    report.update(
        {
            "qs": {
                "normals": [list(n) for n in qs.normals],
                "bounds": list(qs.bounds),
            },
            "fan": {
                "rays": [list(r) for r in fan.rays],
                "max_cones": [list(c) for c in fan.max_cones],
            },
            "cox": {
                "variables": list(cox.names),
                "weight_matrix": [list(row) for row in cox.weights],
                "class_basis": basis,
                "anticanonical": list(cox.anticanonical),
                "irrelevant_generators": [
                    list(g) for g in cox.irrelevant_generators()
                ],
            },
            "hypersurface": {
                "h": list(h),
                "pairings": list(pairings),
                "equation": str(equation),
                "class": list(x_class),
                "degree": list(vec_sub(cox.anticanonical, x_class)),
            },
            "sections": [list(e) for e in sections],
            "family": {"equation": str(family), "params": list(family.params)},
            "charts": [
                {
                    "cone": list(c.cone),
                    "variables": list(c.names),
                    "quotient": str(c.quotient),
                    "index": c.quotient.index,
                    "equation": str(c.equation),
                    "constant_term": str(c.constant_term),
                    "quasi_smooth": c.quasi_smooth,
                }
                for c in charts
            ],
        }
    )
    if "fiber_check" in data:
        forced = tuple(str(v) for v in data["fiber_check"])
        try:
            fc = fiber_avoidance(cox, family, forced)
        except ValueError as e:
            raise SchemaError(str(e)) from None
        report["fiber_check"] = {
            "forced_zero": list(forced),
            "verified": fc.verified,
            "witness": None if fc.witness is None else list(fc.witness),
        }
    if "irrelevant_product" in data:
        factors = [tuple(str(v) for v in f) for f in data["irrelevant_product"]]
        if not factors or any(not f for f in factors):
            raise SchemaError("irrelevant_product needs nonempty factor lists")
        gens = [frozenset(t) for t in product(*factors)]
        try:
            report["irrelevant_product_check"] = unstable_locus_equal(
                cox.irrelevant_generators(), gens
            )
        except ValueError as e:
            raise SchemaError(str(e)) from None
    return report


def _laurent_stage(data, assignments=None):
    """Input JSON (bare or composite) -> Laurent polynomial, specialized."""
    if not isinstance(data, dict):
        raise SchemaError("periods input must be a JSON object")
    sub = data.get("laurent", data)
    f = laurent_from_json(sub)
    merged = {}
    merged.update(data.get("assign", {}))
    merged.update(assignments or {})
    if merged:
        try:
            values = {str(k): Fraction(str(v)) for k, v in merged.items()}
        except ValueError as e:
            raise SchemaError(f"bad assignment value: {e}") from None
        unknown = set(values) - set(f.params)
        if unknown:
            raise SchemaError(f"assignments for unknown parameters {sorted(unknown)}")
        f = f.specialize(values)
    return f


def run_classical(data, order, symbolic=False, assignments=None):
    if order < 0:
        raise SchemaError("truncation order must be >= 0")
    f = _laurent_stage(data, assignments)
    if f.params and not symbolic:
        raise SchemaError(
            f"parameters {list(f.params)} are unassigned; "
            "pass --symbolic or assign values"
        )
    pi = classical_period(f, order)
    out = _series_json(pi)
    out["symbolic"] = bool(f.params)
    return out


def run_quantum(data, order):
    if order < 0:
        raise SchemaError("truncation order must be >= 0")
    if not isinstance(data, dict):
        raise SchemaError("periods input must be a JSON object")
    sub = data.get("scaffolding", data)
    _, _, _, cox, _, _, _, equation = _cox_stage(sub)
    G, reg = quantum_period(cox, equation.class_vector(cox.weights), order)
    return {"order": order, "period": _series_json(G), "regularized": _series_json(reg)}


def run_compare(data, order, assignments=None):
    if order < 0:
        raise SchemaError("truncation order must be >= 0")
    if not isinstance(data, dict) or "scaffolding" not in data or "laurent" not in data:
        raise SchemaError("compare needs input with 'scaffolding' and 'laurent'")
    f = _laurent_stage(data, assignments)
    if f.params:
        raise SchemaError(
            f"compare needs a fully specialized polynomial; "
            f"parameters {list(f.params)} are unassigned"
        )
    _, _, _, cox, _, _, _, equation = _cox_stage(data["scaffolding"])
    _, reg = quantum_period(cox, equation.class_vector(cox.weights), order)
    pi = classical_period(f, order)
    miss = first_mismatch(reg, pi, order)
    return {
        "order": order,
        "equal": miss is None,
        "first_mismatch": miss,
        "quantum_regularized": _series_json(reg),
        "classical": _series_json(pi),
    }
