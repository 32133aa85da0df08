"""Cox/GIT presentation of a simplicial toric variety and chart analysis.

cox_presentation turns a complete simplicial fan (primitive rays plus maximal
cones) into a weight matrix presenting the class group, with the row-HNF as
the canonical basis choice.  CoxPolynomial holds homogeneous polynomials in
the Cox coordinates with rational or parameter coefficients; chart_analysis
dehomogenizes them on each maximal cone and identifies the ambient finite
quotient through the Smith normal form of the ray submatrix.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import permutations, product
from math import gcd, prod

from .errors import CorankError, NonSimplicial, TorsionClassGroup, Unbounded
from .linalg import dot, hnf, kernel_basis, rank, snf, transpose
from .polyhedra import dual_cone, halfspaces
from .symbolic import ParamPoly, coeff_substitute


@dataclass(frozen=True)
class CoxPresentation:
    """Variable names, primitive rays (rows), maximal cones, weight matrix."""

    names: tuple
    rays: tuple
    max_cones: tuple
    weights: tuple

    @property
    def num_vars(self):
        return len(self.names)

    @property
    def class_rank(self):
        return len(self.weights)

    @property
    def variable_classes(self):
        return transpose(self.weights)

    @property
    def anticanonical(self):
        return tuple(sum(row) for row in self.weights)

    def class_of(self, var_index):
        return self.variable_classes[var_index]

    def irrelevant_generators(self):
        """Per maximal cone, the squarefree monomial on the complement rays."""
        out = []
        for cone in self.max_cones:
            out.append(
                tuple(self.names[i] for i in range(self.num_vars) if i not in cone)
            )
        return tuple(out)


def cox_presentation(rays, max_cones, names=None):
    """Weight-matrix presentation of the class group of a complete fan.

    The class group is the cokernel of the ray pairing; a free cokernel of
    rank (#rays - dim) is required, torsion is reported as an error.  The
    weight matrix is canonicalized to row Hermite normal form.
    """
    rays = tuple(tuple(r) for r in rays)
    n = len(rays)
    dim = len(rays[0])
    if names is None:
        names = tuple(f"v{i+1}" for i in range(n))
    if len(names) != n:
        raise ValueError("one name per ray required")
    if rank(rays) != dim:
        raise NonSimplicial("rays do not span the ambient lattice")
    S, U, _ = snf(rays)
    for i in range(dim):
        if S[i][i] > 1:
            raise TorsionClassGroup(
                f"class group has torsion Z/{S[i][i]}; free presentation impossible"
            )
    W = tuple(U[i] for i in range(dim, n))
    W, _ = hnf(W)
    return CoxPresentation(tuple(names), rays, tuple(tuple(c) for c in max_cones), W)


def change_class_basis(cox, table):
    """Re-express the weight matrix in a caller-chosen class-group basis.

    The table must present the same relation lattice: its row-HNF has to
    agree with the canonical one.
    """
    table = tuple(tuple(int(a) for a in row) for row in table)
    if len(table) != cox.class_rank or any(
        len(row) != cox.num_vars for row in table
    ):
        raise ValueError("basis table has the wrong shape")
    if hnf(table)[0] != hnf(cox.weights)[0]:
        raise ValueError("table spans a different class-group presentation")
    return replace(cox, weights=table)


def unstable_locus_equal(gens_a, gens_b):
    """Whether two squarefree monomial ideals cut the same coordinate locus.

    Scans all 2^n coordinate zero-patterns S and compares "every generator
    meets S" between the two generator lists.
    """
    gens_a = [frozenset(g) for g in gens_a]
    gens_b = [frozenset(g) for g in gens_b]
    vars_a = frozenset().union(*gens_a) if gens_a else frozenset()
    vars_b = frozenset().union(*gens_b) if gens_b else frozenset()
    if vars_a != vars_b:
        raise ValueError("generator lists mention different variables")
    variables = sorted(vars_a)
    for bits in product((0, 1), repeat=len(variables)):
        S = {v for v, b in zip(variables, bits) if b}
        in_a = all(g & S for g in gens_a)
        in_b = all(g & S for g in gens_b)
        if in_a != in_b:
            return False
    return True


class CoxPolynomial:
    """Polynomial in Cox coordinates; exponents >= 0, insertion order kept."""

    __slots__ = ("names", "params", "terms")

    def __init__(self, names, terms, params=()):
        object.__setattr__(self, "names", tuple(names))
        object.__setattr__(self, "params", tuple(params))
        clean = {}
        for e, c in dict(terms).items():
            e = tuple(int(k) for k in e)
            if len(e) != len(self.names):
                raise ValueError("exponent arity does not match the variables")
            if any(k < 0 for k in e):
                raise ValueError("negative exponent in a Cox polynomial")
            if c != 0:
                clean[e] = c
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *a):
        raise AttributeError("CoxPolynomial is immutable")

    def __eq__(self, other):
        if not isinstance(other, CoxPolynomial):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def class_vector(self, weights):
        """The common class W*e of all terms; mixed classes are an error."""
        cls = None
        for e in self.terms:
            c = tuple(dot(row, e) for row in weights)
            if cls is None:
                cls = c
            elif c != cls:
                raise ValueError("polynomial is not homogeneous")
        if cls is None:
            raise ValueError("zero polynomial has no class")
        return cls

    def dehomogenize(self, keep):
        """Set the variables outside ``keep`` to 1; collisions are summed."""
        keep = tuple(keep)
        out = {}
        for e, c in self.terms.items():
            key = tuple(e[i] for i in keep)
            out[key] = out[key] + c if key in out else c
        return CoxPolynomial(
            tuple(self.names[i] for i in keep), out, self.params
        )

    def specialize(self, assignments):
        return CoxPolynomial(
            self.names,
            {e: coeff_substitute(c, assignments) for e, c in self.terms.items()},
            tuple(p for p in self.params if p not in assignments),
        )

    def _monomial_str(self, e):
        factors = []
        for name, k in zip(self.names, e):
            if k == 1:
                factors.append(name)
            elif k > 1:
                factors.append(f"{name}^{k}")
        return "*".join(factors)

    def __str__(self):
        parts = []
        for e, c in self.terms.items():
            mono = self._monomial_str(e)
            if isinstance(c, ParamPoly) and not c.is_constant():
                cs = str(c)
                cs = cs if ("+" not in cs and " - " not in cs) else f"({cs})"
                parts.append(f"{cs}*{mono}" if mono else cs)
            elif not mono:
                parts.append(str(c))
            elif c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append(f"-{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ") if parts else "0"

    __repr__ = __str__


def hypersurface_from_scaffolding(s, cox):
    """The functional h cutting out the image torus, its ray pairings, and
    the binomial equation of the embedded hypersurface."""
    from .scaffolding import theta_matrix

    th = theta_matrix(s)
    ker = kernel_basis(transpose(th))
    corank = len(th) - rank(th)
    if corank != 1 or len(ker) != 1:
        raise CorankError(
            f"embedding has corank {corank}; a hypersurface needs corank 1"
        )
    h = ker[0]
    nd = s.shape.divisor_count
    lead = next((h[i] for i in range(nd) if h[i] != 0), 0)
    if lead < 0:
        h = tuple(-a for a in h)
    pairings = tuple(dot(h, ray) for ray in cox.rays)
    e_plus = tuple(max(p, 0) for p in pairings)
    e_minus = tuple(max(-p, 0) for p in pairings)
    equation = CoxPolynomial(
        cox.names, {e_plus: Fraction(1), e_minus: Fraction(-1)}
    )
    return h, pairings, equation


def _positive_functional(classes):
    """An integer functional strictly positive on every given class."""
    r = len(classes[0])
    if any(all(c == 0 for c in w) for w in classes):
        return None
    cone = dual_cone(halfspaces(r, classes))
    if cone.lineality or not cone.rays:
        return None
    phi = tuple(sum(c) for c in zip(*cone.rays))
    if all(dot(phi, w) > 0 for w in classes):
        return phi
    return None


def section_monomials(cox, cls):
    """All exponent vectors a >= 0 with W*a = cls, in ascending lex order."""
    cols = cox.variable_classes
    phi = _positive_functional(cols)
    if phi is None:
        raise Unbounded("no strictly positive functional on the variable classes")
    cls = tuple(int(c) for c in cls)
    n = len(cols)
    out = []
    acc = [0] * n

    def rec(i, rem):
        budget = dot(phi, rem)
        if budget < 0:
            return
        if i == n:
            if all(c == 0 for c in rem):
                out.append(tuple(acc))
            return
        w = cols[i]
        for a in range(budget // dot(phi, w) + 1):
            acc[i] = a
            rec(i + 1, tuple(x - a * y for x, y in zip(rem, w)))
        acc[i] = 0

    rec(0, cls)
    return tuple(out)


def deformation_family(cox, equation):
    """Extend a homogeneous equation by one parameter per missing section.

    The extra section monomials, in descending lex order, receive fresh
    parameters s1, s2, ...
    """
    cls = equation.class_vector(cox.weights)
    sections = section_monomials(cox, cls)
    extras = sorted((e for e in sections if e not in equation.terms), reverse=True)
    params = tuple(f"s{i+1}" for i in range(len(extras)))
    terms = dict(equation.terms)
    for i, e in enumerate(extras):
        terms[e] = ParamPoly.variable(params[i], params)
    return CoxPolynomial(cox.names, terms, params)


@dataclass(frozen=True)
class AbelianQuotient:
    """Finite abelian quotient acting on chart coordinates.

    ``factors`` lists (d, weights mod d) for the nontrivial cyclic factors,
    in divisibility order.
    """

    factors: tuple

    @property
    def index(self):
        return prod(d for d, _ in self.factors)

    def is_cyclic(self):
        return len(self.factors) <= 1

    def equivalent(self, other):
        """Equality up to coordinate permutation and unit weight rescaling."""
        if [d for d, _ in self.factors] != [d for d, _ in other.factors]:
            return False
        if not self.factors:
            return True
        k = len(self.factors[0][1])
        for perm in permutations(range(k)):
            ok = True
            for (d, w1), (_, w2) in zip(self.factors, other.factors):
                pw = tuple(w1[p] % d for p in perm)
                units = (u for u in range(1, d) if gcd(u, d) == 1)
                if not any(
                    all((u * pw[j]) % d == w2[j] % d for j in range(k))
                    for u in units
                ):
                    ok = False
                    break
            if ok:
                return True
        return False

    def __str__(self):
        if not self.factors:
            return "smooth"
        return " x ".join(
            f"1/{d}({','.join(str(w) for w in ws)})" for d, ws in self.factors
        )


@dataclass(frozen=True)
class ChartReport:
    cone: tuple
    names: tuple
    quotient: AbelianQuotient
    equation: CoxPolynomial
    constant_term: object
    quasi_smooth: bool


def _numeric_part(c):
    if isinstance(c, ParamPoly):
        return c.terms.get((0,) * len(c.params), Fraction(0))
    return Fraction(c)


def _quasi_smooth_flag(eq):
    """A coordinate appears as a bare linear monomial with a parameter-free
    unit coefficient, and the equation has no parameter-free constant term."""
    n = len(eq.names)
    if _numeric_part(eq.terms.get((0,) * n, Fraction(0))) != 0:
        return False
    for j in range(n):
        e = tuple(1 if i == j else 0 for i in range(n))
        c = eq.terms.get(e)
        if c is not None and _numeric_part(c) != 0:
            return True
    return False


def chart_analysis(cox, family):
    """Per maximal cone: ambient quotient, dehomogenized equation, flags."""
    dim = len(cox.rays[0])
    reports = []
    for cone in cox.max_cones:
        sub = [cox.rays[i] for i in cone]
        S, _, V = snf(transpose(sub))
        factors = []
        for i in range(dim):
            d = S[i][i]
            if d == 0:
                raise NonSimplicial(f"cone {cone} is degenerate")
            if d > 1:
                factors.append((d, tuple(V[j][i] % d for j in range(dim))))
        quotient = AbelianQuotient(tuple(factors))
        eq = family.dehomogenize(cone)
        const = eq.terms.get((0,) * dim, Fraction(0))
        reports.append(
            ChartReport(
                tuple(cone),
                eq.names,
                quotient,
                eq,
                const,
                _quasi_smooth_flag(eq),
            )
        )
    return tuple(reports)


@dataclass(frozen=True)
class FiberCheck:
    verified: bool
    witness: tuple = None


def fiber_avoidance(cox, family, forced_zero):
    """Scan zero-patterns containing ``forced_zero`` against the family.

    For each semistable pattern S the monomials supported away from S must
    number exactly one; a pattern violating that is returned as a witness.
    """
    index = {nm: i for i, nm in enumerate(cox.names)}
    unknown = set(forced_zero) - set(cox.names)
    if unknown:
        raise ValueError(f"unknown variables {sorted(unknown)}")
    forced = sorted(index[nm] for nm in forced_zero)
    free = [i for i in range(cox.num_vars) if i not in forced]
    gens = [
        frozenset(i for i in range(cox.num_vars) if i not in cone)
        for cone in cox.max_cones
    ]
    supports = [
        frozenset(i for i, k in enumerate(e) if k > 0) for e in family.terms
    ]
    for bits in product((0, 1), repeat=len(free)):
        S = frozenset(forced) | {f for f, b in zip(free, bits) if b}
        if all(g & S for g in gens):
            continue  # unstable pattern: not a point of the quotient
        surviving = sum(1 for sup in supports if not (sup & S))
        if surviving != 1:
            return FiberCheck(False, tuple(sorted(cox.names[i] for i in S)))
    return FiberCheck(True)
