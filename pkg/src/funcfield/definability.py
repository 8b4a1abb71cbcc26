"""Executable definability witnesses.

Four independent tools live here:

* brute-force slice enumeration of the solutions of a polynomial system
  over F_p[z] with degree-bounded unknowns, and the union of the projected
  slices as the witness degree grows (`enumerate_slice`, `slice_union`);
* zero sets of finite polynomial families over F_p (`zero_set`);
* Hermite (Ostrogradsky) reduction g = h' + r with squarefree remainder
  denominator, and the derivative test built on it (`hermite_reduce`,
  `is_derivative`);
* the square-pair test for the family "constant, or f and f+4 both
  non-squares" (`nonsquare_pair_check`), and the characteristic-p
  decomposition f = sum z^j f_j^p (`frobenius_decompose`).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .fields import PrimeField
from .poly import Poly, poly_gcd
from .ratfun import RatFun

DEFAULT_CANDIDATE_BUDGET = 2_000_000


class BudgetError(RuntimeError):
    """The slice would need more candidate tuples than the budget allows."""

    def __init__(self, required: int, budget: int):
        self.required = required
        self.budget = budget
        super().__init__(
            f"enumeration needs {required} candidate tuples "
            f"(budget {budget})")


@dataclass(frozen=True)
class DioSystem:
    """Polynomial system F_1..F_r over F_p[z] in x- and y-variables.

    Each polynomial is a sparse map from exponent vectors (length n + m,
    x-block first) to coefficients in F_p[z].
    """

    field: PrimeField
    n: int  # number of x-variables (the projected block)
    m: int  # number of y-variables (the witness block)
    polys: Tuple[Tuple[Tuple[Tuple[int, ...], Poly], ...], ...]

    def __post_init__(self):
        if self.n < 1 or self.m < 0 or not self.polys:
            raise ValueError("need n >= 1, m >= 0 and at least one equation")
        for poly in self.polys:
            for exponents, coeff in poly:
                if len(exponents) != self.n + self.m:
                    raise ValueError(
                        f"exponent vector {exponents} has wrong length")
                if coeff.field != self.field:
                    raise ValueError("coefficient field mismatch")

    @classmethod
    def from_terms(cls, p: int, n: int, m: int,
                   polys: Sequence[Sequence[Tuple[Sequence[int], Poly]]],
                   ) -> "DioSystem":
        field = PrimeField(p)
        packed = tuple(
            tuple((tuple(exponents), coeff) for exponents, coeff in poly)
            for poly in polys)
        return cls(field, n, m, packed)

    @classmethod
    def from_json(cls, data: dict) -> "DioSystem":
        from .textio import parse_poly

        field = PrimeField(int(data["p"]))
        polys = []
        for poly in data["polys"]:
            polys.append(tuple(
                (tuple(int(e) for e in term["exponents"]),
                 parse_poly(term["coeff"], field))
                for term in poly))
        return cls(field, int(data["n"]), int(data["m"]), tuple(polys))

    def to_json(self) -> dict:
        return {
            "p": self.field.p,
            "n": self.n,
            "m": self.m,
            "polys": [[{"exponents": list(exponents), "coeff": str(coeff)}
                       for exponents, coeff in poly]
                      for poly in self.polys],
        }

    def evaluate(self, assignment: Sequence[Poly]) -> List[Poly]:
        """The values of F_1..F_r at a tuple of polynomials in z."""
        values = []
        for poly in self.polys:
            total = Poly.zero(self.field)
            for exponents, coeff in poly:
                term = coeff
                for variable, exponent in zip(assignment, exponents):
                    if exponent:
                        term = term * variable ** exponent
                total = total + term
            values.append(total)
        return values


def _poly_key(p: Poly) -> Tuple[int, ...]:
    return tuple(c.v for c in p.coeffs)


def _tuple_key(polys: Tuple[Poly, ...]):
    return tuple(_poly_key(p) for p in polys)


def _all_polys(field: PrimeField, max_degree: int) -> List[Poly]:
    """All polynomials over F_p of degree <= max_degree, deterministic order."""
    out = []
    for coeffs in itertools.product(range(field.p), repeat=max_degree + 1):
        out.append(Poly(coeffs, field))
    return out


@dataclass(frozen=True)
class SliceResult:
    """Solutions of a system with deg x <= alpha, deg y <= beta."""

    alpha: int
    beta: int
    solutions: Tuple[Tuple[Tuple[Poly, ...], Tuple[Poly, ...]], ...]
    projection: Tuple[Tuple[Poly, ...], ...]
    stabilized: bool  # projection unchanged from the beta - 1 slice


def enumerate_slice(system: DioSystem, alpha: int, beta: int,
                    max_candidates: int = DEFAULT_CANDIDATE_BUDGET,
                    ) -> SliceResult:
    """Exhaustive search over all coefficient tuples of the two degree slices."""
    if alpha < 0 or beta < 0:
        raise ValueError("degree bounds must be >= 0")
    required = system.field.p ** ((alpha + 1) * system.n
                                  + (beta + 1) * system.m)
    if required > max_candidates:
        raise BudgetError(required, max_candidates)
    x_space = _all_polys(system.field, alpha)
    y_space = _all_polys(system.field, beta)
    solutions = []
    projection_keys = set()
    projection = []
    previous_keys = set()
    for xs in itertools.product(x_space, repeat=system.n):
        for ys in itertools.product(y_space, repeat=system.m):
            if any(not v.is_zero for v in system.evaluate(xs + ys)):
                continue
            solutions.append((xs, ys))
            key = _tuple_key(xs)
            if key not in projection_keys:
                projection_keys.add(key)
                projection.append(xs)
            if beta > 0 and all(y.degree <= beta - 1 for y in ys):
                previous_keys.add(key)
    stabilized = beta > 0 and previous_keys == projection_keys
    solutions.sort(key=lambda pair: (_tuple_key(pair[0]), _tuple_key(pair[1])))
    projection.sort(key=_tuple_key)
    return SliceResult(alpha, beta, tuple(solutions), tuple(projection),
                       stabilized)


@dataclass(frozen=True)
class SliceUnionResult:
    """Union of slice projections for beta = 0..beta_max."""

    alpha: int
    beta_max: int
    members: Tuple[Tuple[Poly, ...], ...]
    stabilized_at: Optional[int]  # least beta with projection(beta+1) equal


def slice_union(system: DioSystem, alpha: int, beta_max: int,
                max_candidates: int = DEFAULT_CANDIDATE_BUDGET,
                ) -> SliceUnionResult:
    if beta_max < 0:
        raise ValueError("beta_max must be >= 0")
    union: Dict[Tuple, Tuple[Poly, ...]] = {}
    previous = None
    stabilized_at = None
    for beta in range(beta_max + 1):
        result = enumerate_slice(system, alpha, beta, max_candidates)
        keys = {_tuple_key(xs) for xs in result.projection}
        for xs in result.projection:
            union.setdefault(_tuple_key(xs), xs)
        if previous is not None and stabilized_at is None and keys == previous:
            stabilized_at = beta - 1
        previous = keys
    members = tuple(sorted(union.values(), key=_tuple_key))
    return SliceUnionResult(alpha, beta_max, members, stabilized_at)


def zero_set(polys, field: Optional[PrimeField] = None) -> frozenset:
    """All a in F_p with f(a) = 0 for some f in the family.

    The zero polynomial vanishes everywhere.  The field may be omitted when
    the family is nonempty.
    """
    polys = list(polys)
    if field is None:
        if not polys:
            return frozenset()
        field = polys[0].field
    if not isinstance(field, PrimeField):
        raise ValueError("zero sets are enumerated over prime fields only")
    roots = set()
    for a in field.elements():
        for f in polys:
            if not f(a):
                roots.add(a)
                break
    return frozenset(roots)


# -- Hermite reduction and the derivative test ---------------------------


def _solve_linear(rows: List[List], rhs: List) -> List:
    """Gaussian elimination over a field; expects a unique solution."""
    size = len(rows)
    aug = [list(row) + [value] for row, value in zip(rows, rhs)]
    for col in range(size):
        pivot = next((r for r in range(col, size) if aug[r][col]), None)
        if pivot is None:
            raise ArithmeticError("singular reduction system")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [value * inv for value in aug[col]]
        for r in range(size):
            if r != col and aug[r][col]:
                factor = aug[r][col]
                aug[r] = [a - factor * b for a, b in zip(aug[r], aug[col])]
    return [aug[r][size] for r in range(size)]


def hermite_reduce(g: RatFun) -> Tuple[RatFun, RatFun]:
    """Write g = h' + r with the proper part of r over a squarefree denominator.

    Ostrogradsky's method: with den = e * s (e = gcd(den, den'), s the
    radical) and proper numerator A, solve the linear system
    A = C'*s - C*t + B*e where t = s*e'/e is a polynomial, deg C < deg e,
    deg B < deg s; then the proper part of g equals (C/e)' + B/s.  The
    polynomial part of g stays in the remainder untouched.
    """
    if g.field.characteristic != 0:
        raise ValueError("Hermite reduction requires characteristic 0")
    field = g.field
    if g.is_zero:
        return RatFun.zero(field), RatFun.zero(field)
    poly_part, proper_num = divmod(g.num, g.den)
    den = g.den
    if den.degree == 0 or proper_num.is_zero:
        return RatFun.zero(field), g
    e = poly_gcd(den, den.derivative())
    if e.degree == 0:
        return RatFun.zero(field), g
    s = den // e
    t = (s * e.derivative()) // e
    deg_e, deg_s = e.degree, s.degree
    size = deg_e + deg_s

    def column(poly: Poly) -> List:
        return [poly.coefficient(i) for i in range(size)]

    columns = []
    for j in range(deg_e):  # unknown C = sum c_j z^j
        basis = Poly([0] * j + [1], field)
        columns.append(column(basis.derivative() * s - basis * t))
    for j in range(deg_s):  # unknown B = sum b_j z^j
        basis = Poly([0] * j + [1], field)
        columns.append(column(basis * e))
    rows = [[columns[c][r] for c in range(size)] for r in range(size)]
    solution = _solve_linear(rows, column(proper_num))
    c_poly = Poly(solution[:deg_e], field)
    b_poly = Poly(solution[deg_e:], field)
    h = RatFun(c_poly, e)
    remainder = RatFun.from_poly(poly_part) + RatFun(b_poly, s)
    return h, remainder


def is_derivative(g: RatFun) -> Tuple[bool, Optional[RatFun]]:
    """Whether g = F' for a rational function F; returns (flag, certificate).

    After Hermite reduction the proper part of the remainder has a
    squarefree denominator, so it is a derivative only when it vanishes;
    the certificate integrates the polynomial part term by term.
    """
    h, remainder = hermite_reduce(g)
    poly_part, proper_num = divmod(remainder.num, remainder.den)
    if not proper_num.is_zero:
        return False, None
    field = g.field
    antiderivative_coeffs = [field.zero]
    for i, c in enumerate(poly_part.coeffs):
        antiderivative_coeffs.append(c / field.coerce(i + 1))
    certificate = h + RatFun.from_poly(Poly(antiderivative_coeffs, field))
    return True, certificate


# -- square pairs and Frobenius decomposition ----------------------------


@dataclass(frozen=True)
class SquarePairReport:
    """Membership report for "constant, or f and f+4 both non-squares"."""

    is_constant: bool
    f_is_square: bool
    shifted_is_square: bool

    @property
    def member(self) -> bool:
        return self.is_constant or (
            not self.f_is_square and not self.shifted_is_square)


def nonsquare_pair_check(f: RatFun) -> SquarePairReport:
    """Geometric square data of f and f + 4 (f != 0)."""
    if f.is_zero:
        raise ValueError("the zero function is excluded")
    return SquarePairReport(
        is_constant=f.is_constant,
        f_is_square=f.is_square("geometric").ok,
        shifted_is_square=(f + 4).is_square("geometric").ok,
    )


@dataclass(frozen=True)
class FrobeniusDecomposition:
    """f = sum_j z^j components[j]^p; in_d iff some component with j >= 1."""

    components: Tuple[RatFun, ...]
    in_d: bool


def frobenius_decompose(f: RatFun) -> FrobeniusDecomposition:
    """The unique decomposition f = sum_{j<p} z^j f_j^p over F_p(z).

    Clearing the denominator with den^(p-1) makes the denominator a p-th
    power; the numerator splits by exponent residue mod p, and p-th roots
    are taken coefficientwise (Frobenius is the identity on F_p).
    """
    field = f.field
    p = field.characteristic
    if p == 0:
        raise ValueError("Frobenius decomposition needs characteristic p")
    if f.is_zero:
        zero = RatFun.zero(field)
        return FrobeniusDecomposition((zero,) * p, False)
    den = f.den
    cleared = f.num * den ** (p - 1)
    components = []
    for j in range(p):
        root_coeffs = [cleared.coefficient(idx)
                       for idx in range(j, cleared.degree + 1, p)]
        components.append(RatFun(Poly(root_coeffs, field), den))
    in_d = any(not comp.is_zero for comp in components[1:])
    return FrobeniusDecomposition(tuple(components), in_d)
