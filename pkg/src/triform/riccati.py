"""The Riccati equation attached to a Schwarzian coefficient R and an exact
oracle for its rational solutions.

Conventions.  The Riccati equation is

    du/dy + u^2 + (1/2) R(y) = 0,

and u solves it iff u = v'/v for a nonzero solution of the companion linear
equation v'' + (1/2) R v = 0.

The oracle finds every rational solution u by local analysis (the rational
branch of Kovacic's algorithm).  A rational u can only have simple poles;
at a pole c its residue e must satisfy the indicial equation

    e^2 - e + kappa_c = 0,        kappa_c = coefficient of (y-c)^{-2} in (1/2)R,

and the behavior at infinity fixes the degree d = e_inf - sum(e_c) of an
auxiliary monic polynomial P with

    P'' + 2*theta*P' + (theta' + theta^2 + (1/2)R) P = 0,
    theta = sum of e_c/(y - c);

each success gives u = theta + P'/P, verified by exact substitution before
it is returned.  When the linear system for P is underdetermined the
solutions form a family with movable constants; the family is recorded in
the search certificate and representatives are not enumerated.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .kimura import KimuraVerdict, decide_condition_ric
from .polynomials import (
    NEG_INF,
    NotSplitOverRationals,
    Poly,
    RatFunc,
    linear_factorization,
)
from .scalars import Q, rational_sqrt
from .schwarzian import TriangleParams, build_triangular_R


class NonRationalPoles(ValueError):
    """The coefficient function has a pole not defined over Q."""


class UnsupportedAtInfinity(ValueError):
    """(1/2)R grows at infinity; the local-exponent method does not apply."""


@dataclass(frozen=True)
class RiccatiEq:
    """du/dy + u^2 + (1/2) R(y) = 0, determined by R."""

    R: RatFunc

    @property
    def half_R(self) -> RatFunc:
        return self.R.scale(Q(1, 2))

    def residual(self, u: RatFunc) -> RatFunc:
        return u.derivative() + u * u + self.half_R

    def is_solution(self, u: RatFunc) -> bool:
        return self.residual(u).is_zero

    def render(self) -> str:
        return f"du/dy + u^2 + ({self.half_R.render('y')}) = 0"

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class LinearODE2:
    """v'' + r(y) v = 0 in normalized form (no first-order term)."""

    r: RatFunc

    def residual(self, v: RatFunc) -> RatFunc:
        return v.derivative().derivative() + self.r * v

    def render(self) -> str:
        return f"v'' + ({self.r.render('y')}) * v = 0"

    def __str__(self) -> str:
        return self.render()


def associate_riccati(R: RatFunc) -> RiccatiEq:
    return RiccatiEq(R)


def to_linear_ode(e: RiccatiEq) -> LinearODE2:
    """u solves the Riccati equation iff u = v'/v, v a nonzero solution."""
    return LinearODE2(e.half_R)


def half_riccati_residual(a: RatFunc, R: RatFunc) -> RatFunc:
    """Residual of da/dy + (1/2)a^2 + R = 0; a solves this iff a/2 solves
    the Riccati equation with coefficient (1/2)R."""
    return a.derivative() + (a * a).scale(Q(1, 2)) + R


@dataclass(frozen=True)
class PoleData:
    pole: object  # Q
    order: int
    kappa: object  # Q: coefficient of (y-pole)^{-2} in (1/2)R
    exponents: Tuple  # rational indicial roots (may be empty if irrational)


@dataclass
class SearchCertificate:
    """Audit trail of the local-exponent enumeration."""

    poles: List[PoleData] = field(default_factory=list)
    kappa_inf: Optional[object] = None
    exponents_inf: Tuple = ()
    combos: List[dict] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    families: List[str] = field(default_factory=list)

    def note(self, text: str) -> None:
        self.notes.append(text)


@dataclass(frozen=True)
class OracleResult:
    solutions: Tuple[RatFunc, ...]
    certificate: SearchCertificate

    @property
    def found(self) -> bool:
        return bool(self.solutions)


def _indicial_roots(kappa) -> Optional[Tuple]:
    """Rational roots of e^2 - e + kappa = 0, descending, or None."""
    disc = 1 - 4 * kappa
    s = rational_sqrt(disc)
    if s is None:
        return None
    hi = (1 + s) / 2
    lo = (1 - s) / 2
    return (hi,) if hi == lo else (hi, lo)


def _order2_coefficient(r: RatFunc, pole, order: int):
    """Coefficient of (y-pole)^{-2} in r, given the pole's exact order <= 2."""
    if order < 2:
        return Q(0)
    lin = Poly.linear(pole)
    rest = (r.den // lin) // lin  # exact: (y-pole)^2 divides the denominator
    return r.num(pole) / rest(pole)


def _solve_monic_polynomial(d: int, A: RatFunc, B: RatFunc):
    """Monic P of degree d with P'' + A P' + B P = 0.

    Returns ("unique", P), ("family", P0, dim) with P0 one member, or
    ("none", None).
    """
    # clear denominators: D P'' + (D A) P' + (D B) P = 0 with D the lcm
    g = A.den.gcd(B.den)
    D = A.den * (B.den // g)
    DA = A.num * (D // A.den)
    DB = B.num * (D // B.den)

    basis: List[Poly] = []
    y = Poly.variable()
    mono = Poly.one()
    for i in range(d + 1):
        first = mono.derivative()
        second = first.derivative()
        basis.append(D * second + DA * first + DB * mono)
        mono = mono * y

    maxdeg = max((p.degree for p in basis if not p.is_zero), default=-1)
    if maxdeg < 0:
        # operator kills every monomial: any monic P of degree d works
        if d == 0:
            return ("unique", Poly.one())
        return ("family", Poly.variable() ** d, d)
    nrows = int(maxdeg) + 1
    # unknowns: p_0..p_{d-1}; RHS from the monic leading term
    rows = [[basis[i].coeff(k) for i in range(d)] for k in range(nrows)]
    rhs = [-basis[d].coeff(k) for k in range(nrows)]
    status, sol, nullity = _gauss_solve(rows, rhs, d)
    if status == "none":
        return ("none", None)
    P = Poly(list(sol) + [Q(1)])
    return ("unique", P) if nullity == 0 else ("family", P, nullity)


def _gauss_solve(rows: List[List], rhs: List, ncols: int):
    """Exact Gaussian elimination for rows * x = rhs.

    Returns (status, solution, nullity); free variables are set to 0."""
    m = len(rows)
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    pivot_cols: List[int] = []
    prow = 0
    for col in range(ncols):
        sel = None
        for i in range(prow, m):
            if aug[i][col] != 0:
                sel = i
                break
        if sel is None:
            continue
        aug[prow], aug[sel] = aug[sel], aug[prow]
        inv = 1 / aug[prow][col]
        aug[prow] = [v * inv for v in aug[prow]]
        for i in range(m):
            if i != prow and aug[i][col] != 0:
                f = aug[i][col]
                aug[i] = [a - f * b for a, b in zip(aug[i], aug[prow])]
        pivot_cols.append(col)
        prow += 1
    for i in range(prow, m):
        if aug[i][ncols] != 0:
            return ("none", None, 0)
    sol = [Q(0)] * ncols
    for r, col in enumerate(pivot_cols):
        sol[col] = aug[r][ncols]
    return ("ok", sol, ncols - len(pivot_cols))


def rational_solutions(e: RiccatiEq, degree_bound: int = 24) -> OracleResult:
    """All rational solutions of the Riccati equation, with certificate.

    Complete within the rational branch: an empty solution list means no
    rational solution exists (unless the certificate notes say otherwise,
    which cannot happen for triangular coefficient functions).
    """
    r = e.half_R
    cert = SearchCertificate()

    # local data at the finite poles
    pole_list: List[PoleData] = []
    if not r.is_zero and r.den.degree > 0:
        try:
            factors = linear_factorization(r.den)
        except NotSplitOverRationals as exc:
            raise NonRationalPoles(str(exc)) from exc
        for pole, order in factors:
            if order > 2:
                cert.note(
                    f"pole {pole} of order {order} > 2: no rational solution can "
                    "cancel it (simple poles of u give order <= 2 in u' + u^2)"
                )
                cert.poles.append(PoleData(pole, order, Q(0), ()))
                return OracleResult((), cert)
            kappa = _order2_coefficient(r, pole, order)
            exps = _indicial_roots(kappa)
            if exps is None:
                cert.note(
                    f"IrrationalLocalExponent at pole {pole} (kappa = {kappa}): "
                    "no rational solution passes through this point"
                )
                cert.poles.append(PoleData(pole, order, kappa, ()))
                return OracleResult((), cert)
            pole_list.append(PoleData(pole, order, kappa, exps))
    cert.poles = pole_list

    # local data at infinity
    deg_inf = r.degree_at_infinity
    if deg_inf > -2:
        raise UnsupportedAtInfinity(
            f"(1/2)R has degree {deg_inf} at infinity; only coefficient "
            "functions vanishing to order >= 2 at infinity are supported"
        )
    if deg_inf == -2:
        kappa_inf = r.num.leading / r.den.leading
    else:
        kappa_inf = Q(0)
    cert.kappa_inf = kappa_inf
    exps_inf = _indicial_roots(kappa_inf)
    if exps_inf is None:
        cert.note(
            f"IrrationalLocalExponent at infinity (kappa = {kappa_inf}): "
            "no rational solution exists"
        )
        return OracleResult((), cert)
    cert.exponents_inf = exps_inf

    solutions: List[RatFunc] = []
    combos = _exponent_combinations(pole_list, exps_inf)
    for choice, e_inf in combos:
        d = e_inf - sum(ec for _, ec in choice)
        entry = {
            "residues": tuple((str(c), str(ec)) for c, ec in choice),
            "exponent_at_infinity": str(e_inf),
            "degree": str(d),
            "status": "",
        }
        if d.denominator != 1 or d < 0:
            entry["status"] = "pruned: degree not a nonnegative integer"
            cert.combos.append(entry)
            continue
        d = int(d)
        if d > degree_bound:
            entry["status"] = f"pruned: degree {d} exceeds bound {degree_bound}"
            cert.combos.append(entry)
            continue
        theta = RatFunc.zero()
        for c, ec in choice:
            theta = theta + RatFunc(Poly.const(ec), Poly.linear(c))
        A = theta.scale(Q(2))
        B = theta.derivative() + theta * theta + r
        outcome = _solve_monic_polynomial(d, A, B)
        if outcome[0] == "none":
            entry["status"] = "no auxiliary polynomial"
            cert.combos.append(entry)
            continue
        if outcome[0] == "family":
            _, P0, dim = outcome
            entry["status"] = f"family with {dim} movable constant(s)"
            cert.combos.append(entry)
            cert.families.append(
                f"u = theta + P'/P with theta = {theta}, deg P = {d}, "
                f"{dim} free parameter(s); representative P = {P0}"
            )
            continue
        P = outcome[1]
        u = theta + RatFunc(P.derivative(), P) if d > 0 else theta
        if not e.residual(u).is_zero:
            entry["status"] = "candidate failed exact substitution"
            cert.combos.append(entry)
            continue
        entry["status"] = f"solution u = {u}"
        cert.combos.append(entry)
        if u not in solutions:
            solutions.append(u)
    return OracleResult(tuple(solutions), cert)


def _exponent_combinations(pole_list: List[PoleData], exps_inf):
    """Cartesian product of residue choices per pole times infinity choice,
    in deterministic order."""
    out: List[Tuple[Tuple, object]] = []

    def rec(i: int, acc: List[Tuple]):
        if i == len(pole_list):
            for e_inf in exps_inf:
                out.append((tuple(acc), e_inf))
            return
        for ec in pole_list[i].exponents:
            acc.append((pole_list[i].pole, ec))
            rec(i + 1, acc)
            acc.pop()

    rec(0, [])
    return out


CONSISTENT = "CONSISTENT"
CONTRADICTION = "CONTRADICTION"


@dataclass(frozen=True)
class ConsistencyReport:
    params: TriangleParams
    verdict: KimuraVerdict
    oracle: OracleResult
    status: str
    note: str


def cross_check(p: TriangleParams, degree_bound: int = 24) -> ConsistencyReport:
    """Run the table decision and the rational oracle and compare.

    CONTRADICTION means the table said "no algebraic solution" while the
    oracle produced a rational one; this must never happen.
    """
    verdict = decide_condition_ric(p)
    R = build_triangular_R(p)
    oracle = rational_solutions(associate_riccati(R), degree_bound)
    if verdict.holds and oracle.found:
        return ConsistencyReport(
            p, verdict, oracle, CONTRADICTION,
            "table reports no algebraic solution but a rational solution exists",
        )
    if not verdict.holds and not oracle.found:
        note = (
            "witness fired but no rational solution: an algebraic solution of "
            "degree >= 2 is possible (rational branch is exhaustive)"
        )
    elif not verdict.holds:
        note = "witness fired and a rational solution confirms it"
    else:
        note = "no witness and no rational solution"
    return ConsistencyReport(p, verdict, oracle, CONSISTENT, note)
