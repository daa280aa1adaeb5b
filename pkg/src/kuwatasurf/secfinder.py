"""Search for sections with x of degree <= 2 on a rational elliptic surface

    y^2 = x^3 + A(t) x + B(t),  deg A <= 3, deg B <= 5

(the t^4 coefficient of A and the t^6 coefficient of B vanish, so the fiber
at infinity is additive).  The ansatz is

    x = b2 t^2 + b1 t + b0,   y = c3 t^3 + c2 t^2 + c1 t + c0.

The t^6 coefficient forces c3^2 = b2^3, parametrized as b2 = p^2, c3 = p^3.
For p != 0 the t^5, t^4, t^3 coefficients are linear in c2, c1, c0; the
remaining three equations F1, F2, F3 (t^2, t^1, t^0) in (p, b1, b0) are
eliminated by R(p) = res_b1(res_b0(F1, F3), res_b0(F2, F3)).  The case
p = 0 splits on the t^5 and t^4 coefficients.  Every candidate is verified
by substitution before it is reported.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .exactmath.multipoly import MultiPoly
from .exactmath.resultant import resultant
from .exactmath.roots import auto_degree_pattern, field_roots, rational_roots
from .exactmath.scalars import QQ, Field, QuadElt, format_scalar, height
from .exactmath.unipoly import UniPoly
from .mwlattice import SectionError, SectionPt, verify_section
from .weierstrass import SurfaceError, WeierstrassSurface

DEFAULT_BUDGET = 2000

VARS = ("t", "p", "b1", "b0", "c2", "c1", "c0")


class AnsatzInapplicable(SurfaceError):
    """The surface does not satisfy the degree conditions of the ansatz."""


class DegenerateElimination(ArithmeticError):
    """All resultants of a pivot choice vanish: the equations share a factor."""

    def __init__(self, var: str, pair):
        self.var = var
        self.pair = pair
        super().__init__(f"degenerate elimination; equations dependent (eliminating {var})")


class BudgetExceeded(Exception):
    def __init__(self, layer: str, degree: int, budget: int):
        self.layer = layer
        self.degree = degree
        self.budget = budget
        super().__init__(f"{layer}: degree bound {degree} exceeds budget {budget}")


# -- reports ---------------------------------------------------------------------------


@dataclass
class BranchReport:
    tag: str
    polynomial: str = ""  # which eliminant the degree/roots below refer to
    degree: int | None = None
    rational_roots: list = field(default_factory=list)
    field_roots: list = field(default_factory=list)
    modular_pattern: tuple | None = None  # (prime, degrees) of the root-free cofactor
    cofactor_degree: int | None = None
    candidates: list = field(default_factory=list)
    notices: list = field(default_factory=list)
    seconds: float = 0.0
    eliminant: UniPoly | None = field(default=None, repr=False)
    cofactor: UniPoly | None = field(default=None, repr=False)  # eliminant without its rational roots
    exceeded: bool = False  # degree is only a bound; roots were never computed

    def to_json(self) -> dict:
        out = {"branch": self.tag}
        if self.polynomial:
            out["polynomial"] = self.polynomial
            out["degree"] = self.degree
            out["rationalRoots"] = [{"root": format_scalar(r), "multiplicity": m} for r, m in self.rational_roots]
            out["fieldRoots"] = [{"root": format_scalar(r), "multiplicity": m} for r, m in self.field_roots]
            out["cofactorDegree"] = self.cofactor_degree
            out["budgetExceeded"] = self.exceeded
            if self.modular_pattern is not None:
                p, pat = self.modular_pattern
                out["modularPattern"] = {"prime": p, "degrees": pat}
        out["candidates"] = [{k: format_scalar(v) for k, v in c.items()} for c in self.candidates]
        out["notices"] = list(self.notices)
        return out


@dataclass
class EliminationReport:
    surface: WeierstrassSurface
    field: Field
    branches: list = field(default_factory=list)
    sections: list = field(default_factory=list)
    budget_exceeded: bool = False
    resultant_degree: int | None = None
    notices: list = field(default_factory=list)
    seconds: float = 0.0

    def x_coordinates(self) -> list:
        seen, out = set(), []
        for s in self.sections:
            if s.x not in seen:
                seen.add(s.x)
                out.append(s.x)
        return out

    def branch(self, prefix: str) -> BranchReport | None:
        for b in self.branches:
            if b.tag.startswith(prefix) and b.polynomial:
                return b
        return None

    def to_json(self) -> dict:
        main = self.branch("p1!=0")
        return {
            "surface": {"A": [format_scalar(c) for c in self.surface.A.coeffs],
                        "B": [format_scalar(c) for c in self.surface.B.coeffs]},
            "field": "Q" if self.field.D is None else f"Q(sqrt({self.field.D}))",
            "branch": [b.tag for b in self.branches],
            "resultantDegree": self.resultant_degree,
            "rationalRoots": [] if main is None else
            [{"root": format_scalar(r), "multiplicity": m} for r, m in main.rational_roots],
            "modularPatterns": [
                {"branch": b.tag, "prime": b.modular_pattern[0], "degrees": b.modular_pattern[1]}
                for b in self.branches if b.modular_pattern is not None
            ],
            "sections": [s.to_json() for s in self.sections],
            "xCoordinates": [str(x) for x in self.x_coordinates()],
            "budgetExceeded": self.budget_exceeded,
            "branches": [b.to_json() for b in self.branches],
            "notices": list(self.notices),
        }

    def text(self) -> str:
        lines = [f"field {'Q' if self.field.D is None else f'Q(sqrt({self.field.D}))'}"]
        for b in self.branches:
            lines.append(f"[{b.tag}]")
            if b.polynomial and b.exceeded:
                lines.append(f"  {b.polynomial}: degree bound {b.degree}; not computed")
            elif b.polynomial:
                roots = ", ".join(f"{r} (x{m})" for r, m in b.rational_roots) or "none"
                lines.append(f"  {b.polynomial}: degree {b.degree}; rational roots {roots}")
                if b.modular_pattern:
                    p, pat = b.modular_pattern
                    lines.append(f"  cofactor degree {b.cofactor_degree}, factor degrees mod {p}: {_pattern_str(pat)}")
            for n in b.notices:
                lines.append(f"  note: {n}")
        lines.append(f"{len(self.sections)} sections")
        for s in self.sections:
            lines.append(f"  x = {s.x},  y = {s.y}")
        if self.budget_exceeded:
            lines.append("budget exceeded: partial report")
        lines.extend(self.notices)
        return "\n".join(lines)


def _pattern_str(pat) -> str:
    counts: dict[int, int] = {}
    for d in pat:
        counts[d] = counts.get(d, 0) + 1
    return " ".join(f"{d}^{k}" if k > 1 else str(d) for d, k in sorted(counts.items()))


# -- the coefficient system ------------------------------------------------------------


@dataclass
class AnsatzState:
    """Coefficient equations of the ansatz after the linear solves."""

    branch: str
    equations: dict  # t-degree -> MultiPoly, as expanded
    solved: list  # [(var, num, den)] in solve order; var = -num/den... stored as num/den
    residual: list  # remaining equations
    unknowns: tuple

    def back_substitute(self, values: dict) -> dict:
        vals = dict(values)
        for var, num, den in self.solved:
            d = den.evaluate(vals)
            if d == 0:
                raise ZeroDivisionError(f"solving for {var}: vanishing coefficient")
            vals[var] = _div(num.evaluate(vals), d)
        return vals


def _div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        return Fraction(a, b)
    return a / b


def check_ansatz(S: WeierstrassSurface):
    A, B = S.A, S.B
    if A.degree > 4 or B.degree > 6:
        raise AnsatzInapplicable(f"deg A = {A.degree}, deg B = {B.degree}: need deg A <= 4, deg B <= 6")
    if A[4] != 0 or B[6] != 0:
        raise AnsatzInapplicable(
            "ansatz inapplicable: t^4 coefficient of A and t^6 coefficient of B must vanish "
            f"(found {format_scalar(A[4])}, {format_scalar(B[6])})"
        )
    if S.discriminant().is_zero():
        raise AnsatzInapplicable("discriminant vanishes identically")


def expand_equations(S: WeierstrassSurface, x: MultiPoly, y: MultiPoly) -> dict:
    """Coefficients in t of y^2 - x^3 - A x - B."""
    A = MultiPoly.from_unipoly(S.A, "t", VARS)
    B = MultiPoly.from_unipoly(S.B, "t", VARS)
    E = y * y - x * x * x - A * x - B
    return E.coeffs_in("t")


def _tidy(f: MultiPoly, strip: tuple = ()) -> MultiPoly:
    for v in strip:
        f, _ = f.strip_monomial(v)
    if f.is_zero() or any(isinstance(c, QuadElt) for c in f.terms.values()):
        return f
    return f.primitive()


def _solve_linear_in(eq: MultiPoly, var: str):
    if eq.degree(var) != 1:
        raise ValueError(f"equation is not linear in {var}")
    L = eq.coeff(var, 1)
    M = eq.coeff(var, 0)
    return -M, L


def derive_coefficient_system(S: WeierstrassSurface) -> AnsatzState:
    """p != 0 branch: solve c2, c1, c0 from the t^5, t^4, t^3 coefficients."""
    check_ansatz(S)
    t, p, b1, b0, c2, c1, c0 = MultiPoly.gens(*VARS)
    x = p * p * t * t + b1 * t + b0
    y = p * p * p * t * t * t + c2 * t * t + c1 * t + c0
    eqs = expand_equations(S, x, y)
    zero = MultiPoly({}, VARS)
    work = {k: eqs.get(k, zero) for k in range(6)}
    solved = []
    for k, var in ((5, "c2"), (4, "c1"), (3, "c0")):
        num, den = _solve_linear_in(work[k], var)
        solved.append((var, num, den))
        for j in range(k - 1, -1, -1):
            work[j] = _tidy(work[j].subs_fraction(var, num, den), ("p",))
    residual = [work[2], work[1], work[0]]
    return AnsatzState("p1!=0", eqs, solved, residual, ("p", "b1", "b0"))


# -- generic solver ----------------------------------------------------------------------


def solve_system(polys: list, unknowns: tuple, fld: Field = QQ, budget: int = DEFAULT_BUDGET,
                 nonzero: tuple = ()) -> list[dict]:
    """All solutions in fld of a zero-dimensional polynomial system.

    The last unknown is eliminated first by pairwise resultants; partial
    solutions are extended through gcds of the
    specialized univariate polynomials.  Monomial factors in the variables
    listed in ``nonzero`` are discarded along the way.  Positive-dimensional or dependent
    systems raise DegenerateElimination.
    """
    polys = [_tidy(q, tuple(w for w in nonzero if w in q.vars)) for q in polys if not q.is_zero()]
    for q in polys:
        if q.is_const():
            return []
    if not unknowns:
        return [{}]
    v, rest = unknowns[-1], unknowns[:-1]
    with_v = [q for q in polys if v in q.free_vars()]
    without = [q for q in polys if v not in q.free_vars()]
    if not with_v:
        if solve_system(without, rest, fld, budget, nonzero):
            raise DegenerateElimination(v, None)
        return []
    elim = list(without)
    if len(with_v) > 1 and rest:
        elim.extend(_eliminate(with_v, v, budget))
    partial = solve_system(elim, rest, fld, budget, nonzero)
    out = []
    for sol in partial:
        unis = []
        for q in with_v:
            u = q.subs(sol).to_unipoly(v) if sol else q.to_unipoly(v)
            if not u.is_zero():
                unis.append(u)
        if not unis:
            raise DegenerateElimination(v, None)
        g = unis[0]
        for u in unis[1:]:
            g = g.gcd(u)
        if g.degree <= 0:
            continue
        for r, _ in field_roots(g.monic(), fld):
            out.append({**sol, v: r})
    return out


def _eliminate(with_v: list, v: str, budget: int) -> list:
    """Nonzero pairwise resultants in v.  Using every pair keeps the
    constraints that a shared factor of one pair would otherwise hide."""
    res = []
    for i in range(len(with_v)):
        for j in range(i + 1, len(with_v)):
            _check_budget(with_v[i], with_v[j], v, budget)
            r = resultant(with_v[i], with_v[j], v, primitive=True)
            if not r.is_zero() and r not in res:
                res.append(r)
    if not res:
        raise DegenerateElimination(v, (0, len(with_v) - 1))
    return res


def _degree_bound(f: MultiPoly, g: MultiPoly, v: str) -> int:
    others = (f.free_vars() | g.free_vars()) - {v}
    return max(
        (f.degree(w) * g.degree(v) + g.degree(w) * f.degree(v) for w in others),
        default=0,
    )


def _check_budget(f, g, v, budget):
    bound = _degree_bound(f, g, v)
    if bound > budget:
        raise BudgetExceeded(f"resultant in {v}", bound, budget)


# -- branches --------------------------------------------------------------------------


def _root_key(item):
    r = item[0]
    return (height(r), str(r))


def _has_quad_coeffs(poly: UniPoly) -> bool:
    return any(isinstance(c, QuadElt) and c.b != 0 for c in poly.coeffs)


def _roots_report_quad(br: BranchReport, poly: UniPoly, fld: Field):
    """Eliminant with coefficients in Q(sqrt(D)): roots by the norm route only."""
    roots = field_roots(poly, fld)
    cof = poly
    for r, m in roots:
        cof = cof.exquo(UniPoly((-r, 1), poly.var) ** m)
    br.degree = poly.degree
    br.eliminant = poly
    br.cofactor = cof
    br.rational_roots = [(r, m) for r, m in roots if not isinstance(r, QuadElt)]
    br.field_roots = [(r, m) for r, m in roots if isinstance(r, QuadElt)]
    br.cofactor_degree = cof.degree
    br.notices.append("eliminant has irrational coefficients; roots found through its norm")
    return sorted(roots, key=_root_key)


def _roots_report(br: BranchReport, poly: UniPoly, fld: Field, patterns: bool):
    if _has_quad_coeffs(poly):
        return _roots_report_quad(br, poly, fld)
    rr = rational_roots(poly)
    br.degree = poly.degree
    br.eliminant = poly
    br.cofactor = rr.cofactor
    br.rational_roots = rr.roots
    br.cofactor_degree = rr.cofactor.degree
    br.notices.extend(rr.notes)
    if fld.D is not None:
        br.field_roots = [(r, m) for r, m in field_roots(poly, fld) if isinstance(r, QuadElt)]
    if patterns and rr.cofactor.degree > 0:
        br.modular_pattern = auto_degree_pattern(rr.cofactor)
    return sorted(list(br.rational_roots) + list(br.field_roots), key=_root_key)


def _branch_p_nonzero(S, fld, budget, patterns, report) -> list[dict]:
    start = time.perf_counter()
    br = BranchReport("p1!=0", polynomial="R(p1)")
    report.branches.append(br)
    state = derive_coefficient_system(S)
    F1, F2, F3 = state.residual
    sols = []
    try:
        if any(F.is_zero() for F in (F1, F2, F3)):
            raise DegenerateElimination("b0", None)
        _check_budget(F1, F3, "b0", budget)
        _check_budget(F2, F3, "b0", budget)
        r13 = resultant(F1, F3, "b0", primitive=True)
        r23 = resultant(F2, F3, "b0", primitive=True)
        if r13.is_zero() or r23.is_zero():
            raise DegenerateElimination("b0", ("F1", "F3") if r13.is_zero() else ("F2", "F3"))
        bound = _degree_bound(r13, r23, "b1")
        if bound > budget:
            report.resultant_degree = bound
            raise BudgetExceeded("R(p1) = res_b1(res_b0(F1,F3), res_b0(F2,F3))", bound, budget)
        R = resultant(r13, r23, "b1", primitive=True)
        if R.is_zero():
            raise DegenerateElimination("b1", ("res_b0(F1,F3)", "res_b0(F2,F3)"))
        Rp = R.to_unipoly("p")
        report.resultant_degree = Rp.degree
        nz = UniPoly(Rp.coeffs[Rp.valuation():], "p")
        if Rp.valuation():
            br.notices.append(f"R(p1) has the factor p1^{Rp.valuation()}, discarded (p1 != 0)")
        br.degree = nz.degree
        roots = _roots_report(br, nz, fld, patterns) if nz.degree > 0 else []
        for p_val, _ in roots:
            spec = [F.subs({"p": p_val}) for F in (F1, F2, F3)]
            try:
                found = solve_system(spec, ("b1", "b0"), fld, budget)
            except DegenerateElimination as exc:
                br.notices.append(f"p1 = {format_scalar(p_val)}: {exc}")
                continue
            for s in sorted(found, key=lambda d: (height(d["b1"]), height(d["b0"]))):
                sols.append((state, {"p": p_val, **s}))
    except DegenerateElimination as exc:
        br.notices.append(f"{exc}; pair {exc.pair}; falling back to pairwise elimination")
        try:
            found = solve_system([F1, F2, F3], ("p", "b1", "b0"), fld, budget, nonzero=("p",))
            sols = [(state, s) for s in found if s["p"] != 0]
        except DegenerateElimination as exc2:
            br.notices.append(f"fallback: {exc2}")
        except BudgetExceeded as exc2:
            report.budget_exceeded = True
            br.notices.append(f"budget exceeded: {exc2}")
    except BudgetExceeded as exc:
        report.budget_exceeded = True
        br.degree = exc.degree
        br.exceeded = True
        if report.resultant_degree is None:
            report.resultant_degree = exc.degree
        br.notices.append(f"budget exceeded: {exc}")
    br.seconds = time.perf_counter() - start
    return _collect(S, br, sols)


def _p_zero_system(S):
    t, p, b1, b0, c2, c1, c0 = MultiPoly.gens(*VARS)
    x = b1 * t + b0
    y = c2 * t * t + c1 * t + c0
    eqs = expand_equations(S, x, y)
    zero = MultiPoly({}, VARS)
    return {k: eqs.get(k, zero) for k in range(6)}


def _branch_p_zero(S, fld, budget, patterns, report) -> list[dict]:
    eqs = _p_zero_system(S)
    A, B = S.A, S.B
    alpha3, beta4, beta5 = A[3], B[4], B[5]
    if beta5 != 0:
        br = BranchReport("p1=0")
        br.notices.append("t^5 coefficient of B is nonzero: no sections with x of degree <= 1")
        report.branches.append(br)
        return []
    if alpha3 != 0:
        return _p_zero_alpha3(S, eqs, fld, budget, report)
    if beta4 != 0:
        return _p_zero_beta4(S, eqs, fld, budget, patterns, report)
    return _p_zero_generic(S, eqs, fld, budget, report)


def _p_zero_alpha3(S, eqs, fld, budget, report):
    start = time.perf_counter()
    br = BranchReport("p1=0, alpha3!=0")
    report.branches.append(br)
    # t^4: c2^2 - alpha3 b1 - beta4 = 0 gives b1 as a polynomial in c2
    num, den = _solve_linear_in(eqs[4], "b1")
    rest = [_tidy(eqs[k].subs_fraction("b1", num, den)) for k in (3, 2, 1, 0)]
    solved = [("b1", num, den)]
    sols = []
    try:
        for s in solve_system(rest, ("c2", "c1", "c0", "b0"), fld, budget):
            sols.append((_PZeroState(solved), s))
    except DegenerateElimination as exc:
        br.notices.append(f"{exc}; pair {exc.pair}")
    except BudgetExceeded as exc:
        report.budget_exceeded = True
        br.notices.append(f"budget exceeded: {exc}")
    br.seconds = time.perf_counter() - start
    return _collect(S, br, sols)


def _p_zero_beta4(S, eqs, fld, budget, patterns, report):
    start = time.perf_counter()
    beta4 = S.B[4]
    root = fld.sqrt(beta4)
    br = BranchReport("p1=0, alpha3=0, beta4!=0", polynomial="b1-polynomial")
    report.branches.append(br)
    if root is None:
        br.notices.append(f"c2 = +-sqrt({format_scalar(beta4)}) lies outside the active field; sub-case skipped")
        return []
    sols = []
    first = True
    for c2v in (root, -root):
        sub = {k: eqs[k].subs({"c2": c2v}) for k in (3, 2, 1, 0)}
        solved = []
        num, den = _solve_linear_in(sub[3], "c1")
        solved.append(("c1", num, den))
        e2 = sub[2].subs_fraction("c1", num, den)
        e1 = sub[1].subs_fraction("c1", num, den)
        e0 = sub[0].subs_fraction("c1", num, den)
        num0, den0 = _solve_linear_in(e2, "c0")
        solved.append(("c0", num0, den0))
        F1 = _tidy(e1.subs_fraction("c0", num0, den0))
        F0 = _tidy(e0.subs_fraction("c0", num0, den0))
        try:
            if first:
                _check_budget(F1, F0, "b0", budget)
                poly = resultant(F1, F0, "b0", primitive=True)
                if poly.is_zero():
                    raise DegenerateElimination("b0", ("t^1", "t^0"))
                _roots_report(br, poly.to_unipoly("b1"), fld, patterns)
                first = False
            for s in solve_system([F1, F0], ("b1", "b0"), fld, budget):
                sols.append((_PZeroState(solved, {"c2": c2v}), s))
        except DegenerateElimination as exc:
            br.notices.append(f"c2 = {format_scalar(c2v)}: {exc}; pair {exc.pair}")
        except BudgetExceeded as exc:
            report.budget_exceeded = True
            br.notices.append(f"budget exceeded: {exc}")
    br.seconds = time.perf_counter() - start
    return _collect(S, br, sols)


def _p_zero_generic(S, eqs, fld, budget, report):
    start = time.perf_counter()
    br = BranchReport("p1=0, alpha3=0, beta4=0")
    report.branches.append(br)
    rest = [eqs[k].subs({"c2": 0}) for k in (3, 2, 1, 0)]
    sols = []
    try:
        for s in solve_system(rest, ("b1", "b0", "c1", "c0"), fld, budget):
            sols.append((_PZeroState([], {"c2": 0}), s))
    except DegenerateElimination as exc:
        br.notices.append(f"{exc}; pair {exc.pair}")
    except BudgetExceeded as exc:
        report.budget_exceeded = True
        br.notices.append(f"budget exceeded: {exc}")
    br.seconds = time.perf_counter() - start
    return _collect(S, br, sols)


@dataclass
class _PZeroState:
    solved: list
    fixed: dict = field(default_factory=dict)


def _collect(S, br: BranchReport, sols) -> list:
    out = []
    t = UniPoly.gen(S.var)
    for state, s in sols:
        try:
            if isinstance(state, _PZeroState):
                vals = _p_zero_values(state, s)
            else:
                vals = state.back_substitute(s)
        except (ZeroDivisionError, ValueError) as exc:
            br.notices.append(f"candidate {s}: {exc}")
            continue
        br.candidates.append({k: vals[k] for k in ("p", "b1", "b0", "c2", "c1", "c0") if k in vals})
        p = vals.get("p", 0)
        x = t * t * (p * p) + t * vals["b1"] + vals["b0"]
        y = t * t * t * (p * p * p) + t * t * vals.get("c2", 0) + t * vals.get("c1", 0) + vals.get("c0", 0)
        try:
            out.append(verify_section(S, x, y))
        except SectionError:
            br.notices.append(f"candidate {_fmt(vals)} failed verification")
    return out


def _p_zero_values(state: _PZeroState, s: dict) -> dict:
    vals = {**state.fixed, **s}
    for var, num, den in state.solved:
        if var in vals:
            continue
        d = den.evaluate(vals)
        if d == 0:
            raise ZeroDivisionError(f"solving for {var}: vanishing coefficient")
        vals[var] = _div(num.evaluate(vals), d)
    vals.setdefault("p", 0)
    return vals


def _fmt(vals: dict) -> str:
    return ", ".join(f"{k}={format_scalar(v)}" for k, v in vals.items())


# -- entry point ------------------------------------------------------------------------


def find_sections(S: WeierstrassSurface, fld: Field | None = None, *, budget: int = DEFAULT_BUDGET,
                  patterns: bool = True) -> EliminationReport:
    """All sections of the ansatz shape defined over fld (default: the
    surface's field), both signs of y, sorted by (deg x, height)."""
    check_ansatz(S)
    fld = fld or S.field
    if fld.D is not None and S.field.D is None:
        S = S.over(fld)
    start = time.perf_counter()
    report = EliminationReport(S, fld)
    found = _branch_p_nonzero(S, fld, budget, patterns, report)
    found += _branch_p_zero(S, fld, budget, patterns, report)
    uniq = {}
    for sec in found:
        uniq.setdefault((sec.x, sec.y), sec)
    report.sections = sorted(uniq.values(), key=SectionPt.sort_key)
    report.seconds = time.perf_counter() - start
    return report
