"""Command-line front end.

Every verb builds a report dict from module calls and prints it as JSON (the
default) or as text.  Exit codes: 0 success, 2 precondition violation or bad
input, 3 elimination budget exceeded (a partial report is still printed).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import demos, kuwata
from .exactmath.roots import is_valid_D
from .exactmath.scalars import QQ, Field, format_scalar, parse_scalar
from .mwlattice import SectionError, gram_matrix
from .secfinder import DEFAULT_BUDGET, AnsatzInapplicable, find_sections
from .weierstrass import SurfaceError, WeierstrassSurface, surface_from_json

EXIT_OK, EXIT_PRECONDITION, EXIT_BUDGET = 0, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    verb: str
    family: str | None = None
    fmt: str = "json"
    budget: int = DEFAULT_BUDGET
    D: int | None = None
    h: int | None = None

    def __post_init__(self):
        if self.budget <= 0:
            raise UsageError("budget must be positive")
        if self.D is not None and not is_valid_D(self.D):
            raise UsageError(f"D = {self.D} must be squarefree and != 1")

    @property
    def field(self) -> Field:
        return QQ if self.D is None else Field(self.D)


# -- helpers ---------------------------------------------------------------------------


def load_family(cfg: RunConfig) -> kuwata.KuwataFamily:
    if not cfg.family:
        raise UsageError("this verb needs --family FILE")
    try:
        with open(cfg.family) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read family file: {exc}") from exc
    if cfg.h is not None:
        data["h"] = cfg.h
    if cfg.D is not None:
        data["D"] = cfg.D
    return kuwata.family_from_json(data)


def surface_target(cfg: RunConfig, target: str) -> WeierstrassSurface:
    """'top', a surface JSON file, or a family member: pi<i>, twist<i>, psi<i>."""
    if target == "top":
        return demos.top_surface(cfg.field)
    name = target.strip()
    if name.endswith(".json"):
        try:
            with open(name) as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read surface file: {exc}") from exc
        if cfg.D is not None:
            data["D"] = cfg.D
        return surface_from_json(data)
    fam = load_family(cfg)
    if name.isdigit() or (name.startswith("pi") and name[2:].isdigit()):
        return kuwata.build_pi(fam, int(name.removeprefix("pi")))
    if name.startswith("twist") or name.endswith("'"):
        i = name.removeprefix("twist").removeprefix("pi").rstrip("'")
        return kuwata.build_twist(fam, int(i or 2))
    if name.startswith("psi"):
        return kuwata.deflate(fam, int(name[3:] or 3)).psi
    raise UsageError(f"unknown surface target {target!r}")


def surface_json(S: WeierstrassSurface) -> dict:
    return {"name": S.name, "field": str(S.field),
            "A": [format_scalar(c) for c in S.A.coeffs], "B": [format_scalar(c) for c in S.B.coeffs]}


def _sections_text(sections) -> list[str]:
    return [f"  {s.label or '-'}: x = {s.x}, y = {s.y}" for s in sections]


# -- verbs -----------------------------------------------------------------------------


def cmd_family_info(cfg, args):
    fam = load_family(cfg)
    ratio = fam.E.delta / fam.F.delta
    roots = {}
    for i in (3, 5):
        try:
            roots[str(i)] = format_scalar(kuwata.deflate(fam, i).alpha)
        except kuwata.FamilyError:
            roots[str(i)] = None
    rep = fam.to_json() | {"deltaRatio": format_scalar(ratio), "deflationAlpha": roots,
                           "rankTable": kuwata.rank_table(fam.h)}
    text = [f"E: a = {fam.E.a}, b = {fam.E.b}, Delta = {fam.E.delta}, j = {fam.E.j}",
            f"F: a = {fam.F.a}, b = {fam.F.b}, Delta = {fam.F.delta}, j = {fam.F.j}",
            f"Delta(E)/Delta(F) = {ratio}",
            "alpha: " + ", ".join(f"i={k}: {v or 'needs extension'}" for k, v in roots.items())]
    return rep, text, EXIT_OK


def cmd_fibers(cfg, args):
    S = surface_target(cfg, args.target)
    rep = kuwata.fiber_summary(S)
    rep["surface"] = surface_json(S)
    text = [str(S)] + [f"  {f['place']}: {f['type']}" for f in rep["fibers"]]
    st = rep["shiodaTate"]
    text.append(f"chi = {rep['chi']}, Shioda-Tate: {st['formula']}" + (f" = {st['rank']}" if st["rank"] is not None else ""))
    return rep, text, EXIT_OK


def cmd_rank_table(cfg, args):
    h = cfg.h or 0
    rows = kuwata.rank_table(h)
    text = [f"h = {h}", "i  rank  Q-bound"]
    for r in rows:
        if "rank" in r:
            text.append(f"{r['i']:<3}{r['rank']:<6}{r['qBound']}")
        else:
            text.append(f"{r['i']:<3}>= {r['rankAtLeast']}")
    return {"h": h, "rows": rows}, text, EXIT_OK


def cmd_find_sections(cfg, args):
    S = surface_target(cfg, args.target)
    rep = find_sections(S, cfg.field, budget=cfg.budget)
    code = EXIT_BUDGET if rep.budget_exceeded else EXIT_OK
    return rep.to_json(), rep.text().splitlines(), code


def _gram_sources(cfg, source):
    if source == "top":
        return demos.top_sigmas(cfg.field)
    if source == "top-omega":
        sig = demos.top_sigmas(Field(-3))
        return sig + demos.top_taus(sig)
    if source == "nine-lines":
        return kuwata.nine_lines_sections(load_family(cfg))
    if source in ("pi2prime", "pi2prime-primed"):
        return kuwata.pi2prime_points(load_family(cfg), primed=source.endswith("primed"))
    if source == "pi2prime-orbit":
        return kuwata.pi2prime_sign_orbit(load_family(cfg), primed=cfg.field.D == -1)
    if source.startswith("psi"):
        fam = load_family(cfg)
        d = kuwata.deflate(fam, int(source[3:] or 3))
        rep = find_sections(d.psi, cfg.field, budget=cfg.budget)
        return rep.sections
    return find_sections(surface_target(cfg, source), cfg.field, budget=cfg.budget).sections


def cmd_gram(cfg, args):
    sections = _gram_sources(cfg, args.source)
    g = gram_matrix(sections)
    return g.to_json(), _sections_text(sections) + g.text().splitlines(), EXIT_OK


def cmd_nine_lines(cfg, args):
    fam = load_family(cfg)
    secs = kuwata.nine_lines_sections(fam)
    g = gram_matrix(secs)
    rep = {"matrix": [[format_scalar(v) for v in row] for row in kuwata.nine_lines_matrix(fam)],
           "sections": [s.to_json() for s in secs], "verified": len(secs), "gram": g.to_json()}
    return rep, _sections_text(secs) + [f"all {len(secs)} verified"] + g.text().splitlines(), EXIT_OK


def cmd_lines27(cfg, args):
    fam = load_family(cfg)
    if cfg.D is None:
        fam = fam.over(Field(-3))
    rep = kuwata.cubic_surface_and_lines(fam)
    out = kuwata.lines_report_json(rep)
    text = [f"cubic: {rep['cubic']} = 0"]
    text += [f"  {k}: {v}" for k, v in sorted(rep["counts"].items())]
    text.append(f"{sum(rep['contained'])}/{len(rep['lines'])} lines contained")
    for p in rep["pending"]:
        text.append(f"  sigma {p['sigma']}: requires extension ({p['rootsInField']} roots in field)")
    return out, text, EXIT_OK


def cmd_corq(cfg, args):
    c = kuwata.corq_params(parse_scalar(args.rho), parse_scalar(args.tau), parse_scalar(args.u))
    rep = c.to_json()
    text = [f"lambda, mu, nu, xi = {c.lam}, {c.mu}, {c.nu}, {c.xi}"]
    text += [f"  {k} = {v} ({'square of ' + str(r) if r is not None else 'not a square'})" for k, (v, r) in c.squares.items()]
    text.append(f"Legendre parameters {c.legendre[0]}, {c.legendre[1]}; j distinct: {c.j_distinct}")
    text += [f"problem: {p}" for p in c.problems]
    return rep, text, EXIT_OK if c.valid else EXIT_PRECONDITION


def cmd_pi2prime_points(cfg, args):
    if args.corq:
        c = kuwata.corq_params(*(parse_scalar(v) for v in args.corq))
        fam = c.family(cfg.h or 0)
    else:
        fam = load_family(cfg)
    pts = kuwata.pi2prime_points(fam, primed=args.primed)
    g = gram_matrix(pts)
    rep = {"points": [p.to_json() for p in pts], "gram": g.to_json()}
    return rep, _sections_text(pts) + g.text().splitlines(), EXIT_OK


def cmd_deflate(cfg, args):
    fam = load_family(cfg)
    d = kuwata.deflate(fam, args.i, args.root)
    rep = d.to_json() | {"fibers": kuwata.fiber_summary(d.psi)}
    text = [f"alpha = {d.alpha}, s = {'' if d.sign == 1 else '-'}(t + alpha/t)", f"psi: {d.psi}", d.witness]
    text += [f"  {f['place']}: {f['type']}" for f in rep["fibers"]["fibers"]]
    st = rep["fibers"]["shiodaTate"]
    text.append(f"Shioda-Tate rank {st['rank']}")
    return rep, text, EXIT_OK


def cmd_top_demo(cfg, args):
    S = demos.top_surface()
    rep = find_sections(S, cfg.field, budget=cfg.budget)
    degree1 = [s for s in rep.sections if s.x_degree() == 1]
    chosen = demos.top_sigmas()
    g = gram_matrix(chosen)
    b1 = rep.branch("p1=0")
    out = {"elimination": rep.to_json(),
           "degreeOneX": sorted({str(s.x) for s in degree1}),
           "gram": g.to_json()}
    text = rep.text().splitlines()
    text.append("degree-1 x-coordinates: " + ", ".join(out["degreeOneX"]))
    if b1 is not None:
        text.append(f"b1-polynomial degree {b1.degree}")
    text += ["Gram matrix of sigma1, sigma2, sigma3:"] + g.text().splitlines()
    return out, text, EXIT_BUDGET if rep.budget_exceeded else EXIT_OK


# -- entry point -----------------------------------------------------------------------


def _common_flags(suppress: bool) -> argparse.ArgumentParser:
    # the copy attached to each verb must not reset flags given before the verb
    def d(v):
        return argparse.SUPPRESS if suppress else v

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--family", default=d(None), help="family JSON file")
    common.add_argument("--format", choices=("json", "text"), default=d("json"))
    common.add_argument("--budget", type=int, default=d(DEFAULT_BUDGET), help="resultant degree budget")
    common.add_argument("--D", type=int, default=d(None), help="work over Q(sqrt(D))")
    common.add_argument("--h", type=int, default=d(None), help="h in the rank formulas (0, 1 or 2)")
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags(suppress=True)
    ap = argparse.ArgumentParser(prog="kuwatasurf", description=__doc__.splitlines()[0],
                                 parents=[_common_flags(suppress=False)])
    sub = ap.add_subparsers(dest="verb", required=True)
    sub.add_parser("family-info", parents=[common], help="curves, discriminants and deflation data of a family")
    p = sub.add_parser("fibers", parents=[common], help="singular fibers and Shioda-Tate rank of a surface")
    p.add_argument("target", help="i, twist<i>, psi<i>, top or a surface .json")
    sub.add_parser("rank-table", parents=[common], help="expected Mordell-Weil ranks of pi_i")
    p = sub.add_parser("find-sections", parents=[common], help="all sections with deg x <= 2, deg y <= 3")
    p.add_argument("target", help="i, twist<i>, psi<i>, top or a surface .json")
    p = sub.add_parser("gram", parents=[common], help="Gram matrix of a catalog of sections")
    p.add_argument("source", help="top, top-omega, nine-lines, pi2prime, pi2prime-primed, pi2prime-orbit, psi3 or a surface target")
    sub.add_parser("nine-lines", parents=[common], help="the nine explicit sections of the cubic twist")
    sub.add_parser("lines27", parents=[common], help="the 27 lines on the associated cubic surface")
    p = sub.add_parser("corq", parents=[common], help="Legendre parameters from (rho, tau, u)")
    p.add_argument("rho")
    p.add_argument("tau")
    p.add_argument("u")
    p = sub.add_parser("pi2prime-points", parents=[common], help="the explicit points on the quadratic twist")
    p.add_argument("--corq", nargs=3, metavar=("RHO", "TAU", "U"))
    p.add_argument("--primed", action="store_true", help="also P1'..P4' over Q(i)")
    p = sub.add_parser("deflate", parents=[common], help="quotient surface psi for i = 3 or 5")
    p.add_argument("i", type=int, choices=(3, 5))
    p.add_argument("--root", type=int, default=0, help="use alpha * zeta^k")
    sub.add_parser("top-demo", parents=[common], help="section search on Top's surface")
    return ap


VERBS = {
    "family-info": cmd_family_info,
    "fibers": cmd_fibers,
    "rank-table": cmd_rank_table,
    "find-sections": cmd_find_sections,
    "gram": cmd_gram,
    "nine-lines": cmd_nine_lines,
    "lines27": cmd_lines27,
    "corq": cmd_corq,
    "pi2prime-points": cmd_pi2prime_points,
    "deflate": cmd_deflate,
    "top-demo": cmd_top_demo,
}


def emit_report(report, fmt: str, text_lines=None) -> bytes:
    if fmt == "text":
        body = "\n".join(text_lines if text_lines is not None else [json.dumps(report, indent=2)])
    else:
        body = json.dumps(report, indent=2, sort_keys=True)
    return (body + "\n").encode()


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig(args.verb, args.family, args.format, args.budget, args.D, args.h)
        report, text, code = VERBS[args.verb](cfg, args)
    except (UsageError, kuwata.FamilyError, SurfaceError, AnsatzInapplicable, SectionError, ValueError) as exc:
        report, text, code = {"error": str(exc), "verb": args.verb}, [f"error: {exc}"], EXIT_PRECONDITION
    out.write(emit_report(report, args.format, text).decode())
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
