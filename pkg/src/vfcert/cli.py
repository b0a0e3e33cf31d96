"""Command-line front end: ``vfcert <verb> FILE [options]``.

Exit codes: 0 definite success, 1 definite negative (not invariant, not
singular, a failed hypothesis), 2 inconclusive or budget exhausted, 64 usage
error, 65 input that does not parse.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from typing import List, Sequence

from . import certifier, darboux, projective, prolongation, singularity
from .groebner import DEFAULT_BUDGET, GroebnerBudgetExceeded, Ideal, buchberger, is_zero_dimensional, rational_points
from .polyring import ParseError, as_rational, format_rational, parse_expression, parse_poly
from .vectorfield import VectorField, affine_degree, extract_ode, lie_bracket

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 64
EXIT_DATAERR = 65

VERBS = (
    "prolong", "bracket", "singular", "linpart", "resonance", "darboux", "invariant",
    "codim1", "homogenize", "dehomogenize", "chart", "pole-order", "jet-ode",
    "certify", "structure",
)


class UsageError(Exception):
    pass


class InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="vfcert", description="Exact toolkit and bounded certifier for polynomial vector fields.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("files", nargs="+", metavar="FILE")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized probes")
    p.add_argument("--max-degree", type=int, dest="max_degree")
    p.add_argument("--max-height", type=int, dest="max_height", default=50)
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner reduction-step budget")
    p.add_argument("--point", help="comma-separated rationals")
    p.add_argument("--observable", help="expression in the field variables")
    p.add_argument("--order", type=int)
    p.add_argument("--chart", type=int, default=0)
    p.add_argument("--hyperplane")
    p.add_argument("--ideal", help="ideal or spanning-set JSON file")
    p.add_argument("--oneform", help="one-form JSON file")
    p.add_argument("--jobs", type=int, default=1)
    return p


# -- input -------------------------------------------------------------------

def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}")
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})")


def _field(path: str) -> VectorField:
    data = _load_json(path)
    try:
        return VectorField.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: expected {{\"vars\": [...], \"components\": [...]}} ({exc})")


def _polynomial_field(path: str) -> VectorField:
    v = _field(path)
    if not v.is_polynomial():
        raise InputError(f"{path}: this verb needs polynomial components")
    return v


def _homogeneous(path: str) -> projective.HomogeneousField:
    data = _load_json(path)
    try:
        return projective.HomogeneousField.from_json(data)
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: expected vars, components and twist_degree ({exc})")


def _point(args, n: int):
    if not args.point:
        raise UsageError("--point is required for this verb")
    try:
        coords = [as_rational(s) for s in args.point.split(",")]
    except (ValueError, TypeError):
        raise InputError(f"cannot parse point {args.point!r}")
    if len(coords) != n:
        raise UsageError(f"--point has {len(coords)} coordinates, the field has {n} variables")
    return coords


def _require(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this verb")
    return value


def _files(args, count: int):
    if len(args.files) != count:
        raise UsageError(f"{args.verb} takes {count} input file{'s' if count > 1 else ''}")
    return args.files


# -- output ------------------------------------------------------------------

def _emit(args, payload: dict, text: str, out):
    if args.json:
        out.write(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    else:
        out.write(text.rstrip("\n") + "\n")


def _matrix_text(rows) -> str:
    cells = [[format_rational(c) for c in r] for r in rows]
    w = max((len(c) for r in cells for c in r), default=1)
    return "\n".join("[ " + "  ".join(c.rjust(w) for c in r) + " ]" for r in cells)


# -- verbs -------------------------------------------------------------------

def _cmd_prolong(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    pv = prolongation.first_prolongation(v)
    canon = prolongation.canonical_hypersurface(v) if not v.is_zero() else None
    payload = {"field": pv.full.to_json(), "fiber_vars": list(pv.fiber_vars)}
    text = f"{pv.full}"
    if canon is not None:
        payload["canonical_hypersurface"] = canon.to_json()
        text += f"\ncanonical invariant hypersurface: {canon.ideal.generators[0]} = 0"
    _emit(args, payload, text, out)
    return EXIT_OK


def _cmd_bracket(args, out):
    a, b = _files(args, 2)
    v, w = _field(a), _field(b)
    if v.vars != w.vars:
        raise InputError("the two fields use different variables")
    br = lie_bracket(v, w)
    _emit(args, br.to_json(), str(br), out)
    return EXIT_OK


def _cmd_singular(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    if args.point:
        coords = _point(args, v.n)
        try:
            singularity.verify_singular(v, coords)
        except singularity.NotSingular as exc:
            payload = {"singular": False, "index": exc.index, "value": format_rational(exc.value)}
            _emit(args, payload, f"not singular: {exc}", out)
            return EXIT_NEGATIVE
        _emit(args, {"singular": True, "point": [format_rational(c) for c in coords]}, "singular", out)
        return EXIT_OK
    ideal = singularity.singular_ideal(v)
    gb = buchberger(ideal, budget=args.budget)
    finite = is_zero_dimensional(gb)
    payload = {"ideal": [str(g) for g in gb.basis], "finite": finite}
    text = f"Sing(v): <{', '.join(str(g) for g in gb.basis)}>\n{'finite' if finite else 'not finite'}"
    if finite:
        sols = rational_points(ideal, args.budget)
        payload["rational_points"] = [[format_rational(s[x]) for x in v.vars] for s in sols.points]
        payload["irrational_branches"] = sols.irrational_branches
        text += "\nrational points: " + (", ".join(
            "(" + ", ".join(format_rational(s[x]) for x in v.vars) + ")" for s in sols.points
        ) or "none")
    _emit(args, payload, text, out)
    return EXIT_OK


def _cmd_linpart(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    coords = _point(args, v.n)
    try:
        A = singularity.linear_part(v, coords)
    except singularity.NotSingular as exc:
        _emit(args, {"singular": False, "index": exc.index}, f"not singular: {exc}", out)
        return EXIT_NEGATIVE
    rows = A.tolist()
    _emit(args, {"matrix": [[format_rational(c) for c in r] for r in rows]}, _matrix_text(rows), out)
    return EXIT_OK


def _cmd_resonance(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    coords = _point(args, v.n)
    try:
        A = singularity.linear_part(v, coords)
    except singularity.NotSingular as exc:
        _emit(args, {"singular": False, "index": exc.index}, f"not singular: {exc}", out)
        return EXIT_NEGATIVE
    verdict = singularity.resonance_check(A, args.max_height, budget=args.budget)
    text = str(verdict) + "\neigenvalues: " + ", ".join(str(e) for e in verdict.eigen_enclosures)
    _emit(args, verdict.to_json(), text, out)
    return {
        singularity.RESONANT: EXIT_NEGATIVE,
        singularity.NONRESONANT: EXIT_OK,
    }.get(verdict.status, EXIT_INCONCLUSIVE)


def _cmd_darboux(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    D = args.max_degree if args.max_degree is not None else 3
    report = darboux.darboux_search(v, D, args.budget, args.jobs)
    lines = [f"{report.status}, degree <= {D}"]
    for p in report.found:
        lines.append(f"  g = {p.g}   cofactor h = {p.h}")
    if not report.found:
        lines.append(f"  no invariant Q-Darboux hypersurface of degree <= {D}")
    for f in report.families:
        lines.append(f"  family: g = {f.to_json()['g']}  with {', '.join(f.to_json()['constraints']) or 'no constraints'}")
    if report.irrational_branches:
        lines.append(f"  {report.irrational_branches} irrational solution branch(es) not materialized")
    _emit(args, report.to_json(), "\n".join(lines), out)
    return EXIT_OK if report.status == darboux.COMPLETE else EXIT_INCONCLUSIVE


def _load_ideal(path: str, v: VectorField, seed: int):
    data = _load_json(path)
    try:
        if "spanning" in data:
            fields = [VectorField(data.get("vars", v.vars), comps) for comps in data["spanning"]]
            return prolongation.distribution_conormal_ideal(fields, random.Random(seed))
        if "fiber_vars" in data:
            return prolongation.HorizontalIdeal.from_json(data)
        vars = tuple(data.get("vars", v.vars))
        return Ideal(vars, [parse_poly(g, vars) for g in data["generators"]])
    except (KeyError, TypeError) as exc:
        raise InputError(f"{path}: expected generators, fiber_vars or spanning ({exc})")


def _cmd_invariant(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    ideal = _load_ideal(_require(args.ideal, "--ideal"), v, args.seed)
    if isinstance(ideal, prolongation.HorizontalIdeal):
        if ideal.base_vars != v.vars:
            raise InputError("ideal base variables differ from the field variables")
        pv = prolongation.first_prolongation(v, ideal.fiber_vars)
        ok = prolongation.check_horizontal_invariant(pv, ideal, args.budget)
        gens = ideal.ideal.generators
        what = "horizontal cone"
    else:
        if ideal.ambient != v.vars:
            raise InputError("ideal variables differ from the field variables")
        ok = darboux.invariant_ideal_check(v, ideal, args.budget)
        gens = ideal.generators
        what = "ideal"
    payload = {"invariant": ok, "generators": [str(g) for g in gens]}
    _emit(args, payload, f"{what} <{', '.join(map(str, gens))}> is {'' if ok else 'not '}invariant", out)
    return EXIT_OK if ok else EXIT_NEGATIVE


def _cmd_codim1(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    data = _load_json(_require(args.oneform, "--oneform"))
    try:
        w = darboux.OneForm(data.get("vars", v.vars), data["components"])
    except (KeyError, TypeError) as exc:
        raise InputError(f"one-form file: expected components ({exc})")
    if w.vars != v.vars:
        raise InputError("one-form variables differ from the field variables")
    h = darboux.codim1_invariant(v, w)
    if h is None:
        _emit(args, {"invariant": False}, "the kernel distribution is not invariant", out)
        return EXIT_NEGATIVE
    g = darboux.contraction(v, w)
    tangency = darboux.tangency_identity_check(v, w)
    payload = {"invariant": True, "cofactor": str(h), "tangency": str(g), "tangency_identity": tangency}
    text = f"invariant, cofactor h = {h}\ntangency function g = i_v(w) = {g}; v(g) = h*g: {tangency}"
    _emit(args, payload, text, out)
    return EXIT_OK


def _cmd_homogenize(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    d = args.max_degree if args.max_degree is not None else max(int(affine_degree(v)), 1)
    try:
        h = projective.homogenize_affine(v, d)
    except ValueError as exc:
        raise UsageError(str(exc))
    _emit(args, h.to_json(), str(h), out)
    return EXIT_OK


def _cmd_dehomogenize(args, out):
    h = _homogeneous(_files(args, 1)[0])
    if not h.components[0].is_zero():
        _emit(args, {"error": "F0 is nonzero"}, "F0 is nonzero: no hyperplane-adapted representative given", out)
        return EXIT_NEGATIVE
    v = projective.dehomogenize(h)
    _emit(args, v.to_json(), str(v), out)
    return EXIT_OK


def _cmd_chart(args, out):
    h = _homogeneous(_files(args, 1)[0])
    if not 0 <= args.chart <= h.n:
        raise UsageError(f"--chart must lie in 0..{h.n}")
    v = projective.chart_derivation(h, args.chart)
    payload = v.to_json()
    payload["hyperplane_invariant"] = projective.hyperplane_invariant(h)
    _emit(args, payload, str(v), out)
    return EXIT_OK


def _cmd_pole_order(args, out):
    v = _field(_files(args, 1)[0])
    hp = _require(args.hyperplane, "--hyperplane")
    if hp not in v.vars:
        raise UsageError(f"--hyperplane {hp!r} is not a field variable")
    k = projective.pole_order(v, hp)
    _emit(args, {"hyperplane": hp, "pole_order": k}, str(k), out)
    return EXIT_OK


def _cmd_jet_ode(args, out):
    v = _field(_files(args, 1)[0])
    f = parse_expression(_require(args.observable, "--observable"), v.vars)
    res = extract_ode(v, f, args.order, budget=args.budget)
    gens = [str(g) for g in res.ideal.generators]
    payload = {"jet_vars": list(res.jet_vars), "generators": gens, "principal": res.principal}
    text = "\n".join(f"{g} = 0" for g in gens) if gens else "no relation up to this order"
    _emit(args, payload, text, out)
    return EXIT_OK


def _cmd_certify(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    coords = _point(args, v.n)
    ideals = []
    if args.ideal:
        ideal = _load_ideal(args.ideal, v, args.seed)
        if not isinstance(ideal, Ideal):
            raise InputError("--ideal for certify must be an ideal in the field variables")
        ideals.append(ideal)
    D = args.max_degree if args.max_degree is not None else 3
    try:
        cert = certifier.certify(v, coords, D, args.max_height, args.budget, ideals, args.jobs)
    except singularity.NotSingular as exc:
        _emit(args, {"singular": False, "index": exc.index}, f"not singular: {exc}", out)
        return EXIT_NEGATIVE
    if args.json:
        out.write(cert.dumps() + "\n")
    else:
        out.write(cert.render() + "\n")
    return {
        certifier.EVIDENCE: EXIT_OK,
        certifier.A_FAILS: EXIT_NEGATIVE,
        certifier.B_FAILS: EXIT_NEGATIVE,
    }.get(cert.verdict, EXIT_INCONCLUSIVE)


def _cmd_structure(args, out):
    v = _polynomial_field(_files(args, 1)[0])
    rep = certifier.structure_report(v, args.budget)
    _emit(args, rep.to_json(), rep.render(), out)
    return EXIT_OK


COMMANDS = {
    "prolong": _cmd_prolong,
    "bracket": _cmd_bracket,
    "singular": _cmd_singular,
    "linpart": _cmd_linpart,
    "resonance": _cmd_resonance,
    "darboux": _cmd_darboux,
    "invariant": _cmd_invariant,
    "codim1": _cmd_codim1,
    "homogenize": _cmd_homogenize,
    "dehomogenize": _cmd_dehomogenize,
    "chart": _cmd_chart,
    "pole-order": _cmd_pole_order,
    "jet-ode": _cmd_jet_ode,
    "certify": _cmd_certify,
    "structure": _cmd_structure,
}


def run(argv: Sequence[str], out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(list(argv))
        if args.verb != "bracket" and len(args.files) != 1:
            raise UsageError(f"{args.verb} takes exactly one input file")
        return COMMANDS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"vfcert: usage error: {exc}\n")
        return EXIT_USAGE
    except (InputError, ParseError) as exc:
        err.write(f"vfcert: cannot parse input: {exc}\n")
        return EXIT_DATAERR
    except GroebnerBudgetExceeded as exc:
        err.write(f"vfcert: inconclusive, {exc}\n")
        return EXIT_INCONCLUSIVE
    except ValueError as exc:
        err.write(f"vfcert: invalid input: {exc}\n")
        return EXIT_DATAERR


def main(argv: List[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv)


if __name__ == "__main__":
    sys.exit(main())
