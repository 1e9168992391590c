"""Command line front end.

    lambek-chase lambek --input d2.yaml
    lambek-chase generate --backend pset --shape two-square --seed 3 --constraints b-exact
    lambek-chase campaign --suite nomura1 --backend fgab --trials 500 --seed 1

Exit status: 0 when every claim that must hold does, 1 on a verification
failure, 2 on a usage or input error.
"""

from __future__ import annotations

import argparse
import sys

from ..core import is_exact_morphism, is_iso, is_null, coker, ker, pullback, pushout
from ..errors import (
    HypothesisViolated,
    LambekChaseError,
    NotNullRows,
    ParseError,
    ValidationError,
)
from ..fgab import FGAB, homology_formula, lambek_group_formula
from ..homology import composition_sequence, exact_at, homology_pair
from ..lambek import check_lambek_iso, lambek_invariants
from ..nomura import (
    five_lemma,
    kernel_row_exactness,
    nomura_first_exactness,
    nomura_second_exactness,
    short_exact_corollary,
)
from ..verdict import VerdictRecord
from .campaign import SUITES, CampaignSpec, run_campaign
from .generate import CONSTRAINTS, SHAPES, generate_diagram
from .io import DiagramFile, dumps, load_diagram
from .oracles import oracle_universal_property
from .report import VerificationReport

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _load(args, *shapes) -> DiagramFile:
    if not args.input:
        raise UsageError(f"{args.command} needs --input")
    df = load_diagram(args.input)
    if shapes and df.shape not in shapes:
        raise UsageError(f"{args.command} expects a {' or '.join(shapes)} diagram, got {df.shape}")
    return df


def _report(args, df: DiagramFile | None = None) -> VerificationReport:
    params = {"input": str(args.input)} if args.input else {}
    return VerificationReport(args.command, df.backend if df else args.backend, params)


def _skipped(rep: VerificationReport, title: str, e: HypothesisViolated):
    rep.records.append(VerdictRecord(title).as_dict())
    rep.notes.append(f"{title}: {e}; nothing claimed")


# --- commands ------------------------------------------------------------------

def cmd_check_axioms(args) -> VerificationReport:
    if not args.input:
        spec = CampaignSpec("axioms", args.backend, args.trials, args.seed,
                            exhaustive=args.exhaustive, max_size=args.max_size)
        rep = run_campaign(spec)
        rep.command = args.command
        return rep
    df = _load(args)
    rep = _report(args, df)
    rec = VerdictRecord("axioms")
    for name, f in df.morphisms.items():
        rec.clause(f"kernel of {name}", {}, lambda f=f: oracle_universal_property("kernel", (f, ker(f))))
        rec.clause(f"cokernel of {name}", {}, lambda f=f: oracle_universal_property("cokernel", (f, coker(f))))
    ms = list(df.morphisms.items())
    for (n1, f), (n2, g) in ((a, b) for a in ms for b in ms):
        if f.cod == g.cod and n1 < n2:
            _, p1, p2 = pullback(f, g)
            rec.clause(f"pullback of {n1}, {n2}", {},
                       lambda f=f, g=g, p1=p1, p2=p2: oracle_universal_property("pullback", (f, g, p1, p2)))
        if f.dom == g.dom and n1 < n2:
            _, i1, i2 = pushout(f, g)
            rec.clause(f"pushout of {n1}, {n2}", {},
                       lambda f=f, g=g, i1=i1, i2=i2: oracle_universal_property("pushout", (f, g, i1, i2)))
    rep.records.append(rec.as_dict())
    return rep


def cmd_homology(args) -> VerificationReport:
    df = _load(args, "pair")
    rep = _report(args, df)
    f, g = df.diagram()
    d = homology_pair(f, g)
    rec = VerdictRecord("homology")
    rec.flag("g f null", is_null(g @ f))
    rec.flag("exact at B", exact_at(f, g))
    rec.flag("f exact", is_exact_morphism(f))
    rec.flag("g exact", is_exact_morphism(g))
    rec.clause("m(f, g) iso", {}, lambda: is_iso(d.m))
    if f.backend is FGAB:
        rec.clause("H agrees with ker g / im f", {}, lambda: d.h_minus.invariant == homology_formula(f, g))
    rec.objects.update({"H-": d.h_minus, "H+": d.h_plus})
    rep.records.append(rec.as_dict())

    cs = composition_sequence(f, g)
    comp = VerdictRecord("composition lemma")
    comp.flag("f exact", cs.f_exact)
    comp.flag("g exact", cs.g_exact)
    always = {}
    conditional = {"exact at Ker g": ({"f exact": cs.f_exact}, cs.exact["Ker g"]),
                   "psi exact": ({"f exact": cs.f_exact}, cs.psi_exact),
                   "exact at Coker f": ({"g exact": cs.g_exact}, cs.exact["Coker f"]),
                   "eps exact": ({"g exact": cs.g_exact}, cs.eps_exact)}
    for claim, v in cs.claims().items():
        hyp, value = conditional.get(claim, (always, v))
        comp.clause(claim, hyp, lambda value=value: value)
    for name, X in zip(("Ker f", "Ker(gf)", "Ker g", "Coker f", "Coker(gf)", "Coker g"), cs.objects):
        comp.objects[name] = X
    rep.records.append(comp.as_dict())
    return rep


def cmd_invariants(args) -> VerificationReport:
    df = _load(args, "square", "two-square")
    rep = _report(args, df)
    d = df.diagram()
    squares = [("S", d)] if df.shape == "square" else [("S", d.S), ("T", d.T)]
    for label, sq in squares:
        rec = VerdictRecord(f"square {label}")
        for side, name in (("img", "Img"), ("ker", "Ker")):
            X, _ = lambek_invariants(sq, side)
            rec.objects[f"{name} {label}"] = X
            if sq.top.backend is FGAB:
                rec.clause(f"{name} {label} matches the subquotient formula", {},
                           lambda X=X, side=side, sq=sq: X.invariant == lambek_group_formula(
                               sq.top, sq.left, sq.right, sq.bottom, side))
        rep.records.append(rec.as_dict())
    return rep


def cmd_lambek(args) -> VerificationReport:
    df = _load(args, "two-square")
    rep = _report(args, df)
    rep.records.append(check_lambek_iso(df.diagram(), strict=False).as_dict())
    return rep


def cmd_nomura1(args) -> VerificationReport:
    df = _load(args, "two-square")
    rep = _report(args, df)
    d = df.diagram()
    try:
        rep.records.append(nomura_first_exactness(d, strict=False).as_dict())
    except HypothesisViolated as e:
        _skipped(rep, "nomura1", e)
        return rep
    try:
        rep.records.append(short_exact_corollary(d, strict=False).as_dict())
    except HypothesisViolated as e:
        rep.notes.append(f"short exact: {e}; nothing claimed")
    return rep


def cmd_nomura2(args) -> VerificationReport:
    df = _load(args, "two-square")
    rep = _report(args, df)
    d = df.diagram()
    try:
        rep.records.append(nomura_second_exactness(d, strict=False).as_dict())
    except HypothesisViolated as e:
        _skipped(rep, "nomura2", e)
    rep.records.append(kernel_row_exactness(d, strict=False).as_dict())
    return rep


def cmd_fivelemma(args) -> VerificationReport:
    df = _load(args, "five-column")
    rep = _report(args, df)
    try:
        res = five_lemma(df.diagram(), require=False, strict=False)
    except HypothesisViolated as e:
        _skipped(rep, "five lemma", e)
        return rep
    rep.records.append(res.record.as_dict())
    return rep


def cmd_generate(args) -> str:
    cs = tuple(c.strip() for c in args.constraints.split(",") if c.strip()) if args.constraints else ()
    d = generate_diagram(args.backend, args.shape, args.seed, cs)
    return dumps(DiagramFile.from_diagram(args.backend, args.shape, d))


def cmd_campaign(args) -> VerificationReport:
    if not args.suite:
        raise UsageError("campaign needs --suite")
    violate = tuple(c.strip() for c in args.violate.split(",") if c.strip()) if args.violate else ()
    spec = CampaignSpec(args.suite, args.backend, args.trials, args.seed, exhaustive=args.exhaustive,
                        max_size=args.max_size, violate=violate, record_trials=not args.failures_only)
    try:
        return run_campaign(spec)
    except ValueError as e:
        raise UsageError(str(e)) from e


COMMANDS = {
    "check-axioms": cmd_check_axioms,
    "homology": cmd_homology,
    "invariants": cmd_invariants,
    "lambek": cmd_lambek,
    "nomura1": cmd_nomura1,
    "nomura2": cmd_nomura2,
    "fivelemma": cmd_fivelemma,
    "generate": cmd_generate,
    "campaign": cmd_campaign,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", metavar="PATH")
    common.add_argument("--output", metavar="PATH")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--trials", type=int, default=100)
    common.add_argument("--backend", choices=("fgab", "pset"), default="fgab")
    common.add_argument("--format", choices=("text", "structured"), default="text")

    p = argparse.ArgumentParser(prog="lambek-chase", description="Diagram chasing in homological categories.")
    sub = p.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        sp = sub.add_parser(name, parents=[common])
        if name in ("check-axioms", "campaign"):
            sp.add_argument("--exhaustive", action="store_true",
                            help="pset: every isomorphism class up to --max-size")
            sp.add_argument("--max-size", type=int, default=3)
        if name == "campaign":
            sp.add_argument("--suite", choices=sorted(SUITES))
            sp.add_argument("--violate", metavar="LIST",
                            help="keep only diagrams violating these comma-separated properties")
            sp.add_argument("--failures-only", action="store_true",
                            help="report failing trials and a tally only")
        if name == "generate":
            sp.add_argument("--shape", choices=SHAPES, default="two-square")
            sp.add_argument("--constraints", metavar="LIST",
                            help="comma-separated subset of " + ", ".join(CONSTRAINTS))
    return p


def _write(args, text: str):
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_OK
    try:
        out = COMMANDS[args.command](args)
    except (UsageError, ParseError, ValidationError, NotNullRows) as e:
        print(f"lambek-chase {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except LambekChaseError as e:
        # a construction or an internal identity broke on a valid diagram
        print(f"lambek-chase {args.command}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_FAIL
    except OSError as e:
        print(f"lambek-chase {args.command}: {e}", file=sys.stderr)
        return EXIT_USAGE
    if isinstance(out, str):
        _write(args, out)
        return EXIT_OK
    _write(args, out.render(args.format))
    return EXIT_OK if out.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
