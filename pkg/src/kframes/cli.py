"""Command-line front end.

Exit codes: 0 success (value printed, check passed, formula valid),
1 property fails, 2 usage or input error, 3 refused for exceeding a budget.

FRAME arguments name a frame document, ``-`` for standard input, or a
construction expression such as ``"rect(2,3)"``.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import checkers as ck
from . import exprs, fileformat
from .constructions import Equivalence
from .errors import BudgetExceeded, ExpressionError, FormulaSyntaxError, FrameError
from .formulas import DEFAULT_BUDGET, Valuation, evaluate, parse, valid_on_frame
from .frame import Frame, clusters, height, max_cluster_size, pretransitivity_index
from .morphisms import BUDGET_EXHAUSTED, DEFAULT_NODE_BUDGET, FOUND, find_p_morphism
from .tuning import coarsest_tuned_refinement, tunability_profile

OK, FAIL, USAGE, BUDGET = 0, 1, 2, 3

EXPR_HELP = exprs.__doc__

CONDITIONS = ("pretrans-index", "height", "clusters", "max-cluster", "rp", "rp-prod", "commute",
              "church-rosser", "mckinsey", "terminal", "opposite-arrows")


class UsageError(Exception):
    pass


def _load(ref: str) -> fileformat.FrameDocument:
    if ref == "-":
        return fileformat.loads(sys.stdin.read())
    path = Path(ref)
    if path.exists():
        return fileformat.load(path)
    try:
        return fileformat.FrameDocument(exprs.build(ref), ref)
    except ExpressionError as e:
        raise UsageError(f"{ref!r} is neither a file nor a valid expression ({e})") from None


def _split_top(text: str):
    """Split on commas outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _world(F: Frame, ref: str) -> int:
    if ref in F._name_index:
        return F.index_of(ref)
    if ref.isdigit() and int(ref) < F.n:
        return int(ref)
    raise UsageError(f"unknown world {ref!r}")


def _valuation(F: Frame, flags, base=None) -> Valuation:
    sets = dict(base or {})
    for flag in flags or []:
        var, sep, rest = flag.partition("=")
        var = var.strip()
        if not sep or not (var.startswith("p") and var[1:].isdigit()):
            raise UsageError(f"bad valuation {flag!r}; expected p<k>=w1,w2,...")
        sets[int(var[1:])] = frozenset(_world(F, w) for w in _split_top(rest))
    return Valuation(F.n, sets)


def _partition(F: Frame, text: str):
    blocks = []
    for chunk in text.replace(" ", "").split("}"):
        chunk = chunk.lstrip(",")
        if not chunk:
            continue
        if not chunk.startswith("{"):
            raise UsageError(f"bad partition {text!r}; expected blocks like {{0,1}},{{2}}")
        blocks.append([_world(F, w) for w in _split_top(chunk[1:])])
    try:
        return Equivalence.from_blocks(F.n, blocks).partition
    except FrameError as e:
        raise UsageError(str(e)) from None


def _names(F: Frame, worlds) -> str:
    return "{" + ", ".join(F.names[w] for w in sorted(worlds)) + "}"


def _fmt_val(F: Frame, val: Valuation) -> str:
    return " ".join(f"p{k}={_names(F, val[k])}" for k in val)


def _verdict(res: ck.CheckResult, F: Frame, path_witness=False) -> int:
    if res.holds:
        print("PASS")
        return OK
    w = res.witness
    if path_witness:
        w = " -> ".join(F.names[x] for x in w)
    elif isinstance(w, tuple):
        w = "(" + ", ".join(F.names[x] for x in w) + ")"
    elif isinstance(w, int):
        w = F.names[w]
    print(f"FAIL {res.name} witness: {w}")
    return FAIL


# -- commands -----------------------------------------------------------------

def cmd_build(args) -> int:
    try:
        F = exprs.build(args.expr)
    except ExpressionError as e:
        raise UsageError(str(e)) from None
    text = fileformat.dumps(fileformat.FrameDocument(F, args.name or args.expr))
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_check(args) -> int:
    F = _load(args.frame).frame
    cond = args.condition
    if cond == "pretrans-index":
        print(pretransitivity_index(F))
    elif cond == "height":
        print(height(F))
    elif cond == "clusters":
        for b in clusters(F):
            print(_names(F, b))
    elif cond == "max-cluster":
        print(max_cluster_size(F))
    elif cond == "terminal":
        print(_names(F, ck.terminal_points(F, args.label)))
    elif cond == "rp":
        return _verdict(ck.check_RP(F, args.m), F, path_witness=True)
    elif cond == "rp-prod":
        A = args.a.split(",") if args.a else None
        B = args.b.split(",") if args.b else None
        return _verdict(ck.check_rp_semantic_poly(F, args.m, args.k, args.n, A, B), F,
                        path_witness=True)
    elif cond == "commute":
        return _verdict(ck.check_commutativity(F, *_pair(args)), F)
    elif cond == "church-rosser":
        return _verdict(ck.check_church_rosser(F, *_pair(args)), F)
    elif cond == "mckinsey":
        return _verdict(ck.check_mckinsey(F, args.label), F)
    elif cond == "opposite-arrows":
        return _verdict(ck.check_opposite_arrows(F, *_pair(args)), F)
    return OK


def _pair(args):
    if args.a or args.b:
        if not (args.a and args.b):
            raise UsageError("give both --a and --b")
        return args.a, args.b
    return None, None


def _formula(text, F):
    try:
        return parse(text, F.alphabet)
    except FormulaSyntaxError as e:
        raise UsageError(str(e)) from None


def cmd_mc(args) -> int:
    doc = _load(args.frame)
    F = doc.frame
    phi = _formula(args.formula, F)
    val = _valuation(F, args.val, doc.valuations)
    print(_names(F, evaluate(F, val, phi)))
    return OK


def cmd_valid(args) -> int:
    F = _load(args.frame).frame
    phi = _formula(args.formula, F)
    res = valid_on_frame(F, phi, budget=args.budget, method=args.method)
    if res.valid:
        print("VALID")
        return OK
    print(f"INVALID at {F.names[res.world]}: {_fmt_val(F, res.valuation)}".rstrip())
    return FAIL


def cmd_tune(args) -> int:
    F = _load(args.frame).frame
    P = _partition(F, args.partition)
    Q, rep = coarsest_tuned_refinement(F, P, method=args.method)
    for b in Q:
        print(_names(F, b))
    print(f"# input {rep.input_size} blocks, output {rep.output_size} blocks, "
          f"{rep.rounds} rounds, {rep.splits} splits")
    return OK


def cmd_pmorph(args) -> int:
    F = _load(args.source).frame
    G = _load(args.target).frame
    res = find_p_morphism(F, G, budget=args.budget)
    if res.status == FOUND:
        pairs = ", ".join(f"{F.names[a]}->{G.names[b]}" for a, b in enumerate(res.map.images))
        print(f"MAP {pairs}")
        print("verified: surjective p-morphism")
        return OK
    if res.status == BUDGET_EXHAUSTED:
        print(f"BUDGET EXHAUSTED after {res.nodes} nodes")
        return BUDGET
    print("NONE")
    return FAIL


def cmd_verify(args) -> int:
    from .suite import run_verification_suite

    try:
        report = run_verification_suite(args.scale, seed=args.seed, only=args.only)
    except ValueError as e:
        raise UsageError(str(e)) from None
    text = report.to_json() + "\n" if args.format == "json" else report.to_tsv()
    sys.stdout.write(text)
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        (out / "report.tsv").write_text(report.to_tsv())
        (out / "report.json").write_text(report.to_json() + "\n")
    if args.figures:
        write_figures(report, Path(args.figures))
    return OK if report.passed else FAIL


def write_figures(report, directory: Path):
    from . import plotting
    from .constructions import chain, cluster, rectangle
    from .checkers import least_rp_index

    growth = next((i.data.get("rp_growth") for i in report.items if "rp_growth" in i.data), None)
    if growth is None:
        growth = {m: least_rp_index(rectangle(m, m)) for m in range(2, 5)}
    plotting.plot_rp_growth(growth, directory / "rp_growth.png")
    profiles = {
        "cluster(4)": tunability_profile(cluster(4), 4),
        "strict chain(4)": tunability_profile(chain(4, reflexive=False), 4),
        "rect(2,2)": tunability_profile(rectangle(2, 2), 4),
        "rect(3,3)": tunability_profile(rectangle(3, 3), 4),
    }
    plotting.plot_tunability_profiles(profiles, directory / "tunability_profiles.png")


def cmd_dot(args) -> int:
    doc = _load(args.frame)
    text = fileformat.to_dot(doc.frame, doc.name or "frame")
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return OK


def cmd_profile(args) -> int:
    F = _load(args.frame).frame
    prof = tunability_profile(F, args.n_max, budget=args.budget)
    print(" ".join(map(str, prof)))
    return OK


# -- wiring ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="kframes", description="Finite Kripke frame workbench.",
                                 formatter_class=argparse.RawDescriptionHelpFormatter,
                                 epilog="Construction expressions:\n" + EXPR_HELP)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a frame from an expression",
                       formatter_class=argparse.RawDescriptionHelpFormatter, epilog=EXPR_HELP)
    p.add_argument("expr")
    p.add_argument("-o", "--output")
    p.add_argument("--name")
    p.set_defaults(fn=cmd_build)

    p = sub.add_parser("check", help="compute a structural value or test a frame condition")
    p.add_argument("frame")
    p.add_argument("condition", choices=CONDITIONS)
    p.add_argument("--m", type=int, default=1, help="path parameter for rp/rp-prod")
    p.add_argument("--k", type=int, default=1, help="step bound for the first label group")
    p.add_argument("--n", type=int, default=1, help="step bound for the second label group")
    p.add_argument("--a", help="first label (or comma-separated group for rp-prod)")
    p.add_argument("--b", help="second label (or comma-separated group for rp-prod)")
    p.add_argument("--label", help="relation for mckinsey/terminal (default: first label)")
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("mc", help="print the truth set of a formula")
    p.add_argument("frame")
    p.add_argument("formula")
    p.add_argument("--val", action="append", help='valuation, e.g. "p0=3,5" or "p0=(top,1)"')
    p.set_defaults(fn=cmd_mc)

    p = sub.add_parser("valid", help="decide frame validity of a formula")
    p.add_argument("frame")
    p.add_argument("formula")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                   help="largest worlds x variables product enumerated")
    p.add_argument("--method", choices=("enum", "sat", "auto"), default="enum")
    p.set_defaults(fn=cmd_valid)

    p = sub.add_parser("tune", help="coarsest tuned refinement of a partition")
    p.add_argument("frame")
    p.add_argument("--partition", required=True, help='blocks like "{0,1},{2}"; unlisted worlds '
                                                      "become singletons")
    p.add_argument("--method", choices=("signature", "worklist"), default="signature")
    p.set_defaults(fn=cmd_tune)

    p = sub.add_parser("pmorph", help="search for a surjective p-morphism")
    p.add_argument("source")
    p.add_argument("target")
    p.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)
    p.set_defaults(fn=cmd_pmorph)

    p = sub.add_parser("verify", help="run the lemma verification suite")
    p.add_argument("--scale", choices=("small", "default"), default="default")
    p.add_argument("--format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", help="directory for report.tsv and report.json")
    p.add_argument("--figures", help="directory for PNG figures")
    p.add_argument("--only", action="append", help="run only this check id (repeatable)")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("dot", help="emit a DOT digraph")
    p.add_argument("frame")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_dot)

    p = sub.add_parser("profile", help="tunability profile of a small frame")
    p.add_argument("frame")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--budget", type=int, default=10**5, help="largest number of partitions enumerated")
    p.set_defaults(fn=cmd_profile)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return USAGE if e.code not in (0, None) else OK
    try:
        return args.fn(args)
    except BudgetExceeded as e:
        print(f"refused: {e}", file=sys.stderr)
        return BUDGET
    except (UsageError, FrameError, FormulaSyntaxError, ExpressionError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
