"""Batch command-line driver: check, eval, prec, translate, oracle.

Exit codes: 0 success, 1 semantic failure (type error, Fails verdict,
law violation), 2 usage or I/O error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import model as M
from . import precision as PR
from . import prelude as PRELUDE
from . import reduction as R
from . import surface as SF
from . import syntax as S
from . import typecheck as T
from . import gripup as G

EXIT_OK, EXIT_SEMANTIC, EXIT_USAGE = 0, 1, 2


def _load_checker(args) -> T.Checker:
    const_types = None
    path = os.environ.get("GRIP_PRELUDE")
    if path:
        try:
            const_types = PRELUDE.load_prelude_overrides(
                open(path, encoding="utf-8").read())
        except (OSError, SF.ParseFailure) as e:
            raise SystemExit(_usage_error(f"cannot load prelude: {e}"))
    return T.Checker(fuel=args.fuel, const_types=const_types)


def _usage_error(msg):
    print(f"error: {msg}", file=sys.stderr)
    return EXIT_USAGE


def _emit(args, payload: dict, text_lines):
    if args.format == "structured":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in text_lines:
            print(line)


def _read_file(path):
    try:
        return open(path, encoding="utf-8").read()
    except OSError as e:
        raise SystemExit(_usage_error(str(e)))


def _parse(path):
    try:
        return SF.parse(_read_file(path))
    except SF.ParseFailure as e:
        for d in e.diagnostics:
            print(f"{path}:{d}", file=sys.stderr)
        raise SystemExit(EXIT_SEMANTIC)


def cmd_check(args) -> int:
    src = _parse(args.file)
    ck = _load_checker(args)
    if args.grip_up:
        gup = G.GripUpChecker(fuel=args.fuel)
        results, errors = [], []
        for name, ty, body in src.decls:
            try:
                G.check_decl_grip_up(ty, body, gup)
                results.append(name)
            except T.TypeCheckError as e:
                errors.append((name, e))
    else:
        judgments, errors = T.check_file(src, checker=ck)
        results = [n for n, _, _ in src.decls][:len(judgments)]
        results = [n for (n, _, _) in src.decls
                   if n not in {nm for nm, _ in errors}]
    payload = {
        "command": "check",
        "file": args.file,
        "grip_up": bool(args.grip_up),
        "ok": [n for n in results],
        "errors": [{"name": n, "kind": e.kind, "rule": e.rule,
                    "message": e.message} for n, e in errors],
    }
    lines = [f"checked {args.file}: {len(results)} ok, {len(errors)} errors"]
    for n, e in errors:
        lines.append(f"  {n}: {e}")
    _emit(args, payload, lines)
    return EXIT_SEMANTIC if errors else EXIT_OK


def cmd_eval(args) -> int:
    src = _parse(args.file)
    ck = _load_checker(args)
    try:
        ty, body = src.lookup(args.name)
    except KeyError:
        return _usage_error(f"no declaration named {args.name!r}")
    try:
        ck.check(S.EMPTY_CTX, body, ty)
    except T.TypeCheckError as e:
        print(f"type error: {e}", file=sys.stderr)
        return EXIT_SEMANTIC
    try:
        if args.trace:
            tr = R.trace(body, args.fuel)
            nf = tr.entries[-1][2] if tr.entries else body
            payload = {
                "command": "eval", "name": args.name,
                "normal_form": SF.print_term(nf),
                "steps": tr.steps_used,
                "trace": [{"rule": rule, "before": SF.print_term(b),
                           "after": SF.print_term(a)}
                          for rule, b, a in tr.entries],
            }
            lines = [f"{rule} | {SF.print_term(b)} | {SF.print_term(a)}"
                     for rule, b, a in tr.entries]
            lines.append(SF.print_term(nf))
        else:
            nf = R.normalize(body, args.fuel)
            payload = {"command": "eval", "name": args.name,
                       "normal_form": SF.print_term(nf)}
            lines = [SF.print_term(nf)]
    except R.FuelExhausted as e:
        print(f"fuel exhausted: {e}", file=sys.stderr)
        return EXIT_SEMANTIC
    _emit(args, payload, lines)
    return EXIT_OK


def _bounds(args) -> M.Bounds:
    return M.Bounds(nat_bound=args.nat_bound, list_len=args.list_len,
                    fn_table_bound=args.fn_bound, depth=args.depth)


def cmd_prec(args) -> int:
    ck = _load_checker(args)
    dec = PR.Decider(checker=ck, model=M.Model(_bounds(args)))
    try:
        if args.kind == "type":
            a = SF.parse_term(args.lhs)
            b = SF.parse_term(args.rhs)
            res = dec.decide_type_prec(a, b, args.level)
        else:
            a = SF.parse_term(args.lhs)
            b = SF.parse_term(args.rhs)
            ta = SF.parse_term(args.lhs_type)
            tb = SF.parse_term(args.rhs_type)
            res = dec.decide_term_prec(a, b, ta, tb)
    except (SF.ParseFailure, PR.DecideError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    payload = {"command": "prec", "kind": args.kind,
               "verdict": res.verdict, "path": res.path,
               "checked": res.checked,
               "witness": SF.print_term(res.witness) if res.witness else None}
    lines = [f"{res.verdict.capitalize()}"
             + (f" [{res.path}]" if res.path else "")]
    if res.witness is not None:
        lines.append(f"witness: {SF.print_term(res.witness)}")
    _emit(args, payload, lines)
    return EXIT_OK if res.holds else EXIT_SEMANTIC


def cmd_translate(args) -> int:
    src = _parse(args.file)
    ck = _load_checker(args)
    gup = G.GripUpChecker(fuel=args.fuel)
    syn = G.Synthesizer(gup)
    out_lines = ["-- lifted translation with self-precision witnesses"]
    for name, ty, body in src.decls:
        try:
            G.check_decl_grip_up(ty, body, gup)
            j = G.check_grip_up(body, checker=gup)
            tr_body = G.shift_translate(body)
            tr_ty = G.shift_translate(ty)
            ck.check(S.EMPTY_CTX, tr_body, tr_ty)
            w = G.synthesize_selfprec(j, syn=syn)
            ck.check(w.ctx, w.witness, w.prop)
        except (T.TypeCheckError, G.SynthesisError) as e:
            print(f"{name}: {e}", file=sys.stderr)
            return EXIT_SEMANTIC
        out_lines.append(f"def {name} : {SF.print_term(tr_ty)} := "
                         f"{SF.print_term(tr_body)}.")
        out_lines.append(f"def {name}_sp : {SF.print_term(w.prop)} := "
                         f"{SF.print_term(w.witness)}.")
    text = "\n".join(out_lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    return EXIT_OK


_DEF_CODE_POOL0 = "nat bool unit empty prop box errU unkU listNat listBool listUnk sigBoolNat piBoolBool"


def _shipped_codes(model):
    fam_small = M.Fam(table=((("bool", True), M.CUnit()),
                             (("bool", False), M.CBool()),
                             (M.ERR, M.CErrU(0)), (M.UNK, M.CEmpty())))
    level0 = [M.CNat(), M.CBool(), M.CUnit(), M.CEmpty(), M.CProp(), M.CBox(),
              M.CErrU(0), M.CUnkU(0), M.CList(M.CNat()), M.CList(M.CBool()),
              M.CList(M.CUnkU(0)), M.CList(M.CProp()),
              M.CSigma(M.CBool(), M.const_fam(M.CNat())),
              M.CSigma(M.CUnkU(0), M.const_fam(M.CUnkU(0))),
              M.CPi(M.CBool(), M.const_fam(M.CBool())),
              M.CPi(M.CUnit(), M.const_fam(M.CNat())),
              M.CPi(M.CBool(), fam_small)]
    level1 = [M.CUniv(), M.CErrU(1), M.CUnkU(1), M.CCum(M.CNat()),
              M.CCum(M.CBool()), M.CCum(M.CUnkU(0)), M.CCum(M.CProp()),
              M.CCum(M.CPi(M.CBool(), M.const_fam(M.CBool()))),
              M.CCum(M.CList(M.CNat())), M.CList(M.CCum(M.CNat()))]
    return level0, level1


def cmd_oracle(args) -> int:
    model = M.Model(_bounds(args))
    level0, level1 = _shipped_codes(model)
    payload = {"command": "oracle", "subcommand": args.sub}
    lines = []
    failures = 0
    if args.sub == "preorder":
        reports = []
        for c in level0 + level1:
            rep = model.check_partial_preorder(c)
            reports.append((c, rep))
            failures += 0 if rep.ok else 1
            lines.append(f"preorder {c}: {'pass' if rep.ok else 'FAIL'} "
                         f"({rep.checked['related']} related pairs)")
        payload["reports"] = [
            {"code": repr(c), "ok": rep.ok, "checked": rep.checked,
             "violations": [repr(v) for v in rep.violations[:10]]}
            for c, rep in reports]
    elif args.sub == "eppair":
        reports = []
        for pool in (level0, level1):
            for a in pool:
                for b in pool:
                    if a != b and not model.tprec(a, b):
                        continue
                    rep = model.check_ep_pair(a, b)
                    if not rep.precondition_ok:
                        continue
                    reports.append(((a, b), rep))
                    failures += 0 if rep.ok else 1
                    lines.append(
                        f"eppair {a} <= {b}: {'pass' if rep.ok else 'FAIL'} "
                        f"{rep.checked}")
        comp0 = model.check_compositions(level0)
        comp1 = model.check_compositions(level1)
        for tag, rep in (("level0", comp0), ("level1", comp1)):
            failures += 0 if rep.ok else 1
            lines.append(f"compositions {tag}: "
                         f"{'pass' if rep.ok else 'FAIL'} {rep.checked}")
        payload["pairs"] = [
            {"lhs": repr(a), "rhs": repr(b), "ok": rep.ok,
             "checked": rep.checked,
             "violations": [repr(v) for v in rep.violations[:10]]}
            for (a, b), rep in reports]
        payload["compositions"] = {
            "level0": {"ok": comp0.ok, "checked": comp0.checked},
            "level1": {"ok": comp1.ok, "checked": comp1.checked}}
    elif args.sub == "meets":
        rep = model.check_beck_chevalley_failure()
        ok = (rep["direct_at_true"] == ("nat", 5)
              and rep["meet_at_true"] == M.ERR
              and not rep["equiprecise"])
        failures += 0 if ok else 1
        lines.append(f"direct route at true: {rep['direct_at_true']}")
        lines.append(f"meet route at true: {rep['meet_at_true']}")
        lines.append(f"equiprecise: {rep['equiprecise']}")
        lines.append("no-decomposition-through-meets: "
                     + ("confirmed" if ok else "NOT CONFIRMED"))
        payload["report"] = {k: repr(v) for k, v in rep.items()}
    elif args.sub == "agree":
        from .agreement import run_agreement
        rep = run_agreement(model, samples=args.samples, fuel=args.fuel)
        failures += 0 if not rep["disagreements"] else 1
        lines.append(f"kernel/model cast agreement: {rep['checked']} "
                     f"instances, {len(rep['disagreements'])} disagreements")
        for d in rep["disagreements"][:10]:
            lines.append(f"  {d}")
        payload["report"] = {"checked": rep["checked"],
                             "disagreements": rep["disagreements"][:50]}
    payload["ok"] = failures == 0
    _emit(args, payload, lines)
    return EXIT_OK if failures == 0 else EXIT_SEMANTIC


def build_parser():
    p = argparse.ArgumentParser(prog="grip",
                                description="gradual kernel toolshed")
    p.add_argument("--fuel", type=int, default=R.DEFAULT_FUEL)
    p.add_argument("--format", choices=("text", "structured"),
                   default="text")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="typecheck a .grip file")
    c.add_argument("file")
    c.add_argument("--grip-up", action="store_true",
                   help="use the level-raising fragment")
    c.set_defaults(fn=cmd_check)

    e = sub.add_parser("eval", help="normalize a declaration")
    e.add_argument("file")
    e.add_argument("name")
    e.add_argument("--trace", action="store_true")
    e.set_defaults(fn=cmd_eval)

    pr = sub.add_parser("prec", help="decide a precision query")
    pr.add_argument("kind", choices=("type", "term"))
    pr.add_argument("lhs")
    pr.add_argument("rhs")
    pr.add_argument("--level", type=int, default=0)
    pr.add_argument("--lhs-type")
    pr.add_argument("--rhs-type")
    _add_bound_flags(pr)
    pr.set_defaults(fn=cmd_prec)

    tr = sub.add_parser("translate",
                        help="lift a fragment file and synthesize witnesses")
    tr.add_argument("file")
    tr.add_argument("-o", "--out", default="-")
    tr.set_defaults(fn=cmd_translate)

    o = sub.add_parser("oracle", help="run the model oracle law suites")
    o.add_argument("sub", choices=("preorder", "eppair", "meets", "agree"))
    o.add_argument("--all", action="store_true",
                   help="accepted for compatibility; suites are exhaustive")
    o.add_argument("--samples", type=int, default=2000)
    _add_bound_flags(o)
    o.set_defaults(fn=cmd_oracle)
    return p


def _add_bound_flags(p):
    b = M.Bounds()
    p.add_argument("--nat-bound", type=int, default=b.nat_bound)
    p.add_argument("--list-len", type=int, default=b.list_len)
    p.add_argument("--fn-bound", type=int, default=b.fn_table_bound)
    p.add_argument("--depth", type=int, default=b.depth)


def main(argv=None) -> int:
    sys.setrecursionlimit(30000)
    args = build_parser().parse_args(argv)
    if args.command == "prec" and args.kind == "term":
        if not (args.lhs_type and args.rhs_type):
            return _usage_error("term precision needs --lhs-type/--rhs-type")
    try:
        return args.fn(args)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
