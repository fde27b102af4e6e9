"""``ctalg`` command line entry point."""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import birkhoff as bk
from .ctops import pfd
from .errors import CtAlgError, ParseError
from .forest import enumerate_forests, forest_realization, format_word, parse_word
from .formats import parse_typea, typea_to_json
from .typea import ta_full_ct
from .xi import (
    OperatorCombo,
    combo_apply,
    expand_in_basis,
    rewrite_to_increasing,
    rewrite_to_nearly_increasing,
    xi_dimension,
)


class _ArgParser(argparse.ArgumentParser):
    def error(self, message):
        _fail("ParseError", message, 2)


def _fail(kind: str, message: str, code: int):
    sys.stderr.write(json.dumps({"error": kind, "message": message}) + "\n")
    sys.exit(code)


def _frac(c: Fraction) -> str:
    c = Fraction(c)
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def _int_list(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return list(range(int(lo), int(hi) + 1))
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad integer list {text!r}") from exc


def _load_function(args):
    if args.expr is not None:
        return parse_typea(args.expr)
    if args.input is not None:
        try:
            with open(args.input) as fh:
                return parse_typea(fh.read())
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc}") from exc
    raise ParseError("give a function with --expr or --input")


def _load_combo(args) -> OperatorCombo:
    if args.word is not None:
        return OperatorCombo.word(parse_word(args.word))
    if args.combo is not None:
        try:
            with open(args.combo) as fh:
                return OperatorCombo.from_json(json.load(fh))
        except (OSError, json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad combination file {args.combo}: {exc}") from exc
    raise ParseError("give an operator with --word or --combo")


def _emit(args, text: str, obj) -> None:
    if args.format == "json":
        print(json.dumps(obj, sort_keys=True))
    else:
        print(text)


def cmd_ct(args):
    F = _load_function(args)
    v = ta_full_ct(F)
    _emit(args, _frac(v), {"result": _frac(v)})


def cmd_apply(args):
    combo = _load_combo(args)
    F = _load_function(args)
    G = combo_apply(combo, F)
    _emit(args, G.to_text(), {"result": G.to_text(), "typea": typea_to_json(G, args.n)})


def cmd_pfd(args):
    F = _load_function(args)
    res = pfd(F, args.var)
    parts = []
    lines = [f"polynomial part: {res.polynomial_part}"]
    for p in res.principal_parts:
        coeffs = [g.to_text() for g in p.coeffs]
        parts.append({
            "center": [args.var, p.center],
            "multiplicity": p.multiplicity,
            "coeffs": coeffs,
            "a_at_zero": p.a_at_zero().to_text(),
        })
        lines.append(
            f"center x{args.var}=x{p.center} mult {p.multiplicity}: "
            + "; ".join(f"k={k}: {c}" for k, c in enumerate(coeffs))
            + f"; A(0) = {p.a_at_zero()}"
        )
    _emit(args, "\n".join(lines), {"polynomial_part": res.polynomial_part.to_text(), "principal_parts": parts})


def cmd_normalize(args):
    word = parse_word(args.word)
    n = args.n or max((max(p) for p in word), default=1)
    if args.increasing:
        sign, w = rewrite_to_increasing(word, n)
    else:
        sign, w = rewrite_to_nearly_increasing(word)
    exp = expand_in_basis(word, n)
    text = [f"sign: {sign:+d}", f"word: {format_word(w)}", "expansion:"]
    text += [f"  {_frac(c)} {D.to_text()} {format_word(forest_realization(D))}" for D, c in exp.items()]
    _emit(args, "\n".join(text), {"sign": sign, "word": format_word(w), "expansion": exp.to_json()})


def cmd_basis(args):
    if args.cls is None:
        cls = "aug-inc" if args.s == args.n - 1 else "aug-ninc"
    else:
        cls = args.cls
    forests = enumerate_forests(args.n, args.s, cls)
    if args.roots is not None:
        want = sorted(_int_list(args.roots))
        forests = [D for D in forests if sorted(D.roots()) == want]
    text = "\n".join(f"{D.to_text()}  {format_word(forest_realization(D))}" for D in forests)
    _emit(args, text, {"n": args.n, "s": args.s, "class": cls, "count": len(forests),
                       "forests": [D.to_text() for D in forests]})


def cmd_dim(args):
    d = xi_dimension(args.n, args.s, verify=args.verify)
    _emit(args, str(d), {"n": args.n, "s": args.s, "dim": d})


def cmd_dyson(args):
    a = _int_list(args.a)
    res = bk.cmd_dyson(a)
    text = f"computed {_frac(res['computed'])} expected {_frac(res['expected'])} match {res['match']}"
    _emit(args, text, {"a": a, "computed": _frac(res["computed"]), "expected": _frac(res["expected"]),
                       "match": res["match"]})


def cmd_birkhoff(args):
    ts = _int_list(args.t)
    res = bk.cmd_birkhoff(args.n, ts, args.interpolate, args.threads)
    lines = [f"H_{args.n}({t}) = {_frac(v)}" for t, v in sorted(res.values.items())]
    if res.polynomial is not None:
        lines.append("polynomial (constant first): " + " ".join(_frac(c) for c in res.polynomial))
    _emit(args, "\n".join(lines), res.to_json())


def build_parser() -> argparse.ArgumentParser:
    p = _ArgParser(prog="ctalg", description="Exact constant term algebra of type A.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_ArgParser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=("text", "json"), default="text")
        return sp

    def fn_args(sp):
        sp.add_argument("--input", help="file with a type-A function (JSON or text)")
        sp.add_argument("--expr", help="type-A function in the text grammar")

    sp = add("ct", cmd_ct, "constant term over all variables")
    fn_args(sp)
    sp = add("apply", cmd_apply, "apply an operator word or combination")
    fn_args(sp)
    sp.add_argument("--word")
    sp.add_argument("--combo", help="JSON list of {coeff, word}")
    sp.add_argument("--n", type=int)
    sp = add("pfd", cmd_pfd, "partial fractions in one variable")
    fn_args(sp)
    sp.add_argument("--var", type=int, required=True)
    sp = add("normalize", cmd_normalize, "rewrite a word to normal form and expand in the basis")
    sp.add_argument("--word", required=True)
    sp.add_argument("--n", type=int)
    sp.add_argument("--increasing", action="store_true", help="top degree: fully increasing form")
    sp = add("basis", cmd_basis, "enumerate forests")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--class", dest="cls", choices=("all", "inc", "ninc", "aug-inc", "aug-ninc"))
    sp.add_argument("--roots", help="comma list; keep forests with exactly these roots")
    sp = add("dim", cmd_dim, "dimension of a graded piece")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--verify", action="store_true", help="also check the evaluation matrix rank")
    sp = add("dyson", cmd_dyson, "check the Dyson identity")
    sp.add_argument("--a", required=True, help="exponents, e.g. 1,1,2")
    sp = add("birkhoff", cmd_birkhoff, "Ehrhart values of the Birkhoff polytope")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", default="0..9", help="values, e.g. 0..9 or 1,3")
    sp.add_argument("--interpolate", action="store_true")
    sp.add_argument("--threads", type=int)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except ParseError as exc:
        _fail("ParseError", str(exc), 2)
    except (CtAlgError, ValueError) as exc:
        _fail(type(exc).__name__, str(exc), 1)
    return 0


if __name__ == "__main__":
    sys.exit(main())
