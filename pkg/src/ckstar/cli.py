"""Command-line front end: ``ckstar <matrix|ktheory|expr|rep|shift> ...``.

Exit codes: 0 success, 1 a property check came out false, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import bialgebra as bi
from .expression import ExpressionError, element_to_json, parse_expression
from .integer_ktheory import k_groups
from .matrix_monoid import MatrixError, ZeroOneMatrix, classify, divisors, kronecker, load_matrix
from .permutative_reps import DEFAULT_DEPTH, CycleWord, RepresentationError, decompose, verify_decomposition
from .star_algebra import format_scalar
from .subshift import word_count, words

OK, CHECK_FAILED, INPUT_ERROR = 0, 1, 2


class InputError(Exception):
    pass


def _matrix(spec: str) -> tuple[ZeroOneMatrix, str]:
    """Load a matrix and a display tag (file stem, or the matrix label)."""
    a = load_matrix(spec)
    p = Path(spec)
    return a, (p.stem if p.is_file() else a.label())


def _word(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise InputError(f"cannot read word {text!r}; expected comma-separated letters") from None


def _emit(args, payload, lines: Sequence[str]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


# ----------------------------------------------------------------------- matrix


def cmd_matrix_classify(args) -> int:
    a, tag = _matrix(args.matrix)
    c = classify(a)
    payload = {"matrix": a.to_json(), "tag": tag, **c._asdict()}
    lines = [f"matrix: {tag} ({a.n}x{a.n})"] + [f"{k}: {'yes' if v else 'no'}" for k, v in c._asdict().items()]
    _emit(args, payload, lines)
    return OK


def cmd_matrix_factor(args) -> int:
    a, _ = _matrix(args.matrix)
    pairs = divisors(a)
    payload = [{"left": p.left.to_json(), "right": p.right.to_json()} for p in pairs]
    _emit(args, payload, [f"{p.left.label()} (x) {p.right.label()}" for p in pairs])
    return OK


def cmd_ktheory(args) -> int:
    a, _ = _matrix(args.matrix)
    kg = k_groups(a)
    payload = {"K0": kg.k0.to_json(), "K1": kg.k1.to_json(), "text": f"K0 = {kg.k0}, K1 = {kg.k1}"}
    lines = [payload["text"]]
    if args.smith:
        payload["smith_diagonal"] = list(kg.smith_diagonal)
        lines.append("Smith diagonal: " + " ".join(map(str, kg.smith_diagonal)))
    _emit(args, payload, lines)
    return OK


# ------------------------------------------------------------------------- expr


def _element(args):
    a, _ = _matrix(args.context)
    return parse_expression(args.expression, a)


def cmd_expr_normalize(args) -> int:
    x = _element(args)
    _emit(args, element_to_json(x), [str(x)])
    return OK


def cmd_expr_delta(args) -> int:
    x = _element(args)
    d = bi.delta(x)
    payload: dict = {"terms": d.to_json()}
    lines = d.lines() or ["0"]
    status = OK
    if args.check:
        checks = {
            "coassociativity": bi.check_coassociativity(x),
            "counit": bi.check_counit_laws(x),
            "homomorphism": bi.check_homomorphism(x, x.adjoint()),
            "gauge": bi.check_gauge_morphism(x),
        }
        payload["checks"] = checks
        lines += [f"{k}: {'ok' if v else 'FAILED'}" for k, v in checks.items()]
        status = OK if all(checks.values()) else CHECK_FAILED
    _emit(args, payload, lines)
    return status


def cmd_expr_counit(args) -> int:
    x = _element(args)
    c = bi.counit(x)
    _emit(args, {"real": str(c.real), "imag": str(c.imag), "text": format_scalar(c)}, [format_scalar(c)])
    return OK


def cmd_expr_gauge(args) -> int:
    x = _element(args)
    g = bi.gauge(args.var, x)
    payload, lines = [], []
    for ph, v in g.parts.items():
        body = str(next(iter(v.components.values())))
        item = {"phase": {k: str(e.value) for k, e in ph.exponents}, "text": body}
        line = f"{ph} * ({body})"
        if args.theta is not None:
            val = ph.evaluate({args.var: args.theta})
            item["value"] = [val.real, val.imag]
            line += f"    [{val.real:.6g}{val.imag:+.6g}i]"
        payload.append(item)
        lines.append(line)
    _emit(args, payload, lines or ["0"])
    return OK


def cmd_expr_member(args) -> int:
    x = _element(args)
    sigma = args.sigma
    if args.family == "CK_sigma":
        if sigma is None:
            raise InputError("--sigma is required for CK_sigma")
        if sigma not in bi.SIGMA_PRESETS:
            letters = set(_word(sigma))
            sigma = lambda a, letters=letters: letters  # noqa: E731
    member = bi.membership(x, args.family, sigma)
    closed = member and bi.tensor_membership(bi.delta(x), args.family, sigma)
    payload = {"family": args.family, "member": member, "delta_closed": closed}
    _emit(args, payload, [f"member: {'yes' if member else 'no'}", f"delta closed: {'yes' if closed else 'no'}"])
    return OK if closed else CHECK_FAILED


# -------------------------------------------------------------------------- rep


def _rep_inputs(args):
    a, ta = _matrix(args.A)
    b, tb = _matrix(args.B)
    try:
        j = CycleWord(a, _word(args.J))
        k = CycleWord(b, _word(args.K))
    except (ValueError, IndexError) as exc:
        raise InputError(str(exc)) from None
    return j, k, f"{ta}(x){tb}"


def _dec_payload(dec) -> list[dict]:
    return [{"word": list(w.letters), "primitive": w.primitive, "multiplicity": m} for w, m in dec.components]


def cmd_rep_decompose(args) -> int:
    j, k, tag = _rep_inputs(args)
    dec = decompose(j, k)
    payload = {"context": kronecker(j.context, k.context).to_json(), "components": _dec_payload(dec)}
    _emit(args, payload, dec.lines(tag))
    return OK


def cmd_rep_verify(args) -> int:
    j, k, tag = _rep_inputs(args)
    dec = decompose(j, k)
    ok = verify_decomposition(j, k, dec, args.depth)
    payload = {"components": _dec_payload(dec), "depth": args.depth, "verified": ok}
    _emit(args, payload, dec.lines(tag) + [f"verified at depth {args.depth}: {'yes' if ok else 'NO'}"])
    return OK if ok else CHECK_FAILED


# ------------------------------------------------------------------------ shift


def cmd_shift_words(args) -> int:
    a, _ = _matrix(args.A)
    if args.length < 1:
        raise InputError("word length must be >= 1")
    if args.count_only:
        n = word_count(a, args.length)
        _emit(args, {"length": args.length, "count": n}, [str(n)])
    else:
        ws = words(a, args.length)
        _emit(args, {"length": args.length, "count": len(ws), "words": [list(w) for w in ws]},
              [",".join(map(str, w)) for w in ws])
    return OK


# ----------------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = argparse.ArgumentParser(prog="ckstar", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    m = sub.add_parser("matrix", help="Kronecker monoid operations").add_subparsers(dest="action", required=True)
    q = m.add_parser("classify", parents=[common], help="nondegeneracy, irreducibility, permutation")
    q.add_argument("matrix")
    q.set_defaults(func=cmd_matrix_classify)
    q = m.add_parser("factor", parents=[common], help="all Kronecker divisor pairs")
    q.add_argument("matrix")
    q.set_defaults(func=cmd_matrix_factor)

    q = sub.add_parser("ktheory", parents=[common], help="K0 and K1 from the Smith form of 1 - A^t")
    q.add_argument("matrix")
    q.add_argument("--smith", action="store_true", help="also print the Smith diagonal")
    q.set_defaults(func=cmd_ktheory)

    e = sub.add_parser("expr", help="algebra expressions").add_subparsers(dest="action", required=True)
    for name, func, text in [
        ("normalize", cmd_expr_normalize, "print the normal form"),
        ("delta", cmd_expr_delta, "comultiplication"),
        ("counit", cmd_expr_counit, "counit value"),
        ("gauge", cmd_expr_gauge, "formal gauge action"),
        ("member", cmd_expr_member, "subbialgebra membership and delta closure"),
    ]:
        q = e.add_parser(name, parents=[common], help=text)
        q.add_argument("--context", required=True, help="context matrix file or F<k>")
        q.add_argument("expression")
        q.set_defaults(func=func)
        if name == "delta":
            q.add_argument("--check", action="store_true", help="also run the bialgebra law checks")
        if name == "gauge":
            q.add_argument("--var", default="z")
            q.add_argument("--theta", type=float, help="evaluate phases at z = exp(i theta)")
        if name == "member":
            q.add_argument("--family", required=True, choices=bi.FAMILIES)
            q.add_argument("--sigma", help="1, n, 1n or a comma-separated letter set")

    r = sub.add_parser("rep", help="permutative representations").add_subparsers(dest="action", required=True)
    for name, func in [("decompose", cmd_rep_decompose), ("verify", cmd_rep_verify)]:
        q = r.add_parser(name, parents=[common])
        q.add_argument("-A", required=True)
        q.add_argument("-B", required=True)
        q.add_argument("-J", required=True, help="cycle word over A, e.g. 1,2")
        q.add_argument("-K", required=True, help="cycle word over B")
        q.set_defaults(func=func)
        if name == "verify":
            q.add_argument("--depth", type=int, default=DEFAULT_DEPTH)

    s = sub.add_parser("shift", help="subshift of finite type").add_subparsers(dest="action", required=True)
    q = s.add_parser("words", parents=[common], help="admissible words of a given length")
    q.add_argument("-A", required=True)
    q.add_argument("-l", "--length", type=int, required=True)
    q.add_argument("--count-only", action="store_true")
    q.set_defaults(func=cmd_shift_words)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INPUT_ERROR if exc.code else OK
    try:
        return args.func(args)
    except (InputError, MatrixError, ExpressionError, RepresentationError, ValueError, IndexError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
