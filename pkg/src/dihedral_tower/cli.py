"""Command-line front end.

Exit codes: 0 success, 1 domain error (and `eq` on unequal words),
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import dihedral, hnn, verifier
from .affine import fixed_point
from .hnn import UnknownLetterError, Word
from .tower import (
    SessionFormatError,
    TowerState,
    conjugator_from_t,
    session_load,
    session_save,
    transporter,
)
from .words import WordSyntaxError, format_word


class UsageError(Exception):
    pass


def _words(state, texts):
    return [state.parse(t) for t in texts]


def _involution(state, w):
    w = state.reduce(w)
    if hnn.order_class(state, w) != 2:
        raise ValueError(f"{format_word(w)} is not an involution")
    return w


def _not_j(state, w):
    w = _involution(state, w)
    if w == hnn.J_WORD:
        raise ValueError("j is not allowed here")
    return w


def format_key(key) -> str:
    if isinstance(key, dihedral.ClassOfT):
        if key.conjugator.is_trivial:
            return "class-of-t"
        return f"class-of-t^a a={format_word(key.conjugator)}"
    return format_word(key.u)


def format_centralizer(desc) -> str:
    if isinstance(desc, dihedral.BaseTranslations):
        if desc.conjugator.is_trivial:
            return "translations"
        return f"translations^a a={format_word(desc.conjugator)}"
    return f"cyclic {format_word(desc.generator)}"


def cmd_reduce(state, args, out):
    (w,) = _words(state, [args.word])
    print(format_word(state.reduce(w)), file=out)
    return 0


def cmd_eq(state, args, out):
    u, v = _words(state, [args.u, args.v])
    same = state.eq(u, v)
    print("true" if same else "false", file=out)
    return 0 if same else 1


def cmd_mul(state, args, out):
    print(format_word(state.mul(*_words(state, args.words))), file=out)
    return 0


def cmd_inv(state, args, out):
    (w,) = _words(state, [args.word])
    print(format_word(state.inv(w)), file=out)
    return 0


def cmd_conj(state, args, out):
    g, h = _words(state, [args.g, args.h])
    print(format_word(state.conj(g, h)), file=out)
    return 0


def cmd_order(state, args, out):
    (w,) = _words(state, [args.word])
    print(hnn.order_class(state, w), file=out)
    return 0


def cmd_is_inv(state, args, out):
    (w,) = _words(state, [args.word])
    print("true" if hnn.order_class(state, w) == 2 else "false", file=out)
    return 0


def cmd_fix(state, args, out):
    (w,) = _words(state, [args.word])
    w = state.reduce(w)
    if not dihedral.is_affine_involution(w):
        raise ValueError("fix needs an involution of the affine factor")
    q = fixed_point(w.parts[0][0])
    print(q, file=out)
    return 0


def cmd_minimal(state, args, out):
    (s,) = _words(state, [args.s])
    print(format_key(dihedral.equiv_key(state, _not_j(state, s))), file=out)
    return 0


def cmd_equiv(state, args, out):
    s1, s2 = (_not_j(state, w) for w in _words(state, [args.s1, args.s2]))
    print("true" if dihedral.equivalent(state, s1, s2) else "false", file=out)
    return 0


def cmd_cen(state, args, out):
    (s,) = _words(state, [args.s])
    print(format_centralizer(dihedral.centralizer(state, _not_j(state, s))), file=out)
    return 0


def cmd_root(state, args, out):
    (w,) = _words(state, [args.word])
    s = dihedral.nth_root_involution(state, w, args.n)
    if s is None:
        print(f"no involution s with (js)^{args.n} equal to the target", file=sys.stderr)
        return 1
    print(format_word(s), file=out)
    return 0


def cmd_conj_from_t(state, args, out):
    (s,) = _words(state, [args.s])
    print(format_word(conjugator_from_t(state, _not_j(state, s))), file=out)
    return 0


def cmd_transport(state, args, out):
    r1, r2, s1, s2 = _words(state, [args.r1, args.r2, args.s1, args.s2])
    print(format_word(transporter(state, (r1, r2), (s1, s2))), file=out)
    return 0


def cmd_letters(state, args, out):
    for letter in state.letters:
        print(f"f{{{letter.id}}} level {letter.level} key {format_word(letter.key)}", file=out)
    return 0


def cmd_verify(state, args, out):
    if args.all and args.suite:
        raise UsageError("use either --all or --suite")
    names = args.suite or list(verifier.SUITES)
    config = verifier.SuiteConfig(seed=args.seed, sample_count=args.size)
    verifier.prime_tower(state)
    reports = verifier.run_suites(names, config, state)
    print(verifier.render_reports(reports), file=out)
    return 0 if all(r.passed for r in reports) else 1


def cmd_session(state, args, out):
    if args.action == "reset":
        state.letters.clear()
    out.write(session_save(state))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="dihedral-tower", description="Words in the tower of HNN extensions over AGL(1,Q)*Z.")
    p.add_argument("--session", type=Path, help="session file holding the stable letters")
    p.add_argument("--write", action="store_true", help="save letters created by the command back to --session")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, fn, *params, help=None):
        sp = sub.add_parser(name, help=help)
        for param in params:
            sp.add_argument(param)
        sp.set_defaults(fn=fn)
        return sp

    verb("reduce", cmd_reduce, "word", help="Britton-reduce a word")
    verb("eq", cmd_eq, "u", "v", help="exit 0 iff the words are equal")
    sp = sub.add_parser("mul", help="product of words, left to right")
    sp.add_argument("words", nargs="+")
    sp.set_defaults(fn=cmd_mul)
    verb("inv", cmd_inv, "word")
    verb("conj", cmd_conj, "g", "h", help="g^h = h^-1 g h")
    verb("order", cmd_order, "word", help="1, 2 or infinite")
    verb("is-inv", cmd_is_inv, "word")
    verb("fix", cmd_fix, "word", help="fixed point of an affine involution")
    verb("minimal", cmd_minimal, "s", help="equivalence key of an involution")
    verb("equiv", cmd_equiv, "s1", "s2")
    verb("cen", cmd_cen, "s", help="centralizer of js")
    sp = sub.add_parser("root", help="involution s with (js)^n = word")
    sp.add_argument("n", type=int)
    sp.add_argument("word")
    sp.set_defaults(fn=cmd_root)
    verb("conj-from-t", cmd_conj_from_t, "s", help="a in Cen(j) with t^a = s")
    verb("transport", cmd_transport, "r1", "r2", "s1", "s2", help="g with r1^g = s1, r2^g = s2")
    verb("letters", cmd_letters)
    sp = sub.add_parser("verify", help="run verifier suites")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--suite", action="append", choices=sorted(set(verifier.SUITES) | set(verifier.ALIASES)))
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--size", type=int, default=200, help="samples per suite")
    sp.set_defaults(fn=cmd_verify)
    sp = sub.add_parser("session", help="print (or reset) the session document")
    sp.add_argument("action", nargs="?", choices=("show", "reset"), default="show")
    sp.set_defaults(fn=cmd_session)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        if args.write and args.session is None:
            raise UsageError("--write needs --session")
        if args.session is not None and args.session.exists():
            state = session_load(args.session.read_text())
        else:
            state = TowerState()
        before = len(state)
        code = args.fn(state, args, out)
        if args.write and (len(state) != before or args.verb == "session"):
            args.session.write_text(session_save(state))
        return code
    except (UsageError, WordSyntaxError, UnknownLetterError, SessionFormatError) as exc:
        print(f"error: {_message(exc)}", file=sys.stderr)
        return 2
    except (ValueError, dihedral.InternalError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def _message(exc) -> str:
    return exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)


if __name__ == "__main__":
    sys.exit(main())
