"""Command-line surface: combinatorial queries, moments, property checks.

Exit codes: 0 = success / property holds, 1 = counterexample found,
2 = usage or data error.  All output is line-oriented and byte-stable under
fixed flags and seed.
"""
from __future__ import annotations

import argparse
import sys

from . import cumulants as cm
from .bnc import (
    BncPartition,
    bnc_mobius,
    classify_blocks,
    enumerate_bnc,
    is_bi_non_crossing,
    maximal_mono_intervals,
)
from .errors import BiFreeError
from .liberation import (
    ReplacementContext,
    eval_tensor,
    liberation_derivative_check,
    replacement_expand,
    taur,
    taur_test,
    ubm_eval,
    ubm_moment,
)
from .partitions import format_partition, parse_partition
from .specfile import load_family
from .vaccine import vaccine_reconstruct_moment, vaccine_test
from .words import eps_of, word_text


def _parse_eps(text: str) -> tuple:
    return tuple(tok.strip() for tok in text.split(","))


def _mixed_words(d, max_len):
    alphabet = [d.letters_by_face()[k] for k in sorted(d.letters_by_face())]
    words = [()]
    for _ in range(max_len):
        words = [w + (a,) for w in words for a in alphabet]
        for w in words:
            if len(set(eps_of(w))) > 1:
                yield w


def cmd_bnc(args) -> int:
    chi = args.chi
    if args.action == "enum":
        for bp in enumerate_bnc(chi):
            print(format_partition(bp.partition))
    elif args.action == "intervals":
        eps = _parse_eps(args.eps)
        for interval in maximal_mono_intervals(chi, eps):
            print(" ".join(str(i) for i in interval))
    elif args.action == "check":
        p = parse_partition(args.pi, len(chi))
        print("BNC: yes" if is_bi_non_crossing(p, chi) else "BNC: no")
    elif args.action == "blocks":
        p = parse_partition(args.pi, len(chi))
        labels = classify_blocks(BncPartition.of(p, chi))
        for b in p.blocks:
            print(f"{' '.join(str(x) for x in b)}: {labels[b]}")
    elif args.action == "mobius":
        lower = parse_partition(args.lower, len(chi))
        upper = parse_partition(args.upper, len(chi))
        print(bnc_mobius(BncPartition.of(lower, chi), BncPartition.of(upper, chi)))
    return 0


def cmd_moment(args) -> int:
    fam = load_family(args.spec)
    w = fam.word(args.word)
    if args.mode == "bifree":
        print(fam.joint().phi(w))
    elif args.mode == "vaccine":
        print(vaccine_reconstruct_moment(fam.pures, w, seed=args.seed))
    else:
        print(fam.joint().theta(w))
    return 0


def cmd_check(args) -> int:
    fam = load_family(args.spec)
    joint = fam.joint()
    if args.method == "cumulants":
        checked = 0
        for w in _mixed_words(joint, args.max_len):
            value = cm.kappa(joint, w)
            checked += 1
            if value != 0:
                print(f"COUNTEREXAMPLE word={word_text(w)} value={value}")
                return 1
        print(f"HOLDS checked={checked}")
        return 0
    if args.method == "vaccine":
        verdict = vaccine_test(joint, args.max_len, args.trials, args.seed)
        print(verdict.render())
        return 0 if verdict.holds else 1
    if args.method == "taur":
        verdict = taur_test(joint, args.pair, args.max_len, widen=args.widen)
        print(verdict.render())
        return 0 if verdict.holds else 1
    # method == "liberation"
    checked = 0
    ctx = ReplacementContext(fam.pures)
    for w in _mixed_words(joint, args.max_len):
        checked += 1
        if not liberation_derivative_check(fam.pures, w, args.pair, ctx):
            c0, c1 = replacement_expand(fam.pures, w, args.pair, ctx)
            print(f"COUNTEREXAMPLE word={word_text(w)} c0={c0} c1={c1}")
            return 1
    print(f"HOLDS checked={checked}")
    return 0


def cmd_ubm(args) -> int:
    if args.t is None:
        print(ubm_moment(args.n).render())
    else:
        print(f"{ubm_eval(args.n, args.t):.12g}")
    return 0


def cmd_taur(args) -> int:
    fam = load_family(args.spec)
    print(taur(fam.word(args.word), args.pair).render())
    return 0


def cmd_liberate(args) -> int:
    fam = load_family(args.spec)
    w = fam.word(args.word)
    c0, c1 = replacement_expand(fam.pures, w, args.pair)
    joint = fam.joint()
    tv = eval_tensor(joint, taur(w, args.pair))
    ok = c0 == joint.phi(w) and c1 == tv
    print(f"c0={c0}, c1={c1}, taur={tv}, {'MATCH' if ok else 'MISMATCH'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifree",
        description="Exact combinatorics of bi-free independence.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_bnc = sub.add_parser("bnc", help="bi-non-crossing lattice queries")
    p_bnc.add_argument("action",
                       choices=["enum", "intervals", "check", "blocks", "mobius"])
    p_bnc.add_argument("--chi", required=True, help="side string, e.g. rllr")
    p_bnc.add_argument("--eps", help="comma-separated colors, e.g. p0,p1,p1,p0")
    p_bnc.add_argument("--pi", help='partition, e.g. "1|2 5 7|3 4|6 8"')
    p_bnc.add_argument("--lower", help="lower partition for mobius")
    p_bnc.add_argument("--upper", help="upper partition for mobius")
    p_bnc.set_defaults(fn=cmd_bnc)

    p_moment = sub.add_parser("moment", help="evaluate a mixed moment")
    p_moment.add_argument("--spec", required=True)
    p_moment.add_argument("--mode", default="bifree",
                          choices=["bifree", "vaccine", "conditional"])
    p_moment.add_argument("--word", required=True)
    p_moment.add_argument("--seed", type=int, default=None)
    p_moment.set_defaults(fn=cmd_moment)

    p_check = sub.add_parser("check", help="run an independence property check")
    p_check.add_argument("--spec", required=True)
    p_check.add_argument("--method", required=True,
                         choices=["cumulants", "vaccine", "taur", "liberation"])
    p_check.add_argument("--max-len", type=int, default=4, dest="max_len")
    p_check.add_argument("--trials", type=int, default=100)
    p_check.add_argument("--seed", type=int, default=None)
    p_check.add_argument("--pair", help="distinguished pair id")
    p_check.add_argument("--widen", action="store_true",
                         help="use every generator, not one per face")
    p_check.set_defaults(fn=cmd_check)

    p_ubm = sub.add_parser("ubm", help="free unitary Brownian motion moments")
    p_ubm.add_argument("--n", type=int, required=True)
    p_ubm.add_argument("--t", type=float, default=None)
    p_ubm.set_defaults(fn=cmd_ubm)

    p_taur = sub.add_parser("taur", help="render the interval tensor map of a word")
    p_taur.add_argument("--spec", required=True)
    p_taur.add_argument("--word", required=True)
    p_taur.add_argument("--pair", required=True)
    p_taur.set_defaults(fn=cmd_taur)

    p_lib = sub.add_parser("liberate", help="order-t derivative dual-route check")
    p_lib.add_argument("--spec", required=True)
    p_lib.add_argument("--word", required=True)
    p_lib.add_argument("--pair", required=True)
    p_lib.set_defaults(fn=cmd_liberate)

    return parser


def _validate(args, parser):
    if getattr(args, "command", None) == "bnc":
        if args.action == "intervals" and not args.eps:
            parser.error("bnc intervals requires --eps")
        if args.action in ("check", "blocks") and not args.pi:
            parser.error(f"bnc {args.action} requires --pi")
        if args.action == "mobius" and not (args.lower and args.upper):
            parser.error("bnc mobius requires --lower and --upper")
    if getattr(args, "command", None) == "moment":
        if args.mode == "vaccine" and args.seed is None:
            parser.error("--mode vaccine requires --seed")
    if getattr(args, "command", None) == "check":
        if args.method == "vaccine" and args.seed is None:
            parser.error("--method vaccine requires --seed")
        if args.method in ("taur", "liberation") and not args.pair:
            parser.error(f"--method {args.method} requires --pair")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        _validate(args, parser)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (BiFreeError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
