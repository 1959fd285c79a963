"""Command line entry point.

Exit codes: 0 success or certified, 1 refuted, 2 usage error,
3 received word with no candidate codeword.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import balance, balls, codes, decode, verify
from .bitseq import as_bitseq, read_words
from .syndromes import TRANSFORMS, vt

EXIT_OK, EXIT_REFUTED, EXIT_USAGE, EXIT_NO_CANDIDATE = 0, 1, 2, 3


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------

def _emit(args, payload: dict, text_lines: list[str]):
    if args.format == "json":
        out = json.dumps(payload, indent=2)
    else:
        out = "\n".join(text_lines)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(out + "\n")
    else:
        print(out)


def _words(args) -> list[str]:
    words = []
    try:
        for w in getattr(args, "words", None) or []:
            words.append(as_bitseq(w))
        if getattr(args, "file", None):
            words += read_words(args.file)
    except ValueError as exc:
        raise UsageError(f"bad bitstring: {exc}") from None
    if not words:
        raise UsageError("no input sequences (give them as arguments or with --file)")
    return words


def _anchor_word(text):
    if text is None:
        return None
    value = text.split("=", 1)[1] if text.startswith("x=") else text
    try:
        return as_bitseq(value)
    except ValueError as exc:
        raise UsageError(f"--anchor: {exc}") from None


def _spec(tokens, anchor=None, flag="code spec", need_residues=True):
    """Parse key=value tokens; ``x=`` is returned separately."""
    try:
        pairs = codes.parse_pairs(tokens)
        x = pairs.pop("x", None)
        has_residues = bool(set(pairs) - {"code", "n", "ell", "eps", "P", "m", "boundary", "mode"})
        anchor = _anchor_word(anchor)
        if anchor is not None and has_residues:
            raise UsageError("--anchor conflicts with explicit residues")
        if "n" not in pairs and anchor is not None:
            pairs["n"] = str(len(anchor))
        spec = codes.CodeSpec.from_pairs(pairs)
        if anchor is not None:
            spec = spec.anchored(anchor)
        if need_residues and spec.residues is None:
            raise UsageError(f"{flag}: give the residues {' '.join(c.key for c in spec.conditions)} or --anchor")
        if x is not None:
            x = as_bitseq(x)
        return spec, x
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _budget(args):
    if getattr(args, "edits", None) is not None:
        if any(v is not None for v in (args.channel, args.t1, args.t2, args.t3)):
            raise UsageError("--edits cannot be combined with --channel or --t1/--t2/--t3")
        return None
    try:
        if getattr(args, "channel", None):
            if any(v is not None for v in (getattr(args, "t1", None), getattr(args, "t2", None), getattr(args, "t3", None))):
                raise UsageError("--channel cannot be combined with --t1/--t2/--t3")
            return balls.ChannelBudget.parse(args.channel)
        return balls.ChannelBudget(args.t1 or 0, args.t2 or 0, args.t3 or 0)
    except ValueError as exc:
        raise UsageError(f"--channel: {exc}") from None


def _eps(args):
    if args.eps_den == 0:
        raise UsageError("--eps-den must be non-zero")
    return Fraction(args.eps_num, args.eps_den)


# -- subcommands ----------------------------------------------------------------

def cmd_syndrome(args):
    words = _words(args)
    rows = []
    for w in words:
        try:
            raw = vt(TRANSFORMS[args.transform](w), args.k)
        except ValueError as exc:
            raise UsageError(f"--transform {args.transform}: {exc}") from None
        rows.append(raw % args.modulus if args.modulus else raw)
    config = {"transform": args.transform, "k": args.k, "modulus": args.modulus}
    _emit(args, {"config": config, "residues": rows}, [str(r) for r in rows])
    return EXIT_OK


def cmd_balance(args):
    words = _words(args)
    eps = _eps(args)
    try:
        balance.BalanceParams(args.ell, eps)
        if args.regular:
            check = lambda w: balance.is_d_regular(w, args.ell)
            kind = "d_regular"
        elif args.strong:
            check = lambda w: balance.is_strong_locally_balanced(w, args.ell, eps)
            kind = "strong"
        elif args.pair:
            check = lambda w: balance.is_balanced_pair(w, args.ell, eps)
            kind = "balanced_pair"
        else:
            check = lambda w: balance.is_locally_balanced(w, args.ell, eps)
            kind = "local"
        verdicts = [check(w) for w in words]
    except ValueError as exc:
        raise UsageError(f"--ell/--eps: {exc}") from None
    config = {"check": kind, "ell": args.ell, "eps": str(eps)}
    _emit(args, {"config": config, "results": dict(zip(words, verdicts))},
          [f"{w} {str(v).lower()}" for w, v in zip(words, verdicts)])
    return EXIT_OK


def cmd_ball(args):
    x = _words(args)[0]
    b = _budget(args)
    try:
        members = balls.edit_ball(x, args.edits) if b is None else balls.mixed_ball(x, b)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    members = balls.sort_words(members)
    config = {"x": x, "channel": str(b) if b else None, "edits": args.edits}
    _emit(args, {"config": config, "size": len(members), "members": members}, members)
    return EXIT_OK


def _format_ops(ops):
    names = {"D": "del", "S": "sub", "I": "ins"}
    return " ".join(f"{names[o[0]]}@{o[1]}" + (f"={o[2]}" if len(o) > 2 else "") for o in ops) or "none"


def cmd_channel(args):
    if args.seed is None:
        raise UsageError("--seed is required for the channel simulator")
    x = _words(args)[0]
    b = _budget(args)
    rows = []
    try:
        for r in range(args.count):
            seed = args.seed + r
            if b is None:
                y, ops = balls.simulate_edits(x, args.edits, seed)
            else:
                y, ops = balls.simulate_channel(x, b, seed)
            rows.append({"seed": seed, "received": y, "errors": [list(o) for o in ops]})
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = {"x": x, "channel": str(b) if b else None, "edits": args.edits, "seed": args.seed, "count": args.count}
    _emit(args, {"config": config, "samples": rows},
          [f"{r['received']}\t{_format_ops(r['errors'])}" for r in rows])
    return EXIT_OK


def cmd_member(args):
    spec, x = _spec(args.spec, args.anchor)
    if x is None:
        raise UsageError("member needs x=<bitstring>")
    if len(x) != spec.n:
        raise UsageError(f"x has length {len(x)} but n={spec.n}")
    ok = spec.member(x)
    rows = spec.breakdown(x)
    lines = [str(ok).lower()]
    for r in rows:
        detail = f" value={r['value']} residue={r['residue']}" if "value" in r else ""
        lines.append(f"  {'ok  ' if r['ok'] else 'FAIL'} {r['condition']}{detail}")
    _emit(args, {"config": spec.to_dict(), "x": x, "member": ok, "conditions": rows}, lines)
    return EXIT_OK


def cmd_enumerate(args):
    spec, _ = _spec(args.spec, args.anchor)
    try:
        words = codes.enumerate_code(spec, jobs=args.jobs, limit=args.limit)
    except ValueError as exc:
        raise UsageError(f"--limit: {exc}") from None
    _emit(args, {"config": spec.to_dict(), "size": len(words), "codewords": words}, words)
    return EXIT_OK


def cmd_stats(args):
    spec, _ = _spec(args.spec, None, need_residues=False)
    if spec.residues is not None:
        raise UsageError("stats takes no residues; it sweeps every class")
    try:
        stats = codes.partition_stats(spec, jobs=args.jobs, limit=args.limit)
    except ValueError as exc:
        raise UsageError(f"--limit: {exc}") from None
    if args.plot:
        from .plotting import plot_class_sizes
        plot_class_sizes(stats, args.plot, title=f"{spec.code}, n = {spec.n}")
        stats["plot"] = args.plot
    lines = [f"{k}: {v}" for k, v in stats.items() if k != "histogram"]
    lines.append("histogram (size: classes): " + ", ".join(f"{k}: {v}" for k, v in stats["histogram"].items()))
    _emit(args, {"config": spec.to_dict(), **stats}, lines)
    return EXIT_OK


def cmd_decode(args):
    spec, _ = _spec(args.code.split(), args.anchor, flag="--code")
    received = []
    try:
        if args.received:
            received.append(as_bitseq(args.received))
        if args.received_file:
            received += read_words(args.received_file)
    except ValueError as exc:
        raise UsageError(f"--received: {exc}") from None
    if not received:
        raise UsageError("give --received or --received-file")
    b = balls.ChannelBudget.parse(args.channel) if args.channel else None
    results = []
    status = EXIT_OK
    for y in received:
        try:
            if b is not None:
                out = decode.decode_by_search(y, spec.n, b, spec, args.list or 1)
            elif args.list:
                out = decode.list_decode_two_edit(y, spec, args.list)
            else:
                out = decode.decode_two_edit(y, spec)
        except ValueError as exc:
            raise UsageError(f"--received {y}: {exc}") from None
        row = {"received": y, **out.to_dict()}
        if out.kind == decode.UNIQUE and b is not None:
            ops = balls.trace_errors(out.codeword, y, b)
            row["errors"] = [list(o) for o in ops] if ops is not None else None
        results.append(row)
        if out.kind == decode.NONE:
            status = EXIT_NO_CANDIDATE
    config = {**spec.to_dict(), "channel": args.channel or "two-edit", "list": args.list}
    lines = []
    for r in results:
        extra = f" errors: {_format_ops(r['errors'])}" if r.get("errors") else ""
        if r.get("positions") is not None:
            extra += " flipped: " + ",".join(map(str, r["positions"]))
        lines.append(f"{r['received']} {r['kind']} {' '.join(r['candidates'])}{extra}".rstrip())
    _emit(args, {"config": config, "results": results}, lines)
    return status


def _report_lines(rep: dict) -> list[str]:
    lines = [f"verdict: {rep['verdict']}"]
    lines += [f"config.{k}: {v}" for k, v in rep["config"].items()]
    if "witness" in rep:
        lines += [f"witness.{k}: {v}" for k, v in rep["witness"].items()]
    lines += [f"counts.{k}: {v}" for k, v in rep["counts"].items()]
    lines.append(f"elapsed_ms: {rep['elapsed_ms']}")
    return lines


def cmd_verify(args):
    b = _budget(args)
    if args.equivalence:
        check = ("equivalence",)
    elif b is None:
        check = ("edit_list", args.edits, args.list) if args.list else ("edit", args.edits)
    elif args.p_bounded:
        check = ("p_bounded", args.p_bounded, b, args.windows)
    elif args.list:
        check = ("list", b, args.list)
    else:
        check = ("correcting", b)
    if bool(args.code) == bool(args.words_file):
        raise UsageError("give exactly one of --code and --words")
    try:
        if args.words_file:
            words = read_words(args.words_file)
            if not words:
                raise UsageError("--words: file has no sequences")
            rep = verify.check_words(words, check)
        else:
            spec, _ = _spec(args.code.split(), args.anchor, flag="--code", need_residues=not args.all_classes)
            if args.all_classes:
                rep = verify.verify_classes(spec, check, jobs=args.jobs)
            else:
                words = codes.enumerate_code(spec, jobs=args.jobs)
                rep = verify.check_words(words, check)
                rep.config = {**spec.to_dict(), **rep.config}
    except UsageError:
        raise
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    out = rep.to_dict()
    _emit(args, out, _report_lines(out))
    return EXIT_OK if rep.certified else EXIT_REFUTED


def cmd_lemma_suite(args):
    try:
        rep = verify.verify_lemma_suite(args.n_max, jobs=args.jobs)
    except ValueError as exc:
        raise UsageError(f"--n-max: {exc}") from None
    out = rep.to_dict()
    _emit(args, out, _report_lines(out))
    return EXIT_OK if rep.certified else EXIT_REFUTED


# -- parser -----------------------------------------------------------------------

def _add_budget_flags(p, channel=True):
    if channel:
        p.add_argument("--channel", help="budget t1,t2,t3 (insertions, deletions, substitutions)")
    p.add_argument("--t1", type=int, help="exact number of insertions")
    p.add_argument("--t2", type=int, help="exact number of deletions")
    p.add_argument("--t3", type=int, help="maximum number of substitutions")
    p.add_argument("--edits", type=int, help="total edit budget t instead of a mixed budget")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--out", help="write the report to this file instead of stdout")

    parser = argparse.ArgumentParser(prog="twoedit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("syndrome", parents=[common], help="VT syndromes of sequences")
    p.add_argument("words", nargs="*")
    p.add_argument("--file", help="newline-delimited bitstrings")
    p.add_argument("--transform", choices=sorted(TRANSFORMS), default="identity")
    p.add_argument("-k", type=int, default=1, help="syndrome order")
    p.add_argument("--modulus", type=int, default=0, help="reduce modulo this (0 keeps the raw value)")
    p.set_defaults(func=cmd_syndrome)

    p = sub.add_parser("balance", parents=[common], help="balance and regularity predicates")
    p.add_argument("words", nargs="*")
    p.add_argument("--file")
    p.add_argument("--ell", type=int, required=True, help="window length")
    p.add_argument("--eps-num", type=int, default=1)
    p.add_argument("--eps-den", type=int, default=18)
    g = p.add_mutually_exclusive_group()
    g.add_argument("--strong", action="store_true", help="every window length >= ell")
    g.add_argument("--pair", action="store_true", help="strong check on x and its differential")
    g.add_argument("--regular", action="store_true", help="every ell-window holds 11 and 00")
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("ball", parents=[common], help="list an error ball")
    p.add_argument("words", nargs=1, metavar="x")
    _add_budget_flags(p)
    p.set_defaults(func=cmd_ball, file=None)

    p = sub.add_parser("channel", parents=[common], help="sample the error channel")
    p.add_argument("words", nargs=1, metavar="x")
    _add_budget_flags(p)
    p.add_argument("--seed", type=int, help="required; sample r uses seed + r")
    p.add_argument("--count", type=int, default=1)
    p.set_defaults(func=cmd_channel, file=None)

    p = sub.add_parser("member", parents=[common], help="membership with a per-condition breakdown")
    p.add_argument("spec", nargs="+", help="key=value tokens including x=<bitstring>")
    p.add_argument("--anchor", help="use the residues of this word (x=<bitstring>)")
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("enumerate", parents=[common], help="list the codewords of a class")
    p.add_argument("spec", nargs="+")
    p.add_argument("--anchor")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--limit", type=int, default=codes.ENUMERATE_LIMIT)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("stats", parents=[common], help="class-size statistics over all residues")
    p.add_argument("spec", nargs="+", help="code=... n=... and optional parameters")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--limit", type=int, default=codes.ENUMERATE_LIMIT)
    p.add_argument("--plot", help="write a class-size histogram to this image file")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("decode", parents=[common], help="decode received words")
    p.add_argument("--code", required=True, help='quoted spec, e.g. "code=C2E n=8 ..."')
    p.add_argument("--anchor")
    p.add_argument("--received")
    p.add_argument("--received-file")
    p.add_argument("--channel", help="search this budget instead of the two-edit dispatch")
    p.add_argument("--list", type=int, help="list-decode with this list size")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("verify", parents=[common], help="exhaustive certification")
    p.add_argument("--code", help="quoted spec")
    p.add_argument("--anchor")
    p.add_argument("--words", dest="words_file", help="file of codewords")
    _add_budget_flags(p)
    p.add_argument("--list", type=int, help="list size L")
    p.add_argument("--p-bounded", type=int, metavar="P", help="P-bounded check")
    p.add_argument("--windows", choices=("all", "minimal"), default="all",
                   help="P-bounded windows: every covering window or only the differing one")
    p.add_argument("--equivalence", action="store_true", help="two-edit equivalence check")
    p.add_argument("--all-classes", action="store_true", help="check every residue class")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("lemma-suite", parents=[common], help="pairwise ball lemmas, exhaustive")
    p.add_argument("--n-max", type=int, default=8)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_lemma_suite)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        parser.error("--jobs must be at least 1")
    if args.command == "verify" and not args.equivalence and args.edits is None \
            and not (args.channel or any(v is not None for v in (args.t1, args.t2, args.t3))):
        parser.error("verify needs --channel, --t1/--t2/--t3, --edits or --equivalence")
    try:
        return args.func(args)
    except (UsageError, OSError) as exc:
        print(f"twoedit {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
