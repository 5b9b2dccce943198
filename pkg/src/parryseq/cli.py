"""Command-line entry point: ``parryseq <command> [options]``."""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from pathlib import Path

from . import automata, beta as betamod, experiments, numsys, sequences
from .algebraic import FieldElement, isolate_real_roots
from .errors import ParrySeqError

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2

BUILTIN_SYSTEMS = {
    "fibonacci": numsys.fibonacci,
    "modified-fibonacci": numsys.modified_fibonacci,
    "example-2.3": numsys.affine_three,
    "eq-4.1": numsys.quartic,
    "affine-3": numsys.affine_three,
    "quartic": numsys.quartic,
}


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# argument helpers


def load_system(spec: str) -> numsys.NumerationSystem:
    """A builtin name, ``base-k``, or a path to a JSON system file."""
    if spec in BUILTIN_SYSTEMS:
        system = BUILTIN_SYSTEMS[spec]()
    elif spec.startswith("base-"):
        try:
            k = int(spec[5:])
        except ValueError:
            raise UsageError(f"bad base in {spec!r}") from None
        system = numsys.base(k)
    else:
        path = Path(spec)
        if not path.is_file():
            raise UsageError(f"unknown system {spec!r} (not a builtin and no such file)")
        try:
            data = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise UsageError(f"{spec}: {exc}") from None
        system = numsys.NumerationSystem.from_json(data)
        system.name = data.get("name", path.stem)
    _attach_cached_language(system)
    return system


def _cache_file(system) -> Path | None:
    root = os.environ.get("PARRYSEQ_CACHE_DIR")
    if not root:
        return None
    key = hashlib.sha256(json.dumps(system.to_json(), sort_keys=True).encode()).hexdigest()[:16]
    return Path(root) / f"system-{key}.json"


def _attach_cached_language(system) -> None:
    """Reuse terms and the numeration automaton stored under PARRYSEQ_CACHE_DIR."""
    path = _cache_file(system)
    if path is None or not path.is_file():
        return
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError):
        return
    terms = data.get("terms", [])
    if terms and system.terms(len(terms)) == terms and system.language is None and "language" in data:
        system.language = automata.from_json(data["language"])


def _store_cache(system, n_terms=64) -> None:
    path = _cache_file(system)
    if path is None or system.language is None:
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    data = {"system": system.to_json(), "terms": system.terms(n_terms),
            "language": automata.to_json(system.language)}
    tmp = path.with_suffix(".tmp")
    tmp.write_text(json.dumps(data))
    tmp.replace(path)


def _numeration(system):
    lang = automata.numeration_automaton(system)
    _store_cache(system)
    return lang


def parse_beta(args):
    if args.poly:
        try:
            coeffs = [int(c) for c in args.poly.split(",")]
        except ValueError:
            raise UsageError("--poly expects integer coefficients, constant term first") from None
        roots = isolate_real_roots(coeffs)
        if not roots:
            raise UsageError("polynomial has no real root")
        return roots[-1]
    name = args.builtin or "eq-4.1"
    if name in ("eq-4.1", "quartic"):
        return betamod.quartic_roots()[0]
    if name == "golden":
        return betamod.golden_mean()
    if name.startswith("base-"):
        return betamod.integer_base(int(name[5:]))
    raise UsageError(f"unknown builtin beta {name!r}")


def parse_x(text: str, root):
    """``p/q``, ``c0,c1,...`` (coordinates on 1, beta, beta^2, ...) or ``p/q/beta^r``."""
    text = text.strip().replace(" ", "")
    try:
        if "beta" in text:
            head, _, power = text.rpartition("/beta")
            r = int(power[1:]) if power.startswith("^") else 1
            return Fraction(head) / FieldElement.generator(root) ** r
        if "," in text:
            return [Fraction(c) for c in text.split(",")]
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse x={text!r}") from None


def make_sequence(spec: str, system) -> sequences.AutomaticSequence:
    """``char:PATTERN`` (pattern like ``10*``) or ``digitsum:K``."""
    kind, _, arg = spec.partition(":")
    if kind == "char":
        lang = automata.word_set_automaton(system.alphabet, arg or "10*")
        _numeration(system)
        return sequences.char_sequence_from_regular_set(system, lang)
    if kind == "digitsum":
        try:
            k = int(arg)
        except ValueError:
            raise UsageError(f"bad modulus in {spec!r}") from None
        return sequences.AutomaticSequence(system, automata.digit_sum_mod(system.alphabet, k))
    raise UsageError(f"unknown sequence {spec!r}; use char:PATTERN or digitsum:K")


COMBINE = {
    "xor": lambda a, b: a ^ b,
    "and": lambda a, b: a & b,
    "pair": lambda a, b: (a, b),
}


# ---------------------------------------------------------------------------
# commands; each returns (text, exit code)


def cmd_rep(args):
    system = load_system(args.system)
    words = [numsys.format_word(system.rep(n)) for n in args.n]
    if args.format == "json":
        return json.dumps(dict(zip(map(str, args.n), words))) + "\n", EXIT_OK
    if args.format == "csv":
        return "n,rep\n" + "".join(f"{n},{w}\n" for n, w in zip(args.n, words)), EXIT_OK
    return "".join(w + "\n" for w in words), EXIT_OK


def cmd_val(args):
    system = load_system(args.system)
    try:
        words = [numsys.parse_word(w) for w in args.word]
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    values = [system.val(w) for w in words]
    if args.format == "json":
        return json.dumps(dict(zip(args.word, values))) + "\n", EXIT_OK
    if args.format == "csv":
        return "word,val\n" + "".join(f"{w},{v}\n" for w, v in zip(args.word, values)), EXIT_OK
    return "".join(f"{v}\n" for v in values), EXIT_OK


def cmd_enumerate(args):
    system = load_system(args.system)
    if args.max_len is not None:
        words = [system.rep(n) for n in range(system.term(args.max_len))]
    else:
        lang = automata.without_leading_zeros(_numeration(system))
        words = automata.enumerate_genealogical(lang, args.count)
    rows = [(system.val(w), numsys.format_word(w)) for w in words]
    if args.format == "json":
        return json.dumps([{"val": v, "rep": w} for v, w in rows]) + "\n", EXIT_OK
    if args.format == "csv":
        return "val,rep\n" + "".join(f"{v},{w}\n" for v, w in rows), EXIT_OK
    return "".join(f"{w}\n" for _, w in rows), EXIT_OK


def cmd_beta(args):
    root = parse_beta(args)
    x = parse_x(args.x, root)
    digits = args.digits if args.digits is not None else 20
    e = betamod.beta_expand(root, x)
    e.find_period(args.max_steps if args.max_steps is not None else max(digits, 1))
    text = e.format(digits)
    if args.format == "json":
        out = {"beta": float(root), "x": args.x, "digits": betamod._format_digits(e.digits(digits)),
               "formatted": text,
               "preperiod": e.periodicity[0] if e.periodicity else None,
               "period": e.periodicity[1] if e.periodicity else None}
        return json.dumps(out) + "\n", EXIT_OK
    return text + "\n", EXIT_OK


def _pick_automaton(args):
    kind = args.kind
    if kind == "quadratic":
        return automata.quadratic_automaton()
    if kind == "parry":
        return automata.canonical_parry_automaton(betamod.quasi_greedy(parse_beta(args)))
    system = load_system(args.system)
    if kind == "numeration":
        return _numeration(system)
    if kind == "sequence":
        return make_sequence(args.seq, system).machine
    raise UsageError(f"unknown automaton kind {kind!r}")


def cmd_automaton(args):
    a = _pick_automaton(args)
    if args.format == "dot":
        return automata.to_dot(a, args.kind), EXIT_OK
    if args.format == "json":
        return automata.dumps(a) + "\n", EXIT_OK
    lines = [f"states {a.n_states}, initial {a.initial}, finals {sorted(a.finals)}"]
    for q, row in enumerate(a.delta):
        label = a.names[q] if a.names else q
        out = f" / {a.outputs[q]}" if isinstance(a, automata.Dfao) else ""
        moves = ", ".join(f"{s}->{t}" for s, t in row.items())
        lines.append(f"{label}{out}: {moves}")
    return "\n".join(lines) + "\n", EXIT_OK


def _substitution_for(args):
    if args.substitution:
        try:
            return sequences.Substitution.parse(args.substitution), None
        except (ValueError, KeyError):
            raise UsageError(f"cannot parse substitution {args.substitution!r}") from None
    if args.kind == "quadratic":
        return sequences.automaton_to_substitution(automata.quadratic_automaton())
    system = load_system(args.system)
    seq = make_sequence(args.seq, system)
    prod = automata.product_dfao(_numeration(system), seq.machine)
    return sequences.automaton_to_substitution(prod)


def cmd_substitution(args):
    sub, coding = _substitution_for(args)
    length = args.length
    if args.format == "json":
        out = {"substitution": sub.format(), "seed": sub.name(sub.seed)}
        if coding:
            out["coding"] = {sub.name(q): v for q, v in coding.items()}
        if length:
            out["prefix"] = [sub.name(a) for a in sequences.fixed_point(sub, length)]
        return json.dumps(out, default=str) + "\n", EXIT_OK
    lines = [sub.format()]
    if coding:
        lines.append("coding: " + ", ".join(f"{sub.name(q)}->{v}" for q, v in coding.items()))
    if length:
        word = sequences.fixed_point(sub, length)
        lines.append("prefix: " + "".join(sub.name(a) for a in word))
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_complexity(args):
    n_max = args.max_len if args.max_len is not None else 60
    sub, coding = _substitution_for(args)
    table = sequences.fixed_point_complexity(sub, n_max, coding)
    diag = sequences.growth_diagnostic(table)
    if args.format == "csv":
        return sequences.complexity_csv(table), EXIT_OK
    if args.format == "json":
        return json.dumps({"p": table, "diagnostic": diag}) + "\n", EXIT_OK
    lines = [f"{n} {p} {p / n:.4f}" for n, p in enumerate(table, start=1)]
    lines.append(f"diagnostic: {diag['verdict']} (max p(n)/n = {diag['max_ratio']:.4f})")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_prefix(args):
    system = load_system(args.system)
    seq = make_sequence(args.seq, system)
    values = seq.prefix(args.length)
    if args.format == "csv":
        return sequences.prefix_csv(values), EXIT_OK
    if args.format == "json":
        return json.dumps(values) + "\n", EXIT_OK
    return "".join(str(v) for v in values) + "\n", EXIT_OK


def cmd_kernel(args):
    system = load_system(args.system)
    seq = make_sequence(args.seq, system)
    suffix_len = args.max_len if args.max_len is not None else 3
    table = sequences.kernel(seq, suffix_len, args.window)
    count = sequences.kernel_finiteness(seq)
    if args.format == "json":
        return table.to_json() + "\n", EXIT_OK
    lines = [f"kernel classes: {count}", f"value classes: {table.value_classes()}"]
    for key, cid in sorted(table.entries.items(), key=lambda kv: (len(kv[0]), kv[0])):
        window = "".join(str(v) for v in table.classes[cid].window)
        lines.append(f"{numsys.format_word(key)}\t{cid}\t{window}")
    return "\n".join(lines) + "\n", EXIT_OK


def cmd_kernel2d(args):
    system = load_system(args.system)
    _numeration(system)
    first = make_sequence(args.seq, system).machine
    second = make_sequence(args.seq2 or args.seq, system).machine
    machine = sequences.pair_machine(first, second, COMBINE[args.combine])
    suffix_len = args.max_len if args.max_len is not None else 1
    table = sequences.kernel2d(machine, system, suffix_len, args.window)
    rebuilt = sequences.kernel2d_to_dfao(table)
    size = args.grid
    want = sequences.Grid2D.from_machine(machine, system, size, size)
    got = sequences.Grid2D.from_machine(rebuilt, system, size, size)
    same = want.rows == got.rows
    if args.format == "json":
        out = {"classes": len(table), "rebuilt_states": rebuilt.n_states, "grid": size,
               "round_trip": same, "kernel": json.loads(table.to_json())}
        return json.dumps(out) + "\n", EXIT_OK if same else EXIT_MISMATCH
    if args.format == "csv":
        return got.to_csv(), EXIT_OK if same else EXIT_MISMATCH
    lines = [f"kernel classes: {len(table)}", f"rebuilt machine: {rebuilt.n_states} states",
             f"round trip on [0,{size})^2: {'agrees' if same else 'DIFFERS'}"]
    return "\n".join(lines) + "\n", EXIT_OK if same else EXIT_MISMATCH


def _run_one(name):
    return experiments.run(name)


def cmd_reproduce(args):
    names = list(experiments.REGISTRY) if args.name == "all" else [args.name]
    for n in names:
        if n not in experiments.REGISTRY:
            raise UsageError(f"unknown experiment {n!r}; try list-builtins")
    if args.parallel and len(names) > 1:
        with ProcessPoolExecutor() as pool:
            reports = list(pool.map(_run_one, names))
    else:
        reports = [_run_one(n) for n in names]
    failed = any(r.kind != "finding" and not r.passed for r in reports)
    if args.timing:
        for r in reports:
            print(f"{r.name}: {r.runtime:.2f} s", file=sys.stderr)
    code = EXIT_MISMATCH if failed else EXIT_OK
    if args.format == "json":
        return json.dumps([r.to_json() for r in reports], indent=1) + "\n", code
    if args.format == "csv":
        lines = ["experiment,label,produced,expected,tag,ok"]
        for r in reports:
            for row in r.rows:
                lines.append(",".join(json.dumps(str(v)) if "," in str(v) else str(v) for v in
                                      (r.name, row.label, row.produced, row.expected, row.tag, row.ok)))
        return "\n".join(lines) + "\n", code
    return "\n".join(r.to_text() for r in reports), code


def cmd_list_builtins(args):
    lines = ["systems:"]
    lines += [f"  {name}" for name in BUILTIN_SYSTEMS] + ["  base-K (K >= 2)"]
    lines += ["betas:", "  eq-4.1 (alias quartic)", "  golden", "  base-K"]
    lines += ["sequences:", "  char:PATTERN (e.g. char:10*)", "  digitsum:K"]
    lines += ["experiments:"] + [f"  {name}" for name in experiments.REGISTRY]
    return "\n".join(lines) + "\n", EXIT_OK


# ---------------------------------------------------------------------------


GLOBAL_DEFAULTS = {"system": "eq-4.1", "format": "text", "digits": None, "max_len": None,
                   "out": None, "timing": False}


def _globals_parser() -> argparse.ArgumentParser:
    # SUPPRESS keeps a value given before the subcommand from being reset after it
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--system", default=argparse.SUPPRESS,
                   help="builtin name, base-K, or JSON file (default eq-4.1)")
    p.add_argument("--format", choices=["text", "json", "csv", "dot"], default=argparse.SUPPRESS)
    p.add_argument("--digits", type=int, default=argparse.SUPPRESS)
    p.add_argument("--max-len", type=int, default=argparse.SUPPRESS, dest="max_len")
    p.add_argument("--out", default=argparse.SUPPRESS, help="write output to FILE")
    p.add_argument("--timing", action="store_true", default=argparse.SUPPRESS,
                   help="print runtime to stderr")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _globals_parser()
    parser = argparse.ArgumentParser(prog="parryseq", parents=[common],
                                     description="Numeration systems, beta-expansions and automatic sequences.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("rep", cmd_rep, "greedy representations")
    p.add_argument("n", type=int, nargs="+")
    p = add("val", cmd_val, "values of digit words")
    p.add_argument("word", nargs="+")
    p = add("enumerate", cmd_enumerate, "representations in genealogical order")
    p.add_argument("--count", type=int, default=20)

    def beta_opts(p):
        g = p.add_mutually_exclusive_group()
        g.add_argument("--builtin", help="eq-4.1 (or quartic), golden or base-K")
        g.add_argument("--poly", help="integer coefficients, constant term first; beta is the largest real root")

    p = add("beta", cmd_beta, "beta-expansion digits")
    beta_opts(p)
    p.add_argument("--x", default="1", help="p/q, coordinates c0,c1,..., or p/q/beta^r")
    p.add_argument("--max-steps", type=int, default=None, dest="max_steps",
                   help="digits to scan for a period (default: --digits)")

    def seq_opts(p):
        p.add_argument("--seq", default="char:10*", help="char:PATTERN or digitsum:K")

    p = add("automaton", cmd_automaton, "export an automaton")
    beta_opts(p)
    p.add_argument("--kind", choices=["numeration", "parry", "quadratic", "sequence"], default="numeration")
    seq_opts(p)

    for name, func, text in (("substitution", cmd_substitution, "substitution from an automaton"),
                             ("complexity", cmd_complexity, "exact factor complexity table")):
        p = add(name, func, text)
        p.add_argument("--kind", choices=["sequence", "quadratic"], default="sequence")
        p.add_argument("--substitution", help='explicit substitution, e.g. "a->aaab, b->b"')
        seq_opts(p)
        if name == "substitution":
            p.add_argument("--length", type=int, default=0, help="also print a fixed-point prefix")

    p = add("prefix", cmd_prefix, "prefix of an automatic sequence")
    seq_opts(p)
    p.add_argument("--length", type=int, default=64)

    p = add("kernel", cmd_kernel, "kernel classes of an automatic sequence")
    seq_opts(p)
    p.add_argument("--window", type=int, default=24)

    p = add("kernel2d", cmd_kernel2d, "2D kernel and round trip back to a machine")
    seq_opts(p)
    p.add_argument("--seq2", default=None, help="second coordinate sequence (default: --seq)")
    p.add_argument("--combine", choices=sorted(COMBINE), default="xor")
    p.add_argument("--window", type=int, default=8)
    p.add_argument("--grid", type=int, default=30)

    p = add("reproduce", cmd_reproduce, "rerun a registered experiment against golden values")
    p.add_argument("name", help="experiment name or 'all'")
    p.add_argument("--parallel", action="store_true")

    add("list-builtins", cmd_list_builtins, "list named systems, betas, sequences and experiments")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for key, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, key):
            setattr(args, key, value)
    start = time.perf_counter()
    try:
        text, code = args.func(args)
    except UsageError as exc:
        print(f"parryseq: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParrySeqError as exc:
        print(f"parryseq: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    if args.timing and args.command != "reproduce":
        print(f"{args.command}: {time.perf_counter() - start:.3f} s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
