"""Command-line front end.

    rotabaxter [global flags] eval EXPR
    rotabaxter [global flags] check {words,dendriform,oracle,trees,morphism,envelope}
    rotabaxter [global flags] count {binary,planar,diwords,triwords}
    rotabaxter [global flags] embed {binary,planar} TREE
    rotabaxter [global flags] envelope DFILE --oracle {sequence,polynomial}

Global flags may appear before or after the subcommand.  Exit status is 0
when every check passed, 1 when a check failed and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .base import BaseAlgebraError, load_table, parse_scalar
from .dendriform import DendriformError, load_dendriform
from .enveloping import EnvelopeError, identity_map, verify_envelope
from .free import Context, context
from .oracles import PolynomialOracle, SequenceOracle
from .parsing import ParseError, parse_element
from .sampling import make_rng
from .suites import (
    BASES,
    WEIGHTS,
    CheckResult,
    dendriform_suite,
    envelope_suite,
    morphism_suite,
    oracle_suite,
    trees_suite,
    word_side,
    words_suite,
)
from .trees import BINARY, PLANAR, TreeError, catalan, enumerate_trees, is_diword, is_triword, parse_tree, phi, psi, super_catalan
from .words import WordError

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class SessionConfig:
    weight: Fraction | None
    base: str | None
    alphabet: tuple[str, ...] | None
    seed: int
    format: str
    max_n: int
    trials: int

    def context(self) -> Context:
        weight = self.weight if self.weight is not None else Fraction(0)
        base = self.base or "zero"
        if base.startswith("table:"):
            try:
                algebra = load_table(base[len("table:") :])
            except OSError as exc:
                raise UsageError(f"cannot read table: {exc}") from None
            return Context(algebra, weight, self.alphabet or algebra.generators)
        if base not in ("zero", "tensor"):
            raise UsageError(f"unknown base {base!r}; use zero, tensor or table:PATH")
        return context(base, weight, self.alphabet)


def _read_alphabet(path: str | None) -> tuple[str, ...] | None:
    if path is None:
        return None
    try:
        names = Path(path).read_text(encoding="utf-8").split()
    except OSError as exc:
        raise UsageError(f"cannot read alphabet: {exc}") from None
    if not names:
        raise UsageError("alphabet file is empty")
    return tuple(dict.fromkeys(names))


def _global_flags() -> argparse.ArgumentParser:
    # SUPPRESS lets the same flags appear on both sides of the subcommand
    # without the subparser defaults clobbering earlier values.
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--weight", help="Rota-Baxter weight, an exact rational (default 0)")
    p.add_argument("--base", help="zero, tensor or table:PATH (default zero)")
    p.add_argument("--alphabet", help="file listing generator names")
    p.add_argument("--seed", type=int, help="seed for randomized suites (default 0)")
    p.add_argument("--format", choices=("text", "json"), help="output format (default text)")
    p.add_argument("--max-n", type=int, dest="max_n", help="largest n for counts and tree suites (default 4)")
    p.add_argument("--trials", type=int, help="random trials per check (default 100)")
    return p


def build_parser() -> argparse.ArgumentParser:
    flags = _global_flags()
    parser = argparse.ArgumentParser(prog="rotabaxter", description="Free Rota-Baxter algebras and dendriform structures.", parents=[flags])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[flags], help="evaluate an element expression")
    p.add_argument("expression")

    p = sub.add_parser("check", parents=[flags], help="run a property suite")
    p.add_argument("suite", choices=("words", "dendriform", "oracle", "trees", "morphism", "envelope"))

    p = sub.add_parser("count", parents=[flags], help="count trees or diwords/triwords for n = 0..max-n")
    p.add_argument("family", choices=("binary", "planar", "diwords", "triwords"))

    p = sub.add_parser("embed", parents=[flags], help="image of a tree under phi (binary) or psi (planar)")
    p.add_argument("family", choices=(BINARY, PLANAR))
    p.add_argument("tree")

    p = sub.add_parser("envelope", parents=[flags], help="check that f-bar kills the ideal generators of a dendriform algebra")
    p.add_argument("dfile")
    p.add_argument("--oracle", choices=("sequence", "polynomial"), required=True)
    p.add_argument("--pairs", type=int, default=None, help="sample this many basis pairs (default all)")
    return parser


def _config(args: argparse.Namespace) -> SessionConfig:
    weight = getattr(args, "weight", None)
    if weight is not None:
        try:
            weight = parse_scalar(weight)
        except ValueError:
            raise UsageError(f"weight {weight!r} is not an exact rational") from None
    cfg = SessionConfig(
        weight=weight,
        base=getattr(args, "base", None),
        alphabet=_read_alphabet(getattr(args, "alphabet", None)),
        seed=getattr(args, "seed", 0),
        format=getattr(args, "format", "text"),
        max_n=getattr(args, "max_n", 4),
        trials=getattr(args, "trials", 100),
    )
    if cfg.trials < 1:
        raise UsageError("--trials must be >= 1")
    if cfg.max_n < 0:
        raise UsageError("--max-n must be >= 0")
    return cfg


def _emit(cfg: SessionConfig, text_lines: Sequence[str], payload: dict, out) -> None:
    if cfg.format == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=False) + "\n")
    else:
        out.write("\n".join(text_lines) + "\n")


# ---------------------------------------------------------------- commands


def cmd_eval(cfg: SessionConfig, expression: str, out) -> int:
    ctx = cfg.context()
    value = parse_element(expression, ctx)
    _emit(cfg, [str(value)], {"schema": 1, "expression": expression, "result": str(value)}, out)
    return EXIT_OK


def _check_results(cfg: SessionConfig, suite: str) -> list[CheckResult]:
    rng = make_rng(cfg.seed)
    bases = BASES if cfg.base is None else (cfg.base,)
    weights = WEIGHTS if cfg.weight is None else (cfg.weight,)
    for b in bases:
        if b not in BASES:
            raise UsageError(f"check {suite} runs over the zero or tensor base, not {b!r}")
    if suite == "words":
        return words_suite(rng, cfg.trials, bases, weights)
    if suite == "dendriform":
        return dendriform_suite(rng, cfg.trials, bases, weights)
    if suite == "oracle":
        return oracle_suite(rng, cfg.trials)
    if suite == "trees":
        return trees_suite(cfg.max_n, cfg.alphabet or ("x", "y"))
    if suite == "morphism":
        return morphism_suite(rng, cfg.trials)
    return envelope_suite()


def cmd_check(cfg: SessionConfig, suite: str, out) -> int:
    results = _check_results(cfg, suite)
    ok = all(r.passed for r in results)
    lines = [r.line() for r in results] + [f"{'PASS' if ok else 'FAIL'}  {suite}: {sum(r.passed for r in results)}/{len(results)} checks passed"]
    payload = {"schema": 1, "suite": suite, "seed": cfg.seed, "pass": ok, "results": [r.to_json() for r in results]}
    _emit(cfg, lines, payload, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_count(cfg: SessionConfig, family: str, out) -> int:
    alphabet = cfg.alphabet or ("x",)
    rows = []
    ok = True
    start = 0 if family in ("binary", "planar") else 1  # the leaf has no word image
    for n in range(start, cfg.max_n + 1):
        if family in ("binary", "planar"):
            got = len(enumerate_trees(family, n, alphabet))
            want = (catalan(n) if family == "binary" else super_catalan(n)) * len(alphabet) ** n
            rows.append({"n": n, "count": got, "formula": want, "pass": got == want})
        else:
            tree_family = BINARY if family == "diwords" else PLANAR
            emb = phi if tree_family == BINARY else psi
            words = set(word_side(tree_family, n, alphabet))
            images = {emb(t) for t in enumerate_trees(tree_family, n, alphabet)}
            rows.append({"n": n, "count": len(words), "from_trees": len(images), "pass": words == images})
        ok = ok and rows[-1]["pass"]
    other = "formula" if family in ("binary", "planar") else "from_trees"
    lines = [f"n={r['n']}  {r['count']}" + ("" if r["pass"] else f"  MISMATCH ({other}: {r[other]})") for r in rows]
    _emit(cfg, lines, {"schema": 1, "family": family, "alphabet": list(alphabet), "pass": ok, "rows": rows}, out)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_embed(cfg: SessionConfig, family: str, text: str, out) -> int:
    t = parse_tree(family, text)
    if t.is_leaf:
        raise UsageError("the leaf tree has no image")
    w = phi(t) if family == BINARY else psi(t)
    pred = is_diword(w) if family == BINARY else is_triword(w)
    name = "diword" if family == BINARY else "triword"
    lines = [str(w)]
    if not pred:
        lines.append(f"FAIL  image is not a {name}")
    _emit(cfg, lines, {"schema": 1, "family": family, "tree": text, "image": str(w), name: pred}, out)
    return EXIT_OK if pred else EXIT_FAIL


def cmd_envelope(cfg: SessionConfig, dfile: str, oracle_kind: str, pairs: int | None, out) -> int:
    try:
        D = load_dendriform(dfile)
    except OSError as exc:
        raise UsageError(f"cannot read {dfile}: {exc}") from None
    D.validate()
    if oracle_kind == "sequence":
        weight = cfg.weight if cfg.weight is not None else Fraction(1)
        oracle = SequenceOracle(D.dim, weight)
    else:
        if cfg.weight not in (None, 0):
            raise UsageError("the polynomial oracle has weight 0")
        oracle = PolynomialOracle(D.dim - 1)
    report = verify_envelope(D, identity_map(D, oracle), oracle, pairs, make_rng(cfg.seed))
    lines = []
    for r in report.results:
        status = "PASS" if r.passed else "FAIL"
        lines.append(f"{status}  ({r.pair[0]}, {r.pair[1]}) {r.generator}: f({r.generator_text}) = {r.residual}")
    lines.append(f"{'PASS' if report.passed else 'FAIL'}  {len(report.results)} generator images, oracle {report.oracle}")
    _emit(cfg, lines, report.to_json(), out)
    return EXIT_OK if report.passed else EXIT_FAIL


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = _config(args)
        if args.command == "eval":
            return cmd_eval(cfg, args.expression, out)
        if args.command == "check":
            return cmd_check(cfg, args.suite, out)
        if args.command == "count":
            return cmd_count(cfg, args.family, out)
        if args.command == "embed":
            return cmd_embed(cfg, args.family, args.tree, out)
        return cmd_envelope(cfg, args.dfile, args.oracle, args.pairs, out)
    except (EnvelopeError, DendriformError) as exc:
        witness = getattr(exc, "witness", None)
        print(f"error: {exc}" + (f" (witness: {witness})" if witness else ""), file=sys.stderr)
        return EXIT_FAIL
    except (UsageError, ParseError, TreeError, WordError, BaseAlgebraError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
