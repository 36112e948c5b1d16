"""Command line interface: ``bigembed validate|embed|rewrite|sat|gen``.

Exit codes: 0 success (an empty result is still a success), 1 validation
failure, 2 parse or I/O error, 3 semantic mismatch.
"""
from __future__ import annotations

import argparse
import json
import random
import sys
from typing import Optional

from .core import SignatureMismatch, Signature, Control, validate
from .encode import count_embeddings, enumerate_embeddings
from .generate import GenerationError, random_bigraph
from .jsonio import (BigraphFormatError, bigraph_from_dict, bigraph_to_dict, dumps,
                     embedding_to_dict)
from .reduce import DimacsError, parse_dimacs, solve_sat
from .rewrite import RewriteError, explore, rules_from_json, step

OK, INVALID, PARSE, MISMATCH = 0, 1, 2, 3

_PARSE_INVARIANTS = {"json", "format", "io"}


class CliError(Exception):
    def __init__(self, code: int, message: str, diagnostics=()):
        super().__init__(message)
        self.code = code
        self.diagnostics = list(diagnostics)


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(PARSE, f"{path}: {exc.strerror}") from None


def _read_json(path: str):
    text = _read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(PARSE, f"{path}: line {exc.lineno}: {exc.msg}") from None


def _format_error(path: str, exc: BigraphFormatError) -> CliError:
    code = PARSE if all(d.invariant in _PARSE_INVARIANTS for d in exc.diagnostics) else INVALID
    return CliError(code, f"{path}: {exc}", [d.to_dict() for d in exc.diagnostics])


def _load_bigraph(path: str):
    data = _read_json(path)
    try:
        return bigraph_from_dict(data)
    except BigraphFormatError as exc:
        raise _format_error(path, exc) from None


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        try:
            with open(out, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise CliError(PARSE, f"{out}: {exc.strerror}") from None
    else:
        sys.stdout.write(text)


# -- commands ----------------------------------------------------------------

def cmd_validate(args) -> int:
    data = _read_json(args.file)
    try:
        b = bigraph_from_dict(data, strict=False)
    except BigraphFormatError as exc:
        raise _format_error(args.file, exc) from None
    problems = validate(b)
    for v in problems:
        sys.stderr.write(json.dumps(v.to_dict(), sort_keys=True) + "\n")
    return INVALID if problems else OK


def cmd_embed(args) -> int:
    guest, host = _load_bigraph(args.guest), _load_bigraph(args.host)
    respect = not args.ignore_activity
    try:
        if args.mode == "count":
            doc = {"count": count_embeddings(guest, host, respect_activity=respect)}
        else:
            embs = [embedding_to_dict(phi) for phi in
                    enumerate_embeddings(guest, host, mode=args.mode, respect_activity=respect)]
            doc = {"count": len(embs), "embeddings": embs}
    except SignatureMismatch as exc:
        raise CliError(MISMATCH, str(exc)) from None
    _emit(dumps(doc), args.out)
    return OK


def cmd_rewrite(args) -> int:
    agent = _load_bigraph(args.agent)
    try:
        rules = rules_from_json(_read_json(args.rules))
    except BigraphFormatError as exc:
        raise _format_error(args.rules, exc) from None
    except RewriteError as exc:
        raise CliError(INVALID, f"{args.rules}: {exc}") from None
    if not agent.is_ground:
        raise CliError(MISMATCH, "the agent must be ground")
    respect = not args.ignore_activity
    try:
        if args.max_steps is None:
            successors = []
            for i, phi, b in step(agent, rules, respect_activity=respect):
                successors.append({"rule": rules[i].name or i,
                                   "embedding": embedding_to_dict(phi),
                                   "agent": bigraph_to_dict(b)})
            doc = {"count": len(successors), "successors": successors}
        else:
            states = explore(agent, rules, args.max_steps, respect_activity=respect)
            doc = {"count": len(states),
                   "states": [{"depth": d, "agent": bigraph_to_dict(b)} for d, b in states]}
    except (SignatureMismatch, RewriteError) as exc:
        raise CliError(MISMATCH, str(exc)) from None
    _emit(dumps(doc), args.out)
    return OK


def cmd_sat(args) -> int:
    try:
        formula = parse_dimacs(_read_text(args.dimacs))
    except DimacsError as exc:
        raise CliError(PARSE, f"{args.dimacs}: {exc}") from None
    result = solve_sat(formula)
    doc = result.to_dict()
    if result.satisfiable:
        assignment = {int(k): v for k, v in doc["assignment"].items()}
        doc["verified"] = formula.evaluate(assignment)
    _emit(dumps(doc), args.out)
    return OK


DEFAULT_SIGNATURE = Signature.of(("K", 2, True), ("L", 1, False), ("M", 0, True))


def _load_signature(path: Optional[str]) -> Signature:
    if path is None:
        return DEFAULT_SIGNATURE
    data = _read_json(path)
    entries = data.get("signature", data) if isinstance(data, dict) else data
    try:
        return Signature({e["ctrl"]: Control(e["ctrl"], int(e.get("arity", 0)),
                                             bool(e.get("active", True))) for e in entries})
    except (TypeError, KeyError, ValueError, AttributeError):
        raise CliError(PARSE, f"{path}: expected a list of {{ctrl, arity, active}}") from None


def cmd_gen(args) -> int:
    sig = _load_signature(args.signature)
    try:
        b = random_bigraph(random.Random(args.seed), sig, nodes=args.nodes, edges=args.edges,
                           sites=args.sites, roots=args.roots, inner_names=args.inner,
                           outer_names=args.outer)
    except GenerationError as exc:
        raise CliError(MISMATCH, str(exc)) from None
    _emit(dumps(bigraph_to_dict(b)), args.out)
    return OK


# -- wiring ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bigembed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a bigraph file for well-formedness")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("embed", help="enumerate embeddings of a guest into a host")
    p.add_argument("--guest", required=True)
    p.add_argument("--host", required=True)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--all", dest="mode", action="store_const", const="all")
    mode.add_argument("--first", dest="mode", action="store_const", const="first")
    mode.add_argument("--count", dest="mode", action="store_const", const="count")
    p.add_argument("--ignore-activity", action="store_true",
                   help="allow matches below passive nodes")
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed, mode="all")

    p = sub.add_parser("rewrite", help="apply reaction rules to an agent")
    p.add_argument("--agent", required=True)
    p.add_argument("--rules", required=True)
    p.add_argument("--max-steps", type=int)
    p.add_argument("--ignore-activity", action="store_true")
    p.add_argument("--out")
    p.set_defaults(func=cmd_rewrite)

    p = sub.add_parser("sat", help="decide a 3-CNF formula through the embedding solver")
    p.add_argument("dimacs")
    p.add_argument("--out")
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("gen", help="generate a random valid bigraph")
    for flag in ("nodes", "edges", "sites", "inner", "outer"):
        p.add_argument(f"--{flag}", type=int, default=0)
    p.add_argument("--roots", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--signature", help="JSON list of controls (default K/2, L/1 passive, M/0)")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "max_steps", None) is not None and args.max_steps < 0:
        parser.error("--max-steps must be non-negative")
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"bigembed: {exc}\n")
        for d in exc.diagnostics:
            sys.stderr.write(json.dumps(d, sort_keys=True) + "\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
