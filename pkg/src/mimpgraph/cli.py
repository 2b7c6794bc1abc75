"""Command-line interface: ``mimpg <command> [input] [options]``.

Exit status is 0 on success, 1 on a domain error (a JSON object describing
it goes to stderr) and 2 on a usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Any, Sequence

from .corpus import CorpusSpec, gen_corpus
from .dot import export_dot
from .formula import FormulaSyntaxError, format_formula, parse_formula
from .mimp_graph import MimpGraph, MimpGraphError, conclusion, hypotheses, inferential_order, validate
from .nd_proof import ProofError, ProofSyntaxError, check_proof, format_proof, occurrence_count, parse_proof, tree_redexes
from .normalization import NormalizationTrace, nmax, normalize
from .serialize import InvalidGraph, dumps_graph, loads_graph
from .translation import f_minimal_check, to_mimp

__all__ = ["main", "build_parser"]


_PROOF_HEAD = re.compile(r"\s*\(\s*(hyp|impI|impE)\b")


class UsageError(Exception):
    pass


def _seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("MIMPG_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"MIMPG_SEED must be an integer, got {env!r}") from None


def _read_input(args: argparse.Namespace) -> tuple[str, str]:
    """Return (text, name) from the single input source."""
    positional = getattr(args, "input_file", None)
    flag = getattr(args, "input", None)
    if positional is not None and flag is not None:
        raise UsageError("give the input either as an argument or with --input, not both")
    source = positional if positional is not None else flag
    if source is None or source == "-":
        return sys.stdin.read(), "<stdin>"
    try:
        return Path(source).read_text(), source
    except OSError as exc:
        raise UsageError(f"cannot read {source}: {exc.strerror}") from None


def _write(args: argparse.Namespace, text: str) -> None:
    if args.output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.output).write_text(text)


def _looks_like_graph(text: str) -> bool:
    return text.lstrip().startswith("{")


def _load_graph(text: str) -> MimpGraph:
    """A graph from JSON, or the translation of a proof."""
    if _looks_like_graph(text):
        return loads_graph(text)
    return to_mimp(parse_proof(text))[0]


def _render_graph(g: MimpGraph, fmt: str) -> str:
    if fmt == "dot":
        return export_dot(g)
    if fmt == "text":
        return _judgement_text(g) + "\n"
    return dumps_graph(g)


def _judgement_text(g: MimpGraph) -> str:
    hyps = ", ".join(sorted(format_formula(f, compact=True) for f in hypotheses(g)))
    return "{" + hyps + "} |- " + format_formula(conclusion(g), compact=True)


# ---------------------------------------------------------------------------
# commands


def cmd_parse(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    body = "\n".join(line for line in text.splitlines() if not line.lstrip().startswith(";"))
    if _PROOF_HEAD.match(body):
        out = format_proof(parse_proof(text))
    else:
        out = format_formula(parse_formula(text))
    _write(args, out + "\n")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    _write(args, str(check_proof(parse_proof(text))) + "\n")
    return 0


def cmd_to_mimp(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    g, cert = to_mimp(parse_proof(text))
    _write(args, _render_graph(g, args.format))
    cert_path = args.cert
    if cert_path is None and args.output not in (None, "-"):
        cert_path = args.output + ".cert.json"
    if cert_path is not None:
        Path(cert_path).write_text(json.dumps(cert.to_json(), indent=2) + "\n")
    return 0


def cmd_validate(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    g = loads_graph(text, check=False)
    problems = validate(g, f_minimal=not args.allow_duplicates)
    if problems:
        raise InvalidGraph(problems)
    _write(args, "ok\n")
    return 0


def _trace_lines(trace: NormalizationTrace) -> list[str]:
    return [json.dumps(step.to_json(k), sort_keys=True) for k, step in enumerate(trace.steps, 1)]


def cmd_normalize(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    g = _load_graph(text)
    strategy = args.strategy
    if strategy == "random":
        strategy = f"random:{_seed(args)}"
    try:
        trace = normalize(g, strategy, max_nmax=args.max_nmax)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.trace is not None:
        lines = _trace_lines(trace)
        Path(args.trace).write_text("".join(line + "\n" for line in lines))
    if args.format == "text":
        before = trace.steps[0].nmax_before if trace.steps else 0
        out = [f"nmax {before} -> {nmax(trace.final)} in {len(trace.steps)} step(s)"]
        for k, step in enumerate(trace.steps, 1):
            out.append(
                f"step {k}: {format_formula(step.formula)}  nmax {step.nmax_before} -> {step.nmax_after}"
                f"  size {step.size_before} -> {step.size_after}"
            )
        out.append(_judgement_text(trace.final))
        _write(args, "\n".join(out) + "\n")
    else:
        _write(args, _render_graph(trace.final, args.format))
    return 0


def cmd_stats(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    stats: dict[str, Any] = {}
    if _looks_like_graph(text):
        g = loads_graph(text)
    else:
        p = parse_proof(text)
        check_proof(p)
        g, cert = to_mimp(p)
        stats.update(
            tree_occurrences=occurrence_count(p),
            tree_size=cert.size_tree,
            tree_redexes=len(tree_redexes(p)),
        )
    order = inferential_order(g)
    stats.update(
        formula_nodes=g.formula_count(),
        rule_nodes=g.rule_count(),
        size=g.size(),
        levels=order.depth(),
        nmax=nmax(g),
        f_minimal=not f_minimal_check(g),
        judgement=_judgement_text(g),
    )
    _write(args, json.dumps(stats, indent=2, sort_keys=True) + "\n")
    return 0


def cmd_export_dot(args: argparse.Namespace) -> int:
    text, _ = _read_input(args)
    _write(args, export_dot(_load_graph(text)))
    return 0


def cmd_gen_corpus(args: argparse.Namespace) -> int:
    try:
        spec = CorpusSpec(
            count=args.count,
            max_inferences=args.max_inferences,
            atom_pool=tuple(args.atoms.split(",")),
            seed=_seed(args),
            redex_bias=args.redex_bias,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    proofs = gen_corpus(spec)
    if args.output not in (None, "-") and (Path(args.output).is_dir() or args.output.endswith("/")):
        out = Path(args.output)
        out.mkdir(parents=True, exist_ok=True)
        width = len(str(max(len(proofs) - 1, 0)))
        for k, p in enumerate(proofs):
            (out / f"proof_{k:0{width}d}.proof").write_text(format_proof(p) + "\n")
        return 0
    chunks = [f"; proof {k}\n{format_proof(p)}\n" for k, p in enumerate(proofs)]
    _write(args, "\n".join(chunks))
    return 0


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="mimpg", description="Mimp-graphs for minimal implicational logic.")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, func, help_text: str, takes_input: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        if takes_input:
            p.add_argument("input_file", nargs="?", help="input file ('-' or omitted: stdin)")
            p.add_argument("--input", help="input file, as an alternative to the argument")
        p.add_argument("--output", help="output file (default: stdout)")
        p.set_defaults(func=func)
        return p

    command("parse", cmd_parse, "parse a formula or proof and print it canonically")
    command("check", cmd_check, "check a proof and print its judgement")
    p = command("to-mimp", cmd_to_mimp, "translate a proof into a mimp-graph")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p.add_argument("--cert", help="certificate path (default: <output>.cert.json when --output is given)")
    p = command("validate", cmd_validate, "check a JSON graph against the mimp-graph conditions")
    p.add_argument("--allow-duplicates", action="store_true", help="do not require F-minimality")
    p = command("normalize", cmd_normalize, "eliminate all maximal formulas")
    p.add_argument("--strategy", default="first", help="first | last | random[:<seed>] | exhaustive")
    p.add_argument("--seed", type=int, help="seed for --strategy=random (fallback: $MIMPG_SEED)")
    p.add_argument("--max-nmax", type=int, default=3, help="bound for --strategy=exhaustive")
    p.add_argument("--trace", help="write one JSON line per step to this file")
    p.add_argument("--format", choices=("json", "dot", "text"), default="json")
    command("stats", cmd_stats, "print size and redex counts")
    command("export-dot", cmd_export_dot, "render a graph (or translated proof) as Graphviz DOT")
    p = command("gen-corpus", cmd_gen_corpus, "generate random proofs", takes_input=False)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--max-inferences", type=int, default=12)
    p.add_argument("--seed", type=int, help="generator seed (fallback: $MIMPG_SEED, then 0)")
    p.add_argument("--redex-bias", type=float, default=0.3)
    p.add_argument("--atoms", default="p,q,r,s", help="comma-separated atom pool")
    return parser


def _error_json(exc: Exception) -> dict[str, Any]:
    out: dict[str, Any] = {"error": getattr(exc, "code", type(exc).__name__), "message": str(exc)}
    if isinstance(exc, InvalidGraph):
        out["violations"] = [v.to_json() for v in exc.violations]
    for attr in ("node", "offset"):
        if hasattr(exc, attr):
            out[attr] = getattr(exc, attr)
    if hasattr(exc, "position"):
        out["position"] = list(exc.position)
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"mimpg: {exc}", file=sys.stderr)
        return 2
    except (MimpGraphError, ProofError, ProofSyntaxError, FormulaSyntaxError) as exc:
        print(json.dumps(_error_json(exc), sort_keys=True), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
