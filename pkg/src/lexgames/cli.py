"""Command-line front end.

Exit codes: 0 success, 1 the checked property fails, 2 a size budget was
exceeded, 3 malformed input.
"""

from __future__ import annotations

import json
import random
import sys
from pathlib import Path

import click

from . import __version__
from .graphs import (
    BudgetError,
    GraphError,
    chain_graph,
    check_monotone,
    check_partial_order,
    directed_sum,
    lex_product,
    loop_graph,
    tensor,
    vertex_id,
)
from .objectives import ObjectiveError, format_objective, member, parse_objective
from .ordinals import parse_ordinal
from .reductions import (
    ReductionError,
    cobuchi_sem,
    chain_reduction,
    double_map,
    lasso_image,
    limit_collapse,
    op_max,
    op_union,
    successor_step,
)
from .solver import SolverError, auto_universal, oracle_solve, random_game, solve
from .textio import FormatError, format_game, format_graph, format_machine, parse_game, parse_graph, parse_machine
from .universal import DEFAULT_VERTEX_BUDGET, lemma21_wrap, power_graph, signature_graph
from .verify import (
    DEFAULT_ENUMERATION_BUDGET,
    check_almost_universality,
    check_universality,
    satisfies_bounded,
    satisfies_exact,
)
from .words import ColourFamily, format_lasso, parse_lasso

REPORT_VERSION = 1

EXIT_OK, EXIT_FAIL, EXIT_BUDGET, EXIT_INPUT = 0, 1, 2, 3


class Outcome(Exception):
    """Raised by commands to finish with a report and an exit code."""

    def __init__(self, code: int, text: str, data: dict):
        super().__init__(text)
        self.code = code
        self.text = text
        self.data = data


def _finish(ctx: click.Context, code: int, text: str, data: dict):
    raise Outcome(code, text, data)


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from exc


def _emit_text(text: str, output: str | None) -> None:
    if output:
        Path(output).write_text(text)
    else:
        click.echo(text, nl=False)


def _objective(text: str):
    try:
        return parse_objective(text)
    except ValueError as exc:
        raise FormatError(f"bad objective {text!r}: {exc}") from exc


class _Main(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except Outcome as out:
            fmt = (ctx.obj or {}).get("format", "text")
            if fmt == "json":
                click.echo(json.dumps({"version": REPORT_VERSION, "exit": out.code, **out.data}, sort_keys=True))
            elif out.text:
                click.echo(out.text)
            ctx.exit(out.code)
        except BudgetError as exc:
            self._error(ctx, EXIT_BUDGET, "budget", exc)
        except (FormatError, ObjectiveError, GraphError, SolverError, ReductionError, ValueError) as exc:
            self._error(ctx, EXIT_INPUT, "input", exc)

    @staticmethod
    def _error(ctx, code, kind, exc):
        fmt = (ctx.obj or {}).get("format", "text")
        if fmt == "json":
            click.echo(json.dumps({"version": REPORT_VERSION, "exit": code, "error": kind, "message": str(exc)}))
        else:
            click.echo(f"error ({kind}): {exc}", err=True)
        ctx.exit(code)


@click.group(cls=_Main)
@click.version_option(__version__)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", help="Report format.")
@click.option("--seed", type=int, default=0, show_default=True, help="Seed for every random choice.")
@click.option("--jobs", type=int, default=1, show_default=True, help="Worker processes for enumeration sweeps.")
@click.pass_context
def main(ctx, fmt, seed, jobs):
    """Lexicographic objectives, universal graphs and positional games."""
    ctx.ensure_object(dict)
    ctx.obj.update(format=fmt, seed=seed, jobs=jobs)


# -- member ---------------------------------------------------------------------------


@main.command("member")
@click.argument("objective")
@click.argument("lasso")
@click.pass_context
def cmd_member(ctx, objective, lasso):
    """Decide membership of the lasso word ``u | v`` in OBJECTIVE."""
    W = _objective(objective)
    try:
        w = parse_lasso(lasso)
    except ValueError as exc:
        raise FormatError(f"bad lasso {lasso!r}: {exc}") from exc
    verdict = member(W, w)
    word = "accepted" if verdict.accepted else "rejected"
    _finish(
        ctx,
        EXIT_OK,
        f"{word} witness={verdict.witness_index}",
        {"accepted": verdict.accepted, "witness": str(verdict.witness_index), "lasso": format_lasso(w)},
    )


# -- build ----------------------------------------------------------------------------


@main.group("build")
def cmd_build():
    """Construct graphs and print them in the graph text format."""


def _built(ctx, G, output):
    text = format_graph(G)
    _emit_text(text, output)
    _finish(ctx, EXIT_OK, "", {"vertices": len(G.vertices), "edges": len(G.edges()), "output": output})


_out_opt = click.option("-o", "--output", type=click.Path(dir_okay=False), help="Write the graph here.")
_budget_opt = click.option("--budget", type=int, default=DEFAULT_VERTEX_BUDGET, show_default=True, help="Vertex budget.")


def _check_budget(G, budget):
    if len(G.vertices) > budget:
        raise BudgetError(f"graph has {len(G.vertices)} vertices, over the budget of {budget}")


@cmd_build.command("signature")
@click.option("--alpha", required=True, type=int)
@click.option("--kappa", required=True, type=int)
@click.option("--guarded", is_flag=True, help="Counters at even priorities <= alpha with the nonzero guard.")
@_budget_opt
@_out_opt
@click.pass_context
def build_signature(ctx, alpha, kappa, guarded, budget, output):
    _built(ctx, signature_graph(alpha, kappa, guarded=guarded, budget=budget), output)


@cmd_build.command("power")
@click.option("--spec", "spec_path", required=True, help="Base list: lines '<index> loop', '<index> chain <k>' or '<index> graph <file>'.")
@click.option("--beta", required=True, type=int)
@_budget_opt
@_out_opt
@click.pass_context
def build_power(ctx, spec_path, beta, budget, output):
    bases = []
    for no, line in enumerate(_read(spec_path).splitlines(), 1):
        tok = line.split("#", 1)[0].split()
        if not tok:
            continue
        idx = parse_ordinal(tok[0])
        if tok[1:] == ["loop"]:
            bases.append(loop_graph(idx))
        elif len(tok) == 3 and tok[1] == "chain":
            bases.append(chain_graph(idx, int(tok[2])))
        elif len(tok) == 3 and tok[1] == "graph":
            bases.append((idx, parse_graph(_read(tok[2]))))
        else:
            raise FormatError(f"cannot parse base line {no}: {line.strip()}")
    _built(ctx, power_graph(bases, beta, budget=budget), output)


@cmd_build.command("loop")
@click.option("--class", "index", required=True)
@_out_opt
@click.pass_context
def build_loop(ctx, index, output):
    _built(ctx, loop_graph(_class_arg(index)), output)


@cmd_build.command("chain")
@click.option("--class", "index", required=True)
@click.option("--k", required=True, type=int)
@_out_opt
@click.pass_context
def build_chain(ctx, index, k, output):
    _built(ctx, chain_graph(_class_arg(index), k), output)


def _class_arg(text: str) -> ColourFamily:
    fam = ColourFamily.parse(text)
    if len(fam.indices()) != 1:
        raise FormatError("expected a single colour class, e.g. '1' or '1:1/2'")
    return fam


@cmd_build.command("sum")
@click.argument("graphs", nargs=-1, required=True)
@_budget_opt
@_out_opt
@click.pass_context
def build_sum(ctx, graphs, budget, output):
    G = directed_sum([parse_graph(_read(p)) for p in graphs])
    _check_budget(G, budget)
    _built(ctx, G, output)


@cmd_build.command("tensor")
@click.argument("graph")
@click.option("--k", required=True, type=int)
@_budget_opt
@_out_opt
@click.pass_context
def build_tensor(ctx, graph, k, budget, output):
    G = tensor(parse_graph(_read(graph)), k)
    _check_budget(G, budget)
    _built(ctx, G, output)


@cmd_build.command("lexprod")
@click.argument("g0")
@click.argument("g1")
@_budget_opt
@_out_opt
@click.pass_context
def build_lexprod(ctx, g0, g1, budget, output):
    G = lex_product(parse_graph(_read(g0)), parse_graph(_read(g1)))
    _check_budget(G, budget)
    _built(ctx, G, output)


# -- check ----------------------------------------------------------------------------


@main.group("check")
def cmd_check():
    """Satisfaction, universality and order/monotonicity checks."""


@cmd_check.command("satisfies")
@click.option("--graph", "graph_path", required=True)
@click.option("--objective", required=True)
@click.option("--bound", type=int, default=None, help="Search cycles up to this length instead of the exact criterion.")
@click.pass_context
def check_satisfies(ctx, graph_path, objective, bound):
    G = parse_graph(_read(graph_path))
    W = _objective(objective)
    report = satisfies_exact(G, W) if bound is None else satisfies_bounded(G, W, bound)
    data = {"satisfied": report.satisfied, "mode": "exact" if bound is None else f"bounded({bound})"}
    if report.satisfied:
        _finish(ctx, EXIT_OK, "satisfied", data)
    data["witness"] = format_lasso(report.witness) if report.witness else None
    data["cycle"] = [vertex_id(v) for v in report.cycle]
    _finish(ctx, EXIT_FAIL, f"violated witness={data['witness']} cycle={' '.join(data['cycle'])}", data)


@cmd_check.command("universality")
@click.option("--universal", "universal_path", required=True)
@click.option("--objective", required=True)
@click.option("--colours", required=True, help="Colour family of the enumerated graphs, e.g. '0,1,2'.")
@click.option("--size", "n", required=True, type=int)
@click.option("--almost", is_flag=True, help="Only require some vertex whose reachable part maps.")
@click.option("--wrap", type=int, default=1, show_default=True, help="Stack this many copies of the graph first.")
@click.option("--bound", type=int, default=None)
@click.option("--budget", type=int, default=DEFAULT_ENUMERATION_BUDGET, show_default=True)
@click.option("--artifacts", type=click.Path(file_okay=False), default=None, help="Write failing graphs here.")
@click.pass_context
def check_univ(ctx, universal_path, objective, colours, n, almost, wrap, bound, budget, artifacts):
    U = parse_graph(_read(universal_path))
    if wrap > 1:
        U = lemma21_wrap(U, wrap)
    W = _objective(objective)
    fam = ColourFamily.parse(colours)
    run = check_almost_universality if almost else check_universality
    report = run(U, W, fam, n, bound=bound, budget=budget, jobs=ctx.obj["jobs"])
    if artifacts and report.failures:
        Path(artifacts).mkdir(parents=True, exist_ok=True)
        for i, (G, _) in enumerate(report.failures):
            (Path(artifacts) / f"failure-{i:04d}.graph").write_text(format_graph(G))
    kind = "almost universality" if almost else "universality"
    data = {
        "property": kind,
        "objective": format_objective(W),
        "size": n,
        "enumerated": report.enumerated_count,
        "checked": report.checked_count,
        "failures": len(report.failures),
        "reasons": sorted({r for _, r in report.failures}),
    }
    line = f"{kind} for {format_objective(W)}, size {n}: {report.checked_count} satisfying graphs of {report.enumerated_count}"
    if report.passed:
        _finish(ctx, EXIT_OK, line + ", all map: pass", data)
    _finish(ctx, EXIT_FAIL, line + f", {len(report.failures)} failures: fail", data)


@cmd_check.command("monotone")
@click.option("--graph", "graph_path", required=True)
@click.pass_context
def check_mono(ctx, graph_path):
    G = parse_graph(_read(graph_path))
    r = check_monotone(G)
    data = {"monotone": r.ok, "left": r.left_ok, "right": r.right_ok, "violations": len(r.violations)}
    text = f"monotone={r.ok} left={r.left_ok} right={r.right_ok}"
    _finish(ctx, EXIT_OK if r.ok else EXIT_FAIL, text, data)


@cmd_check.command("order")
@click.option("--graph", "graph_path", required=True)
@click.pass_context
def check_order(ctx, graph_path):
    G = parse_graph(_read(graph_path))
    r = check_partial_order(G)
    data = {
        "reflexive": r.reflexive,
        "antisymmetric": r.antisymmetric,
        "transitive": r.transitive,
        "total": r.total,
        "max_antichain": r.max_antichain,
    }
    text = " ".join(f"{k}={v}" for k, v in data.items())
    _finish(ctx, EXIT_OK if r.is_partial_order else EXIT_FAIL, text, data)


# -- solve ----------------------------------------------------------------------------


@main.command("solve")
@click.option("--game", "game_path", required=True)
@click.option("--objective", required=True)
@click.option("--universal", "universal_path", default=None, help="Totally ordered monotone universal graph file.")
@click.option("--auto", is_flag=True, help="Build a universal graph matching the objective and game size.")
@click.option("--oracle", is_flag=True, help="Cross-check against brute-force strategy enumeration.")
@click.option("--oracle-budget", type=int, default=1 << 20, show_default=True)
@click.pass_context
def cmd_solve(ctx, game_path, objective, universal_path, auto, oracle, oracle_budget):
    """Solve a game for Eve and print her winning region and strategy."""
    W = _objective(objective)
    game = parse_game(_read(game_path), W)
    if bool(universal_path) == bool(auto):
        raise FormatError("give exactly one of --universal FILE or --auto")
    U = auto_universal(W, len(game.vertices)) if auto else parse_graph(_read(universal_path))
    result = solve(game, U)
    winning = sorted(vertex_id(v) for v in result.winning)
    strategy = {vertex_id(v): f"{vertex_id(e[0])} {e[1]} {vertex_id(e[2])}" for v, e in sorted(result.strategy.items(), key=lambda kv: vertex_id(kv[0]))}
    data = {"winning": winning, "strategy": strategy}
    lines = ["winning " + " ".join(winning)] + [f"strategy {e}" for e in strategy.values()]
    code = EXIT_OK
    if oracle:
        expected = oracle_solve(game, oracle_budget)
        agree = expected == result.winning
        data["oracle_agrees"] = agree
        lines.append(f"oracle {'agrees' if agree else 'DISAGREES: ' + ' '.join(sorted(vertex_id(v) for v in expected))}")
        if not agree:
            code = EXIT_FAIL
    _finish(ctx, code, "\n".join(lines), data)


@main.command("generate")
@click.option("--objective", required=True)
@click.option("--colours", required=True)
@click.option("--vertices", "max_vertices", type=int, default=5, show_default=True)
@click.option("--edges", "max_edges", type=int, default=8, show_default=True)
@click.option("--eps-rate", type=float, default=0.0, show_default=True)
@_out_opt
@click.pass_context
def cmd_generate(ctx, objective, colours, max_vertices, max_edges, eps_rate, output):
    """Write a seeded random game."""
    rng = random.Random(ctx.obj["seed"])
    game = random_game(rng, _objective(objective), ColourFamily.parse(colours), max_vertices, max_edges, eps_rate)
    _emit_text(format_game(game), output)
    _finish(ctx, EXIT_OK, "", {"vertices": len(game.vertices), "edges": len(game.graph.edges)})


# -- reduce ---------------------------------------------------------------------------


@main.group("reduce")
def cmd_reduce():
    """Prefix-function operators and letter maps."""


def _machine(path: str):
    return parse_machine(_read(path))


def _machine_out(ctx, f, output):
    _emit_text(format_machine(f), output)
    _finish(ctx, EXIT_OK, "", {"states": len(f.states), "output": output})


@cmd_reduce.command("max")
@click.option("-f", "f_path", required=True)
@click.option("-g", "g_path", required=True)
@_out_opt
@click.pass_context
def reduce_max(ctx, f_path, g_path, output):
    _machine_out(ctx, op_max(_machine(f_path), _machine(g_path)), output)


@cmd_reduce.command("union")
@click.option("-f", "f_path", required=True)
@click.option("-g", "g_path", required=True)
@_out_opt
@click.pass_context
def reduce_union(ctx, f_path, g_path, output):
    _machine_out(ctx, op_union(_machine(f_path), _machine(g_path)), output)


@cmd_reduce.command("step")
@click.option("--small", "small", required=True)
@click.option("--big", "big", required=True)
@click.option("--next", "nxt", required=True)
@_out_opt
@click.pass_context
def reduce_step(ctx, small, big, nxt, output):
    _machine_out(ctx, successor_step(_machine(small), _machine(big), _machine(nxt)), output)


@cmd_reduce.command("chain")
@click.argument("machines", nargs=-1, required=True)
@_out_opt
@click.pass_context
def reduce_chain(ctx, machines, output):
    _machine_out(ctx, chain_reduction([_machine(p) for p in machines]), output)


@cmd_reduce.command("image")
@click.option("-f", "f_path", required=True)
@click.argument("lasso")
@click.pass_context
def reduce_image(ctx, f_path, lasso):
    """Print the output lasso of a machine on a lasso word."""
    f = _machine(f_path)
    w = parse_lasso(lasso)
    img = lasso_image(f, w)
    data = {"image": format_lasso(img)}
    if set(img.letters()) <= {1, 2}:
        data["cobuchi"] = cobuchi_sem(f, w)
    _finish(ctx, EXIT_OK, " ".join(f"{k}={v}" for k, v in data.items()), data)


@cmd_reduce.command("double")
@click.argument("lasso")
@click.pass_context
def reduce_double(ctx, lasso):
    w = double_map(parse_lasso(lasso))
    _finish(ctx, EXIT_OK, format_lasso(w), {"lasso": format_lasso(w)})


@cmd_reduce.command("collapse")
@click.argument("lasso")
@click.option("--alpha", required=True, help="The index to replace.")
@click.option("--gammas", default=None, help="Comma-separated replacements by word position (default 0,2,4,...).")
@click.pass_context
def reduce_collapse(ctx, lasso, alpha, gammas):
    if gammas:
        seq = [parse_ordinal(g) for g in gammas.split(",")]
        for a, b in zip(seq, seq[1:]):
            if not a < b:
                raise FormatError("gammas must be strictly increasing")

        def pick(i):
            if i >= len(seq):
                raise FormatError(f"no replacement given for position {i}")
            return seq[i]
    else:
        pick = lambda i: 2 * i  # noqa: E731
    w = limit_collapse(parse_lasso(lasso), parse_ordinal(alpha), pick)
    _finish(ctx, EXIT_OK, format_lasso(w), {"lasso": format_lasso(w)})


if __name__ == "__main__":  # pragma: no cover
    main()
