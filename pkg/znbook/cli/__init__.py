"""The 'znbook' command line interface.

Exit codes: 0 dispersable / success, 1 not dispersable, 2 usage or schema error,
3 indeterminate (solver budget exhausted, or no exact verdict was requested).
"""

from __future__ import annotations

import json
import logging
import os
import pathlib
import typing

import click

from znbook.catalog import (
    CIRCULANT_GRAPHS,
    LCF_GRAPHS,
    UnknownGraphError,
    describe_graph,
    named_graph,
)
from znbook.circulant import (
    Circulant,
    CirculantError,
    circulant_edges,
    decompose,
    heuberger_bipartite,
    make_circulant,
    max_degree,
    odd_cycle_witness,
)
from znbook.document import DocumentError, embedding_from_json, embedding_to_json
from znbook.embedding import (
    BookEmbedding,
    EmbeddingError,
    VerificationReport,
    dispersable_bipartite_circulant,
    observed_max_degree,
    parallel_embedding,
    verify_circulant_embedding,
    verify_embedding,
)
from znbook.orders import (
    CyclicOrder,
    OrderError,
    canonical_rotation_reflections,
    natural_order,
    order_from_sequence,
    overbay_order,
    ysl_order,
)
from znbook.render import RenderOptions, render_svg
from znbook.solver import (
    BudgetExceededError,
    SolverBudget,
    is_dispersable_with_order,
    search_dispersable_order,
)

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_NOT_DISPERSABLE = 1
EXIT_USAGE = 2
EXIT_INDETERMINATE = 3


class SchemaError(click.ClickException):
    """An input document does not follow the embedding schema."""

    exit_code = EXIT_USAGE


class JumpList(click.ParamType):
    """Comma separated jump-lengths, e.g. '1,3,5,7'."""

    name = "jumps"

    def convert(self, value, param, ctx):
        """Parse the list, duplicates are kept for 'make_circulant' to report."""
        if isinstance(value, (list, tuple)):
            return list(value)
        try:
            return [int(item) for item in str(value).split(",") if item.strip()]
        except ValueError:
            self.fail(f"'{value}' is not a comma separated list of integers", param, ctx)


class OrderKind(click.ParamType):
    """One of 'ysl', 'overbay', 'natural' or 'file:<path>'."""

    name = "order"

    def convert(self, value, param, ctx):
        """Check the kind, files are read when the order size is known."""
        if value in ("ysl", "overbay", "natural") or value.startswith("file:"):
            return value
        self.fail(f"'{value}' is not ysl, overbay, natural or file:<path>", param, ctx)


JUMPS = JumpList()
ORDER = OrderKind()


def style(text: str, **kwargs) -> str:
    """Apply ANSI styling unless NO_COLOR is set."""
    if os.environ.get("NO_COLOR") is not None:
        return text
    return click.style(text, **kwargs)


def _circulant(n: int, jumps: list) -> Circulant:
    try:
        return make_circulant(n, jumps)
    except CirculantError as err:
        raise click.UsageError(str(err)) from err


def _optional_circulant(n, jumps) -> typing.Optional[Circulant]:
    if (n is None) != (jumps is None):
        raise click.UsageError("--n and --jumps must be given together")
    return None if n is None else _circulant(n, jumps)


def load_order(path: str, n: int) -> CyclicOrder:
    """Read an order file: a JSON array or labels separated by commas / whitespace."""
    try:
        text = pathlib.Path(path).read_text()
    except OSError as err:
        raise click.UsageError(f"Can not read order file '{path}': {err}") from err
    try:
        labels = json.loads(text)
        if not isinstance(labels, list):
            raise click.UsageError(f"Order file '{path}' must hold a JSON array")
    except json.JSONDecodeError:
        try:
            labels = [int(item) for item in text.replace(",", " ").split()]
        except ValueError as err:
            raise click.UsageError(f"Order file '{path}': {err}") from err
    if len(labels) != n:
        raise click.UsageError(f"Order file '{path}' has {len(labels)} labels, need {n}")
    try:
        return order_from_sequence(labels)
    except (OrderError, TypeError) as err:
        raise click.UsageError(f"Order file '{path}': {err}") from err


def resolve_order(kind: str, n: int) -> CyclicOrder:
    """Build the order named on the command line for n labels."""
    try:
        if kind == "ysl":
            return ysl_order(n)
        if kind == "overbay":
            return overbay_order(n)
    except OrderError as err:
        raise click.UsageError(str(err)) from err
    if kind == "natural":
        return natural_order(n)
    return load_order(kind[len("file:") :], n)


def _budget(max_nodes: int, max_orders: int) -> SolverBudget:
    try:
        return SolverBudget(max_nodes=max_nodes, max_orders=max_orders)
    except ValueError as err:
        raise click.UsageError(str(err)) from err


def _emit(text: str, output: typing.Optional[str]):
    if output is None:
        click.echo(text, nl=not text.endswith("\n"))
    else:
        pathlib.Path(output).write_text(text)
        log.debug(f"Wrote {output}")


def _exit(code: int):
    click.get_current_context().exit(code)


def _verdict_exit(dispersable: bool):
    _exit(EXIT_OK if dispersable else EXIT_NOT_DISPERSABLE)


def _indeterminate(err: BudgetExceededError):
    click.echo(f"indeterminate: {err}", err=True)
    _exit(EXIT_INDETERMINATE)


def analyze_circulant(c: Circulant) -> dict:
    """Collect degree, bipartiteness and decomposition of a circulant."""
    edges = circulant_edges(c)
    certificate = heuberger_bipartite(c)
    decomposition = decompose(c)
    ell, odd = decomposition.two_adic()
    return {
        "n": c.n,
        "jumps": list(c.jumps),
        "delta": max_degree(c),
        "edges": len(edges),
        "bipartite": certificate is not None,
        "ell": None if certificate is None else certificate.ell,
        "odd_cycle": None if certificate is not None else odd_cycle_witness(edges, c.n),
        "r": decomposition.r,
        "r_two_adic": [ell, odd],
        "reduced": {
            "n": decomposition.reduced.n,
            "jumps": list(decomposition.reduced.jumps),
        },
    }


def _analysis_text(c: Circulant, info: dict) -> str:
    if info["bipartite"]:
        bipartite = style(f"yes (ell={info['ell']})", fg="green")
    else:
        cycle = info["odd_cycle"]
        closed = "-".join(map(str, cycle + cycle[:1]))
        bipartite = style(f"no, odd cycle {closed}", fg="red")
    reduced = Circulant(n=info["reduced"]["n"], jumps=info["reduced"]["jumps"])
    connected = "connected" if info["r"] == 1 else "disconnected"
    return "\n".join(
        [
            f"circulant   {c}",
            f"n           {info['n']}",
            f"jumps       {','.join(map(str, info['jumps']))}",
            f"delta       {info['delta']}",
            f"edges       {info['edges']}",
            f"bipartite   {bipartite}",
            f"components  {info['r']} x {reduced} ({connected})",
        ]
    )


def report_to_dict(report: VerificationReport) -> dict:
    """Convert a verification report to plain JSON types."""
    return {
        "dispersable": report.is_dispersable_layout,
        "page_count": report.page_count,
        "delta": report.delta,
        "violations": [
            {
                "kind": violation.kind,
                "page": violation.page,
                "edges": [list(edge) for edge in violation.edges],
            }
            for violation in report.violations
        ],
    }


def report_text(report: VerificationReport) -> str:
    """Format a verification report for the terminal."""
    verdict = "true" if report.is_dispersable_layout else "false"
    lines = [
        f"dispersable: {style(verdict, fg='green' if verdict == 'true' else 'red')}",
        f"pages: {report.page_count}",
        f"delta: {report.delta}",
        f"violations: {len(report.violations)}",
    ]
    for violation in report.violations:
        page = "-" if violation.page is None else violation.page
        edges = " ".join(str(tuple(edge)) for edge in violation.edges)
        lines.append(f"  {violation.kind} page {page}: {edges}".rstrip())
    return "\n".join(lines)


def embedding_text(emb: BookEmbedding, report: VerificationReport) -> str:
    """Format an embedding: the order and one line per page."""
    lines = [f"order: {' '.join(map(str, emb.order))}"]
    for page in sorted(emb.pages, key=lambda page: page.color):
        jump = "-" if page.jump is None else page.jump
        edges = " ".join(f"{u}-{v}" for u, v in page.edges)
        lines.append(f"page {page.color} (jump {jump}): {edges}")
    lines.append(report_text(report))
    return "\n".join(lines)


def _render_options(radius, labels, show_jumps) -> RenderOptions:
    try:
        return RenderOptions(radius=radius, show_labels=labels, jumps=show_jumps)
    except (ValueError, TypeError) as err:
        raise click.UsageError(str(err)) from err


def _format_option(*choices, default):
    return click.option(
        "--format",
        "fmt",
        type=click.Choice(choices),
        default=default,
        show_default=True,
        help="Output format.",
    )


_n_option = click.option("--n", "n", type=int, help="Vertex count of the circulant.")
_jumps_option = click.option("--jumps", type=JUMPS, help="Jump-lengths, e.g. 1,3,5,7.")
_budget_options = [
    click.option(
        "--budget-nodes",
        type=int,
        default=SolverBudget.max_nodes.default,
        show_default=True,
        help="Search tree nodes per colouring search.",
    ),
    click.option(
        "--max-orders",
        type=int,
        default=SolverBudget.max_orders.default,
        show_default=True,
        help="Orders enumerated by --search-orders.",
    ),
]
_render_options_list = [
    click.option("--radius", type=float, default=RenderOptions.radius.default),
    click.option("--labels/--no-labels", default=True, help="Draw vertex labels."),
    click.option("--show-jumps", type=JUMPS, default=None, help="Only draw these jumps."),
]


def _apply(options):
    def decorator(func):
        for option in reversed(options):
            func = option(func)
        return func

    return decorator


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Log debug messages to stderr.")
def cli(verbose):
    """Dispersable book embeddings of bipartite circulants."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Vertex count.")
@click.option("--jumps", type=JUMPS, required=True, help="Jump-lengths, e.g. 1,3,5,7.")
@_format_option("text", "json", default="text")
def analyze(n, jumps, fmt):
    """Report Δ, bipartiteness and the decomposition of C(n, S)."""
    c = _circulant(n, jumps)
    info = analyze_circulant(c)
    if fmt == "json":
        click.echo(json.dumps(info, indent=2))
    else:
        click.echo(_analysis_text(c, info))


@cli.command()
@click.option("--n", "n", type=int, required=True, help="Vertex count.")
@click.option("--jumps", type=JUMPS, required=True, help="Jump-lengths, e.g. 1,3,5,7.")
@click.option("--order", "kind", type=ORDER, default="ysl", show_default=True)
@_format_option("text", "json", "svg", default="json")
@click.option("--solve", is_flag=True, help="Run the exact solver for non-YSL orders.")
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_apply(_budget_options)
@_apply(_render_options_list)
def embed(
    n, jumps, kind, fmt, solve, output, budget_nodes, max_orders, radius, labels,
    show_jumps,
):  # pylint: disable=too-many-arguments
    """Build an embedding of C(n, S) and write it as JSON, SVG or text."""
    c = _circulant(n, jumps)
    options = _render_options(radius, labels, show_jumps) if fmt == "svg" else None
    if kind == "ysl":
        try:
            emb = dispersable_bipartite_circulant(c)
        except EmbeddingError as err:
            raise click.UsageError(
                f"{err}; the YSL order applies to bipartite input"
            ) from err
    else:
        order = resolve_order(kind, c.n)
        emb = parallel_embedding(c, order)
        report = verify_circulant_embedding(c, emb)
        if not report.is_dispersable_layout:
            if not solve:
                # the parallel layout failing does not rule out the order
                _emit_layout(emb, report, fmt, options, c, output)
                click.echo(
                    "indeterminate: parallel classes are not a dispersable layout,"
                    " pass --solve for an exact verdict",
                    err=True,
                )
                _exit(EXIT_INDETERMINATE)
            try:
                budget = _budget(budget_nodes, max_orders)
                verdict = is_dispersable_with_order(
                    circulant_edges(c), order, max_degree(c), budget
                )
            except BudgetExceededError as err:
                _indeterminate(err)
            if verdict.dispersable:
                emb = verdict.witness
    report = verify_circulant_embedding(c, emb)
    _emit_layout(emb, report, fmt, options, c, output)
    _verdict_exit(report.is_dispersable_layout)


def _emit_layout(emb, report, fmt, options, c, output):
    if fmt == "json":
        text = embedding_to_json(emb)
    elif fmt == "svg":
        try:
            text = render_svg(emb, options, circulant=c)
        except EmbeddingError as err:
            raise click.UsageError(str(err)) from err
    else:
        text = embedding_text(emb, report)
    _emit(text, output)


def _read_document(path: str) -> BookEmbedding:
    try:
        return embedding_from_json(pathlib.Path(path).read_text())
    except DocumentError as err:
        raise SchemaError(f"{path}: {err}") from err


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_n_option
@_jumps_option
@_format_option("text", "json", default="text")
def verify(path, n, jumps, fmt):
    """Verify an embedding document.

    Without --n/--jumps the graph is the union of the page edges.
    """
    emb = _read_document(path)
    c = _optional_circulant(n, jumps)
    if c is None:
        edges = sorted(set(emb.edges))
        report = verify_embedding(edges, observed_max_degree(emb.n, edges), emb)
    else:
        report = verify_circulant_embedding(c, emb)
    if fmt == "json":
        click.echo(json.dumps(report_to_dict(report), indent=2))
    else:
        click.echo(report_text(report))
    _verdict_exit(report.is_dispersable_layout)


def _graph_arguments(graph, n, jumps):
    if graph is not None:
        if n is not None or jumps is not None:
            raise click.UsageError("Use either --graph or --n/--jumps")
        try:
            return named_graph(graph)
        except UnknownGraphError as err:
            raise click.UsageError(err.args[0]) from err
    c = _optional_circulant(n, jumps)
    if c is None:
        raise click.UsageError("Need --graph or --n/--jumps")
    return c.n, circulant_edges(c)


@cli.command()
@click.option("--graph", default=None, help="Catalog name, e.g. heawood.")
@_n_option
@_jumps_option
@click.option("--order", "kind", type=ORDER, default="ysl", show_default=True)
@click.option("--search-orders", is_flag=True, help="Search all canonical orders.")
@click.option("--witness", type=click.Path(dir_okay=False), default=None)
@_format_option("text", "json", default="text")
@_apply(_budget_options)
def solve(
    graph, n, jumps, kind, search_orders, witness, fmt, budget_nodes, max_orders
):  # pylint: disable=too-many-arguments
    """Compute the minimum page count for an order, or search for an order."""
    n, edges = _graph_arguments(graph, n, jumps)
    delta = observed_max_degree(n, edges)
    budget = _budget(budget_nodes, max_orders)

    try:
        if search_orders:
            found = search_dispersable_order(edges, n, delta, budget)
            order, emb = found if found is not None else (None, None)
            result = {
                "n": n,
                "delta": delta,
                "dispersable": found is not None,
                "order": None if order is None else list(order.seq),
            }
        else:
            order = resolve_order(kind, n)
            verdict = is_dispersable_with_order(edges, order, delta, budget)
            emb = verdict.witness
            result = {
                "n": n,
                "delta": delta,
                "order": list(order.seq),
                "min_pages": verdict.min_pages,
                "dispersable": verdict.dispersable,
            }
    except BudgetExceededError as err:
        _indeterminate(err)

    if witness is not None and emb is not None:
        _emit(embedding_to_json(emb), witness)
    if fmt == "json":
        click.echo(json.dumps(result, indent=2))
    else:
        lines = [f"vertices: {n}", f"delta: {delta}"]
        if "min_pages" in result:
            lines.append(f"min pages: {result['min_pages']}")
        verdict_text = "yes" if result["dispersable"] else "no"
        lines.append(f"dispersable: {verdict_text}")
        if result["order"] is not None:
            lines.append(f"order: {' '.join(map(str, result['order']))}")
            if search_orders:
                canonical = canonical_rotation_reflections(order)
                lines.append(f"canonical: {' '.join(map(str, canonical))}")
        click.echo("\n".join(lines))
    _verdict_exit(result["dispersable"])


@cli.command()
@click.argument("name", required=False)
@_format_option("text", "json", default="text")
def catalog(name, fmt):
    """List the named graphs, or print the edges of one."""
    if name is None:
        summaries = [describe_graph(key) for key in [*LCF_GRAPHS, *CIRCULANT_GRAPHS]]
        if fmt == "json":
            click.echo(json.dumps(summaries, indent=2))
            return
        for info in summaries:
            click.echo(
                f"{info['name']:<10} n={info['n']:<3} edges={info['edges']:<3}"
                f" delta={info['delta']} bipartite={info['bipartite']}"
                f" girth={info['girth']}"
            )
        return
    try:
        n, edges = named_graph(name)
    except UnknownGraphError as err:
        raise click.UsageError(err.args[0]) from err
    if fmt == "json":
        click.echo(json.dumps({"n": n, "edges": [list(edge) for edge in edges]}))
    else:
        click.echo(f"{name}: n={n}, {len(edges)} edges")
        click.echo(" ".join(f"{u}-{v}" for u, v in edges))


@cli.command()
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@_n_option
@_jumps_option
@click.option("--output", "-o", type=click.Path(dir_okay=False), default=None)
@_apply(_render_options_list)
def render(path, n, jumps, output, radius, labels, show_jumps):
    """Render an embedding document as SVG."""
    emb = _read_document(path)
    c = _optional_circulant(n, jumps)
    options = _render_options(radius, labels, show_jumps)
    try:
        text = render_svg(emb, options, circulant=c)
    except EmbeddingError as err:
        raise click.UsageError(str(err)) from err
    _emit(text, output)


def main():
    """Run the command line interface."""
    cli(prog_name="znbook")  # pylint: disable=no-value-for-parameter
