import json
import logging
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional

import typer
from dotenv import load_dotenv
from rich.console import Console
from rich.logging import RichHandler
from rich.panel import Panel
from rich.table import Table

from shared.config import Config
from shared.config_loader import ensure_config_exists
from shared.logger import setup_logger
from shared.telemetry import CensusMetrics, metrics_enabled_from_env
from troplanar import oracle
from troplanar.catalog import load_catalog
from troplanar.classifier import NotTroplanar, Troplanar, classify as classify_graph
from troplanar.config_manager import ConfigManager
from troplanar.corpus import load_witnesses, polygon_corpus, polygons_for
from troplanar.enumeration import enumerate_triangulations, seed_triangulation
from troplanar.errors import ParseError, TroplanarError
from troplanar.formats import (
    file_kind,
    read_graph,
    read_polygon,
    read_triangulation,
    serialize_heights,
    serialize_triangulation,
)
from troplanar.generation import STRATEGIES, enumerate_trivalent_planar
from troplanar.graphs import Circle, cut_edges
from troplanar.lattice import (
    EmptyHull,
    InteriorHull,
    PointHull,
    SegmentHull,
    interior_hull,
    is_hyperelliptic,
    normal_form,
    pick_consistent,
    polygon_key,
)
from troplanar.regularity import BACKENDS, is_regular
from troplanar.render import render_graph, render_triangulation
from troplanar.skeleton import skeletonize, to_dot, to_json
from troplanar.triangulation import nontrivial_split_edges, split_edges
from troplanar.verify_paper import PaperVerifier

app = typer.Typer(
    name="troplanar",
    help="Tropical planarity toolkit: lattice polygons, triangulations, skeletons and the genus <= 6 classifier",
    add_completion=False,
    no_args_is_help=True,
)
config_app = typer.Typer(help="Manage configuration")
app.add_typer(config_app, name="config")

console = Console()
logger = logging.getLogger("troplanar.cli")

VERBOSE = typer.Option(False, "--verbose", "-v", help="Enable verbose logging")


def setup_logging(verbose: bool = False):
    """Configure logging with Rich."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format="%(message)s",
        datefmt="[%X]",
        handlers=[RichHandler(console=console, rich_tracebacks=True, markup=False)],
        force=True,
    )


def load_config(verbose: bool, **overrides: Any) -> Config:
    setup_logging(verbose)
    try:
        return Config.from_sources(overrides={"verbose": verbose, **overrides})
    except (ValueError, TypeError) as e:
        console.print(f"[red]Invalid configuration: {e}[/red]")
        raise typer.Exit(code=1)


@contextmanager
def handle_errors() -> Iterator[None]:
    """Parse errors exit 2 with their location, every other library error exits 1."""
    try:
        yield
    except ParseError as e:
        console.print(str(e), style="red", markup=False, highlight=False)
        raise typer.Exit(code=2)
    except TroplanarError as e:
        console.print(f"{type(e).__name__}: {e}", style="red", markup=False, highlight=False)
        raise typer.Exit(code=1)


@app.callback()
def main():
    """Load ``.env`` before any command reads its configuration."""
    load_dotenv()


def _hull_text(hull: InteriorHull) -> str:
    if isinstance(hull, EmptyHull):
        return "empty"
    if isinstance(hull, PointHull):
        return f"point {hull.point}"
    if isinstance(hull, SegmentHull):
        return f"segment {hull.a} to {hull.b}"
    return f"polygon {hull}"


def _emit(text: str, out: Optional[Path]):
    if out is None:
        typer.echo(text, nl=not text.endswith("\n"))
    else:
        out.write_text(text)
        console.print(f"[green]Wrote {out}[/green]")


@app.command("polygon-info")
def polygon_info(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .poly or .tri file"),
    as_json: bool = typer.Option(False, "--json", help="Emit JSON"),
    verbose: bool = VERBOSE,
):
    """Lattice point counts, genus and interior hull of a polygon."""
    load_config(verbose)
    with handle_errors():
        polygon = read_polygon(path)
        hull = interior_hull(polygon)
        info: Dict[str, Any] = {
            "vertices": [list(v) for v in polygon.vertices],
            "lattice_points": len(polygon.lattice_points),
            "boundary_points": len(polygon.boundary_points),
            "interior_points": len(polygon.interior_points),
            "genus": polygon.genus,
            "doubled_area": polygon.doubled_area,
            "pick_consistent": pick_consistent(polygon),
            "hyperelliptic": is_hyperelliptic(polygon),
            "interior_hull": _hull_text(hull),
            "normal_form": polygon_key(normal_form(polygon)),
        }
    if as_json:
        typer.echo(json.dumps(info, indent=2))
        return
    table = Table(title=f"Polygon {path.name}")
    table.add_column("Property", style="cyan")
    table.add_column("Value", style="yellow")
    for key, value in info.items():
        table.add_row(key, str(value))
    console.print(table)


@app.command("validate-tri")
def validate_tri(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .tri file"),
    regular: bool = typer.Option(False, "--regular", help="Also decide regularity"),
    backend: str = typer.Option("auto", "--backend", help=f"Regularity backend: {', '.join(BACKENDS)}"),
    dump_heights: Optional[Path] = typer.Option(None, "--dump-heights", help="Write witness heights (p/q) here"),
    verbose: bool = VERBOSE,
):
    """Check that a triangulation is a unimodular triangulation of its polygon."""
    config = load_config(verbose)
    with handle_errors():
        tri = read_triangulation(path)
        splits = split_edges(tri)
        console.print(
            f"[green]✓ {path.name}: {len(tri)} unimodular triangles covering {tri.polygon}[/green] "
            f"(genus {tri.genus}, {len(splits)} split edges, {len(nontrivial_split_edges(tri))} nontrivial)"
        )
        if not (regular or dump_heights):
            return
        result = is_regular(
            tri, backend=backend, fm_max_variables=config.fm_max_variables, fm_row_limit=config.fm_row_limit
        )
    if not result:
        console.print(f"[yellow]Not regular ({result.backend})[/yellow]")
        return
    console.print(f"[green]Regular ({result.backend})[/green]")
    if dump_heights and result.heights is not None:
        _emit(serialize_heights(result.heights), dump_heights)


@app.command("skeletonize")
def skeletonize_cmd(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .tri file"),
    dot: bool = typer.Option(False, "--dot", help="Emit Graphviz DOT"),
    as_json: bool = typer.Option(False, "--json", help="Emit JSON with the dual provenance maps"),
    verbose: bool = VERBOSE,
):
    """Skeleton of the tropical curve dual to a triangulation."""
    load_config(verbose)
    with handle_errors():
        ps = skeletonize(read_triangulation(path))
    if dot:
        typer.echo(to_dot(ps), nl=False)
        return
    if as_json:
        typer.echo(to_json(ps))
        return
    g = ps.skeleton
    bridges = () if isinstance(g, Circle) else cut_edges(g)
    console.print(
        Panel.fit(
            f"genus {g.genus}\nvertices {g.n}\nedges {len(g.edges)}\n"
            f"bridges {list(bridges)}\ncertificate {g.certificate}",
            title=f"Skeleton of {path.name}",
        )
    )


@app.command()
def classify(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .graph file"),
    as_json: bool = typer.Option(False, "--json", help="Emit a machine-readable verdict"),
    no_witness: bool = typer.Option(False, "--no-witness", help="Skip witness search for troplanar verdicts"),
    catalog: Optional[Path] = typer.Option(None, "--catalog", help="Obstruction catalog file"),
    witness_out: Optional[Path] = typer.Option(None, "--witness-out", help="Write the witness triangulation here"),
    verbose: bool = VERBOSE,
):
    """Decide whether a trivalent planar graph of genus at most 6 is tropically planar."""
    config = load_config(verbose)
    with handle_errors():
        g = read_graph(path)
        search = config.find_witness_on_classify and not no_witness

        def finder(graph):
            return oracle.find_witness(
                graph,
                polygons=polygons_for(graph.genus, config.corpus_max_points, config.corpus_dir),
                witnesses=load_witnesses(config.corpus_dir),
                limit=config.lattice_point_limit,
            )

        verdict = classify_graph(g, load_catalog(catalog), search_witness=search, finder=finder if search else None)

    if as_json:
        typer.echo(json.dumps(verdict.to_dict(), indent=2))
    elif isinstance(verdict, NotTroplanar):
        typer.echo(f"{verdict.name} {verdict.obstruction.kind.value}")
        for key, value in verdict.obstruction.witness.items():
            typer.echo(f"  {key}: {value}")
    elif isinstance(verdict, Troplanar):
        typer.echo(verdict.name)
        if verdict.witness is not None:
            typer.echo(f"  witness: {verdict.witness.source or verdict.witness.polygon}")
    else:
        typer.echo(f"{verdict.name}: {verdict.reason}")

    if witness_out and isinstance(verdict, Troplanar) and verdict.witness is not None:
        witness_out.write_text(serialize_triangulation(verdict.witness.triangulation))
        console.print(f"[green]Wrote {witness_out}[/green]")


@app.command("enumerate-graphs")
def enumerate_graphs(
    genus: int = typer.Option(..., "--genus", "-g", help="Genus (2 to 6)"),
    strategy: str = typer.Option("induction", "--strategy", help=f"One of {', '.join(STRATEGIES)}"),
    edges: bool = typer.Option(False, "--edges", help="Print edge lists"),
    verbose: bool = VERBOSE,
):
    """List connected trivalent planar graphs of a genus, one per isomorphism class."""
    load_config(verbose)
    with handle_errors():
        try:
            graphs = enumerate_trivalent_planar(genus, strategy)
        except ValueError as e:
            console.print(f"[red]Error: {e}[/red]")
            raise typer.Exit(code=1)
    for i, g in enumerate(graphs):
        line = f"{i}\t{g.certificate}"
        if edges:
            line += "\t" + " ".join(f"{a}-{b}" for a, b in g.edges)
        typer.echo(line)
    console.print(f"[bold]{len(graphs)} graphs[/bold] of genus {genus}")


@app.command("enumerate-tri")
def enumerate_tri(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .poly file"),
    regular_only: bool = typer.Option(False, "--regular-only", help="Keep regular triangulations only"),
    dump_heights: Optional[Path] = typer.Option(
        None, "--dump-heights", help="Directory for one heights file per regular triangulation"
    ),
    strategy: str = typer.Option("flip", "--strategy", help="flip or backtracking"),
    count: bool = typer.Option(False, "--count", help="Print the number of triangulations only"),
    verbose: bool = VERBOSE,
):
    """Every unimodular triangulation of a polygon, one serialized triangulation per line."""
    config = load_config(verbose)
    if dump_heights:
        dump_heights.mkdir(parents=True, exist_ok=True)
    total = 0
    with handle_errors():
        polygon = read_polygon(path)
        limit = config.lattice_point_limit if strategy == "flip" else config.backtracking_point_limit
        try:
            triangulations = enumerate_triangulations(polygon, limit, strategy)
        except ValueError as e:
            console.print(f"[red]Error: {e}[/red]")
            raise typer.Exit(code=1)
        for tri in triangulations:
            result = None
            if regular_only or dump_heights:
                result = is_regular(
                    tri, fm_max_variables=config.fm_max_variables, fm_row_limit=config.fm_row_limit
                )
                if regular_only and not result:
                    continue
            if not count:
                typer.echo(tri.serialize())
            if dump_heights and result and result.heights is not None:
                (dump_heights / f"{total:05d}.heights").write_text(serialize_heights(result.heights))
            total += 1
    console.print(f"[bold]{total}[/bold] {'regular ' if regular_only else ''}triangulations of {polygon}")
    if count:
        typer.echo(str(total))


@app.command()
def census(
    genus: Optional[int] = typer.Option(None, "--genus", "-g", help="Only polygons of this genus"),
    max_points: Optional[int] = typer.Option(None, "--max-points", help="Lattice point bound of the corpus"),
    polygon_files: Optional[List[Path]] = typer.Option(
        None, "--polygon", "-p", exists=True, help="Polygon files to use instead of the generated corpus"
    ),
    polygons_dir: Optional[Path] = typer.Option(
        None, "--polygons", exists=True, file_okay=False, help="Directory whose *.poly files form the corpus"
    ),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write records here instead of stdout"),
    regular_only: Optional[bool] = typer.Option(
        None, "--regular-only/--all", help="Keep regular triangulations only, or every triangulation"
    ),
    workers: Optional[int] = typer.Option(None, "--workers", "-w", help="Worker processes (0 = physical cores)"),
    metrics_file: Optional[Path] = typer.Option(None, "--metrics-file", help="Write Prometheus metrics here"),
    log_file: Optional[Path] = typer.Option(None, "--log-file", help="Keep a run log"),
    verbose: bool = VERBOSE,
):
    """Skeletonize every triangulation of a polygon corpus and record the skeleton certificates."""
    config = load_config(verbose, workers=workers, corpus_max_points=max_points, regular_only=regular_only)
    run_logger, memory = setup_logger("troplanar", log_file, verbose)
    metrics = CensusMetrics(enabled=config.metrics_enabled or metrics_enabled_from_env() or metrics_file is not None)

    with handle_errors():
        if polygon_files or polygons_dir:
            paths = list(polygon_files or [])
            if polygons_dir:
                paths.extend(sorted(polygons_dir.glob("*.poly")))
            polygons = [read_polygon(p) for p in paths]
            if genus is not None:
                polygons = [p for p in polygons if p.genus == genus]
        else:
            polygons = polygon_corpus(genus, config.corpus_max_points)
        run_logger.info(f"Census over {len(polygons)} polygons with {config.workers} workers")
        records = oracle.census(
            polygons,
            regular_only=config.regular_only,
            workers=config.workers,
            limit=config.lattice_point_limit,
            metrics=metrics,
            fm_max_variables=config.fm_max_variables,
            fm_row_limit=config.fm_row_limit,
        )

    if out:
        oracle.write_census(records, out)
        console.print(f"[green]Wrote {len(records)} records to {out}[/green]")
    else:
        for record in sorted(records):
            typer.echo(record.to_line())

    table = Table(title="Census")
    table.add_column("Polygons", style="cyan")
    table.add_column("Records", style="magenta")
    table.add_column("Regular", style="green")
    table.add_column("Distinct skeletons", style="yellow")
    table.add_row(
        str(len(polygons)),
        str(len(records)),
        str(sum(1 for r in records if r.regular)),
        str(len(oracle.certificates(records, regular_only=config.regular_only))),
    )
    console.print(table)
    if metrics_file:
        metrics.write(metrics_file)


@app.command("find-witness")
def find_witness(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .graph file"),
    max_points: Optional[int] = typer.Option(None, "--max-points", help="Lattice point bound of the search corpus"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Write the witness triangulation here"),
    verbose: bool = VERBOSE,
):
    """Search a regular triangulation whose skeleton is the given graph."""
    config = load_config(verbose, corpus_max_points=max_points)
    with handle_errors():
        g = read_graph(path)
        witness = oracle.find_witness(
            g,
            polygons=polygons_for(g.genus, config.corpus_max_points, config.corpus_dir),
            witnesses=load_witnesses(config.corpus_dir),
            limit=config.lattice_point_limit,
        )
    if witness is None:
        console.print(
            f"[yellow]No witness within {config.corpus_max_points} lattice points "
            "(this does not prove the graph unrealizable)[/yellow]"
        )
        raise typer.Exit(code=1)
    console.print(f"[green]Witness on {witness.polygon}[/green] {witness.source or ''}")
    _emit(serialize_triangulation(witness.triangulation), out)


@app.command("verify-paper")
def verify_paper(
    full: bool = typer.Option(False, "--full", help="Sweep polygons up to 11 lattice points"),
    only: Optional[List[str]] = typer.Option(None, "--only", help="Run checks whose name contains this text"),
    log_file: Optional[Path] = typer.Option(None, "--log-file", help="Keep a run log"),
    verbose: bool = VERBOSE,
):
    """Run the fixture acceptance suite; exits 1 when any check fails."""
    config = load_config(verbose)
    _, memory = setup_logger("troplanar", log_file, verbose)
    console.print(
        Panel.fit(
            f"[bold]Fixture acceptance suite[/bold]\nsweep: {'full' if full else 'desk'} scale",
            border_style="blue",
        )
    )
    with handle_errors():
        passed = PaperVerifier(config, full=full, console=console, memory=memory).run_checks(only)
    if not passed:
        raise typer.Exit(code=1)
    console.print("[bold green]All checks passed[/bold green]")


@app.command()
def render(
    path: Path = typer.Argument(..., exists=True, dir_okay=False, help="A .tri, .poly or .graph file"),
    out: Path = typer.Option(..., "--out", "-o", help="Image file (png, svg, pdf)"),
    no_dual: bool = typer.Option(False, "--no-dual", help="Do not draw the dual graph"),
    seed: int = typer.Option(0, "--seed", help="Layout seed for graphs"),
    verbose: bool = VERBOSE,
):
    """Draw a triangulation with its dual graph, or a skeleton."""
    load_config(verbose)
    with handle_errors():
        kind = file_kind(path)
        if kind == "graph":
            render_graph(read_graph(path), out, title=path.stem, seed=seed)
        elif kind == "triangulation":
            render_triangulation(read_triangulation(path), out, dual=not no_dual, title=path.stem)
        else:
            polygon = read_polygon(path)
            render_triangulation(seed_triangulation(polygon), out, dual=not no_dual, title=path.stem)
    console.print(f"[green]Wrote {out}[/green]")


@config_app.command("init")
def config_init():
    """Write a commented default configuration file unless one exists."""
    path = ensure_config_exists()
    console.print(f"Config file: {path}", markup=False, highlight=False)


@config_app.command("list-keys")
def config_list_keys():
    """List all configurable keys."""
    ConfigManager().list_keys()


@config_app.command("set")
def config_set(key: str, value: str):
    """Set a configuration value."""
    if not ConfigManager().set_value(key, value):
        raise typer.Exit(code=1)


@config_app.command("show")
def config_show():
    """Show the effective configuration."""
    ConfigManager().show()


if __name__ == "__main__":
    app()
