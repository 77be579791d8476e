"""Command-line surface: ``python cli.py --help``."""
import functools
import logging
import sys
from typing import List, Optional

import click
from pydantic import ValidationError

import config
from cells import canonical_cells
from chromatic import color as color_guarding, guard_forest, ruler_sequence
from errors import ChromaError
from geometry import classify_vertices, ensure_valid, format_coord, validate
from partition import window_partition
from render import RenderSpec, render as render_svg
from schemas import (
    CellsOut,
    ConformOut,
    DecomposeOut,
    GuardingIn,
    PolygonIn,
    SearchOut,
    TableauIn,
    TraceOut,
    ValidationOut,
    VerdictOut,
    VisTreeOut,
)
from search import YES, exists_guarding, min_colors
from spikes import block_ops, column_depths, gen_spike, row_heights
from tableau import (
    check_conform,
    check_left_right,
    extract_l,
    extract_r,
    op_delete_top_rows,
    op_restrict_block,
    op_select_columns,
    staged_reduction,
    verify_trace,
)
from verify import verify as verify_guarding

logger = logging.getLogger(__name__)

OK, FAILED, INVALID = 0, 1, 2


def _guarded(fn):
    """Turn domain and format errors into exit code 2 with a one-line diagnostic."""

    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except ValidationError as exc:
            first = exc.errors()[0]
            where = ".".join(str(part) for part in first["loc"]) or "input"
            click.echo(f"error: {where}: {first['msg']}", err=True)
        except (ChromaError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
        sys.exit(INVALID)

    return wrapper


def _emit(model, output=None) -> None:
    click.echo(model.model_dump_json(indent=2), file=output)


def _polygon(stream):
    return PolygonIn.model_validate_json(stream.read()).to_polygon()


def _guarding(stream):
    return GuardingIn.model_validate_json(stream.read()).to_guarding()


def _tableau(stream):
    return TableauIn.model_validate_json(stream.read()).to_tableau()


@click.group()
@click.option("-v", "--verbose", count=True, help="-v for INFO, -vv for DEBUG")
def cli(verbose):
    level = {0: config.LOG_LEVEL, 1: "INFO"}.get(verbose, "DEBUG")
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)


# -----------------------------
# Polygons
# -----------------------------
@cli.group()
def gen():
    """Generate polygons."""


@gen.command("spike")
@click.option("--m", "m", type=int, required=True)
@click.option("--stretched", is_flag=True, help="exponential row heights")
@_guarded
def gen_spike_cmd(m, stretched):
    _emit(PolygonIn.from_polygon(gen_spike(m, stretched)))


@cli.command("validate")
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def validate_cmd(polygon):
    poly = _polygon(polygon)
    report = validate(poly)
    labels = classify_vertices(poly) if report.structurally_ok else None
    _emit(ValidationOut.from_report(
        report,
        reflex=len(labels.reflex_indices) if labels else 0,
        convex=labels.convex_count if labels else 0,
    ))
    sys.exit(OK if report.ok else FAILED)


@cli.group()
def info():
    """Print facts about a polygon or a spike column."""


@info.command("cells")
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def info_cells(polygon):
    poly = ensure_valid(_polygon(polygon))
    grid = poly.grid
    _emit(CellsOut(
        xcuts=[format_coord(x) for x in grid.xcuts],
        ycuts=[format_coord(y) for y in grid.ycuts],
        inside_cells=grid.inside_count,
        classes=len(canonical_cells(grid)),
    ))


@info.command("vertices")
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def info_vertices(polygon):
    poly = ensure_valid(_polygon(polygon))
    for v, kind in zip(poly.vertices, classify_vertices(poly).labels):
        click.echo(f"{format_coord(v.x)} {format_coord(v.y)} {kind.value}")


@info.command("blocks")
@click.option("--m", "m", type=int, required=True)
@click.option("--k", "k", type=int, required=True)
@_guarded
def info_blocks(m, k):
    b = block_ops(m, k)

    def span(r):
        return f"[{r.start}, {r.stop - 1}]" if len(r) else "empty"

    click.echo(f"d_{m}({k}) = {b.depth}")
    click.echo(f"B = {span(b.block)}  B_L = {span(b.left)}  B_R = {span(b.right)}")
    click.echo(f"l = {b.l}  r = {b.r}")
    click.echo("  ".join(f"B_{xy} = {span(r)}" for xy, r in b.quarters))


@info.command("profile")
@click.option("--m", "m", type=int, required=True)
@click.option("--stretched", is_flag=True)
@_guarded
def info_profile(m, stretched):
    click.echo("depths: " + " ".join(str(d) for d in column_depths(m)))
    click.echo("row heights: " + " ".join(str(h) for h in row_heights(m, stretched)))


@cli.command("partition")
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def partition_cmd(polygon):
    _emit(VisTreeOut.from_tree(window_partition(_polygon(polygon))))


@cli.command("decompose")
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def decompose_cmd(polygon):
    _emit(DecomposeOut.from_forest(guard_forest(_polygon(polygon))))


# -----------------------------
# Guardings
# -----------------------------
@cli.command("color")
@click.option("--mode", type=click.Choice(["strong", "cf"]), default="cf", show_default=True)
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def color_cmd(mode, polygon):
    _emit(GuardingIn.from_guarding(color_guarding(_polygon(polygon), mode)))


@cli.command("verify")
@click.option("--mode", type=click.Choice(["cover", "strong", "cf"]), default="cf", show_default=True)
@click.option("--vis", type=click.Choice(["r", "l"]), default="r", show_default=True)
@click.argument("polygon", type=click.File("r"))
@click.argument("guards", type=click.File("r"))
@_guarded
def verify_cmd(mode, vis, polygon, guards):
    verdict = verify_guarding(_polygon(polygon), _guarding(guards), mode, vis)
    _emit(VerdictOut.from_verdict(verdict))
    sys.exit(OK if verdict.ok else FAILED)


@cli.group("search")
def search_group():
    """Exhaustive minimum-colour search."""


@search_group.command("min-colors")
@click.option("--mode", type=click.Choice(["strong", "cf"]), default="cf", show_default=True)
@click.option("--vis", type=click.Choice(["r"]), default="r", show_default=True)
@click.option("--max-t", type=int, default=4, show_default=True)
@click.option("--budget", type=float, default=None, help="seconds; defaults to CHROMAGUARD_SEARCH_BUDGET")
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def search_min_colors(mode, vis, max_t, budget, polygon):
    result = min_colors(_polygon(polygon), mode, vis, budget, max_t)
    _emit(SearchOut.from_result(result))
    sys.exit(OK if result.status == YES else FAILED)


@search_group.command("exists")
@click.option("--t", "t", type=int, required=True)
@click.option("--mode", type=click.Choice(["strong", "cf"]), default="cf", show_default=True)
@click.option("--budget", type=float, default=None)
@click.argument("polygon", type=click.File("r"), default="-")
@_guarded
def search_exists(t, mode, budget, polygon):
    result = exists_guarding(_polygon(polygon), t, mode, "r", budget)
    _emit(SearchOut.from_result(result))
    sys.exit(OK if result.status == YES else FAILED)


# -----------------------------
# Tableaux
# -----------------------------
@cli.group()
def tableau():
    """Multicolor tableaux of spike guardings."""


@tableau.command("extract")
@click.option("--vis", type=click.Choice(["r", "l"]), default="r", show_default=True)
@click.option("--m", "m", type=int, required=True)
@click.argument("guards", type=click.File("r"), default="-")
@_guarded
def tableau_extract(vis, m, guards):
    guarding = _guarding(guards)
    T = extract_r(m, guarding) if vis == "r" else extract_l(m, guarding)
    _emit(TableauIn.from_tableau(T))


@tableau.command("check")
@click.option("--t", "t", type=int, default=None, help="colour universe; defaults to the tableau's t")
@click.option("--left-right", is_flag=True, help="check the stronger half-block rule instead")
@click.argument("tab", type=click.File("r"), default="-")
@_guarded
def tableau_check(t, left_right, tab):
    T = _tableau(tab)
    result = check_left_right(T) if left_right else check_conform(T, t or T.t)
    _emit(ConformOut.from_result(result))
    sys.exit(OK if result.ok else FAILED)


@tableau.command("restrict")
@click.option("--k", "k", type=int, required=True)
@click.argument("tab", type=click.File("r"), default="-")
@_guarded
def tableau_restrict(k, tab):
    _emit(TableauIn.from_tableau(op_restrict_block(_tableau(tab), k)))


@tableau.command("droprows")
@click.option("--m-new", type=int, required=True)
@click.argument("tab", type=click.File("r"), default="-")
@_guarded
def tableau_droprows(m_new, tab):
    _emit(TableauIn.from_tableau(op_delete_top_rows(_tableau(tab), m_new)))


def _choices(values: List[str]) -> dict:
    out = {}
    for item in values:
        k, sep, j = item.partition("=")
        if not sep:
            raise click.BadParameter(f"expected K=J, got {item!r}", param_hint="--choice")
        out[int(k)] = int(j)
    return out


@tableau.command("select")
@click.option("--m-star", type=int, required=True)
@click.option("--choice", "choices", multiple=True, help="odd column choice K=J")
@click.argument("tab", type=click.File("r"), default="-")
@_guarded
def tableau_select(m_star, choices, tab):
    _emit(TableauIn.from_tableau(op_select_columns(_tableau(tab), m_star, _choices(choices))))


@tableau.command("reduce")
@click.option("--t", "t", type=int, required=True)
@click.option("--target-m", type=int, default=None)
@click.option("--vis", type=click.Choice(["r", "l"]), default="l", show_default=True, help="half-block (r) or quarter-block (l) stages")
@click.argument("tab", type=click.File("r"), default="-")
@_guarded
def tableau_reduce(t, target_m, vis, tab):
    T = _tableau(tab)
    trace = staged_reduction(T, t, target_m, vis)
    _emit(TraceOut.from_trace(trace, replay_ok=verify_trace(T, trace, t).ok))


# -----------------------------
# Misc
# -----------------------------
@cli.command("seq")
@click.option("--m", "m", type=int, required=True)
@_guarded
def seq_cmd(m):
    click.echo(" ".join(str(s) for s in ruler_sequence(m)))


@cli.command("render")
@click.argument("polygon", type=click.File("r"))
@click.option("--guards", type=click.File("r"), default=None)
@click.option("--cells", "show_cells", is_flag=True)
@click.option("--squash", "squash_rows", is_flag=True, help="uniform row heights with depth annotations")
@click.option("--scale", type=float, default=None)
@click.option("-o", "--output", type=click.File("w"), default="-")
@_guarded
def render_cmd(polygon, guards, show_cells, squash_rows, scale, output):
    poly = ensure_valid(_polygon(polygon))
    guarding = _guarding(guards) if guards else None
    spec = RenderSpec(scale=scale or config.RENDER_SCALE, show_cells=show_cells, squash_rows=squash_rows)
    logger.info("saving to %s", output.name)
    output.write(render_svg(poly, guarding, spec))


@cli.command("serve")
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8000, show_default=True)
def serve(host, port):
    import uvicorn

    uvicorn.run("main:app", host=host, port=port)


def run(argv: Optional[List[str]] = None) -> int:
    try:
        cli.main(args=argv, prog_name="chromaguard", standalone_mode=False)
    except click.exceptions.Exit as exc:
        return exc.exit_code
    except click.ClickException as exc:
        exc.show()
        return exc.exit_code
    except click.Abort:
        return FAILED
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else OK
    return OK


if __name__ == "__main__":
    sys.exit(run())
