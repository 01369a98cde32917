# SPDX-FileCopyrightText: 2025 grmin contributors
# SPDX-License-Identifier: MIT

"""Typer-based CLI for building and checking minimal codes over Galois rings."""

import json
import sys
from pathlib import Path
from typing import Any, Optional

import numpy as np
import typer
from loguru import logger
from pydantic import ValidationError
from rich.markup import escape
from rich.table import Table

from . import __version__
from .config.constants import (
    CONDITION_FAMILIES,
    FUNCTION_FAMILIES,
    LOG_FORMAT_DEFAULT,
    LOG_FORMAT_QUIET,
    LOG_FORMAT_VERBOSE,
    ExitCodes,
)
from .config.settings import BudgetSettings, RingSpec, SweepSettings, load_budgets
from .core.bounds import BoundsError, bound_report, exhaustive_k2_search
from .core.codes import (
    CodeError,
    CriterionScope,
    GeneratorMultiset,
    MinimalityReport,
    build_code,
    is_minimal_code_bruteforce,
    is_minimal_code_criterion,
)
from .core.constructions import build_cf, lambda0
from .core.functions import (
    FunctionTable,
    FunctionTableError,
    MonomialPoly,
    canonical_f,
    check_conditions,
)
from .core.lemmas import LemmaError
from .core.linalg import LinalgError
from .core.ring import RingContext, RingError, make_ring
from .utils.codefile import CodeFileError, dump_code, dump_function, dumps_code, load_code
from .utils.console import get_console, get_error_console
from .utils.progress import SweepProgress

app = typer.Typer(
    name="grmin",
    help="grmin - minimal linear codes over Galois rings GR(p^n, ell)",
    add_completion=False,
    rich_markup_mode="rich",
    context_settings={"help_option_names": ["-h", "--help"]},
)

console = get_console()
err_console = get_error_console()

# Failures of validation or of a requested computation; all map to exit code 2
USAGE_ERRORS = (
    RingError,
    LinalgError,
    CodeError,
    FunctionTableError,
    LemmaError,
    BoundsError,
    CodeFileError,
    ValidationError,
    ValueError,
)

CODE_FAMILIES = ("lambda0", "thm43", "thm46", "poly", "random")
METHODS = ("criterion", "bruteforce", "both")


def version_callback(value: bool) -> None:
    """Show version information."""
    if value:
        console.print(f"grmin version {__version__}")
        raise typer.Exit()


def setup_logging(verbose: bool = False, quiet: bool = False) -> None:
    """Setup logging configuration (stderr only)."""
    logger.remove()

    if quiet:
        level = "WARNING"
        format_str = LOG_FORMAT_QUIET
    elif verbose:
        level = "DEBUG"
        format_str = LOG_FORMAT_VERBOSE
    else:
        level = "INFO"
        format_str = LOG_FORMAT_DEFAULT

    logger.add(sys.stderr, level=level, format=format_str, colorize=True)


def get_global_options(ctx: typer.Context) -> tuple[bool, bool]:
    """Get global verbose and quiet options from context."""
    if ctx.obj is None:
        return False, False
    return ctx.obj.get("verbose", False), ctx.obj.get("quiet", False)


def get_budgets(ctx: typer.Context) -> BudgetSettings:
    """Budgets resolved by the main callback (defaults outside a CLI run)."""
    if ctx.obj is None or "budgets" not in ctx.obj:
        return load_budgets()
    budgets: BudgetSettings = ctx.obj["budgets"]
    return budgets


def fail(message: str, error: Optional[BaseException] = None) -> None:
    """Print an error to stderr and exit with the usage-error code."""
    err_console.print(f"[red]Error: {escape(message)}[/red]")
    if error is not None:
        raise typer.Exit(ExitCodes.USAGE_ERROR) from error
    raise typer.Exit(ExitCodes.USAGE_ERROR)


def emit_json(data: Any) -> None:
    typer.echo(json.dumps(data, indent=2))


def resolve_ring(
    p: Optional[int], n: int, ell: int, h: Optional[str], budgets: BudgetSettings
) -> RingContext:
    """Validate ring options and build the ring context."""
    if p is None:
        fail("--p is required")
    assert p is not None
    try:
        spec = RingSpec(p=p, n=n, ell=ell, h=RingSpec.parse_h(h))
        return make_ring(spec.p, spec.n, spec.ell, spec.h, table_cap=budgets.ring_table_cap)
    except (ValidationError, ValueError, RingError) as e:
        fail(f"Invalid ring: {e}", e)
        raise


def _ring_option() -> Any:
    return typer.Option(None, "--p", help="Residue characteristic (prime)", rich_help_panel="Ring")


def _n_option() -> Any:
    return typer.Option(1, "--n", help="Nilpotency exponent", rich_help_panel="Ring")


def _ell_option() -> Any:
    return typer.Option(1, "--ell", help="Extension degree", rich_help_panel="Ring")


def _h_option() -> Any:
    return typer.Option(
        None,
        "--h",
        help="Defining polynomial coefficients, constant first (e.g. 1,1,1)",
        show_default="smallest irreducible, leading term first",
        rich_help_panel="Ring",
    )


def _json_option() -> Any:
    return typer.Option(False, "--json", help="Print a JSON report on stdout")


@app.callback()
def main(
    ctx: typer.Context,
    version: Optional[bool] = typer.Option(
        None,
        "--version",
        "-V",
        callback=version_callback,
        is_eager=True,
        help="Show version and exit",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-v",
        help="Verbose output (increase log level)",
    ),
    quiet: bool = typer.Option(
        False,
        "--quiet",
        "-q",
        help="Quiet output (decrease log level)",
    ),
    config: Optional[Path] = typer.Option(
        None,
        "--config",
        help="TOML file with a [budget] table",
    ),
) -> None:
    """grmin - minimal linear codes over Galois rings."""
    if verbose and quiet:
        err_console.print("[red]Error: --verbose and --quiet cannot be used together[/red]")
        raise typer.Exit(ExitCodes.USAGE_ERROR)

    setup_logging(verbose, quiet)
    try:
        budgets = load_budgets(config)
    except (FileNotFoundError, ValidationError, ValueError) as e:
        err_console.print(f"[red]Error: Invalid budget configuration: {e}[/red]")
        raise typer.Exit(ExitCodes.USAGE_ERROR) from e

    if ctx.obj is None:
        ctx.obj = {}
    ctx.obj["verbose"] = verbose
    ctx.obj["quiet"] = quiet
    ctx.obj["budgets"] = budgets


@app.command()
def ring(
    ctx: typer.Context,
    p: Optional[int] = _ring_option(),
    n: int = _n_option(),
    ell: int = _ell_option(),
    h: Optional[str] = _h_option(),
    as_json: bool = _json_option(),
) -> None:
    """Show the census of GR(p^n, ell): units, zero divisors, valuation classes.

    Without --h, ell > 1 uses the smallest monic irreducible polynomial modulo p,
    comparing coefficients from the leading term down: x^3+x+1 for p=2, ell=3.
    """
    ring_ctx = resolve_ring(p, n, ell, h, get_budgets(ctx))
    census = ring_ctx.census()
    if as_json:
        emit_json(census)
        return

    console.print(census["descriptor"])
    table = Table(title="Ring census", show_header=True, header_style="bold magenta")
    table.add_column("Property", style="cyan", no_wrap=True)
    table.add_column("Value", justify="right")
    table.add_row("Size", str(census["size"]))
    table.add_row("Residue field q", str(census["q"]))
    table.add_row("Units", str(census["units"]))
    table.add_row("Nonzero zero divisors", str(census["zero_divisors"]))
    for r, count in census["valuation_classes"].items():
        table.add_row(f"Valuation {r}", str(count))
    table.add_row("Teichmuller set", " ".join(census["teichmuller"]))
    console.print(table)


def _function_table(
    ring_ctx: RingContext,
    family: str,
    m: int,
    poly: Optional[str],
    restrict_rootwords: bool,
) -> FunctionTable:
    domain = "root_words_only" if restrict_rootwords else "all_nonzero"
    parsed = MonomialPoly.parse(poly, ring_ctx, m) if poly else None
    return canonical_f(ring_ctx, family, m, poly=parsed, domain_mode=domain)


def _random_generators(ring_ctx: RingContext, m: int, k: int, seed: int) -> GeneratorMultiset:
    """Uniform columns, redrawn until the McCoy rank is m."""
    rng = np.random.default_rng(seed)
    for _ in range(256):
        generators = GeneratorMultiset(ring_ctx, rng.integers(0, ring_ctx.size, size=(k, m)))
        if generators.mccoy_rank() == m:
            return generators
    raise CodeError(f"No full-rank [{k},{m}] generator set drawn from seed {seed}")


def _code_summary(generators: GeneratorMultiset, family: str) -> dict[str, Any]:
    return {
        "family": family,
        "ring": generators.ctx.descriptor(),
        "m": generators.m,
        "k": generators.k,
    }


def _print_summary(summary: dict[str, Any], title: str) -> None:
    table = Table(title=title, show_header=False, header_style="bold magenta")
    table.add_column("Property", style="cyan", no_wrap=True)
    table.add_column("Value", style="white")
    for key, value in summary.items():
        if isinstance(value, (dict, list)):
            continue
        table.add_row(key, str(value))
    console.print(table)


@app.command()
def construct(
    ctx: typer.Context,
    family: str = typer.Option(
        ..., "--family", help="lambda0, thm43, thm46, poly or random"
    ),
    m: int = typer.Option(..., "--m", help="Code dimension (lambda0, random) or arity of f"),
    p: Optional[int] = _ring_option(),
    n: int = _n_option(),
    ell: int = _ell_option(),
    h: Optional[str] = _h_option(),
    poly: Optional[str] = typer.Option(None, "--poly", help="Polynomial for the poly family"),
    restrict_rootwords: bool = typer.Option(
        False, "--restrict-rootwords", help="Evaluate f on root words only"
    ),
    k: Optional[int] = typer.Option(None, "--k", help="Length for the random family"),
    seed: int = typer.Option(0, "--seed", help="Seed for the random family"),
    out: Optional[Path] = typer.Option(None, "--out", help="GRCODE file to write"),
    as_json: bool = _json_option(),
) -> None:
    """Build a generator multiset and write it as a GRCODE file."""
    if family not in CODE_FAMILIES:
        fail(f"--family must be one of: {', '.join(CODE_FAMILIES)}")
    ring_ctx = resolve_ring(p, n, ell, h, get_budgets(ctx))

    try:
        if family == "lambda0":
            generators = lambda0(ring_ctx, m)
        elif family == "random":
            if k is None:
                fail("--k is required for the random family")
            assert k is not None
            generators = _random_generators(ring_ctx, m, k, seed)
        else:
            generators = build_cf(_function_table(ring_ctx, family, m, poly, restrict_rootwords))
    except USAGE_ERRORS as e:
        fail(str(e), e)
        raise

    summary = _code_summary(generators, family)
    if out is not None:
        summary["out"] = str(dump_code(generators, out))
    logger.success(f"Constructed [{generators.k},{generators.m}] code ({family})")

    if as_json:
        emit_json(summary)
    else:
        _print_summary(summary, "Constructed code")
        if out is None:
            typer.echo(dumps_code(generators), nl=False)


def _report_table(reports: dict[str, MinimalityReport]) -> Table:
    table = Table(title="Minimality", show_header=True, header_style="bold magenta")
    table.add_column("Method", style="cyan", no_wrap=True)
    table.add_column("Verdict", justify="center")
    table.add_column("Checked", justify="right")
    table.add_column("Time", justify="right")
    table.add_column("First witness", style="dim")
    for method, report in reports.items():
        verdict = "[green]minimal[/green]" if report.verdict else "[red]not minimal[/red]"
        witness = str(report.witnesses[0].v) if report.witnesses else ""
        table.add_row(method, verdict, str(report.checked), f"{report.elapsed_ms:.0f} ms", witness)
    return table


def run_checks(
    generators: GeneratorMultiset,
    method: str,
    scope: str,
    sweep: SweepSettings,
    budgets: BudgetSettings,
) -> tuple[dict[str, MinimalityReport], bool]:
    """Run the requested minimality checks.

    Returns:
        Reports by method and whether the overall verdict is positive (both
        methods must agree when both run)
    """
    code = build_code(generators)
    reports: dict[str, MinimalityReport] = {}
    if method in ("criterion", "both"):
        with SweepProgress("Criterion sweep", code.message_count - 1, sweep.show_progress) as bar:
            reports["criterion"] = is_minimal_code_criterion(
                code, CriterionScope(scope), sweep, budgets, bar.callback
            )
    if method in ("bruteforce", "both"):
        reports["bruteforce"] = is_minimal_code_bruteforce(code, budgets)

    verdicts = {report.verdict for report in reports.values()}
    if len(verdicts) > 1:
        logger.error("Criterion and brute-force verdicts disagree")
    return reports, verdicts == {True}


def _sweep_settings(
    ctx: typer.Context, threads: int, cross_check: bool, as_json: bool
) -> SweepSettings:
    _, quiet = get_global_options(ctx)
    return SweepSettings(
        threads=threads,
        cross_check=cross_check,
        show_progress=not (quiet or as_json),
    )


@app.command()
def check(
    ctx: typer.Context,
    in_file: Path = typer.Option(..., "--in", help="GRCODE file to check"),
    method: str = typer.Option("criterion", "--method", help="criterion, bruteforce or both"),
    scope: str = typer.Option(
        "all_nonzero", "--scope", help="all_nonzero or root_words_only (criterion)"
    ),
    threads: int = typer.Option(1, "--threads", "-t", help="Worker processes"),
    cross_check: bool = typer.Option(
        False, "--cross-check", help="Run both criterion paths on root words"
    ),
    as_json: bool = _json_option(),
) -> None:
    """Check whether every nonzero codeword of a code is minimal."""
    if method not in METHODS:
        fail(f"--method must be one of: {', '.join(METHODS)}")
    budgets = get_budgets(ctx)
    try:
        sweep = _sweep_settings(ctx, threads, cross_check, as_json)
        generators = load_code(in_file, table_cap=budgets.ring_table_cap)
        reports, verdict = run_checks(generators, method, scope, sweep, budgets)
    except USAGE_ERRORS as e:
        fail(str(e), e)
        raise

    if as_json:
        emit_json(
            {
                "code": _code_summary(generators, "file"),
                "scope": scope,
                "verdict": verdict,
                "agree": len({r.verdict for r in reports.values()}) == 1,
                "reports": {name: r.model_dump() for name, r in reports.items()},
            }
        )
    else:
        console.print(_report_table(reports))

    if not verdict:
        raise typer.Exit(ExitCodes.VERDICT_FALSE)


@app.command()
def cf(
    ctx: typer.Context,
    family: str = typer.Option(..., "--family", help=", ".join(FUNCTION_FAMILIES)),
    m: int = typer.Option(..., "--m", help="Arity of f; the code has dimension m+1"),
    p: Optional[int] = _ring_option(),
    n: int = _n_option(),
    ell: int = _ell_option(),
    h: Optional[str] = _h_option(),
    poly: Optional[str] = typer.Option(None, "--poly", help="Polynomial for the poly family"),
    restrict_rootwords: bool = typer.Option(
        False, "--restrict-rootwords", help="Evaluate f on root words only"
    ),
    check_method: str = typer.Option(
        "none", "--check", help="none, criterion, bruteforce or both"
    ),
    conditions: Optional[str] = typer.Option(
        None,
        "--conditions",
        help="Condition family to check (defaults to --family)",
        show_default="family",
    ),
    threads: int = typer.Option(1, "--threads", "-t", help="Worker processes"),
    out: Optional[Path] = typer.Option(None, "--out", help="GRCODE file to write"),
    function_out: Optional[Path] = typer.Option(
        None, "--function-out", help="JSON file for the function table"
    ),
    as_json: bool = _json_option(),
) -> None:
    """Build C_f from a canonical function, check its conditions and minimality."""
    if family not in FUNCTION_FAMILIES:
        fail(f"--family must be one of: {', '.join(FUNCTION_FAMILIES)}")
    if check_method != "none" and check_method not in METHODS:
        fail(f"--check must be none or one of: {', '.join(METHODS)}")
    condition_family = conditions or family
    if condition_family not in CONDITION_FAMILIES:
        fail(f"--conditions must be one of: {', '.join(CONDITION_FAMILIES)}")
    budgets = get_budgets(ctx)
    ring_ctx = resolve_ring(p, n, ell, h, budgets)

    try:
        f = _function_table(ring_ctx, family, m, poly, restrict_rootwords)
        condition_report = check_conditions(f, condition_family)
        generators = build_cf(f)
        reports: dict[str, MinimalityReport] = {}
        verdict = True
        if check_method != "none":
            sweep = _sweep_settings(ctx, threads, False, as_json)
            reports, verdict = run_checks(
                generators, check_method, "all_nonzero", sweep, budgets
            )
    except USAGE_ERRORS as e:
        fail(str(e), e)
        raise

    if not condition_report.passed:
        logger.warning(f"f does not satisfy the {condition_family} conditions")
    summary = _code_summary(generators, family)
    summary["domain"] = f.domain_mode
    if out is not None:
        summary["out"] = str(dump_code(generators, out))
    if function_out is not None:
        summary["function_out"] = str(dump_function(f, function_out))

    if as_json:
        summary["conditions"] = condition_report.model_dump()
        summary["reports"] = {name: r.model_dump() for name, r in reports.items()}
        summary["verdict"] = verdict if reports else None
        emit_json(summary)
    else:
        _print_summary(summary, "C_f")
        table = Table(title="Conditions", show_header=True, header_style="bold magenta")
        table.add_column("Condition", style="cyan", no_wrap=True)
        table.add_column("Status", justify="center")
        table.add_column("Counterexample", style="dim")
        for result in condition_report.conditions:
            status = "[green]PASS[/green]" if result.passed else "[red]FAIL[/red]"
            table.add_row(result.name, status, str(result.counterexample or ""))
        console.print(table)
        for note in condition_report.notes:
            console.print(f"[yellow]{note}[/yellow]")
        if reports:
            console.print(_report_table(reports))

    if not (verdict and condition_report.passed):
        raise typer.Exit(ExitCodes.VERDICT_FALSE)


def _search(
    ctx: typer.Context,
    ring_ctx: RingContext,
    k_max: int,
    threads: int,
    budgets: BudgetSettings,
    quiet_output: bool,
) -> Any:
    _, quiet = get_global_options(ctx)
    sweep = SweepSettings(threads=threads, show_progress=not (quiet or quiet_output))
    with SweepProgress("k(2) search", 0, sweep.show_progress) as bar:
        return exhaustive_k2_search(ring_ctx, k_max, budgets, sweep, bar.callback)


@app.command()
def bounds(
    ctx: typer.Context,
    m: int = typer.Option(..., "--m", help="Code dimension"),
    p: Optional[int] = _ring_option(),
    n: int = _n_option(),
    ell: int = _ell_option(),
    h: Optional[str] = _h_option(),
    in_file: Optional[Path] = typer.Option(
        None, "--in", help="Minimal code whose length is tested against the bound"
    ),
    k_max: Optional[int] = typer.Option(
        None, "--k-max", help="Also search minimal [k,2] codes up to this length"
    ),
    out: Optional[Path] = typer.Option(None, "--out", help="GRCODE file for a search witness"),
    threads: int = typer.Option(1, "--threads", "-t", help="Worker processes"),
    as_json: bool = _json_option(),
) -> None:
    """Report the length lower bound, the pairwise construction length and k(2)."""
    budgets = get_budgets(ctx)
    ring_ctx = resolve_ring(p, n, ell, h, budgets)
    try:
        length = None
        if in_file is not None:
            generators = load_code(in_file, expected=ring_ctx, table_cap=budgets.ring_table_cap)
            if generators.m != m:
                fail(f"{in_file} has dimension {generators.m}, not {m}")
            length = generators.k
        report = bound_report(ring_ctx, m, length)
        search = None
        if k_max is not None:
            if m != 2:
                fail("--k-max searches two-dimensional codes; use --m 2")
            search = _search(ctx, ring_ctx, k_max, threads, budgets, as_json)
            if search.generators is not None and out is not None:
                report.witnesses.append(str(dump_code(search.generators, out)))
    except USAGE_ERRORS as e:
        fail(str(e), e)
        raise

    if as_json:
        data = report.model_dump()
        if search is not None:
            data["search"] = search.to_dict()
        emit_json(data)
    else:
        _print_summary(report.model_dump(), "Length bounds")
        if search is not None:
            console.print(repr(search))


@app.command("search-k2")
def search_k2(
    ctx: typer.Context,
    k_max: int = typer.Option(..., "--k-max", help="Largest length searched"),
    p: Optional[int] = _ring_option(),
    n: int = _n_option(),
    ell: int = _ell_option(),
    h: Optional[str] = _h_option(),
    out: Optional[Path] = typer.Option(None, "--out", help="GRCODE file for the witness"),
    threads: int = typer.Option(1, "--threads", "-t", help="Worker processes"),
    as_json: bool = _json_option(),
) -> None:
    """Find the smallest length of a minimal two-dimensional code."""
    budgets = get_budgets(ctx)
    ring_ctx = resolve_ring(p, n, ell, h, budgets)
    try:
        result = _search(ctx, ring_ctx, k_max, threads, budgets, as_json)
    except USAGE_ERRORS as e:
        fail(str(e), e)
        raise

    data = result.to_dict()
    data["ring"] = ring_ctx.descriptor()
    if result.generators is not None and out is not None:
        data["out"] = str(dump_code(result.generators, out))
    if as_json:
        emit_json(data)
    else:
        _print_summary(data, "k(2) search")
        if result.generators is not None and out is None:
            typer.echo(dumps_code(result.generators), nl=False)

    if not result.found:
        raise typer.Exit(ExitCodes.VERDICT_FALSE)


@app.command("verify-file")
def verify_file(
    ctx: typer.Context,
    in_file: Path = typer.Option(..., "--in", help="GRCODE file to verify"),
    p: Optional[int] = _ring_option(),
    n: int = _n_option(),
    ell: int = _ell_option(),
    h: Optional[str] = _h_option(),
    as_json: bool = _json_option(),
) -> None:
    """Re-read a GRCODE file and confirm it re-serializes byte for byte."""
    budgets = get_budgets(ctx)
    expected = resolve_ring(p, n, ell, h, budgets) if p is not None else None
    try:
        generators = load_code(in_file, expected=expected, table_cap=budgets.ring_table_cap)
        original = in_file.read_bytes()
    except (CodeFileError, OSError) as e:
        fail(str(e), e)
        raise

    identical = dumps_code(generators).encode("utf-8") == original
    data = _code_summary(generators, "file")
    data["identical"] = identical
    data["ring_matches"] = True if expected is not None else None
    if as_json:
        emit_json(data)
    else:
        _print_summary(data, f"{in_file.name}")
    if not identical:
        raise typer.Exit(ExitCodes.USAGE_ERROR)


def cli_main() -> None:
    """Main entry point for the CLI."""
    try:
        app()
    except KeyboardInterrupt:
        err_console.print("\n[yellow]Operation cancelled by user[/yellow]")
        sys.exit(ExitCodes.USAGE_ERROR)
    except Exception as e:
        logger.error(f"Unexpected error: {e}")
        err_console.print(f"[red]Unexpected error: {e}[/red]")
        sys.exit(ExitCodes.USAGE_ERROR)


if __name__ == "__main__":
    cli_main()
