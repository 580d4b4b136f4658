"""
FRANEL CLI - Command Line Interface
===================================

Commands:
- profile   per-denominator profiles P_m(k) and R(m), optional per-term output
- fit       two-point envelopes over prime sets and the (s, t, u, v) table
- ratio     R~(x) / x^(-1+eps) over a geometric range
- verify    desk-scale cross-checks
- hull      prime hull of a profile
- bumps     detrended hull peaks near m/j
- envelope  closed-form envelope next to P_m(k)
- bound     R(m) against R~(m)
"""

import sys
import functools
from contextlib import contextmanager
from dataclasses import dataclass, replace
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import click
from rich.console import Console
from rich.markup import escape
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn
from rich.table import Table
from rich import print as rprint

# Add parent directory to path for imports
sys.path.insert(0, str(Path(__file__).parent.parent))

from config import FRANELConfig
from src.asymptotics.bound import check_bound, envelope_series, ratio_scan
from src.asymptotics.params import AsymptoticParams
from src.core.sweeper import ProfileSweeper
from src.detection.bumps import detect_bumps, prime_hull
from src.errors import FranelError, InvalidArgumentError
from src.fitting.primes import PrimeSet, parse_prime_set_label, prime_set
from src.fitting.table import compare_with_published, fit_table_rows
from src.profile.franel import DenominatorProfile, IndexConvention, iter_deviation_terms
from src.reports import csv_writer
from src.reports.csv_writer import atomic_write_text, load_params_from_table
from src.reports.gnuplot import write_script
from src.storage.profile_cache import ProfileCache
from src.verification import run_verification

console = Console()
err_console = Console(stderr=True)


# ============================================================================
# RUN CONFIGURATION
# ============================================================================

@dataclass(frozen=True)
class RunConfig:
    """Per-invocation settings shared by every command"""

    convention: IndexConvention
    cache_dir: Path
    output_dir: Path
    threads: Optional[int]
    use_cache: bool
    plots: bool

    def validate(self) -> None:
        if self.threads is not None and not (
            FRANELConfig.MIN_THREADS <= self.threads <= FRANELConfig.MAX_THREADS
        ):
            raise click.BadParameter(
                f"must be between {FRANELConfig.MIN_THREADS} and {FRANELConfig.MAX_THREADS}, "
                f"got {self.threads}",
                param_hint="'--threads'"
            )

    def prepare(self) -> None:
        FRANELConfig.initialize(self.cache_dir if self.use_cache else None, self.output_dir)

    def sweeper(self) -> ProfileSweeper:
        cache = ProfileCache(self.cache_dir) if self.use_cache else None
        return ProfileSweeper(cache=cache, workers=self.threads)

    def output(self, name: str) -> Path:
        return self.output_dir / name

    @property
    def tag(self) -> str:
        return self.convention.value


@contextmanager
def _arguments():
    # InvalidArgumentError while checking arguments is a usage error
    try:
        yield
    except InvalidArgumentError as e:
        raise click.UsageError(str(e)) from e


def _check_order(m: int, hint: str = "'--m'", minimum: int = 2) -> int:
    if m < minimum:
        raise click.BadParameter(f"Farey order must be >= {minimum}, got {m}", param_hint=hint)
    return m


def _orders(m: Optional[int], m_range: Optional[Tuple[int, int]]) -> List[int]:
    if m is not None and m_range:
        raise click.UsageError("--m and --m-range are mutually exclusive")
    if m is None and not m_range:
        raise click.UsageError("One of --m or --m-range is required")
    if m is not None:
        return [_check_order(m)]

    lo, hi = m_range
    _check_order(lo, "'--m-range'")
    if lo > hi:
        raise click.BadParameter(f"empty range {lo}..{hi}", param_hint="'--m-range'")
    return list(range(lo, hi + 1))


def run_options(func):
    """
    Accept --convention, --threads, --output and --cache-dir after the
    command name as well; values given here override the group's
    """
    @click.option('--convention', 'convention_override', default=None,
                  type=click.Choice([c.value for c in IndexConvention]),
                  help='Index convention for this command')
    @click.option('--threads', 'threads_override', type=int, default=None,
                  help='Worker processes for this command')
    @click.option('--output', 'output_override', default=None,
                  type=click.Path(file_okay=False, path_type=Path),
                  help='Output directory for this command')
    @click.option('--cache-dir', 'cache_dir_override', default=None,
                  type=click.Path(file_okay=False, path_type=Path),
                  help='Profile cache directory for this command')
    @functools.wraps(func)
    def wrapper(run: RunConfig, *args, convention_override, threads_override,
                output_override, cache_dir_override, **kwargs):
        overrides = {}
        if convention_override is not None:
            overrides["convention"] = IndexConvention(convention_override)
        if threads_override is not None:
            overrides["threads"] = threads_override
        if output_override is not None:
            overrides["output_dir"] = output_override
        if cache_dir_override is not None:
            overrides["cache_dir"] = cache_dir_override
        if overrides:
            run = replace(run, **overrides)
            run.validate()
        return func(run, *args, **kwargs)

    return wrapper


def _sweep(run: RunConfig, ms: Iterable[int], compute: bool = True) -> Dict[int, DenominatorProfile]:
    ms = sorted(set(ms))
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        BarColumn(),
        TextColumn("{task.completed}/{task.total}"),
        console=console,
        transient=True
    ) as progress:
        task = progress.add_task(f"Profiles ({run.tag})", total=len(ms))

        def advance(done: int, total: int, m: int) -> None:
            progress.update(task, completed=done, description=f"Profile m={m} ({run.tag})")

        profiles = run.sweeper().profiles(
            ms, run.convention, compute=compute, progress_callback=advance
        )
    return profiles


def _plot(run: RunConfig, csv_path: Path, kind: str, title: str) -> None:
    if run.plots:
        write_script(csv_path, kind, title)


def _written(path: Path) -> None:
    rprint(f"[{FRANELConfig.COLORS['success']}]Wrote {path}[/{FRANELConfig.COLORS['success']}]")


# ============================================================================
# PARAMETER OPTIONS
# ============================================================================

def params_options(func):
    """--params-from/--row, --reference-params or --s/--t/--u/--v, plus --epsilon"""
    options = [
        click.option('--params-from', type=click.Path(exists=True, dir_okay=False, path_type=Path),
                     help='Table CSV (set,s,t,u,v) to read parameters from'),
        click.option('--row', default=FRANELConfig.REFERENCE_PARAMS_ROW, show_default=True,
                     help='Row label in --params-from'),
        click.option('--reference-params', is_flag=True,
                     help=f'Use the published {FRANELConfig.REFERENCE_PARAMS_ROW} row'),
        click.option('--s', 's_', type=float, help='a(m) = s m^t'),
        click.option('--t', 't_', type=float, help='a(m) = s m^t'),
        click.option('--u', 'u_', type=float, help='b(m) = u m^v'),
        click.option('--v', 'v_', type=float, help='b(m) = u m^v'),
        click.option('--epsilon', type=float, default=FRANELConfig.REFERENCE_EPSILON,
                     show_default=True, help='Exponent offset of the ratio scan'),
    ]
    for option in reversed(options):
        func = option(func)
    return func


def _resolve_params(
    params_from: Optional[Path],
    row: str,
    reference_params: bool,
    s_: Optional[float],
    t_: Optional[float],
    u_: Optional[float],
    v_: Optional[float],
    epsilon: float
) -> AsymptoticParams:
    manual = [value is not None for value in (s_, t_, u_, v_)]
    sources = sum([params_from is not None, reference_params, any(manual)])
    if sources == 0:
        raise click.UsageError(
            "Asymptotic parameters required: --params-from FILE, --reference-params "
            "or all of --s --t --u --v"
        )
    if sources > 1:
        raise click.UsageError("Give exactly one parameter source")
    if not epsilon > 0:
        raise click.BadParameter(f"must be > 0, got {epsilon}", param_hint="'--epsilon'")

    with _arguments():
        if any(manual):
            if not all(manual):
                raise click.UsageError("--s, --t, --u and --v must be given together")
            return AsymptoticParams(s=s_, t=t_, u=u_, v=v_, epsilon=epsilon)
        if reference_params:
            return AsymptoticParams.reference(epsilon)
        parse_prime_set_label(row)
        return load_params_from_table(params_from, row, epsilon)


# ============================================================================
# MAIN CLI GROUP
# ============================================================================

@click.group()
@click.version_option(version=FRANELConfig.VERSION, prog_name="franel")
@click.option('--convention', type=click.Choice([c.value for c in IndexConvention]),
              default=IndexConvention.INTERIOR.value, show_default=True,
              help='How Farey fractions are numbered against i/n')
@click.option('--cache-dir', type=click.Path(file_okay=False, path_type=Path),
              default=None, help='Profile cache directory')
@click.option('--no-cache', is_flag=True, help='Neither read nor write cached profiles')
@click.option('--threads', type=int, default=None,
              help='Worker processes for profile sweeps (default: available CPUs)')
@click.option('--output', 'output_dir', type=click.Path(file_okay=False, path_type=Path),
              default=None, help='Directory for CSV and plot files')
@click.option('--plots/--no-plots', default=True, show_default=True,
              help='Write gnuplot scripts beside the CSVs')
@click.option('--verbose', '-v', is_flag=True, help='Debug logging')
@click.option('--log-file', type=click.Path(dir_okay=False, path_type=Path),
              default=None, help='Also log to a rotating file')
@click.pass_context
def cli(ctx, convention, cache_dir, no_cache, threads, output_dir, plots, verbose, log_file):
    """
    FRANEL - Farey-sequence deviation sums, envelopes and asymptotic bounds

    Every result is written as CSV with provenance header comments.
    """
    FRANELConfig.configure_logging("DEBUG" if verbose else None, log_file)
    run = RunConfig(
        convention=IndexConvention(convention),
        cache_dir=cache_dir or FRANELConfig.CACHE_DIR,
        output_dir=output_dir or FRANELConfig.OUTPUT_DIR,
        threads=threads,
        use_cache=not no_cache,
        plots=plots
    )
    run.validate()
    ctx.obj = run


# ============================================================================
# PROFILE COMMANDS
# ============================================================================

@cli.command()
@click.option('--m', 'm', type=int, help='Farey order')
@click.option('--m-range', nargs=2, type=int, default=None, metavar='LO HI',
              help='Every order LO..HI')
@click.option('--terms', is_flag=True, help='Also write every (F_m(i) - i/n)^2 term')
@click.pass_obj
@run_options
def profile(run: RunConfig, m, m_range, terms):
    """
    P_m(k) for 2 <= k <= m and R(m)

    Examples:
      franel profile --m 50 --terms
      franel profile --m-range 2 100 --threads 4
    """
    ms = _orders(m, m_range)
    run.prepare()
    profiles = _sweep(run, ms)

    summary = Table(title=f"Profiles ({run.tag})")
    summary.add_column("m", justify="right")
    summary.add_column("n", justify="right")
    summary.add_column("R(m)", justify="right")
    summary.add_column("|sum P - R| / R", justify="right")

    for order in ms:
        prof = profiles[order]
        path = csv_writer.write_profile_csv(run.output(f"profile_m{order}_{run.tag}.csv"), prof)
        _plot(run, path, "profile", f"P_m(k), m = {order} ({run.tag})")

        if terms:
            terms_path = csv_writer.write_terms_csv(
                run.output(f"terms_m{order}_{run.tag}.csv"),
                iter_deviation_terms(order, run.convention),
                order,
                run.tag
            )
            _plot(run, terms_path, "terms", f"Deviation terms, m = {order} ({run.tag})")

        summary.add_row(str(order), str(prof.n), f"{prof.r_total:.10g}", f"{prof.partition_residual():.2e}")

    console.print(summary)
    _written(run.output_dir)


def _single_profile(run: RunConfig, m: int) -> DenominatorProfile:
    _check_order(m)
    run.prepare()
    return _sweep(run, [m])[m]


@cli.command()
@click.option('--m', 'm', type=int, required=True, help='Farey order')
@click.pass_obj
@run_options
def hull(run: RunConfig, m):
    """P_m(k) restricted to prime k"""
    prof = _single_profile(run, m)
    points = prime_hull(prof)
    path = csv_writer.write_hull_csv(run.output(f"hull_m{m}_{run.tag}.csv"), points, prof)
    _plot(run, path, "hull", f"Prime hull, m = {m} ({run.tag})")
    rprint(f"[cyan]{len(points)} primes <= {m}[/cyan]")
    _written(path)


@cli.command()
@click.option('--m', 'm', type=int, required=True, help='Farey order')
@click.option('--min-prominence', type=float, default=FRANELConfig.BUMP_MIN_RELATIVE_PROMINENCE,
              show_default=True, help='Minimum prominence relative to the peak height')
@click.pass_obj
@run_options
def bumps(run: RunConfig, m, min_prominence):
    """Peaks of the detrended prime hull and the nearest m/j"""
    if not min_prominence >= 0:
        raise click.BadParameter(f"must be >= 0, got {min_prominence}", param_hint="'--min-prominence'")
    prof = _single_profile(run, m)
    found = detect_bumps(prof, min_prominence)
    path = csv_writer.write_bumps_csv(run.output(f"bumps_m{m}_{run.tag}.csv"), found, prof)

    table = Table(title=f"Bumps, m = {m} ({run.tag})")
    table.add_column("k", justify="right")
    table.add_column("j", justify="right")
    table.add_column("m/j", justify="right")
    table.add_column("|k - m/j|", justify="right")
    table.add_column("prominence", justify="right")
    for bump in found:
        table.add_row(
            str(bump.k_peak), str(bump.j), f"{m / bump.j:.2f}",
            f"{bump.distance:.2f}", f"{bump.prominence:.3f}"
        )
    console.print(table)
    _written(path)


# ============================================================================
# FIT COMMAND
# ============================================================================

@cli.command()
@click.option('--prime-set', 'prime_sets', nargs=2, type=int, multiple=True, required=True,
              metavar='P Q', help='Fit over the P-th..Q-th primes (repeatable)')
@click.option('--no-compute', is_flag=True, help='Use cached profiles only')
@click.option('--residuals', type=click.Choice(['log', 'direct']), default='log',
              show_default=True, help='Residual space of the per-m CSV')
@click.pass_obj
@run_options
def fit(run: RunConfig, prime_sets, no_compute, residuals):
    """
    a(m) = s m^t and b(m) = u m^v over prime sets

    Examples:
      franel fit --prime-set 101 200
      franel fit --prime-set 101 200 --prime-set 201 300 --residuals direct
    """
    msets: List[PrimeSet] = []
    with _arguments():
        for p, q in prime_sets:
            mset = prime_set(p, q)
            if len(mset) < 2:
                raise click.UsageError(
                    f"{mset.label} holds a single prime; a power-law fit needs at least two"
                )
            msets.append(mset)

    run.prepare()
    profiles = _sweep(run, (m for mset in msets for m in mset), compute=not no_compute)
    rows = fit_table_rows(msets, profiles, run.convention)

    table = Table(title=f"Power-law fits ({run.tag})")
    for name in ("set", "s", "t", "u", "v", "published delta (s, t, u, v)"):
        table.add_column(name, justify="right")

    for row in rows:
        stem = f"{row.mset.p}_{row.mset.q}_{run.tag}"
        fit_path = csv_writer.write_fit_csv(run.output(f"fit_{stem}.csv"), row)
        _plot(run, fit_path, "fit", f"a_m, b_m over {row.label} ({run.tag})")
        res_path = csv_writer.write_residuals_csv(run.output(f"residuals_{stem}.csv"), row, residuals)
        _plot(run, res_path, "residuals", f"{residuals} residuals over {row.label} ({run.tag})")

        deltas = compare_with_published(row)
        delta_text = "-" if deltas is None else ", ".join(f"{deltas[k]:+.3g}" for k in "stuv")
        table.add_row(row.label, *(f"{x:.4g}" for x in row.as_tuple()), delta_text)

    path = csv_writer.write_table_csv(run.output(f"table_{run.tag}.csv"), rows, run.tag)
    console.print(table)
    _written(path)


# ============================================================================
# ASYMPTOTIC COMMANDS
# ============================================================================

@cli.command()
@click.option('--from', 'x_from', type=float, default=FRANELConfig.RATIO_FROM, show_default=True)
@click.option('--to', 'x_to', type=float, default=FRANELConfig.RATIO_TO, show_default=True)
@click.option('--steps', type=int, default=FRANELConfig.RATIO_STEPS, show_default=True)
@params_options
@click.pass_obj
@run_options
def ratio(run: RunConfig, x_from, x_to, steps, **param_flags):
    """
    R~(x) / x^(-1+eps) at geometrically spaced x

    Examples:
      franel ratio --reference-params
      franel ratio --from 1e5 --to 1e6 --steps 100 --params-from table.csv --row "M(101,800)"
    """
    if not 2 < x_from < x_to:
        raise click.UsageError(f"Need 2 < --from < --to, got [{x_from}, {x_to}]")
    if steps < 2:
        raise click.BadParameter(f"must be >= 2, got {steps}", param_hint="'--steps'")
    params = _resolve_params(**param_flags)

    run.prepare()
    series = ratio_scan(x_from, x_to, steps, params)
    path = csv_writer.write_ratio_csv(run.output("ratio.csv"), series, params)
    _plot(run, path, "ratio", f"R~(x) / x^(-1+eps), eps = {params.epsilon:g}")

    decreasing = all(b < a for (_, a), (_, b) in zip(series, series[1:]))
    rprint(f"[cyan]ratio({series[0][0]:.4g}) = {series[0][1]:.6g}[/cyan]")
    rprint(f"[cyan]ratio({series[-1][0]:.4g}) = {series[-1][1]:.6g}[/cyan]")
    colour = FRANELConfig.COLORS['success' if decreasing else 'warning']
    rprint(f"[{colour}]Strictly decreasing: {decreasing}[/{colour}]")
    _written(path)


@cli.command()
@click.option('--m', 'm', type=int, required=True, help='Farey order')
@params_options
@click.pass_obj
@run_options
def envelope(run: RunConfig, m, **param_flags):
    """exp(a(m) + b(m) k) next to P_m(k)"""
    params = _resolve_params(**param_flags)
    prof = _single_profile(run, m)
    series = envelope_series(prof, params)
    path = csv_writer.write_envelope_csv(run.output(f"envelope_m{m}_{run.tag}.csv"), series, prof, params)
    _plot(run, path, "envelope", f"P_m(k) and envelope, m = {m} ({run.tag})")
    _written(path)


@cli.command()
@click.option('--m', 'ms', type=int, multiple=True, required=True, help='Farey order (repeatable)')
@params_options
@click.pass_obj
@run_options
def bound(run: RunConfig, ms, **param_flags):
    """Report whether R(m) <= R~(m)"""
    for m in ms:
        _check_order(m)
    params = _resolve_params(**param_flags)

    run.prepare()
    profiles = _sweep(run, ms)
    checks = [
        check_bound(m, run.convention, params, r=profiles[m].r_total)
        for m in sorted(set(ms))
    ]
    path = csv_writer.write_bound_csv(run.output(f"bound_{run.tag}.csv"), checks, params, run.tag)

    table = Table(title=f"R(m) <= R~(m) ({run.tag})")
    for name in ("m", "R(m)", "R~(m)", "satisfied"):
        table.add_column(name, justify="right")
    for check in checks:
        colour = FRANELConfig.COLORS['success' if check.satisfied else 'warning']
        table.add_row(
            str(check.m), f"{check.r:.6g}", f"{check.rtilde:.6g}",
            f"[{colour}]{check.satisfied}[/{colour}]"
        )
    console.print(table)
    _written(path)


# ============================================================================
# VERIFY COMMAND
# ============================================================================

@cli.command()
@click.option('--max-m', type=int, default=200, show_default=True,
              help='Largest order for the Farey and profile checks')
@click.option('--quadrature', is_flag=True, help='Also compare closed form and quadrature')
@click.option('--output', 'report_path', type=click.Path(dir_okay=False, path_type=Path),
              default=None, help='Write a plain-text report')
def verify(max_m, quadrature, report_path):
    """Cross-check streaming results against independent computations"""
    if max_m < 2:
        raise click.BadParameter(f"must be >= 2, got {max_m}", param_hint="'--max-m'")

    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True
    ) as progress:
        task = progress.add_task("Verifying...", total=None)
        report = run_verification(
            max_m=max_m,
            quadrature=quadrature,
            progress_callback=lambda name: progress.update(task, description=f"Checking {name}")
        )

    table = Table(title=f"Verification (max m = {max_m})")
    for name in ("check", "result", "measured", "tolerance", "detail"):
        table.add_column(name)
    for name, result, measured, tolerance, detail in report.rows():
        colour = FRANELConfig.COLORS['success' if result == "PASS" else 'error']
        table.add_row(name, f"[{colour}]{result}[/{colour}]", measured, tolerance, detail)
    console.print(table)

    if report_path is not None:
        atomic_write_text(report_path, report.render())
        _written(report_path)

    if not report.passed:
        rprint(f"[red]{len(report.failures)} check(s) failed[/red]")
        return FRANELConfig.EXIT_VERIFICATION_FAILED
    rprint("[green]All checks passed[/green]")
    return FRANELConfig.EXIT_SUCCESS


# ============================================================================
# INFO COMMANDS
# ============================================================================

@cli.command()
def version():
    """Show version information"""
    table = Table(title="FRANEL Version")
    table.add_column("Component", style="cyan")
    table.add_column("Value", style="green")
    table.add_row("FRANEL", FRANELConfig.VERSION)
    table.add_row("Cache format", FRANELConfig.CACHE_VERSION)
    table.add_row("Reference parameters", FRANELConfig.REFERENCE_PARAMS_ROW)
    table.add_row("Default workers", str(FRANELConfig.default_workers()))
    console.print(table)


# ============================================================================
# ENTRY POINT
# ============================================================================

def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run the CLI and map the outcome to an exit code

    0 success, 1 usage error, 2 computation or I/O error,
    3 failed verification, 130 interrupted.
    """
    try:
        result = cli.main(
            args=list(argv) if argv is not None else None,
            prog_name="franel",
            standalone_mode=False
        )
    except (click.exceptions.Abort, KeyboardInterrupt):
        err_console.print("[yellow]Interrupted[/yellow]")
        return FRANELConfig.EXIT_INTERRUPTED
    except click.ClickException as e:
        e.show()
        return FRANELConfig.EXIT_USAGE
    except (FranelError, OSError) as e:
        err_console.print(f"[red]Error:[/red] {escape(str(e))}", highlight=False)
        return FRANELConfig.EXIT_COMPUTATION

    return result if isinstance(result, int) else FRANELConfig.EXIT_SUCCESS


if __name__ == "__main__":
    sys.exit(main())
