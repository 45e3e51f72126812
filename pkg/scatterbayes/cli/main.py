"""CLI principale de scatterbayes.

Ce module implémente les commandes CLI avec Click : synthesize, run,
summarize, benchmark et calibrate. Chaque commande charge une
configuration (preset, fichier YAML, ou les deux) puis délègue à
`Experiment`.
"""

import csv
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Iterator, Optional

import click
from rich.console import Console
from rich.table import Table

from scatterbayes import __version__
from scatterbayes.bayes.observations import read_observations, write_observations
from scatterbayes.core.config import ExperimentConfig
from scatterbayes.core.errors import ConfigError, ScatterBayesError
from scatterbayes.core.experiment import BENCHMARK_SCALES, Experiment, run_seed
from scatterbayes.core.presets import PRESETS
from scatterbayes.executors.manager import ExecutorKind, ExecutorManager
from scatterbayes.forward.quadrature import CALIBRATION_STEPS, calibration_study
from scatterbayes.geometry.io import write_points_csv
from scatterbayes.monitoring.logger import configure_logger
from scatterbayes.monitoring.metrics import SamplerMetrics

console = Console()


@contextmanager
def _domain_errors() -> Iterator[None]:
    """Convertit les erreurs du package en erreurs Click (code de sortie 1)."""
    try:
        yield
    except ConfigError as exc:
        raise click.ClickException(f"invalid configuration: {exc}") from exc
    except ScatterBayesError as exc:
        raise click.ClickException(f"{type(exc).__name__}: {exc}") from exc


def config_options(function):
    """Options --config / --preset communes à toutes les commandes."""
    function = click.option("--preset", type=click.Choice(sorted(PRESETS)), help="Configuration livrée de base")(function)
    function = click.option(
        "--config", "config_path", type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="Fichier de configuration YAML (fusionné sur le preset)",
    )(function)
    return function


def _load_config(ctx: click.Context, config_path: Optional[Path], preset: Optional[str], **dotted: Any) -> ExperimentConfig:
    with _domain_errors():
        config = ExperimentConfig.load(config_path, preset).override(**dotted)
    level = ctx.obj.get("log_level") or config.logging.level
    fmt = ctx.obj.get("log_format") or config.logging.format
    configure_logger(level=level, format_type=fmt)
    return config


@click.group()
@click.version_option(version=__version__)
@click.option("--log-level", type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
              help="Niveau de logging (remplace logging.level)")
@click.option("--log-format", type=click.Choice(["json", "text"]), help="Format des logs (remplace logging.format)")
@click.pass_context
def cli(ctx, log_level, log_format):
    """scatterbayes - reconstruction bayésienne d'obstacles pénétrables."""
    ctx.ensure_object(dict)
    ctx.obj["log_level"] = log_level
    ctx.obj["log_format"] = log_format


@cli.command()
@config_options
@click.option("--seed", type=click.IntRange(0, 2**64 - 1), help="Graine du bruit de mesure (design.data_seed)")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="Fichier CSV des observations")
@click.option("--no-noise", is_flag=True, help="Écrire le champ exact, sans bruit")
@click.pass_context
def synthesize(ctx, config_path, preset, seed, out, no_noise):
    """Génère les données synthétiques (grille fine, solveur FFT + GMRES).

    Écrit le CSV des observations, son fichier de métadonnées .json et la
    courbe vraie (truth.csv) à côté.

    Examples:
        scatterbayes synthesize --preset example1 --out runs/example1/observations.csv
    """
    config = _load_config(ctx, config_path, preset, **{"design.data_seed": seed})
    out = out or Path(config.output_dir) / "observations.csv"
    experiment = Experiment(config)
    with _domain_errors():
        observations = experiment.synthesize(noise=not no_noise)
    try:
        out.parent.mkdir(parents=True, exist_ok=True)
        write_observations(out, observations)
        write_points_csv(out.with_name("truth.csv"), experiment.boundary)
    except OSError as exc:
        raise click.ClickException(f"cannot write {out}: {exc}") from exc

    table = Table(title=f"Observations - {out}")
    table.add_column("key")
    table.add_column("value", justify="right")
    for key in ("seed", "noise", "b_true", "snr", "zeta", "solver"):
        table.add_row(key, str(observations.metadata.get(key)))
    table.add_row("directions x points", f"{observations.data.shape[0]} x {observations.data.shape[1]}")
    table.add_row("true area", f"{experiment.true_area:.6e}")
    console.print(table)


@cli.command()
@config_options
@click.option("--observations", "observations_path", required=True,
              type=click.Path(exists=True, dir_okay=False, path_type=Path), help="CSV écrit par synthesize")
@click.option("--seed", "seeds", multiple=True, type=click.IntRange(0, 2**64 - 1),
              help="Graine de la chaîne (répétable : une chaîne par graine, en parallèle)")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Répertoire de sortie")
@click.option("--t-max", type=click.IntRange(min=1), help="Nombre d'itérations (kernel.t_max)")
@click.option("--burn-in", type=click.IntRange(min=0), help="Itérations de chauffe (kernel.burn_in)")
@click.option("--mode", type=click.Choice(["exact-mh", "paper-literal"]), help="Règle d'acceptation")
@click.option("--metrics-port", type=int, help="Expose les métriques Prometheus sur ce port (une seule graine)")
@click.option("--resume", is_flag=True, hidden=True)
@click.pass_context
def run(ctx, config_path, preset, observations_path, seeds, out, t_max, burn_in, mode, metrics_port, resume):
    """Exécute la chaîne de Metropolis-Hastings.

    Chaque graine écrit chain.csv, snapshots.csv, run_log.json et
    metrics.prom dans <out>/seed_<graine>/.

    Examples:
        scatterbayes run --preset example1 --observations runs/example1/observations.csv --seed 1 --seed 2
    """
    if resume:
        raise click.UsageError("resuming a chain is not supported: chains have no checkpoints, start a new run")

    config = _load_config(
        ctx, config_path, preset, **{"kernel.t_max": t_max, "kernel.burn_in": burn_in, "kernel.mode": mode}
    )
    out = out or Path(config.output_dir)
    seeds = list(seeds) or [config.kernel.seed]

    with _domain_errors():
        observations = read_observations(observations_path)
        if len(seeds) == 1:
            seed = seeds[0]
            experiment = Experiment(config.override(**{"kernel.seed": seed}))
            metrics = SamplerMetrics()
            if metrics_port is not None:
                SamplerMetrics.start_metrics_server(metrics_port, metrics.registry)
            try:
                logs = {seed: experiment.run(observations, out / f"seed_{seed}", metrics)}
            finally:
                experiment.shutdown()
        else:
            tasks = [(config.to_dict(), str(observations_path), seed, str(out / f"seed_{seed}")) for seed in seeds]
            with ExecutorManager(process_pool_size=min(len(seeds), 8)) as manager:
                results = manager.get_executor(ExecutorKind.PROCESS).map(run_seed, tasks)
            logs = {}
            for seed, result in zip(seeds, results):
                if not result.ok:
                    console.print(f"[red]seed {seed} failed[/red]: {result.error}")
                    continue
                logs[seed] = result.result
            if not logs:
                raise click.ClickException("every chain failed")

    table = Table(title="Acceptance rates")
    table.add_column("seed", justify="right")
    for move in ("point", "translate", "b", "alpha"):
        table.add_column(move, justify="right")
    table.add_column("wall clock (s)", justify="right")
    for seed, log in logs.items():
        rates = log["acceptance_rates"]
        table.add_row(str(seed), *(f"{rates[m]:.3f}" for m in ("point", "translate", "b", "alpha")),
                      f"{log['wall_clock_seconds']:.1f}")
    console.print(table)


@cli.command()
@config_options
@click.argument("chain_dir", type=click.Path(exists=True, file_okay=False, path_type=Path))
@click.option("--burn-in", type=click.IntRange(min=0), help="Itérations écartées (défaut: kernel.burn_in)")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), help="Répertoire des CSV (défaut: CHAIN_DIR)")
@click.option("--bins", default=40, show_default=True, type=click.IntRange(min=1), help="Classes des histogrammes")
@click.pass_context
def summarize(ctx, config_path, preset, chain_dir, burn_in, out, bins):
    """Résume une chaîne : CM, MAP, histogrammes et trace de −Energy.

    CHAIN_DIR: Répertoire écrit par `run` (contient chain.csv)
    """
    config = _load_config(ctx, config_path, preset)
    burn_in = config.kernel.burn_in if burn_in is None else burn_in
    experiment = Experiment(config)
    with _domain_errors():
        summary = experiment.summarize(chain_dir, out or chain_dir, burn_in, bins=bins)

    table = Table(title=f"Posterior summary ({summary.samples} samples after burn-in {burn_in})")
    table.add_column("quantity")
    table.add_column("conditional mean", justify="right")
    table.add_column("MAP", justify="right")
    table.add_row("area", f"{summary.cm_area:.4e}", f"{summary.map_area:.4e}")
    table.add_row("b", f"{summary.cm_b:.3f}", f"{summary.map_b:.3f}")
    console.print(table)


@cli.command()
@config_options
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), help="CSV des temps (défaut: <output_dir>/benchmark.csv)")
@click.option("--scale", "scales", multiple=True, type=click.FloatRange(min=0.0), help="Échelle du cerf-volant (répétable)")
@click.option("--repeats", default=3, show_default=True, type=click.IntRange(min=1), help="Répétitions par mesure")
@click.pass_context
def benchmark(ctx, config_path, preset, out, scales, repeats):
    """Compare les temps des solveurs direct et FFT + GMRES.

    L'accord des deux champs (≤ 1e-6 en L² relatif) est vérifié avant de
    chronométrer ; un désaccord interrompt la commande sans écrire de temps.
    """
    config = _load_config(ctx, config_path, preset)
    out = out or Path(config.output_dir) / "benchmark.csv"
    experiment = Experiment(config)
    with _domain_errors():
        rows = experiment.benchmark(scales=scales or BENCHMARK_SCALES, repeats=repeats)

    out.parent.mkdir(parents=True, exist_ok=True)
    with open(out, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f)
        writer.writerow(["support_fraction", "t_direct", "t_reference"])
        for row in rows:
            writer.writerow([repr(row.support_fraction), repr(row.t_direct), repr(row.t_reference)])

    table = Table(title=f"Solver timings - {out}")
    for name in ("scale", "support", "direct (s)", "reference (s)", "agreement"):
        table.add_column(name, justify="right")
    for row in rows:
        table.add_row(f"{row.scale:g}", f"{row.support_fraction:.3%}", f"{row.t_direct:.4f}",
                      f"{row.t_reference:.4f}", f"{row.agreement:.1e}")
    console.print(table)


@cli.command()
@click.option("--k", "wavenumber", default=1.0, show_default=True, type=click.FloatRange(min=0.0, min_open=True),
              help="Nombre d'onde de la calibration")
@click.option("--out", type=click.Path(dir_okay=False, path_type=Path), default=Path("c1.calibration"),
              show_default=True, help="Fichier de calibration")
@click.option("--min-order", default=3.5, show_default=True, help="Ordre de convergence minimum")
@click.pass_context
def calibrate(ctx, wavenumber, out, min_order):
    """Calibre le coefficient c1 de la règle trapézoïdale corrigée.

    Le fichier écrit a le format de scatterbayes/data/c1.calibration.
    """
    configure_logger(level=ctx.obj.get("log_level") or "INFO", format_type=ctx.obj.get("log_format") or "text")
    with _domain_errors():
        report = calibration_study(k=wavenumber, steps=CALIBRATION_STEPS, min_order=min_order)
    out.write_text(report.to_text(), encoding="utf-8")

    table = Table(title=f"c1 = {report.c1!r}")
    for name in ("h", "c1(h)", "error", "order"):
        table.add_column(name, justify="right")
    for i, h in enumerate(report.steps):
        order = f"{report.orders[i - 1]:.3f}" if i else "-"
        table.add_row(f"{h:g}", f"{report.c1_by_step[i]:.10f}", f"{report.errors[i]:.3e}", order)
    console.print(table)


if __name__ == "__main__":
    cli()
