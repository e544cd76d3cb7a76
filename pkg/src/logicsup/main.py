import sys
from contextlib import contextmanager
from pathlib import Path
from typing import List, Optional, Tuple

import typer
import yaml
from loguru import logger

from logicsup import reports
from logicsup.borel import parse_borel_set
from logicsup.config import CONFIG_FILE, DEFAULT_CONFIG, Tolerances, load_config
from logicsup.errors import InputError, LogicSupError
from logicsup.logger_setup import setup_logger
from logicsup.logic_order import logic_leq
from logicsup.operator_file import read_operator, write_operator
from logicsup.spectral_measure import evaluate, measure_of, measure_to_operator
from logicsup.supremum import build_join_measure, sup_exists, verify_supremum
from logicsup.testgen_oracle import gen_pair_under_bound, gen_random_hermitian, parse_spectrum_spec

app = typer.Typer(help="Logic order, suprema and witnesses for finite-dimensional observables.")

EXIT_AFFIRMATIVE = 0
EXIT_NEGATIVE = 1
EXIT_INPUT_ERROR = 2

ConfigOption = typer.Option(CONFIG_FILE, "--config", help="Path to configuration YAML file")
ClusterOption = typer.Option(None, "--tol-cluster", help="Eigenvalue clustering tolerance (default 1e-8*max(1,||A||))")
ZeroOption = typer.Option(None, "--tol-zero", help="Eigenvalues this close to 0 count as 0 (default: cluster tolerance)")
OrthOption = typer.Option(None, "--tol-orth", help="Orthogonality / containment tolerance")
EqOption = typer.Option(None, "--tol-eq", help="Relative operator equality tolerance")
FormatOption = typer.Option(None, "--format", help="Report format: text or json")


def settings(
    config_file: str,
    tol_cluster: Optional[float],
    tol_zero: Optional[float],
    tol_orth: Optional[float],
    tol_eq: Optional[float],
    fmt: Optional[str],
) -> Tuple[Tolerances, str]:
    with input_errors():
        config = load_config(config_file)
    setup_logger(
        config.get("verbose", False),
        config.get("save", False),
        config.get("log_file", "logicsup.log"),
        config.get("log_level", "INFO"),
    )
    with input_errors():
        tol = Tolerances.from_config(config)
    tol = tol.replace(cluster=tol_cluster, zero=tol_zero, orth=tol_orth, eq=tol_eq)
    fmt = fmt or config.get("format", "text")
    if fmt not in ("text", "json"):
        typer.echo(f"Error: unknown format '{fmt}', expected text or json", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)
    return tol, fmt


@contextmanager
def input_errors():
    """Turn library errors into exit code 2 with a diagnostic on stderr."""
    try:
        yield
    except InputError as e:
        logger.error(str(e))
        typer.echo(f"Input error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)
    except LogicSupError as e:
        logger.error(str(e))
        typer.echo(f"Error: {e}", err=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)


def emit(fmt: str, tol: Tolerances, text: str, payload: dict) -> None:
    if fmt == "json":
        typer.echo(reports.to_json(payload, tol))
    else:
        typer.echo(text)
        typer.echo(reports.tolerance_line(tol))


@app.command()
def init(
    config_file: str = ConfigOption,
    interactive: bool = typer.Option(None, "-i", "--interactive", help="Run in interactive mode"),
    quiet: bool = typer.Option(False, "-qq", "--quiet", help="Do not run interactively (use default config)"),
):
    """Create a configuration file."""
    if interactive and quiet:
        typer.echo("Error: Interactive and quiet options cannot be used together. Please choose one.")
        raise typer.Exit(code=EXIT_NEGATIVE)
    if quiet:
        interactive_mode = False
    elif interactive is None:
        interactive_mode = typer.confirm("Do you want to create the configuration interactively?", default=True)
    else:
        interactive_mode = interactive

    config = {key: dict(value) if isinstance(value, dict) else value for key, value in DEFAULT_CONFIG.items()}
    if interactive_mode:
        config["verbose"] = typer.confirm("Verbose logging?", default=DEFAULT_CONFIG["verbose"])
        config["save"] = typer.confirm("Save log to file?", default=DEFAULT_CONFIG["save"])
        config["log_file"] = typer.prompt("Log File", default=DEFAULT_CONFIG["log_file"])
        config["log_level"] = typer.prompt("Log level", default=DEFAULT_CONFIG["log_level"])
        config["format"] = typer.prompt("Report format (text/json)", default=DEFAULT_CONFIG["format"])
        for key in ("orth", "eq", "order", "psd"):
            config["tolerances"][key] = typer.prompt(
                f"Tolerance '{key}'", default=DEFAULT_CONFIG["tolerances"][key], type=float
            )

    with open(config_file, "w") as f:
        yaml.dump(config, f)
    typer.echo(f"Configuration file created at {config_file}")


@app.command()
def check_order(
    path_a: Path = typer.Argument(..., help="Operator file for A"),
    path_b: Path = typer.Argument(..., help="Operator file for B"),
    config_file: str = ConfigOption,
    tol_cluster: Optional[float] = ClusterOption,
    tol_zero: Optional[float] = ZeroOption,
    tol_orth: Optional[float] = OrthOption,
    tol_eq: Optional[float] = EqOption,
    fmt: Optional[str] = FormatOption,
):
    """Decide A ≼ B (exit 0 if it holds, 1 if not)."""
    tol, fmt = settings(config_file, tol_cluster, tol_zero, tol_orth, tol_eq, fmt)
    with input_errors():
        a = read_operator(path_a, tol)
        b = read_operator(path_b, tol)
        verdict = logic_leq(a, b, tol)
    logger.info(f"{path_a} ≼ {path_b}: {verdict.holds}")
    emit(fmt, tol, reports.verdict_to_text(verdict), reports.verdict_to_dict(verdict))
    raise typer.Exit(code=EXIT_AFFIRMATIVE if verdict.holds else EXIT_NEGATIVE)


@app.command()
def sup(
    path_a: Path = typer.Argument(..., help="Operator file for A"),
    path_b: Path = typer.Argument(..., help="Operator file for B"),
    out: Optional[Path] = typer.Option(None, "--out", "-o", help="Where to write A∨B"),
    config_file: str = ConfigOption,
    tol_cluster: Optional[float] = ClusterOption,
    tol_zero: Optional[float] = ZeroOption,
    tol_orth: Optional[float] = OrthOption,
    tol_eq: Optional[float] = EqOption,
    fmt: Optional[str] = FormatOption,
):
    """Compute A∨B, or print a witness that it does not exist (exit 1)."""
    tol, fmt = settings(config_file, tol_cluster, tol_zero, tol_orth, tol_eq, fmt)
    with input_errors():
        a = read_operator(path_a, tol)
        b = read_operator(path_b, tol)
        existence = sup_exists(a, b, tol)
        if not existence.exists:
            emit(
                fmt,
                tol,
                reports.witness_to_text(existence.witness),
                reports.existence_to_dict(existence),
            )
            raise typer.Exit(code=EXIT_NEGATIVE)
        measure = build_join_measure(a, b, tol)
        result = measure_to_operator(measure, tol)
        report = verify_supremum(a, b, result, tol=tol)
        if out is not None:
            write_operator(out, result, label=f"{a.label or path_a.stem} v {b.label or path_b.stem}")

    text = "\n".join(
        [
            f"The supremum exists ({existence.checked_pairs} eigenvalue pairs checked, M = {existence.bound:.6g}).",
            reports.format_matrix(result.entries),
            reports.measure_to_text(measure),
            reports.report_to_text(report),
        ]
    )
    payload = {
        **reports.existence_to_dict(existence),
        "supremum": reports.matrix_pairs(result.entries),
        "measure": reports.measure_to_dict(measure),
        "certificate": reports.report_to_dict(report),
    }
    emit(fmt, tol, text, payload)
    raise typer.Exit(code=EXIT_AFFIRMATIVE)


@app.command(name="eval")
def eval_measure(
    path_a: Path = typer.Argument(..., help="Operator file for A"),
    borel_set: str = typer.Argument(..., help="Borel set, e.g. '(0.5,1.5] U {3} \\ {0}'"),
    config_file: str = ConfigOption,
    tol_cluster: Optional[float] = ClusterOption,
    tol_zero: Optional[float] = ZeroOption,
    tol_orth: Optional[float] = OrthOption,
    tol_eq: Optional[float] = EqOption,
    fmt: Optional[str] = FormatOption,
):
    """Print the spectral projection P^A(Δ) and its rank."""
    tol, fmt = settings(config_file, tol_cluster, tol_zero, tol_orth, tol_eq, fmt)
    with input_errors():
        delta = parse_borel_set(borel_set)
        a = read_operator(path_a, tol)
        projection = evaluate(measure_of(a, tol), delta, tol)
    emit(
        fmt,
        tol,
        f"P^A({delta}) =\n{reports.projection_to_text(projection)}",
        {"set": str(delta), **reports.projection_to_dict(projection)},
    )


@app.command()
def gen(
    dim: int = typer.Argument(..., help="Dimension"),
    spectrum: str = typer.Argument(..., help="Spectrum as value:multiplicity pairs, e.g. '0:1,1:2'"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    out: List[Path] = typer.Option(..., "--out", "-o", help="Output file (repeat for several operators)"),
    config_file: str = ConfigOption,
):
    """Write random operators with a prescribed spectrum (file i uses seed + i)."""
    settings(config_file, None, None, None, None, None)
    with input_errors():
        parsed = parse_spectrum_spec(spectrum)
        for index, path in enumerate(out):
            operator = gen_random_hermitian(dim, parsed, seed + index)
            write_operator(path, operator, label=f"{path.stem}")
    typer.echo(f"Wrote {len(out)} operator file(s)")


@app.command()
def gen_pair(
    path_k: Path = typer.Argument(..., help="Operator file for the common upper bound K"),
    seed: int = typer.Option(0, "--seed", help="Random seed"),
    out_a: Path = typer.Option(..., "--out-a", help="Output file for A"),
    out_b: Path = typer.Option(..., "--out-b", help="Output file for B"),
    config_file: str = ConfigOption,
):
    """Write a random pair A, B with A ≼ K and B ≼ K."""
    tol, _ = settings(config_file, None, None, None, None, None)
    with input_errors():
        k = read_operator(path_k, tol)
        a, b = gen_pair_under_bound(k, seed, tol)
        write_operator(out_a, a, label="A")
        write_operator(out_b, b, label="B")
    typer.echo(f"Wrote {out_a} and {out_b}")


@app.command()
def verify(
    path_a: Path = typer.Argument(..., help="Operator file for A"),
    path_b: Path = typer.Argument(..., help="Operator file for B"),
    path_s: Path = typer.Argument(..., help="Candidate supremum S"),
    bound: List[Path] = typer.Option([], "--bound", help="Upper bound F to test S ≼ F against (repeatable)"),
    config_file: str = ConfigOption,
    tol_cluster: Optional[float] = ClusterOption,
    tol_zero: Optional[float] = ZeroOption,
    tol_orth: Optional[float] = OrthOption,
    tol_eq: Optional[float] = EqOption,
    fmt: Optional[str] = FormatOption,
):
    """Check that S is the supremum of A and B."""
    tol, fmt = settings(config_file, tol_cluster, tol_zero, tol_orth, tol_eq, fmt)
    with input_errors():
        a = read_operator(path_a, tol)
        b = read_operator(path_b, tol)
        s = read_operator(path_s, tol)
        bounds = [read_operator(path, tol) for path in bound]
    report = verify_supremum(a, b, s, bounds, tol)
    emit(fmt, tol, reports.report_to_text(report), reports.report_to_dict(report))
    raise typer.Exit(code=EXIT_AFFIRMATIVE if report.passed else EXIT_NEGATIVE)


def run():
    if len(sys.argv) == 1:
        sys.argv.append("--help")
    app()


if __name__ == "__main__":
    run()
