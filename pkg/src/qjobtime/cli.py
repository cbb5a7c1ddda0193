"""Command-line interface binding the modules into reproducible runs.

All randomness flows from a single --seed per subcommand; nested seeds are
derived deterministically, so identical invocations produce byte-identical
artifacts. Failures print a machine-readable error JSON on stderr and exit
with the error's code-specific status.
"""

import csv
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import deff as deff_mod
from .circuit import write_circuits
from .errors import (
    CouplingError,
    InvalidParameterError,
    MalformedRecordsError,
    QJobTimeError,
)
from .execsim import StackTimingParams, fit_params, simulate_job_runtime
from .generators import KernelFamily, kernel_circuit, qv_circuit, sample_features
from .model import (
    BackendSpec,
    JobSpec,
    builtin_backends,
    extrapolate,
    format_duration,
    get_backend,
    loss_from_ratio,
    predict_runtime,
    registry_from_json,
    registry_to_json,
    score,
)
from .records import load_runtime_records
from .sim import kernel_matrix
from .transpile.coupling import CouplingMap, named_map


def _fmt(value) -> str:
    """Stable text form for CSV cells (shortest round-trip repr for floats)."""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write_csv(path, header, rows) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for row in rows:
            writer.writerow([_fmt(v) for v in row])


def _json_out(data) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def _load_registry(path) -> dict[str, BackendSpec]:
    if path is None:
        return builtin_backends()
    return registry_from_json(Path(path).read_text())


def _parse_family(text: str) -> KernelFamily:
    try:
        spec = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"family must be JSON like '{{\"n\":4,\"d\":2}}': {exc}")
    return KernelFamily.from_dict(spec)


def _parse_map(text: str, registry) -> CouplingMap:
    """Accept 'kind:n' (e.g. line:8), 'backend:<name>', or a JSON file path."""
    if ":" in text:
        kind, _, arg = text.partition(":")
        if kind == "backend":
            return get_backend(arg, registry).coupling
        try:
            return named_map(kind, int(arg))
        except ValueError:
            raise CouplingError(f"bad map spec {text!r}; use kind:n, backend:name, or a JSON file")
    p = Path(text)
    if not p.exists():
        raise CouplingError(f"coupling map file {text!r} not found")
    return CouplingMap.from_json(p.read_text())


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InvalidParameterError(f"expected comma-separated integers, got {text!r}")
    if not values:
        raise InvalidParameterError(f"expected at least one integer in {text!r}")
    return values


def _float_list(text: str) -> list[float]:
    try:
        values = [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise InvalidParameterError(f"expected comma-separated numbers, got {text!r}")
    if not values:
        raise InvalidParameterError(f"expected at least one number in {text!r}")
    return values


class _App(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except QJobTimeError as exc:
            click.echo(_json_out({"error": {"code": exc.code, "message": str(exc)}}), err=True)
            ctx.exit(exc.exit_code)


@click.group(cls=_App)
@click.option("--config", type=click.Path(exists=True), default=None,
              help="JSON file of per-subcommand flag defaults; explicit flags win.")
@click.pass_context
def main(ctx, config):
    """Predict, score, and extrapolate quantum job runtimes."""
    if config:
        ctx.default_map = json.loads(Path(config).read_text())


@main.command()
@click.option("--backend", required=True, help="Backend name from the registry.")
@click.option("--registry", type=click.Path(exists=True), default=None,
              help="Backend registry JSON overriding the built-in one.")
@click.option("--M", "m", type=int, required=True, help="Circuits in the job.")
@click.option("--S", "s", type=int, required=True, help="Shots per circuit.")
@click.option("--K", "k", type=int, default=1, show_default=True,
              help="Parameter updates (1 for kernel jobs).")
@click.option("--deff", type=float, required=True, help="Effective QV layer count.")
def predict(backend, registry, m, s, k, deff):
    """Predict a job's wall-clock runtime in seconds."""
    spec = get_backend(backend, _load_registry(registry))
    seconds = predict_runtime(JobSpec(m, s, k, deff), spec)
    click.echo(f"predicted_seconds={seconds!r} (~{format_duration(seconds)})")


@main.command(name="score")
@click.option("--records", "records_path", type=click.Path(exists=True), required=True,
              help="CSV of runs: either T_pred,T_actual or backend,M,S,K,deff,T_seconds.")
@click.option("--registry", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), required=True, help="Report CSV path.")
def score_cmd(records_path, registry, out):
    """Score predictions against recorded runtimes (ratio r, loss L)."""
    with open(records_path, newline="") as fh:
        header = next(csv.reader(fh), None)
    rows = []
    if header is not None and [h.strip() for h in header] == ["T_pred", "T_actual"]:
        with open(records_path, newline="") as fh:
            reader = csv.DictReader(fh)
            for row in reader:
                rep = score(float(row["T_pred"]), float(row["T_actual"]))
                rows.append([rep.predicted, rep.actual, rep.ratio, rep.loss])
        _write_csv(out, ["T_pred", "T_actual", "r", "L"], rows)
    else:
        reg = _load_registry(registry)
        for rec in load_runtime_records(records_path):
            spec = get_backend(rec.backend, reg)
            rep = score(predict_runtime(rec.job, spec), rec.seconds)
            rows.append(
                [rec.backend, rec.job.circuits, rec.job.shots, rec.job.updates,
                 rec.job.d_eff, rep.predicted, rec.seconds, rep.ratio, rep.loss]
            )
        _write_csv(
            out,
            ["backend", "M", "S", "K", "deff", "T_pred", "T_actual", "r", "L"],
            rows,
        )
    click.echo(f"scored {len(rows)} run(s) -> {out}")


@main.command(name="deff")
@click.option("--family", required=True, help='Family JSON, e.g. {"n":4,"d":2,"entanglement":"linear"}.')
@click.option("--map", "map_spec", required=True,
              help="Coupling map: kind:n (line, ring, all-to-all, heavy-hex-like), backend:name, or JSON file.")
@click.option("--registry", type=click.Path(exists=True), default=None)
@click.option("--kernel-samples", type=int, default=deff_mod.DEFAULT_KERNEL_SAMPLES, show_default=True)
@click.option("--qv-samples", type=int, default=deff_mod.DEFAULT_QV_SAMPLES, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--qv-job", is_flag=True, help="Treat the family as QV circuits (d_eff = d).")
@click.option("--out", type=click.Path(), default=None, help="Also write the JSON here.")
def deff_cmd(family, map_spec, registry, kernel_samples, qv_samples, seed, qv_job, out):
    """Estimate a family's effective QV layer count on a coupling map."""
    fam = _parse_family(family)
    cmap = _parse_map(map_spec, _load_registry(registry))
    est = deff_mod.effective_layers(
        fam, cmap, kernel_samples=kernel_samples, qv_samples=qv_samples,
        seed=seed, as_qv_job=qv_job,
    )
    text = _json_out(est.to_dict())
    if out:
        Path(out).write_text(text + "\n")
    click.echo(text)


@main.command(name="gen-circuits")
@click.option("--family", default=None, help="Kernel family JSON (random x, y per circuit).")
@click.option("--qv-width", type=int, default=None, help="Generate QV circuits of this width instead.")
@click.option("--qv-layers", type=int, default=None)
@click.option("--count", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def gen_circuits(family, qv_width, qv_layers, count, seed, out):
    """Emit circuits in the line-oriented text format."""
    circuits = []
    if family is not None:
        fam = _parse_family(family)
        for k in range(count):
            rng = np.random.default_rng(np.random.SeedSequence((seed, 0, k)))
            circuits.append(kernel_circuit(fam, sample_features(fam, rng), sample_features(fam, rng)))
    elif qv_width is not None:
        if qv_layers is None:
            raise InvalidParameterError("--qv-layers is required with --qv-width")
        circuits = [
            qv_circuit(qv_width, qv_layers, np.random.SeedSequence((seed, 1, k)))
            for k in range(count)
        ]
    else:
        raise InvalidParameterError("provide --family or --qv-width/--qv-layers")
    write_circuits(out, circuits)
    click.echo(f"wrote {len(circuits)} circuit(s) -> {out}")


@main.command(name="simulate-kernel")
@click.option("--family", required=True)
@click.option("--data", "data_path", type=click.Path(exists=True), required=True,
              help="CSV dataset, one feature vector per row, no header.")
@click.option("--shots", default="exact", show_default=True,
              help="Shot count per pair, or 'exact'.")
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True, help="Kernel matrix CSV path.")
@click.option("--summary", "summary_path", type=click.Path(), default=None,
              help="Write the JSON summary here as well.")
def simulate_kernel(family, data_path, shots, seed, out, summary_path):
    """Compute a pairwise kernel matrix for a dataset (exact or shot-based)."""
    fam = _parse_family(family)
    dataset = []
    with open(data_path, newline="") as fh:
        for row_no, row in enumerate(csv.reader(fh), start=1):
            if not row or not any(cell.strip() for cell in row):
                continue
            try:
                dataset.append([float(cell) for cell in row])
            except ValueError as exc:
                raise MalformedRecordsError(f"{data_path}:{row_no}: {exc}") from exc
    if not dataset:
        raise InvalidParameterError(f"{data_path}: no feature vectors found")
    if shots == "exact":
        n_shots = None
    else:
        try:
            n_shots = int(shots)
        except ValueError:
            raise InvalidParameterError(f"--shots must be an integer or 'exact', got {shots!r}")
    matrix = kernel_matrix(fam, dataset, shots=n_shots, seed=seed)
    _write_csv(out, [f"k{j}" for j in range(len(dataset))], matrix.tolist())
    eigmin = float(np.linalg.eigvalsh(matrix).min()) if len(dataset) else 0.0
    summary = {
        "n": len(dataset),
        "pairs_evaluated": len(dataset) * (len(dataset) - 1) // 2,
        "min_entry": float(matrix.min()),
        "max_entry": float(matrix.max()),
        "mean_entry": float(matrix.mean()),
        "min_eigenvalue": eigmin,
        "positive_semidefinite": bool(eigmin >= -1e-8),
        "shots": n_shots,
    }
    text = _json_out(summary)
    if summary_path:
        Path(summary_path).write_text(text + "\n")
    click.echo(text)


@main.command(name="extrapolate")
@click.option("--N", "n", required=True, help="Dataset size(s), comma separated.")
@click.option("--S", "s", type=int, required=True)
@click.option("--deff", type=float, required=True)
@click.option("--clops", required=True, help="System speed(s), comma separated.")
@click.option("--out", type=click.Path(), default=None, help="Sweep CSV (N, clops, seconds).")
def extrapolate_cmd(n, s, deff, clops, out):
    """Extrapolate whole-dataset kernel runtimes over N and CLOPS grids."""
    rows = []
    for size in _int_list(n):
        for speed in _float_list(clops):
            seconds = extrapolate(size, s, deff, speed)
            rows.append([size, speed, seconds])
            click.echo(
                f"N={size} clops={_fmt(speed)} seconds={seconds!r} (~{format_duration(seconds)})"
            )
    if out:
        _write_csv(out, ["N", "clops", "seconds"], rows)


@main.command(name="sweep")
@click.option("--backend", required=True)
@click.option("--registry", type=click.Path(exists=True), default=None)
@click.option("--params", "params_path", type=click.Path(exists=True), required=True,
              help="Stack timing parameters JSON.")
@click.option("--M", "m", required=True, help="Circuit counts, comma separated.")
@click.option("--S", "s", required=True, help="Shot counts, comma separated.")
@click.option("--families", required=True,
              help='JSON array of family descriptors, e.g. [{"n":4,"d":2,"entanglement":"full"}].')
@click.option("--kernel-samples", type=int, default=deff_mod.DEFAULT_KERNEL_SAMPLES, show_default=True)
@click.option("--qv-samples", type=int, default=deff_mod.DEFAULT_QV_SAMPLES, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--out", type=click.Path(), required=True)
def sweep_cmd(backend, registry, params_path, m, s, families,
              kernel_samples, qv_samples, seed, out):
    """Grid of predicted vs simulated runtimes over (family, M, S)."""
    reg = _load_registry(registry)
    spec = get_backend(backend, reg)
    params = StackTimingParams.from_dict(json.loads(Path(params_path).read_text()))
    try:
        descriptors = json.loads(families)
    except json.JSONDecodeError as exc:
        raise InvalidParameterError(f"--families must be a JSON array: {exc}")
    fams = [KernelFamily.from_dict(d) for d in descriptors]
    rows = []
    job_index = 0
    for fam in fams:
        est = deff_mod.effective_layers(
            fam, spec.coupling, kernel_samples=kernel_samples,
            qv_samples=qv_samples, seed=seed,
        )
        aspect = float(fam.aspect_ratio)
        for circuits in _int_list(m):
            for shots in _int_list(s):
                job = JobSpec(circuits, shots, 1, est.d_eff)
                predicted = predict_runtime(job, spec)
                simulated = simulate_job_runtime(
                    job, params, np.random.SeedSequence((seed, 2, job_index))
                )
                ratio = predicted / simulated
                rows.append(
                    [spec.name, circuits, shots, aspect, est.d_eff, predicted, simulated,
                     ratio, loss_from_ratio(ratio)]
                )
                job_index += 1
    _write_csv(out, ["backend", "M", "S", "a", "deff", "T_pred", "T_sim", "r", "L"], rows)
    click.echo(f"swept {len(rows)} job(s) -> {out}")


@main.command(name="fit")
@click.option("--records", "records_path", type=click.Path(exists=True), required=True)
@click.option("--fix-t-job", type=float, default=None,
              help="Pin the per-job overhead (needed when every record shares one M).")
@click.option("--out", type=click.Path(), default=None)
def fit_cmd(records_path, fix_t_job, out):
    """Calibrate stack timing parameters from recorded runtimes."""
    records = load_runtime_records(records_path)
    params = fit_params([(r.job, r.seconds) for r in records], fix_t_job=fix_t_job)
    text = _json_out(params.to_dict())
    if out:
        Path(out).write_text(text + "\n")
    click.echo(text)


@main.group()
def backends():
    """Inspect or export the backend registry."""


@backends.command(name="list")
@click.option("--registry", type=click.Path(exists=True), default=None)
def backends_list(registry):
    reg = _load_registry(registry)
    click.echo(f"{'name':<16} {'qubits':>6} {'QV':>5} {'CLOPS':>8} {'QV layers':>9}")
    for name in sorted(reg):
        b = reg[name]
        click.echo(
            f"{b.name:<16} {b.num_qubits:>6} {b.quantum_volume:>5} {b.clops:>8.0f} {b.qv_layers:>9}"
        )


@backends.command(name="export")
@click.option("--registry", type=click.Path(exists=True), default=None)
@click.option("--out", type=click.Path(), required=True)
def backends_export(registry, out):
    reg = _load_registry(registry)
    Path(out).write_text(registry_to_json(reg) + "\n")
    click.echo(f"exported {len(reg)} backend(s) -> {out}")


if __name__ == "__main__":
    main(sys.argv[1:])
