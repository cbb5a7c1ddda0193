"""The runtime model: CLOPS arithmetic, prediction, scoring, extrapolation.

A system that executes C circuit layers per second should run a job of M
circuits, K parameter updates, S shots, and d_eff effective layers in
M*K*S*d_eff / C seconds, assuming the stack has no fixed overheads. Everything
here is pure arithmetic and thread-safe.
"""

import json
import math
from dataclasses import dataclass, field

from .errors import BackendNotFoundError, InvalidParameterError
from .transpile.coupling import CouplingMap, heavy_hex_like_map


@dataclass(frozen=True)
class BackendSpec:
    """A system's capability and speed: qubit count, quantum volume V
    (power of two), CLOPS C in layers/second, and its coupling map."""

    name: str
    num_qubits: int
    quantum_volume: int
    clops: float
    coupling: CouplingMap | None = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        v = self.quantum_volume
        if v < 2 or v & (v - 1):
            raise InvalidParameterError(f"quantum volume must be a power of two >= 2, got {v}")
        if self.clops <= 0:
            raise InvalidParameterError("CLOPS must be positive")
        if self.qv_layers > self.num_qubits:
            raise InvalidParameterError(
                f"log2(V) = {self.qv_layers} exceeds qubit count {self.num_qubits}"
            )

    @property
    def qv_layers(self) -> int:
        """Layer count of this system's quantum volume circuits: log2(V)."""
        return self.quantum_volume.bit_length() - 1

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "num_qubits": self.num_qubits,
            "quantum_volume": self.quantum_volume,
            "clops": self.clops,
        }


@dataclass(frozen=True)
class JobSpec:
    """The unit whose runtime is predicted: M circuits, each run for S shots,
    with K parameter updates (K=1 for kernel jobs) at d_eff effective layers."""

    circuits: int
    shots: int
    updates: int = 1
    d_eff: float = 1.0

    def __post_init__(self):
        if self.circuits < 1 or self.shots < 1 or self.updates < 1:
            raise InvalidParameterError("JobSpec needs circuits, shots, updates >= 1")
        if self.d_eff <= 0:
            raise InvalidParameterError("JobSpec needs d_eff > 0")


@dataclass(frozen=True)
class RuntimeReport:
    """Prediction vs reality: ratio r = predicted/actual and the asymmetric
    loss that penalizes under-prediction (r < 1) harder than over-prediction."""

    predicted: float
    actual: float | None = None
    ratio: float | None = None
    loss: float | None = None

    @property
    def under_predicts(self) -> bool:
        return self.ratio is not None and self.ratio < 1.0


def clops_from_measurement(circuits: int, layers: int, updates: int, shots: int, elapsed: float) -> float:
    """Layers per second from one timed run: M*D*K*S / T."""
    if min(circuits, layers, updates, shots) < 1:
        raise InvalidParameterError("all job counts must be positive")
    if elapsed <= 0:
        raise InvalidParameterError("elapsed time must be positive")
    return circuits * layers * updates * shots / elapsed

# the standard speed-measurement job shape: S = M = 100 with K = 10 updates
CLOPS_PROTOCOL = {"circuits": 100, "shots": 100, "updates": 10}


def predict_runtime(job: JobSpec, backend: BackendSpec) -> float:
    """Predicted wall-clock seconds: M*K*S*d_eff / C."""
    return job.circuits * job.updates * job.shots * job.d_eff / backend.clops


def loss_from_ratio(ratio: float) -> float:
    """r - 1 when over-predicting (r >= 1), 1/r - 1 when under-predicting."""
    if ratio <= 0:
        raise InvalidParameterError("runtime ratio must be positive")
    return ratio - 1.0 if ratio >= 1.0 else 1.0 / ratio - 1.0


def score(predicted: float, actual: float) -> RuntimeReport:
    """Score a prediction against a recorded runtime."""
    if predicted <= 0 or actual <= 0:
        raise InvalidParameterError("runtimes must be positive to score")
    ratio = predicted / actual
    return RuntimeReport(predicted, actual, ratio, loss_from_ratio(ratio))


def kernel_job_size(n_vectors: int) -> int:
    """Circuits needed for all unordered pairs of a dataset: N*(N-1)/2."""
    if n_vectors < 2:
        raise InvalidParameterError("a kernel job needs at least 2 feature vectors")
    return n_vectors * (n_vectors - 1) // 2


def extrapolate(n_vectors: int, shots: int, d_eff: float, clops: float) -> float:
    """Predicted seconds to evaluate every pairwise kernel of an N-point dataset."""
    if clops <= 0:
        raise InvalidParameterError("CLOPS must be positive")
    job = JobSpec(kernel_job_size(n_vectors), shots, 1, d_eff)
    return job.circuits * job.updates * job.shots * job.d_eff / clops


def required_shots(n_vectors: int, epsilon: float, scale: float = 1.0) -> int:
    """Shots per kernel entry for generalization error at most epsilon,
    following the N^(8/3) / epsilon^2 law with calibration constant `scale`."""
    if n_vectors < 2:
        raise InvalidParameterError("need at least 2 feature vectors")
    if not 0 < epsilon <= 1:
        raise InvalidParameterError("epsilon must lie in (0, 1]")
    if scale <= 0:
        raise InvalidParameterError("scale must be positive")
    return math.ceil(scale * n_vectors ** (8.0 / 3.0) / epsilon**2)


def total_runtime_scaling(
    n_vectors: int, epsilon: float, scale: float, d_eff: float, clops: float
) -> float:
    """Asymptotic whole-dataset runtime law, scale * N^(14/3) * d_eff / (C eps^2):
    the N^2 pair count times the per-entry shot requirement."""
    if clops <= 0:
        raise InvalidParameterError("CLOPS must be positive")
    return scale * n_vectors ** (14.0 / 3.0) * d_eff / (clops * epsilon**2)


def shot_limited_runtime(
    n_vectors: int, epsilon: float, scale: float, d_eff: float, clops: float
) -> float:
    """Exact-count version of the scaling law: every pair at its required shots."""
    return extrapolate(n_vectors, required_shots(n_vectors, epsilon, scale), d_eff, clops)


# -- built-in backend registry ----------------------------------------------

_BUILTIN = (
    # name, qubits, quantum volume, CLOPS (reported rounded to 0.1K)
    ("ibm_hanoi", 27, 64, 2300.0),
    ("ibmq_guadalupe", 16, 32, 2400.0),
    ("ibmq_jakarta", 7, 16, 2400.0),
    ("ibmq_mumbai", 27, 128, 1800.0),
    ("ibmq_toronto", 27, 32, 1800.0),
    ("ibmq_auckland", 27, 64, 2400.0),
)


def builtin_backends() -> dict[str, BackendSpec]:
    return {
        name: BackendSpec(name, n, v, c, coupling=heavy_hex_like_map(n))
        for name, n, v, c in _BUILTIN
    }


def get_backend(name: str, registry: dict[str, BackendSpec] | None = None) -> BackendSpec:
    reg = registry if registry is not None else builtin_backends()
    try:
        return reg[name]
    except KeyError:
        raise BackendNotFoundError(
            f"backend {name!r} not in registry; known: {sorted(reg)}"
        ) from None


def registry_to_json(registry: dict[str, BackendSpec]) -> str:
    return json.dumps(
        {"backends": [registry[k].to_dict() for k in sorted(registry)]},
        indent=2,
        sort_keys=True,
    )


def registry_from_json(text: str) -> dict[str, BackendSpec]:
    spec = json.loads(text)
    out = {}
    for entry in spec["backends"]:
        b = BackendSpec(
            entry["name"],
            int(entry["num_qubits"]),
            int(entry["quantum_volume"]),
            float(entry["clops"]),
            coupling=heavy_hex_like_map(int(entry["num_qubits"])),
        )
        out[b.name] = b
    return out


def format_duration(seconds: float) -> str:
    """Human-readable magnitude for long runtimes, e.g. '292.3 days'."""
    if seconds < 0:
        raise InvalidParameterError("duration must be nonnegative")
    units = (("years", 365.25 * 86400.0), ("days", 86400.0), ("hours", 3600.0), ("minutes", 60.0))
    for label, span in units:
        if seconds >= span:
            return f"{seconds / span:.1f} {label}"
    return f"{seconds:.3g} s"
