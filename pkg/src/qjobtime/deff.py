"""Effective number of quantum-volume layers of a kernel-circuit family.

A kernel circuit on n qubits with d template repetitions has volumetric area
2*d*n (width times total base layers); the QV circuit with the same area is
the square one of width v = ceil(sqrt(2*d*n)). Normalizing mean transpiled
depth of the kernel circuits by that of width-v QV circuits, and scaling by v,
gives the family's effective layer count:

    d_eff = (mean kernel depth / mean QV depth) * v

Both means are taken on the same coupling map with per-sample derived seeds,
so the result is a deterministic function of (family, map, samples, seed)
regardless of evaluation order.
"""

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .circuit import Circuit
from .errors import CouplingError, InvalidParameterError
from .generators import KernelFamily, kernel_circuit, qv_circuit, sample_features
from .transpile.coupling import CouplingMap
from .transpile.route import transpiled_depth

DEFAULT_KERNEL_SAMPLES = 25
DEFAULT_QV_SAMPLES = 20


def equivalent_qv_width(n: int, d: int) -> int:
    """Width of the square QV circuit with volumetric area 2*d*n: ceil(sqrt(2dn))."""
    if n < 2 or d < 1:
        raise InvalidParameterError("need n >= 2 and d >= 1")
    area = 2 * d * n
    v = math.isqrt(area)
    return v if v * v == area else v + 1


@dataclass(frozen=True)
class DeffEstimate:
    """Depth-normalized effective layer count and the measurements behind it."""

    v: int
    mean_kernel_depth: float
    mean_qv_depth: float
    d_eff: float
    kernel_samples: int
    qv_samples: int
    seed: int

    def to_dict(self) -> dict:
        return {
            "v": self.v,
            "mean_kernel_depth": self.mean_kernel_depth,
            "mean_qv_depth": self.mean_qv_depth,
            "d_eff": self.d_eff,
            "kernel_samples": self.kernel_samples,
            "qv_samples": self.qv_samples,
            "seed": self.seed,
        }


def _derived_seed(seed: int, stream: int, index: int) -> np.random.SeedSequence:
    return np.random.SeedSequence((int(seed), stream, index))


def sample_kernel_circuits(fam: KernelFamily, count: int, seed: int) -> list[Circuit]:
    """Kernel circuits at `count` independent (x, y) draws; stream 0 of `seed`."""
    out = []
    for k in range(count):
        rng = np.random.default_rng(_derived_seed(seed, 0, k))
        out.append(kernel_circuit(fam, sample_features(fam, rng), sample_features(fam, rng)))
    return out


def sample_qv_circuits(width: int, layers: int, count: int, seed: int) -> list[Circuit]:
    """QV circuits from per-sample seeds; stream 1 of `seed`."""
    return [
        qv_circuit(width, layers, _derived_seed(seed, 1, k))
        for k in range(count)
    ]


def mean_transpiled_depth(circuits: Sequence[Circuit], cmap: CouplingMap) -> float:
    if not circuits:
        raise InvalidParameterError("need at least one circuit")
    return float(np.mean([transpiled_depth(c, cmap) for c in circuits]))


def effective_layers(
    fam: KernelFamily,
    cmap: CouplingMap,
    kernel_samples: int = DEFAULT_KERNEL_SAMPLES,
    qv_samples: int = DEFAULT_QV_SAMPLES,
    seed: int = 0,
    as_qv_job: bool = False,
) -> DeffEstimate:
    """Estimate the family's effective QV layer count on a coupling map.

    With `as_qv_job` the family describes quantum volume circuits themselves
    (width fam.n, fam.d layers); their effective layer count is the layer
    count, so the depth ratio is pinned to one and d_eff = fam.d exactly.
    """
    if kernel_samples < 1 or qv_samples < 1:
        raise InvalidParameterError("sample counts must be >= 1")
    if as_qv_job:
        if fam.n > cmap.num_qubits:
            raise CouplingError(f"map has {cmap.num_qubits} qubits, job needs {fam.n}")
        circuits = sample_qv_circuits(fam.n, fam.d, qv_samples, seed)
        mean_depth = mean_transpiled_depth(circuits, cmap)
        return DeffEstimate(
            fam.d, mean_depth, mean_depth, float(fam.d), 0, qv_samples, seed
        )
    v = equivalent_qv_width(fam.n, fam.d)
    if max(fam.n, v) > cmap.num_qubits:
        raise CouplingError(
            f"map has {cmap.num_qubits} qubits but the comparison needs {max(fam.n, v)}"
        )
    kernel_mean = mean_transpiled_depth(sample_kernel_circuits(fam, kernel_samples, seed), cmap)
    qv_mean = mean_transpiled_depth(sample_qv_circuits(v, v, qv_samples, seed), cmap)
    return DeffEstimate(
        v, kernel_mean, qv_mean, kernel_mean / qv_mean * v, kernel_samples, qv_samples, seed
    )
