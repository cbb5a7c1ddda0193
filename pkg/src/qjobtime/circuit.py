"""Gate-level circuit IR with composition, inversion, and ASAP depth.

Circuits are immutable after construction and all operations are pure, so
values can be shared freely across threads.

Text format: a `width=<n>` header (plus an optional `layers=<d>` metadata
header), then one gate per line as `KIND q0[,q1,...] [param,...]`. Multiple
circuits in one file are separated by blank lines.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import InvalidCircuitError, InvalidGateError, WidthMismatchError


class GateKind(Enum):
    H = "H"
    X = "X"
    SX = "SX"
    RZ = "RZ"
    RZZ = "RZZ"
    CX = "CX"
    SWAP = "SWAP"
    U3 = "U3"
    SU4 = "SU4"
    PERMUTATION = "PERMUTATION"


# number of qubit operands; PERMUTATION spans the full register (checked per circuit)
_ARITY = {
    GateKind.H: 1,
    GateKind.X: 1,
    GateKind.SX: 1,
    GateKind.RZ: 1,
    GateKind.RZZ: 2,
    GateKind.CX: 2,
    GateKind.SWAP: 2,
    GateKind.U3: 1,
    GateKind.SU4: 2,
}

# U3 carries (theta, phi, lam, phase): a full U(2) element with explicit
# global phase, so that inversion is exact rather than up-to-phase.
_NPARAMS = {
    GateKind.RZ: 1,
    GateKind.RZZ: 1,
    GateKind.U3: 4,
}

# SX written as a U3; its inverse is a U3, and inverting that folds back to SX
# so that double inversion is structure-preserving.
_SX_AS_U3 = (np.pi / 2, -np.pi / 2, np.pi / 2, np.pi / 4)


@dataclass(frozen=True, eq=False)
class Gate:
    """One gate application: a kind, the qubits it acts on, real parameters.

    Generic two-qubit gates (SU4) carry their 4x4 unitary as a matrix payload
    instead of angle parameters; decomposition into a fixed basis is the
    transpiler's job, not the IR's.
    """

    kind: GateKind
    qubits: tuple[int, ...]
    params: tuple[float, ...] = ()
    matrix: np.ndarray | None = field(default=None, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        object.__setattr__(self, "params", tuple(float(p) for p in self.params))
        if len(set(self.qubits)) != len(self.qubits):
            raise InvalidGateError(f"{self.kind.value}: repeated qubit in {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise InvalidGateError(f"{self.kind.value}: negative qubit index")
        if self.kind is GateKind.PERMUTATION:
            if self.params:
                raise InvalidGateError("PERMUTATION takes no parameters")
            if sorted(self.qubits) != list(range(len(self.qubits))):
                raise InvalidGateError(
                    "PERMUTATION qubits must be a permutation of 0..k-1 in one-line notation"
                )
            return
        if len(self.qubits) != _ARITY[self.kind]:
            raise InvalidGateError(
                f"{self.kind.value} acts on {_ARITY[self.kind]} qubit(s), got {self.qubits}"
            )
        if len(self.params) != _NPARAMS.get(self.kind, 0):
            raise InvalidGateError(
                f"{self.kind.value} takes {_NPARAMS.get(self.kind, 0)} parameter(s), "
                f"got {len(self.params)}"
            )
        if self.kind is GateKind.SU4:
            m = self.matrix
            if m is None or m.shape != (4, 4):
                raise InvalidGateError("SU4 requires a 4x4 unitary matrix payload")
            if np.abs(m @ m.conj().T - np.eye(4)).max() > 1e-6:
                raise InvalidGateError("SU4 matrix payload is not unitary")
            m = np.array(m, dtype=complex)
            m.setflags(write=False)
            object.__setattr__(self, "matrix", m)
        elif self.matrix is not None:
            raise InvalidGateError(f"{self.kind.value} does not take a matrix payload")

    # -- constructors ------------------------------------------------------

    @classmethod
    def h(cls, q: int) -> "Gate":
        return cls(GateKind.H, (q,))

    @classmethod
    def x(cls, q: int) -> "Gate":
        return cls(GateKind.X, (q,))

    @classmethod
    def sx(cls, q: int) -> "Gate":
        return cls(GateKind.SX, (q,))

    @classmethod
    def rz(cls, q: int, theta: float) -> "Gate":
        return cls(GateKind.RZ, (q,), (theta,))

    @classmethod
    def rzz(cls, a: int, b: int, theta: float) -> "Gate":
        return cls(GateKind.RZZ, (a, b), (theta,))

    @classmethod
    def cx(cls, control: int, target: int) -> "Gate":
        return cls(GateKind.CX, (control, target))

    @classmethod
    def swap(cls, a: int, b: int) -> "Gate":
        return cls(GateKind.SWAP, (a, b))

    @classmethod
    def u3(cls, q: int, theta: float, phi: float, lam: float, phase: float = 0.0) -> "Gate":
        return cls(GateKind.U3, (q,), (theta, phi, lam, phase))

    @classmethod
    def su4(cls, a: int, b: int, matrix: np.ndarray) -> "Gate":
        return cls(GateKind.SU4, (a, b), (), np.asarray(matrix, dtype=complex))

    @classmethod
    def permutation(cls, images: Sequence[int]) -> "Gate":
        return cls(GateKind.PERMUTATION, tuple(images))

    # -- behaviour ---------------------------------------------------------

    def inverse(self) -> "Gate":
        """Exact inverse as a single gate of a supported kind."""
        k = self.kind
        if k in (GateKind.H, GateKind.X, GateKind.CX, GateKind.SWAP):
            return self
        if k in (GateKind.RZ, GateKind.RZZ):
            return Gate(k, self.qubits, (-self.params[0],))
        if k is GateKind.SX:
            # SX = exp(i pi/4) Rx(pi/2); dagger carried exactly by a U3
            return Gate.u3(self.qubits[0], -np.pi / 2, -np.pi / 2, np.pi / 2, -np.pi / 4)
        if k is GateKind.U3:
            theta, phi, lam, phase = self.params
            inv = (-theta, -lam, -phi, -phase)
            if inv == _SX_AS_U3:
                return Gate(GateKind.SX, self.qubits)
            return Gate(k, self.qubits, inv)
        if k is GateKind.SU4:
            return Gate(k, self.qubits, (), self.matrix.conj().T)
        if k is GateKind.PERMUTATION:
            inv = tuple(int(i) for i in np.argsort(self.qubits))
            return Gate(k, inv)
        raise InvalidGateError(f"no inverse for {k}")  # pragma: no cover

    def __eq__(self, other) -> bool:
        if not isinstance(other, Gate):
            return NotImplemented
        if (self.kind, self.qubits, self.params) != (other.kind, other.qubits, other.params):
            return False
        if (self.matrix is None) != (other.matrix is None):
            return False
        return self.matrix is None or np.array_equal(self.matrix, other.matrix)

    def __repr__(self) -> str:
        parts = [self.kind.value, ",".join(map(str, self.qubits))]
        if self.params:
            parts.append(",".join(repr(p) for p in self.params))
        if self.matrix is not None:
            parts.append("<4x4>")
        return f"Gate({' '.join(parts)})"


@dataclass(frozen=True, eq=False)
class Circuit:
    """An ordered gate list on `width` qubits.

    `base_layers` optionally records how many repetitions of a base template
    the circuit was built from; it is metadata and does not affect semantics.
    """

    width: int
    gates: tuple[Gate, ...] = ()
    base_layers: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 0:
            raise InvalidCircuitError("width must be nonnegative")
        for g in self.gates:
            if g.kind is GateKind.PERMUTATION and len(g.qubits) != self.width:
                raise InvalidCircuitError(
                    f"PERMUTATION spans {len(g.qubits)} wires on a width-{self.width} circuit"
                )
            if any(q >= self.width for q in g.qubits):
                raise InvalidCircuitError(f"gate {g!r} exceeds circuit width {self.width}")

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self) -> Iterator[Gate]:
        return iter(self.gates)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return (
            self.width == other.width
            and self.base_layers == other.base_layers
            and self.gates == other.gates
        )

    def same_structure(self, other: "Circuit") -> bool:
        """Gate-for-gate equality, ignoring metadata."""
        return self.width == other.width and self.gates == other.gates

    def depth(self) -> int:
        """Longest chain of gates sharing qubits (unit-cost ASAP layering)."""
        ready = [0] * self.width
        top = 0
        for g in self.gates:
            layer = 1 + max((ready[q] for q in g.qubits), default=0)
            for q in g.qubits:
                ready[q] = layer
            top = max(top, layer)
        return top

    def compose(self, other: "Circuit") -> "Circuit":
        """This circuit followed by `other`; widths must match."""
        if self.width != other.width:
            raise WidthMismatchError(
                f"cannot compose width {self.width} with width {other.width}"
            )
        if self.base_layers is None and other.base_layers is None:
            layers = None
        else:
            layers = (self.base_layers or 0) + (other.base_layers or 0)
        return Circuit(self.width, self.gates + other.gates, layers)

    def inverse(self) -> "Circuit":
        """Reversed gate order with every gate replaced by its exact inverse."""
        return Circuit(self.width, tuple(g.inverse() for g in reversed(self.gates)), self.base_layers)

    def count_2q(self) -> int:
        return sum(1 for g in self.gates if len(g.qubits) == 2)

    # -- text serialization --------------------------------------------------

    def to_text(self) -> str:
        lines = [f"width={self.width}"]
        if self.base_layers is not None:
            lines.append(f"layers={self.base_layers}")
        for g in self.gates:
            entry = f"{g.kind.value} {','.join(map(str, g.qubits))}"
            params: tuple[float, ...] = g.params
            if g.kind is GateKind.SU4:
                flat = g.matrix.reshape(-1)
                params = tuple(float(v) for c in flat for v in (c.real, c.imag))
            if params:
                entry += " " + ",".join(repr(p) for p in params)
            lines.append(entry)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "Circuit":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("width="):
            raise InvalidCircuitError("circuit text must start with a width=<n> header")
        width = int(lines[0].split("=", 1)[1])
        base_layers = None
        body = lines[1:]
        if body and body[0].startswith("layers="):
            base_layers = int(body[0].split("=", 1)[1])
            body = body[1:]
        gates = []
        for ln in body:
            fields = ln.split()
            kind = GateKind(fields[0])
            qubits = tuple(int(q) for q in fields[1].split(","))
            raw = tuple(float(p) for p in fields[2].split(",")) if len(fields) > 2 else ()
            if kind is GateKind.SU4:
                if len(raw) != 32:
                    raise InvalidCircuitError("SU4 line needs 32 re,im values")
                vals = np.array(raw).reshape(16, 2)
                mat = (vals[:, 0] + 1j * vals[:, 1]).reshape(4, 4)
                gates.append(Gate(kind, qubits, (), mat))
            else:
                gates.append(Gate(kind, qubits, raw))
        return cls(width, tuple(gates), base_layers)


def write_circuits(path, circuits: Iterable[Circuit]) -> None:
    with open(path, "w", newline="\n") as fh:
        fh.write("\n".join(c.to_text() for c in circuits))


def read_circuits(path) -> list[Circuit]:
    with open(path) as fh:
        text = fh.read()
    blocks = [b for b in text.split("\n\n") if b.strip()]
    return [Circuit.from_text(b) for b in blocks]
