"""Lowering to the hardware basis: 1q {RZ, SX, X}, 2q {CX}.

Output is unitarily equivalent to the input up to global phase. Fixed rules:

    H         -> RZ(pi/2), SX, RZ(pi/2)
    RZZ(t)    -> CX, RZ(t) on the target, CX            (exact)
    SWAP      -> CX, CX, CX                             (exact)
    U3        -> ZYZ Euler angles as an RZ/SX string
    SU4       -> three CX with 1q dressings (see kak)
    PERMUTATION -> SWAP network over its cycles, then CX triples
"""

import numpy as np

from ..circuit import Circuit, Gate, GateKind
from ..errors import UnsupportedGateError
from ..sim import gate_matrix
from .kak import canonical_layers, kak_decompose, zsx_angles

BASIS_1Q = (GateKind.RZ, GateKind.SX, GateKind.X)
BASIS_2Q = (GateKind.CX,)


def _emit_1q(out: list[Gate], q: int, matrix: np.ndarray) -> None:
    angles = zsx_angles(matrix)
    if angles is None:
        return
    if len(angles) == 1:
        out.append(Gate.rz(q, angles[0]))
        return
    a1, a2, a3 = angles
    out.extend([Gate.rz(q, a1), Gate.sx(q), Gate.rz(q, a2), Gate.sx(q), Gate.rz(q, a3)])


def _emit_swap(out: list[Gate], a: int, b: int) -> None:
    out.extend([Gate.cx(a, b), Gate.cx(b, a), Gate.cx(a, b)])


def _emit_su4(out: list[Gate], qa: int, qb: int, matrix: np.ndarray) -> None:
    _, a1, a0, (x, y, z), b1, b0 = kak_decompose(matrix)
    (pre_hi, pre_lo), (m1_hi, m1_lo), (m2_hi, m2_lo) = canonical_layers(x, y, z)
    _emit_1q(out, qa, pre_hi @ b1)
    _emit_1q(out, qb, pre_lo @ b0)
    out.append(Gate.cx(qa, qb))
    _emit_1q(out, qa, m1_hi)
    _emit_1q(out, qb, m1_lo)
    out.append(Gate.cx(qa, qb))
    _emit_1q(out, qa, m2_hi)
    _emit_1q(out, qb, m2_lo)
    out.append(Gate.cx(qa, qb))
    _emit_1q(out, qa, a1)
    _emit_1q(out, qb, a0)


def _permutation_swaps(images: tuple[int, ...]) -> list[tuple[int, int]]:
    """Transpositions realizing wire i -> images[i]: each cycle (a b c ...)
    becomes SWAP(a,b), SWAP(a,c), ... applied in that order."""
    seen: set[int] = set()
    swaps = []
    for start in range(len(images)):
        if start in seen:
            continue
        cycle = [start]
        seen.add(start)
        nxt = images[start]
        while nxt != start:
            cycle.append(nxt)
            seen.add(nxt)
            nxt = images[nxt]
        swaps.extend((cycle[0], other) for other in cycle[1:])
    return swaps


def decompose(c: Circuit) -> Circuit:
    """Rewrite every gate into basis gates; width and metadata preserved."""
    out: list[Gate] = []
    for g in c.gates:
        k = g.kind
        if k in (GateKind.X, GateKind.SX, GateKind.RZ, GateKind.CX):
            out.append(g)
        elif k is GateKind.H:
            q = g.qubits[0]
            out.extend([Gate.rz(q, np.pi / 2), Gate.sx(q), Gate.rz(q, np.pi / 2)])
        elif k is GateKind.RZZ:
            a, b = g.qubits
            out.extend([Gate.cx(a, b), Gate.rz(b, g.params[0]), Gate.cx(a, b)])
        elif k is GateKind.SWAP:
            _emit_swap(out, *g.qubits)
        elif k is GateKind.U3:
            _emit_1q(out, g.qubits[0], gate_matrix(g))
        elif k is GateKind.SU4:
            _emit_su4(out, g.qubits[0], g.qubits[1], g.matrix)
        elif k is GateKind.PERMUTATION:
            for a, b in _permutation_swaps(g.qubits):
                _emit_swap(out, a, b)
        else:
            raise UnsupportedGateError(f"no basis decomposition for {k.value}")
    return Circuit(c.width, tuple(out), c.base_layers)
