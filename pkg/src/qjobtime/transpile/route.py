"""Greedy shortest-path SWAP routing onto a coupling map.

No lookahead: whenever a two-qubit gate straddles non-adjacent physical
qubits, the endpoint with the lower physical index walks one step along a BFS
shortest path (ties broken by ascending neighbor index) until the pair is
adjacent. Inserted swaps are emitted as CX triples so routed circuits stay
inside the two-qubit basis. Deterministic by construction.
"""

from dataclasses import dataclass

from ..circuit import Circuit, Gate, GateKind
from ..errors import CouplingError, UnsupportedGateError
from .coupling import CouplingMap
from .decompose import decompose


@dataclass(frozen=True)
class RoutedCircuit:
    """Routing result: the physical-width circuit, where each logical qubit
    ended up (final_layout[logical] = physical), and how many swaps it cost."""

    circuit: Circuit
    final_layout: tuple[int, ...]
    swap_count: int


def route(c: Circuit, cmap: CouplingMap) -> RoutedCircuit:
    """Map a circuit onto `cmap` starting from the identity layout."""
    if c.width > cmap.num_qubits:
        raise CouplingError(
            f"circuit width {c.width} exceeds coupling map size {cmap.num_qubits}"
        )
    l2p = list(range(c.width))  # logical -> physical
    p2l: list[int | None] = list(range(c.width)) + [None] * (cmap.num_qubits - c.width)
    out: list[Gate] = []
    swaps = 0

    def do_swap(pa: int, pb: int) -> None:
        out.extend([Gate.cx(pa, pb), Gate.cx(pb, pa), Gate.cx(pa, pb)])
        la, lb = p2l[pa], p2l[pb]
        p2l[pa], p2l[pb] = lb, la
        if la is not None:
            l2p[la] = pb
        if lb is not None:
            l2p[lb] = pa

    for g in c.gates:
        if g.kind is GateKind.PERMUTATION:
            raise UnsupportedGateError("decompose PERMUTATION gates before routing")
        if len(g.qubits) == 1:
            out.append(Gate(g.kind, (l2p[g.qubits[0]],), g.params, g.matrix))
            continue
        la, lb = g.qubits
        while cmap.distance(l2p[la], l2p[lb]) > 1:
            pa, pb = l2p[la], l2p[lb]
            mover, target = (pa, pb) if pa < pb else (pb, pa)
            step = cmap.shortest_path(mover, target)[1]
            do_swap(mover, step)
            swaps += 1
        out.append(Gate(g.kind, (l2p[la], l2p[lb]), g.params, g.matrix))

    return RoutedCircuit(
        Circuit(cmap.num_qubits, tuple(out), c.base_layers), tuple(l2p), swaps
    )


def uses_only_map_edges(c: Circuit, cmap: CouplingMap) -> bool:
    """True when every 2-qubit gate acts on a coupling-map edge."""
    return all(
        cmap.has_edge(*g.qubits) for g in c.gates if len(g.qubits) == 2
    )


def transpiled_depth(c: Circuit, cmap: CouplingMap) -> int:
    """Depth after lowering to basis gates and routing onto the map."""
    return route(decompose(c), cmap).circuit.depth()
