"""
DOT export of fixpoint traces in the bilattice.

Each visited pair becomes one node whose label shows the upper bounds
above the lower bounds, atoms in lexicographic order. Consecutive pairs
of a trace are joined by an edge labelled with the operator name.
"""
from typing import Dict, Iterable, List, Sequence, Tuple

from app.models.lattice import InterpretationPair
from app.services.reporting.formatting import format_decimal

Trace = Tuple[str, Sequence[InterpretationPair]]


def row(values, atoms: Sequence[str]) -> str:
    return "(" + ", ".join(format_decimal(values[atom]) for atom in atoms) + ")"


def node_label(pair: InterpretationPair) -> str:
    atoms = pair.atoms
    return f"{row(pair.upper, atoms)}\\n{row(pair.lower, atoms)}"


def to_dot(traces: Iterable[Trace], name: str = "bilattice") -> str:
    """
    Render one or more traces as a single directed graph.

    Args:
        traces: (operator name, visited pairs in order) per traced fixpoint
        name: Graph name

    Returns:
        DOT source; pairs visited by several traces share one node
    """
    nodes: Dict[InterpretationPair, str] = {}
    edges: List[str] = []
    seen_edges = set()
    for operator, pairs in traces:
        previous = None
        for pair in pairs:
            if pair not in nodes:
                nodes[pair] = f"n{len(nodes)}"
            if previous is not None and previous != pair:
                key = (nodes[previous], nodes[pair], operator)
                if key not in seen_edges:
                    seen_edges.add(key)
                    edges.append(f'  {key[0]} -> {key[1]} [label="{operator}"];')
            previous = pair

    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    lines.extend(f'  {node} [label="{node_label(pair)}"];' for pair, node in nodes.items())
    lines.extend(edges)
    lines.append("}")
    return "\n".join(lines) + "\n"
