"""
Dependency analysis and rule normalization.
"""
import logging
from typing import Dict, FrozenSet, Set, Tuple

import networkx as nx

from app.models.lattice import ONE, ZERO, Atom
from app.models.program import Conj, Const, Disj, Formula, Polarity, Program, Rule, polarities

logger = logging.getLogger(__name__)

Edge = Tuple[Atom, Atom]


def depends(program: Program) -> FrozenSet[Edge]:
    """
    Dependency relation as (q, p) edges: q occurs in the body of a rule for p.

    Returns:
        Frozen set of (body atom, head atom) pairs
    """
    edges: Set[Edge] = set()
    for rule in program.rules:
        for leaf_atom in polarities(rule.body):
            edges.add((leaf_atom, rule.head))
    return frozenset(edges)


def body_polarities(formula: Formula) -> Dict[Atom, Polarity]:
    """Polarity of each atom in a body: positive, negative or both."""
    return polarities(formula)


def dependency_graph(program: Program) -> nx.DiGraph:
    """
    Directed graph with one node per signature atom and an edge q -> p for
    each dependency, labelled with the polarity of q across p's rules.
    """
    graph = nx.DiGraph()
    graph.add_nodes_from(program.atoms)
    for rule in program.rules:
        for atom, polarity in polarities(rule.body).items():
            if graph.has_edge(atom, rule.head):
                polarity = Polarity(graph.edges[atom, rule.head]["polarity"]).combine(polarity)
            graph.add_edge(atom, rule.head, polarity=polarity.value)
    return graph


def head_polarities(program: Program, head: Atom) -> Dict[Atom, Polarity]:
    """Polarity of each atom across all bodies of the rules for `head`."""
    found: Dict[Atom, Polarity] = {}
    for rule in program.rules_for(head):
        for atom, polarity in polarities(rule.body).items():
            found[atom] = found[atom].combine(polarity) if atom in found else polarity
    return found


def join_rules_per_atom(program: Program) -> Program:
    """
    Normalize to exactly one rule per signature atom.

    Each rule p <-{w}[i] B becomes the disjunct (w /\\[i] B); disjuncts are
    joined with Gödel disjunction and the joined rule has weight 1 in
    family G. Atoms without rules get p <- 0.
    """
    approximate = any(isinstance(value, float) for value in program.constants())
    zero = 0.0 if approximate else ZERO
    one = 1.0 if approximate else ONE

    joined = []
    grouped = program.rules_by_head()
    for atom in program.atoms:
        disjuncts = [Conj(rule.family, Const(rule.weight), rule.body) for rule in grouped[atom]]
        if not disjuncts:
            body: Formula = Const(zero)
        else:
            body = disjuncts[0]
            for disjunct in disjuncts[1:]:
                body = Disj("G", body, disjunct)
        joined.append(Rule(atom, body, one, "G"))
    logger.debug("Joined %d rules into %d", len(program.rules), len(joined))
    return Program(tuple(joined), program.signature)
