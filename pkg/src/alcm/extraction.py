"""From consistent markings to concrete models.

A marking is flattened into an R-graph (element names, concept labels, role
edges) by walking saturation paths; the R-graph is then read back either as
a flat name-domain interpretation or, unfolding meta-modelled individuals
into nested sets, as a full model of the original knowledge base.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import syntax
from .digraph import find_cycle
from .engine import (
    AndOrGraph,
    BaseJudgement,
    Marking,
    check_consistency,
    DEFAULT_NODE_BUDGET,
)
from .semantics import Interpretation, el_atom, el_set
from .syntax import (
    Concept,
    ConceptAssertion,
    NotEqual,
    RoleAssertion,
    abox_individuals,
    concept_to_str,
)

VAR_PREFIX = "y#"


@dataclass
class RGraph:
    """Element names with concept labels and role edges."""

    delta: Tuple[str, ...]
    labels: Dict[str, FrozenSet[Concept]]
    edges: Dict[str, FrozenSet[Tuple[str, str]]]


def saturation_path(g: AndOrGraph, marking: Marking, v: int) -> List[int]:
    """Follow or-node choices from v down to the first and-node (or end node)."""
    path = [v]
    while g.kinds[v] == "or":
        v = marking.choice[v]
        path.append(v)
    return path


def build_rgraph(g: AndOrGraph, marking: Marking):
    """Flatten a consistent marking into an R-graph.

    Returns (rgraph, terminal judgement, merge list), where the terminal
    judgement is the base and-node closing the root's saturation path and
    the merge list records the (keep, drop) pairs of every merge taken on
    that path, in order.
    """
    root_path = saturation_path(g, marking, g.root)
    merges = []
    for v, w in zip(root_path, root_path[1:]):
        ra = g.rules[v]
        if ra.rule == "close" and w == g.edges[v][0][0]:
            merges.append((ra.principal[0], ra.principal[1]))
    terminal_id = root_path[-1]
    terminal = g.labels[terminal_id]

    abox = terminal.abox
    names = sorted(abox_individuals(abox) | {m.individual for m in terminal.mbox})
    labels: Dict[str, set] = {n: set() for n in names}
    edges: Dict[str, set] = {}
    for a in abox:
        if isinstance(a, ConceptAssertion):
            labels[a.individual].add(a.concept)
        elif isinstance(a, RoleAssertion):
            edges.setdefault(a.role, set()).add((a.subject, a.object))

    delta: List[str] = list(names)
    node_of: Dict[str, int] = {n: terminal_id for n in names}
    queue = deque(names)
    var_count = 0
    while queue:
        x = queue.popleft()
        for c in sorted(labels[x], key=lambda d: d.key):
            if c.tag != syntax.EXISTS:
                continue
            u = node_of[x]
            wanted = (c, x if isinstance(g.labels[u], BaseJudgement) else None)
            w0 = next(child for child, lbl in g.edges[u] if lbl == wanted)
            spath = saturation_path(g, marking, w0)
            Y = frozenset().union(*(set(g.labels[n].concepts) for n in spath))
            y = next((n for n in delta if frozenset(labels[n]) == Y), None)
            if y is None:
                y = f"{VAR_PREFIX}{var_count}"
                var_count += 1
                delta.append(y)
                labels[y] = set(Y)
                node_of[y] = spath[-1]
                queue.append(y)
            edges.setdefault(c.role, set()).add((x, y))

    rg = RGraph(tuple(delta),
                {n: frozenset(ls) for n, ls in labels.items()},
                {r: frozenset(ps) for r, ps in edges.items()})
    return rg, terminal, merges


# --------------------------------------------------------------------------
# Saturation conditions
# --------------------------------------------------------------------------

class Violation(tuple):
    def __new__(cls, condition: str, witness: str):
        return tuple.__new__(cls, (condition, witness))

    @property
    def condition(self):
        return self[0]

    @property
    def witness(self):
        return self[1]


def _mirror_witnesses(a_name: str, b_name: str):
    """Both orientations of the concept asserting that A and B differ."""
    from .syntax import atom, conj, disj, neg
    A, B = atom(a_name), atom(b_name)
    return (
        disj(conj(A, neg(B)), conj(neg(A), B)),
        disj(conj(B, neg(A)), conj(neg(B), A)),
        disj(conj(A, neg(B)), conj(B, neg(A))),
        disj(conj(B, neg(A)), conj(A, neg(B))),
    )


def check_saturated(rg: RGraph, terminal: BaseJudgement) -> List[Violation]:
    """All fourteen closure conditions; empty list means fully saturated."""
    out: List[Violation] = []
    labels, edges = rg.labels, rg.edges
    delta = rg.delta
    succ: Dict[str, Dict[str, set]] = {}
    for role, pairs in edges.items():
        for (x, y) in pairs:
            succ.setdefault(x, {}).setdefault(role, set()).add(y)

    for x in delta:
        for c in sorted(labels[x], key=lambda d: d.key):
            if c.tag == syntax.NOT and c.child in labels[x]:
                out.append(Violation("clash", f"{concept_to_str(c)} and its operand on {x}"))
            elif c.tag == syntax.AND and not (c.left in labels[x] and c.right in labels[x]):
                out.append(Violation("conj", f"{concept_to_str(c)} on {x}"))
            elif c.tag == syntax.OR and not (c.left in labels[x] or c.right in labels[x]):
                out.append(Violation("disj", f"{concept_to_str(c)} on {x}"))
            elif c.tag == syntax.FORALL:
                for y in sorted(succ.get(x, {}).get(c.role, ())):
                    if c.child not in labels[y]:
                        out.append(Violation(
                            "univ", f"{concept_to_str(c)} on {x}, successor {y}"))
            elif c.tag == syntax.EXISTS:
                if not any(c.child in labels[y]
                           for y in succ.get(x, {}).get(c.role, ())):
                    out.append(Violation("exist", f"{concept_to_str(c)} on {x}"))
    for c in terminal.tbox:
        for x in delta:
            if c not in labels[x]:
                out.append(Violation("tbox", f"{concept_to_str(c)} missing on {x}"))

    abox, mbox = terminal.abox, terminal.mbox
    in_delta = set(delta)
    for a in abox:
        if isinstance(a, ConceptAssertion):
            if a.individual not in in_delta:
                out.append(Violation("abox-domain", a.individual))
            elif a.concept not in labels[a.individual]:
                out.append(Violation("abox-concept", f"{concept_to_str(a.concept)} on {a.individual}"))
        elif isinstance(a, RoleAssertion):
            if not {a.subject, a.object} <= in_delta:
                out.append(Violation("abox-domain", f"{a.subject},{a.object}"))
            elif (a.subject, a.object) not in edges.get(a.role, frozenset()):
                out.append(Violation("abox-role", f"{a.role}({a.subject},{a.object})"))
        elif isinstance(a, NotEqual):
            if a.left == a.right:
                out.append(Violation("abox-inequality", a.left))

    mdom = sorted({m.individual for m in mbox})
    for a in mdom:
        if a not in in_delta:
            out.append(Violation("mbox-domain", a))
    cyc = _rgraph_circularity(rg, mbox)
    if cyc is not None:
        out.append(Violation("mbox-circularity", " -> ".join(cyc)))
    concept_of: Dict[str, str] = {}
    for m in sorted(mbox):
        if m.individual in concept_of and concept_of[m.individual] != m.concept_name:
            out.append(Violation("mbox-functional", m.individual))
        concept_of.setdefault(m.individual, m.concept_name)
    for i, a in enumerate(mdom):
        for b in mdom[i + 1:]:
            An, Bn = concept_of.get(a), concept_of.get(b)
            if An is None or Bn is None:
                continue
            both = _mirror_witnesses(An, Bn)
            if not any(w in labels[t] for t in delta if t in labels for w in both):
                out.append(Violation("mbox-difference-witness", f"{a} vs {b}"))
    return out


def _rgraph_circularity(rg: RGraph, mbox) -> Optional[List[str]]:
    from .syntax import atom
    by_concept: Dict[str, List[str]] = {}
    for m in mbox:
        by_concept.setdefault(m.concept_name, []).append(m.individual)
    mdom = {m.individual for m in mbox}
    succ = {a: set() for a in mdom}
    for a in mdom:
        for c in rg.labels.get(a, frozenset()):
            if c.tag == syntax.ATOM:
                for b in by_concept.get(c.name, ()):
                    succ[a].add(b)
    return find_cycle(mdom, succ)


# --------------------------------------------------------------------------
# Interpretations
# --------------------------------------------------------------------------

def _atoms_in_labels(rg: RGraph) -> set:
    names = set()
    for ls in rg.labels.values():
        for c in ls:
            names.update(d.name for d in syntax.subconcepts(c) if d.tag == syntax.ATOM)
    return names


def induced_interpretation(rg: RGraph) -> Interpretation:
    """Flat model: every element name becomes an atomic domain element."""
    elems = {n: el_atom(n) for n in rg.delta}
    concepts = {name: frozenset(elems[x] for x in rg.delta
                                if syntax.atom(name) in rg.labels[x])
                for name in sorted(_atoms_in_labels(rg))}
    roles = {r: frozenset((elems[x], elems[y]) for (x, y) in ps)
             for r, ps in rg.edges.items()}
    return Interpretation(domain=frozenset(elems.values()),
                          concepts=concepts,
                          roles=roles,
                          individuals=dict(elems))


def meta_order(rg: RGraph, mbox) -> set:
    """Membership precedence: y below a whenever a's concept labels y."""
    concept_of = {}
    for m in sorted(mbox):
        concept_of.setdefault(m.individual, m.concept_name)
    edges = set()
    for a, cn in concept_of.items():
        for y in rg.delta:
            if syntax.atom(cn) in rg.labels.get(y, frozenset()):
                edges.add((y, a))
    return edges


def unfold_sets(rg: RGraph, mbox) -> Interpretation:
    """Replace each meta-modelled individual by the set its concept denotes.

    Requires the meta-modelling recursion to be well-founded; a circular
    R-graph is rejected up front rather than looped on.
    """
    concept_of: Dict[str, str] = {}
    for m in sorted(mbox):
        if m.individual in concept_of and concept_of[m.individual] != m.concept_name:
            raise ValueError(f"{m.individual} is meta-modelled twice")
        concept_of.setdefault(m.individual, m.concept_name)
    cyc = _rgraph_circularity(rg, mbox)
    if cyc is not None:
        raise ValueError("meta-modelling circularity: " + " -> ".join(cyc))

    memo: Dict[str, object] = {}

    def unfold(x: str):
        e = memo.get(x)
        if e is None:
            cn = concept_of.get(x)
            if cn is None:
                e = el_atom(x)
            else:
                member_concept = syntax.atom(cn)
                e = el_set(unfold(y) for y in rg.delta
                           if member_concept in rg.labels[y])
            memo[x] = e
        return e

    elems = {x: unfold(x) for x in rg.delta}
    names = sorted(_atoms_in_labels(rg) | set(concept_of.values()))
    concepts = {name: frozenset(elems[x] for x in rg.delta
                                if syntax.atom(name) in rg.labels[x])
                for name in names}
    roles = {r: frozenset((elems[x], elems[y]) for (x, y) in ps)
             for r, ps in rg.edges.items()}
    return Interpretation(domain=frozenset(elems.values()),
                          concepts=concepts,
                          roles=roles,
                          individuals=dict(elems))


# --------------------------------------------------------------------------
# End-to-end extraction
# --------------------------------------------------------------------------

def model_from_verdict(kb, verdict) -> Interpretation:
    """Model of the original KB from a consistent engine verdict.

    Individuals merged away by initialization or on the saturation path are
    mapped to their representative's element, so every original name stays
    resolvable.  A representative that no surviving assertion mentions (an
    individual known only through equalities) is unconstrained and becomes a
    fresh atom of its own.
    """
    rg, terminal, merges = build_rgraph(verdict.graph, verdict.marking)
    interp = unfold_sets(rg, terminal.mbox)
    rep = dict(verdict.graph.initial_merges)
    for keep, drop in merges:
        rep = {orig: (keep if r == drop else r) for orig, r in rep.items()}
    domain = set(interp.domain)
    for orig in sorted(rep):
        r = rep[orig]
        e = interp.individuals.get(r)
        if e is None:
            e = el_atom(r)
            interp.individuals[r] = e
            domain.add(e)
        interp.individuals[orig] = e
    interp.domain = frozenset(domain)
    return interp


def extract_model(kb, node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[Interpretation]:
    """Decide the KB and, when consistent, hand back a full nested-set model."""
    verdict = check_consistency(kb, node_budget)
    if not verdict.consistent:
        return None
    return model_from_verdict(kb, verdict)
