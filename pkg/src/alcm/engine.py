"""Consistency engine: judgement rewriting over a globally cached and-or graph.

A node label is either a base judgement (Tbox, Abox, Mbox), a variable
judgement (Tbox plus a concept set standing for one anonymous element), or
absurdity.  Every label is kept in canonical form - sorted tuples, merged
equalities, renumbered fresh individuals - so the global cache maps each
label to exactly one node.  Expansion order, rule choice and tie-breaking
are all fixed by the structural total orders, which makes graphs, verdicts
and traces reproducible byte for byte.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from . import syntax
from .digraph import find_cycle
from .errors import BudgetExceededError
from .syntax import (
    Concept,
    ConceptAssertion,
    Equal,
    KnowledgeBase,
    MboxAxiom,
    NotEqual,
    RoleAssertion,
    abox_individuals,
    assertion_key,
    assertion_to_str,
    atom,
    concept_to_str,
    conj,
    disj,
    neg,
    nnf_abox,
    nnf_tbox,
    not_equal,
    substitute_abox,
    substitute_mbox,
)

DEFAULT_NODE_BUDGET = 2 ** 20

FRESH_PREFIX = "fresh#"

BOTTOM_RULES = ("bot", "bot1", "bot2", "bot3")


class _Absurdity:
    def __repr__(self):
        return "absurdity"


ABSURDITY = _Absurdity()


class VariableJudgement:
    """Tbox plus the concept set of one anonymous element.  Hash is cached:
    judgements are looked up in the global node cache constantly."""

    __slots__ = ("tbox", "concepts", "_hash")

    def __init__(self, tbox: Tuple[Concept, ...], concepts: Tuple[Concept, ...]):
        self.tbox = tbox
        self.concepts = concepts
        self._hash = hash((tbox, concepts))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            type(other) is VariableJudgement and self._hash == other._hash
            and self.tbox == other.tbox and self.concepts == other.concepts)

    def __repr__(self):
        return f"VariableJudgement(tbox={self.tbox!r}, concepts={self.concepts!r})"


class BaseJudgement:
    __slots__ = ("tbox", "abox", "mbox", "_hash")

    def __init__(self, tbox, abox, mbox):
        self.tbox = tbox
        self.abox = abox
        self.mbox = mbox
        self._hash = hash((tbox, abox, mbox))

    def __hash__(self):
        return self._hash

    def __eq__(self, other):
        return self is other or (
            type(other) is BaseJudgement and self._hash == other._hash
            and self.tbox == other.tbox and self.abox == other.abox
            and self.mbox == other.mbox)

    def __repr__(self):
        return (f"BaseJudgement(tbox={self.tbox!r}, abox={self.abox!r}, "
                f"mbox={self.mbox!r})")


def make_variable(tbox, concepts) -> VariableJudgement:
    return VariableJudgement(tuple(sorted(set(tbox), key=lambda c: c.key)),
                             tuple(sorted(set(concepts), key=lambda c: c.key)))


def make_base(tbox, abox, mbox) -> BaseJudgement:
    abox = set(abox)
    for a in abox:
        if isinstance(a, Equal):
            raise ValueError("base judgements never carry equality assertions")
    abox = _canonical_fresh(abox)
    return BaseJudgement(tuple(sorted(set(tbox), key=lambda c: c.key)),
                         tuple(sorted(abox, key=assertion_key)),
                         tuple(sorted(set(mbox))))


def _canonical_fresh(abox: set) -> set:
    """Renumber fresh individuals so alpha-equivalent labels cache-hit.

    Fresh individuals only ever occur in concept assertions, so the multiset
    of concepts asserted about one is a complete signature for it.
    """
    found = set()
    for a in abox:
        if type(a) is ConceptAssertion:
            if a.individual.startswith(FRESH_PREFIX):
                found.add(a.individual)
        elif type(a) is RoleAssertion:
            if a.subject.startswith(FRESH_PREFIX):
                found.add(a.subject)
            if a.object.startswith(FRESH_PREFIX):
                found.add(a.object)
        else:
            if a.left.startswith(FRESH_PREFIX):
                found.add(a.left)
            if a.right.startswith(FRESH_PREFIX):
                found.add(a.right)
    if not found:
        return abox
    fresh = sorted(found)
    sig = {f: tuple(sorted(a.concept.key for a in abox
                           if isinstance(a, ConceptAssertion) and a.individual == f))
           for f in fresh}
    order = sorted(fresh, key=lambda f: (sig[f], f))
    ren = {f: f"{FRESH_PREFIX}{i}" for i, f in enumerate(order)}
    if all(k == v for k, v in ren.items()):
        return abox

    def s(n):
        return ren.get(n, n)

    out = set()
    for a in abox:
        if isinstance(a, ConceptAssertion):
            out.add(ConceptAssertion(a.concept, s(a.individual)))
        elif isinstance(a, RoleAssertion):
            out.add(RoleAssertion(a.role, s(a.subject), s(a.object)))
        else:
            out.add(not_equal(s(a.left), s(a.right)))
    return out


@dataclass(frozen=True)
class RuleApplication:
    rule: str
    connective: str  # "or" for static rules, "and" for transitional ones
    principal: tuple
    premise: object
    conclusions: tuple


# --------------------------------------------------------------------------
# Rule selection
# --------------------------------------------------------------------------

def circular(abox, mbox):
    """Cycle in the membership graph induced by the Abox over the Mbox domain.

    Nodes are the Mbox individuals; there is an edge a -> b whenever B(a) is
    asserted and b corresponds to B.  Returns the cycle or None.
    """
    by_concept: Dict[str, List[str]] = {}
    for m in mbox:
        by_concept.setdefault(m.concept_name, []).append(m.individual)
    mdom = {m.individual for m in mbox}
    succ: Dict[str, set] = {a: set() for a in mdom}
    for a in abox:
        if isinstance(a, ConceptAssertion) and a.individual in mdom \
                and a.concept.tag == syntax.ATOM:
            for b in by_concept.get(a.concept.name, ()):
                succ[a.individual].add(b)
    return find_cycle(mdom, succ)


def _variable_rule(j: VariableJudgement) -> Optional[RuleApplication]:
    X = j.concepts
    present = set(X)
    # Clash: bot in the set, or an atom together with its negation.
    for c in X:
        if c.tag == syntax.BOT:
            return RuleApplication("bot", "or", (c,), j, (ABSURDITY,))
        if c.tag == syntax.ATOM and neg(c) in present:
            return RuleApplication("bot", "or", (c, neg(c)), j, (ABSURDITY,))
    for c in X:
        if c.tag == syntax.AND:
            rest = [d for d in X if d is not c]
            concl = make_variable(j.tbox, rest + [c.left, c.right])
            return RuleApplication("and", "or", (c,), j, (concl,))
    for c in X:
        if c.tag == syntax.OR:
            rest = [d for d in X if d is not c]
            left = make_variable(j.tbox, rest + [c.left])
            right = make_variable(j.tbox, rest + [c.right])
            return RuleApplication("or", "or", (c,), j, (left, right))
    existentials = [c for c in X if c.tag == syntax.EXISTS]
    if existentials:
        concls = []
        for e in existentials:
            xs = [e.child] + [d.child for d in X
                              if d.tag == syntax.FORALL and d.role == e.role]
            concls.append(make_variable(j.tbox, xs + list(j.tbox)))
        return RuleApplication("trans", "and", tuple(existentials), j, tuple(concls))
    return None


def _difference_witness(a_name: str, b_name: str) -> Concept:
    A, B = atom(a_name), atom(b_name)
    return disj(conj(A, neg(B)), conj(neg(A), B))


def _base_rule(j: BaseJudgement) -> Optional[RuleApplication]:
    # The judgement's tuples are already in canonical sorted order, so every
    # scan below visits candidates least-first without re-sorting.
    T, A, M = j.tbox, j.abox, j.mbox
    by_ind: Dict[str, set] = {}
    role_out: Dict[Tuple[str, str], list] = {}
    neqs = []
    individuals = set()
    for a in A:
        if type(a) is ConceptAssertion:
            by_ind.setdefault(a.individual, set()).add(a.concept)
            individuals.add(a.individual)
        elif type(a) is RoleAssertion:
            role_out.setdefault((a.role, a.subject), []).append(a)
            individuals.add(a.subject)
            individuals.add(a.object)
        else:
            neqs.append(a)
            individuals.add(a.left)
            individuals.add(a.right)
    mdom = list(dict.fromkeys(m.individual for m in M))
    concept_of = {}
    for m in M:
        concept_of.setdefault(m.individual, m.concept_name)

    # Bottom rules first.
    for a in A:
        if type(a) is ConceptAssertion:
            c = a.concept
            if c.tag == syntax.BOT:
                return RuleApplication("bot1", "or", (a,), j, (ABSURDITY,))
            if c.tag == syntax.ATOM and neg(c) in by_ind[a.individual]:
                other = ConceptAssertion(neg(c), a.individual)
                return RuleApplication("bot1", "or", (a, other), j, (ABSURDITY,))
            if c.tag == syntax.NOT and c.child in by_ind[a.individual]:
                other = ConceptAssertion(c.child, a.individual)
                return RuleApplication("bot1", "or", (other, a), j, (ABSURDITY,))
    for a in neqs:
        if a.left == a.right:
            return RuleApplication("bot2", "or", (a,), j, (ABSURDITY,))
    cycle = circular(A, M)
    if cycle is not None:
        return RuleApplication("bot3", "or", tuple(cycle), j, (ABSURDITY,))

    # Unary static rules.
    for a in A:
        if type(a) is ConceptAssertion and a.concept.tag == syntax.AND:
            c, x = a.concept, a.individual
            have = by_ind[x]
            if not (c.left in have and c.right in have):
                concl = make_base(T, set(A) | {ConceptAssertion(c.left, x),
                                               ConceptAssertion(c.right, x)}, M)
                return RuleApplication("and'", "or", (a,), j, (concl,))
    for a in A:
        if type(a) is ConceptAssertion and a.concept.tag == syntax.FORALL:
            c, x = a.concept, a.individual
            for r in role_out.get((c.role, x), ()):
                if c.child not in by_ind.get(r.object, ()):
                    concl = make_base(T, set(A) | {ConceptAssertion(c.child, r.object)}, M)
                    return RuleApplication("all", "or", (a, r), j, (concl,))
    for ind in mdom:
        axs = [m for m in M if m.individual == ind]
        if len(axs) >= 2:
            keep, drop = axs[0], axs[1]
            An, Bn = keep.concept_name, drop.concept_name
            tb_add = {disj(atom(An), neg(atom(Bn))), disj(atom(Bn), neg(atom(An)))}
            witness = conj(disj(atom(An), neg(atom(Bn))), disj(atom(Bn), neg(atom(An))))
            everyone = individuals | set(mdom)
            adds = {ConceptAssertion(witness, d) for d in everyone}
            concl = make_base(set(T) | tb_add, set(A) | adds, set(M) - {drop})
            return RuleApplication("eq", "or", (ind, An, Bn), j, (concl,))
    for a in neqs:
        if a.left in concept_of and a.right in concept_of:
            An, Bn = concept_of[a.left], concept_of[a.right]
            w = _difference_witness(An, Bn)
            if not any(w in cs for cs in by_ind.values()):
                nfresh = sum(1 for n in individuals if n.startswith(FRESH_PREFIX))
                d0 = f"{FRESH_PREFIX}{nfresh}"
                adds = {ConceptAssertion(w, d0)} | {ConceptAssertion(c, d0) for c in T}
                concl = make_base(T, set(A) | adds, M)
                return RuleApplication("neq", "or", (a, An, Bn), j, (concl,))

    # Branching static rules.
    for a in A:
        if type(a) is ConceptAssertion and a.concept.tag == syntax.OR:
            c, x = a.concept, a.individual
            have = by_ind[x]
            if c.left not in have and c.right not in have:
                left = make_base(T, set(A) | {ConceptAssertion(c.left, x)}, M)
                right = make_base(T, set(A) | {ConceptAssertion(c.right, x)}, M)
                return RuleApplication("or'", "or", (a,), j, (left, right))
    if len(mdom) > 1:
        neq_pairs = {(n.left, n.right) for n in neqs}
        srt = sorted(mdom)
        for i, a in enumerate(srt):
            for b in srt[i + 1:]:
                if (a, b) not in neq_pairs:
                    merged = make_base(T, substitute_abox(A, a, b),
                                       substitute_mbox(M, a, b))
                    separated = make_base(T, set(A) | {not_equal(a, b)}, M)
                    return RuleApplication("close", "or", (a, b), j,
                                           (merged, separated))

    # Transitional rule.
    existentials = [a for a in A
                    if type(a) is ConceptAssertion and a.concept.tag == syntax.EXISTS]
    if existentials:
        concls = []
        for e in existentials:
            c, x = e.concept, e.individual
            xs = [c.child] + [d.child for d in sorted(by_ind[x], key=lambda d: d.key)
                              if d.tag == syntax.FORALL and d.role == c.role]
            concls.append(make_variable(T, xs + list(T)))
        return RuleApplication("trans'", "and", tuple(existentials), j, tuple(concls))
    return None


def applicable_rule(j) -> Optional[RuleApplication]:
    """The unique rule application the strategy picks for a judgement.

    Priority runs bottom rules, then the remaining unary rules, then the
    branching rules, then the transitional rule; ties inside a class are
    broken by a fixed rule order and then by the least principal formula.
    Returns None exactly when the judgement is an end node.
    """
    if j is ABSURDITY:
        raise ValueError("absurdity is never expanded")
    if isinstance(j, VariableJudgement):
        return _variable_rule(j)
    return _base_rule(j)


# --------------------------------------------------------------------------
# Graph construction
# --------------------------------------------------------------------------

@dataclass
class AndOrGraph:
    nodes: Dict[object, int] = field(default_factory=dict)
    labels: List[object] = field(default_factory=list)
    kinds: List[str] = field(default_factory=list)  # "and" | "or" | "end" | "bot"
    edges: List[List[Tuple[int, object]]] = field(default_factory=list)
    rules: List[Optional[RuleApplication]] = field(default_factory=list)
    root: int = 0
    initial_merges: Dict[str, str] = field(default_factory=dict)

    def add(self, label) -> int:
        nid = self.nodes.get(label)
        if nid is None:
            nid = len(self.labels)
            self.nodes[label] = nid
            self.labels.append(label)
            self.kinds.append("bot" if label is ABSURDITY else "end")
            self.edges.append([])
            self.rules.append(None)
        return nid

    def children(self, nid: int) -> tuple:
        seen, out = set(), []
        for (c, _) in self.edges[nid]:
            if c not in seen:
                seen.add(c)
                out.append(c)
        return tuple(out)


def initialize_root(kb: KnowledgeBase):
    """Initial base judgement plus the equality-merge map it was built with.

    Equalities are merged away by union-find (least name wins); the Tbox, in
    NNF, is instantiated on every individual in sight.  An inequality that
    collapses to `a != a` is kept for the bottom rules to catch.
    """
    tbox_c = nnf_tbox(kb.tbox)
    abox_n = nnf_abox(kb.abox)
    names = sorted(abox_individuals(abox_n) | kb.mbox_dom())

    parent = {n: n for n in names}

    def find(n):
        while parent[n] != n:
            parent[n] = parent[parent[n]]
            n = parent[n]
        return n

    for a in sorted((x for x in abox_n if isinstance(x, Equal)), key=assertion_key):
        ra, rb = find(a.left), find(a.right)
        if ra != rb:
            keep, drop = (ra, rb) if ra < rb else (rb, ra)
            parent[drop] = keep

    rep = {n: find(n) for n in names}

    merged = set()
    for a in abox_n:
        if isinstance(a, Equal):
            continue
        if isinstance(a, ConceptAssertion):
            merged.add(ConceptAssertion(a.concept, rep[a.individual]))
        elif isinstance(a, RoleAssertion):
            merged.add(RoleAssertion(a.role, rep[a.subject], rep[a.object]))
        else:
            merged.add(not_equal(rep[a.left], rep[a.right]))
    mbox = frozenset(MboxAxiom(rep[m.individual], m.concept_name) for m in kb.mbox)

    # Every original individual's representative gets the Tbox, including
    # individuals that occurred only in (now merged-away) equalities.
    dom = sorted(set(rep.values()) | {m.individual for m in mbox})
    tbox_assertions = {ConceptAssertion(c, a) for c in tbox_c for a in dom}
    return make_base(tbox_c, merged | tbox_assertions, mbox), rep


def build_graph(kb: KnowledgeBase, node_budget: int = DEFAULT_NODE_BUDGET) -> AndOrGraph:
    """Expand the and-or graph to fixpoint under the global cache."""
    root, merges = initialize_root(kb)
    g = AndOrGraph(initial_merges=merges)
    g.root = g.add(root)
    queue = deque([g.root])
    while queue:
        v = queue.popleft()
        label = g.labels[v]
        ra = applicable_rule(label)
        if ra is None:
            g.kinds[v] = "end"
            continue
        g.rules[v] = ra
        g.kinds[v] = "and" if ra.connective == "and" else "or"
        transitional = ra.rule in ("trans", "trans'")
        for idx, concl in enumerate(ra.conclusions):
            known = concl in g.nodes
            cid = g.add(concl)
            if not known:
                if len(g.labels) > node_budget:
                    raise BudgetExceededError(
                        f"node budget ({node_budget}) exhausted")
                if concl is not ABSURDITY:
                    queue.append(cid)
            if transitional:
                p = ra.principal[idx]
                if isinstance(p, ConceptAssertion):
                    edge_label = (p.concept, p.individual)
                else:
                    edge_label = (p, None)
            else:
                edge_label = None
            g.edges[v].append((cid, edge_label))
    return g


# --------------------------------------------------------------------------
# Unsatisfiable-node fixpoint, markings, verdicts
# --------------------------------------------------------------------------

def _unsat_with_order(g: AndOrGraph):
    """Least fixpoint of unsat propagation, plus the order nodes entered it."""
    parents: List[set] = [set() for _ in g.labels]
    for u in range(len(g.labels)):
        for c in g.children(u):
            parents[c].add(u)
    entry: Dict[int, int] = {}
    try:
        seed = g.nodes[ABSURDITY]
    except KeyError:
        return set(), entry
    entry[seed] = 0
    queue = deque([seed])
    while queue:
        v = queue.popleft()
        for u in sorted(parents[v]):
            if u in entry:
                continue
            if g.kinds[u] == "or":
                if not all(c in entry for c in g.children(u)):
                    continue
            entry[u] = len(entry)
            queue.append(u)
    return set(entry), entry


def unsat_nodes(g: AndOrGraph) -> set:
    return _unsat_with_order(g)[0]


@dataclass
class Marking:
    """A consistent marking: all children of and-nodes, one child per or-node."""

    nodes: frozenset
    choice: Dict[int, int]


def consistent_marking(g: AndOrGraph, unsat: set) -> Marking:
    nodes, choice = set(), {}
    stack = [g.root]
    while stack:
        v = stack.pop()
        if v in nodes:
            continue
        nodes.add(v)
        if g.kinds[v] == "or":
            child = min(c for c in g.children(v) if c not in unsat)
            choice[v] = child
            stack.append(child)
        elif g.kinds[v] == "and":
            stack.extend(g.children(v))
    return Marking(frozenset(nodes), choice)


@dataclass(frozen=True)
class Certificate:
    kind: str  # "clash" | "self-inequality" | "circularity"
    detail: tuple

    def describe(self) -> str:
        if self.kind == "clash":
            return "clash: " + " / ".join(self.detail)
        if self.kind == "self-inequality":
            return f"self-inequality: {self.detail[0]} != {self.detail[0]}"
        chain = " -> ".join(self.detail + (self.detail[0],))
        return f"circularity: {chain}"


def _certificate(ra: RuleApplication) -> Certificate:
    if ra.rule == "bot3":
        return Certificate("circularity", tuple(ra.principal))
    if ra.rule == "bot2":
        return Certificate("self-inequality", (ra.principal[0].left,))
    if ra.rule == "bot1":
        return Certificate("clash", tuple(assertion_to_str(a) for a in ra.principal))
    return Certificate("clash", tuple(concept_to_str(c) for c in ra.principal))


_BOTTOM_PREFERENCE = {"bot3": 0, "bot2": 1, "bot1": 2, "bot": 3}


def _refutation_trace(g: AndOrGraph, unsat: set, entry: Dict[int, int]):
    """Deterministic root-to-absurdity walk through the unsat subgraph.

    At an or-node every child is unsatisfiable; the walk defers children
    that die immediately by a bottom rule, and when only those remain it
    prefers circularity over self-inequality over clash, so the reported
    certificate names the deepest obstacle rather than the first dead branch.
    """
    v = g.root
    trace = []
    last = None
    while g.labels[v] is not ABSURDITY:
        ra = g.rules[v]
        trace.append((v, ra.rule, ra.principal))
        last = ra
        kids = g.children(v)
        if g.kinds[v] == "or":
            bots = [c for c in kids if g.labels[c] is ABSURDITY]
            if bots:
                v = bots[0]
                continue
            deferred = [c for c in kids
                        if g.rules[c] is not None and g.rules[c].rule not in BOTTOM_RULES]
            if deferred:
                v = min(deferred)
            else:
                v = min(kids, key=lambda c: (_BOTTOM_PREFERENCE[g.rules[c].rule], c))
        else:  # and-node: follow the child that was refuted first
            v = min((c for c in kids if c in unsat), key=lambda c: entry[c])
    return trace, _certificate(last)


@dataclass
class Consistent:
    graph: Optional[AndOrGraph] = None
    marking: Optional[Marking] = None

    @property
    def consistent(self) -> bool:
        return True


@dataclass
class Inconsistent:
    graph: Optional[AndOrGraph] = None
    trace: Optional[list] = None
    certificate: Optional[Certificate] = None

    @property
    def consistent(self) -> bool:
        return False


def check_consistency(kb: KnowledgeBase, node_budget: int = DEFAULT_NODE_BUDGET):
    """Decide KB consistency; consistent verdicts carry a marking."""
    g = build_graph(kb, node_budget)
    unsat, entry = _unsat_with_order(g)
    if g.root not in unsat:
        return Consistent(graph=g, marking=consistent_marking(g, unsat))
    trace, cert = _refutation_trace(g, unsat, entry)
    return Inconsistent(graph=g, trace=trace, certificate=cert)


# --------------------------------------------------------------------------
# Trace formatting
# --------------------------------------------------------------------------

def _principal_to_str(ra: RuleApplication) -> str:
    parts = []
    for p in ra.principal:
        if isinstance(p, Concept):
            parts.append(concept_to_str(p))
        elif isinstance(p, (ConceptAssertion, RoleAssertion, NotEqual, Equal)):
            parts.append(assertion_to_str(p))
        else:
            parts.append(str(p))
    return " | ".join(parts) if parts else "-"


def format_trace(g: AndOrGraph, verdict) -> str:
    """One line per expansion plus a final verdict line; stable across runs."""
    lines = []
    for nid, ra in enumerate(g.rules):
        if ra is None:
            continue
        kids = " ".join(str(c) for c, _ in g.edges[nid])
        lines.append(f"{nid} {g.kinds[nid]} {ra.rule} {_principal_to_str(ra)} -> {kids}")
    lines.append("verdict " + ("consistent" if verdict.consistent else "inconsistent"))
    return "\n".join(lines) + "\n"
