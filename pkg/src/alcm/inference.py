"""Entailment services, each reduced to a consistency check."""

from __future__ import annotations

from .engine import DEFAULT_NODE_BUDGET, check_consistency
from .errors import UnknownNameError
from .syntax import (
    Concept,
    ConceptAssertion,
    KnowledgeBase,
    MboxAxiom,
    conj,
    equal,
    neg,
    nnf,
    not_equal,
)

QUERY_FRESH = "q#0"  # reserved name, unreachable from the input grammar


def _require_individual(kb: KnowledgeBase, name: str) -> None:
    if name not in kb.individuals():
        raise UnknownNameError(f"individual {name!r} does not occur in the KB")


def entails_instance(kb: KnowledgeBase, c: Concept, a: str,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """K entails C(a): adding (not C)(a) makes the KB inconsistent."""
    _require_individual(kb, a)
    extended = kb.extended(abox=[ConceptAssertion(nnf(neg(c)), a)])
    return not check_consistency(extended, node_budget).consistent


def entails_subsumption(kb: KnowledgeBase, c: Concept, d: Concept,
                        node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """K entails C subclassof D: a fresh individual in C and not D clashes."""
    extended = kb.extended(abox=[ConceptAssertion(nnf(conj(c, neg(d))), QUERY_FRESH)])
    return not check_consistency(extended, node_budget).consistent


def entails_equality(kb: KnowledgeBase, a: str, b: str,
                     node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    _require_individual(kb, a)
    _require_individual(kb, b)
    extended = kb.extended(abox=[not_equal(a, b)])
    return not check_consistency(extended, node_budget).consistent


def entails_inequality(kb: KnowledgeBase, a: str, b: str,
                       node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    _require_individual(kb, a)
    _require_individual(kb, b)
    extended = kb.extended(abox=[equal(a, b)])
    return not check_consistency(extended, node_budget).consistent


def entails_metamodelling(kb: KnowledgeBase, a: str, concept_name: str,
                          node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """K entails a =m A: forcing a fresh b with b =m A and a != b clashes."""
    _require_individual(kb, a)
    extended = kb.extended(abox=[not_equal(a, QUERY_FRESH)],
                           mbox=[MboxAxiom(QUERY_FRESH, concept_name)])
    return not check_consistency(extended, node_budget).consistent


def is_meta_concept(kb: KnowledgeBase, c: Concept,
                    node_budget: int = DEFAULT_NODE_BUDGET) -> bool:
    """Some entailed member of C is itself meta-modelled onto a concept."""
    candidates = sorted(kb.mbox_range())
    if not candidates:
        return False
    for a in kb.individuals():
        if not entails_instance(kb, c, a, node_budget):
            continue
        for concept_name in candidates:
            if entails_metamodelling(kb, a, concept_name, node_budget):
                return True
    return False
