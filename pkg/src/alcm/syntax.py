"""Term language for ALCM knowledge bases.

Concepts are hash-consed: constructing the same shape twice returns the same
object, so structural equality is identity and concepts can be used freely as
dict keys.  Every concept carries a precomputed structural sort key; that
fixed total order is what makes judgement labels, rule choices and printed
output deterministic across runs.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Union

# Concept variant tags, in sort-key order.
TOP, BOT, ATOM, NOT, AND, OR, EXISTS, FORALL = range(8)


class Concept:
    """One node of the interned concept DAG.  Use the module constructors."""

    __slots__ = ("tag", "name", "role", "left", "right", "child", "key")

    def __init__(self, tag, name, role, left, right, child, key):
        self.tag = tag
        self.name = name
        self.role = role
        self.left = left
        self.right = right
        self.child = child
        self.key = key

    def __lt__(self, other: "Concept") -> bool:
        return self.key < other.key

    def __str__(self) -> str:
        return concept_to_str(self)

    def __repr__(self) -> str:
        return f"<{concept_to_str(self)}>"


_table: dict = {}
_table_lock = threading.Lock()


def _sort_key(tag, name, role, left, right, child):
    if tag in (TOP, BOT):
        return (tag,)
    if tag == ATOM:
        return (tag, name)
    if tag == NOT:
        return (tag, child.key)
    if tag in (AND, OR):
        return (tag, left.key, right.key)
    return (tag, role, child.key)


def _intern(tag, name=None, role=None, left=None, right=None, child=None) -> Concept:
    k = (tag, name, role, left, right, child)
    c = _table.get(k)
    if c is None:
        made = Concept(tag, name, role, left, right, child,
                       _sort_key(tag, name, role, left, right, child))
        # Concurrent reads are lock-free; inserts are serialized.
        with _table_lock:
            c = _table.setdefault(k, made)
    return c


def top() -> Concept:
    return _intern(TOP)


def bot() -> Concept:
    return _intern(BOT)


def atom(name: str) -> Concept:
    return _intern(ATOM, name=name)


def neg(c: Concept) -> Concept:
    return _intern(NOT, child=c)


def conj(left: Concept, right: Concept) -> Concept:
    return _intern(AND, left=left, right=right)


def disj(left: Concept, right: Concept) -> Concept:
    return _intern(OR, left=left, right=right)


def exists(role: str, c: Concept) -> Concept:
    return _intern(EXISTS, role=role, child=c)


def forall(role: str, c: Concept) -> Concept:
    return _intern(FORALL, role=role, child=c)


def _conj_simplified(l: Concept, r: Concept) -> Concept:
    # Constant folding: drop top conjuncts, absorb bottom.
    if l.tag == TOP:
        return r
    if r.tag == TOP:
        return l
    if l.tag == BOT or r.tag == BOT:
        return bot()
    return conj(l, r)


def _disj_simplified(l: Concept, r: Concept) -> Concept:
    if l.tag == BOT:
        return r
    if r.tag == BOT:
        return l
    if l.tag == TOP or r.tag == TOP:
        return top()
    return disj(l, r)


def nnf(c: Concept) -> Concept:
    """Negation normal form with constant folding.

    Negation ends up applied to atoms only (never to top/bot), and top/bot
    never survive as operands of a binary connective.
    """
    t = c.tag
    if t in (TOP, BOT, ATOM):
        return c
    if t == AND:
        return _conj_simplified(nnf(c.left), nnf(c.right))
    if t == OR:
        return _disj_simplified(nnf(c.left), nnf(c.right))
    if t == EXISTS:
        return exists(c.role, nnf(c.child))
    if t == FORALL:
        return forall(c.role, nnf(c.child))
    d = c.child  # t == NOT
    if d.tag == ATOM:
        return c
    if d.tag == TOP:
        return bot()
    if d.tag == BOT:
        return top()
    if d.tag == NOT:
        return nnf(d.child)
    if d.tag == AND:
        return _disj_simplified(nnf(neg(d.left)), nnf(neg(d.right)))
    if d.tag == OR:
        return _conj_simplified(nnf(neg(d.left)), nnf(neg(d.right)))
    if d.tag == EXISTS:
        return forall(d.role, nnf(neg(d.child)))
    return exists(d.role, nnf(neg(d.child)))  # d.tag == FORALL


def subconcepts(c: Concept) -> frozenset:
    """Syntactic subconcept closure (the concept itself included)."""
    out = set()
    stack = [c]
    while stack:
        d = stack.pop()
        if d in out:
            continue
        out.add(d)
        if d.tag == NOT:
            stack.append(d.child)
        elif d.tag in (AND, OR):
            stack.append(d.left)
            stack.append(d.right)
        elif d.tag in (EXISTS, FORALL):
            stack.append(d.child)
    return frozenset(out)


# --------------------------------------------------------------------------
# Axioms and assertions
# --------------------------------------------------------------------------

# Axiom and assertion records are frozen dataclasses rather than tuples so
# that equality is class-aware: a = b and a != b over the same pair must
# remain distinct set members.

@dataclass(frozen=True)
class Subsumption:
    lhs: Concept
    rhs: Concept


@dataclass(frozen=True)
class Equivalence:
    lhs: Concept
    rhs: Concept


TboxAxiom = Union[Subsumption, Equivalence]


@dataclass(frozen=True)
class ConceptAssertion:
    concept: Concept
    individual: str


@dataclass(frozen=True)
class RoleAssertion:
    role: str
    subject: str
    object: str


@dataclass(frozen=True)
class Equal:
    """Individual equality.  Build with equal() so the pair is sorted."""

    left: str
    right: str


@dataclass(frozen=True)
class NotEqual:
    """Individual inequality.  Build with not_equal() so the pair is sorted."""

    left: str
    right: str


def equal(a: str, b: str) -> Equal:
    return Equal(a, b) if a <= b else Equal(b, a)


def not_equal(a: str, b: str) -> NotEqual:
    return NotEqual(a, b) if a <= b else NotEqual(b, a)


AboxAssertion = Union[ConceptAssertion, RoleAssertion, Equal, NotEqual]


@dataclass(frozen=True, order=True)
class MboxAxiom:
    individual: str
    concept_name: str  # always an atomic concept name


def tbox_axiom_key(ax: TboxAxiom):
    return (0 if isinstance(ax, Subsumption) else 1, ax.lhs.key, ax.rhs.key)


def assertion_key(a: AboxAssertion):
    if isinstance(a, ConceptAssertion):
        return (0, a.concept.key, a.individual)
    if isinstance(a, RoleAssertion):
        return (1, a.role, a.subject, a.object)
    if isinstance(a, Equal):
        return (2, a.left, a.right)
    return (3, a.left, a.right)


def assertion_individuals(a: AboxAssertion) -> tuple:
    if isinstance(a, ConceptAssertion):
        return (a.individual,)
    if isinstance(a, RoleAssertion):
        return (a.subject, a.object)
    return (a.left, a.right)


def abox_individuals(abox: Iterable[AboxAssertion]) -> set:
    out = set()
    for a in abox:
        out.update(assertion_individuals(a))
    return out


@dataclass(frozen=True)
class KnowledgeBase:
    """A Tbox/Abox/Mbox triple over the interned name and concept pools."""

    tbox: frozenset = field(default_factory=frozenset)
    abox: frozenset = field(default_factory=frozenset)
    mbox: frozenset = field(default_factory=frozenset)

    @classmethod
    def of(cls, tbox=(), abox=(), mbox=()) -> "KnowledgeBase":
        return cls(frozenset(tbox), frozenset(abox), frozenset(mbox))

    def extended(self, tbox=(), abox=(), mbox=()) -> "KnowledgeBase":
        return KnowledgeBase(self.tbox | frozenset(tbox),
                             self.abox | frozenset(abox),
                             self.mbox | frozenset(mbox))

    def individuals(self) -> tuple:
        return tuple(sorted(abox_individuals(self.abox) | self.mbox_dom()))

    def mbox_dom(self) -> set:
        return {m.individual for m in self.mbox}

    def mbox_range(self) -> set:
        return {m.concept_name for m in self.mbox}


def nnf_tbox(tbox: Iterable[TboxAxiom]) -> frozenset:
    """Compile Tbox axioms to NNF concepts, each read as 'holds everywhere'.

    An equivalence contributes both subsumption directions.
    """
    out = set()
    for ax in tbox:
        out.add(nnf(disj(neg(ax.lhs), ax.rhs)))
        if isinstance(ax, Equivalence):
            out.add(nnf(disj(neg(ax.rhs), ax.lhs)))
    return frozenset(out)


def nnf_abox(abox: Iterable[AboxAssertion]) -> frozenset:
    out = set()
    for a in abox:
        if isinstance(a, ConceptAssertion):
            out.add(ConceptAssertion(nnf(a.concept), a.individual))
        else:
            out.add(a)
    return frozenset(out)


def substitute_abox(abox: Iterable[AboxAssertion], keep: str, drop: str) -> frozenset:
    """Replace every occurrence of `drop` by `keep`; result is deduplicated."""
    def s(n):
        return keep if n == drop else n

    out = set()
    for a in abox:
        if isinstance(a, ConceptAssertion):
            out.add(ConceptAssertion(a.concept, s(a.individual)))
        elif isinstance(a, RoleAssertion):
            out.add(RoleAssertion(a.role, s(a.subject), s(a.object)))
        elif isinstance(a, Equal):
            out.add(equal(s(a.left), s(a.right)))
        else:
            out.add(not_equal(s(a.left), s(a.right)))
    return frozenset(out)


def substitute_mbox(mbox: Iterable[MboxAxiom], keep: str, drop: str) -> frozenset:
    return frozenset(MboxAxiom(keep if m.individual == drop else m.individual,
                               m.concept_name)
                     for m in mbox)


# --------------------------------------------------------------------------
# Printing (shared by the pretty-printer, traces and error messages)
# --------------------------------------------------------------------------

# Precedence levels used for minimal parenthesisation: or < and < unary.
_LVL_OR, _LVL_AND, _LVL_UN, _LVL_ATOM = 1, 2, 3, 4


def concept_to_str(c: Concept) -> str:
    return _cs(c, 0)


def _cs(c: Concept, min_level: int) -> str:
    if c.tag == TOP:
        s, lvl = "top", _LVL_ATOM
    elif c.tag == BOT:
        s, lvl = "bot", _LVL_ATOM
    elif c.tag == ATOM:
        s, lvl = c.name, _LVL_ATOM
    elif c.tag == NOT:
        s, lvl = "not " + _cs(c.child, _LVL_UN), _LVL_UN
    elif c.tag == EXISTS:
        s, lvl = f"exists {c.role} . " + _cs(c.child, _LVL_UN), _LVL_UN
    elif c.tag == FORALL:
        s, lvl = f"forall {c.role} . " + _cs(c.child, _LVL_UN), _LVL_UN
    elif c.tag == AND:
        # Left-associative: the right operand needs the tighter level.
        s, lvl = _cs(c.left, _LVL_AND) + " and " + _cs(c.right, _LVL_UN), _LVL_AND
    else:
        s, lvl = _cs(c.left, _LVL_OR) + " or " + _cs(c.right, _LVL_AND), _LVL_OR
    if lvl < min_level:
        return "(" + s + ")"
    return s


def assertion_to_str(a: AboxAssertion) -> str:
    if isinstance(a, ConceptAssertion):
        return f"{concept_to_str(a.concept)}({a.individual})"
    if isinstance(a, RoleAssertion):
        return f"{a.role}({a.subject}, {a.object})"
    if isinstance(a, Equal):
        return f"{a.left} = {a.right}"
    return f"{a.left} != {a.right}"


def tbox_axiom_to_str(ax: TboxAxiom) -> str:
    word = "subclassof" if isinstance(ax, Subsumption) else "equiv"
    return f"{concept_to_str(ax.lhs)} {word} {concept_to_str(ax.rhs)}"


def mbox_axiom_to_str(m: MboxAxiom) -> str:
    return f"{m.individual} =m {m.concept_name}"
