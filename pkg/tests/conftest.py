"""Shared fixtures: worked example KBs and judgement-to-KB conversion."""

import pytest

from alcm.engine import BaseJudgement, VariableJudgement
from alcm.parser import parse_kb
from alcm.syntax import ConceptAssertion, KnowledgeBase, Subsumption, top

HYDRO_TEXT = """
tbox { River and Lake subclassof bot; }
abox {
  HydrographicObject(river); HydrographicObject(lake);
  River(queguay); River(santaLucia);
  Lake(deRocha); Lake(delSauce);
}
mbox { river =m River; lake =m Lake; }
"""

HYDRO_INDIVIDUALS = ("deRocha", "delSauce", "lake", "queguay", "river", "santaLucia")

# The graph-walkthrough KB: one global existential, one R-successor
# constraint, and two meta-modelled individuals.
EXAMPLE_GRAPH_TEXT = """
tbox { top subclassof exists S . A; }
abox { (exists R . A)(d); (forall R . not B)(d); }
mbox { a =m A; b =m B; }
"""


@pytest.fixture(scope="session")
def hydro_kb():
    return parse_kb(HYDRO_TEXT)


@pytest.fixture(scope="session")
def hydro_circular_kb():
    return parse_kb(HYDRO_TEXT + "tbox { HydrographicObject subclassof River; }")


@pytest.fixture(scope="session")
def hydro_merged_kb():
    return parse_kb(HYDRO_TEXT + "abox { river = lake; }")


@pytest.fixture(scope="session")
def example_graph_kb():
    return parse_kb(EXAMPLE_GRAPH_TEXT)


def judgement_to_kb(j) -> KnowledgeBase:
    """Read a judgement back as a standalone KB (for the oracle to referee).

    A Tbox concept C stands for 'C holds everywhere', i.e. top subclassof C;
    a variable judgement's concept set is asserted of one fresh individual.
    """
    tbox = {Subsumption(top(), c) for c in j.tbox}
    if isinstance(j, BaseJudgement):
        return KnowledgeBase.of(tbox, j.abox, j.mbox)
    assert isinstance(j, VariableJudgement)
    abox = {ConceptAssertion(c, "x0") for c in j.concepts}
    return KnowledgeBase.of(tbox, abox, ())
