"""Entailment queries over a meta-modelled KB: instances, subsumptions,
meta-modelling, meta-concepts, and equality transfer between the individual
and concept levels.

Run with:  python3 demos/metamodelling_queries.py
"""

from alcm.inference import (
    entails_equality,
    entails_inequality,
    entails_instance,
    entails_metamodelling,
    entails_subsumption,
    is_meta_concept,
)
from alcm.parser import parse_concept, parse_kb

HYDRO = parse_kb("""
tbox { River and Lake subclassof bot; }
abox {
  HydrographicObject(river); HydrographicObject(lake);
  River(queguay); River(santaLucia);
  Lake(deRocha); Lake(delSauce);
}
mbox { river =m River; lake =m Lake; }
""")


def show(question, answer):
    print(f"  {question:<46} {'yes' if answer else 'no'}")


def main():
    print("classic entailments:")
    show("River(queguay)?", entails_instance(HYDRO, parse_concept("River"), "queguay"))
    show("Lake(queguay)?", entails_instance(HYDRO, parse_concept("Lake"), "queguay"))
    show("River sub not Lake?",
         entails_subsumption(HYDRO, parse_concept("River"), parse_concept("not Lake")))

    print("\nmeta-modelling entailments:")
    show("river =m River?", entails_metamodelling(HYDRO, "river", "River"))
    show("queguay =m River?", entails_metamodelling(HYDRO, "queguay", "River"))

    print("\nmeta-concepts (concepts with a member that is itself a concept):")
    show("HydrographicObject?", is_meta_concept(HYDRO, parse_concept("HydrographicObject")))
    show("River?", is_meta_concept(HYDRO, parse_concept("River")))

    # Equality between meta-modelled individuals is the same thing as
    # equality between their concepts, and disjointness forces difference.
    print("\nequality transfer between levels:")
    show("river != lake entailed?", entails_inequality(HYDRO, "river", "lake"))
    show("river = lake entailed?", entails_equality(HYDRO, "river", "lake"))

    # Force the concepts equal and the individuals follow.
    forced = parse_kb("""
        tbox { A equiv B; }
        abox { A(c); }
        mbox { a =m A; b =m B; }
    """)
    show("a = b once A equiv B?", entails_equality(forced, "a", "b"))


if __name__ == "__main__":
    main()
