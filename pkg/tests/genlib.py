"""Seeded random generators shared by the property suites."""

from __future__ import annotations

import random

from locmod import (
    And,
    AtLeast,
    AtMost,
    Axiom,
    BOTTOM,
    Concept,
    ConceptName,
    Domain,
    EquivalentClasses,
    EquivalentRoles,
    Exists,
    ForAll,
    Interpretation,
    Inverse,
    InverseRoles,
    Not,
    OneOf,
    Ontology,
    Or,
    Range,
    Role,
    RoleName,
    Signature,
    SubClassOf,
    SubRoleOf,
    TOP,
    Transitive,
)

CONCEPTS = ("A", "B", "C")
ROLES = ("r", "s")
INDIVIDUALS = ("i",)


def random_role(rng: random.Random, roles=ROLES) -> Role:
    r: Role = RoleName(rng.choice(roles))
    if rng.random() < 0.25:
        r = Inverse(r)
    return r


def random_concept(
    rng: random.Random,
    depth: int = 3,
    concepts=CONCEPTS,
    roles=ROLES,
    individuals=INDIVIDUALS,
) -> Concept:
    if depth == 0 or rng.random() < 0.3:
        kind = rng.randrange(6)
        if kind == 0:
            return TOP
        if kind == 1:
            return BOTTOM
        if kind == 5 and individuals:
            return OneOf(rng.choice(individuals))
        return ConceptName(rng.choice(concepts))

    def sub():
        return random_concept(rng, depth - 1, concepts, roles, individuals)

    kind = rng.randrange(7)
    if kind == 0:
        return Not(sub())
    if kind == 1:
        return And((sub(), sub()))
    if kind == 2:
        return Or((sub(), sub()))
    if kind == 3:
        return Exists(random_role(rng, roles), sub())
    if kind == 4:
        return ForAll(random_role(rng, roles), sub())
    if kind == 5:
        return AtLeast(rng.randrange(4), random_role(rng, roles), sub())
    return AtMost(rng.randrange(4), random_role(rng, roles), sub())


def random_axiom(
    rng: random.Random,
    depth: int = 3,
    concepts=CONCEPTS,
    roles=ROLES,
    individuals=INDIVIDUALS,
) -> Axiom:
    def c():
        return random_concept(rng, depth, concepts, roles, individuals)

    def r():
        return random_role(rng, roles)

    kind = rng.randrange(12)
    if kind < 4:
        return SubClassOf(c(), c())
    if kind < 6:
        return EquivalentClasses(c(), c())
    if kind == 6:
        return SubRoleOf(r(), r())
    if kind == 7:
        return EquivalentRoles(r(), r())
    if kind == 8:
        return InverseRoles(r(), r())
    if kind == 9:
        return Transitive(r())
    if kind == 10:
        return Domain(r(), c())
    return Range(r(), c())


def random_signature(
    rng: random.Random,
    p: float = 0.5,
    concepts=CONCEPTS,
    roles=ROLES,
) -> Signature:
    return Signature(
        frozenset(a for a in concepts if rng.random() < p),
        frozenset(a for a in roles if rng.random() < p),
    )


def random_interpretation(
    rng: random.Random,
    size: int,
    concepts=CONCEPTS,
    roles=ROLES,
    individuals=INDIVIDUALS,
) -> Interpretation:
    dom = range(size)
    return Interpretation(
        domain_size=size,
        concept_ext={
            a: frozenset(x for x in dom if rng.random() < 0.5) for a in concepts
        },
        role_ext={
            r: frozenset(
                (x, y) for x in dom for y in dom if rng.random() < 0.4
            )
            for r in roles
        },
        individual_ext={m: rng.randrange(size) for m in individuals},
    )


def synthetic_ontology(
    axiom_count: int,
    seed: int = 0,
    concept_count: int | None = None,
    role_count: int | None = None,
) -> Ontology:
    """A deterministic desk-scale ontology: a subclass backbone plus
    existential links, domains/ranges, and a sprinkle of definitions."""
    rng = random.Random(seed)
    concept_count = concept_count or max(axiom_count // 4, 8)
    role_count = role_count or max(axiom_count // 200, 4)
    cn = [f"C{i:05d}" for i in range(concept_count)]
    rn = [f"r{i:03d}" for i in range(role_count)]
    axioms: dict[Axiom, None] = {}
    i = 0
    while len(axioms) < axiom_count:
        pick = rng.random()
        a = ConceptName(cn[i % concept_count])
        b = ConceptName(cn[rng.randrange(concept_count)])
        role = RoleName(rn[rng.randrange(role_count)])
        if pick < 0.55:
            axioms[SubClassOf(a, b)] = None
        elif pick < 0.80:
            axioms[SubClassOf(a, Exists(role, b))] = None
        elif pick < 0.88:
            axioms[Domain(role, b)] = None
        elif pick < 0.94:
            axioms[Range(role, b)] = None
        elif pick < 0.98:
            c = ConceptName(cn[rng.randrange(concept_count)])
            axioms[EquivalentClasses(a, And((b, Exists(role, c))))] = None
        else:
            axioms[SubClassOf(a, ForAll(role, b))] = None
        i += 1
    return Ontology(tuple(axioms), name=f"synthetic-{axiom_count}")
