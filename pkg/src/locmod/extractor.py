"""Locality-based module extraction.

A module for a seed signature Σ is the fixpoint of: move any axiom that is
not local w.r.t. Σ ∪ Sig(M) from the ontology into M, until a full pass
changes nothing. The result is independent of the order in which axioms
are examined. Nested extraction alternates two flavors once; star
extraction repeats the nested step until the module stops shrinking.

Instead of rescanning the whole ontology after every signature growth, the
extractor keeps a name-to-axioms index and rechecks only the axioms that
mention newly added names. A locality verdict depends only on the overlap
between the signature and the axiom's own names, so this is observationally
equal to the naive rescan (`naive=True` runs the textbook loop for
differential testing).
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from .model import (
    Axiom,
    LocalityFlavor,
    Ontology,
    Signature,
    signature_of,
)
from .semantic import Locality, is_semantically_local
from .syntactic import is_syntactically_local
from .tableau import Budget

__all__ = [
    "ModuleResult",
    "extract_module",
    "extract_nested",
    "extract_star",
    "genuine_modules",
]

FlavorPair = tuple[LocalityFlavor, LocalityFlavor]

SYN_STAR: FlavorPair = (LocalityFlavor.SYN_TOP, LocalityFlavor.SYN_BOT)
SEM_STAR: FlavorPair = (LocalityFlavor.SEM_TOP, LocalityFlavor.SEM_BOT)


@dataclass(frozen=True)
class ModuleResult:
    """Outcome of one extraction.

    `extended_signature` is the seed joined with the signature of the
    module; every axiom left outside is local w.r.t. it (axioms whose
    semantic verdict was Unknown were pulled in conservatively and are
    tallied in `unknown_verdicts`). `rounds` counts signature-growth
    passes for a plain extraction and nested iterations for a star
    extraction.
    """

    module: Ontology
    seed_signature: Signature
    extended_signature: Signature
    flavor: LocalityFlavor | FlavorPair
    rounds: int
    locality_checks: int
    wall_time: float
    unknown_verdicts: int


class _Checker:
    """Locality test dispatch with check/unknown counters."""

    def __init__(self, flavor: LocalityFlavor, refined: bool, budget: Budget | None):
        self.flavor = flavor
        self.refined = refined
        self.budget = budget
        self.checks = 0
        self.unknowns = 0

    def is_local(self, axiom: Axiom, sig: Signature) -> bool:
        self.checks += 1
        if self.flavor.is_syntactic:
            return is_syntactically_local(axiom, sig, self.flavor, self.refined)
        verdict = is_semantically_local(axiom, sig, self.flavor, self.budget)
        if verdict.status is Locality.UNKNOWN:
            self.unknowns += 1
            return False
        return verdict.is_local


def extract_module(
    o: Ontology,
    sig: Signature,
    flavor: LocalityFlavor,
    *,
    refined: bool = False,
    budget: Budget | None = None,
    naive: bool = False,
    trace: list | None = None,
) -> ModuleResult:
    """Extract the locality-based module of `o` for the seed `sig`.

    With `trace` given, appends one `(round, added_axioms)` tuple per
    signature-growth pass.
    """
    started = time.perf_counter()
    checker = _Checker(flavor, refined, budget)
    axioms = o.axioms
    sigs = [signature_of(a) for a in axioms]
    in_module = [False] * len(axioms)
    working = sig

    if naive:
        rounds = 0
        changed = True
        while changed:
            changed = False
            added: list[int] = []
            for i, a in enumerate(axioms):
                if in_module[i]:
                    continue
                if not checker.is_local(a, working):
                    in_module[i] = True
                    working = working | sigs[i]
                    added.append(i)
                    changed = True
            if added:
                rounds += 1
                if trace is not None:
                    trace.append((rounds, [axioms[i] for i in added]))
    else:
        index: dict[str, list[int]] = {}
        for i, s in enumerate(sigs):
            for name in s.concept_names | s.role_names:
                index.setdefault(name, []).append(i)
        rounds = 0
        dirty = list(range(len(axioms)))
        while dirty:
            added = []
            new_names: set[str] = set()
            for i in dirty:
                if in_module[i]:
                    continue
                if not checker.is_local(axioms[i], working):
                    in_module[i] = True
                    s = sigs[i]
                    fresh = (s.concept_names | s.role_names) - (
                        working.concept_names | working.role_names
                    )
                    new_names |= fresh
                    working = working | s
                    added.append(i)
            if added:
                rounds += 1
                if trace is not None:
                    trace.append((rounds, [axioms[i] for i in added]))
            seen: set[int] = set()
            dirty = []
            for name in sorted(new_names):
                for j in index.get(name, ()):
                    if not in_module[j] and j not in seen:
                        seen.add(j)
                        dirty.append(j)
            dirty.sort()

    module = Ontology(
        tuple(a for i, a in enumerate(axioms) if in_module[i]),
        name=o.name,
    )
    return ModuleResult(
        module=module,
        seed_signature=sig,
        extended_signature=working,
        flavor=flavor,
        rounds=rounds,
        locality_checks=checker.checks,
        wall_time=time.perf_counter() - started,
        unknown_verdicts=checker.unknowns,
    )


def extract_nested(
    o: Ontology,
    sig: Signature,
    pair: FlavorPair = SYN_STAR,
    **options,
) -> ModuleResult:
    """Nested extraction: inner pass with the second flavor of `pair`,
    outer pass with the first, both against the same seed."""
    first, second = pair
    started = time.perf_counter()
    inner = extract_module(o, sig, second, **options)
    outer = extract_module(inner.module, sig, first, **options)
    return ModuleResult(
        module=outer.module,
        seed_signature=sig,
        extended_signature=sig | signature_of(outer.module),
        flavor=pair,
        rounds=inner.rounds + outer.rounds,
        locality_checks=inner.locality_checks + outer.locality_checks,
        wall_time=time.perf_counter() - started,
        unknown_verdicts=inner.unknown_verdicts + outer.unknown_verdicts,
    )


def extract_star(
    o: Ontology,
    sig: Signature,
    pair: FlavorPair = SYN_STAR,
    **options,
) -> ModuleResult:
    """Iterate nested extraction from the full ontology until the module
    reaches a fixpoint. `rounds` is the smallest n with Mₙ = Mₙ₊₁; the
    chain strictly shrinks until then."""
    started = time.perf_counter()
    checks = 0
    unknowns = 0
    rounds = 0
    current = o
    while True:
        step = extract_nested(current, sig, pair, **options)
        checks += step.locality_checks
        unknowns += step.unknown_verdicts
        if len(step.module) == len(current):
            break
        current = step.module
        rounds += 1
    return ModuleResult(
        module=current,
        seed_signature=sig,
        extended_signature=sig | signature_of(current),
        flavor=pair,
        rounds=rounds,
        locality_checks=checks,
        wall_time=time.perf_counter() - started,
        unknown_verdicts=unknowns,
    )


def genuine_modules(
    o: Ontology,
    flavor: LocalityFlavor,
    **options,
) -> list[tuple[Axiom, ModuleResult]]:
    """Modules seeded by single-axiom signatures, deduplicated by module
    content. At most one entry per distinct module survives (keyed by the
    first axiom, in ontology order, that produces it); the result is
    therefore at most linear in the ontology."""
    seen: dict[frozenset[Axiom], None] = {}
    out: list[tuple[Axiom, ModuleResult]] = []
    for axiom in o.axioms:
        result = extract_module(o, signature_of(axiom), flavor, **options)
        key = frozenset(result.module.axioms)
        if key in seen:
            continue
        seen[key] = None
        out.append((axiom, result))
    return out
