"""Syntactic bottom-/top-locality via the Bot(Σ)/Top(Σ) grammars.

A concept is classified into Bot(Σ) when the substitution that sends
non-Σ names to the empty set (bottom flavor) or the full domain (top
flavor) forces it to be equivalent to ⊥, and into Top(Σ) when it is
forced to ⊤. Axioms are local when that classification alone makes them
valid. The classification is a sufficient condition: every production is
sound for the corresponding semantic notion, but a concept may be
`NEITHER` and still collapse semantically (the price of staying
polynomial).
"""

from __future__ import annotations

from enum import Enum

from .model import (
    And,
    AtLeast,
    AtMost,
    Axiom,
    BottomType,
    Concept,
    ConceptName,
    EmptyRoleType,
    EquivalentClasses,
    EquivalentRoles,
    Exists,
    ForAll,
    Inverse,
    InverseRoles,
    LocalityFlavor,
    Not,
    OneOf,
    Or,
    Role,
    Signature,
    SubClassOf,
    SubRoleOf,
    TopType,
    Transitive,
    UniversalRoleType,
    normalize_axiom,
    normalize_role,
    role_name_of,
)

__all__ = ["SyntacticClass", "classify_concept", "is_syntactically_local"]


class SyntacticClass(Enum):
    IN_BOT = "bot"
    IN_TOP = "top"
    NEITHER = "neither"


def _check_syntactic(flavor: LocalityFlavor):
    if not flavor.is_syntactic:
        raise ValueError(f"expected a syntactic flavor, got {flavor}")


def _role_outside(r: Role, sig: Signature) -> bool:
    """True when the underlying role name is not in the signature.

    Inversion is transparent: inv(P) is outside Σ exactly when P is. The
    substitution constants must not reach the syntactic checker.
    """
    if isinstance(r, (EmptyRoleType, UniversalRoleType)) or (
        isinstance(r, Inverse) and isinstance(r.role, (EmptyRoleType, UniversalRoleType))
    ):
        raise ValueError("substituted role constants have no syntactic classification")
    name = role_name_of(r)
    return name not in sig.role_names


def classify_concept(
    c: Concept, sig: Signature, flavor: LocalityFlavor, _cache: dict | None = None
) -> SyntacticClass:
    """Classify `c` as IN_BOT, IN_TOP, or NEITHER for the given flavor.

    Single recursive pass, memoized per sub-expression (the signature is
    fixed for the duration of one call).
    """
    _check_syntactic(flavor)
    if _cache is None:
        _cache = {}
    return _classify(c, sig, flavor is LocalityFlavor.SYN_BOT, _cache)


def _classify(c, sig, bot_flavor, cache) -> SyntacticClass:
    hit = cache.get(c)
    if hit is not None:
        return hit
    cls = _classify_uncached(c, sig, bot_flavor, cache)
    cache[c] = cls
    return cls


def _classify_uncached(c, sig, bot_flavor, cache) -> SyntacticClass:
    if isinstance(c, BottomType):
        return SyntacticClass.IN_BOT
    if isinstance(c, TopType):
        return SyntacticClass.IN_TOP
    if isinstance(c, ConceptName):
        if c.name in sig.concept_names:
            return SyntacticClass.NEITHER
        return SyntacticClass.IN_BOT if bot_flavor else SyntacticClass.IN_TOP
    if isinstance(c, OneOf):
        # A nominal denotes a nonempty singleton whatever the signature.
        return SyntacticClass.NEITHER
    if isinstance(c, Not):
        sub = _classify(c.arg, sig, bot_flavor, cache)
        if sub is SyntacticClass.IN_TOP:
            return SyntacticClass.IN_BOT
        if sub is SyntacticClass.IN_BOT:
            return SyntacticClass.IN_TOP
        return SyntacticClass.NEITHER
    if isinstance(c, And):
        kinds = [_classify(a, sig, bot_flavor, cache) for a in c.args]
        if any(k is SyntacticClass.IN_BOT for k in kinds):
            return SyntacticClass.IN_BOT
        if all(k is SyntacticClass.IN_TOP for k in kinds):
            return SyntacticClass.IN_TOP
        return SyntacticClass.NEITHER
    if isinstance(c, Or):
        kinds = [_classify(a, sig, bot_flavor, cache) for a in c.args]
        if any(k is SyntacticClass.IN_TOP for k in kinds):
            return SyntacticClass.IN_TOP
        if all(k is SyntacticClass.IN_BOT for k in kinds):
            return SyntacticClass.IN_BOT
        return SyntacticClass.NEITHER
    if isinstance(c, Exists):
        filler = _classify(c.filler, sig, bot_flavor, cache)
        outside = _role_outside(c.role, sig)
        if bot_flavor:
            if filler is SyntacticClass.IN_BOT or outside:
                return SyntacticClass.IN_BOT
            return SyntacticClass.NEITHER
        if filler is SyntacticClass.IN_BOT:
            return SyntacticClass.IN_BOT
        if outside and filler is SyntacticClass.IN_TOP:
            return SyntacticClass.IN_TOP
        return SyntacticClass.NEITHER
    if isinstance(c, AtLeast):
        if c.n == 0:
            return SyntacticClass.IN_TOP
        filler = _classify(c.filler, sig, bot_flavor, cache)
        outside = _role_outside(c.role, sig)
        if bot_flavor:
            if filler is SyntacticClass.IN_BOT or outside:
                return SyntacticClass.IN_BOT
            return SyntacticClass.NEITHER
        if filler is SyntacticClass.IN_BOT:
            return SyntacticClass.IN_BOT
        if outside and filler is SyntacticClass.IN_TOP:
            return SyntacticClass.IN_TOP
        return SyntacticClass.NEITHER
    if isinstance(c, ForAll):
        filler = _classify(c.filler, sig, bot_flavor, cache)
        if filler is SyntacticClass.IN_TOP:
            return SyntacticClass.IN_TOP
        if bot_flavor and _role_outside(c.role, sig):
            # a role sent to the empty relation quantifies vacuously
            return SyntacticClass.IN_TOP
        return SyntacticClass.NEITHER
    if isinstance(c, AtMost):
        if bot_flavor:
            if _role_outside(c.role, sig):
                return SyntacticClass.IN_TOP
            if _classify(c.filler, sig, bot_flavor, cache) is SyntacticClass.IN_BOT:
                return SyntacticClass.IN_TOP
        return SyntacticClass.NEITHER
    raise TypeError(f"not a concept: {c!r}")


def is_syntactically_local(
    a: Axiom,
    sig: Signature,
    flavor: LocalityFlavor,
    refined: bool = False,
) -> bool:
    """Decide syntactic locality of `a` w.r.t. `sig`.

    Derived axiom forms (domain, range, disjointness) are reduced first.
    Role axioms are decided on role names alone. With `refined` set, an
    inverse-role axiom whose two sides are inverses of each other after
    normalization counts as local regardless of the signature; this is off
    by default so the checker reproduces the plain grammar behavior.
    """
    _check_syntactic(flavor)
    return all(_axiom_local(p, sig, flavor, refined) for p in normalize_axiom(a))


def _axiom_local(a, sig, flavor, refined) -> bool:
    bot_flavor = flavor is LocalityFlavor.SYN_BOT
    cache: dict = {}
    if isinstance(a, SubClassOf):
        if _classify(a.sub, sig, bot_flavor, cache) is SyntacticClass.IN_BOT:
            return True
        return _classify(a.sup, sig, bot_flavor, cache) is SyntacticClass.IN_TOP
    if isinstance(a, EquivalentClasses):
        left = _classify(a.left, sig, bot_flavor, cache)
        right = _classify(a.right, sig, bot_flavor, cache)
        return left is right and left is not SyntacticClass.NEITHER
    if isinstance(a, SubRoleOf):
        return _role_outside(a.sub if bot_flavor else a.sup, sig)
    if isinstance(a, Transitive):
        return _role_outside(a.role, sig)
    if isinstance(a, EquivalentRoles):
        return _role_outside(a.left, sig) and _role_outside(a.right, sig)
    if isinstance(a, InverseRoles):
        if refined and normalize_role(Inverse(a.left)) == normalize_role(a.right):
            return True
        return _role_outside(a.left, sig) and _role_outside(a.right, sig)
    raise TypeError(f"not a normalized axiom: {a!r}")
