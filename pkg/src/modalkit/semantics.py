"""Finite Kripke models: forcing, frame properties, bounded validity checks,
correspondence testing and bisimulations.

This module is the semantic ground truth the proof-search and canonical-model
machinery are validated against, so everything here stays deliberately direct:
models are explicit finite structures and validity is decided by enumeration.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator

from .errors import PreconditionViolated
from .formula import (
    And,
    Atom,
    Box,
    Diam,
    Falsum,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Verum,
    atoms,
)


class UnknownWorld(KeyError):
    """A forcing query named a world outside the model."""


@dataclass(frozen=True)
class KripkeModel:
    """Finite model <W, R, V>; worlds are small integers.

    The valuation is sparse: atoms absent from ``val`` are false everywhere.
    """

    worlds: frozenset[int]
    rel: frozenset[tuple[int, int]]
    val: dict[str, frozenset[int]]
    _succ: dict[int, tuple[int, ...]] | None = field(
        default=None, compare=False, repr=False
    )

    def __init__(
        self,
        worlds: Iterable[int],
        rel: Iterable[tuple[int, int]] = (),
        val: dict[str, Iterable[int]] | None = None,
    ):
        object.__setattr__(self, "worlds", frozenset(int(w) for w in worlds))
        object.__setattr__(self, "rel", frozenset((int(a), int(b)) for a, b in rel))
        object.__setattr__(
            self, "val", {a: frozenset(int(w) for w in ws) for a, ws in (val or {}).items()}
        )
        if not self.worlds:
            raise ValueError("a Kripke model needs a nonempty world set")
        for a, b in self.rel:
            if a not in self.worlds or b not in self.worlds:
                raise ValueError(f"relation pair ({a}, {b}) leaves the world set")
        for name, ws in self.val.items():
            if not ws <= self.worlds:
                raise ValueError(f"valuation of {name!r} leaves the world set")
        object.__setattr__(self, "_succ", None)

    def successors(self, w: int) -> tuple[int, ...]:
        if self._succ is None:
            table: dict[int, list[int]] = {x: [] for x in self.worlds}
            for a, b in sorted(self.rel):
                table[a].append(b)
            object.__setattr__(self, "_succ", {x: tuple(bs) for x, bs in table.items()})
        return self._succ[w]


def holds(m: KripkeModel, f: Formula, w: int) -> bool:
    """Truth of f at world w of m, by structural recursion."""
    if w not in m.worlds:
        raise UnknownWorld(w)
    match f:
        case Falsum():
            return False
        case Verum():
            return True
        case Atom(name):
            return w in m.val.get(name, frozenset())
        case Not(a):
            return not holds(m, a, w)
        case And(a, b):
            return holds(m, a, w) and holds(m, b, w)
        case Or(a, b):
            return holds(m, a, w) or holds(m, b, w)
        case Imp(a, b):
            return (not holds(m, a, w)) or holds(m, b, w)
        case Iff(a, b):
            return holds(m, a, w) == holds(m, b, w)
        case Box(a):
            return all(holds(m, a, x) for x in m.successors(w))
        case Diam(a):
            return holds(m, Not(Box(Not(a))), w)
    raise TypeError(f"not a formula: {f!r}")


def valid_in_model(m: KripkeModel, f: Formula) -> bool:
    return all(holds(m, f, w) for w in m.worlds)


# ---------------------------------------------------------------------------
# Frame properties and classes

class FrameProperty(Enum):
    SERIAL = "serial"
    REFLEXIVE = "reflexive"
    IRREFLEXIVE = "irreflexive"
    SYMMETRIC = "symmetric"
    TRANSITIVE = "transitive"
    EUCLIDEAN = "euclidean"
    CONVERSE_WELL_FOUNDED = "converse-well-founded"


def _acyclic(worlds: frozenset[int], rel: frozenset[tuple[int, int]]) -> bool:
    succ: dict[int, list[int]] = {w: [] for w in worlds}
    for a, b in rel:
        succ[a].append(b)
    WHITE, GREY, BLACK = 0, 1, 2
    colour = {w: WHITE for w in worlds}
    for start in worlds:
        if colour[start] != WHITE:
            continue
        stack: list[tuple[int, int]] = [(start, 0)]
        colour[start] = GREY
        while stack:
            node, i = stack.pop()
            if i < len(succ[node]):
                stack.append((node, i + 1))
                nxt = succ[node][i]
                if colour[nxt] == GREY:
                    return False
                if colour[nxt] == WHITE:
                    colour[nxt] = GREY
                    stack.append((nxt, 0))
            else:
                colour[node] = BLACK
    return True


def check_property(
    worlds: Iterable[int], rel: Iterable[tuple[int, int]], prop: FrameProperty
) -> bool:
    """Exact decision of a binary-relation property on a finite frame."""
    ws = frozenset(worlds)
    rs = frozenset(rel)
    succ: dict[int, set[int]] = {w: set() for w in ws}
    for a, b in rs:
        succ[a].add(b)
    match prop:
        case FrameProperty.SERIAL:
            return all(succ[w] for w in ws)
        case FrameProperty.REFLEXIVE:
            return all((w, w) in rs for w in ws)
        case FrameProperty.IRREFLEXIVE:
            return not any((w, w) in rs for w in ws)
        case FrameProperty.SYMMETRIC:
            return all((b, a) in rs for a, b in rs)
        case FrameProperty.TRANSITIVE:
            return all((a, c) in rs for a, b in rs for c in succ[b])
        case FrameProperty.EUCLIDEAN:
            return all((b, c) in rs for a, b in rs for c in succ[a])
        case FrameProperty.CONVERSE_WELL_FOUNDED:
            # On a finite frame, no infinite ascending R-chain == no cycle.
            return _acyclic(ws, rs)
    raise ValueError(f"unknown property {prop!r}")


class FrameClass(Enum):
    ALL_FINITE = "all"
    REFLEXIVE_FINITE = "reflexive"
    TRANSITIVE_FINITE = "transitive"
    IRREFLEXIVE_TRANSITIVE_FINITE = "irreflexive-transitive"
    SERIAL_FINITE = "serial"
    SYMMETRIC_REFLEXIVE_FINITE = "symmetric-reflexive"
    EUCLIDEAN_REFLEXIVE_FINITE = "euclidean-reflexive"


CLASS_PROPERTIES: dict[FrameClass, tuple[FrameProperty, ...]] = {
    FrameClass.ALL_FINITE: (),
    FrameClass.REFLEXIVE_FINITE: (FrameProperty.REFLEXIVE,),
    FrameClass.TRANSITIVE_FINITE: (FrameProperty.TRANSITIVE,),
    FrameClass.IRREFLEXIVE_TRANSITIVE_FINITE: (
        FrameProperty.IRREFLEXIVE,
        FrameProperty.TRANSITIVE,
    ),
    FrameClass.SERIAL_FINITE: (FrameProperty.SERIAL,),
    FrameClass.SYMMETRIC_REFLEXIVE_FINITE: (
        FrameProperty.SYMMETRIC,
        FrameProperty.REFLEXIVE,
    ),
    FrameClass.EUCLIDEAN_REFLEXIVE_FINITE: (
        FrameProperty.EUCLIDEAN,
        FrameProperty.REFLEXIVE,
    ),
}


def in_class(worlds: Iterable[int], rel: Iterable[tuple[int, int]], cls: FrameClass) -> bool:
    ws = frozenset(worlds)
    rs = frozenset(rel)
    return all(check_property(ws, rs, p) for p in CLASS_PROPERTIES[cls])


# ---------------------------------------------------------------------------
# Exhaustive enumeration up to a world bound

def enumerate_frames(n: int) -> Iterator[frozenset[tuple[int, int]]]:
    """All relations on worlds 0..n-1 in lexicographic bitmask order."""
    pairs = [(i, j) for i in range(n) for j in range(n)]
    for mask in range(1 << (n * n)):
        yield frozenset(pairs[k] for k in range(n * n) if mask >> k & 1)


@lru_cache(maxsize=64)
def _class_frames(cls: FrameClass, n: int) -> tuple[tuple[frozenset, tuple[int, ...]], ...]:
    """Frames of the class at size n, paired with per-world successor bitmasks."""
    worlds = frozenset(range(n))
    out = []
    for rel in enumerate_frames(n):
        if in_class(worlds, rel, cls):
            succ = [0] * n
            for a, b in rel:
                succ[a] |= 1 << b
            out.append((rel, tuple(succ)))
    return tuple(out)


def _bit_extension(
    f: Formula, n: int, succ: tuple[int, ...], atom_masks: dict[str, int], cache: dict
) -> int:
    """Bitmask of the worlds forcing f; world i corresponds to bit i."""
    hit = cache.get(f)
    if hit is not None:
        return hit
    full = (1 << n) - 1
    match f:
        case Falsum():
            out = 0
        case Verum():
            out = full
        case Atom(name):
            out = atom_masks.get(name, 0)
        case Not(a):
            out = full & ~_bit_extension(a, n, succ, atom_masks, cache)
        case And(a, b):
            out = _bit_extension(a, n, succ, atom_masks, cache) & _bit_extension(
                b, n, succ, atom_masks, cache
            )
        case Or(a, b):
            out = _bit_extension(a, n, succ, atom_masks, cache) | _bit_extension(
                b, n, succ, atom_masks, cache
            )
        case Imp(a, b):
            out = (full & ~_bit_extension(a, n, succ, atom_masks, cache)) | _bit_extension(
                b, n, succ, atom_masks, cache
            )
        case Iff(a, b):
            ea = _bit_extension(a, n, succ, atom_masks, cache)
            eb = _bit_extension(b, n, succ, atom_masks, cache)
            out = full & ~(ea ^ eb)
        case Box(a):
            ea = _bit_extension(a, n, succ, atom_masks, cache)
            out = 0
            for w in range(n):
                if succ[w] & ~ea == 0:
                    out |= 1 << w
        case Diam(a):
            ea = _bit_extension(a, n, succ, atom_masks, cache)
            out = 0
            for w in range(n):
                if succ[w] & ea:
                    out |= 1 << w
        case _:
            raise TypeError(f"not a formula: {f!r}")
    cache[f] = out
    return out


def _mask_to_set(mask: int, n: int) -> frozenset[int]:
    return frozenset(w for w in range(n) if mask >> w & 1)


def fmp_bound(f: Formula, cap: int = 4) -> int:
    """Default world bound for oracle-style validity checks: the finite-model
    -property bound 2^|subformulas(f)|, capped for desk-scale enumeration."""
    from .formula import subformulas

    return min(2 ** len(subformulas(f)), cap)


def valid_in_class_bounded(
    f: Formula, cls: FrameClass, max_worlds: int
) -> tuple[bool, tuple[KripkeModel, int] | None]:
    """Validity of f over every model of the class with at most max_worlds worlds.

    Enumeration order is deterministic: world counts ascending, relations in
    bitmask order, valuations over the atoms of f in lexicographic order.  On
    failure the first falsifying (model, world) pair in that order is returned.
    """
    if max_worlds < 1:
        raise ValueError("max_worlds must be positive")
    names = sorted(atoms(f))
    for n in range(1, max_worlds + 1):
        full = (1 << n) - 1
        for rel, succ in _class_frames(cls, n):
            for masks in product(range(1 << n), repeat=len(names)):
                atom_masks = dict(zip(names, masks))
                ext = _bit_extension(f, n, succ, atom_masks, {})
                if ext != full:
                    witness = next(w for w in range(n) if not ext >> w & 1)
                    model = KripkeModel(
                        range(n), rel, {a: _mask_to_set(m, n) for a, m in atom_masks.items()}
                    )
                    return False, (model, witness)
    return True, None


def correspondence_check(
    schema: Formula, props: Iterable[FrameProperty], max_worlds: int
) -> bool:
    """Frame-by-frame check that schema-validity matches the property conjunction.

    The schema must use exactly one atom; validity in a frame quantifies over
    all valuations of that atom.
    """
    names = sorted(atoms(schema))
    if len(names) != 1:
        raise ValueError("correspondence schemas use exactly one atom")
    props = tuple(props)
    name = names[0]
    for n in range(1, max_worlds + 1):
        worlds = frozenset(range(n))
        full = (1 << n) - 1
        for rel in enumerate_frames(n):
            succ = [0] * n
            for a, b in rel:
                succ[a] |= 1 << b
            succ_t = tuple(succ)
            frame_valid = all(
                _bit_extension(schema, n, succ_t, {name: mask}, {}) == full
                for mask in range(1 << n)
            )
            prop_holds = all(check_property(worlds, rel, p) for p in props)
            if frame_valid != prop_holds:
                return False
    return True


# ---------------------------------------------------------------------------
# Bisimulations

def is_bisimulation(
    m1: KripkeModel, m2: KripkeModel, z: Iterable[tuple[int, int]]
) -> bool:
    """Check the valuation, forth and back clauses for a pair relation z."""
    pairs = frozenset(z)
    names = set(m1.val) | set(m2.val)
    for w1, w2 in pairs:
        for name in names:
            if (w1 in m1.val.get(name, frozenset())) != (w2 in m2.val.get(name, frozenset())):
                return False
        for x1 in m1.successors(w1):
            if not any((x1, x2) in pairs for x2 in m2.successors(w2)):
                return False
        for x2 in m2.successors(w2):
            if not any((x1, x2) in pairs for x1 in m1.successors(w1)):
                return False
    return True


def bisimilar_agree(
    m1: KripkeModel, w1: int, m2: KripkeModel, w2: int,
    z: Iterable[tuple[int, int]], f: Formula,
) -> bool:
    """Whether the two related worlds agree on f; z must be a bisimulation."""
    pairs = frozenset(z)
    if (w1, w2) not in pairs or not is_bisimulation(m1, m2, pairs):
        raise PreconditionViolated("z is not a bisimulation relating the two worlds")
    return holds(m1, f, w1) == holds(m2, f, w2)


def maximal_bisimulation(m1: KripkeModel, m2: KripkeModel) -> frozenset[tuple[int, int]]:
    """Greatest bisimulation between two models, by partition refinement:
    start from valuation-agreeing pairs and drop violators to a fixpoint."""
    names = set(m1.val) | set(m2.val)
    pairs = {
        (w1, w2)
        for w1 in m1.worlds
        for w2 in m2.worlds
        if all(
            (w1 in m1.val.get(a, frozenset())) == (w2 in m2.val.get(a, frozenset()))
            for a in names
        )
    }
    changed = True
    while changed:
        changed = False
        for w1, w2 in sorted(pairs):
            ok = all(
                any((x1, x2) in pairs for x2 in m2.successors(w2))
                for x1 in m1.successors(w1)
            ) and all(
                any((x1, x2) in pairs for x1 in m1.successors(w1))
                for x2 in m2.successors(w2)
            )
            if not ok:
                pairs.discard((w1, w2))
                changed = True
    return frozenset(pairs)


# ---------------------------------------------------------------------------
# JSON interchange: {"worlds":[0,1],"rel":[[0,1]],"val":{"p":[0]}}

def model_to_json(m: KripkeModel) -> dict:
    return {
        "worlds": sorted(m.worlds),
        "rel": [list(p) for p in sorted(m.rel)],
        "val": {a: sorted(ws) for a, ws in sorted(m.val.items())},
    }


def model_from_json(data: dict) -> KripkeModel:
    return KripkeModel(
        data["worlds"],
        [tuple(p) for p in data.get("rel", [])],
        {a: ws for a, ws in data.get("val", {}).items()},
    )
