"""Labelled-sequent proof search for K, T, K4 and GL.

Root-first search over labelled sequents: one side holds relational atoms and
labelled formulas assumed true, the other labelled formulas to be proved.
Sequents are kept as sets (contraction is absorbed) and saturation ledgers
stop every rule from firing twice on the same principal instance, which is
what makes the search terminate for K, T and GL.  K4 additionally carries an
ancestor loop check and a global step bound.

Rule priority per application: non-branching propositional rules, branching
propositional rules, left box, geometric rules, then right box (the Löb
variant for GL) on the candidate that sorts first by formula text.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .axiomatic import Logic, get_logic
from .formula import (
    FALSE,
    And,
    Atom,
    Box,
    Falsum,
    Formula,
    Iff,
    Imp,
    Not,
    Or,
    Verum,
    eliminate_diamonds,
    parse,
    pretty,
)
from .semantics import KripkeModel, holds, in_class


class NotSaturated(RuntimeError):
    """Countermodel extraction was attempted on an unsaturated branch."""


@lru_cache(maxsize=1 << 16)
def _text(f: Formula) -> str:
    return pretty(f)


# ---------------------------------------------------------------------------
# Rule sets

@dataclass(frozen=True)
class RuleSet:
    name: str
    reflexive: bool = False   # Refl, once per label
    transitive: bool = False  # Trans, maintained as eager closure of the edges
    irreflexive: bool = False  # Irrefl closes any branch with x R x
    lob: bool = False          # right box repeats x : Box A on the left
    loop_check: bool = False   # ancestor-signature blocking (K4)


RULE_SETS: dict[str, RuleSet] = {
    "g3k": RuleSet("g3k"),
    "g3kt": RuleSet("g3kt", reflexive=True),
    "g3k4": RuleSet("g3k4", transitive=True, loop_check=True),
    "g3kgl": RuleSet("g3kgl", transitive=True, irreflexive=True, lob=True),
}

# Geometric-rule catalogue (premise edges -> produced atom).  Ser, Sym and
# Eucl are definable but no shipped rule set uses them; D, S4, B and S5
# carry no search policy here.
GEOMETRIC_RULES: dict[str, tuple[str, str]] = {
    "Ser": ("x", "x R y, y fresh"),
    "Refl": ("x", "x R x"),
    "Trans": ("w R x, x R y", "w R y"),
    "Sym": ("w R x", "x R w"),
    "Eucl": ("w R x, w R y", "x R y"),
    "Irrefl": ("w R w", "closes the branch"),
}


# ---------------------------------------------------------------------------
# Sequents and proof trees

@dataclass(frozen=True)
class Sequent:
    rel: tuple[tuple[int, int], ...]
    left: tuple[tuple[int, Formula], ...]
    right: tuple[tuple[int, Formula], ...]


def _lf_key(lf: tuple[int, Formula]) -> tuple[int, str]:
    return lf[0], _text(lf[1])


def _mk_sequent(rel, left, right) -> Sequent:
    return Sequent(
        tuple(sorted(rel)),
        tuple(sorted(left, key=_lf_key)),
        tuple(sorted(right, key=_lf_key)),
    )


def _sequent_labels(seq: Sequent) -> set[int]:
    labels = {0}
    for a, b in seq.rel:
        labels.add(a)
        labels.add(b)
    for x, _ in seq.left:
        labels.add(x)
    for x, _ in seq.right:
        labels.add(x)
    return labels


@dataclass
class ProofNode:
    """One rule application; leaves are closures of their sequent."""

    rule: str
    label: int | None
    formula: Formula | None
    edge: tuple[int, int] | None
    sequent: Sequent
    children: list["ProofNode"] = field(default_factory=list)


@dataclass(frozen=True)
class Theorem:
    proof: ProofNode | None  # None when the caller asked for the verdict only


@dataclass(frozen=True)
class NonTheorem:
    model: KripkeModel
    world: int


@dataclass(frozen=True)
class Undetermined:
    steps: int


SearchOutcome = Theorem | NonTheorem | Undetermined


# ---------------------------------------------------------------------------
# Branches

class Branch:
    """Mutable search state for one branch: sequent sets plus ledgers."""

    __slots__ = (
        "rules", "rel", "left", "right", "labels", "parent", "done",
        "lbox", "rbox", "refl", "closed", "close_rule", "close_label",
        "close_formula", "close_edge", "blocked",
    )

    def __init__(self, rules: RuleSet):
        self.rules = rules
        self.rel: set[tuple[int, int]] = set()
        self.left: set[tuple[int, Formula]] = set()
        self.right: set[tuple[int, Formula]] = set()
        self.labels: set[int] = {0}
        self.parent: dict[int, int] = {}  # fresh label -> label it was created under
        self.done: set[tuple[str, int, Formula]] = set()  # processed propositional principals
        self.lbox: set[tuple[tuple[int, int], Formula]] = set()
        self.rbox: set[tuple[int, Formula]] = set()
        self.refl: set[int] = set()
        self.closed = False
        self.close_rule: str | None = None
        self.close_label: int | None = None
        self.close_formula: Formula | None = None
        self.close_edge: tuple[int, int] | None = None
        self.blocked = False

    def clone(self) -> "Branch":
        b = Branch.__new__(Branch)
        b.rules = self.rules
        b.rel = set(self.rel)
        b.left = set(self.left)
        b.right = set(self.right)
        b.labels = set(self.labels)
        b.parent = dict(self.parent)
        b.done = set(self.done)
        b.lbox = set(self.lbox)
        b.rbox = set(self.rbox)
        b.refl = set(self.refl)
        b.closed = self.closed
        b.close_rule = self.close_rule
        b.close_label = self.close_label
        b.close_formula = self.close_formula
        b.close_edge = self.close_edge
        b.blocked = self.blocked
        return b

    def snapshot(self) -> Sequent:
        return _mk_sequent(self.rel, self.left, self.right)

    def _close(self, rule: str, label=None, formula=None, edge=None) -> None:
        if not self.closed:
            self.closed = True
            self.close_rule = rule
            self.close_label = label
            self.close_formula = formula
            self.close_edge = edge

    def add_left(self, x: int, f: Formula) -> None:
        if isinstance(f, Verum):
            return  # carries no information on the left
        if (x, f) in self.left:
            return
        self.left.add((x, f))
        if isinstance(f, Falsum):
            self._close("l-false", x, f)
        elif (x, f) in self.right:
            self._close("init", x, f)

    def add_right(self, x: int, f: Formula) -> None:
        if isinstance(f, Falsum):
            return  # an unprovable disjunct carries no information
        if (x, f) in self.right:
            return
        self.right.add((x, f))
        if isinstance(f, Verum):
            self._close("r-true", x, f)
        elif (x, f) in self.left:
            self._close("init", x, f)

    def add_edge(self, a: int, b: int) -> None:
        if (a, b) in self.rel:
            return
        new = {(a, b)}
        if self.rules.transitive:
            preds = {p for p, q in self.rel if q == a} | {a}
            succs = {q for p, q in self.rel if p == b} | {b}
            new = {(p, q) for p in preds for q in succs} - self.rel
        self.rel |= new
        if self.rules.irreflexive:
            for p, q in new:
                if p == q:
                    self._close("irrefl", p, None, (p, q))
                    return

    def fresh_label(self, under: int) -> int:
        x = max(self.labels) + 1
        self.labels.add(x)
        self.parent[x] = under
        return x

    def ancestors(self, x: int) -> list[int]:
        out = []
        while x in self.parent:
            x = self.parent[x]
            out.append(x)
        return out

    def label_signature(self, x: int) -> tuple[frozenset[Formula], frozenset[Formula]]:
        return (
            frozenset(f for l, f in self.left if l == x),
            frozenset(f for l, f in self.right if l == x),
        )


# ---------------------------------------------------------------------------
# Rule selection

_NONBRANCH_LEFT = (Not, And, Iff)
_NONBRANCH_RIGHT = (Not, Or, Imp)
_BRANCH_LEFT = (Or, Imp)
_BRANCH_RIGHT = (And, Iff)

_BRANCHING_RULES = frozenset({"l-or", "l-imp", "r-and", "r-iff"})
_CLOSURE_RULES = frozenset({"init", "l-false", "r-true", "irrefl"})


@dataclass(frozen=True)
class _App:
    kind: str
    label: int
    formula: Formula | None = None
    edge: tuple[int, int] | None = None


def _rule_name(side: str, f: Formula) -> str:
    names = {Not: "not", And: "and", Or: "or", Imp: "imp", Iff: "iff"}
    return f"{side}-{names[type(f)]}"


def _next_application(b: Branch) -> _App | None:
    """The highest-priority unapplied rule instance, deterministically chosen."""
    # 1. non-branching propositional rules
    cands = [
        (x, _text(f), 0, f) for x, f in b.left
        if isinstance(f, _NONBRANCH_LEFT) and ("L", x, f) not in b.done
    ] + [
        (x, _text(f), 1, f) for x, f in b.right
        if isinstance(f, _NONBRANCH_RIGHT) and ("R", x, f) not in b.done
    ]
    if cands:
        x, _, side, f = min(cands)
        return _App(_rule_name("l" if side == 0 else "r", f), x, f)
    # 2. branching propositional rules
    cands = [
        (x, _text(f), 0, f) for x, f in b.left
        if isinstance(f, _BRANCH_LEFT) and ("L", x, f) not in b.done
    ] + [
        (x, _text(f), 1, f) for x, f in b.right
        if isinstance(f, _BRANCH_RIGHT) and ("R", x, f) not in b.done
    ]
    if cands:
        x, _, side, f = min(cands)
        return _App(_rule_name("l" if side == 0 else "r", f), x, f)
    # 3. left box over existing edges
    boxes = [(x, f) for x, f in b.left if isinstance(f, Box)]
    cands3 = [
        (w, t, _text(f), f)
        for w, f in boxes
        for (a, t) in b.rel
        if a == w and ((w, t), f) not in b.lbox
    ]
    if cands3:
        w, t, _, f = min(cands3)
        return _App("l-box", w, f, (w, t))
    # 4. geometric rules with ledgers (Refl only; Trans is kept eagerly closed)
    if b.rules.reflexive:
        todo = sorted(b.labels - b.refl)
        if todo:
            x = todo[0]
            return _App("refl", x, None, (x, x))
    # 5. right box, negated/boxed-first order realised as formula-text order
    cands5 = [
        (_text(f), x, f) for x, f in b.right
        if isinstance(f, Box) and (x, f) not in b.rbox
    ]
    if cands5:
        _, x, f = min(cands5)
        return _App("r-box-lob" if b.rules.lob else "r-box", x, f)
    return None


def _apply_in_place(b: Branch, app: _App) -> None:
    """Apply a non-branching rule instance, mutating the branch."""
    f = app.formula
    x = app.label
    match app.kind:
        case "l-not":
            b.done.add(("L", x, f))
            b.add_right(x, f.arg)
        case "l-and":
            b.done.add(("L", x, f))
            b.add_left(x, f.left)
            b.add_left(x, f.right)
        case "l-iff":
            b.done.add(("L", x, f))
            b.add_left(x, Imp(f.left, f.right))
            b.add_left(x, Imp(f.right, f.left))
        case "r-not":
            b.done.add(("R", x, f))
            b.add_left(x, f.arg)
        case "r-or":
            b.done.add(("R", x, f))
            b.add_right(x, f.left)
            b.add_right(x, f.right)
        case "r-imp":
            b.done.add(("R", x, f))
            b.add_left(x, f.left)
            b.add_right(x, f.right)
        case "l-box":
            b.lbox.add((app.edge, f))
            b.add_left(app.edge[1], f.arg)
        case "refl":
            b.refl.add(x)
            b.add_edge(x, x)
        case "r-box" | "r-box-lob":
            b.rbox.add((x, f))
            y = b.fresh_label(x)
            b.add_edge(x, y)
            if app.kind == "r-box-lob":
                b.add_left(y, f)
            b.add_right(y, f.arg)
        case _:
            raise ValueError(f"not a single-premise rule: {app.kind}")


def _apply_branching(b: Branch, app: _App) -> tuple[Branch, Branch]:
    f = app.formula
    x = app.label
    b.done.add(("L" if app.kind.startswith("l") else "R", x, f))
    left_premise = b.clone()
    right_premise = b
    match app.kind:
        case "l-or":
            left_premise.add_left(x, f.left)
            right_premise.add_left(x, f.right)
        case "l-imp":
            left_premise.add_right(x, f.left)
            right_premise.add_left(x, f.right)
        case "r-and":
            left_premise.add_right(x, f.left)
            right_premise.add_right(x, f.right)
        case "r-iff":
            left_premise.add_right(x, Imp(f.left, f.right))
            right_premise.add_right(x, Imp(f.right, f.left))
        case _:
            raise ValueError(f"not a branching rule: {app.kind}")
    return left_premise, right_premise


# ---------------------------------------------------------------------------
# Search

@dataclass
class _ChainResult:
    kind: str  # closed | open | branch | exhausted
    head: ProofNode | None = None
    branch_node: ProofNode | None = None
    premises: tuple[Branch, Branch] | None = None
    branch: Branch | None = None


def _run_chain(b: Branch, budget: list[int]) -> _ChainResult:
    head: ProofNode | None = None
    tail: ProofNode | None = None

    def attach(node: ProofNode) -> None:
        nonlocal head, tail
        if tail is None:
            head = node
        else:
            tail.children.append(node)
        tail = node

    while True:
        if b.closed:
            attach(ProofNode(b.close_rule, b.close_label, b.close_formula,
                             b.close_edge, b.snapshot()))
            return _ChainResult("closed", head=head)
        app = _next_application(b)
        if app is None:
            return _ChainResult("open", branch=b)
        if b.rules.loop_check and app.kind in ("r-box", "r-box-lob"):
            sig = b.label_signature(app.label)
            if any(b.label_signature(a) == sig for a in b.ancestors(app.label)):
                b.blocked = True
                return _ChainResult("open", branch=b)
        if budget[0] <= 0:
            return _ChainResult("exhausted")
        budget[0] -= 1
        node = ProofNode(app.kind, app.label, app.formula, app.edge, b.snapshot())
        attach(node)
        if app.kind in _BRANCHING_RULES:
            p1, p2 = _apply_branching(b, app)
            return _ChainResult("branch", head=head, branch_node=node, premises=(p1, p2))
        _apply_in_place(b, app)


@dataclass
class _Frame:
    segment_root: ProofNode
    branch_node: ProofNode
    remaining: list[Branch]


def _prove(root: Branch, budget: list[int]) -> _ChainResult:
    """Depth-first search; stops at the first open (or blocked) branch."""
    frames: list[_Frame] = []
    pending = root
    while True:
        res = _run_chain(pending, budget)
        if res.kind in ("open", "exhausted"):
            return res
        if res.kind == "branch":
            frames.append(_Frame(res.head, res.branch_node, [res.premises[1]]))
            pending = res.premises[0]
            continue
        completed = res.head  # closed
        while True:
            if not frames:
                return _ChainResult("closed", head=completed)
            top = frames[-1]
            top.branch_node.children.append(completed)
            if top.remaining:
                pending = top.remaining.pop(0)
                break
            frames.pop()
            completed = top.segment_root


def _prove_fast(root: Branch, budget: list[int]) -> _ChainResult:
    """Verdict-only variant of _prove: same rule order, no proof tree."""
    stack: list[Branch] = []
    b = root
    while True:
        if b.closed:
            if not stack:
                return _ChainResult("closed")
            b = stack.pop()
            continue
        app = _next_application(b)
        if app is None:
            return _ChainResult("open", branch=b)
        if b.rules.loop_check and app.kind in ("r-box", "r-box-lob"):
            sig = b.label_signature(app.label)
            if any(b.label_signature(x) == sig for x in b.ancestors(app.label)):
                b.blocked = True
                return _ChainResult("open", branch=b)
        if budget[0] <= 0:
            return _ChainResult("exhausted")
        budget[0] -= 1
        if app.kind in _BRANCHING_RULES:
            p1, p2 = _apply_branching(b, app)
            stack.append(p2)
            b = p1
        else:
            _apply_in_place(b, app)


def _transitive_closure(rel: set[tuple[int, int]]) -> set[tuple[int, int]]:
    out = set(rel)
    changed = True
    while changed:
        changed = False
        for a, b in list(out):
            for c, d in list(out):
                if b == c and (a, d) not in out:
                    out.add((a, d))
                    changed = True
    return out


def extract_countermodel(branch: Branch, logic: str | Logic) -> tuple[KripkeModel, int]:
    """Read a model off an open saturated (or blocked) branch.

    Worlds are the branch labels, the relation is the left relational atoms
    closed under the logic's frame conditions, and an atom is true exactly at
    the labels where it sits on the left.  The root label 0 is the world the
    decided formula fails at.
    """
    lg = get_logic(logic)
    rules = RULE_SETS[lg.rules]
    if branch.closed:
        raise NotSaturated("closed branches have no countermodel")
    if not branch.blocked and _next_application(branch) is not None:
        raise NotSaturated("unexpanded rule instances remain on the branch")
    worlds = sorted(branch.labels)
    rel = set(branch.rel)
    if rules.reflexive:
        rel |= {(w, w) for w in worlds}
    if rules.transitive:
        rel = _transitive_closure(rel)
    names = sorted({f.name for _, f in branch.left if isinstance(f, Atom)})
    val = {
        name: frozenset(x for x, f in branch.left if f == Atom(name)) for name in names
    }
    return KripkeModel(worlds, rel, val), 0


def decide(
    logic: str | Logic, f: Formula, max_steps: int = 10_000, collect_proof: bool = True
) -> SearchOutcome:
    """Decide theoremhood of f in the logic by root-first proof search.

    Returns Theorem with a replayable proof tree, NonTheorem with a verified
    countermodel, or Undetermined when the step bound is exhausted or a
    blocked K4 branch fails to yield a countermodel.  Callers that only need
    the verdict can skip proof construction with collect_proof=False.
    """
    if max_steps < 1:
        raise ValueError("max_steps must be positive")
    lg = get_logic(logic)
    rules = RULE_SETS[lg.rules]
    goal = eliminate_diamonds(f)
    root = Branch(rules)
    root.add_right(0, goal)
    budget = [max_steps]
    res = _prove(root, budget) if collect_proof else _prove_fast(root, budget)
    if res.kind == "closed":
        return Theorem(res.head)
    if res.kind == "exhausted":
        return Undetermined(max_steps)
    b = res.branch
    model, world = extract_countermodel(b, lg)
    sound = in_class(model.worlds, model.rel, lg.frame_class) and not holds(model, f, world)
    if not sound:
        # only reachable through the K4 loop check; saturation guarantees the
        # countermodel otherwise
        if not b.blocked:
            raise RuntimeError(
                f"countermodel extraction failed on a saturated branch for {pretty(f)}"
            )
        return Undetermined(max_steps - budget[0])
    return NonTheorem(model, world)


# ---------------------------------------------------------------------------
# Independent proof replay

@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    reason: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def _seq_with(seq: Sequent, *, left=(), right=(), edges=(), rules: RuleSet) -> Sequent:
    """Recompute a premise sequent from a conclusion, mirroring the branch
    conventions (vacuous constants dropped, edges transitively closed)."""
    rel = set(seq.rel)
    ls = set(seq.left)
    rs = set(seq.right)
    for a, b in edges:
        if (a, b) in rel:
            continue
        if rules.transitive:
            preds = {p for p, q in rel if q == a} | {a}
            succs = {q for p, q in rel if p == b} | {b}
            rel |= {(p, q) for p in preds for q in succs}
        else:
            rel.add((a, b))
    for x, f in left:
        if not isinstance(f, Verum):
            ls.add((x, f))
    for x, f in right:
        if not isinstance(f, Falsum):
            rs.add((x, f))
    return _mk_sequent(rel, ls, rs)


_RULE_SHAPE: dict[str, type] = {
    "l-not": Not, "r-not": Not, "l-and": And, "r-and": And,
    "l-or": Or, "r-or": Or, "l-imp": Imp, "r-imp": Imp,
    "l-iff": Iff, "r-iff": Iff, "l-box": Box, "r-box": Box, "r-box-lob": Box,
}


def _expected_premises(node: ProofNode, rules: RuleSet) -> list[Sequent] | str:
    """Premises the rule at this node must produce, or an error string."""
    seq = node.sequent
    x, f = node.label, node.formula
    left = set(seq.left)
    right = set(seq.right)

    shape = _RULE_SHAPE.get(node.rule)
    if shape is not None and not isinstance(f, shape):
        return f"principal formula does not fit {node.rule}"

    def has(side, item):
        return item in side

    match node.rule:
        case "l-not" | "l-and" | "l-iff" | "l-or" | "l-imp":
            if not has(left, (x, f)):
                return "principal formula missing on the left"
        case "r-not" | "r-or" | "r-imp" | "r-and" | "r-iff" | "r-box" | "r-box-lob":
            if not has(right, (x, f)):
                return "principal formula missing on the right"
        case "l-box":
            if not has(left, (x, f)) or node.edge not in set(seq.rel):
                return "left box needs its formula and an edge from its label"
            if node.edge[0] != x:
                return "left box edge does not start at the principal label"
        case "refl":
            if not rules.reflexive or x not in _sequent_labels(seq):
                return "refl needs the rule set and an existing label"
        case _:
            return f"unknown rule {node.rule!r}"

    w = _seq_with
    match node.rule:
        case "l-not":
            return [w(seq, right=[(x, f.arg)], rules=rules)]
        case "l-and":
            return [w(seq, left=[(x, f.left), (x, f.right)], rules=rules)]
        case "l-iff":
            return [w(seq, left=[(x, Imp(f.left, f.right)), (x, Imp(f.right, f.left))], rules=rules)]
        case "r-not":
            return [w(seq, left=[(x, f.arg)], rules=rules)]
        case "r-or":
            return [w(seq, right=[(x, f.left), (x, f.right)], rules=rules)]
        case "r-imp":
            return [w(seq, left=[(x, f.left)], right=[(x, f.right)], rules=rules)]
        case "l-or":
            return [w(seq, left=[(x, f.left)], rules=rules),
                    w(seq, left=[(x, f.right)], rules=rules)]
        case "l-imp":
            return [w(seq, right=[(x, f.left)], rules=rules),
                    w(seq, left=[(x, f.right)], rules=rules)]
        case "r-and":
            return [w(seq, right=[(x, f.left)], rules=rules),
                    w(seq, right=[(x, f.right)], rules=rules)]
        case "r-iff":
            return [w(seq, right=[(x, Imp(f.left, f.right))], rules=rules),
                    w(seq, right=[(x, Imp(f.right, f.left))], rules=rules)]
        case "l-box":
            return [w(seq, left=[(node.edge[1], f.arg)], rules=rules)]
        case "refl":
            return [w(seq, edges=[(x, x)], rules=rules)]
        case "r-box" | "r-box-lob":
            if (node.rule == "r-box-lob") != rules.lob:
                return "right-box variant does not match the rule set"
            fresh = max(_sequent_labels(seq)) + 1  # the x! side condition
            extra_left = [(fresh, f)] if rules.lob else []
            return [w(seq, edges=[(x, fresh)], left=extra_left,
                      right=[(fresh, f.arg)], rules=rules)]
    return f"unknown rule {node.rule!r}"


def _closure_ok(node: ProofNode, rules: RuleSet) -> bool:
    seq = node.sequent
    match node.rule:
        case "init":
            return bool(set(seq.left) & set(seq.right))
        case "l-false":
            return any(isinstance(f, Falsum) for _, f in seq.left)
        case "r-true":
            return any(isinstance(f, Verum) for _, f in seq.right)
        case "irrefl":
            return rules.irreflexive and any(a == b for a, b in seq.rel)
    return False


def replay_proof(proof: ProofNode, logic: str | Logic) -> ReplayResult:
    """Re-check every node of a proof tree against the logic's rule table."""
    lg = get_logic(logic)
    rules = RULE_SETS[lg.rules]
    stack = [proof]
    while stack:
        node = stack.pop()
        if node.rule in _CLOSURE_RULES:
            if node.children:
                return ReplayResult(False, f"closure node {node.rule} has premises")
            if not _closure_ok(node, rules):
                return ReplayResult(False, f"invalid closure {node.rule}")
            continue
        expected = _expected_premises(node, rules)
        if isinstance(expected, str):
            return ReplayResult(False, f"{node.rule}: {expected}")
        if len(node.children) != len(expected):
            return ReplayResult(False, f"{node.rule}: wrong number of premises")
        for child, want in zip(node.children, expected):
            if child.sequent != want:
                return ReplayResult(False, f"{node.rule}: premise sequent mismatch")
        stack.extend(node.children)
    return ReplayResult(True)


# ---------------------------------------------------------------------------
# Interchange formats

def proof_to_json(node: ProofNode) -> dict:
    """Nested proof-tree JSON: rule name, principal formula, premises."""
    out = {
        "rule": node.rule,
        "label": node.label,
        "formula": None if node.formula is None else _text(node.formula),
        "edge": None if node.edge is None else list(node.edge),
        "sequent": {
            "rel": [list(p) for p in node.sequent.rel],
            "left": [[x, _text(f)] for x, f in node.sequent.left],
            "right": [[x, _text(f)] for x, f in node.sequent.right],
        },
        "premises": [],
    }
    stack = [(node, out)]
    while stack:
        src, dst = stack.pop()
        for child in src.children:
            sub = {
                "rule": child.rule,
                "label": child.label,
                "formula": None if child.formula is None else _text(child.formula),
                "edge": None if child.edge is None else list(child.edge),
                "sequent": {
                    "rel": [list(p) for p in child.sequent.rel],
                    "left": [[x, _text(f)] for x, f in child.sequent.left],
                    "right": [[x, _text(f)] for x, f in child.sequent.right],
                },
                "premises": [],
            }
            dst["premises"].append(sub)
            stack.append((child, sub))
    return out


def proof_from_json(data: dict) -> ProofNode:
    def mk(d: dict) -> ProofNode:
        return ProofNode(
            d["rule"],
            d.get("label"),
            None if d.get("formula") is None else parse(d["formula"]),
            None if d.get("edge") is None else tuple(d["edge"]),
            Sequent(
                tuple(tuple(p) for p in d["sequent"]["rel"]),
                tuple((x, parse(t)) for x, t in d["sequent"]["left"]),
                tuple((x, parse(t)) for x, t in d["sequent"]["right"]),
            ),
        )

    root = mk(data)
    stack = [(data, root)]
    while stack:
        src, dst = stack.pop()
        for child in src["premises"]:
            sub = mk(child)
            dst.children.append(sub)
            stack.append((child, sub))
    return root


def countermodel_dot(model: KripkeModel, world: int) -> str:
    """DOT rendering of a countermodel; node labels list the true atoms."""
    lines = ["digraph countermodel {"]
    for w in sorted(model.worlds):
        true_atoms = sorted(a for a, ws in model.val.items() if w in ws)
        label = f"w{w}" + (": " + " ".join(true_atoms) if true_atoms else "")
        shape = ", shape=doublecircle" if w == world else ""
        lines.append(f'  w{w} [label="{label}"{shape}];')
    for a, b in sorted(model.rel):
        lines.append(f"  w{a} -> w{b};")
    lines.append("}")
    return "\n".join(lines)
