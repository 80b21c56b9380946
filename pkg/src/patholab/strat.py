"""Level assignment for formulas in the style of typed comprehension.

Every membership atom ``s in t`` forces level(t) = level(s) + 1, every
equality forces equal levels, and a set abstraction sits one level above its
bound variable.  All occurrences of one variable (per binder) share a level;
constants and function applications get their own per-occurrence level
variables with no extra constraints.  The system is a set of difference
constraints with unit offsets, solved by an offset-carrying union-find.

On success the assignment is normalized so each connected component's
minimum level is 0, which is the lexicographically smallest non-negative
assignment under the deterministic occurrence ordering.  On failure the
result carries a constraint cycle whose offsets sum to a nonzero value, so
the verdict can be rechecked without trusting the solver.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (BINARY_CLASSES, QUANT_CLASSES, Constant, Equality,
                     FnApp, Formula, Membership, Not, SetAbs, Variable)


@dataclass(frozen=True)
class Constraint:
    """level(hi) - level(lo) = offset, with a human-readable origin."""

    lo: str
    hi: str
    offset: int
    origin: str


@dataclass(frozen=True)
class Stratified:
    levels: dict  # occurrence-class label -> level


@dataclass(frozen=True)
class Unstratified:
    # Cycle of (constraint, direction) pairs; direction +1 walks lo->hi.
    cycle: tuple
    cycle_sum: int


def collect_constraints(f: Formula):
    """Occurrence classes and difference constraints, in deterministic
    (pre-order) traversal order.

    Labels: a free variable is its own name; the k-th binder of a name v is
    ``v.k``; term occurrences are numbered in pre-order, e.g. ``{..}@3``.
    """

    classes = []  # labels in first-occurrence order
    seen = set()
    constraints = []
    binder_counts = {}
    term_index = 0

    def touch(label):
        if label not in seen:
            seen.add(label)
            classes.append(label)

    def bind(name):
        k = binder_counts.get(name, 0)
        binder_counts[name] = k + 1
        return f"{name}.{k}"

    def term_class(t, env):
        nonlocal term_index
        if isinstance(t, Variable):
            label = env.get(t.name, t.name)
            touch(label)
            return label
        idx = term_index
        term_index += 1
        if isinstance(t, Constant):
            label = f"{t.name}@{idx}"
            touch(label)
            return label
        if isinstance(t, FnApp):
            label = f"{t.symbol}(..)@{idx}"
            touch(label)
            for a in t.args:
                term_class(a, env)
            return label
        if isinstance(t, SetAbs):
            label = f"{{..}}@{idx}"
            touch(label)
            v_label = bind(t.var)
            touch(v_label)
            constraints.append(Constraint(
                v_label, label, 1,
                f"{{{t.var} : ..}} is one level above {t.var}"))
            walk(t.body, {**env, t.var: v_label})
            return label
        raise TypeError(f"not a term: {t!r}")

    def walk(g, env):
        if isinstance(g, Membership):
            a = term_class(g.lhs, env)
            b = term_class(g.rhs, env)
            constraints.append(Constraint(a, b, 1, f"{a} in {b}"))
        elif isinstance(g, Equality):
            a = term_class(g.lhs, env)
            b = term_class(g.rhs, env)
            constraints.append(Constraint(a, b, 0, f"{a} = {b}"))
        elif isinstance(g, Not):
            walk(g.sub, env)
        elif isinstance(g, BINARY_CLASSES):
            walk(g.lhs, env)
            walk(g.rhs, env)
        elif isinstance(g, QUANT_CLASSES):
            v_label = bind(g.var)
            touch(v_label)
            walk(g.body, {**env, g.var: v_label})

    walk(f, {})
    return classes, constraints


class _OffsetUnionFind:
    """Union-find where each node carries its level offset to the root."""

    def __init__(self):
        self.parent = {}
        self.offset = {}  # level(node) - level(parent chain root), after find

    def add(self, label):
        if label not in self.parent:
            self.parent[label] = label
            self.offset[label] = 0

    def find(self, label):
        root = label
        path = []
        while self.parent[root] != root:
            path.append(root)
            root = self.parent[root]
        # path compression, accumulating offsets to the root
        total = 0
        for node in reversed(path):
            total += self.offset[node]
            self.parent[node] = root
            self.offset[node] = total
        return root, self.offset[label]

    def union(self, lo, hi, delta):
        """Record level(hi) - level(lo) = delta.  Returns False on conflict."""

        r_lo, off_lo = self.find(lo)
        r_hi, off_hi = self.find(hi)
        if r_lo == r_hi:
            return (off_hi - off_lo) == delta
        # level(r_hi) = level(hi) - off_hi = level(lo) + delta - off_hi
        #             = level(r_lo) + off_lo + delta - off_hi
        self.parent[r_hi] = r_lo
        self.offset[r_hi] = off_lo + delta - off_hi
        return True


def _conflict_cycle(accepted, bad: Constraint):
    """Build a constraint cycle witnessing the conflict: a path from bad.lo
    to bad.hi through accepted constraints, closed by the bad edge walked
    backwards.  The offsets around the cycle cannot sum to zero."""

    adj = {}
    for c in accepted:
        adj.setdefault(c.lo, []).append((c.hi, c, 1))
        adj.setdefault(c.hi, []).append((c.lo, c, -1))
    # BFS over the accepted edges (deterministic: insertion order)
    frontier = [bad.lo]
    came = {bad.lo: None}
    while frontier:
        nxt = []
        for node in frontier:
            for other, c, direction in adj.get(node, ()):
                if other not in came:
                    came[other] = (node, c, direction)
                    nxt.append(other)
        frontier = nxt
    path = []
    node = bad.hi
    while came[node] is not None:
        prev, c, direction = came[node]
        path.append((c, direction))
        node = prev
    path.reverse()
    cycle = list(path) + [(bad, -1)]
    total = sum(c.offset * d for c, d in cycle)
    if total < 0:
        cycle = [(c, -d) for c, d in reversed(cycle)]
        total = -total
    return tuple(cycle), total


def stratify(f: Formula):
    """Solve the level constraints; Stratified(levels) or Unstratified with a
    checkable conflict cycle."""

    classes, constraints = collect_constraints(f)
    uf = _OffsetUnionFind()
    for label in classes:
        uf.add(label)
    accepted = []
    for c in constraints:
        if not uf.union(c.lo, c.hi, c.offset):
            cycle, total = _conflict_cycle(accepted, c)
            return Unstratified(cycle, total)
        accepted.append(c)
    # normalize: per component, shift so the minimum level is 0
    component_min = {}
    raw = {}
    for label in classes:
        root, off = uf.find(label)
        raw[label] = (root, off)
        if root not in component_min or off < component_min[root]:
            component_min[root] = off
    levels = {label: off - component_min[root] for label, (root, off) in raw.items()}
    return Stratified(levels)


def check_levels(f: Formula, levels: dict) -> bool:
    """Recheck an assignment against freshly collected constraints, without
    going through the solver."""

    classes, constraints = collect_constraints(f)
    if set(levels) != set(classes):
        return False
    return all(levels[c.hi] - levels[c.lo] == c.offset for c in constraints)


def check_conflict_cycle(f: Formula, result: Unstratified) -> bool:
    """A conflict witness is valid when its edges are real constraints of f,
    it forms a closed walk, and its offsets sum to a nonzero value."""

    _, constraints = collect_constraints(f)
    pool = set(constraints)
    if not result.cycle:
        return False
    if any(c not in pool for c, _ in result.cycle):
        return False
    node = None
    start = None
    for c, d in result.cycle:
        src, dst = (c.lo, c.hi) if d == 1 else (c.hi, c.lo)
        if node is None:
            start = src
        elif src != node:
            return False
        node = dst
    if node != start:
        return False
    total = sum(c.offset * d for c, d in result.cycle)
    return total == result.cycle_sum and total != 0
