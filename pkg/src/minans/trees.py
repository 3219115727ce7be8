"""Top-down enumeration of cyclic trees and their summaries.

A tree is grown depth first, always expanding the left-most predicate node
that still lacks its rule child.  Only the summary sets are kept, and trees
are merged when their S-sets coincide.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from minans.core import Database, LiteralSet, bits
from minans.errors import PartitionRequired


@dataclass(frozen=True)
class TreeSummary:
    root: int
    pred: int
    out: int
    negs: int
    rules: int = field(default=0, compare=False)  # bitmask of rule indices used
    trace: tuple = field(default=(), compare=False, repr=False)

    @property
    def s(self) -> LiteralSet:
        return LiteralSet(self.out | self.negs, self.pred)

    def consistent_with(self, c: LiteralSet) -> bool:
        return not (self.pred & c.pos or (self.out | self.negs) & c.neg)


@dataclass
class TreeNode:
    kind: str  # "predicate" or "rule"
    label: int
    children: list = field(default_factory=list)
    cyc: int = 0
    out: int = 0


def tree_count_bound(n: int) -> int:
    """Longest possible branch for a language of `n` atoms."""
    if hasattr(n, "__len__"):
        n = len(n)
    return n * (n + 1) // 2


def _cyc(path):
    """CYC of the last node on `path` (labels from the root down)."""
    lab = path[-1]
    top = path.index(lab)
    m = 0
    for a in path[top:]:
        m |= 1 << a
    return m


class TreeSource:
    """Cyclic-tree summaries for one database, memoized per atom."""

    def __init__(self, db: Database, hidden_facts: int = 0):
        self.db = db
        self.rules = db.rules
        self.bound = tree_count_bound(len(db.lang))
        self.hidden_facts = hidden_facts  # unit-fact atoms elided from summaries
        self._cache = {}

    def trees(self, p: int, forbid: Optional[LiteralSet] = None) -> tuple:
        if p not in self._cache:
            self._cache[p] = tuple(self._enumerate(p))
        found = self._cache[p]
        if forbid is None:
            return found
        return tuple(t for t in found if t.consistent_with(forbid))

    def _enumerate(self, p):
        rules = self.rules
        seen_s = {}
        visited = set()
        bound = self.bound
        # state: pending paths (tuple of tuples), pred, out, negs, used rules, trace
        stack = [(((p,),), 1 << p, 0, 0, 0, ())]
        while stack:
            pending, pred, out, negs, used, trace = stack.pop()
            key = (pending, pred, out, negs)
            if key in visited:
                continue
            visited.add(key)
            if not pending:
                sk = (pred, out | negs)
                if sk not in seen_s:
                    seen_s[sk] = TreeSummary(p, pred, out, negs, used, trace)
                continue
            path = pending[0]
            rest = pending[1:]
            cyc = _cyc(path)
            children = []
            for idx, r in enumerate(rules):
                if not r.conseq & cyc or r.antec & cyc:
                    continue
                o2 = out | (r.conseq & ~cyc)
                n2 = negs | r.negbody
                p2 = pred | r.antec
                if p2 & (o2 | n2):
                    continue
                if len(path) >= bound and r.antec:
                    continue  # branch-length guard
                kids = tuple(path + (a,) for a in bits(r.antec))
                children.append((kids + rest, p2, o2, n2, used | (1 << idx), trace + ((path, idx),)))
            # reversed so the lowest rule index is explored first
            stack.extend(reversed(children))
        return sorted(seen_s.values(), key=lambda t: t.s.key())

    def build(self, summary: TreeSummary) -> TreeNode:
        """Rebuild the node structure of the tree recorded in `summary`."""
        nodes = {}
        root = None
        for path, idx in summary.trace:
            node = nodes.get(path)
            if node is None:
                node = TreeNode("predicate", path[-1], cyc=_cyc(path))
                nodes[path] = node
                if root is None:
                    root = node
            r = self.rules[idx]
            rn = TreeNode("rule", idx, out=r.conseq & ~node.cyc)
            node.children.append(rn)
            for a in bits(r.antec):
                child = TreeNode("predicate", a, cyc=_cyc(path + (a,)))
                nodes[path + (a,)] = child
                rn.children.append(child)
        return root


def cyclic_trees(p: int, db: Database, forbid: Optional[LiteralSet] = None) -> tuple:
    return TreeSource(db).trees(p, forbid)


def partial_source(db: Database) -> TreeSource:
    """Tree source for partial trees: INT(T) plus a unit fact per extensional atom."""
    if not db.lang.partitioned:
        raise PartitionRequired("partial trees need an extensional/intensional partition")
    return TreeSource(db.int_lang_ext(), hidden_facts=db.lang.ext)


def partial_cyclic_trees(p: int, db: Database) -> tuple:
    if not db.lang.partitioned:
        raise PartitionRequired("partial trees need an extensional/intensional partition")
    return partial_source(db).trees(p)
