"""Step measures on finite trees of clopen cylinders.

A tree is a nested list: an inner node is a list of children (arity >= 1),
a leaf is an ordinal label.  Each leaf stands for a copy of the Cantor set
on which the rank function is constant, so the measure of a region is the
largest label under it.  Regions are collections of node paths, a path
being a tuple of child indices (``()`` is the root).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import total_ordering
from typing import Dict, FrozenSet, List, Sequence, Tuple, Union

from .errors import (
    EmptyRegionError,
    NotIsomorphicError,
    ParseError,
    PathTooShortError,
    RegionNotInTreeError,
)
from .ordinal import Ordinal, _OrdinalParser, format_ordinal, ordinal

Path = Tuple[int, ...]


@total_ordering
class _Bottom:
    """The unit ``o`` of the max-monoid: below every ordinal."""

    __slots__ = ()

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("o")

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, (Ordinal, int)):
            return True
        return NotImplemented

    def __repr__(self):
        return "o"

    __str__ = __repr__

    def __reduce__(self):
        return (_bottom, ())


O = _Bottom()


def _bottom():
    return O


def mplus(a, b):
    """Monoid operation: ``max`` with ``o`` as unit."""
    if a is O:
        return b
    if b is O:
        return a
    return max(a, b)


class TreeMeasure:
    def __init__(self, tree):
        self.tree = self._normalise(tree)
        self._leaves: Dict[Path, Ordinal] = {}
        self._nodes: Dict[Path, object] = {}
        self._walk(self.tree, ())

    @classmethod
    def _normalise(cls, node):
        if isinstance(node, (list, tuple)):
            if not node:
                raise ValueError("inner nodes need at least one child")
            return tuple(cls._normalise(c) for c in node)
        return ordinal(node)

    def _walk(self, node, path):
        self._nodes[path] = node
        if isinstance(node, tuple):
            for i, child in enumerate(node):
                self._walk(child, path + (i,))
        else:
            self._leaves[path] = node

    @property
    def leaves(self) -> Dict[Path, Ordinal]:
        return dict(self._leaves)

    @property
    def nodes(self) -> List[Path]:
        return sorted(self._nodes)

    def is_leaf(self, path: Path) -> bool:
        return path in self._leaves

    def label(self, leaf: Path) -> Ordinal:
        return self._leaves[leaf]

    def leaves_under(self, region) -> FrozenSet[Path]:
        out = set()
        for p in region:
            p = tuple(p)
            if p not in self._nodes:
                raise RegionNotInTreeError(f"{p} is not a node of the tree")
            n = len(p)
            out.update(l for l in self._leaves if l[:n] == p)
        return frozenset(out)

    def __eq__(self, other):
        return isinstance(other, TreeMeasure) and self.tree == other.tree

    def __hash__(self):
        return hash(self.tree)

    def __repr__(self):
        return f"TreeMeasure({format_tree(self)})"


def _region(region) -> List[Path]:
    return [tuple(p) for p in region]


def sigma_eval(m: TreeMeasure, region):
    value = O
    for leaf in m.leaves_under(_region(region)):
        value = mplus(value, m.label(leaf))
    return value


def rank_of_point(m: TreeMeasure, path: Sequence[int]) -> Ordinal:
    """Label of the leaf containing the point; digits past the leaf are ignored."""
    path = tuple(path)
    for i in range(len(path) + 1):
        prefix = path[:i]
        if prefix not in m._nodes:
            raise RegionNotInTreeError(f"{prefix} is not a node of the tree")
        if m.is_leaf(prefix):
            return m.label(prefix)
    raise PathTooShortError(f"path {path} stops at an inner node")


def measure_from_ranks(shape: TreeMeasure, ranks: Dict[Path, Ordinal]) -> TreeMeasure:
    """Rebuild a measure on the shape of ``shape`` from a leaf-wise rank function."""

    def build(node, path):
        if isinstance(node, tuple):
            return [build(c, path + (i,)) for i, c in enumerate(node)]
        return ranks[path]

    return TreeMeasure(build(shape.tree, ()))


def value_set(m: TreeMeasure, region) -> FrozenSet[Ordinal]:
    return frozenset(m.label(l) for l in m.leaves_under(_region(region)))


def _nonempty_values(m, region):
    values = value_set(m, region)
    if not values:
        raise EmptyRegionError("region is empty")
    return values


def sigma_iso_decide(m1: TreeMeasure, region1, m2: TreeMeasure, region2) -> bool:
    return _nonempty_values(m1, region1) == _nonempty_values(m2, region2)


def self_similar_points(m: TreeMeasure, region) -> FrozenSet[Path]:
    values = _nonempty_values(m, region)
    leaves = m.leaves_under(_region(region))
    return leaves if len(values) == 1 else frozenset()


def sigma_pi_decide(m: TreeMeasure, region) -> bool:
    return bool(self_similar_points(m, region))


# explicit isomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class Cell:
    """Sub-cylinder ``sub`` (a binary string) of a leaf; ``""`` is the whole leaf."""

    leaf: Path
    sub: str = ""


def comb(k: int) -> List[str]:
    """Partition of a cylinder into ``k`` sub-cylinders: ``1, 01, ..., 0..01, 0..0``."""
    if k == 1:
        return [""]
    return ["0" * i + "1" for i in range(k - 1)] + ["0" * (k - 1)]


def cell_sigma(m: TreeMeasure, cell: Cell):
    return sigma_eval(m, [cell.leaf])


@dataclass(frozen=True)
class SigmaIso:
    pairs: Tuple[Tuple[Cell, Cell], ...]

    def left_cells(self):
        return [a for a, _ in self.pairs]

    def right_cells(self):
        return [b for _, b in self.pairs]


def build_sigma_iso(m1: TreeMeasure, region1, m2: TreeMeasure, region2) -> SigmaIso:
    """Pair sub-cylinders of the two regions so paired cells carry equal measure."""
    if not sigma_iso_decide(m1, region1, m2, region2):
        raise NotIsomorphicError("regions carry different value sets")
    by1: Dict[Ordinal, List[Path]] = {}
    by2: Dict[Ordinal, List[Path]] = {}
    for leaf in sorted(m1.leaves_under(_region(region1))):
        by1.setdefault(m1.label(leaf), []).append(leaf)
    for leaf in sorted(m2.leaves_under(_region(region2))):
        by2.setdefault(m2.label(leaf), []).append(leaf)
    pairs = []
    for value in sorted(by1):
        cells1, cells2 = _balanced(by1[value], by2[value])
        pairs.extend(zip(cells1, cells2))
    iso = SigmaIso(tuple(pairs))
    for a, b in iso.pairs:
        if cell_sigma(m1, a) != cell_sigma(m2, b):
            raise AssertionError(f"paired cells {a} and {b} disagree")
    return iso


def _balanced(leaves1, leaves2):
    def cells(leaves, k):
        *head, last = leaves
        return [Cell(l) for l in head] + [Cell(last, s) for s in comb(k - len(head))]

    k = max(len(leaves1), len(leaves2))
    return cells(leaves1, k), cells(leaves2, k)


def sigma_primitive_decide(m: TreeMeasure, region=((),)):
    """Step measures are always primitive: group leaves by label."""
    groups: Dict[Ordinal, set] = {}
    for leaf in m.leaves_under(_region(region)):
        groups.setdefault(m.label(leaf), set()).add(leaf)
    parts = [frozenset(groups[v]) for v in sorted(groups, reverse=True)]
    return True, parts


def trivial_measure(m: TreeMeasure) -> TreeMeasure:
    """Collapse every label to 0: the two-element monoid ``{o, 0}``."""
    return measure_from_ranks(m, {leaf: ordinal(0) for leaf in m.leaves})


# tree literals ------------------------------------------------------------------

class _TreeParser(_OrdinalParser):
    def node(self):
        if self.peek() != "[":
            return self.ord()
        self.pos += 1
        children = [self.node()]
        while self.peek() == ",":
            self.pos += 1
            children.append(self.node())
        self.expect("]")
        return children


def parse_tree(text: str) -> TreeMeasure:
    s = re.sub(r"\s+", "", text)
    p = _TreeParser(s)
    if p.peek() != "[":
        p.error("a tree literal starts with '['")
    tree = p.node()
    if p.pos != len(s):
        p.error("unexpected trailing input")
    return TreeMeasure(tree)


def format_tree(m: Union[TreeMeasure, object]) -> str:
    node = m.tree if isinstance(m, TreeMeasure) else m
    if isinstance(node, tuple):
        return "[" + ",".join(format_tree(c) for c in node) + "]"
    return format_ordinal(node).replace(" ", "")


def parse_region(text: str) -> List[Path]:
    """``"0.1;1"`` names nodes (0,1) and (1,); ``""`` or ``"root"`` is the whole tree."""
    text = text.strip()
    if text in ("", "root"):
        return [()]
    try:
        return [tuple(int(x) for x in part.split(".") if x != "") for part in text.split(";")]
    except ValueError:
        raise ParseError(f"invalid region {text!r}") from None


def random_tree(rng, depth: int = 4, labels=(0, 1, 2, "w"), max_arity: int = 2, leaf_prob: float = 0.3):
    def build(d):
        if d == 0 or rng.random() < leaf_prob:
            return rng.choice(labels)
        return [build(d - 1) for _ in range(rng.randint(1, max_arity))]

    tree = build(depth)
    return TreeMeasure(tree if isinstance(tree, list) else [tree])
