"""Finite PO systems and their Cantor-Bendixson calculus.

A PO system is a finite set with an antisymmetric transitive relation ``<``
in which self-loops ``p < p`` are allowed.  Elements without a self-loop
form ``P^d``.  The derivative removes the maximal elements of ``P^d``; all
other invariants (kernel, rank function, layers) follow from iterating it.

Elements may be any hashable values.  Orders on output are made stable via
:func:`element_key`.
"""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Hashable, Iterable, List, Mapping, Optional, Tuple

from .errors import (
    InvalidExtensionError,
    NotAntisymmetricError,
    NotTransitiveError,
    ParseError,
)

Element = Hashable


def element_key(x):
    if isinstance(x, bool):
        return (2, repr(x))
    if isinstance(x, int):
        return (0, x, "")
    return (1, 0, str(x))


def _sorted(xs):
    return sorted(xs, key=element_key)


class POSystem:
    """Immutable finite PO system; construction validates the relation."""

    __slots__ = ("elements", "lt", "_above", "_below")

    def __init__(self, elements: Iterable[Element], lt: Iterable[Tuple[Element, Element]] = ()):
        self.elements: FrozenSet = frozenset(elements)
        self.lt: FrozenSet = frozenset((a, b) for a, b in lt)
        above = {p: set() for p in self.elements}
        below = {p: set() for p in self.elements}
        for a, b in self.lt:
            if a not in above or b not in above:
                raise ValueError(f"pair ({a!r}, {b!r}) mentions an unknown element")
            above[a].add(b)
            below[b].add(a)
        self._above = {p: frozenset(s) for p, s in above.items()}
        self._below = {p: frozenset(s) for p, s in below.items()}
        self.validate()

    @classmethod
    def from_relation(cls, elements, pairs) -> "POSystem":
        """Build from arbitrary pairs, taking the transitive closure first."""
        elements = list(elements)
        succ = {p: set() for p in elements}
        for a, b in pairs:
            if a not in succ or b not in succ:
                raise ValueError(f"pair ({a!r}, {b!r}) mentions an unknown element")
            succ[a].add(b)
        for k in elements:
            for i in elements:
                if k in succ[i]:
                    succ[i] |= succ[k]
        return cls(elements, ((a, b) for a in elements for b in succ[a]))

    def validate(self):
        for a in _sorted(self.elements):
            for b in _sorted(self._above[a]):
                if a != b and a in self._above[b]:
                    raise NotAntisymmetricError((a, b))
                for c in _sorted(self._above[b]):
                    if c not in self._above[a]:
                        raise NotTransitiveError((a, b, c))
        return True

    # basic structure ----------------------------------------------------
    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(_sorted(self.elements))

    def __contains__(self, x):
        return x in self.elements

    def __eq__(self, other):
        if not isinstance(other, POSystem):
            return NotImplemented
        return self.elements == other.elements and self.lt == other.lt

    def __hash__(self):
        return hash((self.elements, self.lt))

    def __repr__(self):
        pairs = sorted(self.lt, key=lambda t: (element_key(t[0]), element_key(t[1])))
        return f"POSystem({_sorted(self.elements)!r}, {pairs!r})"

    def less(self, a, b) -> bool:
        return b in self._above[a]

    def above(self, p) -> FrozenSet:
        """``{r | r > p}``, containing ``p`` itself when it carries a self-loop."""
        return self._above[p]

    def below(self, p) -> FrozenSet:
        return self._below[p]

    @property
    def d_set(self) -> FrozenSet:
        return frozenset(p for p in self.elements if p not in self._above[p])

    def maximal(self, within=None) -> FrozenSet:
        s = self.elements if within is None else frozenset(within)
        return frozenset(p for p in s if not any(q != p for q in self._above[p] & s))

    def minimal(self, within=None) -> FrozenSet:
        s = self.elements if within is None else frozenset(within)
        return frozenset(p for p in s if not any(q != p for q in self._below[p] & s))

    def down(self, q) -> FrozenSet:
        q = frozenset(q)
        out = set(q)
        for x in q:
            out |= self._below[x]
        return frozenset(out)

    def up(self, q) -> FrozenSet:
        q = frozenset(q)
        out = set(q)
        for x in q:
            out |= self._above[x]
        return frozenset(out)

    def is_lower(self, q) -> bool:
        q = frozenset(q)
        return self.down(q) == q

    def is_upper(self, q) -> bool:
        q = frozenset(q)
        return self.up(q) == q

    def sub(self, subset) -> "POSystem":
        s = frozenset(subset)
        return POSystem(s, ((a, b) for a, b in self.lt if a in s and b in s))

    def relabel(self, mapping: Mapping) -> "POSystem":
        return POSystem((mapping[p] for p in self.elements), ((mapping[a], mapping[b]) for a, b in self.lt))

    # Cantor-Bendixson calculus -----------------------------------------
    def _derive_set(self, s: FrozenSet) -> FrozenSet:
        d = self.d_set
        return s - (self.maximal(s) & d)

    def derivative(self) -> "POSystem":
        return self.sub(self._derive_set(self.elements))

    def cb_sequence(self) -> List[FrozenSet]:
        """``[P^(0), P^(1), ..., P^(nu)]``; the last entry is the kernel."""
        seq = [self.elements]
        while True:
            nxt = self._derive_set(seq[-1])
            if nxt == seq[-1]:
                return seq
            seq.append(nxt)

    def invariants(self) -> "POInvariants":
        return invariants(self)


@dataclass(frozen=True)
class POInvariants:
    nu: int
    lam: int
    kernel: FrozenSet
    rank: Dict[Element, int] = field(hash=False)
    layers: Tuple[FrozenSet, ...]
    k_xi: Tuple[FrozenSet, ...]
    sequence: Tuple[FrozenSet, ...] = field(repr=False)

    def layer(self, xi: int) -> FrozenSet:
        return self.layers[xi] if xi < self.nu else frozenset()

    def k(self, xi: int) -> FrozenSet:
        return self.k_xi[xi] if xi < len(self.k_xi) else frozenset()

    @property
    def p0(self) -> FrozenSet:
        return frozenset(p for p in self.kernel if self.rank[p] == 0)


def validate(p: POSystem) -> bool:
    return p.validate()


def invariants(p: POSystem) -> POInvariants:
    seq = p.cb_sequence()
    nu = len(seq) - 1
    kernel = seq[nu]
    layers = tuple(seq[i] - seq[i + 1] for i in range(nu))
    lam = next(i for i in range(nu + 1) if p.is_lower(seq[i] - kernel))
    downs = [p.down(seq[i] - kernel) for i in range(nu + 1)]
    rank = {x: next(i for i in range(nu + 1) if x not in downs[i]) for x in kernel}
    k_xi = tuple(frozenset(x for x in kernel if rank[x] > i) for i in range(lam + 1))
    inv = POInvariants(nu, lam, kernel, rank, layers, k_xi, tuple(seq))
    alt = alternative_invariants(p, inv)
    assert alt == (nu, lam, rank), "layer formulas disagree with primary definitions"
    return inv


def alternative_invariants(p: POSystem, inv: POInvariants):
    """Recompute ``(nu, lambda, rank)`` from the layers alone."""
    layer = inv.layer
    nu = next(i for i in range(len(p) + 1) if not layer(i))
    layer_downs = [p.down(layer(i)) for i in range(nu + 1)]
    lam_a = next(i for i in range(nu + 1) if not inv.k(i))
    lam_b = next(i for i in range(nu + 1) if not (layer_downs[i] & inv.kernel))
    if lam_a != lam_b:
        return (nu, (lam_a, lam_b), None)
    rank = {x: next(i for i in range(nu + 1) if x not in layer_downs[i]) for x in inv.kernel}
    return (nu, lam_a, rank)


def is_morphism(mapping: Mapping, q: POSystem, p: POSystem) -> bool:
    """Check ``{r in Q | r > x}`` maps onto ``{s in P | s > x.map}`` for every ``x``."""
    if set(mapping) != set(q.elements) or not set(mapping.values()) <= p.elements:
        return False
    return all({mapping[r] for r in q.above(x)} == set(p.above(mapping[x])) for x in q.elements)


# reduction --------------------------------------------------------------

@dataclass(frozen=True, order=True)
class Layer:
    """Element ``xi`` of the reversed ordinal chain ``N(nu)`` inside a reduction."""

    index: int

    def __str__(self):
        return f"layer:{self.index}"


class _Top:
    __slots__ = ()

    def __repr__(self):
        return "TOP"

    __str__ = __repr__

    def __reduce__(self):
        return (_top, ())


TOP = _Top()


def _top():
    return TOP


def reduce(p: POSystem) -> Tuple[POSystem, Dict]:
    """Return ``(red(P), map)`` where ``map`` is the quotient morphism."""
    inv = invariants(p)
    p0 = inv.p0
    k0 = inv.kernel - p0
    elements = set(k0) | {Layer(i) for i in range(inv.nu)}
    pairs = [(a, b) for a, b in p.lt if a in k0 and b in k0]
    pairs += [(Layer(i), Layer(j)) for i in range(inv.nu) for j in range(i)]
    pairs += [(x, Layer(i)) for x in k0 for i in range(inv.nu) if inv.rank[x] > i]
    if p0:
        elements.add(TOP)
        pairs.append((TOP, TOP))
        pairs += [(x, TOP) for x in k0 if p.above(x) & p0]
    red = POSystem.from_relation(elements, pairs)
    mapping = {x: x for x in k0}
    mapping.update({x: TOP for x in p0})
    for i, lay in enumerate(inv.layers):
        mapping.update({x: Layer(i) for x in lay})
    return red, mapping


def is_reduced(p: POSystem) -> bool:
    inv = invariants(p)
    return all(len(l) == 1 for l in inv.layers) and len(inv.p0) <= 1


def n_system(nu: int) -> POSystem:
    """``N(nu)``: elements ``0..nu-1`` with ``i < j`` iff ``i > j`` as integers."""
    return POSystem(range(nu), ((i, j) for i in range(nu) for j in range(i)))


# subsets ------------------------------------------------------------------

def is_finite_foundation(p: POSystem, q, f) -> bool:
    qd, f = p.down(q), frozenset(f)
    return f <= qd and qd <= p.up(f)


def is_finite_ceiling(p: POSystem, q, f) -> bool:
    q, f = frozenset(q), frozenset(f)
    return f <= q and q <= p.down(f)


def lower_upper(p: POSystem, q, foundation=None, ceiling=None) -> dict:
    q = frozenset(q)
    if not q <= p.elements:
        raise ValueError("subset mentions unknown elements")
    out = {
        "is_lower": p.is_lower(q),
        "is_upper": p.is_upper(q),
        "down_closure": p.down(q),
        "up_closure": p.up(q),
    }
    if foundation is not None:
        out["is_finite_foundation"] = is_finite_foundation(p, q, foundation)
    if ceiling is not None:
        out["is_finite_ceiling"] = is_finite_ceiling(p, q, ceiling)
    return out


# extended systems ------------------------------------------------------------

class ExtendedPOSystem:
    """A triple ``(P, L, f)`` with ``L`` lower and ``f`` defined on the minimal
    self-loop-free elements of ``L``."""

    def __init__(self, base: POSystem, L, f: Mapping):
        self.base = base
        self.L = frozenset(L)
        self.f = dict(f)
        if not self.L <= base.elements:
            raise InvalidExtensionError("L mentions elements outside the system")
        if not base.is_lower(self.L):
            raise InvalidExtensionError("L is not a lower subset")
        dom = self.l_min_d
        if set(self.f) != dom:
            raise InvalidExtensionError(
                f"f must be defined exactly on {_sorted(dom)!r}, got {_sorted(self.f)!r}"
            )
        for k, v in self.f.items():
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise InvalidExtensionError(f"f({k!r}) must be a positive integer")

    @property
    def l_min_d(self) -> FrozenSet:
        return self.base.minimal(self.L) & self.base.d_set

    def __eq__(self, other):
        if not isinstance(other, ExtendedPOSystem):
            return NotImplemented
        return (self.base, self.L, self.f) == (other.base, other.L, other.f)

    def __repr__(self):
        return f"ExtendedPOSystem({self.base!r}, L={_sorted(self.L)!r}, f={self.f!r})"


@dataclass(frozen=True)
class PredictedTuple:
    nu: int
    lam: int
    n: Optional[int]  # None stands for -infinity
    rho: Optional[int]  # None when the base is not reduced
    rho_u_range: Optional[Tuple[int, int]]
    rho_u_admissible: Optional[Tuple[int, ...]]
    note: str = ""


def predicted_invariants(e: ExtendedPOSystem) -> PredictedTuple:
    p, L = e.base, e.L
    inv = invariants(p)
    nu, lam = inv.nu, inv.lam
    n = None
    if nu >= 1 and nu > lam:
        top = inv.layers[nu - 1]
        if top <= L:
            n = sum(e.f[x] for x in top)
    if not is_reduced(p):
        return PredictedTuple(nu, lam, n, None, None, None, "base not reduced: rho and rho_U unavailable")
    rho = next(i for i in range(nu + 1) if inv.layer(i) <= L)
    lo = next(i for i in range(lam + 1) if inv.k(i) <= L)
    admissible = tuple(
        x for x in range(lo, rho + 1) if x == 0 or not (inv.k(x - 1) - inv.k(x)) <= L
    )
    note = "rho_U determined" if lo == rho else "rho_U not determined by (P,L,f)"
    return PredictedTuple(nu, lam, n, rho, (lo, rho), admissible, note)


# JSON format -----------------------------------------------------------------

def from_json_obj(obj) -> POSystem | ExtendedPOSystem:
    try:
        elements = list(obj["elements"])
        pairs = [tuple(x) for x in obj.get("lt", [])]
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed PO system document: {exc}") from None
    if any(len(t) != 2 for t in pairs):
        raise ParseError("every entry of 'lt' must be a pair")
    base = POSystem.from_relation(elements, pairs)
    if "L" not in obj and "f" not in obj:
        return base
    # JSON object keys are always strings; match them back to elements
    by_name = {str(x): x for x in base.elements}
    f = {by_name.get(str(k), k): v for k, v in obj.get("f", {}).items()}
    return ExtendedPOSystem(base, obj.get("L", []), f)


def loads(text: str):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from None
    return from_json_obj(obj)


def load_po(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def to_json_obj(p) -> dict:
    if isinstance(p, ExtendedPOSystem):
        obj = to_json_obj(p.base)
        obj["L"] = [str(x) for x in _sorted(p.L)]
        obj["f"] = {str(k): v for k, v in sorted(p.f.items(), key=lambda t: element_key(t[0]))}
        return obj
    pairs = sorted(p.lt, key=lambda t: (element_key(t[0]), element_key(t[1])))
    return {"elements": [str(x) for x in _sorted(p.elements)], "lt": [[str(a), str(b)] for a, b in pairs]}


def dumps(p) -> str:
    return json.dumps(to_json_obj(p))


# generation ------------------------------------------------------------------

def random_po_system(rng=None, size: Optional[int] = None, max_size: int = 10,
                     edge_prob: float = 0.3, loop_prob: float = 0.3) -> POSystem:
    """Random DAG, transitively closed, with independent self-loop bits."""
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if size is None:
        size = rng.randint(1, max_size)
    names = [f"p{i}" for i in range(size)]
    pairs = [(names[i], names[j]) for i in range(size) for j in range(i + 1, size) if rng.random() < edge_prob]
    pairs += [(x, x) for x in names if rng.random() < loop_prob]
    rng.shuffle(names)
    return POSystem.from_relation(names, pairs)
