"""Finite closure algebras ``2^P`` with closure = down-set, and the Q_k family.

``Q_k`` has elements ``0..k`` and ``k+2``.  In the ``literal`` variant
``i < j`` iff ``i >= j+2`` or ``i == j <= k``; the ``prop`` variant drops the
single pair ``(k+2, k)``.  Only ``k+2`` is free of a self-loop, so it is the
one atom standing for an isolated point; every other atom stands for a
perfect set.

The ``h_n`` sequence of a closed set ``C`` is
``h_1 = C``, ``h_2 = C & cl(1 - C)``, ``h_{n+1} = h_n & cl(h_{n-1} - h_n)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import FrozenSet, List, Optional, Tuple

from .errors import (
    EqualIndicesError,
    MalformedDescriptorError,
    NotClosedError,
    NotLowerError,
    WitnessMissingError,
)
from .measure import O, mplus
from .ordinal import ONE, ZERO
from .posys import POSystem

VARIANTS = ("prop", "literal")


class ClosureAlgebra:
    def __init__(self, base: POSystem):
        self.base = base

    @property
    def top(self) -> FrozenSet:
        return self.base.elements

    def closure(self, s) -> FrozenSet:
        s = frozenset(s)
        if not s <= self.top:
            raise ValueError("subset mentions unknown elements")
        return self.base.down(s)

    def is_closed(self, s) -> bool:
        s = frozenset(s)
        return self.closure(s) == s

    def is_clopen(self, s) -> bool:
        s = frozenset(s)
        return self.base.is_lower(s) and self.base.is_upper(s)

    def clopens(self) -> List[FrozenSet]:
        """All clopen subsets, i.e. unions of connected components."""
        comps = _components(self.base)
        out = []
        for r in range(len(comps) + 1):
            for pick in combinations(comps, r):
                out.append(frozenset().union(*pick))
        return out

    def relative(self, a) -> "ClosureAlgebra":
        """``2^A`` for a clopen ``A``."""
        return ClosureAlgebra(self.base.sub(a))


def _components(p: POSystem) -> List[FrozenSet]:
    seen, comps = set(), []
    for x in p:
        if x in seen:
            continue
        stack, comp = [x], set()
        while stack:
            y = stack.pop()
            if y in comp:
                continue
            comp.add(y)
            stack.extend((p.above(y) | p.below(y)) - comp)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def closure(alg: ClosureAlgebra, s) -> FrozenSet:
    return alg.closure(s)


def q_system(k: int, variant: str = "prop") -> POSystem:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}")
    if k < 0:
        raise ValueError("k must be non-negative")
    elems = list(range(k + 1)) + [k + 2]
    pairs = [(i, j) for i in elems for j in elems if i >= j + 2 or (i == j <= k)]
    if variant == "prop":
        pairs.remove((k + 2, k))
    return POSystem(elems, pairs)


def q_algebra(k: int, variant: str = "prop") -> ClosureAlgebra:
    return ClosureAlgebra(q_system(k, variant))


def p_nk(n: int, k: int) -> FrozenSet[int]:
    """``{n, ..., k, k+2}``."""
    return frozenset(range(n, k + 1)) | {k + 2}


def h_sequence(alg: ClosureAlgebra, c, upto: int) -> List[FrozenSet]:
    c = frozenset(c)
    if not alg.is_closed(c):
        raise NotClosedError(f"{sorted(c)} is not closed")
    if upto < 1:
        return []
    seq = [c]
    if upto >= 2:
        seq.append(c & alg.closure(alg.top - c))
    while len(seq) < upto:
        seq.append(seq[-1] & alg.closure(seq[-2] - seq[-1]))
    return seq


def isolated_atoms(alg: ClosureAlgebra, s) -> FrozenSet:
    s = frozenset(s)
    if not alg.base.is_lower(s):
        raise NotLowerError(f"{sorted(s)} is not a lower subset")
    return alg.base.maximal(s) & alg.base.d_set


# stage profiles and witnesses ---------------------------------------------------

@dataclass(frozen=True)
class StageProfile:
    kind: str  # "empty", "singleton" or "perfect"
    isolated: int

    def __str__(self):
        if self.kind == "perfect":
            return f"has_perfect_part ({self.isolated} isolated)"
        return self.kind


def _profile_of(alg: ClosureAlgebra, h: FrozenSet) -> StageProfile:
    if not h:
        return StageProfile("empty", 0)
    iso = len(isolated_atoms(alg, h))
    if h <= alg.base.d_set:
        return StageProfile("singleton" if len(h) == 1 else "finite", iso)
    return StageProfile("perfect", iso)


def stage_profiles(k: int, upto: int, variant: str = "prop") -> List[StageProfile]:
    alg = q_algebra(k, variant)
    return [_profile_of(alg, h) for h in h_sequence(alg, p_nk(1, k), upto)]


def stage_profile(k: int, n: int, variant: str = "prop") -> StageProfile:
    if n < 1:
        raise ValueError("stages start at 1")
    return stage_profiles(k, n, variant)[n - 1]


def restriction_can_match(target: StageProfile, source: StageProfile) -> bool:
    """Can some clopen restriction of ``source`` look like ``target``?"""
    if target.kind == "empty":
        return True
    if target.kind in ("singleton", "finite"):
        return source.isolated >= target.isolated
    return source.kind == "perfect" and source.isolated >= target.isolated


@dataclass(frozen=True)
class Witness:
    k: int
    m: int
    stage: int
    k_profile: StageProfile
    m_profile: StageProfile
    separating_stages: Tuple[int, ...]
    variant: str

    def describe(self) -> str:
        return (f"stage {self.stage}: h_{self.stage} for Q_{self.k} is {self.k_profile}, "
                f"no clopen part of Q_{self.m} stage ({self.m_profile}) matches")


def incompatibility_witness(k: int, m: int, variant: str = "prop", upto: Optional[int] = None) -> Optional[Witness]:
    if k == m:
        raise EqualIndicesError(f"k and m are both {k}")
    upto = upto or max(k, m) + 3
    pk = stage_profiles(k, upto, variant)
    pm = stage_profiles(m, upto, variant)
    stages = tuple(n + 1 for n in range(upto) if not restriction_can_match(pk[n], pm[n]))
    if not stages:
        return None
    s = stages[0]
    return Witness(k, m, s, pk[s - 1], pm[s - 1], stages, variant)


# completion of characteristic-function measures --------------------------------

@dataclass(frozen=True)
class CompletionSpec:
    """Characteristic-function measures of type-``Q_k`` sets, glued at ``c``."""

    components: Tuple[int, ...]
    variant: str = "prop"

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))


@dataclass(frozen=True)
class Piece:
    """A non-empty clopen ``B`` inside component ``n``, meeting ``C_n`` or not."""

    component: int
    meets_c: bool


@dataclass(frozen=True)
class Component:
    """The whole of ``X_n``."""

    component: int


@dataclass(frozen=True)
class Tail:
    """``A_n``: the point ``c`` together with every ``X_m``, ``m >= n``."""

    n: int


@dataclass(frozen=True)
class Union:
    parts: Tuple = ()


def _check_index(spec: CompletionSpec, n: int):
    if not 1 <= n <= len(spec.components):
        raise MalformedDescriptorError(f"component index {n} outside 1..{len(spec.components)}")


def completion_sigma_eval(spec: CompletionSpec, d):
    if isinstance(d, Piece):
        _check_index(spec, d.component)
        return ONE if d.meets_c else ZERO
    if isinstance(d, Component):
        _check_index(spec, d.component)
        return ONE  # each C_m is non-empty
    if isinstance(d, Tail):
        _check_index(spec, d.n)
        value = O
        for m in range(d.n, len(spec.components) + 1):
            value = mplus(value, completion_sigma_eval(spec, Component(m)))
        return value
    if isinstance(d, Union):
        value = O
        for part in d.parts:
            value = mplus(value, completion_sigma_eval(spec, part))
        return value
    raise MalformedDescriptorError(f"unknown descriptor {d!r}")


@dataclass
class NonPrimitivityReport:
    components: Tuple[int, ...]
    variant: str
    bad_point: str
    sigma_primitive: bool
    pair_witnesses: List[dict] = field(default_factory=list)
    proof_cases: List[dict] = field(default_factory=list)

    def to_json(self):
        return {
            "components": [f"Q_{k}" for k in self.components],
            "variant": self.variant,
            "bad_point": self.bad_point,
            "sigma_primitive": self.sigma_primitive,
            "pairs": self.pair_witnesses,
            "proof_cases": self.proof_cases,
        }


def _witness_json(w: Witness) -> dict:
    return {
        "stage": w.stage,
        "separating_stages": list(w.separating_stages),
        "k_profile": str(w.k_profile),
        "m_profile": str(w.m_profile),
    }


def nonprimitivity_report(spec: CompletionSpec) -> NonPrimitivityReport:
    comps = spec.components
    if len(comps) < 2:
        raise WitnessMissingError(None, "a certificate needs at least two components")
    pairs = []
    for i, j in combinations(range(1, len(comps) + 1), 2):
        k, m = comps[i - 1], comps[j - 1]
        if k == m:
            raise WitnessMissingError((i, j))
        fwd = incompatibility_witness(k, m, spec.variant)
        back = incompatibility_witness(m, k, spec.variant)
        if fwd is None or back is None:
            raise WitnessMissingError((i, j))
        pairs.append({"pair": [i, j], "k": k, "m": m,
                      "forward": _witness_json(fwd), "backward": _witness_json(back)})
    cases = [
        {"case": "x != c",
         "argument": "x lies in some X_k; a small enough tail A_n misses x, and any neighbourhood E of x "
                     "inside X_k would need a measure-preserving copy of X_n inside X_k, "
                     "ruled out by the (n, k) witness"},
        {"case": "x = c",
         "argument": "a homeomorphism onto a smaller neighbourhood either moves c into some X_k, "
                     "forcing a late component X_m into X_k, or fixes c and sends X_n into "
                     "the other components; both are ruled out by the pairwise witnesses"},
    ]
    return NonPrimitivityReport(comps, spec.variant, "c", False, pairs, cases)
