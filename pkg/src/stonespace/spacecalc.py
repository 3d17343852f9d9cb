"""Space expressions and the invariant tuple ``[(K,r), nu, rho, n]``.

Expressions are finite trees built from ordinal spaces ``ord(a)``, compact
uniform pieces ``cantor(a)`` (perfect kernel with constant rank ``a``),
binary disjoint sums and countable disjoint sums ``omega*(e)``.  Rank
functions in this class are step functions, so ``(K, r)`` is captured by a
:class:`RankProfile`: the rank values taken on compactly many pieces and
the values taken non-compactly.

Grammar (whitespace-insensitive)::

    expr := atom ("+" atom)*
    atom := "ord(" ord ")" | "cantor(" ord ")" | "omega*(" expr ")" | "(" expr ")"
"""
from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import FrozenSet, Iterable, Optional, Tuple, Union

from .errors import InvalidTupleError, ParseError
from .ordinal import ZERO, Ordinal, _OrdinalParser, format_ordinal, ordinal
from .ordspace import ScatteredType, ordinal_of_type, type_of


# expressions -------------------------------------------------------------------

@dataclass(frozen=True)
class Ord:
    alpha: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "alpha", ordinal(self.alpha))


@dataclass(frozen=True)
class CantorConst:
    a: Ordinal

    def __post_init__(self):
        object.__setattr__(self, "a", ordinal(self.a))


@dataclass(frozen=True)
class Sum:
    left: "SpaceExpr"
    right: "SpaceExpr"


@dataclass(frozen=True)
class OmegaSum:
    body: "SpaceExpr"


SpaceExpr = Union[Ord, CantorConst, Sum, OmegaSum]
EMPTY_EXPR = Ord(ZERO)


def sum_of(parts: Iterable[SpaceExpr]) -> SpaceExpr:
    """Left-nested sum; the empty sum is the empty space."""
    result = None
    for p in parts:
        result = p if result is None else Sum(result, p)
    return EMPTY_EXPR if result is None else result


# profiles and tuples -------------------------------------------------------------

def _ords(xs) -> FrozenSet[Ordinal]:
    return frozenset(ordinal(x) for x in xs)


@dataclass(frozen=True)
class RankProfile:
    fin: FrozenSet[Ordinal] = frozenset()
    inf: FrozenSet[Ordinal] = frozenset()

    def __post_init__(self):
        inf = _ords(self.inf)
        object.__setattr__(self, "inf", inf)
        object.__setattr__(self, "fin", _ords(self.fin) - inf)

    def union(self, other: "RankProfile") -> "RankProfile":
        return RankProfile(self.fin | other.fin, self.inf | other.inf)

    def all_values(self) -> FrozenSet[Ordinal]:
        return self.fin | self.inf

    @property
    def lam(self) -> Ordinal:
        return max(self.all_values(), default=ZERO)

    @property
    def rho_u(self) -> Ordinal:
        return max(self.inf, default=ZERO)

    @property
    def kernel_kind(self) -> str:
        if self.inf:
            return "D0"
        return "D1" if self.fin else "empty"

    def is_empty(self) -> bool:
        return not self.fin and not self.inf

    def to_json(self):
        key = lambda xs: [format_ordinal(x) for x in sorted(xs)]
        return {"fin": key(self.fin), "inf": key(self.inf)}


@dataclass(frozen=True)
class InvariantTuple:
    profile: RankProfile
    nu: Ordinal
    lam: Ordinal
    rho: Ordinal
    rho_u: Ordinal
    n: Optional[int]  # None is -infinity

    @classmethod
    def from_parts(cls, profile: RankProfile, nu, rho, n: Optional[int]) -> "InvariantTuple":
        return cls(profile, ordinal(nu), profile.lam, ordinal(rho), profile.rho_u, n)

    def to_json(self):
        return {
            "nu": format_ordinal(self.nu),
            "lambda": format_ordinal(self.lam),
            "rho": format_ordinal(self.rho),
            "rho_u": format_ordinal(self.rho_u),
            "n": "-inf" if self.n is None else self.n,
            "profile": self.profile.to_json(),
        }

    def is_empty_space(self) -> bool:
        return self.profile.is_empty() and self.nu.is_zero()


EMPTY_TUPLE = InvariantTuple.from_parts(RankProfile(), ZERO, ZERO, None)


def _scattered_tuple(t: ScatteredType) -> InvariantTuple:
    return InvariantTuple.from_parts(RankProfile(), t.nu, t.rho, t.n)


def _sum_tuples(a: InvariantTuple, b: InvariantTuple) -> InvariantTuple:
    if a.is_empty_space():
        return b
    if b.is_empty_space():
        return a
    profile = a.profile.union(b.profile)
    nu = max(a.nu, b.nu)
    rho = max(a.rho, b.rho)
    if a.nu == b.nu:
        n = None if a.n is None or b.n is None else a.n + b.n
    else:
        n = (a if a.nu > b.nu else b).n
    if not nu.is_successor() or profile.lam == nu or rho == nu:
        n = None
    return InvariantTuple.from_parts(profile, nu, rho, n)


def invariants(e: SpaceExpr) -> InvariantTuple:
    if isinstance(e, Ord):
        return _scattered_tuple(type_of(e.alpha))
    if isinstance(e, CantorConst):
        return InvariantTuple.from_parts(RankProfile(fin={e.a}), e.a, ZERO, None)
    if isinstance(e, Sum):
        return _sum_tuples(invariants(e.left), invariants(e.right))
    if isinstance(e, OmegaSum):
        body = invariants(e.body)
        if body.is_empty_space():
            return EMPTY_TUPLE
        profile = RankProfile(inf=body.profile.all_values())
        return InvariantTuple.from_parts(profile, body.nu, body.nu, None)
    raise TypeError(f"not a space expression: {e!r}")


def homeo_decide(e1: SpaceExpr, e2: SpaceExpr) -> bool:
    return invariants(e1) == invariants(e2)


def strongly_uniform_check(e: SpaceExpr) -> bool:
    t = invariants(e)
    return t.nu == t.lam and t.rho == t.rho_u


# existence -----------------------------------------------------------------------

def validate_tuple(t: InvariantTuple) -> bool:
    """Check the four existence conditions; raise :class:`InvalidTupleError` otherwise."""
    if t.lam != t.profile.lam or t.rho_u != t.profile.rho_u:
        raise InvalidTupleError("profile", "lambda and rho_U must be read off the profile")
    if t.n is not None and t.n < 1:
        raise InvalidTupleError("n", "n must be a positive integer or -inf")
    if not t.rho_u <= t.rho:
        raise InvalidTupleError("i", f"rho_U={t.rho_u} exceeds rho={t.rho}")
    top = max(t.rho, t.lam)
    if not top <= t.nu:
        raise InvalidTupleError("ii", f"max(rho, lambda)={top} exceeds nu={t.nu}")
    # a uniform part with lambda == nu may have a limit nu even when rho < nu
    if top < t.nu and not t.nu.is_successor():
        raise InvalidTupleError("iii", f"nu={t.nu} must be a successor since max(rho, lambda)={top} < nu")
    if (t.n is None) != (top == t.nu):
        want = "-inf" if top == t.nu else "finite"
        raise InvalidTupleError("iv", f"n must be {want} (max(rho, lambda)={top}, nu={t.nu})")
    return True


def strongly_uniform_part(profile: RankProfile) -> SpaceExpr:
    """Canonical strongly uniform space with the given profile (empty if none)."""
    parts = [CantorConst(a) for a in sorted(profile.fin)]
    if profile.inf:
        parts.append(OmegaSum(sum_of(CantorConst(a) for a in sorted(profile.inf))))
    return sum_of(parts)


def _scattered_part_type(t: InvariantTuple) -> ScatteredType:
    nu, rho, rho_u, lam = t.nu, t.rho, t.rho_u, t.lam
    if lam == nu:
        return ScatteredType.empty() if rho == rho_u else ScatteredType.limit(rho)
    if rho == rho_u:
        return ScatteredType(nu, ZERO, t.n)
    if rho == nu:
        return ScatteredType.limit(nu)
    return ScatteredType(nu, rho, t.n)


def realize(t: InvariantTuple) -> SpaceExpr:
    validate_tuple(t)
    x = strongly_uniform_part(t.profile)
    y = ordinal_of_type(_scattered_part_type(t))
    if y.is_zero():
        return x
    if x == EMPTY_EXPR:
        return Ord(y)
    return Sum(x, Ord(y))


def decompose(e: SpaceExpr) -> Tuple[SpaceExpr, SpaceExpr]:
    """Split into a strongly uniform part and a scattered part."""
    t = invariants(e)
    x = strongly_uniform_part(t.profile)
    if t.rho == t.rho_u and t.nu == t.lam:
        return x, EMPTY_EXPR
    nu_y = t.rho if t.lam == t.nu else t.nu
    rho_y = ZERO if t.rho_u == t.rho else t.rho
    ty = ScatteredType(nu_y, rho_y) if rho_y == nu_y else ScatteredType(nu_y, rho_y, t.n)
    return x, Ord(ordinal_of_type(ty))


# text form ------------------------------------------------------------------------

def format_expr(e: SpaceExpr) -> str:
    if isinstance(e, Ord):
        return f"ord({format_ordinal(e.alpha)})"
    if isinstance(e, CantorConst):
        return f"cantor({format_ordinal(e.a)})"
    if isinstance(e, OmegaSum):
        return f"omega*({format_expr(e.body)})"
    right = format_expr(e.right)
    if isinstance(e.right, Sum):
        right = f"({right})"
    return f"{format_expr(e.left)} + {right}"


class _ExprParser(_OrdinalParser):
    def keyword(self, word: str) -> bool:
        if self.text.startswith(word, self.pos):
            self.pos += len(word)
            return True
        return False

    def atom(self) -> SpaceExpr:
        if self.keyword("ord("):
            node = Ord(self.ord())
        elif self.keyword("cantor("):
            node = CantorConst(self.ord())
        elif self.keyword("omega*("):
            node = OmegaSum(self.expr())
        elif self.keyword("("):
            node = self.expr()
        else:
            self.error("expected ord(, cantor(, omega*( or (")
        self.expect(")")
        return node

    def expr(self) -> SpaceExpr:
        node = self.atom()
        while self.peek() == "+":
            self.pos += 1
            node = Sum(node, self.atom())
        return node


def parse_expr(text: str) -> SpaceExpr:
    s = re.sub(r"\s+", "", text)
    p = _ExprParser(s)
    node = p.expr()
    if p.pos != len(s):
        p.error("unexpected trailing input")
    return node


def tuple_from_json(obj) -> InvariantTuple:
    """Build a candidate tuple from ``{"profile":{"fin":[..],"inf":[..]},"nu":..,"rho":..,"n":..}``."""
    from .ordinal import parse_ordinal

    try:
        prof = obj.get("profile", {})
        profile = RankProfile(
            fin=[parse_ordinal(str(x)) for x in prof.get("fin", [])],
            inf=[parse_ordinal(str(x)) for x in prof.get("inf", [])],
        )
        n = obj.get("n", "-inf")
        n = None if n in ("-inf", None) else int(n)
        return InvariantTuple.from_parts(profile, parse_ordinal(str(obj["nu"])), parse_ordinal(str(obj["rho"])), n)
    except (KeyError, TypeError, AttributeError) as exc:
        raise ParseError(f"malformed tuple document: {exc}") from None


# generation ----------------------------------------------------------------------

SMALL_VALUES = tuple(ordinal(s) for s in ("0", "1", "2", "w", "w+1", "w*2"))


def random_ordinal(rng: random.Random, max_exp: int = 2, max_coeff: int = 9, max_terms: int = 3,
                   allow_zero: bool = True) -> Ordinal:
    """Random CNF ordinal with exponents drawn from ``{0..max_exp, w, w+1, w*2, w^2}``."""
    exps = [ordinal(i) for i in range(max_exp + 1)]
    if max_exp > 2:
        exps += [ordinal(s) for s in ("w", "w+1", "w*2", "w^2")]
    if allow_zero and rng.random() < 0.05:
        return ZERO
    chosen = sorted(rng.sample(exps, rng.randint(1, min(max_terms, len(exps)))), reverse=True)
    return Ordinal((e, rng.randint(1, max_coeff)) for e in chosen)


def random_expr(rng: random.Random, depth: int = 3) -> SpaceExpr:
    roll = rng.random()
    if depth <= 0 or roll < 0.35:
        if rng.random() < 0.5:
            return Ord(random_ordinal(rng))
        return CantorConst(rng.choice(SMALL_VALUES))
    if roll < 0.8:
        return Sum(random_expr(rng, depth - 1), random_expr(rng, depth - 1))
    return OmegaSum(random_expr(rng, depth - 1))
