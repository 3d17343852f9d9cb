"""Independent reference implementations used by the test suite.

Nothing here calls the fast paths under test; each oracle works straight
from the definitions on explicit finite data.
"""
from __future__ import annotations

import random
from functools import lru_cache
from itertools import product

from stonespace.ordinal import OMEGA, ONE, ZERO, Ordinal, ordinal


# ordinals ------------------------------------------------------------------------

def random_exponent(rng: random.Random, positive: bool = True) -> Ordinal:
    """An exponent no larger than w^2."""
    pool = [1, 2, 3, 4, "w", "w+1", "w+3", "w*2", "w*2+1", "w*5+2", "w^2"]
    if not positive:
        pool.append(0)
    return ordinal(rng.choice(pool))


def random_cnf(rng: random.Random, k: int, last_zero: bool | None = None, max_coeff: int = 9) -> Ordinal:
    """A k-term CNF ordinal with exponents <= w^2.

    ``last_zero`` forces the last exponent to be 0 (True) or positive (False).
    """
    exps = set()
    while len(exps) < k:
        exps.add(random_exponent(rng, positive=False))
        if last_zero is False:
            exps.discard(ZERO)
        if last_zero is True and len(exps) == k and ZERO not in exps:
            exps.pop()
    exps = sorted(exps, reverse=True)
    return Ordinal((e, rng.randint(1, max_coeff)) for e in exps)


# scattered types as plain tuples (nu, rho, n) with n None for (mu, mu) ----------

def rule_add(s, t):
    """Disjoint-union type from the five displayed addition rules."""
    if s[0] == ZERO:
        return t
    if t[0] == ZERO:
        return s
    for a, b in ((s, t), (t, s)):
        full_a, full_b = a[2] is not None, b[2] is not None
        if not full_a and not full_b:
            m = max(a[0], b[0])
            return (m, m, None)
        if full_a and full_b:
            mu1, mu2 = a[0].pred(), b[0].pred()
            if mu1 == mu2:
                return (a[0], max(a[1], b[1]), a[2] + b[2])
            if mu1 < mu2:
                return (b[0], max(a[1], b[1]), b[2])
        if full_a and not full_b:
            mu1, mu2 = a[0].pred(), b[0]
            if mu1 >= mu2:
                return (a[0], max(a[1], mu2), a[2])
            return (b[0], b[0], None)
    raise AssertionError("no rule applies")


def random_type_tuple(rng: random.Random):
    r = rng.random()
    if r < 0.1:
        return (ZERO, ZERO, None)
    if r < 0.4:
        mu = random_exponent(rng)
        return (mu, mu, None)
    mu = random_exponent(rng, positive=False)
    rho = rng.choice([x for x in (ZERO, ONE, ordinal(2), OMEGA, ordinal("w+1"), mu) if x <= mu])
    return (mu.succ(), rho, rng.randint(1, 9))


# PO systems from the definitions ------------------------------------------------

def naive_cb(elements, lt):
    """Cantor-Bendixson sequence, kernel, lambda, rank and K_xi from raw pairs."""
    lt = set(lt)
    d = {p for p in elements if (p, p) not in lt}

    def is_lower(s):
        return all(q in s for p in s for q in elements if (q, p) in lt)

    def down(s):
        return set(s) | {q for p in s for q in elements if (q, p) in lt}

    seq = [set(elements)]
    while True:
        cur = seq[-1]
        maxi = {p for p in cur if not any((p, q) in lt and q != p for q in cur)}
        nxt = cur - (maxi & d)
        if nxt == cur:
            break
        seq.append(nxt)
    nu = len(seq) - 1
    kernel = seq[nu]
    lam = min(x for x in range(nu + 1) if is_lower(seq[x] - kernel))
    rank = {p: min(x for x in range(nu + 1) if p not in down(seq[x] - kernel)) for p in kernel}
    layers = [seq[x] - seq[x + 1] for x in range(nu)]
    k_xi = [{p for p in kernel if rank[p] > x} for x in range(lam + 1)]
    return {"seq": seq, "nu": nu, "kernel": kernel, "lam": lam, "rank": rank,
            "layers": layers, "k_xi": k_xi, "d": d, "is_lower": is_lower, "down": down}


# measures ------------------------------------------------------------------------

def leaf_labels(tree, path=()):
    """Yield (path, label) for every leaf of a nested-list tree."""
    if isinstance(tree, (list, tuple)):
        for i, c in enumerate(tree):
            yield from leaf_labels(c, path + (i,))
    else:
        yield path, ordinal(tree)


def labels_under(tree, region):
    out = []
    for path, lab in leaf_labels(tree):
        if any(path[:len(r)] == tuple(r) for r in region):
            out.append((path, lab))
    return out


def _counts(cells):
    c = {}
    for lab in cells:
        c[lab] = c.get(lab, 0) + 1
    return c


@lru_cache(maxsize=None)
def _reachable(n, max_split):
    """Possible piece counts when each of ``n`` cylinders is cut into 1..max_split pieces."""
    sums = {0}
    for _ in range(n):
        sums = {s + k for s in sums for k in range(1, max_split + 1)}
    return frozenset(sums)


def iso_oracle(cells1, cells2, max_split: int = 16) -> bool:
    """Search for a refinement of both cell families admitting a label-preserving bijection.

    Each cell is a clopen piece on which the measure is constant.  Cutting
    a cell into ``k`` sub-cylinders keeps the label, so an isomorphism exists
    within depth 4 (at most 16 pieces per cell) iff for every label some
    achievable count agrees on both sides.
    """
    c1, c2 = _counts(cells1), _counts(cells2)
    if not c1 and not c2:
        return True
    for lab in set(c1) | set(c2):
        a, b = c1.get(lab, 0), c2.get(lab, 0)
        if not _reachable(a, max_split) & _reachable(b, max_split):
            return False
    return True


def split_atoms(labels, halve: bool):
    """Atoms of the common refinement: whole leaves, or leaves cut in two."""
    if halve:
        return [lab for lab in labels for _ in range(2)]
    return list(labels)


def pi_oracle(labels, max_atoms: int = 12) -> bool:
    """Every 2-part split has a part isomorphic to the whole."""
    atoms = split_atoms(labels, halve=2 * len(labels) <= max_atoms)
    whole = atoms
    n = len(atoms)
    # fix atom 0 on the left to halve the work; the condition is symmetric
    for bits in product((0, 1), repeat=n - 1):
        left = [atoms[0]] + [a for a, b in zip(atoms[1:], bits) if b == 0]
        right = [a for a, b in zip(atoms[1:], bits) if b == 1]
        if not right:
            continue
        if not (iso_oracle(left, whole) or iso_oracle(right, whole)):
            return False
    return True


def self_similar_oracle(cells, max_atoms: int = 12):
    """Paths of cells whose every small enough clopen neighbourhood is isomorphic to the whole.

    Neighbourhoods of a point of cell ``i`` inside the region are: half of
    cell ``i`` plus any choice of the other cells.
    """
    labels = [lab for _, lab in cells]
    out = set()
    for i, (_, lab) in enumerate(cells):
        others = labels[:i] + labels[i + 1:]
        good = True
        for bits in product((0, 1), repeat=len(others)):
            nb = [lab] + [o for o, b in zip(others, bits) if b]
            if not iso_oracle(nb, labels):
                good = False
                break
        if good:
            out.add(cells[i][0])
    return out
