"""Omega-valued sets: a carrier acted on by the meet monoid of a Heyting algebra.

An instance has an action ``action[alpha][p]`` (written alpha.p) and a
truth-valued equality ``eq[p][q]`` (written <p=q>).  Points are ordered by
p <= q iff p = <p=q>.p.  Every operation after :func:`validate_instance`
assumes the instance laws hold.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import EquivalenceBroken, InvalidInstance, NotUpperBound
from .laws import Violation
from .order import Heyting

MAX_LAW_CHECKS = 10**7


@dataclass(frozen=True)
class OmegaSetInstance:
    algebra: Heyting
    carrier: tuple[str, ...]
    action: tuple[tuple[int, ...], ...]
    eq: tuple[tuple[int, ...], ...]

    @property
    def n(self) -> int:
        return len(self.carrier)

    def act(self, alpha: int, p: int) -> int:
        return self.action[alpha][p]

    @cached_property
    def order(self) -> tuple[tuple[bool, ...], ...]:
        """Point order by the first characterisation."""
        r = range(self.n)
        return tuple(tuple(self.action[self.eq[p][q]][p] == p for q in r) for p in r)

    @cached_property
    def up(self) -> tuple[int, ...]:
        """``up[p]``: bitset of points above p."""
        return tuple(sum(1 << q for q in range(self.n) if self.order[p][q]) for p in range(self.n))


def load_instance(h: Heyting, path: str | Path) -> OmegaSetInstance:
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    return instance_from_json(h, data)


def instance_from_json(h: Heyting, data: dict) -> OmegaSetInstance:
    carrier = tuple(str(x) for x in data["carrier"])
    action = tuple(tuple(int(x) for x in row) for row in data["action"])
    eq = tuple(tuple(int(x) for x in row) for row in data["eq"])
    return OmegaSetInstance(h, carrier, action, eq)


def build_omega_self(h: Heyting) -> OmegaSetInstance:
    """The algebra acting on itself by meet, with <b=c> = (b => c) & (c => b)."""
    r = range(h.size)
    return OmegaSetInstance(
        algebra=h,
        carrier=h.labels,
        action=tuple(tuple(h.meet[a][b] for b in r) for a in r),
        eq=tuple(tuple(h.meet[h.imp[b][c]][h.imp[c][b]] for c in r) for b in r),
    )


def validate_instance(inst: OmegaSetInstance) -> Violation | None:
    """Check table shapes and every instance law; return the first failure."""
    h, n = inst.algebra, inst.n
    le = h.leq
    H, X = range(h.size), range(n)
    if h.size * n * max(h.size, n) > MAX_LAW_CHECKS:
        raise ValueError("instance too large for exhaustive law checking")
    if len(inst.action) != h.size or any(len(row) != n for row in inst.action):
        return Violation("action table shape", (h.size, n))
    if len(inst.eq) != n or any(len(row) != n for row in inst.eq):
        return Violation("eq table shape", (n, n))
    for a in H:
        for p in X:
            if not 0 <= inst.action[a][p] < n:
                return Violation("action in carrier", (a, p))
    for p in X:
        for q in X:
            if not 0 <= inst.eq[p][q] < h.size:
                return Violation("eq in algebra", (p, q))
    act, eq = inst.action, inst.eq
    for p in X:
        if act[h.top][p] != p:
            return Violation("unit action", (p,))
    for a in H:
        for b in H:
            for p in X:
                if act[h.meet[a][b]][p] != act[a][act[b][p]]:
                    return Violation("action compatibility", (a, b, p))
    for p in X:
        for q in X:
            e = eq[p][q]
            if act[e][p] != act[e][q]:
                return Violation("well-definedness", (p, q))
    for a in H:
        for p in X:
            if not le[a][eq[act[a][p]][p]]:
                return Violation("assumption (1)", (a, p))
    for p in X:
        for q in X:
            if not le[eq[p][q]][eq[q][p]]:
                return Violation("symmetry", (p, q))
    for p in X:
        for q in X:
            for r in X:
                if not le[h.meet[eq[p][q]][eq[q][r]]][eq[p][r]]:
                    return Violation("transitivity", (p, q, r))
    return None


def require_valid(inst: OmegaSetInstance) -> OmegaSetInstance:
    bad = validate_instance(inst)
    if bad is not None:
        raise InvalidInstance(bad)
    return inst


def characterisations(inst: OmegaSetInstance, p: int, q: int) -> tuple[bool, bool, bool]:
    """The three equivalent forms of p <= q, each evaluated on its own."""
    e = inst.eq[p][q]
    first = p == inst.action[e][p]
    second = p == inst.action[e][q]
    third = any(p == inst.action[a][q] for a in range(inst.algebra.size))
    return first, second, third


def leq_points(inst: OmegaSetInstance, p: int, q: int) -> bool:
    c = characterisations(inst, p, q)
    if c[0] != c[1] or c[1] != c[2]:
        raise EquivalenceBroken(p, q)
    return c[0]


def point_meet(inst: OmegaSetInstance, p: int, q: int) -> int:
    """Greatest lower bound <p=q>.p, with the glb property checked."""
    e = inst.eq[p][q]
    m = inst.action[e][p]
    if m != inst.action[e][q]:
        raise EquivalenceBroken(p, q)
    o = inst.order
    if not (o[m][p] and o[m][q]):
        raise AssertionError(f"meet of {p}, {q} is not a lower bound")
    for r in range(inst.n):
        if o[r][p] and o[r][q] and not o[r][m]:
            raise AssertionError(f"meet of {p}, {q} is not above lower bound {r}")
    return m


def check_adjunction(inst: OmegaSetInstance, p: int) -> Violation | None:
    """F(alpha) = alpha.p is left adjoint to G(q) = <p <= q>, read as <p = p & q>."""
    h, o = inst.algebra, inst.order
    F = [inst.action[a][p] for a in range(h.size)]
    G = [inst.eq[p][point_meet(inst, p, q)] for q in range(inst.n)]
    for a in range(h.size):
        for q in range(inst.n):
            if o[F[a]][q] != h.leq[a][G[q]]:
                return Violation("galois connection", (p, a, q))
    for a in range(h.size):
        if not h.leq[a][G[F[a]]]:
            return Violation("unit", (p, a))
    for q in range(inst.n):
        if not o[F[G[q]]][q]:
            return Violation("counit", (p, q))
    return None


def membership(inst: OmegaSetInstance, Y: Iterable[int], p: int) -> int:
    """<p in Y>: the join of <z=p> over z in Y (bot for empty Y)."""
    h = inst.algebra
    v = h.bot
    for z in Y:
        v = h.join[v][inst.eq[z][p]]
    return v


def sup_bounded(inst: OmegaSetInstance, Y: Sequence[int], p: int) -> int:
    """Least upper bound of ``Y`` computed as <p in Y>.p for an upper bound ``p``."""
    o = inst.order
    for z in Y:
        if not o[z][p]:
            raise NotUpperBound(p, z)
    s = inst.action[membership(inst, Y, p)][p]
    ub = [q for q in range(inst.n) if all(o[y][q] for y in Y)]
    if s not in ub or any(not o[s][q] for q in ub):
        raise AssertionError(f"<p in Y>.p is not the least upper bound of {list(Y)}")
    return s


# -- exhaustive property sweeps ------------------------------------------------


def check_characterisations(inst: OmegaSetInstance) -> Violation | None:
    for p in range(inst.n):
        for q in range(inst.n):
            c = characterisations(inst, p, q)
            if len(set(c)) != 1:
                return Violation("characterisations agree", (p, q))
    return None


def check_partial_order(inst: OmegaSetInstance) -> Violation | None:
    o, X = inst.order, range(inst.n)
    for p in X:
        if not o[p][p]:
            return Violation("reflexive", (p,))
    for p in X:
        for q in X:
            if p != q and o[p][q] and o[q][p]:
                return Violation("antisymmetric", (p, q))
            if o[p][q]:
                for r in X:
                    if o[q][r] and not o[p][r]:
                        return Violation("transitive", (p, q, r))
    return None


def check_monotone(inst: OmegaSetInstance) -> Violation | None:
    h, o, act = inst.algebra, inst.order, inst.action
    H, X = range(h.size), range(inst.n)
    for a in H:
        for b in H:
            if h.leq[a][b]:
                for p in X:
                    if not o[act[a][p]][act[b][p]]:
                        return Violation("monotone in the truth value", (a, b, p))
    for p in X:
        for q in X:
            if o[p][q]:
                for a in H:
                    if not o[act[a][p]][act[a][q]]:
                        return Violation("monotone in the point", (a, p, q))
    return None


def check_meets(inst: OmegaSetInstance) -> Violation | None:
    for p in range(inst.n):
        for q in range(inst.n):
            try:
                point_meet(inst, p, q)
            except (AssertionError, EquivalenceBroken):
                return Violation("glb", (p, q))
    return None


def check_sup_formula(inst: OmegaSetInstance) -> Violation | None:
    """For every subset Y and every upper bound p of Y, <p in Y>.p is the lub of Y.

    All 2^|X| subsets are swept with numpy; the supremum must not depend on
    which upper bound p is used.
    """
    h, n = inst.algebra, inst.n
    if n > 22:
        raise ValueError("carrier too large for an exhaustive subset sweep")
    join = np.asarray(h.join, dtype=np.int32)
    act = np.asarray(inst.action, dtype=np.int32)
    eq = np.asarray(inst.eq, dtype=np.int32)
    up = np.asarray(inst.up, dtype=np.int64)
    full = (1 << n) - 1
    size = 1 << n

    # ub[Y]: bitset of common upper bounds of Y, built by doubling over elements
    ub = np.full(size, full, dtype=np.int64)
    for k in range(n):
        lo = 1 << k
        ub[lo:2 * lo] = ub[:lo] & up[k]
    # every subset is bounded iff ub is non-empty; unbounded subsets are skipped
    sup = np.full(size, -1, dtype=np.int64)
    for p in range(n):
        member = np.full(size, h.bot, dtype=np.int32)
        for k in range(n):
            lo = 1 << k
            member[lo:2 * lo] = join[member[:lo], eq[k, p]]
        bounded_by_p = (ub >> p) & 1 == 1
        s = act[member, p].astype(np.int64)
        s_is_ub = (ub >> s) & 1 == 1
        s_is_least = (ub & ~up[s]) == 0
        bad = np.flatnonzero(bounded_by_p & ~(s_is_ub & s_is_least))
        if bad.size:
            return Violation("sup is least upper bound", (_members(int(bad[0])), p))
        clash = np.flatnonzero(bounded_by_p & (sup >= 0) & (sup != s))
        if clash.size:
            return Violation("sup independent of upper bound", (_members(int(clash[0])), p))
        sup = np.where(bounded_by_p & (sup < 0), s, sup)
    return None


def _members(mask: int) -> tuple[int, ...]:
    return tuple(i for i in range(mask.bit_length()) if mask >> i & 1)


def check_all(inst: OmegaSetInstance) -> list[tuple[str, Violation | None]]:
    """Validate the instance then run every property sweep, in a fixed order."""
    bad = validate_instance(inst)
    results: list[tuple[str, Violation | None]] = [("instance laws", bad)]
    if bad is not None:
        return results
    results.append(("characterisations agree", check_characterisations(inst)))
    results.append(("partial order", check_partial_order(inst)))
    results.append(("action monotone", check_monotone(inst)))
    results.append(("meets are glbs", check_meets(inst)))
    adj = None
    for p in range(inst.n):
        adj = check_adjunction(inst, p)
        if adj is not None:
            break
    results.append(("adjunction", adj))
    results.append(("sup formula", check_sup_formula(inst)))
    return results
