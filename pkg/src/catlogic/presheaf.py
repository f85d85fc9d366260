"""The subobject classifier of presheaves on a finite poset.

For a poset P, Omega(a) is the set of a-cribles: downward-closed subsets of
the principal downset of a.  For b <= a, restriction sends a crible S on a
to S intersected with the principal downset of b.  Cribles are stored as
bitsets over the indices of the whole poset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import product

from .errors import NoTopElement, UnknownLabel
from .laws import Violation
from .order import Heyting, Poset, _bits, enumerate_downsets


def _cribles_on(p: Poset, a: int) -> tuple[int, ...]:
    """All downsets contained in the principal downset of ``a``, in bitset order."""
    sub, idx = p.subposet(p.below[a])
    return tuple(sorted(_lift(m, idx) for m in enumerate_downsets(sub).downsets))


def _lift(mask: int, idx: tuple[int, ...]) -> int:
    return sum(1 << idx[i] for i in _bits(mask))


@dataclass(frozen=True)
class OmegaPresheaf:
    """Omega tabulated: ``at[a]`` lists the a-cribles and ``restrict[a, b]``
    maps indices into ``at[a]`` to indices into ``at[b]`` for b <= a."""

    base: Poset
    at: tuple[tuple[int, ...], ...]
    restrict: dict[tuple[int, int], tuple[int, ...]]

    def crible_index(self, a: int, mask: int) -> int:
        return self.at[a].index(mask)

    def format_crible(self, mask: int) -> str:
        return self.base.format_set(mask)

    def verify(self) -> Violation | None:
        """Check crible closure, identity and composition of restrictions."""
        p = self.base
        n = len(p)
        for a in range(n):
            for s in self.at[a]:
                if s & ~p.below[a] or not p.is_downset(s):
                    return Violation("crible", (a, s))
            if self.restrict[a, a] != tuple(range(len(self.at[a]))):
                return Violation("identity restriction", (a,))
        for a in range(n):
            for b in _bits(p.below[a]):
                for c in _bits(p.below[b]):
                    r_ab, r_bc, r_ac = self.restrict[a, b], self.restrict[b, c], self.restrict[a, c]
                    for s in range(len(self.at[a])):
                        if r_bc[r_ab[s]] != r_ac[s]:
                            return Violation("composition of restrictions", (a, b, c, s))
        return None

    def algebra_at(self, a: int) -> Heyting:
        """Omega(a) as a Heyting algebra, via the downsets of the principal downset of ``a``."""
        sub, _ = self.base.subposet(self.base.below[a])
        return enumerate_downsets(sub)

    @cached_property
    def global_sections(self) -> list[dict[int, int]]:
        """Natural transformations 1 => Omega, found by direct search.

        Each is a choice of one crible per object, as ``{a: index into at[a]}``,
        compatible with every restriction.  Works whether or not the poset has
        a top element.
        """
        p = self.base
        order = sorted(range(len(p)), key=lambda a: -bin(p.below[a]).count("1"))
        out: list[dict[int, int]] = []

        def extend(k: int, chosen: dict[int, int]):
            if k == len(order):
                out.append(dict(sorted(chosen.items())))
                return
            a = order[k]
            for s in range(len(self.at[a])):
                ok = True
                for b, t in chosen.items():
                    if p.leq[a][b] and self.restrict[b, a][t] != s:
                        ok = False
                        break
                    if p.leq[b][a] and self.restrict[a, b][s] != t:
                        ok = False
                        break
                if ok:
                    chosen[a] = s
                    extend(k + 1, chosen)
                    del chosen[a]

        extend(0, {})
        return sorted(out, key=lambda d: tuple(d[a] for a in range(len(p))))


def build_omega(p: Poset) -> OmegaPresheaf:
    at = tuple(_cribles_on(p, a) for a in range(len(p)))
    restrict = {}
    for a in range(len(p)):
        for b in _bits(p.below[a]):
            target = {m: i for i, m in enumerate(at[b])}
            restrict[a, b] = tuple(target[s & p.below[b]] for s in at[a])
    omega = OmegaPresheaf(p, at, restrict)
    bad = omega.verify()
    if bad is not None:
        raise AssertionError(f"Omega construction broke a law: {bad}")
    return omega


def count_truth_values(p: Poset) -> int:
    """Number of global truth values 1 => Omega.

    The terminal presheaf is represented by the top element, so this equals
    the number of cribles on the top.
    """
    top = p.top()
    if top is None:
        raise NoTopElement("the poset has no greatest element")
    return len(build_omega(p).at[top])


@dataclass(frozen=True)
class SubfunctorOfRepresentable:
    """A subfunctor of the representable presheaf at ``a``.

    ``selected`` is the set of objects b <= a whose unique arrow b -> a is
    kept.
    """

    a: int
    selected: frozenset[int]

    @property
    def mask(self) -> int:
        return sum(1 << b for b in self.selected)


def enumerate_subfunctors(p: Poset, a: int | str) -> list[SubfunctorOfRepresentable]:
    """Every subfunctor of the representable at ``a``, by brute force over selections."""
    if isinstance(a, str):
        a = p.index(a)
    if not 0 <= a < len(p):
        raise UnknownLabel(str(a))
    objs = list(_bits(p.below[a]))
    found = []
    for choice in product((False, True), repeat=len(objs)):
        chosen = {b for b, keep in zip(objs, choice) if keep}
        # restriction along c <= b must keep c whenever b is kept
        if all(c in chosen for b in chosen for c in _bits(p.below[b])):
            found.append(SubfunctorOfRepresentable(a, frozenset(chosen)))
    return sorted(found, key=lambda s: s.mask)


def crible_bijection(p: Poset, a: int) -> dict[int, int]:
    """Pair each subfunctor of the representable at ``a`` with its crible index in Omega(a)."""
    omega = build_omega(p)
    index = {m: i for i, m in enumerate(omega.at[a])}
    subs = enumerate_subfunctors(p, a)
    pairing = {k: index[s.mask] for k, s in enumerate(subs)}
    if len(pairing) != len(index) or len(set(pairing.values())) != len(index):
        raise AssertionError("subfunctors and cribles are not in bijection")
    return pairing


def by_largest_member(p: Poset, cribles: list[int]) -> list[int]:
    """Display order: by the size of the largest member, then member count, then bitset."""

    def rank(i: int) -> int:
        return bin(p.below[i]).count("1")

    def key(mask: int):
        members = list(_bits(mask))
        largest = max((rank(i) for i in members), default=-1)
        return (largest, len(members), mask)

    return sorted(cribles, key=key)
