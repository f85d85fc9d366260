"""Finite posets, their downset lattices, and finite Heyting algebras.

Downsets are bitsets over poset indices: bit ``i`` is set iff element ``i``
belongs to the downset.  The Heyting algebra of downsets lists its elements
in ascending numeric bitset order, so element 0 is always the empty downset.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from pathlib import Path
from typing import Iterable, NamedTuple, Sequence

from .errors import (
    AlgebraTooLarge,
    CycleDetected,
    DuplicateLabel,
    IndexOutOfRange,
    PosetError,
    PosetTooLarge,
    UnknownLabel,
)
from .laws import Violation

MAX_POSET_SIZE = 16
MAX_ALGEBRA_SIZE = 1024


def _bits(mask: int) -> Iterable[int]:
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


@dataclass(frozen=True)
class Poset:
    """A finite partial order on labelled elements.

    ``leq[i][j]`` is true iff element ``i`` is below element ``j``.  The
    constructor validates the order axioms; use :func:`build_poset` to start
    from cover relations or any generating set of pairs.
    """

    elements: tuple[str, ...]
    leq: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.elements)
        if n > MAX_POSET_SIZE:
            raise PosetTooLarge(f"{n} elements exceeds the limit of {MAX_POSET_SIZE}")
        if len(set(self.elements)) != n:
            dup = next(e for e in self.elements if self.elements.count(e) > 1)
            raise DuplicateLabel(dup)
        if len(self.leq) != n or any(len(row) != n for row in self.leq):
            raise PosetError("order matrix must be square over the elements")
        for i in range(n):
            if not self.leq[i][i]:
                raise PosetError(f"order is not reflexive at {self.elements[i]!r}")
            for j in range(n):
                if i != j and self.leq[i][j] and self.leq[j][i]:
                    raise CycleDetected(
                        f"{self.elements[i]!r} and {self.elements[j]!r} are mutually below"
                    )
                if self.leq[i][j]:
                    for k in range(n):
                        if self.leq[j][k] and not self.leq[i][k]:
                            raise PosetError("order is not transitive")

    def __len__(self) -> int:
        return len(self.elements)

    @cached_property
    def below(self) -> tuple[int, ...]:
        """``below[i]`` is the bitset of the principal downset of ``i``."""
        n = len(self.elements)
        return tuple(
            sum(1 << j for j in range(n) if self.leq[j][i]) for i in range(n)
        )

    @cached_property
    def above(self) -> tuple[int, ...]:
        n = len(self.elements)
        return tuple(
            sum(1 << j for j in range(n) if self.leq[i][j]) for i in range(n)
        )

    @cached_property
    def _index(self) -> dict[str, int]:
        return {e: i for i, e in enumerate(self.elements)}

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise UnknownLabel(label) from None

    @property
    def full(self) -> int:
        return (1 << len(self.elements)) - 1

    def top(self) -> int | None:
        """Index of the greatest element, if there is one."""
        for i in range(len(self.elements)):
            if self.below[i] == self.full:
                return i
        return None

    def is_downset(self, mask: int) -> bool:
        return all(self.below[i] & ~mask == 0 for i in _bits(mask))

    def n_pairs(self) -> int:
        return sum(row.count(True) for row in self.leq)

    def subposet(self, mask: int) -> tuple["Poset", tuple[int, ...]]:
        """Restrict to the elements in ``mask``.

        Returns the sub-poset and the tuple mapping its indices back to
        indices of ``self``.
        """
        idx = tuple(_bits(mask))
        sub = Poset(
            tuple(self.elements[i] for i in idx),
            tuple(tuple(self.leq[i][j] for j in idx) for i in idx),
        )
        return sub, idx

    def format_set(self, mask: int) -> str:
        return "{" + ",".join(self.elements[i] for i in _bits(mask)) + "}"


def build_poset(elements: Sequence[str], pairs: Iterable[tuple[str, str]] = ()) -> Poset:
    """Build a poset from labels and generating pairs ``(a, b)`` meaning a <= b.

    The reflexive-transitive closure of the pairs is taken, so either cover
    relations or the full order may be supplied.
    """
    elements = tuple(elements)
    if len(elements) > MAX_POSET_SIZE:
        raise PosetTooLarge(f"{len(elements)} elements exceeds the limit of {MAX_POSET_SIZE}")
    seen: set[str] = set()
    for e in elements:
        if e in seen:
            raise DuplicateLabel(e)
        seen.add(e)
    index = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for a, b in pairs:
        if a not in index:
            raise UnknownLabel(a)
        if b not in index:
            raise UnknownLabel(b)
        rel[index[a]][index[b]] = True
    for k in range(n):
        for i in range(n):
            if rel[i][k]:
                for j in range(n):
                    if rel[k][j]:
                        rel[i][j] = True
    return Poset(elements, tuple(tuple(row) for row in rel))


def powerset_poset(n: int) -> Poset:
    """P({1..n}) under inclusion, subsets ordered by size then lexicographically."""
    subsets = [c for k in range(n + 1) for c in combinations(range(1, n + 1), k)]
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    leq = tuple(
        tuple(set(a) <= set(b) for b in subsets) for a in subsets
    )
    return Poset(tuple(labels), leq)


def chain_poset(n: int) -> Poset:
    if n < 1:
        raise PosetError("chain length must be at least 1")
    return Poset(
        tuple(str(i) for i in range(n)),
        tuple(tuple(i <= j for j in range(n)) for i in range(n)),
    )


def diamond_poset() -> Poset:
    """0 < a, b < 1 with a, b incomparable."""
    return build_poset(["0", "a", "b", "1"], [("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])


def v_poset() -> Poset:
    """A bottom element with three pairwise incomparable elements above it."""
    return build_poset(["0", "a", "b", "c"], [("0", "a"), ("0", "b"), ("0", "c")])


def poset_from_json(data: dict) -> Poset:
    try:
        elements = data["elements"]
        pairs = data.get("leq", [])
    except (TypeError, KeyError) as exc:
        raise PosetError(f"malformed poset description: {exc}") from None
    return build_poset([str(e) for e in elements], [(str(a), str(b)) for a, b in pairs])


def load_poset(spec: str) -> Poset:
    """Resolve a named poset (``powerset:N``, ``chain:N``, ``diamond``, ``V``) or a JSON file."""
    name, _, arg = spec.partition(":")
    if name == "powerset" and arg:
        n = _int_arg(spec, arg)
        if not 1 <= n <= 4:
            raise PosetError(f"powerset size must be in 1..4, got {n}")
        return powerset_poset(n)
    if name == "chain" and arg:
        return chain_poset(_int_arg(spec, arg))
    if spec == "diamond":
        return diamond_poset()
    if spec in ("V", "v"):
        return v_poset()
    path = Path(spec)
    if not path.is_file():
        raise PosetError(f"unknown poset {spec!r}: not a builtin name or a file")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise PosetError(f"{spec}: invalid JSON ({exc})") from None
    return poset_from_json(data)


def _int_arg(spec: str, arg: str) -> int:
    try:
        return int(arg)
    except ValueError:
        raise PosetError(f"bad size in poset spec {spec!r}") from None


@dataclass(frozen=True)
class Heyting:
    """A finite Heyting algebra given by tables over element indices 0..size-1.

    ``downsets`` and ``base`` are set when the algebra was generated from a
    poset; ``downsets[i]`` is then the bitset denoted by element ``i``.
    """

    size: int
    leq: tuple[tuple[bool, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    join: tuple[tuple[int, ...], ...]
    imp: tuple[tuple[int, ...], ...]
    bot: int
    top: int
    labels: tuple[str, ...]
    base: Poset | None = field(default=None, compare=False)
    downsets: tuple[int, ...] | None = field(default=None, compare=False)

    def neg(self, a: int) -> int:
        return self.imp[a][self.bot]

    def label(self, a: int) -> str:
        return self.labels[a]

    def check_index(self, *xs: int) -> None:
        for x in xs:
            if not (isinstance(x, int) and 0 <= x < self.size):
                raise IndexOutOfRange(f"{x!r} is not an element index of a {self.size}-element algebra")

    def verify(self) -> Violation | None:
        """Brute-force check of every Heyting algebra law.

        Cubic in the size; intended for algebras of at most a few dozen
        elements.
        """
        n = range(self.size)
        le = self.leq
        for a in n:
            if not le[self.bot][a]:
                return Violation("bot is least", (a,))
            if not le[a][self.top]:
                return Violation("top is greatest", (a,))
        for a in n:
            for b in n:
                m, j = self.meet[a][b], self.join[a][b]
                if not (le[m][a] and le[m][b]) or any(
                    le[x][a] and le[x][b] and not le[x][m] for x in n
                ):
                    return Violation("meet is glb", (a, b))
                if not (le[a][j] and le[b][j]) or any(
                    le[a][x] and le[b][x] and not le[j][x] for x in n
                ):
                    return Violation("join is lub", (a, b))
                if self.imp[a][b] != brute_force_imp(self, a, b):
                    return Violation("imp is relative pseudo-complement", (a, b))
        for a in n:
            for b in n:
                for c in n:
                    if self.meet[a][self.join[b][c]] != self.join[self.meet[a][b]][self.meet[a][c]]:
                        return Violation("distributivity", (a, b, c))
        return None


def brute_force_imp(h: Heyting, a: int, b: int) -> int:
    """Greatest x with meet(a, x) <= b, found by scanning every element."""
    candidates = [x for x in range(h.size) if h.leq[h.meet[a][x]][b]]
    greatest = [x for x in candidates if all(h.leq[y][x] for y in candidates)]
    if len(greatest) != 1:
        raise ValueError(f"no relative pseudo-complement for ({a}, {b})")
    return greatest[0]


def enumerate_downsets(p: Poset) -> Heyting:
    """The Heyting algebra of all downsets of ``p`` ordered by inclusion."""
    below = p.below
    masks = [m for m in range(1 << len(p)) if p.is_downset(m)]
    if len(masks) > MAX_ALGEBRA_SIZE:
        raise AlgebraTooLarge(f"{len(masks)} downsets exceeds the limit of {MAX_ALGEBRA_SIZE}")
    index = {m: i for i, m in enumerate(masks)}
    rng = range(len(masks))
    meet = tuple(tuple(index[masks[a] & masks[b]] for b in rng) for a in rng)
    join = tuple(tuple(index[masks[a] | masks[b]] for b in rng) for a in rng)

    def rpc(a: int, b: int) -> int:
        # points whose principal downset meets a only inside b
        outside = a & ~b
        return sum(1 << x for x in range(len(p)) if below[x] & outside == 0)

    imp = tuple(tuple(index[rpc(masks[a], masks[b])] for b in rng) for a in rng)
    leq = tuple(tuple(masks[a] & ~masks[b] == 0 for b in rng) for a in rng)
    return Heyting(
        size=len(masks),
        leq=leq,
        meet=meet,
        join=join,
        imp=imp,
        bot=0,
        top=len(masks) - 1,
        labels=tuple(p.format_set(m) for m in masks),
        base=p,
        downsets=tuple(masks),
    )


def chain_algebra(n: int) -> Heyting:
    """The n-element chain 0 < 1 < ... < n-1 as a Heyting algebra (n >= 2)."""
    if n < 2:
        raise PosetError("a Heyting algebra chain needs at least two elements")
    return enumerate_downsets(chain_poset(n - 1))


def h_imp(h: Heyting, a: int, b: int) -> int:
    h.check_index(a, b)
    return h.imp[a][b]


def h_neg(h: Heyting, a: int) -> int:
    h.check_index(a)
    return h.neg(a)


class BooleanCheck(NamedTuple):
    boolean: bool
    witness: int | None


def is_boolean(h: Heyting) -> BooleanCheck:
    """Whether ``a | ~a`` is top for every ``a``; otherwise the least failing element."""
    for a in range(h.size):
        if h.join[a][h.neg(a)] != h.top:
            return BooleanCheck(False, a)
    return BooleanCheck(True, None)
