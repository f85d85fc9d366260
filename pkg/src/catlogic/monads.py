"""Monads on finite sets, Eilenberg-Moore algebras and monad morphisms.

Everything is defined element by element (a unit, a multiplication and a
functorial action on single elements) and only tabulated when a finite set
is actually enumerated.  This keeps towers such as P(P(P(A))) usable
pointwise even where they cannot be listed.

Elements are canonical hashable values: carriers built by :func:`finset`
hold ``0..n-1``, powerset elements are frozensets, and the maybe monad uses
:class:`Just` and :data:`NOTHING`.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product
from typing import Any, Callable, Hashable, Iterable, Iterator

from .errors import BudgetExceeded, CarrierMismatch, LawViolationError
from .laws import Violation

Elem = Hashable
ENUMERATION_LIMIT = 1 << 16


@dataclass(frozen=True)
class FinSet:
    elements: tuple[Elem, ...]

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self) -> Iterator[Elem]:
        return iter(self.elements)

    def __contains__(self, x: Elem) -> bool:
        return x in self._index

    @cached_property
    def _index(self) -> dict[Elem, int]:
        return {x: i for i, x in enumerate(self.elements)}

    def index(self, x: Elem) -> int:
        return self._index[x]


@lru_cache(maxsize=None)
def finset(n: int) -> FinSet:
    return FinSet(tuple(range(n)))


@dataclass(frozen=True)
class FinFn:
    """A total function between finite sets, tabulated by codomain index."""

    dom: FinSet
    cod: FinSet
    table: tuple[int, ...]

    def __post_init__(self):
        if len(self.table) != len(self.dom):
            raise ValueError("table length must equal the domain size")
        if any(not 0 <= t < len(self.cod) for t in self.table):
            raise ValueError("table entry outside the codomain")

    @classmethod
    def tabulate(cls, dom: FinSet, cod: FinSet, fn: Callable[[Elem], Elem]) -> "FinFn":
        return cls(dom, cod, tuple(cod.index(fn(x)) for x in dom))

    @classmethod
    def identity(cls, a: FinSet) -> "FinFn":
        return cls(a, a, tuple(range(len(a))))

    def __call__(self, x: Elem) -> Elem:
        return self.cod.elements[self.table[self.dom.index(x)]]

    def compose(self, other: "FinFn") -> "FinFn":
        """``self`` after ``other``."""
        if other.cod != self.dom:
            raise ValueError("functions do not compose")
        return FinFn(other.dom, self.cod, tuple(self.table[t] for t in other.table))

    def is_surjective(self) -> bool:
        return len(set(self.table)) == len(self.cod)


def all_functions(a: FinSet, b: FinSet) -> Iterator[FinFn]:
    for table in product(range(len(b)), repeat=len(a)):
        yield FinFn(a, b, table)


# -- element formatting ----------------------------------------------------------


@dataclass(frozen=True)
class Just:
    value: Elem

    def __repr__(self) -> str:
        return f"just({show(self.value)})"


@dataclass(frozen=True)
class _Nothing:
    def __repr__(self) -> str:
        return "*"


NOTHING = _Nothing()


def show(x: Any) -> str:
    """Stable text rendering of an element."""
    if isinstance(x, frozenset):
        return "{" + ",".join(sorted((show(y) for y in x), key=_sort_key)) + "}"
    return repr(x) if isinstance(x, (Just, _Nothing)) else str(x)


def _sort_key(s: str):
    return (len(s), s)


# -- functors and monads ---------------------------------------------------------


class Functor:
    """An endofunctor of finite sets, given on objects and pointwise on maps."""

    name = "functor"

    def obj(self, a: FinSet) -> FinSet:
        raise NotImplementedError

    def map_elem(self, f: Callable[[Elem], Elem], t: Elem) -> Elem:
        raise NotImplementedError

    def fmap(self, f: FinFn) -> FinFn:
        return FinFn.tabulate(self.obj(f.dom), self.obj(f.cod), lambda t: self.map_elem(f, t))

    def __repr__(self) -> str:
        return f"<{self.name}>"


class IdentityFunctor(Functor):
    name = "identity"

    def obj(self, a: FinSet) -> FinSet:
        return a

    def map_elem(self, f, t):
        return f(t)


IDENTITY = IdentityFunctor()


class Monad(Functor):
    """A monad (T, mu, eta) on finite sets.

    Subclasses supply ``_elements`` (an enumeration of TA), ``map_elem``,
    ``unit_elem`` and ``mult_elem``.  ``size_bound`` is the largest carrier
    on which the laws are checked.
    """

    size_bound = 4

    # TA is a deterministic function of A; cache since towers get rebuilt often.
    def obj(self, a: FinSet) -> FinSet:
        return _obj_cache(self, a)

    def _elements(self, a: FinSet) -> Iterable[Elem]:
        raise NotImplementedError

    def obj_size(self, n: int) -> int:
        raise NotImplementedError

    def unit_elem(self, x: Elem) -> Elem:
        raise NotImplementedError

    def mult_elem(self, tt: Elem) -> Elem:
        raise NotImplementedError

    def unit(self, a: FinSet) -> FinFn:
        return FinFn.tabulate(a, self.obj(a), self.unit_elem)

    def mult(self, a: FinSet) -> FinFn:
        ta = self.obj(a)
        return FinFn.tabulate(self.obj(ta), ta, self.mult_elem)

    def law_points(self, a: FinSet, depth: int) -> Iterable[Elem]:
        """Elements of T^depth A on which a law is checked.

        The whole of T^depth A when it can be listed.  Monads whose
        multiplication and functorial action preserve unions (the powerset
        family) override this with generators when the set is too large.
        """
        s = a
        for _ in range(depth):
            if self.obj_size(len(s)) > ENUMERATION_LIMIT:
                raise BudgetExceeded(depth, len(a), ENUMERATION_LIMIT)
            s = self.obj(s)
        return s.elements


@lru_cache(maxsize=256)
def _obj_cache(monad: Monad, a: FinSet) -> FinSet:
    return FinSet(tuple(monad._elements(a)))


class IdentityMonad(Monad):
    name = "identity"
    size_bound = 4

    def _elements(self, a):
        return a.elements

    def obj_size(self, n):
        return n

    def map_elem(self, f, t):
        return f(t)

    def unit_elem(self, x):
        return x

    def mult_elem(self, tt):
        return tt


class MaybeMonad(Monad):
    """A + {*}: the unit is ``Just`` and the multiplication collapses double wrapping."""

    name = "maybe"
    size_bound = 4

    def _elements(self, a):
        return (NOTHING, *(Just(x) for x in a))

    def obj_size(self, n):
        return n + 1

    def map_elem(self, f, t):
        return NOTHING if t is NOTHING else Just(f(t.value))

    def unit_elem(self, x):
        return Just(x)

    def mult_elem(self, tt):
        return NOTHING if tt is NOTHING else tt.value


class PowersetMonad(Monad):
    """Subsets: the unit is the singleton and the multiplication is union.

    Subsets of A are listed by bitmask over A's element order.
    """

    name = "powerset"
    size_bound = 3
    nonempty = False

    def _elements(self, a):
        xs = a.elements
        start = 1 if self.nonempty else 0
        for mask in range(start, 1 << len(xs)):
            yield frozenset(x for i, x in enumerate(xs) if mask >> i & 1)

    def obj_size(self, n):
        return (1 << n) - (1 if self.nonempty else 0)

    def map_elem(self, f, t):
        return frozenset(f(x) for x in t)

    def unit_elem(self, x):
        return frozenset((x,))

    def mult_elem(self, tt):
        return frozenset().union(*tt)

    def law_points(self, a, depth):
        try:
            return super().law_points(a, depth)
        except BudgetExceeded:
            if depth != 3:
                raise
        # T^3 A is too large to list.  Both sides of the associativity law are
        # union-preserving in their argument, so agreement on singletons (and
        # the empty set, when allowed) is agreement everywhere.
        t2 = self.obj(self.obj(a))
        singles = [frozenset((x,)) for x in t2]
        return ([] if self.nonempty else [frozenset()]) + singles


class NonemptyPowersetMonad(PowersetMonad):
    name = "nonempty-powerset"
    size_bound = 3
    nonempty = True


BUILTIN_MONADS: dict[str, Monad] = {
    m.name: m for m in (IdentityMonad(), MaybeMonad(), PowersetMonad(), NonemptyPowersetMonad())
}


def builtin_monads() -> list[Monad]:
    return list(BUILTIN_MONADS.values())


def get_monad(name: str) -> Monad:
    try:
        return BUILTIN_MONADS[name]
    except KeyError:
        raise ValueError(f"unknown monad {name!r}; choose from {', '.join(BUILTIN_MONADS)}") from None


# -- law checks ----------------------------------------------------------------


def _sample_maps(max_size: int) -> Iterator[FinFn]:
    for n in range(max_size + 1):
        for m in range(max_size + 1):
            yield from all_functions(finset(n), finset(m))


def check_functor_laws(t: Functor, max_size: int = 2) -> Violation | None:
    """T(id) = id and T(g.f) = Tg.Tf over every map between small carriers."""
    for n in range(max_size + 1):
        a = finset(n)
        if t.fmap(FinFn.identity(a)) != FinFn.identity(t.obj(a)):
            return Violation("functor identity", (n,))
    maps = list(_sample_maps(max_size))
    for f in maps:
        tf = t.fmap(f)
        for g in maps:
            if g.dom != f.cod:
                continue
            if t.fmap(g.compose(f)) != t.fmap(g).compose(tf):
                return Violation("functor composition", (f.table, g.table))
    return None


def check_monad_laws(t: Monad, max_size: int | None = None) -> Violation | None:
    """Unit, associativity and naturality laws on every carrier up to ``max_size``."""
    bound = t.size_bound if max_size is None else max_size
    fl = check_functor_laws(t, min(bound, 2))
    if fl is not None:
        return fl
    for n in range(bound + 1):
        a = finset(n)
        for x in t.obj(a):
            if t.mult_elem(t.unit_elem(x)) != x:
                return Violation("mu . eta T = id", (n, x))
            if t.mult_elem(t.map_elem(t.unit_elem, x)) != x:
                return Violation("mu . T eta = id", (n, x))
        for ttt in t.law_points(a, 3):
            lhs = t.mult_elem(t.mult_elem(ttt))
            rhs = t.mult_elem(t.map_elem(t.mult_elem, ttt))
            if lhs != rhs:
                return Violation("mu . T mu = mu . mu T", (n, ttt))
    for f in _sample_maps(min(bound, 2)):
        tf = t.fmap(f)
        if tf.compose(t.unit(f.dom)) != t.unit(f.cod).compose(f):
            return Violation("eta natural", (f.table,))
        if tf.compose(t.mult(f.dom)) != t.mult(f.cod).compose(t.fmap(tf)):
            return Violation("mu natural", (f.table,))
    return None


# -- algebras --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Algebra:
    """An Eilenberg-Moore algebra (A, sigma: TA -> A), sigma given pointwise."""

    monad: Monad
    carrier: FinSet
    structure: Callable[[Elem], Elem] = field(compare=False)

    @classmethod
    def from_table(cls, monad: Monad, carrier: FinSet, table: FinFn) -> "Algebra":
        if table.dom != monad.obj(carrier) or table.cod != carrier:
            raise ValueError("structure map must go from TA to A")
        return cls(monad, carrier, table)

    @cached_property
    def table(self) -> FinFn:
        return FinFn.tabulate(self.monad.obj(self.carrier), self.carrier, self.structure)

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.monad is other.monad and self.carrier == other.carrier
                and self.table == other.table)

    def __hash__(self):
        return hash((self.monad.name, self.carrier, self.table.table))


def free_algebra(t: Monad, a: FinSet) -> Algebra:
    """(TA, mu_A)."""
    return Algebra(t, t.obj(a), t.mult_elem)


def check_algebra(alg: Algebra) -> Violation | None:
    """sigma . eta = id on A, then sigma . T sigma = sigma . mu on T^2 A.

    Raises BudgetExceeded when T^2 A is too large to list.
    """
    t, sigma = alg.monad, alg.structure
    n = len(alg.carrier)
    if t.obj_size(t.obj_size(n)) > ENUMERATION_LIMIT:
        raise BudgetExceeded(2, n, ENUMERATION_LIMIT)
    for x in alg.carrier:
        if sigma(t.unit_elem(x)) != x:
            return Violation("sigma . eta = id", (x,))
    for tt in t.obj(t.obj(alg.carrier)):
        if sigma(t.map_elem(sigma, tt)) != sigma(t.mult_elem(tt)):
            return Violation("sigma . T sigma = sigma . mu", (tt,))
    return None


def enumerate_algebras(t: Monad, a: FinSet, budget: int = 10**6) -> list[Algebra]:
    """Every algebra structure on ``a``, by filtering all tables TA -> A."""
    ta = t.obj(a)
    if len(a) ** len(ta) > budget:
        raise BudgetExceeded(len(ta), len(a), budget)
    found = []
    for fn in all_functions(ta, a):
        alg = Algebra(t, a, fn)
        if check_algebra(alg) is None:
            found.append(alg)
    return found


def is_homomorphism(h: FinFn, src: Algebra, dst: Algebra) -> bool:
    """h . sigma_A = sigma_B . T h."""
    t = src.monad
    return all(
        h(src.structure(x)) == dst.structure(t.map_elem(h, x)) for x in t.obj(src.carrier)
    )


def homomorphisms(src: Algebra, dst: Algebra) -> list[FinFn]:
    return [h for h in all_functions(src.carrier, dst.carrier) if is_homomorphism(h, src, dst)]


# -- monad morphisms ---------------------------------------------------------------


ThetaElem = Callable[[FinSet, Elem], Elem]


@dataclass(frozen=True)
class MonadMorphism:
    """A monad morphism (F, theta) from T1 to T2, theta_A: T2 F A -> F T1 A.

    ``theta`` is given pointwise: ``theta(A, t)`` for ``t`` in T2 F A.
    """

    source: Monad  # T1
    target: Monad  # T2
    theta: ThetaElem = field(compare=False)
    functor: Functor = IDENTITY
    name: str = ""

    def component(self, a: FinSet) -> FinFn:
        f, t1, t2 = self.functor, self.source, self.target
        return FinFn.tabulate(t2.obj(f.obj(a)), f.obj(t1.obj(a)), lambda t: self.theta(a, t))


def check_monad_morphism(m: MonadMorphism, max_size: int | None = None) -> Violation | None:
    """Naturality of theta, then theta . eta2 F = F eta1, then the multiplication law.

    Naturality is checked over every map between carriers of size <= 2 (or
    ``max_size`` if smaller); the two monad-morphism equations on every
    carrier up to ``max_size``.
    """
    t1, t2, F = m.source, m.target, m.functor
    bound = min(t1.size_bound, t2.size_bound) if max_size is None else max_size
    for f in _sample_maps(min(bound, 2)):
        a, b = f.dom, f.cod
        for t in t2.obj(F.obj(a)):
            lhs = m.theta(b, t2.map_elem(F.fmap(f), t))
            rhs = F.map_elem(t1.fmap(f), m.theta(a, t))
            if lhs != rhs:
                return Violation("theta natural", (f.table, t))
    for n in range(bound + 1):
        a = finset(n)
        fa = F.obj(a)
        eta1 = t1.unit(a)
        for x in fa:
            if m.theta(a, t2.unit_elem(x)) != F.map_elem(eta1, x):
                return Violation("theta . eta2 F = F eta1", (n, x))
        t1a = t1.obj(a)
        mu1 = t1.mult(a)
        for tt in t2.obj(t2.obj(fa)):
            lhs = m.theta(a, t2.mult_elem(tt))
            inner = t2.map_elem(lambda t: m.theta(a, t), tt)
            rhs = F.map_elem(mu1, m.theta(t1a, inner))
            if lhs != rhs:
                return Violation("theta . mu2 F = F mu1 . theta T1 . T2 theta", (n, tt))
    return None


def identity_morphism(t: Monad) -> MonadMorphism:
    return MonadMorphism(t, t, lambda a, x: x, name=f"id[{t.name}]")


def lift_algebra(m: MonadMorphism, alg: Algebra, check: bool = True) -> Algebra:
    """F-hat on objects: (A, sigma) goes to (FA, F sigma . theta_A)."""
    if alg.monad is not m.source:
        raise ValueError("algebra is not over the morphism's source monad")
    if check:
        bad = check_algebra(alg)
        if bad is not None:
            raise LawViolationError(bad)
    F, a, sigma = m.functor, alg.carrier, alg.structure
    lifted = Algebra(m.target, F.obj(a), lambda t: F.map_elem(sigma, m.theta(a, t)))
    if check:
        bad = check_algebra(lifted)
        if bad is not None:
            raise LawViolationError(bad)
    return lifted


def lift_morphism(m: MonadMorphism, alg: Algebra) -> Algebra:
    """Lift a T1-algebra to a T2-algebra, checking (F, theta) on carriers up to |A|."""
    bad = check_monad_morphism(m, max_size=min(len(alg.carrier), m.source.size_bound,
                                               m.target.size_bound))
    if bad is not None:
        raise LawViolationError(bad)
    return lift_algebra(m, alg)


def lift_hom(m: MonadMorphism, h: FinFn) -> FinFn:
    """F-hat on arrows is F itself."""
    return m.functor.fmap(h)


def recover_theta(functor: Functor, source: Monad, target: Monad,
                  lifted: Callable[[Algebra], Algebra]) -> MonadMorphism:
    """Rebuild theta from a lifting of algebras.

    theta_A = sigma~ . T2 F eta1_A, where sigma~ is the structure of the
    lifted free algebra (T1 A, mu1_A).  The lifting must send that free
    algebra to one with carrier F T1 A.
    """

    @lru_cache(maxsize=None)
    def lifted_free(a: FinSet) -> Algebra:
        image = lifted(free_algebra(source, a))
        expected = functor.obj(source.obj(a))
        if image.monad is not target or image.carrier != expected:
            raise CarrierMismatch(f"lifted free algebra on {len(a)} points has the wrong carrier")
        return image

    @lru_cache(maxsize=None)
    def f_eta(a: FinSet) -> FinFn:
        return functor.fmap(FinFn.tabulate(a, source.obj(a), source.unit_elem))

    def theta(a: FinSet, t: Elem) -> Elem:
        return lifted_free(a).structure(target.map_elem(f_eta(a), t))

    return MonadMorphism(source, target, theta, functor, name="recovered")


# -- builtin morphisms ---------------------------------------------------------------


def _maybe_to_powerset(a: FinSet, t: Elem) -> Elem:
    return frozenset() if t is NOTHING else frozenset((t.value,))


def builtin_morphisms() -> dict[tuple[str, str], MonadMorphism]:
    """Shipped morphisms keyed by (source T1, target T2)."""
    mons = BUILTIN_MONADS
    out = {(n, n): identity_morphism(t) for n, t in mons.items()}
    out["powerset", "maybe"] = MonadMorphism(
        mons["powerset"], mons["maybe"], _maybe_to_powerset, name="maybe=>powerset"
    )
    out["powerset", "nonempty-powerset"] = MonadMorphism(
        mons["powerset"], mons["nonempty-powerset"], lambda a, t: t, name="inclusion"
    )
    for n in ("maybe", "powerset", "nonempty-powerset"):
        t = mons[n]
        out[n, "identity"] = MonadMorphism(t, mons["identity"],
                                           lambda a, x, t=t: t.unit_elem(x), name=f"eta[{n}]")
    return out


def random_function(rng: random.Random, a: FinSet, b: FinSet) -> FinFn:
    return FinFn(a, b, tuple(rng.randrange(len(b)) for _ in range(len(a))))
