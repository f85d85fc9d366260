import random

import pytest

from catlogic.errors import BudgetExceeded, CarrierMismatch, LawViolationError
from catlogic.monads import (
    IDENTITY,
    NOTHING,
    Algebra,
    FinFn,
    Just,
    MonadMorphism,
    PowersetMonad,
    all_functions,
    builtin_monads,
    builtin_morphisms,
    check_algebra,
    check_functor_laws,
    check_monad_laws,
    check_monad_morphism,
    enumerate_algebras,
    finset,
    free_algebra,
    get_monad,
    homomorphisms,
    identity_morphism,
    is_homomorphism,
    lift_algebra,
    lift_hom,
    lift_morphism,
    random_function,
    recover_theta,
    show,
)

import oracles

P = get_monad("powerset")
MAYBE = get_monad("maybe")
ID = get_monad("identity")
A2 = finset(2)
fs = frozenset


def maybe_to_powerset() -> MonadMorphism:
    return builtin_morphisms()["powerset", "maybe"]


def powerset_alg(values: dict) -> Algebra:
    return Algebra(P, A2, lambda s: values[s])


MAX = {fs(): 0, fs({0}): 0, fs({1}): 1, fs({0, 1}): 1}
MIN = {fs(): 1, fs({0}): 0, fs({1}): 1, fs({0, 1}): 0}


def test_powerset_multiplication_is_union():
    a, b = 0, 1
    assert P.mult_elem(fs({fs({a}), fs({a, b})})) == fs({a, b})
    assert P.mult_elem(fs({fs({a})})) == fs({a})


def test_maybe_multiplication_collapses():
    assert MAYBE.mult_elem(Just(Just(0))) == Just(0)
    assert MAYBE.mult_elem(Just(NOTHING)) is NOTHING
    assert MAYBE.mult_elem(NOTHING) is NOTHING


def test_object_sizes_and_order():
    assert [show(x) for x in P.obj(A2)] == ["{}", "{0}", "{1}", "{0,1}"]
    assert len(P.obj(P.obj(A2))) == 16
    assert len(get_monad("nonempty-powerset").obj(finset(3))) == 7
    assert [show(x) for x in MAYBE.obj(A2)] == ["*", "just(0)", "just(1)"]


@pytest.mark.parametrize("t", builtin_monads(), ids=lambda t: t.name)
def test_builtin_monad_laws(t):
    assert check_monad_laws(t) is None


class IntersectionMonad(PowersetMonad):
    """Powerset with intersection as multiplication: breaks the unit law."""

    name = "broken"

    def mult_elem(self, tt):
        tt = list(tt)
        if not tt:
            return fs()
        out = tt[0]
        for s in tt[1:]:
            out &= s
        return out


def test_broken_monad_is_caught():
    t = IntersectionMonad()
    bad = check_monad_laws(t, 2)
    assert bad is not None
    # carriers are swept in increasing size, and on one point associativity breaks first
    assert bad.law == "mu . T mu = mu . mu T"
    n, ttt = bad.witness
    assert t.mult_elem(t.mult_elem(ttt)) != t.mult_elem(t.map_elem(t.mult_elem, ttt))
    assert t.mult_elem(t.map_elem(t.unit_elem, fs({0, 1}))) != fs({0, 1})


def test_functor_laws_for_identity_functor():
    assert check_functor_laws(IDENTITY) is None


def test_max_algebra_ok():
    assert check_algebra(powerset_alg(MAX)) is None


def test_bad_sigma_fails_associativity():
    bad = check_algebra(powerset_alg({fs(): 1, fs({0}): 0, fs({1}): 1, fs({0, 1}): 1}))
    assert bad.law == "sigma . T sigma = sigma . mu"
    # the witness really breaks the law
    sigma = {fs(): 1, fs({0}): 0, fs({1}): 1, fs({0, 1}): 1}
    (tt,) = bad.witness
    assert sigma[fs(sigma[s] for s in tt)] != sigma[fs().union(*tt)]


def test_identity_algebra_ok():
    assert check_algebra(Algebra(ID, finset(3), lambda x: x)) is None


def test_enumerate_algebras_counts():
    algs = enumerate_algebras(P, A2)
    assert len(algs) == 2
    assert {tuple(a.structure(s) for s in P.obj(A2)) for a in algs} == {
        tuple(MAX[s] for s in P.obj(A2)), tuple(MIN[s] for s in P.obj(A2))
    }
    assert len(enumerate_algebras(MAYBE, finset(1))) == 1
    for n in range(4):
        assert len(enumerate_algebras(ID, finset(n))) == 1


def test_enumerate_algebras_matches_set_oracle():
    expected = {tuple(sorted((tuple(sorted(k)), v) for k, v in sig.items()))
                for sig in oracles.powerset_algebras_2()}
    got = {tuple(sorted((tuple(sorted(s)), a.structure(s)) for s in P.obj(A2)))
           for a in enumerate_algebras(P, A2)}
    assert got == expected
    assert len(expected) == 2


def test_enumerate_algebras_budget():
    with pytest.raises(BudgetExceeded):
        enumerate_algebras(P, finset(3), budget=1000)


def test_free_algebras_are_algebras():
    for t in builtin_monads():
        for n in range(3):
            assert check_algebra(free_algebra(t, finset(n))) is None


def test_maybe_to_powerset_morphism_ok():
    m = maybe_to_powerset()
    assert m.source is P and m.target is MAYBE
    assert check_monad_morphism(m, max_size=3) is None
    comp = m.component(A2)
    assert comp(NOTHING) == fs() and comp(Just(1)) == fs({1})


def test_non_natural_theta_is_caught():
    def theta(a, t):
        if t is NOTHING:
            return fs({a.elements[0]}) if len(a) else fs()
        return fs({t.value})

    bad = check_monad_morphism(MonadMorphism(P, MAYBE, theta))
    assert bad is not None and bad.law == "theta natural"


@pytest.mark.parametrize("key", sorted(builtin_morphisms()))
def test_builtin_morphisms_ok(key):
    assert check_monad_morphism(builtin_morphisms()[key]) is None


def test_identity_morphism_lifts_every_algebra_to_itself():
    for t in builtin_monads():
        m = identity_morphism(t)
        for n in range(min(t.size_bound, 2) + 1):
            for alg in enumerate_algebras(t, finset(n)):
                assert lift_morphism(m, alg) == alg


def test_lift_of_max_algebra():
    lifted = lift_morphism(maybe_to_powerset(), powerset_alg(MAX))
    assert lifted.monad is MAYBE
    assert lifted.carrier == A2
    assert lifted.structure(NOTHING) == 0
    assert all(lifted.structure(Just(x)) == x for x in A2)
    assert check_algebra(lifted) is None


def test_lift_rejects_non_algebra():
    with pytest.raises(LawViolationError):
        lift_algebra(maybe_to_powerset(), powerset_alg({fs(): 1, fs({0}): 0, fs({1}): 1,
                                                          fs({0, 1}): 1}))


def _algebra_corpus(t, max_n=2):
    return [alg for n in range(max_n + 1) for alg in enumerate_algebras(t, finset(n))]


@pytest.mark.parametrize("key", sorted(builtin_morphisms()))
def test_lifted_structures_are_algebras(key):
    m = builtin_morphisms()[key]
    for alg in _algebra_corpus(m.source):
        assert check_algebra(lift_algebra(m, alg, check=False)) is None


def test_lifted_homomorphisms_are_homomorphisms():
    m = maybe_to_powerset()
    algs = enumerate_algebras(P, A2)
    count = 0
    for src in algs:
        for dst in algs:
            for h in homomorphisms(src, dst):
                count += 1
                assert is_homomorphism(lift_hom(m, h), lift_algebra(m, src), lift_algebra(m, dst))
    assert count > 0


@pytest.mark.parametrize("key", [("powerset", "maybe"), ("maybe", "maybe"),
                                 ("powerset", "nonempty-powerset"), ("maybe", "identity")])
def test_theta_roundtrip(key):
    m = builtin_morphisms()[key]
    # free algebras satisfy the laws by construction; listing T2 T2 T1 A may be infeasible
    rec = recover_theta(m.functor, m.source, m.target,
                        lambda alg: lift_algebra(m, alg, check=False))
    bound = min(3, m.source.size_bound, m.target.size_bound)
    for n in range(bound + 1):
        a = finset(n)
        assert rec.component(a) == m.component(a)
    assert check_monad_morphism(rec, max_size=bound) is None


def test_lifting_roundtrip_on_powerset_algebras():
    m = maybe_to_powerset()

    def lifted(alg):
        return lift_algebra(m, alg, check=False)

    rec = recover_theta(IDENTITY, P, MAYBE, lifted)
    for n in range(3):
        for alg in enumerate_algebras(P, finset(n)):
            assert lift_algebra(rec, alg) == lifted(alg)


def test_recover_theta_rejects_wrong_carrier():
    def lifted(alg):
        return Algebra(MAYBE, finset(0), lambda t: t)

    rec = recover_theta(IDENTITY, P, MAYBE, lifted)
    with pytest.raises(CarrierMismatch):
        rec.component(finset(1))


def _homs_by_pair(t, algs):
    return {(i, j): homomorphisms(s, d) for i, s in enumerate(algs) for j, d in enumerate(algs)}


def test_faithfulness_transfers():
    # F is the identity, so distinct homomorphisms must lift to distinct maps
    for key in [("powerset", "maybe"), ("powerset", "nonempty-powerset")]:
        m = builtin_morphisms()[key]
        algs = _algebra_corpus(m.source)
        for homs in _homs_by_pair(m.source, algs).values():
            lifted = [lift_hom(m, h) for h in homs]
            assert len(set(lifted)) == len(homs)


@pytest.mark.parametrize("name", ["maybe", "powerset", "identity"])
def test_fullness_transfers_for_surjective_theta(name):
    t = get_monad(name)
    m = identity_morphism(t)
    for n in range(3):
        assert all(m.component(finset(n)).is_surjective() for n in range(3))
    algs = _algebra_corpus(t)
    for i, src in enumerate(algs):
        for j, dst in enumerate(algs):
            ls, ld = lift_algebra(m, src), lift_algebra(m, dst)
            lifted = {lift_hom(m, h) for h in homomorphisms(src, dst)}
            for h in all_functions(ls.carrier, ld.carrier):
                if is_homomorphism(h, ls, ld):
                    assert h in lifted


def test_maybe_to_powerset_theta_is_not_surjective():
    assert not maybe_to_powerset().component(A2).is_surjective()


def test_random_naturality_samples():
    rng = random.Random(7)
    m = maybe_to_powerset()
    for _ in range(50):
        a, b = finset(rng.randrange(4)), finset(rng.randrange(1, 4))
        f = random_function(rng, a, b)
        for t in MAYBE.obj(a):
            assert m.theta(b, MAYBE.map_elem(f, t)) == P.map_elem(f, m.theta(a, t))


def test_finfn_basics():
    f = FinFn.tabulate(A2, finset(3), lambda x: x + 1)
    g = FinFn.tabulate(finset(3), A2, lambda x: x % 2)
    assert g.compose(f).table == (1, 0)
    assert not f.is_surjective()
    assert sum(1 for _ in all_functions(A2, finset(3))) == 9
