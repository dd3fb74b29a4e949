import random

import numpy as np
import pytest

from conftest import same_models
from propindep import gen, sat
from propindep.errors import InconsistentLiteralsError, OutputSizeExceeded, StrategyError
from propindep.forgetting import (
    ForgetStrategy,
    forget_lit,
    forget_lit_dnf,
    forget_lit_in_order,
    forget_var,
    forget_var_resolution,
    forget_via_primes,
    lit_equivalent,
    var_equivalent,
)
from propindep.formula import (
    FALSE,
    TRUE,
    Literal,
    Not,
    Var,
    Xor,
    as_clauses,
    clauses_to_formula,
    conj,
    disj,
    literals,
    lits_over,
    parse,
    parse_lits,
    terms_to_formula,
    variables,
)
from propindep.independence import lit_independent_set, lit_simplify
from propindep.oracle import (
    TruthTable,
    forget_lit_mask,
    forget_var_models_bf,
    lit_equivalent_bf,
    models,
    switch,
    var_equivalent_bf,
)
from propindep.primes import prime_implicates

L = parse_lits
CHAIN = parse("(~a | b) & (a | c)")
TWO_LEVEL = parse("(a | b) & (~a & c -> e) & (d <-> e)")


def cls(*texts):
    return {L(t) for t in texts}


def random_cases(seed, n, max_vars=6, depth=5, ops=gen.ALL_OPS):
    rng = random.Random(seed)
    for _ in range(n):
        names = gen.var_names(rng.randint(1, max_vars))
        f = gen.random_formula(rng, names, rng.randint(1, depth), ops)
        lits = gen.random_lits(rng, names, rng.randint(0, 2 * len(names)))
        yield rng, names, f, lits


class TestExamples:
    def test_forget_negative_literal(self):
        got = forget_lit(CHAIN, L("~a"))
        assert sat.equivalent(got, parse("(a | c) & (b | c)"))

    def test_empty_set_is_identity(self):
        assert forget_lit(CHAIN, set()) is CHAIN
        assert forget_var(CHAIN, set()) is CHAIN

    def test_inconsistent_stays_inconsistent(self):
        assert sat.equivalent(forget_lit(parse("a & ~a"), L("a")), FALSE)

    def test_forget_variable(self):
        assert sat.equivalent(forget_var(CHAIN, {"a"}), parse("b | c"))

    def test_forget_everything(self):
        rng = random.Random(51)
        for _ in range(50):
            names = gen.var_names(rng.randint(1, 5))
            f = gen.random_formula(rng, names, 4)
            got = forget_var(f, variables(f))
            assert got == (TRUE if sat.is_satisfiable(f) else FALSE)

    def test_dnf(self):
        assert forget_lit_dnf([L("a ~b")], L("a")) == {L("~b")}
        assert forget_lit_dnf([L("~l g")], L("l")) == {L("~l g")}
        assert forget_lit_dnf([L("a")], L("a")) == {frozenset()}
        with pytest.raises(InconsistentLiteralsError):
            forget_lit_dnf([L("a ~a")], L("b"))

    def test_primes_filter(self):
        assert forget_via_primes(TWO_LEVEL, L("~d")) == cls("a b", "a ~c e", "d ~e", "a ~c d")
        assert forget_via_primes(TWO_LEVEL, set()) == prime_implicates(TWO_LEVEL).members
        everything = lits_over(variables(TWO_LEVEL))
        assert forget_via_primes(TWO_LEVEL, everything) == frozenset()
        same = forget_lit(TWO_LEVEL, L("~d"), strategy="definitional")
        assert sat.equivalent(clauses_to_formula(forget_via_primes(TWO_LEVEL, L("~d"))), same)

    def test_resolution(self):
        assert forget_var_resolution([L("~a b"), L("a c")], {"a"}) == cls("b c")
        assert forget_var_resolution([L("a")], {"a"}) == frozenset()
        assert forget_var_resolution([L("a"), L("~a")], {"a"}) == {frozenset()}

    def test_lit_equivalence(self):
        f = parse("(a -> b) & (b -> c)")
        g = parse("(a -> d) & (d -> c)")
        assert lit_equivalent(f, g, L("~a c"))
        assert lit_equivalent(f, f, L("b"))
        assert not lit_equivalent(parse("a"), parse("~a"), L("a ~a"))

    def test_var_equivalence(self):
        assert var_equivalent(parse("a & b"), parse("a & ~b"), {"a"})
        assert var_equivalent(CHAIN, CHAIN, {"a"})
        assert not var_equivalent(parse("a"), parse("b"), {"a", "b"})


class TestSemantics:
    @pytest.mark.parametrize("strategy", ["auto", "definitional", "prime-path"])
    def test_models_match_oracle(self, strategy):
        for _, names, f, lits in random_cases(52, 150, max_vars=7):
            got = forget_lit(f, lits, strategy=strategy)
            tt = TruthTable(set(names))
            assert np.array_equal(tt.eval(got), forget_lit_mask(tt, f, lits))

    def test_single_variable_switch_union(self):
        for rng, names, f, _ in random_cases(53, 150):
            x = rng.choice(names)
            mod = models(f, names)
            expected = mod | {switch(w, x) for w in mod}
            assert models(forget_var(f, {x}), names) == expected
            assert forget_var_models_bf(f, {x}, over=names) == expected

    def test_strategies_agree(self):
        for rng, names, f, lits in random_cases(54, 150):
            vs = {l.var for l in lits}
            results = [forget_lit(f, lits, strategy=s) for s in ("definitional", "prime-path")]
            terms = [frozenset(t) for t in _dnf(f, names)]
            dnf = terms_to_formula(terms)
            results.append(forget_lit(dnf, lits, strategy="dnf-path"))
            results.append(forget_lit_in_order(f, sorted(lits)))
            for r in results[1:]:
                assert same_models(results[0], r, names)
            cnf = clauses_to_formula(sat.to_equivalent_cnf(f))
            var_results = [forget_var(f, vs, strategy=s) for s in ("definitional", "prime-path")]
            var_results.append(forget_var(cnf, vs, strategy="resolution-path"))
            for r in var_results[1:]:
                assert same_models(var_results[0], r, names)


def _dnf(f, names):
    # the prime implicants form a DNF equivalent to f
    from propindep.primes import prime_implicants

    return prime_implicants(f).members


class TestConsequences:
    def test_weakening_and_monotonicity(self):
        for rng, names, f, lits in random_cases(55, 200):
            g = forget_lit(f, lits)
            assert sat.entails(f, g)
            weaker = disj([f, gen.random_formula(rng, names, 2)])
            assert sat.entails(g, forget_lit(weaker, lits))
            bigger = lits | gen.random_lits(rng, names, 2)
            assert sat.entails(g, forget_lit(f, bigger))

    def test_identity_exactly_on_independent_sets(self):
        for _, _, f, lits in random_cases(56, 200):
            assert lit_independent_set(f, lits) == sat.equivalent(f, forget_lit(f, lits))

    def test_result_is_independent(self):
        for _, _, f, lits in random_cases(57, 200):
            assert lit_independent_set(forget_lit(f, lits), lits)

    def test_order_does_not_matter(self):
        for rng, names, f, lits in random_cases(58, 200):
            order = sorted(lits)
            rng.shuffle(order)
            a = forget_lit_in_order(f, order)
            rng.shuffle(order)
            assert same_models(a, forget_lit_in_order(f, order), names)

    def test_literal_split_counterexample(self):
        # a & ~a with L = {a}: forgetting the conjunction differs from conjoining the forgettings
        a = Literal("a")
        sigma, phi = parse("a"), parse("~a")
        joint = forget_lit(conj([sigma, phi]), {a})
        apart = conj([forget_lit(sigma, {a}), forget_lit(phi, {a})])
        assert not sat.is_satisfiable(joint)
        assert sat.equivalent(forget_lit(sigma, {a}), TRUE)
        assert sat.equivalent(apart, parse("~a"))
        # the variable version holds whenever one side is independent of V
        b = parse("b")
        assert sat.equivalent(forget_var(conj([b, phi]), {"a"}), conj([b, forget_var(phi, {"a"})]))


class TestEquivalenceRelations:
    def test_lit_equivalence_matches_oracle(self):
        rng = random.Random(59)
        for _ in range(200):
            names = gen.var_names(rng.randint(1, 4))
            f = gen.random_formula(rng, names, 3)
            g = gen.random_formula(rng, names, 3)
            lits = gen.random_lits(rng, names, rng.randint(0, 4))
            assert lit_equivalent(f, g, lits) == lit_equivalent_bf(f, g, lits)
            vs = {l.var for l in lits}
            assert var_equivalent(f, g, vs) == var_equivalent_bf(f, g, vs)

    def test_syntax_robust(self):
        rng = random.Random(60)
        for _ in range(150):
            names = gen.var_names(rng.randint(1, 4))
            f = gen.random_formula(rng, names, 3)
            g = gen.random_formula(rng, names, 3)
            lits = gen.random_lits(rng, names, rng.randint(0, 4))
            verdict = lit_equivalent(f, g, lits)
            x = rng.choice(names)
            padded = conj([f, disj([Var(x), Not(Var(x))])])
            for variant in (lit_simplify(f), prime_implicates(f).formula(), padded):
                assert lit_equivalent(variant, g, lits) == verdict

    def test_var_equivalence_implies_lit_equivalence(self):
        rng = random.Random(61)
        hits = 0
        for _ in range(300):
            names = gen.var_names(rng.randint(1, 3))
            f = gen.random_formula(rng, names, 3)
            g = gen.random_formula(rng, names, 3)
            vs = set(rng.sample(names, rng.randint(0, len(names))))
            if var_equivalent(f, g, vs):
                hits += 1
                assert lit_equivalent(f, g, lits_over(vs))
        assert hits > 20

    def test_equivalence_laws(self):
        rng = random.Random(62)
        pool_names = gen.var_names(2)
        pool = [gen.random_formula(rng, pool_names, 2) for _ in range(12)]
        for _ in range(40):
            lits = gen.random_lits(rng, pool_names, rng.randint(0, 3))
            rel = {(i, j): lit_equivalent(pool[i], pool[j], lits) for i in range(12) for j in range(12)}
            for i in range(12):
                assert rel[i, i]
                for j in range(12):
                    assert rel[i, j] == rel[j, i]
                    if rel[i, j]:
                        assert all(rel[i, k] == rel[j, k] for k in range(12))


class TestLimitsAndErrors:
    def test_output_limit(self):
        names = gen.var_names(10)
        f = Var(names[0])
        for v in names[1:]:
            f = Xor(f, Var(v))
        with pytest.raises(OutputSizeExceeded):
            forget_lit(f, L("a b c d"), strategy="definitional", max_size=30)
        # eliminating a from (a | x_i) & (~a | y_j) yields every x_i | y_j
        star = clauses_to_formula(
            [frozenset({Literal("a"), Literal(f"x{i}")}) for i in range(6)]
            + [frozenset({Literal("a", False), Literal(f"y{j}")}) for j in range(6)]
        )
        with pytest.raises(OutputSizeExceeded):
            forget_var(star, {"a"}, strategy="resolution-path", max_size=30)
        assert len(as_clauses(forget_var(star, {"a"}, strategy="resolution-path"))) == 36

    def test_strategy_preconditions(self):
        with pytest.raises(StrategyError):
            forget_lit(parse("a -> (b <-> c)"), L("a"), strategy="dnf-path")
        with pytest.raises(StrategyError):
            forget_lit(CHAIN, L("a"), strategy="resolution-path")
        with pytest.raises(StrategyError):
            forget_var(parse("a -> (b <-> c)"), {"a"}, strategy="resolution-path")
        with pytest.raises(ValueError):
            forget_lit(CHAIN, L("a"), strategy="telepathy")

    def test_resolution_on_complete_pairs(self):
        got = forget_lit(CHAIN, L("a ~a"), strategy=ForgetStrategy.RESOLUTION_PATH)
        assert sat.equivalent(got, parse("b | c"))

    def test_inconsistent_forget_sets_are_fine(self):
        for _, names, f, _ in random_cases(63, 50):
            every = lits_over(names)
            assert sat.equivalent(forget_lit(f, every), TRUE if sat.is_satisfiable(f) else FALSE)
            assert not (literals(forget_lit(f, every)))
