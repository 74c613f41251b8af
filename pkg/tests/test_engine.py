import json
import random

import pytest

from pipregroup.core import parse_word, render
from pipregroup.engine import (
    Budget, Calculus, Derivation, Outcome, closure, derive, m_con_marks, nullable, reduce_any,
    reduce_to, validate, validate_trace,
)
from pipregroup.grammar import load_fixture
from pipregroup.poset import Poset
from pipregroup.rules import RuleTag as T, Step

from fuzz import random_word

W = parse_word
NS = Calculus(Poset("ns"))
PQ = Calculus(Poset(["p", "q"]))
ITALIAN = load_fixture("italian").calculus


def test_budget_must_be_positive():
    with pytest.raises(ValueError):
        Budget(max_steps=0)
    with pytest.raises(ValueError):
        Budget(max_len=-1)


def test_reduce_two_contractions():
    r = reduce_to(W("n n^r s n^l n"), [W("s")], NS)
    assert r.outcome == Outcome.DERIVABLE
    assert r.derivation.rules() == [T.CON, T.CON]
    assert r.derivation.final == W("s")


def test_reduce_clitic_typing():
    calc = Calculus(Poset(["n", "p", "pbar", "s"], [("n", "p")]))
    r = reduce_to(W("n pbar pbar^r n^r s"), [W("s")], calc)
    assert r and r.derivation.final == W("s")
    assert r.derivation.count(T.CON) == 2


def test_reduce_double_clitic_acceptance():
    w = W("n pi(wbar)^r pi(obar)^r pi(obar)^rr pi(wbar)^rr pi(p)^r pi(s)")
    r = reduce_to(w, [W("s"), W("pi(s)")], ITALIAN)
    d = r.derivation
    assert d.rules() == [T.PI_CON, T.PI_CON, T.IND, T.M_IND, T.PI_CON]
    assert render(d.final) == "pi(s)"
    assert m_con_marks(d) == {3, 4}


def test_reduce_empty_to_empty():
    r = reduce_to((), [()], NS)
    assert r and len(r.derivation) == 0


def test_reduce_needs_targets():
    with pytest.raises(ValueError):
        reduce_to(W("s"), [], NS)


def test_nullable_examples():
    assert nullable(W("p q^rr p^l q^r"), PQ).outcome == Outcome.NOT_DERIVABLE
    r = nullable(W("p pi(q)^rr pi(p)^l q^r"), PQ)
    assert r.outcome == Outcome.NOT_DERIVABLE
    r = nullable(W("a^l a"), Calculus(Poset("a")))
    assert r and r.derivation.rules() == [T.CON]


def test_nullability_example_trace_reproduced():
    words, complete = closure(W("p pi(q)^rr pi(p)^l q^r"), PQ)
    assert complete
    assert W("p pi(p)^r pi(q)^rr q^r") in words
    assert W("pi(q)^rr q^r") in words
    assert () not in words
    r = reduce_to(W("p pi(q)^rr pi(p)^l q^r"), [W("pi(q)^rr q^r")], PQ)
    assert r.derivation.rules() == [T.M_IND, T.PRE, T.PI_CON]


@pytest.mark.parametrize("mind", ["directed", "symmetric"])
def test_final_unit_step_not_licensed(mind):
    calc = Calculus(Poset(["p", "q"]), "left", mind)
    assert nullable(W("pi(q)^rr q^r"), calc).outcome == Outcome.NOT_DERIVABLE


def test_unknown_is_distinct_from_not_derivable():
    w = W("pi(a)^l pi(b)^l pi(a)^ll pi(b)^ll")
    calc = Calculus(Poset("ab"), "both")
    r = reduce_to(w, [W("a")], calc, Budget(max_visited=5))
    assert r.outcome == Outcome.UNKNOWN
    assert "max_visited" in r.reason
    r = reduce_to(w, [W("a")], calc, Budget(max_steps=1))
    assert r.outcome == Outcome.UNKNOWN


def test_reduce_any_prefers_shortest_then_earliest():
    r = reduce_any([W("n n^r n n^r s"), W("n n^r s"), W("s n^l n")], [W("s")], NS)
    assert r.derivation.initial == W("n n^r s")


def test_reduce_any_waits_for_all_sweeps():
    r = reduce_any([W("s n"), W("n n^r")], [W("s")], NS)
    assert r.outcome == Outcome.NOT_DERIVABLE


def test_derive_identity_and_parity():
    assert len(derive(W("a b"), W("a b"), Calculus(Poset("ab"))).derivation) == 0
    r = derive(W("a b"), W("a"), Calculus(Poset("ab")))
    assert r.outcome == Outcome.NOT_DERIVABLE


def test_derive_single_clitic():
    r = derive(W("n pi(p)^r pi(s) pi(o)^l pi(o)"), W("n pi(obar)^r pi(obar)^rr pi(p)^r pi(s)"), ITALIAN)
    d = r.derivation
    assert d.count(T.PRE) == 1
    assert d.count(T.PI_IND) >= 1
    assert d.is_normal()
    assert validate(d, ITALIAN)


def test_derive_double_clitic():
    r = derive(W("n pi(p)^r pi(s) pi(w)^l pi(o)^l pi(o) pi(w)"),
               W("n pi(wbar)^r pi(obar)^r pi(obar)^rr pi(wbar)^rr pi(p)^r pi(s)"), ITALIAN)
    d = r.derivation
    assert d.count(T.PRE) == 2
    assert d.is_normal()
    assert validate(d, ITALIAN)


def test_derive_uses_expansion_then_contraction_order():
    calc = Calculus(Poset("ab"))
    r = derive(W("a"), W("a b b^l"), calc)
    assert r.derivation.rules() == [T.EXP]
    r = derive(W("a a^r b"), W("b b^l b"), calc)
    assert r.derivation.rules() == [T.CON, T.EXP]


def _case_two_trace():
    """EXP, two IND steps, CON: valid, but a contraction follows an expansion."""
    calc = Calculus(Poset("abc", [("a", "b"), ("b", "c")]))
    steps = (
        (Step(T.EXP, (), 1, (("atom", "c"), ("degree", 0))), W("a c^r c")),
        (Step(T.IND, (), 0, (("from", "a"), ("to", "b"))), W("b c^r c")),
        (Step(T.IND, (), 0, (("from", "b"), ("to", "c"))), W("c c^r c")),
        (Step(T.CON, (), 0), W("c")),
    )
    return Derivation(W("a"), steps), calc


def test_case_two_derivation_valid_not_normal():
    d, calc = _case_two_trace()
    report = validate(d, calc)
    assert report.valid and not report.normal
    shortest = derive(W("a"), W("c"), calc).derivation
    assert shortest.rules() == [T.IND]
    assert shortest.is_normal()


def test_engine_traces_validate():
    ab = Calculus(Poset("ab"))
    cases = [
        (derive(W("n pi(p)^r pi(s) pi(o)^l pi(o)"), W("n pi(obar)^r pi(obar)^rr pi(p)^r pi(s)"), ITALIAN), ITALIAN),
        (reduce_to(W("n pi(wbar)^r pi(obar)^r pi(obar)^rr pi(wbar)^rr pi(p)^r pi(s)"),
                   [W("s"), W("pi(s)")], ITALIAN), ITALIAN),
        (reduce_to(W("n n^r s n^l n"), [W("s")], NS), NS),
        (derive(W("a a^r b"), W("b b^l b"), ab), ab),
    ]
    for result, calc in cases:
        assert validate(result.derivation, calc).valid


def test_mutated_result_word_is_caught():
    d = derive(W("n pi(p)^r pi(s) pi(o)^l pi(o)"), W("n pi(obar)^r pi(obar)^rr pi(p)^r pi(s)"), ITALIAN).derivation
    for i in range(len(d)):
        steps = list(d.steps)
        step, after = steps[i]
        steps[i] = (step, after + W("s"))
        report = validate(Derivation(d.initial, tuple(steps)), ITALIAN)
        assert not report.valid and report.failed_index == i


def test_validate_trace_checks_summary_fields():
    d = reduce_to(W("n n^r s n^l n"), [W("s")], NS).derivation
    data = d.to_json()
    assert validate_trace(data, NS).valid
    for key, value in (("final", "n"), ("normal", False), ("result", "unknown"), ("input", "s s")):
        bad = json.loads(json.dumps(data))
        bad[key] = value
        assert not validate_trace(bad, NS).valid, key


def test_trace_json_schema():
    d = reduce_to(W("n n^r s n^l n"), [W("s")], NS).derivation
    data = d.to_json()
    assert list(data) == ["input", "result", "final", "normal", "steps"]
    assert all(list(s) == ["rule", "path", "position", "payload", "after"] for s in data["steps"])
    assert Derivation.from_json(json.dumps(data)) == d


def test_reduce_traces_have_no_expansions():
    rng = random.Random(4)
    for _ in range(40):
        w = random_word(rng, ["a", "b"], max_len=4)
        r = nullable(w, Calculus(Poset("ab")))
        if r:
            assert all(s.klass != "expansion" for s, _ in r.derivation.steps)


def test_determinism():
    args = (W("n pi(p)^r pi(s) pi(w)^l pi(o)^l pi(o) pi(w)"),
            W("n pi(wbar)^r pi(obar)^r pi(obar)^rr pi(wbar)^rr pi(p)^r pi(s)"), ITALIAN)
    first = derive(*args).to_json(args[0])
    second = derive(*args).to_json(args[0])
    assert json.dumps(first) == json.dumps(second)


def test_derivations_compose():
    d1 = reduce_to(W("n n^r s n^l n"), [W("s n^l n")], NS).derivation
    d2 = reduce_to(W("s n^l n"), [W("s")], NS).derivation
    assert len(d1.then(d2)) == 2
    with pytest.raises(ValueError):
        d2.then(d1)
