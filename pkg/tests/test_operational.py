import random

import pytest
from hypothesis import given, settings

from helpers import COUNTER_TRACE, FIG3, FIG6_BODY, I, T, interactions
from intlang import operational
from intlang.core import EMPTY, Act, Loop, LoopKind, Seq, act, actions_of, children
from intlang.denotational import sigma_d
from intlang.harness import GenConfig, gen_interaction, trial_rng
from intlang.operational import (
    Explorer,
    Step,
    accepts,
    evades,
    next_steps,
    prune,
    replay,
    sigma_o_up_to,
    terminates,
)
from intlang.trace_algebra import has_conflict

CASES = 200


def random_terms(seed, n=CASES, **kw):
    cfg = GenConfig(seed=seed, **kw)
    return [gen_interaction(cfg, trial_rng(seed, k)) for k in range(n)]


def lifelines_of(term):
    return sorted({a.lifeline for a in actions_of(term)} | {"l1", "l2", "l3"})


def actions_outside_loops(term):
    if isinstance(term, Loop):
        return 0
    if isinstance(term, Act):
        return 1
    return sum(actions_outside_loops(c) for c in children(term))


# -- predicates -------------------------------------------------------------

def test_terminates_examples():
    assert terminates(EMPTY)
    assert terminates(I("loopX(strict(l1!m3,l2?m3))"))
    assert not terminates(I("strict(l1!m1,l3?m1)"))
    assert terminates(I("alt(l1!m1,0)"))
    assert not terminates(I("par(l1!m1,0)"))


def test_evades_examples():
    assert evades(I(FIG3), "l2")
    assert not evades(I("strict(l1!m1,l2?m1)"), "l2")
    assert evades(EMPTY, "l7")
    # evasion is weaker than termination
    choice = I("alt(l1!m,l2!m)")
    assert evades(choice, "l1") and evades(choice, "l2") and not terminates(choice)


def test_prune_examples():
    assert prune(I(FIG3), "l2") == I("seq(strict(l3!m2,l1?m2),0)")
    assert prune(EMPTY, "l1") is EMPTY
    assert prune(act("l2?m1"), "l2") is None
    assert prune(I("alt(l1!m1,l2!m1)"), "l3") == I("alt(l1!m1,l2!m1)")
    assert prune(I("loopS(alt(l1!m1,l2!m1))"), "l1") == I("loopS(l2!m1)")


# -- execution relation -------------------------------------------------------

def test_action_axiom_and_empty():
    assert next_steps(act("l1!m4")) == (Step(act("l1!m4").action, EMPTY),)
    assert next_steps(EMPTY) == ()


def test_weak_loop_steps():
    loop = I(f"loopS({FIG6_BODY})")
    steps = {str(s) for s in next_steps(loop)}
    expected = Step(
        act("l1!m1").action,
        Seq(I("loopS(l2!m2)"), Seq(I("strict(0,l2?m1)"), loop)),
    )
    assert str(expected) in steps
    assert expected in next_steps(loop)


def test_strict_right_needs_termination():
    assert [str(s.action) for s in next_steps(I("strict(l1!m1,l2!m2)"))] == ["l1!m1"]
    steps = next_steps(I("strict(loopX(l1!m1),l2!m2)"))
    assert [str(s.action) for s in steps] == ["l1!m1", "l2!m2"]
    assert steps[1].successor == EMPTY


def test_seq_right_needs_evasion():
    steps = next_steps(I("seq(l1!m1,alt(l1?m2,l2?m2))"))
    assert [str(s) for s in steps] == ["l1!m1 → seq(0,alt(l1?m2,l2?m2))", "l2?m2 → seq(l1!m1,0)"]


def test_steps_are_deduplicated_and_sorted():
    steps = next_steps(I("alt(l1!m1,l1!m1)"))
    assert steps == (Step(act("l1!m1").action, EMPTY),)
    steps = next_steps(I("par(l2!m1,l1!m1)"))
    assert [str(s.action) for s in steps] == ["l1!m1", "l2!m1"]


# -- membership ---------------------------------------------------------------

def test_counter_example_membership():
    body = I(FIG6_BODY)
    t = T(COUNTER_TRACE)
    verdict = accepts(Seq(body, body), t)
    assert verdict.accepted and replay(Seq(body, body), verdict.witness) == t
    assert not accepts(Loop(LoopKind.H, body), t).accepted
    verdict = accepts(Loop(LoopKind.S, body), t)
    assert verdict.accepted
    assert terminates(verdict.witness[-1].successor)


def test_empty_trace_verdicts():
    assert accepts(EMPTY, ()) == operational.Verdict(True, ())
    assert accepts(act("l1!m1"), ()) == operational.Verdict(False, None)


def test_sigma_o_small_cases():
    assert sigma_o_up_to(EMPTY, 3) == {()}
    assert sigma_o_up_to(act("l1!m1"), 0) == set()
    with pytest.raises(ValueError):
        sigma_o_up_to(EMPTY, -1)


def test_replay_rejects_underivable_steps():
    with pytest.raises(ValueError):
        replay(act("l1!m1"), (Step(act("l2!m1").action, EMPTY),))


@given(interactions)
@settings(max_examples=150, deadline=None)
def test_membership_agrees_with_enumeration(term):
    lang = sigma_o_up_to(term, 4)
    for t in lang:
        verdict = accepts(term, t)
        assert verdict.accepted
        assert replay(term, verdict.witness) == t
        last = verdict.witness[-1].successor if verdict.witness else term
        assert terminates(last)
    for t in sigma_d(term, 4):
        assert accepts(term, t).accepted == (t in lang)


# -- property suites (>= 200 random terms each) ----------------------------------

def test_property_termination_bridge():
    for term in random_terms(3):
        assert terminates(term) == (() in sigma_d(term, 0))


def test_property_evasion_bridge():
    for term in random_terms(4):
        bound = actions_outside_loops(term)
        lang = sigma_d(term, bound)
        for l in lifelines_of(term):
            witness = any(not has_conflict(t, l) for t in lang)
            assert evades(term, l) == witness, (term, l)


def test_property_prune_defined_iff_evades():
    for term in random_terms(5):
        for l in lifelines_of(term):
            pruned = prune(term, l)
            assert (pruned is not None) == evades(term, l)
            if pruned is not None:
                assert prune(term, l) == pruned
                assert all(a.lifeline != l for a in actions_of(pruned))


def test_property_pruned_semantics_is_conflict_free_filter():
    rng = random.Random(6)
    for term in random_terms(6):
        bound = rng.randint(0, 5)
        lang = sigma_d(term, bound)
        for l in lifelines_of(term):
            pruned = prune(term, l)
            if pruned is None:
                continue
            assert sigma_d(pruned, bound) == {t for t in lang if not has_conflict(t, l)}


def test_property_step_soundness():
    rng = random.Random(7)
    for term in random_terms(7):
        bound = rng.randint(0, 4)
        outer = sigma_d(term, bound + 1)
        for a, succ in next_steps(term):
            for t in sigma_d(succ, bound):
                assert (a,) + t in outer, (term, a, succ, t)


def test_property_step_completeness():
    rng = random.Random(8)
    for term in random_terms(8):
        bound = rng.randint(1, 5)
        steps = next_steps(term)
        succ_langs = {}
        for t in sigma_d(term, bound):
            if not t:
                continue
            found = False
            for a, succ in steps:
                if a != t[0]:
                    continue
                if succ not in succ_langs:
                    succ_langs[succ] = sigma_d(succ, bound)
                if t[1:] in succ_langs[succ]:
                    found = True
                    break
            assert found, (term, t)


def test_semantics_agree_on_random_terms():
    for term in random_terms(9, max_depth=4):
        for bound in (0, 3, 6):
            assert sigma_o_up_to(term, bound) == sigma_d(term, bound), (term, bound)


def test_mutated_weak_loop_rule_is_caught(monkeypatch):
    original = operational.loop_successor

    def broken(loop, action, body_succ, pruned):
        if loop.kind is LoopKind.S:
            return Seq(body_succ, loop)
        return original(loop, action, body_succ, pruned)

    monkeypatch.setattr(operational, "loop_successor", broken)
    body = I(FIG6_BODY)
    assert sigma_o_up_to(Loop(LoopKind.S, body), 3) != sigma_d(Loop(LoopKind.S, body), 3)


def test_explorer_caches_are_consistent():
    ex = Explorer()
    term = I(f"loopS({FIG6_BODY})")
    assert ex.language(term, 3) == ex.language(term, 3)
    assert set(ex.ordered_steps(term)) == ex.steps(term)
