import itertools
from pathlib import Path


from hypothesis import strategies as st

from intlang.core import EMPTY, Act, Action, Alt, Loop, LoopKind, Par, Seq, Strict
from intlang.dsl import parse_interaction, parse_trace

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

FIG1 = "alt(seq(strict(l1!m1,l3?m1),strict(l1!m2,l2?m2)),par(strict(l1!m3,l2?m3),l1!m4))"
FIG3 = "alt(strict(l1!m1,l2?m1),seq(strict(l3!m2,l1?m2),loopX(strict(l1!m3,l2?m3))))"
FIG6_BODY = "alt(strict(l1!m1,l2?m1),l2!m2)"
COUNTER_TRACE = "l1!m1.l2!m2.l2?m1"


def I(text):
    return parse_interaction(text)[0]


def T(text):
    return parse_trace(text)


def TS(*texts):
    return {parse_trace(t) for t in texts}


def golden(name):
    return (FIXTURES / name).read_text(encoding="utf-8")


def golden_lines(name):
    return golden(name).splitlines()


# -- independent oracles -----------------------------------------------------

def oracle_interleavings(t1, t2):
    """Place t1's actions at every choice of positions, t2's in the rest."""
    n = len(t1) + len(t2)
    out = set()
    for pos in itertools.combinations(range(n), len(t1)):
        chosen = set(pos)
        it1, it2 = iter(t1), iter(t2)
        out.add(tuple(next(it1) if k in chosen else next(it2) for k in range(n)))
    return out


def oracle_weak_seq(t1, t2):
    """Interleavings where every t1 action precedes every same-lifeline t2 action."""
    n = len(t1) + len(t2)
    out = set()
    for pos in itertools.combinations(range(n), len(t1)):
        chosen = set(pos)
        ok = True
        p1 = list(pos)
        p2 = [k for k in range(n) if k not in chosen]
        for x, px in zip(t1, p1):
            for y, py in zip(t2, p2):
                if x.lifeline == y.lifeline and px > py:
                    ok = False
        if ok:
            it1, it2 = iter(t1), iter(t2)
            out.add(tuple(next(it1) if k in chosen else next(it2) for k in range(n)))
    return out


# -- hypothesis strategies ---------------------------------------------------

LIFELINES = ("l1", "l2", "l3")
MESSAGES = ("m1", "m2")

actions = st.builds(Action, st.sampled_from(LIFELINES), st.sampled_from("!?"), st.sampled_from(MESSAGES))
traces = st.lists(actions, max_size=3).map(tuple)
trace_sets = st.frozensets(traces, max_size=3)


def _extend(children):
    binary = st.sampled_from([Strict, Seq, Par, Alt])
    return st.one_of(
        st.builds(lambda c, l, r: c(l, r), binary, children, children),
        st.builds(Loop, st.sampled_from(list(LoopKind)), children),
    )


interactions = st.recursive(
    st.one_of(st.just(EMPTY), actions.map(Act)), _extend, max_leaves=6
)


