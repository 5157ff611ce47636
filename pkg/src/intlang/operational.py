"""Termination, evasion, pruning, the execution relation and trace membership.

Successor terms are built exactly as the execution rules dictate; no
simplification (e.g. ``strict(0, x) -> x``) is applied.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Optional

from .core import (
    Act,
    Action,
    Alt,
    EMPTY,
    Empty,
    Interaction,
    Loop,
    LoopKind,
    Par,
    Seq,
    Strict,
    Trace,
    TraceSet,
)


class Step(NamedTuple):
    action: Action
    successor: Interaction

    def __str__(self):
        return f"{self.action} → {self.successor}"


def step_sort_key(s: Step) -> tuple:
    return (str(s.action), str(s.successor))


@dataclass(frozen=True)
class Verdict:
    accepted: bool
    witness: Optional[tuple[Step, ...]] = None

    def __bool__(self):
        return self.accepted


def terminates(i: Interaction) -> bool:
    match i:
        case Empty() | Loop():
            return True
        case Act():
            return False
        case Alt(left=l, right=r):
            return terminates(l) or terminates(r)
        case Strict(left=l, right=r) | Seq(left=l, right=r) | Par(left=l, right=r):
            return terminates(l) and terminates(r)
    raise TypeError(f"not an interaction: {i!r}")


def evades(i: Interaction, lifeline: str) -> bool:
    match i:
        case Empty() | Loop():
            return True
        case Act(action=a):
            return a.lifeline != lifeline
        case Alt(left=l, right=r):
            return evades(l, lifeline) or evades(r, lifeline)
        case Strict(left=l, right=r) | Seq(left=l, right=r) | Par(left=l, right=r):
            return evades(l, lifeline) and evades(r, lifeline)
    raise TypeError(f"not an interaction: {i!r}")


def prune(i: Interaction, lifeline: str) -> Interaction | None:
    """The largest sub-behaviour of ``i`` avoiding ``lifeline``.

    Returns ``None`` when ``i`` collides with the lifeline (no pruned term exists).
    """
    match i:
        case Empty():
            return i
        case Act(action=a):
            return i if a.lifeline != lifeline else None
        case Alt(left=l, right=r):
            pl = prune(l, lifeline)
            pr = prune(r, lifeline)
            if pl is None:
                return pr
            if pr is None:
                return pl
            return Alt(pl, pr)
        case Strict() | Seq() | Par():
            pl = prune(i.left, lifeline)
            if pl is None:
                return None
            pr = prune(i.right, lifeline)
            if pr is None:
                return None
            return type(i)(pl, pr)
        case Loop(kind=k, body=b):
            pb = prune(b, lifeline)
            return EMPTY if pb is None else Loop(k, pb)
    raise TypeError(f"not an interaction: {i!r}")


def loop_successor(loop: Loop, action: Action, body_succ: Interaction, pruned: Interaction | None) -> Interaction:
    """Successor of ``loop`` after its body executed ``action`` into ``body_succ``.

    ``pruned`` is ``prune(loop, action.lifeline)``; only the weak loop uses it.
    """
    match loop.kind:
        case LoopKind.X:
            return Strict(body_succ, loop)
        case LoopKind.H:
            return Seq(body_succ, loop)
        case LoopKind.P:
            return Par(body_succ, loop)
        case LoopKind.S:
            return Seq(pruned, Seq(body_succ, loop))


class Explorer:
    """Memoizing engine for the execution relation, membership and enumeration.

    Caches are keyed by structural equality of terms and live as long as the
    explorer, so one instance per query batch keeps shared subterms cheap.
    """

    def __init__(self):
        self._steps: dict[Interaction, frozenset] = {}
        self._terminates: dict[Interaction, bool] = {}
        self._pruned: dict[tuple[Interaction, str], Interaction | None] = {}
        self._lang: dict[tuple[Interaction, int], frozenset] = {}
        self._rejects: set[tuple[Interaction, Trace]] = set()

    def terminates(self, i: Interaction) -> bool:
        got = self._terminates.get(i)
        if got is None:
            got = self._terminates[i] = terminates(i)
        return got

    def prune(self, i: Interaction, lifeline: str) -> Interaction | None:
        key = (i, lifeline)
        try:
            return self._pruned[key]
        except KeyError:
            got = self._pruned[key] = prune(i, lifeline)
            return got

    def steps(self, i: Interaction) -> frozenset:
        """The set of :class:`Step` derivable from ``i`` (unordered)."""
        got = self._steps.get(i)
        if got is None:
            got = self._steps[i] = frozenset(self._derive(i))
        return got

    def _derive(self, i: Interaction) -> set[Step]:
        out: set[Step] = set()
        match i:
            case Empty():
                pass
            case Act(action=a):
                out.add(Step(a, EMPTY))
            case Alt(left=l, right=r):
                out.update(self.steps(l))
                out.update(self.steps(r))
            case Par(left=l, right=r):
                out.update(Step(a, Par(s, r)) for a, s in self.steps(l))
                out.update(Step(a, Par(l, s)) for a, s in self.steps(r))
            case Strict(left=l, right=r):
                out.update(Step(a, Strict(s, r)) for a, s in self.steps(l))
                if self.terminates(l):
                    out.update(self.steps(r))
            case Seq(left=l, right=r):
                out.update(Step(a, Seq(s, r)) for a, s in self.steps(l))
                for a, s in self.steps(r):
                    pl = self.prune(l, a.lifeline)
                    if pl is not None:
                        out.add(Step(a, Seq(pl, s)))
            case Loop(body=b):
                for a, s in self.steps(b):
                    pruned = self.prune(i, a.lifeline) if i.kind is LoopKind.S else None
                    out.add(Step(a, loop_successor(i, a, s, pruned)))
            case _:
                raise TypeError(f"not an interaction: {i!r}")
        return out

    def ordered_steps(self, i: Interaction) -> tuple[Step, ...]:
        return tuple(sorted(self.steps(i), key=step_sort_key))

    def language(self, i: Interaction, max_len: int) -> frozenset:
        key = (i, max_len)
        got = self._lang.get(key)
        if got is not None:
            return got
        out = {()} if self.terminates(i) else set()
        if max_len > 0:
            for a, succ in self.steps(i):
                head = (a,)
                out.update(head + t for t in self.language(succ, max_len - 1))
        got = self._lang[key] = frozenset(out)
        return got

    def witness(self, i: Interaction, t: Trace) -> list[Step] | None:
        """First accepting run for ``t`` in canonical step order, or ``None``."""
        if not t:
            return [] if self.terminates(i) else None
        if (i, t) in self._rejects:
            return None
        head, tail = t[0], t[1:]
        for step in self.ordered_steps(i):
            if step.action != head:
                continue
            rest = self.witness(step.successor, tail)
            if rest is not None:
                return [step] + rest
        self._rejects.add((i, t))
        return None


def next_steps(i: Interaction) -> tuple[Step, ...]:
    """All ``(a, i')`` with ``i -a-> i'``, deduplicated, in canonical order."""
    return Explorer().ordered_steps(i)


def accepts(i: Interaction, t: Trace) -> Verdict:
    path = Explorer().witness(i, tuple(t))
    if path is None:
        return Verdict(False, None)
    return Verdict(True, tuple(path))


def sigma_o_up_to(i: Interaction, max_len: int) -> TraceSet:
    """Operationally accepted traces of length at most ``max_len``."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    return TraceSet(Explorer().language(i, max_len))


def replay(i: Interaction, witness: tuple[Step, ...]) -> Trace:
    """Re-run a witness through ``next_steps``; raises if a step is not derivable."""
    current = i
    actions = []
    for step in witness:
        if step not in next_steps(current):
            raise ValueError(f"step {step} is not derivable from {current}")
        actions.append(step.action)
        current = step.successor
    return tuple(actions)
