"""Scheduling operators on traces and trace sets, and their closures.

Infinite closures are approximated by length: ``closure_up_to`` returns
exactly the members of length at most ``bound.max_len``.  This is sound
because every operator here is length-additive, so no member within the
bound is ever built from a longer intermediate trace.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterable

from . import _kernels
from .core import Trace, TraceSet


class SchedulingOp(Enum):
    StrictSeq = _kernels.STRICT
    WeakSeq = _kernels.WEAK
    Interleave = _kernels.INTERLEAVE


@dataclass(frozen=True)
class Bound:
    max_len: int

    def __post_init__(self):
        if self.max_len < 0:
            raise ValueError("max_len must be >= 0")


def concat(t1: Trace, t2: Trace) -> Trace:
    return t1 + t2


def has_conflict(t: Trace, lifeline: str) -> bool:
    return any(a.lifeline == lifeline for a in t)


def interleavings(t1: Trace, t2: Trace) -> TraceSet:
    return TraceSet(_kernels.interleave(t1, t2))


def weak_seq_traces(t1: Trace, t2: Trace) -> TraceSet:
    return TraceSet(_kernels.weak_seq(t1, t2))


def _items(ts) -> frozenset | set:
    return ts.items if isinstance(ts, TraceSet) else ts


def _max_len(bound: Bound | int | None) -> int:
    if bound is None:
        return -1
    return bound.max_len if isinstance(bound, Bound) else bound


def lift(op: SchedulingOp, left, right, bound: Bound | int | None = None) -> TraceSet:
    """Union of the pairwise operator over ``left x right``.

    With a bound, pairs whose combined length exceeds it are skipped.
    """
    return TraceSet(_kernels.lift(op.value, _items(left), _items(right), _max_len(bound)))


def lift_restricted(op: SchedulingOp, left, right, bound: Bound | int | None = None) -> TraceSet:
    """Like :func:`lift`, keeping only traces whose first action comes from ``left``."""
    return TraceSet(
        _kernels.lift_restricted(op.value, _items(left), _items(right), _max_len(bound))
    )


def power(
    op: SchedulingOp,
    ts,
    j: int,
    restricted: bool = False,
    bound: Bound | int | None = None,
) -> TraceSet:
    """The ``j``-th power: ``{eps}`` at 0, else ``ts`` composed with the previous power."""
    if j < 0:
        raise ValueError("power must be >= 0")
    step = _kernels.lift_restricted if restricted else _kernels.lift
    base = _items(ts)
    limit = _max_len(bound)
    acc = {()}
    for _ in range(j):
        acc = step(op.value, base, acc, limit)
    return TraceSet(acc)


def closure_up_to(op: SchedulingOp, ts, bound: Bound | int, restricted: bool = False) -> TraceSet:
    """Members of the (head-first, if ``restricted``) closure no longer than the bound.

    Least fixpoint of ``S -> S | step(ts, S)`` from ``{eps}``.  The step
    distributes over unions in its right operand, so each round only needs
    to compose with the traces discovered in the previous one.
    """
    limit = _max_len(bound)
    step = _kernels.lift_restricted if restricted else _kernels.lift
    base = [t for t in _items(ts) if len(t) <= limit]
    seen = {()}
    frontier = {()}
    while frontier:
        produced = step(op.value, base, frontier, limit)
        frontier = produced - seen
        seen |= frontier
    return TraceSet(seen)


def union(sets: Iterable[TraceSet]) -> TraceSet:
    out: set = set()
    for s in sets:
        out |= _items(s)
    return TraceSet(out)
