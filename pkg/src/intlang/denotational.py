"""Trace-set semantics by structural recursion over interaction terms."""
from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .core import (
    Act,
    Alt,
    Empty,
    Interaction,
    Loop,
    LoopKind,
    Par,
    Seq,
    Signature,
    Strict,
    TraceSet,
    has_loop,
    well_formed,
)
from .trace_algebra import Bound, SchedulingOp, closure_up_to

_SCHEDULERS = {
    Strict: SchedulingOp.StrictSeq,
    Seq: SchedulingOp.WeakSeq,
    Par: SchedulingOp.Interleave,
}

# loop kind -> (scheduler, head-first restriction)
LOOP_CLOSURES = {
    LoopKind.X: (SchedulingOp.StrictSeq, False),
    LoopKind.H: (SchedulingOp.WeakSeq, True),
    LoopKind.S: (SchedulingOp.WeakSeq, False),
    LoopKind.P: (SchedulingOp.Interleave, False),
}


@dataclass(frozen=True)
class DenotationRequest:
    interaction: Interaction
    bound: Bound
    signature: Signature | None = None


def _eval(i: Interaction, limit: int, memo: dict) -> frozenset:
    got = memo.get(i)
    if got is not None:
        return got
    match i:
        case Empty():
            out = frozenset({()})
        case Act(action=a):
            out = frozenset({(a,)}) if limit != 0 else frozenset()
        case Alt(left=l, right=r):
            out = _eval(l, limit, memo) | _eval(r, limit, memo)
        case Strict() | Seq() | Par():
            op = _SCHEDULERS[type(i)]
            out = frozenset(
                _kernels.lift(op.value, _eval(i.left, limit, memo), _eval(i.right, limit, memo), limit)
            )
        case Loop(kind=k, body=b):
            op, restricted = LOOP_CLOSURES[k]
            out = closure_up_to(op, _eval(b, limit, memo), limit, restricted).items
        case _:
            raise TypeError(f"not an interaction: {i!r}")
    memo[i] = out
    return out


def sigma_d(req: DenotationRequest | Interaction, max_len: int | None = None) -> TraceSet:
    """Traces of the interaction no longer than the request's bound.

    Accepts either a :class:`DenotationRequest` or ``(interaction, max_len)``.
    Truncation happens after every composition.
    """
    if not isinstance(req, DenotationRequest):
        if max_len is None:
            raise TypeError("max_len is required when passing a bare interaction")
        req = DenotationRequest(req, Bound(max_len))
    if req.signature is not None and not well_formed(req.interaction, req.signature):
        raise ValueError(f"interaction {req.interaction} is not well-formed for {req.signature}")
    return TraceSet(_eval(req.interaction, req.bound.max_len, {}))


def sigma_d_exact(i: Interaction) -> TraceSet:
    """The complete (finite) trace set of a loop-free interaction."""
    if has_loop(i):
        raise ValueError("sigma_d_exact needs a loop-free interaction")
    return TraceSet(_eval(i, -1, {}))
