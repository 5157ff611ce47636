"""Trace semantics for an interaction language of sequence diagrams.

Terms are built from actions with strict/weak sequencing, interleaving,
choice and four loops; :mod:`intlang.denotational` and
:mod:`intlang.operational` give them trace-set meanings that coincide.
"""
from ._kernels import BACKEND
from .core import (
    EMPTY,
    Act,
    Action,
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
    act,
    lifeline_of,
    render_trace,
    term_size,
    well_formed,
)
from .denotational import DenotationRequest, sigma_d, sigma_d_exact
from .dsl import ParseError, parse_document, parse_interaction, parse_trace, render_interaction
from .operational import Step, Verdict, accepts, evades, next_steps, prune, sigma_o_up_to, terminates
from .trace_algebra import Bound, SchedulingOp

__version__ = "0.1.0"
