"""Random term generators, trace mutation and brute-force oracles.

Everything here is a pure function of its config or seed: each differential
trial draws from ``random.Random`` seeded with ``f"{root}:{index}"``, so
reports are reproducible regardless of scheduling.
"""
from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Iterator

from .core import (
    BINARY_TAGS,
    EMPTY,
    EMISSION,
    RECEPTION,
    Act,
    Action,
    Interaction,
    Loop,
    LoopKind,
    Trace,
    TraceSet,
)
from .denotational import sigma_d
from .operational import sigma_o_up_to
from .trace_algebra import SchedulingOp, lift, power

LEAVES = ("empty", "action")
BINARIES = ("strict", "seq", "par", "alt")
LOOPS = ("loopX", "loopH", "loopS", "loopP")
CONSTRUCTORS = LEAVES + BINARIES + LOOPS


def uniform_weights() -> dict[str, float]:
    return {name: 1.0 for name in CONSTRUCTORS}


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_depth: int = 4
    lifeline_count: int = 3
    message_count: int = 3
    operator_weights: dict = field(default_factory=uniform_weights)
    loop_probability_decay: float = 0.5

    def __post_init__(self):
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.max_depth < 0:
            raise ValueError("max_depth must be >= 0")
        if self.lifeline_count < 1 or self.message_count < 1:
            raise ValueError("need at least one lifeline and one message")
        if not 0.0 <= self.loop_probability_decay <= 1.0:
            raise ValueError("loop_probability_decay must lie in [0, 1]")
        unknown = set(self.operator_weights) - set(CONSTRUCTORS)
        if unknown:
            raise ValueError(f"unknown constructors {sorted(unknown)}")
        if any(w < 0 for w in self.operator_weights.values()):
            raise ValueError("weights must be non-negative")
        if not any(self.operator_weights.get(name, 0) > 0 for name in LEAVES):
            raise ValueError("at least one leaf constructor needs a positive weight")

    @property
    def lifelines(self) -> list[str]:
        return [f"l{k + 1}" for k in range(self.lifeline_count)]

    @property
    def messages(self) -> list[str]:
        return [f"m{k + 1}" for k in range(self.message_count)]


def _random_action(rng: random.Random, cfg: GenConfig) -> Action:
    kind = EMISSION if rng.random() < 0.5 else RECEPTION
    return Action(rng.choice(cfg.lifelines), kind, rng.choice(cfg.messages))


def _gen(rng: random.Random, cfg: GenConfig, depth: int) -> Interaction:
    names = LEAVES if depth >= cfg.max_depth else CONSTRUCTORS
    weights = []
    for name in names:
        w = cfg.operator_weights.get(name, 0.0)
        if name in LOOPS:
            w *= cfg.loop_probability_decay ** depth
        weights.append(w)
    name = rng.choices(names, weights)[0]
    if name == "empty":
        return EMPTY
    if name == "action":
        return Act(_random_action(rng, cfg))
    if name in BINARIES:
        left = _gen(rng, cfg, depth + 1)
        right = _gen(rng, cfg, depth + 1)
        return BINARY_TAGS[name](left, right)
    return Loop(LoopKind(name[-1]), _gen(rng, cfg, depth + 1))


def gen_interaction(cfg: GenConfig, rng: random.Random | None = None) -> Interaction:
    """A well-formed random term of depth at most ``cfg.max_depth``."""
    return _gen(rng or random.Random(cfg.seed), cfg, 0)


def trial_rng(root_seed: int, index: int) -> random.Random:
    return random.Random(f"{root_seed}:{index}")


def mutate_trace(t: Trace, seed: int) -> Trace:
    """One random edit: swap two adjacent actions, drop one, or duplicate one."""
    if not t:
        return t
    rng = random.Random(seed)
    edits = ["drop", "duplicate"]
    if len(t) >= 2:
        edits.append("swap")
    edit = rng.choice(edits)
    k = rng.randrange(len(t))
    if edit == "drop":
        return t[:k] + t[k + 1 :]
    if edit == "duplicate":
        return t[: k + 1] + t[k:]
    k = rng.randrange(len(t) - 1)
    return t[:k] + (t[k + 1], t[k]) + t[k + 2 :]


def swap_adjacent(t: Trace, k: int) -> Trace:
    return t[:k] + (t[k + 1], t[k]) + t[k + 2 :]


def random_trace_set(rng: random.Random, max_traces: int = 3, max_trace_len: int = 3,
                     lifelines: int = 2, messages: int = 2) -> TraceSet:
    cfg = GenConfig(lifeline_count=lifelines, message_count=messages)
    traces = set()
    for _ in range(rng.randint(0, max_traces)):
        n = rng.randint(0, max_trace_len)
        traces.add(tuple(_random_action(rng, cfg) for _ in range(n)))
    return TraceSet(traces)


def restricted_by_definition(op: SchedulingOp, left, right, max_len: int | None = None) -> TraceSet:
    """Filter ``lift(op, left, right)`` by the head-first condition, literally.

    Keeps ``a.t`` only if some ``a.t1`` in ``left`` has ``t`` in ``{t1} op right``.
    Slow on purpose: this is the oracle for the direct construction.
    """
    full = lift(op, left, right, max_len)
    keep = []
    for t in full:
        if not t:
            keep.append(t)
            continue
        head, rest = t[0], t[1:]
        for t1 in left:
            if t1 and t1[0] == head and rest in lift(op, [t1[1:]], right):
                keep.append(t)
                break
    return TraceSet(keep)


def brute_force_closure(op: SchedulingOp, ts, max_power: int, restricted: bool, max_len: int) -> TraceSet:
    """Union of the powers ``0..max_power``, filtered to length ``max_len``.

    Powers are built one ladder rung at a time; restricted rungs use
    :func:`restricted_by_definition` instead of the fast kernel.  Intermediate
    powers are truncated at ``max_len``, which loses nothing because every
    operator adds lengths.
    """
    if not restricted:
        out: set = set()
        for j in range(max_power + 1):
            out |= power(op, ts, j, False, max_len).items
        return TraceSet(out)
    out = {()}
    rung = TraceSet({()})
    for _ in range(max_power):
        rung = restricted_by_definition(op, ts, rung, max_len)
        out |= rung.items
    return TraceSet(out)


@dataclass
class Discrepancy:
    seed: int
    index: int
    term: str
    bound: int
    missing_in_operational: list[str]
    missing_in_denotational: list[str]

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class CaseResult:
    index: int
    term: str
    traces: int
    discrepancy: Discrepancy | None = None

    @property
    def ok(self) -> bool:
        return self.discrepancy is None


def compare_semantics(i: Interaction, max_len: int) -> tuple[TraceSet, TraceSet]:
    """``(missing_in_operational, missing_in_denotational)`` at the bound."""
    den = sigma_d(i, max_len)
    op = sigma_o_up_to(i, max_len)
    return den - op, op - den


def run_case(seed: int, index: int, max_depth: int, max_len: int, cfg: GenConfig | None = None) -> CaseResult:
    base = cfg or GenConfig(seed=seed, max_depth=max_depth)
    term = gen_interaction(base, trial_rng(seed, index))
    den = sigma_d(term, max_len)
    op = sigma_o_up_to(term, max_len)
    result = CaseResult(index, str(term), len(den))
    if den != op:
        missing_op, missing_den = den - op, op - den
        result.discrepancy = Discrepancy(
            seed=seed,
            index=index,
            term=str(term),
            bound=max_len,
            missing_in_operational=missing_op.render(),
            missing_in_denotational=missing_den.render(),
        )
    return result


def _run_case_args(args):
    return run_case(*args)


def run_equivalence(seed: int, cases: int, max_depth: int, max_len: int, jobs: int = 1) -> Iterator[CaseResult]:
    """Differential check of the two semantics on ``cases`` random terms, in index order."""
    args = [(seed, k, max_depth, max_len) for k in range(cases)]
    if jobs <= 1:
        for a in args:
            yield run_case(*a)
        return
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        yield from pool.map(_run_case_args, args, chunksize=8)
