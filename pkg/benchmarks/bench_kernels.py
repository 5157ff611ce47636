"""Compare the compiled trace kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]

Workloads: a single wide lift per operator, and a bounded closure per operator
(restricted and unrestricted) over a fixed set of generators.
"""
from __future__ import annotations

import argparse
import random
import timeit

from intlang import _pykernels
from intlang.core import Action

try:
    from intlang import _speedups
except ImportError:  # extension not built
    _speedups = None

OPS = {"strict": 0, "weak": 1, "interleave": 2}


def closure(k, op, ts, max_len, restricted):
    """Semi-naive bounded closure written against a raw kernel module."""
    step = k.lift_restricted if restricted else k.lift
    seen = {()}
    frontier = {()}
    while frontier:
        new = step(op, ts, frontier, max_len) - seen
        seen |= new
        frontier = new
    return seen


def _traces(rng, count, length, lifelines=3):
    names = [f"l{k + 1}" for k in range(lifelines)]
    return {
        tuple(Action(rng.choice(names), rng.choice("!?"), rng.choice(("m1", "m2"))) for _ in range(length))
        for _ in range(count)
    }


def workloads():
    rng = random.Random(2024)
    left, right = _traces(rng, 8, 4), _traces(rng, 8, 4)
    gens = _traces(rng, 2, 2, lifelines=2) | _traces(rng, 1, 1, lifelines=2)
    for name, op in OPS.items():
        yield f"lift {name}", lambda k, op=op: k.lift(op, left, right, -1)
        yield f"closure {name} len8", lambda k, op=op: closure(k, op, gens, 8, False)
        yield f"closure {name}^ len8", lambda k, op=op: closure(k, op, gens, 8, True)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    backends = [("python", _pykernels)] + ([("cython", _speedups)] if _speedups else [])
    print(f"{'workload':<24}" + "".join(f"{name:>12}" for name, _ in backends) + ("     speedup" if _speedups else ""))
    for label, fn in workloads():
        results = [fn(k) for _, k in backends]
        assert all(r == results[0] for r in results), label
        times = [min(timeit.repeat(lambda k=k: fn(k), number=1, repeat=args.repeat)) for _, k in backends]
        row = f"{label:<24}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>11.1f}x"
        print(row)
    if _speedups is None:
        print("compiled extension not available; build with `pip install -e . --no-build-isolation`")


if __name__ == "__main__":
    main()
