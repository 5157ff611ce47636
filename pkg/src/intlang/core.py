"""Signatures, actions, traces and interaction terms.

Interaction terms are immutable trees built from ``Empty``, ``Act`` and the
binary/unary constructors below.  Every node renders to the canonical ASCII
form accepted by :mod:`intlang.dsl`, and ``str(node)`` is that form.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Iterator, NamedTuple, Tuple

IDENT_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")

EMISSION = "!"
RECEPTION = "?"


class Action(NamedTuple):
    """An emission ``l!m`` or a reception ``l?m`` on lifeline ``l``.

    A plain named tuple so traces (tuples of actions) hash and compare at C
    speed; the lifeline is field 0, which the trace kernels rely on.
    """

    lifeline: str
    kind: str
    message: str

    def __str__(self) -> str:
        return f"{self.lifeline}{self.kind}{self.message}"

    __repr__ = __str__


def emission(lifeline: str, message: str) -> Action:
    return Action(lifeline, EMISSION, message)


def reception(lifeline: str, message: str) -> Action:
    return Action(lifeline, RECEPTION, message)


def lifeline_of(a: Action) -> str:
    return a.lifeline


Trace = Tuple[Action, ...]
EPSILON: Trace = ()


def render_trace(t: Trace) -> str:
    return ".".join(map(str, t)) if t else "eps"


def trace_sort_key(t: Trace) -> tuple:
    return (len(t), tuple(map(str, t)))


class TraceSet:
    """A finite, duplicate-free set of traces iterated in canonical order.

    Canonical order is by length, then lexicographically by the rendering of
    each action.
    """

    __slots__ = ("_items", "_ordered")

    def __init__(self, traces: Iterable[Trace] = ()):
        self._items = frozenset(traces)
        self._ordered = None

    @property
    def items(self) -> frozenset:
        return self._items

    def ordered(self) -> tuple:
        if self._ordered is None:
            self._ordered = tuple(sorted(self._items, key=trace_sort_key))
        return self._ordered

    def __iter__(self) -> Iterator[Trace]:
        return iter(self.ordered())

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, t) -> bool:
        return t in self._items

    def __eq__(self, other) -> bool:
        if isinstance(other, TraceSet):
            return self._items == other._items
        if isinstance(other, (set, frozenset)):
            return self._items == other
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._items)

    def __or__(self, other: "TraceSet") -> "TraceSet":
        return TraceSet(self._items | other._items)

    def __le__(self, other: "TraceSet") -> bool:
        return self._items <= other._items

    def __lt__(self, other: "TraceSet") -> bool:
        return self._items < other._items

    def __sub__(self, other: "TraceSet") -> "TraceSet":
        return TraceSet(self._items - other._items)

    def truncate(self, max_len: int) -> "TraceSet":
        return TraceSet(t for t in self._items if len(t) <= max_len)

    def render(self) -> list[str]:
        return [render_trace(t) for t in self]

    def __repr__(self) -> str:
        return "{" + ", ".join(self.render()) + "}"


@dataclass(frozen=True)
class Signature:
    """Declared lifeline and message alphabets."""

    lifelines: tuple[str, ...]
    messages: tuple[str, ...]

    def __post_init__(self):
        for name, idents in (("lifeline", self.lifelines), ("message", self.messages)):
            if len(set(idents)) != len(idents):
                raise ValueError(f"duplicate {name} identifiers in {idents}")
            for ident in idents:
                if not IDENT_RE.match(ident):
                    raise ValueError(f"invalid {name} identifier {ident!r}")

    @classmethod
    def infer(cls, i: "Interaction") -> "Signature":
        """The smallest signature covering every action of ``i``, in order of appearance."""
        lifelines: dict[str, None] = {}
        messages: dict[str, None] = {}
        for a in actions_of(i):
            lifelines.setdefault(a.lifeline)
            messages.setdefault(a.message)
        return cls(tuple(lifelines), tuple(messages))

    def admits(self, a: Action) -> bool:
        return (
            a.kind in (EMISSION, RECEPTION)
            and a.lifeline in self.lifelines
            and a.message in self.messages
        )


class LoopKind(str, Enum):
    X = "X"
    H = "H"
    S = "S"
    P = "P"


class Interaction:
    """Base class of interaction terms.

    Nodes are immutable; hash and canonical text are computed once and cached.
    """

    __slots__ = ("_hash", "_text")
    tag = ""

    def _key(self) -> tuple:
        raise NotImplementedError

    def __eq__(self, other):
        if self is other:
            return True
        if type(self) is not type(other):
            return NotImplemented if not isinstance(other, Interaction) else False
        return self._key() == other._key()

    def __hash__(self):
        try:
            return self._hash
        except AttributeError:
            h = hash((self.tag, self._key()))
            object.__setattr__(self, "_hash", h)
            return h

    def __str__(self):
        try:
            return self._text
        except AttributeError:
            text = self._render()
            object.__setattr__(self, "_text", text)
            return text

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def __reduce__(self):
        return (type(self), self._key())

    def _render(self) -> str:
        raise NotImplementedError

    def __repr__(self):
        return f"<{type(self).__name__} {self}>"


class Empty(Interaction):
    __slots__ = ()
    tag = "0"

    def __new__(cls):
        return EMPTY

    def _key(self):
        return ()

    def _render(self):
        return "0"


EMPTY = object.__new__(Empty)


class Act(Interaction):
    __slots__ = ("action",)
    tag = "act"

    def __init__(self, action: Action):
        object.__setattr__(self, "action", action)

    def _key(self):
        return (self.action,)

    def _render(self):
        return str(self.action)


class Binary(Interaction):
    __slots__ = ("left", "right")

    def __init__(self, left: Interaction, right: Interaction):
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    def _key(self):
        return (self.left, self.right)

    def _render(self):
        return f"{self.tag}({self.left},{self.right})"


class Strict(Binary):
    __slots__ = ()
    tag = "strict"


class Seq(Binary):
    __slots__ = ()
    tag = "seq"


class Par(Binary):
    __slots__ = ()
    tag = "par"


class Alt(Binary):
    __slots__ = ()
    tag = "alt"


class Loop(Interaction):
    __slots__ = ("kind", "body")
    tag = "loop"

    def __init__(self, kind: LoopKind, body: Interaction):
        object.__setattr__(self, "kind", LoopKind(kind))
        object.__setattr__(self, "body", body)

    def _key(self):
        return (self.kind, self.body)

    def _render(self):
        return f"loop{self.kind.value}({self.body})"


BINARY_TAGS = {cls.tag: cls for cls in (Strict, Seq, Par, Alt)}


def act(text: str) -> Act:
    """Shorthand: ``act("l1!m1")``."""
    for kind in (EMISSION, RECEPTION):
        if kind in text:
            lifeline, message = text.split(kind, 1)
            return Act(Action(lifeline, kind, message))
    raise ValueError(f"not an action: {text!r}")


def children(i: Interaction) -> tuple[Interaction, ...]:
    if isinstance(i, Binary):
        return (i.left, i.right)
    if isinstance(i, Loop):
        return (i.body,)
    return ()


def walk(i: Interaction) -> Iterator[Interaction]:
    stack = [i]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def actions_of(i: Interaction) -> Iterator[Action]:
    for node in walk(i):
        if isinstance(node, Act):
            yield node.action


def term_size(i: Interaction) -> int:
    return sum(1 for _ in walk(i))


def has_loop(i: Interaction) -> bool:
    return any(isinstance(node, Loop) for node in walk(i))


def well_formed(i: Interaction, sig: Signature) -> bool:
    return all(sig.admits(a) for a in actions_of(i))
