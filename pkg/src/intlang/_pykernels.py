"""Pure-Python trace kernels.

Traces are tuples whose items expose the lifeline at index 0.  ``op`` codes:
0 strict sequencing, 1 weak sequencing, 2 interleaving.  A negative
``max_len`` disables truncation.
"""

STRICT = 0
WEAK = 1
INTERLEAVE = 2


def _suffix_lifelines(t1):
    out = [frozenset()] * (len(t1) + 1)
    acc = set()
    for k in range(len(t1) - 1, -1, -1):
        acc.add(t1[k][0])
        out[k] = frozenset(acc)
    return out


def _merge(t1, t2, weak):
    n1 = len(t1)
    n2 = len(t2)
    if n1 == 0:
        return [t2]
    if n2 == 0:
        return [t1]
    blocked = _suffix_lifelines(t1) if weak else None
    memo = {}

    def rec(i, j):
        if i == n1:
            return [t2[j:]]
        if j == n2:
            return [t1[i:]]
        key = i * (n2 + 1) + j
        got = memo.get(key)
        if got is not None:
            return got
        a = t1[i]
        res = [(a,) + u for u in rec(i + 1, j)]
        b = t2[j]
        if not weak or b[0] not in blocked[i]:
            res.extend((b,) + u for u in rec(i, j + 1))
        memo[key] = res
        return res

    return rec(0, 0)


def interleave(t1, t2):
    return set(_merge(t1, t2, False))


def weak_seq(t1, t2):
    return set(_merge(t1, t2, True))


def combine(op, t1, t2):
    if op == STRICT:
        return {t1 + t2}
    return set(_merge(t1, t2, op == WEAK))


def lift(op, left, right, max_len=-1):
    out = set()
    for t1 in left:
        n1 = len(t1)
        for t2 in right:
            if max_len >= 0 and n1 + len(t2) > max_len:
                continue
            if op == STRICT:
                out.add(t1 + t2)
            else:
                out.update(_merge(t1, t2, op == WEAK))
    return out


def lift_restricted(op, left, right, max_len=-1):
    """Members of ``lift`` whose first action is taken from a trace of ``left``."""
    out = set()
    for t1 in left:
        n1 = len(t1)
        if n1 == 0:
            if () in right:
                out.add(())
            continue
        head = t1[0]
        tail = t1[1:]
        for t2 in right:
            if max_len >= 0 and n1 + len(t2) > max_len:
                continue
            if op == STRICT:
                out.add(t1 + t2)
            else:
                for u in _merge(tail, t2, op == WEAK):
                    out.add((head,) + u)
    return out
