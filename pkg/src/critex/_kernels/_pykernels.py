"""Reference implementations of the hot loops (numpy + plain Python)."""
import numpy as np


def nb_step(mass, origin, terminus, index, nverts):
    """One transfer-operator step.

    Returns ``(new_mass, sphere)`` where ``sphere[v]`` sums the current mass
    over edges ending at ``v`` and
    ``new_mass[f] = index[f] * sphere[origin[f]] - mass[f ^ 1]``.
    Works row-wise on 2-D input.
    """
    if mass.dtype == object:
        index = index.astype(object)
    if mass.ndim == 1:
        sphere = np.zeros(nverts, dtype=mass.dtype)
        np.add.at(sphere, terminus, mass)
        rev = mass.reshape(-1, 2)[:, ::-1].reshape(-1)
        new = index * sphere[origin] - rev
    else:
        rows = mass.shape[0]
        sphere = np.zeros((rows, nverts), dtype=mass.dtype)
        np.add.at(sphere, (slice(None), terminus), mass)
        rev = mass.reshape(rows, -1, 2)[:, :, ::-1].reshape(rows, -1)
        new = index * sphere[:, origin] - rev
    return new, sphere


def closed_walk_counts(origin, terminus, out_ptr, out_idx, max_len, guard):
    """Count closed non-backtracking tail-less edge sequences by length.

    Returns ``(counts, steps)``; ``counts`` is None if ``guard`` was exceeded.
    """
    origin = list(origin)
    terminus = list(terminus)
    ptr = list(out_ptr)
    idx = list(out_idx)
    out = [idx[ptr[v]:ptr[v + 1]] for v in range(len(ptr) - 1)]
    counts = [0] * (max_len + 1)
    steps = 0
    for s in range(len(origin)):
        start = origin[s]
        back = s ^ 1
        stack = [(s, 1)]
        while stack:
            e, d = stack.pop()
            steps += 1
            if steps > guard:
                return None, steps
            t = terminus[e]
            if t == start and e != back:
                counts[d] += 1
            if d < max_len:
                r = e ^ 1
                for f in out[t]:
                    if f != r:
                        stack.append((f, d + 1))
    return counts, steps


def _is_lyndon(w):
    for k in range(1, len(w)):
        if w[k:] + w[:k] <= w:
            return False
    return True


def iter_prime_cycles(origin, terminus, out_ptr, out_idx, max_len, guard):
    """Yield one canonical (Lyndon) edge sequence per prime of length <= max_len.

    Raises ``OverflowError`` when more than ``guard`` search steps are needed.
    """
    origin = list(origin)
    terminus = list(terminus)
    ptr = list(out_ptr)
    idx = list(out_idx)
    out = [idx[ptr[v]:ptr[v + 1]] for v in range(len(ptr) - 1)]
    path = [0] * (max_len + 1)
    steps = 0
    for s in range(len(origin)):
        start = origin[s]
        back = s ^ 1
        stack = [(s, 1)]
        while stack:
            e, d = stack.pop()
            steps += 1
            if steps > guard:
                raise OverflowError(steps)
            path[d - 1] = e
            t = terminus[e]
            if t == start and e != back:
                w = path[:d]
                if _is_lyndon(w):
                    yield tuple(w)
            if d < max_len:
                r = e ^ 1
                for f in out[t]:
                    if f != r and f >= s:
                        stack.append((f, d + 1))


def prime_cycle_counts(origin, terminus, out_ptr, out_idx, max_len, guard):
    counts = [0] * (max_len + 1)
    try:
        for w in iter_prime_cycles(origin, terminus, out_ptr, out_idx, max_len, guard):
            counts[len(w)] += 1
    except OverflowError as exc:
        return None, exc.args[0]
    return counts, None
