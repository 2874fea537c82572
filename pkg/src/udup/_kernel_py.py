"""Pure-Python training kernel (fallback when the compiled one is absent).

Bit-compatibility contract with udup._kernel: both kernels perform the same
IEEE-754 double operations in the same order (sequential scalar accumulation,
libm exp, sigmoid argument clamped to [-30, 30]), so single-worker training
produces identical parameter trajectories on either backend. Keep any change
here mirrored in the .pyx file.

Arrays arrive as numpy float64/int32 buffers shared with other threads; rows
are copied to plain Python lists on first touch and written back at the end
of each call, so concurrent workers clobber at most a row at a time.
"""

from __future__ import annotations

from math import exp

BACKEND = "python"


def _sigmoid(x: float) -> float:
    if x > 30.0:
        x = 30.0
    elif x < -30.0:
        x = -30.0
    return 1.0 / (1.0 + exp(-x))


class _RowCache:
    """Copy-on-touch view of a 2-d array as per-row Python lists."""

    def __init__(self, arr):
        self.arr = arr
        self.rows = {}

    def row(self, i: int) -> list[float]:
        r = self.rows.get(i)
        if r is None:
            r = self.arr[i].tolist()
            self.rows[i] = r
        return r

    def flush(self) -> None:
        for i, r in self.rows.items():
            self.arr[i] = r


def _pair(
    we: _RowCache,
    vi: _RowCache,
    path_off,
    path_nodes,
    path_signs,
    in_ids,
    in_cfs,
    tg_ids,
    tg_cfs,
    alpha: float,
    dim: int,
) -> None:
    # Hidden layer: confidence-weighted sum of input embedding rows.
    h = [0.0] * dim
    for p in range(len(in_ids)):
        c = in_cfs[p]
        row = we.row(in_ids[p])
        for d in range(dim):
            h[d] += c * row[d]

    # Forward pass over every target entry's root-to-leaf path. Gradients are
    # evaluated at pre-update node vectors: node updates are accumulated per
    # node (paths of different target actions may share nodes) and applied
    # only after the back-propagated error dh is complete.
    dh = [0.0] * dim
    touched: list[int] = []
    gsum: list[float] = []
    for p in range(len(tg_ids)):
        a = tg_ids[p]
        ck = tg_cfs[p]
        for q in range(path_off[a], path_off[a + 1]):
            node = path_nodes[q]
            vrow = vi.row(node)
            x = 0.0
            for d in range(dim):
                x += vrow[d] * h[d]
            s = _sigmoid(x)
            tgt = 1.0 if path_signs[q] > 0 else 0.0
            g = ck * (s - tgt)
            for d in range(dim):
                dh[d] += g * vrow[d]
            for m in range(len(touched)):
                if touched[m] == node:
                    gsum[m] += g
                    break
            else:
                touched.append(node)
                gsum.append(g)

    for m in range(len(touched)):
        u = alpha * gsum[m]
        vrow = vi.row(touched[m])
        for d in range(dim):
            vrow[d] -= u * h[d]

    for p in range(len(in_ids)):
        u = alpha * in_cfs[p]
        row = we.row(in_ids[p])
        for d in range(dim):
            row[d] -= u * dh[d]


def train_pair(we, vi, path_off, path_nodes, path_signs, in_ids, in_cfs, tg_ids, tg_cfs, alpha):
    """One SGD step on a single (input, target) distribution pair, in place."""
    wec = _RowCache(we)
    vic = _RowCache(vi)
    _pair(
        wec,
        vic,
        path_off.tolist(),
        path_nodes.tolist(),
        path_signs.tolist(),
        in_ids.tolist(),
        in_cfs.tolist(),
        tg_ids.tolist(),
        tg_cfs.tolist(),
        float(alpha),
        we.shape[1],
    )
    wec.flush()
    vic.flush()


def train_trace(
    we,
    vi,
    path_off,
    path_nodes,
    path_signs,
    step_off,
    step_ids,
    step_cfs,
    window,
    alpha0,
    min_alpha,
    pair_base,
    total_pairs,
):
    """Train all skip-gram pairs of one trace; returns the pair count.

    The learning rate decays linearly with the global pair index
    (pair_base + local count) over total_pairs.
    """
    dim = we.shape[1]
    n_steps = len(step_off) - 1
    path_off = path_off.tolist()
    path_nodes = path_nodes.tolist()
    path_signs = path_signs.tolist()
    step_off = step_off.tolist()
    step_ids = step_ids.tolist()
    step_cfs = step_cfs.tolist()

    wec = _RowCache(we)
    vic = _RowCache(vi)
    pairs = 0
    for t in range(n_steps):
        lo_t, hi_t = step_off[t], step_off[t + 1]
        in_ids = step_ids[lo_t:hi_t]
        in_cfs = step_cfs[lo_t:hi_t]
        for j in range(-window, window + 1):
            s2 = t + j
            if j == 0 or s2 < 0 or s2 >= n_steps:
                continue
            alpha = alpha0 + (min_alpha - alpha0) * ((pair_base + pairs) / total_pairs)
            lo, hi = step_off[s2], step_off[s2 + 1]
            _pair(
                wec,
                vic,
                path_off,
                path_nodes,
                path_signs,
                in_ids,
                in_cfs,
                step_ids[lo:hi],
                step_cfs[lo:hi],
                alpha,
                dim,
            )
            pairs += 1
    wec.flush()
    vic.flush()
    return pairs
