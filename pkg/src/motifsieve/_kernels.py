"""Numba kernels for lane-blocked sieve evaluation.

Every kernel processes all lane blocks ``0 .. 2^k / W - 1`` but only touches
lanes ``w0 .. w1 - 1`` of the shared buffers, so callers can split one
evaluation across threads by lane slices without any synchronization.
Per-vertex accumulators are private to the caller of each kernel.
"""

from __future__ import annotations

import numba as nb
import numpy as np

from .gf import draw_nonzero, gf_mul


@nb.njit(cache=True, nogil=True)
def lane_low_table(zcol, W):
    """zlo[u, w] = XOR of z[u, j] over the set bits j < lowbits of w."""
    n = zcol.shape[0]
    zlo = np.zeros((n, W), dtype=np.uint64)
    for u in range(n):
        for w in range(1, W):
            low = w & (-w)
            j = 0
            while (1 << j) != low:
                j += 1
            zlo[u, w] = zlo[u, w ^ low] ^ zcol[u, j]
    return zlo


@nb.njit(cache=True, nogil=True, inline="always")
def _block_x(zcol, zlo, lowbits, block, w0, w1, x):
    n = zcol.shape[0]
    k = zcol.shape[1]
    for u in range(n):
        hi = np.uint64(0)
        for j in range(lowbits, k):
            if (block >> (j - lowbits)) & 1:
                hi ^= zcol[u, j]
        for w in range(w0, w1):
            x[u, w] = hi ^ zlo[u, w]


@nb.njit(cache=True, nogil=True)
def temporal_kernel(
    k, zcol, zlo, lowbits, w0, w1,
    inst_tail, inst_eid, inst_src_grp, inst_src_ok,
    grp_start, grp_head, grp_prev, n_groups,
    mask, readout, seed, role, bits, rpoly,
    x, buf_a, buf_b, acc,
):
    """Grouped temporal recurrence over all lane blocks.

    Groups are (arrival slot, head) pairs in ascending slot order; the value
    stored for a group is P_{head, l, slot}, i.e. the running prefix over
    earlier groups of the same head (``grp_prev``).
    """
    n = zcol.shape[0]
    W = zlo.shape[1]
    nblocks = (1 << k) >> lowbits
    tmp = np.zeros(W, dtype=np.uint64)
    for block in range(nblocks):
        _block_x(zcol, zlo, lowbits, block, w0, w1, x)
        if k == 1:
            for u in range(n):
                if mask[1, u]:
                    s = np.uint64(0)
                    for w in range(w0, w1):
                        s ^= x[u, w]
                    acc[u] ^= s
            continue
        prev = buf_a
        cur = buf_b
        for l in range(2, k + 1):
            yl = np.uint64(l - 1)
            for g in range(n_groups):
                u = grp_head[g]
                pg = grp_prev[g]
                if mask[l, u] == 0:
                    for w in range(w0, w1):
                        cur[g, w] = 0
                    continue
                for w in range(w0, w1):
                    tmp[w] = 0
                for p in range(grp_start[g], grp_start[g + 1]):
                    v = inst_tail[p]
                    if l == 2:
                        if inst_src_ok[p] == 0 or mask[1, v] == 0:
                            continue
                        y = draw_nonzero(seed, role, inst_eid[p], yl, bits)
                        for w in range(w0, w1):
                            tmp[w] ^= gf_mul(y, x[v, w], bits, rpoly)
                    else:
                        sg = inst_src_grp[p]
                        if sg < 0:
                            continue
                        y = draw_nonzero(seed, role, inst_eid[p], yl, bits)
                        for w in range(w0, w1):
                            tmp[w] ^= gf_mul(y, prev[sg, w], bits, rpoly)
                if pg >= 0:
                    for w in range(w0, w1):
                        cur[g, w] = cur[pg, w] ^ gf_mul(x[u, w], tmp[w], bits, rpoly)
                else:
                    for w in range(w0, w1):
                        cur[g, w] = gf_mul(x[u, w], tmp[w], bits, rpoly)
            prev, cur = cur, prev
        for u in range(n):
            r = readout[u]
            if r >= 0:
                s = np.uint64(0)
                for w in range(w0, w1):
                    s ^= prev[r, w]
                acc[u] ^= s


@nb.njit(cache=True, nogil=True, inline="always")
def _static_layers(k, x, ptr, tail, eid, seed, role, bits, rpoly, w0, w1, out, times_x):
    """out[l-1] = P_l (times_x) or the pre-multiplication neighbor sum (not)."""
    n = x.shape[0]
    for u in range(n):
        for w in range(w0, w1):
            out[0, u, w] = x[u, w] if times_x else np.uint64(1)
    for l in range(2, k + 1):
        yl = np.uint64(l - 1)
        for u in range(n):
            for w in range(w0, w1):
                out[l - 1, u, w] = 0
            for p in range(ptr[u], ptr[u + 1]):
                v = tail[p]
                y = draw_nonzero(seed, role, eid[p], yl, bits)
                if times_x:
                    for w in range(w0, w1):
                        out[l - 1, u, w] ^= gf_mul(y, out[l - 2, v, w], bits, rpoly)
                else:
                    # out holds sums; P_{v,l-1} = x_v * sum_{v,l-1}
                    for w in range(w0, w1):
                        pv = gf_mul(x[v, w], out[l - 2, v, w], bits, rpoly)
                        out[l - 1, u, w] ^= gf_mul(y, pv, bits, rpoly)
            if times_x:
                for w in range(w0, w1):
                    out[l - 1, u, w] = gf_mul(x[u, w], out[l - 1, u, w], bits, rpoly)


@nb.njit(cache=True, nogil=True)
def static_kernel(k, zcol, zlo, lowbits, w0, w1, ptr, tail, eid, seed, role, bits, rpoly, x, layers, acc):
    """Static walk recurrence; accumulates P_{u,k} over all lanes."""
    n = zcol.shape[0]
    nblocks = (1 << k) >> lowbits
    for block in range(nblocks):
        _block_x(zcol, zlo, lowbits, block, w0, w1, x)
        _static_layers(k, x, ptr, tail, eid, seed, role, bits, rpoly, w0, w1, layers, True)
        for u in range(n):
            s = np.uint64(0)
            for w in range(w0, w1):
                s ^= layers[k - 1, u, w]
            acc[u] ^= s


@nb.njit(cache=True, nogil=True)
def junction_kernel(
    k, zcol, zlo, lowbits, w0, w1,
    ptr, tail, eid, rptr, rtail, reid,
    seed, role, role_aux, bits, rpoly, x, layers, sums, acc,
):
    """R_u = sum_a P_{u,a} * S'_{u,k+1-a} with S'_{u,1} = 1.

    ``sums`` holds S'_{u,b} (the reverse-direction walk sum that would be
    multiplied by x_u), computed over the auxiliary y family.
    """
    n = zcol.shape[0]
    nblocks = (1 << k) >> lowbits
    for block in range(nblocks):
        _block_x(zcol, zlo, lowbits, block, w0, w1, x)
        _static_layers(k, x, ptr, tail, eid, seed, role, bits, rpoly, w0, w1, layers, True)
        _static_layers(k, x, rptr, rtail, reid, seed, role_aux, bits, rpoly, w0, w1, sums, False)
        for u in range(n):
            s = np.uint64(0)
            for w in range(w0, w1):
                r = layers[k - 1, u, w]
                for a in range(1, k):
                    r ^= gf_mul(layers[a - 1, u, w], sums[k - a, u, w], bits, rpoly)
                s ^= r
            acc[u] ^= s
