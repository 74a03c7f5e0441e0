"""Compiled twin of :func:`firebreak.tree.table_st` for large trees.

Same branch order and tie-breaks as the Python tables, but cut systems are
recovered afterwards from per-(child, budget) back-pointers instead of being
carried in the cells.  Post order, table fill and traceback all run compiled.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from numba import njit

CONCORDANT = 0
CUT = 1


@njit(cache=True)
def _post_order(root, child_ptr, child_idx):
    n = child_ptr.shape[0] - 1
    order = np.empty(n, np.int64)
    stack_v = np.empty(n, np.int64)
    stack_k = np.empty(n, np.int64)
    top = 0
    stack_v[0] = root
    stack_k[0] = child_ptr[root]
    out = 0
    while top >= 0:
        v = stack_v[top]
        k = stack_k[top]
        if k < child_ptr[v + 1]:
            stack_k[top] = k + 1
            ch = child_idx[k]
            top += 1
            stack_v[top] = ch
            stack_k[top] = child_ptr[ch]
        else:
            order[out] = v
            out += 1
            top -= 1
    return order


@njit(cache=True)
def _fill(order, child_ptr, child_idx, cost, burning, values, B, replace_on_tie):
    n = order.shape[0]
    a_plus = np.empty((n, B + 1))
    a_minus = np.empty((n, B + 1))
    bpp_br = np.full((n, B + 1), -1, np.int8)
    bpp_z = np.zeros((n, B + 1), np.int32)
    bpm_br = np.full((n, B + 1), -1, np.int8)
    bpm_z = np.zeros((n, B + 1), np.int32)
    prev_p = np.empty(B + 1)
    prev_m = np.empty(B + 1)
    new_p = np.empty(B + 1)
    new_m = np.empty(B + 1)
    neg = -np.inf
    for oi in range(n):
        v = order[oi]
        v_burns = burning[v]
        for b in range(B + 1):
            prev_p[b] = 0.0
            prev_m[b] = neg if v_burns else values[v]
        for k in range(child_ptr[v], child_ptr[v + 1]):
            ch = child_idx[k]
            c = cost[ch]
            ch_burns = burning[ch]
            for b in range(B + 1):
                z = 0
                fp = prev_p[0] + a_plus[ch, b]
                for x in range(1, b + 1):
                    cand = prev_p[x] + a_plus[ch, b - x]
                    if cand > fp:
                        fp = cand
                        z = x
                br = CONCORDANT
                if (not ch_burns) and b >= c:
                    top = b - c
                    z2 = 0
                    m2 = prev_p[0] + a_minus[ch, top]
                    for x in range(1, top + 1):
                        cand = prev_p[x] + a_minus[ch, top - x]
                        if cand > m2:
                            m2 = cand
                            z2 = x
                    if m2 > fp or (replace_on_tie and m2 >= fp):
                        fp = m2
                        z = z2
                        br = CUT
                new_p[b] = fp
                bpp_br[ch, b] = br
                bpp_z[ch, b] = z
                fm = neg
                brm = -1
                zm = 0
                if not v_burns:
                    if b >= c:
                        top = b - c
                        fm = prev_m[0] + a_plus[ch, top]
                        brm = CUT
                        for x in range(1, top + 1):
                            cand = prev_m[x] + a_plus[ch, top - x]
                            if cand > fm:
                                fm = cand
                                zm = x
                    if not ch_burns:
                        z2 = 0
                        m2 = prev_m[0] + a_minus[ch, b]
                        for x in range(1, b + 1):
                            cand = prev_m[x] + a_minus[ch, b - x]
                            if cand > m2:
                                m2 = cand
                                z2 = x
                        if m2 > fm or (replace_on_tie and m2 >= fm):
                            fm = m2
                            zm = z2
                            brm = CONCORDANT
                new_m[b] = fm
                bpm_br[ch, b] = brm
                bpm_z[ch, b] = zm
            for b in range(B + 1):
                prev_p[b] = new_p[b]
                prev_m[b] = new_m[b]
        for b in range(B + 1):
            a_plus[v, b] = prev_p[b]
            a_minus[v, b] = prev_m[b]
    return a_plus, a_minus, bpp_br, bpp_z, bpm_br, bpm_z


@njit(cache=True)
def _solve(root, child_ptr, child_idx, cost, burning, values, B, replace_on_tie):
    order = _post_order(root, child_ptr, child_idx)
    a_plus, a_minus, bpp_br, bpp_z, bpm_br, bpm_z = _fill(
        order, child_ptr, child_idx, cost, burning, values, B, replace_on_tie
    )
    n = order.shape[0]
    root_burns = not (a_minus[root, B] > a_plus[root, B])
    saved = a_plus[root, B] if root_burns else a_minus[root, B]
    cut = np.zeros(n, np.bool_)
    # children of one vertex are undone last-to-first: the ST row of child j
    # holds the budget share z left for children 0..j-1
    st_v = np.empty(n, np.int64)
    st_burns = np.empty(n, np.bool_)
    st_b = np.empty(n, np.int64)
    top = 0
    st_v[0] = root
    st_burns[0] = root_burns
    st_b[0] = B
    while top >= 0:
        v = st_v[top]
        burns = st_burns[top]
        b = st_b[top]
        top -= 1
        for k in range(child_ptr[v + 1] - 1, child_ptr[v] - 1, -1):
            ch = child_idx[k]
            c = cost[ch]
            top += 1
            st_v[top] = ch
            if burns:
                z = bpp_z[ch, b]
                if bpp_br[ch, b] == CONCORDANT:
                    st_burns[top] = True
                    st_b[top] = b - z
                else:
                    cut[ch] = True
                    st_burns[top] = False
                    st_b[top] = b - c - z
            else:
                z = bpm_z[ch, b]
                if bpm_br[ch, b] == CUT:
                    cut[ch] = True
                    st_burns[top] = True
                    st_b[top] = b - c - z
                else:
                    st_burns[top] = False
                    st_b[top] = b - z
            b = z
    return cut, saved, root_burns


def arrays(inst):
    """CSR children, parent-link costs, burning mask and values as numpy arrays."""
    n = inst.n
    counts = np.fromiter((len(ch) for ch in inst.children), dtype=np.int64, count=n)
    child_ptr = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(counts, out=child_ptr[1:])
    child_idx = np.fromiter((w for ch in inst.children for w in ch), dtype=np.int64, count=int(child_ptr[-1]))
    cost = np.asarray(inst.parent_cost, dtype=np.int64)
    burning = np.zeros(n, dtype=np.bool_)
    if inst.burning:
        burning[np.fromiter(inst.burning, dtype=np.int64)] = True
    values = np.array([float(x) for x in inst.values], dtype=np.float64)
    return child_ptr, child_idx, cost, burning, values


def _convert(x: float, like):
    if like and isinstance(like[0], Fraction):
        return Fraction(int(x))
    if like and isinstance(like[0], float):
        return float(x)
    return int(x)


def solve_compiled(inst, replace_on_tie=True):
    """Return (children whose parent link is cut, saved value, root burns)."""
    child_ptr, child_idx, cost, burning, values = inst.arrays()
    cut, saved, root_burns = _solve(
        inst.root, child_ptr, child_idx, cost, burning, values, inst.budget, replace_on_tie
    )
    return frozenset(np.flatnonzero(cut).tolist()), _convert(saved, inst.values), bool(root_burns)
