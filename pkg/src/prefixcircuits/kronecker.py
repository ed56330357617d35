"""Blocked zero-deficiency prefix circuits with bounded fan-out.

Construction (for block size s >= 2):

* Layer 1 partitions the n inputs into ``b = ceil(n/s)`` blocks of size s
  (last block ``n mod s`` when nonzero) and runs a serial prefix inside
  each block, all blocks in parallel (levels 1..s-1).
* Layer 2 combines the block totals ``w_0..w_{b-2}`` (every block except
  the last) into running prefixes ``z_i`` with a serial chain, one level
  per gate.
* Layer 3 is a single level: ``z_{i-1}`` finalizes every remaining partial
  prefix of block i (all s-1 non-final positions of a full block; every
  position of the last block).

When n is an exact power of s, the circuit is built for n-1 and one final
gate attaches the last input, which caps the fan-out of the last boundary
wire at s.  The result is zero-deficiency (size + depth = 2n - 2) with
maximum fan-out <= s, for every n >= 2 and s >= 2.

Chaining layer 2 is what keeps every wire's fan-out within s: feeding the
block totals back through the blocked construction itself re-uses each
boundary prefix at every nesting level, pushing fan-out above s by up to
s-1 per level (measurably so from n = 11 at s = 2; the `middle` hook on
:func:`kronecker_circuit` exhibits it).  The price is depth: the built
circuit has depth s + ceil(n/s) - 2 (see :func:`circuit_depth`), while
:func:`kronecker_depth` gives the depth of the fully re-blocked recursion

    D(n) = n - 1                 for n <= s
    D(n) = 1 + D(n - 1)          for n an exact power of s
    D(n) = s + D(ceil(n/s) - 1)  otherwise

which stays below ``s * ceil(log_s n) - 1`` and is the quantity the
block-size dynamic program optimizes.  The two agree exactly while the
chain in layer 2 is no longer than a serial base case would be
(``kronecker_depth(m, s) == m - 1`` for the middle size m); beyond that the
built depth exceeds the recursion value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .core import PrefixCircuit


def is_power_of(n: int, s: int) -> bool:
    """True iff n = s**k for some k >= 1."""
    if n < s:
        return False
    while n % s == 0:
        n //= s
    return n == 1


def _check_params(n: int, s: int):
    if n < 1:
        raise ValueError("n must be >= 1")
    if s < 2:
        raise ValueError("block size s must be >= 2")


def kronecker_circuit(n: int, s: int, middle=None) -> PrefixCircuit:
    """Build the blocked zero-deficiency circuit for n inputs, block size s.

    `middle`, when given, generates the layer that combines the block
    totals: it is called with the number of surviving totals m and must
    return a PrefixCircuit on m inputs.  Any zero-deficiency middle keeps
    the whole circuit zero-deficiency, but only chain-shaped middles keep
    fan-out within s; the default (equivalent to passing `serial`) is the
    chain.  Passing a recursive self-call, e.g.

        lambda m: kronecker_circuit(m, s, middle=...)

    yields the fully re-blocked variant whose depth is kronecker_depth(n, s)
    at the cost of fan-out rising above s at nested block boundaries.
    """
    _check_params(n, s)
    if middle is None:
        lefts, rights, levels, outs = _build_arrays(n, s)
    else:
        lefts, rights, levels, outs = _build_with_middle(n, s, middle)
    return PrefixCircuit.from_arrays(n, lefts, rights, levels, outs)


def _build_with_middle(n: int, s: int, middle):
    if n <= s or is_power_of(n, s):
        if n <= s:
            return _build_arrays(n, s)
        sub = _build_with_middle(n - 1, s, middle)
        lefts, rights, levels, outs = (np.asarray(a) for a in sub)
        lefts = np.where(lefts >= n - 1, lefts + 1, lefts)
        rights = np.where(rights >= n - 1, rights + 1, rights)
        outs = np.where(outs >= n - 1, outs + 1, outs)
        depth = levels.max() if len(levels) else 0
        lefts = np.append(lefts, outs[-1])
        rights = np.append(rights, n - 1)
        levels = np.append(levels, depth + 1)
        outs = np.append(outs, n + len(lefts) - 1)
        return lefts, rights, levels, outs

    b = -(-n // s)
    m = b - 1
    lefts: list = []
    rights: list = []
    levels: list = []
    partial = list(range(n))
    for c in range(n):
        if c % s:
            lefts.append(partial[c - 1])
            rights.append(c)
            levels.append(c % s)
            partial[c] = n + len(lefts) - 1
    w = [partial[min(i * s + s - 1, n - 1)] for i in range(b)]

    mc = middle(m)
    if mc.n != m:
        raise ValueError(f"middle generator returned {mc.n} inputs, expected {m}")
    base = n + len(lefts)
    for g in range(mc.size):
        l, r = int(mc._lefts[g]), int(mc._rights[g])
        lefts.append(w[l] if l < m else base + (l - m))
        rights.append(w[r] if r < m else base + (r - m))
        levels.append((s - 1) + int(mc._levels[g]))
    z = [w[int(o)] if o < m else base + (int(o) - m) for o in mc._outs]
    depth = (s - 1) + (int(mc._levels.max()) if mc.size else 0) + 1

    outs = [0] * n
    for c in range(min(s, n)):
        outs[c] = partial[c]
    for i in range(m):
        outs[(i + 1) * s - 1] = z[i]
    for c in range(s, n):
        if c % s != s - 1 or c >= s * (b - 1):
            lefts.append(z[c // s - 1])
            rights.append(partial[c])
            levels.append(depth)
            outs[c] = n + len(lefts) - 1
    return (np.array(lefts, dtype=np.int64), np.array(rights, dtype=np.int64),
            np.array(levels, dtype=np.int64), np.array(outs, dtype=np.int64))


def _build_arrays(n: int, s: int):
    if n == 1:
        e = np.empty(0, dtype=np.int64)
        return e, e, e, np.zeros(1, dtype=np.int64)
    if n <= s:
        ids = np.arange(n - 1, dtype=np.int64)
        lefts = np.concatenate(([0], n + ids[:-1]))
        rights = np.arange(1, n, dtype=np.int64)
        levels = ids + 1
        outs = np.concatenate(([0], n + ids))
        return lefts, rights, levels, outs
    if is_power_of(n, s):
        lefts, rights, levels, outs = _build_arrays(n - 1, s)
        # inputs gain one slot: gate ids shift from (n-1)+g to n+g
        lefts = np.where(lefts >= n - 1, lefts + 1, lefts)
        rights = np.where(rights >= n - 1, rights + 1, rights)
        outs = np.where(outs >= n - 1, outs + 1, outs)
        last = outs[-1]
        depth = levels.max() if len(levels) else 0
        lefts = np.append(lefts, last)
        rights = np.append(rights, n - 1)
        levels = np.append(levels, depth + 1)
        outs = np.append(outs, n + len(lefts) - 1)
        return lefts, rights, levels, outs

    b = -(-n // s)
    m = b - 1
    cols = np.arange(n, dtype=np.int64)

    # layer 1: serial inside blocks; one gate per non-block-start column
    l1_cols = cols[cols % s != 0]
    g1 = len(l1_cols)  # n - b
    rank = np.full(n, -1, dtype=np.int64)
    rank[l1_cols] = np.arange(g1)
    partial = np.where(cols % s == 0, cols, n + rank)
    l1_left = partial[l1_cols - 1]
    l1_right = l1_cols
    l1_level = l1_cols % s

    # layer 2: chain over block totals w_0..w_{m-1}
    w = partial[np.minimum(np.arange(b, dtype=np.int64) * s + s - 1, n - 1)]
    if m >= 2:
        mid_ids = n + g1 + np.arange(m - 1, dtype=np.int64)
        mid_left = np.concatenate(([w[0]], mid_ids[:-1]))
        mid_right = w[1:m]
        mid_level = s + np.arange(m - 1, dtype=np.int64)
        z = np.concatenate(([w[0]], mid_ids))
    else:
        mid_left = mid_right = mid_level = np.empty(0, dtype=np.int64)
        z = w[:1]
    depth = s + m - 1

    # layer 3: one level finalizing everything after block 0
    mask3 = (cols >= s) & ((cols % s != s - 1) | (cols >= s * (b - 1)))
    c3 = cols[mask3]
    l3_left = z[c3 // s - 1]
    l3_right = partial[c3]
    l3_level = np.full(len(c3), depth, dtype=np.int64)
    l3_ids = n + g1 + (m - 1) + np.arange(len(c3), dtype=np.int64)

    outs = np.empty(n, dtype=np.int64)
    outs[: min(s, n)] = partial[: min(s, n)]
    outs[np.arange(s - 1, s * (b - 1), s)] = z
    outs[c3] = l3_ids

    lefts = np.concatenate((l1_left, mid_left, l3_left))
    rights = np.concatenate((l1_right, mid_right, l3_right))
    levels = np.concatenate((l1_level, mid_level, l3_level))
    return lefts, rights, levels, outs


@lru_cache(maxsize=None)
def circuit_depth(n: int, s: int) -> int:
    """Depth of the circuit :func:`kronecker_circuit` builds, in closed form."""
    _check_params(n, s)
    if n == 1:
        return 0
    if n <= s:
        return n - 1
    if is_power_of(n, s):
        return 1 + circuit_depth(n - 1, s)
    return s + (-(-n // s) - 1) - 1


@lru_cache(maxsize=None)
def kronecker_depth(n: int, s: int) -> int:
    """Depth of the fully re-blocked recursion (the family's depth potential).

    Bounded by ``s * ceil(log_s n) - 1``; minimized over s by
    :func:`min_depth_table`.  Built circuits match this value exactly
    whenever the middle layer is small enough that re-blocking it would
    degenerate to the same chain (``kronecker_depth(ceil(n/s)-1, s) ==
    ceil(n/s) - 2``); see the module docstring for why the builder chains
    the middle layer unconditionally.
    """
    _check_params(n, s)
    if n <= s:
        return n - 1
    if is_power_of(n, s):
        return 1 + kronecker_depth(n - 1, s)
    return s + kronecker_depth(-(-n // s) - 1, s)


def kronecker_depth_bound(n: int, s: int) -> int:
    """The closed-form cap s * ceil(log_s n) - 1 on kronecker_depth."""
    _check_params(n, s)
    if n == 1:
        return 0
    k = 1
    p = s
    while p < n:
        p *= s
        k += 1
    return s * k - 1


@dataclass(frozen=True)
class LayerRecord:
    """Arithmetic of one level of the re-blocked recursion."""

    n: int
    block_count: int  # ceil(n/s)
    recursive_n: int  # ceil(n/s) - 1
    layer1_size: int  # n - ceil(n/s)
    layer3_size: int  # n - s - ceil(n/s) + 2


@dataclass(frozen=True)
class KroneckerPlan:
    n: int
    s: int
    layer_boundaries: tuple
    power_fix_applied: bool


def kronecker_plan(n: int, s: int) -> KroneckerPlan:
    """Level-by-level size accounting of the re-blocked recursion.

    Each record satisfies layer1 + layer3 + (2 * block_count - 4)
    + (s - 1) + 1 == 2n - 2, the arithmetic that makes the construction
    zero-deficiency level by level.
    """
    _check_params(n, s)
    records = []
    fix = False
    v = n
    while v > s:
        if is_power_of(v, s):
            fix = True
            v -= 1
            continue
        b = -(-v // s)
        records.append(LayerRecord(v, b, b - 1, v - b, v - s - b + 2))
        v = b - 1
    return KroneckerPlan(n, s, tuple(records), fix)


# -- arithmetic edge predicate ------------------------------------------------
#
# Grid view: after level k, column c holds the latest partial value whose
# span ends at input c.  An edge (k, src) -> (k+1, dst) exists iff the gate
# scheduled at level k+1 in column dst reads the value held at column src.
# Both the scalar predicate and the per-level lister derive from the same
# level case-split as the default-middle builder, in O(log n) arithmetic
# without materializing the circuit.


def edge_predicate(n: int, s: int, level: int, src_node: int, dst_node: int) -> bool:
    _check_params(n, s)
    if n == 1:
        return False
    D = circuit_depth(n, s)
    lv = level + 1  # level of the gate being queried
    if not (0 <= level < D) or not (0 <= src_node < n) or not (0 <= dst_node < n):
        return False
    if n <= s:
        return dst_node == lv and src_node in (dst_node - 1, dst_node)
    if is_power_of(n, s):
        if lv <= D - 1:
            if src_node >= n - 1 or dst_node >= n - 1:
                return False
            return edge_predicate(n - 1, s, level, src_node, dst_node)
        return dst_node == n - 1 and src_node in (n - 2, n - 1)
    b = -(-n // s)
    if lv <= s - 1:  # in-block serial
        return dst_node % s == lv and src_node in (dst_node - 1, dst_node)
    if lv < D:  # middle chain gate j at column (j+1)s - 1
        j = lv - (s - 1)
        return dst_node == (j + 1) * s - 1 and src_node in (j * s - 1, dst_node)
    # final layer
    if dst_node < s or (dst_node % s == s - 1 and dst_node < s * (b - 1)):
        return False
    return src_node in ((dst_node // s) * s - 1, dst_node)


def level_edges(n: int, s: int, level: int) -> list:
    """All grid edges (src, dst) from `level` into gates at level + 1."""
    _check_params(n, s)
    if n == 1:
        return []
    D = circuit_depth(n, s)
    lv = level + 1
    if not 0 <= level < D:
        return []
    if n <= s:
        return [(lv - 1, lv), (lv, lv)]
    if is_power_of(n, s):
        if lv <= D - 1:
            return level_edges(n - 1, s, level)
        return [(n - 2, n - 1), (n - 1, n - 1)]
    b = -(-n // s)
    if lv <= s - 1:
        edges = []
        for c in range(lv, n, s):
            edges.append((c - 1, c))
            edges.append((c, c))
        return edges
    if lv < D:
        j = lv - (s - 1)
        c = (j + 1) * s - 1
        return [(j * s - 1, c), (c, c)]
    edges = []
    for c in range(s, n):
        if c % s != s - 1 or c >= s * (b - 1):
            edges.append(((c // s) * s - 1, c))
            edges.append((c, c))
    return edges


# -- minimum-depth dynamic program -------------------------------------------


@dataclass(frozen=True)
class DepthTable:
    """Per-n minimum of kronecker_depth over the block size s."""

    max_n: int
    entries: tuple  # entries[n] = (min_depth, best_s); entries[0] is None

    def min_depth(self, n: int) -> int:
        return self.entries[n][0]

    def best_s(self, n: int) -> int:
        return self.entries[n][1]

    def to_csv(self) -> str:
        lines = ["n,min_depth,best_s"]
        for n in range(1, self.max_n + 1):
            d, s = self.entries[n]
            lines.append(f"{n},{d},{s}")
        return "\n".join(lines) + "\n"


def min_depth_table(max_n: int) -> DepthTable:
    """Tabulate min over s in [2, max(2, n//2)] of kronecker_depth(n, s).

    Ties break toward the smaller s (smaller fan-out at equal depth).
    kronecker_depth(n, s) >= s for n > s, so the scan stops once s reaches
    the best depth found.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    entries = [None, (0, 2)]
    for n in range(2, max_n + 1):
        best = (n - 1, 2) if n <= 2 else (kronecker_depth(n, 2), 2)
        for s in range(3, max(2, n // 2) + 1):
            if s >= best[0]:
                break
            d = kronecker_depth(n, s)
            if d < best[0]:
                best = (d, s)
        entries.append(best)
    return DepthTable(max_n, tuple(entries))


def depth_ratio_report(n_list, s: int) -> list:
    """Rows (n, kronecker_depth(n, s), depth / log2(n)) for the CLI table."""
    rows = []
    for n in n_list:
        d = kronecker_depth(n, s)
        ratio = d / math.log2(n) if n > 1 else float("nan")
        rows.append((n, d, ratio))
    return rows
