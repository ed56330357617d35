"""Prefix-circuit DAG representation, evaluation, validation, and metrics.

A prefix circuit over n inputs is a DAG of binary-operator nodes.  Gate g
computes ``value(left) o value(right)`` for an associative operator ``o``;
operand order is preserved everywhere, so non-commutative operators are
supported.  ``outputs[i]`` designates the wire that carries the prefix
``x(0) o x(1) o ... o x(i)``.

Wires are identified internally by flat integer ids: ``0..n-1`` are the
inputs, ``n + g`` is the output of gate ``g``.  Gates are stored in
topological order (every operand refers to an input or an earlier gate),
each with an explicit level.  Levels are declared by generators and only
checked here, so that a generator's schedule survives round-trips; the
depth metric is the largest declared level.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

try:
    import numba

    _HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a hard dep, but stay usable
    _HAVE_NUMBA = False

INPUT = "input"
GATE = "gate"


class WireRef(NamedTuple):
    """Reference to an input position or a gate output."""

    kind: str  # INPUT or GATE
    index: int


class GateNode(NamedTuple):
    """One binary-operator node: output = value(left) o value(right)."""

    id: int
    left: WireRef
    right: WireRef
    level: int


@dataclass(frozen=True)
class CircuitMetrics:
    size: int
    depth: int
    max_fanout: int
    deficiency: int
    valid: bool


class CircuitStructureError(ValueError):
    """Raised for malformed circuits; names the offending gate."""


class PrefixCircuit:
    """Immutable leveled DAG of binary gates with designated prefix outputs."""

    __slots__ = ("n", "_lefts", "_rights", "_levels", "_outs", "_gates", "_outputs")

    def __init__(self, n: int, gates: Iterable[GateNode], outputs: Sequence[WireRef]):
        gates = list(gates)
        lefts = np.empty(len(gates), dtype=np.int64)
        rights = np.empty(len(gates), dtype=np.int64)
        levels = np.empty(len(gates), dtype=np.int64)
        for i, g in enumerate(gates):
            if g.id != i:
                raise CircuitStructureError(f"gate {g.id}: ids must be 0..G-1 in order")
            lefts[i] = _flatten(g.left, n)
            rights[i] = _flatten(g.right, n)
            levels[i] = g.level
        outs = np.array([_flatten(o, n) for o in outputs], dtype=np.int64)
        self._init_from_arrays(n, lefts, rights, levels, outs)

    @classmethod
    def from_arrays(cls, n, lefts, rights, levels, outs) -> "PrefixCircuit":
        """Construct from flat wire-id arrays (generators' fast path)."""
        self = object.__new__(cls)
        self._init_from_arrays(
            n,
            np.asarray(lefts, dtype=np.int64),
            np.asarray(rights, dtype=np.int64),
            np.asarray(levels, dtype=np.int64),
            np.asarray(outs, dtype=np.int64),
        )
        return self

    def _init_from_arrays(self, n, lefts, rights, levels, outs):
        if n < 1:
            raise CircuitStructureError("circuit needs at least one input")
        object.__setattr__(self, "n", int(n))
        object.__setattr__(self, "_lefts", lefts)
        object.__setattr__(self, "_rights", rights)
        object.__setattr__(self, "_levels", levels)
        object.__setattr__(self, "_outs", outs)
        object.__setattr__(self, "_gates", None)
        object.__setattr__(self, "_outputs", None)
        self._check_structure()

    def __setattr__(self, name, value):
        raise AttributeError("PrefixCircuit is immutable")

    def _check_structure(self):
        n, G = self.n, self.size
        if len(self._outs) != n:
            raise CircuitStructureError(f"expected {n} outputs, got {len(self._outs)}")
        levels = self._levels
        if G and levels.min() < 1:
            g = int(np.argmax(levels < 1))
            raise CircuitStructureError(f"gate {g}: level must be >= 1")
        ids = np.arange(G, dtype=np.int64)
        for side in (self._lefts, self._rights):
            if G == 0:
                break
            if side.min() < 0 or side.max() >= n + G:
                g = int(np.argmax((side < 0) | (side >= n + G)))
                raise CircuitStructureError(f"gate {g}: dangling wire {int(side[g])}")
            is_gate = side >= n
            op = np.where(is_gate, side - n, 0)
            late = is_gate & (op >= ids)
            if late.any():
                g = int(np.argmax(late))
                raise CircuitStructureError(
                    f"gate {g}: operand gate {int(side[g]) - n} does not precede it"
                )
            op_level = np.where(is_gate, levels[op], 0)
            bad = op_level >= levels
            if bad.any():
                g = int(np.argmax(bad))
                raise CircuitStructureError(
                    f"gate {g}: operand gate {int(side[g]) - n} violates level order"
                )
        outs = self._outs
        if n and (outs.min() < 0 or outs.max() >= n + G):
            i = int(np.argmax((outs < 0) | (outs >= n + G)))
            raise CircuitStructureError(f"output {i}: dangling wire {int(outs[i])}")

    # -- views ---------------------------------------------------------------

    @property
    def size(self) -> int:
        return len(self._lefts)

    @property
    def gates(self) -> tuple:
        if self._gates is None:
            n = self.n
            nodes = tuple(
                GateNode(g, _unflatten(self._lefts[g], n), _unflatten(self._rights[g], n),
                         int(self._levels[g]))
                for g in range(self.size)
            )
            object.__setattr__(self, "_gates", nodes)
        return self._gates

    @property
    def outputs(self) -> tuple:
        if self._outputs is None:
            object.__setattr__(
                self, "_outputs", tuple(_unflatten(w, self.n) for w in self._outs)
            )
        return self._outputs

    def wire_level(self, wire: int) -> int:
        return 0 if wire < self.n else int(self._levels[wire - self.n])

    def __eq__(self, other):
        return (
            isinstance(other, PrefixCircuit)
            and self.n == other.n
            and np.array_equal(self._lefts, other._lefts)
            and np.array_equal(self._rights, other._rights)
            and np.array_equal(self._levels, other._levels)
            and np.array_equal(self._outs, other._outs)
        )

    def __repr__(self):
        return f"PrefixCircuit(n={self.n}, size={self.size})"


def _flatten(ref: WireRef, n: int) -> int:
    if ref.kind == INPUT:
        if not 0 <= ref.index < n:
            raise CircuitStructureError(f"input index {ref.index} out of range")
        return ref.index
    if ref.kind == GATE:
        return n + ref.index
    raise CircuitStructureError(f"unknown wire kind {ref.kind!r}")


def _unflatten(wire: int, n: int) -> WireRef:
    w = int(wire)
    return WireRef(INPUT, w) if w < n else WireRef(GATE, w - n)


def evaluate(circuit: PrefixCircuit, inputs: Sequence, op: Callable):
    """Evaluate over arbitrary values with an associative binary operator.

    Associativity is the caller's obligation; operand order is preserved
    (left operand is always the lower-index partial prefix).
    """
    n = circuit.n
    if len(inputs) != n:
        raise ValueError(f"expected {n} inputs, got {len(inputs)}")
    vals = list(inputs) + [None] * circuit.size
    lefts = circuit._lefts
    rights = circuit._rights
    for g in range(circuit.size):
        vals[n + g] = op(vals[lefts[g]], vals[rights[g]])
    return [vals[w] for w in circuit._outs]


if _HAVE_NUMBA:

    @numba.njit(cache=True)
    def _interval_check(n, lefts, rights, outs):  # pragma: no cover - jitted
        G = len(lefts)
        lo = np.empty(n + G, dtype=np.int64)
        hi = np.empty(n + G, dtype=np.int64)
        for i in range(n):
            lo[i] = i
            hi[i] = i + 1
        for g in range(G):
            l = lefts[g]
            r = rights[g]
            a = lo[l]
            c = lo[r]
            if a < 0 or c < 0 or hi[l] != c:
                lo[n + g] = -1
                hi[n + g] = -1
            else:
                lo[n + g] = a
                hi[n + g] = hi[r]
        for i in range(n):
            w = outs[i]
            if lo[w] != 0 or hi[w] != i + 1:
                return False
        return True

else:  # pragma: no cover

    def _interval_check(n, lefts, rights, outs):
        G = len(lefts)
        lo = list(range(n)) + [0] * G
        hi = [i + 1 for i in range(n)] + [0] * G
        for g in range(G):
            l, r = lefts[g], rights[g]
            a, c = lo[l], lo[r]
            if a < 0 or c < 0 or hi[l] != c:
                lo[n + g] = -1
                hi[n + g] = -1
            else:
                lo[n + g] = a
                hi[n + g] = hi[r]
        return all(lo[outs[i]] == 0 and hi[outs[i]] == i + 1 for i in range(n))


def validate_prefix(circuit: PrefixCircuit) -> bool:
    """Check prefix correctness over the free monoid.

    Conceptually this evaluates the circuit with operand i = the singleton
    sequence [i] and sequence concatenation as the operator, then checks
    output i equals [0, 1, ..., i].  Because the free monoid is the most
    general associative structure, success here implies correctness for
    every associative operator.

    Implementation note: a concatenation of singletons equals [a, ..., b-1]
    iff it is a contiguous ascending run, and concatenating runs (a,b), (c,d)
    yields a run iff b == c.  A non-run value can never become a run again
    (the defect is interior), so tracking either (start, end) or a poisoned
    marker per wire decides the predicate exactly in O(gates).
    """
    return bool(
        _interval_check(circuit.n, circuit._lefts, circuit._rights, circuit._outs)
    )


def metrics(circuit: PrefixCircuit, count_outputs: bool = False) -> CircuitMetrics:
    """Size, depth, max fan-out, deficiency, and validity of a circuit.

    Depth is the largest declared gate level (the generator's schedule).
    Fan-out counts operand edges only; pass ``count_outputs=True`` to also
    count each designated circuit output as one outgoing edge.
    """
    n, G = circuit.n, circuit.size
    size = G
    depth = int(circuit._levels.max()) if G else 0
    fan = np.bincount(circuit._lefts, minlength=n + G) + np.bincount(
        circuit._rights, minlength=n + G
    )
    if count_outputs:
        fan += np.bincount(circuit._outs, minlength=n + G)
    max_fanout = int(fan.max()) if len(fan) else 0
    deficiency = size + depth - (2 * n - 2)
    return CircuitMetrics(size, depth, max_fanout, deficiency, validate_prefix(circuit))


def snir_gap(m: CircuitMetrics, n: int) -> int:
    """S + D - (2n - 2); zero means the size/depth trade-off is tight."""
    return m.size + m.depth - (2 * n - 2)


def fib_depth_lower_bound(n: int) -> int:
    """Minimum depth any zero-deficiency prefix circuit on n inputs can have.

    Computed as ``min{t : F(t) >= n + 1} - 3`` with the Fibonacci convention
    F(0)=0, F(1)=F(2)=1.  This calibration makes the bound monotone in n and
    tight at small sizes (n=2 -> 1, n=4 -> 2, consistent with the depth-2
    four-input circuit that meets the size+depth lower bound).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    target = n + 1
    a, b = 0, 1  # F(0), F(1)
    t = 1
    while b < target:
        a, b = b, a + b
        t += 1
    return t - 3
