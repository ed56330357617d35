"""Core circuit representation: evaluation, validation, metrics, bounds."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import prefixcircuits as pc
from prefixcircuits import (
    GATE,
    INPUT,
    CircuitStructureError,
    GateNode,
    PrefixCircuit,
    WireRef,
)


def ref_validate(circuit):
    """Independent free-monoid oracle: real list concatenation."""
    outs = pc.evaluate(
        circuit, [[i] for i in range(circuit.n)], lambda a, b: a + b
    )
    return all(outs[i] == list(range(i + 1)) for i in range(circuit.n))


class TestEvaluate:
    def test_serial_running_sums(self):
        c = pc.serial(4)
        assert pc.evaluate(c, [1, 2, 3, 4], lambda a, b: a + b) == [1, 3, 6, 10]

    def test_single_input_no_gates(self):
        for gen in (pc.serial, pc.sklansky, pc.kogge_stone, pc.brent_kung):
            c = gen(1)
            assert c.size == 0
            assert pc.evaluate(c, [7], lambda a, b: a + b) == [7]

    def test_concatenation_respects_operand_order(self):
        c = pc.kronecker_circuit(7, 2)
        words = ["a", "b", "c", "d", "e", "f", "g"]
        outs = pc.evaluate(c, words, lambda a, b: a + b)
        assert outs == ["a", "ab", "abc", "abcd", "abcde", "abcdef", "abcdefg"]

    def test_wrong_input_count(self):
        with pytest.raises(ValueError):
            pc.evaluate(pc.serial(3), [1, 2], lambda a, b: a + b)

    def test_matrix_multiply_matches_fold(self):
        rng = np.random.default_rng(7)
        mats = [rng.integers(-3, 4, size=(2, 2)) for _ in range(9)]
        for gen in (pc.sklansky, pc.brent_kung, lambda n: pc.kronecker_circuit(n, 3)):
            c = gen(9)
            got = pc.evaluate(c, mats, lambda a, b: a @ b)
            acc = mats[0]
            for i in range(1, 9):
                acc = acc @ mats[i]
            assert np.array_equal(got[-1], acc)

    @given(st.lists(st.integers(-100, 100), min_size=2, max_size=33),
           st.integers(0, 3))
    @settings(max_examples=80, deadline=None)
    def test_associative_operators_match_serial_fold(self, xs, which):
        cap = 40

        def sat_min(a, b):  # min saturating at a floor; still associative
            return max(min(a, b), -cap)

        ops = [
            (lambda a, b: a + b, xs),
            (max, xs),
            (sat_min, xs),
            (lambda a, b: a @ b,
             [np.array([[v % 3, 1], [0, 1]], dtype=np.int64) for v in xs]),
        ]
        op, vals = ops[which]
        n = len(vals)
        for circuit in (pc.sklansky(n), pc.kogge_stone(n),
                        pc.kronecker_circuit(n, 2), pc.ladner_fischer(n, 1)):
            assert pc.validate_prefix(circuit)
            got = pc.evaluate(circuit, vals, op)
            acc = vals[0]
            want = [acc]
            for v in vals[1:]:
                acc = op(acc, v)
                want.append(acc)
            for g, w in zip(got, want):
                assert np.array_equal(g, w)


class TestValidatePrefix:
    def test_serial_true(self):
        assert pc.validate_prefix(pc.serial(5))

    def test_swapped_outputs_false(self):
        c = pc.serial(5)
        outs = list(c.outputs)
        outs[2], outs[3] = outs[3], outs[2]
        broken = PrefixCircuit(5, c.gates, outs)
        assert not pc.validate_prefix(broken)

    def test_interval_trick_matches_real_concatenation(self):
        cases = [pc.serial(9), pc.sklansky(11), pc.kogge_stone(13),
                 pc.brent_kung(10), pc.ladner_fischer(12, 1),
                 pc.kronecker_circuit(17, 3)]
        # and a broken one
        c = pc.serial(6)
        outs = list(c.outputs)
        outs[1], outs[4] = outs[4], outs[1]
        cases.append(PrefixCircuit(6, c.gates, outs))
        for circuit in cases:
            assert pc.validate_prefix(circuit) == ref_validate(circuit)

    def test_structural_error_names_gate(self):
        with pytest.raises(CircuitStructureError, match="gate 0"):
            PrefixCircuit(
                2,
                [GateNode(0, WireRef(GATE, 5), WireRef(INPUT, 0), 1)],
                [WireRef(INPUT, 0), WireRef(INPUT, 1)],
            )

    def test_level_order_enforced(self):
        with pytest.raises(CircuitStructureError, match="level"):
            PrefixCircuit(
                3,
                [
                    GateNode(0, WireRef(INPUT, 0), WireRef(INPUT, 1), 2),
                    GateNode(1, WireRef(GATE, 0), WireRef(INPUT, 2), 1),
                ],
                [WireRef(INPUT, 0), WireRef(GATE, 0), WireRef(GATE, 1)],
            )


class TestMetrics:
    def test_serial_5_by_hand(self):
        # chain of 4 gates: size 4, depth 4, every wire feeds at most one gate
        m = pc.metrics(pc.serial(5))
        assert (m.size, m.depth, m.max_fanout, m.deficiency) == (4, 4, 1, 0)
        assert m.valid

    def test_sklansky_8(self):
        m = pc.metrics(pc.sklansky(8))
        assert (m.size, m.depth) == (12, 3)

    def test_brent_kung_8(self):
        m = pc.metrics(pc.brent_kung(8))
        assert (m.size, m.depth) == (11, 5)

    def test_fanout_output_convention(self):
        # serial: internal wires feed exactly one gate; counting the
        # designated outputs adds one edge per tap
        c = pc.serial(5)
        assert pc.metrics(c).max_fanout == 1
        assert pc.metrics(c, count_outputs=True).max_fanout == 2

    def test_reorder_within_level_invariant(self):
        c = pc.kronecker_circuit(12, 3)
        gates = list(c.gates)
        # swap two final-layer gates (same level), renumber ids, remap refs
        lvl = max(g.level for g in gates)
        idx = [g.id for g in gates if g.level == lvl]
        a, b = idx[0], idx[1]
        perm = list(range(len(gates)))
        perm[a], perm[b] = perm[b], perm[a]  # perm[new_pos] = old_id
        old_to_new = {old: new for new, old in enumerate(perm)}

        def remap(ref):
            return WireRef(GATE, old_to_new[ref.index]) if ref.kind == GATE else ref

        new_gates = [
            GateNode(new, remap(gates[old].left), remap(gates[old].right),
                     gates[old].level)
            for new, old in enumerate(perm)
        ]
        new_outs = [remap(o) for o in c.outputs]
        c2 = PrefixCircuit(c.n, new_gates, new_outs)
        assert pc.metrics(c2) == pc.metrics(c)


class TestSnirGap:
    def test_brent_kung_8_measured(self):
        # (11 + 5) - 14 = 2; the suboptimal pair-and-fix construction
        m = pc.metrics(pc.brent_kung(8))
        assert pc.snir_gap(m, 8) == 2

    def test_kronecker_zero(self):
        assert pc.snir_gap(pc.metrics(pc.kronecker_circuit(7, 2)), 7) == 0

    def test_serial_always_zero(self):
        for n in (2, 3, 17, 100):
            assert pc.snir_gap(pc.metrics(pc.serial(n)), n) == 0

    def test_nonnegative_for_all_generators(self):
        for n in range(2, 40):
            for c in (pc.serial(n), pc.sklansky(n), pc.kogge_stone(n),
                      pc.brent_kung(n), pc.kronecker_circuit(n, 2)):
                assert pc.snir_gap(pc.metrics(c), n) >= 0


class TestFibDepthLowerBound:
    def test_small_values(self):
        # F(0)=0, F(1)=1 convention: min{t : F(t) >= n+1} - 3
        assert pc.fib_depth_lower_bound(1) == 0
        assert pc.fib_depth_lower_bound(2) == 1
        assert pc.fib_depth_lower_bound(3) == 2
        assert pc.fib_depth_lower_bound(4) == 2  # <= 2: depth-2 tight circuit exists
        assert pc.fib_depth_lower_bound(7) == 3

    def test_monotone_to_1000(self):
        vals = [pc.fib_depth_lower_bound(n) for n in range(1, 1001)]
        assert all(a <= b for a, b in zip(vals, vals[1:]))

    def test_tight_at_small_optimal_circuits(self):
        # sklansky(4) is a depth-2 circuit meeting the size+depth bound, so
        # the calibrated lower bound cannot exceed 2 at n = 4
        m = pc.metrics(pc.sklansky(4))
        assert pc.snir_gap(m, 4) == 0 and m.depth == 2
        assert pc.fib_depth_lower_bound(4) <= 2
