"""Reversible adder: construction, simulation, resources, verification."""

import random

import pytest

from prefixcircuits import qadder
from prefixcircuits.qadder import (
    CNOT,
    NOT,
    TOFFOLI,
    Gate,
    LayerOverlapError,
    QuantumCircuit,
    build_adder,
    estimate_resources,
    netlist,
    resources,
    simulate,
    verify_adder,
)


def run_add(circuit, a, b):
    n = circuit.n
    state = [0] * circuit.n_qubits
    for i in range(n):
        state[circuit.registers["a"][i]] = (a >> i) & 1
        state[circuit.registers["b"][i]] = (b >> i) & 1
    out = simulate(circuit, state)
    s = sum(out[circuit.registers["b"][i]] << i for i in range(n))
    carry = out[circuit.registers["g"][n - 1]]
    return s, carry, out


class TestGateSemantics:
    def test_toffoli_truth(self):
        c = QuantumCircuit({"q": [0, 1, 2]}, [Gate(TOFFOLI, (0, 1, 2), None)])
        assert simulate(c, [1, 1, 0])[2] == 1
        assert simulate(c, [1, 0, 1])[2] == 1
        assert simulate(c, [1, 1, 1])[2] == 0

    def test_not_and_cnot(self):
        c = QuantumCircuit({"q": [0, 1]}, [Gate(NOT, (0,), None),
                                           Gate(CNOT, (0, 1), None)])
        assert simulate(c, [0, 0]) == [1, 1]

    def test_unassigned_qubit_rejected(self):
        c = QuantumCircuit({"q": [0, 1]}, [Gate(CNOT, (0, 1), None)])
        with pytest.raises(ValueError):
            simulate(c, {0: 1})


class TestAdderSmall:
    def test_half_adder(self):
        c = build_adder(1, 2)
        kinds = [g.kind for g in c.gates]
        assert kinds == [TOFFOLI, CNOT]
        for a in (0, 1):
            for b in (0, 1):
                s, carry, _ = run_add(c, a, b)
                assert (s, carry) == ((a + b) & 1, (a + b) >> 1)

    def test_wraparound_n3(self):
        c = build_adder(3, 2)
        s, carry, _ = run_add(c, 7, 1)
        assert s == 0 and carry == 1

    def test_5_plus_9_mod_16(self):
        s, _, _ = run_add(build_adder(4, 2), 5, 9)
        assert s == 14

    def test_a_register_preserved_and_scratch_clear(self):
        c = build_adder(6, 3)
        _, _, out = run_add(c, 41, 22)
        assert [out[q] for q in c.registers["a"]] == [(41 >> i) & 1 for i in range(6)]
        for name, qs in c.registers.items():
            if name in ("a", "b", "g"):
                continue
            assert all(out[q] == 0 for q in qs), name


class TestVerify:
    @pytest.mark.parametrize("s", (2, 3))
    @pytest.mark.parametrize("n", (1, 2, 3, 4, 5, 6))
    def test_exhaustive_small(self, n, s):
        report = verify_adder(n, s)
        assert report.ok and report.exhaustive
        assert report.cases == 1 << (2 * n)

    def test_random_mid(self):
        report = verify_adder(20, 3, trials=500)
        assert report.ok and not report.exhaustive and report.cases == 500

    def test_corrupted_circuit_yields_counterexample(self):
        c = build_adder(4, 2)
        dropped = next(i for i, g in enumerate(c.gates)
                       if g.toffoli_layer and g.toffoli_layer.endswith("fin"))
        broken = QuantumCircuit(c.registers, c.gates[:dropped] + c.gates[dropped + 1:],
                                c.n, c.s)
        report = verify_adder(4, 2, circuit=broken)
        assert not report.ok
        n, s, a, b, got_sum, got_carry = report.counterexample
        assert (got_sum, got_carry) != (((a + b) % 16), (a + b) >> 4)


class TestResources:
    def test_empty_circuit(self):
        r = resources(QuantumCircuit({}, []))
        assert (r.toffoli_count, r.toffoli_depth, r.ancilla_count) == (0, 0, 0)

    def test_estimate_matches_measured(self):
        for s in (2, 3, 4):
            for n in list(range(1, 40)) + [63, 64, 65, 100]:
                assert estimate_resources(n, s) == resources(build_adder(n, s)), (n, s)

    def test_depth_at_most_label_count(self):
        for n, s in ((16, 2), (27, 3), (40, 4)):
            c = build_adder(n, s)
            assert resources(c).toffoli_depth <= qadder.toffoli_layer_count(c)

    def test_layer_overlap_detected(self):
        c = QuantumCircuit({"q": [0, 1, 2, 3]},
                           [Gate(TOFFOLI, (0, 1, 2), "L"),
                            Gate(TOFFOLI, (1, 2, 3), "L")])
        with pytest.raises(LayerOverlapError):
            resources(c)

    def test_ancilla_growth_is_linear(self):
        for s in (2, 3, 4):
            for n in (64, 128, 256):
                a1 = estimate_resources(n, s).ancilla_count
                a2 = estimate_resources(2 * n, s).ancilla_count
                assert abs(a2 / a1 - 2) < 0.1, (n, s)


class TestReversibility:
    def test_inverse_restores_state(self):
        rng = random.Random(9)
        for n, s in ((5, 2), (7, 3), (9, 4)):
            c = build_adder(n, s)
            both = QuantumCircuit(c.registers, c.gates + c.inverse().gates, n, s)
            for _ in range(20):
                state = [rng.randint(0, 1) for _ in range(c.n_qubits)]
                assert simulate(both, state) == state


class TestDeterminismAndNetlist:
    def test_identical_gate_lists(self):
        assert build_adder(12, 3).gates == build_adder(12, 3).gates

    def test_netlist_golden_2_2(self):
        # frozen output for the two-bit adder at block size 2
        assert netlist(build_adder(2, 2)) == (
            "# layer g-init\n"
            "T 0 2 4\n"
            "T 1 3 5\n"
            "# layer -\n"
            "CX 0 2\n"
            "CX 1 3\n"
            "# layer L0 chain 1\n"
            "T 4 3 5\n"
            "# layer -\n"
            "CX 4 3\n"
        )

    def test_netlist_parses_back(self):
        text = netlist(build_adder(5, 2))
        gates = [ln for ln in text.splitlines() if not ln.startswith("#")]
        c = build_adder(5, 2)
        assert len(gates) == len(c.gates)
