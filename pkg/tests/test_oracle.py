"""Oracle behaviour: enumeration, derivation, verification, loss, parity."""
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from telegate import catalog, oracle, tables
from telegate import statevec as sv
from telegate.gates import CPHASE, CZ, HADAMARD, random_state, random_unitary
from telegate.patterns import CorrectionOp, CorrectionTable, MeasurementGroup


def plus_state():
    return sv.from_ket_expression(1, [(1, "0"), (1, "1")])


class TestEnumeration:
    def test_phase_gate_on_plus_gives_uniform_quarters(self):
        records = oracle.enumerate_outcomes(catalog.phase_gate_pattern(), plus_state())
        assert len(records) == 4
        for record in records:
            assert record.probability == pytest.approx(0.25, abs=1e-12)
            assert record.corrected_state is not None

    def test_records_in_label_order(self):
        records = oracle.enumerate_outcomes(catalog.phase_gate_pattern(), plus_state())
        assert [r.labels for r in records] == sorted(r.labels for r in records)

    def test_pre_correction_states_match_reference_columns(self):
        # The branch outputs written over input amplitudes (a, b) must match
        # the shipped reference states for the phase and pi8 constructions.
        rng = np.random.default_rng(3)
        amps = random_state(1, rng, 0.1)
        state = sv.StateVector(1, amps)
        for pattern, maps in (
            (catalog.phase_gate_pattern(), tables.PHASE_TABLE_STATES),
            (catalog.pi8_gate_pattern(), tables.PI8_TABLE_STATES),
        ):
            records = oracle.enumerate_outcomes(pattern, state)
            for record, m in zip(records, maps):
                expected = m @ amps
                expected = expected / np.linalg.norm(expected)
                fid = abs(np.vdot(expected, record.pre_correction_state.amps))
                assert fid == pytest.approx(1.0, abs=1e-12)

    def test_cz_enumeration_all_nonzero(self):
        pattern = catalog.controlled_z_pattern("h")
        state = sv.from_ket_expression(2, [(1, "00"), (1, "11")])
        records = oracle.enumerate_outcomes(pattern, state)
        assert len(records) == 64
        assert all(r.probability > 1e-12 for r in records)

    def test_input_size_mismatch_rejected(self):
        with pytest.raises(sv.UsageError):
            oracle.enumerate_outcomes(
                catalog.phase_gate_pattern(), sv.make_basis_state(2, "00")
            )

    def test_annihilated_branches_flagged_as_zero_probability(self):
        # The mismatched controlled-Z configuration kills the inner input
        # components, so a pure |01> input never reaches aligned outcomes.
        pattern = catalog.cz_mismatched_pattern()
        records = oracle.enumerate_outcomes(pattern, sv.make_basis_state(2, "01"))
        aligned = [r for r in records if r.labels == ((0, 0, "+"), (0, 0, "+"))]
        assert aligned[0].probability <= 1e-12
        assert aligned[0].pre_correction_state is None


class TestEnumerationAgainstNaivePath:
    """The batched executor checked against an independent slow path:
    register assembly by explicit index arithmetic and one-vector-at-a-time
    sequential projections."""

    @staticmethod
    def _naive_register(pattern, input_state):
        n = pattern.num_qubits
        pieces = [(pattern.input_wires, input_state.amps)]
        pieces += [(qubits, state.amps) for qubits, state in pattern.resources]
        amps = np.ones(1 << n, dtype=complex)
        for idx in range(1 << n):
            bits = format(idx, f"0{n}b")
            val = 1.0 + 0j
            for qubits, piece in pieces:
                sub = int("".join(bits[q] for q in qubits), 2)
                val *= piece[sub]
            amps[idx] = val
        return sv.StateVector(n, amps)

    @classmethod
    def _naive_records(cls, pattern, input_state):
        from itertools import product as iproduct

        start = cls._naive_register(pattern, input_state)
        results = {}
        for combo in iproduct(*(range(g.size) for g in pattern.groups)):
            state = start
            positions = list(range(pattern.num_qubits))
            prob = 1.0
            alive = True
            for gi, idx in enumerate(combo):
                group = pattern.groups[gi]
                local = tuple(positions.index(q) for q in group.qubits)
                p, post = sv.project(state, group.basis.vector(idx), local)
                prob *= p
                if post is None:
                    alive = False
                    break
                positions = [
                    q for j, q in enumerate(positions) if j not in set(local)
                ]
                state = post
            key = tuple(pattern.groups[gi].labels[idx] for gi, idx in enumerate(combo))
            if not alive:
                results[key] = (prob, None)
                continue
            perm = [positions.index(w) for w in pattern.output_wires]
            amps = state.amps.reshape([2] * len(positions)).transpose(perm).reshape(-1)
            results[key] = (prob, amps)
        return results

    @pytest.mark.parametrize("name", ["phase", "cz"])
    def test_matches_batched_executor(self, name):
        pattern = catalog.build_pattern(name)
        rng = np.random.default_rng(21)
        state = sv.StateVector(
            len(pattern.input_wires), random_state(len(pattern.input_wires), rng)
        )
        fast = oracle.enumerate_outcomes(pattern, state)
        slow = self._naive_records(pattern, state)
        assert len(fast) == len(slow)
        for record in fast:
            prob, amps = slow[record.labels]
            assert record.probability == pytest.approx(prob, abs=1e-12)
            if record.pre_correction_state is None:
                assert amps is None or prob <= 1e-12
            else:
                fid = abs(np.vdot(amps, record.pre_correction_state.amps))
                assert fid == pytest.approx(1.0, abs=1e-10)


class TestProbabilityConservation:
    @pytest.mark.parametrize(
        "name", ["phase", "cz", "triple-cz", "controlled-phase", "cnot", "swap"]
    )
    def test_probabilities_sum_to_one(self, name):
        pattern = catalog.build_pattern(name)
        rng = np.random.default_rng(11)
        state = sv.StateVector(
            len(pattern.input_wires), random_state(len(pattern.input_wires), rng)
        )
        records = oracle.enumerate_outcomes(pattern, state)
        assert sum(r.probability for r in records) == pytest.approx(1.0, abs=1e-9)


class TestDictionary:
    def test_contains_identity_first(self):
        d = oracle.correction_dictionary(2, "pauli_phase")
        assert d.ops[0].render(2) == "I x I"

    def test_contains_all_two_wire_pauli_strings(self):
        d = oracle.correction_dictionary(2, "pauli_phase")
        paulis = {
            "I": np.eye(2),
            "X": np.array([[0, 1], [1, 0]]),
            "Y": np.array([[0, -1j], [1j, 0]]),
            "Z": np.diag([1, -1]),
        }
        for a in paulis.values():
            for b in paulis.values():
                want = np.kron(a, b).astype(complex)
                assert any(
                    oracle._equal_up_to_phase(m, want) for m in d.matrices
                )

    def test_candidates_pairwise_inequivalent(self):
        d = oracle.correction_dictionary(1, "pauli_phase")
        for i in range(len(d.ops)):
            for j in range(i + 1, len(d.ops)):
                assert not oracle._equal_up_to_phase(d.matrices[i], d.matrices[j])

    def test_sorted_by_weight(self):
        d = oracle.correction_dictionary(2, "full")
        weights = [op.weight for op in d.ops]
        assert weights == sorted(weights)

    def test_full_three_wire_includes_entanglers(self):
        d = oracle.correction_dictionary(3, "full")
        names = {f for op in d.ops for f, _ in op.factors}
        assert "Ucx" in names and "Ucz" in names


class TestDecomposeMonomial:
    def test_round_trips_vocabulary_products(self):
        rng = np.random.default_rng(5)
        d = oracle.correction_dictionary(3, "full")
        for idx in rng.choice(len(d.ops), size=25, replace=False):
            mat = d.matrices[idx] * np.exp(1j * rng.uniform(0, 2 * np.pi))
            op = oracle.decompose_monomial(mat, 3)
            assert op is not None
            assert oracle._equal_up_to_phase(op.matrix(3), mat)

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_round_trips_arbitrary_factor_words(self, data):
        # Any product of vocabulary factors in any order on any wires must
        # decompose back to an equivalent operator.
        num_wires = data.draw(st.integers(1, 3))
        length = data.draw(st.integers(0, 6))
        factors = []
        for _ in range(length):
            name = data.draw(
                st.sampled_from(["sx", "sz", "Up", "Ucz", "Ucx"])
                if num_wires >= 2
                else st.sampled_from(["sx", "sz", "Up"])
            )
            if name in ("Ucz", "Ucx"):
                pair = data.draw(
                    st.permutations(range(num_wires)).map(lambda p: tuple(p[:2]))
                )
                factors.append((name, pair))
            else:
                wire = data.draw(st.integers(0, num_wires - 1))
                factors.append((name, (wire,)))
        phase = np.exp(1j * data.draw(st.floats(0, 2 * np.pi)))
        mat = CorrectionOp(tuple(factors)).matrix(num_wires) * phase
        op = oracle.decompose_monomial(mat, num_wires)
        assert op is not None
        assert oracle._equal_up_to_phase(op.matrix(num_wires), mat)

    def test_bare_controlled_x_between_first_wires(self):
        mat = CorrectionOp((("Ucx", (0, 1)),)).matrix(3)
        op = oracle.decompose_monomial(mat, 3)
        assert op is not None
        assert oracle._equal_up_to_phase(op.matrix(3), mat)

    def test_hadamard_is_out_of_vocabulary(self):
        assert oracle.decompose_monomial(np.kron(HADAMARD, np.eye(4)), 3) is None

    def test_cubic_phase_is_out_of_vocabulary(self):
        ccz = np.diag([1, 1, 1, 1, 1, 1, 1, -1]).astype(complex)
        assert oracle.decompose_monomial(ccz, 3) is None


class TestSingleQubit:
    def test_identity_outcome_four_is_exact_identity_channel(self):
        pattern = catalog.single_qubit_pattern(np.eye(2))
        rng = np.random.default_rng(oracle.DEFAULT_SEED)
        for _ in range(100):
            state = sv.StateVector(1, random_state(1, rng))
            records = oracle.enumerate_outcomes(pattern, state)
            last = records[-1]
            assert last.labels == ((4,),)
            assert sv.fidelity_up_to_phase(last.corrected_state, state) > 1 - 1e-12

    def test_random_unitaries_verify(self):
        rng = np.random.default_rng(42)
        for _ in range(5):
            pattern = catalog.single_qubit_pattern(random_unitary(2, rng))
            report = oracle.verify_pattern(pattern)
            assert report.passed


class TestControlledZ:
    def test_both_rows_verify(self):
        for row in ("h", "bell"):
            pattern = catalog.controlled_z_pattern(row)
            table = oracle.derive_corrections(pattern)
            report = oracle.verify_pattern(pattern, corrections=table)
            assert report.passed
            assert report.min_fidelity >= 1 - 1e-9

    def test_mismatched_row_filters_components(self):
        # The incompatible Bell-pair + GHZ-basis configuration keeps only
        # the outer input components on the aligned outcome.
        pattern = catalog.cz_mismatched_pattern()
        maps = oracle.outcome_maps(pattern)
        m = maps[((0, 0, "+"), (0, 0, "+"))]
        rng = np.random.default_rng(1)
        c = random_state(2, rng, 1e-3)
        out = m @ c
        expected = np.array([c[0], 0, 0, c[3]])
        expected /= np.linalg.norm(expected)
        fid = abs(np.vdot(expected, out / np.linalg.norm(out)))
        assert fid == pytest.approx(1.0, abs=1e-10)

    def test_mismatched_row_is_lossy_naming_inner_components(self):
        report = oracle.detect_information_loss(catalog.cz_mismatched_pattern())
        assert report.lossy
        aligned = [o for o in report.outcomes if o.key == ((0, 0, "+"), (0, 0, "+"))]
        assert aligned and aligned[0].annihilated == (1, 2)
        assert aligned[0].rank == 2

    def test_compatible_rows_not_lossy(self):
        for row in ("h", "bell"):
            report = oracle.detect_information_loss(catalog.controlled_z_pattern(row))
            assert not report.lossy
            assert not report.outcomes

    def test_unlinked_pattern_lossy_for_both_basis_rows(self):
        for basis in ("ghz", "pm"):
            report = oracle.detect_information_loss(catalog.cz_no_link_pattern(basis))
            assert report.lossy

    @pytest.mark.parametrize("cc,dd", [("psi+", "phi-"), ("phi+", "psi-")])
    def test_any_bell_output_pairs_still_verify(self, cc, dd):
        # The output pairs only shape the byproduct; every Bell choice
        # stays inside the Pauli recovery vocabulary.
        pattern = catalog.cz_layout_pattern("h", cc, dd, "ghz", name="cz-var")
        table = oracle.derive_corrections(pattern)
        assert oracle.verify_pattern(pattern, corrections=table).passed

    def test_h_type_output_pair_leaves_uncorrectable_byproduct(self):
        # An H-type pair on an output leg leaves a Hadamard byproduct,
        # which no vocabulary correction expresses.
        pattern = catalog.cz_layout_pattern("h", "h", "phi+", "ghz", name="cz-var")
        with pytest.raises(oracle.DerivationError):
            oracle.derive_corrections(pattern)


class TestParityLaw:
    def test_chain_parity(self):
        results = oracle.parity_experiment(4)
        assert [(r.n, r.passed) for r in results] == [
            (1, True), (2, False), (3, True), (4, False),
        ]

    def test_even_chain_passes_against_identity_target(self):
        pattern = catalog.chain_cz_pattern(2)
        table = oracle.derive_corrections(pattern)
        report = oracle.verify_pattern(pattern, corrections=table)
        assert report.passed


class TestParameterizedPhase:
    def test_all_ones_gives_controlled_z(self):
        op = oracle.parameterized_phase_check(1, 1, 1, 1, 1)
        assert oracle.operator_distance(op, CZ) < 1e-9

    def test_quarter_turn_on_k(self):
        op = oracle.parameterized_phase_check(1j, 1, 1, 1, 1)
        expected = np.diag([1, 1, -1j, 1j]).astype(complex)
        assert oracle.operator_distance(op, expected) < 1e-9

    def test_simulation_matches_closed_form_on_proving_grid(self):
        # Covered inside the grid search (multilinear pinning); a direct
        # sample with complex parameters double-checks the conjugations.
        k, kt, p, m, n = 1j, -1j, -1, 1j, 1
        op = oracle.parameterized_phase_check(k, kt, p, m, n)
        form = oracle._parameterized_phase_form(k, kt, p, m, n)
        assert oracle.operator_distance(op, form) < 1e-9

    def test_grid_search_minimum_is_large(self):
        dist, argmin = oracle.phase_parameter_grid_search(3)
        assert dist > 0.1
        assert len(argmin) == 5

    def test_closest_form_is_still_far_from_controlled_phase(self):
        # Forcing the (1,1) and (2,2) entries to match leaves the (3,3)
        # entry at -1 instead of i.
        op = oracle._parameterized_phase_form(1, 1, 1, 1, 1)
        assert oracle.operator_distance(op, CPHASE) > 0.1


@pytest.fixture(scope="module")
def triple_cz_verified():
    pattern = catalog.triple_cz_pattern()
    table = oracle.derive_corrections(pattern)
    return pattern.with_corrections(table)


class TestTripleCz:
    @pytest.fixture()
    def verified(self, triple_cz_verified):
        return triple_cz_verified

    def test_verifies(self, verified):
        report = oracle.verify_pattern(verified)
        assert report.passed

    def test_sign_structure_on_superpositions(self, verified):
        # |000>+|011> picks up a relative minus; |000>+|111> does not.
        for bits, sign in (("011", -1), ("110", -1), ("111", 1), ("101", 1)):
            state = sv.from_ket_expression(3, [(1, "000"), (1, bits)])
            expected = sv.from_ket_expression(3, [(1, "000"), (sign, bits)])
            records = oracle.enumerate_outcomes(verified, state)
            fid = min(
                sv.fidelity_up_to_phase(r.corrected_state, expected)
                for r in records
                if r.corrected_state is not None
            )
            assert fid >= 1 - 1e-9


class TestControlledPhase:
    def test_verifies_with_derived(self, cphase_derived):
        pattern, table = cphase_derived
        report = oracle.verify_pattern(pattern, corrections=table)
        assert report.passed

    def test_worked_cell(self, cphase_derived):
        _, table = cphase_derived
        worked = table[((0, 0, "+"), (0, 1, "+"))]
        expected = tables.parse_correction("Ucz(sz.Up x I)")
        assert oracle._equal_up_to_phase(worked.matrix(2), expected.matrix(2))

    def test_first_cell_is_identity(self, cphase_derived):
        _, table = cphase_derived
        assert oracle._equal_up_to_phase(
            table[((0, 0, "+"), (0, 0, "+"))].matrix(2), np.eye(4)
        )

    def test_one_one_input_gains_quarter_phase(self, cphase_derived):
        pattern, table = cphase_derived
        state = sv.from_ket_expression(2, [(1, "00"), (1, "11")])
        expected = sv.from_ket_expression(2, [(1, "00"), (1j, "11")])
        records = oracle.enumerate_outcomes(pattern.with_corrections(table), state)
        for record in records:
            assert sv.fidelity_up_to_phase(record.corrected_state, expected) >= 1 - 1e-9


class TestCnotSwap:
    def test_cnot_verifies(self, cnot_derived):
        pattern, table = cnot_derived
        report = oracle.verify_pattern(pattern, corrections=table)
        assert report.passed

    def test_cnot_truth_table(self, cnot_derived):
        pattern, table = cnot_derived
        with_t = pattern.with_corrections(table)
        for bits, expect in (("10", "11"), ("11", "10"), ("01", "01"), ("00", "00")):
            records = oracle.enumerate_outcomes(with_t, sv.make_basis_state(2, bits))
            assert len(records) == 128
            fid = min(
                sv.fidelity_up_to_phase(r.corrected_state, sv.make_basis_state(2, expect))
                for r in records
            )
            assert fid >= 1 - 1e-9

    def test_cnot_pinned_cells(self, cnot_derived):
        _, table = cnot_derived
        assert table[((0, 0, 0, "+"), (0, 0, "+"))].render(2) == "I x I"
        pinned = table[((1, 0, 0, "+"), (1, 0, "+"))]
        expected = tables.parse_correction("sx x I")
        assert oracle._equal_up_to_phase(pinned.matrix(2), expected.matrix(2))

    def test_swap_verifies(self, swap_derived):
        pattern, table = swap_derived
        report = oracle.verify_pattern(pattern, corrections=table)
        assert report.passed

    def test_swap_truth_table(self, swap_derived):
        pattern, table = swap_derived
        with_t = pattern.with_corrections(table)
        for bits, expect in (("01", "10"), ("10", "01"), ("11", "11")):
            records = oracle.enumerate_outcomes(with_t, sv.make_basis_state(2, bits))
            fid = min(
                sv.fidelity_up_to_phase(r.corrected_state, sv.make_basis_state(2, expect))
                for r in records
            )
            assert fid >= 1 - 1e-9

    def test_swap_pinned_cells(self, swap_derived):
        _, table = swap_derived
        assert table[((0, 0, 0, "+"), (0, 0, "+"))].render(2) == "I x I"
        pinned = table[((1, 1, 1, "-"), (1, 1, "-"))]
        expected = tables.parse_correction("sx x I")
        assert oracle._equal_up_to_phase(pinned.matrix(2), expected.matrix(2))


class TestToffoli:
    def test_literal_variant_rejected_with_reason(self, toffoli_selected):
        _, _, record = toffoli_selected
        assert record["literal"].startswith("rejected")
        assert "orthonormal" in record["literal"]

    def test_corrected_variant_verifies(self, toffoli_selected):
        pattern, table, record = toffoli_selected
        assert pattern.variant == "corrected"
        assert record["corrected"].startswith("verified")
        report = oracle.verify_pattern(pattern, corrections=table)
        assert report.passed

    def test_worked_outcome_correction(self, toffoli_selected):
        _, table, _ = toffoli_selected
        worked = table[((0, 1, 1, "-"), (0, 1, 0, "-"), (1, 1, "-"))]
        assert worked.render(3) == "sx x sz x sx"

    def test_truth_table(self, toffoli_selected):
        pattern, table, _ = toffoli_selected
        with_t = pattern.with_corrections(table)
        for bits, expect in (("110", "111"), ("111", "110"), ("100", "100")):
            records = oracle.enumerate_outcomes(with_t, sv.make_basis_state(3, bits))
            fid = min(
                sv.fidelity_up_to_phase(r.corrected_state, sv.make_basis_state(3, expect))
                for r in records
            )
            assert fid >= 1 - 1e-9

    def test_control_flip_outcomes_use_controlled_x_recoveries(self, toffoli_selected):
        _, table, _ = toffoli_selected
        op = table[((1, 0, 0, "+"), (0, 0, 0, "+"), (0, 0, "+"))]
        names = {name for name, _ in op.factors}
        assert "Ucx" in names


class TestFredkin:
    def test_failures_are_exactly_the_regime_flip_half(self, fredkin_partial):
        pattern, _, failures = fredkin_partial
        assert len(failures) == 4096
        assert all(key[0][2] == 1 for key, _ in failures)

    def test_consistent_half_verifies(self, fredkin_partial):
        pattern, table, failures = fredkin_partial
        failed = {key for key, _ in failures}
        maps = oracle.outcome_maps(pattern)
        rng = np.random.default_rng(oracle.DEFAULT_SEED)
        probes = np.column_stack(
            [np.eye(8, dtype=complex)]
            + [random_state(3, rng, 1e-6)[:, None] for _ in range(4)]
        )
        target_out = pattern.target @ probes
        for key, m in maps.items():
            if key in failed:
                continue
            out = table[key].matrix(3) @ (m @ probes)
            norms = np.linalg.norm(out, axis=0)
            fids = np.abs(np.sum(target_out.conj() * out, axis=0)) / norms
            assert fids.min() >= 1 - 1e-9

    def test_defective_outcomes_are_rank_four(self, fredkin_partial):
        pattern, _, failures = fredkin_partial
        maps = oracle.outcome_maps(pattern)
        key = failures[0][0]
        rank = np.linalg.matrix_rank(maps[key], tol=1e-10)
        assert rank == 4

    def test_loss_report_flags_rank_deficiency(self, fredkin_partial):
        pattern, _, _ = fredkin_partial
        report = oracle.detect_information_loss(pattern)
        assert len(report.outcomes) == 4096
        assert all(o.rank == 4 for o in report.outcomes)


class TestVerifyMechanics:
    def test_missing_table_raises(self):
        with pytest.raises(oracle.MissingCorrectionError):
            oracle.verify_pattern(catalog.controlled_z_pattern("h"))

    def test_missing_entry_names_outcome(self):
        pattern = catalog.phase_gate_pattern()
        partial = CorrectionTable(dict(list(pattern.corrections.entries.items())[:3]))
        with pytest.raises(oracle.MissingCorrectionError, match=r"\(4\)"):
            oracle.verify_pattern(pattern, corrections=partial)

    def test_compare_tables_flags_forced_diff(self):
        pattern = catalog.phase_gate_pattern()
        derived = oracle.derive_corrections(pattern)
        tampered = dict(derived.entries)
        key = ((1,),)
        tampered[key] = CorrectionOp((("sx", (0,)),))
        diff = oracle.compare_tables(CorrectionTable(tampered), pattern.corrections, 1)
        assert diff.mismatch_count == 1
        assert diff.mismatches[0][0] == key

    def test_compare_tables_rejects_key_mismatch(self):
        pattern = catalog.phase_gate_pattern()
        partial = CorrectionTable(dict(list(pattern.corrections.entries.items())[:3]))
        with pytest.raises(sv.UsageError):
            oracle.compare_tables(partial, pattern.corrections, 1)

    def test_wrong_correction_fails_verification(self):
        pattern = catalog.phase_gate_pattern()
        tampered = dict(pattern.corrections.entries)
        tampered[((2,),)] = CorrectionOp((("sx", (0,)),))
        report = oracle.verify_pattern(pattern, corrections=CorrectionTable(tampered))
        assert not report.passed
        assert report.worst_outcome == ((2,),)

    def test_linearity_of_fixed_outcome_branches(self):
        pattern = catalog.controlled_z_pattern("h")
        rng = np.random.default_rng(9)
        x = random_state(2, rng)
        y = random_state(2, rng)
        a, b = 0.6, 0.8j
        nrm = np.linalg.norm(a * x + b * y)
        combo = (a * x + b * y) / nrm
        rx = oracle.enumerate_outcomes(pattern, sv.StateVector(2, x))
        ry = oracle.enumerate_outcomes(pattern, sv.StateVector(2, y))
        rc = oracle.enumerate_outcomes(pattern, sv.StateVector(2, combo))
        for ox, oy, oc in zip(rx, ry, rc):
            raw_x = np.sqrt(ox.probability) * ox.pre_correction_state.amps
            raw_y = np.sqrt(oy.probability) * oy.pre_correction_state.amps
            raw_c = np.sqrt(oc.probability) * oc.pre_correction_state.amps
            combined = (a * raw_x + b * raw_y) / nrm
            aligned = sv.align_phase(raw_c, combined)
            assert np.allclose(aligned, raw_c, atol=1e-9)

    def test_reports_are_deterministic(self):
        from telegate import reports

        def run():
            pattern = catalog.controlled_z_pattern("h")
            table = oracle.derive_corrections(pattern)
            report = oracle.verify_pattern(pattern, corrections=table)
            return (
                reports.render_verification(report),
                reports.dumps(reports.verification_to_doc(report)),
            )

        assert run() == run()

    def test_outcome_probability_range_reported(self):
        pattern = catalog.phase_gate_pattern()
        report = oracle.verify_pattern(pattern)
        low, high = report.outcome_probability_range
        assert low == pytest.approx(0.25, abs=1e-9)
        assert high == pytest.approx(0.25, abs=1e-9)

    def test_broken_probability_conservation_fails_verification(self):
        # A smuggled-in overcomplete basis (an appended duplicate vector)
        # keeps every branch individually repairable but breaks
        # conservation; the pass flag must notice even though no fidelity
        # dips.
        import dataclasses

        pattern = catalog.phase_gate_pattern()
        group = pattern.groups[0]
        vectors = np.vstack([group.basis.vectors, group.basis.vectors[:1]])
        rigged_group = MeasurementGroup(
            group.qubits, sv.MeasurementBasis(2, vectors), group.labels + ((5,),)
        )
        rigged_corrections = CorrectionTable(dict(pattern.corrections.entries))
        rigged_corrections.entries[((5,),)] = rigged_corrections.entries[((1,),)]
        rigged = dataclasses.replace(
            pattern, groups=(rigged_group,), corrections=rigged_corrections
        )
        report = oracle.verify_pattern(rigged)
        assert report.min_fidelity >= 1 - 1e-9
        assert not report.passed
        assert any("probability sums" in note for note in report.notes)
        assert report.probability_sums.max() == pytest.approx(1.25, abs=1e-9)
