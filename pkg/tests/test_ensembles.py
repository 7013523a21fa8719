"""Random-state generators: reproducibility, distributions, structure."""

import hashlib

import numpy as np
import pytest
from scipy import stats

from macrolab import ensembles as en
from macrolab import geometric as ge
from macrolab import states as st
from macrolab.observables import pauli_expectation


class TestRngStream:
    def test_key_word_matches_sha256(self):
        s = en.RngStream(7, "physical/n=4/k=2")
        want = int.from_bytes(hashlib.sha256(b"physical/n=4/k=2").digest()[:8], "little")
        assert s.key_word() == want

    def test_generator_is_reproducible(self):
        s = en.RngStream(42, "a/b")
        x = s.generator().normal(size=8)
        y = s.generator().normal(size=8)
        assert np.array_equal(x, y)

    def test_children_are_distinct(self):
        root = en.RngStream(1)
        a = root.child("a").generator().normal(size=4)
        b = root.child("b").generator().normal(size=4)
        assert not np.allclose(a, b)
        assert root.child(3).label == "root/3"

    def test_seed_changes_output(self):
        a = en.RngStream(1, "x").generator().normal(size=4)
        b = en.RngStream(2, "x").generator().normal(size=4)
        assert not np.allclose(a, b)

    def test_streams_are_frozen_values(self):
        assert en.RngStream(5, "q") == en.RngStream(5, "q")
        with pytest.raises(AttributeError):
            en.RngStream(5, "q").seed = 6


class TestUnitary:
    def test_unitarity(self):
        u = en.random_two_qubit_unitary(en.RngStream(3, "u"))
        assert u.shape == (4, 4)
        assert np.allclose(u @ u.conj().T, np.eye(4), atol=1e-12)

    def test_phase_convention_mixes_columns(self):
        # with the R-diagonal phase fix the mean of u[0,0] over draws is ~0
        gen = en.RngStream(4, "phase").generator()
        vals = [en.random_two_qubit_unitary(gen)[0, 0] for _ in range(400)]
        assert abs(np.mean(vals)) < 0.1


class TestPhysical:
    def test_reproducible(self):
        s = en.RngStream(9, "phys")
        a = en.random_physical_state(4, 3, s)
        b = en.random_physical_state(4, 3, s)
        assert np.array_equal(a.amplitudes, b.amplitudes)

    def test_zero_gates_is_vacuum(self):
        a = en.random_physical_state(5, 0, en.RngStream(0, "x"))
        assert np.array_equal(a.amplitudes, st.zeros(5).amplitudes)

    def test_single_gate_touches_one_pair(self):
        # all but two ring-adjacent qubits must keep <sz> = 1 exactly
        a = en.random_physical_state(6, 1, en.RngStream(11, "one-gate"))
        z = np.array([pauli_expectation(a, site, "z") for site in range(1, 7)])
        untouched = np.isclose(z, 1.0, atol=1e-12)
        assert untouched.sum() == 4

    def test_rejects_bad_args(self):
        with pytest.raises(ValueError):
            en.random_physical_state(1, 0, en.RngStream(0, "x"))
        with pytest.raises(ValueError):
            en.random_physical_state(3, -1, en.RngStream(0, "x"))


class TestChain:
    def test_tail_stays_in_vacuum(self):
        a = en.random_linear_chain(7, 3, en.RngStream(13, "chain"))
        block = a.amplitudes.reshape(2**4, 2**3)
        assert np.allclose(block[:, 1:], 0.0)
        for site in (5, 6, 7):
            assert abs(pauli_expectation(a, site, "z") - 1.0) < 1e-12

    def test_k_range_enforced(self):
        with pytest.raises(ValueError):
            en.random_linear_chain(5, 5, en.RngStream(0, "x"))
        ok = en.random_linear_chain(5, 4, en.RngStream(0, "x"))
        assert ok.n_qubits == 5

    def test_fixed_k_is_size_independent(self):
        # the same stream builds the same entangled prefix; extra qubits
        # only append |0> factors, so e_g cannot depend on n
        s = en.RngStream(17, "chain-cmp")
        small = en.random_linear_chain(5, 3, s)
        big = en.random_linear_chain(8, 3, s)
        prefix_small = small.amplitudes.reshape(2**4, -1)[:, 0]
        prefix_big = big.amplitudes.reshape(2**4, -1)[:, 0]
        assert np.allclose(prefix_small, prefix_big, atol=1e-15)
        e_small = ge.geometric_entanglement(small, restarts=12).e_g
        e_big = ge.geometric_entanglement(big, restarts=12).e_g
        assert abs(e_small - e_big) < 1e-9


class TestHaar:
    def test_reproducible_and_normalized(self):
        s = en.RngStream(23, "haar")
        a = en.haar_random_state(4, s)
        b = en.haar_random_state(4, s)
        assert np.array_equal(a.amplitudes, b.amplitudes)
        assert abs(np.linalg.norm(a.amplitudes) - 1.0) < 1e-12

    def test_mean_site_polarization_vanishes(self):
        root = en.RngStream(29, "haar-z")
        vals = [pauli_expectation(en.haar_random_state(3, root.child(i)), 1, "z")
                for i in range(300)]
        assert abs(np.mean(vals)) < 3.0 / np.sqrt(300)

    def test_porter_thomas_overlap_distribution(self):
        # |<0|psi>|^2 of a Haar state is Beta(1, 2^n - 1)
        root = en.RngStream(31, "haar-pt")
        n, dim = 4, 16
        probs = np.array([abs(en.haar_random_state(n, root.child(i)).amplitudes[0]) ** 2
                          for i in range(400)])
        res = stats.kstest(probs, stats.beta(1, dim - 1).cdf)
        assert res.pvalue > 0.01, res


class TestSymmetric:
    def test_reproducible(self):
        s = en.RngStream(37, "sym")
        a = en.random_symmetric_state(6, s)
        b = en.random_symmetric_state(6, s)
        assert np.array_equal(a.coefficients, b.coefficients)

    def test_coefficient_weights_are_uniform_on_average(self):
        root = en.RngStream(41, "sym-w")
        n = 5
        w = np.zeros(n + 1)
        trials = 600
        for i in range(trials):
            c = en.random_symmetric_state(n, root.child(i)).coefficients
            w += np.abs(c) ** 2
        w /= trials
        assert np.allclose(w, 1.0 / (n + 1), atol=4.0 / np.sqrt(trials))

    def test_minimum_size(self):
        with pytest.raises(ValueError):
            en.random_symmetric_state(1, en.RngStream(0, "x"))


class TestGeneratorHandoff:
    def test_raw_generator_accepted(self):
        gen = en.RngStream(43, "raw").generator()
        a = en.haar_random_state(3, gen)
        b = en.haar_random_state(3, gen)
        # a shared generator advances: two draws differ
        assert not np.allclose(a.amplitudes, b.amplitudes)
