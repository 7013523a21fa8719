"""State constructors, conversions, and the Bloch-point factorization."""

import numpy as np
import pytest

from macrolab import states as st
from macrolab.config import DenseCapExceeded, set_dense_cap


class TestDataclasses:
    def test_pure_state_normalizes(self):
        s = st.PureState(2, np.array([2.0, 0, 0, 0]))
        assert abs(np.linalg.norm(s.amplitudes) - 1) < 1e-15
        assert s.amplitudes.dtype == np.complex128

    def test_pure_state_shape_check(self):
        with pytest.raises(ValueError):
            st.PureState(2, np.ones(3))

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            st.SymmetricState(2, np.zeros(3))
        with pytest.raises(ValueError):
            st.PureState(1, np.array([0.0, 0.0]))

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            st.PureState(1, np.array([np.nan, 1.0]))

    def test_amplitudes_frozen(self):
        s = st.ghz(3)
        dense = st.to_dense(s)
        with pytest.raises(ValueError):
            dense.amplitudes[0] = 5.0
        with pytest.raises(ValueError):
            s.coefficients[0] = 5.0

    def test_fingerprint_distinguishes(self):
        assert st.ghz(3).fingerprint() != st.dicke(3, 1).fingerprint()
        assert st.ghz(3).fingerprint() == st.ghz(3).fingerprint()


class TestNamedStates:
    def test_zeros_and_ones(self):
        z = st.zeros(3)
        assert z.amplitudes[0] == 1.0 and np.all(z.amplitudes[1:] == 0)
        o = st.ones(2)
        assert o.amplitudes[-1] == 1.0 and np.all(o.amplitudes[:-1] == 0)

    def test_bell_states(self):
        r = 1 / np.sqrt(2)
        assert np.allclose(st.bell("phi+").amplitudes, [r, 0, 0, r])
        assert np.allclose(st.bell("phi-").amplitudes, [r, 0, 0, -r])
        assert np.allclose(st.bell("psi+").amplitudes, [0, r, r, 0])
        assert np.allclose(st.bell("psi-").amplitudes, [0, r, -r, 0])
        with pytest.raises(ValueError):
            st.bell("nope")

    def test_ghz_coefficients(self):
        g = st.ghz(5)
        expect = np.zeros(6)
        expect[0] = expect[5] = 1 / np.sqrt(2)
        assert np.allclose(g.coefficients, expect)
        with pytest.raises(ValueError):
            st.ghz(1)

    def test_ghz_dense_form(self):
        dense = st.to_dense(st.ghz(3)).amplitudes
        assert abs(dense[0] - 1 / np.sqrt(2)) < 1e-15
        assert abs(dense[7] - 1 / np.sqrt(2)) < 1e-15
        assert np.all(dense[1:7] == 0)

    def test_dicke_uniform_over_weight(self):
        d = st.to_dense(st.dicke(4, 2)).amplitudes
        hot = [i for i in range(16) if bin(i).count("1") == 2]
        assert np.allclose(d[hot], 1 / np.sqrt(6))
        cold = [i for i in range(16) if bin(i).count("1") != 2]
        assert np.all(d[cold] == 0)

    def test_dicke_range_check(self):
        with pytest.raises(ValueError):
            st.dicke(4, 5)
        with pytest.raises(ValueError):
            st.dicke(4, -1)

    def test_tensor_and_ghz_ones(self):
        g = st.ghz_ones(2, 2)
        dense = g.amplitudes
        assert g.n_qubits == 4
        # |0011> and |1111> each at 1/sqrt(2)
        assert abs(dense[0b0011] - 1 / np.sqrt(2)) < 1e-15
        assert abs(dense[0b1111] - 1 / np.sqrt(2)) < 1e-15

    def test_bell_product_layout(self):
        bp = st.bell_product(4)
        psi_minus = st.bell("psi-").amplitudes
        expect = np.kron(psi_minus, psi_minus)
        assert np.allclose(bp.amplitudes, expect)
        with pytest.raises(ValueError):
            st.bell_product(3)


class TestXiFamily:
    def test_endpoints(self):
        # theta=0 is the all-zeros product, theta=pi/4 with eps=pi/2 is the cat
        s0 = st.xi_state(5, 0.0, 1.0)
        assert abs(abs(s0.coefficients[0]) - 1) < 1e-12
        cat = st.xi_state(5, np.pi / 4, np.pi / 2)
        assert np.allclose(cat.coefficients, st.ghz(5).coefficients)

    def test_superposition_structure(self):
        n, theta, eps = 4, 0.3, 1.1
        s = st.xi_state(n, theta, eps)
        j = np.arange(n + 1)
        raw = np.sin(theta) * st.root_binomials(n) * np.cos(eps) ** (n - j) * np.sin(eps) ** j
        raw[0] += np.cos(theta)
        assert np.allclose(s.coefficients, raw / np.linalg.norm(raw))

    def test_range_checks(self):
        with pytest.raises(ValueError):
            st.xi_state(4, -0.2, 1.0)
        with pytest.raises(ValueError):
            st.xi_state(4, 1.0, 1.0)
        with pytest.raises(ValueError):
            st.xi_state(4, 0.3, 3.5)


class TestDenseCap:
    def test_to_dense_respects_cap(self):
        set_dense_cap(4)
        try:
            with pytest.raises(DenseCapExceeded):
                st.to_dense(st.ghz(5))
            st.to_dense(st.ghz(4))
        finally:
            set_dense_cap(None)

    def test_pure_state_passthrough(self):
        s = st.zeros(3)
        assert st.to_dense(s) is s


class TestMajorana:
    def test_product_states_collapse_to_one_point(self):
        pts = st.majorana_points(st.dicke(4, 0)).points
        assert np.allclose(np.abs(pts[:, 0]), 1.0)
        pts = st.majorana_points(st.dicke(3, 3)).points
        assert np.allclose(np.abs(pts[:, 1]), 1.0)

    def test_ghz2_points(self):
        # z^2 = -1 up to phase: the two equatorial points +/- i tan-mapped
        pts = st.majorana_points(st.ghz(2)).points
        for p in pts:
            assert abs(abs(p[0]) - abs(p[1])) < 1e-9  # equator

    def test_round_trip_random(self):
        rng = np.random.default_rng(7)
        for n in (2, 3, 5, 8):
            for _ in range(5):
                c = rng.normal(size=n + 1) + 1j * rng.normal(size=n + 1)
                s = st.SymmetricState(n, c)
                back = st.from_majorana(st.majorana_points(s))
                overlap = abs(np.vdot(back.coefficients, s.coefficients))
                assert abs(overlap - 1) < 1e-8, (n, overlap)

    def test_round_trip_with_pole_deficit(self):
        # leading Dicke coefficients zero -> points at |1>
        s = st.SymmetricState(4, np.array([0.0, 0.0, 1.0, 0.5, 0.25]))
        mp = st.majorana_points(s)
        assert mp.pole_count == 2
        back = st.from_majorana(mp)
        assert abs(abs(np.vdot(back.coefficients, s.coefficients)) - 1) < 1e-9

    def test_w_state_points(self):
        # W_3 factors into two |0> points and one |1> point
        pts = st.majorana_points(st.dicke(3, 1)).points
        at_zero = sum(1 for p in pts if abs(p[0]) > 0.99)
        at_one = sum(1 for p in pts if abs(p[1]) > 0.99)
        assert at_zero == 2 and at_one == 1
