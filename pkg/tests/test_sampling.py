"""Sampler invariants: every draw passes its own cone's oracle."""

import numpy as np
import pytest

from mapcones.choi import adjoint, identity_map, transpose_conj, transpose_map
from mapcones.cones import (
    ConeId,
    DykstraConfig,
    Status,
    in_F,
    in_P,
    in_S,
    is_cop,
    is_cp,
    is_decomposable,
    is_positive_map,
)
from mapcones.linalg import Dims, frob
from mapcones.sampling import (
    ConeSampler,
    cone_generator_pool,
    k_t,
    kd_generators,
    random_pure_entangled_state,
    random_pure_product_state,
    random_separable_mixture,
    sample_map,
    substream,
)

D22 = Dims(2, 2)
D33 = Dims(3, 3)


class TestSamplerInvariants:
    @pytest.mark.parametrize("d", [D22, Dims(2, 3), D33])
    def test_cp_samples(self, d):
        for k in range(4):
            phi = ConeSampler(ConeId.MAP_CP, d, seed=1).draw(k)
            assert is_cp(phi).status is Status.IN
            assert np.trace(phi.choi).real == pytest.approx(d.n)

    @pytest.mark.parametrize("d", [D22, Dims(2, 3), D33])
    def test_cop_samples(self, d):
        for k in range(4):
            phi = ConeSampler(ConeId.MAP_COP, d, seed=2).draw(k)
            assert is_cop(phi).status is Status.IN

    @pytest.mark.parametrize("d", [D22, D33])
    def test_p_samples(self, d):
        for k in range(4):
            phi = ConeSampler(ConeId.MAP_P, d, seed=3).draw(k)
            assert in_P(phi).status is Status.IN

    @pytest.mark.parametrize("d", [D22, D33])
    def test_d_samples(self, d):
        cfg = DykstraConfig()
        for k in range(3):
            phi = ConeSampler(ConeId.MAP_D, d, seed=4).draw(k)
            assert is_decomposable(phi, cfg, seed=k).status is Status.IN

    def test_s_samples_exact_regime(self):
        for d in (D22, Dims(2, 3)):
            for k in range(3):
                phi = ConeSampler(ConeId.MAP_S, d, seed=5).draw(k)
                assert in_S(phi).status is Status.IN

    def test_s_samples_ppt_everywhere(self):
        for k in range(3):
            phi = ConeSampler(ConeId.MAP_S, D33, seed=6).draw(k)
            assert in_F(phi.choi, D33).status is Status.IN
            assert in_S(phi).status is not Status.OUT

    def test_pos_samples_no_violation(self):
        for k in range(3):
            phi = ConeSampler(ConeId.MAP_POS, D33, seed=7).draw(k)
            assert is_positive_map(phi, restarts=10, seed=k).status is Status.IN

    def test_operator_cone_rejected(self):
        with pytest.raises(ValueError):
            sample_map(ConeId.OP_PSD, D22, 0)


class TestDeterminism:
    def test_same_seed_same_draw(self):
        a = ConeSampler(ConeId.MAP_CP, D33, seed=11).draw(5)
        b = ConeSampler(ConeId.MAP_CP, D33, seed=11).draw(5)
        assert frob(a.choi - b.choi) == 0.0

    def test_different_indices_differ(self):
        s = ConeSampler(ConeId.MAP_CP, D33, seed=11)
        assert frob(s.draw(0).choi - s.draw(1).choi) > 1e-3

    def test_substream_stability(self):
        a = substream(9, 1, 2).normal(size=4)
        b = substream(9, 1, 2).normal(size=4)
        assert np.array_equal(a, b)


class TestGeneratorTransforms:
    def test_identity_and_transpose_fixed(self):
        for gen in (identity_map(3), transpose_map(3)):
            (kd,) = kd_generators([gen])
            (kt,) = k_t([gen])
            assert frob(kd.choi - gen.choi) <= 1e-13
            assert frob(kt.choi - gen.choi) <= 1e-13

    def test_cp_closed_under_dual_transform(self):
        for k in range(4):
            phi = ConeSampler(ConeId.MAP_CP, D33, seed=13).draw(k)
            dual = transpose_conj(adjoint(phi))
            assert is_cp(dual).status is Status.IN

    def test_pool_contains_canonical(self):
        pool = cone_generator_pool(ConeId.MAP_D, D33, 6, seed=1)
        assert frob(pool[0].choi - identity_map(3).choi) == 0.0
        assert frob(pool[1].choi - transpose_map(3).choi) == 0.0
        assert len(pool) == 6


class TestStateGenerators:
    def test_product_state_is_state(self):
        g = substream(1, 2)
        rho = random_pure_product_state(g, Dims(2, 3))
        assert abs(np.trace(rho) - 1) <= 1e-12
        assert in_F(rho, Dims(2, 3)).status is Status.IN

    def test_entangled_state_fails_ppt(self):
        g = substream(2, 3)
        for _ in range(5):
            rho = random_pure_entangled_state(g, Dims(2, 3))
            v = in_F(rho, Dims(2, 3))
            assert v.status is Status.OUT

    def test_separable_mixture_is_ppt(self):
        g = substream(3, 4)
        rho = random_separable_mixture(g, D22)
        assert in_F(rho, D22).status is Status.IN
