import json
import math

import pytest

from loglin_effects import (
    CausalModelError,
    CausalParams,
    ContingencyTable,
    NoCausalParams,
    causal_from_nocausal,
    conditional_probabilities,
    eta_factors,
    fit_causal,
    fit_poisson,
    joint_probabilities,
    nocausal_from_causal,
    two_way_spec,
)
from conftest import random_causal, random_nocausal

# single-letter-free aliases for the worked conversion values
SEC3_NC = NoCausalParams(
    eta=1.0, x=1.5, z=2.0, y=0.2, xz=1.0, xy=0.02, zy=0.01
)


class TestEtaFactors:
    def test_symmetric_params(self):
        cp = CausalParams(1, 1, 1, 1, 1, 1)
        eta = eta_factors(cp)
        assert eta.x_norm == 0.5
        assert eta.z_given_x == (0.5, 0.5)
        assert all(v == 0.5 for v in eta.y_given_xz.values())

    def test_closed_form_values(self):
        cp = CausalParams(1.5, 2.0, 1.0, 0.2, 0.02, 0.01)
        eta = eta_factors(cp)
        assert eta.y_given_xz[(0, 0)] == pytest.approx(1 / 1.2)
        assert eta.y_given_xz[(1, 0)] == pytest.approx(1 / 1.004)
        assert eta.y_given_xz[(0, 1)] == pytest.approx(1 / 1.002)
        assert eta.y_given_xz[(1, 1)] == pytest.approx(1 / 1.00004)

    def test_normalization_identity(self, rng):
        for _ in range(50):
            cp = random_causal(rng, with_interaction=bool(rng.integers(2)))
            cond = conditional_probabilities(cp)
            eta = eta_factors(cp)
            for (x, z), p1 in cond.p_y1_given_xz.items():
                # P(Y=0|x,z) is the bare factor; the two levels sum to 1
                assert p1 + eta.y_given_xz[(x, z)] == pytest.approx(
                    1.0, abs=1e-12
                )

    def test_interaction_enters_only_11_factor(self):
        no = CausalParams(1, 1, 1, 0.5, 2.0, 3.0)
        yes = CausalParams(1, 1, 1, 0.5, 2.0, 3.0, 2.0, with_interaction=True)
        eno, eyes = eta_factors(no), eta_factors(yes)
        assert eno.y_given_xz[(1, 0)] == eyes.y_given_xz[(1, 0)]
        assert eno.y_given_xz[(0, 1)] == eyes.y_given_xz[(0, 1)]
        assert eyes.y_given_xz[(1, 1)] == pytest.approx(1 / (1 + 0.5 * 2 * 3 * 2))


class TestConditionalProbabilities:
    def test_uniform(self):
        cond = conditional_probabilities(CausalParams(1, 1, 1, 1, 1, 1))
        joint = cond.joint()
        assert all(p == pytest.approx(0.125) for p in joint.probs)

    def test_empirical_model_value_by_formula(self):
        cp = CausalParams(1.7132, 0.4659, 3.3059, 0.4881, 1.9240, 2.4038)
        cond = conditional_probabilities(cp)
        prod = 0.4881 * 1.9240 * 2.4038
        assert cond.p_y1_given_xz[(1, 1)] == pytest.approx(prod / (1 + prod))

    def test_joint_sums_to_one(self, rng):
        for _ in range(50):
            cp = random_causal(rng, with_interaction=bool(rng.integers(2)))
            assert sum(conditional_probabilities(cp).joint().probs) == pytest.approx(
                1.0, abs=1e-12
            )


class TestFitCausal:
    def test_uniform(self):
        cp = fit_causal(ContingencyTable((10,) * 8))
        for name in ("xc", "zc", "xzc", "y", "xy", "zy"):
            assert getattr(cp, name) == pytest.approx(1.0, abs=1e-9)

    def test_generative_roundtrip(self, rng):
        for _ in range(10):
            gen = random_causal(rng, with_interaction=False)
            table = ContingencyTable(
                tuple(p * 1e4 for p in conditional_probabilities(gen).joint().probs)
            )
            cp = fit_causal(table, with_interaction=False)
            for name in ("xc", "zc", "xzc", "y", "xy", "zy"):
                assert getattr(cp, name) == pytest.approx(
                    getattr(gen, name), abs=1e-8
                )

    def test_interaction_fit_recovers_unit_cross_ratio(self, rng):
        gen = random_causal(rng, with_interaction=False)
        table = ContingencyTable(
            tuple(p * 1e4 for p in conditional_probabilities(gen).joint().probs)
        )
        cp = fit_causal(table, with_interaction=True)
        assert cp.xzy == pytest.approx(1.0, abs=1e-8)

    def test_saturated_joint_reconstruction_exact(self, rng):
        t = ContingencyTable(tuple(rng.uniform(2, 90, 8)))
        cp = fit_causal(t, with_interaction=True)
        rebuilt = conditional_probabilities(cp).joint()
        target = joint_probabilities(t)
        for a, b in zip(rebuilt.probs, target.probs):
            assert a == pytest.approx(b, abs=1e-10)

    def test_two_routes_agree(self, rng):
        t = ContingencyTable(tuple(rng.uniform(5, 80, 8)))
        direct = fit_causal(t, with_interaction=False)
        via_fit = causal_from_nocausal(
            fit_poisson(t, two_way_spec()).params
        )
        for name in ("xc", "zc", "xzc", "y", "xy", "zy"):
            assert getattr(direct, name) == pytest.approx(
                getattr(via_fit, name), rel=1e-6
            )

    def test_zero_margin_rejected(self):
        t = ContingencyTable((1, 1, 0, 0, 1, 1, 1, 1))
        with pytest.raises(CausalModelError, match="zero margin"):
            fit_causal(t)

    def test_json_keys(self):
        doc = json.loads(fit_causal(ContingencyTable((10,) * 8)).to_json())
        assert set(doc) == {
            "Xc", "Zc", "XZc", "Y", "XY", "ZY", "XZY",
            "with_interaction", "eta",
        }
        assert len(doc["eta"]) == 7


class TestConversions:
    def test_worked_conversion_value(self):
        cp = causal_from_nocausal(SEC3_NC)
        assert cp.xzc == pytest.approx(1.1929, abs=5e-4)

    def test_unit_causal_parameter_case(self):
        nc = NoCausalParams(1.0, 1.5, 2.0, 0.2, 0.8383, 0.02, 0.01)
        cp = causal_from_nocausal(nc)
        assert cp.xzc == pytest.approx(1.0, abs=5e-4)

    def test_identity_on_unit_params(self):
        nc = NoCausalParams(1, 1, 1, 1, 1, 1, 1)
        cp = causal_from_nocausal(nc)
        for name in ("xc", "zc", "xzc", "y", "xy", "zy"):
            assert getattr(cp, name) == pytest.approx(1.0)

    def test_three_way_term_rejected(self):
        nc = NoCausalParams(1, 1, 1, 1, 1, 1, 1, 2.0)
        with pytest.raises(CausalModelError):
            causal_from_nocausal(nc)
        cp = CausalParams(1, 1, 1, 1, 1, 1, 2.0, with_interaction=True)
        with pytest.raises(CausalModelError):
            nocausal_from_causal(cp)

    def test_inverse_reproduces_worked_value(self):
        cp = CausalParams(
            xc=causal_from_nocausal(SEC3_NC).xc,
            zc=causal_from_nocausal(SEC3_NC).zc,
            xzc=1.1929, y=0.2, xy=0.02, zy=0.01,
        )
        nc = nocausal_from_causal(cp)
        assert nc.xz == pytest.approx(1.0, abs=5e-4)

    def test_roundtrip(self, rng):
        for _ in range(25):
            cp = random_causal(rng, with_interaction=False)
            back = causal_from_nocausal(nocausal_from_causal(cp))
            for name in ("xc", "zc", "xzc", "y", "xy", "zy"):
                assert getattr(back, name) == pytest.approx(
                    getattr(cp, name), rel=1e-10
                )

    def test_conversion_consistent_with_marginalization(self, rng):
        # mu_c^X must equal the joint's X-margin odds
        nc = random_nocausal(rng, three_way=False, scale=1.0)
        cp = causal_from_nocausal(nc)
        probs = nc.expected_counts()
        p1 = sum(probs[4:])
        p0 = sum(probs[:4])
        assert cp.xc == pytest.approx(p1 / p0, rel=1e-12)

    def test_conditional_independence_iff_unit_interaction(self, rng):
        cp = random_causal(rng, with_interaction=False)
        cp_indep = CausalParams(cp.xc, cp.zc, 1.0, cp.y, cp.xy, cp.zy)
        cond = conditional_probabilities(cp_indep)
        assert cond.p_z1_given_x[0] == pytest.approx(
            cond.p_z1_given_x[1], abs=1e-10
        )


def test_mediator_block_log_residual_helper():
    # sanity: the conversion ratio is a pure function of the outcome block
    nc = SEC3_NC
    cp = causal_from_nocausal(nc)
    e = eta_factors(cp)
    assert cp.zc == pytest.approx(
        nc.z * e.y_given_xz[(0, 0)] / e.y_given_xz[(0, 1)], rel=1e-12
    )
    assert math.isclose(
        cp.xzc,
        nc.xz
        * e.y_given_xz[(1, 0)] * e.y_given_xz[(0, 1)]
        / (e.y_given_xz[(0, 0)] * e.y_given_xz[(1, 1)]),
        rel_tol=1e-12,
    )
