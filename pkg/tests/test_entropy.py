import math

import numpy as np
import pytest

from qchan.channels import ValidationError
from qchan.entropy import (
    bloch_ellipsoid,
    entropy_point,
    exchange_entropy,
    map_entropy,
    output_entropy,
    povm_entropy,
    receiver_entropy,
    renyi,
    spectrum_probabilities,
)
from qchan.zoo import (
    coarse_graining,
    depolarizing,
    haar_unitary,
    identity_channel,
    random_cptp,
    rng_substream,
    spontaneous_emission,
)


def test_renyi_uniform_is_log_n_for_every_order():
    for n in (2, 3, 5, 8):
        p = np.full(n, 1.0 / n)
        for q in (0.0, 0.5, 1.0, 2.0, 7.0, math.inf):
            assert abs(renyi(p, q) - math.log(n)) < 1e-12


def test_renyi_point_mass_is_zero():
    p = np.array([1.0, 0.0, 0.0])
    for q in (0.5, 1.0, 2.0, math.inf):
        assert renyi(p, q) == 0.0
    assert renyi(p, 0.0) == 0.0  # support counting ignores exact zeros


def test_renyi_named_orders():
    p = np.array([0.5, 0.25, 0.25])
    assert abs(renyi(p, 1.0) - 1.5 * math.log(2)) < 1e-12
    assert abs(renyi(p, 2.0) + math.log(3 / 8)) < 1e-12
    assert abs(renyi(p, math.inf) - math.log(2)) < 1e-12
    assert abs(renyi(p, 0.0) - math.log(3)) < 1e-12
    # q -> 1 window reproduces the Shannon value
    assert abs(renyi(p, 1.0 + 1e-7) - renyi(p, 1.0)) < 1e-12


def test_renyi_is_nonincreasing_in_q():
    rng = np.random.default_rng(21)
    for _ in range(100):
        p = rng.dirichlet(np.ones(6))
        values = [renyi(p, q) for q in (0.0, 0.5, 1.0, 1.5, 2.0, 4.0, math.inf)]
        assert all(a >= b - 1e-10 for a, b in zip(values, values[1:]))


def test_renyi_input_validation():
    with pytest.raises(ValueError):
        renyi(np.array([0.5, 0.5]), -1.0)
    with pytest.raises(ValueError):
        renyi(np.array([0.7, 0.7]), 1.0)  # sums to 1.4
    with pytest.raises(ValueError):
        renyi(np.array([1.2, -0.2]), 1.0)


def test_spectrum_probabilities_cleans_roundoff():
    p = spectrum_probabilities(np.array([0.5, 0.5, -1e-13]), negative_tol=1e-9)
    assert np.all(p >= 0.0)
    assert abs(p.sum() - 1.0) < 1e-12
    with pytest.raises(ValidationError):
        spectrum_probabilities(np.array([1.1, -0.1]), negative_tol=1e-9)


def test_map_and_receiver_entropy_extremes():
    ident = identity_channel(2)
    assert map_entropy(ident, 1.0) == 0.0
    assert abs(receiver_entropy(ident, 1.0) - 2 * math.log(2)) < 1e-12
    star = depolarizing(2, 0.0)
    assert abs(map_entropy(star, 1.0) - 2 * math.log(2)) < 1e-12
    assert receiver_entropy(star, 1.0) == 0.0


def test_entropies_live_in_the_allowed_interval():
    for i in range(50):
        ch = random_cptp(2, 4, rng_substream(22, i))
        for q in (0.5, 1.0, 2.0, math.inf):
            for value in (map_entropy(ch, q), receiver_entropy(ch, q)):
                assert -1e-12 <= value <= 2 * math.log(2) + 1e-12


def test_povm_entropy_canonical_kraus_matches_map_entropy():
    for i in range(20):
        ch = random_cptp(2, 4, rng_substream(23, i))
        for q in (1.0, 2.0):
            assert abs(povm_entropy(ch.kraus, q) - map_entropy(ch, q)) < 1e-9


def test_povm_entropy_never_below_map_entropy():
    # remixing the Kraus set mixes the weight vector, raising its entropy
    from qchan.channels import remix_kraus

    for i in range(20):
        ch = random_cptp(2, 4, rng_substream(24, i))
        v = haar_unitary(len(ch.kraus), rng_substream(24, 1000 + i))
        remixed = remix_kraus(ch.kraus, v)
        for q in (1.0, 2.0):
            assert povm_entropy(remixed, q) >= map_entropy(ch, q) - 1e-9


def test_exchange_entropy_at_maximally_mixed_input_is_map_entropy():
    for i in range(10):
        ch = random_cptp(2, 4, rng_substream(25, i))
        ex = exchange_entropy(ch, np.eye(2) / 2.0)
        assert abs(ex - map_entropy(ch, 1.0)) < 1e-9


def test_exchange_entropy_pure_input_equals_output_entropy():
    # for a pure input the environment and output marginals share a spectrum
    psi = np.zeros((2, 2), dtype=complex)
    psi[0, 0] = 1.0
    for i in range(10):
        ch = random_cptp(2, 4, rng_substream(26, i))
        out = ch.apply(psi)
        w = np.linalg.eigvalsh(out)
        w = np.clip(w, 0.0, None)
        direct = -(w[w > 1e-15] * np.log(w[w > 1e-15])).sum()
        assert abs(exchange_entropy(ch, psi) - direct) < 1e-9


def test_output_entropy_of_coarse_graining():
    cg = coarse_graining(2)
    assert abs(output_entropy(cg, 1.0) - math.log(2)) < 1e-12
    se = spontaneous_emission(2)
    assert output_entropy(se, 1.0) == 0.0


def test_bloch_ellipsoid_examples():
    assert bloch_ellipsoid(identity_channel(2)) == pytest.approx((1.0, 1.0, 1.0))
    assert bloch_ellipsoid(coarse_graining(2)) == pytest.approx((0.0, 0.0, 1.0))
    alpha = 0.37
    assert bloch_ellipsoid(depolarizing(2, alpha)) == pytest.approx((alpha, alpha, alpha))


def test_bloch_ellipsoid_invariant_under_unitary_rotation():
    from qchan.channels import from_superoperator

    alpha = 0.4
    ch = depolarizing(2, alpha)
    u = haar_unitary(2, rng_substream(27, 0))
    rotated = from_superoperator(np.kron(u, u.conj()) @ ch.superop)
    assert bloch_ellipsoid(rotated) == pytest.approx((alpha, alpha, alpha), abs=1e-10)


def test_bloch_ellipsoid_requires_unital_qubit_map():
    with pytest.raises(ValueError):
        bloch_ellipsoid(spontaneous_emission(2))  # not unital
    with pytest.raises(ValueError):
        bloch_ellipsoid(identity_channel(3))  # wrong dimension


def test_entropy_point_carries_extras():
    ch = depolarizing(2, 0.5)
    ep = entropy_point(ch, 2.0)
    assert ep.q == 2.0
    assert ep.channel_label == ch.label
    assert abs(ep.s_map - map_entropy(ch, 2.0)) < 1e-15
    assert abs(ep.s_rec - receiver_entropy(ch, 2.0)) < 1e-15
    for key in ("s_output", "sigma1", "tau1", "d1", "lambda_phi"):
        assert key in ep.extras


def test_povm_entropy_validates_kraus():
    bad = [np.diag([1.0, 0.5]).astype(complex)]
    with pytest.raises(ValidationError):
        povm_entropy(bad, 1.0)
