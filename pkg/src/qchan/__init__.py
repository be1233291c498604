"""Quantum channels on the entropy plane.

Tools for the three standard representations of a quantum channel (Kraus,
superoperator, Choi), the Rényi entropies of the rescaled Choi spectrum
("map entropy") and of the normalized superoperator singular values
("receiver entropy"), the trade-off bounds that constrain the two, and
entanglement criteria for the associated Choi state.
"""

from .bounds import (
    CHECK_TOL,
    BoundRecord,
    BoundReport,
    applicable_bound_ids,
    channel_entropy_bounds,
    collision_identity,
    collision_sum_upper,
    entropy_sum_lower,
    evaluate_all,
    f_max,
    f_min,
    g_min,
    interval_bounds,
    map_entropy_lower,
    output_entropy_sandwich,
    receiver_entropy_upper,
    receiver_upper_value,
    reordered_entropy_bounds,
    sigma1,
    sigma1_bound,
    sigma1_variational,
    spectral_entropy_bounds,
)
from .channels import (
    Channel,
    ValidationError,
    check_state,
    choi_to_kraus,
    from_choi,
    from_environment,
    from_kraus,
    from_superoperator,
    remix_kraus,
)
from .entropy import (
    EntropyPoint,
    bloch_ellipsoid,
    check_probabilities,
    entropy_point,
    exchange_entropy,
    map_entropy,
    output_entropy,
    povm_entropy,
    receiver_entropy,
    renyi,
    spectrum_probabilities,
)
from .matcore import (
    hermitian_eigenvalues,
    identity_permutation,
    q_norm,
    random_permutation,
    reorder,
    reshuffle,
    reshuffle_permutation,
    singular_values,
)
from .separability import (
    SeparabilityVerdict,
    classify_region,
    partial_transpose,
    ppt_test,
    realignment_test,
    separable_criteria,
)
from .zoo import (
    coarse_graining,
    complete_contraction,
    depolarizing,
    depolarizing_curve_point,
    haar_unitary,
    identity_channel,
    interval_channel,
    interval_channel_general,
    maximally_depolarizing,
    pauli_channel,
    random_bistochastic,
    random_cptp,
    random_density,
    random_interval_channel,
    random_pauli_channel,
    random_pure_state,
    random_reshuffle_invariant,
    reshuffle_invariant,
    rng_stream,
    rng_substream,
    spontaneous_emission,
)

__version__ = "0.1.0"

__all__ = [
    "CHECK_TOL",
    "BoundRecord",
    "BoundReport",
    "Channel",
    "EntropyPoint",
    "SeparabilityVerdict",
    "ValidationError",
    "applicable_bound_ids",
    "bloch_ellipsoid",
    "channel_entropy_bounds",
    "check_probabilities",
    "check_state",
    "choi_to_kraus",
    "classify_region",
    "coarse_graining",
    "collision_identity",
    "collision_sum_upper",
    "complete_contraction",
    "depolarizing",
    "depolarizing_curve_point",
    "entropy_point",
    "entropy_sum_lower",
    "evaluate_all",
    "exchange_entropy",
    "f_max",
    "f_min",
    "from_choi",
    "from_environment",
    "from_kraus",
    "from_superoperator",
    "g_min",
    "haar_unitary",
    "hermitian_eigenvalues",
    "identity_channel",
    "identity_permutation",
    "interval_bounds",
    "interval_channel",
    "interval_channel_general",
    "map_entropy",
    "map_entropy_lower",
    "maximally_depolarizing",
    "output_entropy",
    "output_entropy_sandwich",
    "partial_transpose",
    "pauli_channel",
    "povm_entropy",
    "ppt_test",
    "q_norm",
    "random_bistochastic",
    "random_cptp",
    "random_density",
    "random_interval_channel",
    "random_pauli_channel",
    "random_permutation",
    "random_pure_state",
    "random_reshuffle_invariant",
    "realignment_test",
    "receiver_entropy",
    "receiver_entropy_upper",
    "receiver_upper_value",
    "remix_kraus",
    "renyi",
    "reorder",
    "reordered_entropy_bounds",
    "reshuffle",
    "reshuffle_invariant",
    "reshuffle_permutation",
    "rng_stream",
    "rng_substream",
    "separable_criteria",
    "sigma1",
    "sigma1_bound",
    "sigma1_variational",
    "singular_values",
    "spectral_entropy_bounds",
    "spectrum_probabilities",
    "spontaneous_emission",
]
