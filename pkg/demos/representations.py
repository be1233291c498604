"""One channel, three matrix forms.

Builds an amplitude-damping channel from Kraus operators, then walks through
the superoperator and Choi forms, the reshuffling that connects them, and the
round trips back to Kraus operators and to an environmental unitary picture.
"""

import numpy as np

from qchan import from_kraus, from_choi, from_environment, reshuffle

GAMMA = 0.3


def main():
    a0 = np.diag([1.0, np.sqrt(1.0 - GAMMA)]).astype(complex)
    a1 = np.zeros((2, 2), dtype=complex)
    a1[0, 1] = np.sqrt(GAMMA)
    ch = from_kraus([a0, a1], label=f"amplitude_damping({GAMMA})")

    print(f"channel: {ch.label}  (dim {ch.dim}, cp={ch.cp}, tp={ch.tp}, unital={ch.unital})")
    print("\nsuperoperator (row-major vectorization):")
    print(np.round(ch.superop.real, 6))
    print("\nChoi matrix = reshuffled superoperator:")
    print(np.round(ch.choi.real, 6))
    print("\nreshuffle is an involution:",
          np.array_equal(reshuffle(ch.choi), ch.superop))

    print("\nChoi eigenvalues (trace = N):", np.round(ch.choi_eigenvalues, 6))
    print("superop singular values:      ", np.round(ch.singular_values, 6))
    print(f"sigma1 = {ch.sigma1:.6f}, Lambda = {ch.lambda_phi:.6f}, "
          f"tau1 = {ch.tau1:.6f}, d1 = {ch.d1:.6f}")

    # Round trip through the Choi form recovers the same map.
    again = from_choi(ch.choi)
    print("\nfrom_choi(choi) reproduces the superoperator:",
          np.allclose(again.superop, ch.superop, atol=1e-12))

    # The canonical Kraus set from the Choi eigenbasis may differ from the
    # one we started with, but it generates the identical channel.
    ops = ch.kraus
    rebuilt = from_kraus(ops)
    print(f"canonical Kraus set has {len(ops)} operators; same channel:",
          np.allclose(rebuilt.superop, ch.superop, atol=1e-12))

    # Any channel also arises from a unitary on system x environment.
    print("\nenvironmental form: a Haar unitary on C^2 (x) C^4 gives")
    u = np.linalg.qr(np.random.default_rng(7).standard_normal((8, 8))
                     + 1j * np.random.default_rng(8).standard_normal((8, 8)))[0]
    env = from_environment(u, 2, 4)
    print(f"  a CP-TP map with Choi spectrum {np.round(env.choi_eigenvalues, 4)}")


if __name__ == "__main__":
    main()
