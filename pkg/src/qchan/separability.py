"""Entanglement analysis of the rescaled Choi state ``omega = D/N``.

A channel is entanglement breaking exactly when ``omega`` is separable.
This module provides the realignment test, the partial-transpose test, the
three entropic criteria that separability forces, and a region classifier
for the entropy plane:

* region ``A``: at least one entropic criterion violated — ``omega`` is
  certifiably entangled, the channel is not entanglement breaking;
* region ``B``: no certificate either way;
* region ``C`` (``N = 2`` only): partial transpose is positive, which for a
  two-qubit state is equivalent to separability;
* ``indeterminate``: ``N >= 3`` with positive partial transpose, where the
  test is only necessary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .bounds import BoundRecord, _record, f_min, g_min, receiver_upper_value, record_dict
from .channels import Channel
from .entropy import map_entropy, receiver_entropy
from .matcore import hermitian_eigenvalues

PPT_RTOL = 1e-9
REALIGNMENT_TOL = 1e-9


def partial_transpose(m, block=None) -> np.ndarray:
    """Transpose the second tensor factor of a bipartite matrix.

    For ``m`` acting on C^n (x) C^n with entries ``m[(k,l),(m,n)]`` the
    result has entries ``m[(k,n),(m,l)]``.
    """
    m = np.asarray(m, dtype=complex)
    d = m.shape[0]
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    n = int(round(math.isqrt(d))) if block is None else int(block)
    if n * n != d:
        raise ValueError(f"matrix side {d} is not a perfect square; pass block")
    return m.reshape(n, n, n, n).transpose(0, 3, 2, 1).reshape(d, d)


def ppt_test(ch: Channel) -> tuple[float, bool]:
    """Smallest eigenvalue of the partially transposed ``omega`` and whether
    it is nonnegative (up to a relative tolerance).

    For ``N = 2`` positivity is equivalent to separability of ``omega``;
    for larger dimensions it is only a necessary condition.
    """
    if ch.choi_eigenvalues is None:
        raise ValueError("partial-transpose test needs a Hermitian Choi matrix")
    omega = ch.choi / ch.dim
    eigs = hermitian_eigenvalues(partial_transpose(omega, block=ch.dim), herm_tol=1e-8)
    min_eig = float(eigs[-1])
    scale = max(float(abs(eigs[0])), float(abs(eigs[-1])), 1e-300)
    return min_eig, bool(min_eig >= -PPT_RTOL * scale)


def realignment_test(ch: Channel) -> tuple[float, bool]:
    """Trace norm of ``omega`` reshuffled, i.e. ``L/N``, with a certificate.

    Separability of ``omega`` forces the value to be at most 1, so a value
    above ``1 + 1e-9`` certifies entanglement.  The converse fails: values
    at or below 1 prove nothing.
    """
    value = ch.lambda_phi / ch.dim
    return float(value), bool(value > 1.0 + REALIGNMENT_TOL)


def separable_criteria(ch: Channel, q) -> list[BoundRecord]:
    """Three inequalities every entanglement-breaking channel satisfies.

    They follow from inserting ``L <= N`` (the realignment consequence of a
    separable ``omega``) into the entropy bounds, so violating any one of
    them certifies entanglement.  Requires ``q >= 1``.
    """
    n = ch.dim
    s_map = map_entropy(ch, q)
    s_rec = receiver_entropy(ch, q)
    return [
        _record(
            "separable_map_lower", s_map, 0.25 * f_min(q) * math.log(n), ">=",
            "separable => S_q_map >= (F_min/4) ln N",
        ),
        _record(
            "separable_receiver_upper", s_rec, receiver_upper_value(float(n), n, q), "<=",
            "separable => S_q_rec <= S_q((1, 1/(N+1) ...)/N)",
        ),
        _record(
            "separable_ratio", s_map, g_min(q) * s_rec, ">=",
            "separable => S_q_map >= G_min S_q_rec",
        ),
    ]


@dataclass(frozen=True)
class SeparabilityVerdict:
    """Everything the separability tests say about one channel."""

    realignment_value: float
    realignment_pass: bool
    ppt_min_eigenvalue: float
    ppt_pass: bool
    region: str
    criteria: tuple[BoundRecord, ...]

    def to_dict(self) -> dict:
        return {
            "realignment_value": self.realignment_value,
            "realignment_pass": self.realignment_pass,
            "ppt_min_eigenvalue": self.ppt_min_eigenvalue,
            "ppt_pass": self.ppt_pass,
            "region": self.region,
            "criteria": [record_dict(r) for r in self.criteria],
        }


def classify_region(ch: Channel, q) -> SeparabilityVerdict:
    """Entropy-plane region of the channel at Rényi order ``q``.

    ``A`` when an entropic criterion is violated (certified entangled),
    ``C`` when ``N = 2`` and the partial transpose stays positive (certified
    separable), ``indeterminate`` for a positive partial transpose at
    ``N >= 3``, and ``B`` otherwise.
    """
    criteria = tuple(separable_criteria(ch, q))
    min_eig, ppt = ppt_test(ch)
    value, _certificate = realignment_test(ch)
    if any(not r.satisfied for r in criteria):
        region = "A"
    elif ppt:
        region = "C" if ch.dim == 2 else "indeterminate"
    else:
        region = "B"
    return SeparabilityVerdict(
        realignment_value=value,
        realignment_pass=bool(ch.lambda_phi <= ch.dim + REALIGNMENT_TOL),
        ppt_min_eigenvalue=min_eig,
        ppt_pass=ppt,
        region=region,
        criteria=criteria,
    )
