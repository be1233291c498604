"""Dense complex-matrix primitives: entry reorderings, spectra, Schatten q-norms.

Everything in this module is a pure function on immutable inputs; matrices are
plain ``numpy`` arrays in row-major layout and composite indices over an
``n * n`` grid are always ``(a, b) -> a * n + b``, zero-based.
"""

from __future__ import annotations

import math

import numpy as np

# Relative Hermiticity tolerance: separates modeling errors from roundoff.
HERM_TOL = 1e-10
# Spectrum entries below this fraction of the largest one are treated as exact
# zeros by the entropy layer (kept in the vector, never fed to a logarithm).
SPECTRUM_ZERO_RTOL = 1e-12


def as_complex_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a 2-D complex array, rejecting NaN/Inf entries."""
    out = np.asarray(m, dtype=complex)
    if out.ndim != 2:
        raise ValueError(f"expected a matrix, got an array of shape {out.shape}")
    if not np.all(np.isfinite(out)):
        raise ValueError("matrix contains non-finite entries")
    return out


def _square_side(m: np.ndarray, block: int | None) -> int:
    rows, cols = m.shape
    if rows != cols:
        raise ValueError(f"expected a square matrix, got {rows}x{cols}")
    side = math.isqrt(rows) if block is None else block
    if side * side != rows:
        raise ValueError(f"matrix size {rows} is not the square of block size {side}")
    return side


def reshuffle(m, block: int | None = None) -> np.ndarray:
    """Exchange the inner index pair of an ``n^2 x n^2`` matrix.

    With composite indices, ``out[(k, m), (l, n)] = in[(k, l), (m, n)]``.
    This is the involution that maps a channel's superoperator matrix onto
    its dynamical (Choi) matrix and back.  ``block`` fixes the block size n;
    by default it is inferred from the matrix size.
    """
    m = as_complex_matrix(m)
    n = _square_side(m, block)
    d = n * n
    return m.reshape(n, n, n, n).transpose(0, 2, 1, 3).reshape(d, d)


def reshuffle_permutation(block: int) -> np.ndarray:
    """Entry permutation that realizes :func:`reshuffle` on an ``n^2 x n^2`` matrix.

    Returns ``perm`` such that ``reorder(m, perm) == reshuffle(m)``.
    """
    if block < 1:
        raise ValueError("block size must be positive")
    d = block * block
    idx = np.arange(d * d).reshape(block, block, block, block)
    return idx.transpose(0, 2, 1, 3).reshape(-1)


def identity_permutation(size: int) -> np.ndarray:
    """The permutation leaving every entry in place."""
    return np.arange(size)


def random_permutation(size: int, rng: np.random.Generator) -> np.ndarray:
    """A uniformly random permutation of ``size`` entry indices."""
    return rng.permutation(size)


def reorder(m, perm) -> np.ndarray:
    """Permute matrix entries: ``out.flat[j] = m.flat[perm[j]]`` (row-major).

    ``perm`` must be a bijection on ``0 .. m.size - 1``; the multiset of
    entries, and hence the Hilbert-Schmidt norm, is preserved exactly.
    """
    m = as_complex_matrix(m)
    perm = np.asarray(perm)
    if perm.ndim != 1 or not np.issubdtype(perm.dtype, np.integer):
        raise ValueError("permutation must be a 1-D integer array")
    if perm.size != m.size:
        raise ValueError(
            f"permutation acts on {perm.size} entries but the matrix has {m.size}"
        )
    counts = np.bincount(perm, minlength=m.size)
    if perm.min(initial=0) < 0 or np.any(counts != 1):
        raise ValueError("permutation is not a bijection on the entry indices")
    return m.ravel()[perm].reshape(m.shape)


def singular_values(m) -> np.ndarray:
    """Singular values of ``m``, sorted descending (non-negative reals)."""
    m = as_complex_matrix(m)
    try:
        return np.linalg.svd(m, compute_uv=False)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - LAPACK hiccup
        raise np.linalg.LinAlgError(
            f"singular value decomposition failed for a {m.shape[0]}x{m.shape[1]} matrix: {exc}"
        ) from exc


def hermitian_eigenvalues(h, herm_tol: float = HERM_TOL) -> np.ndarray:
    """Real eigenvalues of a Hermitian matrix, sorted descending.

    ``h`` must satisfy ``|h - h^dag|_2 <= herm_tol * |h|_2``; it is then
    symmetrized as ``(h + h^dag)/2`` before the decomposition, so the result
    is exactly real (possibly negative).
    """
    h = as_complex_matrix(h)
    if h.shape[0] != h.shape[1]:
        raise ValueError(f"expected a square matrix, got {h.shape[0]}x{h.shape[1]}")
    dev = np.linalg.norm(h - h.conj().T)
    scale = np.linalg.norm(h)
    if dev > herm_tol * max(scale, 1e-300):
        raise ValueError(
            f"matrix is not Hermitian: |h - h^dag|_2 = {dev:.3e} "
            f"exceeds {herm_tol:.1e} * |h|_2 = {herm_tol * scale:.3e}"
        )
    sym = (h + h.conj().T) / 2.0
    return np.linalg.eigvalsh(sym)[::-1]


def q_norm(m, q) -> float:
    """Schatten q-norm ``(sum_i x_i^q)^(1/q)`` over the singular values of ``m``.

    ``q`` ranges over ``[1, inf]``; ``math.inf`` is the explicit enumerated
    value selecting the largest singular value, and ``q = 1`` gives the trace
    norm.  The function is non-increasing in ``q``.
    """
    q = float(q)
    if math.isnan(q) or q < 1:
        raise ValueError(f"q-norm requires q >= 1, got {q}")
    s = singular_values(m)
    if math.isinf(q):
        return float(s[0])
    if q == 1.0:
        return float(s.sum())
    return float(np.sum(s**q) ** (1.0 / q))
