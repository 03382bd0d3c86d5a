"""Dense symmetric eigenvalues.

Small matrices go through a cyclic Jacobi solver with round-robin
(parallel) ordering: every round rotates n/2 disjoint index pairs at once,
so one sweep is n - 1 vectorised rounds.  Larger matrices use LAPACK via
``numpy.linalg.eigvalsh``; the test-suite cross-checks the two.
"""

from __future__ import annotations

import numpy as np

JACOBI_MAX_N = 256


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """Pairings of a round-robin tournament; a dummy player pads odd n."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        ps, qs = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                ps.append(min(a, b))
                qs.append(max(a, b))
        rounds.append((np.array(ps, dtype=np.int64), np.array(qs, dtype=np.int64)))
        players = [players[0]] + [players[-1]] + players[1:-1]
    return rounds


def jacobi_eigenvalues(a: np.ndarray, tol: float = 1e-12, max_sweeps: int = 60) -> np.ndarray:
    """Eigenvalues of a symmetric matrix, ascending.

    Stops once the off-diagonal Frobenius norm drops below ``tol * ||A||_F``.
    """
    a = np.array(a, dtype=np.float64, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if n <= 1:
        return np.diag(a).copy()
    a = 0.5 * (a + a.T)
    # work at unit scale so squared entries cannot overflow
    peak = float(np.max(np.abs(a)))
    if peak == 0.0:
        return np.zeros(n)
    a = a / peak
    scale = np.linalg.norm(a)
    rounds = _round_robin(n)
    for _ in range(max_sweeps):
        off = np.sqrt(max(np.sum(a * a) - np.sum(np.diag(a) ** 2), 0.0))
        if off < tol * scale:
            break
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > 0.0
            if not np.any(active):
                continue
            p, q, apq = p[active], q[active], apq[active]
            app, aqq = a[p, p], a[q, q]
            with np.errstate(over="ignore", divide="ignore"):
                theta = (aqq - app) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            # for huge theta the tangent is 1/(2 theta); avoids overflow in theta^2
            safe = np.where(big, 1.0, theta)
            t = np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0))
            t = np.where(big, 0.5 / np.where(big, theta, 1.0), t)
            t[theta == 0.0] = 1.0
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            # columns: A <- A J
            col_p = a[:, p].copy()
            col_q = a[:, q]
            a[:, p] = c * col_p - s * col_q
            a[:, q] = s * col_p + c * col_q
            # rows: A <- J^T A
            row_p = a[p, :].copy()
            row_q = a[q, :]
            a[p, :] = c[:, None] * row_p - s[:, None] * row_q
            a[q, :] = s[:, None] * row_p + c[:, None] * row_q
            a[p, q] = 0.0
            a[q, p] = 0.0
    return np.sort(np.diag(a)) * peak


def symmetric_eigenvalues(a: np.ndarray, method: str = "auto") -> np.ndarray:
    """Ascending eigenvalues; ``method`` is ``auto``, ``jacobi`` or ``lapack``."""
    a = np.asarray(a, dtype=np.float64)
    if method == "auto":
        method = "jacobi" if a.shape[0] <= JACOBI_MAX_N else "lapack"
    if method == "jacobi":
        return jacobi_eigenvalues(a)
    if method == "lapack":
        return np.linalg.eigvalsh(a)
    raise ValueError(f"unknown eigen method {method!r}")


def top_singular_value(m: np.ndarray, method: str = "auto") -> float:
    """Largest singular value, from the top eigenvalue of the smaller Gram matrix."""
    m = np.asarray(m, dtype=np.float64)
    if m.size == 0:
        return 0.0
    gram = m @ m.T if m.shape[0] <= m.shape[1] else m.T @ m
    top = symmetric_eigenvalues(gram, method)[-1]
    return float(np.sqrt(max(top, 0.0)))
