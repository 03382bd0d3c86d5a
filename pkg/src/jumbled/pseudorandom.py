"""Jumbledness, discrepancy, boundedness and quasirandomness statistics.

Convention: e(X, Y) counts ordered pairs (x, y) with x in X, y in Y and xy an
edge, overlap allowed, so e(X, X) = 2 e(X) and K_n is exactly (1, 1)-jumbled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import rng
from .constructions import CayleySpec
from .errors import SearchLimitExceeded, SizeLimitExceeded
from .graph_core import SimpleGraph, named_graph
from .linalg import symmetric_eigenvalues, top_singular_value

JUMBLED_EXACT_MAX_N = 18
DISC_EXACT_MAX = 22
SPECTRUM_MAX_N = 4096


@dataclass
class PairView:
    """Weighted bipartite pair (X, Y) with density target q and scale p."""

    W: np.ndarray
    q: float
    p: float
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.W = np.asarray(self.W, dtype=np.float64)
        if self.W.ndim != 2:
            raise ValueError("W must be a matrix")
        if self.W.size and (self.W.min() < 0.0 or self.W.max() > 1.0):
            raise ValueError("pair weights must lie in [0, 1]")
        if not 0.0 < self.p <= 1.0:
            raise ValueError("p must lie in (0, 1]")
        if not 0.0 <= self.q <= self.p + 1e-15:
            raise ValueError("need 0 <= q <= p")

    @property
    def shape(self) -> tuple[int, int]:
        return self.W.shape

    def density(self) -> float:
        return float(self.W.mean()) if self.W.size else 0.0


@dataclass
class JumblednessReport:
    p: float
    lambda1: float
    lambda2: float
    spectral_beta: float
    regular: bool
    beta_exact: float | None = None
    centered_sigma: float | None = None
    exponent_certified: Fraction | None = None
    exponent_c: float | None = None

    def as_dict(self) -> dict:
        return {
            "p": self.p,
            "regular": self.regular,
            "lambda1": self.lambda1,
            "lambda2": self.lambda2,
            "spectral_beta": self.spectral_beta,
            "beta_exact": self.beta_exact,
            "centered_sigma": self.centered_sigma,
            "exponent_certified": None if self.exponent_certified is None else str(self.exponent_certified),
            "exponent_c": self.exponent_c,
        }


@dataclass(frozen=True)
class BoundednessParams:
    p: float
    xi: float
    eta: float

    def __post_init__(self):
        if self.xi < 0 or self.eta <= 0:
            raise ValueError("need xi >= 0 and eta > 0")


@dataclass
class BoundednessResult:
    ok: bool
    row_violators: list[int]
    entry_violators: list[tuple[int, int]]


@dataclass
class DegreeDeviation:
    high: int
    low: int

    @property
    def total(self) -> int:
        return self.high + self.low


def _subset_indicators(k: int, start: int = 0, stop: int | None = None) -> np.ndarray:
    """Rows are the bit patterns start..stop-1 over k columns."""
    stop = (1 << k) if stop is None else stop
    codes = np.arange(start, stop, dtype=np.int64)
    return ((codes[:, None] >> np.arange(k, dtype=np.int64)) & 1).astype(np.float64)


# ------------------------------------------------------------ jumbledness

def jumbledness_exact(g: SimpleGraph, p: float, chunk: int = 1 << 14) -> float:
    """beta* = max over nonempty X, Y of |e(X,Y) - p|X||Y|| / sqrt(|X||Y|).

    For fixed X the best Y of size t takes the t largest or t smallest
    values of d_X(y) - p|X|, so only X is enumerated.
    """
    n = g.n
    if n > JUMBLED_EXACT_MAX_N:
        raise SearchLimitExceeded(f"jumbledness_exact: n = {n} exceeds {JUMBLED_EXACT_MAX_N}")
    if n == 0:
        return 0.0
    a = g.adjacency_matrix()
    ts = np.arange(1, n + 1, dtype=np.float64)
    best = 0.0
    total = 1 << n
    for start in range(1, total, chunk):
        xs = _subset_indicators(n, start, min(start + chunk, total))
        size_x = xs.sum(axis=1)
        dev = xs @ a - p * size_x[:, None]
        dev.sort(axis=1)
        low = np.cumsum(dev, axis=1)
        high = np.cumsum(dev[:, ::-1], axis=1)
        worst = np.maximum(np.abs(low), np.abs(high)) / np.sqrt(size_x[:, None] * ts[None, :])
        best = max(best, float(worst.max()))
    return best


def spectrum(g: SimpleGraph, method: str = "auto") -> np.ndarray:
    """Adjacency eigenvalues ordered by decreasing absolute value (ties: larger first)."""
    if g.n > SPECTRUM_MAX_N:
        raise SizeLimitExceeded(f"spectrum: n = {g.n} exceeds {SPECTRUM_MAX_N}")
    vals = symmetric_eigenvalues(g.adjacency_matrix(), method)
    order = np.lexsort((-vals, -np.abs(np.round(vals, 12))))
    return vals[order]


def certified_exponent(beta: float, p: float, n: int, c: float = 1.0,
                       denominator: int = 4, k_max: int = 20) -> Fraction | None:
    """Largest k on a 1/denominator grid with beta <= c p^k n, or None."""
    if not 0.0 < p < 1.0 or n <= 0:
        return None
    best = None
    for step in range(0, k_max * denominator + 1):
        k = Fraction(step, denominator)
        if beta <= c * p ** float(k) * n + 1e-12:
            best = k
        else:
            break
    return best


def spectral_jumbledness(g: SimpleGraph, method: str = "auto", c: float | None = None) -> JumblednessReport:
    """Expander-mixing certificate.

    Regular graphs: p = d/n and beta = max_{i>=2} |lambda_i|.  Otherwise p is
    the mean degree over n and the top singular value of A - pJ is reported
    as the (always valid) alternative certificate.
    """
    n = g.n
    if n == 0:
        return JumblednessReport(0.0, 0.0, 0.0, 0.0, True)
    deg = g.degrees()
    regular = bool(np.all(deg == deg[0]))
    p = float(deg.mean()) / n
    vals = spectrum(g, method)
    lam1 = float(vals[0])
    lam2 = float(vals[1]) if n > 1 else 0.0
    beta = float(np.max(np.abs(vals[1:]))) if n > 1 else 0.0
    report = JumblednessReport(p=p, lambda1=lam1, lambda2=lam2, spectral_beta=beta, regular=regular)
    if not regular:
        centered = g.adjacency_matrix() - p
        report.centered_sigma = top_singular_value(centered, method)
    if c is not None:
        cert = beta if regular else report.centered_sigma
        report.exponent_certified = certified_exponent(cert, p, n, c)
        report.exponent_c = c
    return report


def character_sum_max(n: int, members: Sequence[int]) -> float:
    """max over k = 1..n-1 of |sum_{x in S} e^{2 pi i k x / n}|."""
    if n <= 1 or len(members) == 0:
        return 0.0
    ind = np.zeros(n)
    for x in members:
        ind[int(x) % n] += 1.0
    spec = np.fft.fft(ind)
    return float(np.max(np.abs(spec[1:])))


def character_sum_beta(spec: CayleySpec) -> float:
    return character_sum_max(spec.n, spec.sorted_set())


# ------------------------------------------------------------ discrepancy

def _oriented(pair: PairView) -> np.ndarray:
    """Deviation matrix W - q with the smaller side as rows."""
    dev = pair.W - pair.q
    return dev if dev.shape[0] <= dev.shape[1] else dev.T


def _box_extremes(pair: PairView, limit: int, chunk: int = 1 << 12) -> tuple[float, float]:
    """(max, min) over subset pairs of sum_{X',Y'} (W - q); empty sets give 0."""
    rows, cols = pair.W.shape
    if rows + cols > limit:
        raise SearchLimitExceeded(f"exact discrepancy needs |X| + |Y| <= {limit}, got {rows + cols}")
    dev = _oriented(pair)
    k = dev.shape[0]
    hi, lo = 0.0, 0.0
    total = 1 << k
    for start in range(1, total, chunk):
        xs = _subset_indicators(k, start, min(start + chunk, total))
        colsum = xs @ dev
        hi = max(hi, float(np.maximum(colsum, 0.0).sum(axis=1).max()))
        lo = min(lo, float(np.minimum(colsum, 0.0).sum(axis=1).min()))
    return hi, lo


def disc_epsilon_exact(pair: PairView, limit: int = DISC_EXACT_MAX) -> float:
    """Smallest eps with DISC(q, p, eps): max |sum_{X',Y'}(W - q)| / (p|X||Y|).

    The objective is bilinear in (u, v), so its extremes over the box sit at
    indicator vectors and the subset form is exact.
    """
    rows, cols = pair.W.shape
    if rows == 0 or cols == 0:
        return 0.0
    hi, lo = _box_extremes(pair, limit)
    return max(hi, -lo) / (pair.p * rows * cols)


def disc_ge_epsilon_exact(pair: PairView, limit: int = DISC_EXACT_MAX) -> float:
    """Smallest eps with the one-sided DISC_>=(q, p, eps), clipped at 0."""
    rows, cols = pair.W.shape
    if rows == 0 or cols == 0:
        return 0.0
    _, lo = _box_extremes(pair, limit)
    return max(0.0, -lo) / (pair.p * rows * cols)


def disc_epsilon_upper(pair: PairView, method: str = "auto") -> float:
    """sigma_max(W - qJ) sqrt(|X||Y|) / (p|X||Y|), an upper bound on the exact value."""
    rows, cols = pair.W.shape
    if rows == 0 or cols == 0:
        return 0.0
    sigma = top_singular_value(pair.W - pair.q, method)
    return sigma * math.sqrt(rows * cols) / (pair.p * rows * cols)


def disc_epsilon_alternating(pair: PairView, starts: int = 100, seed: int = 0,
                             max_iter: int = 100) -> float:
    """Alternating maximisation over continuous u, v in [0, 1] from random starts.

    Each half-step is an exact best response, so values never decrease and
    can never exceed the subset optimum.
    """
    rows, cols = pair.W.shape
    if rows == 0 or cols == 0:
        return 0.0
    dev = pair.W - pair.q
    gen = rng.Xorshift64Star(rng.stream_key(seed, "alternating"))
    best = 0.0
    for _ in range(starts):
        u0 = gen.uniforms(rows)
        for sign in (1.0, -1.0):
            u = u0.copy()
            value = -math.inf
            for _ in range(max_iter):
                v = (sign * (u @ dev) > 0).astype(np.float64)
                u = (sign * (dev @ v) > 0).astype(np.float64)
                new = sign * float(u @ dev @ v)
                if new <= value + 1e-15:
                    break
                value = new
            best = max(best, value)
    return best / (pair.p * rows * cols)


def boundedness_check(pair: PairView, params: BoundednessParams) -> BoundednessResult:
    """Row means within xi*p of p and every entry at most eta."""
    w = pair.W
    means = w.mean(axis=1) if w.shape[1] else np.zeros(w.shape[0])
    rows = [int(i) for i in np.nonzero(np.abs(means - params.p) > params.xi * params.p + 1e-12)[0]]
    entries = [(int(i), int(j)) for i, j in np.argwhere(w > params.eta + 1e-12)]
    return BoundednessResult(ok=not rows and not entries, row_violators=rows, entry_violators=entries)


def degree_deviation_count(pair: PairView, v_weights: np.ndarray, xi: float) -> DegreeDeviation:
    """Left vertices whose v-weighted degree deviates from p E[v] by more than xi p E[v]."""
    if xi <= 0:
        raise ValueError("xi must be positive")
    v = np.asarray(v_weights, dtype=np.float64)
    ev = float(v.mean()) if v.size else 0.0
    if ev == 0.0:
        return DegreeDeviation(0, 0)
    target = pair.p * ev
    deg = pair.W @ v / v.size
    slack = xi * target
    return DegreeDeviation(high=int(np.sum(deg > target + slack)), low=int(np.sum(deg < target - slack)))


def degree_deviation_bound(gamma: float, xi: float, p: float, ev: float, left_size: int) -> float:
    """gamma^2 / (xi^2 p^2 E v) * |X|, the deviation-count bound for a gamma certificate."""
    return gamma * gamma / (xi * xi * p * p * ev) * left_size


# --------------------------------------------------------- quasirandomness

def labeled_c4_trace(g: SimpleGraph) -> int:
    """Injective labelled C4 count: tr(A^4) - 2 sum d^2 + sum d."""
    a = g.adjacency_matrix()
    a2 = a @ a
    deg = g.degrees().astype(np.float64)
    return int(round(float(np.sum(a2 * a2) - 2.0 * np.sum(deg * deg) + deg.sum())))


def codegree_sum(g: SimpleGraph) -> int:
    """4 * sum over unordered pairs of C(codeg, 2)."""
    a = g.adjacency_matrix(np.int64)
    co = a @ a
    iu = np.triu_indices(g.n, 1)
    c = co[iu]
    return int(4 * np.sum(c * (c - 1) // 2))


def c4_codegree_identity_check(g: SimpleGraph) -> tuple[int, int]:
    """(labelled C4 count by enumeration, 4 * sum C(codeg, 2))."""
    from .counting import labeled_copies

    if g.n > 256:
        raise SizeLimitExceeded("c4_codegree_identity_check needs n <= 256")
    return labeled_copies(g, named_graph("c4")), codegree_sum(g)


def _sample_subsets(gen: rng.Xorshift64Star, n: int, count: int, size: int | None = None) -> np.ndarray:
    out = np.zeros((count, n), dtype=np.float64)
    for i in range(count):
        k = size if size is not None else 1 + gen.randbelow(n)
        out[i, gen.sample(n, k)] = 1.0
    return out


def quasirandom_statistics(g: SimpleGraph, q: float, p: float, sample_budget: int = 10_000,
                           seed: int = 0, patterns: Sequence[str] = ("k3", "c4"),
                           method: str = "auto") -> dict:
    """P1-P7 statistics, each normalised as in the relative quasirandomness theorem.

    P1-P3 use sampled subsets and are lower bounds on the true maxima.
    Returns an ordered dict suitable for a report's ``statistics`` block.
    """
    from .counting import labeled_copies

    n = g.n
    if n > SPECTRUM_MAX_N:
        raise SizeLimitExceeded(f"quasirandom_statistics: n = {n} exceeds {SPECTRUM_MAX_N}")
    stats: dict = {"n": n, "edges": g.m, "q": q, "p": p}
    if n == 0:
        for key in ("P1", "P2", "P3", "P5_edges", "P5_c4", "P6_lambda1", "P6_lambda2", "P7"):
            stats[key] = 0.0
        stats["P4"] = {}
        return stats
    a = g.adjacency_matrix()
    gen = rng.Xorshift64Star(rng.stream_key(seed, "quasi"))
    scale2 = p * n * n if p > 0 else 1.0

    # P1: |e(S,T) - q|S||T|| / (p n^2) over sampled pairs
    p1 = 0.0
    block = 512
    done = 0
    while done < sample_budget:
        b = min(block, sample_budget - done)
        s = _sample_subsets(gen, n, b)
        t = _sample_subsets(gen, n, b)
        e_st = np.einsum("ij,ij->i", s @ a, t)
        dev = np.abs(e_st - q * s.sum(axis=1) * t.sum(axis=1))
        p1 = max(p1, float(dev.max()))
        done += b
    stats["P1"] = p1 / scale2

    # P2: one-set version with e(S) = e(S,S)/2 against q|S|^2/2
    s = _sample_subsets(gen, n, max(1, sample_budget // 4))
    e_s = 0.5 * np.einsum("ij,ij->i", s @ a, s)
    stats["P2"] = float(np.max(np.abs(e_s - q * s.sum(axis=1) ** 2 / 2.0))) / scale2

    # P3: sets of size floor(n/2) against q n^2 / 8
    half = _sample_subsets(gen, n, max(1, sample_budget // 4), size=n // 2)
    e_h = 0.5 * np.einsum("ij,ij->i", half @ a, half)
    stats["P3"] = float(np.max(np.abs(e_h - q * n * n / 8.0))) / scale2

    # P4: labelled copies against q^e n^v
    p4 = {}
    for name in patterns:
        h = named_graph(name)
        count = labeled_copies(g, h)
        norm = (p ** h.m) * float(n) ** h.n if p > 0 else 1.0
        p4[name] = {"count": count, "expected": (q ** h.m) * float(n) ** h.n,
                    "statistic": abs(count - (q ** h.m) * float(n) ** h.n) / norm}
    stats["P4"] = p4

    # P5: edge count and labelled C4 count
    c4 = labeled_c4_trace(g)
    stats["P5_edges"] = (q * n * n / 2.0 - g.m) / scale2
    stats["P5_c4_count"] = c4
    stats["P5_c4"] = (c4 - (q ** 4) * float(n) ** 4) / ((p ** 4) * float(n) ** 4 if p > 0 else 1.0)

    # P6: top eigenvalues
    vals = spectrum(g, method)
    lam1 = float(vals[0])
    lam2 = float(abs(vals[1])) if n > 1 else 0.0
    stats["lambda1"] = lam1
    stats["lambda2"] = lam2
    stats["P6_lambda1"] = abs(lam1 - q * n) / (p * n if p > 0 else 1.0)
    stats["P6_lambda2"] = lam2 / (p * n if p > 0 else 1.0)
    stats["P6_mean_degree_ok"] = bool(lam1 >= 2.0 * g.m / n - 1e-9)

    # P7: codegree deviations over unordered pairs
    co = a @ a
    iu = np.triu_indices(n, 1)
    stats["P7"] = float(np.abs(co[iu] - q * q * n).sum()) / ((p * p) * float(n) ** 3 if p > 0 else 1.0)
    return stats
