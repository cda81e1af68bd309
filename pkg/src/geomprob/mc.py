"""Seeded, reproducible Monte Carlo estimators.

Every estimator draws from counter-based substreams: worker w handles the
sample indices congruent to w modulo the worker count using stream_id = w,
batches are a fixed size, and per-worker Welford moments are merged in
worker order, so a given (seed, workers, n) triple produces bit-identical
results no matter how the work is actually scheduled.

Ball sampling uses a Gaussian direction with a U^(1/dim) radius in every
dimension: one code path, exact, no rejection step.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import exact, geom
from .rng import RngStream
from .stats import Estimate, HistogramGof, RunningStats, ks_statistic

CHUNK = 1 << 17

MIN_ESTIMATE_SAMPLES = 10_000
MIN_HISTOGRAM_SAMPLES = 100_000
MIN_HISTOGRAM_BINS = 10

EXPERIMENTS = (
    "simplex",
    "sylvester",
    "center-triangle",
    "boundary-triangle",
    "offcut",
    "mean-distance",
)


def _ball_batch(gen: np.random.Generator, count: int, dim: int) -> np.ndarray:
    x = gen.standard_normal((count, dim))
    r2 = np.einsum("ij,ij->i", x, x)
    np.maximum(r2, 1e-300, out=r2)
    u = gen.random(count)
    x *= (u ** (1.0 / dim) / np.sqrt(r2))[:, None]
    return x


def sample_uniform_ball(dim: int, rng: RngStream, count: int | None = None):
    """Uniform point(s) in the unit ball B^dim, dim in {1, 2, 3, 4}.

    With count=None a single point is returned as a tuple, otherwise an
    array of shape (count, dim).
    """
    if dim not in (1, 2, 3, 4):
        raise ValueError(f"sample_uniform_ball supports dim in {{1..4}}, got {dim}")
    gen = rng.generator()
    if count is None:
        return tuple(_ball_batch(gen, 1, dim)[0])
    return _ball_batch(gen, count, dim)


def _worker_counts(n: int, workers: int) -> list[int]:
    return [len(range(w, n, workers)) for w in range(workers)]


def _check_run_args(n: int, minimum: int, seed: int, workers: int) -> None:
    if n < minimum:
        raise ValueError(f"estimator needs at least {minimum} samples, got {n}")
    if workers < 1:
        raise ValueError(f"workers must be >= 1, got {workers}")
    RngStream(seed)  # validates the seed range


def _run_mean(tag: str, n: int, seed: int, workers: int, kernel) -> Estimate:
    """Drive kernel(gen, count) -> values over all workers and merge."""

    def one_worker(w: int, count: int) -> RunningStats:
        gen = RngStream(seed, w).generator()
        stats = RunningStats()
        remaining = count
        while remaining > 0:
            take = min(CHUNK, remaining)
            stats.add_batch(kernel(gen, take))
            remaining -= take
        return stats

    counts = _worker_counts(n, workers)
    if workers == 1:
        parts = [one_worker(0, counts[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one_worker, w, c) for w, c in enumerate(counts)]
            parts = [f.result() for f in futures]
    total = RunningStats()
    for part in parts:
        total.merge(part)
    return Estimate.from_stats(tag, total, seed=seed, workers=workers)


# ---------------------------------------------------------------------------
# expectation kernels
# ---------------------------------------------------------------------------

def _center_triangle_kernel(gen, count):
    pts = _ball_batch(gen, 2 * count, 2).reshape(count, 2, 2)
    p, q = pts[:, 0, :], pts[:, 1, :]
    return 0.5 * np.abs(p[:, 0] * q[:, 1] - p[:, 1] * q[:, 0])


def _boundary_triangle_kernel(gen, count):
    pts = _ball_batch(gen, 2 * count, 2).reshape(count, 2, 2)
    a, b = pts[:, 0, :], pts[:, 1, :]
    ax, ay = a[:, 0], a[:, 1] - 1.0
    bx, by = b[:, 0], b[:, 1] - 1.0
    return 0.5 * np.abs(ax * by - ay * bx)


def _simplex_kernel(dim: int):
    if dim == 1:
        def kernel(gen, count):
            uv = gen.random((count, 2))
            return np.abs(uv[:, 0] - uv[:, 1])
    elif dim == 2:
        def kernel(gen, count):
            pts = _ball_batch(gen, 3 * count, 2).reshape(count, 3, 2)
            return geom.triangle_area_many(pts[:, 0], pts[:, 1], pts[:, 2])
    else:
        def kernel(gen, count):
            pts = _ball_batch(gen, 4 * count, 3).reshape(count, 4, 3)
            return geom.tetra_volume_many(pts[:, 0], pts[:, 1], pts[:, 2], pts[:, 3])
    return kernel


def _sylvester_kernel(dim: int):
    if dim == 2:
        def kernel(gen, count):
            pts = _ball_batch(gen, 4 * count, 2).reshape(count, 4, 2)
            return geom.convex_position_4_many(pts).astype(float)
    else:
        def kernel(gen, count):
            pts = _ball_batch(gen, 5 * count, 3).reshape(count, 5, 3)
            return geom.convex_position_5_many(pts).astype(float)
    return kernel


def _offcut_kernel(gen, count):
    pts = _ball_batch(gen, 3 * count, 2).reshape(count, 3, 2)
    p, q, r = pts[:, 0, :], pts[:, 1, :], pts[:, 2, :]
    dx = q[:, 0] - p[:, 0]
    dy = q[:, 1] - p[:, 1]
    length = np.hypot(dx, dy)
    np.maximum(length, 1e-300, out=length)
    nx = dy / length
    ny = -dx / length
    signed = nx * p[:, 0] + ny * p[:, 1]
    flip = np.where(signed < 0.0, -1.0, 1.0)
    h = np.clip(signed * flip, 0.0, 1.0)
    r_side = (nx * r[:, 0] + ny * r[:, 1]) * flip
    smaller_area = 0.5 * np.pi - h * np.sqrt(1.0 - h * h) - np.arcsin(h)
    # the center sits on the side r_side < h, which is the larger portion
    return np.where(r_side < h, smaller_area, np.pi - smaller_area)


def _mean_distance_kernel(gen, count):
    pts = _ball_batch(gen, 2 * count, 2).reshape(count, 2, 2)
    diff = pts[:, 0, :] - pts[:, 1, :]
    return np.hypot(diff[:, 0], diff[:, 1])


# ---------------------------------------------------------------------------
# public estimators
# ---------------------------------------------------------------------------

def estimate_center_triangle(n: int, seed: int, workers: int = 1) -> Estimate:
    """Mean area of the triangle on the disk center and two uniform disk points."""
    _check_run_args(n, 2, seed, workers)
    return _run_mean("center-triangle", n, seed, workers, _center_triangle_kernel)


def estimate_boundary_triangle(n: int, seed: int, workers: int = 1) -> Estimate:
    """Mean area of the triangle on a fixed boundary point and two uniform disk points."""
    _check_run_args(n, 2, seed, workers)
    return _run_mean("boundary-triangle", n, seed, workers, _boundary_triangle_kernel)


def estimate_simplex_volume(dim: int, n: int, seed: int, workers: int = 1) -> Estimate:
    """Mean measure of the simplex on dim+1 uniform points in B^dim.

    dim=1 reports the mean distance of two uniform points on the unit
    interval instead, whose expectation is exactly 1/3.
    """
    if dim not in (1, 2, 3):
        raise ValueError(f"estimate_simplex_volume supports dim in {{1, 2, 3}}, got {dim}")
    _check_run_args(n, MIN_ESTIMATE_SAMPLES, seed, workers)
    return _run_mean(f"simplex-{dim}d", n, seed, workers, _simplex_kernel(dim))


def estimate_sylvester(dim: int, n: int, seed: int, workers: int = 1) -> Estimate:
    """Fraction of dim+2 uniform points in B^dim that are in convex position."""
    if dim not in (2, 3):
        raise ValueError(f"estimate_sylvester supports dim in {{2, 3}}, got {dim}")
    _check_run_args(n, MIN_ESTIMATE_SAMPLES, seed, workers)
    return _run_mean(f"sylvester-{dim}d", n, seed, workers, _sylvester_kernel(dim))


def estimate_offcut(n: int, seed: int, workers: int = 1) -> Estimate:
    """Mean area cut off by the chord through two random points, on the side
    away from a third random point."""
    _check_run_args(n, 2, seed, workers)
    return _run_mean("offcut", n, seed, workers, _offcut_kernel)


def estimate_mean_distance(n: int, seed: int, workers: int = 1) -> Estimate:
    """Mean distance of two uniform points in the unit disk."""
    _check_run_args(n, 2, seed, workers)
    return _run_mean("mean-distance", n, seed, workers, _mean_distance_kernel)


# ---------------------------------------------------------------------------
# goodness-of-fit runs
# ---------------------------------------------------------------------------

def _histogram_run(
    name: str,
    n: int,
    bins: int,
    seed: int,
    workers: int,
    kernel,
    law: exact.DensityLaw,
) -> HistogramGof:
    """kernel(gen, count) -> (values, resampled) binned against the law."""
    edges = np.linspace(law.support[0], law.support[1], bins + 1)

    def one_worker(w: int, count: int) -> tuple[np.ndarray, int]:
        gen = RngStream(seed, w).generator()
        counts = np.zeros(bins, dtype=np.int64)
        resampled = 0
        remaining = count
        while remaining > 0:
            take = min(CHUNK, remaining)
            values, bad = kernel(gen, take)
            counts += np.histogram(values, bins=edges)[0]
            resampled += bad
            remaining -= take
        return counts, resampled

    counts = _worker_counts(n, workers)
    if workers == 1:
        parts = [one_worker(0, counts[0])]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(one_worker, w, c) for w, c in enumerate(counts)]
            parts = [f.result() for f in futures]
    observed = np.zeros(bins, dtype=np.int64)
    resampled = 0
    for part_counts, part_resampled in parts:
        observed += part_counts
        resampled += part_resampled
    return HistogramGof.from_counts(
        name=name,
        support=law.support,
        edges=edges,
        observed=observed,
        bin_probabilities=law.bin_probabilities(edges),
        seed=seed,
        workers=workers,
        resampled=resampled,
    )


def _offset_kernel(dim: int):
    def kernel(gen, count):
        pts = _ball_batch(gen, dim * count, dim).reshape(count, dim, dim)
        offsets, bad = geom.flat_offset_many(pts)
        resampled = 0
        while bad.any():
            idx = np.flatnonzero(bad)
            resampled += idx.size
            retry = _ball_batch(gen, dim * idx.size, dim).reshape(idx.size, dim, dim)
            new_offsets, new_bad = geom.flat_offset_many(retry)
            offsets[idx] = new_offsets
            bad = np.zeros_like(bad)
            bad[idx] = new_bad
        return offsets, resampled
    return kernel


def secant_offset_histogram(
    dim: int, n: int, bins: int, seed: int, workers: int = 1
) -> HistogramGof:
    """GOF of the sampled flat-offset distribution against the analytic law.

    Samples dim uniform points in B^dim, computes the distance from the
    center to the flat they span, and compares the binned counts with the
    exact offset density.  Degenerate point tuples are resampled and
    counted; the counter stays 0 in practice.
    """
    if dim not in (2, 3, 4):
        raise ValueError(f"secant_offset_histogram supports dim in {{2, 3, 4}}, got {dim}")
    if bins < MIN_HISTOGRAM_BINS:
        raise ValueError(f"need at least {MIN_HISTOGRAM_BINS} bins, got {bins}")
    _check_run_args(n, MIN_HISTOGRAM_SAMPLES, seed, workers)
    law = exact.secant_offset_density(dim)
    return _histogram_run(law.name, n, bins, seed, workers, _offset_kernel(dim), law)


def max_radius_gof(n: int, seed: int, workers: int = 1, bins: int = 40) -> HistogramGof:
    """GOF of the largest of three disk-point radii against the 6 c^5 law."""
    if bins < MIN_HISTOGRAM_BINS:
        raise ValueError(f"need at least {MIN_HISTOGRAM_BINS} bins, got {bins}")
    _check_run_args(n, MIN_HISTOGRAM_SAMPLES, seed, workers)
    law = exact.max_radius_density()

    def kernel(gen, count):
        pts = _ball_batch(gen, 3 * count, 2).reshape(count, 3, 2)
        radii = np.sqrt(np.einsum("ijk,ijk->ij", pts, pts))
        return radii.max(axis=1), 0

    return _histogram_run(law.name, n, bins, seed, workers, kernel, law)


def squared_radius_ks(n: int, seed: int, workers: int = 1) -> float:
    """KS statistic of the squared radius of ball(2) samples against Uniform[0, 1]."""
    _check_run_args(n, 2, seed, workers)
    counts = _worker_counts(n, workers)
    chunks = []
    for w, count in enumerate(counts):
        gen = RngStream(seed, w).generator()
        remaining = count
        while remaining > 0:
            take = min(CHUNK, remaining)
            pts = _ball_batch(gen, take, 2)
            chunks.append(np.einsum("ij,ij->i", pts, pts))
            remaining -= take
    r2 = np.concatenate(chunks)
    return ks_statistic(r2, lambda x: np.clip(x, 0.0, 1.0))


# ---------------------------------------------------------------------------
# exact references for the estimators
# ---------------------------------------------------------------------------

def exact_reference(experiment: str, dim: int | None = None) -> float | None:
    """Closed-form expectation matching an estimator, when one exists."""
    refs = exact.reference_constants()
    if experiment == "simplex":
        if dim == 1:
            return float(refs["unit_interval_distance"])
        if dim == 2:
            return float(refs["disk_triangle"])
        if dim == 3:
            return float(exact.kingman_v(4) * exact.unit_ball_volume(3))
        return None
    if experiment == "sylvester":
        if dim in (2, 3):
            return float(exact.sylvester_probability(dim))
        return None
    named = {
        "center-triangle": float(refs["center_triangle"]),
        "boundary-triangle": float(refs["boundary_triangle"]),
        "offcut": float(refs["offcut"]),
        "mean-distance": float(exact.constants_table()["mean_distance_disk"]),
    }
    return named.get(experiment)
