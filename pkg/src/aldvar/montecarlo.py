"""Monte Carlo oracle for compound Poisson annual losses.

Simulates years of aggregate losses (Poisson count, inverse-transform severity
draws) and reads extreme empirical quantiles out of a bounded tail sketch that
holds exactly the k largest annual totals seen. Randomness comes from
counter-based Philox streams keyed by (seed, stream_id): each chunk of years
owns its stream, so a run is reproducible bit-for-bit for a fixed
(seed, years_per_chunk) layout whether chunks execute serially or on workers.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError
from .severity import Severity

_U53 = float(2 ** 53)


class RngStream:
    """A Philox-backed stream addressed by (seed, stream_id).

    Equal addresses reproduce equal draw sequences; distinct stream ids give
    statistically independent streams. Uniforms lie strictly inside (0, 1).
    """

    def __init__(self, seed: int, stream_id: int = 0):
        self.seed = int(seed)
        self.stream_id = int(stream_id)
        self._gen = np.random.Generator(
            np.random.Philox(key=np.array([self.seed & (2**64 - 1),
                                           self.stream_id & (2**64 - 1)],
                                          dtype=np.uint64)))

    def uniforms(self, n: int) -> np.ndarray:
        """n uniforms on the open interval (0, 1): (k + 1/2) / 2^53."""
        k = self._gen.integers(0, 2 ** 53, size=n, dtype=np.int64)
        return (k + 0.5) / _U53

    def poisson(self, lam: float, size: int | None = None):
        return self._gen.poisson(lam, size=size)


def poisson_draw(stream: RngStream, lam: float) -> int:
    """One exact Poisson(lam) draw, advancing the stream."""
    if not lam > 0.0:
        raise DomainError(f"poisson_draw requires lam > 0, got {lam}")
    return int(stream.poisson(lam))


def simulate_year(stream: RngStream, model: Severity, lam: float) -> float:
    """One annual total: N ~ Poisson(lam) inverse-transform severity draws."""
    n = poisson_draw(stream, lam)
    if n == 0:
        return 0.0
    u = stream.uniforms(n)
    return float(model.quantile_array(u).sum())


def simulate_years(stream: RngStream, model: Severity, lam: float, years: int) -> np.ndarray:
    """Annual totals for a block of years on a single stream (vectorized)."""
    counts = stream.poisson(lam, size=years)
    total = int(counts.sum())
    sums = np.zeros(years)
    if total:
        u = stream.uniforms(total)
        x = model.quantile_array(u)
        idx = np.repeat(np.arange(years), counts)
        sums = np.bincount(idx, weights=x, minlength=years)
    return sums


class TailSketch:
    """Exact bounded collection of the k largest values seen.

    ``contents`` is always the exact multiset of the capacity largest values
    across everything updated or merged in, so merging sketches in any order
    gives identical contents.
    """

    def __init__(self, capacity: int):
        if capacity < 1:
            raise DomainError(f"sketch capacity must be >= 1, got {capacity}")
        self.capacity = int(capacity)
        self._values = np.empty(0)
        self.total_count = 0

    def update(self, values: np.ndarray) -> None:
        values = np.asarray(values, dtype=float).ravel()
        self.total_count += values.size
        combined = np.concatenate([self._values, values])
        if combined.size > self.capacity:
            combined = np.partition(combined, combined.size - self.capacity)[-self.capacity:]
        self._values = combined

    def merge(self, other: "TailSketch") -> "TailSketch":
        if other.capacity != self.capacity:
            raise DomainError("cannot merge sketches of different capacities")
        merged = TailSketch(self.capacity)
        merged.total_count = self.total_count + other.total_count
        combined = np.concatenate([self._values, other._values])
        if combined.size > self.capacity:
            combined = np.partition(combined, combined.size - self.capacity)[-self.capacity:]
        merged._values = combined
        return merged

    def k_largest(self) -> np.ndarray:
        """Retained values, ascending."""
        return np.sort(self._values)

    def order_statistic(self, rank: int) -> float:
        """Ascending order statistic over everything seen (1-based rank).

        Only ranks falling inside the retained tail are available.
        """
        tail = self.k_largest()
        idx = tail.size - (self.total_count - rank + 1)
        if idx < 0:
            raise DomainError(
                f"rank {rank} of {self.total_count} is below the sketch window")
        return float(tail[idx])


@dataclass(frozen=True)
class SimConfig:
    """A reproducible simulation request.

    ``years_per_chunk`` is part of the stream layout: results depend on it but
    not on how many workers execute the chunks.
    """

    model: Severity
    lam: float
    years: int
    alphas: tuple[float, ...]
    seed: int
    years_per_chunk: int = 2 ** 19
    workers: int = 1

    def __post_init__(self):
        if not self.lam > 0.0:
            raise DomainError(f"lam must be positive, got {self.lam}")
        if self.years < 1:
            raise DomainError(f"years must be >= 1, got {self.years}")
        for a in self.alphas:
            if not 0.0 < a < 1.0:
                raise DomainError(f"alpha must be in (0,1), got {a}")
        low = min(self.alphas)
        if (1.0 - low) * self.years < 10.0:
            warnings.warn(
                f"only {(1.0 - low) * self.years:.1f} expected tail years at "
                f"alpha={low}; the quantile estimate will be unstable",
                stacklevel=2)


@dataclass
class SimResult:
    config: SimConfig
    var: dict[float, float]
    stderr: dict[float, float]
    sketch: TailSketch = field(repr=False)

    def rank(self, alpha: float) -> int:
        return math.ceil(alpha * self.config.years)


def _sketch_capacity(years: int, alphas: tuple[float, ...]) -> int:
    # retain everything from the smallest requested rank upward, exactly
    min_rank = math.ceil(min(alphas) * years)
    return years - min_rank + 1


def _chunk_layout(years: int, years_per_chunk: int) -> list[tuple[int, int]]:
    """(stream_id, chunk_years) pairs covering the requested horizon."""
    out = []
    sid = 0
    remaining = years
    while remaining > 0:
        n = min(years_per_chunk, remaining)
        out.append((sid, n))
        sid += 1
        remaining -= n
    return out


def _run_chunk(model: Severity, lam: float, seed: int, stream_id: int,
               chunk_years: int, capacity: int) -> np.ndarray:
    stream = RngStream(seed, stream_id)
    sums = simulate_years(stream, model, lam, chunk_years)
    if sums.size > capacity:
        sums = np.partition(sums, sums.size - capacity)[-capacity:]
    return sums


def run_simulation(config: SimConfig) -> SimResult:
    """Simulate the configured horizon and extract empirical quantiles.

    The quantile at level alpha is the ceil(alpha * years)-th ascending order
    statistic, read exactly from the tail sketch. Standard errors come from
    the asymptotic quantile variance with the density estimated by a central
    finite difference on the sketch.
    """
    capacity = _sketch_capacity(config.years, config.alphas)
    sketch = TailSketch(capacity)
    layout = _chunk_layout(config.years, config.years_per_chunk)
    if config.workers > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            futures = [pool.submit(_run_chunk, config.model, config.lam,
                                   config.seed, sid, n, capacity)
                       for sid, n in layout]
            for (sid, n), fut in zip(layout, futures):
                part = TailSketch(capacity)
                part.update(fut.result())
                part.total_count = n
                sketch = sketch.merge(part)
    else:
        for sid, n in layout:
            top = _run_chunk(config.model, config.lam, config.seed, sid, n, capacity)
            part = TailSketch(capacity)
            part.update(top)
            part.total_count = n
            sketch = sketch.merge(part)

    var = {}
    stderr = {}
    for a in config.alphas:
        r = math.ceil(a * config.years)
        var[a] = sketch.order_statistic(r)
        stderr[a] = _quantile_stderr(sketch, config.years, a, r)
    return SimResult(config, var, stderr, sketch)


def _quantile_stderr(sketch: TailSketch, years: int, alpha: float, rank: int) -> float:
    """sqrt(a(1-a)) / (f_hat sqrt(n)) with f_hat from sketch order statistics."""
    tail = sketch.k_largest()
    idx = tail.size - (years - rank + 1)
    m = max(2, int(0.02 * (years - rank + 1)))
    lo = max(0, idx - m)
    hi = min(tail.size - 1, idx + m)
    dq = tail[hi] - tail[lo]
    if dq <= 0.0:
        return math.inf
    f_hat = (hi - lo) / (years * dq)
    return math.sqrt(alpha * (1.0 - alpha)) / (f_hat * math.sqrt(years))


def estimate_var(config: SimConfig) -> dict[float, float]:
    """Map alpha -> empirical quantile for the configured simulation."""
    return run_simulation(config).var
