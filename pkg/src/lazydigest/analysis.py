"""
Desk-scale measurements: rho structure of iterated toy hashes and a small
statistical battery.

The battery is a sanity proxy for "looks random". Its thresholds are loose
on purpose so that a healthy stream fails far less than once in 10**4 runs.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Union

import numpy as np

from .digest_core import ExtendedDigest
from .errors import ConfigurationError, DomainError
from .hash_backend import HashSpec, toy_iterate

__all__ = [
    "CycleReport",
    "StatReport",
    "brent",
    "detect_cycle",
    "expected_cycle_length",
    "birthday_experiment",
    "BirthdayResult",
    "monobit_z",
    "byte_chi_square",
    "serial_correlation",
    "run_battery",
    "MONOBIT_LIMIT",
    "CHI_SQUARE_BAND",
    "SERIAL_LIMIT",
]

MONOBIT_LIMIT = 4.0
CHI_SQUARE_BAND = (180.0, 330.0)
SERIAL_LIMIT = 0.02

MONOBIT_MIN_BYTES = 1000
CHI_SQUARE_MIN_BYTES = 256 * 20
SERIAL_MIN_BYTES = 10**4

MAX_TOY_BITS = 24


@dataclass(frozen=True)
class CycleReport:
    """Shape of the orbit of one start point under an iterated map.

    ``tail_length`` steps lead into a loop of ``cycle_length`` states.
    ``total_steps`` counts the map evaluations spent finding them.
    """

    tail_length: int
    cycle_length: int
    total_steps: int

    @property
    def rho_length(self) -> int:
        """Distinct states visited: tail plus cycle."""
        return self.tail_length + self.cycle_length

    def __str__(self) -> str:
        return f"tail={self.tail_length} cycle={self.cycle_length} steps={self.total_steps}"


@dataclass(frozen=True)
class StatReport:
    test: str
    statistic: float
    n: int
    passed: bool
    reason: Optional[str] = None

    def __str__(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.test} n={self.n} stat={self.statistic:.6g} {verdict}"


def brent(f: Callable[[int], int], x0: int) -> CycleReport:
    """Brent's cycle detection on the sequence ``x0, f(x0), f(f(x0)), ...``."""
    steps = 0
    power = lam = 1
    tortoise = x0
    hare = f(x0)
    steps += 1
    while tortoise != hare:
        if power == lam:
            tortoise = hare
            power *= 2
            lam = 0
        hare = f(hare)
        steps += 1
        lam += 1

    # Hare runs lam steps ahead; walk both until they meet at the cycle entry.
    tortoise = hare = x0
    for _ in range(lam):
        hare = f(hare)
        steps += 1
    mu = 0
    while tortoise != hare:
        tortoise = f(tortoise)
        hare = f(hare)
        steps += 2
        mu += 1
    return CycleReport(mu, lam, steps)


def detect_cycle(spec: Union[HashSpec, Callable[[int], int]], start: int) -> CycleReport:
    """Tail and cycle length of ``start`` under the iterated toy hash ``spec``.

    A plain callable is accepted in place of a toy spec, which is handy for
    hand-built maps such as constants.
    """
    if isinstance(spec, HashSpec):
        if not spec.is_toy:
            raise ConfigurationError(f"cycle detection needs a toy hash, got {spec.name}")
        if spec.toy_bits > MAX_TOY_BITS:
            raise DomainError(f"toy_bits above {MAX_TOY_BITS} is beyond the work bound")
        if not 0 <= start < 1 << spec.toy_bits:
            raise DomainError(f"start {start} does not fit in {spec.toy_bits} bits")
        return brent(lambda s: toy_iterate(spec, s), start)
    return brent(spec, start)


def expected_cycle_length(state_bits: int) -> float:
    """Birthday-bound scale ``sqrt(pi * 2**b / 2)`` for a ``b``-bit state."""
    if state_bits < 1:
        raise DomainError(f"state_bits must be >= 1, got {state_bits}")
    # Computed in log space so that b = 256 does not overflow a float product.
    return math.exp(0.5 * (math.log(math.pi / 2) + state_bits * math.log(2)))


@dataclass(frozen=True)
class BirthdayResult:
    bits: int
    expected: float
    mean_cycle_length: float
    mean_rho_length: float
    walks: int

    @property
    def relative_error(self) -> float:
        return self.mean_cycle_length / self.expected - 1.0


def birthday_experiment(
    bits: int,
    starts: int = 200,
    tweaks: Iterable[int] = range(8),
    seed: int = 0,
) -> BirthdayResult:
    """Average cycle (and rho) length over random starts and tweaked toy hashes."""
    rng = random.Random(seed)
    cycles: list[int] = []
    rhos: list[int] = []
    for tweak in tweaks:
        spec = HashSpec.toy(bits, tweak)
        for _ in range(starts):
            report = detect_cycle(spec, rng.randrange(1 << bits))
            cycles.append(report.cycle_length)
            rhos.append(report.rho_length)
    return BirthdayResult(
        bits=bits,
        expected=expected_cycle_length(bits),
        mean_cycle_length=sum(cycles) / len(cycles),
        mean_rho_length=sum(rhos) / len(rhos),
        walks=len(cycles),
    )


def _as_array(d: Union[ExtendedDigest, bytes], n_bytes: int) -> np.ndarray:
    data = d[:n_bytes] if isinstance(d, (bytes, bytearray)) else d.read(0, n_bytes)
    if len(data) < n_bytes:
        raise DomainError(f"need {n_bytes} bytes, got {len(data)}")
    return np.frombuffer(data, dtype=np.uint8)


def monobit_z(d: Union[ExtendedDigest, bytes], n_bytes: int) -> StatReport:
    """Normalised excess of one bits over zero bits in the first ``8 * n_bytes`` bits."""
    if n_bytes < MONOBIT_MIN_BYTES:
        raise DomainError(f"monobit needs at least {MONOBIT_MIN_BYTES} bytes, got {n_bytes}")
    arr = _as_array(d, n_bytes)
    nbits = 8 * n_bytes
    ones = int(np.unpackbits(arr).sum())
    z = (ones - (nbits - ones)) / math.sqrt(nbits)
    return StatReport("monobit", z, n_bytes, abs(z) < MONOBIT_LIMIT)


def byte_chi_square(d: Union[ExtendedDigest, bytes], n_bytes: int) -> StatReport:
    """Chi-square of byte-value counts against the uniform expectation (255 dof)."""
    if n_bytes < CHI_SQUARE_MIN_BYTES:
        raise DomainError(f"chi-square needs at least {CHI_SQUARE_MIN_BYTES} bytes, got {n_bytes}")
    counts = np.bincount(_as_array(d, n_bytes), minlength=256).astype(np.float64)
    expected = n_bytes / 256
    chi2 = float(((counts - expected) ** 2).sum() / expected)
    low, high = CHI_SQUARE_BAND
    return StatReport("chi2", chi2, n_bytes, low <= chi2 <= high)


def serial_correlation(d: Union[ExtendedDigest, bytes], n_bytes: int) -> StatReport:
    """Lag-1 Pearson correlation between consecutive bytes."""
    if n_bytes < SERIAL_MIN_BYTES:
        raise DomainError(f"serial correlation needs at least {SERIAL_MIN_BYTES} bytes, got {n_bytes}")
    arr = _as_array(d, n_bytes).astype(np.float64)
    x, y = arr[:-1], arr[1:]
    dx, dy = x - x.mean(), y - y.mean()
    denom = math.sqrt(float((dx * dx).sum()) * float((dy * dy).sum()))
    if denom == 0.0:
        return StatReport("serial", math.nan, n_bytes, False, "degenerate variance")
    r = float((dx * dy).sum()) / denom
    return StatReport("serial", r, n_bytes, abs(r) < SERIAL_LIMIT)


def run_battery(d: Union[ExtendedDigest, bytes], n_bytes: int) -> list[StatReport]:
    """All three tests on the same ``n_bytes`` prefix, read once."""
    data = d[:n_bytes] if isinstance(d, (bytes, bytearray)) else d.read(0, n_bytes)
    return [monobit_z(data, n_bytes), byte_chi_square(data, n_bytes), serial_correlation(data, n_bytes)]
