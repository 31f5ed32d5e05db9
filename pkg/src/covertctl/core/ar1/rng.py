"""Counter-based random streams.

A single trajectory draws from a Philox stream seeded by its 64-bit seed.
Monte Carlo trials share one keyed Philox stream per (master seed, hypothesis)
and own disjoint counter ranges of it, so a batch of trials is one vector draw
and any trial reproduces bit-for-bit on any thread and in any batch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from covertctl.exceptions import ValidationError
from covertctl.types import FloatArray, Seed

from covertctl.core.ar1.models import NoiseModel

_SMALLEST_UNIFORM = np.finfo(np.float64).tiny
_UINT64_LIMIT = 2**64
PHILOX_WORDS_PER_BLOCK = 4


@dataclass(frozen=True, slots=True)
class TrialDraws:
    """All randomness one trajectory consumes.

    Layout of the uniform stream: u[0] -> X_0, u[1..n] -> Z_1..Z_n,
    u[n+1] -> the standard normal used by a stationary reset.
    """

    x0_std_normal: float
    noise: FloatArray
    reset_normal: float


def _check_seed(value: int, name: str) -> None:
    if not 0 <= value < _UINT64_LIMIT:
        raise ValidationError(
            f"{name}={value} is not an unsigned 64-bit integer",
            valid_examples=["0", "42", str(_UINT64_LIMIT - 1)],
        )


def stream_seed(master_seed: Seed, *key: int) -> Seed:
    """Derive a 64-bit trial seed from ``master_seed`` and a spawn key."""
    _check_seed(master_seed, "master_seed")
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


def trial_draws(seed: Seed, n: int, noise: NoiseModel) -> TrialDraws:
    _check_seed(seed, "seed")
    generator = np.random.Generator(np.random.Philox(seed))
    uniforms = np.clip(generator.random(n + 2), _SMALLEST_UNIFORM, None)
    return TrialDraws(
        x0_std_normal=float(special.ndtri(uniforms[0])),
        noise=noise.sample_from_uniform(uniforms[1 : n + 1]),
        reset_normal=float(special.ndtri(uniforms[n + 1])),
    )


@dataclass(frozen=True, slots=True)
class BatchDraws:
    """TrialDraws for a batch of trials, one row (or entry) per trial."""

    x0_std_normal: FloatArray
    noise: FloatArray
    reset_normal: FloatArray

    @property
    def trials(self) -> int:
        return int(self.noise.shape[0])

    @classmethod
    def single(cls, draws: TrialDraws) -> BatchDraws:
        return cls(
            x0_std_normal=np.array([draws.x0_std_normal]),
            noise=np.asarray(draws.noise, dtype=np.float64)[None, :],
            reset_normal=np.array([draws.reset_normal]),
        )


def stream_key(master_seed: Seed, *key: int) -> int:
    """128-bit Philox key of the stream ``key`` under ``master_seed``."""
    _check_seed(master_seed, "master_seed")
    sequence = np.random.SeedSequence(entropy=master_seed, spawn_key=tuple(key))
    low, high = (int(word) for word in sequence.generate_state(2, dtype=np.uint64))
    return low | (high << 64)


def _blocks_per_trial(n: int) -> int:
    return math.ceil((n + 2) / PHILOX_WORDS_PER_BLOCK)


def batch_uniforms(key: int, first: int, count: int, n: int) -> FloatArray:
    """Uniforms of trials first..first+count-1 of a keyed stream, shape (count, n + 2).

    Trial i owns the Philox counter blocks after i * S, S = ceil((n + 2) / 4), so
    its row is the same whichever batch it is drawn in.
    """
    if first < 0 or count < 0:
        raise ValidationError(f"trial range first={first}, count={count} must be nonnegative")
    blocks = _blocks_per_trial(n)
    bit_generator = np.random.Philox(key=key, counter=first * blocks)
    words = np.random.Generator(bit_generator).random((count, blocks * PHILOX_WORDS_PER_BLOCK))
    return np.clip(words[:, : n + 2], _SMALLEST_UNIFORM, None)


def batch_draws(
    master_seed: Seed, stream: int, first: int, count: int, n: int, noise: NoiseModel
) -> BatchDraws:
    """Draws of trials first..first+count-1 of stream (master_seed, stream)."""
    uniforms = batch_uniforms(stream_key(master_seed, stream), first, count, n)
    return BatchDraws(
        x0_std_normal=special.ndtri(uniforms[:, 0]),
        noise=noise.sample_from_uniform(uniforms[:, 1 : n + 1]),
        reset_normal=special.ndtri(uniforms[:, n + 1]),
    )
