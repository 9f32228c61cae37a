"""Counter-based deterministic randomness.

Every random quantity in the package is a pure function of ``(seed, stream_id,
tag, counters)``.  Counters are hashed with a SplitMix64 finalizer chain and
mapped to the open unit interval, so any single draw can be recomputed without
replaying a stream.  This is what makes the array samplers projective: the
latent attached to an index does not depend on how many other indices were
sampled before it.

Sequential samplers that need an ordinary generator (the Mondrian chain, for
example) get a Philox ``numpy.random.Generator`` keyed from the same source.
"""
from __future__ import annotations

import hashlib
import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import ContractError, ParameterError

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
_M1 = 0xBF58476D1CE4E5B9
_M2 = 0x94D049BB133111EB
_SEED_SALT = 0x6A09E667F3BCC909
_STREAM_SALT = 0xBB67AE8584CAA73B

_U_GOLDEN = np.uint64(GOLDEN)
_U_M1 = np.uint64(_M1)
_U_M2 = np.uint64(_M2)
_S30, _S27, _S31, _S11 = (np.uint64(s) for s in (30, 27, 31, 11))
_TWO_M53 = 2.0 ** -53


def mix64(z: int) -> int:
    """SplitMix64 finalizer on a Python integer."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * _M1) & MASK64
    z = ((z ^ (z >> 27)) * _M2) & MASK64
    return z ^ (z >> 31)


def mix64_array(z: np.ndarray) -> np.ndarray:
    """SplitMix64 finalizer, vectorized; returns a new uint64 array."""
    z = np.array(z, dtype=np.uint64, copy=True)
    z ^= z >> _S30
    z *= _U_M1
    z ^= z >> _S27
    z *= _U_M2
    z ^= z >> _S31
    return z


def tag_hash(tag: str) -> int:
    return int.from_bytes(hashlib.blake2b(tag.encode(), digest_size=8).digest(), "little")


def _absorb(h: np.ndarray, c) -> np.ndarray:
    c = np.asarray(c)
    if c.dtype.kind == "i" and c.size and c.min() < 0:
        raise ContractError("counters must be non-negative")
    z = c.astype(np.uint64)
    z += np.uint64(1)
    z = z * _U_GOLDEN
    z = h + z
    z ^= z >> _S30
    z *= _U_M1
    z ^= z >> _S27
    z *= _U_M2
    z ^= z >> _S31
    return z


def to_unit(h: np.ndarray) -> np.ndarray:
    """Map 64-bit hashes to floats strictly inside (0, 1)."""
    return ((h >> _S11).astype(np.float64) + 0.5) * _TWO_M53


def keyed_uniforms(base, counters: Sequence) -> np.ndarray:
    """Uniforms on (0, 1) for the counter sequence(s), broadcast against ``base``.

    ``base`` is a uint64 scalar or array (one entry per independent source);
    each element of ``counters`` is an int or int array. All broadcast together.
    """
    base = np.asarray(base, dtype=np.uint64)
    counters = [np.asarray(c) for c in counters]
    shape = np.broadcast_shapes(base.shape, *(c.shape for c in counters))
    # 1-d working arrays: 0-d uint64 arithmetic falls back to scalars that warn on wraparound
    h = np.atleast_1d(base)
    for c in counters:
        h = _absorb(h, np.atleast_1d(c))
    if not counters:
        h = mix64_array(h)
    return to_unit(h).reshape(shape)


@dataclass(frozen=True)
class RandomSource:
    """A seed plus a stream id; distinct stream ids give independent streams."""

    seed: int = 0
    stream_id: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_id"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or not 0 <= int(v) <= MASK64:
                raise ParameterError(f"{name} must be an unsigned 64-bit integer, got {v!r}")

    @property
    def key(self) -> int:
        return mix64(mix64(int(self.seed) ^ _SEED_SALT) ^ mix64(int(self.stream_id) ^ _STREAM_SALT))

    def base(self, tag: str) -> int:
        return mix64(self.key ^ tag_hash(tag))

    def spawn(self, index: int) -> "RandomSource":
        """Child source for replicate ``index``; children of one parent never collide."""
        return RandomSource(self.seed, mix64((int(self.stream_id) + (int(index) + 1) * GOLDEN) & MASK64))

    def spawn_bases(self, count: int, tag: str) -> np.ndarray:
        """``base(tag)`` of ``spawn(t)`` for t < count, as a uint64 array."""
        t = np.arange(1, count + 1, dtype=np.uint64)
        streams = mix64_array(np.uint64(int(self.stream_id)) + t * _U_GOLDEN)
        seed_part = np.uint64(mix64(int(self.seed) ^ _SEED_SALT))
        keys = mix64_array(seed_part ^ mix64_array(streams ^ np.uint64(_STREAM_SALT)))
        return mix64_array(keys ^ np.uint64(tag_hash(tag)))

    def uniforms(self, tag: str, *counters) -> np.ndarray:
        return keyed_uniforms(np.uint64(self.base(tag)), counters)

    def uniform(self, tag: str, *counters: int) -> float:
        return float(self.uniforms(tag, *counters).reshape(-1)[0])

    def generator(self, tag: str = "generator") -> np.random.Generator:
        return np.random.Generator(np.random.Philox(key=self.base(tag)))


def as_source(rng) -> RandomSource:
    """Accept a RandomSource or a bare integer seed."""
    if isinstance(rng, RandomSource):
        return rng
    if rng is None:
        return RandomSource()
    if isinstance(rng, (int, np.integer)):
        return RandomSource(int(rng))
    raise ParameterError(f"expected RandomSource or integer seed, got {type(rng).__name__}")


# ---------------------------------------------------------------------------
# latent keys

LATENT_TAG = "latent"


@dataclass(frozen=True)
class LatentKey:
    """Canonical index of a latent uniform.

    ``classes`` holds one sorted tuple of positive indices per class of the
    dimension partition.  A joint key has one class (a multiset), a separate
    key has one class of size <= 1 per dimension (the empty class plays the
    role of the zero padding), a pi-key has one multiset per class.
    """

    classes: tuple

    def __post_init__(self):
        if not isinstance(self.classes, tuple) or not self.classes:
            raise ContractError("latent key needs at least one class")
        for cls in self.classes:
            if not isinstance(cls, tuple):
                raise ContractError(f"class {cls!r} is not a tuple")
            if any((not isinstance(e, (int, np.integer))) or e < 1 for e in cls):
                raise ContractError(f"class {cls!r} must hold positive integer indices")
            if list(cls) != sorted(cls):
                raise ContractError(f"class {cls!r} is not sorted (non-canonical multiset)")

    def sequence(self) -> list[int]:
        seq = [len(self.classes)]
        for cls in self.classes:
            seq.append(len(cls))
            seq.extend(int(e) for e in cls)
        return seq


def joint_key(*indices: int) -> LatentKey:
    """Multiset key for the jointly exchangeable case; order of ``indices`` is irrelevant."""
    return LatentKey((tuple(sorted(int(i) for i in indices)),))


def separate_key(vector: Iterable[int]) -> LatentKey:
    """Zero-padded vector key for the separately exchangeable case."""
    return LatentKey(tuple(() if int(v) == 0 else (int(v),) for v in vector))


def pi_key(*multisets: Iterable[int]) -> LatentKey:
    return LatentKey(tuple(tuple(sorted(int(e) for e in m)) for m in multisets))


def latent_uniforms(base, classes: Sequence[np.ndarray]) -> np.ndarray:
    """Vectorized latent values.

    ``classes[c]`` is an integer array of shape ``(..., L_c)`` holding the
    already-sorted multiset of class ``c`` for every entry (``L_c`` may be 0).
    The hash chain is identical to :meth:`LatentStore.lookup`.
    """
    counters: list = [len(classes)]
    for cls in classes:
        cls = np.asarray(cls)
        counters.append(cls.shape[-1])
        counters.extend(cls[..., t] for t in range(cls.shape[-1]))
    return keyed_uniforms(base, counters)


@dataclass
class LatentStore:
    """Lazily generated, cached collection of i.i.d. uniforms indexed by canonical keys."""

    rng: RandomSource = field(default_factory=RandomSource)
    _cache: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    @property
    def base(self) -> int:
        return self.rng.base(LATENT_TAG)

    def lookup(self, key: LatentKey) -> float:
        if not isinstance(key, LatentKey):
            raise ContractError(f"latent keys must be LatentKey instances, got {type(key).__name__}")
        try:
            return self._cache[key]
        except KeyError:
            pass
        value = float(keyed_uniforms(np.uint64(self.base), key.sequence())[()])
        with self._lock:
            # first writer wins; a racing writer computed the same value anyway
            return self._cache.setdefault(key, value)

    def __len__(self):
        return len(self._cache)
