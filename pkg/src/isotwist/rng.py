"""Portable seeded sampling.

Python's :mod:`random` is avoided on purpose: its algorithms are an
implementation detail, while splitmix64 is a fixed 64-bit recurrence, so a
counterexample printed for a seed reproduces on every platform.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Element, GradedPresentation, all_words, word_element
from .scalars import Gaussian, Scalar

MASK64 = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in ``[0, n)`` by rejection."""
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def integer(self, lo: int, hi: int) -> int:
        """Uniform integer in ``[lo, hi]``."""
        return lo + self.below(hi - lo + 1)

    def choice(self, seq):
        return seq[self.below(len(seq))]

    def fork(self, tag: str) -> "SplitMix64":
        """Independent stream for a named sub-check."""
        h = 0
        for ch in tag.encode():
            h = (h * 1099511628211 + ch) & MASK64
        return SplitMix64(self.state ^ h)


_WORD_CACHE: dict = {}


def words_upto(p: GradedPresentation, max_length: int) -> list:
    key = (p.names, max_length)
    if key not in _WORD_CACHE:
        _WORD_CACHE[key] = all_words(p, max_length)
    return _WORD_CACHE[key]


def random_word(rng: SplitMix64, p: GradedPresentation, max_length: int, min_length: int = 0):
    """Uniform over normal-ordered words of length in ``[min_length, max_length]``."""
    words = words_upto(p, max_length)
    if min_length:
        words = [w for w in words if sum(w) >= min_length]
    return rng.choice(words)


_COEFFS = (
    Gaussian(1), Gaussian(-1), Gaussian(2), Gaussian(0, 1), Gaussian(0, -1),
    Gaussian(Fraction(1, 2)), Gaussian(1, 1), Gaussian(-3, Fraction(1, 3)),
)


def random_scalar(rng: SplitMix64, max_terms: int = 2, max_power: int = 2) -> Scalar:
    terms = {}
    for _ in range(rng.integer(1, max_terms)):
        k = rng.integer(-max_power, max_power)
        terms[k] = rng.choice(_COEFFS)
    return Scalar(terms)


def random_homogeneous(rng: SplitMix64, p: GradedPresentation, max_length: int) -> Element:
    """A random basis word with a random nonzero coefficient."""
    w = random_word(rng, p, max_length)
    s = random_scalar(rng)
    while not s:
        s = random_scalar(rng)
    return word_element(p, w, s)


def random_element(rng: SplitMix64, p: GradedPresentation, max_length: int, max_terms: int = 3) -> Element:
    """Sum of a few random scaled words, generally of mixed degree."""
    total = p.zero()
    for _ in range(rng.integer(1, max_terms)):
        total = total + word_element(p, random_word(rng, p, max_length), random_scalar(rng))
    return total
