"""Seeded deterministic random source with derived substreams.

Uses Python's Mersenne Twister (a fixed, fully specified algorithm with
identical output on every platform) rather than any OS-level generator.
Substreams are derived by hashing the master seed together with a string
label, so adding draws in one subsystem never perturbs another.
"""

import hashlib
import random


class EmptyRangeError(ValueError):
    pass


class RandomSource:
    """One deterministic uniform stream; substreams fork via labels."""

    __slots__ = ("seed", "label", "_r")

    def __init__(self, seed, label=""):
        self.seed = int(seed)
        self.label = label
        material = hashlib.sha256(f"{self.seed}/{label}".encode()).digest()
        self._r = random.Random(int.from_bytes(material[:16], "big"))

    def substream(self, *labels):
        """Fork an independent stream named by the given label path."""
        return RandomSource(self.seed, self.label + "/" + "/".join(str(x) for x in labels))

    def random(self):
        """Uniform real in [0, 1)."""
        return self._r.random()

    def uniform(self, a, b):
        """Uniform real in [a, b)."""
        if not b > a:
            if b == a:
                return a
            raise EmptyRangeError(f"uniform range [{a}, {b}) is empty")
        return a + (b - a) * self._r.random()

    def randint(self, n):
        """Uniform integer in [0, n)."""
        if n <= 0:
            raise EmptyRangeError(f"randint range [0, {n}) is empty")
        return self._r.randrange(n)

    def permutation(self, items):
        """Shuffled copy of `items` (or of range(items) if an int)."""
        seq = list(range(items)) if isinstance(items, int) else list(items)
        self._r.shuffle(seq)
        return seq

    @property
    def raw(self):
        """Underlying random.Random, for hot loops."""
        return self._r
