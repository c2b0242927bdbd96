"""Hashtag-permutation addressing.

Every stored object is addressed by an ordered permutation of a fixed
alphabet of n hashtags, so the address space has n! elements.  Addresses
are produced by a deterministic SHA-256 rejection sampler: replaying the
stream from a seed permutation for a known number of iterations
regenerates any address, which is what lets the disc store a small
counter instead of a dictionary.  Lexicographic rank/unrank maps
permutations to integer codes in [0, n!-1] on demand, never
materializing the dictionary.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from math import factorial
from typing import Callable, Iterable, Optional, Sequence

from .errors import (
    AllocationStall,
    CodeOutOfRange,
    ConfigInvalid,
    CounterOverflow,
    InvalidCounter,
    NotAPermutation,
    SizeMismatch,
    UnknownTag,
)

Perm = tuple[int, ...]


def validate_permutation(elems: Iterable[int]) -> Perm:
    """Return elems as a tuple, raising NotAPermutation unless it is a
    permutation of 0..n-1 with n >= 1."""
    perm = tuple(int(x) for x in elems)
    n = len(perm)
    if n == 0 or sorted(perm) != list(range(n)):
        raise NotAPermutation(f"not a permutation of 0..n-1: {perm!r}")
    return perm


class HashtagAlphabet:
    """Ordered set of n distinct hashtags, fixed when the disc is formatted.

    Index i <-> tags[i] is a stable bijection; permutations of the index
    range are rendered through it to become post addresses.
    """

    def __init__(self, tags: Sequence[str]):
        tags = tuple(tags)
        if not tags:
            raise ConfigInvalid("alphabet must contain at least one hashtag")
        for tag in tags:
            if len(tag) < 2 or not tag.startswith("#"):
                raise ConfigInvalid(f"bad hashtag {tag!r}: must be #<tag>")
            if any(ch.isspace() for ch in tag) or "," in tag:
                raise ConfigInvalid(f"bad hashtag {tag!r}: whitespace/comma not allowed")
        if len(set(tags)) != len(tags):
            raise ConfigInvalid("alphabet tags must be pairwise distinct")
        self.tags = tags
        self._index = {tag: i for i, tag in enumerate(tags)}

    def __len__(self) -> int:
        return len(self.tags)

    def __eq__(self, other) -> bool:
        return isinstance(other, HashtagAlphabet) and self.tags == other.tags

    def __repr__(self) -> str:
        return f"HashtagAlphabet({list(self.tags)!r})"

    def index(self, tag: str) -> int:
        try:
            return self._index[tag]
        except KeyError:
            raise UnknownTag(f"{tag!r} is not in the alphabet") from None

    @classmethod
    def default(cls, n: int) -> "HashtagAlphabet":
        """Demo alphabet #tag0..#tag{n-1}; real deployments supply their own."""
        return cls(tuple(f"#tag{i}" for i in range(n)))


def perm_to_hashtags(perm: Sequence[int], alphabet: HashtagAlphabet) -> tuple[str, ...]:
    """Render a permutation as the ordered hashtag sequence it addresses."""
    perm = validate_permutation(perm)
    if len(perm) != len(alphabet):
        raise SizeMismatch(f"permutation of {len(perm)} vs alphabet of {len(alphabet)}")
    return tuple(alphabet.tags[i] for i in perm)


def hashtags_to_perm(seq: Sequence[str], alphabet: HashtagAlphabet) -> Perm:
    """Exact inverse of perm_to_hashtags."""
    indices = tuple(alphabet.index(tag) for tag in seq)
    if len(indices) != len(alphabet) or len(set(indices)) != len(indices):
        raise NotAPermutation(f"{list(seq)!r} is not a permutation of the alphabet")
    return indices


# -- lexicographic rank / unrank ---------------------------------------------

def rank(perm: Sequence[int]) -> int:
    """Position of perm in the lexicographic order of all n! permutations."""
    perm = validate_permutation(perm)
    n = len(perm)
    code = 0
    for i, v in enumerate(perm):
        smaller_right = sum(1 for u in perm[i + 1:] if u < v)
        code += smaller_right * factorial(n - 1 - i)
    return code


def unrank(code: int, n: int) -> Perm:
    """Permutation of 0..n-1 at lexicographic position code."""
    if n < 1:
        raise NotAPermutation("n must be >= 1")
    if not 0 <= code < factorial(n):
        raise CodeOutOfRange(f"code {code} out of range for n={n} (n! = {factorial(n)})")
    remaining = list(range(n))
    out = []
    for i in range(n - 1, -1, -1):
        digit, code = divmod(code, factorial(i))
        out.append(remaining.pop(digit))
    return tuple(out)


# -- the address sampler -------------------------------------------------------
#
# One iteration: i += 1; pick = SHA256("<current_input>;<i>") as a big-endian
# integer, mod n; append pick to the partial permutation iff unseen.  A
# permutation completes when the partial reaches length n; completion reseeds
# current_input from the completed permutation (comma-joined decimals) and the
# iteration count at that instant is the address's counter.  Rejected picks
# still consume iterations, so stored counters are always completion points
# and counter 0 (fewer than n iterations) never denotes a real address.

def _joined(perm: Sequence[int]) -> str:
    return ",".join(str(v) for v in perm)


@dataclass(frozen=True)
class SamplerState:
    """Position in the global address stream; a pure function of (seed, iteration)."""

    seed: Perm
    iteration: int = 0
    partial: Perm = ()
    current_input: str = ""
    limit: Optional[int] = None  # max iteration value, typically 2^p - 1

    @classmethod
    def fresh(cls, seed: Sequence[int], limit: Optional[int] = None) -> "SamplerState":
        seed = validate_permutation(seed)
        return cls(seed=seed, iteration=0, partial=(), current_input=_joined(seed), limit=limit)


def sampler_advance(state: SamplerState) -> tuple[Perm, int, SamplerState]:
    """Run the stream to the next completed permutation.

    Returns (permutation, completion counter, state positioned just after
    the completion).  Raises CounterOverflow if the iteration count would
    pass state.limit first.
    """
    n = len(state.seed)
    current = state.current_input
    partial = list(state.partial)
    i = state.iteration
    limit = state.limit
    sha = hashlib.sha256
    while True:
        if limit is not None and i + 1 > limit:
            raise CounterOverflow(f"iteration {i + 1} exceeds bound {limit}")
        i += 1
        digest = sha(f"{current};{i}".encode("ascii")).digest()
        pick = int.from_bytes(digest, "big") % n
        if pick not in partial:
            partial.append(pick)
        if len(partial) == n:
            perm = tuple(partial)
            new_state = SamplerState(
                seed=state.seed,
                iteration=i,
                partial=(),
                current_input=_joined(perm),
                limit=limit,
            )
            return perm, i, new_state


class ReplayCursor:
    """Fresh walk of the address stream that resolves completion counters.

    Chain traversals resolve many counters in increasing order; the cursor
    keeps the walk's position so each traversal costs one pass over the
    stream instead of one pass per block.  Asking for a counter behind the
    current position restarts the walk from the seed, so the result always
    equals sampler_replay(seed, counter).
    """

    def __init__(self, seed: Sequence[int]):
        self._seed = validate_permutation(seed)
        self._state = SamplerState.fresh(self._seed)
        self._last: Optional[tuple[int, Perm]] = None
        self.iterations = 0  # total hash evaluations consumed by this cursor

    def resolve(self, counter: int) -> Perm:
        if counter <= 0:
            raise InvalidCounter(f"counter {counter} is the NULL pointer")
        if counter < self._state.iteration:
            self._state = SamplerState.fresh(self._seed)
            self._last = None
        if self._last is not None and self._last[0] == counter:
            return self._last[1]
        while self._state.iteration < counter:
            before = self._state.iteration
            perm, completed_at, self._state = sampler_advance(self._state)
            self.iterations += completed_at - before
            self._last = (completed_at, perm)
            if completed_at == counter:
                return perm
        raise InvalidCounter(f"counter {counter} is not a completion point")


def sampler_replay(seed: Sequence[int], counter: int) -> Perm:
    """Permutation whose generation completed at exactly `counter` iterations
    of a fresh stream seeded by `seed`."""
    return ReplayCursor(seed).resolve(counter)


def default_stall_limit(n: int) -> int:
    return 10 * factorial(n) if n <= 8 else 10 ** 6


def allocate_address(
    state: SamplerState,
    occupied: Callable[[Perm], bool],
    max_occupied: Optional[int] = None,
) -> tuple[Perm, int, SamplerState]:
    """Advance the stream until a permutation the predicate reports free.

    Occupied emissions are discarded but their iterations stay consumed,
    which is what lets freed addresses return to the pool later in the
    stream.  Raises AllocationStall after max_occupied consecutive occupied
    emissions (default 10*n! for n <= 8, else 10^6).
    """
    if max_occupied is None:
        max_occupied = default_stall_limit(len(state.seed))
    misses = 0
    while True:
        perm, counter, state = sampler_advance(state)
        if not occupied(perm):
            return perm, counter, state
        misses += 1
        if misses >= max_occupied:
            raise AllocationStall(
                f"{misses} consecutive occupied addresses (n={len(state.seed)})"
            )
