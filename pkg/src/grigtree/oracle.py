"""Brute-force ground truth at desk scale.

Two independent enumerations meet here: a breadth-first search of the
Grigorchuk group modulo level-n stabilizers (working with honest
generator products, nothing constraint-based), and an enumeration of
all depth-n decorations admitted by the window constraints.  Their
agreement at levels up to 5 is the desk-scale certificate for the
closure characterization; the module also spot-checks random generator
words against the window constraints.

Portraits act on depth-n leaves as XOR masks driven by original path
prefixes, so a quotient element is a permutation of 2^n leaves and a
product is one numpy gather.  Portrait keys (bit-packed as in
Portrait.pack) are the canonical coset names throughout.
"""

from __future__ import annotations

import random
import struct
from dataclasses import dataclass, field
from typing import Iterator

import numpy as np

from .closure import (CONSTRAINT_TABLE, in_closure_up_to,
                      simulates_grigorchuk, window_at)
from .tree import Portrait, apply
from .words import ALPHABET, word_element

__all__ = [
    "PortraitSet",
    "QuotientSet",
    "enumerate_quotient",
    "enumerate_admissible_decorations",
    "VerificationReport",
    "verify_window_constraints",
    "save_portrait_set",
    "load_portrait_set",
]

MAX_LEVEL = 5


def _check_level(n: int) -> int:
    if not 1 <= n <= MAX_LEVEL:
        raise ValueError(f"level must be between 1 and {MAX_LEVEL}, got {n}")
    return n


class PortraitSet:
    """A set of depth-n portraits, stored as sorted packed keys."""

    def __init__(self, level: int, keys: np.ndarray):
        self.level = level
        self.keys = np.unique(np.asarray(keys, dtype=np.uint32))

    def __len__(self) -> int:
        return int(self.keys.size)

    def key_of(self, item: Portrait | int) -> int:
        if isinstance(item, Portrait):
            if item.depth != self.level:
                raise ValueError(
                    f"portrait depth {item.depth} does not match set level {self.level}")
            return item.pack()
        return int(item)

    def __contains__(self, item: Portrait | int) -> bool:
        key = self.key_of(item)
        i = int(np.searchsorted(self.keys, key))
        return i < self.keys.size and int(self.keys[i]) == key

    def portraits(self) -> Iterator[Portrait]:
        for key in self.keys:
            yield Portrait.unpack(int(key), self.level)

    __iter__ = portraits

    def __repr__(self) -> str:
        return f"{type(self).__name__}(level={self.level}, size={len(self)})"


class QuotientSet(PortraitSet):
    """The quotient of the Grigorchuk group by its level-n stabilizer,
    with one generator-word witness per coset (any witness suffices)."""

    def __init__(self, level, keys, disc_keys, parents, gens):
        super().__init__(level, keys)
        self._disc_keys = disc_keys
        self._parents = parents
        self._gens = gens
        self._order = None

    def witness(self, item: Portrait | int) -> str:
        """A generator word whose depth-n portrait is the given coset key."""
        key = self.key_of(item)
        if self._order is None:
            self._order = np.argsort(self._disc_keys)
        sorted_keys = self._disc_keys[self._order]
        i = int(np.searchsorted(sorted_keys, key))
        if i >= sorted_keys.size or int(sorted_keys[i]) != key:
            raise KeyError(f"key {key} not in quotient set")
        idx = int(self._order[i])
        letters = []
        while self._parents[idx] >= 0:
            letters.append(ALPHABET[self._gens[idx]])
            idx = int(self._parents[idx])
        return "".join(reversed(letters))


def _generator_perms(n: int) -> list[np.ndarray]:
    """Leaf permutations of a, b, c, d at depth n (perm[i] = image of
    leaf i, leaves read as length-n binary strings)."""
    perms = []
    for letter in ALPHABET:
        g = word_element(letter)
        images = [int(apply(g, format(i, f"0{n}b")), 2) for i in range(1 << n)]
        perms.append(np.array(images, dtype=np.uint8))
    return perms


def _pack_perms(perms: np.ndarray, n: int) -> np.ndarray:
    """Portrait keys of a batch of leaf permutations, shape (k, 2^n).

    The activity at level-m vertex i is the last bit of the image of
    its left child, read off the image of that child's first leaf.
    """
    keys = np.zeros(perms.shape[0], dtype=np.uint32)
    for m in range(n):
        shift = n - m - 1
        for i in range(1 << m):
            col = i << (n - m)
            bit = ((perms[:, col] >> shift) & 1).astype(np.uint32)
            keys |= bit << ((1 << m) - 1 + i)
    return keys


def _perms_from_keys(keys: np.ndarray, n: int) -> np.ndarray:
    """Inverse of _pack_perms: rebuild leaf permutations from keys.

    A portrait sends leaf x1..xn to y1..yn with y_m = x_m xor the
    activity at the original prefix x1..x_{m-1}, so each key bit XORs a
    block of leaf images.
    """
    out = np.tile(np.arange(1 << n, dtype=np.uint8), (keys.shape[0], 1))
    for m in range(n):
        width = 1 << (n - m)
        flip = np.uint8(1 << (n - m - 1))
        for i in range(1 << m):
            bit = ((keys >> ((1 << m) - 1 + i)) & 1).astype(np.uint8)
            out[:, i * width : (i + 1) * width] ^= (bit * flip)[:, None]
    return out


def enumerate_quotient(n: int) -> QuotientSet:
    """BFS of the Grigorchuk group acting on depth-n leaves, starting
    from the identity and right-multiplying by the four generators;
    returns every reachable coset with a witness word."""
    _check_level(n)
    gen_perms = _generator_perms(n)
    disc_keys = [np.zeros(1, dtype=np.uint32)]
    parents = [np.full(1, -1, dtype=np.int64)]
    gens = [np.zeros(1, dtype=np.uint8)]
    visited = np.zeros(1, dtype=np.uint32)
    frontier_keys = visited
    frontier_idx = np.zeros(1, dtype=np.int64)
    next_global = 1
    while frontier_keys.size:
        perms = _perms_from_keys(frontier_keys, n)
        batch_keys, batch_parents, batch_gens = [], [], []
        for gi, q in enumerate(gen_perms):
            batch_keys.append(_pack_perms(q[perms], n))
            batch_parents.append(frontier_idx)
            batch_gens.append(np.full(frontier_keys.size, gi, dtype=np.uint8))
        keys = np.concatenate(batch_keys)
        uniq, first = np.unique(keys, return_index=True)
        fresh = ~np.isin(uniq, visited, assume_unique=True)
        new_keys = uniq[fresh]
        pick = first[fresh]
        disc_keys.append(new_keys)
        parents.append(np.concatenate(batch_parents)[pick])
        gens.append(np.concatenate(batch_gens)[pick])
        visited = np.union1d(visited, new_keys)
        frontier_keys = new_keys
        frontier_idx = np.arange(next_global, next_global + new_keys.size)
        next_global += new_keys.size
    return QuotientSet(n, visited,
                       np.concatenate(disc_keys),
                       np.concatenate(parents),
                       np.concatenate(gens))


def _admissible_exhaustive(n: int) -> np.ndarray:
    """Filter every depth-n decoration through the window constraints
    (viable up to n = 4, i.e. 2^15 candidates)."""
    total_bits = (1 << n) - 1
    if n < 4:
        return np.arange(1 << total_bits, dtype=np.uint32)
    window_roots = [format(i, f"0{m}b") if m else ""
                    for m in range(n - 3) for i in range(1 << m)]
    keys = []
    for key in range(1 << total_bits):
        p = Portrait.unpack(key, n)
        if all(simulates_grigorchuk(window_at(p, u)) for u in window_roots):
            keys.append(key)
    return np.array(keys, dtype=np.uint32)


# lookup tables: index (alpha0<<2 | alpha1<<1 | beta10) -> forced betas
_B00 = np.zeros(8, dtype=np.uint32)
_B01 = np.zeros(8, dtype=np.uint32)
_B11 = np.zeros(8, dtype=np.uint32)
for _row in CONSTRAINT_TABLE:
    _i = (_row[0] << 2) | (_row[1] << 1) | _row[4]
    _B00[_i], _B01[_i], _B11[_i] = _row[2], _row[3], _row[5]


def _admissible_level5(base4: np.ndarray) -> np.ndarray:
    """Extend every admissible depth-4 key by all admissible level-4
    rows.  Below each level-1 vertex the window leaves the five bits at
    relative positions 001, 011, 101, 111, 110 free and forces the
    other three, so each base key gains 10 free bits."""
    combos = np.arange(1 << 10, dtype=np.uint32)
    free = [(combos >> j) & 1 for j in range(10)]
    keys = base4[:, None].astype(np.uint64)
    out = np.broadcast_to(keys, (base4.size, combos.size)).copy()
    for u in (0, 1):
        a001, a011, a101, a111, a110 = free[5 * u : 5 * u + 5]
        w_a0 = (keys >> (3 + 2 * u)) & 1
        w_a1 = (keys >> (4 + 2 * u)) & 1
        w00 = (keys >> (7 + 4 * u)) & 1
        w01 = (keys >> (8 + 4 * u)) & 1
        w10 = (keys >> (9 + 4 * u)) & 1
        w11 = (keys >> (10 + 4 * u)) & 1
        b10 = (w10 + a110 + a111) & 1
        row = ((w_a0 << 2) | (w_a1 << 1) | b10).astype(np.intp)
        a010 = (_B00[row] + w00 + a011) & 1
        a000 = (_B01[row] + w01 + a001) & 1
        a100 = (_B11[row] + w11 + a101) & 1
        rels = (a000, a001, a010, a011, a100, a101, a110, a111)
        for r, bit in enumerate(rels):
            out |= bit.astype(np.uint64) << (15 + 8 * u + r)
    return out.ravel().astype(np.uint32)


def enumerate_admissible_decorations(n: int) -> PortraitSet:
    """All depth-n portraits whose complete depth-3 windows (rooted at
    every vertex of level <= n-4) satisfy the window constraints.  Up to
    depth 4 this is an exhaustive filter; depth 5 extends the depth-4
    set along the free decoration bits."""
    _check_level(n)
    if n <= 4:
        return PortraitSet(n, _admissible_exhaustive(n))
    base4 = _admissible_exhaustive(4)
    return PortraitSet(5, _admissible_level5(base4))


@dataclass
class VerificationReport:
    """Outcome of sampling random generator words against the window
    constraints of their portraits to depth 8."""

    samples: int
    max_len: int
    seed: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        return (f"seed={self.seed} samples={self.samples} "
                f"max_len={self.max_len} violations={len(self.violations)}")


def verify_window_constraints(samples: int, max_len: int, seed: int = 0) -> VerificationReport:
    """Sample random generator words (uniform letters, lengths uniform
    in [0, max_len]) and check that the root window and every section
    window of the portrait to depth 8 is admissible.  Any counterexample
    word is listed in the report; none is expected."""
    rng = random.Random(seed)
    report = VerificationReport(samples=samples, max_len=max_len, seed=seed)
    for _ in range(samples):
        length = rng.randint(0, max_len)
        word = "".join(rng.choice(ALPHABET) for _ in range(length))
        if not in_closure_up_to(word_element(word), 8):
            report.violations.append(word)
    return report


_WIDTH_DTYPES = {1: np.dtype("<u1"), 2: np.dtype("<u2"), 4: np.dtype("<u4")}


def _key_width(level: int) -> int:
    bits = (1 << level) - 1
    for width in (1, 2, 4):
        if bits <= 8 * width:
            return width
    raise ValueError(f"level {level} too deep for the cache format")


def save_portrait_set(path, pset: PortraitSet) -> None:
    """Write a flat binary cache: 8-byte header (level, count, both
    little-endian uint32), then the sorted keys at the fixed width the
    level requires (1, 2 or 4 bytes)."""
    dtype = _WIDTH_DTYPES[_key_width(pset.level)]
    with open(path, "wb") as fh:
        fh.write(struct.pack("<II", pset.level, len(pset)))
        fh.write(np.ascontiguousarray(pset.keys.astype(dtype)).tobytes())


def load_portrait_set(path) -> PortraitSet:
    """Read a cache written by save_portrait_set."""
    with open(path, "rb") as fh:
        header = fh.read(8)
        if len(header) != 8:
            raise ValueError("truncated portrait cache header")
        level, count = struct.unpack("<II", header)
        _check_level(level)
        dtype = _WIDTH_DTYPES[_key_width(level)]
        body = fh.read()
    keys = np.frombuffer(body, dtype=dtype)
    if keys.size != count:
        raise ValueError(
            f"portrait cache declares {count} keys but contains {keys.size}")
    if count and not np.all(keys[1:] > keys[:-1]):
        raise ValueError("portrait cache keys are not sorted ascending")
    return PortraitSet(level, keys.astype(np.uint32))
