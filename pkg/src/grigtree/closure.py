"""Near-top portrait constraints and closure membership.

For an automorphism g, write alpha_u for its decoration bit at vertex u
and, for each level-2 vertex xy,

    beta_xy = alpha_xy + alpha_{x y' 0} + alpha_{x y' 1}   (mod 2),

where y' is the letter different from y.  The six bits
(alpha_0, alpha_1, beta_00, beta_01, beta_10, beta_11) of any element of
the Grigorchuk group fall into exactly eight admissible patterns
(CONSTRAINT_TABLE below); a window of decoration bits satisfying them is
said to *simulate* the group.  An automorphism belongs to the closure of
the group in Aut(T) exactly when the window below every vertex
simulates it, which this module checks to finite depth.  The same
free/forced bit count drives the exact Hausdorff-dimension estimate
(-> 5/8).
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction

from .tree import Automorphism, Portrait, portrait_of

__all__ = [
    "BetaProfile",
    "CONSTRAINT_TABLE",
    "WindowDecoration",
    "ClosureVerdict",
    "beta_profile",
    "window_at",
    "simulates_grigorchuk",
    "in_closure_up_to",
    "portrait_closure_verdict",
    "within_sixteenth_of_G",
    "complete_window",
    "sample_closure_element",
    "free_bit_count",
    "hausdorff_estimate",
]


@dataclass(frozen=True)
class BetaProfile:
    """The six near-top bits of a portrait: level-1 activities and the four
    beta combinations of levels 2-3."""

    alpha0: int
    alpha1: int
    beta00: int
    beta01: int
    beta10: int
    beta11: int

    def as_tuple(self) -> tuple[int, int, int, int, int, int]:
        return (self.alpha0, self.alpha1, self.beta00, self.beta01,
                self.beta10, self.beta11)


#: The eight admissible (alpha0, alpha1 | beta00, beta01, beta10, beta11)
#: patterns: two complementary beta-patterns per (alpha0, alpha1) pair.
CONSTRAINT_TABLE: frozenset[tuple[int, int, int, int, int, int]] = frozenset({
    (0, 0, 0, 0, 0, 0), (0, 0, 1, 1, 1, 1),
    (0, 1, 1, 0, 0, 0), (0, 1, 0, 1, 1, 1),
    (1, 0, 0, 0, 1, 0), (1, 0, 1, 1, 0, 1),
    (1, 1, 0, 1, 1, 0), (1, 1, 1, 0, 0, 1),
})

# (alpha0, alpha1, beta10) determines the admissible row uniquely.
_ROW_BY_ALPHA_B10: dict[tuple[int, int, int], tuple[int, int, int]] = {
    (r[0], r[1], r[4]): (r[2], r[3], r[5]) for r in CONSTRAINT_TABLE
}
assert len(_ROW_BY_ALPHA_B10) == 8


@dataclass(frozen=True)
class WindowDecoration:
    """The 14 decoration bits of the three levels below a vertex:
    level1 = (a_0, a_1), level2 = (a_00, a_01, a_10, a_11),
    level3 = (a_000, ..., a_111), all in lexicographic order and relative
    to the window root."""

    level1: tuple[int, int]
    level2: tuple[int, int, int, int]
    level3: tuple[int, int, int, int, int, int, int, int]

    def __post_init__(self):
        for name, row, size in (("level1", self.level1, 2),
                                ("level2", self.level2, 4),
                                ("level3", self.level3, 8)):
            if len(row) != size or any(b not in (0, 1) for b in row):
                raise ValueError(f"{name} must be {size} bits")


def window_at(p: Portrait, u: str = "") -> WindowDecoration:
    """The depth-3 window below vertex u, read out of a portrait
    (requires p.depth >= |u| + 4)."""
    if p.depth < len(u) + 4:
        raise ValueError(
            f"portrait depth {p.depth} too shallow for a window below {u!r}")
    return WindowDecoration(
        (p.bit(u + "0"), p.bit(u + "1")),
        tuple(p.bit(u + f"{i:02b}") for i in range(4)),
        tuple(p.bit(u + f"{i:03b}") for i in range(8)),
    )


def beta_profile(p: Portrait) -> BetaProfile:
    """The BetaProfile of the root window of a portrait (depth >= 4)."""
    return _window_profile(window_at(p, ""))


def _window_profile(w: WindowDecoration) -> BetaProfile:
    a00, a01, a10, a11 = w.level2
    a000, a001, a010, a011, a100, a101, a110, a111 = w.level3
    return BetaProfile(
        alpha0=w.level1[0],
        alpha1=w.level1[1],
        beta00=a00 ^ a010 ^ a011,
        beta01=a01 ^ a000 ^ a001,
        beta10=a10 ^ a110 ^ a111,
        beta11=a11 ^ a100 ^ a101,
    )


def simulates_grigorchuk(w: WindowDecoration) -> bool:
    """Does this window's profile match an admissible pattern?"""
    return _window_profile(w).as_tuple() in CONSTRAINT_TABLE


@dataclass(frozen=True)
class ClosureVerdict:
    """Outcome of a finite-depth closure check.  Falsy on violation;
    `violation` then names the shallowest (then lexicographically first)
    vertex whose window fails."""

    ok: bool
    depth: int
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok

    def format(self) -> str:
        if self.ok:
            return f"OK depth={self.depth}"
        return f"VIOLATION vertex={self.violation or '-'}"


def portrait_closure_verdict(p: Portrait) -> ClosureVerdict:
    """Check every complete window of a portrait (depth >= 4)."""
    if p.depth < 4:
        raise ValueError("closure checks need portrait depth >= 4")
    for level in range(p.depth - 3):
        for i in range(1 << level):
            u = format(i, f"0{level}b") if level else ""
            if not simulates_grigorchuk(window_at(p, u)):
                return ClosureVerdict(False, p.depth, u)
    return ClosureVerdict(True, p.depth)


def in_closure_up_to(g: Automorphism, depth: int) -> ClosureVerdict:
    """Finite-depth closure membership: every window below a vertex of
    length <= depth-4 must simulate the group.  A passing verdict at
    depth d is necessary (not sufficient) for closure membership."""
    if depth < 4:
        raise ValueError("closure checks need depth >= 4")
    return portrait_closure_verdict(portrait_of(g, depth))


def within_sixteenth_of_G(g: Automorphism, quotient=None) -> bool:
    """Is g within distance 1/16 of the Grigorchuk group, i.e. does its
    depth-4 portrait match that of some group element?

    With `quotient` (a level-4 portrait set, e.g. from the oracle
    module) the check is by direct membership; without it, by the
    equivalent root-window constraint.
    """
    p = portrait_of(g, 4)
    if quotient is not None:
        if getattr(quotient, "level", 4) != 4:
            raise ValueError("quotient cache must be at level 4")
        return p in quotient
    return simulates_grigorchuk(window_at(p, ""))


def complete_window(
    level1: tuple[int, int],
    level2: tuple[int, int, int, int],
    free: tuple[int, int, int, int, int],
) -> WindowDecoration:
    """Fill in the three forced level-3 bits of a window.

    `free` holds the freely chosen level-3 bits in the order
    (a_001, a_011, a_101, a_111, a_110).  The pair below vertex 11 fixes
    beta10; the unique admissible pattern with this (alpha0, alpha1,
    beta10) then forces a_000, a_010 and a_100.  The result always
    simulates the group.
    """
    a0, a1 = level1
    a00, a01, a10, a11 = level2
    a001, a011, a101, a111, a110 = free
    for b in (a0, a1, a00, a01, a10, a11, a001, a011, a101, a111, a110):
        if b not in (0, 1):
            raise ValueError("window inputs must be bits")
    b10 = a10 ^ a110 ^ a111
    b00, b01, b11 = _ROW_BY_ALPHA_B10[(a0, a1, b10)]
    a010 = b00 ^ a00 ^ a011
    a000 = b01 ^ a01 ^ a001
    a100 = b11 ^ a11 ^ a101
    return WindowDecoration(
        (a0, a1),
        (a00, a01, a10, a11),
        (a000, a001, a010, a011, a100, a101, a110, a111),
    )


def _seed_bit(seed: int, vertex: str) -> int:
    """Deterministic per-vertex bit: a counter-based generator keyed by
    (seed, vertex label), so extending the depth never changes the bits
    already drawn at shallower vertices."""
    h = hashlib.blake2b(f"{seed}|{vertex}".encode(), digest_size=8)
    return h.digest()[0] & 1


def sample_closure_element(seed: int, depth: int) -> Portrait:
    """Sample a depth-d portrait satisfying every window constraint.

    Levels 0-2 are drawn freely; from level 3 on, the bits at vertices
    whose label ends in 1 or in 110 are drawn freely and the remaining
    three bits per window are forced via `complete_window`, level by
    level.  Deterministic in the seed.
    """
    if depth < 4:
        raise ValueError("sampling needs depth >= 4")
    bits: dict[str, int] = {"": _seed_bit(seed, "")}
    for level in range(1, depth):
        for i in range(1 << level):
            u = format(i, f"0{level}b")
            if level <= 2 or u.endswith("1") or u.endswith("110"):
                bits[u] = _seed_bit(seed, u)
        if level < 3:
            continue
        for i in range(1 << (level - 3)):
            w = format(i, f"0{level - 3}b") if level > 3 else ""
            filled = complete_window(
                (bits[w + "0"], bits[w + "1"]),
                (bits[w + "00"], bits[w + "01"], bits[w + "10"], bits[w + "11"]),
                (bits[w + "001"], bits[w + "011"], bits[w + "101"],
                 bits[w + "111"], bits[w + "110"]),
            )
            bits[w + "000"] = filled.level3[0]
            bits[w + "010"] = filled.level3[2]
            bits[w + "100"] = filled.level3[4]
    levels = tuple(
        tuple(bits[format(i, f"0{level}b") if level else ""] for i in range(1 << level))
        for level in range(depth)
    )
    return Portrait(levels)


def free_bit_count(n: int) -> int:
    """Number of freely choosable decoration bits on levels 0..n-1: all
    2^n - 1 bits up to level 3, and 5 of every 8 bits per level beyond."""
    if n < 0:
        raise ValueError("level count must be non-negative")
    if n <= 3:
        return (1 << n) - 1
    return 2 + 5 * (1 << (n - 3))


def hausdorff_estimate(n: int) -> Fraction:
    """Level-n dimension estimate: free decoration bits over all 2^n - 1
    decoration bits, as an exact rational.  Tends to 5/8."""
    if n < 1:
        raise ValueError("estimate needs n >= 1")
    return Fraction(free_bit_count(n), (1 << n) - 1)
