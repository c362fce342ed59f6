"""Finite-state (Mealy) tree automorphisms and recursion systems.

A Mealy automaton here is a finite set of states, each carrying an
activity bit and two successor states; every state defines a tree
automorphism whose root activity is the state's bit and whose sections
are the successor states.  The five-state machine generating the
Grigorchuk group and the five-state machine of the closure element `f`
are built in.

Recursion systems generalize this by letting a state's sections refer
either to named symbols or to arbitrary concrete automorphisms; they
back the self-similar closure elements kbar = (k, kbar).
"""

from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping, Sequence

import networkx as nx

from .tree import Automorphism, IDENTITY, activity_rows
from .words import check_word, word_element


class MealyAutomaton:
    """States mapping name -> (activity, next0, next1), plus a designated
    root state (the one an automaton file denotes by its first line).

    A state counts as the identity when no active state is reachable
    from it; sections through such states collapse to the shared
    identity automorphism.
    """

    def __init__(self, transitions: Mapping[str, tuple[int, str, str]], root: str):
        if not transitions:
            raise ValueError("automaton needs at least one state")
        self.transitions = {name: (int(act), n0, n1)
                            for name, (act, n0, n1) in transitions.items()}
        for name, (act, n0, n1) in self.transitions.items():
            if act not in (0, 1):
                raise ValueError(f"state {name!r}: activity must be 0 or 1")
            for nxt in (n0, n1):
                if nxt not in self.transitions:
                    raise ValueError(f"state {name!r} references unknown state {nxt!r}")
        if root not in self.transitions:
            raise ValueError(f"unknown root state {root!r}")
        self.root = root
        self.identity_states = self._find_identity_states()
        self._elements: dict[str, Automorphism] = {}

    def _find_identity_states(self) -> frozenset[str]:
        # a state is trivial iff no active state is reachable from it
        reaching = {s for s, (act, _, _) in self.transitions.items() if act}
        changed = True
        while changed:
            changed = False
            for s, (_, n0, n1) in self.transitions.items():
                if s not in reaching and (n0 in reaching or n1 in reaching):
                    reaching.add(s)
                    changed = True
        return frozenset(self.transitions) - reaching

    @property
    def states(self) -> tuple[str, ...]:
        return tuple(self.transitions)

    def __repr__(self) -> str:
        return f"MealyAutomaton({len(self.transitions)} states, root={self.root!r})"


class _MealyState(Automorphism):
    __slots__ = ("automaton", "state")

    def __init__(self, automaton: MealyAutomaton, state: str):
        self.automaton = automaton
        self.state = state

    @property
    def root_activity(self) -> int:
        return self.automaton.transitions[self.state][0]

    def _section(self, x: int) -> Automorphism:
        return element_of(self.automaton, self.automaton.transitions[self.state][1 + x])

    def __repr__(self) -> str:
        return f"<automaton state {self.state!r}>"


def element_of(automaton: MealyAutomaton, state: str) -> Automorphism:
    """The automorphism defined by a state of the automaton."""
    if state not in automaton.transitions:
        raise ValueError(f"unknown state {state!r}")
    if state in automaton.identity_states:
        return IDENTITY
    if state not in automaton._elements:
        automaton._elements[state] = _MealyState(automaton, state)
    return automaton._elements[state]


@lru_cache(maxsize=None)
def grigorchuk_automaton() -> MealyAutomaton:
    """The five-state automaton generating the Grigorchuk group:
    a = (1,1) swap, b = (a,c), c = (a,d), d = (1,b)."""
    return MealyAutomaton(
        {
            "a": (1, "1", "1"),
            "b": (0, "a", "c"),
            "c": (0, "a", "d"),
            "d": (0, "1", "b"),
            "1": (0, "1", "1"),
        },
        root="a",
    )


@lru_cache(maxsize=None)
def f_automaton() -> MealyAutomaton:
    """The five-state automaton of the closure element f:
    f = (l,r) swap, l = (r,m) swap, r = (m,r) swap, m = (n,f) swap,
    n = (r,m)."""
    return MealyAutomaton(
        {
            "f": (1, "l", "r"),
            "l": (1, "r", "m"),
            "r": (1, "m", "r"),
            "m": (1, "n", "f"),
            "n": (0, "r", "m"),
        },
        root="f",
    )


def parse_automaton(text: str) -> MealyAutomaton:
    """Parse the automaton text format: one `name: activity next0 next1`
    line per state, first line's state is the root."""
    transitions: dict[str, tuple[int, str, str]] = {}
    root = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        name, sep, rest = line.partition(":")
        fields = rest.split()
        if not sep or not name.strip() or len(fields) != 3 or fields[0] not in "01":
            raise ValueError(f"line {lineno}: expected '<name>: <0|1> <next0> <next1>'")
        name = name.strip()
        if name in transitions:
            raise ValueError(f"line {lineno}: duplicate state {name!r}")
        transitions[name] = (int(fields[0]), fields[1], fields[2])
        if root is None:
            root = name
    if root is None:
        raise ValueError("empty automaton description")
    return MealyAutomaton(transitions, root)


def format_automaton(automaton: MealyAutomaton) -> str:
    """Serialize to the text format, root state first."""
    names = [automaton.root] + [s for s in automaton.transitions if s != automaton.root]
    lines = []
    for name in names:
        act, n0, n1 = automaton.transitions[name]
        lines.append(f"{name}: {act} {n0} {n1}")
    return "\n".join(lines) + "\n"


class RecursionSystem:
    """Named wreath recursions whose sections may point at other symbols
    or at concrete automorphisms, e.g. {"g": (h, "g", 0)} for g = (h, g)."""

    def __init__(self, definitions: Mapping[str, tuple[object, object, int]]):
        self.definitions = dict(definitions)
        if not self.definitions:
            raise ValueError("recursion system needs at least one symbol")
        for sym, (s0, s1, act) in self.definitions.items():
            if act not in (0, 1):
                raise ValueError(f"symbol {sym!r}: activity must be 0 or 1")
            for ref in (s0, s1):
                if isinstance(ref, str):
                    if ref not in self.definitions:
                        raise ValueError(
                            f"symbol {sym!r} references undefined symbol {ref!r}")
                elif not isinstance(ref, Automorphism):
                    raise TypeError(
                        f"symbol {sym!r}: sections must be symbol names or automorphisms")
        self._elements: dict[str, Automorphism] = {}

    def element(self, symbol: str) -> Automorphism:
        if symbol not in self.definitions:
            raise ValueError(f"unknown symbol {symbol!r}")
        if symbol not in self._elements:
            self._elements[symbol] = _RecursionEntry(self, symbol)
        return self._elements[symbol]

    def _resolve(self, ref) -> Automorphism:
        return self.element(ref) if isinstance(ref, str) else ref


class _RecursionEntry(Automorphism):
    __slots__ = ("system", "symbol")

    def __init__(self, system: RecursionSystem, symbol: str):
        self.system = system
        self.symbol = symbol

    @property
    def root_activity(self) -> int:
        return self.system.definitions[self.symbol][2]

    def _section(self, x: int) -> Automorphism:
        return self.system._resolve(self.system.definitions[self.symbol][x])

    def __repr__(self) -> str:
        return f"<recursion symbol {self.symbol!r}>"


def k_word(conjugators: Iterable[str]) -> str:
    """Build a word for a product of conjugates of the commutator of a
    and b: each conjugator w contributes reverse(w) + "abab" + w
    (generators are involutions, so reverse(w) is the inverse of w)."""
    parts = []
    for w in conjugators:
        check_word(w)
        parts.append(w[::-1] + "abab" + w)
    return "".join(parts)


def _parses_as_conjugate_product(word: str) -> bool:
    n = len(word)

    @lru_cache(maxsize=None)
    def ok(i: int) -> bool:
        if i == n:
            return True
        for half in range((n - i - 4) // 2 + 1):
            if word[i + half : i + half + 4] != "abab":
                continue
            tail = word[i + half + 4 : i + 2 * half + 4]
            if word[i : i + half] == tail[::-1] and ok(i + 2 * half + 4):
                return True
        return False

    return ok(0)


def _check_k_shape(word: str) -> str:
    check_word(word)
    if not _parses_as_conjugate_product(word):
        raise ValueError(
            f"word {word!r} is not a product of conjugates reverse(w)+'abab'+w")
    return word


def kbar_element(word: str) -> Automorphism:
    """The self-similar closure element kbar = (k, kbar) for k given as a
    product of conjugates of abab (the shape is checked; membership of
    arbitrary words in the relevant subgroup is not decided here)."""
    _check_k_shape(word)
    if not word:
        return IDENTITY
    system = RecursionSystem({"kbar": (word_element(word), "kbar", 0)})
    return system.element("kbar")


class _Scattered(Automorphism):
    __slots__ = ("table",)

    def __init__(self, table: dict[str, Automorphism]):
        self.table = table

    @property
    def root_activity(self) -> int:
        return 0

    def _section(self, x: int) -> Automorphism:
        ch = "01"[x]
        sub = {v[1:]: g for v, g in self.table.items() if v[0] == ch}
        if not sub:
            return IDENTITY
        if "" in sub:
            return sub[""]
        return _Scattered(sub)


def scattered_element(assignments: Sequence[tuple[str, str]]) -> Automorphism:
    """An automorphism inactive outside a set of pairwise independent
    vertices, carrying an assigned conjugate-product element below each.

    Vertices must be pairwise independent (no label is a prefix of
    another); assigning the root degenerates to the element itself.
    """
    table: dict[str, Automorphism] = {}
    labels = []
    for vertex, word in assignments:
        if any(ch not in "01" for ch in vertex):
            raise ValueError(f"invalid vertex label {vertex!r}")
        _check_k_shape(word)
        labels.append(vertex)
        table[vertex] = word_element(word)
    if len(table) != len(labels):
        raise ValueError("duplicate vertex in assignments")
    for i, u in enumerate(labels):
        for v in labels[i + 1 :]:
            if u.startswith(v) or v.startswith(u):
                raise ValueError(f"vertices {u!r} and {v!r} are not independent")
    if not table:
        return IDENTITY
    if "" in table:
        return table[""]
    return _Scattered(table)


def activity_profile(g: Automorphism, levels: int) -> list[int]:
    """Per-level activity sums of g for levels 0..levels: entry n counts
    the active vertices at level n.  Uniform boundedness of these sums is
    what 'bounded automorphism' means."""
    if levels < 0:
        raise ValueError("levels must be non-negative")
    return [sum(row) for row in activity_rows(g, levels + 1)]


def is_bounded_automaton(automaton: MealyAutomaton) -> bool:
    """Structural boundedness of the automorphisms an automaton defines.

    In the transition graph restricted to non-identity states (with edge
    multiplicities), all states it defines are bounded iff every directed
    cycle is vertex-disjoint from every other and no path connects two
    distinct cycles; equivalently, every strongly connected component is
    a lone vertex or a simple cycle, and no cyclic component reaches
    another.
    """
    graph = nx.MultiDiGraph()
    nontrivial = set(automaton.transitions) - set(automaton.identity_states)
    graph.add_nodes_from(nontrivial)
    for s in nontrivial:
        _, n0, n1 = automaton.transitions[s]
        for t in (n0, n1):
            if t in nontrivial:
                graph.add_edge(s, t)
    cyclic_components = []
    for comp in nx.strongly_connected_components(graph):
        internal = [(s, t) for s, t, _ in graph.edges(comp, keys=True)
                    if s in comp and t in comp]
        if not internal:
            continue  # lone acyclic vertex
        # a simple cycle has exactly one internal out-edge per state
        out_counts = {s: 0 for s in comp}
        for s, _ in internal:
            out_counts[s] += 1
        if any(n != 1 for n in out_counts.values()):
            return False
        cyclic_components.append(comp)
    for i, comp in enumerate(cyclic_components):
        reachable = set()
        for s in comp:
            reachable |= nx.descendants(graph, s)
        for j, other in enumerate(cyclic_components):
            if i != j and reachable & other:
                return False
    return True
