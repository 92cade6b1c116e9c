"""The four-disc genus-2 diagram model and combinatorial realizability.

A genus-2 handlebody is a ball with discs ``a, a^-1, b, b^-1`` on its boundary,
``a`` glued to ``a^-1`` and ``b`` to ``b^-1`` by orientation-reversing maps.
A relator pair is drawn as two closed curves.  Each letter is a *strand*, one
pass through a handle: letter ``g`` enters disc ``g`` and comes out of disc
``g^-1``; letter ``g^-1`` does the opposite.  Between consecutive letters the
curve runs along an *arc* on the sphere, from the exit disc of one letter to
the entry disc of the next.

A rotation system fixes the cyclic order of strands around disc ``g``; around
``g^-1`` the order is forced to be the reverse (mirror constraint).  The pair
is *realizable* here when some rotation system embeds the arc graph in the
sphere, i.e. every connected component satisfies ``V - E + F = 2``.  That is
a necessary condition for a drawing, checked exactly; it is not claimed to be
every convention a hand-drawn diagram might follow.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence, Union

from .words import Alphabet, Word, cyclically_reduce, letter_generator, letter_sign, parse_word

# disc numbering: 2*g is disc g, 2*g + 1 is disc g^-1
DISC_NAMES = ("a", "a^-1", "b", "b^-1")
DEFAULT_BUDGET = 10_000_000


class DiagramError(ValueError):
    pass


def entry_disc(x: int) -> int:
    return 2 * letter_generator(x) + (0 if x > 0 else 1)


def exit_disc(x: int) -> int:
    return entry_disc(x) ^ 1


# -- encodings ---------------------------------------------------------------


@dataclass(frozen=True)
class Strand:
    id: str
    handle: str
    entry_pos: int
    exit_pos: int


@dataclass(frozen=True)
class Curve:
    steps: tuple[tuple[str, int], ...]  # (strand id, +1 | -1)
    dashed: bool = False
    start: int = 0


@dataclass(frozen=True)
class HeegaardDiagramEncoding:
    alphabet: Alphabet
    strands: tuple[Strand, ...]
    curves: tuple[Curve, Curve]

    def to_json(self) -> dict:
        return {
            "generators": list(self.alphabet.names),
            "strands": [{"id": s.id, "handle": s.handle, "entryPos": s.entry_pos, "exitPos": s.exit_pos}
                        for s in self.strands],
            "curves": [{"steps": [{"strand": sid, "dir": d} for sid, d in c.steps],
                        "dashed": c.dashed, "start": c.start} for c in self.curves],
        }

    @classmethod
    def from_json(cls, data: dict) -> HeegaardDiagramEncoding:
        alphabet = Alphabet.from_names(data.get("generators", ["a", "b"]))
        strands = tuple(Strand(str(s["id"]), s["handle"], int(s["entryPos"]), int(s["exitPos"]))
                        for s in data["strands"])
        curves = tuple(Curve(tuple((str(st["strand"]), int(st["dir"])) for st in c["steps"]),
                             bool(c.get("dashed", False)), int(c.get("start", 0)))
                       for c in data["curves"])
        if len(curves) != 2:
            raise DiagramError(f"expected two curves, got {len(curves)}")
        return cls(alphabet, strands, curves)  # type: ignore[arg-type]

    @classmethod
    def load(cls, path: str | Path) -> HeegaardDiagramEncoding:
        return cls.from_json(json.loads(Path(path).read_text()))


def diagnose(d: HeegaardDiagramEncoding) -> list[str]:
    """Problems with an encoding; empty when it is valid."""
    problems = []
    if d.alphabet.size != 2:
        problems.append(f"alphabet must have two generators, has {d.alphabet.size}")
    by_id = {}
    for s in d.strands:
        if s.id in by_id:
            problems.append(f"duplicate strand id {s.id!r}")
        by_id[s.id] = s
        if s.handle not in d.alphabet:
            problems.append(f"strand {s.id!r} on unknown handle {s.handle!r}")
    for h in d.alphabet.names:
        on_h = [s for s in d.strands if s.handle == h]
        m = len(on_h)
        entry = sorted(s.entry_pos for s in on_h)
        exits = sorted(s.exit_pos for s in on_h)
        if entry != list(range(m)) or exits != list(range(m)):
            problems.append(f"positions on handle {h!r} are not a permutation of 0..{m - 1}")
            continue
        for s in on_h:
            if s.exit_pos != (-s.entry_pos) % m:
                problems.append(f"strand {s.id!r} breaks the mirror constraint on handle {h!r}")
    used: dict[str, int] = {}
    for k, c in enumerate(d.curves):
        if not c.steps:
            problems.append(f"curve {k} is empty")
        elif not 0 <= c.start < len(c.steps):
            problems.append(f"curve {k} start marker {c.start} out of range")
        for sid, direction in c.steps:
            if direction not in (1, -1):
                problems.append(f"curve {k} has direction {direction} on strand {sid!r}")
            if sid not in by_id:
                problems.append(f"curve {k} uses unknown strand {sid!r}")
            used[sid] = used.get(sid, 0) + 1
    for sid in by_id:
        if used.get(sid, 0) != 1:
            problems.append(f"strand {sid!r} used {used.get(sid, 0)} times")
    for sid, n in used.items():
        if n > 1 and sid not in by_id:
            problems.append(f"unknown strand {sid!r} used {n} times")
    if sum(c.dashed for c in d.curves) > 1:
        problems.append("at most one curve may be dashed")
    return problems


def validate(d: HeegaardDiagramEncoding) -> bool:
    return not diagnose(d)


def read_relators(d: HeegaardDiagramEncoding) -> tuple[Word, Word]:
    """Words of the two curves, each read from its start marker; the dashed curve comes second."""
    problems = diagnose(d)
    if problems:
        raise DiagramError("; ".join(problems))
    handle_of = {s.id: d.alphabet.index(s.handle) for s in d.strands}
    words = []
    for c in d.curves:
        steps = c.steps[c.start:] + c.steps[:c.start]
        words.append(Word.from_letters([direction * (handle_of[sid] + 1) for sid, direction in steps], d.alphabet))
    first, second = d.curves
    if first.dashed and not second.dashed:
        words.reverse()
    return words[0], words[1]


# -- arc graph ---------------------------------------------------------------


def whitehead_graph(r1: Word, r2: Word) -> list[tuple[str, str]]:
    """One edge per cyclically adjacent letter pair: exit disc of a letter to entry disc of the next."""
    edges = []
    for r in (r1, r2):
        n = len(r)
        for k in range(n):
            x, y = r.letters[k], r.letters[(k + 1) % n]
            edges.append((_disc_label(r.alphabet, exit_disc(x)), _disc_label(r.alphabet, entry_disc(y))))
    return edges


def _disc_label(alphabet: Alphabet, disc: int) -> str:
    name = alphabet.names[disc // 2]
    return name if disc % 2 == 0 else f"{name}^-1"


class _Arcs:
    """Strand and arc bookkeeping for a relator pair.

    Strands are numbered along curve 1 then curve 2.  Half-edge ``2*s`` is
    strand ``s``'s end on the entry disc of its letter, ``2*s + 1`` its end on
    the exit disc.  Arc ``s`` joins the exit end of strand ``s`` to the entry
    end of the next strand on the same curve.
    """

    def __init__(self, r1: Word, r2: Word):
        if r1.alphabet != r2.alphabet or r1.alphabet.size != 2:
            raise DiagramError("realizability needs two relators over a two-letter alphabet")
        self.alphabet = r1.alphabet
        self.words = (r1, r2)
        letters, curve_of, nxt, prv = [], [], [], []
        for c, r in enumerate(self.words):
            base = len(letters)
            n = len(r)
            for k, x in enumerate(r.letters):
                letters.append(x)
                curve_of.append(c)
                nxt.append(base + (k + 1) % n)
                prv.append(base + (k - 1) % n)
        self.letters = letters
        self.curve_of = curve_of
        self.next = nxt
        self.prev = prv
        self.nstrands = len(letters)
        self.handle = [letter_generator(x) for x in letters]
        self.by_handle = [[s for s in range(self.nstrands) if self.handle[s] == h] for h in range(2)]

    def half_edge_disc(self, he: int) -> int:
        x = self.letters[he >> 1]
        return entry_disc(x) if he % 2 == 0 else exit_disc(x)

    def opposite(self, he: int) -> int:
        s = he >> 1
        if he % 2:  # exit end: arc goes forward to the next strand's entry end
            return 2 * self.next[s]
        return 2 * self.prev[s] + 1


def _disc_orders(arcs: _Arcs, handle_orders: Sequence[Sequence[int]]) -> list[list[int]]:
    """Cyclic half-edge order around each of the four discs (mirror constraint applied)."""
    orders: list[list[int]] = [[], [], [], []]
    for h, order in enumerate(handle_orders):
        for disc, seq in ((2 * h, order), (2 * h + 1, list(reversed(order)))):
            for s in seq:
                he = 2 * s if arcs.half_edge_disc(2 * s) == disc else 2 * s + 1
                orders[disc].append(he)
    return orders


def euler_characteristics(arcs: _Arcs, handle_orders: Sequence[Sequence[int]], active=None) -> list[int]:
    """``V - E + F`` for each connected component of the (active part of the) arc graph.

    ``active`` restricts to arcs whose both strands are placed; isolated discs
    count as components with one face.
    """
    orders = _disc_orders(arcs, handle_orders)
    placed = set(s for order in handle_orders for s in order)
    if active is None:
        def on(he):
            return True
    else:
        def on(he):
            return (he >> 1) in placed and (arcs.opposite(he) >> 1) in placed
    succ = {}
    for seq in orders:
        seq = [he for he in seq if on(he)]
        for i, he in enumerate(seq):
            succ[he] = seq[(i + 1) % len(seq)]
    # face permutation: cross the arc, then turn to the next half-edge around the disc
    seen = set()
    faces_in = {}
    parent = list(range(4))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    edges = 0
    for he in succ:
        opp = arcs.opposite(he)
        if he < opp:
            edges += 1
            a, b = find(arcs.half_edge_disc(he)), find(arcs.half_edge_disc(opp))
            parent[a] = b
    for he in succ:
        if he in seen:
            continue
        root = find(arcs.half_edge_disc(he))
        faces_in[root] = faces_in.get(root, 0) + 1
        cur = he
        while cur not in seen:
            seen.add(cur)
            cur = succ[arcs.opposite(cur)]
    comps: dict[int, list[int]] = {}
    for v in range(4):
        r = find(v)
        comps.setdefault(r, [0, 0, 0])
        comps[r][0] += 1
    for he in succ:
        opp = arcs.opposite(he)
        if he < opp:
            comps[find(arcs.half_edge_disc(he))][1] += 1
    out = []
    for r, (v, e, _) in sorted(comps.items()):
        out.append(v - e + faces_in.get(r, 1 if e == 0 else 0))
    return out


# -- rotation systems and search -------------------------------------------


@dataclass(frozen=True)
class RotationSystem:
    """Cyclic strand order around disc ``g`` for each generator ``g`` (strand numbering of :class:`_Arcs`)."""

    handle_orders: tuple[tuple[int, ...], tuple[int, ...]]

    def disc_orders(self, r1: Word, r2: Word) -> dict[str, tuple[int, ...]]:
        """Strand order around all four discs, labelled ``a``, ``a^-1``, ``b``, ``b^-1``."""
        alphabet = r1.alphabet
        out = {}
        for h, order in enumerate(self.handle_orders):
            out[_disc_label(alphabet, 2 * h)] = tuple(order)
            out[_disc_label(alphabet, 2 * h + 1)] = tuple(reversed(order))
        return out

    def to_json(self) -> list[list[int]]:
        return [list(o) for o in self.handle_orders]


@dataclass(frozen=True)
class Realizable:
    witness: RotationSystem
    nodes: int = 0


@dataclass(frozen=True)
class NotRealizable:
    nodes: int = 0


@dataclass(frozen=True)
class Exhausted:
    budget: int


RealizabilityResult = Union[Realizable, NotRealizable, Exhausted]


def is_planar_witness(r1: Word, r2: Word, rs: RotationSystem) -> bool:
    """Mirror-constrained rotation system embeds every component in the sphere."""
    arcs = _Arcs(r1, r2)
    for h in range(2):
        if sorted(rs.handle_orders[h]) != arcs.by_handle[h]:
            return False
    return all(chi == 2 for chi in euler_characteristics(arcs, rs.handle_orders))


class _Search:
    def __init__(self, arcs: _Arcs, budget: int):
        self.arcs = arcs
        self.budget = budget
        self.nodes = 0
        # placement order follows the curves so every new strand closes an arc
        self.sequence = list(range(arcs.nstrands))
        self.orders: list[list[int]] = [[], []]

    def partial_ok(self) -> bool:
        return all(chi == 2 for chi in euler_characteristics(self.arcs, self.orders, active=True))

    def run(self, depth: int = 0) -> RotationSystem | None:
        if depth == len(self.sequence):
            return RotationSystem((tuple(self.orders[0]), tuple(self.orders[1])))
        s = self.sequence[depth]
        order = self.orders[self.arcs.handle[s]]
        # cyclically distinct insertion points; the first two placements are forced
        positions = range(1, len(order) + 1) if order else range(1)
        for pos in positions:
            self.nodes += 1
            if self.nodes > self.budget:
                raise _BudgetExceeded
            order.insert(pos, s)
            if self.partial_ok():
                found = self.run(depth + 1)
                if found is not None:
                    return found
            order.pop(pos)
        return None


class _BudgetExceeded(Exception):
    pass


def realize(r1: Word, r2: Word, budget: int = DEFAULT_BUDGET) -> RealizabilityResult:
    """Search mirror-constrained rotation systems for a sphere embedding of the arc graph."""
    if budget <= 0:
        raise ValueError("budget must be positive")
    if r1.alphabet.size != 2:
        raise DiagramError(f"alphabet size must be 2, got {r1.alphabet.size}")
    r1, r2 = cyclically_reduce(r1), cyclically_reduce(r2)
    if not r1 or not r2:
        raise DiagramError("relators must be non-empty")
    arcs = _Arcs(r1, r2)
    search = _Search(arcs, budget)
    try:
        found = search.run()
    except _BudgetExceeded:
        return Exhausted(budget)
    if found is None:
        return NotRealizable(search.nodes)
    return Realizable(found, search.nodes)


def encoding_from_witness(r1: Word, r2: Word, rs: RotationSystem) -> HeegaardDiagramEncoding:
    """Diagram encoding of a witness: curve 1 solid, curve 2 dashed, both starting at their first strand."""
    arcs = _Arcs(r1, r2)
    names = r1.alphabet.names
    strands = []
    ids = []
    for s in range(arcs.nstrands):
        h = arcs.handle[s]
        order = rs.handle_orders[h]
        pos = order.index(s)
        m = len(order)
        sid = f"{names[h]}{arcs.by_handle[h].index(s)}"
        ids.append(sid)
        strands.append(Strand(sid, names[h], pos, (-pos) % m))
    curves = []
    for c in range(2):
        steps = tuple((ids[s], letter_sign(arcs.letters[s])) for s in range(arcs.nstrands) if arcs.curve_of[s] == c)
        curves.append(Curve(steps, dashed=(c == 1), start=0))
    return HeegaardDiagramEncoding(r1.alphabet, tuple(strands), (curves[0], curves[1]))


def rotation_from_encoding(d: HeegaardDiagramEncoding) -> tuple[Word, Word, RotationSystem]:
    """Inverse of :func:`encoding_from_witness`: relators in curve order plus the handle orders."""
    problems = diagnose(d)
    if problems:
        raise DiagramError("; ".join(problems))
    by_id = {s.id: s for s in d.strands}
    words = []
    for c in d.curves:
        letters = [direction * (d.alphabet.index(by_id[sid].handle) + 1) for sid, direction in c.steps]
        w = Word.from_letters(letters, d.alphabet)
        if len(w) != len(letters) or not w.is_cyclically_reduced():
            raise DiagramError("curve doubles back through a handle; its word is not cyclically reduced")
        words.append(w)
    arcs = _Arcs(words[0], words[1])
    strand_ids = [sid for c in d.curves for sid, _ in c.steps]
    orders = []
    for h in range(2):
        placed = sorted(arcs.by_handle[h], key=lambda s: by_id[strand_ids[s]].entry_pos)
        orders.append(tuple(placed))
    return words[0], words[1], RotationSystem((orders[0], orders[1]))


def encoding_is_planar(d: HeegaardDiagramEncoding) -> bool:
    r1, r2, rs = rotation_from_encoding(d)
    return is_planar_witness(r1, r2, rs)


def parse_pair(r1: str, r2: str, alphabet: Alphabet | None = None) -> tuple[Word, Word]:
    alphabet = alphabet or Alphabet(("a", "b"))
    return parse_word(r1, alphabet), parse_word(r2, alphabet)
