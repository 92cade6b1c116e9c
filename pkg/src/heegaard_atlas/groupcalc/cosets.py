"""Todd-Coxeter coset enumeration with HLT and Felsch strategies.

Cosets are 0-based internally (coset 0 is the subgroup); columns are
``2*g`` for generator ``g`` and ``2*g + 1`` for its inverse.  Coincidences are
resolved with a union-find forest that always keeps the smaller coset as
representative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Union

from ..presentation import Presentation
from ..words import Word, translate

DEFAULT_MAX_COSETS = 200_000


@dataclass(frozen=True)
class Index:
    n: int


@dataclass(frozen=True)
class Exhausted:
    max_cosets: int


EnumerationResult = Union[Index, Exhausted]


class _Overflow(Exception):
    pass


def _col(x: int) -> int:
    return 2 * (abs(x) - 1) + (0 if x > 0 else 1)


class CosetTable:
    """Working state of one enumeration.  Not thread-safe; use one table per run."""

    def __init__(self, p: Presentation, subgroup: Sequence[Word] = (), max_cosets: int = DEFAULT_MAX_COSETS):
        if max_cosets < 1:
            raise ValueError("max_cosets must be positive")
        self.presentation = p
        self.ncols = 2 * p.alphabet.size
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.relators = [[_col(x) for x in r.letters] for r in p.relators]
        self.subgroup = [[_col(x) for x in translate(w, p.alphabet).letters] for w in subgroup]
        self.deductions: list[tuple[int, int]] = []
        self.record_deductions = False
        # Felsch scans every cyclic conjugate of every relator and its inverse
        self._rotations: list[list[list[int]]] = [[] for _ in range(self.ncols)]
        for r in self.relators:
            for w in (r, [c ^ 1 for c in reversed(r)]):
                for k in range(len(w)):
                    rot = w[k:] + w[:k]
                    self._rotations[rot[0]].append(rot)

    # -- basic operations --------------------------------------------------

    def _define(self, alpha: int, x: int) -> int:
        if len(self.table) >= self.max_cosets:
            raise _Overflow
        beta = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(beta)
        self.table[alpha][x] = beta
        self.table[beta][x ^ 1] = alpha
        if self.record_deductions:
            self.deductions.append((alpha, x))
        return beta

    def _rep(self, k: int) -> int:
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def _merge(self, k: int, l: int, queue: list[int]):
        phi, psi = self._rep(k), self._rep(l)
        if phi != psi:
            mu, nu = min(phi, psi), max(phi, psi)
            self.parent[nu] = mu
            queue.append(nu)

    def _coincidence(self, alpha: int, beta: int):
        table = self.table
        queue: list[int] = []
        self._merge(alpha, beta, queue)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for x in range(self.ncols):
                delta = table[gamma][x]
                if delta is None:
                    continue
                table[delta][x ^ 1] = None
                mu, nu = self._rep(gamma), self._rep(delta)
                if table[mu][x] is not None:
                    self._merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] is not None:
                    self._merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu
                    if self.record_deductions:
                        self.deductions.append((mu, x))

    def _scan(self, alpha: int, word: list[int], fill: bool):
        table = self.table
        f, i = alpha, 0
        b, j = alpha, len(word) - 1
        while True:
            while i <= j and table[f][word[i]] is not None:
                f = table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self._coincidence(f, b)
                return
            while j >= i and table[b][word[j] ^ 1] is not None:
                b = table[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self._coincidence(f, b)
                return
            if i == j:
                table[f][word[i]] = b
                table[b][word[i] ^ 1] = f
                if self.record_deductions:
                    self.deductions.append((f, word[i]))
                return
            if not fill:
                return
            self._define(f, word[i])

    def is_live(self, k: int) -> bool:
        return self.parent[k] == k

    # -- strategies --------------------------------------------------------

    def run_hlt(self):
        for w in self.subgroup:
            self._scan(0, w, fill=True)
        alpha = 0
        while alpha < len(self.table):
            for r in self.relators:
                if not self.is_live(alpha):
                    break
                self._scan(alpha, r, fill=True)
            if self.is_live(alpha):
                for x in range(self.ncols):
                    if self.table[alpha][x] is None:
                        self._define(alpha, x)
            alpha += 1

    def _process_deductions(self):
        table = self.table
        while self.deductions:
            alpha, x = self.deductions.pop()
            if not self.is_live(alpha):
                continue
            for rot in self._rotations[x]:
                self._scan(alpha, rot, fill=False)
                if not self.is_live(alpha):
                    break
            beta = table[alpha][x]
            if beta is not None and self.is_live(beta):
                for rot in self._rotations[x ^ 1]:
                    self._scan(beta, rot, fill=False)
                    if not self.is_live(beta):
                        break

    def run_felsch(self):
        self.record_deductions = True
        for w in self.subgroup:
            self._scan(0, w, fill=True)
        self._process_deductions()
        alpha = 0
        while alpha < len(self.table):
            for x in range(self.ncols):
                if not self.is_live(alpha):
                    break
                if self.table[alpha][x] is None:
                    self._define(alpha, x)
                    self._process_deductions()
            alpha += 1

    # -- results -----------------------------------------------------------

    def live_cosets(self) -> list[int]:
        return [k for k in range(len(self.table)) if self.parent[k] == k]

    def compact(self) -> list[list[int]]:
        """Complete table on live cosets renumbered 0..n-1 in order of first appearance."""
        live = self.live_cosets()
        index = {k: i for i, k in enumerate(live)}
        out = []
        for k in live:
            row = []
            for x in range(self.ncols):
                v = self.table[k][x]
                if v is None:
                    raise ValueError("table is incomplete")
                row.append(index[self._rep(v)])
            out.append(row)
        return out

    def permutations(self) -> list[tuple[int, ...]]:
        """Action of each generator on the cosets (coset ``i`` goes to ``perm[i]``)."""
        rows = self.compact()
        return [tuple(row[2 * g] for row in rows) for g in range(self.ncols // 2)]


def todd_coxeter(
    p: Presentation,
    subgroup: Sequence[Word] = (),
    max_cosets: int = DEFAULT_MAX_COSETS,
    strategy: str = "hlt",
) -> EnumerationResult:
    """Index of the subgroup generated by ``subgroup`` in the group ``p``, if enumeration completes."""
    table = CosetTable(p, subgroup, max_cosets)
    try:
        if strategy == "hlt":
            table.run_hlt()
        elif strategy == "felsch":
            table.run_felsch()
        else:
            raise ValueError(f"unknown strategy {strategy!r}")
    except _Overflow:
        return Exhausted(max_cosets)
    return Index(len(table.live_cosets()))


def enumerate_cosets(p: Presentation, subgroup: Sequence[Word] = (), max_cosets: int = DEFAULT_MAX_COSETS,
                     strategy: str = "hlt") -> CosetTable | None:
    """Like :func:`todd_coxeter` but hands back the finished table, or ``None`` on overflow."""
    table = CosetTable(p, subgroup, max_cosets)
    try:
        table.run_hlt() if strategy == "hlt" else table.run_felsch()
    except _Overflow:
        return None
    return table
