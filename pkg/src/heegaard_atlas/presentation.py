"""Finitely presented groups, Tietze moves and replayable certificates.

A claim "P and Q present the same group" is never decided here; it is
witnessed.  A :class:`ConsequenceCertificate` writes a word as an explicit
product of conjugated relators, and a :class:`TietzeCertificate` is a list of
Tietze moves, each carrying whatever evidence makes it checkable.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

from .words import (
    Alphabet,
    CyclicWord,
    Word,
    cyclic_normal_form,
    cyclically_reduce,
    format_word,
    free_reduce,
    invert,
    letter_generator,
    letter_sign,
    occurrences,
    parse_word,
    substitute,
    translate,
)


class PresentationError(ValueError):
    pass


class InvalidStepError(PresentationError):
    pass


@dataclass(frozen=True)
class Presentation:
    """Generators plus cyclically reduced, non-empty relators.

    Relators keep the rotation they were given in (so certificates can refer
    to them literally); comparisons go through :meth:`canonical_relators`.
    """

    alphabet: Alphabet
    relators: tuple[Word, ...] = ()

    def __post_init__(self):
        reduced = []
        for i, r in enumerate(self.relators):
            if r.alphabet != self.alphabet:
                raise PresentationError(f"relator {i} is over {r.alphabet}, expected {self.alphabet}")
            r = cyclically_reduce(r)
            if not r:
                raise PresentationError(f"relator {i} is trivial; empty relators are not allowed")
            reduced.append(r)
        object.__setattr__(self, "relators", tuple(reduced))

    @classmethod
    def from_strings(cls, generators: Iterable[str], relators: Iterable[str]) -> Presentation:
        alphabet = Alphabet.from_names(generators)
        return cls(alphabet, tuple(parse_word(r, alphabet) for r in relators))

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def canonical_relators(self) -> tuple[CyclicWord, ...]:
        forms = [cyclic_normal_form(r) for r in self.relators]
        return tuple(sorted(forms, key=lambda c: (len(c), c.representative.letters)))

    def canonical(self) -> Presentation:
        return Presentation(self.alphabet, tuple(c.representative for c in self.canonical_relators()))

    def without_relator(self, index: int) -> Presentation:
        rels = list(self.relators)
        del rels[index]
        return Presentation(self.alphabet, tuple(rels))

    def to_json(self) -> dict:
        return {"generators": list(self.alphabet.names), "relators": [format_word(r) for r in self.relators]}

    @classmethod
    def from_json(cls, data: dict) -> Presentation:
        return cls.from_strings(data["generators"], data["relators"])

    def __str__(self) -> str:
        return f"<{', '.join(self.alphabet.names)} | {', '.join(map(str, self.relators))}>"


def same_presentation(p: Presentation, q: Presentation, renaming: dict[str, str] | None = None) -> bool:
    """Equal alphabets (after renaming p's generators) and equal relator multisets up to cyclic form."""
    renaming = renaming or {}
    names = [renaming.get(n, n) for n in p.alphabet.names]
    if sorted(names) != sorted(q.alphabet.names) or len(set(names)) != len(names):
        return False
    moved = Presentation(q.alphabet, tuple(translate(r, q.alphabet, renaming) for r in p.relators))
    return moved.canonical_relators() == q.canonical_relators()


# -- consequence certificates ------------------------------------------------


@dataclass(frozen=True)
class Factor:
    conjugator: Word
    relator: int
    sign: int = 1


@dataclass(frozen=True)
class ConsequenceCertificate:
    """``w = prod(u_i * r_i^{e_i} * u_i^-1)`` in the free group, factors in order."""

    factors: tuple[Factor, ...] = ()

    @property
    def relators_used(self) -> tuple[int, ...]:
        return tuple(sorted({f.relator for f in self.factors}))

    def to_json(self) -> list:
        return [[format_word(f.conjugator), f.relator, f.sign] for f in self.factors]

    @classmethod
    def from_json(cls, data: Sequence, alphabet: Alphabet) -> ConsequenceCertificate:
        return cls(tuple(Factor(parse_word(u, alphabet), int(i), int(s)) for u, i, s in data))


def certificate_product(p: Presentation, cert: ConsequenceCertificate) -> Word:
    letters: list[int] = []
    for f in cert.factors:
        if not 0 <= f.relator < len(p.relators):
            raise IndexError(f"certificate refers to relator {f.relator}; presentation has {len(p.relators)}")
        if f.sign not in (1, -1):
            raise PresentationError(f"factor sign must be +1 or -1, got {f.sign}")
        r = p.relators[f.relator]
        u = translate(f.conjugator, p.alphabet)
        letters.extend(u.letters)
        letters.extend(r.letters if f.sign == 1 else invert(r).letters)
        letters.extend(invert(u).letters)
    return Word.from_letters(letters, p.alphabet)


def verify_consequence(p: Presentation, w: Word, cert: ConsequenceCertificate) -> bool:
    """Exact free-group equality of the certificate product with ``w`` (no implicit rotation)."""
    return certificate_product(p, cert) == translate(w, p.alphabet)


def _relator_pieces(p: Presentation):
    """Every (relator, sign, rotation) split as prefix x / rest, yielding ``x -> rest^-1`` rewrites."""
    pieces = []
    for i, r in enumerate(p.relators):
        for sign in (1, -1):
            rel = r.letters if sign == 1 else invert(r).letters
            n = len(rel)
            for j in range(n):
                rho = rel[j:] + rel[:j]
                c = rel[:j]
                for k in range(n + 1):
                    x = rho[:k]
                    y = tuple(-t for t in reversed(rho[k:]))
                    pieces.append((i, sign, c, x, y))
    return pieces


def search_consequence(
    p: Presentation,
    w: Word,
    max_factors: int = 8,
    max_conj_len: int = 12,
    *,
    slack: int | None = None,
    budget: int = 200_000,
) -> ConsequenceCertificate | None:
    """Look for a certificate expressing ``w`` through ``p``'s relators.

    Best-first rewriting: a move replaces a subword ``x`` of the current word
    by ``y`` whenever ``x y^-1`` is a cyclic conjugate of a relator or its
    inverse, which peels one conjugated relator off the right-hand end.  The
    current word may grow at most ``slack`` letters past the input length.
    Returns ``None`` when nothing is found within the bounds; that is not a
    proof of non-consequence.
    """
    if max_factors < 1 or max_conj_len < 0:
        raise ValueError("bounds must be positive")
    w = translate(w, p.alphabet)
    if not w:
        return ConsequenceCertificate()
    if slack is None:
        slack = max((len(r) for r in p.relators), default=0)
    limit = len(w) + slack
    pieces = _relator_pieces(p)
    by_first: dict[int, list] = {}
    insertions = []
    for piece in pieces:
        x = piece[3]
        if x:
            by_first.setdefault(x[0], []).append(piece)
        else:
            insertions.append(piece)

    counter = itertools.count()
    start = w.letters
    # heap entries: (length, depth, tiebreak, word, factors so far, newest first)
    heap = [(len(start), 0, next(counter), start, ())]
    seen = {start: 0}
    expanded = 0
    while heap and expanded < budget:
        length, depth, _, cur, factors = heapq.heappop(heap)
        if depth >= max_factors:
            continue
        expanded += 1
        n = len(cur)
        for pos in range(n + 1):
            cands = insertions if pos == n else by_first.get(cur[pos], []) + insertions
            for i, sign, c, x, y in cands:
                k = len(x)
                if cur[pos:pos + k] != x:
                    continue
                s = cur[pos + k:]
                nxt = free_reduce(cur[:pos] + y + s)
                if len(nxt) > limit:
                    continue
                u = free_reduce(tuple(-t for t in reversed(s)) + tuple(-t for t in reversed(x))
                                + tuple(-t for t in reversed(c)))
                if len(u) > max_conj_len:
                    continue
                new_factors = (Factor(Word(u, p.alphabet), i, sign),) + factors
                if not nxt:
                    cert = ConsequenceCertificate(new_factors)
                    if verify_consequence(p, w, cert):
                        return cert
                    continue
                d = depth + 1
                if seen.get(nxt, max_factors + 1) <= d:
                    continue
                seen[nxt] = d
                heapq.heappush(heap, (len(nxt), d, next(counter), nxt, new_factors))
    return None


def chain_consequence(p: Presentation, waypoints: Sequence[Word], **search_opts) -> ConsequenceCertificate | None:
    """Certificate for ``waypoints[0]`` found hop by hop.

    ``w0 = (w0 w1^-1)(w1 w2^-1)...(w_n)`` telescopes, so it is enough to
    certify each short difference and the last waypoint separately.  Useful
    when a direct search wanders; the waypoints are hints, the result is still
    checked as a whole.
    """
    ws = [translate(w, p.alphabet) for w in waypoints]
    if not ws:
        raise ValueError("need at least one waypoint")
    pieces = [a * ~b for a, b in zip(ws, ws[1:])] + [ws[-1]]
    factors: list[Factor] = []
    for piece in pieces:
        cert = search_consequence(p, piece, **search_opts)
        if cert is None:
            return None
        factors.extend(cert.factors)
    cert = ConsequenceCertificate(tuple(factors))
    return cert if verify_consequence(p, ws[0], cert) else None


# -- Tietze moves ----------------------------------------------------------


@dataclass(frozen=True)
class AddRelator:
    word: Word
    cert: ConsequenceCertificate


@dataclass(frozen=True)
class RemoveRelator:
    index: int
    cert: ConsequenceCertificate  # over the presentation with `index` removed


@dataclass(frozen=True)
class AddGenerator:
    name: str
    definition: Word


@dataclass(frozen=True)
class RemoveGenerator:
    name: str
    relator: int


TietzeStep = Union[AddRelator, RemoveRelator, AddGenerator, RemoveGenerator]


def solve_for_generator(r: Word, g: int) -> Word:
    """Given a relator with a single occurrence of generator ``g``, return the word g equals."""
    letters = r.letters
    hits = [k for k, x in enumerate(letters) if letter_generator(x) == g]
    if len(hits) != 1:
        raise InvalidStepError(
            f"generator {r.alphabet.names[g]!r} occurs {len(hits)} times in {format_word(r)}; need exactly one"
        )
    k = hits[0]
    rest = letters[k + 1:] + letters[:k]  # relator rotated to g^e * rest
    rest_word = Word.from_letters(rest, r.alphabet)
    return invert(rest_word) if letter_sign(letters[k]) == 1 else rest_word


def apply_tietze_step(p: Presentation, step: TietzeStep) -> Presentation:
    if isinstance(step, AddRelator):
        w = translate(step.word, p.alphabet)
        if not verify_consequence(p, w, step.cert):
            raise InvalidStepError(f"certificate does not produce {format_word(w)}")
        return Presentation(p.alphabet, p.relators + (w,))

    if isinstance(step, RemoveRelator):
        if not 0 <= step.index < len(p.relators):
            raise InvalidStepError(f"no relator {step.index}")
        rest = p.without_relator(step.index)
        if not rest.relators and step.cert.factors:
            raise InvalidStepError("certificate refers to relators that do not exist")
        try:
            ok = verify_consequence(rest, p.relators[step.index], step.cert)
        except IndexError as exc:
            raise InvalidStepError(str(exc)) from exc
        if not ok:
            raise InvalidStepError(f"relator {step.index} is not shown to be a consequence of the others")
        return rest

    if isinstance(step, AddGenerator):
        if step.name in p.alphabet:
            raise InvalidStepError(f"generator {step.name!r} already present")
        alphabet = Alphabet(p.alphabet.names + (step.name,))
        definition = translate(step.definition, alphabet)
        new_gen = Word.generator(alphabet, step.name)
        rels = tuple(translate(r, alphabet) for r in p.relators)
        return Presentation(alphabet, rels + (new_gen * invert(definition),))

    if isinstance(step, RemoveGenerator):
        if step.name not in p.alphabet:
            raise InvalidStepError(f"no generator {step.name!r}")
        if not 0 <= step.relator < len(p.relators):
            raise InvalidStepError(f"no relator {step.relator}")
        if p.alphabet.size == 1:
            raise InvalidStepError("cannot remove the last generator")
        g = p.alphabet.index(step.name)
        value = solve_for_generator(p.relators[step.relator], g)
        alphabet = Alphabet(tuple(n for n in p.alphabet.names if n != step.name))
        value = translate(value, alphabet)
        rels = []
        for i, r in enumerate(p.relators):
            if i == step.relator:
                continue
            # relators that collapse to the identity are dropped: they are trivially consequences
            r2 = cyclically_reduce(substitute(r, g, value))
            if r2:
                rels.append(r2)
        return Presentation(alphabet, tuple(rels))

    raise TypeError(f"not a Tietze step: {step!r}")


@dataclass
class CertificateCheck:
    ok: bool
    step: int | None = None
    message: str = ""
    final: Presentation | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TietzeCertificate:
    source: Presentation
    target: Presentation
    steps: tuple[TietzeStep, ...] = ()
    renaming: dict[str, str] = field(default_factory=dict, hash=False)

    def replay(self) -> Presentation:
        p = self.source
        for step in self.steps:
            p = apply_tietze_step(p, step)
        return p


def verify_tietze_certificate(cert: TietzeCertificate) -> CertificateCheck:
    """Replay every step; the result must match the target up to cyclic forms and renaming."""
    p = cert.source
    for k, step in enumerate(cert.steps):
        try:
            p = apply_tietze_step(p, step)
        except (PresentationError, IndexError, ValueError) as exc:
            return CertificateCheck(False, k, f"step {k} ({type(step).__name__}): {exc}", p)
    if not same_presentation(p, cert.target, cert.renaming):
        return CertificateCheck(False, len(cert.steps), f"final presentation {p} does not match target {cert.target}", p)
    return CertificateCheck(True, final=p)


def simplify_greedy(p: Presentation) -> tuple[Presentation, TietzeCertificate]:
    """Eliminate generators that occur once in some relator, shortest relator first."""
    steps: list[TietzeStep] = []
    cur = p
    while cur.alphabet.size > 1:
        best = None
        for i, r in enumerate(cur.relators):
            for g in range(cur.alphabet.size):
                if occurrences(r, g) == 1:
                    key = (len(r), g, i)
                    if best is None or key < best:
                        best = key
        if best is None:
            break
        _, g, i = best
        step = RemoveGenerator(cur.alphabet.names[g], i)
        steps.append(step)
        cur = apply_tietze_step(cur, step)
    result = cur.canonical()
    return result, TietzeCertificate(p, result, tuple(steps))


# -- serialisation of steps ---------------------------------------------------


def step_to_json(step: TietzeStep) -> dict:
    if isinstance(step, AddRelator):
        return {"op": "add_relator", "word": format_word(step.word), "cert": step.cert.to_json()}
    if isinstance(step, RemoveRelator):
        return {"op": "remove_relator", "index": step.index, "cert": step.cert.to_json()}
    if isinstance(step, AddGenerator):
        return {"op": "add_generator", "name": step.name, "definition": format_word(step.definition)}
    if isinstance(step, RemoveGenerator):
        return {"op": "remove_generator", "name": step.name, "relator": step.relator}
    raise TypeError(step)


def steps_from_json(data: Sequence[dict], source: Presentation) -> tuple[TietzeStep, ...]:
    """Decode steps; words are parsed over the alphabet current at each step."""
    steps: list[TietzeStep] = []
    alphabet = source.alphabet
    for item in data:
        op = item["op"]
        if op == "add_relator":
            steps.append(AddRelator(parse_word(item["word"], alphabet),
                                    ConsequenceCertificate.from_json(item["cert"], alphabet)))
        elif op == "remove_relator":
            steps.append(RemoveRelator(int(item["index"]), ConsequenceCertificate.from_json(item["cert"], alphabet)))
        elif op == "add_generator":
            steps.append(AddGenerator(item["name"], parse_word(item["definition"], alphabet)))
            alphabet = Alphabet(alphabet.names + (item["name"],))
        elif op == "remove_generator":
            steps.append(RemoveGenerator(item["name"], int(item["relator"])))
            alphabet = Alphabet(tuple(n for n in alphabet.names if n != item["name"]))
        else:
            raise PresentationError(f"unknown Tietze step {op!r}")
    return tuple(steps)


def certificate_to_json(cert: TietzeCertificate) -> dict:
    return {
        "source": cert.source.to_json(),
        "target": cert.target.to_json(),
        "renaming": dict(cert.renaming),
        "steps": [step_to_json(s) for s in cert.steps],
    }


def certificate_from_json(data: dict) -> TietzeCertificate:
    source = Presentation.from_json(data["source"])
    target = Presentation.from_json(data["target"])
    return TietzeCertificate(source, target, steps_from_json(data["steps"], source), dict(data.get("renaming", {})))


def build_tietze_certificate(
    source: Presentation,
    target: Presentation,
    eliminate: Sequence[str] | None = None,
    renaming: dict[str, str] | None = None,
    **search_opts,
) -> TietzeCertificate | None:
    """Assemble a certificate from ``source`` to ``target``.

    ``eliminate`` names generators to remove in order, each solved from the
    shortest relator containing it exactly once; when omitted,
    :func:`simplify_greedy` picks them.  The remaining
    relators are then reconciled with the target's by consequence search:
    target relators are added, leftovers removed.  Returns ``None`` if a
    search fails.
    """
    renaming = dict(renaming or {})
    steps: list[TietzeStep] = []
    if eliminate is None:
        _, greedy = simplify_greedy(source)
        steps.extend(greedy.steps)
        cur = greedy.replay()
    else:
        cur = source
        for name in eliminate:
            g = cur.alphabet.index(name)
            hits = [(len(r), i) for i, r in enumerate(cur.relators) if occurrences(r, g) == 1]
            if not hits:
                raise InvalidStepError(f"no relator defines {name!r}")
            step = RemoveGenerator(name, min(hits)[1])
            steps.append(step)
            cur = apply_tietze_step(cur, step)

    inverse = {v: k for k, v in renaming.items()}
    wanted = [translate(r, cur.alphabet, inverse) for r in target.relators]
    wanted_forms = [cyclic_normal_form(r) for r in wanted]
    present = {cyclic_normal_form(r) for r in cur.relators}
    for r, form in zip(wanted, wanted_forms):
        if form in present:
            continue
        cert = search_consequence(cur, r, **search_opts)
        if cert is None:
            return None
        step = AddRelator(r, cert)
        steps.append(step)
        cur = apply_tietze_step(cur, step)
        present.add(form)

    keep = list(wanted_forms)
    while len(cur.relators) > len(wanted):
        # drop the first relator that is surplus to the target multiset
        counts = {}
        for f in keep:
            counts[f] = counts.get(f, 0) + 1
        surplus = None
        for i, r in enumerate(cur.relators):
            f = cyclic_normal_form(r)
            if counts.get(f, 0) > 0:
                counts[f] -= 1
            elif surplus is None:
                surplus = i
        rest = cur.without_relator(surplus)
        cert = search_consequence(rest, cur.relators[surplus], **search_opts)
        if cert is None:
            return None
        step = RemoveRelator(surplus, cert)
        steps.append(step)
        cur = apply_tietze_step(cur, step)
    return TietzeCertificate(source, target, tuple(steps), renaming)


def build_planned_certificate(
    source: Presentation,
    target: Presentation,
    plan: Sequence[dict],
    renaming: dict[str, str] | None = None,
    **search_opts,
) -> TietzeCertificate | None:
    """Follow an explicit move plan, searching only for the evidence.

    Plan entries are ``{"op": "remove_generator", "name": g}``,
    ``{"op": "add_relator", "word": w}`` or ``{"op": "remove_relator", "word": w}``,
    the last two optionally with ``"via"``: waypoints handed to
    :func:`chain_consequence`.  Relators to remove are located by cyclic
    normal form, so plans do not depend on relator order.
    """
    steps: list[TietzeStep] = []
    cur = source
    for item in plan:
        op = item["op"]
        if op == "remove_generator":
            g = cur.alphabet.index(item["name"])
            hits = [(len(r), i) for i, r in enumerate(cur.relators) if occurrences(r, g) == 1]
            if not hits:
                raise InvalidStepError(f"no relator defines {item['name']!r}")
            step: TietzeStep = RemoveGenerator(item["name"], min(hits)[1])
            steps.append(step)
            cur = apply_tietze_step(cur, step)
            continue
        word = parse_word(item["word"], cur.alphabet)
        if op == "add_relator":
            ambient = cur
        elif op == "remove_relator":
            form = cyclic_normal_form(word)
            matches = [i for i, r in enumerate(cur.relators) if cyclic_normal_form(r) == form]
            if not matches:
                raise InvalidStepError(f"{item['word']} is not a current relator")
            index = matches[0]
            ambient = cur.without_relator(index)
        else:
            raise PresentationError(f"unknown plan op {op!r}")
        if "via" in item:
            waypoints = [word] + [parse_word(v, cur.alphabet) for v in item["via"]]
            opts = {"max_conj_len": 64, "slack": 0, "budget": 5_000} | search_opts
            cert = chain_consequence(ambient, waypoints, **opts)
        else:
            cert = search_consequence(ambient, word, **search_opts)
        if cert is None:
            return None
        step = AddRelator(word, cert) if op == "add_relator" else RemoveRelator(index, cert)
        steps.append(step)
        cur = apply_tietze_step(cur, step)
    return TietzeCertificate(source, target, tuple(steps), dict(renaming or {}))
