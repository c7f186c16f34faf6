"""Finite presentations and their one-vertex 2-complexes.

Simplification uses only moves that keep ``1 - #gens + #relators`` fixed, so
the Euler characteristic and integral homology of the presentation complex
survive every step.  Relators that collapse to the empty word are kept: they
are 2-spheres in the complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import (
    Alphabet,
    ParseError,
    Word,
    WordError,
    cyclic_reduce_letters,
    format_word,
    parse_word,
)

DEFAULT_BUDGET = 10**6


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relators: tuple[Word, ...] = ()
    # Free-form annotations (warnings etc.); ignored by equality.
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        rels = []
        for w in self.relators:
            if w.alphabet != self.alphabet:
                raise WordError(f"relator {w} is not over generators {self.alphabet.names}")
            rels.append(w.cyclically_reduced())
        object.__setattr__(self, "relators", tuple(rels))
        object.__setattr__(self, "comments", tuple(self.comments))

    @classmethod
    def from_strings(cls, gens: Iterable[str], rels: Iterable[str] = ()) -> "Presentation":
        alphabet = Alphabet(tuple(gens))
        return cls(alphabet, tuple(parse_word(r, alphabet) for r in rels))

    @property
    def generators(self) -> tuple[str, ...]:
        return self.alphabet.names

    def with_relators(self, extra: Iterable[Word]) -> "Presentation":
        return Presentation(self.alphabet, self.relators + tuple(extra), self.comments)

    def with_comments(self, *lines: str) -> "Presentation":
        return Presentation(self.alphabet, self.relators, self.comments + lines)

    def nontrivial_relators(self) -> tuple[Word, ...]:
        return tuple(r for r in self.relators if r)

    def is_free(self) -> bool:
        """True when every relator is trivial, so the group is free on the generators."""
        return not self.nontrivial_relators()

    def __str__(self):
        return format_presentation(self)


def euler_characteristic(p: Presentation) -> int:
    return 1 - len(p.alphabet) + len(p.relators)


# -- text / JSON formats ----------------------------------------------------

def format_presentation(p: Presentation) -> str:
    lines = [f"# {c}" for c in p.comments]
    lines.append("gens: " + " ".join(p.generators) if p.generators else "gens:")
    rels = ", ".join(format_word(r) for r in p.relators)
    lines.append("rels: " + rels if rels else "rels:")
    return "\n".join(lines) + "\n"


def presentation_to_json(p: Presentation) -> dict:
    return {"gens": list(p.generators), "rels": [format_word(r) for r in p.relators]}


def parse_presentation(text: str) -> Presentation:
    """Parse the ``gens:``/``rels:`` text format, or the JSON form.

    Several ``rels:`` lines are concatenated.  Comment lines start with ``#``.
    """
    if text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            return Presentation.from_strings(data["gens"], data.get("rels", []))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            raise ParseError(f"bad JSON presentation: {exc}") from None

    gens: list[str] | None = None
    rel_chunks: list[tuple[int, str]] = []
    comments = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in ("gens", "rels"):
            raise ParseError("expected 'gens:' or 'rels:'", lineno, line.split()[0])
        if key == "gens":
            if gens is not None:
                raise ParseError("duplicate gens line", lineno, "gens:")
            gens = rest.split()
            try:
                Alphabet(tuple(gens))
            except WordError as exc:
                raise ParseError(str(exc), lineno, rest.strip() or "gens:") from None
        else:
            if gens is None:
                raise ParseError("rels line before gens line", lineno, "rels:")
            rel_chunks.append((lineno, rest))
    if gens is None:
        raise ParseError("missing gens line")
    alphabet = Alphabet(tuple(gens))
    relators = []
    for lineno, chunk in rel_chunks:
        if not chunk.strip():
            continue
        for piece in chunk.split(","):
            relators.append(parse_word(piece, alphabet, lineno))
    return Presentation(alphabet, tuple(relators))


# -- simplification ---------------------------------------------------------

@dataclass
class MoveLog:
    moves: list[str] = field(default_factory=list)
    exhausted: bool = False

    def __len__(self):
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)


def _invert(letters: Sequence[int]) -> tuple[int, ...]:
    return tuple(-x for x in reversed(letters))


def _find_elimination(rels: list[tuple[int, ...]]):
    """First (relator, position) where the letter's generator occurs once in that relator.

    Relators are scanned shortest first, ties by index; inside a relator by position.
    """
    order = sorted((len(r), i) for i, r in enumerate(rels) if r)
    for _, i in order:
        r = rels[i]
        counts: dict[int, int] = {}
        for x in r:
            counts[abs(x)] = counts.get(abs(x), 0) + 1
        for pos, x in enumerate(r):
            if counts[abs(x)] == 1:
                return i, pos
    return None


def _eliminate(gens: list[str], rels: list[tuple[int, ...]], i: int, pos: int):
    r = rels[i]
    x = r[pos]
    g = abs(x)
    rest = r[pos + 1:] + r[:pos]         # r ~ x * rest, so x = rest^-1
    value = _invert(rest) if x > 0 else rest
    value_inv = _invert(value)
    new_rels = []
    for j, s in enumerate(rels):
        if j == i:
            continue
        out: list[int] = []
        for y in s:
            if abs(y) == g:
                out.extend(value if y > 0 else value_inv)
            else:
                out.append(y)
        new_rels.append(out)

    def shift(y: int) -> int:
        a = abs(y)
        return y if a < g else (y - 1 if y > 0 else y + 1)

    rels[:] = [cyclic_reduce_letters([shift(y) for y in s]) for s in new_rels]
    name = gens.pop(g - 1)
    shifted_value = [shift(y) for y in value]
    return name, shifted_value


def _best_rewrite(rels: list[tuple[int, ...]]):
    """Shortest replacement of the lowest-index relator that some other relator shortens.

    A candidate multiplies a rotation of relator ``i`` by a rotation of relator
    ``j`` or its inverse; rotations are conjugations, so the normal closure is
    unchanged.  Only products whose junction cancels more than half of the
    multiplier are built, because only those can shorten ``i``.
    """
    for i, target in enumerate(rels):
        n = len(target)
        if n == 0:
            continue
        best = None
        for j, source in enumerate(rels):
            if j == i or not source:
                continue
            m = len(source)
            if 2 * n <= m:
                continue
            for sign in (1, -1):
                s = source if sign == 1 else _invert(source)
                positions: dict[int, list[int]] = {}
                for q, y in enumerate(s):
                    positions.setdefault(y, []).append(q)
                for p in range(n):
                    # target rotated to end at p, multiplier rotated to start at q
                    for q in positions.get(-target[p], ()):
                        k = 1
                        limit = min(n, m)
                        while k < limit and target[(p - k) % n] == -s[(q + k) % m]:
                            k += 1
                        if 2 * k <= m:
                            continue
                        left = [target[(p + 1 + t) % n] for t in range(n - k)]
                        right = [s[(q + k + t) % m] for t in range(m - k)]
                        cand = cyclic_reduce_letters(left + right)
                        if len(cand) < n and (best is None or len(cand) < len(best[0])):
                            best = (cand, j, sign)
        if best is not None:
            return i, best
    return None


def simplify(p: Presentation, budget: int = DEFAULT_BUDGET) -> tuple[Presentation, MoveLog]:
    """Simplify ``p`` by Euler-characteristic-preserving Tietze moves.

    Generator eliminations are tried before relator rewrites.  Returns the
    simplified presentation and a log of the moves applied; ``log.exhausted``
    is set when the move budget ran out before a fixed point was reached.
    """
    gens = list(p.generators)
    rels = [tuple(r.letters) for r in p.relators]
    log = MoveLog()
    while True:
        if len(log.moves) >= budget:
            log.exhausted = True
            break
        found = _find_elimination(rels)
        if found is not None:
            i, pos = found
            name, value = _eliminate(gens, rels, i, pos)
            value_word = Word(Alphabet(tuple(gens)), tuple(value))
            log.moves.append(f"eliminate {name} = {format_word(value_word)} using relator {i}")
            continue
        found = _best_rewrite(rels)
        if found is not None:
            i, (cand, j, sign) = found
            before = len(rels[i])
            rels[i] = cand
            which = f"relator {j}" if sign == 1 else f"inverse of relator {j}"
            log.moves.append(f"rewrite relator {i} with {which}: length {before} -> {len(cand)}")
            continue
        break
    alphabet = Alphabet(tuple(gens))
    return Presentation(alphabet, tuple(Word(alphabet, r) for r in rels)), log


def quotient_by(p: Presentation, name: str) -> Presentation:
    """Kill the generator ``name``: add it as a relator and simplify."""
    if name not in p.alphabet:
        raise WordError(f"unknown generator {name!r}")
    return simplify(p.with_relators([p.alphabet.generator(name)]))[0]


# -- recognizing the group --------------------------------------------------

@dataclass(frozen=True)
class GroupShape:
    """``kind`` is one of ``free``, ``cyclic``, ``free_product_of_cyclics``, ``unresolved``."""

    kind: str
    rank: int = 0
    orders: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "orders", tuple(self.orders))
        if self.kind not in ("free", "cyclic", "free_product_of_cyclics", "unresolved"):
            raise ValueError(f"unknown group shape kind {self.kind!r}")
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if any(d < 2 for d in self.orders):
            raise ValueError("finite cyclic orders must be at least 2")
        if self.kind == "cyclic" and len(self.orders) != 1:
            raise ValueError("cyclic shape needs exactly one order")

    @classmethod
    def free(cls, rank: int) -> "GroupShape":
        return cls("free", rank)

    @classmethod
    def cyclic(cls, order: int) -> "GroupShape":
        return cls("cyclic", 0, (order,))

    @classmethod
    def free_product(cls, rank: int, orders: Sequence[int]) -> "GroupShape":
        return cls("free_product_of_cyclics", rank, tuple(orders))

    @classmethod
    def unresolved(cls) -> "GroupShape":
        return cls("unresolved")

    @property
    def order(self) -> int:
        return self.orders[0]

    def __str__(self):
        if self.kind == "free":
            return f"free:{self.rank}"
        if self.kind == "cyclic":
            return f"cyclic:{self.order}"
        if self.kind == "free_product_of_cyclics":
            return f"fpc:{self.rank}:{','.join(map(str, self.orders))}"
        return "unresolved"

    def to_json(self) -> dict:
        return {"kind": self.kind, "rank": self.rank, "orders": list(self.orders)}


def parse_shape(text: str) -> GroupShape:
    """Parse ``free:r``, ``cyclic:d`` or ``fpc:r:d1,d2,...``."""
    parts = text.strip().split(":")
    try:
        if parts[0] == "free" and len(parts) == 2:
            return GroupShape.free(int(parts[1]))
        if parts[0] == "cyclic" and len(parts) == 2:
            return GroupShape.cyclic(int(parts[1]))
        if parts[0] == "fpc" and len(parts) == 3:
            orders = [int(d) for d in parts[2].split(",") if d.strip()]
            return GroupShape.free_product(int(parts[1]), orders)
    except ValueError as exc:
        raise ParseError(f"bad group shape: {exc}", token=text) from None
    raise ParseError("expected free:<r>, cyclic:<d> or fpc:<r>:<d1>,<d2>", token=text)


def recognize_shape(p: Presentation, budget: int = DEFAULT_BUDGET) -> GroupShape:
    """Recognize free groups and free products of cyclic groups after simplifying.

    Only the literal forms are recognized: no nontrivial relators, or each
    nontrivial relator a proper power of its own generator.  Anything else
    is ``unresolved``, which is never a wrong answer.
    """
    q, log = simplify(p, budget)
    if log.exhausted:
        return GroupShape.unresolved()
    rels = q.nontrivial_relators()
    if not rels:
        return GroupShape.free(len(q.alphabet))
    powered: dict[int, int] = {}
    for r in rels:
        gens = {abs(x) for x in r.letters}
        if len(gens) != 1:
            return GroupShape.unresolved()
        g = gens.pop()
        if g in powered or len(set(r.letters)) != 1:
            return GroupShape.unresolved()
        powered[g] = len(r)
    orders = list(powered.values())
    if len(q.alphabet) == 1 and len(orders) == 1:
        return GroupShape.cyclic(orders[0])
    return GroupShape.free_product(len(q.alphabet) - len(orders), orders)
