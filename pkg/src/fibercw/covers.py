"""Finite cyclic covers of presentation complexes.

A surjection ``h`` from the presented group onto ``Z_m`` determines an
``m``-sheeted cover.  Its cosets are just residues, so the coset table is
plain modular arithmetic and no coset enumeration is needed.  The kernel is
presented by Reidemeister-Schreier rewriting over a breadth-first Schreier
transversal.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd
from typing import Mapping

from .presentation import Presentation, euler_characteristic
from .words import Alphabet, ParseError, Word


class CoverError(ValueError):
    """Invalid homomorphism data for a cover."""


class CoverDefect(AssertionError):
    """An internal consistency check on a constructed cover failed."""


@dataclass(frozen=True)
class CyclicHom:
    modulus: int
    images: Mapping[str, int]

    def __post_init__(self):
        if self.modulus < 1:
            raise CoverError("modulus must be at least 1")
        images = {k: v % self.modulus for k, v in dict(self.images).items()}
        object.__setattr__(self, "images", images)
        g = self.modulus
        for v in images.values():
            g = gcd(g, v)
        if g != 1:
            raise CoverError(f"homomorphism onto Z_{self.modulus} is not surjective (gcd {g})")

    def __call__(self, w: Word) -> int:
        total = 0
        for name, e in w.signed_letters():
            total += e * self.images[name]
        return total % self.modulus

    def check(self, p: Presentation) -> None:
        missing = [g for g in p.generators if g not in self.images]
        if missing:
            raise CoverError(f"no image for generator(s) {', '.join(missing)}")
        extra = sorted(set(self.images) - set(p.generators))
        if extra:
            raise CoverError(f"image given for unknown generator(s) {', '.join(extra)}")
        for i, rel in enumerate(p.relators):
            if self(rel):
                raise CoverError(f"relator {i} ({rel}) maps to {self(rel)} mod {self.modulus}, not 0")


@dataclass(frozen=True)
class CosetTable:
    """``action[g][c]`` is the coset reached from ``c`` along generator ``g``."""

    modulus: int
    generators: tuple[str, ...]
    action: Mapping[str, tuple[int, ...]]

    @classmethod
    def from_hom(cls, p: Presentation, h: CyclicHom) -> "CosetTable":
        h.check(p)
        m = h.modulus
        action = {g: tuple((c + h.images[g]) % m for c in range(m)) for g in p.generators}
        return cls(m, p.generators, action)


def _spanning_tree(table: CosetTable, alphabet: Alphabet):
    words = {0: alphabet.identity()}
    edges: set[tuple[int, str]] = set()
    queue = deque([0])
    while queue:
        c = queue.popleft()
        for g in table.generators:
            d = table.action[g][c]
            if d not in words:
                words[d] = words[c] * alphabet.generator(g)
                edges.add((c, g))
                queue.append(d)
    if len(words) != table.modulus:
        raise CoverError("coset table is not transitive")
    return words, edges


def schreier_transversal(table: CosetTable, alphabet: Alphabet) -> dict[int, Word]:
    """Breadth-first spanning tree from coset 0, generators scanned in order.

    Only positive generator edges are followed; they already reach every
    coset of a finite cyclic quotient.
    """
    return _spanning_tree(table, alphabet)[0]


def schreier_name(coset: int, gen: str) -> str:
    return f"s_{coset}_{gen}"


def kernel_presentation(p: Presentation, h: CyclicHom) -> Presentation:
    """Presentation of ``ker h`` as the full ``m``-sheeted cover complex.

    Generators ``s_<c>_<g>`` stand for ``t(c) g t(c g)^-1``; those on the
    spanning tree are trivial and dropped.  Every relator is lifted at every
    coset, so nothing is discarded and the Euler characteristic is exactly
    ``m`` times that of ``p``.
    """
    table = CosetTable.from_hom(p, h)
    _, tree = _spanning_tree(table, p.alphabet)
    m = table.modulus
    names = [schreier_name(c, g) for c in range(m) for g in p.generators if (c, g) not in tree]
    alphabet = Alphabet(tuple(names))
    index = {n: i + 1 for i, n in enumerate(names)}

    def rewrite(w: Word, start: int) -> Word:
        letters = []
        c = start
        for g, e in w.signed_letters():
            if e > 0:
                key = (c, g)
                c = table.action[g][c]
            else:
                c = (c - h.images[g]) % m
                key = (c, g)
            if key not in tree:
                letters.append(e * index[schreier_name(*key)])
        if c != start:
            raise CoverDefect(f"lifted relator {w} does not close up at coset {start}")
        return Word(alphabet, tuple(letters))

    relators = tuple(rewrite(rel, c) for rel in p.relators for c in range(m))
    expected = m * len(p.generators) - (m - 1)
    if len(names) != expected:
        raise CoverDefect(f"{len(names)} Schreier generators, expected {expected}")
    return Presentation(alphabet, relators)


def cover_euler_check(p: Presentation, h: CyclicHom) -> tuple[int, int]:
    """Return ``(chi(p), chi(cover))`` after checking ``chi(cover) = m chi(p)``.

    The cover's characteristic is read off the constructed kernel
    presentation and compared with the raw cell count of the cover.
    """
    m = h.modulus
    chi_base = euler_characteristic(p)
    kernel = kernel_presentation(p, h)
    chi_cover = euler_characteristic(kernel)
    raw = m - m * len(p.generators) + m * len(p.relators)
    if not (chi_cover == raw == m * chi_base):
        raise CoverDefect(f"cover chi {chi_cover}, raw cell count {raw}, expected {m * chi_base}")
    return chi_base, chi_cover


# -- orbifold groups F_r * Z_p * Z_q ----------------------------------------

@dataclass(frozen=True)
class OrbifoldCover:
    index: int
    kernel_rank: int
    cover_chi: int
    cover_sphere_count: int

    def to_json(self) -> dict:
        return {
            "index": self.index,
            "kernel_rank": self.kernel_rank,
            "cover_chi": self.cover_chi,
            "cover_sphere_count": self.cover_sphere_count,
        }


def orbifold_cover_invariants(r: int, p: int, q: int, chi_complement: int) -> OrbifoldCover:
    """Invariants of the degree-``pq`` free cover of a complex with group ``F_r * Z_p * Z_q``.

    The cover has free fundamental group, so it is a wedge of circles and
    2-spheres; ``cover_sphere_count`` is ``chi + rank - 1``.
    """
    if r < 0 or p < 1 or q < 1:
        raise ValueError("need r >= 0 and p, q >= 1")
    if gcd(p, q) != 1:
        raise ValueError(f"gcd(p, q) = {gcd(p, q)}, expected 1")
    index = p * q
    kernel_rank = p * q * r + (p - 1) * (q - 1)
    cover_chi = index * chi_complement
    spheres = cover_chi + kernel_rank - 1
    if spheres < 0:
        raise ValueError(
            f"inconsistent data: cover with chi {cover_chi} and free rank {kernel_rank} "
            f"would need {spheres} spheres"
        )
    return OrbifoldCover(index, kernel_rank, cover_chi, spheres)


def orbifold_presentation(r: int, p: int, q: int) -> Presentation:
    """``<a1..ar, u, v | u^p, v^q>``."""
    gens = [f"a{i}" for i in range(1, r + 1)] + ["u", "v"]
    return Presentation.from_strings(gens, [f"u^{p}", f"v^{q}"])


def torsion_hom(r: int, p: int, q: int) -> CyclicHom:
    """Abelianize and project onto the torsion ``Z_p x Z_q = Z_pq``: u -> q, v -> p, a_i -> 0."""
    images = {f"a{i}": 0 for i in range(1, r + 1)}
    images.update(u=q, v=p)
    return CyclicHom(p * q, images)


# -- text format -------------------------------------------------------------

def parse_cyclic_hom(text: str) -> CyclicHom:
    """Parse ``mod: 6`` followed by ``gen -> residue`` lines."""
    modulus = None
    images: dict[str, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("mod:"):
            val = line[4:].strip()
            if modulus is not None:
                raise ParseError("duplicate mod line", lineno, "mod:")
            if not val.isdigit():
                raise ParseError("modulus must be a positive integer", lineno, val or "mod:")
            modulus = int(val)
            continue
        lhs, arrow, rhs = line.partition("->")
        if not arrow:
            raise ParseError("expected 'gen -> residue'", lineno, line.split()[0])
        name, val = lhs.strip(), rhs.strip()
        try:
            images[name] = int(val)
        except ValueError:
            raise ParseError("residue must be an integer", lineno, val) from None
    if modulus is None:
        raise ParseError("missing mod line")
    try:
        return CyclicHom(modulus, images)
    except CoverError as exc:
        raise ParseError(str(exc)) from None


def format_cyclic_hom(h: CyclicHom) -> str:
    return "\n".join([f"mod: {h.modulus}"] + [f"{g} -> {v}" for g, v in h.images.items()]) + "\n"
