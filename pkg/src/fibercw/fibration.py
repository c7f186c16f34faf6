"""Mapping-torus presentations of fibered curve complements.

The fiber over the base point retracts onto a wedge of ``2g + s - 1``
circles ``x1..xn``; the base retracts onto a wedge of ``r`` circles
``g1..gr``.  Each base loop carries a monodromy endomorphism of the fiber's
free group, and the complement is homotopy equivalent to the presentation
complex with relators ``gk^-1 xi gk (monodromy_k(xi))^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .homology import IntegerMatrix, determinant, invariant_factors
from .presentation import Presentation
from .words import Alphabet, ParseError, Word, WordError, format_word, parse_word, substitute

BASE_PREFIX = "g"
FIBER_PREFIX = "x"


class MonodromyError(ValueError):
    pass


@dataclass(frozen=True)
class FiberData:
    genus: int
    punctures: int

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be nonnegative")
        if self.punctures < 1:
            raise ValueError("a fiber over the complement is affine: at least one puncture is required")

    @property
    def rank(self) -> int:
        return 2 * self.genus + self.punctures - 1


def fiber_rank(f: FiberData) -> int:
    return f.rank


def fiber_alphabet(n: int) -> Alphabet:
    return Alphabet(tuple(f"{FIBER_PREFIX}{i}" for i in range(1, n + 1)))


def _identity_images(alphabet: Alphabet) -> dict[str, Word]:
    return {name: alphabet.generator(name) for name in alphabet}


@dataclass(frozen=True)
class MonodromyEndomorphism:
    """An endomorphism of the fiber group, given by generator images.

    ``inverse`` is an optional certificate: a second endomorphism that must
    compose with this one to the identity in both orders.  Without it only
    the necessary condition ``det(abelianization) = ±1`` is checked.
    """

    alphabet: Alphabet
    images: Mapping[str, Word]
    inverse: Mapping[str, Word] | None = None

    def __post_init__(self):
        object.__setattr__(self, "images", dict(self.images))
        if self.inverse is not None:
            object.__setattr__(self, "inverse", dict(self.inverse))
        self._check_images(self.images, "image")
        det = determinant(self.abelianization())
        if det not in (1, -1):
            raise MonodromyError(f"abelianized monodromy has determinant {det}, expected ±1")
        if self.inverse is not None:
            self._check_images(self.inverse, "inverse")
            for name in self.alphabet:
                x = self.alphabet.generator(name)
                there = substitute(substitute(x, self.images, self.alphabet), self.inverse, self.alphabet)
                back = substitute(substitute(x, self.inverse, self.alphabet), self.images, self.alphabet)
                if there != x or back != x:
                    raise MonodromyError(f"inverse certificate fails on generator {name}")

    def _check_images(self, images: Mapping[str, Word], what: str):
        if set(images) != set(self.alphabet.names):
            missing = sorted(set(self.alphabet.names) - set(images))
            extra = sorted(set(images) - set(self.alphabet.names))
            raise MonodromyError(f"{what} map must cover exactly the fiber generators "
                                 f"(missing {missing}, unexpected {extra})")
        for name, w in images.items():
            if w.alphabet != self.alphabet:
                raise MonodromyError(f"{what} of {name} is not a word in the fiber generators")

    @classmethod
    def from_strings(
        cls,
        n: int,
        images: Mapping[str, str],
        inverse: Mapping[str, str] | None = None,
    ) -> "MonodromyEndomorphism":
        alphabet = fiber_alphabet(n)
        imgs = {k: parse_word(v, alphabet) for k, v in images.items()}
        inv = None if inverse is None else {k: parse_word(v, alphabet) for k, v in inverse.items()}
        return cls(alphabet, imgs, inv)

    @classmethod
    def identity(cls, n: int) -> "MonodromyEndomorphism":
        alphabet = fiber_alphabet(n)
        ids = _identity_images(alphabet)
        return cls(alphabet, ids, dict(ids))

    @property
    def rank(self) -> int:
        return len(self.alphabet)

    @property
    def certified(self) -> bool:
        return self.inverse is not None

    def __call__(self, w: Word) -> Word:
        return substitute(w, self.images, self.alphabet)

    def then(self, other: "MonodromyEndomorphism") -> "MonodromyEndomorphism":
        """Apply ``self`` first, then ``other`` (``x -> other(self(x))``)."""
        if other.alphabet != self.alphabet:
            raise MonodromyError("cannot compose monodromies of different fiber rank")
        images = {n: other(w) for n, w in self.images.items()}
        inverse = None
        if self.inverse is not None and other.inverse is not None:
            inverse = {n: substitute(w, self.inverse, self.alphabet) for n, w in other.inverse.items()}
        return MonodromyEndomorphism(self.alphabet, images, inverse)

    def abelianization(self) -> IntegerMatrix:
        """Column i is the exponent vector of the image of ``x_i``."""
        cols = [self.images[name].exponent_vector() for name in self.alphabet]
        n = len(self.alphabet)
        return IntegerMatrix.from_rows([[cols[j][i] for j in range(n)] for i in range(n)], n)

    def is_identity(self) -> bool:
        return self.images == _identity_images(self.alphabet)


@dataclass(frozen=True)
class FibrationSpec:
    fiber: FiberData
    monodromies: tuple[MonodromyEndomorphism, ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "monodromies", tuple(self.monodromies))
        for k, mono in enumerate(self.monodromies, 1):
            if mono.rank != self.fiber.rank:
                raise MonodromyError(
                    f"monodromy {k} acts on rank {mono.rank}, fiber has rank {self.fiber.rank}"
                )

    @property
    def r(self) -> int:
        return len(self.monodromies)

    @property
    def n(self) -> int:
        return self.fiber.rank

    def uncertified(self) -> list[int]:
        """1-based indices of monodromies accepted without an inverse certificate."""
        return [k for k, m in enumerate(self.monodromies, 1) if not m.certified]


def mapping_torus_presentation(spec: FibrationSpec) -> Presentation:
    """Presentation on ``g1..gr, x1..xn`` with relators ordered by (k, i).

    Uncertified monodromies are reported as comments on the output.
    """
    r, n = spec.r, spec.n
    names = tuple(f"{BASE_PREFIX}{k}" for k in range(1, r + 1)) + fiber_alphabet(n).names
    alphabet = Alphabet(names)
    relators = []
    for k, mono in enumerate(spec.monodromies, 1):
        gamma = alphabet.generator(f"{BASE_PREFIX}{k}")
        for i, xname in enumerate(mono.alphabet.names):
            x = alphabet.generator(xname)
            image = Word(alphabet, tuple(y + r if y > 0 else y - r for y in mono.images[xname].letters))
            relators.append(gamma.inverse() * x * gamma * image.inverse())
    comments = tuple(
        f"warning: monodromy {k} has no inverse certificate; only det = ±1 was checked"
        for k in spec.uncertified()
    )
    return Presentation(alphabet, tuple(relators), comments)


def cubic_pencil_spec(r: int) -> FibrationSpec:
    """Smooth cubic pencil with two nodal fibers: Dehn twists over the first two loops."""
    if r < 2:
        raise ValueError("the cubic pencil has two atypical fibers; r must be at least 2")
    twist1 = MonodromyEndomorphism.from_strings(
        2, {"x1": "x1", "x2": "x1 x2"}, {"x1": "x1", "x2": "x1^-1 x2"}
    )
    twist2 = MonodromyEndomorphism.from_strings(
        2, {"x1": "x2 x1", "x2": "x2"}, {"x1": "x2^-1 x1", "x2": "x2"}
    )
    monos = [twist1, twist2] + [MonodromyEndomorphism.identity(2)] * (r - 2)
    return FibrationSpec(FiberData(genus=1, punctures=1), tuple(monos))


def h1_from_monodromy_blocks(spec: FibrationSpec) -> tuple[int, tuple[int, ...]]:
    """``H1 = Z^r + coker[A_1 - I | ... | A_r - I]`` as (free rank, torsion factors)."""
    n, r = spec.n, spec.r
    blocks = []
    for mono in spec.monodromies:
        a = mono.abelianization()
        blocks.append([[a[i, j] - (i == j) for j in range(n)] for i in range(n)])
    stacked = IntegerMatrix.from_rows(
        [sum((blk[i] for blk in blocks), []) for i in range(n)], n * r
    )
    factors = invariant_factors(stacked)
    return r + n - len(factors), tuple(f for f in factors if f > 1)


# -- text format -------------------------------------------------------------

def parse_fibration_spec(text: str) -> FibrationSpec:
    """Parse::

        fiber: g=1 s=1
        monodromy:
          x1 -> x1
          x2 -> x1 x2
        inverse:
          x1 -> x1
          x2 -> x1^-1 x2
    """
    fiber: FiberData | None = None
    blocks: list[dict] = []
    section = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("fiber:"):
            if fiber is not None:
                raise ParseError("duplicate fiber line", lineno, "fiber:")
            fields = {}
            for tok in line[len("fiber:"):].split():
                key, eq, val = tok.partition("=")
                if not eq or key not in ("g", "s") or not val.lstrip("-").isdigit():
                    raise ParseError("expected g=<int> s=<int>", lineno, tok)
                fields[key] = int(val)
            if set(fields) != {"g", "s"}:
                raise ParseError("fiber line needs both g= and s=", lineno, line)
            try:
                fiber = FiberData(fields["g"], fields["s"])
            except ValueError as exc:
                raise ParseError(str(exc), lineno, line) from None
        elif line == "monodromy:":
            blocks.append({"images": {}, "inverse": None, "line": lineno})
            section = "images"
        elif line == "inverse:":
            if not blocks or blocks[-1]["inverse"] is not None:
                raise ParseError("inverse block must follow a monodromy block", lineno, line)
            blocks[-1]["inverse"] = {}
            section = "inverse"
        elif "->" in line:
            if fiber is None or not blocks:
                raise ParseError("image line outside a monodromy block", lineno, line)
            lhs, _, rhs = line.partition("->")
            name = lhs.strip()
            alphabet = fiber_alphabet(fiber.rank)
            if name not in alphabet:
                raise ParseError(f"unknown fiber generator {name!r}", lineno, name)
            target = blocks[-1][section]
            if name in target:
                raise ParseError(f"duplicate image for {name}", lineno, name)
            target[name] = parse_word(rhs, alphabet, lineno)
        else:
            raise ParseError("unrecognized line", lineno, line.split()[0])
    if fiber is None:
        raise ParseError("missing fiber line")
    alphabet = fiber_alphabet(fiber.rank)
    monos = []
    for block in blocks:
        try:
            monos.append(MonodromyEndomorphism(alphabet, block["images"], block["inverse"]))
        except (MonodromyError, WordError) as exc:
            raise ParseError(str(exc), block["line"], "monodromy:") from None
    return FibrationSpec(fiber, tuple(monos))


def format_fibration_spec(spec: FibrationSpec) -> str:
    lines = [f"fiber: g={spec.fiber.genus} s={spec.fiber.punctures}"]
    for mono in spec.monodromies:
        lines.append("monodromy:")
        lines.extend(f"  {n} -> {format_word(mono.images[n])}" for n in mono.alphabet)
        if mono.inverse is not None:
            lines.append("inverse:")
            lines.extend(f"  {n} -> {format_word(mono.inverse[n])}" for n in mono.alphabet)
    return "\n".join(lines) + "\n"


def nielsen_automorphism(n: int, moves: Sequence[tuple]) -> MonodromyEndomorphism:
    """Compose elementary Nielsen moves into a certified automorphism of ``F_n``.

    Moves are ``("mul", i, j, e)`` for ``x_i -> x_i x_j^e`` (i != j),
    ``("inv", i)`` for ``x_i -> x_i^-1`` and ``("swap", i, j)``; indices are 0-based.
    """
    alphabet = fiber_alphabet(n)
    result = MonodromyEndomorphism.identity(n)
    for move in moves:
        images = _identity_images(alphabet)
        inverse = _identity_images(alphabet)
        xs = alphabet.gens()
        names = alphabet.names
        if move[0] == "mul":
            _, i, j, e = move
            if i == j:
                raise ValueError("Nielsen multiplication needs distinct generators")
            images[names[i]] = xs[i] * xs[j] ** e
            inverse[names[i]] = xs[i] * xs[j] ** -e
        elif move[0] == "inv":
            images[names[move[1]]] = inverse[names[move[1]]] = xs[move[1]].inverse()
        elif move[0] == "swap":
            _, i, j = move
            images[names[i]], images[names[j]] = xs[j], xs[i]
            inverse[names[i]], inverse[names[j]] = xs[j], xs[i]
        else:
            raise ValueError(f"unknown Nielsen move {move!r}")
        result = result.then(MonodromyEndomorphism(alphabet, images, inverse))
    return result
