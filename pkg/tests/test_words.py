import pytest
from hypothesis import given, strategies as st

from fibercw.words import (
    Alphabet,
    ParseError,
    UnknownGeneratorError,
    Word,
    WordError,
    format_word,
    invert,
    multiply,
    parse_word,
    reduce,
    substitute,
)

AB = Alphabet(("a", "b"))
X = Alphabet(("x1", "x2"))


def naive_reduce(letters):
    """Brute-force oracle: delete the leftmost cancelling pair until none is left."""
    letters = list(letters)
    changed = True
    while changed:
        changed = False
        for i in range(len(letters) - 1):
            if letters[i] == -letters[i + 1]:
                del letters[i:i + 2]
                changed = True
                break
    return tuple(letters)


def raw(alphabet, text):
    out = []
    for tok in text.split():
        name, _, exp = tok.partition("^")
        out.append((name, -1 if exp == "-1" else 1))
    return out


@pytest.mark.parametrize(
    "alphabet, text, expected",
    [
        (AB, "a a^-1", "1"),
        (AB, "a b b^-1 a", "a^2"),
        (X, "x1 x2 x2^-1 x1^-1 x1", "x1"),
    ],
)
def test_reduce_examples(alphabet, text, expected):
    w = reduce(alphabet, raw(alphabet, text))
    assert format_word(w) == expected
    assert w == parse_word(expected, alphabet)


def test_reduce_rejects_unknown_generator():
    with pytest.raises(UnknownGeneratorError) as info:
        reduce(AB, [("a", 1), ("c", -1)])
    assert info.value.token == "c"


def test_multiply_examples():
    w = AB.word
    assert multiply(w("a b"), w("b^-1 a")) == w("a a")
    assert multiply(AB.identity(), w("a b^-1")) == w("a b^-1")
    assert multiply(X.word("x1 x2"), X.word("x2^-1 x1^-1")).is_identity()


def test_multiply_rejects_mixed_universes():
    with pytest.raises(WordError, match="mismatch"):
        AB.word("a") * X.word("x1")


def test_substitute_examples():
    # the Dehn twist x2 -> x1 x2 from the cubic pencil
    twist = {"x1": X.word("x1"), "x2": X.word("x1 x2")}
    assert substitute(X.word("x2"), twist) == X.word("x1 x2")
    ident = {n: X.generator(n) for n in X}
    w = X.word("x1 x2^-1 x1^3")
    assert substitute(w, ident) == w
    images = {"x1": X.word("x2 x1"), "x2": X.word("x2")}
    assert substitute(X.word("x1 x2"), images) == X.word("x2 x1 x2")


def test_substitute_missing_image():
    with pytest.raises(WordError, match="missing image"):
        substitute(X.word("x1 x2"), {"x1": X.word("x1")})


def test_substitute_into_other_alphabet():
    images = {"x1": AB.word("a b"), "x2": AB.word("b^-1")}
    assert substitute(X.word("x1 x2"), images) == AB.word("a")
    assert substitute(X.identity(), {}, AB) == AB.identity()


@pytest.mark.parametrize(
    "text, letters",
    [
        ("1", ()),
        ("a^3", (1, 1, 1)),
        ("b^-2 a", (-2, -2, 1)),
        ("a^1 a^-1", ()),
    ],
)
def test_parse(text, letters):
    assert parse_word(text, AB).letters == letters


@pytest.mark.parametrize("text", ["", "a^0", "c", "a^x", "2a", "a^-"])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_word(text, AB, line=4)


def test_parse_error_reports_line_and_token():
    with pytest.raises(ParseError) as info:
        parse_word("a b c^2", AB, line=7)
    assert info.value.line == 7
    assert info.value.token == "c^2"


def test_format_groups_runs():
    assert format_word(AB.word("a a b^-1 b^-1 b^-1 a")) == "a^2 b^-3 a"


def test_alphabet_validation():
    with pytest.raises(WordError):
        Alphabet(("a", "a"))
    with pytest.raises(WordError):
        Alphabet(("1x",))
    Alphabet(("_g", "s_0_a", "x12"))


def test_cyclic_reduction():
    assert AB.word("a b a^-1").cyclically_reduced() == AB.word("b")
    assert AB.word("b^-1 a b a b").cyclically_reduced() == AB.word("a b a")
    assert AB.word("b a b^-1").cyclically_reduced() == AB.word("a")


# -- properties ----------------------------------------------------------------

letters3 = st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), max_size=32)
ABC = Alphabet(("a", "b", "c"))


def word3(ls):
    return Word(ABC, tuple(ls))


@given(letters3)
def test_reduction_matches_oracle(ls):
    assert word3(ls).letters == naive_reduce(ls)


@given(letters3)
def test_reduce_idempotent_and_shrinks(ls):
    w = word3(ls)
    assert Word(ABC, w.letters) == w
    assert len(w) <= len(ls)


@given(letters3, letters3, letters3)
def test_multiply_associative(a, b, c):
    u, v, w = word3(a), word3(b), word3(c)
    assert (u * v) * w == u * (v * w)


@given(letters3)
def test_inverse(ls):
    w = word3(ls)
    assert invert(invert(w)) == w
    assert (w * invert(w)).is_identity()
    assert (invert(w) * w).is_identity()


@given(letters3, letters3, st.lists(letters3, min_size=3, max_size=3))
def test_substitute_is_homomorphism(a, b, imgs):
    images = dict(zip(ABC.names, (word3(i) for i in imgs)))
    u, v = word3(a), word3(b)
    assert substitute(u * v, images) == substitute(u, images) * substitute(v, images)
    assert substitute(invert(u), images) == invert(substitute(u, images))


@given(letters3)
def test_format_parse_roundtrip(ls):
    w = word3(ls)
    assert parse_word(format_word(w), ABC) == w


@given(letters3)
def test_exponent_vector(ls):
    vec = word3(ls).exponent_vector()
    assert vec == [ls.count(i) - ls.count(-i) for i in (1, 2, 3)]
