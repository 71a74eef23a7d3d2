import pytest
from hypothesis import given, strategies as st

from schedlang.featstruct import (
    DuplicateFeatureError,
    FSError,
    FSSyntaxError,
    Sym,
    decode,
    encode,
    get_path,
)

names = st.from_regex(r"[A-Za-z_][A-Za-z0-9_\-]{0,6}", fullmatch=True)
atoms = st.one_of(
    st.integers(-10**9, 10**9),
    st.text(max_size=12),
    names.map(Sym),
)
trees = st.recursive(
    atoms,
    lambda kids: st.one_of(st.lists(kids, max_size=4), st.dictionaries(names, kids, max_size=4)),
    max_leaves=20,
)


@given(trees)
def test_round_trip(fs):
    assert decode(encode(fs)) == fs


@given(trees)
def test_encoding_is_canonical(fs):
    text = encode(fs)
    assert encode(decode(text)) == text


def test_maps_print_sorted():
    assert encode({"B": 1, "A": Sym("x")}) == "[A x B 1]"


def test_symbol_and_text_differ():
    assert decode('[A x]') == {"A": Sym("x")}
    assert decode('[A "x"]') == {"A": "x"}


def test_whitespace_is_free():
    assert decode(" [ A\n< 1  2 >\t]") == {"A": [1, 2]}


def test_unicode_text():
    assert decode(encode({"T": "paßt"})) == {"T": "paßt"}


@pytest.mark.parametrize("bad", ["[A", "[A 1 B]", "<1 2", "[1 2]", "", "[A 1] x", '"open'])
def test_syntax_errors(bad):
    with pytest.raises(FSSyntaxError):
        decode(bad)


def test_duplicate_feature():
    with pytest.raises(DuplicateFeatureError) as info:
        decode("[A 1 A 2]")
    assert info.value.feature == "A"


def test_rejects_foreign_atoms():
    with pytest.raises(FSError):
        encode({"A": 1.5})
    with pytest.raises(FSError):
        encode({"A": True})
    with pytest.raises(ValueError):
        Sym("1abc")


def test_get_path():
    fs = {"A": {"B": 3}}
    assert get_path(fs, "A", "B") == 3
    assert get_path(fs, "A", "C", default=0) == 0
