import pytest
from hypothesis import given, settings, strategies as st

import grigtree as gt
from grigtree import IDENTITY

words = st.text(alphabet="abcd", max_size=24)
long_words = st.text(alphabet="abcd", max_size=200)

LONG_SAMPLE_WORD = "abcaadabdbcadcbdbabdbc"


def brute_count_p(word, subset, p):
    return sum(1 for i, ch in enumerate(word)
               if ch in subset and word[:i].count("a") % 2 == p)


def brute_count_pq(word, p, q):
    """Straight from the definition: {b,c}-letters of parity p preceded
    by a q-parity number of opposite-parity {b,c}-letters."""
    total = 0
    for i, ch in enumerate(word):
        if ch not in "bc" or word[:i].count("a") % 2 != p:
            continue
        opposite = sum(1 for j in range(i)
                       if word[j] in "bc" and word[:j].count("a") % 2 != p)
        if opposite % 2 == q:
            total += 1
    return total


def test_reduce_examples():
    assert gt.reduce("aa") == ""
    assert gt.reduce("bc") == "d"
    assert gt.reduce("abbd") == "ad"


def test_reduce_rejects_bad_letters():
    with pytest.raises(ValueError):
        gt.reduce("abe")
    with pytest.raises(ValueError):
        gt.check_word("a b")


@given(words)
def test_reduce_is_idempotent(w):
    assert gt.reduce(gt.reduce(w)) == gt.reduce(w)


@given(words)
def test_reduce_yields_alternating_form(w):
    r = gt.reduce(w)
    for x, y in zip(r, r[1:]):
        assert not (x == "a" and y == "a")
        assert not (x in "bcd" and y in "bcd")


@given(words)
def test_reduce_preserves_element(w):
    assert gt.equal_to_depth(gt.word_element(w), gt.word_element(gt.reduce(w)), 8)


def test_decompose_worked_example():
    assert gt.decompose_word("abdabac") == ("cbad", "aca", 1)


def test_decompose_trivial_cases():
    assert gt.decompose_word("") == ("", "", 0)
    assert gt.decompose_word("b") == ("a", "c", 0)


@given(words)
def test_decompose_matches_sections(w):
    w0, w1, parity = gt.decompose_word(w)
    g = gt.word_element(w)
    assert gt.activity(g, "") == parity
    assert gt.equal_to_depth(gt.section_at(g, "0"), gt.word_element(w0), 7)
    assert gt.equal_to_depth(gt.section_at(g, "1"), gt.word_element(w1), 7)


@given(words)
def test_decompose_parity_counts_a_letters(w):
    assert gt.decompose_word(w)[2] == w.count("a") % 2


def test_section_words_examples():
    m = gt.section_words("b", 2)
    assert m["1"] == "c" and m["11"] == "d"
    assert all(w == "" for w in gt.section_words("", 3).values())
    m = gt.section_words("abdabac", 1)
    assert m["0"] == "cbad" and m["1"] == "aca" and m[""] == "abdabac"


@given(words, st.integers(min_value=0, max_value=3))
def test_section_words_represent_sections(w, depth):
    for u, wu in gt.section_words(w, depth).items():
        assert gt.equal_to_depth(
            gt.section_at(gt.word_element(w), u), gt.word_element(wu), 5)


def test_count_long_sample_word():
    assert gt.count_p(LONG_SAMPLE_WORD, {"b", "c"}, 1) == 5
    assert gt.count_pq(LONG_SAMPLE_WORD, 1, 1) == 3
    assert gt.count_pq(LONG_SAMPLE_WORD, 1, 0) == 2
    # the two even-parity counts, frozen from the defining formula
    assert gt.count_pq(LONG_SAMPLE_WORD, 0, 0) == 3
    assert gt.count_pq(LONG_SAMPLE_WORD, 0, 1) == 3


def test_count_edge_cases():
    assert gt.count("", {"b", "c", "d"}) == 0
    assert gt.count_p("b", {"b", "c"}, 0) == 1
    assert gt.count_p("ab", {"b", "c"}, 0) == 0
    assert gt.count_pq("", 0, 1) == 0
    assert gt.count("abdd", frozenset()) == 0


@given(words, st.sampled_from([{"b"}, {"c"}, {"d"}, {"b", "c"}, {"b", "c", "d"}]))
def test_parity_counts_split_total(w, subset):
    assert gt.count_p(w, subset, 0) + gt.count_p(w, subset, 1) == gt.count(w, subset)


@given(words, st.integers(min_value=0, max_value=1))
def test_pair_counts_split_parity_count(w, p):
    assert gt.count_pq(w, p, 0) + gt.count_pq(w, p, 1) == gt.count_p(w, {"b", "c"}, p)


@given(long_words, st.integers(min_value=0, max_value=1),
       st.integers(min_value=0, max_value=1))
@settings(max_examples=60)
def test_count_pq_matches_brute_force(w, p, q):
    assert gt.count_pq(w, p, q) == brute_count_pq(w, p, q)


@given(words, st.sampled_from([{"b"}, {"b", "c"}, {"c", "d"}]),
       st.integers(min_value=0, max_value=1))
def test_count_p_matches_brute_force(w, subset, p):
    assert gt.count_p(w, subset, p) == brute_count_p(w, subset, p)


def test_beta_from_counts_examples():
    assert gt.beta_from_counts("") == (0, 0, 0, 0)
    # (N^{1,0}, N^{1,1}, N^{0,0}, N^{0,1}) = (2, 3, 3, 3) mod 2
    assert gt.beta_from_counts(LONG_SAMPLE_WORD) == (0, 1, 1, 1)


@given(long_words)
@settings(max_examples=60)
def test_beta_from_counts_matches_portrait(w):
    profile = gt.beta_profile(gt.portrait_of(gt.word_element(w), 4))
    assert gt.beta_from_counts(w) == (profile.beta00, profile.beta01,
                                      profile.beta10, profile.beta11)


@given(long_words)
@settings(max_examples=60)
def test_level_one_activities_are_parity_counts(w):
    g = gt.word_element(w)
    assert gt.activity(g, "0") == gt.count_p(w, {"b", "c"}, 0) % 2
    assert gt.activity(g, "1") == gt.count_p(w, {"b", "c"}, 1) % 2


@given(long_words)
@settings(max_examples=80)
def test_pair_count_parity_cases(w):
    n = {(p, q): gt.count_pq(w, p, q) % 2
         for p in (0, 1) for q in (0, 1)}
    n0 = gt.count_p(w, {"b", "c"}, 0) % 2
    n1 = gt.count_p(w, {"b", "c"}, 1) % 2
    if n0 == 0:
        assert n[1, 1] == n[0, 1] == n[0, 0]
    else:
        assert n[1, 0] == n[0, 1] != n[0, 0]
    if n1 == 0:
        assert n[0, 1] == n[1, 1] == n[1, 0]
    else:
        assert n[0, 0] == n[1, 1] != n[1, 0]


def test_word_element_empty_is_identity():
    assert gt.word_element("") is IDENTITY


@given(words)
def test_word_element_inverse_is_reversal(w):
    g = gt.word_element(w)
    assert gt.equal_to_depth(gt.invert(g), gt.word_element(w[::-1]), 6)
