from hypothesis import given
from hypothesis import strategies as st

from qgforge.records import normalize_text
from qgforge.sentences import split_sentences


def test_basic_split():
    assert split_sentences("A b. C d.") == ["A b.", "C d."]


def test_abbreviation_guard():
    assert split_sentences("Dr. Smith ran. He won.") == ["Dr. Smith ran.", "He won."]


def test_empty():
    assert split_sentences("") == []


def test_question_and_exclamation_marks():
    assert split_sentences("Is it true? Yes! It is.") == ["Is it true?", "Yes!", "It is."]


def test_lowercase_continuation_not_split():
    assert split_sentences("It ran approx. twice as fast.") == ["It ran approx. twice as fast."]


def test_eg_guard():
    assert split_sentences("Use gases, e.g. Oxygen and nitrogen.") == [
        "Use gases, e.g. Oxygen and nitrogen."
    ]


def test_no_terminal_punctuation():
    assert split_sentences("is there an amtrak station in pensacola") == [
        "is there an amtrak station in pensacola"
    ]


def test_custom_abbreviations():
    text = "See Eq. 1. Apply it."
    assert split_sentences(text) == ["See Eq. 1.", "Apply it."]
    # "1." is not an abbreviation; adding "Eq." alone does not guard "1. A"
    assert split_sentences("As in Eq. Apply it.", abbreviations=("Eq.",)) == [
        "As in Eq. Apply it."
    ]


@given(st.text(max_size=200))
def test_concatenation_reproduces_normalized_input(text):
    assert " ".join(split_sentences(text)) == normalize_text(text)


@given(st.text(max_size=200))
def test_sentences_are_non_empty(text):
    assert all(s for s in split_sentences(text))
