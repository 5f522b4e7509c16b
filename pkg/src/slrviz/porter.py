"""Porter suffix-stripping stemmer with an agentive -er conflation extension.

Implements the classic five-step suffix-stripping algorithm for English.
One deliberate extension: in the derivational-suffix step, a trailing
"er" is also removed when the remaining stem has measure 1 and ends in
two consonants, so that agentive forms conflate with their verb stems
("tester" -> "test", "faster" -> "fast").  The textbook rule (measure
strictly greater than 1) keeps those pairs apart, which is the wrong
trade-off for a recall-oriented screening tool.
"""

from __future__ import annotations

_VOWELS = "aeiou"


def _is_consonant(word: str, i: int) -> bool:
    c = word[i]
    if c in _VOWELS:
        return False
    if c == "y":
        # y is a vowel when preceded by a consonant, else a consonant
        return i == 0 or not _is_consonant(word, i - 1)
    return True


def _measure(stem: str) -> int:
    """Number of vowel-consonant sequences in [C](VC)^m[V]."""
    m = 0
    prev_vowel = False
    for i in range(len(stem)):
        cons = _is_consonant(stem, i)
        if cons and prev_vowel:
            m += 1
        prev_vowel = not cons
    return m


def _contains_vowel(stem: str) -> bool:
    return any(not _is_consonant(stem, i) for i in range(len(stem)))


def _ends_double_consonant(word: str) -> bool:
    return (
        len(word) >= 2
        and word[-1] == word[-2]
        and _is_consonant(word, len(word) - 1)
    )


def _ends_cvc(word: str) -> bool:
    # consonant-vowel-consonant where the final consonant is not w, x or y
    if len(word) < 3:
        return False
    return (
        _is_consonant(word, len(word) - 3)
        and not _is_consonant(word, len(word) - 2)
        and _is_consonant(word, len(word) - 1)
        and word[-1] not in "wxy"
    )


def _ends_two_consonants(stem: str) -> bool:
    return (
        len(stem) >= 2
        and _is_consonant(stem, len(stem) - 1)
        and _is_consonant(stem, len(stem) - 2)
    )


def _step1a(w: str) -> str:
    if w.endswith("sses"):
        return w[:-2]
    if w.endswith("ies"):
        return w[:-2]
    if w.endswith("ss"):
        return w
    if w.endswith("s"):
        return w[:-1]
    return w


def _step1b(w: str) -> str:
    if w.endswith("eed"):
        # longest match wins the step even when the condition fails
        if _measure(w[:-3]) > 0:
            return w[:-1]
        return w
    stripped = False
    if w.endswith("ed"):
        if _contains_vowel(w[:-2]):
            w = w[:-2]
            stripped = True
    elif w.endswith("ing"):
        if _contains_vowel(w[:-3]):
            w = w[:-3]
            stripped = True
    if stripped:
        if w.endswith(("at", "bl", "iz")):
            return w + "e"
        if _ends_double_consonant(w) and w[-1] not in "lsz":
            return w[:-1]
        if _measure(w) == 1 and _ends_cvc(w):
            return w + "e"
    return w


def _step1c(w: str) -> str:
    if w.endswith("y") and _contains_vowel(w[:-1]):
        return w[:-1] + "i"
    return w


_STEP2 = [
    ("ational", "ate"),
    ("tional", "tion"),
    ("enci", "ence"),
    ("anci", "ance"),
    ("izer", "ize"),
    ("abli", "able"),
    ("alli", "al"),
    ("entli", "ent"),
    ("eli", "e"),
    ("ousli", "ous"),
    ("ization", "ize"),
    ("ation", "ate"),
    ("ator", "ate"),
    ("alism", "al"),
    ("iveness", "ive"),
    ("fulness", "ful"),
    ("ousness", "ous"),
    ("aliti", "al"),
    ("iviti", "ive"),
    ("biliti", "ble"),
]

_STEP3 = [
    ("icate", "ic"),
    ("ative", ""),
    ("alize", "al"),
    ("iciti", "ic"),
    ("ical", "ic"),
    ("ful", ""),
    ("ness", ""),
]

_STEP4 = [
    "al", "ance", "ence", "er", "ic", "able", "ible", "ant", "ement",
    "ment", "ent", "ion", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def _longest_suffix(w: str, suffixes) -> str | None:
    best = None
    for s in suffixes:
        if w.endswith(s) and (best is None or len(s) > len(best)):
            best = s
    return best


def _step2(w: str) -> str:
    match = _longest_suffix(w, [s for s, _ in _STEP2])
    if match is None:
        return w
    stem = w[: len(w) - len(match)]
    if _measure(stem) > 0:
        return stem + dict(_STEP2)[match]
    return w


def _step3(w: str) -> str:
    match = _longest_suffix(w, [s for s, _ in _STEP3])
    if match is None:
        return w
    stem = w[: len(w) - len(match)]
    if _measure(stem) > 0:
        return stem + dict(_STEP3)[match]
    return w


def _step4(w: str) -> str:
    match = _longest_suffix(w, _STEP4)
    if match is None:
        return w
    stem = w[: len(w) - len(match)]
    m = _measure(stem)
    if match == "ion":
        if m > 1 and stem.endswith(("s", "t")):
            return stem
        return w
    if match == "er":
        # extension: conflate agentive -er onto measure-1 stems that end
        # in a consonant pair ("test", "fast"), leaving measure-1 stems
        # with a vowel-consonant tail alone ("paper", "river")
        if m > 1 or (m == 1 and _ends_two_consonants(stem)):
            return stem
        return w
    if m > 1:
        return stem
    return w


def _step5a(w: str) -> str:
    if w.endswith("e"):
        stem = w[:-1]
        m = _measure(stem)
        if m > 1:
            return stem
        if m == 1 and not _ends_cvc(stem):
            return stem
    return w


def _step5b(w: str) -> str:
    if _measure(w) > 1 and _ends_double_consonant(w) and w.endswith("l"):
        return w[:-1]
    return w


def stem(word: str) -> str:
    """Stem a lowercase token; tokens of length <= 2 pass through."""
    if len(word) <= 2:
        return word
    w = _step1a(word)
    w = _step1b(w)
    w = _step1c(w)
    w = _step2(w)
    w = _step3(w)
    w = _step4(w)
    w = _step5a(w)
    w = _step5b(w)
    return w
