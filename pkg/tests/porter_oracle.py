"""Independent reference implementation of the suffix-stripping stemmer,
used only to cross-check slrviz.porter.

Deliberately different construction from the package: conditions are
evaluated against a consonant/vowel pattern string, and every step is a
longest-match rule table fed through one generic engine (the package
walks the word procedurally).  Includes the same documented -er
extension (strip at measure 1 when the stem ends in two consonants).
"""

from __future__ import annotations


def cv_pattern(word: str) -> str:
    """Letters mapped to 'c'/'v'; y is a vowel only after a consonant."""
    out: list[str] = []
    for i, ch in enumerate(word):
        if ch in "aeiou":
            out.append("v")
        elif ch == "y":
            out.append("c" if i == 0 or out[i - 1] == "v" else "v")
        else:
            out.append("c")
    return "".join(out)


def measure(stem: str) -> int:
    # each v-run -> c-run boundary is one VC in [C](VC)^m[V]
    return cv_pattern(stem).count("vc")


def has_vowel(stem: str) -> bool:
    return "v" in cv_pattern(stem)


def ends_double(word: str) -> bool:
    return len(word) >= 2 and word[-1] == word[-2] and cv_pattern(word)[-1] == "c"


def ends_cvc_not_wxy(word: str) -> bool:
    return (
        len(word) >= 3
        and cv_pattern(word).endswith("cvc")
        and word[-1] not in "wxy"
    )


def ends_cc(stem: str) -> bool:
    return cv_pattern(stem).endswith("cc")


def apply_rules(word: str, rules) -> str:
    """Longest matching suffix decides; its condition gates the rewrite
    and the step ends either way."""
    best = None
    for suffix, replacement, cond in rules:
        if word.endswith(suffix) and (best is None or len(suffix) > len(best[0])):
            best = (suffix, replacement, cond)
    if best is None:
        return word
    suffix, replacement, cond = best
    stem = word[: len(word) - len(suffix)]
    if cond is None or cond(stem):
        return stem + replacement
    return word


RULES_1A = [
    ("sses", "ss", None),
    ("ies", "i", None),
    ("ss", "ss", None),
    ("s", "", None),
]

RULES_2 = [
    ("ational", "ate"), ("tional", "tion"), ("enci", "ence"), ("anci", "ance"),
    ("izer", "ize"), ("abli", "able"), ("alli", "al"), ("entli", "ent"),
    ("eli", "e"), ("ousli", "ous"), ("ization", "ize"), ("ation", "ate"),
    ("ator", "ate"), ("alism", "al"), ("iveness", "ive"), ("fulness", "ful"),
    ("ousness", "ous"), ("aliti", "al"), ("iviti", "ive"), ("biliti", "ble"),
]

RULES_3 = [
    ("icate", "ic"), ("ative", ""), ("alize", "al"), ("iciti", "ic"),
    ("ical", "ic"), ("ful", ""), ("ness", ""),
]

RULES_4_PLAIN = [
    "al", "ance", "ence", "ic", "able", "ible", "ant", "ement", "ment",
    "ent", "ou", "ism", "ate", "iti", "ous", "ive", "ize",
]


def step_1b(word: str) -> str:
    if word.endswith("eed"):
        stem = word[:-3]
        return stem + "ee" if measure(stem) > 0 else word
    for suffix in ("ed", "ing"):
        if word.endswith(suffix):
            stem = word[: len(word) - len(suffix)]
            if not has_vowel(stem):
                return word
            if stem.endswith(("at", "bl", "iz")):
                return stem + "e"
            if ends_double(stem) and stem[-1] not in "lsz":
                return stem[:-1]
            if measure(stem) == 1 and ends_cvc_not_wxy(stem):
                return stem + "e"
            return stem
    return word


def step_1c(word: str) -> str:
    return apply_rules(word, [("y", "i", has_vowel)])


def step_4(word: str) -> str:
    m_gt_1 = lambda st: measure(st) > 1
    rules = [(s, "", m_gt_1) for s in RULES_4_PLAIN]
    rules.append(("ion", "", lambda st: measure(st) > 1 and st[-1:] in ("s", "t")))
    # the agentive extension: also strip at measure 1 over a consonant pair
    rules.append(
        ("er", "", lambda st: measure(st) > 1 or (measure(st) == 1 and ends_cc(st)))
    )
    return apply_rules(word, rules)


def step_5a(word: str) -> str:
    def cond(stem: str) -> bool:
        m = measure(stem)
        return m > 1 or (m == 1 and not ends_cvc_not_wxy(stem))

    return apply_rules(word, [("e", "", cond)])


def step_5b(word: str) -> str:
    if measure(word) > 1 and ends_double(word) and word.endswith("l"):
        return word[:-1]
    return word


def oracle_stem(word: str) -> str:
    if len(word) <= 2:
        return word
    w = apply_rules(word, RULES_1A)
    w = step_1b(w)
    w = step_1c(w)
    w = apply_rules(w, [(s, r, lambda st: measure(st) > 0) for s, r in RULES_2])
    w = apply_rules(w, [(s, r, lambda st: measure(st) > 0) for s, r in RULES_3])
    w = step_4(w)
    w = step_5a(w)
    w = step_5b(w)
    return w
