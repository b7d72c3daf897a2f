from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pddl_forge.diagnostics import CODES, ERROR, Diagnostic, closest, levenshtein
from pddl_forge.lexer import SourceSpan

SPAN = SourceSpan(4, 9, 1, 5, 1, 10)


def slow_distance(a, b):
    @lru_cache(None)
    def d(i, j):
        if i == 0 or j == 0:
            return i + j
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))
    return d(len(a), len(b))


@given(st.text("abc:-", max_size=8), st.text("abc:-", max_size=8))
def test_levenshtein_matches_recursive_definition(a, b):
    assert levenshtein(a, b) == slow_distance(a, b) == levenshtein(b, a)


def test_closest():
    keys = (":parameters", ":precondition", ":effect")
    assert closest(":precondtion", keys) == ":precondition"
    assert closest(":efect", keys) == ":effect"
    assert closest(":whatever", keys) is None


def test_json_and_text_forms():
    d = Diagnostic(SPAN, ERROR, "invalid-char", "invalid character '$'")
    assert d.to_json("f.pddl") == {"path": "f.pddl", "start": 4, "end": 9, "code": "invalid-char",
                                   "severity": "error", "message": "invalid character '$'"}
    assert "path" not in d.to_json()
    assert d.format("f.pddl") == "f.pddl:1:5: error[invalid-char]: invalid character '$'"


@pytest.mark.parametrize("code, severity, message", [
    ("no-such-code", ERROR, "m"), ("invalid-char", "fatal", "m"), ("invalid-char", ERROR, ""),
])
def test_validation(code, severity, message):
    with pytest.raises(ValueError):
        Diagnostic(SPAN, severity, code, message)


def test_code_set_is_closed():
    assert set(CODES) == {
        "unbalanced-paren", "invalid-char", "unknown-keyword", "unexpected-element",
        "malformed-construct", "missing-define", "duplicate-section", "duplicate-type",
        "ground-init",
    }
