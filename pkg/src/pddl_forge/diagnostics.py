from __future__ import annotations

from dataclasses import dataclass

from .lexer import SourceSpan

ERROR = "error"
WARNING = "warning"

# Closed set of diagnostic codes. Every syntax finding is an error.
CODES = {
    "unbalanced-paren": "a '(' without its ')' or a ')' without its '('",
    "invalid-char": "a character that cannot start any PDDL token",
    "unknown-keyword": "a ':keyword' outside the PDDL 3.1 keyword set for its position",
    "unexpected-element": "an element of the wrong kind for its position",
    "malformed-construct": "a parenthesized construct with the wrong shape or arity",
    "missing-define": "no (define ...) form in the file",
    "duplicate-section": "a section that may appear once appears again",
    "duplicate-type": "a type declared twice on the left-hand side of :types",
    "ground-init": "a variable inside :init, which must be ground",
}


@dataclass(frozen=True)
class Diagnostic:
    span: SourceSpan
    severity: str
    code: str
    message: str

    def __post_init__(self):
        if self.code not in CODES:
            raise ValueError(f"undocumented diagnostic code {self.code!r}")
        if self.severity not in (ERROR, WARNING):
            raise ValueError(f"bad severity {self.severity!r}")
        if not self.message:
            raise ValueError("diagnostic message must not be empty")

    def sort_key(self):
        return (self.span.start_byte, self.span.end_byte, self.code, self.message)

    def to_json(self, path=None) -> dict:
        record = {
            "start": self.span.start_byte,
            "end": self.span.end_byte,
            "code": self.code,
            "severity": self.severity,
            "message": self.message,
        }
        if path is not None:
            record = {"path": str(path), **record}
        return record

    def format(self, path="<input>") -> str:
        s = self.span
        return f"{path}:{s.start_line}:{s.start_col}: {self.severity}[{self.code}]: {self.message}"


def levenshtein(a: str, b: str) -> int:
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, 1):
        cur = [i]
        for j, cb in enumerate(b, 1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def closest(word: str, candidates, max_distance: int = 2):
    """Nearest candidate within ``max_distance`` edits, ties broken alphabetically."""
    best = None
    for cand in sorted(candidates):
        d = levenshtein(word, cand)
        if d <= max_distance and (best is None or d < best[0]):
            best = (d, cand)
    return best[1] if best else None
