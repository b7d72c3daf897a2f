"""Code skeletons for frequently written PDDL constructs.

Snippet bodies live as plain ``.pddl`` files in ``data/snippets/`` (or in a
user directory that overrides them). The first line names the construct,
``; construct: <kind>``; the rest is the body with numbered placeholders
``${1:name}``. A placeholder may repeat and is filled by number or label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import InvalidPlaceholderValue, UnknownSnippet
from .lexer import is_identifier

PLACEHOLDER = re.compile(r"\$\{(\d+):([A-Za-z][A-Za-z0-9_-]*)\}")
_HEADER = re.compile(r";\s*construct:\s*(\S+)[^\n]*\n")

# host files a section snippet is embedded in for checking
HOSTS = {
    "domain-section": "(define (domain host)\n{body})\n",
    "problem-section": "(define (problem host)\n(:domain host)\n{body})\n",
}


@dataclass(frozen=True)
class Snippet:
    name: str
    body: str
    construct_kind: str

    def placeholders(self) -> dict:
        """Placeholder number -> label, in numeric order."""
        found = {}
        for num, label in PLACEHOLDER.findall(self.body):
            found.setdefault(int(num), label)
        return dict(sorted(found.items()))

    def render(self, params=None) -> str:
        params = dict(params or {})
        by_number = self.placeholders()
        labels = {label: num for num, label in by_number.items()}
        values = {}
        for key, value in params.items():
            key = str(key)
            num = int(key) if key.isdigit() else labels.get(key)
            if num not in by_number:
                raise InvalidPlaceholderValue(
                    f"snippet {self.name!r} has no placeholder {key!r}; "
                    f"known: {', '.join(by_number.values())}")
            if not is_identifier(str(value)):
                raise InvalidPlaceholderValue(f"{value!r} is not a valid PDDL identifier")
            values[num] = str(value)
        return PLACEHOLDER.sub(lambda m: values.get(int(m.group(1)), f"<{m.group(2)}>"),
                               self.body)


def _read(name, text) -> Snippet:
    m = _HEADER.match(text)
    if m is None:
        return Snippet(name, text, "domain-section")
    return Snippet(name, text[m.end():], m.group(1))


def load_snippets(snippet_dir=None) -> dict:
    """Shipped snippets, with files from ``snippet_dir`` added or replacing them."""
    found = {}
    for entry in resources.files("pddl_forge").joinpath("data/snippets").iterdir():
        if entry.name.endswith(".pddl"):
            found[entry.name[:-5]] = _read(entry.name[:-5], entry.read_text("utf-8"))
    if snippet_dir is not None and Path(snippet_dir).is_dir():
        for path in Path(snippet_dir).glob("*.pddl"):
            found[path.stem] = _read(path.stem, path.read_text("utf-8"))
    return found


def list_snippets(snippet_dir=None) -> list[tuple[str, str]]:
    return [(s.name, s.construct_kind)
            for s in sorted(load_snippets(snippet_dir).values(), key=lambda s: s.name)]


def get_snippet(name, params=None, snippet_dir=None) -> str:
    snippets = load_snippets(snippet_dir)
    if name not in snippets:
        raise UnknownSnippet(f"no snippet named {name!r}; available: {', '.join(sorted(snippets))}")
    return snippets[name].render(params)


def in_host(snippet: Snippet, text: str) -> str:
    """``text`` wrapped in the smallest file where its construct is legal."""
    host = HOSTS.get(snippet.construct_kind)
    return host.format(body=text) if host else text
