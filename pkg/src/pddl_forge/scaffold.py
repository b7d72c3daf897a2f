"""Project scaffolding: the standard folder layout with skeleton files."""

from __future__ import annotations

import datetime as _dt
import os
import re
import shutil
import tempfile
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .errors import AlreadyExists, InvalidName
from .lexer import is_identifier

SUBDIRS = ("domains", "problems", "solutions")
FILES = ("domain.pddl", "problems/p01.pddl", "README.md")

_FIELDS = re.compile(r"\{(project_name|domain_name|problem_name|date)\}")


@dataclass(frozen=True)
class TemplateSet:
    domain_template: str
    problem_template: str
    readme_template: str

    @classmethod
    def default(cls) -> TemplateSet:
        base = resources.files("pddl_forge").joinpath("data/templates")
        return cls(base.joinpath("domain.pddl").read_text("utf-8"),
                   base.joinpath("problem.pddl").read_text("utf-8"),
                   base.joinpath("README.md").read_text("utf-8"))

    @classmethod
    def from_dir(cls, directory) -> TemplateSet:
        """Templates from ``directory``; missing files fall back to the defaults."""
        directory = Path(directory)
        default = cls.default()

        def pick(fname, fallback):
            path = directory / fname
            return path.read_text("utf-8") if path.is_file() else fallback

        return cls(pick("domain.pddl", default.domain_template),
                   pick("problem.pddl", default.problem_template),
                   pick("README.md", default.readme_template))

    def fill(self, **values) -> TemplateSet:
        def sub(text):
            return _FIELDS.sub(lambda m: str(values.get(m.group(1), m.group(0))), text)
        return TemplateSet(sub(self.domain_template), sub(self.problem_template),
                           sub(self.readme_template))


@dataclass(frozen=True)
class ProjectLayout:
    root: Path
    subdirs: tuple = SUBDIRS
    files: tuple = FILES

    def paths(self) -> list[Path]:
        return [self.root / d for d in self.subdirs] + [self.root / f for f in self.files]


def new_project(name, parent_dir, templates=None, today=None) -> ProjectLayout:
    """Create ``parent_dir/name`` with domains/, problems/p01.pddl, solutions/,
    domain.pddl and README.md.

    The tree is assembled in a staging directory and renamed into place, so
    a failure never leaves a half-made project behind.
    """
    if not is_identifier(name):
        raise InvalidName(f"{name!r} is not a valid PDDL identifier")
    parent = Path(parent_dir)
    target = parent / name
    if target.exists():
        raise AlreadyExists(f"{target} already exists")
    date = (today or _dt.date.today()).isoformat()
    filled = (templates or TemplateSet.default()).fill(
        project_name=name, domain_name=name, problem_name="p01", date=date)
    staging = Path(tempfile.mkdtemp(prefix=f".{name}-", dir=parent))
    try:
        for d in SUBDIRS:
            (staging / d).mkdir()
        (staging / "domain.pddl").write_text(filled.domain_template, "utf-8")
        (staging / "problems" / "p01.pddl").write_text(filled.problem_template, "utf-8")
        (staging / "README.md").write_text(filled.readme_template, "utf-8")
        os.chmod(staging, 0o777 & ~_umask())
        if target.exists():
            raise AlreadyExists(f"{target} already exists")
        os.rename(staging, target)
    except OSError as exc:
        shutil.rmtree(staging, ignore_errors=True)
        if isinstance(exc, AlreadyExists) or target.exists():
            raise AlreadyExists(f"{target} already exists") from None
        raise
    return ProjectLayout(target)


def _umask() -> int:
    mask = os.umask(0)
    os.umask(mask)
    return mask
