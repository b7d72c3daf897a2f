import datetime as dt
import os

import pytest

from pddl_forge.errors import AlreadyExists, InvalidName
from pddl_forge.parser import parse_domain, parse_problem
from pddl_forge.scaffold import TemplateSet, new_project


def tree(root):
    out = set()
    for dirpath, dirnames, filenames in os.walk(root):
        rel = os.path.relpath(dirpath, root)
        for d in dirnames:
            out.add(os.path.normpath(os.path.join(rel, d)) + "/")
        for f in filenames:
            out.add(os.path.normpath(os.path.join(rel, f)))
    return out


def test_exact_layout(tmp_path):
    layout = new_project("logistics", tmp_path, today=dt.date(2024, 3, 9))
    assert layout.root == tmp_path / "logistics"
    assert tree(layout.root) == {"domains/", "problems/", "solutions/", "domain.pddl",
                                 "problems/p01.pddl", "README.md"}
    assert all(p.exists() for p in layout.paths())
    assert os.listdir(tmp_path) == ["logistics"]


def test_generated_files_parse(tmp_path):
    root = new_project("logistics", tmp_path).root
    d = parse_domain((root / "domain.pddl").read_text())
    p = parse_problem((root / "problems" / "p01.pddl").read_text())
    assert d.ok and p.ok
    assert d.ast.name == "logistics" and p.ast.domain_name == "logistics"


def test_readme_has_name_and_date(tmp_path):
    root = new_project("rovers", tmp_path, today=dt.date(2024, 3, 9)).root
    text = (root / "README.md").read_text()
    assert "rovers" in text and "2024-03-09" in text


def test_second_call_changes_nothing(tmp_path):
    root = new_project("logistics", tmp_path).root
    (root / "domain.pddl").write_text("edited")
    before = {p: (tmp_path / p).stat().st_mtime_ns for p in tree(tmp_path)}
    with pytest.raises(AlreadyExists):
        new_project("logistics", tmp_path)
    assert {p: (tmp_path / p).stat().st_mtime_ns for p in tree(tmp_path)} == before
    assert (root / "domain.pddl").read_text() == "edited"


@pytest.mark.parametrize("name", ["1abc", "has space", "", "../x", "a/b"])
def test_invalid_names(tmp_path, name):
    with pytest.raises(InvalidName):
        new_project(name, tmp_path)
    assert os.listdir(tmp_path) == []


def test_failure_leaves_no_staging(tmp_path, monkeypatch):
    def boom(*a, **k):
        raise OSError("disk full")
    monkeypatch.setattr(os, "rename", boom)
    with pytest.raises(OSError):
        new_project("logistics", tmp_path)
    assert os.listdir(tmp_path) == []


def test_custom_templates(tmp_path):
    tdir = tmp_path / "templates"
    tdir.mkdir()
    (tdir / "README.md").write_text("# {project_name} by me\n")
    root = new_project("mine", tmp_path, TemplateSet.from_dir(tdir)).root
    assert (root / "README.md").read_text() == "# mine by me\n"
    assert parse_domain((root / "domain.pddl").read_text()).ok


def test_shipped_templates_parse():
    t = TemplateSet.default().fill(project_name="x", domain_name="x", problem_name="p", date="2024-01-01")
    assert parse_domain(t.domain_template).ok
    assert parse_problem(t.problem_template).ok
