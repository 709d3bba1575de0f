import random
from pathlib import Path

import pytest

from rosi.catalog.errors import DisconnectedMembers
from rosi.catalog.registry import register_maximal_object
from rosi.planner.errors import TypeMismatch
from rosi.planner.plan import Distinct, Filter, Project, UnionAll
from rosi.snapshot.store import load_snapshot
from rosi.sql.ast import Column, Compare, Like, Literal
from rosi.urm.errors import NoConnection, UnknownAttribute
from rosi.urm.window import inference_attributes, window_connections, window_plan, window_query
from tests.oracles import minimal_covers_naive, random_catalog, random_predicate, window_naive, write_catalog

# Helpers


def window(attrs, f1, predicate=None, **kwargs) -> set[tuple]:
    catalog, providers = f1
    result = window_query(attrs, predicate, catalog, providers, **kwargs)
    assert len(result.rows) == len(set(result.rows))
    assert result.schema.names == tuple(attrs)
    return set(result.rows)

# Tests: F1 windows


def test_window_over_one_relation(f1):
    assert window(["username", "shell"], f1) == {("root", "/bin/sh"), ("ana", "/bin/bash")}


def test_window_joins_the_connection(f1):
    assert window(["username", "file_name"], f1) == {("root", "secret"), ("ana", "notes.txt")}


def test_window_with_predicate_on_unprojected_attribute(f1):
    predicate = Compare(op="=", lhs=Column(name="op"), rhs=Literal(value="read"))
    assert window(["username"], f1, predicate) == {("ana",)}


def test_window_unions_every_connection(f1):
    assert window(["username", "path"], f1) == {
        ("root", "/root/secret"),
        ("ana", "/home/ana/notes.txt"),
    }


def test_single_home_attribute_unions_all_homes(f1):
    assert window(["uid"], f1) == {(0,), (1000,)}


def test_window_through_three_relations(f1):
    assert window(["device", "username"], f1) == {("sda", "ana")}


def test_pushdown_does_not_change_windows(f1):
    predicate = Like(column=Column(name="path"), pattern="/home/%")
    expected = window(["username", "path"], f1, predicate, pushdown=False)
    assert window(["username", "path"], f1, predicate) == expected == {("ana", "/home/ana/notes.txt")}


def test_maximal_objects_narrow_the_window(f1):
    catalog, providers = f1
    catalog = register_maximal_object("proc_files", ["users", "processes", "open_files"], catalog)
    assert window(["username", "path"], (catalog, providers)) == {("ana", "/home/ana/notes.txt")}

# Tests: plan shape and errors


def test_inference_attributes_include_predicate_columns():
    predicate = Compare(op="=", lhs=Column(name="state"), rhs=Literal(value="R"))
    assert inference_attributes(["username", "state"], predicate) == ("username", "state")
    assert inference_attributes(["username"], predicate) == ("username", "state")


def test_window_connections_use_predicate_columns(f1_catalog):
    predicate = Compare(op="=", lhs=Column(name="device"), rhs=Literal(value="sda"))
    assert [c.members for c in window_connections(["username"], predicate, f1_catalog)] == [
        ("io_requests", "processes", "users"),
    ]


def test_window_plan_shape(f1_catalog):
    predicate = Compare(op="=", lhs=Column(name="state"), rhs=Literal(value="R"))
    plan = window_plan(["username"], predicate, f1_catalog)
    assert isinstance(plan, Distinct)
    assert isinstance(plan.child, UnionAll)
    (branch,) = plan.child.children
    assert isinstance(branch, Project) and branch.columns == ("username",)
    assert isinstance(branch.child, Filter) and branch.child.expr == predicate


def test_window_type_checks_predicate(f1_catalog):
    predicate = Compare(op="=", lhs=Column(name="uid"), rhs=Literal(value="root"))
    with pytest.raises(TypeMismatch):
        window_plan(["username"], predicate, f1_catalog)


def test_window_unknown_attribute(f1_catalog):
    with pytest.raises(UnknownAttribute):
        window_plan(["username", "colour"], None, f1_catalog)


def test_window_without_connection(f1_catalog):
    catalog = register_maximal_object("people", ["users", "processes"], f1_catalog)
    with pytest.raises(NoConnection):
        window_plan(["username", "device"], None, catalog)

# Tests: equivalence with the naive window


def test_window_matches_naive_definition(tmp_path: Path):
    rng = random.Random(2024)
    for n in range(200):
        relations = random_catalog(rng)
        catalog, providers = load_snapshot(write_catalog(relations, tmp_path / f"c{n}"))
        universe = sorted({c for r in relations.values() for c in r.columns})
        for _ in range(5):
            attrs = rng.sample(universe, rng.randint(1, min(3, len(universe))))
            predicate = random_predicate(rng, universe, depth=1) if rng.random() < 0.5 else None
            expected = window_naive(attrs, predicate, relations)
            if expected is None:
                with pytest.raises(NoConnection):
                    window_query(attrs, predicate, catalog, providers)
                continue
            covers = minimal_covers_naive(set(inference_attributes(attrs, predicate)), relations)
            assert [c.relations for c in window_connections(attrs, predicate, catalog)] == covers, attrs
            result = window_query(attrs, predicate, catalog, providers)
            assert len(result.rows) == len(set(result.rows))
            assert set(result.rows) == expected, (attrs, predicate)


def test_connections_inside_a_maximal_object_match_naive_covers(tmp_path: Path):
    rng = random.Random(77)
    checked = 0
    for n in range(150):
        relations = random_catalog(rng)
        catalog, _ = load_snapshot(write_catalog(relations, tmp_path / f"m{n}"))
        names = sorted(relations)
        members = rng.sample(names, rng.randint(1, len(names)))
        try:
            scoped = register_maximal_object("obj", members, catalog)
        except DisconnectedMembers:
            continue
        universe = sorted({c for r in relations.values() for c in r.columns})
        attrs = rng.sample(universe, rng.randint(1, min(2, len(universe))))
        covers = minimal_covers_naive(set(attrs), {m: relations[m] for m in members})
        if not covers:
            with pytest.raises(NoConnection):
                window_connections(attrs, None, scoped)
            continue
        assert [c.relations for c in window_connections(attrs, None, scoped)] == covers, (members, attrs)
        checked += 1
    assert checked > 0
