"""Problem file loading: the JSON shape, dotted error locations, and the
eager validation of every definition a file contains."""

import copy
import json

import pytest

from defalg.problems import ProblemFileError, load_problem_file

BASE = {
    "field": "F2",
    "algebras": {
        "dual": {"gens": ["x"], "relations": ["x^2"]},
        "fat": {"gens": ["x", "y"], "relations": ["x^2", "x*y", "y^2"]},
        "node": {"gens": ["x", "y"], "relations": ["x*y"]},
    },
    "modules": {
        "dual.k": {"algebra": "dual", "kind": "trivial"},
        "fat.reg": {"algebra": "fat", "kind": "regular"},
        "node.tr": {"algebra": "node", "kind": "truncated", "degree": 2},
    },
    "problems": [
        {
            "kind": "tmods",
            "name": "first",
            "algebra": "dual",
            "module": "dual.k",
            "expected": {"t1": 1},
        },
        {
            "kind": "tmods",
            "name": "second",
            "algebra": "node",
            "module": "node.tr",
            "truncate": 4,
        },
    ],
    "options": {"budget": 4096, "seed": 7},
}


def variant(**edits):
    data = copy.deepcopy(BASE)
    data.update(edits)
    return data


def err(data, field=None):
    with pytest.raises(ProblemFileError) as exc:
        load_problem_file(data, field=field)
    return exc.value


class TestLoading:
    def test_loads_from_a_dict(self):
        ps = load_problem_file(BASE)
        assert ps.field.name == "F2"
        assert ps.algebra("dual").dim() == 2
        assert ps.algebra("fat").dim() == 3
        assert len(ps.problems) == 2
        assert ps.options == {"budget": 4096, "seed": 7}

    def test_loads_from_a_path(self, tmp_path):
        path = tmp_path / "probs.json"
        path.write_text(json.dumps(BASE))
        ps = load_problem_file(str(path))
        assert [p.name for p in ps.problems] == ["first", "second"]

    def test_missing_file(self):
        e = err("/nonexistent/probs.json")
        assert "no such file" in str(e)
        assert e.location == "/nonexistent/probs.json"

    def test_unparsable_json_reports_line_and_column(self, tmp_path):
        path = tmp_path / "broken.json"
        path.write_text('{"field": "F2",}')
        e = err(str(path))
        assert str(path) in e.location and ":" in e.location[len(str(path)) :]

    def test_field_override(self):
        ps = load_problem_file(BASE, field="F3")
        assert ps.field.name == "F3"
        assert ps.algebra("dual").field.char == 3

    def test_unknown_field_name(self):
        e = err(variant(field="F6"))
        assert e.location == "field"

    def test_truncation_is_honored(self):
        ps = load_problem_file(BASE)
        assert ps.algebra("node", truncate=4).dim() == 7
        with pytest.raises(ValueError, match="not finite-dimensional"):
            ps.algebra("node").std_monomials()

    def test_module_kinds(self):
        ps = load_problem_file(BASE)
        dual = ps.algebra("dual")
        assert ps.module("dual.k", dual).rank == 1
        fat = ps.algebra("fat")
        assert ps.module("fat.reg", fat).rank == 3
        node4 = ps.algebra("node", truncate=4)
        assert ps.module("node.tr", node4).rank == 3


class TestTopLevelErrors:
    def test_top_level_must_be_an_object(self, tmp_path):
        path = tmp_path / "list.json"
        path.write_text("[1, 2]")
        e = err(str(path))
        assert e.location == "$"

    def test_unknown_top_level_key(self):
        e = err(variant(bogus=1))
        assert e.location.endswith("bogus") and "unknown key" in str(e)

    def test_problems_must_be_a_list(self):
        e = err(variant(problems={}))
        assert e.location == "problems"

    def test_duplicate_problem_names(self):
        data = variant()
        data["problems"][1]["name"] = "first"
        e = err(data)
        assert "duplicate problem name" in str(e)

    def test_options_validation(self):
        e = err(variant(options={"budget": 0}))
        assert e.location == "options.budget"
        e = err(variant(options={"seed": "x"}))
        assert e.location == "options.seed"
        e = err(variant(options={"truncate": -1}))
        assert e.location == "options.truncate"
        e = err(variant(options={"volume": 11}))
        assert e.location == "options.volume"


class TestAlgebraErrors:
    def test_invalid_algebra_name(self):
        data = variant()
        data["algebras"]["has.dot"] = {"gens": ["x"], "relations": []}
        e = err(data)
        assert e.location == "algebras.has.dot"
        assert "not a valid algebra name" in str(e)

    def test_bad_relation_in_an_unused_algebra(self):
        # nothing references it, but the file is still rejected up front
        data = variant()
        data["algebras"]["unused"] = {"gens": ["x"], "relations": ["x^^2"]}
        e = err(data)
        assert e.location == "algebras.unused.relations[0]"
        assert "offset" in str(e)

    def test_unknown_base(self):
        data = variant()
        data["algebras"]["rel"] = {"base": "nope", "gens": ["x"], "relations": []}
        e = err(data)
        assert e.location == "algebras.rel.base"

    def test_circular_base(self):
        data = variant()
        data["algebras"]["loop"] = {"base": "loop", "gens": ["x"], "relations": []}
        e = err(data)
        assert "circular" in str(e)

    def test_base_must_be_over_the_ground_field(self):
        data = variant()
        data["algebras"]["a1"] = {"gens": ["s"], "relations": ["s^2"]}
        data["algebras"]["a2"] = {"base": "a1", "gens": ["x"], "relations": ["x^2"]}
        data["algebras"]["a3"] = {"base": "a2", "gens": ["y"], "relations": ["y^2"]}
        e = err(data)
        assert e.location == "algebras.a3.base"

    def test_relative_presentation_flattens(self):
        data = variant()
        data["algebras"]["a1"] = {"gens": ["s"], "relations": ["s^2"]}
        data["algebras"]["rel"] = {"base": "a1", "gens": ["x"], "relations": ["x^2 - s"]}
        ps = load_problem_file(data)
        B = ps.algebra("rel")
        assert B.names == ("s", "x")
        assert B.dim() == 4

    def test_duplicate_generator_name(self):
        data = variant()
        data["algebras"]["dup"] = {"gens": ["x", "x"], "relations": []}
        e = err(data)
        assert e.location == "algebras.dup.gens"


class TestModuleErrors:
    def test_unknown_algebra_reference(self):
        data = variant()
        data["modules"]["m"] = {"algebra": "ghost", "kind": "trivial"}
        e = err(data)
        assert e.location == "modules.m.algebra"

    def test_unknown_kind(self):
        data = variant()
        data["modules"]["m"] = {"algebra": "dual", "kind": "free"}
        e = err(data)
        assert e.location.endswith(".kind")

    def test_regular_needs_finite_dimensions(self):
        # node is infinite-dimensional and nothing truncates this module
        data = variant()
        data["modules"]["m"] = {"algebra": "node", "kind": "regular"}
        e = err(data)
        assert "not finite-dimensional" in str(e)

    def test_explicit_matrix_shape(self):
        data = variant()
        data["modules"]["m"] = {
            "algebra": "dual",
            "kind": "explicit",
            "labels": ["j0"],
            "action": {"x": [[0, 0]]},
        }
        e = err(data)
        assert e.location.endswith(".action.x")
        assert "1x1" in str(e)

    def test_explicit_action_must_respect_relations(self):
        data = variant()
        data["modules"]["m"] = {
            "algebra": "dual",
            "kind": "explicit",
            "labels": ["j0"],
            "action": {"x": [[1]]},
        }
        e = err(data)
        assert "not a module over" in str(e)

    def test_explicit_missing_generator(self):
        data = variant()
        data["modules"]["m"] = {
            "algebra": "fat",
            "kind": "explicit",
            "labels": ["j0"],
            "action": {"x": [[0]]},
        }
        e = err(data)
        assert "missing matrix" in str(e)

    def test_truncated_needs_a_degree(self):
        data = variant()
        data["modules"]["m"] = {"algebra": "node", "kind": "truncated", "degree": -1}
        e = err(data)
        assert e.location.endswith(".degree")


class TestProblemErrors:
    def test_unknown_problem_kind(self):
        data = variant()
        data["problems"].append({"kind": "solve", "algebra": "dual"})
        e = err(data)
        assert e.location == "problems[2].kind"

    def test_missing_required_key(self):
        data = variant()
        data["problems"].append({"kind": "tmods", "algebra": "dual"})
        e = err(data)
        assert "missing required key" in str(e) and "'module'" in str(e)

    def test_unknown_key_in_problem(self):
        data = variant()
        data["problems"][0]["extra"] = 1
        e = err(data)
        assert e.location == "problems[0].extra"

    def test_unknown_algebra_in_problem(self):
        data = variant()
        data["problems"][0]["algebra"] = "ghost"
        e = err(data)
        assert e.location == "problems[0].algebra"

    def test_unknown_module_in_problem(self):
        data = variant()
        data["problems"][0]["module"] = "ghost"
        e = err(data)
        assert e.location == "problems[0].module"

    def test_bad_expected(self):
        data = variant()
        data["problems"][0]["expected"] = [1]
        e = err(data)
        assert e.location == "problems[0].expected"

    def test_bad_truncate(self):
        data = variant()
        data["problems"][0]["truncate"] = -2
        e = err(data)
        assert e.location == "problems[0].truncate"

    def test_lift_problem_parses(self):
        data = variant()
        data["algebras"]["thick"] = {"gens": ["w"], "relations": ["w^4"]}
        data["problems"].append(
            {
                "kind": "lift",
                "name": "l0",
                "algebra": "dual",
                "through": "thick",
                "ideal": ["w^2"],
                "images": {"x": "w"},
                "expected": {"solvable": False},
            }
        )
        ps = load_problem_file(data)
        spec = ps.problems[-1]
        assert spec.kind == "lift" and spec.images == {"x": "w"}

    def test_lift_images_must_be_strings(self):
        data = variant()
        data["algebras"]["thick"] = {"gens": ["w"], "relations": ["w^4"]}
        data["problems"].append(
            {
                "kind": "lift",
                "name": "l0",
                "algebra": "dual",
                "through": "thick",
                "ideal": ["w^2"],
                "images": {"x": 3},
            }
        )
        e = err(data)
        assert e.location == "problems[2].images"

    def test_deform_problem_parses(self):
        data = variant()
        data["algebras"]["a1"] = {"gens": ["s"], "relations": ["s^2"]}
        data["algebras"]["a2"] = {"gens": ["s"], "relations": ["s^3"]}
        data["algebras"]["rel"] = {"base": "a1", "gens": ["x"], "relations": ["x^2 - s"]}
        data["modules"]["rel.k"] = {"algebra": "rel", "kind": "trivial"}
        data["problems"].append(
            {
                "kind": "deform",
                "name": "d0",
                "algebra": "rel",
                "module": "rel.k",
                "extended_base": "a2",
                "ideal": ["s^2"],
                "expected": {"obstructed": False},
            }
        )
        ps = load_problem_file(data)
        assert ps.problems[-1].kind == "deform"

    def test_bad_phi(self):
        data = variant()
        data["problems"].append(
            {
                "kind": "deform",
                "name": "d0",
                "algebra": "dual",
                "module": "dual.k",
                "extended_base": "dual",
                "ideal": ["x"],
                "phi": [1, 2],
            }
        )
        e = err(data)
        assert e.location == "problems[2].phi"
