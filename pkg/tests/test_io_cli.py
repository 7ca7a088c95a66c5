import io as stdio
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from postgroupoid import io
from postgroupoid.catalog import catalog
from postgroupoid.cli import run_cli
from postgroupoid.core import cyclic
from postgroupoid.post_groupoid import validate_post_groupoid

from conftest import GOLDEN
from strategies import action_post_groupoids

VALID = sorted(p.name for p in GOLDEN.glob("*.pgx") if p.stem != "malformed")


def run(*argv):
    out, err = stdio.StringIO(), stdio.StringIO()
    code = run_cli([str(a) for a in argv], out, err)
    return code, out.getvalue(), err.getvalue()


# -- format --------------------------------------------------------------------

@pytest.mark.parametrize("name", VALID)
def test_golden_files_are_canonical(name):
    text = (GOLDEN / name).read_text(encoding="utf-8")
    assert io.emit(io.parse(text)) == text


def test_z3_post_document():
    doc = io.read(GOLDEN / "z3_post.pgx")
    assert doc.kind == "post_groupoid"
    assert io.to_object(doc) == catalog()["z3_on_z3"].post_groupoid()


def test_empty_file():
    with pytest.raises(io.ParseError) as e:
        io.parse("")
    assert e.value.line == 1


def test_out_of_range_names_the_field():
    with pytest.raises(io.ParseError) as e:
        io.read(GOLDEN / "malformed.pgx")
    assert e.value.path == "payload.tri"
    text = (GOLDEN / "malformed.pgx").read_text()
    assert text.splitlines()[e.value.line - 1].strip().startswith('"tri"')


@pytest.mark.parametrize("text,fragment", [
    ('{"kind": "map", "payload": {"map": [0.5]}}', "float"),
    ('{"kind": "map", "payload": {"map": [true]}}', "true"),
    ('{"kind": "map", "payload": {"map": [null]}}', "null"),
    ('{"kind": "map", "kind": "map", "payload": {"map": []}}', "duplicate"),
    ('{"kind": "lattice", "payload": {}}', "unknown kind"),
    ('{"kind": "map", "payload": {"map": [0]}, "extra": 1}', "unknown key"),
    ('{"kind": "map", "payload": {"map": [0]}, "meta": {"name": 3}}', "meta"),
    ('[1, 2]', "object"),
    ('{"kind": "map", "payload": {"map": [0]', "line 1"),
    ('{"kind": "map", "payload": {"map": [NaN]}}', "not allowed"),
])
def test_rejected_syntax(text, fragment):
    with pytest.raises(io.ParseError) as e:
        io.parse(text)
    assert fragment in str(e.value)


def test_missing_field_path():
    doc = io.to_document(catalog()["z2_on_z2"].post_groupoid())
    del doc.payload["bundle"]["unit"]
    with pytest.raises(io.ParseError) as e:
        io.parse(io.emit(doc))
    assert e.value.path == "payload.bundle.unit"


def test_sentinel_outside_partial_tables_rejected():
    doc = io.to_document(cyclic(3))
    doc.payload["inv"][1] = -1
    with pytest.raises(io.ParseError) as e:
        io.parse(io.emit(doc))
    assert e.value.path == "payload.inv"


def test_trivial_group_emit_is_stable():
    texts = {io.emit(io.to_document(cyclic(1), {"name": "trivial"})) for _ in range(3)}
    assert texts == {'{\n  "kind": "group",\n  "meta": {\n    "name": "trivial"\n  },\n'
                     '  "payload": {\n    "identity": 0,\n    "inv": [0],\n    "mul": [\n'
                     '      [0]\n    ]\n  }\n}\n'}


def test_equal_documents_equal_bytes():
    a = io.to_document(cyclic(3), {"b": "2", "a": "1"})
    b = io.Document("group", {"inv": [0, 2, 1], "identity": 0,
                              "mul": [[0, 1, 2], [1, 2, 0], [2, 0, 1]]}, {"a": "1", "b": "2"})
    assert a == b and io.emit(a) == io.emit(b)


def test_unicode_meta_round_trip():
    doc = io.to_document(cyclic(2), {"comment": "Z/2 acting on ℤ"})
    text = io.emit(doc)
    assert "ℤ" in text and io.parse(text) == doc


@pytest.mark.parametrize("name", sorted(catalog()))
def test_catalog_fixpoint(name):
    p = catalog()[name].post_groupoid()
    doc = io.to_document(p, {"name": name})
    text = io.emit(doc)
    assert io.parse(text) == doc
    assert io.emit(io.parse(text)) == text
    assert io.to_object(io.parse(text)) == p


@given(action_post_groupoids(), st.dictionaries(st.sampled_from(["name", "comment"]), st.text()))
def test_round_trip_random(p, meta):
    doc = io.to_document(p, meta)
    assert io.parse(io.emit(doc)) == doc
    assert io.to_object(io.parse(io.emit(doc))) == p


# -- command line --------------------------------------------------------------

def test_check_valid():
    assert run("check", GOLDEN / "z3_post.pgx")[:2] == (0, "fibers_isomorphic=true\nok\n")


def test_check_violating():
    code, out, _ = run("check", GOLDEN / "violating.pgx")
    assert code == 1
    first = out.splitlines()[0].split()
    assert first[0] in {"left_bijective", "axiom_iii"}
    assert all(w.isdigit() for w in first[1:])


def test_check_malformed():
    code, out, err = run("check", GOLDEN / "malformed.pgx")
    assert code == 2 and out == ""
    assert "payload.tri" in err


def test_missing_file_is_malformed(tmp_path):
    assert run("check", tmp_path / "absent.pgx")[0] == 2


def test_ybe_summary():
    assert run("ybe", GOLDEN / "z3_post.pgx")[:2] == (0, "pairs=27 triples=81 ybe=ok nondeg=ok\n")


def test_ybe_from_bracoid_and_rb():
    for name in ("z3_bracoid.pgx", "z3_rb.pgx", "z3_braided.pgx"):
        assert run("ybe", GOLDEN / name)[:2] == (0, "pairs=27 triples=81 ybe=ok nondeg=ok\n")


def test_ybe_writes_braided_quiver(tmp_path):
    out = tmp_path / "r.pgx"
    assert run("ybe", GOLDEN / "z3_post.pgx", "-o", out)[0] == 0
    assert out.read_text() == (GOLDEN / "z3_braided.pgx").read_text()


def test_ybe_on_invalid_input():
    code, out, _ = run("ybe", GOLDEN / "violating.pgx")
    assert code == 1 and out.startswith("left_bijective")


def test_enumerate_count():
    assert run("enumerate", GOLDEN / "z2_point.pgx", "--count-only")[:2] == (0, "count=1\n")
    assert run("enumerate", GOLDEN / "z4_point.pgx", "--count-only")[1] == "count=2\n"


def test_enumerate_lists_structures(tmp_path):
    code, out, _ = run("enumerate", GOLDEN / "v4_point.pgx")
    assert code == 0 and out.startswith("count=4\nstructure 0\n{")
    assert out.count('"kind": "post_groupoid"') == 4
    assert run("enumerate", GOLDEN / "v4_point.pgx", "-o", tmp_path / "all")[0] == 0
    files = sorted((tmp_path / "all").glob("*.pgx"))
    assert len(files) == 4
    assert all(run("check", f)[0] == 0 for f in files)


def test_enumerate_budget():
    code, out, _ = run("enumerate", GOLDEN / "s3_point.pgx", "--count-only", "--budget", "5")
    assert code == 0 and "partial=true" in out


def test_gl_and_wrong_kind():
    code, out, _ = run("gl", GOLDEN / "z3_post.pgx")
    assert code == 0 and io.parse(out).kind == "groupoid"
    code, _, err = run("gl", GOLDEN / "z3_action.pgx")
    assert code == 2 and "usage" in err


def test_check_map_kind_is_unsupported():
    assert run("check", GOLDEN / "z4_to_z2.pgx")[0] == 2


def test_from_action():
    code, out, _ = run("from-action", GOLDEN / "z3_action.pgx")
    doc = io.parse(out)
    assert code == 0 and io.to_object(doc) == catalog()["z3_on_z3"].post_groupoid()
    code, out, _ = run("from-action", "--post", GOLDEN / "z4_post_action.pgx")
    assert code == 0
    p = io.to_object(io.parse(out))
    assert p.n == 16 and validate_post_groupoid(p).ok


def test_from_action_post_requires_structure():
    assert run("from-action", "--post", GOLDEN / "z3_action.pgx")[0] == 2


def test_convert_round_trip_bytes(tmp_path):
    b = tmp_path / "b.pgx"
    assert run("convert", GOLDEN / "z3_post.pgx", "--to", "bracoid", "-o", b)[0] == 0
    code, out, _ = run("convert", b, "--to", "post_groupoid")
    assert code == 0 and out == (GOLDEN / "z3_post.pgx").read_text()
    assert b.read_text() == (GOLDEN / "z3_bracoid.pgx").read_text()


def test_rb_subcommands():
    assert run("rb", GOLDEN / "z3_rb.pgx", "--validate")[:2] == (0, "ok\n")
    code, out, _ = run("rb", GOLDEN / "z3_rb.pgx", "--induced")
    assert code == 0 and io.to_object(io.parse(out)) == catalog()["z3_on_z3"].post_groupoid()
    code, out, _ = run("rb", GOLDEN / "z3_rb.pgx", "--descendent")
    assert code == 0 and io.parse(out).kind == "groupoid"
    code, out, _ = run("rb", GOLDEN / "z3_rb.pgx", "--matched-pair")
    assert code == 0 and io.parse(out).kind == "matched_pair"


def test_rb_flags_are_exclusive():
    assert run("rb", GOLDEN / "z3_rb.pgx", "--validate", "--induced")[0] == 2
    assert run("rb", GOLDEN / "z3_rb.pgx")[0] == 2


def test_sections_report():
    code, out, _ = run("sections", GOLDEN / "z2_post.pgx")
    assert code == 0
    assert out.splitlines() == [
        "sections=4", "weak_laws=ok triples=64", "left_bijective_mask=1001", "bisections=2",
        "bisection_mask=1001", "bisection_left_bijective=ok", "bisections_closed_under_mul=true",
        "bisections_closed_under_star=true"]
    code, out, _ = run("sections", GOLDEN / "z2_post.pgx", "--bisections-only")
    assert out.splitlines()[0] == "bisections=2"


def test_sections_report_bisection_failure():
    code, out, _ = run("sections", GOLDEN / "z3_post.pgx", "--bisections-only")
    assert code == 1
    assert "bisection_left_bijective=fail" in out
    assert "bisections_closed_under_mul=false" in out


def test_hom():
    args = [GOLDEN / f for f in ("z4_post.pgx", "z2_post_point.pgx", "z4_to_z2.pgx")]
    assert run("hom", *args)[:2] == (0, "hom=ok\n")
    code, _, err = run("hom", GOLDEN / "z4_post.pgx", GOLDEN / "z3_rb.pgx", args[2])
    assert code == 2


def test_hom_violation(tmp_path):
    m = tmp_path / "m.pgx"
    io.write(m, io.to_document([1, 1, 1, 1]))
    code, out, _ = run("hom", GOLDEN / "z4_post.pgx", GOLDEN / "z2_post_point.pgx", m)
    assert code == 1 and out.splitlines()[-1] == "hom=fail"


def test_bad_arguments():
    assert run("nope")[0] == 2
    assert run("ybe")[0] == 2


def test_outputs_are_deterministic(tmp_path):
    for argv in (["gl", GOLDEN / "s3_post.pgx"], ["ybe", GOLDEN / "s3_post.pgx"],
                 ["sections", GOLDEN / "s3_post.pgx"], ["enumerate", GOLDEN / "s3_point.pgx"]):
        assert run(*argv) == run(*argv)


def test_console_script():
    res = subprocess.run([sys.executable, "-m", "postgroupoid.cli", "ybe", str(GOLDEN / "z2_post.pgx")],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout == "pairs=8 triples=16 ybe=ok nondeg=ok\n"


def test_golden_files_regenerate(tmp_path):
    script = GOLDEN.parent.parent / "scripts" / "make_golden.py"
    subprocess.run([sys.executable, str(script), str(tmp_path)], check=True)
    made = sorted(p.name for p in tmp_path.glob("*.pgx"))
    assert made == sorted(p.name for p in GOLDEN.glob("*.pgx"))
    for name in made:
        assert (tmp_path / name).read_bytes() == (GOLDEN / name).read_bytes(), name
