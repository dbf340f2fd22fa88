import io
import json

import numpy as np
import pytest
from jsonschema import Draft202012Validator

from src.cli import Options, emit_dot, parse, run, serialize
from src.cli.document import build_workspace, resolve_tolerance
from src.cli.report import from_json, to_json, to_text
from src.config import settings
from src.enums import Command, DecompositionMode, DiagramOf
from src.errors import DocumentError
from src.main import main


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _json(capsys, *argv):
    code, out, err = _run(capsys, *argv, "--format", "json")
    return code, json.loads(out)


def _doc(path):
    return parse(path.read_text(encoding="utf-8"))


@pytest.fixture
def report_validator(schema_dir):
    return Draft202012Validator(json.loads((schema_dir / "report.schema.json").read_text(encoding="utf-8")))


# ============================================================
# VERDICTS AND EXIT CODES
# ============================================================

def test_coproduct_split(capsys, golden_dir, report_validator):
    code, report = _json(capsys, "decompose-par", str(golden_dir / "coproduct_split.json"), "--morphism", "f")
    assert code == 0
    assert report["verdict"] == "decomposable"
    assert report["mode"] == "fixed"
    assert report["witnesses"]["first"]["table"] == {"a1": "b1"}
    assert report["values"]["replay_deviation"] == 0.0
    report_validator.validate(report)


def test_sixth_power_sequential(capsys, golden_dir):
    code, report = _json(capsys, "decompose-seq", str(golden_dir / "square_cube.json"), "--morphism", "sixth")
    assert code == 0
    assert report["values"]["route"] == "extended image"


def test_supplied_factors(capsys, golden_dir):
    path = str(golden_dir / "square_cube.json")
    code, report = _json(capsys, "decompose-seq", path, "--morphism", "sixth",
                         "--factors", "square,cube", "--policy", "paper-literal")
    assert code == 0
    assert report["policy"] == "paper-literal"
    code, report = _json(capsys, "decompose-seq", path, "--morphism", "sixth", "--factors", "square,cube")
    assert code == 1
    assert report["verdict"] == "degenerate_only"


def test_constant_map_essential(capsys, golden_dir):
    path = str(golden_dir / "constant_map.json")
    code, report = _json(capsys, "decompose-seq", path, "--morphism", "k", "--policy", "essential")
    assert code == 0
    assert report["values"]["intermediate"] == 2
    code, report = _json(capsys, "decompose-seq", path, "--morphism", "id_A")
    assert code == 1
    assert report["verdict"] == "not_decomposable"


def test_solve_linear_system(capsys, golden_dir):
    code, report = _json(capsys, "solve", str(golden_dir / "linear_system.json"), "--morphism", "M", "--vector", "b")
    assert code == 0
    (x_re, x_im), (y_re, y_im) = report["values"]["solution"]
    assert (x_re, y_re) == (pytest.approx(1.0), pytest.approx(2.0))
    assert x_im == pytest.approx(0.0, abs=1e-12) and y_im == pytest.approx(0.0, abs=1e-12)


def test_inverse_without_vector(capsys, golden_dir):
    code, report = _json(capsys, "solve", str(golden_dir / "linear_system.json"), "--morphism", "M")
    assert code == 0
    rows = [[re for re, _ in row] for row in report["values"]["inverse"]]
    assert rows == [[pytest.approx(0.5), pytest.approx(-0.5)], [pytest.approx(0.5), pytest.approx(0.5)]]


def test_singular_solve_is_an_input_error(capsys, tmp_path):
    path = tmp_path / "singular.json"
    path.write_text(json.dumps({
        "schema_version": "1",
        "instance": {"category": "vec", "product": "directsum"},
        "objects": [{"name": "V", "dim": 2}],
        "morphisms": [{"name": "M", "dom": "V", "cod": "V", "matrix": [[1, 2], [2, 4]]}],
        "vectors": [{"name": "b", "entries": [1, 1]}],
    }), encoding="utf-8")
    code, _, err = _run(capsys, "solve", str(path), "--morphism", "M", "--vector", "b")
    assert code == 2
    assert "singular" in err


def test_directsum_fixed_split(capsys, golden_dir):
    path = str(golden_dir / "linear_system.json")
    code, report = _json(capsys, "decompose-par", path, "--morphism", "M", "--split", "halves")
    assert code == 1
    assert report["verdict"] == "not_decomposable"
    code, report = _json(capsys, "decompose-par", path, "--morphism", "M", "--split", "halves",
                         "--mode", "up-to-iso")
    assert report["mode"] == "up-to-iso"
    assert report["values"]["replay_deviation"] <= 1e-10


def test_bell_state_is_entangled(capsys, golden_dir):
    code, report = _json(capsys, "entangled", str(golden_dir / "bell_state.json"),
                         "--vector", "bell", "--split", "qubits")
    assert code == 1
    assert report["values"]["entangled"] is True
    assert report["values"]["schmidt_coefficients"] == [pytest.approx(0.70710678), pytest.approx(0.70710678)]


@pytest.mark.parametrize("source", [["--vector", "psi_vec"], ["--morphism", "psi"]])
def test_product_state_is_not_entangled(capsys, golden_dir, source):
    code, report = _json(capsys, "entangled", str(golden_dir / "product_state.json"), *source, "--split", "2,2")
    assert code == 0
    assert report["values"]["schmidt_rank"] == 1


def test_swap_gate(capsys, golden_dir):
    path = str(golden_dir / "swap_gate.json")
    code, _ = _json(capsys, "decompose-par", path, "--morphism", "swap", "--split", "qubits")
    assert code == 1
    code, report = _json(capsys, "coupling", path, "--morphism", "swap", "--split", "qubits")
    assert code == 0
    assert report["values"]["coupling"] == pytest.approx(0.75)
    assert report["values"]["schmidt_rank"] == 4


def test_cnot_coupling(capsys, golden_dir):
    code, report = _json(capsys, "coupling", str(golden_dir / "cnot_gate.json"),
                         "--morphism", "cnot", "--split", "qubits")
    assert code == 0
    assert report["values"]["coupling"] == pytest.approx(0.5)


def test_tensor_product_operator(capsys, golden_dir, report_validator):
    code, report = _json(capsys, "decompose-par", str(golden_dir / "tensor_product.json"),
                         "--morphism", "xz", "--split", "qubits")
    assert code == 0
    assert report["tolerance"] == 1e-10
    report_validator.validate(report)


@pytest.mark.parametrize("flags", [["--split", "grid"], ["--mode", "search"]])
def test_product_map(capsys, golden_dir, report_validator, flags):
    code, report = _json(capsys, "decompose-par", str(golden_dir / "product_map.json"), "--morphism", "f", *flags)
    assert code == 0
    assert report["verdict"] == "decomposable"
    report_validator.validate(report)


def test_check_laws(capsys, golden_dir, report_validator):
    code, report = _json(capsys, "check-laws", str(golden_dir / "laws_only.json"), "--trials", "20", "--seed", "3")
    assert code == 0
    assert report["passed"] is True
    assert report["seed"] == 3
    assert [law["law_id"] for law in report["laws"]] == [
        "assoc", "identity", "interchange", "naturality_α", "naturality_λ",
        "naturality_ρ", "triangle", "pentagon",
    ]
    assert all(law["trials"] == 20 for law in report["laws"])
    report_validator.validate(report)


def test_text_report(capsys, golden_dir):
    code, out, _ = _run(capsys, "decompose-par", str(golden_dir / "coproduct_split.json"), "--morphism", "f")
    assert code == 0
    assert "verdict: decomposable" in out
    assert out.endswith("exit: 0\n")


def test_timing_is_optional(capsys, golden_dir):
    path = str(golden_dir / "cnot_gate.json")
    _, plain = _json(capsys, "coupling", path, "--morphism", "cnot", "--split", "qubits")
    _, timed = _json(capsys, "coupling", path, "--morphism", "cnot", "--split", "qubits", "--timing")
    assert "timing_ms" not in plain
    assert timed["timing_ms"] >= 0


def test_report_written_to_file(capsys, golden_dir, tmp_path):
    out = tmp_path / "report.json"
    code, stdout, _ = _run(capsys, "coupling", str(golden_dir / "cnot_gate.json"), "--morphism", "cnot",
                           "--split", "qubits", "--format", "json", "--out", str(out))
    assert code == 0
    assert stdout == ""
    assert json.loads(out.read_text(encoding="utf-8"))["command"] == "coupling"


def test_document_from_stdin(capsys, golden_dir, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.StringIO((golden_dir / "constant_map.json").read_text(encoding="utf-8")))
    code, _, _ = _run(capsys, "decompose-seq", "-", "--morphism", "k")
    assert code == 0


# ============================================================
# DETERMINISM
# ============================================================

@pytest.mark.parametrize("argv", [
    ["check-laws", "laws_only.json", "--trials", "15"],
    ["decompose-par", "product_map.json", "--morphism", "f", "--mode", "search"],
    ["decompose-par", "tensor_product.json", "--morphism", "xz", "--split", "qubits"],
])
def test_json_output_is_byte_stable(capsys, golden_dir, argv):
    command, name, *rest = argv
    args = [command, str(golden_dir / name), *rest, "--format", "json"]
    _, first, _ = _run(capsys, *args)
    _, second, _ = _run(capsys, *args)
    assert first == second


@pytest.mark.parametrize("expected, argv", [
    ("coproduct_split.json", ["decompose-par", "coproduct_split.json", "--morphism", "f"]),
    ("square_cube.json", ["decompose-seq", "square_cube.json", "--morphism", "sixth"]),
    ("linear_system_solve.json", ["solve", "linear_system.json", "--morphism", "M", "--vector", "b"]),
    ("linear_system_halves.json", ["decompose-par", "linear_system.json", "--morphism", "M", "--split", "halves"]),
    ("bell_state.json", ["entangled", "bell_state.json", "--vector", "bell", "--split", "qubits"]),
    ("swap_coupling.json", ["coupling", "swap_gate.json", "--morphism", "swap", "--split", "qubits"]),
    ("laws_seed_1.json", ["check-laws", "laws_only.json", "--trials", "20", "--seed", "1"]),
    ("laws_seed_2.json", ["check-laws", "laws_only.json", "--trials", "20", "--seed", "2"]),
])
def test_json_matches_golden_transcript(capsys, golden_dir, expected, argv):
    command, name, *rest = argv
    _, out, _ = _run(capsys, command, str(golden_dir / name), *rest, "--format", "json")
    assert out == (golden_dir / "expected" / expected).read_text(encoding="utf-8")


def test_document_bytes_from_stdin(capsys, golden_dir, monkeypatch):
    raw = (golden_dir / "constant_map.json").read_bytes()
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(raw), encoding="utf-8"))
    code, _, _ = _run(capsys, "decompose-seq", "-", "--morphism", "k")
    assert code == 0


def test_stdin_that_is_not_utf8_exits_2(capsys, monkeypatch):
    monkeypatch.setattr("sys.stdin", io.TextIOWrapper(io.BytesIO(b'{"schema_version": \xfe}'), encoding="utf-8"))
    code, out, err = _run(capsys, "check-laws", "-")
    assert code == 2
    assert out == ""
    assert "not valid UTF-8" in err


# ============================================================
# INPUT ERRORS
# ============================================================

@pytest.mark.parametrize("name, message", [
    ("dangling_object.json", "morphisms[0].dom: unknown object 'A'"),
    ("short_row.json", "morphisms[0].matrix[1]: row has 1 entries, expected 2"),
    ("oversized.json", "objects[0]: dimension of 'V' must lie in 0..64, got 65"),
    ("not_utf8.json", "document is not valid UTF-8 (byte 24)"),
])
def test_invalid_documents(capsys, invalid_dir, name, message):
    code, out, err = _run(capsys, "decompose-par", str(invalid_dir / name), "--morphism", "M")
    assert code == 2
    assert out == ""
    assert message in err


def test_non_finite_numbers_are_rejected():
    text = '{"schema_version": "1", "instance": {"category": "vec", "product": "tensor", "tolerance": NaN}}'
    with pytest.raises(DocumentError, match="NaN"):
        parse(text)


def test_broken_json_names_position():
    with pytest.raises(DocumentError, match="line 1"):
        parse('{"schema_version": ')


def test_unknown_fields_are_rejected():
    with pytest.raises(DocumentError, match="not permitted"):
        parse('{"schema_version": "1", "instance": {"category": "vec", "product": "tensor"}, "colour": 1}')


def test_mismatched_instance_pairing():
    with pytest.raises(DocumentError, match="no tensor structure"):
        parse('{"schema_version": "1", "instance": {"category": "finset", "product": "tensor"}}')


@pytest.mark.parametrize("argv", [
    ["frobnicate", "{path}"],
    ["decompose-par", "{path}", "--morphism", "f", "--colour", "red"],
    ["decompose-par", "{path}", "--morphism", "nope"],
    ["decompose-par", "{path}"],
    ["decompose-par", "{path}", "--morphism", "f", "--mode", "up-to-iso"],
    ["coupling", "{path}", "--morphism", "f", "--split", "2,2,2,2"],
    ["decompose-par", "{path}", "--morphism", "f", "--policy", "lenient"],
])
def test_usage_errors_exit_2(capsys, golden_dir, argv):
    path = str(golden_dir / "coproduct_split.json")
    code, _, _ = _run(capsys, *[a.replace("{path}", path) for a in argv])
    assert code == 2


def test_missing_file_exits_2(capsys, tmp_path):
    code, _, err = _run(capsys, "check-laws", str(tmp_path / "absent.json"))
    assert code == 2
    assert "absent.json" in err


# ============================================================
# DOCUMENTS, REPORTS AND TOLERANCE
# ============================================================

def test_golden_documents_match_schema(golden_dir, schema_dir):
    validator = Draft202012Validator(json.loads((schema_dir / "document.schema.json").read_text(encoding="utf-8")))
    for path in sorted(golden_dir.glob("*.json")):
        validator.validate(json.loads(path.read_text(encoding="utf-8")))


def test_schema_rejects_oversized_dimension(invalid_dir, schema_dir):
    validator = Draft202012Validator(json.loads((schema_dir / "document.schema.json").read_text(encoding="utf-8")))
    assert not validator.is_valid(json.loads((invalid_dir / "oversized.json").read_text(encoding="utf-8")))


def test_document_serialization_round_trip(golden_dir):
    for path in sorted(golden_dir.glob("*.json")):
        doc = _doc(path)
        assert parse(serialize(doc)) == doc


def _finset_document(rng):
    product = ["coproduct", "product"][int(rng.integers(2))]
    objects, labels = [], {}
    for k in range(int(rng.integers(1, 4))):
        elements = [f"e{k}·{i}" for i in range(int(rng.integers(0, 4)))]
        objects.append({"name": f"S{k}", "elements": elements})
        labels[f"S{k}"] = elements
    a, b = objects[0]["name"], objects[-1]["name"]
    if product == "coproduct":
        joined = ([json.dumps([x, 1], ensure_ascii=False) for x in labels[a]]
                  + [json.dumps([y, 2], ensure_ascii=False) for y in labels[b]])
    else:
        joined = [json.dumps([x, y], ensure_ascii=False) for x in labels[a] for y in labels[b]]
    objects.append({"name": "P", "product_of": [a, b]})
    labels["P"] = joined

    morphisms = []
    names = list(labels)
    for k in range(int(rng.integers(1, 5))):
        dom, cod = (names[int(i)] for i in rng.integers(0, len(names), size=2))
        if labels[dom] and not labels[cod]:
            cod = dom
        table = {x: labels[cod][int(rng.integers(len(labels[cod])))] for x in labels[dom]}
        morphisms.append({"name": f"m{k}", "dom": dom, "cod": cod, "table": table})
    doc = {"schema_version": "1", "instance": {"category": "finset", "product": product},
           "objects": objects, "morphisms": morphisms}
    if product == "product":
        iso = morphisms[0]["name"]
        doc["splits"] = [{"name": "grid", "dom": [a, b], "cod": [a, b], "dom_iso": iso, "cod_iso": iso}]
    return doc


def _vec_document(rng):
    product = ["directsum", "tensor"][int(rng.integers(2))]
    dims = [int(d) for d in rng.integers(1, 4, size=int(rng.integers(1, 4)))]
    objects = [{"name": f"V{k}", "dim": d} for k, d in enumerate(dims)]
    joined = dims[0] + dims[-1] if product == "directsum" else dims[0] * dims[-1]
    objects.append({"name": "W", "product_of": ["V0", objects[-1]["name"]]})
    sizes = dims + [joined]

    morphisms = []
    for k in range(int(rng.integers(1, 4))):
        dom, cod = (int(i) for i in rng.integers(0, len(objects), size=2))
        entries = rng.uniform(-1, 1, size=(sizes[cod], sizes[dom], 2)).tolist()
        if k == 0:
            entries = [[re for re, _ in row] for row in entries]
        morphisms.append({"name": f"M{k}", "dom": objects[dom]["name"], "cod": objects[cod]["name"],
                          "matrix": entries})
    vector = rng.uniform(-1, 1, size=(joined, 2)).tolist()
    instance = {"category": "vec", "product": product}
    if rng.integers(2):
        instance["tolerance"] = float(rng.uniform(0, 1e-6))
    return {"schema_version": "1", "instance": instance, "objects": objects, "morphisms": morphisms,
            "vectors": [{"name": "v", "entries": vector}],
            "splits": [{"name": "s", "dims": [dims[0], dims[-1], dims[0], dims[-1]]}]}


@pytest.mark.parametrize("seed", range(25))
def test_generated_documents_round_trip(seed):
    rng = np.random.default_rng(seed)
    raw = _finset_document(rng) if seed % 2 else _vec_document(rng)
    doc = parse(json.dumps(raw, ensure_ascii=False))
    assert parse(serialize(doc)) == doc
    assert parse(serialize(doc).encode("utf-8")) == doc


def test_product_dimension_may_exceed_factor_cap():
    doc = parse(json.dumps({
        "schema_version": "1",
        "instance": {"category": "vec", "product": "tensor"},
        "objects": [{"name": "A", "dim": 8}, {"name": "B", "dim": 16}, {"name": "AB", "product_of": ["A", "B"]}],
    }))
    assert build_workspace(doc).objects["AB"].dim == 128


def test_report_round_trip(golden_dir):
    report, code = run(Command.DECOMPOSE_PAR, _doc(golden_dir / "product_map.json"),
                       Options(morphism="f", mode=DecompositionMode.SEARCH))
    assert code == 0
    assert from_json(to_json(report)) == report
    assert "verdict: decomposable" in to_text(report)


def test_tolerance_precedence(golden_dir, monkeypatch):
    doc = _doc(golden_dir / "tensor_product.json")
    assert resolve_tolerance(doc) == 1e-10
    monkeypatch.setattr(settings, "tolerance", 1e-6)
    assert resolve_tolerance(doc) == 1e-6
    assert resolve_tolerance(doc, 1e-3) == 1e-3
    with pytest.raises(DocumentError):
        resolve_tolerance(doc, -1.0)


def test_finset_ignores_tolerance(golden_dir, caplog):
    doc = _doc(golden_dir / "constant_map.json")
    assert resolve_tolerance(doc, 0.5) == 0.0
    assert "ignored" in caplog.text


def test_default_tolerance(golden_dir):
    assert resolve_tolerance(_doc(golden_dir / "swap_gate.json")) == settings.default_tolerance


# ============================================================
# DOT
# ============================================================

def _dot_counts(dot):
    lines = [line.strip() for line in dot.splitlines()]
    edges = [line for line in lines if " -> " in line]
    nodes = [line for line in lines if '" [label=' in line and " -> " not in line]
    return len(nodes), len(edges)


def test_dot_of_parallel_witness(golden_dir):
    dot = emit_dot(_doc(golden_dir / "coproduct_split.json"), Options(morphism="f", of=DiagramOf.DECOMPOSE_PAR))
    assert dot.startswith("digraph process {")
    assert _dot_counts(dot) == (4, 4)
    assert 'label="f₁⊕f₂"' in dot


def test_dot_of_morphism(golden_dir):
    dot = emit_dot(_doc(golden_dir / "coproduct_split.json"), Options(morphism="f"))
    assert _dot_counts(dot) == (2, 1)
    assert '"dom" [label="A"] ;' in dot


def test_dot_of_sequential_witness(golden_dir):
    dot = emit_dot(_doc(golden_dir / "square_cube.json"), Options(morphism="sixth", of=DiagramOf.DECOMPOSE_SEQ))
    assert _dot_counts(dot) == (3, 3)


def test_diagram_command_prints_dot(capsys, golden_dir):
    code, out, _ = _run(capsys, "diagram", str(golden_dir / "swap_gate.json"), "--morphism", "swap",
                        "--of", "decompose-par", "--split", "qubits")
    assert code == 1
    assert out.startswith("digraph process {")
    assert _dot_counts(out) == (2, 1)
