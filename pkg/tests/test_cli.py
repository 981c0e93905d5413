import io
import json
import pathlib
import subprocess
import sys

import pytest

from clearoptic.cli import main

GOLDEN = pathlib.Path(__file__).parent / "fixtures" / "golden"


def run(argv, stdin=""):
    out, err = io.StringIO(), io.StringIO()
    old = sys.stdin
    sys.stdin = io.StringIO(stdin)
    try:
        code = main(argv, out, err)
    finally:
        sys.stdin = old
    return code, out.getvalue(), err.getvalue()


ADDRESSES = json.dumps({"postal": {"street": "45 Banbury Rd", "city": "Oxford"}})
PEOPLE = json.dumps([{"n": 1, "email": "a@b"}, {"n": 2, "email": "c@d"}])


@pytest.mark.parametrize(
    "argv, stdin, code, stdout",
    [
        (["get", ".x"], '{"x": 1}', 0, "1\n"),
        (["preview", "?left"], '{"right": 2}', 1, "null\n"),
        (["preview", "?left"], '{"left": 2}', 0, "2\n"),
        (["get", "?postal.street"], ADDRESSES, 0, '"45 Banbury Rd"\n'),
        (["get", "[5]"], "[1, 2]", 1, "null\n"),
        (["list", "each .email"], PEOPLE, 0, '["a@b", "c@d"]\n'),
        (["list", ".x"], '{"x": [1]}', 0, "[[1]]\n"),
        (["set", "each .n", "0"], PEOPLE, 0, '[{"n": 0, "email": "a@b"}, {"n": 0, "email": "c@d"}]\n'),
        (["set", "?postal.city", '"Paris"'], ADDRESSES, 0, '{"postal": {"street": "45 Banbury Rd", "city": "Paris"}}\n'),
        (["over", "each .email", "uppercase"], PEOPLE, 0, '[{"n": 1, "email": "A@B"}, {"n": 2, "email": "C@D"}]\n'),
        (["over", "each .n", "incr"], PEOPLE, 0, '[{"n": 2, "email": "a@b"}, {"n": 3, "email": "c@d"}]\n'),
        (["over", "each", "neg"], "[1, -2.5]", 0, "[-1, 2.5]\n"),
        (["agg", "each .n", "sum"], PEOPLE, 0, "3\n"),
        (["agg", "each .n", "mean"], PEOPLE, 0, "1.5\n"),
        (["agg", "each", "max"], "[3, 9, 4]", 0, "9\n"),
        (["agg", "each", "min"], "[3, 9, 4]", 0, "3\n"),
        (["agg", "each .email", "concat"], PEOPLE, 0, '"a@bc@d"\n'),
        (["agg", "each", "sum"], "[]", 0, "0\n"),
        (["kind", "?postal.street"], "", 0, "Affine\n"),
        (["kind", "each .email .domain"], "", 0, "Traversal\n"),
        (["kind", ""], "", 0, "Adapter\n"),
        (["get", ".name"], '{"name": "Emmy Nöther"}', 0, '"Emmy Nöther"\n'),
    ],
)
def test_commands(argv, stdin, code, stdout):
    assert run(argv, stdin)[:2] == (code, stdout)


@pytest.mark.parametrize(
    "argv, stdin, code",
    [
        # 2: lexing, parsing, or a path too general for the subcommand
        (["get", ".a $"], "{}", 2),
        (["get", "."], "{}", 2),
        (["kind", "[x]"], "", 2),
        (["get", "each"], "[1]", 2),
        (["preview", "each .x"], "[]", 2),
        # 3: the document does not have the shape the path expects
        (["get", ".x"], "[1]", 3),
        (["get", ".x"], '{"y": 1}', 3),
        (["list", "each"], '{"a": 1}', 3),
        (["over", "each", "uppercase"], "[1]", 3),
        (["over", "each", "incr"], '["a"]', 3),
        (["agg", "each", "sum"], '["a"]', 3),
        (["agg", "each", "mean"], "[]", 3),
        (["agg", "each", "concat"], '["a", [1]]', 3),
        (["set", ".a.b", "1"], '{"a": 2}', 3),
        # 4: unreadable or invalid input
        (["get", ".x"], "{not json", 4),
        (["get", ".x", "--input", "/nonexistent/doc.json"], "", 4),
        (["set", ".x", "{bad"], '{"x": 1}', 4),
        (["demo", "iris", "--data", "/nonexistent/iris.csv"], "", 4),
    ],
)
def test_exit_codes(argv, stdin, code):
    got, out, err = run(argv, stdin)
    assert got == code
    assert err


def test_input_file(tmp_path):
    doc = tmp_path / "doc.json"
    doc.write_text('{"x": {"y": [10, 20]}}', encoding="utf-8")
    assert run(["get", ".x.y[1]", "-i", str(doc)])[:2] == (0, "20\n")


def test_malformed_dataset_is_an_io_error(tmp_path):
    bad = tmp_path / "iris.csv"
    bad.write_text("sepal_length\n1\n", encoding="utf-8")
    assert run(["demo", "iris", "--data", str(bad)])[0] == 4


def test_usage_errors_exit_2():
    with pytest.raises(SystemExit) as e:
        run(["over", ".x", "reverse"])
    assert e.value.code == 2
    with pytest.raises(SystemExit) as e:
        run(["laws", "--sizes", "1,2"])
    assert e.value.code == 2


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["demo", "address"], "address.txt"),
        (["demo", "mail"], "mail.txt"),
        (["demo", "iris", "--agg", "mean"], "iris_mean.txt"),
        (["demo", "iris", "--agg", "max"], "iris_max.txt"),
        (["demo", "iris", "--query", "4.8,3.1,1.5,0.1"], "iris_classify.txt"),
    ],
)
def test_demo_goldens(argv, golden):
    code, out, _ = run(argv)
    assert code == 0
    assert out.encode("utf-8") == (GOLDEN / golden).read_bytes()


def test_laws_subcommand_small_suites():
    code, out, _ = run(["laws", "--suite", "containers", "--seed", "3"])
    assert code == 0
    lines = out.splitlines()
    assert lines[-1].startswith("all suites") and lines[-1].endswith("PASS")
    assert any("counitality" in line for line in lines)


def test_laws_finite_accepts_sizes():
    code, out, _ = run(["laws", "--suite", "finite", "--sizes", "1,2,2,1"])
    assert code == 0
    assert "PASS" in out.splitlines()[-1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "clearoptic", "kind", "?a.b"], capture_output=True, text=True, check=False
    )
    assert proc.returncode == 0
    assert proc.stdout == "Affine\n"
