import io
import json
import math

import numpy as np
import pytest

from vortexball.export import Table, document, dumps, fmt_float, to_csv, write_outputs


def test_float_format_round_trips():
    for x in (0.1, 1 / 3, -2.5e-300, 1e300, 0.0, math.pi):
        s = fmt_float(x)
        assert float(s) == x
        assert "e" in s and len(s.split("e")[0].replace("-", "").replace(".", "")) == 17


def test_csv_layout():
    t = Table("t", ["a", "b", "c"])
    t.add(1, 0.5, True)
    t.add(np.int64(2), np.float64(-1.0), "x")
    assert to_csv(t) == (
        "a,b,c\n1,5.0000000000000000e-01,true\n2,-1.0000000000000000e+00,x\n"
    )
    with pytest.raises(ValueError):
        t.add(1, 2)


def test_json_is_strict_and_stable():
    doc = {"x": 0.25, "n": None, "f": [1, 2.0], "z": math.nan, "nested": [{"k": True}]}
    text = dumps(doc)
    assert text == dumps(doc)
    parsed = json.loads(text)
    assert parsed["x"] == 0.25 and parsed["n"] is None and parsed["z"] == "nan"
    assert "NaN" not in text
    with pytest.raises(TypeError):
        dumps({"s": {1, 2}})


def test_document_shape():
    t = Table("rows", ["v"], [(1.0,)])
    d = document({"tool": "x"}, [t], {"s": 1})
    assert d == {"meta": {"tool": "x"}, "data": {"rows": {"columns": ["v"], "rows": [(1.0,)]}, "summary": {"s": 1}}}


def test_write_outputs(tmp_path):
    t1 = Table("a", ["v"], [(1.0,)])
    t2 = Table("b", ["w"], [(2,)])
    paths = write_outputs(tmp_path / "csv", "csv", "cmd", {"m": 1}, [t1, t2], {"s": 2})
    assert sorted(p.name for p in paths) == ["a.csv", "b.csv", "meta.json"]
    assert json.loads((tmp_path / "csv" / "meta.json").read_text())["summary"] == {"s": 2}
    paths = write_outputs(tmp_path / "js", "json", "cmd", {"m": 1}, [t1, t2])
    assert [p.name for p in paths] == ["cmd.json"]
    buf = io.StringIO()
    write_outputs(None, "csv", "cmd", {}, [t1, t2], stream=buf)
    assert buf.getvalue() == "# a\nv\n1.0000000000000000e+00\n\n# b\nw\n2\n"
