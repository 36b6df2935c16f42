import json

import pytest

from kspace.cli import main

BORROMEAN = "splice(borromean; hyp(fig8; invertible=true), hyp(fig8; invertible=true))\n"


@pytest.fixture
def knot(tmp_path):
    def write(text, name="k.knot"):
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


def test_h1_json(capsys, knot):
    assert run(capsys, "h1", knot(BORROMEAN), "--json")[:2] == (0, '{"rank":2,"torsion":[2,2]}')
    assert run(capsys, "--json", "h1", knot(BORROMEAN))[:2] == (0, '{"rank":2,"torsion":[2,2]}')


def test_h1_verify(capsys, knot):
    code, out, _ = run(capsys, "h1", "--verify", "--json", knot(BORROMEAN))
    assert code == 0
    assert json.loads(out)["verify"] == {"ok": True, "checked": 501, "mismatches": 0}


def test_text_commands(capsys, knot):
    f = knot(BORROMEAN)
    assert run(capsys, "type", f)[1] == "S^1 x (((S^1)^2 x (S^1)^2) x_{Z4} S^1)"
    assert run(capsys, "dim", f)[1] == "6"
    assert run(capsys, "invertible", f)[1] == "true"
    assert run(capsys, "pi1", f)[1] == "Z x (Z^4 ⋊_{(1 2 -)} Z)"
    assert run(capsys, "af", f)[1].startswith("$: borromean A_f=Z4")
    assert run(capsys, "parse", f)[1] == BORROMEAN.strip()
    assert run(capsys, "gramain", knot("sum(trefoil, trefoil, trefoil, trefoil)"))[1] == "4"
    assert run(capsys, "dim", knot("sum(trefoil, fig8)"))[1] == "none"


def test_eq(capsys, knot):
    a = knot("sum(trefoil, fig8, torus(2,5))", "a.knot")
    b = knot("sum(torus(2,5), trefoil, fig8)", "b.knot")
    c = knot("sum(torus(2,5), trefoil)", "c.knot")
    assert run(capsys, "eq", a, b)[:2] == (0, "equal")
    assert run(capsys, "eq", a, c)[:2] == (0, "not equal")


def test_stdin(capsys, monkeypatch):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO("fig8"))
    assert run(capsys, "dim", "-")[:2] == (0, "2")


def test_json_document_input(capsys, knot):
    code, doc, _ = run(capsys, "--json", "parse", knot(BORROMEAN))
    assert code == 0
    assert run(capsys, "parse", knot(doc, "doc.json"))[1] == BORROMEAN.strip()


def test_catalog(capsys):
    code, out, _ = run(capsys, "catalog")
    assert code == 0 and "borromean" in out.split()
    assert run(capsys, "catalog", "borromean")[1] == "borromean: n=2 B=4 rho=(1 2 -) inv=(1 2)"


def test_exit_codes(capsys, knot):
    assert run(capsys, "frobnicate")[0] == 1
    assert run(capsys, "h1")[0] == 1
    assert run(capsys, "h1", "/nonexistent/file.knot")[0] == 1
    code, _, err = run(capsys, "parse", knot("torus(2,)"))
    assert code == 2 and "1:9" in err
    assert run(capsys, "h1", knot("torus(2,4)"))[0] == 2
    assert run(capsys, "catalog", "nothing")[0] == 2
    flip = knot("splice(borromean; sum(trefoil, trefoil), sum(trefoil, trefoil))")
    assert run(capsys, "pi1", "--presentation", flip)[0] == 3


def test_json_is_byte_stable(capsys, knot):
    f = knot("splice(sakuma(3); trefoil, cable(2,5; fig8), trefoil)")
    for cmd in ("parse", "type", "pi1", "h1", "gramain", "af", "dim", "invertible"):
        first = run(capsys, "--json", cmd, f)
        second = run(capsys, "--json", cmd, f)
        assert first == second
        assert first[0] == 0
