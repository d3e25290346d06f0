"""Document round trips, broken fixtures, and the command-line surface."""

import json
import os

import pytest
from click.testing import CliRunner

from hgx import io
from hgx.cleft import GaugeElement, check_measuring_cocycle
from hgx.cli import main
from hgx.double import check_skew_pairing
from hgx.twist import check_cocycle


def test_serialize_parse_identity(docs):
    for name, doc in docs.items():
        text = io.serialize(doc)
        again = io.parse(text)
        assert again.data == doc.data, name
        assert io.serialize(again) == text, name


def test_bialgebroid_encode_decode_roundtrip(docs):
    for name in ("z2", "z2z2", "env_qxq", "env_ut2"):
        lbg = io.decode_bialgebroid(docs[name])
        again = io.encode_bialgebroid(lbg)
        assert again.data == docs[name].data, name


def test_crossed_encode_decode_roundtrip(docs):
    doc = docs["crossed_sign_z2_gauged"]
    lbg, NA, sigma, act, gauge = io.decode_crossed(doc)
    again = io.encode_crossed(lbg, NA, sigma, act, gauge=gauge,
                              label=doc.label)
    assert again.data == doc.data


def _verify_document(doc):
    """Run the deepest verification the document kind supports."""
    kind = doc.kind
    if kind == "bialgebroid":
        io.decode_bialgebroid(doc)
        return
    from hgx.models import build_group_algebra, cyclic_group
    z2 = build_group_algebra(cyclic_group(2), doc.field(), label="kZ2")
    if kind == "cocycle":
        check_cocycle(z2, io.decode_form(doc, z2))
    elif kind == "pairing":
        check_skew_pairing(z2, z2, io.decode_pairing(doc, z2, z2))
    elif kind == "crossed":
        lbg, NA, sigma, act, gauge = io.decode_crossed(doc)
        meas, coc = check_measuring_cocycle(lbg, NA, act, sigma)
        if gauge is not None:
            GaugeElement(lbg, NA, gauge)
    else:
        raise AssertionError("unhandled kind %r" % kind)


@pytest.mark.parametrize("name,expected", [
    (n, cls) for n, _t, cls in io.broken_documents()])
def test_broken_fixture_fails_with_designated_error(name, expected):
    text = dict((n, t) for n, t, _c in io.broken_documents())[name]
    with pytest.raises(Exception) as ei:
        doc = io.parse(text)
        _verify_document(doc)
    err = ei.value
    assert type(err).__name__ == expected, (name, err)
    # every failure carries a location or a witness
    assert getattr(err, "witness", None) is not None or \
        getattr(err, "path", None) is not None or str(err)


def _path(corpus_dir, name):
    return str(corpus_dir / (name + ".json"))


def test_cli_check_passes_and_is_deterministic(corpus_dir):
    runner = CliRunner()
    args = ["check", _path(corpus_dir, "z2"), "--suite", "all",
            "--format", "lines"]
    r1 = runner.invoke(main, args)
    r2 = runner.invoke(main, args)
    assert r1.exit_code == 0, r1.output
    assert r1.output == r2.output
    for line in r1.output.splitlines():
        assert line.startswith("CHECK ")
        assert line.split()[-1] in ("PASS", "FAIL") or "witness=" in line


def test_cli_exit_code_validation_failure(corpus_dir):
    runner = CliRunner()
    r = runner.invoke(main, ["check", _path(corpus_dir, "broken_coproduct")])
    assert r.exit_code == 1
    r = runner.invoke(main, ["check", _path(corpus_dir, "broken_syntax")])
    assert r.exit_code == 1


def test_cli_exit_code_usage(corpus_dir):
    runner = CliRunner()
    r = runner.invoke(main, ["check", _path(corpus_dir, "z2"),
                             "--suite", "bogus"])
    assert r.exit_code == 2
    r = runner.invoke(main, ["check", _path(corpus_dir, "cocycle_minus")])
    assert r.exit_code == 2
    r = runner.invoke(main, ["nonsense"])
    assert r.exit_code == 2


def test_cli_twist_roundtrip(corpus_dir, tmp_path):
    runner = CliRunner()
    out = str(tmp_path / "tw.json")
    r = runner.invoke(main, ["twist", _path(corpus_dir, "z2z2"),
                             "--cocycle", _path(corpus_dir, "cocycle_minus"),
                             "-o", out])
    assert r.exit_code == 0, r.output
    r = runner.invoke(main, ["check", out, "--suite", "hopf"])
    assert r.exit_code == 0, r.output


def test_cli_double(corpus_dir, tmp_path):
    runner = CliRunner()
    out = str(tmp_path / "d.json")
    r = runner.invoke(main, [
        "double", _path(corpus_dir, "z2"),
        "--tau", _path(corpus_dir, "pairing_sign_z2"),
        "--kappa", _path(corpus_dir, "pairing_trivial_z2"), "-o", out])
    assert r.exit_code == 0, r.output
    r = runner.invoke(main, ["check", out, "--suite", "hopf"])
    assert r.exit_code == 0, r.output


def test_cli_crossed_and_gauge(corpus_dir, tmp_path):
    runner = CliRunner()
    out = str(tmp_path / "c.json")
    r = runner.invoke(main, [
        "crossed", _path(corpus_dir, "z2"),
        "--sigma", _path(corpus_dir, "sigma_sign_z2"),
        "--measuring", _path(corpus_dir, "measuring_trivial_z2"),
        "-o", out])
    assert r.exit_code == 0, r.output
    assert json.load(open(out))["kind"] == "crossed"
    r = runner.invoke(main, [
        "gauge", _path(corpus_dir, "crossed_sign_z2"),
        _path(corpus_dir, "crossed_sign_z2_gauged"), "--extract"])
    assert r.exit_code == 0, r.output
    assert "gauge equivalent: yes" in r.output


def test_cli_field_override(corpus_dir, monkeypatch):
    runner = CliRunner()
    monkeypatch.setenv("HGX_FIELD", "7")
    r = runner.invoke(main, ["check", _path(corpus_dir, "z2"),
                             "--suite", "hopf"])
    assert r.exit_code == 0, r.output


def test_write_corpus_lists_all_files(tmp_path):
    names = io.write_corpus(str(tmp_path / "c"))
    assert len(names) == len(list((tmp_path / "c").iterdir()))
    assert "z2" in names and "broken_syntax" in names
