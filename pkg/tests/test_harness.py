import json

import pytest
import yaml
from hypothesis import given, settings
from hypothesis import strategies as st

from lambek_chase.core import (
    coker,
    identity,
    is_exact_morphism,
    is_iso,
    is_null,
    ker,
    pullback,
    pullback_factor,
    pushout,
    pushout_factor,
)
from lambek_chase.errors import LambekChaseError, ParseError, ValidationError
from lambek_chase.fgab import FGAB
from lambek_chase.homology import exact_at
from lambek_chase.pset import PSET
from lambek_chase.harness.campaign import CampaignSpec, run_campaign
from lambek_chase.harness.cli import main
from lambek_chase.harness.generate import CONSTRAINTS, generate_diagram
from lambek_chase.harness.io import DiagramFile, dumps, load_diagram, loads
from lambek_chase.harness.oracles import corrupt, oracle_universal_property

from conftest import GOLDEN, ps_composable, seeds

GOLDEN_REPORTS = [
    (["lambek", "--input", "d2.yaml", "--format", "text"], "d2_lambek.txt"),
    (["lambek", "--input", "d2.yaml", "--format", "structured"], "d2_lambek.json"),
    (["nomura1", "--input", "d2.yaml", "--format", "structured"], "d2_nomura1.json"),
    (["campaign", "--suite", "nomura1", "--backend", "fgab", "--trials", "25", "--seed", "11",
      "--format", "structured"], "campaign_nomura1_fgab.json"),
    (["campaign", "--suite", "lambek-iso", "--backend", "pset", "--trials", "25", "--seed", "5",
      "--format", "structured"], "campaign_lambek_pset.json"),
]


def d2_raw():
    return yaml.safe_load((GOLDEN / "d2.yaml").read_text())


# -- io -----------------------------------------------------------------------------

@pytest.mark.parametrize("name", ["d2.yaml", "pset_b_not_exact.yaml", "fgab_pair_not_exact.yaml"])
def test_round_trip(name):
    df = load_diagram(GOLDEN / name)
    again = loads(dumps(df))
    assert again.to_dict() == df.to_dict()
    assert dumps(again) == dumps(df)


@given(seeds, st.sampled_from(["fgab", "pset"]), st.sampled_from(["pair", "square", "two-square"]))
@settings(max_examples=30)
def test_generated_round_trip(seed, backend, shape):
    d = generate_diagram(backend, shape, seed)
    df = DiagramFile.from_diagram(backend, shape, d)
    assert loads(dumps(df)).diagram() == df.diagram()


def test_prime_spelling_binds_the_same_role():
    raw = d2_raw()
    raw["bindings"]["g′"] = raw["bindings"].pop("g'")
    assert loads(yaml.safe_dump(raw)).diagram() == load_diagram(GOLDEN / "d2.yaml").diagram()


def test_non_commuting_square_is_rejected():
    raw = d2_raw()
    raw["morphisms"][5]["matrix"] = [[2]]          # b = x2, g' b = 0 but c g != 0
    with pytest.raises(ValidationError, match="commute"):
        loads(yaml.safe_dump(raw))


def test_non_null_row_is_rejected():
    raw = d2_raw()
    raw["morphisms"][2]["matrix"] = [[1]]          # f' = id, g' f' = projection
    with pytest.raises(ValidationError):
        loads(yaml.safe_dump(raw))


def test_empty_object_list():
    raw = d2_raw()
    raw["objects"] = []
    with pytest.raises(ValidationError, match="empty"):
        loads(yaml.safe_dump(raw))


@pytest.mark.parametrize("text", ["backend: fgab\nshape: [pair", "{{", "objects: :"])
def test_malformed_yaml(text):
    with pytest.raises(ParseError):
        loads(text)


def test_misshapen_morphism():
    raw = d2_raw()
    raw["morphisms"][1]["matrix"] = [[1, 0]]
    with pytest.raises(ValidationError):
        loads(yaml.safe_dump(raw))


def test_pset_table_must_fix_basepoint():
    df = load_diagram(GOLDEN / "pset_b_not_exact.yaml").to_dict()
    df["morphisms"][5]["table"] = [1, 1, 1]
    with pytest.raises(ValidationError):
        loads(yaml.safe_dump(df))


# -- generator ------------------------------------------------------------------------

@pytest.mark.parametrize("backend", ["fgab", "pset"])
def test_generator_is_deterministic(backend):
    for s in range(10):
        a = generate_diagram(backend, "two-square", s, ("b-exact",))
        b = generate_diagram(backend, "two-square", s, ("b-exact",))
        assert a == b


@given(seeds, st.sampled_from(["fgab", "pset"]),
       st.lists(st.sampled_from(sorted(CONSTRAINTS - {"b-kernel", "verticals-identity"})), max_size=3))
@settings(max_examples=40)
def test_generator_meets_constraints(seed, backend, cs):
    d = generate_diagram(backend, "two-square", seed, cs)
    if "rows-exact" in cs:
        assert exact_at(d.f, d.g) and exact_at(d.fp, d.gp)
    for c, m in (("b-exact", d.b), ("f-exact", d.f), ("g'-exact", d.gp)):
        if c in cs:
            assert is_exact_morphism(m)
    assert is_null(d.g @ d.f) and is_null(d.gp @ d.fp)


def test_generator_rejects_unknown_constraint():
    with pytest.raises(ValueError):
        generate_diagram("fgab", "two-square", 0, ("c-exact",))


# -- oracles ------------------------------------------------------------------------

@given(seeds)
def test_oracle_catches_a_wrong_kernel_fgab(seed):
    f = generate_diagram("fgab", "pair", seed)[1]
    k = ker(f)
    assert oracle_universal_property("kernel", (f, k))
    for i in range(4):
        bad = corrupt(k, i)
        if bad is not None and not is_null(f @ bad):
            assert not oracle_universal_property("kernel", (f, bad))


@given(seeds)
def test_oracle_catches_a_wrong_cokernel_fgab(seed):
    f = generate_diagram("fgab", "pair", seed)[0]
    q = coker(f)
    assert oracle_universal_property("cokernel", (f, q))
    for i in range(4):
        bad = corrupt(q, i)
        if bad is not None and not is_null(bad @ f):
            assert not oracle_universal_property("cokernel", (f, bad))


def test_oracle_rejects_a_proper_subkernel():
    f = FGAB.zero(FGAB.free(1), FGAB.free(1))
    half = FGAB.matrix(FGAB.free(1), FGAB.free(1), [[2]])
    assert is_null(f @ half)
    assert not oracle_universal_property("kernel", (f, half))


def test_oracle_rejects_non_universal_pset_cokernel():
    f = PSET.map(2, 3, [0, 1])
    q = PSET.map(3, 3, [0, 0, 2])      # kills a but is not surjective
    assert not oracle_universal_property("cokernel", (f, q))


@given(ps_composable())
def test_oracle_rejects_wrong_pset_cones(fg):
    f, g = fg
    gf = g @ f
    _, p1, p2 = pullback(g, gf)
    _, i1, i2 = pushout(f, gf)
    # the cone (f, id) is itself a pullback exactly when its comparison map is an iso
    assert oracle_universal_property("pullback", (g, gf, f, identity(f.dom))) == is_iso(
        pullback_factor(p1, p2, f, identity(f.dom)))
    assert oracle_universal_property("pushout", (f, gf, g, identity(g.cod))) == is_iso(
        pushout_factor(i1, i2, g, identity(g.cod)))


def test_oracle_rejects_a_doubled_pullback():
    X = PSET.pointed(2)
    z = PSET.zero(X, PSET.pointed(1))
    # pullback of two maps to a point is the product {*, 1} x {*, 1}, not X itself
    assert not oracle_universal_property("pullback", (z, z, identity(X), identity(X)))


# -- campaigns ----------------------------------------------------------------------

def test_campaign_is_reproducible():
    spec = CampaignSpec("nomura2", "fgab", trials=15, seed=4)
    assert run_campaign(spec).to_json() == run_campaign(spec).to_json()


def test_violate_skips_every_pset_trial():
    rep = run_campaign(CampaignSpec("nomura1", "pset", trials=20, seed=2, violate=("b-exact",)))
    c = rep.counts
    assert c["skip"] == 20 and c["fail"] == 0 and rep.ok


def test_violate_impossible_on_fgab():
    with pytest.raises(LambekChaseError):
        run_campaign(CampaignSpec("nomura1", "fgab", trials=5, seed=2, violate=("b-exact",)))


def test_exhaustive_small_counts():
    rep = run_campaign(CampaignSpec("nomura1", "pset", exhaustive=True, max_size=2))
    assert rep.ok and rep.counts["fail"] == 0
    assert sum(rep.counts[k] for k in ("pass", "skip")) == 282


# -- command line ---------------------------------------------------------------------

def run_cli(args, capsys):
    code = main(args)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.mark.parametrize("cmd", ["invariants", "lambek", "nomura1", "nomura2"])
def test_cli_d2_commands_pass(cmd, capsys):
    code, out, _ = run_cli([cmd, "--input", str(GOLDEN / "d2.yaml")], capsys)
    assert code == 0 and out.rstrip().endswith("OK")


def test_cli_refuses_non_exact_b(capsys):
    code, out, _ = run_cli(["nomura1", "--input", str(GOLDEN / "pset_b_not_exact.yaml")], capsys)
    assert code == 0
    assert "nothing claimed" in out


def test_cli_usage_errors(tmp_path, capsys):
    assert run_cli(["lambek"], capsys)[0] == 2
    assert run_cli(["no-such-command"], capsys)[0] == 2
    assert run_cli(["lambek", "--input", str(tmp_path / "missing.yaml")], capsys)[0] == 2
    bad = tmp_path / "bad.yaml"
    bad.write_text("{{")
    assert run_cli(["lambek", "--input", str(bad)], capsys)[0] == 2
    raw = d2_raw()
    raw["objects"] = []
    empty = tmp_path / "empty.yaml"
    empty.write_text(yaml.safe_dump(raw))
    code, _, err = run_cli(["lambek", "--input", str(empty)], capsys)
    assert code == 2 and "empty" in err


def test_cli_wrong_shape(capsys):
    code, _, _ = run_cli(["lambek", "--input", str(GOLDEN / "fgab_pair_not_exact.yaml")], capsys)
    assert code == 2
    code, _, err = run_cli(["homology", "--input", str(GOLDEN / "d2.yaml")], capsys)
    assert code == 2 and "pair" in err


def test_cli_generate_then_check(tmp_path, capsys):
    out = tmp_path / "g.yaml"
    code, _, _ = run_cli(["generate", "--backend", "pset", "--shape", "two-square", "--seed", "3",
                          "--constraints", "rows-exact,b-exact", "--output", str(out)], capsys)
    assert code == 0
    assert run_cli(["lambek", "--input", str(out)], capsys)[0] == 0


def test_cli_structured_is_json(capsys):
    code, out, _ = run_cli(["homology", "--input", str(GOLDEN / "fgab_pair_not_exact.yaml"),
                            "--format", "structured"], capsys)
    data = json.loads(out)
    assert code == 0 and data["summary"]["ok"] is True
    assert data["records"][0]["flags"]["exact at B"] is False


def test_cli_violate_exits_zero(capsys):
    code, _, _ = run_cli(["campaign", "--suite", "nomura1", "--backend", "pset", "--trials", "10",
                          "--violate", "b-exact"], capsys)
    assert code == 0


@pytest.mark.parametrize("args,name", GOLDEN_REPORTS)
def test_golden_reports_byte_identical(args, name, monkeypatch, capsys):
    monkeypatch.chdir(GOLDEN)
    code, out, _ = run_cli(args, capsys)
    assert code == 0
    assert out == (GOLDEN / name).read_text()
