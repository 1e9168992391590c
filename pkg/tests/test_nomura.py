import pytest
from hypothesis import given

from lambek_chase.core import (
    FiveColumnDiagram,
    TwoSquareDiagram,
    coker,
    identity,
    is_exact_morphism,
    is_iso,
    is_null,
    ker,
    subobject_equal,
    zero,
)
from lambek_chase.errors import HypothesisViolated
from lambek_chase.fgab import FGAB
from lambek_chase.nomura import (
    five_lemma,
    kernel_row_exactness,
    nomura_first,
    nomura_first_exactness,
    nomura_second,
    nomura_second_exactness,
    short_exact_corollary,
)
from lambek_chase.harness.generate import generate_diagram
from lambek_chase.harness.io import load_diagram

from conftest import GOLDEN, Z, Z0, cyc, generated, mat, times


def inv(X):
    return X.invariant


def d2(**swap):
    d = load_diagram(GOLDEN / "d2.yaml").diagram()
    if not swap:
        return d
    ms = {"f": d.f, "g": d.g, "fp": d.fp, "gp": d.gp, "a": d.a, "b": d.b, "c": d.c}
    ms.update(swap)
    return TwoSquareDiagram(**ms)


def first_seed(backend, constraints, pred, limit=400):
    for s in range(limit):
        d = generate_diagram(backend, "two-square", s, constraints)
        if pred(d):
            return d
    raise AssertionError("no generated diagram with the wanted property")


# -- first sequence ----------------------------------------------------------------

def test_d2_first_sequence():
    n = nomura_first(d2())
    nodes = {k: inv(X) for k, X in n.nodes().items()}
    assert nodes["H^"] == nodes["Ker(H->H')"] == (0, ())
    assert nodes["Img S"] == nodes["Ker T"] == (1, ())
    assert is_iso(n.Lambda) and n.is_null_sequence()
    rec = nomura_first_exactness(d2())
    assert rec.ok and all(c.holds for c in rec.clauses)


def test_identity_verticals_give_null_nodes():
    p = mat(Z, cyc(2), [[1]])
    d = TwoSquareDiagram(times(2), p, times(2), p, identity(Z), identity(Z), identity(cyc(2)))
    n = nomura_first(d)
    assert all(FGAB.is_null_object(X) for X in n.nodes().values())


def test_pointed_exact_b_nonexact_f():
    d = first_seed("pset", ("b-exact",), lambda d: not is_exact_morphism(d.f))
    n = nomura_first(d)
    assert n.is_null_sequence()
    rec = nomura_first_exactness(d)
    assert rec.flags["f exact"] is False
    skipped = [c.name for c in rec.clauses if c.holds is None]
    assert "exact at Ker(H->H')" in skipped
    assert [c.holds for c in rec.clauses if c.name == "null sequence"] == [True]


def test_non_exact_b_refused(golden):
    d = load_diagram(golden / "pset_b_not_exact.yaml").diagram()
    with pytest.raises(HypothesisViolated):
        nomura_first(d)


@given(generated("fgab", "two-square", ("b-exact",)))
def test_abelian_all_clauses_fire(d):
    rec = nomura_first_exactness(d)
    assert all(c.holds is True for c in rec.clauses)


@given(generated("pset", "two-square", ("b-exact",)))
def test_pointed_clauses_hold_when_applicable(d):
    rec = nomura_first_exactness(d)           # strict: raises on a failure
    assert rec.ok


# -- short exact corollary ------------------------------------------------------------

def test_short_exact_d2():
    rec = short_exact_corollary(d2())
    assert rec.flags["b kernel"] and rec.ok
    n = nomura_first(d2())
    assert FGAB.is_null_object(n.ker_h) and is_null(n.beta) and is_iso(n.Lambda)


def test_short_exact_accepts_a_mono_b():
    # x2 is injective, hence the kernel of Z -> Z/2
    d = d2(b=times(2), c=zero(Z, cyc(2)))
    rec = short_exact_corollary(d)
    assert rec.flags["b kernel"] and rec.ok


def test_short_exact_refuses_zero_b():
    d = d2(b=zero(Z, Z), c=zero(Z, cyc(2)))
    with pytest.raises(HypothesisViolated) as e:
        short_exact_corollary(d)
    assert "b kernel" in str(e.value) or "kernel" in str(e.value)


@given(generated("pset", "two-square", ("b-kernel", "rows-exact")))
def test_short_exact_pointed(d):
    assert short_exact_corollary(d).ok


# -- second sequence ----------------------------------------------------------------

def test_d2_second_sequence():
    n = nomura_second(d2())
    nodes = {k: inv(X) for k, X in n.nodes().items()}
    assert nodes["Ker S"] == (0, ())
    assert nodes["H(Ker a->Ker b->Ker c)"] == (0, ())
    assert n.is_null_sequence()
    assert nomura_second_exactness(d2()).ok


def test_identity_diagram_second_sequence():
    d = TwoSquareDiagram(*(identity(Z) if i in (4, 5, 6) else zero(Z, Z) for i in range(7)))
    n = nomura_second(d)
    assert n.is_null_sequence()
    assert all(FGAB.is_null_object(X) for k, X in n.nodes().items())


@given(generated("fgab", "two-square", ("rows-exact", "b-exact")))
def test_abelian_second_sequence(d):
    n = nomura_second(d)
    assert n.is_null_sequence() and is_iso(n.first.Lambda)
    assert subobject_equal(n.p1, ker(n.kappa))
    rec = nomura_second_exactness(d)
    assert all(c.holds is True for c in rec.clauses)


def test_pointed_nonexact_g_skips_clause():
    d = first_seed("pset", ("b-exact", "f-exact", "g'-exact"),
                   lambda d: not is_exact_morphism(d.g), limit=3000)
    rec = nomura_second_exactness(d)
    assert rec.flags["g exact"] is False
    skipped = [c.name for c in rec.clauses if c.holds is None]
    assert "exact at Img S" in skipped
    assert [c.holds for c in rec.clauses if c.name == "null sequence"] == [True]


@given(generated("pset", "two-square"))
def test_pointed_composite_flags_always_exact(d):
    # a cokernel only collapses its image to the basepoint, so after an
    # inclusion it stays injective off the kernel fiber
    assert is_exact_morphism(coker(d.f) @ ker(d.b))
    assert is_exact_morphism(coker(d.b) @ ker(d.gp))


@given(generated("pset", "two-square", ("b-exact", "f-exact", "g'-exact")))
def test_pointed_second_sequence(d):
    assert nomura_second_exactness(d).ok


# -- kernel row and five lemma ----------------------------------------------------------

def test_kernel_row_abelian_example():
    # f' injective, h: H -> H' injective (H = 0)
    rec = kernel_row_exactness(d2())
    assert rec.flags["f' N-mono"] and rec.flags["h N-mono"]
    assert [c.holds for c in rec.clauses if c.name == "kernel row exact"] == [True]


def test_kernel_row_no_claim_when_h_not_mono():
    # rows Z -0-> Z -0-> Z with zero middle vertical: h = 0 on H = Z
    z = zero(Z, Z)
    d = TwoSquareDiagram(z, z, z, z, identity(Z), z, identity(Z))
    rec = kernel_row_exactness(d)
    assert rec.flags["h N-mono"] is False
    assert [c.holds for c in rec.clauses if c.name == "kernel row exact"] == [None]


@given(generated("pset", "two-square"))
def test_kernel_row_pointed(d):
    assert kernel_row_exactness(d).ok


def _five(c):
    """Rows 0 -> 0 -> Z -id-> Z -> 0 over 0 -> Z -id-> Z -> 0 -> 0, middle vertical c."""
    z = zero
    top = (z(Z0, Z0), z(Z0, Z), identity(Z), z(Z, Z0))
    bot = (z(Z0, Z), identity(Z), z(Z, Z0), z(Z0, Z0))
    verts = (z(Z0, Z0), z(Z0, Z), c, z(Z, Z0), z(Z0, Z0))
    return FiveColumnDiagram(*top, *bot, *verts)


def test_five_lemma_c_times_two():
    res = five_lemma(_five(times(2)))
    assert inv(res.h_ker) == inv(res.h_coker) == (1, ())
    assert res.verdict is True and is_iso(res.iso)


def test_five_lemma_identity_verticals():
    p = mat(Z, cyc(2), [[1]])
    z0 = zero(Z0, Z)
    top = (z0, times(2), p, zero(cyc(2), Z0))
    ids = [identity(X) for X in (Z0, Z, Z, cyc(2), Z0)]
    res = five_lemma(FiveColumnDiagram(*top, *top, *ids))
    assert FGAB.is_null_object(res.h_ker) and FGAB.is_null_object(res.h_coker)
    assert res.verdict is True


def test_five_lemma_refuses_non_null_rows():
    i = identity(Z)
    with pytest.raises(HypothesisViolated):
        five_lemma(FiveColumnDiagram(*(i,) * 13))


@given(generated("fgab", "five-column", ("rows-exact",)))
def test_five_lemma_abelian(d5):
    res = five_lemma(d5, require=False)
    assert res.verdict in (True, None)
    if res.verdict:
        assert inv(res.h_ker) == inv(res.h_coker)


@given(generated("pset", "five-column", ("rows-exact",)))
def test_five_lemma_pointed(d5):
    res = five_lemma(d5, require=False)
    assert res.verdict in (True, None)
