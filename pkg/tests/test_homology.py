import pytest
from hypothesis import given

from lambek_chase.core import TwoSquareDiagram, identity, is_iso, is_null, zero
from lambek_chase.errors import NotNullComposite
from lambek_chase.fgab import FGAB, homology_formula
from lambek_chase.homology import (
    composition_sequence,
    exact_at,
    exact_at_start,
    homology,
    homology_pair,
    induced_homology_morphism,
)
from lambek_chase.pset import PSET

from conftest import Z, Z0, cyc, fg_composable, generated, mat, ps_composable, times


def inv(X):
    return X.invariant


def proj(n):
    return mat(Z, cyc(n), [[1]])


def test_homology_examples_abelian():
    d = homology_pair(times(2), proj(2))
    assert FGAB.is_null_object(d.h_minus) and FGAB.is_null_object(d.h_plus)
    d = homology_pair(zero(Z, Z), zero(Z, Z))
    assert inv(d.h_minus) == inv(d.h_plus) == (1, ())
    assert is_iso(d.m)
    assert inv(homology(times(2), zero(Z, Z0))) == (0, (2,))


def test_homology_example_pointed():
    f = PSET.map(2, 3, [0, 1])
    g = PSET.zero(PSET.pointed(3), PSET.pointed(2))
    d = homology_pair(f, g)
    assert d.h_minus.payload == d.h_plus.payload == 2
    assert homology(f, g).payload == 2


def test_homology_needs_a_null_pair():
    with pytest.raises(NotNullComposite):
        homology_pair(identity(Z), identity(Z))


def test_exact_at_examples():
    assert exact_at(times(2), proj(2))
    assert not exact_at(times(2), zero(Z, Z0))
    # null then N-mono: exact iff ker g is null
    assert exact_at_start(times(3))
    assert not exact_at_start(zero(Z, Z))


def test_composition_sequence_example():
    cs = composition_sequence(times(2), proj(4))
    assert [inv(X) for X in cs.objects] == [(0, ()), (1, ()), (1, ()), (0, (2,)), (0, (2,)), (0, ())]
    assert cs.null and all(cs.exact.values())
    cs = composition_sequence(identity(Z), times(3))
    assert is_iso(cs.phi)


def test_composition_sequence_pointed_nonexact_f():
    # f collides two points off the kernel; the Ker g clause is then unguarded
    f = PSET.map(3, 2, [0, 1, 1])
    g = PSET.map(2, 2, [0, 1])
    cs = composition_sequence(f, g)
    assert not cs.f_exact
    assert cs.claims()["exact at Ker g"] is None
    assert cs.null


def test_induced_homology_morphism_examples():
    p = proj(2)
    d = TwoSquareDiagram(times(2), p, times(2), p, identity(Z), identity(Z), identity(cyc(2)))
    h = induced_homology_morphism(d)
    assert FGAB.is_null_object(h.dom)
    z = zero(Z, Z)
    d = TwoSquareDiagram(z, z, z, z, identity(Z), identity(Z), identity(Z))
    assert induced_homology_morphism(d) == identity(homology(z, z))
    # top row exact, bottom arbitrary: h is null
    d = TwoSquareDiagram(times(2), p, z, zero(Z, cyc(2)), times(2), z, zero(cyc(2), cyc(2)))
    assert is_null(induced_homology_morphism(d))


@given(generated("fgab", "pair"))
def test_homology_matches_lattice_formula(pair):
    f, g = pair
    d = homology_pair(f, g)
    assert is_iso(d.m)
    assert inv(d.h_minus) == inv(d.h_plus) == homology_formula(f, g)


@given(fg_composable())
def test_composition_lemma_abelian(fg):
    f, g = fg
    cs = composition_sequence(f, g)
    assert cs.null and all(cs.exact.values())
    assert all(v is not False for v in cs.claims().values())


@given(ps_composable())
def test_composition_lemma_pointed(fg):
    f, g = fg
    cs = composition_sequence(f, g)
    assert all(v is not False for v in cs.claims().values())


@given(generated("pset", "pair"))
def test_m_is_iso_pointed(pair):
    d = homology_pair(*pair)
    assert is_iso(d.m)
    assert d.h_minus.payload == d.h_plus.payload
