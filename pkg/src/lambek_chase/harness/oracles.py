"""Brute-force checks of universal properties, independent of the backend
constructions they check.

pset: enumerate every test object up to a size bound and every test
morphism, and count factorizations (existence means at least one,
uniqueness at most one).

fgab: compare lattices.  A leg k: K -> X is a kernel of f when fk = 0, k is
injective (so two factorizations differ by a morphism into a trivial
kernel, hence agree) and k(Z^K) + rel X equals the preimage of rel Y under
f.  The other three properties are handled alike.
"""

from __future__ import annotations

import itertools
from collections import Counter

from ..core import Mor
from ..fgab import FGAB, _columns, _preimage, _rels, _span
from ..pset import enum_cap
from ..errors import EnumerationTooLarge
from .enumerate import all_tables, compose_tables

KINDS = ("kernel", "cokernel", "pullback", "pushout")
DEFAULT_TEST_SIZE = 3


def oracle_universal_property(kind: str, data: tuple, test_size: int = DEFAULT_TEST_SIZE) -> bool:
    """kernel: (f, k); cokernel: (f, q); pullback: (f, g, p1, p2); pushout: (f, g, i1, i2)."""
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    b = data[0].backend
    if b is FGAB:
        return _FGAB_ORACLES[kind](*data)
    return _PSET_ORACLES[kind](*data, test_size=test_size)


# --- pset ------------------------------------------------------------------

def _maps(n, m):
    if m ** max(n - 1, 0) > enum_cap():
        raise EnumerationTooLarge(f"{m}^{n - 1} maps exceed the enumeration cap")
    return all_tables(n, m)


def _null(t):
    return not any(t)


def _pset_kernel(f: Mor, k: Mor, test_size: int) -> bool:
    F, K = f.payload, k.payload
    if k.cod != f.dom or not _null(compose_tables(F, K)):
        return False
    X, Kn = f.dom.payload, k.dom.payload
    for t in range(1, test_size + 1):
        us = _maps(t, Kn)
        for x in _maps(t, X):
            if not _null(compose_tables(F, x)):
                continue
            if sum(compose_tables(K, u) == x for u in us) != 1:
                return False
    return True


def _pset_cokernel(f: Mor, q: Mor, test_size: int) -> bool:
    F, Q = f.payload, q.payload
    if q.dom != f.cod or not _null(compose_tables(Q, F)):
        return False
    Y, Qn = f.cod.payload, q.cod.payload
    for t in range(1, test_size + 1):
        us = _maps(Qn, t)
        for y in _maps(Y, t):
            if not _null(compose_tables(y, F)):
                continue
            if sum(compose_tables(u, Q) == y for u in us) != 1:
                return False
    return True


def _unique_factorizations(keys, compatible: int) -> bool:
    # every compatible cone is hit (existence) and hit once (uniqueness)
    seen = Counter(keys)
    return len(seen) == compatible and all(c == 1 for c in seen.values())


def _pset_pullback(f: Mor, g: Mor, p1: Mor, p2: Mor, test_size: int) -> bool:
    if compose_tables(f.payload, p1.payload) != compose_tables(g.payload, p2.payload):
        return False
    P = p1.dom.payload
    for t in range(1, test_size + 1):
        over = Counter(compose_tables(g.payload, x2) for x2 in _maps(t, g.dom.payload))
        compatible = sum(over[compose_tables(f.payload, x1)] for x1 in _maps(t, f.dom.payload))
        keys = ((compose_tables(p1.payload, u), compose_tables(p2.payload, u)) for u in _maps(t, P))
        if not _unique_factorizations(keys, compatible):
            return False
    return True


def _pset_pushout(f: Mor, g: Mor, i1: Mor, i2: Mor, test_size: int) -> bool:
    if compose_tables(i1.payload, f.payload) != compose_tables(i2.payload, g.payload):
        return False
    N = i1.cod.payload
    for t in range(1, test_size + 1):
        under = Counter(compose_tables(y2, g.payload) for y2 in _maps(g.cod.payload, t))
        compatible = sum(under[compose_tables(y1, f.payload)] for y1 in _maps(f.cod.payload, t))
        keys = ((compose_tables(u, i1.payload), compose_tables(u, i2.payload)) for u in _maps(N, t))
        if not _unique_factorizations(keys, compatible):
            return False
    return True


_PSET_ORACLES = {"kernel": _pset_kernel, "cokernel": _pset_cokernel,
                 "pullback": _pset_pullback, "pushout": _pset_pushout}


# --- fgab ------------------------------------------------------------------

def _same_lattice(L1, L2, dim) -> bool:
    return _span(L1, dim) == _span(L2, dim)


def _mat(A, m, n):
    """Bare matrix as a morphism of free groups, for the lattice helpers."""
    return FGAB.matrix(FGAB.free(n), FGAB.free(m), A)


def _stack(f: Mor, g: Mor, sign: int = -1):
    """[f | sign*g] as a matrix from dom f + dom g to the common codomain."""
    m = f.cod.payload.n
    return [list(f.payload[i]) + [sign * x for x in g.payload[i]] for i in range(m)]


def _all_in(vectors, lattice, dim) -> bool:
    L = _span(lattice, dim)
    return all(_span(L + [list(v)], dim) == L for v in vectors)


def _injective(k: Mor) -> bool:
    """k^{-1}(rel cod) == rel dom."""
    n = k.dom.payload.n
    return _same_lattice(_preimage(k, _rels(k.cod)), _rels(k.dom), n)


def _surjective(q: Mor) -> bool:
    m = q.cod.payload.n
    return _same_lattice(_columns(q) + _rels(q.cod), [[int(i == j) for i in range(m)] for j in range(m)], m)


def _fgab_kernel(f: Mor, k: Mor) -> bool:
    X = f.dom
    if k.cod != X:
        return False
    n = X.payload.n
    fk = [[sum(f.payload[i][t] * k.payload[t][j] for t in range(n)) for j in range(k.dom.payload.n)]
          for i in range(f.cod.payload.n)]
    if not _all_in([[r[j] for r in fk] for j in range(k.dom.payload.n)], _rels(f.cod), f.cod.payload.n):
        return False
    return _injective(k) and _same_lattice(_columns(k) + _rels(X), _preimage(f, _rels(f.cod)), n)


def _fgab_cokernel(f: Mor, q: Mor) -> bool:
    Y = f.cod
    if q.dom != Y:
        return False
    m = Y.payload.n
    qf = [[sum(q.payload[i][t] * f.payload[t][j] for t in range(m)) for j in range(f.dom.payload.n)]
          for i in range(q.cod.payload.n)]
    if not _all_in([[r[j] for r in qf] for j in range(f.dom.payload.n)], _rels(q.cod), q.cod.payload.n):
        return False
    return _surjective(q) and _same_lattice(_preimage(q, _rels(q.cod)), _columns(f) + _rels(Y), m)


def _fgab_pullback(f: Mor, g: Mor, p1: Mor, p2: Mor) -> bool:
    if f.cod != g.cod or p1.dom != p2.dom:
        return False
    n1, n2 = f.dom.payload.n, g.dom.payload.n
    Z = f.cod
    zd = Z.payload.n
    # the pair (p1, p2): P -> X + Y
    P = p1.dom
    pair = [list(r) for r in p1.payload] + [list(r) for r in p2.payload]
    S, *_ = FGAB.direct_sum(f.dom, g.dom)
    try:
        pm = FGAB.matrix(P, S, pair)
    except Exception:
        return False
    D = _stack(f, g)
    diff = FGAB.matrix(S, Z, D)
    comp = [[sum(D[i][t] * pair[t][j] for t in range(n1 + n2)) for j in range(P.payload.n)] for i in range(zd)]
    if not _all_in([[r[j] for r in comp] for j in range(P.payload.n)], _rels(Z), zd):
        return False
    return _injective(pm) and _same_lattice(_columns(pm) + _rels(S), _preimage(diff, _rels(Z)), n1 + n2)


def _fgab_pushout(f: Mor, g: Mor, i1: Mor, i2: Mor) -> bool:
    if f.dom != g.dom or i1.cod != i2.cod:
        return False
    N = i1.cod
    S, *_ = FGAB.direct_sum(f.cod, g.cod)
    copair = [list(i1.payload[i]) + list(i2.payload[i]) for i in range(N.payload.n)]
    try:
        cm = FGAB.matrix(S, N, copair)
    except Exception:
        return False
    # relations imposed: (f a, -g a) for a in the common domain
    a = f.dom.payload.n
    diag = [[f.payload[i][j] for i in range(f.cod.payload.n)] + [-g.payload[i][j] for i in range(g.cod.payload.n)]
            for j in range(a)]
    sd = S.payload.n
    img = [[sum(copair[i][t] * v[t] for t in range(sd)) for i in range(N.payload.n)] for v in diag]
    if not _all_in(img, _rels(N), N.payload.n):
        return False
    return _surjective(cm) and _same_lattice(_preimage(cm, _rels(N)), diag + _rels(S), sd)


_FGAB_ORACLES = {"kernel": _fgab_kernel, "cokernel": _fgab_cokernel,
                 "pullback": _fgab_pullback, "pushout": _fgab_pushout}


# --- composition closure ---------------------------------------------------

def is_kernel_leg_oracle(m: Mor) -> bool:
    """m is a kernel of something iff it is a kernel of its own cokernel;
    decided here without the backend: injective maps in both backends."""
    if m.backend is FGAB:
        return _injective(m)
    return len(set(m.payload)) == len(m.payload)


def is_cokernel_leg_oracle(q: Mor) -> bool:
    """Surjective maps are cokernels in fgab.  In pset a cokernel is onto
    and injective away from the basepoint fiber."""
    if q.backend is FGAB:
        return _surjective(q)
    t = q.payload
    if set(t) != set(range(q.cod.payload)):
        return False
    vals = [y for y in t if y]
    return len(vals) == len(set(vals))


def corrupt(m: Mor, index: int = 0, delta: int = 1) -> Mor | None:
    """A single-entry mutation of m, or None if the result is not a morphism."""
    from ..errors import LambekChaseError
    if m.backend is FGAB:
        rows = [list(r) for r in m.payload]
        cells = [(i, j) for i in range(len(rows)) for j in range(len(rows[i]))]
        if not cells:
            return None
        i, j = cells[index % len(cells)]
        rows[i][j] += delta
        try:
            return FGAB.matrix(m.dom, m.cod, rows)
        except LambekChaseError:
            return None
    t = list(m.payload)
    if len(t) < 2 or m.cod.payload < 2:
        return None
    pos = 1 + index % (len(t) - 1)
    t[pos] = (t[pos] + delta) % m.cod.payload
    try:
        return m.backend.map(m.dom, m.cod, t)
    except LambekChaseError:
        return None


def pset_objects(max_size: int):
    """All pointed-set sizes 1..max_size, in order."""
    return list(range(1, max_size + 1))


def pset_morphisms(max_size: int):
    """All pset morphisms between objects of size <= max_size."""
    from ..pset import PSET
    for n, m in itertools.product(range(1, max_size + 1), repeat=2):
        for t in all_tables(n, m):
            yield PSET.map(n, m, t)
