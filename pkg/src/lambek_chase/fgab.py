"""Finitely generated abelian groups as integer presentations.

An object is ``Z^n / L`` where ``L`` is the lattice spanned by the relation
columns.  A morphism ``Z^n/L -> Z^m/M`` is an ``m x n`` integer matrix ``A``
with ``A L ⊆ M``; its payload is the matrix with every column reduced to the
canonical residue modulo the Hermite basis of ``M``.

Universal objects come back in Smith-reduced form: torsion generators of
orders ``d_1 | d_2 | ...`` (all ``> 1``) followed by free generators, so that
isomorphic results have identical presentations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from . import intmat
from .core import Backend, Mor, Obj
from .errors import IllDefinedMorphism

Vec = tuple[int, ...]


@dataclass(frozen=True)
class Presentation:
    """Z^n modulo the lattice spanned by `relations` (column vectors)."""

    n: int
    relations: tuple[Vec, ...] = ()
    pivots: tuple[int, ...] = field(default=(), compare=False, repr=False)
    free_rank: int = field(default=0, compare=False, repr=False)
    torsion: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def __post_init__(self):
        for r in self.relations:
            if len(r) != self.n:
                raise ValueError(f"relation {r} has length != {self.n}")
        basis = intmat.lattice_basis(self.relations, self.n)
        object.__setattr__(self, "relations", tuple(basis))
        object.__setattr__(self, "pivots", tuple(intmat.hermite_pivots(basis)))
        diag = _smith_of(self.n, self.relations)[2]
        object.__setattr__(self, "torsion", tuple(d for d in diag if d > 1))
        object.__setattr__(self, "free_rank", self.n - len(diag))

    def reduce(self, v) -> Vec:
        return tuple(intmat.reduce_vector(v, self.relations, self.pivots))

    @property
    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def relation_matrix(self) -> list[list[int]]:
        """n x m relation matrix, columns are the Hermite basis."""
        return intmat.transpose(self.relations, self.n) if self.relations else [[] for _ in range(self.n)]


@lru_cache(maxsize=1 << 12)
def _smith_of(n: int, relations: tuple[Vec, ...]):
    R = intmat.transpose(relations, n) if relations else [[] for _ in range(n)]
    return intmat.smith(R, n, len(relations))


def canonical_form(n: int, relations) -> tuple[Presentation, list[list[int]], list[list[int]]]:
    """Smith-reduced presentation of Z^n/<relations>.

    Returns ``(P, to_canon, from_canon)``: matrices of mutually inverse
    isomorphisms between the given presentation and ``P``.
    """
    relations = intmat.lattice_basis(relations, n)
    U, Ui, diag, _, _ = _smith_of(n, tuple(relations))
    keep = [i for i in range(n) if not (i < len(diag) and diag[i] == 1)]
    rels = []
    for pos, i in enumerate(keep):
        if i < len(diag):
            col = [0] * len(keep)
            col[pos] = diag[i]
            rels.append(tuple(col))
    to_canon = [list(U[i]) for i in keep]
    from_canon = [[Ui[r][i] for i in keep] for r in range(n)]
    return Presentation(len(keep), tuple(rels)), to_canon, from_canon


def _block_diag(*mats_dims):
    """Block-diagonal matrix from (matrix, rows, cols) triples."""
    R = sum(r for _, r, _ in mats_dims)
    C = sum(c for _, _, c in mats_dims)
    out = intmat.zeros(R, C)
    r0 = c0 = 0
    for M, r, c in mats_dims:
        for i in range(r):
            for j in range(c):
                out[r0 + i][c0 + j] = M[i][j]
        r0 += r
        c0 += c
    return out


class FgabBackend(Backend):
    name = "fgab"

    # --- objects ----------------------------------------------------------

    def group(self, n: int, relations=()) -> Obj:
        """Z^n / <relations>, relations given as column vectors."""
        return Obj(self, Presentation(n, tuple(tuple(r) for r in relations)))

    def cyclic(self, order: int) -> Obj:
        """Z/order; order 0 means Z."""
        return self.group(1, [(order,)] if order else [])

    def free(self, n: int) -> Obj:
        return self.group(n)

    def null_object(self) -> Obj:
        return self.group(0)

    def iso_invariant(self, X: Obj):
        p = X.payload
        return (p.free_rank, p.torsion)

    def describe(self, X: Obj) -> str:
        fr, tor = self.iso_invariant(X)
        return f"rank {fr}, torsion {list(tor)}"

    def is_null_object(self, X: Obj) -> bool:
        return X.payload.is_trivial

    # --- morphisms --------------------------------------------------------

    def matrix(self, dom: Obj, cod: Obj, rows) -> Mor:
        return Mor(self, dom, cod, rows)

    def normalize(self, dom: Obj, cod: Obj, payload):
        m, n = cod.payload.n, dom.payload.n
        rows = [list(r) for r in payload] if payload else []
        if m and not rows and n == 0:
            rows = [[] for _ in range(m)]
        if len(rows) != m or any(len(r) != n for r in rows):
            raise IllDefinedMorphism(f"matrix shape must be {m}x{n}")
        P = cod.payload
        for rel in dom.payload.relations:
            if any(P.reduce(intmat.matvec(rows, rel))):
                raise IllDefinedMorphism(f"relation {list(rel)} is not sent into the codomain relations")
        cols = [P.reduce([rows[i][j] for i in range(m)]) for j in range(n)]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(m))

    def identity(self, X: Obj) -> Mor:
        return Mor(self, X, X, intmat.identity(X.payload.n))

    def zero(self, X: Obj, Y: Obj) -> Mor:
        return Mor(self, X, Y, intmat.zeros(Y.payload.n, X.payload.n))

    def compose(self, g: Mor, f: Mor) -> Mor:
        return Mor(self, f.dom, g.cod, intmat.matmul(g.payload, f.payload, f.cod.payload.n, f.dom.payload.n))

    def is_null(self, f: Mor) -> bool:
        return not any(any(r) for r in f.payload)

    def add(self, f: Mor, g: Mor) -> Mor:
        return Mor(self, f.dom, f.cod, [[x + y for x, y in zip(r, s)] for r, s in zip(f.payload, g.payload)])

    def neg(self, f: Mor) -> Mor:
        return Mor(self, f.dom, f.cod, [[-x for x in r] for r in f.payload])

    def sub(self, f: Mor, g: Mor) -> Mor:
        return self.add(f, self.neg(g))

    def scalar(self, X: Obj, k: int) -> Mor:
        n = X.payload.n
        return Mor(self, X, X, [[k * int(i == j) for j in range(n)] for i in range(n)])

    # --- biproducts ---------------------------------------------------------

    def direct_sum(self, X: Obj, Y: Obj):
        """X ⊕ Y with injections and projections (i1, i2, p1, p2)."""
        px, py = X.payload, Y.payload
        rels = [tuple(r) + (0,) * py.n for r in px.relations] + [(0,) * px.n + tuple(r) for r in py.relations]
        S = self.group(px.n + py.n, rels)
        nx, ny = px.n, py.n
        i1 = Mor(self, X, S, [[int(i == j) for j in range(nx)] for i in range(nx + ny)])
        i2 = Mor(self, Y, S, [[int(i == j + nx) for j in range(ny)] for i in range(nx + ny)])
        p1 = Mor(self, S, X, [[int(i == j) for j in range(nx + ny)] for i in range(nx)])
        p2 = Mor(self, S, Y, [[int(i + nx == j) for j in range(nx + ny)] for i in range(ny)])
        return S, i1, i2, p1, p2

    # --- universal constructions -------------------------------------------

    def _canonical_sub(self, X: Obj, basis_cols: list[list[int]]) -> Mor:
        """Leg into X of the subgroup generated by `basis_cols` + rel(X).

        `basis_cols` must be a basis of a lattice containing rel(X).
        """
        n = X.payload.n
        k = len(basis_cols)
        B = intmat.transpose(basis_cols, n) if basis_cols else [[] for _ in range(n)]
        solver = intmat.IntegerSolver(B, n, k)
        rels = []
        for r in X.payload.relations:
            c = solver.solve(list(r))
            if c is None:
                raise AssertionError("sublattice does not contain the relations")
            rels.append(c)
        P, _, from_canon = canonical_form(k, rels)
        K = Obj(self, P)
        return Mor(self, K, X, intmat.matmul(B, from_canon, k, P.n))

    def kernel(self, f: Mor) -> Mor:
        X, Y = f.dom.payload, f.cod.payload
        n, m = X.n, Y.n
        Yrels = list(Y.relations)
        # [A | rel(Y)] (x; y) = 0
        M = [list(f.payload[i]) + [r[i] for r in Yrels] for i in range(m)]
        null = intmat.integer_nullspace(M, m, n + len(Yrels))
        gens = [v[:n] for v in null] + [list(r) for r in X.relations]
        basis = [list(v) for v in intmat.lattice_basis(gens, n)]
        return self._canonical_sub(f.dom, basis)

    def cokernel(self, f: Mor) -> Mor:
        Y = f.cod.payload
        cols = [tuple(f.payload[i][j] for i in range(Y.n)) for j in range(f.dom.payload.n)]
        P, to_canon, _ = canonical_form(Y.n, list(Y.relations) + cols)
        return Mor(self, f.cod, Obj(self, P), to_canon)

    def _left_solve(self, A, Arows, Acols, mods: list[Vec], T, tcols) -> list[list[int]] | None:
        """Y with A Y ≡ T modulo the lattice spanned by `mods` (column-wise)."""
        M = [list(A[i]) + [v[i] for v in mods] for i in range(Arows)]
        solver = intmat.IntegerSolver(M, Arows, Acols + len(mods))
        Y = intmat.zeros(Acols, tcols)
        for j in range(tcols):
            sol = solver.solve([T[i][j] for i in range(Arows)])
            if sol is None:
                return None
            for i in range(Acols):
                Y[i][j] = sol[i]
        return Y

    def _right_solve(self, W: Obj, M, Mrows, Mcols, T) -> list[list[int]] | None:
        """Y (W.n x Mrows) with Y M ≡ T modulo rel(W), column-wise."""
        p = W.payload
        U, Ui, diag, _, _ = _smith_of(p.n, p.relations)
        T2 = intmat.matmul(U, T, p.n, Mcols)
        Mt = intmat.transpose(M, Mcols) if M else [[] for _ in range(Mcols)]
        solvers = {}
        Y2 = intmat.zeros(p.n, Mrows)
        for i in range(p.n):
            d = diag[i] if i < len(diag) else 0
            if d == 1:
                continue
            if d not in solvers:
                if d == 0:
                    solvers[d] = intmat.IntegerSolver(Mt, Mcols, Mrows)
                else:
                    A = [list(Mt[r]) + [d * int(r == s) for s in range(Mcols)] for r in range(Mcols)]
                    solvers[d] = intmat.IntegerSolver(A, Mcols, Mrows + Mcols)
            sol = solvers[d].solve(T2[i])
            if sol is None:
                return None
            Y2[i] = sol[:Mrows]
        return intmat.matmul(Ui, Y2, p.n, Mrows)

    def _try(self, dom, cod, rows):
        try:
            return Mor(self, dom, cod, rows)
        except IllDefinedMorphism:
            return None

    def lift(self, k: Mor, x: Mor) -> Mor | None:
        X = k.cod.payload
        Y = self._left_solve(k.payload, X.n, k.dom.payload.n, list(X.relations), x.payload, x.dom.payload.n)
        return None if Y is None else self._try(x.dom, k.dom, Y)

    def descend(self, q: Mor, y: Mor) -> Mor | None:
        Q = q.cod.payload
        nx = q.dom.payload.n
        M = [list(q.payload[i]) + list(Q.relation_matrix()[i]) for i in range(Q.n)]
        T = [list(y.payload[i]) + [0] * len(Q.relations) for i in range(y.cod.payload.n)]
        Y = self._right_solve(y.cod, M, Q.n, nx + len(Q.relations), T)
        return None if Y is None else self._try(q.cod, y.cod, Y)

    def pullback(self, f: Mor, g: Mor) -> tuple[Mor, Mor]:
        S, i1, i2, p1, p2 = self.direct_sum(f.dom, g.dom)
        d = self.sub(self.compose(f, p1), self.compose(g, p2))
        k = self.kernel(d)
        return self.compose(p1, k), self.compose(p2, k)

    def pushout(self, f: Mor, g: Mor) -> tuple[Mor, Mor]:
        S, i1, i2, p1, p2 = self.direct_sum(f.cod, g.cod)
        d = self.sub(self.compose(i1, f), self.compose(i2, g))
        q = self.cokernel(d)
        return self.compose(q, i1), self.compose(q, i2)

    def pullback_factor(self, p1: Mor, p2: Mor, x1: Mor, x2: Mor) -> Mor | None:
        A = [list(r) for r in p1.payload] + [list(r) for r in p2.payload]
        n1, n2 = p1.cod.payload.n, p2.cod.payload.n
        mods = [tuple(r) + (0,) * n2 for r in p1.cod.payload.relations]
        mods += [(0,) * n1 + tuple(r) for r in p2.cod.payload.relations]
        T = [list(r) for r in x1.payload] + [list(r) for r in x2.payload]
        Y = self._left_solve(A, n1 + n2, p1.dom.payload.n, mods, T, x1.dom.payload.n)
        return None if Y is None else self._try(x1.dom, p1.dom, Y)

    def pushout_factor(self, i1: Mor, i2: Mor, y1: Mor, y2: Mor) -> Mor | None:
        N = i1.cod.payload
        n1, n2 = i1.dom.payload.n, i2.dom.payload.n
        Rn = N.relation_matrix()
        M = [list(i1.payload[i]) + list(i2.payload[i]) + list(Rn[i]) for i in range(N.n)]
        W = y1.cod
        T = [list(y1.payload[i]) + list(y2.payload[i]) + [0] * len(N.relations) for i in range(W.payload.n)]
        Y = self._right_solve(W, M, N.n, n1 + n2 + len(N.relations), T)
        return None if Y is None else self._try(i1.cod, W, Y)

    def is_iso(self, f: Mor) -> bool:
        return self.kernel(f).dom.payload.is_trivial and self.cokernel(f).cod.payload.is_trivial

    def inverse(self, f: Mor) -> Mor:
        g = self.descend(f, self.identity(f.dom))
        if g is None:
            raise ValueError("not invertible")
        return g


# --- direct subquotient formulas -------------------------------------------
#
# Everything below works with explicit lattices in Z^n and never calls the
# universal constructions above, so it serves as an independent oracle.

def _columns(f: Mor) -> list[list[int]]:
    m, n = f.cod.payload.n, f.dom.payload.n
    return [[f.payload[i][j] for i in range(m)] for j in range(n)]


def _span(vectors, dim) -> list[list[int]]:
    return [list(v) for v in intmat.lattice_basis(list(vectors), dim)]


def _intersect(L1, L2, dim) -> list[list[int]]:
    """Basis of L1 ∩ L2 from bases of both."""
    if not L1 or not L2:
        return []
    M = [[v[i] for v in L1] + [-w[i] for w in L2] for i in range(dim)]
    null = intmat.integer_nullspace(M, dim, len(L1) + len(L2))
    vecs = [[sum(c[j] * L1[j][i] for j in range(len(L1))) for i in range(dim)] for c in null]
    return _span(vecs, dim)


def _preimage(f: Mor, target) -> list[list[int]]:
    """{x in Z^n : A x in target} for a lattice `target` in Z^m."""
    m, n = f.cod.payload.n, f.dom.payload.n
    M = [list(f.payload[i]) + [t[i] for t in target] for i in range(m)]
    null = intmat.integer_nullspace(M, m, n + len(target))
    return _span([v[:n] for v in null], n)


def subquotient_invariant(big, small, dim) -> tuple[int, tuple[int, ...]]:
    """Iso invariant of big/small for lattices small ⊆ big in Z^dim."""
    big = _span(big, dim)
    k = len(big)
    B = intmat.transpose(big, dim) if big else [[] for _ in range(dim)]
    solver = intmat.IntegerSolver(B, dim, k)
    coords = []
    for v in small:
        c = solver.solve(v)
        if c is None:
            raise ValueError("subquotient: lattice not contained")
        coords.append(c)
    R = intmat.transpose(coords, k) if coords else [[] for _ in range(k)]
    diag = intmat.invariant_factors(R, k, len(coords))
    return k - len(diag), tuple(d for d in diag if d > 1)


def _rels(X: Obj) -> list[list[int]]:
    return [list(r) for r in X.payload.relations]


def homology_formula(f: Mor, g: Mor) -> tuple[int, tuple[int, ...]]:
    """Iso invariant of ker g / im f, computed on lattices of Z^n (n = rank of the middle)."""
    n = f.cod.payload.n
    kernel = _preimage(g, _rels(g.cod))
    image = _columns(f) + _rels(f.cod)
    return subquotient_invariant(kernel, image, n)


def lambek_group_formula(top: Mor, left: Mor, right: Mor, bottom: Mor, side: str):
    """Iso invariant of Img S = (Im b ∩ Im g)/Im(bf) or Ker S = Ker(bf)/(Ker f + Ker a)
    for the square top f, left a, right b, bottom g."""
    if side == "img":
        D = right.cod
        dim, rD = D.payload.n, _rels(D)
        ib = _span(_columns(right) + rD, dim)
        ig = _span(_columns(bottom) + rD, dim)
        ibf = [intmat.matvec(right.payload, c) for c in _columns(top)] + rD
        return subquotient_invariant(_intersect(ib, ig, dim), ibf, dim)
    if side == "ker":
        A = top.dom
        dim = A.payload.n
        D = right.cod
        bf = [[sum(right.payload[i][t] * top.payload[t][j] for t in range(top.cod.payload.n))
               for j in range(dim)] for i in range(D.payload.n)]
        kbf = _preimage(Mor(FGAB, A, D, bf), _rels(D))
        kf = _preimage(top, _rels(top.cod))
        ka = _preimage(left, _rels(left.cod))
        return subquotient_invariant(kbf, kf + ka + _rels(A), dim)
    raise ValueError(f"side must be 'img' or 'ker', not {side!r}")


FGAB = FgabBackend()
