"""Seeded random diagrams for both backends.

fgab: objects are small random presentations.  Morphisms are drawn in Smith
coordinates, where Hom(Z/d, Z/e) is visibly cyclic, and transported back.
Rows are built left to right: a null row sends each arrow through the
cokernel of the previous one, an exact row does so through a monomorphism.
Verticals come either from the integer solution lattice of the commutation
equations between two independent rows, or by pushing the top row out
along a random first vertical (which keeps exactness of the bottom row).

pset: rows are built directly from tables, verticals by constrained random
choice with bounded retries.

Every morphism of an abelian group is exact, so "b-exact" and "f-exact" are
automatic in fgab and enforced by rejection in pset.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .. import intmat
from ..core import (
    FiveColumnDiagram,
    Mor,
    Obj,
    Square,
    TwoSquareDiagram,
    coker,
    factor_through_cokernel,
    induced_cokernel_morphism,
    is_exact_morphism,
    is_kernel,
)
from ..errors import GenerationFailed, LambekChaseError
from ..fgab import FGAB, canonical_form
from ..pset import PSET
from .enumerate import exact_at_tables

CONSTRAINTS = frozenset({"rows-exact", "b-exact", "f-exact", "g'-exact", "b-kernel", "verticals-identity"})
SHAPES = ("pair", "square", "two-square", "five-column")


@dataclass(frozen=True)
class FgabBounds:
    max_rank: int = 3
    max_relations: int = 3
    entry: int = 3
    max_torsion_entry: int = 4


@dataclass(frozen=True)
class PSetBounds:
    max_size: int = 4
    cap: int = 6          # absolute ceiling on pointed-set sizes


@dataclass(frozen=True)
class GeneratorConfig:
    fgab: FgabBounds = field(default_factory=FgabBounds)
    pset: PSetBounds = field(default_factory=PSetBounds)
    retries: int = 200


DEFAULT = GeneratorConfig()


def _norm_constraints(constraints) -> frozenset:
    cs = frozenset(c.replace("′", "'") for c in (constraints or ()))
    bad = cs - CONSTRAINTS
    if bad:
        raise ValueError(f"unknown constraints {sorted(bad)}")
    return cs


# --- fgab ------------------------------------------------------------------

def random_group(rng: random.Random, b: FgabBounds = FgabBounds(), min_rank: int = 0) -> Obj:
    n = rng.randint(min_rank, b.max_rank)
    k = rng.randint(0, min(n, b.max_relations))
    rels = []
    for _ in range(k):
        v = [rng.randint(-b.entry, b.entry) for _ in range(n)]
        rels.append(v)
    G = FGAB.group(n, rels)
    if any(t > 12 for t in G.payload.torsion):
        return random_group(rng, b, min_rank)
    return G


def _smith_data(X: Obj):
    P, to_c, from_c = canonical_form(X.payload.n, X.payload.relations)
    orders = [0] * P.n
    for r in P.relations:
        for i, x in enumerate(r):
            if x:
                orders[i] = abs(x)
    return P, to_c, from_c, orders


def random_hom(rng: random.Random, X: Obj, Y: Obj, entry: int = 3, density: float = 0.7) -> Mor:
    """Random morphism X -> Y, uniform-ish over small coefficients."""
    PX, toX, _, dX = _smith_data(X)
    PY, _, fromY, dY = _smith_data(Y)
    M = intmat.zeros(PY.n, PX.n)
    for i in range(PY.n):
        for j in range(PX.n):
            if rng.random() > density:
                continue
            d, e = dX[j], dY[i]
            if d and not e:
                continue
            step = e // _gcd(d, e) if (d and e) else 1
            M[i][j] = step * rng.randint(-entry, entry)
    rows = intmat.matmul(fromY, intmat.matmul(M, toX, PX.n, X.payload.n), PY.n, X.payload.n)
    return FGAB.matrix(X, Y, rows)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def random_mono(rng: random.Random, X: Obj, b: FgabBounds = FgabBounds()) -> Mor:
    """Graph embedding X -> X + W of a random r: X -> W."""
    W = random_group(rng, b)
    r = random_hom(rng, X, W)
    S, i1, i2, p1, p2 = FGAB.direct_sum(X, W)
    return FGAB.add(i1, i2 @ r)


def random_row(rng: random.Random, length: int, exact_at: set[int], b: FgabBounds = FgabBounds(),
               first: Obj | None = None) -> list[Mor]:
    """Null row X0 -> X1 -> ... of `length` arrows, exact at the listed inner nodes."""
    X0 = first or random_group(rng, b)
    X1 = random_group(rng, b, min_rank=1)
    row = [random_hom(rng, X0, X1)]
    for i in range(1, length):
        q = coker(row[-1])
        if i in exact_at:
            m = random_mono(rng, q.cod, b)
        else:
            m = random_hom(rng, q.cod, random_group(rng, b))
        row.append(m @ q)
    return row


def solve_ladder(top: list[Mor], bottom: list[Mor]) -> list[list[list[list[int]]]]:
    """Generators of the group of commuting vertical families top -> bottom.

    Each generator is a list of matrices, one per column, read off the
    integer kernel of the well-definedness and commutation equations.
    """
    Xs = [top[0].dom] + [f.cod for f in top]
    Ys = [bottom[0].dom] + [f.cod for f in bottom]
    sizes = [Ys[i].payload.n * Xs[i].payload.n for i in range(len(Xs))]
    offs = [sum(sizes[:i]) for i in range(len(sizes))]
    nv = sum(sizes)

    def var(i, r, c):
        return offs[i] + r * Xs[i].payload.n + c

    blocks = []   # (sparse rows over the unknowns, relations of the target for multipliers)
    for i, (X, Y) in enumerate(zip(Xs, Ys)):
        ny = Y.payload.n
        for rel in X.payload.relations:
            rows = [dict() for _ in range(ny)]
            for r in range(ny):
                for c, x in enumerate(rel):
                    if x:
                        rows[r][var(i, r, c)] = rows[r].get(var(i, r, c), 0) + x
            blocks.append((rows, Y.payload.relations))
    for i in range(len(top)):
        F, G = top[i].payload, bottom[i].payload
        X, Xn, Y, Yn = Xs[i], Xs[i + 1], Ys[i], Ys[i + 1]
        for j in range(X.payload.n):
            # (V_{i+1} F - G V_i) e_j
            rows = [dict() for _ in range(Yn.payload.n)]
            for r in range(Yn.payload.n):
                for t in range(Xn.payload.n):
                    if F[t][j]:
                        k = var(i + 1, r, t)
                        rows[r][k] = rows[r].get(k, 0) + F[t][j]
                for t in range(Y.payload.n):
                    if G[r][t]:
                        k = var(i, t, j)
                        rows[r][k] = rows[r].get(k, 0) - G[r][t]
            blocks.append((rows, Yn.payload.relations))
    nm = sum(len(rels) for _, rels in blocks)
    ncols = nv + nm
    A = []
    mcol = nv
    for rows, rels in blocks:
        for r, row in enumerate(rows):
            line = [0] * ncols
            for k, v in row.items():
                line[k] = v
            for s, rel in enumerate(rels):
                line[mcol + s] = -rel[r]
            A.append(line)
        mcol += len(rels)
    if not A:
        null = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    else:
        null = intmat.integer_nullspace(A, len(A), ncols)
    gens = intmat.lattice_basis([v[:nv] for v in null], nv)
    out = []
    for v in gens:
        mats = []
        for i, (X, Y) in enumerate(zip(Xs, Ys)):
            mats.append([[v[var(i, r, c)] for c in range(X.payload.n)] for r in range(Y.payload.n)])
        out.append(mats)
    return out


def random_verticals(rng: random.Random, top: list[Mor], bottom: list[Mor], terms: int = 3) -> list[Mor] | None:
    Xs = [top[0].dom] + [f.cod for f in top]
    Ys = [bottom[0].dom] + [f.cod for f in bottom]
    gens = solve_ladder(top, bottom)
    if not gens:
        return None
    pick = [rng.choice(gens) for _ in range(rng.randint(1, terms))]
    coeffs = [rng.choice((-2, -1, 1, 1, 2)) for _ in pick]
    mats = []
    for i, (X, Y) in enumerate(zip(Xs, Ys)):
        M = [[sum(c * g[i][r][s] for c, g in zip(coeffs, pick)) for s in range(X.payload.n)]
             for r in range(Y.payload.n)]
        mats.append(FGAB.matrix(X, Y, M))
    return mats


def push_out_row(top: list[Mor], a: Mor) -> tuple[list[Mor], list[Mor]]:
    """Bottom row and verticals obtained by pushing `top` out along a.

    Square i is a pushout of the factor of top[i] through the cokernel of
    top[i-1]; monic factors stay monic, so exactness of the top row at a
    node carries over to the bottom row.
    """
    from ..core import pushout
    bottom, verts = [], [a]
    prev_top, prev_bot = None, None
    for i, f in enumerate(top):
        if i == 0:
            _, f_b, v = pushout(a, f)
        else:
            fbar = factor_through_cokernel(coker(prev_top), f)
            chk = induced_cokernel_morphism(Square(prev_top, verts[i - 1], verts[i], prev_bot))
            _, j, v = pushout(chk, fbar)
            f_b = j @ coker(prev_bot)
        bottom.append(f_b)
        verts.append(v)
        prev_top, prev_bot = f, f_b
    return bottom, verts


def _fgab_rows(rng, length, constraints, b: FgabBounds):
    exact = set(range(1, length)) if "rows-exact" in constraints else set()
    return random_row(rng, length, exact, b)


def fgab_ladder(rng: random.Random, length: int, constraints: frozenset, cfg: GeneratorConfig = DEFAULT):
    """Top row, bottom row, verticals of a random fgab ladder with `length` arrows per row."""
    b = cfg.fgab
    for _ in range(cfg.retries):
        top = _fgab_rows(rng, length, constraints, b)
        if "verticals-identity" in constraints:
            return top, list(top), [FGAB.identity(top[0].dom)] + [FGAB.identity(f.cod) for f in top]
        mode = "pushout" if ("b-kernel" in constraints or rng.random() < 0.5) else "solve"
        try:
            if mode == "pushout":
                if "b-kernel" in constraints:
                    a = random_mono(rng, top[0].dom, b)
                else:
                    a = random_hom(rng, top[0].dom, random_group(rng, b))
                bottom, verts = push_out_row(top, a)
            else:
                bottom = _fgab_rows(rng, length, constraints, b)
                verts = random_verticals(rng, top, bottom)
                if verts is None:
                    continue
        except LambekChaseError:
            continue
        if "b-kernel" in constraints and not is_kernel(verts[1]):
            continue
        if any(max((abs(x) for r in m.payload for x in r), default=0) > 60 for m in bottom + verts):
            continue
        return top, bottom, verts
    raise GenerationFailed(f"no fgab ladder with {sorted(constraints)} after {cfg.retries} tries")


# --- pset ------------------------------------------------------------------

def _rand_size(rng, ps: PSetBounds, lo=1):
    return rng.randint(lo, min(ps.max_size, ps.cap))


def _pset_table(rng, n, m):
    return (0,) + tuple(rng.randrange(m) for _ in range(n - 1))


def _pset_next(rng, f, m, exact: bool):
    """A table g out of f's codomain with g f null; exact means g^{-1}(0) = im f."""
    img = set(f)
    if exact:
        # with m == 1 this is only exact when f is onto; the caller checks
        return tuple(0 if y in img or m == 1 else rng.randrange(1, m) for y in range(_cod_size(f)))
    return tuple(0 if y in img else rng.randrange(m) for y in range(_cod_size(f)))


def _cod_size(f):
    return f.cod_size


class _T(tuple):
    """Table that remembers its codomain size."""

    def __new__(cls, t, cod):
        obj = super().__new__(cls, t)
        obj.cod_size = cod
        return obj


def _pset_row(rng, sizes, exact_nodes):
    row = [_T(_pset_table(rng, sizes[0], sizes[1]), sizes[1])]
    for i in range(1, len(sizes) - 1):
        t = _T(_pset_next(rng, row[-1], sizes[i + 1], i in exact_nodes), sizes[i + 1])
        if i in exact_nodes and not exact_at_tables(row[-1], t):
            return None
        row.append(t)
    return row


def _pset_vertical(rng, src, dst, constraints: dict[int, int]):
    t = [0] * src
    for x in range(1, src):
        t[x] = constraints[x] if x in constraints else rng.randrange(dst)
    return tuple(t)


def _forced(f, fp_v, src_size):
    """Values forced on im f by the commutation b f = (f' a)."""
    forced = {}
    for x, y in enumerate(f):
        v = fp_v[x]
        if y in forced and forced[y] != v:
            return None
        forced[y] = v
    if forced.get(0, 0) != 0:
        return None
    return forced


def pset_ladder(rng: random.Random, length: int, constraints: frozenset, cfg: GeneratorConfig = DEFAULT):
    ps = cfg.pset
    exact = set(range(1, length)) if "rows-exact" in constraints else set()
    for _ in range(cfg.retries):
        top_s = [_rand_size(rng, ps) for _ in range(length + 1)]
        top = _pset_row(rng, top_s, exact)
        if top is None:
            continue
        if "verticals-identity" in constraints:
            bot_s, bottom = top_s, top
            verts = [tuple(range(n)) for n in top_s]
        else:
            bot_s = [_rand_size(rng, ps) for _ in range(length + 1)]
            bottom = _pset_row(rng, bot_s, exact)
            if bottom is None:
                continue
            verts = [_pset_table(rng, top_s[0], bot_s[0])]
            ok = True
            for i in range(length):
                target = tuple(bottom[i][v] for v in verts[i])
                forced = _forced(top[i], target, top_s[i + 1])
                if forced is None:
                    ok = False
                    break
                verts.append(_pset_vertical(rng, top_s[i + 1], bot_s[i + 1], forced))
            if not ok:
                continue
        if "b-kernel" in constraints and len(set(verts[1])) != len(verts[1]):
            continue
        M = lambda t, n, m: PSET.map(n, m, t)
        top_m = [M(t, top_s[i], top_s[i + 1]) for i, t in enumerate(top)]
        bot_m = [M(t, bot_s[i], bot_s[i + 1]) for i, t in enumerate(bottom)]
        vert_m = [M(t, top_s[i], bot_s[i]) for i, t in enumerate(verts)]
        return top_m, bot_m, vert_m
    raise GenerationFailed(f"no pset ladder with {sorted(constraints)} after {cfg.retries} tries")


# --- entry point -----------------------------------------------------------

def _post_check(shape, diagram, constraints) -> bool:
    if shape == "two-square":
        d = diagram
        checks = {"b-exact": lambda: is_exact_morphism(d.b), "f-exact": lambda: is_exact_morphism(d.f),
                  "g'-exact": lambda: is_exact_morphism(d.gp)}
        return all(checks[c]() for c in constraints if c in checks)
    if shape == "square":
        return all(is_exact_morphism(diagram.right) for c in constraints if c == "b-exact")
    return True


def generate_diagram(backend: str, shape: str, seed: int, constraints=(), cfg: GeneratorConfig = DEFAULT):
    """Random diagram object (pair tuple, Square, TwoSquareDiagram or FiveColumnDiagram).

    Deterministic for a fixed (backend, shape, seed, constraints, cfg).
    """
    cs = _norm_constraints(constraints)
    if shape not in SHAPES:
        raise ValueError(f"unknown shape {shape!r}")
    rng = random.Random(f"{backend}:{shape}:{seed}:{','.join(sorted(cs))}")
    ladder = {"fgab": fgab_ladder, "pset": pset_ladder}.get(backend)
    if ladder is None:
        raise ValueError(f"unknown backend {backend!r}")
    length = {"pair": 2, "square": 1, "two-square": 2, "five-column": 4}[shape]
    for _ in range(cfg.retries):
        if shape == "pair":
            top, _, _ = ladder(rng, 2, cs | {"verticals-identity"}, cfg)
            return tuple(top)
        top, bottom, v = ladder(rng, length, cs, cfg)
        if shape == "square":
            d = Square(top[0], v[0], v[1], bottom[0])
        elif shape == "two-square":
            d = TwoSquareDiagram(top[0], top[1], bottom[0], bottom[1], v[0], v[1], v[2])
        else:
            d = FiveColumnDiagram(*top, *bottom, *v)
        if _post_check(shape, d, cs):
            return d
    raise GenerationFailed(f"constraints {sorted(cs)} not met after {cfg.retries} tries")


def random_composable(backend: str, seed: int, cfg: GeneratorConfig = DEFAULT) -> tuple[Mor, Mor]:
    """Two composable morphisms with no nullity constraint."""
    rng = random.Random(f"{backend}:composable:{seed}")
    if backend == "fgab":
        X, Y, Z = (random_group(rng, cfg.fgab) for _ in range(3))
        return random_hom(rng, X, Y), random_hom(rng, Y, Z)
    n = [_rand_size(rng, cfg.pset) for _ in range(3)]
    return (PSET.map(n[0], n[1], _pset_table(rng, n[0], n[1])),
            PSET.map(n[1], n[2], _pset_table(rng, n[1], n[2])))


def random_morphism(backend: str, seed: int, cfg: GeneratorConfig = DEFAULT) -> Mor:
    return random_composable(backend, seed, cfg)[0]
