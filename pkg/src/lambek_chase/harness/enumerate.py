"""Exhaustive enumeration of pointed-set diagrams up to isomorphism.

A diagram shape is a list of objects and arrows between them.  Each object
of size n carries the symmetric group on its n-1 non-basepoint elements;
the product acts on the arrows by conjugation.  Arrows are chosen one at a
time and, at each step, only one candidate per orbit of the stabilizer of
the arrows chosen so far is kept.  Every isomorphism class of diagrams is
produced exactly once, with its automorphism count, so that

    sum over classes of |G| / |Aut|

recovers the number of labelled diagrams (a check used in the tests).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import factorial
from typing import Callable, Iterator, Sequence

Table = tuple[int, ...]


def all_tables(n: int, m: int) -> list[Table]:
    return [(0,) + r for r in itertools.product(range(m), repeat=n - 1)]


def compose_tables(g: Table, f: Table) -> Table:
    return tuple(g[x] for x in f)


def _perms(n: int) -> list[Table]:
    return [(0,) + p for p in itertools.permutations(range(1, n))]


def _inv(p: Table) -> Table:
    out = [0] * len(p)
    for i, y in enumerate(p):
        out[y] = i
    return tuple(out)


@dataclass(frozen=True)
class Shape:
    """Objects are indices 0..k-1; arrows[i] = (src, dst)."""

    name: str
    arrows: tuple[tuple[int, int], ...]
    nobjects: int


# candidate filter: (sizes, chosen tables so far, index of the next arrow, candidate) -> keep?
Filter = Callable[[Sequence[int], list[Table], int, Table], bool]


@dataclass
class Labelled:
    sizes: tuple[int, ...]
    tables: tuple[Table, ...]
    automorphisms: int
    group_order: int

    @property
    def multiplicity(self) -> int:
        """Number of labelled diagrams in this class."""
        return self.group_order // self.automorphisms


def _act(h, src: int, dst: int, t: Table, inverses) -> Table:
    ps, pd = inverses[src][h[src]], h[dst]
    # (pd . t . ps^-1)(x)
    return tuple(pd[t[ps[x]]] for x in range(len(t)))


def enumerate_classes(shape: Shape, sizes: Sequence[int], keep: Filter) -> Iterator[Labelled]:
    sizes = tuple(sizes)
    perm_lists = [_perms(n) for n in sizes]
    inverses = [{p: _inv(p) for p in pl} for pl in perm_lists]
    order = 1
    for n in sizes:
        order *= factorial(n - 1)
    # group elements as tuples of permutations, lazily expanded only while needed
    full = list(itertools.product(*perm_lists))
    cand = [all_tables(sizes[s], sizes[d]) for s, d in shape.arrows]

    def rec(i: int, chosen: list[Table], H: list):
        if i == len(shape.arrows):
            yield Labelled(sizes, tuple(chosen), len(H), order)
            return
        s, d = shape.arrows[i]
        seen = set()
        for t in cand[i]:
            if t in seen or not keep(sizes, chosen, i, t):
                continue
            stab = []
            for h in H:
                u = _act(h, s, d, t, inverses)
                seen.add(u)
                if u == t:
                    stab.append(h)
            chosen.append(t)
            yield from rec(i + 1, chosen, stab)
            chosen.pop()

    yield from rec(0, [], full)


def size_tuples(nobjects: int, max_size: int, min_size: int = 1) -> Iterator[tuple[int, ...]]:
    return itertools.product(range(min_size, max_size + 1), repeat=nobjects)


# --- shapes used by the campaigns -------------------------------------------

PAIR = Shape("pair", ((0, 1), (1, 2)), 3)
# objects A B C A' B' C'; arrows f g f' g' a b c
TWO_SQUARE = Shape("two-square", ((0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)), 6)
# objects A..E, A'..E'; arrows f g h k f' g' h' k' a b c d e
FIVE_COLUMN = Shape(
    "five-column",
    ((0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9),
     (0, 5), (1, 6), (2, 7), (3, 8), (4, 9)),
    10,
)


def _null(t: Table) -> bool:
    return not any(t)


def two_square_filter(extra: Callable[[Sequence[int], list[Table], int, Table], bool] | None = None) -> Filter:
    """Null rows and commuting squares, checked as soon as the arrows exist."""

    def keep(sizes, chosen, i, t):
        if i == 1 and not _null(compose_tables(t, chosen[0])):
            return False
        if i == 3 and not _null(compose_tables(t, chosen[2])):
            return False
        if i == 5 and compose_tables(t, chosen[0]) != compose_tables(chosen[2], chosen[4]):
            return False
        if i == 6 and compose_tables(t, chosen[1]) != compose_tables(chosen[3], chosen[5]):
            return False
        return extra is None or extra(sizes, chosen, i, t)

    return keep


def five_column_filter(extra: Filter | None = None) -> Filter:
    def keep(sizes, chosen, i, t):
        if i in (1, 2, 3, 5, 6, 7) and not _null(compose_tables(t, chosen[i - 1])):
            return False
        if i >= 9:
            j = i - 8            # square j-1 has top j-1, bottom j+3, verticals i-1 and i
            if compose_tables(t, chosen[j - 1]) != compose_tables(chosen[j + 3], chosen[i - 1]):
                return False
        return extra is None or extra(sizes, chosen, i, t)

    return keep


def pair_filter(extra: Filter | None = None) -> Filter:
    def keep(sizes, chosen, i, t):
        if i == 1 and not _null(compose_tables(t, chosen[0])):
            return False
        return extra is None or extra(sizes, chosen, i, t)

    return keep


def injective_off_kernel_table(t: Table) -> bool:
    vals = [y for y in t if y]
    return len(vals) == len(set(vals))


def exact_at_tables(f: Table, g: Table) -> bool:
    """im f = g^{-1}(basepoint) as pointed subsets."""
    return set(f) == {x for x, y in enumerate(g) if y == 0}
