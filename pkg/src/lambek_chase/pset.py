"""Finite pointed sets with zero morphisms.

Objects are sizes ``n >= 1`` (elements ``0..n-1``, basepoint 0); a morphism
is its table.  The null morphisms are the constant maps to the basepoint.
Kernels are basepoint fibers, cokernels collapse the image; both relabel
ascending so results are canonical.
"""

from __future__ import annotations

import itertools
import os

from .core import Backend, Mor, Obj
from .errors import EnumerationTooLarge, IllDefinedMorphism

DEFAULT_ENUM_CAP = 10**6


def enum_cap() -> int:
    raw = os.environ.get("LAMBEK_CHASE_ENUM_CAP")
    return int(raw) if raw else DEFAULT_ENUM_CAP


class PSetBackend(Backend):
    name = "pset"

    def normalize_object(self, payload):
        n = int(payload)
        if n < 1:
            raise IllDefinedMorphism("pointed set needs at least the basepoint")
        return n

    def pointed(self, size: int) -> Obj:
        return self.obj(size)

    def map(self, dom: Obj | int, cod: Obj | int, table) -> Mor:
        if isinstance(dom, int):
            dom = self.pointed(dom)
        if isinstance(cod, int):
            cod = self.pointed(cod)
        return Mor(self, dom, cod, table)

    def normalize(self, dom: Obj, cod: Obj, payload):
        t = tuple(int(x) for x in payload)
        if len(t) != dom.payload:
            raise IllDefinedMorphism(f"table length {len(t)} != domain size {dom.payload}")
        if t[0] != 0:
            raise IllDefinedMorphism("basepoint must map to basepoint")
        if any(x < 0 or x >= cod.payload for x in t):
            raise IllDefinedMorphism("table entry outside the codomain")
        return t

    def null_object(self) -> Obj:
        return self.pointed(1)

    def iso_invariant(self, X: Obj):
        return X.payload

    def describe(self, X: Obj) -> str:
        return f"pointed set, {X.payload} elements"

    def is_null_object(self, X: Obj) -> bool:
        return X.payload == 1

    def identity(self, X: Obj) -> Mor:
        return Mor.trusted(self, X, X, tuple(range(X.payload)))

    def zero(self, X: Obj, Y: Obj) -> Mor:
        return Mor.trusted(self, X, Y, (0,) * X.payload)

    def compose(self, g: Mor, f: Mor) -> Mor:
        gt = g.payload
        return Mor.trusted(self, f.dom, g.cod, tuple([gt[x] for x in f.payload]))

    def is_null(self, f: Mor) -> bool:
        return not any(f.payload)

    def kernel(self, f: Mor) -> Mor:
        fiber = [x for x, y in enumerate(f.payload) if y == 0]
        return Mor.trusted(self, self.pointed(len(fiber)), f.dom, tuple(fiber))

    def cokernel(self, f: Mor) -> Mor:
        image = set(f.payload)
        table, nxt = [], 1
        for y in range(f.cod.payload):
            if y in image:
                table.append(0)
            else:
                table.append(nxt)
                nxt += 1
        return Mor.trusted(self, f.cod, self.pointed(nxt), tuple(table))

    def lift(self, k: Mor, x: Mor) -> Mor | None:
        pre = {}
        for i, y in enumerate(k.payload):
            pre.setdefault(y, i)
        out = []
        for y in x.payload:
            if y not in pre:
                return None
            out.append(pre[y])
        return Mor.trusted(self, x.dom, k.dom, tuple(out))

    def descend(self, q: Mor, y: Mor) -> Mor | None:
        table = [None] * q.cod.payload
        table[0] = 0
        for x, z in enumerate(q.payload):
            if table[z] is None:
                table[z] = y.payload[x]
            elif table[z] != y.payload[x]:
                return None
        # classes outside the image of q are unconstrained; send them to 0
        return Mor.trusted(self, q.cod, y.cod, tuple([0 if t is None else t for t in table]))

    def pullback(self, f: Mor, g: Mor) -> tuple[Mor, Mor]:
        pairs = [(x, y) for x in range(f.dom.payload) for y in range(g.dom.payload)
                 if f.payload[x] == g.payload[y]]
        P = self.pointed(len(pairs))
        return Mor(self, P, f.dom, [p[0] for p in pairs]), Mor(self, P, g.dom, [p[1] for p in pairs])

    def pushout(self, f: Mor, g: Mor) -> tuple[Mor, Mor]:
        nb, nc = f.cod.payload, g.cod.payload
        parent = list(range(nb + nc))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        def union(a, b):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)

        union(0, nb)
        for a in range(f.dom.payload):
            union(f.payload[a], nb + g.payload[a])
        label, table = {}, []
        for x in range(nb + nc):
            r = find(x)
            if r not in label:
                label[r] = len(label)
            table.append(label[r])
        N = self.pointed(len(label))
        return Mor.trusted(self, f.cod, N, tuple(table[:nb])), Mor.trusted(self, g.cod, N, tuple(table[nb:]))

    def pullback_factor(self, p1: Mor, p2: Mor, x1: Mor, x2: Mor) -> Mor | None:
        index = {(a, b): i for i, (a, b) in enumerate(zip(p1.payload, p2.payload))}
        out = []
        for a, b in zip(x1.payload, x2.payload):
            if (a, b) not in index:
                return None
            out.append(index[(a, b)])
        return Mor.trusted(self, x1.dom, p1.dom, tuple(out))

    def pushout_factor(self, i1: Mor, i2: Mor, y1: Mor, y2: Mor) -> Mor | None:
        table = [None] * i1.cod.payload
        table[0] = 0
        for i, y in ((i1, y1), (i2, y2)):
            for x, n in enumerate(i.payload):
                if table[n] is None:
                    table[n] = y.payload[x]
                elif table[n] != y.payload[x]:
                    return None
        return Mor.trusted(self, i1.cod, y1.cod, tuple([0 if t is None else t for t in table]))

    def is_iso(self, f: Mor) -> bool:
        return f.dom.payload == f.cod.payload and len(set(f.payload)) == f.dom.payload

    def inverse(self, f: Mor) -> Mor:
        inv = [0] * f.dom.payload
        for x, y in enumerate(f.payload):
            inv[y] = x
        return Mor.trusted(self, f.cod, f.dom, tuple(inv))

    def enumerate_morphisms(self, X: Obj, Y: Obj, cap: int | None = None) -> list[Mor]:
        """All basepoint-preserving maps X -> Y in lexicographic table order."""
        cap = enum_cap() if cap is None else cap
        count = Y.payload ** (X.payload - 1)
        if count > cap:
            raise EnumerationTooLarge(f"{count} maps exceed the cap {cap}")
        return [Mor(self, X, Y, (0,) + rest)
                for rest in itertools.product(range(Y.payload), repeat=X.payload - 1)]


def injective_off_kernel(f: Mor) -> bool:
    """Direct table predicate: f is injective outside its basepoint fiber."""
    vals = [y for y in f.payload if y != 0]
    return len(vals) == len(set(vals))


PSET = PSetBackend()
