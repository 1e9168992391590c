"""Decidable semiexact categories and their backend-generic constructions.

A backend supplies objects, morphisms, the ideal of null morphisms and the
universal constructions.  Everything in this module is written only against
that interface, so it runs unchanged on every backend.

Composition is written ``g @ f`` (first ``f``, then ``g``).
"""

from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from functools import lru_cache, reduce
from typing import Any

from .errors import (
    BackendMismatch,
    FactorizationFailure,
    HypothesisViolated,
    InternalInvariantViolation,
    ValidationError,
)


@dataclass(frozen=True)
class Obj:
    backend: "Backend" = field(repr=False)
    payload: Any

    def __repr__(self):
        return f"<{self.backend.name} {self.backend.describe(self)}>"

    @property
    def invariant(self):
        return self.backend.iso_invariant(self)


@dataclass(frozen=True)
class Mor:
    backend: "Backend" = field(repr=False)
    dom: Obj
    cod: Obj
    payload: Any

    def __post_init__(self):
        if self.dom.backend is not self.backend or self.cod.backend is not self.backend:
            raise BackendMismatch(f"{self.backend.name} morphism between foreign objects")
        object.__setattr__(self, "payload", self.backend.normalize(self.dom, self.cod, self.payload))

    def __matmul__(self, other: "Mor") -> "Mor":
        return _compose2(self, other)

    @classmethod
    def trusted(cls, backend: "Backend", dom: Obj, cod: Obj, payload) -> "Mor":
        """Skip validation; for payloads a backend has produced in canonical form."""
        m = object.__new__(cls)
        object.__setattr__(m, "backend", backend)
        object.__setattr__(m, "dom", dom)
        object.__setattr__(m, "cod", cod)
        object.__setattr__(m, "payload", payload)
        return m

    def __repr__(self):
        return f"<{self.backend.name} {self.payload!r}: {self.dom!r} -> {self.cod!r}>"


class Backend(ABC):
    """A concrete homological category with decidable equality.

    Subclasses work on payloads; the generic layer works on Obj/Mor.
    Morphism payloads must be canonical, so that payload equality is
    morphism equality.
    """

    name: str = "?"

    def obj(self, payload) -> Obj:
        return Obj(self, self.normalize_object(payload))

    def mor(self, dom: Obj, cod: Obj, payload) -> Mor:
        return Mor(self, dom, cod, payload)

    def normalize_object(self, payload):
        return payload

    @abstractmethod
    def normalize(self, dom: Obj, cod: Obj, payload):
        """Validate a morphism payload and return its canonical form."""

    @abstractmethod
    def null_object(self) -> Obj: ...

    @abstractmethod
    def iso_invariant(self, X: Obj): ...

    @abstractmethod
    def describe(self, X: Obj) -> str: ...

    @abstractmethod
    def identity(self, X: Obj) -> Mor: ...

    @abstractmethod
    def zero(self, X: Obj, Y: Obj) -> Mor: ...

    @abstractmethod
    def compose(self, g: Mor, f: Mor) -> Mor: ...

    @abstractmethod
    def is_null(self, f: Mor) -> bool: ...

    @abstractmethod
    def kernel(self, f: Mor) -> Mor:
        """Canonical kernel leg of f."""

    @abstractmethod
    def cokernel(self, f: Mor) -> Mor:
        """Canonical cokernel leg of f."""

    @abstractmethod
    def lift(self, k: Mor, x: Mor) -> Mor | None:
        """Some x' with k @ x' == x, or None.  Unique when k is N-monic."""

    @abstractmethod
    def descend(self, q: Mor, y: Mor) -> Mor | None:
        """Some y' with y' @ q == y, or None.  Unique when q is N-epic."""

    @abstractmethod
    def pullback(self, f: Mor, g: Mor) -> tuple[Mor, Mor]: ...

    @abstractmethod
    def pushout(self, f: Mor, g: Mor) -> tuple[Mor, Mor]: ...

    @abstractmethod
    def pullback_factor(self, p1: Mor, p2: Mor, x1: Mor, x2: Mor) -> Mor | None: ...

    @abstractmethod
    def pushout_factor(self, i1: Mor, i2: Mor, y1: Mor, y2: Mor) -> Mor | None: ...

    @abstractmethod
    def is_iso(self, f: Mor) -> bool: ...

    @abstractmethod
    def inverse(self, f: Mor) -> Mor: ...

    def is_null_object(self, X: Obj) -> bool:
        return self.is_null(self.identity(X))


def _same(*ms: Mor) -> "Backend":
    b = ms[0].backend
    for m in ms[1:]:
        if m.backend is not b:
            raise BackendMismatch("morphisms from different backends")
    return b


def _compose2(g: Mor, f: Mor) -> Mor:
    if g.backend is not f.backend:
        raise BackendMismatch("morphisms from different backends")
    if g.dom is not f.cod and g.dom != f.cod:
        raise ValueError(f"cannot compose {g!r} after {f!r}")
    return g.backend.compose(g, f)


def compose(*fs: Mor) -> Mor:
    """compose(h, g, f) == h @ g @ f."""
    return reduce(_compose2, fs)


def identity(X: Obj) -> Mor:
    return X.backend.identity(X)


def zero(X: Obj, Y: Obj) -> Mor:
    return X.backend.zero(X, Y)


def is_null(f: Mor) -> bool:
    return f.backend.is_null(f)


def is_null_object(X: Obj) -> bool:
    return X.backend.is_null_object(X)


def is_iso(f: Mor) -> bool:
    return _is_iso(f)


@lru_cache(maxsize=1 << 15)
def _is_iso(f: Mor) -> bool:
    return f.backend.is_iso(f)


def inverse(f: Mor) -> Mor:
    if not is_iso(f):
        raise ValueError(f"{f!r} is not an isomorphism")
    g = f.backend.inverse(f)
    if g @ f != identity(f.dom) or f @ g != identity(f.cod):
        raise InternalInvariantViolation("inverse does not invert")
    return g


# --- kernels and cokernels -------------------------------------------------

@lru_cache(maxsize=1 << 15)
def ker(f: Mor) -> Mor:
    """The canonical kernel leg ``ker f: Ker f -> dom f``."""
    return f.backend.kernel(f)


@lru_cache(maxsize=1 << 15)
def coker(f: Mor) -> Mor:
    """The canonical cokernel leg ``coker f: cod f -> Coker f``."""
    return f.backend.cokernel(f)


def kernel(f: Mor) -> tuple[Obj, Mor]:
    k = ker(f)
    return k.dom, k


def cokernel(f: Mor) -> tuple[Obj, Mor]:
    q = coker(f)
    return q.cod, q


def factor_through_kernel(k: Mor, x: Mor) -> Mor:
    """The unique x' with ``k @ x' == x``.

    Raises FactorizationFailure when x does not land in the subobject k.
    """
    _same(k, x)
    if k.cod != x.cod:
        raise FactorizationFailure("codomains differ")
    y = k.backend.lift(k, x)
    if y is None:
        raise FactorizationFailure(f"{x!r} does not factor through {k!r}")
    if k @ y != x:
        raise InternalInvariantViolation("lift does not satisfy k x' = x")
    return y


def factor_through_cokernel(q: Mor, y: Mor) -> Mor:
    """The unique y' with ``y' @ q == y``."""
    _same(q, y)
    if q.dom != y.dom:
        raise FactorizationFailure("domains differ")
    z = q.backend.descend(q, y)
    if z is None:
        raise FactorizationFailure(f"{y!r} does not factor through {q!r}")
    if z @ q != y:
        raise InternalInvariantViolation("descent does not satisfy y' q = y")
    return z


def im(f: Mor) -> Mor:
    """im f := ker(coker f)."""
    return ker(coker(f))


def coim(f: Mor) -> Mor:
    """coim f := coker(ker f)."""
    return coker(ker(f))


@dataclass(frozen=True)
class Factorization:
    coim: Mor
    mid: Mor
    im: Mor

    def composite(self) -> Mor:
        return self.im @ self.mid @ self.coim


@lru_cache(maxsize=1 << 14)
def normal_factorization(f: Mor) -> Factorization:
    """f = (im f) f̄ (coim f)."""
    i = im(f)
    c = coim(f)
    f1 = factor_through_kernel(i, f)
    mid = factor_through_cokernel(c, f1)
    fac = Factorization(c, mid, i)
    if fac.composite() != f:
        raise InternalInvariantViolation("normal factorization does not recompose")
    return fac


def is_exact_morphism(f: Mor) -> bool:
    return is_iso(normal_factorization(f).mid)


def n_mono(f: Mor) -> bool:
    return is_null_object(ker(f).dom)


def n_epi(f: Mor) -> bool:
    return is_null_object(coker(f).cod)


def subobject_equal(m1: Mor, m2: Mor) -> bool:
    """Equality of subobjects given by kernel legs, by mutual factorization."""
    _same(m1, m2)
    if m1.cod != m2.cod:
        return False
    b = m1.backend
    x = b.lift(m2, m1)
    y = b.lift(m1, m2)
    return x is not None and y is not None and m2 @ x == m1 and m1 @ y == m2


def quotient_equal(q1: Mor, q2: Mor) -> bool:
    _same(q1, q2)
    if q1.dom != q2.dom:
        return False
    b = q1.backend
    x = b.descend(q1, q2)
    y = b.descend(q2, q1)
    return x is not None and y is not None and x @ q1 == q2 and y @ q2 == q1


def is_kernel_of(m: Mor, f: Mor) -> bool:
    """m = ker f up to isomorphism of domains."""
    if m.cod != f.dom or not is_null(f @ m):
        return False
    u = m.backend.lift(ker(f), m)
    return u is not None and ker(f) @ u == m and is_iso(u)


def is_cokernel_of(q: Mor, f: Mor) -> bool:
    if q.dom != f.cod or not is_null(q @ f):
        return False
    u = q.backend.descend(coker(f), q)
    return u is not None and u @ coker(f) == q and is_iso(u)


def is_kernel(m: Mor) -> bool:
    return is_kernel_of(m, coker(m))


def is_cokernel(q: Mor) -> bool:
    return is_cokernel_of(q, ker(q))


def image_equals_kernel(f: Mor, g: Mor) -> bool:
    """im f = ker g as subobjects of cod f."""
    return subobject_equal(im(f), ker(g))


# --- squares ---------------------------------------------------------------

@dataclass(frozen=True)
class Square:
    """A --top--> B,  A --left--> C,  B --right--> D,  C --bottom--> D."""

    top: Mor
    left: Mor
    right: Mor
    bottom: Mor
    name: str = field(default="square", compare=False)

    def __post_init__(self):
        _same(self.top, self.left, self.right, self.bottom)
        ok = (self.top.dom == self.left.dom and self.top.cod == self.right.dom
              and self.left.cod == self.bottom.dom and self.right.cod == self.bottom.cod)
        if not ok:
            raise ValidationError(f"{self.name} has mismatched corners")
        if self.right @ self.top != self.bottom @ self.left:
            raise ValidationError(f"{self.name} does not commute")

    @property
    def backend(self):
        return self.top.backend

    def transposed(self) -> "Square":
        return Square(self.left, self.top, self.bottom, self.right, self.name + "^t")


@dataclass(frozen=True)
class TwoSquareDiagram:
    """Two adjacent squares S | T over the rows A -f-> B -g-> C, A' -f'-> B' -g'-> C'."""

    f: Mor
    g: Mor
    fp: Mor
    gp: Mor
    a: Mor
    b: Mor
    c: Mor

    def __post_init__(self):
        Square(self.f, self.a, self.b, self.fp, "square S")
        Square(self.g, self.b, self.c, self.gp, "square T")

    @property
    def S(self) -> Square:
        return Square(self.f, self.a, self.b, self.fp, "S")

    @property
    def T(self) -> Square:
        return Square(self.g, self.b, self.c, self.gp, "T")

    @property
    def backend(self):
        return self.f.backend

    def rows_null(self) -> bool:
        return is_null(self.g @ self.f) and is_null(self.gp @ self.fp)

    def morphisms(self) -> dict[str, Mor]:
        return {k: getattr(self, k) for k in ("f", "g", "fp", "gp", "a", "b", "c")}


@dataclass(frozen=True)
class FiveColumnDiagram:
    f: Mor
    g: Mor
    h: Mor
    k: Mor
    fp: Mor
    gp: Mor
    hp: Mor
    kp: Mor
    a: Mor
    b: Mor
    c: Mor
    d: Mor
    e: Mor

    def __post_init__(self):
        tops = (self.f, self.g, self.h, self.k)
        bots = (self.fp, self.gp, self.hp, self.kp)
        verts = (self.a, self.b, self.c, self.d, self.e)
        for i, name in enumerate(("I", "II", "III", "IV")):
            Square(tops[i], verts[i], verts[i + 1], bots[i], f"square {name}")

    @property
    def backend(self):
        return self.f.backend

    def rows_null(self) -> bool:
        return all(is_null(y @ x) for x, y in ((self.f, self.g), (self.g, self.h), (self.h, self.k),
                                               (self.fp, self.gp), (self.gp, self.hp), (self.hp, self.kp)))

    def morphisms(self) -> dict[str, Mor]:
        return {k: getattr(self, k) for k in
                ("f", "g", "h", "k", "fp", "gp", "hp", "kp", "a", "b", "c", "d", "e")}


def induced_kernel_morphism(sq: Square) -> Mor:
    """Ker(top) -> Ker(bottom) induced by the left vertical."""
    return factor_through_kernel(ker(sq.bottom), sq.left @ ker(sq.top))


def induced_cokernel_morphism(sq: Square) -> Mor:
    """Coker(top) -> Coker(bottom) induced by the right vertical."""
    return factor_through_cokernel(coker(sq.top), coker(sq.bottom) @ sq.right)


@dataclass(frozen=True)
class ThreeByThreeIsos:
    lambda_iso: Mor
    mu_iso: Mor


def three_by_three(sq: Square) -> ThreeByThreeIsos:
    """The comparison isos between iterated kernels and iterated cokernels."""
    f, a, b, g = sq.top, sq.left, sq.right, sq.bottom
    f_hat = induced_kernel_morphism(sq.transposed())   # Ker a -> Ker b
    a_hat = induced_kernel_morphism(sq)                # Ker f -> Ker g
    g_chk = induced_cokernel_morphism(sq.transposed())  # Coker a -> Coker b
    b_chk = induced_cokernel_morphism(sq)              # Coker f -> Coker g
    lam = factor_through_kernel(ker(f) @ ker(a_hat), ker(a) @ ker(f_hat))
    mu = factor_through_cokernel(coker(g_chk) @ coker(b), coker(b_chk) @ coker(g))
    if not (is_iso(lam) and is_iso(mu)):
        raise InternalInvariantViolation("3x3 comparison is not an isomorphism")
    return ThreeByThreeIsos(lam, mu)


def is_pullback(sq: Square) -> bool:
    """Whether sq (legs top, left) is a pullback of (right, bottom)."""
    p1, p2 = sq.backend.pullback(sq.right, sq.bottom)
    u = sq.backend.pullback_factor(p1, p2, sq.top, sq.left)
    return u is not None and p1 @ u == sq.top and p2 @ u == sq.left and is_iso(u)


def is_pushout(sq: Square) -> bool:
    """Whether sq (legs right, bottom) is a pushout of (top, left)."""
    i1, i2 = sq.backend.pushout(sq.top, sq.left)
    u = sq.backend.pushout_factor(i1, i2, sq.right, sq.bottom)
    return u is not None and u @ i1 == sq.right and u @ i2 == sq.bottom and is_iso(u)


def pullback(f: Mor, g: Mor) -> tuple[Obj, Mor, Mor]:
    _same(f, g)
    p1, p2 = f.backend.pullback(f, g)
    return p1.dom, p1, p2


def pushout(f: Mor, g: Mor) -> tuple[Obj, Mor, Mor]:
    _same(f, g)
    i1, i2 = f.backend.pushout(f, g)
    return i1.cod, i1, i2


def pullback_factor(p1: Mor, p2: Mor, x1: Mor, x2: Mor) -> Mor:
    u = p1.backend.pullback_factor(p1, p2, x1, x2)
    if u is None or p1 @ u != x1 or p2 @ u != x2:
        raise FactorizationFailure("cone does not factor through the pullback")
    return u


def pushout_factor(i1: Mor, i2: Mor, y1: Mor, y2: Mor) -> Mor:
    u = i1.backend.pushout_factor(i1, i2, y1, y2)
    if u is None or u @ i1 != y1 or u @ i2 != y2:
        raise FactorizationFailure("cocone does not factor through the pushout")
    return u


def verify_pullback_lemma(sq: Square) -> bool:
    """For a square (top b, left a, right c, bottom d) with c N-monic, the
    square (ker b, â, a, ker d) is a pullback."""
    if not n_mono(sq.right):
        raise HypothesisViolated(["right vertical N-mono"])
    a_hat = induced_kernel_morphism(sq)
    return is_pullback(Square(ker(sq.top), a_hat, sq.left, ker(sq.bottom), "kernel square"))
