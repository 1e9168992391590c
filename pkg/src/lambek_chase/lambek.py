"""Lambek's invariants Img S, Ker S of a commutative square and the Lambek
morphism Img S -> Ker T of two adjacent squares."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Mor,
    Obj,
    Square,
    TwoSquareDiagram,
    coim,
    coker,
    factor_through_cokernel,
    factor_through_kernel,
    im,
    inverse,
    is_exact_morphism,
    is_iso,
    is_null,
    ker,
    n_epi,
    n_mono,
    normal_factorization,
    pullback,
    pullback_factor,
    pushout,
    pushout_factor,
)
from .errors import HypothesisViolated, NotNullRows
from .homology import exact_at
from .verdict import VerdictRecord


@dataclass(frozen=True)
class ImgData:
    """Img S = Coker(lam), lam: A -> M, M the pullback of (im b, im g)."""

    M: Obj
    l: Mor        # M -> Img b
    s: Mor        # M -> Img g
    lam: Mor
    q: Mor        # coker lam

    @property
    def obj(self) -> Obj:
        return self.q.cod


@dataclass(frozen=True)
class KerData:
    """Ker S = Ker(rho), rho: N -> D, N the pushout of (coim f, coim a)."""

    N: Obj
    t: Mor        # Coim f -> N
    r: Mor        # Coim a -> N
    rho: Mor
    k: Mor        # ker rho

    @property
    def obj(self) -> Obj:
        return self.k.dom


def img_data(sq: Square) -> ImgData:
    f, a, b, g = sq.top, sq.left, sq.right, sq.bottom
    M, l, s = pullback(im(b), im(g))
    lam = pullback_factor(l, s, factor_through_kernel(im(b), b @ f), factor_through_kernel(im(g), g @ a))
    return ImgData(M, l, s, lam, coker(lam))


def ker_data(sq: Square) -> KerData:
    f, a, b, g = sq.top, sq.left, sq.right, sq.bottom
    N, t, r = pushout(coim(f), coim(a))
    rho = pushout_factor(t, r, factor_through_cokernel(coim(f), b @ f), factor_through_cokernel(coim(a), g @ a))
    return KerData(N, t, r, rho, ker(rho))


def lambek_invariants(sq: Square, side: str) -> tuple[Obj, Mor]:
    """(Img S, coker lambda_S) for side 'img'; (Ker S, ker rho_S) for side 'ker'."""
    if side == "img":
        d = img_data(sq)
        return d.obj, d.q
    if side == "ker":
        d = ker_data(sq)
        return d.obj, d.k
    raise ValueError(f"side must be 'img' or 'ker', not {side!r}")


def img_transpose_iso(sq: Square) -> Mor:
    """Img S -> Img S^t, induced by swapping the pullback legs."""
    d, e = img_data(sq), img_data(sq.transposed())
    u = pullback_factor(e.l, e.s, d.s, d.l)
    return factor_through_cokernel(d.q, e.q @ u)


def ker_transpose_iso(sq: Square) -> Mor:
    """Ker S -> Ker S^t, induced by swapping the pushout legs."""
    d, e = ker_data(sq), ker_data(sq.transposed())
    u = pushout_factor(d.t, d.r, e.r, e.t)
    return factor_through_kernel(e.k, u @ d.k)


@dataclass(frozen=True)
class LambekData:
    img: ImgData          # of S
    ker: KerData          # of T
    b_bar: Mor            # Coim b -> Img b
    Lambda: Mor           # Img S -> Ker T

    @property
    def lambda_s(self) -> Mor:
        return self.img.lam

    @property
    def pullback_vertex(self) -> Obj:
        return self.img.M

    @property
    def l_s(self) -> Mor:
        return self.img.l

    @property
    def img_s(self) -> Obj:
        return self.img.obj

    @property
    def coker_lambda(self) -> Mor:
        return self.img.q

    @property
    def rho_t(self) -> Mor:
        return self.ker.rho

    @property
    def pushout_vertex(self) -> Obj:
        return self.ker.N

    @property
    def r_t(self) -> Mor:
        return self.ker.r

    @property
    def ker_t(self) -> Obj:
        return self.ker.obj

    @property
    def ker_rho(self) -> Mor:
        return self.ker.k

    def defining_identity(self) -> bool:
        """r_T l_S = (ker rho_T) Lambda (coker lambda_S), with Img b and Coim b
        identified through b_bar."""
        lhs = self.r_t @ inverse(self.b_bar) @ self.l_s
        return lhs == self.ker_rho @ self.Lambda @ self.coker_lambda


def require_null_rows(d: TwoSquareDiagram):
    if not is_null(d.g @ d.f):
        raise NotNullRows("top row g f is not null")
    if not is_null(d.gp @ d.fp):
        raise NotNullRows("bottom row g' f' is not null")


def lambek_morphism(d: TwoSquareDiagram) -> LambekData:
    require_null_rows(d)
    if not is_exact_morphism(d.b):
        raise HypothesisViolated(["b exact"])
    img = img_data(d.S)
    kd = ker_data(d.T)
    b_bar = normal_factorization(d.b).mid
    u = kd.r @ inverse(b_bar) @ img.l
    u1 = factor_through_kernel(kd.k, u)
    Lam = factor_through_cokernel(img.q, u1)
    return LambekData(img, kd, b_bar, Lam)


def check_lambek_iso(d: TwoSquareDiagram, strict: bool = True) -> VerdictRecord:
    """Evaluate the isomorphism theorem and the null lemma on d.

    Hypotheses are computed, not assumed.  With ``strict`` a conclusion that
    fails under satisfied hypotheses raises TheoremViolation.
    """
    rec = VerdictRecord("lambek")
    rows_null = rec.flag("rows null", is_null(d.g @ d.f) and is_null(d.gp @ d.fp))
    b_exact = rec.flag("b exact", is_exact_morphism(d.b))
    if rows_null:
        rec.flag("exact at B", exact_at(d.f, d.g))
        rec.flag("exact at B'", exact_at(d.fp, d.gp))
    rec.flag("f N-epi", n_epi(d.f))
    rec.flag("g' N-mono", n_mono(d.gp))
    applicable = rec.flag("Lambda constructed", rows_null and b_exact)
    data = lambek_morphism(d) if applicable else None
    base = {"rows null": rows_null, "b exact": b_exact}
    rec.clause("defining identity", base, lambda: data.defining_identity())
    rec.clause("Lambda iso", {**base, "exact at B": rec.flags.get("exact at B"),
                              "exact at B'": rec.flags.get("exact at B'")},
               lambda: is_iso(data.Lambda))
    rec.clause("Lambda null", {**base, "f N-epi or g' N-mono": rec.flags["f N-epi"] or rec.flags["g' N-mono"]},
               lambda: is_null(data.Lambda))
    if data is not None:
        rec.objects.update({"Img S": data.img_s, "Ker T": data.ker_t})
    if strict:
        rec.raise_on_failure()
    return rec


def lambda_unique(data: LambekData, other: Mor) -> bool:
    """Whether `other` (Img S -> Ker T) also satisfies the defining identity;
    by uniqueness this must force other == Lambda."""
    lhs = data.r_t @ inverse(data.b_bar) @ data.l_s
    return lhs == data.ker_rho @ other @ data.coker_lambda
