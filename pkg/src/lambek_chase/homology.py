"""Left/right homology of null pairs, the comparison m(f, g), exactness at a
node and the six-term sequence attached to a composite gf."""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Mor,
    Obj,
    Square,
    TwoSquareDiagram,
    coker,
    factor_through_cokernel,
    factor_through_kernel,
    induced_cokernel_morphism,
    induced_kernel_morphism,
    is_exact_morphism,
    is_iso,
    is_null,
    ker,
    n_epi,
    n_mono,
    subobject_equal,
    im,
    zero,
)
from .errors import MNotIso, NotNullComposite


@dataclass(frozen=True)
class HomologyData:
    sigma: Mor        # X -> Ker g,     (ker g) sigma = f
    tau: Mor          # Coker f -> Z,   tau (coker f) = g
    h_minus: Obj
    h_plus: Obj
    m: Mor            # H_- -> H_+
    coker_sigma: Mor
    ker_tau: Mor
    k: Mor            # H_- -> Coker f, k coker(sigma) = (coker f) ker g


def _check_null_pair(f: Mor, g: Mor):
    if g.dom != f.cod:
        raise ValueError("f and g are not composable")
    if not is_null(g @ f):
        raise NotNullComposite("g f is not null")


def homology_pair(f: Mor, g: Mor) -> HomologyData:
    _check_null_pair(f, g)
    sigma = factor_through_kernel(ker(g), f)
    tau = factor_through_cokernel(coker(f), g)
    cs, kt = coker(sigma), ker(tau)
    k = factor_through_cokernel(cs, coker(f) @ ker(g))
    m = factor_through_kernel(kt, k)
    return HomologyData(sigma, tau, cs.cod, kt.dom, m, cs, kt, k)


def homology(f: Mor, g: Mor) -> Obj:
    """H(f, g), represented by the left homology."""
    d = homology_pair(f, g)
    if not is_iso(d.m):
        raise MNotIso("m(f, g) is not an isomorphism")
    return d.h_minus


def exact_at(f: Mor, g: Mor) -> bool:
    """im f = ker g as subobjects of the middle object."""
    _check_null_pair(f, g)
    return subobject_equal(im(f), ker(g))


def _null_obj(X: Obj) -> Obj:
    return X.backend.null_object()


def exact_at_start(g: Mor) -> bool:
    """Exactness of (null -> X -g-> Y) at X, i.e. g is N-monic."""
    return exact_at(zero(_null_obj(g.dom), g.dom), g)


def exact_at_end(f: Mor) -> bool:
    """Exactness of (X -f-> Y -> null) at Y, i.e. f is N-epic."""
    return exact_at(f, zero(f.cod, _null_obj(f.cod)))


NODES = ("Ker f", "Ker(gf)", "Ker g", "Coker f", "Coker(gf)", "Coker g")


@dataclass(frozen=True)
class CompositionSequence:
    phi: Mor      # Ker f -> Ker(gf)
    psi: Mor      # Ker(gf) -> Ker g
    chi: Mor      # Ker g -> Coker f
    eps: Mor      # Coker f -> Coker(gf)
    omega: Mor    # Coker(gf) -> Coker g
    exact: dict   # node name -> bool
    null: bool
    f_exact: bool
    g_exact: bool
    phi_exact: bool
    omega_exact: bool
    psi_exact: bool
    eps_exact: bool

    @property
    def objects(self) -> tuple[Obj, ...]:
        return (self.phi.dom, self.psi.dom, self.chi.dom, self.eps.dom, self.omega.dom, self.omega.cod)

    def claims(self) -> dict[str, bool | None]:
        """Each guaranteed property; None where its hypothesis fails."""
        out = {f"exact at {n}": self.exact[n] for n in ("Ker f", "Ker(gf)", "Coker(gf)", "Coker g")}
        out["null sequence"] = self.null
        out["phi exact"] = self.phi_exact
        out["omega exact"] = self.omega_exact
        out["exact at Ker g"] = self.exact["Ker g"] if self.f_exact else None
        out["psi exact"] = self.psi_exact if self.f_exact else None
        out["exact at Coker f"] = self.exact["Coker f"] if self.g_exact else None
        out["eps exact"] = self.eps_exact if self.g_exact else None
        return out


def composition_sequence(f: Mor, g: Mor) -> CompositionSequence:
    if g.dom != f.cod:
        raise ValueError("f and g are not composable")
    gf = g @ f
    phi = factor_through_kernel(ker(gf), ker(f))
    psi = factor_through_kernel(ker(g), f @ ker(gf))
    chi = coker(f) @ ker(g)
    eps = factor_through_cokernel(coker(f), coker(gf) @ g)
    omega = factor_through_cokernel(coker(gf), coker(g))
    seq = (phi, psi, chi, eps, omega)
    null = all(is_null(y @ x) for x, y in zip(seq, seq[1:]))
    exact = {
        "Ker f": n_mono(phi),
        "Ker(gf)": null and exact_at(phi, psi),
        "Ker g": null and exact_at(psi, chi),
        "Coker f": null and exact_at(chi, eps),
        "Coker(gf)": null and exact_at(eps, omega),
        "Coker g": n_epi(omega),
    }
    return CompositionSequence(
        phi, psi, chi, eps, omega, exact, null,
        f_exact=is_exact_morphism(f), g_exact=is_exact_morphism(g),
        phi_exact=is_exact_morphism(phi), omega_exact=is_exact_morphism(omega),
        psi_exact=is_exact_morphism(psi), eps_exact=is_exact_morphism(eps),
    )


def induced_homology_morphism(d: TwoSquareDiagram) -> Mor:
    """h: H(f, g) -> H(f', g') induced by the verticals.

    Computed as the morphism of cokernels of the rows of the square
    (sigma, a, b^, sigma'), where b^: Ker g -> Ker g' is induced by b.
    """
    top = homology_pair(d.f, d.g)
    bot = homology_pair(d.fp, d.gp)
    b_hat = induced_kernel_morphism(Square(d.g, d.b, d.c, d.gp))
    return induced_cokernel_morphism(Square(top.sigma, d.a, b_hat, bot.sigma, "homology square"))


def long_homology(maps: list[Mor]) -> list[Obj]:
    """H at each interior node of a null sequence X0 -> X1 -> ... -> Xn."""
    return [homology(f, g) for f, g in zip(maps, maps[1:])]
