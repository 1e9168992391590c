"""Verification campaigns: many diagrams, one theorem suite.

A campaign draws diagrams from the seeded generators (or, for pointed sets,
enumerates every isomorphism class up to a size bound), runs one suite on
each and collects pass / skip / fail per trial.  "skip" means the suite's
hypotheses were not met, so nothing was claimed.  A fail carries the
offending diagram as a counterexample.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator

from ..core import (
    TwoSquareDiagram,
    coker,
    is_exact_morphism,
    is_cokernel,
    is_iso,
    is_kernel,
    ker,
    pullback,
    pushout,
)
from ..errors import HypothesisViolated, LambekChaseError, TheoremViolation
from ..fgab import homology_formula, lambek_group_formula
from ..homology import composition_sequence, exact_at, homology, homology_pair
from ..lambek import check_lambek_iso, lambek_invariants
from ..nomura import (
    five_lemma,
    kernel_row_exactness,
    nomura_first_exactness,
    nomura_second_exactness,
    short_exact_corollary,
)
from ..pset import PSET
from . import enumerate as en
from .generate import DEFAULT, GeneratorConfig, generate_diagram, random_composable, random_hom
from .io import DiagramFile
from .oracles import is_cokernel_leg_oracle, is_kernel_leg_oracle, oracle_universal_property
from .report import TrialResult, VerificationReport


@dataclass(frozen=True)
class CampaignSpec:
    suite: str
    backend: str = "fgab"
    trials: int = 100
    seed: int = 0
    exhaustive: bool = False         # pset only: every isomorphism class up to max_size
    max_size: int = 3
    sizes: tuple[int, ...] | None = None          # exhaustive: one object-size tuple only
    constraints: tuple[str, ...] | None = None   # None: the suite's default
    violate: tuple[str, ...] = ()    # keep only diagrams failing these properties
    record_trials: bool = True
    generator: GeneratorConfig = field(default_factory=lambda: DEFAULT)

    def as_params(self) -> dict:
        d = {"suite": self.suite, "seed": self.seed, "exhaustive": self.exhaustive}
        if self.exhaustive:
            d["max_size"] = self.max_size
            if self.sizes is not None:
                d["sizes"] = list(self.sizes)
        else:
            d["trials"] = self.trials
        if self.constraints is not None:
            d["constraints"] = sorted(self.constraints)
        if self.violate:
            d["violate"] = sorted(self.violate)
        return d


class Skip(Exception):
    pass


class Fail(Exception):
    pass


def _must(cond: bool, what: str):
    if not cond:
        raise Fail(what)


# --- suite bodies ------------------------------------------------------------
# Each returns a short detail string, raises Skip when nothing was claimed
# and Fail (or TheoremViolation) when a claim failed.

def _axioms_on(f, g, rng: random.Random | None) -> str:
    """Universal properties of ker/coker of f, pullback/pushout built from
    (f, g), and composition closure of kernels and cokernels."""
    _must(oracle_universal_property("kernel", (f, ker(f))), "kernel universal property")
    _must(oracle_universal_property("cokernel", (f, coker(f))), "cokernel universal property")
    gf = g @ f
    _, p1, p2 = pullback(g, gf)
    _must(oracle_universal_property("pullback", (g, gf, p1, p2)), "pullback universal property")
    _, i1, i2 = pushout(f, gf)
    _must(oracle_universal_property("pushout", (f, gf, i1, i2)), "pushout universal property")
    for k2 in _kernel_legs_into(ker(f).dom, rng):
        m = ker(f) @ k2
        _must(is_kernel(m) and is_kernel_leg_oracle(m), "composite of kernels is a kernel")
    for q2 in _cokernel_legs_out_of(coker(f).cod, rng):
        q = q2 @ coker(f)
        _must(is_cokernel(q) and is_cokernel_leg_oracle(q), "composite of cokernels is a cokernel")
    return ""


def _subsets_with_base(n: int):
    rest = range(1, n)
    for r in range(n):
        for c in itertools.combinations(rest, r):
            yield (0,) + c


def _kernel_legs_into(K, rng):
    """Every kernel leg into a pointed set (as fiber inclusions), or a few
    random ones into an abelian group."""
    if K.backend is PSET:
        n = K.payload
        for S in _subsets_with_base(n):
            h = PSET.map(n, 2, [0 if x in S else 1 for x in range(n)])
            yield ker(h)
    else:
        from .generate import random_group
        for _ in range(2):
            yield ker(random_hom(rng, K, random_group(rng)))


def _cokernel_legs_out_of(Q, rng):
    if Q.backend is PSET:
        n = Q.payload
        for S in _subsets_with_base(n):
            h = PSET.map(len(S), n, list(S))
            yield coker(h)
    else:
        from .generate import random_group
        for _ in range(2):
            yield coker(random_hom(rng, random_group(rng), Q))


def _homology_criterion(pair) -> str:
    f, g = pair
    d = homology_pair(f, g)
    _must(is_iso(d.m), "m(f, g) is an isomorphism")
    _must(d.h_minus.invariant == d.h_plus.invariant, "left and right homology agree")
    return d.h_minus.backend.describe(d.h_minus)


def _homology_oracle(pair) -> str:
    f, g = pair
    H = homology(f, g)
    direct = homology_formula(f, g)
    _must(H.invariant == direct, f"H(f, g) {H.invariant} vs ker g / im f {direct}")
    return H.backend.describe(H)


def _composition(pair) -> str:
    f, g = pair
    cs = composition_sequence(f, g)
    bad = [k for k, v in cs.claims().items() if v is False]
    _must(not bad, "composition lemma: " + ", ".join(bad))
    return ""


def _lambek_oracle(sq) -> str:
    for side in ("img", "ker"):
        X, _ = lambek_invariants(sq, side)
        direct = lambek_group_formula(sq.top, sq.left, sq.right, sq.bottom, side)
        _must(X.invariant == direct, f"{side} invariant {X.invariant} vs formula {direct}")
    return ""


def _lambek_iso(d) -> str:
    rec = check_lambek_iso(d, strict=True)
    needed = ("rows null", "b exact", "exact at B", "exact at B'")
    if not all(rec.flags.get(k) for k in needed):
        raise Skip()
    cl = next(c for c in rec.clauses if c.name == "Lambda iso")
    _must(cl.holds is True, "Lambda is an isomorphism")
    return ""


def _nomura1(d) -> str:
    if not is_exact_morphism(d.b):
        raise HypothesisViolated(["b exact"])
    rec = nomura_first_exactness(d, strict=True)
    try:
        rec2 = short_exact_corollary(d, strict=True)
        p2, s2, _ = rec2.counts()
    except HypothesisViolated:
        p2, s2 = 0, 0
    p, s, _ = rec.counts()
    return f"{p + p2} clauses held, {s + s2} skipped"


def _nomura2(d) -> str:
    failed = [n for n, m in (("b exact", d.b), ("f exact", d.f), ("g' exact", d.gp)) if not is_exact_morphism(m)]
    if failed:
        raise HypothesisViolated(failed)
    rec = nomura_second_exactness(d, strict=True)
    p, s, _ = rec.counts()
    return f"{p} clauses held, {s} skipped"


def _kernel_row(d) -> str:
    rec = kernel_row_exactness(d, strict=True)
    p, s, _ = rec.counts()
    if p == 0:
        raise Skip()
    return f"{p} clauses held"


def _five_lemma(d5) -> str:
    res = five_lemma(d5, require=False, strict=True)
    if res.verdict is None:
        raise Skip()
    _must(res.verdict is True, "explicit isomorphism")
    return res.h_ker.backend.describe(res.h_ker)


@dataclass(frozen=True)
class Suite:
    body: Callable
    shape: str                       # pair | composable | square | two-square | five-column
    constraints: tuple[str, ...] = ()
    backends: tuple[str, ...] = ("fgab", "pset")
    table_filter: Callable | None = None    # extra pruning for exhaustive pset runs


def _tf_lambek(sizes, ch, i, t):
    if i == 1 and not en.exact_at_tables(ch[0], t):
        return False
    if i == 3 and not en.exact_at_tables(ch[2], t):
        return False
    return not (i == 5 and not en.injective_off_kernel_table(t))


def _tf_b_exact(sizes, ch, i, t):
    return not (i == 5 and not en.injective_off_kernel_table(t))


def _tf_nomura2(sizes, ch, i, t):
    if i in (0, 3, 5):
        return en.injective_off_kernel_table(t)
    return True


def _tf_five(sizes, ch, i, t):
    # arrows f g h k f' g' h' k' a b c d e; top exact at C, D; bottom exact
    # at B', C'; h, c, g' exact
    if i == 2:
        return en.exact_at_tables(ch[1], t) and en.injective_off_kernel_table(t)
    if i == 3:
        return en.exact_at_tables(ch[2], t)
    if i == 5:
        return en.exact_at_tables(ch[4], t) and en.injective_off_kernel_table(t)
    if i == 6:
        return en.exact_at_tables(ch[5], t)
    if i == 10:
        return en.injective_off_kernel_table(t)
    return True


SUITES: dict[str, Suite] = {
    "axioms": Suite(None, "composable"),
    "homology-criterion": Suite(_homology_criterion, "pair"),
    "homology-oracle": Suite(_homology_oracle, "pair", backends=("fgab",)),
    "composition": Suite(_composition, "composable"),
    "lambek-oracle": Suite(_lambek_oracle, "square", backends=("fgab",)),
    "lambek-iso": Suite(_lambek_iso, "two-square", ("rows-exact", "b-exact"), table_filter=_tf_lambek),
    "nomura1": Suite(_nomura1, "two-square", ("b-exact",), table_filter=_tf_b_exact),
    "nomura1-null": Suite(_nomura1, "two-square", ("b-exact",), table_filter=_tf_b_exact),
    "nomura2": Suite(_nomura2, "two-square", ("b-exact", "f-exact", "g'-exact"), table_filter=_tf_nomura2),
    "kernel-row": Suite(_kernel_row, "two-square"),
    "five-lemma": Suite(_five_lemma, "five-column", ("rows-exact",), table_filter=_tf_five),
}


# --- diagram sources ---------------------------------------------------------

_VIOLATIONS = {
    "b-exact": lambda d: is_exact_morphism(d.b),
    "rows-exact": lambda d: exact_at(d.f, d.g) and exact_at(d.fp, d.gp),
    "f-exact": lambda d: is_exact_morphism(d.f),
    "g'-exact": lambda d: is_exact_morphism(d.gp),
}


def _random_items(spec: CampaignSpec, suite: Suite) -> Iterator[tuple[int, object, int]]:
    cs = suite.constraints if spec.constraints is None else spec.constraints
    cs = tuple(c for c in cs if c not in spec.violate)
    for i in range(spec.trials):
        seed = spec.seed * 1_000_003 + i
        if suite.shape == "composable":
            yield i, random_composable(spec.backend, seed, spec.generator), 1
            continue
        if spec.violate:
            for attempt in range(spec.generator.retries):
                d = generate_diagram(spec.backend, suite.shape, f"{seed}v{attempt}", cs, spec.generator)
                if not any(_VIOLATIONS[v](d) for v in spec.violate):
                    break
            else:
                raise LambekChaseError(f"no {spec.backend} diagram violating {spec.violate} in "
                                       f"{spec.generator.retries} draws")
            yield i, d, 1
            continue
        yield i, generate_diagram(spec.backend, suite.shape, seed, cs, spec.generator), 1


_SHAPES = {"pair": en.PAIR, "composable": None, "square": None,
           "two-square": en.TWO_SQUARE, "five-column": en.FIVE_COLUMN}


def _build(shape, L: en.Labelled):
    sizes, tables = L.sizes, L.tables
    ms = [PSET.map(sizes[s], sizes[t], tab) for (s, t), tab in zip(_SHAPES[shape].arrows, tables)]
    if shape == "pair":
        return tuple(ms)
    if shape == "two-square":
        return TwoSquareDiagram(*ms)
    from ..core import FiveColumnDiagram
    return FiveColumnDiagram(*ms)


def _exhaustive_items(spec: CampaignSpec, suite: Suite) -> Iterator[tuple[str, object, int]]:
    if spec.backend != "pset":
        raise ValueError("exhaustive runs are pointed-set only")
    if suite.shape == "composable":
        # all morphisms (and for composition pairs, all composable pairs) up to max_size
        n = spec.max_size
        if suite.body is None:
            for X in range(1, n + 1):
                for Y in range(1, n + 1):
                    for t in en.all_tables(X, Y):
                        yield f"{X}->{Y}:{t}", PSET.map(X, Y, t), 1
            return
        for sizes in en.size_tuples(3, n):
            for L in en.enumerate_classes(en.PAIR, sizes, lambda *a: True):
                yield _label(L), _build("pair", L), L.multiplicity
        return
    if suite.shape == "square":
        raise ValueError("no exhaustive square enumeration")
    shape = _SHAPES[suite.shape]
    if suite.shape == "pair":
        flt = en.pair_filter()
    elif suite.shape == "two-square":
        flt = en.two_square_filter(suite.table_filter)
    else:
        flt = en.five_column_filter(suite.table_filter)
    tuples = [tuple(spec.sizes)] if spec.sizes is not None else en.size_tuples(shape.nobjects, spec.max_size)
    for sizes in tuples:
        for L in en.enumerate_classes(shape, sizes, flt):
            yield _label(L), _build(suite.shape, L), L.multiplicity


def _label(L: en.Labelled) -> str:
    return ",".join(map(str, L.sizes)) + ":" + "|".join("".join(map(str, t)) for t in L.tables)


# --- running -----------------------------------------------------------------

def _counterexample(backend: str, shape: str, item) -> dict | None:
    if shape == "composable":
        ms = item if isinstance(item, tuple) else (item,)
        return {name: repr(m) for name, m in zip("fg", ms)}
    try:
        return DiagramFile.from_diagram(backend, shape, item).to_dict()
    except LambekChaseError:
        return None


def run_trial(suite_name: str, item, backend: str, trial, weight: int = 1, rng=None) -> TrialResult:
    suite = SUITES[suite_name]
    try:
        if suite.body is None:
            if isinstance(item, tuple):
                f, g = item
            else:
                f = item
                g = f.backend.identity(f.cod)
            detail = _axioms_on(f, g, rng or random.Random(str(trial)))
        else:
            detail = suite.body(item)
        return TrialResult(trial, "pass", detail, weight)
    except (Skip, HypothesisViolated) as e:
        return TrialResult(trial, "skip", str(e) if isinstance(e, HypothesisViolated) else "", weight)
    except (Fail, TheoremViolation) as e:
        return TrialResult(trial, "fail", str(e), weight, _counterexample(backend, suite.shape, item))
    except Exception as e:     # a construction broke: report, never swallow
        return TrialResult(trial, "fail", f"{type(e).__name__}: {e}", weight,
                           _counterexample(backend, suite.shape, item))


def run_campaign(spec: CampaignSpec) -> VerificationReport:
    if spec.suite not in SUITES:
        raise ValueError(f"unknown suite {spec.suite!r}; choose from {sorted(SUITES)}")
    suite = SUITES[spec.suite]
    if spec.backend not in suite.backends:
        raise ValueError(f"suite {spec.suite} does not run on {spec.backend}")
    report = VerificationReport(f"campaign {spec.suite}", spec.backend, spec.as_params())
    items = _exhaustive_items(spec, suite) if spec.exhaustive else _random_items(spec, suite)
    results = []
    for trial, item, weight in items:
        rng = random.Random(f"axioms:{spec.seed}:{trial}")
        results.append(run_trial(spec.suite, item, spec.backend, trial, weight, rng))
    if spec.record_trials:
        report.trials = results
    else:
        # long runs keep the failures and a tally only
        report.trials = [r for r in results if r.status == "fail"]
        report.tally = {"pass": 0, "skip": 0, "fail": 0, "labelled": 0}
        for r in results:
            report.tally[r.status] += 1
            report.tally["labelled"] += r.weight
    return report
