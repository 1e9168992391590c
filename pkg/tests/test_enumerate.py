"""Orbit enumeration against naive labelled enumeration."""

import itertools

import pytest

from lambek_chase.harness import enumerate as en
from lambek_chase.harness.campaign import SUITES


def labelled(shape, sizes, ok):
    cands = [en.all_tables(sizes[s], sizes[d]) for s, d in shape.arrows]
    return sum(1 for ts in itertools.product(*cands) if ok(list(ts)))


def null(t):
    return not any(t)


def c(g, f):
    return en.compose_tables(g, f)


def pair_ok(ts):
    return null(c(ts[1], ts[0]))


def two_square_ok(ts):
    f, g, fp, gp, a, b, cc = ts
    return (null(c(g, f)) and null(c(gp, fp))
            and c(b, f) == c(fp, a) and c(cc, g) == c(gp, b))


def canonical(shape, sizes, tables):
    perms = [en._perms(n) for n in sizes]
    inv = [{p: en._inv(p) for p in pl} for pl in perms]
    return min(tuple(en._act(h, s, d, t, inv) for (s, d), t in zip(shape.arrows, tables))
               for h in itertools.product(*perms))


def weighted(shape, sizes, keep):
    classes = list(en.enumerate_classes(shape, sizes, keep))
    return classes, sum(L.multiplicity for L in classes)


@pytest.mark.parametrize("sizes", list(en.size_tuples(3, 3)))
def test_pairs_match_labelled_count(sizes):
    classes, total = weighted(en.PAIR, sizes, en.pair_filter())
    assert total == labelled(en.PAIR, sizes, pair_ok)
    reps = {canonical(en.PAIR, sizes, L.tables) for L in classes}
    assert len(reps) == len(classes)


TWO_SQUARE_SIZES = [(2, 2, 2, 2, 2, 2), (1, 3, 2, 2, 3, 1), (2, 3, 3, 2, 2, 3), (3, 2, 3, 3, 3, 2),
                    (3, 3, 3, 1, 3, 3)]


@pytest.mark.parametrize("sizes", TWO_SQUARE_SIZES)
def test_two_squares_match_labelled_count(sizes):
    classes, total = weighted(en.TWO_SQUARE, sizes, en.two_square_filter())
    assert total == labelled(en.TWO_SQUARE, sizes, two_square_ok)
    reps = {canonical(en.TWO_SQUARE, sizes, L.tables) for L in classes}
    assert len(reps) == len(classes)


@pytest.mark.parametrize("sizes", TWO_SQUARE_SIZES[:3])
def test_suite_filters_select_their_hypotheses(sizes):
    def b_exact(ts):
        return two_square_ok(ts) and en.injective_off_kernel_table(ts[5])

    def rows_exact(ts):
        return (b_exact(ts) and en.exact_at_tables(ts[0], ts[1])
                and en.exact_at_tables(ts[2], ts[3]))

    for suite, ok in (("nomura1", b_exact), ("lambek-iso", rows_exact)):
        keep = en.two_square_filter(SUITES[suite].table_filter)
        assert weighted(en.TWO_SQUARE, sizes, keep)[1] == labelled(en.TWO_SQUARE, sizes, ok)


def test_all_two_squares_up_to_two():
    for sizes in en.size_tuples(6, 2):
        assert (weighted(en.TWO_SQUARE, sizes, en.two_square_filter())[1]
                == labelled(en.TWO_SQUARE, sizes, two_square_ok))
