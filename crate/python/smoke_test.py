"""Smoke test for the magic_ehrhart extension module.

Build first with `maturin develop` inside crates/python, then run
`python python/smoke_test.py`.
"""

import itertools
from fractions import Fraction
from math import comb

import magic_ehrhart as me


def brute_force_count(g, k):
    m = len(g.edges)
    return sum(
        1
        for labels in itertools.product(range(k + 1), repeat=m)
        if g.magic_index(list(labels)) is not None
    )


def main():
    g4 = me.Graph.gn(4)
    assert len(g4.vertices) == 10 and len(g4) == len(g4.edges) == 12

    for k in range(3):
        assert me.count(g4, k) == brute_force_count(g4, k)
    for k in range(8):
        assert me.count(g4, k) == comb(k + 4, 4) + me.f_n(3, k)
    assert me.series(g4, 5) == [me.closed_form_mn(4, k) for k in range(6)]

    q = me.ehrhart(g4)
    assert q.minimum_quasiperiod() == 3
    assert q.period == 3
    for k in range(12):
        assert q(k) == me.closed_form_mn(4, k)
    assert isinstance(q(1), Fraction)

    d, den = me.polytope_summary(g4)
    assert den == 3 and d > 0
    for v in me.vertices(g4):
        labels = [x * den for x in v]
        assert all(x.denominator == 1 for x in labels)
        assert g4.magic_index([int(x) for x in labels]) is not None

    for labels, height in me.cf_elements(g4):
        assert me.refute_completely_fundamental(g4, labels, height) is None

    c6 = me.Graph.cycle(6)
    pieces = me.stanley_decompose(c6, [2] * 6)
    assert [sum(col) for col in zip(*pieces)] == [2] * 6
    assert all(c6.magic_index(p) == 1 for p in pieces)

    verdict, _ = me.certify_small_quasiperiod(me.Graph.path(4))
    assert verdict == "polynomial"

    results = me.verify_paper("two-loops")
    assert results and all(ok for _, ok, _ in results), results

    g = me.Graph.from_json(g4.to_json())
    assert g.hash() == g4.hash()

    print("smoke test passed")


if __name__ == "__main__":
    main()
