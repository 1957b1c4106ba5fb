import numpy as np
import pytest

from starcong import (
    DeltaTau,
    DuplicateVertex,
    Hyperbolic,
    UnitDirectZero,
    UnitPair,
    Zero,
    codim_monotone_check,
    cone_distance,
    half_plane_ok,
    hasse_subgraph,
    in_cone,
    parse_form,
    reachable,
    to_dot,
)
from starcong.rng import SplitMix64


def unit(theta):
    return complex(np.cos(theta), np.sin(theta))


def test_in_cone_examples():
    c = unit(np.pi / 4)
    assert in_cone(1, c, np.conj(c))            # a = b = 1/sqrt(2)
    assert not in_cone(-1, c, np.conj(c))       # solution is negative
    for nu in (1j, unit(2.2), -1):
        assert in_cone(unit(0.4), unit(0.4), nu)  # a=1, b=0
    assert not in_cone(1, 1j, 1j)               # degenerate cone i R+


def test_in_cone_degenerate_line():
    assert in_cone(1, 1j, -1j) is False
    assert in_cone(1j, 1j, -1j)
    assert in_cone(-1j, 1j, -1j)


def test_cone_distance():
    assert cone_distance(1, 1j, 1j) == pytest.approx(1.0)
    assert cone_distance(1, unit(np.pi / 4), unit(-np.pi / 4)) == 0.0
    assert cone_distance(-1, 1j, -1j) == pytest.approx(1.0)  # line i R
    # outside a sector: the nearest point is on a bounding ray
    d = cone_distance(-1, unit(0.3), unit(-0.3))
    assert d == pytest.approx(abs(-1 - 0 * unit(0.3)))


def test_half_plane_examples():
    assert half_plane_ok(1, -1j)       # Im(i) = 1
    assert not half_plane_ok(1, 1j)    # Im(-i) = -1
    for t in (1, 1j, unit(2.0)):
        assert half_plane_ok(t, t)     # boundary Im = 0 included


def test_reachable_examples():
    assert reachable(Zero(), DeltaTau(unit(np.pi / 3)))
    assert reachable(UnitDirectZero(1), UnitPair(unit(np.pi / 4), unit(-np.pi / 4)))
    assert not reachable(UnitDirectZero(1), DeltaTau(1j))
    assert reachable(UnitPair(1, -1), DeltaTau(-1))
    assert not reachable(UnitPair(1, -1), DeltaTau(1j))
    assert not reachable(UnitPair(1j, 1j), Hyperbolic(0.5))
    assert reachable(UnitDirectZero(unit(0.7)), Hyperbolic(0.99 * unit(2.0)))
    assert reachable(UnitDirectZero(unit(0.7)), UnitPair(unit(0.7), unit(0.7)))
    assert reachable(UnitDirectZero(unit(0.7)), UnitPair(unit(0.7), -unit(0.7)))
    assert not reachable(UnitDirectZero(1), UnitDirectZero(1j))
    assert not reachable(DeltaTau(1), Hyperbolic(0.1))
    assert not reachable(UnitPair(1, unit(1.0)), DeltaTau(1))


def test_reachable_lazy_path():
    for form in (Zero(), UnitDirectZero(1j), UnitPair(1, -1), Hyperbolic(0.3), DeltaTau(-1)):
        assert reachable(form, form)


def random_form(rng: SplitMix64):
    kind = int(rng.uniform() * 5)
    t1 = 2 * np.pi * rng.uniform()
    t2 = 2 * np.pi * rng.uniform()
    if kind == 0:
        return Zero()
    if kind == 1:
        return UnitDirectZero(unit(t1))
    if kind == 2:
        choice = rng.uniform()
        if choice < 0.25:
            return UnitPair(unit(t1), unit(t1))
        if choice < 0.5:
            return UnitPair(unit(t1), -unit(t1))
        return UnitPair(unit(t1), unit(t2))
    if kind == 3:
        return Hyperbolic(0.95 * rng.uniform() * unit(t1))
    return DeltaTau(unit(t1))


def test_partial_order_properties():
    rng = SplitMix64(2024)
    for _ in range(1200):
        a, b, c = random_form(rng), random_form(rng), random_form(rng)
        assert reachable(a, a)
        if a != b and reachable(a, b):
            assert not reachable(b, a)  # antisymmetry
        if reachable(a, b) and reachable(b, c):
            assert reachable(a, c), (a, b, c)  # transitivity


def test_transitive_coherence_through_antipodal_pair():
    for k in range(40):
        lam = unit(0.157 * k + 0.01)
        for tau in (lam, -lam):
            assert reachable(UnitDirectZero(lam), UnitPair(lam, -lam))
            assert reachable(UnitPair(lam, -lam), DeltaTau(tau))
            assert reachable(UnitDirectZero(lam), DeltaTau(tau))


def test_codim_monotone_examples():
    assert codim_monotone_check(UnitDirectZero(1), Hyperbolic(0))
    assert codim_monotone_check(Zero(), DeltaTau(1))
    assert codim_monotone_check(Hyperbolic(0.1), Hyperbolic(0.2))


def test_codim_monotone_random():
    rng = SplitMix64(5)
    for _ in range(300):
        a, b = random_form(rng), random_form(rng)
        assert codim_monotone_check(a, b)


def test_hasse_three_chain():
    g = hasse_subgraph([Zero(), UnitDirectZero(1), Hyperbolic(0)])
    assert g.edges == ((0, 1), (1, 2))  # the direct zero->hyp edge is reduced away


def test_hasse_two_vertices():
    g = hasse_subgraph([Zero(), DeltaTau(1)])
    assert g.edges == ((0, 1),)


def seven_class_set():
    c = complex(2**-0.5, 2**-0.5)
    return [
        parse_form("zero"),
        parse_form("udz(1)"),
        parse_form("pair(1,1)"),
        parse_form("pair(1,-1)"),
        UnitPair(c, np.conj(c)),
        parse_form("hyp(0.3)"),
        parse_form("delta(1)"),
    ]


def test_hasse_seven_class_set():
    verts = seven_class_set()
    g = hasse_subgraph(verts)
    # full relation: zero -> all 6, udz(1) -> the five above it,
    # pair(1,-1) -> delta(1); reduction removes every 2-step shortcut,
    # leaving zero->udz, udz->{both 4-codim pairs, generic pair, hyp},
    # and pair(1,-1)->delta(1)
    names = {0: "zero", 1: "udz", 2: "p11", 3: "p1m1", 4: "pgen", 5: "hyp", 6: "delta"}
    edges = {(names[i], names[j]) for i, j in g.edges}
    assert edges == {
        ("zero", "udz"),
        ("udz", "p11"),
        ("udz", "p1m1"),
        ("udz", "pgen"),
        ("udz", "hyp"),
        ("p1m1", "delta"),
    }


def test_hasse_reduction_idempotent():
    verts = seven_class_set()
    g = hasse_subgraph(verts)
    # no remaining edge is implied by a 2-step path within the reduced set
    reduced = set(g.edges)
    for i, j in reduced:
        for k in range(len(verts)):
            if k not in (i, j):
                assert not ((i, k) in reduced and (k, j) in reduced)


def test_hasse_duplicate_vertex():
    with pytest.raises(DuplicateVertex):
        hasse_subgraph([Zero(), Zero()])


def test_isolated_nodes():
    g = hasse_subgraph([Hyperbolic(0.1), Hyperbolic(0.2)])
    assert g.edges == ()


def test_dot_output_shape():
    dot = to_dot(hasse_subgraph(seven_class_set()))
    assert dot.startswith("digraph closure {")
    assert dot.endswith("}\n")
    assert '"zero" [label="zero\\ncodim 8"];' in dot
    assert '"udz(1)" -> "hyp(0.29999999999999999)";' in dot
    # deterministic: input order must not matter
    dot2 = to_dot(hasse_subgraph(list(reversed(seven_class_set()))))
    assert dot == dot2
