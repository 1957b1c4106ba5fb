import numpy as np
import pytest

from starcong import (
    ArrowExists,
    DegenerateDelta,
    DeltaTau,
    Hyperbolic,
    InvalidInput,
    NoArrow,
    UnitDirectZero,
    UnitPair,
    Zero,
    classify,
    forms_close,
    no_arrow_certificate,
    reachable,
    realize,
    sample_neighborhood,
    star_congruence,
    witness,
    witness_refinement_check,
)
from starcong.jsonutil import render_json
from starcong.rng import SplitMix64


def unit(theta):
    return complex(np.cos(theta), np.sin(theta))


# --- witnesses ---------------------------------------------------------------


def test_witness_from_zero_exact_form():
    w = witness(Zero(), Hyperbolic(0.5), 1e-3)
    R = np.array([[0, 1], [0.5, 0]])
    np.testing.assert_allclose(w.E, (1e-3 / np.sqrt(1.25)) * R, rtol=1e-12)
    assert w.norm_E == pytest.approx(1e-3)


def test_witness_udz_to_nilpotent():
    w = witness(UnitDirectZero(1), Hyperbolic(0), 1e-4)
    perturbed = realize(UnitDirectZero(1)) + w.E
    assert classify(perturbed).form == Hyperbolic(0)
    # construction shape: only the first row is touched
    assert w.E[0, 0] == 0
    assert abs(w.E[1, 0]) == 0 and abs(w.E[1, 1]) == 0


def test_witness_udz_to_pair_zeroes_corner():
    target = UnitPair(unit(np.pi / 4), unit(-np.pi / 4))
    w = witness(UnitDirectZero(1), target, 1e-4)
    assert w.E[0, 0] == 0
    assert w.norm_E <= 1e-4


def test_witness_no_arrow_certificate_attached():
    with pytest.raises(NoArrow) as info:
        witness(UnitDirectZero(1), DeltaTau(1j), 1e-3)
    cert = info.value.certificate
    assert cert.kind == "HalfPlaneMargin"
    assert cert.margin == pytest.approx(1.0)


def test_witness_rejects_bad_delta():
    with pytest.raises(DegenerateDelta):
        witness(Zero(), DeltaTau(1), 0.0)
    with pytest.raises(DegenerateDelta):
        witness(Zero(), DeltaTau(1), -1e-3)
    with pytest.raises(InvalidInput):
        witness(Zero(), DeltaTau(1), 0.5)
    with pytest.raises(InvalidInput):
        witness(DeltaTau(1), DeltaTau(1), 1e-3)


ARROW_CASES = [
    (Zero(), UnitDirectZero(unit(0.3))),
    (Zero(), UnitPair(unit(0.2), unit(1.5))),
    (Zero(), Hyperbolic(0.4 - 0.3j)),
    (Zero(), Hyperbolic(0)),
    (Zero(), DeltaTau(unit(2.4))),
    (UnitDirectZero(unit(0.5)), UnitPair(unit(0.1), unit(1.0))),
    (UnitDirectZero(unit(0.5)), UnitPair(unit(0.5), unit(0.5))),      # cone corner a=1,b=0
    (UnitDirectZero(unit(0.5)), UnitPair(unit(0.5), -unit(0.5))),     # antipodal target
    (UnitDirectZero(unit(0.5)), Hyperbolic(0.3 + 0.4j)),
    (UnitDirectZero(unit(0.5)), Hyperbolic(0)),
    (UnitDirectZero(unit(0.5)), DeltaTau(unit(0.2))),                 # interior half-plane
    (UnitDirectZero(unit(0.5)), DeltaTau(unit(0.5))),                 # boundary Im = 0
    (UnitDirectZero(unit(0.5)), DeltaTau(-unit(0.5))),                # boundary, other sign
    (UnitPair(unit(1.2), -unit(1.2)), DeltaTau(unit(1.2))),
    (UnitPair(unit(1.2), -unit(1.2)), DeltaTau(-unit(1.2))),
]


@pytest.mark.parametrize("src,dst", ARROW_CASES)
@pytest.mark.parametrize("delta", [1e-2, 1e-4, 1e-6])
def test_witness_soundness(src, dst, delta):
    w = witness(src, dst, delta)
    assert w.norm_E <= delta * (1 + 1e-12)
    # witness() already verifies classify(M+E) ~ dst; re-check independently
    # through the congruence identity S* realize(dst) S = realize(src) + E
    assert w.S is not None
    lhs = star_congruence(w.S, realize(dst))
    rhs = realize(src) + w.E
    denom = max(np.linalg.norm(rhs), np.linalg.norm(w.E))
    assert np.linalg.norm(lhs - rhs) <= 1e-10 * max(denom, 1.0)


def test_witness_verifies_class_membership():
    # spot-check the classification outcome outside witness() itself
    src, dst = UnitDirectZero(unit(0.5)), DeltaTau(unit(0.5))
    w = witness(src, dst, 1e-4)
    perturbed = realize(src) + w.E
    drel = abs(np.linalg.det(perturbed)) / np.linalg.norm(perturbed) ** 2
    got = classify(perturbed, tol=min(1e-9, drel / 100)).form
    assert forms_close(got, dst, 1e-6)


def test_witness_refinement_check_examples():
    assert witness_refinement_check(UnitPair(1, -1), DeltaTau(1))
    assert witness_refinement_check(Zero(), UnitPair(1j, -1j))
    assert witness_refinement_check(UnitDirectZero(1), DeltaTau(1))


# --- certificates ------------------------------------------------------------


def test_certificate_spec_examples():
    c = no_arrow_certificate(UnitPair(1, 1), Hyperbolic(0.3))
    assert c.kind == "SpectrumGap"
    assert c.margin == pytest.approx(7 / 3)

    c = no_arrow_certificate(UnitPair(1, 1), DeltaTau(1j))
    assert c.kind == "HermitianRankGap"
    assert c.margin == 1.0

    c = no_arrow_certificate(UnitDirectZero(1), UnitPair(1j, 1j))
    assert c.kind == "ConeMargin"
    assert c.margin == pytest.approx(1.0)

    c = no_arrow_certificate(Hyperbolic(0.1), Hyperbolic(0.2))
    assert c.kind == "CodimMonotonicity"

    c = no_arrow_certificate(UnitDirectZero(1), DeltaTau(1j))
    assert c.kind == "HalfPlaneMargin"
    assert c.margin == pytest.approx(1.0)

    c = no_arrow_certificate(UnitPair(1, -1), DeltaTau(1j))
    assert c.kind == "DetPhaseGap"
    assert c.margin == pytest.approx(2.0)


def test_certificate_det_vanishing_target():
    # antipodal/equal pairs cannot reach the singular nilpotent class; the
    # protected invariant is the determinant magnitude
    c = no_arrow_certificate(UnitPair(1j, 1j), Hyperbolic(0))
    assert c.kind == "DetPhaseGap"
    assert c.margin == pytest.approx(0.5)
    c = no_arrow_certificate(UnitPair(unit(0.4), -unit(0.4)), Hyperbolic(0))
    assert c.kind == "DetPhaseGap"


def test_certificate_errors():
    with pytest.raises(ArrowExists):
        no_arrow_certificate(Zero(), DeltaTau(1))
    with pytest.raises(InvalidInput):
        no_arrow_certificate(DeltaTau(1), DeltaTau(1))


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
        return Hyperbolic(0.9 * rng.uniform() * unit(t1))
    return DeltaTau(unit(t1))


def test_reachable_xor_certificate_random():
    rng = SplitMix64(99)
    for _ in range(500):
        a, b = random_form(rng), random_form(rng)
        if a == b:
            continue
        if reachable(a, b):
            with pytest.raises(ArrowExists):
                no_arrow_certificate(a, b)
        else:
            cert = no_arrow_certificate(a, b)
            assert cert.margin > 0
            assert cert.kind in (
                "CodimMonotonicity", "SpectrumGap", "ConeMargin",
                "HalfPlaneMargin", "DetPhaseGap", "HermitianRankGap")


def test_certificate_soundness_empirical():
    # a certificate with margin m promises no samples of the target class
    # (parameters within m/10) appear in a small ball around the source
    from starcong import AmbiguousClassification
    from starcong.perturb import _ball_sample

    cases = [
        (UnitPair(1, 1), Hyperbolic(0.3)),
        (UnitPair(1, -1), DeltaTau(1j)),
        (UnitDirectZero(1), DeltaTau(1j)),
    ]
    for src, dst in cases:
        cert = no_arrow_certificate(src, dst)
        delta = min(cert.margin / 10.0, 1e-3)
        R = realize(src)
        for E in _ball_sample(17, 2000, delta):
            try:
                got = classify(R + E).form
            except AmbiguousClassification:
                continue
            assert not forms_close(got, dst, cert.margin / 10.0), (src, dst, got)


# --- neighborhood sampling ----------------------------------------------------


def test_sample_neighborhood_pair_stays_pair():
    rep = sample_neighborhood(UnitPair(1, 1), 1e-3, 10_000, seed=0)
    assert rep.histogram["pair"] == 10_000
    assert rep.max_spectrum_drift <= 0.1
    assert sum(rep.histogram.values()) == rep.samples


def test_sample_neighborhood_zero_sees_generic_families():
    rep = sample_neighborhood(Zero(), 1e-3, 10_000, seed=1)
    rare = rep.samples - rep.histogram["pair"] - rep.histogram["hyp"] - rep.histogram["delta"]
    assert rare < 0.01 * rep.samples
    assert rep.max_spectrum_drift is None  # no reference spectrum at zero


def test_sample_neighborhood_spectrum_drift_shrinks():
    lam = unit(0.8)
    coarse = sample_neighborhood(UnitPair(lam, -lam), 1e-3, 5000, seed=3)
    fine = sample_neighborhood(UnitPair(lam, -lam), 1e-4, 5000, seed=3)
    assert coarse.max_spectrum_drift / fine.max_spectrum_drift >= 5.0


def test_sample_neighborhood_deterministic():
    a = sample_neighborhood(DeltaTau(1), 1e-3, 3000, seed=11)
    b = sample_neighborhood(DeltaTau(1), 1e-3, 3000, seed=11)
    assert render_json(a.to_json_dict()) == render_json(b.to_json_dict())
    c = sample_neighborhood(DeltaTau(1), 1e-3, 3000, seed=12)
    assert render_json(a.to_json_dict()) != render_json(c.to_json_dict())


def test_sample_neighborhood_validates():
    with pytest.raises(InvalidInput):
        sample_neighborhood(Zero(), 0.0, 10, seed=0)
    with pytest.raises(InvalidInput):
        sample_neighborhood(Zero(), 0.2, 10, seed=0)
    with pytest.raises(InvalidInput):
        sample_neighborhood(Zero(), 1e-3, 10**7 + 1, seed=0)


def test_near_degenerate_cone_corner():
    # generators that are antipodal only up to 1e-10: the cone predicate
    # collapses them to a line, certificate margins stay consistent with it,
    # and the witness either succeeds or refuses honestly (the target class
    # sits below the parameter resolution of double precision)
    from starcong import StarcongError

    lam = unit(0.5)
    mu = unit(0.5)
    nu = -unit(0.5) * unit(1e-10)
    target = UnitPair(mu, nu)
    assert reachable(UnitDirectZero(lam), target)
    try:
        w = witness(UnitDirectZero(lam), target, 1e-4)
        assert w.norm_E <= 1e-4
    except StarcongError:
        pass

    off = UnitDirectZero(unit(0.5 + 0.4))  # off the collapsed line
    assert not reachable(off, target)
    cert = no_arrow_certificate(off, target)
    assert cert.kind == "ConeMargin" and cert.margin > 0


def test_boundary_bucket_via_classify_many():
    from starcong.canonical import FAMILY_CODES, classify_many

    # relative determinant right at the tolerance: goes to 'boundary'
    stack = np.array([np.diag([1.0, 1.2e-9]), np.diag([1.0, 1.0])], dtype=complex)
    res = classify_many(stack, tol=1e-9)
    assert FAMILY_CODES[res["family"][0]] == "boundary"
    assert FAMILY_CODES[res["family"][1]] == "pair"
