"""Perturbation witnesses, obstruction certificates, neighborhood sampling.

For every arrow of the closure order, :func:`witness` builds an explicit
perturbation E with ||E||_F <= delta such that realize(source) + E lies in
the target class, together with the *congruence S carrying realize(target)
onto it.  For every non-arrow, :func:`no_arrow_certificate` returns a named
invariant with a positive margin proving the arrow cannot exist.

:func:`sample_neighborhood` probes the defining property empirically: it
classifies a deterministic Monte Carlo sample of the Frobenius delta-ball
around a class representative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .canonical import FAMILY_CODES, classify, classify_many
from .closure import cone_distance, _cone_coefficients, reachable
from .errors import (
    ArrowExists,
    CertificateNotFound,
    DegenerateDelta,
    InvalidInput,
    NoArrow,
    StarcongError,
)
from .forms import (
    DELTA2,
    CanonicalForm,
    DeltaTau,
    Hyperbolic,
    UnitDirectZero,
    UnitPair,
    Zero,
    format_complex,
    format_form,
    forms_close,
    realize,
)
from .linalg import det2, eigenvalues2, frob, inverse2
from .rng import substream_seeds, uniform_step
from .stratify import codimension

#: Parameter agreement required when verifying a witness by classification.
WITNESS_PARAM_TOL = 1e-6

CERTIFICATE_KINDS = (
    "CodimMonotonicity",
    "SpectrumGap",
    "ConeMargin",
    "HalfPlaneMargin",
    "DetPhaseGap",
    "HermitianRankGap",
)


@dataclass(frozen=True)
class Witness:
    E: np.ndarray
    S: np.ndarray | None
    norm_E: float

    def to_json_dict(self) -> dict:
        out = {
            "E": [[format_complex(complex(self.E[i, j])) for j in range(2)] for i in range(2)],
            "norm_E": self.norm_E,
        }
        if self.S is not None:
            out["S"] = [[format_complex(complex(self.S[i, j])) for j in range(2)] for i in range(2)]
        return out


@dataclass(frozen=True)
class ObstructionCertificate:
    kind: str
    margin: float
    data: dict = field(default_factory=dict)

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "margin": self.margin, "data": dict(self.data)}


@dataclass(frozen=True)
class NeighborhoodReport:
    source: CanonicalForm
    delta: float
    samples: int
    seed: int
    histogram: dict
    spectrum_drift: dict
    max_spectrum_drift: float | None

    def to_json_dict(self) -> dict:
        return {
            "source": format_form(self.source),
            "delta": self.delta,
            "samples": self.samples,
            "seed": self.seed,
            "histogram": dict(self.histogram),
            "spectrum_drift": {k: dict(v) for k, v in self.spectrum_drift.items()},
            "max_spectrum_drift": self.max_spectrum_drift,
        }


# --- witnesses ----------------------------------------------------------------


def witness(source: CanonicalForm, target: CanonicalForm, delta: float, seed: int = 0) -> Witness:
    """Perturbation E with ||E||_F <= delta moving ``source`` into class ``target``.

    The construction is deterministic; ``seed`` is accepted for interface
    stability and echoed by the CLI report.  Raises NoArrow (carrying an
    obstruction certificate) when the move is impossible.
    """
    if not isinstance(delta, (int, float)) or delta <= 0.0:
        raise DegenerateDelta(f"delta must be positive, got {delta!r}")
    if delta > 0.1:
        raise InvalidInput("delta must be at most 0.1")
    if source == target:
        raise InvalidInput("source and target must differ (the lazy path needs no witness)")
    if not reachable(source, target):
        cert = no_arrow_certificate(source, target)
        raise NoArrow(
            f"no arrow {format_form(source)} -> {format_form(target)}: "
            f"{cert.kind} margin {cert.margin:.6g}",
            cert,
        )

    if isinstance(source, Zero):
        E, S = _witness_from_zero(target, delta)
    elif isinstance(source, UnitDirectZero) and isinstance(target, UnitPair):
        E, S = _witness_udz_pair(source, target, delta)
    elif isinstance(source, UnitDirectZero) and isinstance(target, Hyperbolic):
        E, S = _witness_udz_hyp(source, target, delta)
    elif isinstance(source, UnitDirectZero) and isinstance(target, DeltaTau):
        E, S = _witness_udz_delta(source, target, delta)
    elif isinstance(source, UnitPair) and isinstance(target, DeltaTau):
        E, S = _witness_pair_delta(source, target, delta)
    else:  # pragma: no cover - reachable() already excludes everything else
        raise InvalidInput(f"unsupported arrow {format_form(source)} -> {format_form(target)}")

    _verify_witness(source, target, E, S, delta)
    return Witness(E=E, S=S, norm_E=frob(E))


def _verify_witness(source, target, E, S, delta):
    norm_e = frob(E)
    if norm_e > delta * (1.0 + 1e-12):
        raise StarcongError(f"witness construction exceeded budget: {norm_e} > {delta}")
    perturbed = realize(source) + E
    if S is not None:
        carried = S.conj().T @ realize(target) @ S
        if frob(carried - perturbed) > 1e-10 * max(frob(perturbed), 1.0):
            raise StarcongError("witness congruence identity failed")
    tol = 1e-9
    if not isinstance(target, (UnitDirectZero, Zero)) and abs(det2(realize(target))) > 0.0:
        # nearly singular matrices in a nonsingular class: let the rank test
        # see the actual determinant scale
        drel = abs(det2(perturbed)) / frob(perturbed) ** 2
        tol = min(1e-9, max(1e-15, drel / 100.0))
    got = classify(perturbed, tol).form
    if not forms_close(got, target, WITNESS_PARAM_TOL):
        raise StarcongError(
            f"witness verification failed: classified {format_form(got)}, "
            f"wanted {format_form(target)}")


def _witness_from_zero(target, delta):
    R = realize(target)
    scale = delta / frob(R)
    E = scale * R
    S = math.sqrt(scale) * np.eye(2, dtype=np.complex128)
    return E, S


def _shrink(build, delta, start=1.0):
    """Halve the construction scale until the perturbation fits the budget."""
    f = start
    for _ in range(200):
        E, S = build(f)
        if frob(E) <= delta:
            return E, S
        f /= 2.0
    raise StarcongError("perturbation did not shrink below the budget")


def _clamp_corner(E):
    # the first construction equation makes E[0,0] vanish; clear the rounding
    # residue, but keep any genuine mismatch from a tolerance-side boundary
    if abs(E[0, 0]) <= 1e-12:
        E[0, 0] = 0.0
    return E


def _witness_udz_pair(source, target, delta):
    lam, mu, nu = source.lam, target.mu, target.nu
    # degenerate-generator handling must mirror in_cone, which granted the arrow
    if abs(mu - nu) <= 1e-9:
        a, b = 1.0, 0.0
    elif abs(mu + nu) <= 1e-9:
        a, b = (1.0, 0.0) if abs(lam - mu) <= abs(lam + mu) else (0.0, 1.0)
    else:
        a, b = _cone_coefficients(lam, mu, nu)
        a, b = max(a, 0.0), max(b, 0.0)
    R = realize(target)
    M = realize(source)
    x, z = math.sqrt(a), math.sqrt(b)

    def build(f):
        eta = f
        # keep S nonsingular: the small column avoids the vanishing sqrt
        y, t = (0.0, eta) if a > 0.0 else (eta, 0.0)
        S = np.array([[x, y], [z, t]], dtype=np.complex128)
        E = _clamp_corner(S.conj().T @ R @ S - M)
        return E, S

    return _shrink(build, delta, start=min(0.5, delta))


def _witness_udz_hyp(source, target, delta):
    lam, sigma = source.lam, target.sigma
    alpha, beta = sigma.real, sigma.imag
    det = alpha * alpha + beta * beta - 1.0  # nonzero since |sigma| < 1
    u = ((alpha - 1.0) * lam.real + beta * lam.imag) / det
    v = (-beta * lam.real + (1.0 + alpha) * lam.imag) / det
    w = complex(u, v)  # conj(z) x with z = 1
    R = realize(target)
    M = realize(source)

    def build(f):
        S = np.array([[w, 0.0], [1.0, f]], dtype=np.complex128)
        E = _clamp_corner(S.conj().T @ R @ S - M)
        return E, S

    return _shrink(build, delta, start=min(0.5, delta))


def _witness_udz_delta(source, target, delta):
    lam, tau = source.lam, target.tau
    c = np.conj(tau) * lam
    im_c = max(c.imag, 0.0)  # reachable() guarantees >= -1e-9
    R = realize(target)
    M = realize(source)

    def build(f):
        eta = 0.4 * delta * f
        rho = 0.15 * delta * f
        z = math.sqrt(max(im_c, eta))
        x = complex(c.real / (2.0 * z), 0.0)
        if abs(x) < 0.5:
            # padding the imaginary part keeps S well conditioned; the first
            # construction equation only constrains Re(conj(z) x)
            x += 0.5j
        t = rho / abs(x)
        S = np.array([[x, 0.0], [z, t]], dtype=np.complex128)
        E = S.conj().T @ R @ S - M
        return E, S

    return _shrink(build, delta)


def _witness_pair_delta(source, target, delta):
    lam = source.mu
    sign = 1.0 if abs(target.tau - lam) <= abs(target.tau + lam) else -1.0
    R = realize(target)
    M = realize(source)
    s0_inv = np.array([[0.5, 0.5], [1.0, -1.0]], dtype=np.complex128)
    d1 = np.diag([1.0, -1.0]).astype(np.complex128)

    def build(f):
        eps = 0.45 * delta * f
        E = sign * 1j * eps * lam * np.array([[1.0, -1.0], [-1.0, 1.0]], dtype=np.complex128)
        sd_inv = np.diag([1.0 / math.sqrt(eps), math.sqrt(eps)]).astype(np.complex128)
        S = sd_inv @ s0_inv if sign > 0 else sd_inv @ d1 @ s0_inv
        return E, S

    return _shrink(build, delta)


def witness_refinement_check(source, target, deltas=(1e-2, 1e-4, 1e-6), seed: int = 0) -> bool:
    """Witness succeeds at every delta in the list (arbitrarily-small probe)."""
    for d in deltas:
        witness(source, target, d, seed)
    return True


# --- obstruction certificates ---------------------------------------------------


def _cosquare_spectrum(form) -> tuple[complex, complex]:
    R = realize(form)
    return eigenvalues2(inverse2(R).conj().T @ R)


def _hausdorff(set_a, set_b) -> float:
    fwd = max(min(abs(a - b) for b in set_b) for a in set_a)
    bwd = max(min(abs(b - a) for a in set_a) for b in set_b)
    return max(fwd, bwd)


def no_arrow_certificate(source: CanonicalForm, target: CanonicalForm) -> ObstructionCertificate:
    """First applicable obstruction proving there is no arrow source -> target."""
    if source == target:
        raise InvalidInput("source and target must differ")
    if reachable(source, target):
        raise ArrowExists(f"{format_form(source)} -> {format_form(target)} is reachable")

    cm, cn = codimension(source), codimension(target)
    if cm <= cn:
        return ObstructionCertificate(
            "CodimMonotonicity",
            margin=float(cn - cm + 1),
            data={"codim_source": cm, "codim_target": cn},
        )

    det_m = det2(realize(source))
    spectrum_target_ok = (
        (isinstance(target, UnitPair) and not target.equal_pair and not target.antipodal)
        or (isinstance(target, Hyperbolic) and target.sigma != 0)
    )
    if abs(det_m) > 0.0 and spectrum_target_ok:
        spec_m = _cosquare_spectrum(source)
        spec_n = _cosquare_spectrum(target)
        gap = _hausdorff(spec_m, spec_n)
        if gap > 1e-12:
            return ObstructionCertificate(
                "SpectrumGap",
                margin=gap,
                data={
                    "spectrum_source": [format_complex(s) for s in spec_m],
                    "spectrum_target": [format_complex(s) for s in spec_n],
                },
            )

    if isinstance(source, UnitDirectZero) and isinstance(target, UnitPair):
        dist = cone_distance(source.lam, target.mu, target.nu)
        if dist > 0.0:
            return ObstructionCertificate(
                "ConeMargin", margin=dist,
                data={"lambda": format_complex(source.lam)})

    if isinstance(source, UnitDirectZero) and isinstance(target, DeltaTau):
        gap = -(source.lam * np.conj(target.tau)).imag
        if gap > 0.0:
            return ObstructionCertificate(
                "HalfPlaneMargin", margin=float(gap),
                data={"im_lambda_conj_tau": float(-gap)})

    det_n = det2(realize(target))
    if abs(det_m) > 0.0:
        if abs(det_n) == 0.0:
            margin = abs(det_m) / frob(realize(source)) ** 2
            return ObstructionCertificate(
                "DetPhaseGap", margin=margin,
                data={"det_source": format_complex(det_m), "det_target": "0"})
        phase_gap = abs(det_m / abs(det_m) - det_n / abs(det_n))
        if phase_gap > 1e-12:
            return ObstructionCertificate(
                "DetPhaseGap", margin=phase_gap,
                data={
                    "det_phase_source": format_complex(det_m / abs(det_m)),
                    "det_phase_target": format_complex(det_n / abs(det_n)),
                })

    if isinstance(source, UnitPair) and source.equal_pair and isinstance(target, DeltaTau):
        # scaled target representative: conj(lambda) tau Delta_2
        B = np.conj(source.mu) * target.tau * DELTA2
        HB = B + B.conj().T
        rank_hb = 2 if abs(det2(HB)) > 1e-9 * frob(HB) ** 2 else 1
        if rank_hb < 2:
            return ObstructionCertificate(
                "HermitianRankGap", margin=1.0,
                data={"rank_source_sum": 2, "rank_target_sum": rank_hb})

    raise CertificateNotFound(
        f"no obstruction certificate for {format_form(source)} -> {format_form(target)}")


# --- neighborhood sampling -------------------------------------------------------


def _ball_sample(seed: int, samples: int, delta: float) -> np.ndarray:
    """Uniform draws from the Frobenius delta-ball, one sub-stream per sample."""
    states = substream_seeds(seed, samples)
    coords = np.zeros((samples, 8))
    pending = np.ones(samples, dtype=bool)
    while np.any(pending):
        active = states[pending]
        pts = np.empty((active.shape[0], 8))
        for k in range(8):
            active, u = uniform_step(active)
            pts[:, k] = 2.0 * u - 1.0
        states[pending] = active
        inside = np.sum(pts * pts, axis=1) <= 1.0
        idx = np.flatnonzero(pending)
        coords[idx[inside]] = pts[inside]
        pending[idx[inside]] = False
    E = delta * (coords[:, 0::2] + 1j * coords[:, 1::2])
    return E.reshape(samples, 2, 2)


def _drift_stats(values: np.ndarray) -> dict:
    return {
        "min": float(np.min(values)),
        "max": float(np.max(values)),
        "mean": float(np.mean(values)),
    }


def sample_neighborhood(
    source: CanonicalForm, delta: float, samples: int, seed: int = 0
) -> NeighborhoodReport:
    """Empirical class distribution in the delta-ball around realize(source).

    Samples are classified at family level; samples whose decision margin
    falls below the ambiguity cutoff land in a separate "boundary" bucket.
    For nonsingular samples the Hausdorff drift of the cosquare spectrum from
    that of the source representative is aggregated per family.
    Deterministic per (seed, samples).
    """
    if not 0.0 < delta <= 0.1:
        raise InvalidInput("delta must lie in (0, 0.1]")
    if not 0 <= samples <= 10**7:
        raise InvalidInput("samples must lie in [0, 10^7]")
    R = realize(source)
    E = _ball_sample(seed, samples, delta)
    res = classify_many(R[None, :, :] + E, tol=1e-9)

    fam = res["family"]
    histogram = {name: int(np.sum(fam == code)) for code, name in enumerate(FAMILY_CODES)}

    drift_by_family: dict[str, dict] = {}
    max_drift = None
    if abs(det2(R)) > 0.0 and samples > 0:
        p0, q0 = _cosquare_spectrum(source)
        p, q = res["p"], res["q"]
        valid = ~np.isnan(p.real)
        if np.any(valid):
            d_pp = np.abs(p - p0)
            d_pq = np.abs(p - q0)
            d_qp = np.abs(q - p0)
            d_qq = np.abs(q - q0)
            fwd = np.maximum(np.minimum(d_pp, d_pq), np.minimum(d_qp, d_qq))
            bwd = np.maximum(np.minimum(d_pp, d_qp), np.minimum(d_pq, d_qq))
            drift = np.maximum(fwd, bwd)
            max_drift = float(np.max(drift[valid]))
            for code, name in enumerate(FAMILY_CODES):
                mask = valid & (fam == code)
                if np.any(mask):
                    drift_by_family[name] = _drift_stats(drift[mask])

    return NeighborhoodReport(
        source=source,
        delta=float(delta),
        samples=int(samples),
        seed=int(seed),
        histogram=histogram,
        spectrum_drift=drift_by_family,
        max_spectrum_drift=max_drift,
    )
