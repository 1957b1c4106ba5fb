"""The closure order on 2x2 *congruence classes.

``reachable(M, N)`` decides whether the class of M is contained in the
closure of the class of N, i.e. whether arbitrarily small perturbations of M
reach class N.  The order is generated by:

    zero        -> everything
    udz(l)      -> hyp(s)                 always
    udz(l)      -> pair(m, n)             iff l = a m + b n with a, b >= 0
    udz(l)      -> delta(t)               iff Im(l conj(t)) >= 0
    pair(l,-l)  -> delta(t)               iff t = +-l

plus reflexivity (the lazy, length-0 path).  Everything else is a non-arrow.
Closed-side geometric tests accept a slack of 1e-9 so user-supplied
near-boundary parameters land on the inclusive side.

``hasse_subgraph`` restricts the order to a finite vertex set and emits its
transitive reduction; no covering relation on the infinite poset is claimed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DuplicateVertex, InvalidInput
from .forms import (
    CanonicalForm,
    DeltaTau,
    Hyperbolic,
    UnitDirectZero,
    UnitPair,
    Zero,
    format_form,
)
from .linalg import _check_scalar
from .stratify import codimension

GEOM_TOL = 1e-9


def _require_unimodular(z: complex, name: str) -> complex:
    z = _check_scalar(z, name)
    if abs(abs(z) - 1.0) > 1e-9:
        raise InvalidInput(f"{name} must be unimodular")
    return z / abs(z)


def _cone_coefficients(lam: complex, mu: complex, nu: complex):
    """Solve a mu + b nu = lam over the reals; None when mu, nu are dependent."""
    det = mu.real * nu.imag - nu.real * mu.imag
    if abs(det) <= 1e-12:
        return None
    a = (lam.real * nu.imag - nu.real * lam.imag) / det
    b = (mu.real * lam.imag - lam.real * mu.imag) / det
    return a, b


def in_cone(lam: complex, mu: complex, nu: complex, tol: float = GEOM_TOL) -> bool:
    """Whether lam lies in the closed cone {a mu + b nu : a, b >= 0}."""
    lam = _require_unimodular(lam, "lambda")
    mu = _require_unimodular(mu, "mu")
    nu = _require_unimodular(nu, "nu")
    if abs(mu - nu) <= tol:
        return abs(lam - mu) <= tol
    if abs(mu + nu) <= tol:
        return abs(lam - mu) <= tol or abs(lam + mu) <= tol
    coeffs = _cone_coefficients(lam, mu, nu)
    if coeffs is None:
        # dependent generators below the caller's tolerance: line through mu
        return abs(lam - mu) <= tol or abs(lam + mu) <= tol
    a, b = coeffs
    return a >= -tol and b >= -tol


def cone_distance(lam: complex, mu: complex, nu: complex) -> float:
    """Euclidean distance from lam to the closed cone mu R+ + nu R+.

    Degenerate generators collapse at the same tolerance in_cone uses, so a
    positive distance is reported exactly when in_cone refuses.
    """
    lam = _require_unimodular(lam, "lambda")
    mu = _require_unimodular(mu, "mu")
    nu = _require_unimodular(nu, "nu")

    def ray_dist(p: complex, u: complex) -> float:
        t = max((p * u.conjugate()).real, 0.0)
        return abs(p - t * u)

    if abs(mu - nu) <= GEOM_TOL:
        return ray_dist(lam, mu)
    coeffs = _cone_coefficients(lam, mu, nu)
    if abs(mu + nu) <= GEOM_TOL or coeffs is None:
        # degenerate cone is the full line mu R
        return min(ray_dist(lam, mu), ray_dist(lam, -mu))
    a, b = coeffs
    if a >= 0.0 and b >= 0.0:
        return 0.0
    return min(ray_dist(lam, mu), ray_dist(lam, nu))


def half_plane_ok(lam: complex, tau: complex, tol: float = GEOM_TOL) -> bool:
    """Whether Im(lam conj(tau)) >= 0 (boundary included)."""
    lam = _require_unimodular(lam, "lambda")
    tau = _require_unimodular(tau, "tau")
    return (lam * tau.conjugate()).imag >= -tol


def reachable(source: CanonicalForm, target: CanonicalForm, tol: float = GEOM_TOL) -> bool:
    """Whether the class of ``source`` is contained in the closure of ``target``."""
    if source == target:
        return True
    if isinstance(source, Zero):
        return True
    if isinstance(source, UnitDirectZero):
        if isinstance(target, Hyperbolic):
            return True
        if isinstance(target, UnitPair):
            return in_cone(source.lam, target.mu, target.nu, tol)
        if isinstance(target, DeltaTau):
            return half_plane_ok(source.lam, target.tau, tol)
        return False
    if isinstance(source, UnitPair) and source.antipodal and isinstance(target, DeltaTau):
        return abs(target.tau - source.mu) <= tol or abs(target.tau + source.mu) <= tol
    return False


def codim_monotone_check(source: CanonicalForm, target: CanonicalForm) -> bool:
    """Runtime self-check: every arrow strictly decreases codimension."""
    if not reachable(source, target) or source == target:
        return True
    return codimension(source) > codimension(target)


@dataclass(frozen=True)
class HasseSubgraph:
    vertices: tuple[CanonicalForm, ...]
    edges: tuple[tuple[int, int], ...]


def hasse_subgraph(vertices) -> HasseSubgraph:
    """Transitive reduction of the closure order on a finite vertex set."""
    verts = tuple(vertices)
    if len(verts) > 10**4:
        raise InvalidInput("at most 10^4 vertices supported")
    seen = set()
    for v in verts:
        if v in seen:
            raise DuplicateVertex(f"duplicate vertex {format_form(v)}")
        seen.add(v)
    n = len(verts)
    R = np.zeros((n, n), dtype=bool)
    for i in range(n):
        for j in range(n):
            if i != j and reachable(verts[i], verts[j]):
                R[i, j] = True
    # an edge is redundant iff a 2-step path exists inside the relation
    implied = (R.astype(np.uint16) @ R.astype(np.uint16)) > 0
    reduced = R & ~implied
    edges = tuple((i, j) for i in range(n) for j in range(n) if reduced[i, j])
    return HasseSubgraph(verts, edges)


def to_dot(graph: HasseSubgraph) -> str:
    """Deterministic DOT rendering, rank layers grouped by codimension."""
    ids = [format_form(v) for v in graph.vertices]
    codims = [codimension(v) for v in graph.vertices]
    lines = ["digraph closure {", "  rankdir=BT;", "  node [shape=box];"]
    for level in sorted(set(codims), reverse=True):
        members = sorted(ids[i] for i in range(len(ids)) if codims[i] == level)
        group = " ".join(f'"{m}";' for m in members)
        lines.append(f"  {{ rank=same; {group} }}")
    for nid, cd in sorted(zip(ids, codims)):
        lines.append(f'  "{nid}" [label="{nid}\\ncodim {cd}"];')
    edge_strs = sorted(f'  "{ids[i]}" -> "{ids[j]}";' for i, j in graph.edges)
    lines.extend(edge_strs)
    lines.append("}")
    return "\n".join(lines) + "\n"
