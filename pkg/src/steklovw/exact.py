"""Closed-form per-Fourier-mode Steklov data for flat model domains.

Disk, flat annulus, and the Moebius band realized through its annulus
double cover.  Harmonic functions decompose per angular mode, so stiffness
blocks are 1x1 (disk) or 2x2 (annulus: outer/inner trace).  The Moebius
band never touches a mesh: functions on the band are the involution-
invariant functions on the doubled annulus, which per mode forces the
radial profile r^k + (-1)^k eps^(2k) r^(-k); odd modes therefore see a
Dirichlet condition at the gluing circle and even modes a Neumann one,
and the whole weighted problem collapses to a single boundary circle with
a modified Dirichlet-to-Neumann symbol (see moebius_dtn_symbol).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .spectrum import Spectrum


@dataclass(frozen=True)
class DomainSpec:
    """One of disk | annulus(rho) | moebius(eps) | curve(parametrization)."""

    kind: str
    rho: float | None = None
    eps: float | None = None
    curve: object | None = None

    def __post_init__(self):
        if self.kind == "disk":
            pass
        elif self.kind == "annulus":
            if self.rho is None or not (0.0 < self.rho < 1.0):
                raise ValueError("annulus requires 0 < rho < 1")
        elif self.kind == "moebius":
            if self.eps is None or not (0.0 < self.eps < 1.0):
                raise ValueError("moebius doubling requires 0 < eps < 1")
        elif self.kind == "curve":
            if self.curve is None:
                raise ValueError("curve domain requires a parametrization")
        else:
            raise ValueError(f"unknown domain kind {self.kind!r}")

    @property
    def boundary_count(self) -> int:
        return 2 if self.kind == "annulus" else 1

    @staticmethod
    def disk() -> "DomainSpec":
        return DomainSpec("disk")

    @staticmethod
    def annulus(rho: float) -> "DomainSpec":
        return DomainSpec("annulus", rho=float(rho))

    @staticmethod
    def moebius(eps: float) -> "DomainSpec":
        return DomainSpec("moebius", eps=float(eps))

    @staticmethod
    def smooth_curve(curve) -> "DomainSpec":
        return DomainSpec("curve", curve=curve)

    def to_json_dict(self) -> dict:
        if self.kind == "annulus":
            return {"kind": "annulus", "rho": self.rho}
        if self.kind == "moebius":
            return {"kind": "moebius", "eps": self.eps}
        return {"kind": self.kind}

    @staticmethod
    def from_json_dict(d: dict) -> "DomainSpec":
        kind = d["kind"]
        if kind == "annulus":
            return DomainSpec.annulus(d["rho"])
        if kind == "moebius":
            return DomainSpec.moebius(d["eps"])
        if kind == "disk":
            return DomainSpec.disk()
        raise ValueError(f"cannot deserialize domain kind {kind!r}")


@dataclass(frozen=True)
class ModeBlock:
    """Dirichlet-energy quadratic form of one angular mode.

    For the annulus the form acts on (a_out, a_in), the trace amplitudes
    of cos(k t) (equivalently sin(k t)) on the two circles; for the disk
    it is the 1x1 form on the outer trace.  Angular mass factors (pi for
    k >= 1, 2*pi for k = 0) are included.
    """

    mode: int
    stiffness: np.ndarray
    basis: str

    def __post_init__(self):
        s = np.atleast_2d(np.asarray(self.stiffness, dtype=float))
        s.setflags(write=False)
        object.__setattr__(self, "stiffness", s)


def disk_dtn_symbol(k: int) -> float:
    """Dirichlet-to-Neumann symbol of the unit disk: harmonic r^k -> k."""
    if k < 0:
        raise ValueError("mode must be nonnegative")
    return float(k)


def disk_mode_block(k: int) -> ModeBlock:
    if k == 0:
        return ModeBlock(0, np.array([[0.0]]), "constant")
    return ModeBlock(k, np.array([[np.pi * k]]), "r^k")


def annulus_mode_block(rho: float, k: int) -> ModeBlock:
    """Energy form of the harmonic extension of (a_out at r=1, a_in at r=rho).

    k = 0 uses the basis {1, log r}: energy 2*pi*(a_out - a_in)^2/log(1/rho).
    k >= 1 solves the 2x2 system for the {r^k, r^-k} coefficients; the
    radial energy of A r^k + B r^-k over the annulus is
    pi*k*(A^2 (1 - rho^(2k)) + B^2 (rho^(-2k) - 1)) per trig component.
    """
    if not (0.0 < rho < 1.0):
        raise ValueError("annulus modulus must satisfy 0 < rho < 1")
    if k < 0:
        raise ValueError("mode must be nonnegative")
    if k == 0:
        c = 2.0 * np.pi / np.log(1.0 / rho)
        return ModeBlock(0, c * np.array([[1.0, -1.0], [-1.0, 1.0]]), "{1, log r}")
    # trace -> coefficient map: a_out = A + B, a_in = A rho^k + B rho^-k
    t = np.array([[1.0, 1.0], [rho**k, rho ** (-k)]])
    tinv = np.linalg.inv(t)
    d = np.pi * k * np.diag([1.0 - rho ** (2 * k), rho ** (-2 * k) - 1.0])
    stiff = tinv.T @ d @ tinv
    stiff = 0.5 * (stiff + stiff.T)
    return ModeBlock(k, stiff, "{r^k, r^-k}")


def annulus_split_eigenvalue(eps: float, k: int, bc: str) -> float:
    """Steklov eigenvalue on the outer circle of B_1 \\ B_eps with a
    Dirichlet or Neumann condition imposed at r = eps.

    Dirichlet: k (eps^-2k + 1)/(eps^-2k - 1) > k;
    Neumann:   k (eps^-2k - 1)/(eps^-2k + 1) < k, -> k as eps -> 0.
    Evaluated in the overflow-safe form with eps^(2k).
    """
    if not (0.0 < eps < 1.0):
        raise ValueError("0 < eps < 1 required")
    if k < 1:
        raise ValueError("split formulas hold for modes k >= 1")
    e = eps ** (2 * k)
    if bc.lower().startswith("d"):
        return k * (1.0 + e) / (1.0 - e)
    if bc.lower().startswith("n"):
        return k * (1.0 - e) / (1.0 + e)
    raise ValueError("bc must be 'Dirichlet' or 'Neumann'")


def moebius_dtn_symbol(eps: float, k: int) -> float:
    """DtN symbol of the Moebius band M_eps on its single boundary circle.

    Parity of the double-cover reduction selects the Dirichlet split for
    odd modes and the Neumann split for even modes; constants map to 0.
    """
    if k == 0:
        return 0.0
    bc = "dirichlet" if k % 2 == 1 else "neumann"
    return annulus_split_eigenvalue(eps, k, bc)


def _assemble_sorted(block_eigs, count: int):
    """Sorted nonzero eigenvalues following the mode-cutoff rule.

    block_eigs(k) yields the (multiplicity-expanded) eigenvalue list of
    mode k; modes are consumed until the minimum of the next block exceeds
    the current count-th smallest value collected so far.
    """
    collected: list[float] = []
    k = 1
    while True:
        vals = sorted(block_eigs(k))
        if len(collected) >= count and vals[0] > collected[count - 1]:
            break
        collected.extend(vals)
        collected.sort()
        k += 1
        if k > 100000:
            raise RuntimeError("mode cutoff failed to terminate")
    return collected[:count]


def moebius_uniform_spectrum(eps: float, count: int) -> Spectrum:
    """First eigenvalues of M_eps with uniform unit weight.

    Each selected split value carries multiplicity 2 (cos/sin); boundary
    length is 2*pi.  The closed forms give
    sigma_bar_1 = 2*pi*(1+eps^2)/(1-eps^2) while the first odd mode stays
    below the first admissible even one, which holds for eps^2 < 2-sqrt(3);
    past eps = 3^(-1/4) the k=2 Neumann mode drags sigma_bar_1 below 2*pi.
    """
    vals = _assemble_sorted(lambda k: [moebius_dtn_symbol(eps, k)] * 2, count)
    return Spectrum(np.concatenate([[0.0], vals]), 2.0 * np.pi, meta={"domain": "moebius", "eps": eps})


def annulus_uniform_mode_eigs(rho: float, k: int):
    """Generalized eigenvalues of one annulus mode at unit weight.

    Mass per trig component is diag(pi, pi*rho) (outer arclength 1, inner
    rho); each eigenvalue appears twice for k >= 1 (cos and sin) and once
    for k = 0.
    """
    block = annulus_mode_block(rho, k)
    if k == 0:
        mass = 2.0 * np.pi * np.diag([1.0, rho])
    else:
        mass = np.pi * np.diag([1.0, rho])
    import scipy.linalg

    eigs = scipy.linalg.eigh(block.stiffness, mass, eigvals_only=True)
    eigs = np.clip(eigs, 0.0, None)
    return eigs if k == 0 else np.repeat(eigs, 2)


def flat_annulus_uniform_spectrum(rho: float, count: int) -> Spectrum:
    """Uniform-weight spectrum of the flat annulus rho < |z| < 1.

    Boundary length 2*pi*(1+rho); the k = 0 block contributes its one
    nonzero eigenvalue (1 + 1/rho)/log(1/rho) besides the constant.
    """
    if not (0.0 < rho < 1.0):
        raise ValueError("0 < rho < 1 required")
    extra = sorted(annulus_uniform_mode_eigs(rho, 0)[1:])

    def block(k):
        return list(annulus_uniform_mode_eigs(rho, k)) + (extra if k == 1 else [])

    vals = _assemble_sorted(block, count)
    return Spectrum(
        np.concatenate([[0.0], vals]),
        2.0 * np.pi * (1.0 + rho),
        meta={"domain": "annulus", "rho": rho},
    )


def moebius_gap_range(tol: float = 1e-12) -> float:
    """Largest eps with sigma_bar_1(M_eps, uniform) > 2*pi, by bisection.

    The closed forms give the threshold analytically at 3^(-1/4); the
    bisection is kept as an independent numerical certificate.
    """
    def margin(e):
        return moebius_uniform_spectrum(e, 2).normalized[1] - 2.0 * np.pi

    lo, hi = 0.5, 0.99
    if margin(lo) <= 0 or margin(hi) >= 0:
        raise RuntimeError("bracketing for the moebius gap threshold failed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def dittmar_threshold(tol: float = 1e-7) -> float:
    """Modulus where the uniform flat annulus crosses sigma_bar_1 = 2*pi.

    sigma_bar_1 > 2*pi holds for small rho and fails for rho -> 1; the
    crossing is located by bisection (value recorded, not asserted).
    """
    def margin(r):
        return flat_annulus_uniform_spectrum(r, 2).normalized[1] - 2.0 * np.pi

    lo, hi = 1e-4, 0.9
    if margin(lo) <= 0 or margin(hi) >= 0:
        raise RuntimeError("bracketing for the annulus threshold failed")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if margin(mid) > 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)
