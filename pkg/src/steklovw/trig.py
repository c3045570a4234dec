"""Real trigonometric polynomials on the circle and periodic quadrature.

Everything downstream (boundary weights, eigenfunction traces, mass
matrices) lives in the real basis {1, cos k*t, sin k*t}.  Basis ordering
used by all modules: index 0 is the constant, index 2k-1 is cos(k*t),
index 2k is sin(k*t), so a degree-N space has dimension 2N+1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

POSITIVITY_NODES = 4096
POSITIVITY_MARGIN = 1e-10


def nodes(m: int) -> np.ndarray:
    """Equispaced quadrature nodes 2*pi*j/m, j = 0..m-1."""
    return 2.0 * np.pi * np.arange(m) / m


def integrate(samples: np.ndarray) -> float:
    """Trapezoid rule on equispaced nodes (spectral for smooth periodic f)."""
    samples = np.asarray(samples, dtype=float)
    return 2.0 * np.pi * float(np.mean(samples))


@dataclass(frozen=True)
class TrigPolynomial:
    """a0 + sum_k (cos_coeffs[k-1] cos k*t + sin_coeffs[k-1] sin k*t)."""

    a0: float
    cos_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))
    sin_coeffs: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        cos = np.atleast_1d(np.asarray(self.cos_coeffs, dtype=float)).copy()
        sin = np.atleast_1d(np.asarray(self.sin_coeffs, dtype=float)).copy()
        if cos.size != sin.size:
            n = max(cos.size, sin.size)
            cos = np.pad(cos, (0, n - cos.size))
            sin = np.pad(sin, (0, n - sin.size))
        cos.setflags(write=False)
        sin.setflags(write=False)
        object.__setattr__(self, "a0", float(self.a0))
        object.__setattr__(self, "cos_coeffs", cos)
        object.__setattr__(self, "sin_coeffs", sin)

    @property
    def degree(self) -> int:
        return int(self.cos_coeffs.size)

    def __call__(self, theta):
        return self.eval(theta)

    def eval(self, theta):
        """Direct trigonometric summation; 2*pi-periodic by construction."""
        theta = np.asarray(theta, dtype=float)
        out = np.full(theta.shape, self.a0)
        for k in range(1, self.degree + 1):
            out = out + self.cos_coeffs[k - 1] * np.cos(k * theta)
            out = out + self.sin_coeffs[k - 1] * np.sin(k * theta)
        return out if out.shape else float(out)

    def sample(self, m: int) -> np.ndarray:
        """Values at m equispaced nodes, evaluated by inverse FFT."""
        if m < 2 * self.degree + 1:
            return self.eval(nodes(m))
        spec = np.zeros(m // 2 + 1, dtype=complex)
        spec[0] = self.a0
        n = self.degree
        if n > 0:
            spec[1 : n + 1] = 0.5 * (self.cos_coeffs - 1j * self.sin_coeffs)
        return np.fft.irfft(spec * m, n=m)

    def coefficient(self, k: int, kind: str) -> float:
        if kind == "cos":
            return self.a0 if k == 0 else (self.cos_coeffs[k - 1] if k <= self.degree else 0.0)
        if kind == "sin":
            return 0.0 if k == 0 or k > self.degree else self.sin_coeffs[k - 1]
        raise ValueError(f"unknown coefficient kind {kind!r}")

    def coeff_vector(self, n: int | None = None) -> np.ndarray:
        """Coefficients in the interleaved basis ordering, padded to degree n."""
        n = self.degree if n is None else int(n)
        v = np.zeros(2 * n + 1)
        v[0] = self.a0
        d = min(n, self.degree)
        if d > 0:
            v[1 : 2 * d : 2] = self.cos_coeffs[:d]
            v[2 : 2 * d + 1 : 2] = self.sin_coeffs[:d]
        return v

    @staticmethod
    def from_coeff_vector(v) -> "TrigPolynomial":
        v = np.asarray(v, dtype=float)
        if v.size % 2 != 1:
            raise ValueError("coefficient vector must have odd length 2N+1")
        return TrigPolynomial(v[0], v[1::2], v[2::2])

    @staticmethod
    def constant(value: float) -> "TrigPolynomial":
        return TrigPolynomial(float(value), np.zeros(0), np.zeros(0))

    def truncate(self, n: int) -> "TrigPolynomial":
        n = int(n)
        return TrigPolynomial(self.a0, self.cos_coeffs[:n].copy(), self.sin_coeffs[:n].copy())

    def tail_norm(self, n: int) -> float:
        """l2 norm of the coefficients beyond degree n (truncation error report)."""
        return float(np.sqrt(np.sum(self.cos_coeffs[n:] ** 2) + np.sum(self.sin_coeffs[n:] ** 2)))

    def __add__(self, other: "TrigPolynomial") -> "TrigPolynomial":
        n = max(self.degree, other.degree)
        return TrigPolynomial(
            self.a0 + other.a0,
            np.pad(self.cos_coeffs, (0, n - self.degree)) + np.pad(other.cos_coeffs, (0, n - other.degree)),
            np.pad(self.sin_coeffs, (0, n - self.degree)) + np.pad(other.sin_coeffs, (0, n - other.degree)),
        )

    def __mul__(self, other):
        if np.isscalar(other):
            return TrigPolynomial(self.a0 * other, self.cos_coeffs * other, self.sin_coeffs * other)
        return mul(self, other)

    __rmul__ = __mul__

    def to_json_dict(self) -> dict:
        return {
            "degree": self.degree,
            "a0": self.a0,
            "cos": self.cos_coeffs.tolist(),
            "sin": self.sin_coeffs.tolist(),
        }

    @staticmethod
    def from_json_dict(d: dict) -> "TrigPolynomial":
        p = TrigPolynomial(d["a0"], np.asarray(d.get("cos", [])), np.asarray(d.get("sin", [])))
        if "degree" in d and int(d["degree"]) != p.degree:
            raise ValueError("inconsistent degree field in serialized trig polynomial")
        return p


def fourier_of_samples(values, target_degree: int) -> TrigPolynomial:
    """Trapezoid Fourier projection of equispaced samples.

    Exact when the sampled function is a trig polynomial of degree
    <= target_degree and m >= 2*target_degree + 1.
    """
    values = np.asarray(values, dtype=float)
    m = values.size
    n = int(target_degree)
    if m < 2 * n + 1:
        raise ValueError(f"need at least {2 * n + 1} samples for degree {n}, got {m}")
    spec = np.fft.rfft(values) / m
    a0 = float(spec[0].real)
    cos = 2.0 * spec[1 : n + 1].real
    sin = -2.0 * spec[1 : n + 1].imag
    if cos.size < n:
        cos = np.pad(cos, (0, n - cos.size))
        sin = np.pad(sin, (0, n - sin.size))
    return TrigPolynomial(a0, cos, sin)


def mul(p: TrigPolynomial, q: TrigPolynomial, cap: int | None = None):
    """Pointwise product; exact degree p.degree + q.degree.

    A cap (default 4x the larger input degree) truncates the result; the
    dropped-tail l2 norm is available through ``TrigPolynomial.tail_norm``.
    """
    full = p.degree + q.degree
    m = 2 * full + 2
    prod = fourier_of_samples(p.sample(m) * q.sample(m), full)
    if cap is None:
        cap = max(4 * max(p.degree, q.degree), full) if full else 0
    return prod if full <= cap else prod.truncate(cap)


def check_positive(p: TrigPolynomial, margin: float = POSITIVITY_MARGIN) -> float:
    """Sampled minimum over a dense grid; raises if not strictly positive."""
    vmin = float(np.min(p.sample(max(POSITIVITY_NODES, 4 * p.degree + 1))))
    if vmin <= margin:
        raise ValueError(f"weight is not strictly positive (sampled min {vmin:.3e})")
    return vmin


@dataclass(frozen=True)
class BoundaryWeight:
    """Positive density per boundary circle, stored directly or as log.

    The log representation is the optimizer default: beta = exp(w) is
    positive by construction for any coefficients of w.
    """

    components: tuple
    representation: str = "direct"

    def __post_init__(self):
        comps = tuple(self.components) if isinstance(self.components, (list, tuple)) else (self.components,)
        if self.representation not in ("direct", "log"):
            raise ValueError("representation must be 'direct' or 'log'")
        object.__setattr__(self, "components", comps)
        if self.representation == "direct":
            for c in comps:
                check_positive(c)

    @staticmethod
    def uniform(value: float = 1.0, circles: int = 1) -> "BoundaryWeight":
        return BoundaryWeight(tuple(TrigPolynomial.constant(value) for _ in range(circles)))

    @property
    def n_circles(self) -> int:
        return len(self.components)

    def density(self, circle: int = 0):
        """Callable theta -> beta(theta) on the given circle."""
        comp = self.components[circle]
        if self.representation == "direct":
            return comp.eval
        return lambda theta: np.exp(comp.eval(theta))

    def density_samples(self, m: int, circle: int = 0) -> np.ndarray:
        comp = self.components[circle]
        vals = comp.sample(m)
        return np.exp(vals) if self.representation == "log" else vals

    def direct_polynomial(self, circle: int = 0, degree: int | None = None, rtol: float = 1e-14) -> TrigPolynomial:
        """Projection of the density onto a trig polynomial.

        For log representation the degree grows until the dropped tail is
        below rtol relative to the leading coefficient (exp(w) is analytic,
        so coefficients decay geometrically).
        """
        comp = self.components[circle]
        if self.representation == "direct":
            return comp if degree is None or degree >= comp.degree else comp.truncate(degree)
        n = degree if degree is not None else max(4 * comp.degree + 16, 32)
        while True:
            m = max(4 * n + 2, 128)
            p = fourier_of_samples(np.exp(comp.sample(m)), n)
            tail = max(abs(p.cos_coeffs[-1]) if n else 0.0, abs(p.sin_coeffs[-1]) if n else 0.0)
            if degree is not None or tail <= rtol * max(abs(p.a0), 1e-300) or n >= 16384:
                return p
            n *= 2

    def mass(self, circle: int = 0) -> float:
        """Total mass of the density over one circle, integral beta dtheta."""
        if self.representation == "direct":
            return 2.0 * np.pi * self.components[circle].a0
        return integrate(self.density_samples(max(POSITIVITY_NODES, 4 * self.components[circle].degree + 1), circle))

    def to_json_dict(self) -> dict:
        return {
            "representation": self.representation,
            "components": [c.to_json_dict() for c in self.components],
        }

    @staticmethod
    def from_json_dict(d: dict) -> "BoundaryWeight":
        comps = tuple(TrigPolynomial.from_json_dict(c) for c in d["components"])
        return BoundaryWeight(comps, d.get("representation", "direct"))


def _cosine_sine_integrals(beta: TrigPolynomial, jmax: int):
    """I_j = int cos(j t) beta dt and J_j = int sin(j t) beta dt, j = 0..jmax."""
    i = np.zeros(jmax + 1)
    j = np.zeros(jmax + 1)
    i[0] = 2.0 * np.pi * beta.a0
    d = min(jmax, beta.degree)
    if d > 0:
        i[1 : d + 1] = np.pi * beta.cos_coeffs[:d]
        j[1 : d + 1] = np.pi * beta.sin_coeffs[:d]
    return i, j


def toeplitz_mass_matrix(beta: TrigPolynomial, basis_degree: int) -> np.ndarray:
    """Gram matrix of {1, cos kt, sin kt} k<=N under the measure beta dt.

    Entries are exact linear functionals of beta's Fourier coefficients
    (product-to-sum identities), hence spectrally accurate whenever beta
    itself is resolved.  Requires beta > 0; the result is then symmetric
    positive definite.
    """
    check_positive(beta)
    n = int(basis_degree)
    dim = 2 * n + 1
    ci, si = _cosine_sine_integrals(beta, 2 * n)
    mat = np.empty((dim, dim))

    def idx(k: int, kind: str) -> int:
        return 0 if k == 0 else (2 * k - 1 if kind == "cos" else 2 * k)

    mat[0, 0] = ci[0]
    for k in range(1, n + 1):
        mat[0, idx(k, "cos")] = mat[idx(k, "cos"), 0] = ci[k]
        mat[0, idx(k, "sin")] = mat[idx(k, "sin"), 0] = si[k]
    for k in range(1, n + 1):
        for m in range(k, n + 1):
            cc = 0.5 * (ci[m - k] + ci[k + m])
            ss = 0.5 * (ci[m - k] - ci[k + m])
            # int cos(kt) sin(mt) beta dt = (J_{k+m} + J_{m-k}) / 2, J_{-*} = -J_*
            cs = 0.5 * (si[k + m] + si[m - k])
            sc = 0.5 * (si[k + m] - si[m - k])
            mat[idx(k, "cos"), idx(m, "cos")] = mat[idx(m, "cos"), idx(k, "cos")] = cc
            mat[idx(k, "sin"), idx(m, "sin")] = mat[idx(m, "sin"), idx(k, "sin")] = ss
            mat[idx(k, "cos"), idx(m, "sin")] = mat[idx(m, "sin"), idx(k, "cos")] = cs
            mat[idx(k, "sin"), idx(m, "cos")] = mat[idx(m, "cos"), idx(k, "sin")] = sc
    return mat


def basis_index(k: int, kind: str) -> int:
    """Position of the basis function in the interleaved ordering."""
    if k == 0:
        return 0
    return 2 * k - 1 if kind == "cos" else 2 * k


def synth_matrix(theta: np.ndarray, basis_degree: int) -> np.ndarray:
    """Evaluation matrix: column j holds basis function e_j at the nodes."""
    theta = np.asarray(theta, dtype=float)
    n = int(basis_degree)
    cols = [np.ones_like(theta)]
    for k in range(1, n + 1):
        cols.append(np.cos(k * theta))
        cols.append(np.sin(k * theta))
    return np.stack(cols, axis=-1)
