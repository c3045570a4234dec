"""Sorted eigenvalue lists with multiplicities and perimeter normalization."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

MULTIPLICITY_RTOL = 1e-8


def cluster_eigenvalues(values, rtol: float = MULTIPLICITY_RTOL):
    """Group a sorted eigenvalue array by relative gap < rtol.

    Returns a list of index lists; eigenvalue 0 only clusters with exact
    (absolute) near-zeros.
    """
    values = np.asarray(values, dtype=float)
    clusters = []
    current = [0] if values.size else []
    for i in range(1, values.size):
        scale = max(abs(values[i]), abs(values[current[0]]), 1e-300)
        gap = abs(values[i] - values[current[0]])
        same = gap < rtol * scale or gap < 1e-12
        if same:
            current.append(i)
        else:
            clusters.append(current)
            current = [i]
    if current:
        clusters.append(current)
    return clusters


@dataclass
class Spectrum:
    """Weighted Steklov eigenvalues sorted ascending, sigma_0 = 0 first.

    normalized[k] = eigenvalues[k] * weighted_length exactly; traces, when
    present, hold one coefficient vector per eigenvalue per boundary circle.
    """

    eigenvalues: np.ndarray
    weighted_length: float
    multiplicity_tolerance: float = MULTIPLICITY_RTOL
    traces: list | None = None
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.eigenvalues = np.asarray(self.eigenvalues, dtype=float)
        self.weighted_length = float(self.weighted_length)
        if np.any(np.diff(self.eigenvalues) < -1e-9 * max(1.0, float(np.max(np.abs(self.eigenvalues), initial=0.0)))):
            raise ValueError("eigenvalues must be sorted ascending")

    @property
    def normalized(self) -> np.ndarray:
        return self.eigenvalues * self.weighted_length

    @property
    def count(self) -> int:
        return int(self.eigenvalues.size)

    def clusters(self):
        return cluster_eigenvalues(self.eigenvalues, self.multiplicity_tolerance)

    def multiplicities(self) -> np.ndarray:
        """Cluster size attached to every eigenvalue position."""
        out = np.zeros(self.count, dtype=int)
        for cl in self.clusters():
            for i in cl:
                out[i] = len(cl)
        return out

    def sigma(self, k: int) -> float:
        """k-th eigenvalue in min-max indexing (sigma_0 = 0 for connected)."""
        return float(self.eigenvalues[k])

    def sigma_bar(self, k: int) -> float:
        return float(self.normalized[k])

    def to_json_dict(self) -> dict:
        d = {
            "eigenvalues": self.eigenvalues.tolist(),
            "multiplicities": self.multiplicities().tolist(),
            "boundary_length": self.weighted_length,
            "normalized": self.normalized.tolist(),
        }
        if self.meta:
            d["meta"] = self.meta
        return d

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_json_dict(), **kwargs)

    @staticmethod
    def from_json_dict(d: dict) -> "Spectrum":
        sp = Spectrum(np.asarray(d["eigenvalues"], dtype=float), float(d["boundary_length"]))
        sp.meta = d.get("meta", {})
        return sp

    def to_csv(self) -> str:
        lines = ["index,sigma,sigma_bar,multiplicity"]
        mult = self.multiplicities()
        for i in range(self.count):
            lines.append(f"{i},{self.eigenvalues[i]:.16e},{self.normalized[i]:.16e},{mult[i]}")
        return "\n".join(lines) + "\n"


def merge_spectra(parts: list, weighted_length: float | None = None) -> Spectrum:
    """Disjoint-union spectrum: merge-sort of component eigenvalues.

    Each connected component keeps its own zero eigenvalue, so a union of
    c components starts with c zeros.  Normalization uses the summed
    weighted length.
    """
    values = np.sort(np.concatenate([p.eigenvalues for p in parts]))
    total = sum(p.weighted_length for p in parts) if weighted_length is None else weighted_length
    return Spectrum(values, total)
