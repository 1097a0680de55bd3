"""Trace out the cavity field and keep the two-qubit X-shaped state.

In a single manifold the four basis states carry photon numbers
(n-1, n, n, n+1).  Tracing the field therefore kills every coherence except the
one between |+-,n> and |-+,n>, so the reduced state is

    [[r11, 0,   0,   0  ],
     [0,   r22, r23, 0  ],
     [0,   r23*, r33, 0 ],
     [0,   0,   0,   r44]]

in the qubit basis {|++>, |+->, |-+>, |-->}.  The zeros are structural, not
numerical: they are never computed.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import ManifoldDensity
from .errors import StateError

POP_TOL = 1e-10


@dataclass(frozen=True)
class TwoQubitX:
    r11: float
    r22: float
    r33: float
    r44: float
    r23: complex = 0j

    def __post_init__(self):
        for name in ("r11", "r22", "r33", "r44"):
            object.__setattr__(self, name, float(np.real(getattr(self, name))))
        object.__setattr__(self, "r23", complex(self.r23))
        pops = self.populations
        if min(pops) < -POP_TOL:
            raise StateError(f"negative population in {pops}")
        if abs(sum(pops) - 1.0) > POP_TOL:
            raise StateError(f"populations sum to {sum(pops)!r}")
        if abs(self.r23) ** 2 > max(self.r22, 0.0) * max(self.r33, 0.0) + POP_TOL:
            raise StateError("|r23|^2 exceeds r22*r33; central block not positive")

    @property
    def populations(self) -> tuple[float, float, float, float]:
        return (self.r11, self.r22, self.r33, self.r44)

    def to_matrix(self) -> np.ndarray:
        m = np.diag(np.array(self.populations, dtype=complex))
        m[1, 2] = self.r23
        m[2, 1] = np.conj(self.r23)
        return m

    def purity(self) -> float:
        return float(sum(p * p for p in self.populations) + 2 * abs(self.r23) ** 2)

    @classmethod
    def from_matrix(cls, m) -> "TwoQubitX":
        """Read the X entries of a dense matrix; other entries are ignored."""
        m = np.asarray(m)
        return cls(m[0, 0].real, m[1, 1].real, m[2, 2].real, m[3, 3].real, m[1, 2])


@dataclass(frozen=True)
class XBatch:
    """The same five entries as :class:`TwoQubitX`, as equally shaped arrays."""

    r11: np.ndarray
    r22: np.ndarray
    r33: np.ndarray
    r44: np.ndarray
    r23: np.ndarray

    def __len__(self):
        return len(self.r11)

    def at(self, i) -> TwoQubitX:
        return TwoQubitX(self.r11[i], self.r22[i], self.r33[i], self.r44[i], self.r23[i])

    def to_matrices(self) -> np.ndarray:
        out = np.zeros(self.r11.shape + (4, 4), dtype=complex)
        out[..., 0, 0] = self.r11
        out[..., 1, 1] = self.r22
        out[..., 2, 2] = self.r33
        out[..., 3, 3] = self.r44
        out[..., 1, 2] = self.r23
        out[..., 2, 1] = np.conj(self.r23)
        return out

    def signed_concurrence(self) -> np.ndarray:
        """``|r23| - sqrt(r11 r44)``; concurrence is twice its positive part."""
        return np.abs(self.r23) - np.sqrt(np.clip(self.r11, 0, None) * np.clip(self.r44, 0, None))


def partial_trace_field(rhoT: ManifoldDensity) -> TwoQubitX:
    if not isinstance(rhoT, ManifoldDensity):
        rhoT = ManifoldDensity(*rhoT)
    r = rhoT.rho
    return TwoQubitX(r[0, 0].real, r[1, 1].real, r[2, 2].real, r[3, 3].real, r[1, 2])


def reduce_many(rhos: np.ndarray) -> XBatch:
    """Batched field trace of stacked manifold matrices, no validation."""
    rhos = np.asarray(rhos)
    return XBatch(
        rhos[..., 0, 0].real.copy(),
        rhos[..., 1, 1].real.copy(),
        rhos[..., 2, 2].real.copy(),
        rhos[..., 3, 3].real.copy(),
        rhos[..., 1, 2].copy(),
    )
