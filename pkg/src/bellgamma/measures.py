"""Scalar entanglement quantities.

The central quantity ("gamma") sums, over all level quadruples k<l, p<q,
the squared difference of the absolute values of the paired off-diagonal
density-matrix coefficients

    rho[(k-1)n+p, (l-1)n+q]   and   rho[(k-1)n+q, (l-1)n+p],

scales by a normalization constant n2 and takes the square root.  For a
product state the paired coefficients have equal modulus, so gamma
vanishes identically; that makes it a separability criterion for mixed
states as well.

Normalization conventions in circulation are mutually inconsistent (on a
Bell state the pairwise-minor concurrence is 1/sqrt(2) of I-concurrence,
and the quoted Bell-state value sqrt(n2/2) is sqrt(2) times the direct
evaluation sqrt(n2/4)).  This module never silently fixes a convention:
the constant is explicit in :class:`MeasureConfig`, each named preset is
tested, and direct formula evaluation is normative.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import BipartiteDims, _quadruple_arrays, coeff_quadruples
from .states import DensityOperator, PureState, schmidt

#: Named normalization presets.
#:  - "paper-2x3" (n2=2): the convention under which the qubit-qutrit
#:    zeroing construction makes gamma coincide with the 2x3 concurrence.
#:  - "concurrence-matched" (n2=4): makes the Schmidt-form gamma equal
#:    I-concurrence exactly (via 1 - tr(rho_A^2) = 2 * sum of paired
#:    Schmidt products).
#:  - "unnormalized" (n2=1).
PRESET_N2 = {
    "paper-2x3": 2.0,
    "concurrence-matched": 4.0,
    "unnormalized": 1.0,
}


@dataclass(frozen=True)
class MeasureConfig:
    """Normalization constant n2 plus the preset name it came from."""

    n2: float
    preset: str = "custom"

    def __post_init__(self) -> None:
        if not self.n2 > 0:
            raise ValueError(f"n2 must be positive, got {self.n2}")
        if self.preset != "custom" and self.preset not in PRESET_N2:
            raise ValueError(f"unknown preset {self.preset!r}")

    @classmethod
    def from_preset(cls, name: str) -> "MeasureConfig":
        if name not in PRESET_N2:
            raise ValueError(
                f"unknown preset {name!r}; expected one of {sorted(PRESET_N2)}"
            )
        return cls(n2=PRESET_N2[name], preset=name)


PAPER_2X3 = MeasureConfig.from_preset("paper-2x3")
CONCURRENCE_MATCHED = MeasureConfig.from_preset("concurrence-matched")
UNNORMALIZED = MeasureConfig.from_preset("unnormalized")


@dataclass(frozen=True)
class GammaTerm:
    """One quadruple's contribution to gamma."""

    k: int
    l: int
    p: int
    q: int
    coeff_plus: float
    coeff_minus: float

    @property
    def contribution(self) -> float:
        return (self.coeff_plus - self.coeff_minus) ** 2


@dataclass(frozen=True)
class GammaBreakdown:
    """Gamma together with its per-quadruple terms."""

    terms: tuple[GammaTerm, ...]
    n2: float
    total: float


def _assemble(plus: np.ndarray, minus: np.ndarray, dims: BipartiteDims,
              n2: float) -> GammaBreakdown:
    total = math.sqrt(n2 * float(np.sum((plus - minus) ** 2)))
    terms = tuple(
        GammaTerm(k, l, p, q, float(cp), float(cm))
        for (k, l, p, q), cp, cm in zip(coeff_quadruples(dims.m, dims.n), plus, minus)
    )
    return GammaBreakdown(terms=terms, n2=n2, total=total)


def _gamma_coeffs_dense(mat: np.ndarray, dims: BipartiteDims):
    ka, la, pb, qb = _quadruple_arrays(dims.m, dims.n)
    n = dims.n
    plus = np.abs(mat[ka * n + pb, la * n + qb])
    minus = np.abs(mat[ka * n + qb, la * n + pb])
    return plus, minus


def _gamma_coeffs_amp(amp: np.ndarray, dims: BipartiteDims):
    ka, la, pb, qb = _quadruple_arrays(dims.m, dims.n)
    plus = np.abs(amp[ka, pb] * amp[la, qb].conj())
    minus = np.abs(amp[ka, qb] * amp[la, pb].conj())
    return plus, minus


def _gamma_total_dense(mat: np.ndarray, dims: BipartiteDims, n2: float) -> float:
    plus, minus = _gamma_coeffs_dense(mat, dims)
    return math.sqrt(n2 * float(np.sum((plus - minus) ** 2)))


def _gamma_total_amp(amp: np.ndarray, dims: BipartiteDims, n2: float) -> float:
    plus, minus = _gamma_coeffs_amp(amp, dims)
    return math.sqrt(n2 * float(np.sum((plus - minus) ** 2)))


def gamma(rho: DensityOperator, cfg: MeasureConfig = PAPER_2X3) -> GammaBreakdown:
    """Gamma of a density operator, with the full per-term breakdown.

    For dims 2x3 the three terms pair the coefficient positions
    (1,5)-(2,4), (2,6)-(3,5) and (1,6)-(3,4).
    """
    plus, minus = _gamma_coeffs_dense(rho.mat, rho.dims)
    return _assemble(plus, minus, rho.dims, cfg.n2)


def gamma_pure(psi: PureState, cfg: MeasureConfig = PAPER_2X3) -> GammaBreakdown:
    """Gamma computed directly from amplitudes: coefficient pairs are
    |amp[k,p] * conj(amp[l,q])| and |amp[k,q] * conj(amp[l,p])|.

    Agrees with ``gamma(pure_to_density(psi))`` to rounding.
    """
    plus, minus = _gamma_coeffs_amp(psi.amp, psi.dims)
    return _assemble(plus, minus, psi.dims, cfg.n2)


def i_concurrence(psi: PureState) -> float:
    """I-concurrence sqrt(2 * (1 - tr(rho_A^2))) of a pure state."""
    red = psi.amp @ psi.amp.conj().T
    purity = float(np.trace(red @ red).real)
    return math.sqrt(max(0.0, 2.0 * (1.0 - purity)))


def concurrence_general(psi: PureState, prefactor: float = 4.0) -> float:
    """sqrt(prefactor * sum of squared 2x2 amplitude minors) over k<l, p<q.

    The canonical prefactor 4 makes this equal I-concurrence: by
    Cauchy-Binet the minor sum equals the pairwise sum of reduced-state
    eigenvalue products, i.e. (1 - tr(rho_A^2)) / 2.
    """
    if not prefactor > 0:
        raise ValueError(f"prefactor must be positive, got {prefactor}")
    amp = psi.amp
    ka, la, pb, qb = _quadruple_arrays(psi.dims.m, psi.dims.n)
    minors = amp[ka, pb] * amp[la, qb] - amp[ka, qb] * amp[la, pb]
    return math.sqrt(prefactor * float(np.sum(np.abs(minors) ** 2)))


def concurrence_2x3(psi: PureState) -> float:
    """Qubit-qutrit concurrence sqrt(2 * (|m12|^2 + |m13|^2 + |m23|^2)),
    the three m's being the 2x2 minors of the amplitude matrix."""
    if (psi.dims.m, psi.dims.n) != (2, 3):
        raise ValueError(
            f"concurrence_2x3 requires dims 2x3, got {psi.dims.label()}"
        )
    return concurrence_general(psi, prefactor=2.0)


def gamma_schmidt(psi: PureState, cfg: MeasureConfig = PAPER_2X3) -> float:
    """Gamma evaluated in the Schmidt basis: sqrt(n2 * sum_{i<j} l_i * l_j).

    In the Schmidt basis the amplitude matrix is diagonal, so the only
    surviving coefficient pairs are the diagonal products.  With n2 = 4
    this equals I-concurrence identically.
    """
    lam = np.array(schmidt(psi).coefficients)
    pair_sum = (float(lam.sum()) ** 2 - float(np.sum(lam**2))) / 2.0
    return math.sqrt(cfg.n2 * max(0.0, pair_sum))
