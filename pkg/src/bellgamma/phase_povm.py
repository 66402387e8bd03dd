"""Relative-phase operator route to gamma.

Builds the Hermitian phase operators

    delta_a = (1/2pi) (I + sum_{k<l} e^(i phi_{A;kl}) |k><l| + h.c.)

(and delta_b likewise), forms their tensor product, and extracts individual
off-diagonal density-matrix coefficients as Fourier components of the
expectation value Tr(rho * delta) over the local-phase torus.

Each matrix element of the joint operator carries a unique phase monomial
with per-axis frequency in {-1, 0, +1}, so a double Fourier integral over
one A phase and one B phase isolates exactly one coefficient:

    (1/(2pi)^2) * integral e^(i(phi_A + phi_B)) Tr(rho delta)
        = rho[(k-1)n+p, (l-1)n+q] / (2pi)^2

and the difference branch (phi_A - phi_B weight) isolates the mirrored
coefficient rho[(k-1)n+q, (l-1)n+p].  Because the integrand is a
trigonometric polynomial of degree one per axis, a uniform grid of G >= 3
points per axis evaluates the integral exactly (up to roundoff); a change
of variables to sum and difference phases is not needed and would not be
invertible on the torus.

The operators here are treated purely as Hermitian observables; positivity
of delta is neither needed nor asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from .linalg import BipartiteDims, coeff_quadruples
from .measures import PAPER_2X3, MeasureConfig, gamma
from .states import DensityOperator

TWO_PI = 2.0 * math.pi

#: Constant relating the squared Fourier-component differences back to the
#: coefficient form of gamma; fixed analytically by the 1/(2pi) prefactors
#: of the two factor operators and confirmed by a one-time self-check
#: against a Bell state on first use.
C_POVM = TWO_PI**4


def _pairs(d: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(1, d) for j in range(i + 1, d + 1))


@dataclass(frozen=True)
class PhaseAssignment:
    """One phase per level pair of each subsystem (k<l and p<q, 1-based)."""

    a_phases: Mapping[tuple[int, int], float]
    b_phases: Mapping[tuple[int, int], float]

    def validate(self, dims: BipartiteDims) -> None:
        for name, got, want in (
            ("A", set(self.a_phases), set(_pairs(dims.m))),
            ("B", set(self.b_phases), set(_pairs(dims.n))),
        ):
            if got != want:
                missing = sorted(want - got)
                extra = sorted(got - want)
                raise ValueError(
                    f"phase assignment for subsystem {name} must cover exactly "
                    f"the level pairs {sorted(want)}; missing {missing}, "
                    f"unexpected {extra}"
                )

    @classmethod
    def zeros(cls, dims: BipartiteDims) -> "PhaseAssignment":
        return cls(
            a_phases={pair: 0.0 for pair in _pairs(dims.m)},
            b_phases={pair: 0.0 for pair in _pairs(dims.n)},
        )


def _delta_factor(phases: Mapping[tuple[int, int], float], d: int) -> np.ndarray:
    upper = np.zeros((d, d), dtype=complex)
    for (i, j), phi in phases.items():
        if not (1 <= i < j <= d):
            raise ValueError(f"phase key {(i, j)} invalid for dimension {d}")
        upper[i - 1, j - 1] = np.exp(1j * phi)
    return (np.eye(d) + upper + upper.conj().T) / TWO_PI


def _require_complete(phases, d: int, name: str) -> None:
    want = set(_pairs(d))
    got = set(phases)
    if got != want:
        raise ValueError(
            f"subsystem {name} phases must cover level pairs {sorted(want)}, "
            f"got {sorted(got)}"
        )


def delta_a(phases: Mapping[tuple[int, int], float], dims: BipartiteDims) -> np.ndarray:
    """Hermitian A-side phase operator for a complete phase assignment."""
    _require_complete(phases, dims.m, "A")
    return _delta_factor(phases, dims.m)


def delta_b(phases: Mapping[tuple[int, int], float], dims: BipartiteDims) -> np.ndarray:
    """Hermitian B-side phase operator for a complete phase assignment."""
    _require_complete(phases, dims.n, "B")
    return _delta_factor(phases, dims.n)


def delta_joint(assignment: PhaseAssignment, dims: BipartiteDims) -> np.ndarray:
    """Joint operator delta_a tensor delta_b (Hermitian)."""
    assignment.validate(dims)
    return np.kron(
        _delta_factor(assignment.a_phases, dims.m),
        _delta_factor(assignment.b_phases, dims.n),
    )


@dataclass(frozen=True)
class FourierComponent:
    k: int
    l: int
    p: int
    q: int
    branch: str
    magnitude: float


def _expectation(r4: np.ndarray, da: np.ndarray, db: np.ndarray) -> complex:
    # Tr(rho (A x B)) without forming the Kronecker product.
    return complex(np.einsum("kplq,lk,qp->", r4, da, db))


def _component_pair(
    mat: np.ndarray,
    dims: BipartiteDims,
    k: int,
    l: int,
    p: int,
    q: int,
    grid: int,
    base: PhaseAssignment,
) -> tuple[complex, complex]:
    """Both Fourier components (sum and difference weight) for one quadruple,
    sharing a single grid of expectation values."""
    r4 = mat.reshape(dims.m, dims.n, dims.m, dims.n)
    angles = TWO_PI * np.arange(grid) / grid
    a_ph = dict(base.a_phases)
    b_ph = dict(base.b_phases)
    das = []
    dbs = []
    for ang in angles:
        a_ph[(k, l)] = float(ang)
        das.append(_delta_factor(a_ph, dims.m))
        b_ph[(p, q)] = float(ang)
        dbs.append(_delta_factor(b_ph, dims.n))
    s_plus = 0.0 + 0.0j
    s_minus = 0.0 + 0.0j
    for ia, pa in enumerate(angles):
        for ib, pb in enumerate(angles):
            t = _expectation(r4, das[ia], dbs[ib])
            s_plus += np.exp(1j * (pa + pb)) * t
            s_minus += np.exp(1j * (pa - pb)) * t
    norm = grid * grid
    return s_plus / norm, s_minus / norm


def _check_quadruple(dims: BipartiteDims, k: int, l: int, p: int, q: int) -> None:
    if not (1 <= k < l <= dims.m and 1 <= p < q <= dims.n):
        raise ValueError(
            f"need 1 <= k < l <= {dims.m} and 1 <= p < q <= {dims.n}, "
            f"got (k,l,p,q) = ({k},{l},{p},{q})"
        )


def _check_grid(grid: int) -> None:
    if grid < 3:
        raise ValueError(
            f"grid too coarse: need at least 3 points per axis for exact "
            f"degree-one quadrature, got {grid}"
        )


def fourier_component(
    rho: DensityOperator,
    k: int,
    l: int,
    p: int,
    q: int,
    branch: str,
    grid: int = 4,
    base: PhaseAssignment | None = None,
) -> FourierComponent:
    """Extract one coefficient magnitude from the phase-operator expectation.

    ``branch`` "+" weights by e^(i(phi_A + phi_B)) and returns
    |rho[(k-1)n+p, (l-1)n+q]| / (2pi)^2; branch "-" weights by
    e^(i(phi_A - phi_B)) and returns the mirrored coefficient.  The values
    fixed for the non-integrated phases (``base``, default all zero) do not
    affect the result.
    """
    _check_grid(grid)
    _check_quadruple(rho.dims, k, l, p, q)
    if branch not in ("+", "-"):
        raise ValueError(f"branch must be '+' or '-', got {branch!r}")
    base = base or PhaseAssignment.zeros(rho.dims)
    base.validate(rho.dims)
    s_plus, s_minus = _component_pair(rho.mat, rho.dims, k, l, p, q, grid, base)
    mag = abs(s_plus) if branch == "+" else abs(s_minus)
    return FourierComponent(k=k, l=l, p=p, q=q, branch=branch, magnitude=float(mag))


_SELF_CHECKED = False


def _self_check() -> None:
    """One-time consistency check of C_POVM on a Bell state."""
    global _SELF_CHECKED
    if _SELF_CHECKED:
        return
    _SELF_CHECKED = True
    from .states import BellState, bell_vector, PureState, pure_to_density

    dims = BipartiteDims(2, 2)
    vec = bell_vector(BellState(1, 2, 1, 2, 1), dims)
    rho = pure_to_density(PureState.from_vector(vec, dims))
    direct = gamma(rho, PAPER_2X3).total
    via = _povm_total(rho, PAPER_2X3, grid=3)
    if abs(direct - via) > 1e-12:
        raise AssertionError(
            f"phase-operator constant self-check failed: direct {direct!r} "
            f"vs Fourier route {via!r}"
        )


def _povm_total(rho: DensityOperator, cfg: MeasureConfig, grid: int) -> float:
    base = PhaseAssignment.zeros(rho.dims)
    acc = 0.0
    for k, l, p, q in coeff_quadruples(rho.dims.m, rho.dims.n):
        s_plus, s_minus = _component_pair(rho.mat, rho.dims, k, l, p, q, grid, base)
        acc += (abs(s_plus) - abs(s_minus)) ** 2
    return math.sqrt(cfg.n2 * C_POVM * acc)


def gamma_via_povm(
    rho: DensityOperator, cfg: MeasureConfig = PAPER_2X3, grid: int = 4
) -> float:
    """Gamma assembled from Fourier components of the phase-operator
    expectation; coincides with the coefficient route ``gamma``."""
    _check_grid(grid)
    _self_check()
    return _povm_total(rho, cfg, grid)
