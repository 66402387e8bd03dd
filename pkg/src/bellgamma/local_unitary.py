"""Local unitary transformations and the supremum of gamma over them.

Contains the parameterized 2x2 and 3x3 rotations used by the qubit-qutrit
zeroing construction, a closed-form transformation driving amp[0,0] and
amp[1,2] to zero for 2x3 states, the Schmidt-basis rotation, and a
derivative-free coordinate-ascent maximizer of gamma over U(m) x U(n).
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import lru_cache

import numpy as np

from .linalg import BipartiteDims, as_complex_matrix, kron, matrices_close
from .measures import (
    CONCURRENCE_MATCHED,
    MeasureConfig,
    _gamma_total_amp,
    _gamma_total_dense,
    gamma_schmidt,
    i_concurrence,
)
from .states import DensityOperator, PureState, haar_unitary, random_pure, schmidt

UNITARY_TOL = 1e-10

#: An optimizer result above the Schmidt benchmark by more than this margin
#: counts as an overshoot (reported, never clipped).
OVERSHOOT_MARGIN = 1e-9


@dataclass(frozen=True)
class LocalUnitary:
    """A pair (u_a, u_b) acting on the joint space as kron(u_a, u_b)."""

    u_a: np.ndarray
    u_b: np.ndarray

    def __post_init__(self) -> None:
        for name, u in (("u_a", self.u_a), ("u_b", self.u_b)):
            mat = as_complex_matrix(u)
            d = mat.shape[0]
            if mat.shape != (d, d):
                raise ValueError(f"{name} must be square, got {mat.shape}")
            if not matrices_close(mat.conj().T @ mat, np.eye(d), tol=UNITARY_TOL):
                raise ValueError(f"{name} is not unitary within {UNITARY_TOL}")
            mat.setflags(write=False)
            object.__setattr__(self, name, mat)

    def joint(self) -> np.ndarray:
        return kron(self.u_a, self.u_b)

    def dagger(self) -> "LocalUnitary":
        return LocalUnitary(self.u_a.conj().T, self.u_b.conj().T)

    def compose(self, other: "LocalUnitary") -> "LocalUnitary":
        """Returns self applied after ``other``."""
        return LocalUnitary(self.u_a @ other.u_a, self.u_b @ other.u_b)


def identity_local(dims: BipartiteDims) -> LocalUnitary:
    return LocalUnitary(np.eye(dims.m, dtype=complex), np.eye(dims.n, dtype=complex))


def random_local_unitary(dims: BipartiteDims, seed) -> LocalUnitary:
    """Independent Haar factors on each subsystem; deterministic given seed."""
    rng = np.random.default_rng(seed)
    return LocalUnitary(haar_unitary(dims.m, rng), haar_unitary(dims.n, rng))


def apply_local(psi: PureState, u: LocalUnitary) -> PureState:
    """Transform amplitudes as u_a @ amp @ u_b.T, so the joint vector
    transforms by kron(u_a, u_b)."""
    if u.u_a.shape[0] != psi.dims.m or u.u_b.shape[0] != psi.dims.n:
        raise ValueError(
            f"local unitary sizes {u.u_a.shape[0]}x{u.u_b.shape[0]} do not "
            f"match dims {psi.dims.label()}"
        )
    return PureState(psi.dims, u.u_a @ psi.amp @ u.u_b.T)


def apply_local_density(rho: DensityOperator, u: LocalUnitary) -> DensityOperator:
    w = u.joint()
    return DensityOperator(rho.dims, w @ rho.mat @ w.conj().T)


def ua_theta_phi(theta: float, phi: float) -> np.ndarray:
    """2x2 rotation [[cos t, i e^(i phi) sin t], [i sin t, e^(i phi) cos t]]."""
    c, s = math.cos(theta), math.sin(theta)
    e = np.exp(1j * phi)
    return np.array([[c, 1j * e * s], [1j * s, e * c]], dtype=complex)


def ub_theta_phi(vartheta: float, varphi: float) -> np.ndarray:
    """3x3 rotation acting on levels 2 and 3, identity on level 1."""
    c, s = math.cos(vartheta), math.sin(vartheta)
    e = np.exp(1j * varphi)
    return np.array(
        [[1, 0, 0], [0, c, 1j * e * s], [0, 1j * s, e * c]], dtype=complex
    )


def zero_a11_a23(psi: PureState) -> tuple[PureState, LocalUnitary]:
    """Rotate a 2x3 state so amp[0,0] and amp[1,2] vanish (closed form).

    Returns the rotated state and the local unitary used.  Always solvable:

    * amp'[0,0] = amp[0,0] cos t + i e^(i phi) sin t amp[1,0].  The two
      terms cancel for t = atan2(|amp00|, |amp10|) with phi aligning the
      phases; if amp[1,0] = 0 then t = pi/2 routes amp00 into the other row,
      and if amp[0,0] = 0 already the identity (t = 0) does.
    * After the A rotation, amp'[1,2] = i sin v * z1 + e^(i psi) cos v * z2
      for two fixed complex numbers z1, z2, and the same cancellation solves
      for (v, psi); degenerate z's again fall back to the free parameter 0.
    """
    if (psi.dims.m, psi.dims.n) != (2, 3):
        raise ValueError(f"zero_a11_a23 requires dims 2x3, got {psi.dims.label()}")
    amp = psi.amp
    a00, a10 = complex(amp[0, 0]), complex(amp[1, 0])

    if abs(a00) == 0.0:
        theta, phi = 0.0, 0.0
    elif abs(a10) == 0.0:
        theta, phi = math.pi / 2.0, 0.0
    else:
        theta = math.atan2(abs(a00), abs(a10))
        # want i e^(i phi) sin t * a10 == -cos t * a00
        phi = math.pi / 2.0 + np.angle(a00) - np.angle(a10)

    u_a = ua_theta_phi(theta, phi)
    mid = u_a @ amp

    # After the A rotation, amp'[1,2] = i sin v * m21 + e^(i psi) cos v * m22
    # where m21, m22 are the (row 2, columns 2 and 3) entries of ``mid``.
    m21, m22 = complex(mid[1, 1]), complex(mid[1, 2])
    if abs(m22) == 0.0:
        vartheta, varphi = 0.0, 0.0
    elif abs(m21) == 0.0:
        vartheta, varphi = math.pi / 2.0, 0.0
    else:
        vartheta = math.atan2(abs(m22), abs(m21))
        # want e^(i psi) cos v * m22 == -i sin v * m21
        varphi = np.angle(m21) - np.angle(m22) - math.pi / 2.0

    u_b = ub_theta_phi(vartheta, varphi)
    u = LocalUnitary(u_a, u_b)
    return apply_local(psi, u), u


def schmidt_rotation(psi: PureState) -> tuple[PureState, LocalUnitary]:
    """Rotate into the Schmidt basis: output amplitudes are diagonal with
    entries sqrt(coefficients), descending."""
    dec = schmidt(psi)
    u = LocalUnitary(dec.basis_a.conj().T, dec.basis_b.T)
    return apply_local(psi, u), u


# --------------------------------------------------------------------------
# Parameterization of U(d): plane rotations plus diagonal phases.


@lru_cache(maxsize=None)
def _level_pairs(d: int) -> tuple[tuple[int, int], ...]:
    return tuple((i, j) for i in range(d - 1) for j in range(i + 1, d))


def unitary_from_flat(d: int, x: np.ndarray) -> np.ndarray:
    """Materialize a d x d unitary from d*d real parameters.

    Layout: (theta, phi) per level pair (d*(d-1) values, pair-major), then d
    diagonal phases.  The result is the product of the plane rotations
    applied to the diagonal phase matrix; it is unitary for every parameter
    value, and the chart reaches all of U(d) (triangular elimination by
    complex plane rotations).
    """
    x = np.asarray(x, dtype=float)
    pairs = _level_pairs(d)
    if x.size != d * d:
        raise ValueError(f"expected {d * d} parameters for U({d}), got {x.size}")
    u = np.diag(np.exp(1j * x[2 * len(pairs):])).astype(complex)
    for idx, (i, j) in enumerate(pairs):
        theta, phi = x[2 * idx], x[2 * idx + 1]
        c, s = math.cos(theta), math.sin(theta)
        e = np.exp(1j * phi)
        ri = c * u[i] - e * s * u[j]
        rj = np.conj(e) * s * u[i] + c * u[j]
        u[i], u[j] = ri, rj
    return u


@dataclass(frozen=True)
class UnitaryParams:
    """Plane-rotation chart over U(d) (used by the maximizer).

    ``values`` holds one (angle, phase) pair per level pair followed by the
    d diagonal phases; ``rotations`` and ``diag_phases`` are views of those
    two blocks.
    """

    dim: int
    values: np.ndarray = field(default=None)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        vals = (
            np.zeros(self.dim * self.dim)
            if self.values is None
            else np.asarray(self.values, dtype=float).copy()
        )
        if vals.size != self.dim * self.dim:
            raise ValueError(
                f"expected {self.dim * self.dim} parameters, got {vals.size}"
            )
        object.__setattr__(self, "values", vals)

    @property
    def rotations(self) -> np.ndarray:
        n_pairs = self.dim * (self.dim - 1) // 2
        return self.values[: 2 * n_pairs].reshape(n_pairs, 2)

    @property
    def diag_phases(self) -> np.ndarray:
        return self.values[self.dim * (self.dim - 1):]

    def materialize(self) -> np.ndarray:
        return unitary_from_flat(self.dim, self.values)


# --------------------------------------------------------------------------
# Derivative-free maximization of gamma over the local-unitary orbit.


@dataclass(frozen=True)
class OptimizerOptions:
    """Budget for :func:`maximize_gamma`.

    The objective is smooth except for absolute-value kinks where paired
    coefficients tie, so the search is gradient-free: coordinate-wise
    periodic scans refined by golden-section, swept until a full sweep
    improves by at most ``tol``.
    """

    restarts: int = 8
    max_sweeps: int = 40
    tol: float = 1e-9
    seed: int = 0
    coarse_points: int = 8
    line_tol: float = 1e-6
    include_schmidt: bool = True


@dataclass(frozen=True)
class SupremumReport:
    best_gamma: float
    best_unitary: LocalUnitary
    schmidt_gamma: float | None
    iterations: int
    restarts: int
    converged: bool


_GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0


def _line_max(f1d, x0: float, f0: float, coarse: int, line_tol: float):
    """Maximize a 2*pi-periodic function of one variable.

    Coarse periodic scan picks the best cell, golden-section refines it; the
    incumbent (x0, f0) is never abandoned for a worse value.
    """
    best_x, best_f = x0, f0
    step = 2.0 * math.pi / coarse
    cx = x0
    for i in range(1, coarse):
        x = x0 + i * step
        fx = f1d(x)
        if fx > best_f:
            best_x, best_f, cx = x, fx, x
    a, b = cx - step, cx + step
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)
    fc, fd = f1d(c), f1d(d)
    while b - a > line_tol:
        if fc > fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f1d(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f1d(d)
    for x, fx in ((c, fc), (d, fd)):
        if fx > best_f:
            best_x, best_f = x, fx
    return best_x, best_f


def _ascend(objective, m: int, n: int, opts: OptimizerOptions):
    """Coordinate ascent over the U(m) x U(n) chart starting at the identity.

    ``objective(ua, ub)`` evaluates gamma for the candidate pair.  Returns
    (best value, ua, ub, sweeps, converged).
    """
    xa = np.zeros(m * m)
    xb = np.zeros(n * n)
    ua = unitary_from_flat(m, xa)
    ub = unitary_from_flat(n, xb)
    f = objective(ua, ub)
    converged = False
    sweeps = 0
    for _ in range(opts.max_sweeps):
        sweeps += 1
        f_start = f

        def eval_a(t, ci):
            old = xa[ci]
            xa[ci] = t
            val = objective(unitary_from_flat(m, xa), ub)
            xa[ci] = old
            return val

        for ci in range(xa.size):
            xa[ci], f = _line_max(
                lambda t: eval_a(t, ci), xa[ci], f, opts.coarse_points, opts.line_tol
            )
        ua = unitary_from_flat(m, xa)

        def eval_b(t, ci):
            old = xb[ci]
            xb[ci] = t
            val = objective(ua, unitary_from_flat(n, xb))
            xb[ci] = old
            return val

        for ci in range(xb.size):
            xb[ci], f = _line_max(
                lambda t: eval_b(t, ci), xb[ci], f, opts.coarse_points, opts.line_tol
            )
        ub = unitary_from_flat(n, xb)

        if f - f_start <= opts.tol:
            converged = True
            break
    return f, ua, ub, sweeps, converged


def maximize_gamma(
    state: PureState | DensityOperator,
    cfg: MeasureConfig = CONCURRENCE_MATCHED,
    opts: OptimizerOptions | None = None,
) -> SupremumReport:
    """Maximize gamma over local unitaries by seeded multi-restart ascent.

    Restart base points are the identity, the Schmidt rotation (pure inputs;
    the analytic supremum candidate is therefore always reachable) and Haar
    random local unitaries; each restart runs coordinate ascent in the
    plane-rotation chart composed with its base point.  Deterministic given
    ``opts.seed``.  Values above the Schmidt benchmark are reported as
    found, never clipped.
    """
    opts = opts or OptimizerOptions()
    dims = state.dims
    m, n = dims.m, dims.n
    pure = isinstance(state, PureState)

    bases: list[tuple[np.ndarray, np.ndarray]] = [
        (np.eye(m, dtype=complex), np.eye(n, dtype=complex))
    ]
    schmidt_val: float | None = None
    if pure:
        schmidt_val = gamma_schmidt(state, cfg)
        if opts.include_schmidt and opts.restarts > 1:
            _, rot = schmidt_rotation(state)
            bases.append((rot.u_a, rot.u_b))
    while len(bases) < opts.restarts:
        u = random_local_unitary(dims, [opts.seed, len(bases)])
        bases.append((u.u_a, u.u_b))

    best_f = -1.0
    best_pair: tuple[np.ndarray, np.ndarray] | None = None
    total_sweeps = 0
    all_converged = True
    for base_a, base_b in bases:
        if pure:
            amp_base = base_a @ state.amp @ base_b.T

            def objective(ua, ub, _amp=amp_base):
                return _gamma_total_amp(ua @ _amp @ ub.T, dims, cfg.n2)

        else:
            w = kron(base_a, base_b)
            mat_base = w @ state.mat @ w.conj().T

            def objective(ua, ub, _mat=mat_base):
                wj = np.kron(ua, ub)
                return _gamma_total_dense(wj @ _mat @ wj.conj().T, dims, cfg.n2)

        f, ua, ub, sweeps, converged = _ascend(objective, m, n, opts)
        total_sweeps += sweeps
        all_converged = all_converged and converged
        if f > best_f:
            best_f = f
            best_pair = (ua @ base_a, ub @ base_b)

    assert best_pair is not None
    return SupremumReport(
        best_gamma=best_f,
        best_unitary=LocalUnitary(*best_pair),
        schmidt_gamma=schmidt_val,
        iterations=total_sweeps,
        restarts=len(bases),
        converged=all_converged,
    )


# --------------------------------------------------------------------------
# Conjecture harness: does the supremum equal I-concurrence?


@dataclass(frozen=True)
class ConjectureRow:
    dims: str
    trial: int
    i_concurrence: float
    schmidt_gamma: float
    best_gamma: float
    deviation: float
    overshoot: bool
    converged: bool


@dataclass(frozen=True)
class ConjectureSummary:
    dims: str
    trials: int
    max_deviation: float
    overshoots: int


@dataclass(frozen=True)
class ConjectureReport:
    rows: tuple[ConjectureRow, ...]
    summaries: tuple[ConjectureSummary, ...]


#: Defaults for sweep trials: lighter than the standalone maximizer budget
#: because the Schmidt restart already sits at the conjectured optimum.
SWEEP_OPTS = OptimizerOptions(restarts=4, max_sweeps=25)


def _conjecture_trial(dims: BipartiteDims, di: int, trial: int, seed: int,
                      cfg: MeasureConfig, opts: OptimizerOptions) -> ConjectureRow:
    ss = np.random.SeedSequence((seed, di, trial))
    psi = random_pure(dims, ss)
    trial_seed = int(ss.generate_state(1)[0])
    report = maximize_gamma(psi, cfg, replace(opts, seed=trial_seed))
    ic = i_concurrence(psi)
    assert report.schmidt_gamma is not None
    return ConjectureRow(
        dims=dims.label(),
        trial=trial,
        i_concurrence=ic,
        schmidt_gamma=report.schmidt_gamma,
        best_gamma=report.best_gamma,
        deviation=abs(report.best_gamma - ic),
        overshoot=report.best_gamma > report.schmidt_gamma + OVERSHOOT_MARGIN,
        converged=report.converged,
    )


def conjecture_sweep(
    dims_list,
    trials: int,
    seed: int,
    cfg: MeasureConfig = CONCURRENCE_MATCHED,
    opts: OptimizerOptions | None = None,
    threads: int = 1,
) -> ConjectureReport:
    """For random pure states, compare the maximized gamma against
    I-concurrence and against the Schmidt-basis benchmark.

    Per-trial seeds are fixed up front, so results are deterministic for any
    thread count.
    """
    opts = opts or SWEEP_OPTS
    tasks = [
        (BipartiteDims.parse(d) if isinstance(d, str) else d, di, t)
        for di, d in enumerate(dims_list)
        for t in range(trials)
    ]
    if threads > 1 and tasks:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            rows = list(
                pool.map(
                    lambda a: _conjecture_trial(a[0], a[1], a[2], seed, cfg, opts),
                    tasks,
                )
            )
    else:
        rows = [_conjecture_trial(d, di, t, seed, cfg, opts) for d, di, t in tasks]

    summaries = []
    for d in dims_list:
        label = d if isinstance(d, str) else d.label()
        group = [r for r in rows if r.dims == label]
        summaries.append(
            ConjectureSummary(
                dims=label,
                trials=len(group),
                max_deviation=max((r.deviation for r in group), default=0.0),
                overshoots=sum(r.overshoot for r in group),
            )
        )
    return ConjectureReport(rows=tuple(rows), summaries=tuple(summaries))
