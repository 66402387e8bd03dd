"""Bell-state enumeration, coefficient recovery from Bell projections,
measurement planning and finite-shot simulation.

The off-diagonal coefficient rho[(k-1)n+p, (l-1)n+q] is addressed by the
projector pair (|kp> +- |lq>)/sqrt(2): half the difference of the two
outcome probabilities equals the coefficient's real part.  Only real parts
are recoverable this way, so gamma estimation presumes the state has been
locally phase-rotated to make each targeted coefficient real; the
simulator applies that rotation per target for pure inputs (the phases
are read off the amplitudes) and requires the caller to supply a rotation
for mixed inputs.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass

import numpy as np

from .linalg import BipartiteDims, coeff_quadruples, pair_index
from .local_unitary import LocalUnitary
from .measures import PAPER_2X3, MeasureConfig, gamma
from .states import BellState, DensityOperator, PureState, bell_vector, pure_to_density


@dataclass(frozen=True)
class BellFamily:
    """All M(M-1)N(N-1) Bell states of an m x n system: for each k<l and
    each unordered B pair, both pairing orientations and both signs."""

    dims: BipartiteDims
    states: tuple[BellState, ...]


def enumerate_bell(dims: BipartiteDims) -> BellFamily:
    states = []
    for k, l, p, q in coeff_quadruples(dims.m, dims.n):
        for pp, qq in ((p, q), (q, p)):
            for sign in (1, -1):
                states.append(BellState(k, l, pp, qq, sign))
    return BellFamily(dims=dims, states=tuple(states))


def _named(entries) -> dict[str, BellState]:
    return {name: BellState(*args) for name, args in entries}


#: The two complete Bell bases of the qubit-qutrit system, by conventional
#: name.  psi1 = (|11>+|22>)/sqrt(2), phi1 = (|11>+|23>)/sqrt(2), etc.; the
#: bases map onto each other under a permutation of the B levels.
NAMED_BELL_2X3 = _named(
    [
        ("psi1", (1, 2, 1, 2, 1)),
        ("psi2", (1, 2, 1, 2, -1)),
        ("psi3", (1, 2, 2, 3, 1)),
        ("psi4", (1, 2, 2, 3, -1)),
        ("psi5", (1, 2, 3, 1, 1)),
        ("psi6", (1, 2, 3, 1, -1)),
        ("phi1", (1, 2, 1, 3, 1)),
        ("phi2", (1, 2, 1, 3, -1)),
        ("phi3", (1, 2, 2, 1, 1)),
        ("phi4", (1, 2, 2, 1, -1)),
        ("phi5", (1, 2, 3, 2, 1)),
        ("phi6", (1, 2, 3, 2, -1)),
    ]
)

#: The four Bell states of two qubits: psi_pm = (|11> +- |22>)/sqrt(2),
#: phi_pm = (|12> +- |21>)/sqrt(2).
NAMED_BELL_2X2 = _named(
    [
        ("psi+", (1, 2, 1, 2, 1)),
        ("psi-", (1, 2, 1, 2, -1)),
        ("phi+", (1, 2, 2, 1, 1)),
        ("phi-", (1, 2, 2, 1, -1)),
    ]
)


def project(rho: DensityOperator, b: BellState) -> float:
    """Outcome probability <b|rho|b> (real, in [0, 1] within tolerance)."""
    return _project_mat(rho.mat, b, rho.dims)


def _project_mat(mat: np.ndarray, b: BellState, dims: BipartiteDims) -> float:
    v = bell_vector(b, dims)
    return float(np.real(v.conj() @ mat @ v))


def recover_coefficient(rho: DensityOperator, k: int, l: int, p: int, q: int) -> float:
    """Half the probability difference of the +- pair for (k, l, p, q);
    equals Re(rho[(k-1)n+p, (l-1)n+q]).

    The imaginary part is invisible to the fixed pair; recovering a complex
    coefficient's modulus needs a local phase rotation first.
    """
    p_plus = project(rho, BellState(k, l, p, q, 1))
    p_minus = project(rho, BellState(k, l, p, q, -1))
    return (p_plus - p_minus) / 2.0


@dataclass(frozen=True)
class CoefficientTarget:
    """One recoverable coefficient position and its projector pair."""

    k: int
    l: int
    p: int
    q: int
    row: int  # 1-based joint indices: coefficient rho[row, col]
    col: int
    plus: BellState
    minus: BellState


@dataclass(frozen=True)
class ReducedPlan:
    """Coefficient positions still needed after the canonical zeroing
    rotation, with the projector list used to measure them."""

    positions: tuple[tuple[int, int], ...]
    projectors: tuple[BellState, ...]
    non_orthogonal_pairs: tuple[tuple[int, int], ...]
    notes: tuple[str, ...]


@dataclass(frozen=True)
class MeasurementPlan:
    dims: BipartiteDims
    targets: tuple[CoefficientTarget, ...]
    reduced: ReducedPlan
    shots_per_projector: int | None = None
    notes: tuple[str, ...] = ()


def _target(dims: BipartiteDims, k: int, l: int, p: int, q: int) -> CoefficientTarget:
    return CoefficientTarget(
        k=k,
        l=l,
        p=p,
        q=q,
        row=pair_index(k, p, dims),
        col=pair_index(l, q, dims),
        plus=BellState(k, l, p, q, 1),
        minus=BellState(k, l, p, q, -1),
    )


def _cross_pair_orthogonality(
    projectors: tuple[BellState, ...], dims: BipartiteDims
) -> tuple[tuple[int, int], ...]:
    """Indices (i, j) of projector pairs that are not mutually orthogonal."""
    vecs = [bell_vector(b, dims) for b in projectors]
    n_pairs = len(projectors) // 2
    clashes = []
    for i in range(n_pairs):
        for j in range(i + 1, n_pairs):
            block = [
                abs(np.vdot(vecs[2 * i + a], vecs[2 * j + b]))
                for a in (0, 1)
                for b in (0, 1)
            ]
            if max(block) > 1e-12:
                clashes.append((i, j))
    return tuple(clashes)


def plan_measurement(
    dims: BipartiteDims, shots_per_projector: int | None = None
) -> MeasurementPlan:
    """Projector pairs for every coefficient position, plus the reduced plan.

    The full target list covers, for every k<l, p<q quadruple, both the
    (kp, lq) and the (kq, lp) coefficient positions; that uses the whole
    Bell family.  The reduced plan keeps one position per quadruple (the
    mirrored orientation, which is the one surviving the qubit-qutrit
    zeroing rotation), so at most M(M-1)N(N-1)/2 projections are needed.
    """
    targets = []
    for k, l, p, q in coeff_quadruples(dims.m, dims.n):
        targets.append(_target(dims, k, l, p, q))
        targets.append(_target(dims, k, l, q, p))

    reduced_positions = []
    reduced_projectors: list[BellState] = []
    reduced_notes: list[str] = []
    if (dims.m, dims.n) == (2, 3):
        # Named-basis convention for the qubit-qutrit reduced plan:
        # (phi1, phi2), (phi5, phi6), (psi5, psi6).  Note the (phi1, phi2)
        # pair addresses coefficient (1, 6), which the zeroing rotation
        # drives to zero; (phi3, phi4) is the pair that measures position
        # (2, 4) directly.
        nb = NAMED_BELL_2X3
        reduced_positions = [(2, 4), (3, 5), (3, 4)]
        reduced_projectors = [
            nb["phi1"], nb["phi2"], nb["phi5"], nb["phi6"], nb["psi5"], nb["psi6"]
        ]
        reduced_notes.append(
            "2x3 reduced plan uses the named-basis projector sextet "
            "(phi1, phi2, phi5, phi6, psi5, psi6); pair (phi1, phi2) "
            "addresses coefficient (1,6), zero after the zeroing rotation, "
            "while (phi3, phi4) is the pair matching position (2,4)."
        )
    else:
        for k, l, p, q in coeff_quadruples(dims.m, dims.n):
            reduced_positions.append((pair_index(k, q, dims), pair_index(l, p, dims)))
            reduced_projectors.append(BellState(k, l, q, p, 1))
            reduced_projectors.append(BellState(k, l, q, p, -1))
        reduced_notes.append(
            "reduced plan keeps the mirrored coefficient position per "
            "quadruple; reaching it presumes the local-unitary freedom that "
            "zeroes the partner positions."
        )

    notes = []
    if (dims.m * dims.n) % 2 == 1:
        notes.append(
            "joint dimension is odd: complete orthonormal Bell bases do not "
            "exist, but the plan never relies on basis completeness."
        )

    return MeasurementPlan(
        dims=dims,
        targets=tuple(targets),
        reduced=ReducedPlan(
            positions=tuple(reduced_positions),
            projectors=tuple(reduced_projectors),
            non_orthogonal_pairs=_cross_pair_orthogonality(
                tuple(reduced_projectors), dims
            ),
            notes=tuple(reduced_notes),
        ),
        shots_per_projector=shots_per_projector,
        notes=tuple(notes),
    )


@dataclass(frozen=True)
class ShotTerm:
    """Estimated coefficient pair for one quadruple.

    ``coeff_plus``/``coeff_minus`` are the |.| plug-in estimates; the
    standard errors propagate the per-projector binomial errors
    sqrt(P(1-P)/shots).  For a true-zero coefficient the plug-in estimate
    has a positive bias of order 1/sqrt(shots).
    """

    k: int
    l: int
    p: int
    q: int
    coeff_plus: float
    coeff_minus: float
    se_plus: float
    se_minus: float

    @property
    def contribution(self) -> float:
        return (self.coeff_plus - self.coeff_minus) ** 2


@dataclass(frozen=True)
class ShotGammaEstimate:
    terms: tuple[ShotTerm, ...]
    n2: float
    shots: int | None
    total: float


def _aligning_rotation(
    mat: np.ndarray, row0: int, col0: int, dims: BipartiteDims, k: int
) -> np.ndarray:
    """Local diagonal phase on A level k making rho[row0, col0] real >= 0."""
    coeff = mat[row0, col0]
    theta = 0.0 if abs(coeff) == 0.0 else -float(np.angle(coeff))
    d_a = np.eye(dims.m, dtype=complex)
    d_a[k - 1, k - 1] = np.exp(1j * theta)
    return np.kron(d_a, np.eye(dims.n, dtype=complex))


def simulate_shots(
    state: PureState | DensityOperator,
    plan: MeasurementPlan | None = None,
    shots: int | None = None,
    seed: int | np.random.SeedSequence = 0,
    phase_rotation: LocalUnitary | None = None,
    cfg: MeasureConfig = PAPER_2X3,
    exact: bool = False,
) -> ShotGammaEstimate:
    """Estimate gamma from binomially sampled Bell projections.

    Each projector is measured separately (projector pairs from different
    bases are not co-measurable anyway): a binomial count over ``shots``
    trials at the true outcome probability.  Coefficient positions absent
    from the plan count as zero, which is what a reduced plan asserts about
    the zeroed positions.  With ``exact=True`` the true probabilities are
    used unsampled (the infinite-shot limit).  Deterministic given ``seed``.
    """
    plan = plan or plan_measurement(state.dims)
    if shots is None:
        shots = plan.shots_per_projector
    if not exact and (shots is None or shots < 1):
        raise ValueError(f"shots must be >= 1, got {shots}")

    dims = state.dims
    if isinstance(state, PureState):
        base_mat = pure_to_density(state).mat
        auto_align = True
    else:
        if phase_rotation is None:
            raise ValueError(
                "mixed-state simulation requires an explicit phase rotation "
                "making the targeted coefficients real"
            )
        base_mat = state.mat
        auto_align = False
    if phase_rotation is not None:
        w = phase_rotation.joint()
        base_mat = w @ base_mat @ w.conj().T

    rng = np.random.default_rng(seed)
    estimates: dict[tuple[int, int, int, int], tuple[float, float]] = {}
    for target in plan.targets:
        row0, col0 = target.row - 1, target.col - 1
        mat = base_mat
        if auto_align:
            w = _aligning_rotation(base_mat, row0, col0, dims, target.k)
            mat = w @ base_mat @ w.conj().T
        probs = []
        hats = []
        for b in (target.plus, target.minus):
            prob = min(max(_project_mat(mat, b, dims), 0.0), 1.0)
            probs.append(prob)
            if exact:
                hats.append(prob)
            else:
                hats.append(rng.binomial(shots, prob) / shots)
        est = (hats[0] - hats[1]) / 2.0
        if exact:
            se = 0.0
        else:
            se = 0.5 * math.sqrt(
                sum(h * (1.0 - h) / shots for h in hats)
            )
        estimates[(target.k, target.l, target.p, target.q)] = (est, se)

    terms = []
    acc = 0.0
    for k, l, p, q in coeff_quadruples(dims.m, dims.n):
        est_p, se_p = estimates.get((k, l, p, q), (0.0, 0.0))
        est_m, se_m = estimates.get((k, l, q, p), (0.0, 0.0))
        term = ShotTerm(
            k=k, l=l, p=p, q=q,
            coeff_plus=abs(est_p), coeff_minus=abs(est_m),
            se_plus=se_p, se_minus=se_m,
        )
        terms.append(term)
        acc += term.contribution
    total = math.sqrt(cfg.n2 * acc)
    return ShotGammaEstimate(
        terms=tuple(terms), n2=cfg.n2, shots=None if exact else shots, total=total
    )


@dataclass(frozen=True)
class ShotErrorRow:
    shots: int
    rep: int
    gamma_hat: float
    abs_error: float


def shot_error_table(
    state: PureState | DensityOperator,
    shots_list,
    reps: int,
    seed: int,
    cfg: MeasureConfig = PAPER_2X3,
    plan: MeasurementPlan | None = None,
    phase_rotation: LocalUnitary | None = None,
) -> tuple[tuple[ShotErrorRow, ...], dict[int, float]]:
    """Repeated simulations against the exact gamma, plus the per-shot-count
    median absolute error (the 1/sqrt(shots) convergence summary)."""
    plan = plan or plan_measurement(state.dims)
    if isinstance(state, PureState):
        truth = gamma(pure_to_density(state), cfg).total
    else:
        truth = gamma(state, cfg).total
    rows = []
    medians: dict[int, float] = {}
    for si, shots in enumerate(shots_list):
        errs = []
        for rep in range(reps):
            rep_seed = np.random.SeedSequence((seed, si, rep))
            est = simulate_shots(
                state,
                plan=plan,
                shots=shots,
                seed=rep_seed,
                phase_rotation=phase_rotation,
                cfg=cfg,
            )
            err = abs(est.total - truth)
            rows.append(
                ShotErrorRow(shots=shots, rep=rep, gamma_hat=est.total, abs_error=err)
            )
            errs.append(err)
        medians[shots] = statistics.median(errs) if errs else 0.0
    return tuple(rows), medians
