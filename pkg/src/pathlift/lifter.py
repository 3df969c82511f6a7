"""Path-lifting factorization for the four-quadrant family.

Each stage samples the polynomial on the circle ``|z| = 3/2``, picks ``d``
start points whose images lie near each of the four axis rays, lifts the
ray toward 0 with damped Newton steps, keeps the certified approximate
zeros of ``psi = f - tau i^j``, polishes them, drops duplicates, and
deflates. At least half of the remaining roots are found per stage.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .certify import ALPHA_CERT, alpha_many, duplicate_radius
from .complexpoly import (as_poly, degree, evaluate_many, rescale_main,
                          residual_norm)
from .errors import DerivativeVanishes, InsufficientCrossings, TheoremViolation
from .spectral import deflate

# e^{j pi i/2} for j = 1..4, exact
RAY_UNITS = {1: 1j, 2: -1 + 0j, 3: -1j, 4: 1 + 0j}
PROBE_RADIUS = 1.5


@dataclass(frozen=True)
class SolveConfig:
    h: float = 1 / 27
    family_m: int = 4
    probe_multiplier: int = 676
    wedge_halfangle: float = math.pi / 4
    max_degree: int = 256
    escape_radius: float = 10.0
    min_polish: int = 3
    tau_floor: float = 1e-250

    def __post_init__(self):
        if self.family_m != 4:
            raise NotImplementedError("only the m = 4 family is implemented")
        if not 0 < self.h <= math.sin(self.wedge_halfangle) / 19:
            raise ValueError(f"h = {self.h} violates h <= sin(A)/19 for A = {self.wedge_halfangle}")
        if self.probe_multiplier < 2:
            raise ValueError("probe_multiplier must be >= 2")


@dataclass
class WedgeBatch:
    ray_index: int
    points: np.ndarray
    w0: np.ndarray
    probe_index: np.ndarray
    crossings: int          # sign changes detected before any fallback
    fallback: bool = False


@dataclass
class PLMTrace:
    """Per-point record of one instrumented path-lifting run."""
    ray_index: int
    z_hat: np.ndarray
    steps: np.ndarray       # N_i
    status: np.ndarray
    residual: np.ndarray    # |f(z_n) - w_n|, shape (npts, max N + 1), NaN-padded
    ray: np.ndarray         # |w_n|
    h: float


@dataclass
class StageStats:
    degree: int = 0
    quadrants_tried: int = 0
    plm_iterations: int = 0     # max N over all tracked points
    polish_iterations: int = 0  # M
    points_certified: int = 0   # in the accepting quadrant
    points_weeded: int = 0      # duplicates removed in the accepting quadrant
    accepted: int = 0
    evaluations: int = 0        # point evaluations of f, f' or a full Taylor row
    remainder_norm: float = float("nan")
    lead_deviation: float = float("nan")  # |raw leading coeff of quotient - 1|
    node_rotation: int = 0


@dataclass
class StageResult:
    accepted: np.ndarray
    deflated: np.ndarray
    stats: StageStats
    traces: list = field(default_factory=list)  # (PLMTrace, certified mask) per quadrant


@dataclass
class Factorization:
    roots: np.ndarray
    residual: float
    per_stage: list
    K: float
    tau: float
    epsilon: float
    traces: list = field(default_factory=list)


# ---------------------------------------------------------------------------

def probe_points(d, cfg=None):
    cfg = cfg or SolveConfig()
    n = cfg.probe_multiplier * d
    return PROBE_RADIUS * np.exp(2j * np.pi * np.arange(n) / n)


def _cyclic_gap(a, b, n):
    g = abs(a - b) % n
    return min(g, n - g)


def _spread_pick(offset, d, sep, n):
    chosen = []
    for k in np.argsort(np.abs(offset), kind="stable"):
        if all(_cyclic_gap(k, c, n) >= sep for c in chosen):
            chosen.append(int(k))
            if len(chosen) == d:
                break
    return np.array(sorted(chosen), dtype=np.int64)


def choose_initial_points(f, cfg=None):
    """Four batches of ``d`` start points on ``|z| = 3/2``, one per axis ray.

    For ray ``j`` the batch holds, for every upward crossing of
    ``arg f(omega_k)`` through ``j pi/2``, the neighbouring probe closer to
    the ray. If the crossing count is not ``d``, the ``d`` probes nearest
    the ray subject to an index separation of half a sheet are used.
    """
    cfg = cfg or SolveConfig()
    f = as_poly(f)
    d = degree(f)
    if d < 1:
        raise ValueError("need degree >= 1")
    omega = probe_points(d, cfg)
    n = len(omega)
    vals = evaluate_many(f, omega)
    batches = []
    for j in (1, 2, 3, 4):
        unit = RAY_UNITS[j]
        off = np.angle(vals * np.conj(unit))   # signed angle to the ray, in (-pi, pi]
        nxt = np.roll(off, -1)
        up = np.flatnonzero((off <= 0) & (nxt > 0) & (nxt - off < np.pi))
        pick = np.where(np.abs(off[up]) <= np.abs(nxt[up]), up, (up + 1) % n)
        pick = np.unique(pick)
        fallback = len(pick) != d
        if fallback:
            pick = _spread_pick(off, d, cfg.probe_multiplier // 2, n)
            if len(pick) < d:
                raise InsufficientCrossings(
                    f"ray {j}: {len(up)} crossings and only {len(pick)} separated probes "
                    f"for degree {d}")
        batches.append(WedgeBatch(j, omega[pick], np.abs(vals[pick]) * unit,
                                  pick, len(up), fallback))
    return batches


def plm_steps(tau, w0_mod, h=1 / 27):
    """``N = floor(log(tau/|w0|) / log(1-h))``, clipped at 0."""
    w0_mod = np.asarray(w0_mod, dtype=float)
    with np.errstate(divide="ignore"):
        n = np.floor(np.log(tau / w0_mod) / math.log1p(-h))
    return np.maximum(n, 0).astype(np.int64)


def _track(f, batch, tau, cfg, trace):
    steps = plm_steps(tau, np.abs(batch.w0), cfg.h)
    target = np.full(len(batch.points), tau * RAY_UNITS[batch.ray_index])
    zhat, status, res, ray = kernels.plm_track(
        f, batch.points, batch.w0, steps, target, cfg.h, cfg.escape_radius, trace)
    return zhat, steps, status, res, ray


def iterate_plm(f, batch, tau, cfg=None):
    """Lift the ray from each ``w0`` to ``tau e^{j pi i/2}``; lost points are NaN."""
    cfg = cfg or SolveConfig()
    return _track(as_poly(f), batch, tau, cfg, False)[0]


def trace_plm(f, batch, tau, cfg=None):
    cfg = cfg or SolveConfig()
    zhat, steps, status, res, ray = _track(as_poly(f), batch, tau, cfg, True)
    return PLMTrace(batch.ray_index, zhat, steps, status, res, ray, cfg.h)


def select_approx_zeros(psi, y):
    """Members of ``y`` (order kept) with alpha below 1/8."""
    y = np.asarray(y, dtype=np.complex128).ravel()
    if y.size == 0:
        return y
    a = alpha_many(psi, y)
    return y[np.nan_to_num(a, nan=np.inf) < ALPHA_CERT]


def polish_count(tau, d_top, min_polish=3):
    """``M = 1 + floor(log2 log2(64 d (7/4)^d / tau))``, never below ``min_polish``."""
    inner = math.log2(64 * d_top) + d_top * math.log2(7 / 4) - math.log2(tau)
    m = 1 + math.floor(math.log2(inner)) if inner > 1 else 1
    return max(min_polish, m)


def polish(psi, x, tau, d_top, cfg=None):
    """``M`` plain Newton steps on ``psi``; points where ``psi'`` vanishes are dropped."""
    cfg = cfg or SolveConfig()
    x = np.asarray(x, dtype=np.complex128).ravel()
    if x.size == 0:
        return x
    out, status = kernels.newton(psi, x, polish_count(tau, d_top, cfg.min_polish))
    return out[status == kernels.OK]


def weed(psi, w):
    """Keep one representative per root of ``psi``, preferring small ``|psi|``."""
    psi = as_poly(psi)
    w = np.asarray(w, dtype=np.complex128).ravel()
    if w.size == 0:
        return w
    order = np.argsort(np.abs(evaluate_many(psi, w)), kind="stable")
    kept = [w[order[0]]]
    for c in w[order[1:]]:
        try:
            rad = duplicate_radius(psi, c)
        except DerivativeVanishes:
            continue
        if all(abs(c - v) >= rad for v in kept):
            kept.append(c)
    return np.array(kept, dtype=np.complex128)


def half_roots_and_deflate(f, tau, cfg=None, d_top=None, trace=False):
    """One stage: approximate at least ``ceil(d/2)`` roots and divide them out."""
    cfg = cfg or SolveConfig()
    f = as_poly(f)
    d = degree(f)
    if d < 2:
        raise ValueError("stage needs degree >= 2")
    d_top = d if d_top is None else d_top
    need = -(-d // 2)
    M = polish_count(tau, d_top, cfg.min_polish)
    stats = StageStats(degree=d, polish_iterations=M)
    batches = choose_initial_points(f, cfg)
    stats.evaluations = cfg.probe_multiplier * d
    traces = []
    tried = []
    for batch in batches:
        j = batch.ray_index
        stats.quadrants_tried = j
        zhat, steps, status, res, ray = _track(f, batch, tau, cfg, trace)
        stats.plm_iterations = max(stats.plm_iterations, int(steps.max()))
        stats.evaluations += int(2 * (steps + 1).sum())

        psi = f.copy()
        psi[0] -= tau * RAY_UNITS[j]
        X = select_approx_zeros(psi, zhat)
        stats.evaluations += int(np.isfinite(zhat).sum()) * (d + 1)
        if trace:
            certified = np.isin(zhat, X) & np.isfinite(zhat)
            traces.append((PLMTrace(j, zhat, steps, status, res, ray, cfg.h), certified))
        W = polish(psi, X, tau, d_top, cfg)
        stats.evaluations += 2 * M * len(X)
        V = weed(psi, W)
        stats.evaluations += 2 * len(W)
        tried.append((j, len(X), len(V)))
        if len(V) >= need:
            if len(V) > d:
                raise TheoremViolation(
                    f"quadrant {j} kept {len(V)} roots of a degree-{d} polynomial", stats)
            stats.points_certified = len(X)
            stats.points_weeded = len(W) - len(V)
            stats.accepted = len(V)
            dr = deflate(psi, V)
            stats.remainder_norm = dr.remainder_norm
            stats.lead_deviation = abs(dr.raw_leading - 1)
            stats.node_rotation = dr.rotation
            stats.evaluations += 2 * (degree(dr.quotient) + 1)
            return StageResult(V, dr.quotient, stats, traces)
    raise TheoremViolation(
        f"no quadrant yielded {need} of {d} roots (quadrant, certified, kept): {tried}", stats)


def solve(phi, epsilon, cfg=None, trace=False):
    """Approximate factorization ``||phi - prod (z - root)|| < epsilon`` of monic ``phi``."""
    cfg = cfg or SolveConfig()
    phi = as_poly(phi)
    d = degree(phi)
    if d < 1:
        raise ValueError("need degree >= 1")
    if d > cfg.max_degree:
        raise ValueError(f"degree {d} exceeds max_degree {cfg.max_degree}")
    norm, tau = rescale_main(phi, epsilon, cfg.tau_floor)
    phi = phi.copy()
    phi[-1] = 1.0
    if d == 1:
        roots = np.array([-phi[0]])
        return Factorization(roots, residual_norm(phi, roots), [], norm.K, tau, epsilon)

    f = norm.f0
    found = []
    per_stage = []
    traces = []
    while len(found) < d:
        if degree(f) == 1:
            found.append(-f[0])
            break
        st = half_roots_and_deflate(f, tau, cfg, d_top=d, trace=trace)
        found.extend(st.accepted)
        per_stage.append(st.stats)
        traces.append(st.traces)
        f = st.deflated
    roots = norm.K * np.array(found, dtype=np.complex128)
    return Factorization(roots, residual_norm(phi, roots), per_stage, norm.K, tau,
                         epsilon, traces)
