"""Numerical dynamics: kinetics, Lyapunov monitoring, integration, equilibria.

The structural modules are exact; this one is deliberately floating point.
Rates follow the monomial law (absent species contribute a factor 1, i.e.
``0**0 == 1``), or the generalized form where every concentration first
passes through a per-species monotone map ``theta``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional, Sequence

import numpy as np

from .network import ReactionNetwork, reaction_vector
from .siphons import is_semi_locking
from .structure import conservation_basis, stoichiometric_basis, structure_report

MASS_ACTION_KIND = "mass_action"
GENERALIZED_KIND = "generalized"


class HypothesesError(ValueError):
    """Network fails the structural hypotheses an operation requires."""


class IntegrationError(RuntimeError):
    """Adaptive stepper could not continue (step underflow, bad state)."""


class ConvergenceError(RuntimeError):
    """Equilibrium iteration did not converge; message carries diagnostics."""


@dataclass(frozen=True)
class KineticsSpec:
    """Kinetics selector: plain monomials or theta-transformed monomials."""

    kind: str
    theta: Optional[tuple[Callable[[float], float], ...]] = None

    @property
    def is_mass_action(self) -> bool:
        return self.kind == MASS_ACTION_KIND


MASS_ACTION = KineticsSpec(MASS_ACTION_KIND)


def generalized_kinetics(
    theta: Callable[[float], float] | Sequence[Callable[[float], float]],
    num_species: int,
) -> KineticsSpec:
    """Build a generalized kinetics spec and spot-check admissibility.

    Each map must vanish at zero and be strictly increasing; this is checked
    on a sample grid at construction (a full verification is up to the
    caller, who asserts the remaining admissibility properties).
    """
    if callable(theta):
        thetas = tuple([theta] * num_species)
    else:
        thetas = tuple(theta)
        if len(thetas) != num_species:
            raise ValueError("need one theta per species")
    grid = [0.0, 1e-6, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 100.0]
    for i, th in enumerate(thetas):
        if abs(th(0.0)) > 1e-12:
            raise ValueError(f"theta[{i}](0) must be 0, got {th(0.0)}")
        values = [th(g) for g in grid]
        if any(b <= a for a, b in zip(values, values[1:])):
            raise ValueError(f"theta[{i}] is not strictly increasing on the sample grid")
    return KineticsSpec(GENERALIZED_KIND, thetas)


@lru_cache(maxsize=None)
def _mass_action_arrays(net: ReactionNetwork) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    m = net.num_species
    src = np.zeros((len(net.reactions), m))
    netv = np.zeros((len(net.reactions), m))
    rates = np.zeros(len(net.reactions))
    for r_idx, r in enumerate(net.reactions):
        for i, k in r.source.terms:
            src[r_idx, i] = k
        netv[r_idx] = reaction_vector(r, m)
        rates[r_idx] = r.rate
    return src, netv, rates


def _transformed(x: np.ndarray, kinetics: KineticsSpec) -> np.ndarray:
    if kinetics.is_mass_action:
        return x
    assert kinetics.theta is not None
    return np.array([th(float(v)) for th, v in zip(kinetics.theta, x)])


def reaction_rates(net: ReactionNetwork, kinetics: KineticsSpec, x: Sequence[float]) -> np.ndarray:
    """Per-reaction fluxes at state x (monomials in the transformed state)."""
    src, _, k = _mass_action_arrays(net)
    u = _transformed(np.asarray(x, dtype=float), kinetics)
    return k * np.prod(u**src, axis=1)


def rhs(net: ReactionNetwork, kinetics: KineticsSpec, x: Sequence[float]) -> np.ndarray:
    """Species time derivative: sum of flux times net stoichiometry.

    Boundary states are allowed; a flux with any required input at zero is
    zero, and species absent from a source contribute a factor 1.
    """
    arr = np.asarray(x, dtype=float)
    if arr.shape != (net.num_species,):
        raise ValueError("state dimension differs from species count")
    if np.any(arr < 0):
        raise ValueError("state must be entrywise nonnegative")
    _, netv, _ = _mass_action_arrays(net)
    return reaction_rates(net, kinetics, arr) @ netv


def jacobian(net: ReactionNetwork, kinetics: KineticsSpec, x: Sequence[float]) -> np.ndarray:
    """Derivative matrix of :func:`rhs` at x.

    Mass action uses exact monomial differentiation (valid on the boundary);
    generalized kinetics falls back to central differences since the theta
    handles carry no derivative information.
    """
    arr = np.asarray(x, dtype=float)
    m = net.num_species
    if arr.shape != (m,):
        raise ValueError("state dimension differs from species count")
    if np.any(arr < 0):
        raise ValueError("state must be entrywise nonnegative")
    if not kinetics.is_mass_action:
        return _jacobian_fd(net, kinetics, arr)
    src, netv, k = _mass_action_arrays(net)
    jac = np.zeros((m, m))
    for r_idx in range(src.shape[0]):
        exps = src[r_idx]
        for j in np.nonzero(exps)[0]:
            factors = arr**exps
            xj = arr[j]
            factors[j] = exps[j] * xj ** (exps[j] - 1.0) if exps[j] != 1.0 else exps[j]
            grad_j = k[r_idx] * np.prod(factors)
            jac[:, j] += grad_j * netv[r_idx]
    return jac


def _jacobian_fd(net: ReactionNetwork, kinetics: KineticsSpec, x: np.ndarray) -> np.ndarray:
    m = x.size
    jac = np.zeros((m, m))
    for j in range(m):
        h = 1e-6 * max(1.0, abs(x[j]))
        xp = x.copy()
        xp[j] += h
        if x[j] - h >= 0:
            xm = x.copy()
            xm[j] -= h
            jac[:, j] = (rhs(net, kinetics, xp) - rhs(net, kinetics, xm)) / (2 * h)
        else:
            jac[:, j] = (rhs(net, kinetics, xp) - rhs(net, kinetics, x)) / h
    return jac


def _adaptive_simpson(f: Callable[[float], float], a: float, b: float, tol: float) -> float:
    def simpson(lo: float, hi: float, flo: float, fmid: float, fhi: float) -> float:
        return (hi - lo) / 6.0 * (flo + 4.0 * fmid + fhi)

    def recurse(lo, hi, flo, fmid, fhi, whole, eps, depth):
        mid = 0.5 * (lo + hi)
        lmid = 0.5 * (lo + mid)
        rmid = 0.5 * (mid + hi)
        flm = f(lmid)
        frm = f(rmid)
        left = simpson(lo, mid, flo, flm, fmid)
        right = simpson(mid, hi, fmid, frm, fhi)
        if depth <= 0 or abs(left + right - whole) <= 15.0 * eps:
            return left + right + (left + right - whole) / 15.0
        return recurse(lo, mid, flo, flm, fmid, left, eps / 2.0, depth - 1) + recurse(
            mid, hi, fmid, frm, fhi, right, eps / 2.0, depth - 1
        )

    if a == b:
        return 0.0
    mid = 0.5 * (a + b)
    fa, fm, fb = f(a), f(mid), f(b)
    whole = simpson(a, b, fa, fm, fb)
    return recurse(a, b, fa, fm, fb, whole, tol, 40)


def lyapunov(
    x: Sequence[float],
    x_bar: Sequence[float],
    kinetics: KineticsSpec = MASS_ACTION,
    quad_tol: float = 1e-10,
) -> tuple[float, np.ndarray]:
    """Relative-entropy Lyapunov value and gradient at x for reference x_bar.

    Mass action: ``sum x_i (ln x_i - ln xbar_i - 1) + xbar_i`` with gradient
    ``ln x_i - ln xbar_i``.  Generalized kinetics integrates
    ``ln theta_i(s) - ln theta_i(xbar_i)`` from ``xbar_i`` to ``x_i`` by
    adaptive Simpson quadrature.
    """
    xa = np.asarray(x, dtype=float)
    xb = np.asarray(x_bar, dtype=float)
    if np.any(xa <= 0) or np.any(xb <= 0):
        raise ValueError("lyapunov arguments must be entrywise positive")
    if kinetics.is_mass_action:
        value = float(np.sum(xa * (np.log(xa) - np.log(xb) - 1.0) + xb))
        return value, np.log(xa) - np.log(xb)
    assert kinetics.theta is not None
    value = 0.0
    grad = np.zeros_like(xa)
    for i, th in enumerate(kinetics.theta):
        rho_bar = math.log(th(float(xb[i])))
        value += _adaptive_simpson(
            lambda s, th=th, rb=rho_bar: math.log(th(s)) - rb,
            float(xb[i]),
            float(xa[i]),
            quad_tol,
        )
        grad[i] = math.log(th(float(xa[i]))) - rho_bar
    return value, grad


@dataclass(frozen=True)
class Trajectory:
    """Accepted integrator states with Lyapunov and conservation diagnostics."""

    times: np.ndarray
    states: np.ndarray
    lyapunov: Optional[np.ndarray]
    conservation_residual: np.ndarray

    def __len__(self) -> int:
        return len(self.times)


# Fehlberg 4(5) tableau.
_RKF_A = (
    (),
    (1 / 4,),
    (3 / 32, 9 / 32),
    (1932 / 2197, -7200 / 2197, 7296 / 2197),
    (439 / 216, -8.0, 3680 / 513, -845 / 4104),
    (-8 / 27, 2.0, -3544 / 2565, 1859 / 4104, -11 / 40),
)
_RKF_B5 = (16 / 135, 0.0, 6656 / 12825, 28561 / 56430, -9 / 50, 2 / 55)
_RKF_B4 = (25 / 216, 0.0, 1408 / 2565, 2197 / 4104, -1 / 5, 0.0)

_H_FLOOR = 1e-14


def simulate(
    net: ReactionNetwork,
    kinetics: KineticsSpec,
    x0: Sequence[float],
    t_end: float,
    rtol: float = 1e-8,
    atol: float = 1e-10,
    x_ref: Optional[Sequence[float]] = None,
    max_steps: int = 2_000_000,
) -> Trajectory:
    """Integrate the network ODE with an adaptive Fehlberg 4(5) stepper.

    Steps whose stages or proposed state leave the positive orthant are
    rejected and retried at half the step; the run aborts if the step falls
    under ``1e-14``.  Records every accepted state together with the
    Lyapunov value (when ``x_ref`` is given) and the worst conservation-law
    drift relative to the initial state.
    """
    x = np.asarray(x0, dtype=float)
    if x.shape != (net.num_species,):
        raise ValueError("initial state dimension differs from species count")
    if np.any(x <= 0):
        raise ValueError("initial state must be entrywise positive")
    if not t_end > 0:
        raise ValueError("t_end must be positive")
    ref = None if x_ref is None else np.asarray(x_ref, dtype=float)

    cons = conservation_basis(net)
    w_mat = np.array(cons.vectors, dtype=float) if cons.vectors else np.zeros((0, x.size))

    def f(state: np.ndarray) -> np.ndarray:
        return rhs(net, kinetics, state)

    times = [0.0]
    states = [x.copy()]
    lyap = None
    if ref is not None:
        lyap = [lyapunov(x, ref, kinetics)[0]]
    residuals = [0.0]

    t = 0.0
    f0 = f(x)
    h = min(t_end, 0.01 * (1.0 + float(np.max(np.abs(x)))) / (1.0 + float(np.max(np.abs(f0)))))
    steps = 0
    while t < t_end:
        remaining = t_end - t
        if remaining < _H_FLOOR:
            break  # endpoint reached to within step resolution
        if steps >= max_steps:
            raise IntegrationError(f"exceeded {max_steps} steps at t={t}")
        steps += 1
        if h < _H_FLOOR:
            raise IntegrationError(f"step size underflow at t={t}")
        h = min(h, remaining)

        ks = [f(x)]
        positive = True
        for stage in range(1, 6):
            xs = x + h * sum(a * k for a, k in zip(_RKF_A[stage], ks))
            if np.any(xs < 0):
                positive = False
                break
            ks.append(f(xs))
        if positive:
            x5 = x + h * sum(b * k for b, k in zip(_RKF_B5, ks))
            if np.any(x5 <= 0):
                positive = False
        if not positive:
            h *= 0.5
            continue
        x4 = x + h * sum(b * k for b, k in zip(_RKF_B4, ks))
        scale = atol + rtol * np.maximum(np.abs(x), np.abs(x5))
        err = float(np.sqrt(np.mean(((x5 - x4) / scale) ** 2)))
        if not math.isfinite(err):
            raise IntegrationError(f"non-finite state at t={t}")
        if err <= 1.0:
            t += h
            x = x5
            times.append(t)
            states.append(x.copy())
            if lyap is not None:
                lyap.append(lyapunov(x, ref, kinetics)[0])
            drift = w_mat @ (x - states[0])
            residuals.append(float(np.max(np.abs(drift))) if drift.size else 0.0)
            factor = 5.0 if err == 0.0 else min(5.0, max(0.2, 0.9 * err**-0.2))
        else:
            factor = max(0.2, 0.9 * err**-0.2)
        h *= factor

    return Trajectory(
        times=np.array(times),
        states=np.array(states),
        lyapunov=None if lyap is None else np.array(lyap),
        conservation_residual=np.array(residuals),
    )


def write_trajectory_csv(traj: Trajectory, names: Sequence[str], fh) -> None:
    """CSV with header ``t,<species...>,V,conservation_residual``."""
    fh.write("t," + ",".join(names) + ",V,conservation_residual\n")
    for i in range(len(traj)):
        v = traj.lyapunov[i] if traj.lyapunov is not None else float("nan")
        row = [repr(float(traj.times[i]))]
        row += [repr(float(s)) for s in traj.states[i]]
        row += [repr(float(v)), repr(float(traj.conservation_residual[i]))]
        fh.write(",".join(row) + "\n")


def _complex_matrix(net: ReactionNetwork) -> np.ndarray:
    cxs = net.complexes
    y = np.zeros((len(cxs), net.num_species))
    for row, c in enumerate(cxs):
        for i, k in c.terms:
            y[row, i] = k
    return y


def complex_balanced_point(net: ReactionNetwork) -> np.ndarray:
    """One positive state at which every complex's inflow equals its outflow.

    Per linkage class, the kernel of the rate-weighted graph Laplacian on
    the complexes is one-dimensional with a positive representative; matching
    complex monomials to that kernel is then a linear solve in log space.
    Requires weak reversibility and deficiency zero.
    """
    report = structure_report(net)
    if not report.weakly_reversible:
        raise HypothesesError("complex balancing requires a weakly reversible network")
    if report.deficiency != 0:
        raise HypothesesError(
            f"complex balancing requires deficiency zero, got {report.deficiency}"
        )
    n = len(net.complexes)
    idx = net.complex_index
    lap = np.zeros((n, n))
    for r in net.reactions:
        j = idx[r.source]
        i = idx[r.product]
        lap[i, j] += r.rate
        lap[j, j] -= r.rate
    kappa = np.zeros(n)
    for block in report.linkage_classes:
        sel = np.ix_(block, block)
        sub = lap[sel]
        _, svals, vt = np.linalg.svd(sub)
        v = vt[-1]
        if v.sum() < 0:
            v = -v
        if np.min(v) <= 0:
            raise ArithmeticError("Laplacian kernel vector is not strictly positive")
        kappa[list(block)] = v / np.max(v)
    y = _complex_matrix(net)
    l = len(report.linkage_classes)
    indicator = np.zeros((n, l))
    for b_idx, block in enumerate(report.linkage_classes):
        indicator[list(block), b_idx] = 1.0
    system = np.hstack([y, -indicator])
    solution, *_ = np.linalg.lstsq(system, np.log(kappa), rcond=None)
    x_star = np.exp(solution[: net.num_species])
    residual = complex_balance_residual(net, x_star)
    if residual > 1e-9:
        raise ArithmeticError(
            f"complex balance residual {residual:.3e} (network may be inconsistent)"
        )
    return x_star


def complex_balance_residual(net: ReactionNetwork, x: Sequence[float]) -> float:
    """Relative worst-case gap between inflow and outflow over all complexes."""
    rates = reaction_rates(net, MASS_ACTION, x)
    idx = net.complex_index
    inflow = np.zeros(len(net.complexes))
    outflow = np.zeros(len(net.complexes))
    for r_idx, r in enumerate(net.reactions):
        outflow[idx[r.source]] += rates[r_idx]
        inflow[idx[r.product]] += rates[r_idx]
    scale = max(float(np.max(inflow)), float(np.max(outflow)), 1e-300)
    return float(np.max(np.abs(inflow - outflow))) / scale


@dataclass(frozen=True)
class EquilibriumResult:
    x_bar: np.ndarray
    class_anchor: np.ndarray
    residual_rhs: float
    complex_balance_residual: float
    iterations: int

    def to_json_dict(self) -> dict:
        return {
            "x_bar": [float(v) for v in self.x_bar],
            "class_anchor": [float(v) for v in self.class_anchor],
            "residual_rhs": self.residual_rhs,
            "complex_balance_residual": self.complex_balance_residual,
            "iterations": self.iterations,
        }


def find_equilibrium(
    net: ReactionNetwork,
    c: Sequence[float],
    grad_tol: float = 1e-10,
    max_iter: int = 200,
) -> EquilibriumResult:
    """Unique positive equilibrium in the compatibility class anchored at c.

    Stage 1 produces a complex-balanced state ``x*``; stage 2 minimizes the
    relative entropy against ``x*`` over the class by damped Newton in the
    reaction-span coordinates, staying strictly positive.  The minimizer is
    the class equilibrium.
    """
    anchor = np.asarray(c, dtype=float)
    if anchor.shape != (net.num_species,):
        raise ValueError("class anchor dimension differs from species count")
    if np.any(anchor <= 0):
        raise HypothesesError("class anchor must be entrywise positive")
    x_star = complex_balanced_point(net)
    basis = stoichiometric_basis(net)
    b_mat = np.array(basis.vectors, dtype=float).T
    log_star = np.log(x_star)

    def objective(x: np.ndarray) -> float:
        return float(np.sum(x * (np.log(x) - log_star - 1.0) + x_star))

    alpha = np.zeros(b_mat.shape[1])
    x = anchor.copy()
    iterations = 0
    for _ in range(max_iter + 1):
        grad = b_mat.T @ (np.log(x) - log_star)
        if float(np.max(np.abs(grad))) < grad_tol:
            break
        iterations += 1
        hess = (b_mat.T * (1.0 / x)) @ b_mat
        step = np.linalg.solve(hess, -grad)
        t_ls = 1.0
        current = objective(x)
        for _ in range(60):
            candidate = anchor + b_mat @ (alpha + t_ls * step)
            if np.all(candidate > 1e-12) and objective(candidate) <= current + 1e-15 * (
                1.0 + abs(current)
            ):
                break
            t_ls *= 0.5
        else:
            raise ConvergenceError("line search failed to find a positive descent step")
        alpha = alpha + t_ls * step
        x = anchor + b_mat @ alpha
    else:
        raise ConvergenceError(
            f"Newton did not converge in {max_iter} iterations "
            f"(gradient norm {np.max(np.abs(grad)):.3e})"
        )

    # One polish step: quadratic convergence makes the final gradient tiny.
    grad = b_mat.T @ (np.log(x) - log_star)
    if float(np.max(np.abs(grad))) > 0:
        hess = (b_mat.T * (1.0 / x)) @ b_mat
        step = np.linalg.solve(hess, -grad)
        candidate = anchor + b_mat @ (alpha + step)
        if np.all(candidate > 1e-12):
            alpha = alpha + step
            x = candidate

    residual = float(np.max(np.abs(rhs(net, MASS_ACTION, x))))
    return EquilibriumResult(
        x_bar=x,
        class_anchor=anchor,
        residual_rhs=residual,
        complex_balance_residual=complex_balance_residual(net, x),
        iterations=iterations,
    )


def persistence_margin(traj: Trajectory) -> float:
    """Smallest concentration over the trailing half of the recorded times."""
    if len(traj) == 0:
        raise ValueError("trajectory is empty")
    start = len(traj) // 2
    return float(np.min(traj.states[start:]))


@dataclass(frozen=True)
class OmegaLimitDiagnostic:
    below_threshold: frozenset[int]
    semi_locking: Optional[bool]
    consistent: bool


def omega_limit_siphon_check(
    net: ReactionNetwork, traj: Trajectory, tau: float = 1e-6
) -> OmegaLimitDiagnostic:
    """Check the near-zero species of the final state against the siphon condition.

    Boundary limit points can only sit on semi-locking faces, so a final
    state hugging a non-semi-locking face indicates a transient (or an
    integrator fault), which is flagged as inconsistent.
    """
    final = traj.states[-1]
    w = frozenset(i for i, v in enumerate(final) if v < tau)
    if not w:
        return OmegaLimitDiagnostic(below_threshold=w, semi_locking=None, consistent=True)
    semi = is_semi_locking(net, w)
    return OmegaLimitDiagnostic(below_threshold=w, semi_locking=semi, consistent=semi)
