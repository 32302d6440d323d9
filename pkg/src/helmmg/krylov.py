"""Right-preconditioned Bi-CGSTAB for complex systems.

Convergence is tested on the intermediate residual ``s`` as well as on the
full-step residual; stopping on ``s`` counts as half an iteration.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import Callable, Union

import numpy as np

from helmmg.field import ComplexField
from helmmg.mgcycle import WorkReport
from helmmg.operators import DiscreteOperator, apply

log = logging.getLogger(__name__)

Preconditioner = Callable[[ComplexField], ComplexField]
Operator = Union[DiscreteOperator, Callable[[ComplexField], ComplexField]]


@dataclass
class SolveReport:
    iterations: float = 0.0
    residual_history: list[float] = field(default_factory=list)
    converged: bool = False
    tolerance: float = 1e-7
    work: WorkReport | None = None
    precond_applications: int = 0
    matvecs: int = 0
    restarts: int = 0
    breakdown: bool = False
    true_residual: float | None = None

    def to_dict(self) -> dict:
        return {
            "iterations": self.iterations,
            "converged": self.converged,
            "tolerance": self.tolerance,
            "residual_history": list(self.residual_history),
            "true_residual": self.true_residual,
            "precond_applications": self.precond_applications,
            "matvecs": self.matvecs,
            "restarts": self.restarts,
            "breakdown": self.breakdown,
            "work": self.work.to_dict() if self.work is not None else None,
        }


def _identity(r: ComplexField) -> ComplexField:
    return r.copy()


def bicgstab(
    A: Operator,
    f: ComplexField,
    P: Preconditioner | None = None,
    tol_factor: float = 1e-7,
    max_iter: int = 500,
    work: WorkReport | None = None,
) -> tuple[ComplexField, SolveReport]:
    """Solve ``A x = f`` from ``x = 0`` with right preconditioner ``P``.

    Stops at the first iterate with ``||r|| <= tol_factor * ||f||``.
    """
    matvec = (lambda v: apply(A, v)) if isinstance(A, DiscreteOperator) else A
    P = P or _identity
    geom = f.geom
    rep = SolveReport(tolerance=tol_factor, work=work)

    def Av(v: np.ndarray) -> np.ndarray:
        rep.matvecs += 1
        return matvec(ComplexField(geom, v)).values

    def Pv(v: np.ndarray) -> np.ndarray:
        rep.precond_applications += 1
        return P(ComplexField(geom, v)).values

    x = np.zeros(geom.shape, dtype=np.complex128)
    r = f.values.copy()
    fnorm = np.linalg.norm(r)
    target = tol_factor * fnorm
    rep.residual_history.append(float(fnorm))
    if fnorm <= target or fnorm == 0.0:
        rep.converged = True
        rep.true_residual = float(fnorm)
        return ComplexField(geom, x), rep

    tiny = np.finfo(float).eps ** 2

    def start(r):
        return r.copy(), 1.0 + 0j, 1.0 + 0j, 1.0 + 0j, np.zeros_like(r), np.zeros_like(r)

    r_hat, rho, alpha, omega, v, p = start(r)
    it = 0
    while it < max_iter:
        it += 1
        rho_new = np.vdot(r_hat, r)
        if abs(rho_new) <= tiny * np.linalg.norm(r_hat) * np.linalg.norm(r) or abs(omega) == 0:
            if rep.restarts:
                rep.breakdown = True
                it -= 1
                break
            log.debug("bicgstab breakdown at iteration %d, restarting", it)
            rep.restarts += 1
            r = f.values - Av(x)
            r_hat, rho, alpha, omega, v, p = start(r)
            rho_new = np.vdot(r_hat, r)
        beta = (rho_new / rho) * (alpha / omega)
        rho = rho_new
        p = r + beta * (p - omega * v)
        p_hat = Pv(p)
        v = Av(p_hat)
        rv = np.vdot(r_hat, v)
        if abs(rv) <= tiny * np.linalg.norm(r_hat) * np.linalg.norm(v) or not np.isfinite(rv):
            rep.breakdown = True
            break
        alpha = rho / rv
        s = r - alpha * v
        x += alpha * p_hat
        snorm = np.linalg.norm(s)
        rep.residual_history.append(float(snorm))
        if snorm <= target:
            rep.iterations = it - 0.5
            rep.converged = True
            break
        s_hat = Pv(s)
        t = Av(s_hat)
        tt = np.vdot(t, t).real
        omega = np.vdot(t, s) / tt if tt > 0 else 0.0
        x += omega * s_hat
        r = s - omega * t
        rnorm = np.linalg.norm(r)
        rep.residual_history.append(float(rnorm))
        if rnorm <= target:
            rep.iterations = float(it)
            rep.converged = True
            break
        log.debug("bicgstab it=%d |s|=%.3e |r|=%.3e", it, snorm, rnorm)
    if not rep.converged:
        rep.iterations = float(it)

    sol = ComplexField(geom, x)
    rep.true_residual = float(np.linalg.norm(f.values - matvec(sol).values))
    return sol, rep
