"""
Soliton Flow Service.

Numeric search for a nilsoliton metric among diagonal metrics of the
given basis. The functional F = tr(Ric²)/tr(Ric)² is invariant under
scaling and its critical points are the metrics with Ric = cI + φ,
φ a derivation; it is minimized over log-scales by monotone gradient
descent with central finite-difference gradients.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..config.settings import AppConfig
from ..models.lie_algebra import LieAlgebra
from ..models.soliton import MetricState, SolitonReport
from .lie_structure import UngroundedAlgebraError


class FlowDivergenceError(Exception):
    """Custom exception for non-finite values during the soliton flow."""

    pass


def structure_tensor(alg: LieAlgebra) -> np.ndarray:
    """C[i, j, k] = c_ij^k (0-based), antisymmetric in i and j."""
    if not alg.is_grounded:
        raise UngroundedAlgebraError(f"The soliton flow needs a grounded algebra, got '{alg.name}'")
    n = alg.dim
    tensor = np.zeros((n, n, n))
    for (i, j), row in alg.constants().items():
        for k, c in row.items():
            tensor[i - 1, j - 1, k - 1] = float(c)
            tensor[j - 1, i - 1, k - 1] = -float(c)
    return tensor


def rescale(tensor: np.ndarray, log_scales: np.ndarray) -> np.ndarray:
    """Constants in the basis exp(s_i)·e_i; the last axis of ``log_scales`` is the basis."""
    s = np.asarray(log_scales)
    exponent = s[..., :, None, None] + s[..., None, :, None] - s[..., None, None, :]
    return tensor * np.exp(exponent)


def ricci_tensor(scaled: np.ndarray) -> np.ndarray:
    """
    Ricci operator of the orthonormal basis with constants ``scaled``.

    Ric_ab = -1/2 Σ_ik C_aik C_bik + 1/4 Σ_ij C_ija C_ijb; leading batch
    axes are carried through.
    """
    return (
        -0.5 * np.einsum("...aik,...bik->...ab", scaled, scaled)
        + 0.25 * np.einsum("...ija,...ijb->...ab", scaled, scaled)
    )


def ricci(state: MetricState) -> np.ndarray:
    return ricci_tensor(rescale(structure_tensor(state.algebra), np.array(state.log_scales)))


def functional_values(tensor: np.ndarray, log_scales: np.ndarray) -> np.ndarray:
    """F = tr(Ric²)/tr(Ric)² for one state or a batch of states; 0 where Ric vanishes."""
    ric = ricci_tensor(rescale(tensor, log_scales))
    square = np.einsum("...ab,...ab->...", ric, ric)
    trace = np.einsum("...aa->...", ric)
    denominator = trace * trace
    safe = np.where(denominator > 0, denominator, 1.0)
    return np.where(denominator > 0, square / safe, 0.0)


def functional(state: MetricState) -> float:
    return float(functional_values(structure_tensor(state.algebra), np.array(state.log_scales)))


def gradient(tensor: np.ndarray, log_scales: np.ndarray, h: float = 1e-6) -> np.ndarray:
    """Central finite-difference gradient of F, all 2n evaluations in one batch."""
    n = len(log_scales)
    shifts = h * np.eye(n)
    batch = np.concatenate([log_scales + shifts, log_scales - shifts])
    values = functional_values(tensor, batch)
    return (values[:n] - values[n:]) / (2 * h)


def _diagonal_derivation_basis(tensor: np.ndarray) -> np.ndarray:
    n = tensor.shape[0]
    rows = []
    for i, j, k in zip(*np.nonzero(tensor)):
        if i < j:
            row = np.zeros(n)
            row[k] += 1.0
            row[i] -= 1.0
            row[j] -= 1.0
            rows.append(row)
    if not rows:
        return np.eye(n)
    matrix = np.array(rows)
    _, singular, vt = np.linalg.svd(matrix)
    rank = int(np.sum(singular > 1e-10 * max(1.0, singular[0])))
    return vt[rank:].T


def derivation_violation(scaled: np.ndarray, phi: np.ndarray) -> float:
    """
    Largest |C_ijk (φ_k − φ_i − φ_j)| relative to 3·max|φ|·max|C|.

    Zero exactly when diag(φ) is a derivation of the constants ``scaled``.
    """
    violation = scaled * (phi[None, None, :] - phi[:, None, None] - phi[None, :, None])
    worst = float(np.max(np.abs(violation), initial=0.0))
    scale = 3.0 * float(np.max(np.abs(phi), initial=0.0) * np.max(np.abs(scaled), initial=0.0))
    return worst / scale if scale > 0 else worst


def fit_soliton(tensor: np.ndarray, log_scales: np.ndarray) -> Tuple[float, np.ndarray, float, float]:
    """
    Fit Ric ≈ cI + φ.

    c comes from a least-squares fit of diag(Ric) by constants plus
    diagonal derivations; φ = diag(Ric) − c is then left unconstrained,
    so its derivation-identity violation measures how far the metric is
    from a soliton.

    Returns:
        Tuple of c, φ, the residual ‖Ric − cI − D‖₂ relative to ‖Ric‖₂
        (absolute when Ric = 0) for the best diagonal derivation D, and
        the relative derivation-identity violation of φ
    """
    n = tensor.shape[0]
    scaled = rescale(tensor, log_scales)
    ric = ricci_tensor(scaled)
    basis = _diagonal_derivation_basis(tensor)

    design = np.column_stack([np.ones(n), basis])
    coefficients, *_ = np.linalg.lstsq(design, np.diag(ric), rcond=None)
    c = float(coefficients[0])
    derivation = basis @ coefficients[1:]

    difference = ric - c * np.eye(n) - np.diag(derivation)
    norm = np.linalg.norm(ric, 2)
    residual = float(np.linalg.norm(difference, 2) / norm) if norm > 0 else float(np.linalg.norm(difference, 2))

    phi = np.diag(ric) - c
    return c, phi, residual, derivation_violation(scaled, phi)


class SolitonFlowService:
    """
    Runs the soliton flow and verifies candidate metrics.

    Defaults for step, iteration cap and tolerance come from AppConfig.
    """

    def __init__(self, config: Optional[AppConfig] = None):
        """
        Initialize the service.

        Args:
            config: Application configuration; defaults are used when omitted
        """
        self.config = config or AppConfig()
        self.logger = logging.getLogger(__name__)

    def verify_soliton(self, state: MetricState, tol: Optional[float] = None) -> SolitonReport:
        """Fit Ric = cI + φ at ``state`` without iterating."""
        tol = self.config.flow_tol if tol is None else tol
        tensor = structure_tensor(state.algebra)
        log_scales = np.array(state.log_scales)
        return self._report(state.algebra, tensor, log_scales, tol, iterations=0)

    def flow(
        self,
        alg: LieAlgebra,
        max_iter: Optional[int] = None,
        step: Optional[float] = None,
        tol: Optional[float] = None,
    ) -> SolitonReport:
        """
        Minimize F over log-scales starting from the unit metric.

        An accepted step (F does not increase beyond rounding) grows the
        step by 10% up to ``flow_max_step``; a rejected one halves it.
        The fit is checked every ``flow_check_every`` iterations.

        Raises:
            FlowDivergenceError: If F or its gradient stops being finite
        """
        max_iter = self.config.flow_max_iter if max_iter is None else max_iter
        step = self.config.flow_step if step is None else step
        tol = self.config.flow_tol if tol is None else tol
        h = self.config.flow_fd_step
        check_every = self.config.flow_check_every
        max_step = self.config.flow_max_step

        tensor = structure_tensor(alg)
        s = np.zeros(alg.dim)
        value = float(functional_values(tensor, s))

        report = self._report(alg, tensor, s, tol, iterations=0)
        if report.converged:
            return report

        iteration = 0
        for iteration in range(1, max_iter + 1):
            grad = gradient(tensor, s, h)
            if not np.all(np.isfinite(grad)):
                raise FlowDivergenceError(f"Non-finite gradient at iteration {iteration} for '{alg.name}'")

            trial = s - step * grad
            trial_value = float(functional_values(tensor, trial))
            if not np.isfinite(trial_value):
                raise FlowDivergenceError(
                    f"Non-finite functional at iteration {iteration} for '{alg.name}' (step {step:g})"
                )

            if trial_value <= value + 1e-13 * abs(value):
                s = trial - trial.mean()
                value = trial_value
                step = min(step * 1.1, max_step)
            else:
                step /= 2
                self.logger.debug(f"Rejected step at iteration {iteration}, step now {step:g}")
                if step < 1e-300:
                    break

            if iteration % check_every == 0:
                report = self._report(alg, tensor, s, tol, iteration, value)
                self.logger.debug(
                    f"Iteration {iteration}: F = {value:.12g}, residual = {report.residual:.3g}"
                )
                if report.converged:
                    self.logger.info(f"Soliton flow for '{alg.name}' converged after {iteration} iterations")
                    return report

        report = self._report(alg, tensor, s, tol, iteration, value)
        if not report.converged:
            self.logger.warning(
                f"Soliton flow for '{alg.name}' stopped after {iteration} iterations, residual {report.residual:.3g}"
            )
        return report

    def _report(
        self,
        alg: LieAlgebra,
        tensor: np.ndarray,
        log_scales: np.ndarray,
        tol: float,
        iterations: int,
        value: Optional[float] = None,
    ) -> SolitonReport:
        c, phi, residual, derivation_residual = fit_soliton(tensor, log_scales)
        if value is None:
            value = float(functional_values(tensor, log_scales))
        return SolitonReport(
            name=alg.name,
            c=c,
            phi_diag=[float(v) for v in phi],
            residual=residual,
            derivation_residual=derivation_residual,
            converged=residual < tol and derivation_residual < tol,
            iterations=iterations,
            functional=value,
            log_scales=[float(v) for v in log_scales],
        )
