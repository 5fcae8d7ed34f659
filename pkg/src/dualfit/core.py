"""Straight-line fitting under a blended squared-error objective.

The objective weighs squared vertical residuals by ``gamma`` and squared
horizontal residuals by ``1 - gamma``, with ``gamma`` in [0, 1].  For any
weight the optimal intercept keeps the line through the centroid of the data;
the optimal slope is the admissible real root of a quartic polynomial built
from the sufficient statistics.  The two endpoint weights reduce to the
classical closed forms: regression of y on x at ``gamma = 1`` and inverse
regression (x on y, re-expressed as a slope in y over x) at ``gamma = 0``.

Only positively correlated data has a well-defined fit here.  Negatively
correlated data can be handled by reflecting y, fitting, and negating the
slope; see ``FitConfig.negative_correlation_policy``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Literal

import numpy as np

from .errors import (
    DegenerateData,
    InvalidInput,
    NoAdmissibleRoot,
    NonPositiveCorrelation,
    SingularSlope,
    SolverFailure,
    ZeroCorrelation,
)

NegativeCorrelationPolicy = Literal["error", "reflect"]

# |rho| below this is indistinguishable from zero correlation.
ZERO_RHO_TOL = 1e-12

# Companion-matrix eigenvalues with a relative imaginary part above this are
# treated as genuinely complex and discarded.
_IMAG_TOL = 1e-6

# Two polished roots closer than this collapse to one representative.
_ROOT_MERGE_TOL = 1e-9


# ---------------------------------------------------------------------------
# data containers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Dataset:
    """Paired observations, stored as two equal-length read-only float arrays."""

    x: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        x = np.atleast_1d(np.array(self.x, dtype=float))
        y = np.atleast_1d(np.array(self.y, dtype=float))
        if x.ndim != 1 or y.ndim != 1:
            raise InvalidInput("x and y must be one-dimensional")
        if x.shape != y.shape:
            raise InvalidInput(f"x has {x.size} values but y has {y.size}")
        if x.size < 2:
            raise InvalidInput(f"need at least 2 points, got {x.size}")
        if not (np.isfinite(x).all() and np.isfinite(y).all()):
            raise InvalidInput("coordinates must be finite")
        x.setflags(write=False)
        y.setflags(write=False)
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", y)

    @classmethod
    def from_points(cls, points: Iterable[tuple[float, float]]) -> "Dataset":
        """Build a Dataset from an iterable of (x, y) pairs."""
        try:
            arr = np.asarray(list(points), dtype=float)
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"points are not numeric pairs: {exc}") from exc
        if arr.size == 0:
            raise InvalidInput("need at least 2 points, got 0")
        if arr.ndim != 2 or arr.shape[1] != 2:
            raise InvalidInput("points must be (x, y) pairs")
        return cls(arr[:, 0], arr[:, 1])

    def __len__(self) -> int:
        return int(self.x.size)


@dataclass(frozen=True)
class SufficientStats:
    """Count, means, and centered second-order sums of a dataset.

    ``s_xx``, ``s_yy``, ``s_xy`` are sums (not variances) of centered
    products, and ``rho`` is the sample correlation ``s_xy / sqrt(s_xx*s_yy)``
    clamped to [-1, 1].
    """

    n: int
    x_bar: float
    y_bar: float
    s_xx: float
    s_yy: float
    s_xy: float
    rho: float

    def __post_init__(self):
        if self.n < 2:
            raise InvalidInput(f"need at least 2 points, got {self.n}")
        fields = (self.x_bar, self.y_bar, self.s_xx, self.s_yy, self.s_xy, self.rho)
        if not all(math.isfinite(v) for v in fields):
            raise InvalidInput("statistics must be finite")
        if self.s_xx < 0.0 or self.s_yy < 0.0:
            raise InvalidInput("centered sums of squares cannot be negative")
        if abs(self.rho) > 1.0:
            raise InvalidInput(f"correlation must lie in [-1, 1], got {self.rho}")
        # Cauchy-Schwarz, with room for round-off on collinear data
        if self.s_xy * self.s_xy > self.s_xx * self.s_yy * (1.0 + 1e-12):
            raise InvalidInput("s_xy^2 exceeds s_xx * s_yy")
        if self.s_xx > 0.0 and self.s_yy > 0.0:
            implied = self.s_xy / math.sqrt(self.s_xx * self.s_yy)
            if abs(self.rho - max(-1.0, min(1.0, implied))) > 1e-9:
                raise InvalidInput(
                    f"rho {self.rho} disagrees with s_xy/sqrt(s_xx*s_yy) = {implied}"
                )


@dataclass(frozen=True)
class FitConfig:
    """Residual weight and numerical policy for a single fit."""

    gamma: float
    root_residual_tol: float = 1e-10
    oracle_tol: float = 1e-9
    bound_slack: float = 1e-8
    negative_correlation_policy: NegativeCorrelationPolicy = "error"

    def __post_init__(self):
        if not 0.0 <= self.gamma <= 1.0:
            raise InvalidInput(f"gamma must lie in [0, 1], got {self.gamma}")
        for name in ("root_residual_tol", "oracle_tol", "bound_slack"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0.0):
                raise InvalidInput(f"{name} must be positive and finite, got {value}")
        if self.negative_correlation_policy not in ("error", "reflect"):
            raise InvalidInput(
                f"unknown negative_correlation_policy {self.negative_correlation_policy!r}"
            )


@dataclass(frozen=True)
class Quartic:
    """Degree-4 polynomial, coefficients highest degree first."""

    coeffs: tuple[float, float, float, float, float]

    def __post_init__(self):
        if len(self.coeffs) != 5:
            raise InvalidInput(f"expected 5 coefficients, got {len(self.coeffs)}")
        coeffs = tuple(float(c) for c in self.coeffs)
        if not all(math.isfinite(c) for c in coeffs):
            raise InvalidInput("coefficients must be finite")
        object.__setattr__(self, "coeffs", coeffs)

    def __call__(self, b: float) -> float:
        value = 0.0
        for c in self.coeffs:
            value = value * b + c
        return value

    def derivative(self, b: float) -> float:
        c4, c3, c2, c1, _ = self.coeffs
        return ((4.0 * c4 * b + 3.0 * c3) * b + 2.0 * c2) * b + c1

    @property
    def scale(self) -> float:
        """Magnitude reference for residual tests: max(1, largest |coefficient|)."""
        return max(1.0, max(abs(c) for c in self.coeffs))


@dataclass(frozen=True)
class FittedLine:
    """A fitted line plus the diagnostics of how its slope was chosen.

    ``candidate_roots`` holds every real root of the slope quartic (empty for
    the closed-form endpoint weights) and ``selected_root_residual`` the
    absolute polynomial value at the chosen slope.  ``notes`` carries
    human-readable flags such as reflection or a bound violation.
    """

    beta0: float
    beta1: float
    gamma: float
    sse: float
    candidate_roots: tuple[float, ...] = ()
    selected_root_residual: float = 0.0
    notes: tuple[str, ...] = ()


# ---------------------------------------------------------------------------
# statistics and the objective
# ---------------------------------------------------------------------------


def compute_stats(data: Dataset) -> SufficientStats:
    """Two-pass sufficient statistics of a dataset.

    Means first, then centered sums of squares and products.  Round-off can
    push the correlation a hair past 1 in magnitude for collinear data, so it
    is clamped to [-1, 1].

    Raises
    ------
    DegenerateData
        If all x values or all y values coincide.
    """
    x, y = data.x, data.y
    n = int(x.size)
    x_bar = float(x.mean())
    y_bar = float(y.mean())
    dx = x - x_bar
    dy = y - y_bar
    s_xx = float(dx @ dx)
    s_yy = float(dy @ dy)
    s_xy = float(dx @ dy)
    if s_xx == 0.0:
        raise DegenerateData("all x values are identical")
    if s_yy == 0.0:
        raise DegenerateData("all y values are identical")
    rho = s_xy / math.sqrt(s_xx * s_yy)
    rho = max(-1.0, min(1.0, rho))
    return SufficientStats(
        n=n, x_bar=x_bar, y_bar=y_bar, s_xx=s_xx, s_yy=s_yy, s_xy=s_xy, rho=rho
    )


def sse(stats: SufficientStats, beta0: float, beta1: float, gamma: float) -> float:
    """Blended objective from sufficient statistics alone.

    Vertical squared residuals carry weight ``gamma``, horizontal squared
    residuals ``1 - gamma``.  The horizontal term divides by ``beta1`` and is
    only evaluated when ``gamma < 1``; at ``gamma = 1`` any slope is allowed.

    Raises
    ------
    SingularSlope
        If ``beta1 == 0`` while ``gamma < 1``.
    """
    n = stats.n
    x_bar, y_bar = stats.x_bar, stats.y_bar
    s_xx, s_yy, s_xy = stats.s_xx, stats.s_yy, stats.s_xy
    misfit = y_bar - beta0 - beta1 * x_bar
    vertical = s_yy - 2.0 * beta1 * s_xy + beta1 * beta1 * s_xx + n * misfit * misfit
    total = gamma * vertical
    if gamma < 1.0:
        if beta1 == 0.0:
            raise SingularSlope("horizontal residuals are undefined at beta1 = 0")
        horizontal = (
            beta1 * beta1 * s_xx - 2.0 * beta1 * s_xy + s_yy + n * misfit * misfit
        ) / (beta1 * beta1)
        total += (1.0 - gamma) * horizontal
    return float(total)


def sse_gradient(
    stats: SufficientStats, beta0: float, beta1: float, gamma: float
) -> tuple[float, float]:
    """Analytic gradient (d/d beta0, d/d beta1) of :func:`sse`.

    Raises
    ------
    SingularSlope
        If ``beta1 == 0``.
    """
    if beta1 == 0.0:
        raise SingularSlope("gradient is undefined at beta1 = 0")
    n = stats.n
    # raw power sums, reconstructed from the centered ones
    sum_x = n * stats.x_bar
    sum_y = n * stats.y_bar
    sum_xx = stats.s_xx + n * stats.x_bar * stats.x_bar
    sum_yy = stats.s_yy + n * stats.y_bar * stats.y_bar
    sum_xy = stats.s_xy + n * stats.x_bar * stats.y_bar

    b1sq = beta1 * beta1
    b1cu = b1sq * beta1
    g0 = 2.0 * (n * beta0 - (sum_y - beta1 * sum_x)) * (gamma * b1sq + 1.0 - gamma) / b1sq
    g1 = gamma * (-2.0 * sum_xy + 2.0 * beta0 * sum_x + 2.0 * beta1 * sum_xx)
    g1 += (1.0 - gamma) * (
        -2.0 * n * beta0 * beta0 / b1cu
        + 2.0 * sum_xy / b1sq
        - 2.0 * beta0 * sum_x / b1sq
        - 2.0 * sum_yy / b1cu
        + 4.0 * beta0 * sum_y / b1cu
    )
    return float(g0), float(g1)


def intercept(stats: SufficientStats, beta1: float) -> float:
    """Optimal intercept for a given slope: keeps the line through the centroid."""
    return stats.y_bar - beta1 * stats.x_bar


# ---------------------------------------------------------------------------
# the slope quartic
# ---------------------------------------------------------------------------


def build_quartic(stats: SufficientStats, gamma: float) -> Quartic:
    """Quartic in the slope whose admissible root minimizes the objective.

    Coefficients, highest degree first:
    ``(gamma*sqrt(s_xx/s_yy), -gamma*rho, 0, (1-gamma)*rho,
    -(1-gamma)*sqrt(s_yy/s_xx))``.

    Only interior weights go through the quartic; the endpoint weights have
    closed-form slopes and raise InvalidInput here.
    """
    if stats.s_xx <= 0.0 or stats.s_yy <= 0.0:
        raise DegenerateData("slope quartic needs positive spread in x and y")
    if not 0.0 < gamma < 1.0:
        raise InvalidInput(f"quartic is defined for 0 < gamma < 1, got {gamma}")
    ratio_xy = math.sqrt(stats.s_xx / stats.s_yy)
    ratio_yx = math.sqrt(stats.s_yy / stats.s_xx)
    return Quartic(
        (
            gamma * ratio_xy,
            -gamma * stats.rho,
            0.0,
            (1.0 - gamma) * stats.rho,
            -(1.0 - gamma) * ratio_yx,
        )
    )


def _polish(q: Quartic, start: float, max_iter: int = 60) -> float:
    # Newton refinement that keeps the best iterate seen; stops once the
    # residual has not improved for a few steps or the update stalls.
    r = start
    fr = q(r)
    best_r, best_f = r, abs(fr)
    stale = 0
    for _ in range(max_iter):
        if fr == 0.0:
            return r
        d = q.derivative(r)
        if d == 0.0:
            break
        step = fr / d
        r_next = r - step
        if not math.isfinite(r_next) or r_next == r:
            break
        r = r_next
        fr = q(r)
        if abs(fr) < best_f:
            best_r, best_f = r, abs(fr)
            stale = 0
        else:
            stale += 1
            if stale >= 3:
                break
    return best_r


def real_roots(q: Quartic, residual_tol: float = 1e-10) -> tuple[float, ...]:
    """All real roots of ``q``, polished and sorted ascending.

    Candidates come from the companion-matrix eigenvalues.  Each near-real
    candidate is Newton-polished and must satisfy
    ``|q(r)| <= residual_tol * max(1, max |coefficient|)``; coincident roots
    collapse to a single representative.

    Raises
    ------
    SolverFailure
        If polishing cannot reach the residual tolerance for some candidate.
    """
    if q.coeffs[0] == 0.0:
        raise InvalidInput("leading coefficient must be nonzero")
    target = residual_tol * q.scale
    polished = []
    for z in np.roots(q.coeffs):
        if abs(z.imag) > _IMAG_TOL * max(1.0, abs(z)):
            continue
        r = _polish(q, float(z.real))
        residual = abs(q(r))
        if residual > target:
            raise SolverFailure(
                f"residual {residual:.3e} at root candidate {r!r} "
                f"exceeds tolerance {target:.3e}"
            )
        polished.append(r)
    polished.sort()
    merged: list[float] = []
    for r in polished:
        if merged and abs(r - merged[-1]) <= _ROOT_MERGE_TOL * (1.0 + abs(r)):
            continue
        merged.append(r)
    return tuple(merged)


# ---------------------------------------------------------------------------
# slope selection and the fit
# ---------------------------------------------------------------------------


def slope_bounds(stats: SufficientStats) -> tuple[float, float]:
    """Interval guaranteed to contain the optimal slope for every weight.

    Returns ``(rho*sqrt(s_yy/s_xx), sqrt(s_yy/s_xx)/rho)``.  The two ends are
    the closed-form endpoint slopes and coincide when ``rho == 1``.

    Raises
    ------
    NonPositiveCorrelation
        If ``rho <= 0``.
    """
    if stats.s_xx <= 0.0 or stats.s_yy <= 0.0:
        raise DegenerateData("slope bounds need positive spread in x and y")
    if stats.rho <= 0.0:
        raise NonPositiveCorrelation(f"slope bounds need rho > 0, got {stats.rho:.6g}")
    ratio = math.sqrt(stats.s_yy / stats.s_xx)
    return stats.rho * ratio, ratio / stats.rho


def select_slope(
    roots: tuple[float, ...],
    stats: SufficientStats,
    gamma: float,
    config: FitConfig,
) -> float:
    """Pick the admissible slope among the quartic roots.

    Admissible means inside the slope bounds widened by ``bound_slack`` on
    each side.  With several admissible roots the one with the lowest
    objective wins, ties going to the smaller slope.  A positive root within
    ten slacks of the interval is still accepted, leaving the bound check to
    the caller's diagnostics.

    Raises
    ------
    NoAdmissibleRoot
        If no root is inside or near the interval.
    """
    lower, upper = slope_bounds(stats)
    slack = config.bound_slack

    def _within(factor: float) -> list[float]:
        lo = lower * (1.0 - factor)
        hi = upper * (1.0 + factor)
        return [r for r in roots if lo <= r <= hi]

    admissible = _within(slack)
    if not admissible:
        admissible = [r for r in _within(10.0 * slack) if r > 0.0]
    if not admissible:
        raise NoAdmissibleRoot(
            f"no positive root in or near [{lower:.6g}, {upper:.6g}]; "
            f"candidates: {sorted(roots)}"
        )
    return min(admissible, key=lambda r: (sse(stats, intercept(stats, r), r, gamma), r))


def _reflected(stats: SufficientStats) -> SufficientStats:
    # statistics of (x, -y); negation is exact in floating point
    return SufficientStats(
        n=stats.n,
        x_bar=stats.x_bar,
        y_bar=-stats.y_bar,
        s_xx=stats.s_xx,
        s_yy=stats.s_yy,
        s_xy=-stats.s_xy,
        rho=-stats.rho,
    )


def _closed_form(stats: SufficientStats, beta1: float, gamma: float) -> FittedLine:
    beta0 = intercept(stats, beta1)
    return FittedLine(
        beta0=beta0,
        beta1=beta1,
        gamma=gamma,
        sse=sse(stats, beta0, beta1, gamma),
        candidate_roots=(),
        selected_root_residual=0.0,
    )


def fit_stats(stats: SufficientStats, config: FitConfig) -> FittedLine:
    """Fit from sufficient statistics; see :func:`fit` for the full contract."""
    if abs(stats.rho) < ZERO_RHO_TOL:
        raise ZeroCorrelation(f"correlation {stats.rho:.3g} is numerically zero")
    if stats.rho < 0.0:
        if config.negative_correlation_policy != "reflect":
            raise NonPositiveCorrelation(
                f"rho = {stats.rho:.6g} < 0; pass the reflect policy to fit anyway"
            )
        mirrored = _fit_positive(_reflected(stats), config)
        beta1 = -mirrored.beta1
        return FittedLine(
            beta0=stats.y_bar - beta1 * stats.x_bar,
            beta1=beta1,
            gamma=config.gamma,
            sse=mirrored.sse,
            candidate_roots=tuple(sorted(-r for r in mirrored.candidate_roots)),
            selected_root_residual=mirrored.selected_root_residual,
            notes=mirrored.notes + ("fitted on (x, -y) and negated the slope",),
        )
    return _fit_positive(stats, config)


def _fit_positive(stats: SufficientStats, config: FitConfig) -> FittedLine:
    gamma = config.gamma
    if gamma == 1.0:
        return _closed_form(stats, stats.s_xy / stats.s_xx, gamma)
    if gamma == 0.0:
        return _closed_form(stats, stats.s_yy / stats.s_xy, gamma)

    quartic = build_quartic(stats, gamma)
    roots = real_roots(quartic, config.root_residual_tol)
    beta1 = select_slope(roots, stats, gamma, config)
    lower, upper = slope_bounds(stats)

    notes: tuple[str, ...] = ()
    if not lower * (1.0 - config.bound_slack) <= beta1 <= upper * (1.0 + config.bound_slack):
        notes = (f"slope {beta1:.12g} sits just outside [{lower:.12g}, {upper:.12g}]",)

    beta0 = intercept(stats, beta1)
    value = sse(stats, beta0, beta1, gamma)
    # the stationary point must beat both interval endpoints, equality allowed
    for endpoint in (lower, upper):
        endpoint_value = sse(stats, intercept(stats, endpoint), endpoint, gamma)
        if value > endpoint_value * (1.0 + 1e-9) + 1e-12:
            raise NoAdmissibleRoot(
                f"root {beta1:.12g} has objective {value:.12g}, worse than "
                f"{endpoint_value:.12g} at bound {endpoint:.12g}"
            )
    return FittedLine(
        beta0=beta0,
        beta1=beta1,
        gamma=gamma,
        sse=value,
        candidate_roots=roots,
        selected_root_residual=abs(quartic(beta1)),
        notes=notes,
    )


def fit(data: Dataset, config: FitConfig) -> FittedLine:
    """Fit the line minimizing the blended squared-error objective.

    Parameters
    ----------
    data : Dataset
        Paired observations, at least two points, finite coordinates.
    config : FitConfig
        Residual weight ``gamma`` plus numerical tolerances and the policy
        for negatively correlated data.

    Returns
    -------
    FittedLine
        Slope, intercept, achieved objective, and root diagnostics.  The
        intercept always equals ``y_bar - beta1 * x_bar``.

    Raises
    ------
    DegenerateData
        If all x or all y coincide.
    ZeroCorrelation
        If the correlation is numerically zero.
    NonPositiveCorrelation
        If the correlation is negative and the policy is ``"error"``.
    NoAdmissibleRoot
        If no quartic root is admissible (not expected for valid data).
    """
    return fit_stats(compute_stats(data), config)


# ---------------------------------------------------------------------------
# using a fitted line
# ---------------------------------------------------------------------------


def predict(line: FittedLine, x: float) -> float:
    """Line value at ``x``."""
    return line.beta0 + line.beta1 * x


def inverse_predict(line: FittedLine, y: float) -> float:
    """The ``x`` at which the line reaches ``y``; needs a nonzero slope.

    Raises
    ------
    SingularSlope
        If the fitted slope is zero.
    """
    if line.beta1 == 0.0:
        raise SingularSlope("cannot invert a horizontal line")
    return y / line.beta1 - line.beta0 / line.beta1
