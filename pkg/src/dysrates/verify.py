"""Independent verification with explicit 2x2 operator realizations.

A complex number z embeds into the 2x2 scaled rotations [[re, -im],
[im, re]]; the embedding is a ring homomorphism, so the splitting operator
assembled from realized resolvents is itself a scaled rotation whose
spectral norm equals the symbol modulus exactly.  This gives a check on
every claimed contraction or averagedness factor that shares no code path
with the region geometry or the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .classes import (Averaged, Cocoercive, Lipschitz, Monotone,
                      OperatorClassSpec, ShiftedLipschitzBall,
                      StronglyMonotone, resolvent_srg, srg)
from .errors import SingularResolventError
from .geometry import Region, boundary_pieces
from .search import SearchConfig, search_regions
from .symbol import DysParams

I2 = np.eye(2)


def realize(z: complex) -> np.ndarray:
    """The scaled-rotation matrix acting on R^2 as multiplication by z."""
    z = complex(z)
    return np.array([[z.real, -z.imag], [z.imag, z.real]])


def rotation_value(m: np.ndarray) -> complex:
    return complex(m[0, 0], m[1, 0])


def spectral_norm_2x2(m: np.ndarray) -> float:
    """Largest singular value of a 2x2 matrix, in closed form."""
    a = m[0, 0] ** 2 + m[1, 0] ** 2
    d = m[0, 1] ** 2 + m[1, 1] ** 2
    b = m[0, 0] * m[0, 1] + m[1, 0] * m[1, 1]
    disc = math.sqrt(max((a - d) ** 2 + 4.0 * b * b, 0.0))
    return math.sqrt(max(0.5 * (a + d + disc), 0.0))


def _sym_min_eig(m: np.ndarray) -> float:
    s = 0.5 * (m + m.T)
    tr = s[0, 0] + s[1, 1]
    disc = math.sqrt(max((s[0, 0] - s[1, 1]) ** 2 + 4.0 * s[0, 1] ** 2, 0.0))
    return 0.5 * (tr - disc)


def operator_from_resolvent_point(z_j: complex, alpha: float) -> np.ndarray:
    """The operator A with resolvent value z_j: A = ((realize z_j)^{-1} - I)/alpha."""
    if z_j == 0:
        raise SingularResolventError(
            "resolvent value 0 is not invertible as a map")
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    return (realize(1.0 / complex(z_j)) - I2) / alpha


def dys_matrix(j_a: np.ndarray, j_b: np.ndarray, c: np.ndarray,
               alpha: float, lam: float) -> np.ndarray:
    """T = I - lam*J_B + lam*J_A (2 J_B - I - alpha*C J_B)."""
    return I2 - lam * j_b + lam * j_a @ (2.0 * j_b - I2 - alpha * c @ j_b)


def class_membership(m: np.ndarray, spec: OperatorClassSpec,
                     tol: float = 0.0) -> bool:
    """Check each atom's defining inequality for the linear map m."""
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    for atom in spec.atoms:
        if isinstance(atom, Monotone):
            ok = _sym_min_eig(m) >= -tol
        elif isinstance(atom, StronglyMonotone):
            ok = _sym_min_eig(m) >= atom.mu - tol
        elif isinstance(atom, Lipschitz):
            ok = spectral_norm_2x2(m) <= atom.L + tol
        elif isinstance(atom, Cocoercive):
            # <x, Mx> >= beta ||Mx||^2  <=>  sym(M) - beta M^T M psd
            ok = _sym_min_eig(m - atom.beta * (m.T @ m)) >= -tol
        elif isinstance(atom, Averaged):
            ok = spectral_norm_2x2(m - (1.0 - atom.theta) * I2) \
                <= atom.theta + tol
        elif isinstance(atom, ShiftedLipschitzBall):
            ok = spectral_norm_2x2(m - atom.center * I2) <= atom.radius + tol
        else:
            raise ValueError(f"unknown atom {atom!r}")
        if not ok:
            return False
    return True


# ---------------------------------------------------------------------------
# Randomized verification
# ---------------------------------------------------------------------------

def _random_boundary_points(region: Region, n: int,
                            rng: np.random.Generator) -> np.ndarray:
    pieces = boundary_pieces(region)
    lengths = np.array([p.length for p in pieces])
    total = lengths.sum()
    if total > 0:
        weights = lengths / total
    else:
        weights = np.full(len(pieces), 1.0 / len(pieces))
    choices = rng.choice(len(pieces), size=n, p=weights)
    ts = rng.random(n)
    out = np.empty(n, dtype=complex)
    for i, (ci, t) in enumerate(zip(choices, ts)):
        out[i] = pieces[ci].point_at(float(t))
    return out


@dataclass
class VerificationReport:
    trials: int
    rho: float
    max_norm_seen: float = 0.0
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {"trials": self.trials, "rho": self.rho,
                "max_norm_seen": self.max_norm_seen,
                "violations": self.violations, "warnings": self.warnings,
                "passed": self.passed}


class _Checker:
    def __init__(self, specs, params: DysParams, bound: float, center: float,
                 tol: float, report: VerificationReport):
        self.specs = specs
        self.params = params
        self.bound = bound
        self.center = center
        self.tol = tol
        self.report = report
        self.worst_t = None

    def check(self, z_a: complex, z_b: complex, z_c: complex,
              check_classes: bool = True) -> None:
        a_spec, b_spec, c_spec = self.specs
        alpha = self.params.alpha
        if check_classes:
            ok = (class_membership(operator_from_resolvent_point(z_a, alpha),
                                   a_spec, 1e-9)
                  and class_membership(
                      operator_from_resolvent_point(z_b, alpha), b_spec, 1e-9)
                  and class_membership(realize(z_c), c_spec, 1e-9))
            if not ok:
                self.report.violations.append(
                    {"kind": "class_membership",
                     "triple": [str(z_a), str(z_b), str(z_c)]})
                return
        t = dys_matrix(realize(z_a), realize(z_b), realize(z_c),
                       self.params.alpha, self.params.lam)
        norm = spectral_norm_2x2(t - self.center * I2)
        if norm > self.report.max_norm_seen:
            self.report.max_norm_seen = norm
            self.worst_t = t
        if norm > self.bound + self.tol:
            self.report.violations.append(
                {"kind": "norm_bound", "norm": norm, "bound": self.bound,
                 "triple": [str(z_a), str(z_b), str(z_c)]})


def _iteration_check(t: np.ndarray, limit: float,
                     rng: np.random.Generator,
                     report: VerificationReport) -> None:
    """Power iterations: ||x_k|| must stay within limit^k of ||x_0||."""
    for _ in range(10):
        x = rng.standard_normal(2)
        base = float(np.linalg.norm(x))
        if base == 0.0:
            continue
        for k in range(1, 101):
            x = t @ x
            if float(np.linalg.norm(x)) > (limit ** k) * base * (1 + 1e-12):
                report.violations.append(
                    {"kind": "iteration_growth", "step": k,
                     "ratio": float(np.linalg.norm(x) / base)})
                return


def verify_contraction(a_spec: OperatorClassSpec, b_spec: OperatorClassSpec,
                       c_spec: OperatorClassSpec, params: DysParams,
                       rho: float, n_trials: int = 1000, rng_seed: int = 0,
                       tol: float = 1e-9,
                       include_extremal: bool = True) -> VerificationReport:
    """Realize random boundary triples and test ||T|| <= rho + tol, class
    membership of the induced operators, and iterate decay on the worst
    realized T.

    include_extremal additionally probes the triple found by a coarse
    max-modulus search, which makes undersized rho values fail
    deterministically rather than only when random sampling gets lucky.
    """
    report = VerificationReport(trials=n_trials, rho=rho)
    if n_trials <= 0:
        report.warnings.append("no trials requested; vacuous pass")
        return report
    rng = np.random.default_rng(rng_seed)
    region_a = resolvent_srg(a_spec, params.alpha)
    region_b = resolvent_srg(b_spec, params.alpha)
    region_c = srg(c_spec)
    checker = _Checker((a_spec, b_spec, c_spec), params, rho, 0.0, tol,
                       report)

    zs_a = _random_boundary_points(region_a, n_trials, rng)
    zs_b = _random_boundary_points(region_b, n_trials, rng)
    zs_c = _random_boundary_points(region_c, n_trials, rng)
    for z_a, z_b, z_c in zip(zs_a, zs_b, zs_c):
        checker.check(complex(z_a), complex(z_b), complex(z_c))

    if include_extremal:
        config = SearchConfig(eps_grid=1.0 / 40.0, top_k=8)
        result = search_regions(region_a, region_b, region_c, params, config)
        checker.check(*result.best_point, check_classes=False)

    if checker.worst_t is not None:
        _iteration_check(checker.worst_t, rho + tol, rng, report)
    return report


def verify_averagedness(a_spec: OperatorClassSpec, b_spec: OperatorClassSpec,
                        c_spec: OperatorClassSpec, params: DysParams,
                        theta: float, n_trials: int = 1000,
                        rng_seed: int = 0,
                        tol: float = 1e-9) -> VerificationReport:
    """Averagedness as a norm bound: ||T - (1-theta) I|| <= theta + tol on
    scaled-rotation realizations of boundary triples."""
    report = VerificationReport(trials=n_trials, rho=theta)
    if n_trials <= 0:
        report.warnings.append("no trials requested; vacuous pass")
        return report
    rng = np.random.default_rng(rng_seed)
    region_a = resolvent_srg(a_spec, params.alpha)
    region_b = resolvent_srg(b_spec, params.alpha)
    region_c = srg(c_spec)
    checker = _Checker((a_spec, b_spec, c_spec), params, theta, 1.0 - theta,
                       tol, report)
    zs_a = _random_boundary_points(region_a, n_trials, rng)
    zs_b = _random_boundary_points(region_b, n_trials, rng)
    zs_c = _random_boundary_points(region_c, n_trials, rng)
    for z_a, z_b, z_c in zip(zs_a, zs_b, zs_c):
        checker.check(complex(z_a), complex(z_b), complex(z_c))
    return report
