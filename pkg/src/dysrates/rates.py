"""Closed-form contraction factors, the averagedness coefficient, updated
prior factors, and strict-dominance comparisons.

Every formula is implemented exactly as displayed in its source statement,
with no algebraic re-derivation; preconditions are hard errors naming the
violated inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import PreconditionError

_REL_TOL = 1e-12


@dataclass(frozen=True)
class RateReport:
    rho: float
    theorem: str
    parameters: dict
    assumptions_verified: tuple

    def as_dict(self) -> dict:
        return {"rho": self.rho, "theorem": self.theorem,
                "parameters": dict(self.parameters),
                "assumptions_verified": list(self.assumptions_verified)}


@dataclass(frozen=True)
class AveragednessReport:
    theta: float
    theorem: str
    parameters: dict
    assumptions_verified: tuple

    def as_dict(self) -> dict:
        return {"theta": self.theta, "theorem": self.theorem,
                "parameters": dict(self.parameters),
                "assumptions_verified": list(self.assumptions_verified)}


def _require(ok: bool, inequality: str, detail: str = "") -> str:
    if not ok:
        raise PreconditionError(inequality, detail)
    return inequality


def _check_core_window(alpha: float, lam: float, beta_c: float) -> list:
    checked = [
        _require(0.0 < alpha < 4.0 * beta_c, "0 < alpha < 4 beta_C",
                 f"alpha={alpha}, beta_C={beta_c}"),
        _require(0.0 < lam < 2.0 - alpha / (2.0 * beta_c),
                 "lambda < 2 - alpha/(2 beta_C)",
                 f"lambda={lam}, bound={2.0 - alpha / (2.0 * beta_c)}"),
    ]
    return checked


# ---------------------------------------------------------------------------
# New contraction factors
# ---------------------------------------------------------------------------

def contraction_thm31(alpha: float, lam: float, beta_c: float, mu: float,
                      L: float, role: str = "A") -> RateReport:
    """Factor when one of the first two operators is both mu-strongly
    monotone and L-Lipschitz and the third is beta_C-cocoercive."""
    if role not in ("A", "B"):
        raise ValueError("role must be 'A' or 'B'")
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(0.0 < mu <= L, "0 < mu <= L",
                            f"mu={mu}, L={L}"))
    theta = 2.0 / (4.0 - alpha / beta_c)
    drop = 2.0 * alpha * mu / (alpha ** 2 * L ** 2 + 2.0 * alpha * mu + 1.0)
    rho = 1.0 - lam * theta + lam * math.sqrt(theta * (theta - drop))
    return RateReport(rho, "thm31",
                      {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                       "mu": mu, "L": L, "role": role},
                      tuple(checked))


def _thm32_second_numerator(alpha, lam, mu, L):
    # the displayed grouping and the proof's grouping must agree
    a = (2.0 - lam) * (mu + L) + 2.0 * alpha * mu * L
    b = mu * (2.0 - lam) + L * (2.0 - lam + 2.0 * alpha * mu)
    if abs(a - b) > _REL_TOL * max(1.0, abs(a)):
        raise AssertionError("renderings of the second min numerator diverge")
    return a


def contraction_thm32(alpha: float, lam: float, beta_c: float, l_lip: float,
                      mu_sm: float, role: str = "A_lip_B_sm") -> RateReport:
    """Factor when one of the first two operators is Lipschitz and the
    other strongly monotone, with a cocoercive third operator."""
    if role not in ("A_lip_B_sm", "A_sm_B_lip"):
        raise ValueError("role must be 'A_lip_B_sm' or 'A_sm_B_lip'")
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(l_lip > 0 and mu_sm > 0, "mu > 0 and L > 0",
                            f"mu={mu_sm}, L={l_lip}"))
    denom_tail = 2.0 - lam + 2.0 * alpha * mu_sm
    first = (2.0 * alpha * mu_sm * lam * (2.0 - lam)
             / ((1.0 + alpha ** 2 * l_lip ** 2) * denom_tail))
    second = (2.0 * alpha * lam * _thm32_second_numerator(alpha, lam, mu_sm, l_lip)
              / ((1.0 + alpha * l_lip) ** 2 * denom_tail))
    rho = math.sqrt(1.0 - min(first, second))
    return RateReport(rho, "thm32",
                      {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                       "L": l_lip, "mu": mu_sm, "role": role},
                      tuple(checked))


def contraction_thm33(alpha: float, lam: float, beta_c: float, l_lip: float,
                      mu_c: float, role: str = "A_lip") -> RateReport:
    """Factor when one of the first two operators is Lipschitz and the
    third is both beta_C-cocoercive and mu_C-strongly monotone."""
    if role not in ("A_lip", "B_lip"):
        raise ValueError("role must be 'A_lip' or 'B_lip'")
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(l_lip > 0, "L > 0", f"L={l_lip}"))
    checked.append(_require(0.0 < mu_c <= 1.0 / beta_c,
                            "0 < mu_C <= 1/beta_C",
                            f"mu_C={mu_c}, 1/beta_C={1.0 / beta_c}"))
    eta = alpha / (2.0 * beta_c * (2.0 - lam))
    shrunk = mu_c * (1.0 - eta)
    first = (l_lip + shrunk) / (1.0 + alpha * l_lip) ** 2
    second = shrunk / (1.0 + alpha ** 2 * l_lip ** 2)
    rho = math.sqrt(1.0 - 2.0 * lam * alpha * min(first, second))
    return RateReport(rho, "thm33",
                      {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                       "L": l_lip, "mu_C": mu_c, "eta": eta, "role": role},
                      tuple(checked))


def averagedness_thm41(alpha: float, mu: float, l_c: float,
                       role: str = "A_sm") -> AveragednessReport:
    """Averagedness coefficient theta = 2/(4 - alpha L_C^2 / mu) with
    lambda = 1, mu-strong monotonicity on A or B, L_C-Lipschitz C."""
    if role not in ("A_sm", "B_sm"):
        raise ValueError("role must be 'A_sm' or 'B_sm'")
    checked = [
        _require(mu > 0, "mu > 0", f"mu={mu}"),
        _require(l_c > 0, "L_C > 0", f"L_C={l_c}"),
        _require(0.0 < alpha < 2.0 * mu / l_c ** 2,
                 "0 < alpha < 2 mu / L_C^2",
                 f"alpha={alpha}, bound={2.0 * mu / l_c ** 2}"),
    ]
    theta = 2.0 / (4.0 - alpha * l_c ** 2 / mu)
    return AveragednessReport(theta, "thm41",
                              {"alpha": alpha, "lambda": 1.0, "mu": mu,
                               "L_C": l_c, "role": role},
                              tuple(checked))


# ---------------------------------------------------------------------------
# Updated prior factors
# ---------------------------------------------------------------------------

def default_eps(alpha: float, beta_c: float) -> float:
    """Midpoint of the admissible window (alpha/(2 beta_C), 1)."""
    return 0.5 * (alpha / (2.0 * beta_c) + 1.0)


def default_eta(alpha: float, beta_c: float, eps: float) -> float:
    """Midpoint of the admissible window (alpha/(2 beta_C eps), 1)."""
    return 0.5 * (alpha / (2.0 * beta_c * eps) + 1.0)


def _check_eps(alpha, beta_c, eps) -> str:
    return _require(alpha / (2.0 * beta_c) < eps < 1.0,
                    "epsilon in (alpha/(2 beta_C), 1)",
                    f"epsilon={eps}, alpha/(2 beta_C)={alpha / (2 * beta_c)}")


def _check_eta(alpha, beta_c, eps, eta) -> str:
    return _require(alpha / (2.0 * beta_c * eps) < eta < 1.0,
                    "eta in (alpha/(2 beta_C epsilon), 1)",
                    f"eta={eta}")


def _finish(label, radicand, params, checked) -> RateReport:
    _require(radicand > 0.0, "updated factor radicand positive",
             f"{label}: 1 - drop = {radicand}")
    return RateReport(math.sqrt(radicand), label, params, tuple(checked))


def prior_d61(alpha, lam, beta_c, mu_b, l_b) -> RateReport:
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(0.0 < mu_b <= l_b, "0 < mu <= L",
                            f"mu_B={mu_b}, L_B={l_b}"))
    radicand = 1.0 - 2.0 * mu_b * alpha * lam / (1.0 + alpha * l_b) ** 2
    return _finish("D.6.1", radicand,
                   {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                    "mu_B": mu_b, "L_B": l_b}, checked)


def prior_d62(alpha, lam, beta_c, mu_a, l_a, eps) -> RateReport:
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(0.0 < mu_a <= l_a, "0 < mu <= L",
                            f"mu_A={mu_a}, L_A={l_a}"))
    checked.append(_check_eps(alpha, beta_c, eps))
    checked.append(_require(lam < 2.0 - eps, "lambda < 2 - epsilon",
                            f"lambda={lam}, epsilon={eps}"))
    drop = (lam / 3.0) * min(
        2.0 * alpha * mu_a / (1.0 + alpha * l_a) ** 2,
        (2.0 * beta_c - alpha / eps) / alpha,
        (lam / 4.0) * ((2.0 - eps) / lam - 1.0),
    )
    return _finish("D.6.2", 1.0 - drop,
                   {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                    "mu_A": mu_a, "L_A": l_a, "epsilon": eps}, checked)


def prior_d63(alpha, lam, beta_c, mu_a, l_b, eps) -> RateReport:
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(mu_a > 0 and l_b > 0, "mu > 0 and L > 0",
                            f"mu_A={mu_a}, L_B={l_b}"))
    checked.append(_check_eps(alpha, beta_c, eps))
    checked.append(_require(lam < 2.0 - eps, "lambda < 2 - epsilon",
                            f"lambda={lam}, epsilon={eps}"))
    drop = (lam / 3.0) * min(
        2.0 * alpha * mu_a / (1.0 + alpha * l_b) ** 2,
        (lam / (1.0 + 2.0 * alpha ** 2 * l_b ** 2))
        * ((2.0 - eps) / lam - 1.0),
    )
    return _finish("D.6.3", 1.0 - drop,
                   {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                    "mu_A": mu_a, "L_B": l_b, "epsilon": eps}, checked)


def prior_d64(alpha, lam, beta_c, mu_b, l_a, eps) -> RateReport:
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(mu_b > 0 and l_a > 0, "mu > 0 and L > 0",
                            f"mu_B={mu_b}, L_A={l_a}"))
    checked.append(_check_eps(alpha, beta_c, eps))
    checked.append(_require(lam < 2.0 - eps, "lambda < 2 - epsilon",
                            f"lambda={lam}, epsilon={eps}"))
    denom = 1.0 + 2.0 * alpha ** 2 * l_a ** 2
    drop = (lam / 4.0) * min(
        2.0 * alpha * mu_b / denom,
        (2.0 * beta_c - alpha / eps) / alpha,
        (lam / denom) * ((2.0 - eps) / lam - 1.0),
    )
    return _finish("D.6.4", 1.0 - drop,
                   {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                    "mu_B": mu_b, "L_A": l_a, "epsilon": eps}, checked)


def prior_d65(alpha, lam, beta_c, mu_c, l_a, eps, eta) -> RateReport:
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(mu_c > 0 and l_a > 0, "mu_C > 0 and L > 0",
                            f"mu_C={mu_c}, L_A={l_a}"))
    checked.append(_check_eps(alpha, beta_c, eps))
    checked.append(_check_eta(alpha, beta_c, eps, eta))
    checked.append(_require(lam < 2.0 - eps, "lambda < 2 - epsilon",
                            f"lambda={lam}, epsilon={eps}"))
    denom = 1.0 + 2.0 * alpha ** 2 * l_a ** 2
    drop = (lam / 4.0) * min(
        2.0 * alpha * mu_c * (1.0 - eta) / denom,
        (2.0 * eta * beta_c - alpha / eps) / alpha,
        (lam / denom) * ((2.0 - eps) / lam - 1.0),
    )
    return _finish("D.6.5", 1.0 - drop,
                   {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                    "mu_C": mu_c, "L_A": l_a, "epsilon": eps, "eta": eta},
                   checked)


def prior_d66(alpha, lam, beta_c, mu_c, l_b, eta) -> RateReport:
    checked = _check_core_window(alpha, lam, beta_c)
    checked.append(_require(mu_c > 0 and l_b > 0, "mu_C > 0 and L > 0",
                            f"mu_C={mu_c}, L_B={l_b}"))
    checked.append(_require(0.0 < eta < 1.0, "eta in (0, 1)", f"eta={eta}"))
    radicand = (1.0 - 2.0 * alpha * lam * mu_c * (1.0 - eta)
                / (1.0 + alpha * l_b) ** 2)
    return _finish("D.6.6", radicand,
                   {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
                    "mu_C": mu_c, "L_B": l_b, "eta": eta}, checked)


def updated_prior_factors(alpha: float, lam: float, beta_c: float, *,
                          mu_a: float, l_a: float, mu_b: float, l_b: float,
                          mu_c: float, eps: Optional[float] = None,
                          eta: Optional[float] = None) -> list:
    """All six corrected prior factors, labeled D.6.1 ... D.6.6.

    eps and eta default to the midpoints of their admissible open windows,
    which keeps reports deterministic while any admissible pair works.
    """
    if eps is None:
        eps = default_eps(alpha, beta_c)
    if eta is None:
        eta = default_eta(alpha, beta_c, eps)
    return [
        prior_d61(alpha, lam, beta_c, mu_b, l_b),
        prior_d62(alpha, lam, beta_c, mu_a, l_a, eps),
        prior_d63(alpha, lam, beta_c, mu_a, l_b, eps),
        prior_d64(alpha, lam, beta_c, mu_b, l_a, eps),
        prior_d65(alpha, lam, beta_c, mu_c, l_a, eps, eta),
        prior_d66(alpha, lam, beta_c, mu_c, l_b, eta),
    ]


# ---------------------------------------------------------------------------
# Dominance sweeps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ParameterRanges:
    alpha: tuple = (0.05, 2.0)
    beta_c: tuple = (0.5, 2.0)
    mu: tuple = (0.05, 2.0)
    L: tuple = (0.05, 2.0)


@dataclass
class PairingResult:
    new_label: str
    prior_label: str
    samples: int = 0
    min_margin: float = math.inf
    violations: list = field(default_factory=list)


@dataclass
class DominanceReport:
    pairings: list

    @property
    def all_strict(self) -> bool:
        return all(not p.violations and p.min_margin > 0
                   for p in self.pairings)

    def as_dict(self) -> dict:
        return {"pairings": [
            {"new": p.new_label, "prior": p.prior_label,
             "samples": p.samples, "min_margin": p.min_margin,
             "violations": p.violations}
            for p in self.pairings], "all_strict": self.all_strict}


def _record(pairing: PairingResult, new_rho: float, prior_rho: float,
            tup: dict) -> None:
    margin = prior_rho - new_rho
    pairing.samples += 1
    pairing.min_margin = min(pairing.min_margin, margin)
    if margin <= 0.0:
        pairing.violations.append(
            {"margin": margin, "new": new_rho, "prior": prior_rho, **tup})


def dominance_check(sample_count: int = 1000,
                    ranges: ParameterRanges = ParameterRanges(),
                    rng_seed: int = 0) -> DominanceReport:
    """Sampled strict-dominance sweep of each new factor against its
    corrected prior counterpart.

    Each sampled tuple respects the shared window alpha < 2 beta_C (so the
    eps window is nonempty), lambda below both 2 - alpha/(2 beta_C) and
    2 - eps, and, for the third-operator pairings, eta above
    alpha/(2 beta_C (2 - lambda)) as the comparison chain requires.
    """
    rng = np.random.default_rng(rng_seed)
    pairs = {
        "d61": PairingResult("thm31", "D.6.1"),
        "d62": PairingResult("thm31", "D.6.2"),
        "d63": PairingResult("thm32", "D.6.3"),
        "d64": PairingResult("thm32", "D.6.4"),
        "d65": PairingResult("thm33", "D.6.5"),
        "d66": PairingResult("thm33", "D.6.6"),
    }

    def draw(lo_hi):
        lo, hi = lo_hi
        return lo + (hi - lo) * rng.random()

    produced = 0
    while produced < sample_count:
        beta_c = draw(ranges.beta_c)
        alpha = draw((ranges.alpha[0],
                      min(ranges.alpha[1], 1.98 * beta_c)))
        eps = default_eps(alpha, beta_c)
        lam_hi = min(2.0 - alpha / (2.0 * beta_c), 2.0 - eps)
        if lam_hi <= 1e-3:
            continue
        lam = draw((1e-3 * lam_hi, (1.0 - 1e-3) * lam_hi))
        m1, m2 = draw(ranges.mu), draw(ranges.L)
        mu, L = min(m1, m2), max(m1, m2)
        mu_c_hi = min(ranges.mu[1], 0.999 / beta_c)
        mu_c = draw((min(ranges.mu[0], 0.5 * mu_c_hi), mu_c_hi))
        eta_floor = max(alpha / (2.0 * beta_c * eps),
                        alpha / (2.0 * beta_c * (2.0 - lam)))
        if eta_floor >= 1.0 - 1e-6:
            continue
        eta = 0.5 * (eta_floor + 1.0)
        tup = {"alpha": alpha, "lambda": lam, "beta_C": beta_c,
               "mu": mu, "L": L, "mu_C": mu_c, "epsilon": eps, "eta": eta}

        _record(pairs["d61"], contraction_thm31(alpha, lam, beta_c, mu, L).rho,
                prior_d61(alpha, lam, beta_c, mu, L).rho, tup)
        _record(pairs["d62"], contraction_thm31(alpha, lam, beta_c, mu, L).rho,
                prior_d62(alpha, lam, beta_c, mu, L, eps).rho, tup)
        _record(pairs["d63"],
                contraction_thm32(alpha, lam, beta_c, L, mu,
                                  role="A_sm_B_lip").rho,
                prior_d63(alpha, lam, beta_c, mu, L, eps).rho, tup)
        _record(pairs["d64"],
                contraction_thm32(alpha, lam, beta_c, L, mu,
                                  role="A_lip_B_sm").rho,
                prior_d64(alpha, lam, beta_c, mu, L, eps).rho, tup)
        _record(pairs["d65"],
                contraction_thm33(alpha, lam, beta_c, L, mu_c).rho,
                prior_d65(alpha, lam, beta_c, mu_c, L, eps, eta).rho, tup)
        _record(pairs["d66"],
                contraction_thm33(alpha, lam, beta_c, L, mu_c,
                                  role="B_lip").rho,
                prior_d66(alpha, lam, beta_c, mu_c, L, eta).rho, tup)
        produced += 1

    return DominanceReport(list(pairs.values()))
