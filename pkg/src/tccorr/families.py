"""Initial-condition families and the closed-form reference expressions tied to them."""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from scipy.special import xlogy

from .dynamics import ManifoldDensity, check_manifold
from .errors import DomainError


class Family(str, enum.Enum):
    PSI_PLUS = "PsiPlus"
    PSI_MINUS = "PsiMinus"
    PHI_PLUS = "PhiPlus"
    PHI_MINUS = "PhiMinus"
    WERNER = "Werner"
    ALI = "Ali"

    @classmethod
    def parse(cls, name) -> "Family":
        if isinstance(name, cls):
            return name
        key = str(name).strip().lower().replace("_", "").replace("-", "")
        aliases = {
            "psi+": cls.PSI_PLUS, "psiplus": cls.PSI_PLUS,
            "psiminus": cls.PSI_MINUS,
            "phi+": cls.PHI_PLUS, "phiplus": cls.PHI_PLUS,
            "phiminus": cls.PHI_MINUS,
            "werner": cls.WERNER, "ali": cls.ALI,
        }
        # "psi-" loses its sign when dashes are stripped; look it up first
        raw = str(name).strip().lower()
        if raw in ("psi-", "phi-"):
            return cls.PSI_MINUS if raw == "psi-" else cls.PHI_MINUS
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown family {name!r}") from None


def _check_alpha(alpha) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha <= 1.0:
        raise DomainError(f"alpha must lie in [0, 1], got {alpha}")
    return alpha


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    alpha: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "family", Family.parse(self.family))
        object.__setattr__(self, "alpha", _check_alpha(self.alpha))
        object.__setattr__(self, "n", check_manifold(self.n))


_BELL_PLUS = np.array([0, 1, 1, 0]) / np.sqrt(2)
_BELL_MINUS = np.array([0, 1, -1, 0]) / np.sqrt(2)


def _projector(v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    return np.outer(v, v.conj())


def make_state(spec: FamilySpec) -> ManifoldDensity:
    """Manifold density matrix of the requested family member.

    Pure families:
        PsiPlus/PsiMinus   a|+->_n +- sqrt(1-a^2)|-+>_n
        PhiPlus/PhiMinus   a|++>_{n-1} +- sqrt(1-a^2)|-->_{n+1}
    Mixtures inside the same manifold:
        Werner   a |psi-><psi-| + (1-a) I/4
        Ali      a |psi+><psi+| + (1-a) |++><++|
    """
    a = spec.alpha
    b = np.sqrt(max(1.0 - a * a, 0.0))
    fam = spec.family
    if fam is Family.PSI_PLUS:
        rho = _projector([0, a, b, 0])
    elif fam is Family.PSI_MINUS:
        rho = _projector([0, a, -b, 0])
    elif fam is Family.PHI_PLUS:
        rho = _projector([a, 0, 0, b])
    elif fam is Family.PHI_MINUS:
        rho = _projector([a, 0, 0, -b])
    elif fam is Family.WERNER:
        rho = a * _projector(_BELL_MINUS) + (1 - a) * np.eye(4) / 4
    else:
        rho = a * _projector(_BELL_PLUS) + (1 - a) * _projector([1, 0, 0, 0])
    return ManifoldDensity(rho, spec.n)


def raw_state(matrix, n: int) -> ManifoldDensity:
    """Arbitrary 4x4 manifold state; checked for validity only."""
    return ManifoldDensity(matrix, n)


# -- closed forms -----------------------------------------------------------

def f_n(n) -> float:
    """sqrt(n(n+1)) / (1+2n); rises quickly from 0 towards 1/2."""
    n = check_manifold(n)
    return float(np.sqrt(n * (n + 1.0)) / (1 + 2 * n))


def g_alpha(alpha) -> float:
    """Initial concurrence 2 a sqrt(1-a^2) of the psi families."""
    a = _check_alpha(alpha)
    return float(2 * a * np.sqrt(1 - a * a))


def _log2_term(x):
    return xlogy(x, x) / np.log(2.0)


def psi_initial_discord(alpha) -> float:
    a2 = _check_alpha(alpha) ** 2
    return float(-_log2_term(1 - a2) - _log2_term(a2))


def psi_minus_concurrence(alpha, n, tau):
    g = g_alpha(alpha)
    return g + (0.5 - f_n(n)) * (1 - g) * np.sin(2 * np.pi * np.asarray(tau)) ** 2


def werner_initial_concurrence(alpha) -> float:
    return max(0.0, (3 * _check_alpha(alpha) - 1) / 2)


def werner_initial_discord(alpha) -> float:
    a = _check_alpha(alpha)
    val = 0.25 * (_log2_term(1 - a) + _log2_term(1 + 3 * a) - 2 * _log2_term(1 + a))
    return float(val)


def ali_half_period_concurrence(alpha, n) -> float:
    """Concurrence at tau = 1/2 for the Ali mixture.

    Uses ``a - 4(1-a) f(n)/(1+2n)``; the sign in front of ``(1-a)`` is fixed
    by requiring a zero exactly at the birth threshold ``alpha_A(n)``.
    """
    a = _check_alpha(alpha)
    return max(0.0, a - 4 * (1 - a) * f_n(n) / (1 + 2 * n))


def pi_n(n) -> float:
    n = check_manifold(n)
    return float(np.sqrt(n * (n + 1.0) * (2 * n + 1) ** 2) / (n + 1) - 2 * n)


def phi_plus_endpoint_collapse_time(n) -> float:
    """First collapse time of |-->_{n+1}: cos(pi t) = sqrt(Pi(n))."""
    return float(np.arccos(np.sqrt(pi_n(n))) / np.pi)


def phi_plus_endpoint_kink_time(n) -> float:
    """Concurrence kink of |-->_{n+1} in (1/4, 1/2]: cos(2 pi t) = -n/(1+n)."""
    n = check_manifold(n)
    return float(np.arccos(-n / (1.0 + n)) / (2 * np.pi))


def bell_esd_times(n) -> tuple[float, float, float, float]:
    """Collapse/revival times of the psi+ Bell state: tan(2 pi t) = +-1/sqrt(2 f(n)) in [0, 1)."""
    x = np.arctan(1 / np.sqrt(2 * f_n(n))) / (2 * np.pi)
    return (x, 0.5 - x, 0.5 + x, 1 - x)


class ClosedForm(str, enum.Enum):
    G = "g"
    F = "f"
    PSI_DISCORD0 = "psi_discord0"
    PSI_MINUS_CONCURRENCE = "psi_minus_concurrence"
    WERNER_CONCURRENCE0 = "werner_concurrence0"
    WERNER_DISCORD0 = "werner_discord0"
    ALI_HALF_CONCURRENCE = "ali_half_concurrence"
    PI = "Pi"
    PHI_PLUS0_COLLAPSE = "phi_plus0_collapse"
    PHI_PLUS0_KINK = "phi_plus0_kink"


def closed_form(kind, alpha: float | None = None, n: int | None = None,
                tau: float | None = None) -> float:
    """Evaluate one named reference expression."""
    kind = ClosedForm(kind)
    needs = {
        ClosedForm.G: ("alpha",),
        ClosedForm.F: ("n",),
        ClosedForm.PSI_DISCORD0: ("alpha",),
        ClosedForm.PSI_MINUS_CONCURRENCE: ("alpha", "n", "tau"),
        ClosedForm.WERNER_CONCURRENCE0: ("alpha",),
        ClosedForm.WERNER_DISCORD0: ("alpha",),
        ClosedForm.ALI_HALF_CONCURRENCE: ("alpha", "n"),
        ClosedForm.PI: ("n",),
        ClosedForm.PHI_PLUS0_COLLAPSE: ("n",),
        ClosedForm.PHI_PLUS0_KINK: ("n",),
    }[kind]
    given = {"alpha": alpha, "n": n, "tau": tau}
    missing = [k for k in needs if given[k] is None]
    if missing:
        raise DomainError(f"{kind.value} needs {', '.join(missing)}")
    if kind is ClosedForm.G:
        return g_alpha(alpha)
    if kind is ClosedForm.F:
        return f_n(n)
    if kind is ClosedForm.PSI_DISCORD0:
        return psi_initial_discord(alpha)
    if kind is ClosedForm.PSI_MINUS_CONCURRENCE:
        return float(psi_minus_concurrence(alpha, n, tau))
    if kind is ClosedForm.WERNER_CONCURRENCE0:
        return werner_initial_concurrence(alpha)
    if kind is ClosedForm.WERNER_DISCORD0:
        return werner_initial_discord(alpha)
    if kind is ClosedForm.ALI_HALF_CONCURRENCE:
        return ali_half_period_concurrence(alpha, n)
    if kind is ClosedForm.PI:
        return pi_n(n)
    if kind is ClosedForm.PHI_PLUS0_COLLAPSE:
        return phi_plus_endpoint_collapse_time(n)
    return phi_plus_endpoint_kink_time(n)


class CriticalAlpha(str, enum.Enum):
    ALPHA_B = "AlphaB"
    ALPHA_C = "AlphaC"
    ALPHA_ONE = "AlphaOne"
    ALPHA_A = "AlphaA"
    ALPHA_ZERO_DISCORD = "AlphaZeroDiscord"
    ALPHA_PLATEAU = "AlphaPlateau"


def critical_alpha(kind, n: int, **solver_kw) -> float:
    """Critical initial-condition parameter; the last two kinds run a numerical solver."""
    kind = CriticalAlpha(kind)
    n = check_manifold(n)
    if kind is CriticalAlpha.ALPHA_B:
        return float(np.sqrt(n / (1.0 + 2 * n)))
    if kind is CriticalAlpha.ALPHA_C:
        return 1.0 / (1 + 2 * n)
    if kind is CriticalAlpha.ALPHA_ONE:
        return 2 * f_n(n)
    if kind is CriticalAlpha.ALPHA_A:
        return 1.0 / (1 + (1 + 2 * n) / (4 * f_n(n)))

    from . import features

    if kind is CriticalAlpha.ALPHA_ZERO_DISCORD:
        return features.solve_alpha_zero_discord(n, **solver_kw)
    return features.solve_alpha_plateau(n, **solver_kw)
