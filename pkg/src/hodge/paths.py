"""
Built-in differentiable families of period matrices.

Each path implements PeriodPath; ``get_path("builtin:NAME")`` resolves the
names accepted by the ``hodge connection`` command.
"""
import logging
from typing import Callable, Dict

import numpy as np

from src.base import PeriodPath
from src.elliptic.periods import EllipticParameters, period_data
from src.errors import SchemaError
from src.hodge.frame import HodgeFrame, elliptic_period_matrix
from src.quintic.tau import TauSolution, tau_matrix, transversal_solution

logger = logging.getLogger(__name__)

DEFAULT_TAU_TERMS = 10
PERTURBATION = 0.25


class EllipticPath(PeriodPath):
    """τ ↦ [[τ, −1], [1, 0]] on the upper half-plane."""

    name = "elliptic"

    def __init__(self):
        self._frame = HodgeFrame.elliptic()

    @property
    def dimension(self) -> int:
        return 1

    @property
    def frame(self) -> HodgeFrame:
        return self._frame

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return elliptic_period_matrix(complex(np.atleast_1d(t)[0]))

    def default_point(self) -> np.ndarray:
        return np.array([0.3 + 1.7j])


class EllipticFamilyPath(PeriodPath):
    """(t1, t2, t3) ↦ normalized periods of y² = 4(x − t1)³ − t2(x − t1) − t3."""

    name = "elliptic-family"

    def __init__(self):
        self._frame = HodgeFrame.elliptic()

    @property
    def dimension(self) -> int:
        return 3

    @property
    def frame(self) -> HodgeFrame:
        return self._frame

    def __call__(self, t: np.ndarray) -> np.ndarray:
        t1, t2, t3 = (complex(v) for v in np.asarray(t))
        return period_data(EllipticParameters(t1, t2, t3)).per

    def default_point(self) -> np.ndarray:
        # off the real locus, where the square-root branch of u − w is cut
        return np.array([0.1 + 0.2j, 3.0 + 0.5j, 0.7 - 0.3j])


class TauPath(PeriodPath):
    """All four τ-coordinates free: t ↦ τ-matrix(t0, t1, t2, t3)."""

    name = "mq-tau"

    def __init__(self):
        self._frame = HodgeFrame.quintic()

    @property
    def dimension(self) -> int:
        return 4

    @property
    def frame(self) -> HodgeFrame:
        return self._frame

    def __call__(self, t: np.ndarray) -> np.ndarray:
        return tau_matrix(*(complex(v) for v in np.asarray(t)))

    def default_point(self) -> np.ndarray:
        return np.array([0.2 + 2.0j, 0.5 - 0.1j, -0.3 + 0.4j, 1.1 + 0.2j])


class TransversalTauPath(PeriodPath):
    """
    τ₀ ↦ τ-matrix of the series solution of the transversality ODEs.

    A nonzero ``tau3_shift`` replaces τ₃ by τ₃ + shift, which leaves the
    Griffiths distribution.
    """

    def __init__(self, terms: int = DEFAULT_TAU_TERMS, tau3_shift: complex = 0.0,
                 solution: TauSolution = None):
        self._frame = HodgeFrame.quintic()
        self.solution = solution or transversal_solution(terms)
        self.tau3_shift = complex(tau3_shift)
        self.name = "mq-perturbed" if self.tau3_shift else "mq-transversal"

    @property
    def dimension(self) -> int:
        return 1

    @property
    def frame(self) -> HodgeFrame:
        return self._frame

    def __call__(self, t: np.ndarray) -> np.ndarray:
        tau0, tau1, tau2, tau3 = self.solution.at(complex(np.atleast_1d(t)[0]))
        return tau_matrix(tau0, tau1, tau2, tau3 + self.tau3_shift)

    def default_point(self) -> np.ndarray:
        return np.array([0.1 + 2.0j])


BUILTIN_PATHS: Dict[str, Callable[[], PeriodPath]] = {
    "elliptic": EllipticPath,
    "elliptic-family": EllipticFamilyPath,
    "mq-tau": TauPath,
    "mq-transversal": TransversalTauPath,
    "mq-perturbed": lambda: TransversalTauPath(tau3_shift=PERTURBATION),
}


def get_path(spec: str) -> PeriodPath:
    """
    Resolve ``builtin:NAME`` (the prefix is optional).

    Raises:
        SchemaError: for unknown names
    """
    name = spec.split(":", 1)[1] if spec.startswith("builtin:") else spec
    factory = BUILTIN_PATHS.get(name)
    if factory is None:
        raise SchemaError(f"unknown path {spec!r}; choose from "
                          + ", ".join(f"builtin:{n}" for n in BUILTIN_PATHS))
    logger.debug("using built-in path %s", name)
    return factory()
