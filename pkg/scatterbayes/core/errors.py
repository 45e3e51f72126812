"""Hiérarchie d'exceptions de scatterbayes.

Les états rejetés par la chaîne (α-shape invalide, prior impossible) ne sont
pas des erreurs : ils sont signalés par `InvalidStateError` et traités comme
des rejets par le sampler.

Les exceptions à attributs définissent `__reduce__` pour traverser le
ProcessExecutor (pickle).
"""

from typing import Optional


class ScatterBayesError(Exception):
    """Exception racine du package."""


class DomainError(ScatterBayesError, ValueError):
    """Argument hors du domaine de définition d'une fonction."""


class ConfigError(ScatterBayesError, ValueError):
    """Configuration invalide.

    Attributes:
        field: Nom du champ fautif (notation pointée, ex: "grid.h")
    """

    def __init__(self, message: str, field: Optional[str] = None):
        super().__init__(f"{field}: {message}" if field else message)
        self.field = field
        self._message = message

    def __reduce__(self):
        return (self.__class__, (self._message, self.field))


class ContractError(ScatterBayesError, ValueError):
    """Dimensions ou design incohérents entre deux objets."""


class DegenerateGeometryError(ScatterBayesError, ValueError):
    """Nuage de points dégénéré (colinéaire, trop petit, doublons)."""


class InsufficientControlPointsError(ScatterBayesError, ValueError):
    """Pas assez de points de contrôle pour une spline cubique fermée."""


class InvalidGeometryError(ScatterBayesError, ValueError):
    """Polyligne auto-intersectée ou non fermée."""


class InvalidStateError(ScatterBayesError):
    """État θ rejeté (α-shape invalide, hors support du prior)."""


class CalibrationError(ScatterBayesError, RuntimeError):
    """La calibration de c1 n'atteint pas l'ordre de convergence requis."""


class SolverError(ScatterBayesError, RuntimeError):
    """Échec d'un solveur du problème direct."""


class SingularSystemError(SolverError):
    """Système réduit (quasi) singulier, typiquement une résonance intérieure.

    Attributes:
        rcond: Estimation de l'inverse du conditionnement
    """

    def __init__(self, message: str, rcond: float):
        super().__init__(f"{message} (rcond ~ {rcond:.3e})")
        self.rcond = rcond
        self._message = message

    def __reduce__(self):
        return (self.__class__, (self._message, self.rcond))


class IterativeSolverError(SolverError):
    """GMRES n'a pas convergé.

    Attributes:
        iterations: Nombre d'itérations effectuées
        residual: Dernier résidu relatif connu
    """

    def __init__(self, message: str, iterations: int, residual: float):
        super().__init__(f"{message} after {iterations} iterations (residual {residual:.3e})")
        self.iterations = iterations
        self.residual = residual
        self._message = message

    def __reduce__(self):
        return (self.__class__, (self._message, self.iterations, self.residual))


class InitializationError(ScatterBayesError, RuntimeError):
    """Impossible de tirer un état initial valide."""
