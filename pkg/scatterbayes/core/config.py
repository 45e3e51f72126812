"""Configuration d'une expérience.

Ce module définit la configuration avec support pour YAML, presets et
variables d'environnement.
"""

import math
from pathlib import Path
from typing import Any, Literal, Optional

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from scatterbayes.core.errors import ConfigError


class _Section(BaseModel):
    """Section imbriquée : les clés inconnues sont refusées."""

    model_config = ConfigDict(extra="forbid")


class GridSettings(_Section):
    """Grille de calcul Z²_N.

    Attributes:
        N: Nombre d'intervalles par axe (N + 1 noeuds)
        h: Pas de grille
        origin: Coin inférieur gauche du domaine G
    """

    N: int = Field(default=40, ge=8, description="Intervalles par axe")
    h: float = Field(default=0.02, gt=0.0, description="Pas de grille")
    origin: tuple[float, float] = Field(default=(-0.4, -0.4), description="Coin inférieur gauche")


class SynthGridSettings(_Section):
    """Grille fine des données synthétiques (pas h / refinement)."""

    refinement: int = Field(default=2, ge=2, description="Facteur de raffinement")


class ScattererSettings(_Section):
    """Obstacle vrai utilisé pour la synthèse des données."""

    curve: Literal["kite", "disc"] = Field(default="kite", description="Courbe paramétrique")
    scatterer_scale: float = Field(default=0.1, gt=0.0, description="Facteur d'échelle de la courbe")
    b_true: float = Field(default=25.0, gt=0.0, description="Contraste vrai")
    curve_samples: int = Field(default=4096, ge=64, description="Échantillons de la courbe")
    cloud_file: Optional[str] = Field(default=None, description="Nuage de points x,y (remplace curve)")
    cloud_alpha: Optional[float] = Field(default=None, gt=0.0, description="α du nuage vrai")

    @model_validator(mode="after")
    def _cloud_needs_alpha(self) -> "ScattererSettings":
        if self.cloud_file is not None and self.cloud_alpha is None:
            raise ValueError("cloud_alpha is required with cloud_file")
        return self


class DesignSettings(_Section):
    """Design d'observation : directions, nombres d'onde, bruit, noeuds."""

    zeta: float = Field(default=0.0, description="Rotation des directions (radians)")
    n_directions: int = Field(default=8, ge=2, description="Nombre de directions")
    k_low: float = Field(default=1.0, gt=0.0, description="Nombre d'onde k_L")
    k_high: float = Field(default=5.0, gt=0.0, description="Nombre d'onde k_H")
    sigma_low: float = Field(default=0.012, ge=0.0, description="Bruit du groupe k_L")
    sigma_high: float = Field(default=0.012, ge=0.0, description="Bruit du groupe k_H")
    observation_stride: int = Field(default=4, ge=1, description="Un noeud sur stride")
    observation_nodes: Optional[list[tuple[int, int]]] = Field(
        default=None, description="Liste explicite de noeuds (j1, j2)"
    )
    data_seed: int = Field(default=2024, ge=0, lt=2**64, description="Graine du bruit de mesure")

    @field_validator("n_directions")
    @classmethod
    def validate_even(cls, v: int) -> int:
        if v % 2:
            raise ValueError("n_directions must be even (alternating k_L / k_H)")
        return v


class PriorSettings(_Section):
    """Hyperparamètres du prior."""

    gamma_shape: float = Field(default=2.0, gt=0.0, description="Forme k̃ de la loi Gamma")
    gamma_rate: float = Field(default=0.05, gt=0.0, description="Taux λ̃ de la loi Gamma")
    alpha_max: Optional[float] = Field(default=None, gt=0.0, description="Borne du prior uniforme de α")


class KernelSettings(_Section):
    """Noyau de transition et longueur de chaîne."""

    weights: tuple[float, float, float, float] = Field(
        default=(0.4, 0.2, 0.2, 0.2), description="Poids (point, translate, b, alpha)"
    )
    t_max: int = Field(default=200_000, ge=1, description="Nombre d'itérations")
    burn_in: int = Field(default=20_000, ge=0, description="Itérations de chauffe")
    seed: int = Field(default=0, ge=0, lt=2**64, description="Graine du générateur")
    mode: Literal["exact-mh", "paper-literal"] = Field(default="exact-mh", description="Règle d'acceptation")
    snapshot_every: int = Field(default=100, ge=1, description="Période des instantanés du nuage")
    cloud_size: int = Field(default=12, ge=4, description="Taille m du nuage")
    init_attempts: int = Field(default=10_000, ge=1, description="Tirages initiaux maximum")
    spline_density: int = Field(default=64, ge=4, description="Échantillons de spline par sommet")

    @field_validator("weights")
    @classmethod
    def validate_weights(cls, v: tuple[float, ...]) -> tuple[float, ...]:
        if any(w < 0.0 for w in v):
            raise ValueError("weights must be non-negative")
        if abs(sum(v) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(v)!r}")
        return v


class SolverSettings(_Section):
    """Paramètres des solveurs du problème direct."""

    c1: Optional[float] = Field(default=None, description="Coefficient de correction (None = fixture)")
    gmres_rtol: float = Field(default=1e-8, gt=0.0, description="Tolérance relative de GMRES")
    gmres_restart: int = Field(default=30, ge=1, description="Redémarrage de GMRES")
    gmres_maxiter: int = Field(default=500, ge=1, description="Itérations GMRES maximum")
    residual_tol: float = Field(default=1e-10, gt=0.0, description="Résidu relatif maximum du système réduit")
    rcond_min: float = Field(default=1e-13, gt=0.0, description="Seuil de singularité")
    parallel_wavenumbers: bool = Field(default=False, description="Résoudre k_L et k_H en parallèle")


class LoggingSettings(_Section):
    """Configuration du logging."""

    level: str = Field(default="INFO", description="Niveau de logging")
    format: str = Field(default="text", description="Format des logs (json/text)")

    @field_validator("level")
    @classmethod
    def validate_log_level(cls, v: str) -> str:
        """Valider le niveau de logging."""
        valid_levels = {"DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"}
        if v.upper() not in valid_levels:
            raise ValueError(f"level must be one of {sorted(valid_levels)}")
        return v.upper()

    @field_validator("format")
    @classmethod
    def validate_log_format(cls, v: str) -> str:
        """Valider le format des logs."""
        if v.lower() not in {"json", "text"}:
            raise ValueError("format must be 'json' or 'text'")
        return v.lower()


class ExperimentConfig(BaseSettings):
    """Configuration complète d'une expérience.

    Supporte le chargement depuis :
    - Fichier YAML (clés imbriquées, voir config.yaml.example)
    - Presets (`example1`, `example2`, `example3` et variantes `-full`)
    - Variables d'environnement (préfixe SCATTER_, imbrication par "__")

    Les variables d'environnement ont la priorité sur le fichier YAML.

    Example:
        >>> config = ExperimentConfig.from_preset("example2")
        >>> config.design.zeta
        0.5235987755982988
    """

    model_config = SettingsConfigDict(
        env_prefix="SCATTER_",
        env_nested_delimiter="__",
        case_sensitive=False,
        extra="forbid",
    )

    grid: GridSettings = Field(default_factory=GridSettings)
    synth_grid: SynthGridSettings = Field(default_factory=SynthGridSettings)
    scatterer: ScattererSettings = Field(default_factory=ScattererSettings)
    design: DesignSettings = Field(default_factory=DesignSettings)
    prior: PriorSettings = Field(default_factory=PriorSettings)
    kernel: KernelSettings = Field(default_factory=KernelSettings)
    solver: SolverSettings = Field(default_factory=SolverSettings)
    logging: LoggingSettings = Field(default_factory=LoggingSettings)
    output_dir: str = Field(default="runs", description="Répertoire de sortie")

    @classmethod
    def settings_customise_sources(
        cls, settings_cls, init_settings, env_settings, dotenv_settings, file_secret_settings
    ):
        return env_settings, init_settings, file_secret_settings

    @model_validator(mode="after")
    def _burn_in_below_t_max(self) -> "ExperimentConfig":
        if self.kernel.burn_in >= self.kernel.t_max:
            raise ValueError("kernel.burn_in must be smaller than kernel.t_max")
        return self

    @property
    def alpha_max(self) -> float:
        """Borne supérieure du prior de α (diagonale de G par défaut)."""
        if self.prior.alpha_max is not None:
            return self.prior.alpha_max
        return math.sqrt(2.0) * self.grid.N * self.grid.h

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "ExperimentConfig":
        """Valider un dictionnaire imbriqué.

        Raises:
            ConfigError: Avec le nom du premier champ invalide
        """
        try:
            return cls(**data)
        except ValidationError as exc:
            first = exc.errors()[0]
            field = ".".join(str(part) for part in first["loc"])
            raise ConfigError(first["msg"], field=field) from exc

    @classmethod
    def from_preset(cls, name: str, **overrides: Any) -> "ExperimentConfig":
        """Charger un preset livré avec le package.

        Args:
            name: Nom du preset (example1, example2, example3, exampleN-full)
            **overrides: Sections à fusionner par-dessus le preset

        Raises:
            ConfigError: Si le preset est inconnu
        """
        from scatterbayes.core.presets import PRESETS

        if name not in PRESETS:
            raise ConfigError(f"unknown preset '{name}', use one of {sorted(PRESETS)}", field="preset")
        return cls.from_dict(_deep_merge(PRESETS[name], overrides))

    @classmethod
    def load_from_yaml(cls, config_path: Path) -> "ExperimentConfig":
        """Charger la configuration depuis un fichier YAML.

        Args:
            config_path: Chemin vers le fichier YAML

        Returns:
            Configuration chargée

        Raises:
            FileNotFoundError: Si le fichier n'existe pas
            ConfigError: Si une clé est inconnue ou invalide
        """
        with open(config_path, "r", encoding="utf-8") as f:
            config_dict = yaml.safe_load(f) or {}
        if not isinstance(config_dict, dict):
            raise ConfigError("top-level YAML node must be a mapping")
        return cls.from_dict(config_dict)

    @classmethod
    def load(cls, config_path: Optional[Path] = None, preset: Optional[str] = None) -> "ExperimentConfig":
        """Charger depuis un preset, puis un fichier YAML fusionné par-dessus.

        Args:
            config_path: Fichier YAML (optionnel)
            preset: Nom du preset de base (optionnel)
        """
        base: dict[str, Any] = {}
        if preset is not None:
            base = cls.from_preset(preset).to_dict()
        if config_path is not None:
            with open(config_path, "r", encoding="utf-8") as f:
                base = _deep_merge(base, yaml.safe_load(f) or {})
        return cls.from_dict(base)

    def to_dict(self) -> dict[str, Any]:
        """Dictionnaire imbriqué sérialisable (tuples en listes)."""
        return self.model_dump(mode="json")

    def override(self, **dotted: Any) -> "ExperimentConfig":
        """Copie validée avec des champs remplacés en notation pointée.

        Example:
            >>> config.override(**{"kernel.seed": 7, "output_dir": "out"})
        """
        data = self.to_dict()
        for key, value in dotted.items():
            if value is None:
                continue
            node = data
            *parents, leaf = key.split(".")
            for part in parents:
                node = node[part]
            node[leaf] = value
        return self.from_dict(data)

    def save_to_yaml(self, config_path: Path) -> None:
        """Sauvegarder la configuration dans un fichier YAML."""
        with open(config_path, "w", encoding="utf-8") as f:
            yaml.safe_dump(self.to_dict(), f, default_flow_style=False, sort_keys=False)


def _deep_merge(base: dict[str, Any], overrides: dict[str, Any]) -> dict[str, Any]:
    """Fusion récursive de deux dictionnaires (overrides gagne)."""
    merged = dict(base)
    for key, value in overrides.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged
