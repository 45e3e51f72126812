"""Presets des trois expériences numériques.

Les presets de bureau (`example1`, `example2`, `example3`) ne diffèrent que
par ζ et la grille. Les variantes `-full` reprennent la longueur de chaîne
complète (2·10⁶ itérations, 10⁶ pour example3) et une chauffe de 50 000.
"""

import math
from typing import Any

_DESK_KERNEL = {"t_max": 200_000, "burn_in": 20_000}

_EXAMPLES: dict[str, dict[str, Any]] = {
    "example1": {
        "grid": {"N": 40, "h": 0.02, "origin": [-0.4, -0.4]},
        "design": {"zeta": 0.0},
    },
    "example2": {
        "grid": {"N": 40, "h": 0.02, "origin": [-0.4, -0.4]},
        "design": {"zeta": math.pi / 6.0},
    },
    "example3": {
        "grid": {"N": 80, "h": 0.01, "origin": [-0.4, -0.4]},
        "design": {"zeta": 0.0},
    },
}

_FULL_T_MAX = {"example1": 2_000_000, "example2": 2_000_000, "example3": 1_000_000}


def _build() -> dict[str, dict[str, Any]]:
    presets: dict[str, dict[str, Any]] = {}
    for name, body in _EXAMPLES.items():
        presets[name] = {**body, "kernel": dict(_DESK_KERNEL)}
        presets[f"{name}-full"] = {
            **body,
            "kernel": {"t_max": _FULL_T_MAX[name], "burn_in": 50_000},
        }
    return presets


PRESETS = _build()
