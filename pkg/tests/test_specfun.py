"""Tests des fonctions de Bessel contre la table figée à 30 chiffres."""

import numpy as np
import pytest

from scatterbayes.core.errors import DomainError
from scatterbayes.specfun import bessel_j0, bessel_j1, bessel_y0, bessel_y1, hankel1_0

from tests.oracles import BESSEL_FIXTURE, bessel_grid, read_bessel_table, write_bessel_table


def _scaled_error(values: np.ndarray, reference: np.ndarray, modulus: np.ndarray) -> np.ndarray:
    # Près des zéros, l'erreur est rapportée au module |H₀⁽¹⁾|.
    return np.abs(values - reference) / np.maximum(np.abs(reference), modulus)


def test_j0_y0_match_reference_table(bessel_table):
    x, j0_ref, y0_ref = bessel_table.T
    modulus = np.hypot(j0_ref, y0_ref)

    assert x.size == 200
    assert np.max(_scaled_error(bessel_j0(x), j0_ref, modulus)) <= 1e-12
    assert np.max(_scaled_error(bessel_y0(x), y0_ref, modulus)) <= 1e-12


def test_hankel_combines_j0_and_y0(bessel_table):
    x, j0_ref, y0_ref = bessel_table.T
    reference = j0_ref + 1j * y0_ref

    assert np.max(np.abs(hankel1_0(x) - reference) / np.abs(reference)) <= 1e-12


def test_wronskian_identity():
    x = np.logspace(-2, 2, 50)
    wronskian = bessel_j1(x) * bessel_y0(x) - bessel_j0(x) * bessel_y1(x)
    np.testing.assert_allclose(wronskian, 2.0 / (np.pi * x), rtol=1e-11)


def test_scalar_in_scalar_out():
    value = bessel_j0(0.0)
    assert value == 1.0
    assert np.isscalar(hankel1_0(1.0))


@pytest.mark.parametrize("function, argument", [
    (bessel_j0, -1.0),
    (bessel_y0, 0.0),
    (bessel_y0, -2.0),
    (hankel1_0, 0.0),
    (bessel_j0, np.nan),
    (bessel_y0, np.inf),
])
def test_out_of_domain_arguments_raise(function, argument):
    with pytest.raises(DomainError):
        function(argument)


def test_committed_table_covers_the_log_grid(bessel_table):
    x = bessel_table[:, 0]
    assert x[0] == 1e-3
    assert x[-1] == 500.0
    np.testing.assert_allclose(x, np.logspace(-3.0, np.log10(500.0), 200), rtol=1e-6)


def test_committed_table_matches_mpmath(tmp_path, bessel_table):
    xs = [line.split()[0] for line in BESSEL_FIXTURE.read_text(encoding="utf-8").splitlines()
          if line and not line.startswith("#")]
    assert len(xs) == len(bessel_grid())
    path = tmp_path / "bessel_j0_y0.txt"
    write_bessel_table(path, xs[::7])
    regenerated = read_bessel_table(path)

    committed = bessel_table[::7]
    modulus = np.hypot(committed[:, 1], committed[:, 2])
    np.testing.assert_array_equal(regenerated[:, 0], committed[:, 0])
    assert np.max(np.abs(regenerated[:, 1:] - committed[:, 1:]) / modulus[:, None]) <= 1e-15
