from fractions import Fraction

from landau_factor import units


def test_derived_dimensions():
    assert units.ENERGY == units.MASS * units.LENGTH**2 / units.TIME**2
    assert units.ACTION == units.ENERGY * units.TIME
    assert (units.FIELD_COUPLING * units.LENGTH / units.MOMENTUM).is_dimensionless


def test_fractional_powers_and_str():
    ell = (units.ACTION / units.FIELD_COUPLING) ** Fraction(1, 2)
    assert ell == units.LENGTH
    assert str(units.DIMENSIONLESS) == "1"
    assert str(units.VELOCITY) == "L T^-1"
