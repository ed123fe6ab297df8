"""Factorised propagator for a charged particle dragged through a uniform magnetic field.

A particle in a field ``B`` confined by a potential whose centre follows a
path ``R(t)`` evolves as ``U = D K M``: free cyclotron motion ``D``, a
nonadiabatic displacement ``K`` of the kinetic momentum and a magnetic
translation ``M`` of the guiding centre whose loop phase is the enclosed flux.
This package builds those factors on a truncated two-oscillator Fock space and
checks them against brute-force integration.
"""

from .drive_path import Circle, DrivePath, Line, SmoothPolyline, Stadium, path_from_spec, signed_area_d_path
from .errors import (
    ConfigurationError,
    ContractError,
    DomainError,
    LandauFactorError,
    NumericalContractError,
    QuadratureError,
)
from .fock_algebra import OperatorMatrix, StateVector, Truncation, basis_state, interior_distance
from .landau_model import ModelOperators, PhysicalParams, build_model
from .propagator_factorization import PropagatorBundle, assemble
from .reference_integrator import IntegratorConfig, propagate_reference

__version__ = "0.1.0"

__all__ = [
    "Circle",
    "DrivePath",
    "Line",
    "SmoothPolyline",
    "Stadium",
    "path_from_spec",
    "signed_area_d_path",
    "ConfigurationError",
    "ContractError",
    "DomainError",
    "LandauFactorError",
    "NumericalContractError",
    "QuadratureError",
    "OperatorMatrix",
    "StateVector",
    "Truncation",
    "basis_state",
    "interior_distance",
    "ModelOperators",
    "PhysicalParams",
    "build_model",
    "PropagatorBundle",
    "assemble",
    "IntegratorConfig",
    "propagate_reference",
]
