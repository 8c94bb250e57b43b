"""Ontological models of one qubit built on the Grassmann Weyl symbol.

The main entry points are re-exported here; see the submodules for the rest.
"""
from .clifford import apply_clifford, blowtorch_T1, blowtorch_T2, integrate_eom, named_map
from .grassmann import GrassmannElement, parse, render, xi
from .models import (
    decompose_on_lambda_prime,
    eight_state_model,
    exhibits_transformation_contextuality,
    grassmann_blowtorch_model,
    grassmann_model,
    measure_pauli,
    three_state_model,
)
from .ontic import enumerate_families, is_single_convex_set, nondisjoint_convex_combine
from .weyl import SixTuple, WeylState, convex_combine, convex_combine_tuples, six_tuple

__version__ = "0.1.0"
