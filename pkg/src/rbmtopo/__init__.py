"""Exact RBM representations of stabilizer, hypergraph and topological states."""

from .errors import DimensionError, FitError, ParseError, RbmTopoError, ResourceError, StructureError, SynthesisError
from .rbm import DenseState, HiddenUnit, RbmNetwork, amplitude, amplitudes, compose, dense_state, fidelity
from .gadgets import cos_pair, hyperedge_phase, indicator_weight, parity_gadget, two_body_phase
from .phase_poly import AffineParity, ClosedFormState, PhasePolynomial, compile_to_rbm, fit_cubic_phase
from .clifford import CliffordCircuit, StabilizerGenerators, circuit_to_rbm, stabilizer_state_to_rbm
from .models import MODELS, Hypergraph, ModelBundle, build_model
from .verify import VerifyReport, check_bundle, check_elimination_trace, resource_report

__version__ = "0.1.0"
