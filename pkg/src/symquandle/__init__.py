"""Generalized Alexander quandles of symmetric groups and their invariants."""

from .perm import CycleType, Parity, Permutation, compose, conjugate, parse_cycles, power_cycle_type
from .symgroup import BudgetExceeded, centralizer_elements, centralizer_order, class_representative, partitions
from .autgroup import Automorphism, AutClassLabel, Composite, Inner, aut_class_label, aut_order, eta, xi
from .quandle import FiniteQuandle, check_axioms, general_alexander, power_quandle, quandle_order
from .iso import IsoResult, are_isomorphic
from .invariants import InvariantProfile, dc_alt_invariant, dc_full_diagnostic, double_coset_count, profile
from .alexander import alexander_quandle, classify_cyclic, nelson_equivalent
from .classify import ClassificationReport, classify, verify_theorem

__version__ = "0.1.0"
