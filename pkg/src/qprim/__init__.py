"""Quasi-primary spectra of finite commutative rings: topology, sheaf and a verification suite."""
from __future__ import annotations

from .errors import CapExceeded, QPrimError, RingSpecError
from .ideals import Ideal, IdealLattice, all_ideals, generate, nilradical, radical
from .localization import localize_element, localize_multset, localize_prime
from .rings import FiniteRing, RingElement, RingHom, build_ring, idempotent_power
from .sheaf import SheafAssignment, check_sheaf_axioms, direct_image_check, sheaf_on, stalk
from .specs import PolyQuotient, Product, Table, ZMod, spec_from_json, spec_to_json
from .topology import Kind, Spectrum, basic_open, closure, spectrum, v_q

__all__ = [
    "CapExceeded", "QPrimError", "RingSpecError",
    "Ideal", "IdealLattice", "all_ideals", "generate", "nilradical", "radical",
    "localize_element", "localize_multset", "localize_prime",
    "FiniteRing", "RingElement", "RingHom", "build_ring", "idempotent_power",
    "SheafAssignment", "check_sheaf_axioms", "direct_image_check", "sheaf_on", "stalk",
    "PolyQuotient", "Product", "Table", "ZMod", "spec_from_json", "spec_to_json",
    "Kind", "Spectrum", "basic_open", "closure", "spectrum", "v_q",
]
