"""Semigroups with deformed (sandwich) multiplication x *_a y = x a y."""

from .bicyclic import BicyclicElement, anti_iso_phi, bmul, binv, epsilon, parse_bicyclic
from .deformed_core import CayleyTable, build_deformed_table, check_associativity, sandwich_product
from .finite_maps import (
    FiniteTransformation,
    PartialInjection,
    Permutation,
    TypeVector,
    compose,
    enumerate_elements,
    inverse,
    kernel_partition,
    parse_element,
    rank,
    type_of,
)
from .iso_oracle import find_isomorphism, fingerprint

__version__ = "0.1.0"

__all__ = [
    "BicyclicElement", "anti_iso_phi", "bmul", "binv", "epsilon", "parse_bicyclic",
    "CayleyTable", "build_deformed_table", "check_associativity", "sandwich_product",
    "FiniteTransformation", "PartialInjection", "Permutation", "TypeVector", "compose",
    "enumerate_elements", "inverse", "kernel_partition", "parse_element", "rank", "type_of",
    "find_isomorphism", "fingerprint",
]
