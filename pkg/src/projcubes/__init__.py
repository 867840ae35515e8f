"""Projection cubes of symmetric designs and n-dimensional difference sets."""
from __future__ import annotations

from .algebra import (FieldTable, GroupTable, builtin_group, cyclic_group,
                      cyclotomic_class, dicyclic_group, direct_product, field_of_order,
                      finite_field, format_group_file, group_automorphisms,
                      group_fingerprint, parse_group_file, resolve_group,
                      semidirect_by_automorphism, semidirect_product, small_groups_16)
from .classify import (ClassificationResult, classify_cubes_exhaustive,
                       classify_nd_diffsets, diagonal_translations, extend_diffsets,
                       extract_diffset, kramer_mesner_search, table1_counts, table2_row,
                       table3_row, table4_counts)
from .constructions import (cyclotomic_nd, paley_nd, paley_ordinary,
                            twin_prime_power_nd, twin_prime_power_ordinary)
from .cube import (Cube, DesignMatrix, VerificationReport, dimension_bounds,
                   distance_distribution, format_cube_file, is_orthogonal_array,
                   is_symmetric_design, parse_cube_file, projection, restrict,
                   verify_cube)
from .diffset import (BudgetExceeded, NdDifferenceSet, OrdinaryDifferenceSet,
                      coordinate_differences, develop, develop_rows, difference_counts,
                      enumerate_difference_sets, format_ndiffset_file, is_difference_set,
                      is_nd_difference_set, lift_to_2d, normalize, parse_ndiffset_file)
from .equivalence import (AutotopyGroup, CanonicalCertificate, Isotopy, Paratopy,
                          apply_conjugation, apply_isotopy, apply_paratopy, are_isotopic,
                          are_paratopic, autoparatopy_order, autotopy_group,
                          canonical_form, canonical_rows, compose_isotopies,
                          compose_paratopies, cube_invariant, diffset_classes,
                          diffset_equivalent, identity_isotopy, identity_paratopy,
                          inverse_isotopy, inverse_paratopy)

__version__ = "0.1.0"

__all__ = [
    "AutotopyGroup", "BudgetExceeded", "CanonicalCertificate", "ClassificationResult",
    "Cube", "DesignMatrix", "FieldTable", "GroupTable", "Isotopy", "NdDifferenceSet",
    "OrdinaryDifferenceSet", "Paratopy", "VerificationReport", "apply_conjugation",
    "apply_isotopy", "apply_paratopy", "are_isotopic", "are_paratopic",
    "autoparatopy_order", "autotopy_group", "builtin_group", "canonical_form",
    "canonical_rows", "classify_cubes_exhaustive", "classify_nd_diffsets",
    "compose_isotopies", "compose_paratopies", "coordinate_differences",
    "cube_invariant", "cyclic_group", "cyclotomic_class", "cyclotomic_nd", "develop",
    "develop_rows", "diagonal_translations", "dicyclic_group", "difference_counts",
    "diffset_classes", "diffset_equivalent", "dimension_bounds",
    "direct_product", "distance_distribution", "enumerate_difference_sets",
    "extend_diffsets", "extract_diffset", "field_of_order", "finite_field",
    "format_cube_file", "format_group_file", "format_ndiffset_file",
    "group_automorphisms", "group_fingerprint", "identity_isotopy",
    "identity_paratopy", "inverse_isotopy", "inverse_paratopy", "is_difference_set",
    "is_nd_difference_set", "is_orthogonal_array", "is_symmetric_design",
    "kramer_mesner_search", "lift_to_2d", "normalize", "paley_nd", "paley_ordinary",
    "parse_cube_file", "parse_group_file", "parse_ndiffset_file", "projection",
    "resolve_group", "restrict", "semidirect_by_automorphism", "semidirect_product",
    "small_groups_16", "table1_counts", "table2_row", "table3_row", "table4_counts",
    "twin_prime_power_nd", "twin_prime_power_ordinary", "verify_cube",
]
