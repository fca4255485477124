"""Bergman fans, their transversal intersections and the resulting tropical curves."""

from .curve import (BalanceReport, Edge, GenusReport, TropicalCurve, betti_numbers,
                    check_balancing, check_smoothness, genus)
from .fan import Cone, HFan, bergman_fan, normalize, reflect_translate, translate
from .flags import FlagIntersection
from .intersect import (TranslationVector, TransversalityCertificate, certify,
                        equal_subset_sums, sample_translation, stable_intersection,
                        transversality_certificate)

__all__ = [
    "BalanceReport", "Cone", "Edge", "FlagIntersection", "GenusReport", "HFan",
    "TranslationVector", "TransversalityCertificate", "TropicalCurve", "bergman_fan",
    "betti_numbers", "certify", "check_balancing", "check_smoothness", "equal_subset_sums",
    "genus", "normalize", "reflect_translate", "sample_translation", "stable_intersection",
    "translate", "transversality_certificate",
]
