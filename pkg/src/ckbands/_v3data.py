"""Frozen counting coefficients for the order-3 invariant.

Generated by tools/discover_v3.py; do not edit by hand.
"""

from fractions import Fraction

V3_PAIR_COEFFS = {

}

V3_TRIPLE_COEFFS = {
    ((0, False), (1, False), (2, True), (0, True), (2, False), (1, True)): Fraction(1),
    ((0, False), (1, True), (2, False), (0, True), (1, False), (2, True)): Fraction(1),
    ((0, False), (1, True), (2, True), (1, False), (0, True), (2, False)): Fraction(1),
    ((0, True), (1, False), (0, False), (2, True), (1, True), (2, False)): Fraction(1),
    ((0, True), (1, False), (2, True), (0, False), (1, True), (2, False)): Fraction(1),
}
