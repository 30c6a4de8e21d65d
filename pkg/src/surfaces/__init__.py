"""Surfaces whose automorphism entropies are Salem logarithms: tori and K3 surfaces."""
