"""
Acceptance Thresholds Configuration

Numeric tolerances and sizes for the acceptance suite. Tests read them
through the `thresholds` fixture in tests/acceptance/conftest.py.
"""

# Numerical tolerances
TOLERANCES = {
    "probability_mass": 1e-12,       # |sum(p) - 1| per neighborhood
    "empirical_frequency": 0.005,    # |freq - p| after DRAWS_PER_LAW draws
    "leaf_normalisation": 1e-9,      # |sum over leaves of P(leaf | center) - 1|
    "gradient_relative_error": 1e-4,  # analytic vs central-difference gradient
}

# Suite sizes
SIZES = {
    "random_neighborhoods": 1000,
    "neighborhood_max_size": 20,
    "draws_per_law": 1_000_000,
    "random_graphs": 100,
    "walks_per_suite": 10_000,
    "huffman_vocabularies": 200,
    "gradient_checks": 100,
}

# Planted-network experiment
PLANTED = {
    "total_accounts": 2000,
    "train_ratio": 0.8,
    "seeds": 10,
    "dimension": 16,
    "epochs": 2,
}
