SIDE_ORDER = ["seller", "buyer"]

# Sign threshold used when classifying corner values of the joint marginal.
ZERO_ETA = 1e-12

# Acceptance tolerances for audits.
IC_GAIN_TOL = 1e-6
IR_PAYOFF_TOL = 1e-9
ICFOC_REL_TOL = 1e-4
RECIPROCITY_TOL = 1e-4
OBJECTIVE_CROSS_TOL = 1e-6

DEFAULT_GRID_N = 512
MIN_GRID_N = 32
DEFAULT_AUDIT_N = 201
MIN_AUDIT_N = 51
MIN_VALIDATION_GRID = 16
REGULARITY_QUANTILES = (0.1, 0.3, 0.5, 0.7, 0.9)

# Significant digits written to CSV / text outputs.
OUTPUT_DIGITS = 9
