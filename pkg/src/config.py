"""Configuration constants for the Salem Entropy Toolkit."""

# --- Application Constants ---
APP_NAME = "SalemEntropyToolkit"
APP_TITLE = "Salem Entropy Toolkit 1.0"
SCHEMA_VERSION = "salem-entropy/1"
WEDGE_BASIS_ORDER = "e1^e2,e1^e3,e1^e4,e2^e3,e2^e4,e3^e4"

# Degree bounds
TORUS_MAX_DEGREE = 6
K3_MAX_DEGREE = 22
PROJECTIVE_K3_MAX_DEGREE = 20
PROJECTIVE_KUMMER_MAX_DEGREE = 4
MAX_ENUMERATION_DEGREE = 22
EXTENSION_DEGREE = 14

# Degree-four cofactors in ascending coefficient order:
# t^2-2t+1, t^2-t+1, t^2+1, t^2+t+1, t^2+2t+1
TORUS_COFACTORS = ((1, -2, 1), (1, -1, 1), (1, 0, 1), (1, 1, 1), (1, 2, 1))
# (t-1)^2 (t+1)^2 = t^4 - 2t^2 + 1
DEGREE_TWO_COFACTOR = (1, 0, -2, 0, 1)

# K3 degrees whose known realizations rely on twisting and gluing constructions
SPECIAL_CONSTRUCTION_DEGREES = (6, 8, 10, 18)

# Smallest Salem number of degree four; realized on C/Z[zeta_3] x C/Z[zeta_3]
EISENSTEIN_TORUS_SALEM = (1, -1, -1, -1, 1)

# --- Default values for settings (Will be overridden by SettingsManager) ---
# These will only be used if the settings file doesn't exist
DEFAULT_TOLERANCE = "1/1000000000000"
DEFAULT_PERIOD_TOLERANCE = 1e-9
DEFAULT_EIGEN_TOLERANCE = 1e-9
DEFAULT_SIGNATURE_MARGIN = 1e-6
DEFAULT_NUM_WORKERS = 4
DEFAULT_DISPLAY_DIGITS = 12
