"""Salem Entropy Toolkit"""

__version__ = "1.0.0"
__description__ = "Exact Salem polynomial classification, torus entropy witnesses, lattice isometry checks and K3 realizability conditions"
