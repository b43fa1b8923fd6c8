"""stratakit: exhaustive finite-field verification of stratification
combinatorics for formed spaces, signed-permutation Weyl calculus,
determinantal chart counting, and truncated hermitian lattice calculus."""

from .report import TOOLKIT_VERSION as __version__  # noqa: F401
