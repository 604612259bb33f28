"""Numerical laboratory for confined Vlasov-Poisson dynamics.

Modules cover homogeneous equilibria, Gevrey weight families, the dispersion
function and stability margins, Green's kernels of the linearized density
equation, two cross-validating kinetic solvers, Volterra density routes,
weighted diagnostics, and the final-state / wave / scattering maps.
"""

__version__ = "0.1.0"

from .equilibria import EquilibriumSpec  # noqa: F401
from .errors import VplabError  # noqa: F401
from .kinetics import FourierGrid, GlideState, PhaseState  # noqa: F401
from .weights import MollifierLevel, WeightParams  # noqa: F401
