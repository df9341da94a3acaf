"""Multidimensional fractional Fourier and wavelet transforms.

The public names are re-exported here; see the submodules for details:
:mod:`~mfrwt.grid`, :mod:`~mfrwt.frft`, :mod:`~mfrwt.wavelet`,
:mod:`~mfrwt.uncertainty`, :mod:`~mfrwt.signals` and :mod:`~mfrwt.io`.
"""

from ._backend import get_backend, set_backend, set_threads
from .errors import *  # noqa: F401,F403
from .frft import (
    ChirpAliasingWarning,
    FracOrder,
    Spectrum,
    as_order,
    chirp,
    eval_kernel,
    frft_direct,
    frft_fast,
    ifrft,
    induced_grid,
    parseval_residual,
)
from .grid import Grid, SampledField, ScaleGrid, inner_product, l2_norm, make_grid, make_scale_grid
from .signals import (
    Generator,
    chirped_gaussian,
    gabor,
    gaussian,
    hermite1,
    hermite_superposition,
    normalize,
    random_family,
    sample,
)
from .special import digamma, log_constant
from .uncertainty import (
    Region,
    UncertaintyReport,
    centered_box,
    dispersion2,
    heisenberg_mfrft,
    heisenberg_mfrwt,
    local_constant_sweep,
    local_uncertainty,
    local_uncertainty_mfrwt,
    log_uncertainty_mfrft,
    log_uncertainty_mfrwt,
)
from .wavelet import (
    AdmissibilityReport,
    WaveletCoefficients,
    admissibility_constant,
    daughter,
    default_translation_grid,
    energy_ratio,
    inner_product_relation_check,
    kernel_gram,
    mfrwt_direct,
    mfrwt_spectral,
    property_suite,
    reconstruct,
    reproduce,
    reproducing_kernel,
)

__version__ = "0.1.0"
