"""Wavelet analysis of generalized Riemann functions.

``R_{alpha,beta}(x) = sum_n sin(pi n^beta x) / n^alpha`` and general
nonharmonic Fourier series are analysed through their continuous wavelet
transform against the Lusin wavelet: closed-form transforms, uniform
Hölder exponents from scalogram decay, fluctuation statistics around
``sin(pi x)`` and the inverse transform.
"""

from .errors import (ArgumentError, ConsistencyError, ConvergenceError, DomainError,
                     RiemannWaveError, ScopeError, SpecificationError)
from .numerics import (LineFit, QuadSpec, exp_integral_e1, fit_line, gamma, integrate,
                       upper_incomplete_gamma, zeta)
from .series import (NonharmonicSpec, SeriesParams, TruncationBudget, nonharmonic_eval,
                     perturbed_spec, riemann_eval, riemann_spec, sin_baseline,
                     truncation_terms)
from .cwt import (LusinWavelet, Scalogram, cwt_analytic, cwt_nonharmonic, cwt_numeric,
                  lusin_eval, lusin_ft, scalogram)
from .holder import (EnvelopePair, ExponentFit, TheoreticalExponent, envelope,
                     estimate_nonharmonic_exponent, estimate_uniform_exponent,
                     pointwise_decay_check, theoretical_exponent, theta_w_at_one_direct,
                     theta_w_at_one_poisson)
from .fluctuation import (MeanReport, fourier_b, interval_mean, l2_fluctuation,
                          parseval_check, sup_deviation_bound)
from .reconstruction import (ReconParams, ReconWavelet, admissibility_integral, kernel_m,
                             recon_wavelet_eval, reconstruct_approx)

__version__ = "0.1.0"
