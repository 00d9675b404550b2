"""primelab: desk-scale experiments on the distribution of the primes.

Exact sieves, Euler-product truncations, the logarithmic integral, Cramér's
random model and prime-factor statistics, with a CSV/SVG command line.
"""

__version__ = "0.1.0"

from .exceptions import (
    CapacityError,
    ConvergenceError,
    DomainError,
    InvalidRangeError,
    OutOfRangeError,
    PrimelabError,
)
from .sieve import (
    OmegaTable,
    PrimeSieve,
    build_omega_table,
    build_sieve,
    consecutive_pair_count,
    prime_count,
    reciprocal_prime_sum,
    twin_pair_count,
)
from .series import (
    SumSeries,
    TruncationSpec,
    euler_product_truncated,
    gamma_estimate,
    harmonic_sum,
    loglog_comparison,
    prime_power_tail,
    zeta_partial_sum,
    zeta_tail_corrected,
)
from .pnt import (
    QuadratureSpec,
    abel_estimate,
    comparison_table,
    density_sum,
    interval_estimate,
    li,
    local_density,
)
from .cramer import (
    CramerConfig,
    CramerStats,
    collect_stats,
    expected_count,
    expected_twin_sum,
    sample,
)
from .erdoskac import DistributionStats, normal_cdf, omega_stats
