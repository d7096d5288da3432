"""Trace formulas on regular graphs via non-backtracking walk counts.

The package relates the spectrum of a finite (or analytically known
infinite) (q+1)-regular graph to its non-backtracking walk and circuit
counts: functional calculus and pre-trace/trace formulas built on
Chebyshev-type polynomials orthogonal under the Kesten-McKay
distribution, with applications to heat and Schroedinger kernels,
lattice walk counting, the Fourier-Laplace transform of spectral
measures, and the Ihara zeta function.
"""

from .chebyshev import (
    Basis,
    CoefficientSeries,
    XINF_BASIS,
    Y_BASIS,
    basis_convert,
    cheb_coefficients,
    cheb_eval,
    cheb_joukowsky,
    cheb_values,
    km_density,
    km_integrate,
    km_moment_x,
    km_moment_y,
)
from .coefficients import (
    FunctionSpec,
    RadialFunction,
    bessel,
    bessel_i,
    bessel_j,
    coeffs_a,
    exp_coeffs,
    expansion_coefficients,
    horocycle_transform,
    inverse_horocycle,
    log_kernel_coeffs,
    power_coeffs,
    power_coeffs_exact,
    radial_embedding,
    taylor_to_cheb,
)
from .errors import (
    BudgetExceeded,
    DivergentSeries,
    EmptyGraph,
    InvalidParameter,
    MissingDecay,
    NbtraceError,
    NoConvergence,
    NonRegular,
    PoleOnSupport,
    RadiusTooSmall,
    RouteMismatch,
    SingularEndpoint,
)
from .graphs import (
    RegularGraph,
    adjacency_matrix,
    build_graph,
    cartesian_product,
    complete,
    complete_bipartite,
    cycle,
    generate,
    is_bipartite,
    petersen,
    random_regular,
    read_edge_list,
    torus,
    write_edge_list,
)
from .kernels import (
    cjk_alternative_heat_coeff,
    heat_coeff,
    heat_operator,
    lattice_heat_entry,
    lattice_walk_count,
    schrodinger_coeff,
    schrodinger_operator,
    tree_kernel_entry,
    tree_walk_count,
)
from .nbwalks import (
    NbwCountTable,
    PrimeCircuitClass,
    circuit_counts,
    circuit_counts_exact,
    closed_nbw_counts,
    enumerate_nbw,
    girth,
    nbw_matrices,
    nbw_matrix,
    prime_circuit_classes,
    walk_count,
)
from .spectral import (
    DiscreteMeasure,
    eigenvalues_symmetric,
    fourier_correction_order,
    fourier_laplace,
    heat_trace,
    km_stieltjes,
    km_stieltjes_modified,
    spectral_measure,
    stieltjes,
    stieltjes_modified,
    stieltjes_series_check,
    vertex_integral,
)
from .tracecalc import (
    PrimeTraceComparison,
    TraceComparison,
    functional_calculus,
    pretrace,
    trace_formula,
    trace_formula_prime,
    truncation_radius,
)
from .zeta import (
    RamanujanVerdict,
    characteristic_polynomial,
    ramanujan_check,
    zeta_log_series,
    zeta_reciprocal,
    zeta_reciprocal_log_series,
)

__version__ = "0.1.0"
