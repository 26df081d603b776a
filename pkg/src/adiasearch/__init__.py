"""Adiabatic quantum search on regular graphs.

Lanczos reduction from the marked vertex, orthogonal-polynomial spectral
data, a second-order perturbative gap model, and exact verification by
diagonalization, schedule integration and Schrodinger propagation.
"""

from .errors import AdiaSearchError
from .gap import (
    GapModel,
    compare_with_paper,
    first_order,
    g_min,
    g_min_signed,
    gamma_crit,
    gap_model,
    gap_perturbative,
    gap_terms,
    search_time,
)
from .graphs import Graph, build_family, load_edge_list, uniform_state, validate
from .lanczos import KrylovReduction, lanczos, project_state
from .polynomials import (
    PolynomialTable,
    SpectralTable,
    build_polynomials,
    eigenvalues,
    eigenvector,
    spectral_moments,
    spectral_table,
)
from .verify import (
    EvolutionResult,
    ReducedHamiltonian,
    ScheduleResult,
    complete_graph_closed_forms,
    evolve,
    exact_gap,
    full_space_crosscheck,
    local_schedule,
    min_gap,
    reduced_hamiltonian,
)

__version__ = "0.1.0"
