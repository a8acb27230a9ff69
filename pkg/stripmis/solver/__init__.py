"""Recursive MWIS solver: balanced separators, decomposition providers, brute-force base case."""
from stripmis.solver.config import ConfigError, ProviderSpec, SolverConfig, trace_from_env
from stripmis.solver.core import (
    BruteForceFallbackWarning,
    ProviderContractError,
    check_decomposition,
    solve_case1,
    solve_case2,
    solve_mwis,
)
from stripmis.solver.providers import (
    DecompositionResult,
    ExhaustiveProvider,
    FileProvider,
    LineGraphProvider,
    ProviderError,
    ProviderRequest,
    decompose_components,
    providers,
)
from stripmis.solver.separators import find_balanced_separator, is_balanced_separator, partition_lr
