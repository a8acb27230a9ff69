"""Node counts of the solver on subdivided triangles ``K_3^p``."""
from __future__ import annotations

import logging
import time
from fractions import Fraction
from typing import Optional

import numpy as np
import pandas as pd

from stripmis.solver import SolverConfig, solve_mwis
from stripmis.testkit import named_graph, poljak_subdivide

__all__ = ["fit_exponent", "run_bench"]

logger = logging.getLogger(__name__)


def run_bench(max_p: int = 6, config: Optional[SolverConfig] = None) -> pd.DataFrame:
    """One row per ``p = 1..max_p`` with ``n``, the optimum, its expected value, node count and time."""
    config = config or SolverConfig(c=Fraction(1, 2))
    base = named_graph("complete", 3)
    rows = []
    for p in range(1, max_p + 1):
        instance = poljak_subdivide(base, p)
        start = time.perf_counter()
        solution = solve_mwis(instance.graph, config)
        rows.append(
            {
                "p": p,
                "n": instance.graph.n,
                "weight": solution.weight,
                "expected": 1 + instance.alpha_shift,
                "nodes": solution.stats["nodes"],
                "seconds": time.perf_counter() - start,
            }
        )
        logger.info("p=%d n=%d nodes=%d", p, instance.graph.n, solution.stats["nodes"])
    return pd.DataFrame(rows)


def fit_exponent(table: pd.DataFrame) -> float:
    """Slope of ``log(nodes)`` against ``log(n)``."""
    if len(table) < 2:
        raise ValueError("need at least two rows to fit an exponent")
    slope, _ = np.polyfit(np.log(table["n"].to_numpy(float)), np.log(table["nodes"].to_numpy(float)), 1)
    return float(slope)
