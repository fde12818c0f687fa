"""Repeated runs over consecutive seeds and their aggregate statistics."""

import logging
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Dict, List

import numpy as np
from pydantic import BaseModel

from .agent import run_summary
from .models import Branch, HaltReason, Scenario
from .report import TextRenderer

logger = logging.getLogger(__name__)


class SweepSummary(BaseModel):
    """Aggregate of K independent runs."""
    runs: int
    first_seed: int
    last_seed: int
    choices: int
    branch_counts: Dict[str, int]
    halt_reasons: Dict[str, int]
    mean_choices: float
    mean_steps: float

    def frequency(self, branch: str) -> float:
        if self.choices == 0:
            return 0.0
        return self.branch_counts.get(branch, 0) / self.choices


def summarize(results: List[Dict], base_seed: int) -> SweepSummary:
    """Aggregate per-run summaries, in seed order."""
    branch_counts = {branch: 0 for branch in Branch.ALL}
    halt_reasons = {reason: 0 for reason in HaltReason.ALL}
    for result in results:
        for branch, count in result["branch_counts"].items():
            branch_counts[branch] += count
        halt_reasons[result["halt_reason"]] += 1

    choices = np.array([result["choices"] for result in results], dtype=np.int64)
    steps = np.array([result["steps"] for result in results], dtype=np.int64)
    return SweepSummary(
        runs=len(results),
        first_seed=base_seed,
        last_seed=base_seed + len(results) - 1,
        choices=int(choices.sum()),
        branch_counts=branch_counts,
        halt_reasons=halt_reasons,
        mean_choices=float(choices.mean()),
        mean_steps=float(steps.mean()),
    )


def run_sweep(scenario: Scenario, runs: int, base_seed: int, workers: int = 1) -> SweepSummary:
    """
    Run ``runs`` simulations with seeds base_seed..base_seed+runs-1.

    Args:
        scenario: Validated scenario
        runs: Number of runs K (>= 1)
        base_seed: First seed
        workers: Worker processes; results are aggregated in seed order either way

    Returns:
        SweepSummary
    """
    if runs < 1:
        raise ValueError(f"a sweep needs at least one run, got {runs}")
    seeds = range(base_seed, base_seed + runs)
    logger.debug("sweep of %d runs from seed %d on %d worker(s)", runs, base_seed, workers)

    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(partial(run_summary, scenario), seeds, chunksize=64))
    else:
        results = [run_summary(scenario, seed) for seed in seeds]

    return summarize(results, base_seed)


def render_sweep(summary: SweepSummary) -> str:
    """Render the frequency table printed by the sweep command."""
    return TextRenderer().render(
        "sweep.txt.jinja2",
        summary=summary,
        branches=Branch.ALL,
        reasons=HaltReason.ALL,
    )
