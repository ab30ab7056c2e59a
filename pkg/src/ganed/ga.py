"""Real-coded genetic algorithm for tuning the GANED frequency factors.

One generation is evaluate -> select -> crossover -> mutate:

* selection keeps the best ``ceil(s_rate * p_size)`` chromosomes (truncation
  on rank, ties by position);
* single-point crossover between parents drawn with replacement refills the
  population;
* mutation redraws ``ceil(m_rate * p_size * n_par)`` gene slots chosen among
  all chromosomes except the current best, which is carried over untouched.

All random draws come from one ``numpy.random.Generator`` seeded from
``GaConfig.seed``; the fitness callable never sees it. Lower fitness is
better.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .distances import FrequencyFactors
from .exceptions import UnevaluatedFitnessError, ValidationError

_EPS = 1e-9


def _ceil(x: float) -> int:
    # guards against 0.2 * 12 * 1 = 2.4000000000000004 style products
    return int(math.ceil(x - _EPS))


@dataclass(frozen=True)
class GaConfig:
    p_size: int = 12
    n_gen: int = 20
    m_rate: float = 0.2
    s_rate: float = 0.5
    n_par: int = 1
    seed: int = 0
    lower: float = 0.0
    upper: float = 1.0

    def __post_init__(self):
        if self.p_size < 2:
            raise ValidationError("population size must be >= 2")
        if self.n_gen < 1:
            raise ValidationError("generation count must be >= 1")
        if not 0.0 <= self.m_rate <= 1.0:
            raise ValidationError("mutation rate must lie in [0, 1]")
        if not 0.0 <= self.s_rate <= 1.0:
            raise ValidationError("selection rate must lie in [0, 1]")
        if self.n_par < 1:
            raise ValidationError("chromosome dimension must be >= 1")
        if not self.lower < self.upper:
            raise ValidationError("lower gene bound must be below the upper bound")
        if not 0 <= self.seed < 2**64:
            raise ValidationError("seed must be a non-negative 64-bit integer")
        if self.n_parents < 2:
            raise ValidationError(
                f"selection keeps {self.n_parents} chromosome(s); crossover needs at least 2"
            )

    @property
    def n_parents(self) -> int:
        return _ceil(self.s_rate * self.p_size)

    @property
    def n_mutations(self) -> int:
        return _ceil(self.m_rate * self.p_size * self.n_par)

    @property
    def max_evaluations(self) -> int:
        return self.p_size * (self.n_gen + 1)


@dataclass
class Chromosome:
    genes: np.ndarray
    fitness: Optional[float] = None

    def copy(self) -> "Chromosome":
        return Chromosome(self.genes.copy(), self.fitness)


@dataclass(frozen=True)
class GenerationRecord:
    generation: int
    best_fitness: float
    mean_fitness: float
    best_genes: tuple[float, ...]


@dataclass
class GaTrace:
    records: list[GenerationRecord] = field(default_factory=list)

    @property
    def best_fitness(self) -> list[float]:
        return [r.best_fitness for r in self.records]

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class GaResult:
    genes: tuple[float, ...]
    fitness: float
    trace: GaTrace
    evaluations: int

    @property
    def factors(self) -> FrequencyFactors:
        return FrequencyFactors(self.genes)


def initialize(cfg: GaConfig, rng: np.random.Generator) -> list[Chromosome]:
    genes = rng.uniform(cfg.lower, cfg.upper, size=(cfg.p_size, cfg.n_par))
    return [Chromosome(g) for g in genes]


def select(population: list[Chromosome], s_rate: float, rng: Optional[np.random.Generator] = None) -> list[Chromosome]:
    """Keep the fittest ``ceil(s_rate * len(population))`` chromosomes, best first.

    ``rng`` is accepted for interface symmetry with the other operators;
    truncation selection draws nothing.
    """
    for i, c in enumerate(population):
        if c.fitness is None:
            raise UnevaluatedFitnessError(f"chromosome {i} has no fitness")
    order = sorted(range(len(population)), key=lambda i: population[i].fitness)
    keep = _ceil(s_rate * len(population))
    return [population[i].copy() for i in order[:keep]]


def single_point(a: np.ndarray, b: np.ndarray, cut: int) -> np.ndarray:
    """Genes ``[0, cut)`` from ``a`` and ``[cut, n)`` from ``b``."""
    return np.concatenate([np.asarray(a)[:cut], np.asarray(b)[cut:]])


def crossover(parents: list[Chromosome], cfg: GaConfig, rng: np.random.Generator) -> list[Chromosome]:
    """Children that bring ``parents`` back up to ``cfg.p_size`` chromosomes."""
    if len(parents) < 2:
        raise ValidationError(f"crossover needs at least two parents, got {len(parents)}")
    children = []
    for _ in range(cfg.p_size - len(parents)):
        a, b = rng.integers(len(parents), size=2)
        ga, gb = parents[a].genes, parents[b].genes
        if cfg.n_par == 1:
            child = (ga if rng.integers(2) == 0 else gb).copy()
        else:
            child = single_point(ga, gb, rng.integers(1, cfg.n_par))
        children.append(Chromosome(child))
    return children


def mutate(population: list[Chromosome], cfg: GaConfig, rng: np.random.Generator,
           elite: Optional[int] = 0) -> list[Chromosome]:
    """Redraw ``cfg.n_mutations`` gene slots uniformly; chromosome ``elite`` is exempt.

    Mutated chromosomes lose their fitness. The input list is not modified.
    """
    out = [c.copy() for c in population]
    n_par = cfg.n_par
    slots = [(ci, gi) for ci in range(len(out)) if ci != elite for gi in range(n_par)]
    count = min(cfg.n_mutations, len(slots))
    if count == 0:
        return out
    chosen = rng.choice(len(slots), size=count, replace=False)
    fresh = rng.uniform(cfg.lower, cfg.upper, size=count)
    for k, v in zip(chosen, fresh):
        ci, gi = slots[k]
        out[ci].genes[gi] = v
        out[ci].fitness = None
    return out


def optimize(fitness: Callable[[np.ndarray], float], cfg: GaConfig) -> GaResult:
    """Minimise ``fitness`` over ``[cfg.lower, cfg.upper] ** cfg.n_par``.

    Runs ``cfg.n_gen`` generations and one final evaluation, so ``fitness``
    is called at most ``cfg.p_size * (cfg.n_gen + 1)`` times. The returned
    trace has one record per evaluation round, and its best fitness never
    increases. Results are fully determined by ``cfg`` (including the seed)
    and ``fitness``.
    """
    rng = np.random.default_rng(cfg.seed)
    evaluations = 0
    best: Optional[Chromosome] = None
    trace = GaTrace()

    def evaluate(population, generation):
        nonlocal evaluations, best
        for c in population:
            if c.fitness is None:
                value = float(fitness(c.genes.copy()))
                if not math.isfinite(value):
                    raise ValidationError(f"fitness returned a non-finite value {value!r}")
                c.fitness = value
                evaluations += 1
            if best is None or c.fitness < best.fitness:
                best = c.copy()
        trace.records.append(GenerationRecord(
            generation, best.fitness,
            float(np.mean([c.fitness for c in population])), tuple(best.genes.tolist()),
        ))

    population = initialize(cfg, rng)
    for generation in range(cfg.n_gen):
        evaluate(population, generation)
        parents = select(population, cfg.s_rate, rng)
        population = parents + crossover(parents, cfg, rng)
        population = mutate(population, cfg, rng, elite=0)
    evaluate(population, cfg.n_gen)

    return GaResult(tuple(best.genes.tolist()), best.fitness, trace, evaluations)
