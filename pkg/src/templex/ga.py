"""Genetic search over template sequences.

Chromosomes are ordered template lists; crossover is juxtaposition, gated by
the token model's probability of the junction transition; mutation resets a
chromosome to a single random template; fitness scores the chunk-tag
signature under the signature model, normalized for length and for distance
from the target length.  Each generation keeps the fittest half of the
parents and fills the other half with tournament offspring.

Reproducibility contract: all randomness flows through one ``random.Random``.
A tournament round consumes, in order: one ``sample()`` of tournament_size
population indices, then for every ordered pair (outer index, inner index,
skipping equal) one ``random()`` for the junction gate, and for each accepted
pair one ``random()`` for the mutation gate plus one ``randrange()`` when the
mutation fires.  Population initialization consumes one ``randrange()`` per
chromosome.  Identical seed, config, and corpus therefore replay exactly.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from statistics import fmean, pstdev
from typing import Callable, Iterator, Sequence

from .corpus import Template, TemplateInventory
from .ngram.model import NGramModel


class EmptyInventory(ValueError):
    """Cannot evolve over an inventory with no templates."""


@dataclass
class Chromosome:
    templates: tuple[Template, ...]
    surface: tuple[str, ...]  # concatenated rendered items
    signature: tuple[str, ...]  # one chunk tag per template
    fitness: float | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.templates)


def make_chromosome(templates: Sequence[Template]) -> Chromosome:
    surface = tuple(s for t in templates for s in t.rendered())
    signature = tuple(t.tag for t in templates)
    return Chromosome(tuple(templates), surface, signature)


def single(template: Template) -> Chromosome:
    return Chromosome((template,), template.rendered(), (template.tag,))


@dataclass(frozen=True)
class GAConfig:
    """Evolution hyperparameters.

    The parent/offspring split is fixed at 50-50: each new generation is the
    fittest half of the parents plus the fittest accumulated offspring.
    """

    target_length: int
    population_size: int = 1000
    tournament_size: int = 10
    nbest: int = 10
    mutation_p: float = 0.05
    generations: int = 100
    rng_seed: int = 0

    def __post_init__(self):
        if self.target_length < 1:
            raise ValueError("target_length must be >= 1")
        if self.tournament_size < 2:
            raise ValueError("tournament_size must be >= 2")
        if self.tournament_size > self.population_size:
            raise ValueError("tournament_size cannot exceed population_size")
        if not 0.0 <= self.mutation_p <= 1.0:
            raise ValueError("mutation_p must be in [0, 1]")
        if self.nbest < 1 or self.nbest > self.tournament_size * (self.tournament_size - 1):
            raise ValueError("nbest must be in [1, tournament_size*(tournament_size-1)]")
        if self.generations < 0:
            raise ValueError("generations must be >= 0")


@dataclass(frozen=True)
class GenStats:
    generation: int
    mean_fitness: float
    max_fitness: float
    mean_len: float
    std_len: float


@dataclass
class GAState:
    generation: int
    population: list[Chromosome]
    stats: list[GenStats]


@dataclass
class GAResult:
    population: list[Chromosome]
    stats: list[GenStats]


# Gives up on a generation after this many candidate pairs per population
# member, so a model that rejects everything cannot livelock the search.
PAIR_CAP_FACTOR = 10_000


def junction_probability(lm: NGramModel, left: Chromosome, right: Chromosome) -> float:
    """Probability of the first token of ``right`` following the end of ``left``."""
    n = len(left.surface)
    ctx = left.surface[max(0, n - (lm.order - 1)) : n] if lm.order > 1 else ()
    return 10.0 ** lm.scorer().logprob(ctx, right.surface[0])


def crossover(left: Chromosome, right: Chromosome) -> Chromosome:
    return Chromosome(
        left.templates + right.templates,
        left.surface + right.surface,
        left.signature + right.signature,
    )


def mutate(
    c: Chromosome, inventory: TemplateInventory, cfg: GAConfig, rng: random.Random
) -> Chromosome:
    """With probability mutation_p, reset to one random inventory template."""
    if rng.random() < cfg.mutation_p:
        return single(inventory.templates[rng.randrange(len(inventory.templates))])
    return c


def fitness(c: Chromosome, sig_lm: NGramModel, cfg: GAConfig) -> float:
    """Length-normalized signature score in (0, 1].

    Uses the larger of the two per-length negative log costs -- the open
    sequence cost and the boundary-closed cost additionally normalized by the
    distance to the target length (clamped to >= 1) -- and maps it through
    10**(-cost), so 1.0 means every transition had probability one.
    """
    scorer = sig_lm.scorer()
    length = len(c.signature)
    nl_partial = -scorer.sequence_logprob(c.signature, False)
    nl_total = -scorer.sequence_logprob(c.signature, True)
    gap = abs(cfg.target_length - length)
    if gap < 1:
        gap = 1
    cost = max(nl_partial / length, nl_total / ((length + 2) * gap))
    return 10.0 ** (-cost)


def init_population(
    inventory: TemplateInventory, cfg: GAConfig, sig_lm: NGramModel, rng: random.Random
) -> GAState:
    """Population of single random templates, fitness precomputed."""
    if not inventory.templates:
        raise EmptyInventory("no templates to draw from")
    population = []
    for _ in range(cfg.population_size):
        c = single(inventory.templates[rng.randrange(len(inventory.templates))])
        c.fitness = fitness(c, sig_lm, cfg)
        population.append(c)
    return GAState(0, population, [_gen_stats(0, population)])


def tournament_round(
    state: GAState,
    cfg: GAConfig,
    lm: NGramModel,
    sig_lm: NGramModel,
    inventory: TemplateInventory,
    rng: random.Random,
) -> list[Chromosome]:
    """One tournament: all ordered pairs of a random sample, junction-gated
    crossover, mutation, then the nbest offspring by fitness (ties keep
    production order)."""
    idxs = rng.sample(range(len(state.population)), cfg.tournament_size)
    sample = [state.population[i] for i in idxs]
    offspring: list[Chromosome] = []
    for i, p in enumerate(sample):
        for j, q in enumerate(sample):
            if i == j:
                continue
            if rng.random() < junction_probability(lm, p, q):
                child = mutate(crossover(p, q), inventory, cfg, rng)
                child.fitness = fitness(child, sig_lm, cfg)
                offspring.append(child)
    offspring.sort(key=lambda c: -c.fitness)
    return offspring[: cfg.nbest]


def evolve_generation(
    state: GAState,
    cfg: GAConfig,
    lm: NGramModel,
    sig_lm: NGramModel,
    inventory: TemplateInventory,
    rng: random.Random,
) -> GAState:
    """Accumulate tournament offspring for half the population, then keep the
    fittest half of the parents plus the fittest offspring, padding with
    further parents if the pair budget ran out first."""
    pop_size = cfg.population_size
    need = (pop_size + 1) // 2
    pairs_per_round = cfg.tournament_size * (cfg.tournament_size - 1)
    pair_cap = PAIR_CAP_FACTOR * pop_size
    offspring: list[Chromosome] = []
    pairs = 0
    while len(offspring) < need and pairs < pair_cap:
        offspring.extend(tournament_round(state, cfg, lm, sig_lm, inventory, rng))
        pairs += pairs_per_round
    parents = sorted(state.population, key=lambda c: -c.fitness)
    offspring.sort(key=lambda c: -c.fitness)
    next_pop = parents[: pop_size // 2] + offspring[: pop_size - pop_size // 2]
    if len(next_pop) < pop_size:
        shortfall = pop_size - len(next_pop)
        next_pop.extend(parents[pop_size // 2 : pop_size // 2 + shortfall])
    generation = state.generation + 1
    return GAState(generation, next_pop, state.stats + [_gen_stats(generation, next_pop)])


def run(
    cfg: GAConfig,
    inventory: TemplateInventory,
    lm: NGramModel,
    sig_lm: NGramModel,
    observer: Callable[[GAState], None] | None = None,
) -> GAResult:
    """Seeded end-to-end evolution for exactly cfg.generations generations."""
    rng = random.Random(cfg.rng_seed)
    state = init_population(inventory, cfg, sig_lm, rng)
    if observer is not None:
        observer(state)
    for _ in range(cfg.generations):
        state = evolve_generation(state, cfg, lm, sig_lm, inventory, rng)
        if observer is not None:
            observer(state)
    return GAResult(state.population, state.stats)


def _gen_stats(generation: int, population: list[Chromosome]) -> GenStats:
    lengths = [float(len(c)) for c in population]
    return GenStats(
        generation=generation,
        mean_fitness=fmean(c.fitness for c in population),
        max_fitness=max(c.fitness for c in population),
        mean_len=fmean(lengths),
        std_len=pstdev(lengths),
    )


STATS_HEADER = "generation,mean_fitness,max_fitness,mean_len,std_len"


def stats_csv_lines(stats: Sequence[GenStats]) -> Iterator[str]:
    yield STATS_HEADER
    for s in stats:
        yield "%d,%.6f,%.6f,%.6f,%.6f" % (
            s.generation,
            s.mean_fitness,
            s.max_fitness,
            s.mean_len,
            s.std_len,
        )


def population_lines(population: Sequence[Chromosome]) -> Iterator[str]:
    for c in population:
        yield "%s\t%s\t%.8f" % (" ".join(c.surface), " ".join(c.signature), c.fitness)
