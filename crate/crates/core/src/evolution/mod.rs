//! NSGA-II search over the six modal coefficients.
//!
//! Each generation contributes `generation_size` evaluated individuals to the
//! archive: the random initial population for generation 0, and the offspring
//! for every later generation. Survivors are chosen from parents ∪ offspring
//! by non-domination rank and crowding distance, so the best value found for
//! either objective is never lost.

mod config;
mod operators;
mod sort;

use rayon::prelude::*;
use serde::Serialize;

pub use config::EAConfig;
pub use operators::{binary_tournament, polynomial_mutation, random_genome, sbx_crossover, stream_rng, Operator};
pub use sort::{crowding_distance, crowding_of, nondominated_sort, sort_fitness, Fronts};

use crate::error::{Error, Result};
use crate::modal_basis::{CoefficientSet, COEFFS_PER_AXIS};
use crate::objectives::{evaluate, EvalSettings, FitnessPair};
use crate::targets::TargetConfiguration;

pub const GENOME_LEN: usize = 2 * COEFFS_PER_AXIS;

/// Flattened `[cx0, cx1, cx2, cy0, cy1, cy2]`.
pub type Genome = [f64; GENOME_LEN];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Individual {
    pub genome: Genome,
    pub fitness: Option<FitnessPair>,
    /// Non-domination front index; 0 is non-dominated.
    pub rank: usize,
    #[serde(skip)]
    pub crowding: f64,
    pub generation: usize,
    /// Position in the run archive.
    pub index: usize,
}

impl Individual {
    pub fn new(genome: Genome, generation: usize, index: usize) -> Self {
        Self {
            genome,
            fitness: None,
            rank: 0,
            crowding: 0.0,
            generation,
            index,
        }
    }

    pub fn coefficients(&self) -> CoefficientSet {
        CoefficientSet::from_genome(&self.genome)
    }

    pub fn fitness(&self) -> Result<FitnessPair> {
        self.fitness.ok_or(Error::UnevaluatedIndividual(self.index))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ObjectiveStats {
    pub mean: f64,
    /// Population standard deviation (divisor N).
    pub std: f64,
    pub min: f64,
}

impl ObjectiveStats {
    pub fn from_values(values: &[f64]) -> Self {
        let n = values.len() as f64;
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let mean = (values.iter().sum::<f64>() / n).max(min);
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        Self {
            mean,
            std: var.sqrt(),
            min,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenerationStats {
    pub generation: usize,
    pub mse1: ObjectiveStats,
    pub mse2: ObjectiveStats,
    /// Genome with the smallest `mse1 + mse2` in this generation.
    pub best_genome: Genome,
    /// Per-objective minimum over the parent population kept after this
    /// generation's selection.
    pub elite: FitnessPair,
}

impl GenerationStats {
    /// Statistics over one generation's archive cohort.
    pub fn from_cohort(generation: usize, cohort: &[Individual]) -> Result<Self> {
        let fits = sort::fitnesses(cohort)?;
        let m1: Vec<f64> = fits.iter().map(|f| f.mse1).collect();
        let m2: Vec<f64> = fits.iter().map(|f| f.mse2).collect();
        let best = argmin_sum(&fits).ok_or_else(|| Error::InvalidConfig("empty generation".into()))?;
        Ok(Self {
            generation,
            mse1: ObjectiveStats::from_values(&m1),
            mse2: ObjectiveStats::from_values(&m2),
            best_genome: cohort[best].genome,
            elite: objective_minima(&fits),
        })
    }
}

fn objective_minima(fits: &[FitnessPair]) -> FitnessPair {
    fits.iter().fold(
        FitnessPair {
            mse1: f64::INFINITY,
            mse2: f64::INFINITY,
        },
        |m, f| FitnessPair {
            mse1: m.mse1.min(f.mse1),
            mse2: m.mse2.min(f.mse2),
        },
    )
}

fn argmin_sum(fits: &[FitnessPair]) -> Option<usize> {
    fits.iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.sum().total_cmp(&b.sum()).then(i.cmp(j)))
        .map(|(i, _)| i)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunResult {
    pub config: EAConfig,
    pub history: Vec<GenerationStats>,
    /// Every evaluated individual, in evaluation order.
    pub archive: Vec<Individual>,
    /// Non-dominated members of the whole archive, in archive order.
    pub pareto_front: Vec<Individual>,
}

impl RunResult {
    /// Front member with the smallest `mse1 + mse2`.
    pub fn best(&self) -> &Individual {
        let fits: Vec<FitnessPair> = self.pareto_front.iter().filter_map(|i| i.fitness).collect();
        &self.pareto_front[argmin_sum(&fits).expect("front is never empty")]
    }

    pub fn generation(&self, g: usize) -> &[Individual] {
        let size = self.config.generation_size;
        &self.archive[g * size..(g + 1) * size]
    }

    /// Smallest value of each objective over the archive up to and including
    /// each generation.
    pub fn best_so_far(&self) -> Vec<FitnessPair> {
        let mut best = FitnessPair {
            mse1: f64::INFINITY,
            mse2: f64::INFINITY,
        };
        (0..self.config.generation_count)
            .map(|g| {
                for f in self.generation(g).iter().filter_map(|i| i.fitness) {
                    best.mse1 = best.mse1.min(f.mse1);
                    best.mse2 = best.mse2.min(f.mse2);
                }
                best
            })
            .collect()
    }
}

/// Seeded uniform initial population (generation 0).
pub fn init_population(config: &EAConfig) -> Result<Vec<Individual>> {
    config.validate()?;
    Ok((0..config.generation_size)
        .map(|i| {
            let mut rng = stream_rng(config.seed, 0, i, Operator::Init);
            Individual::new(random_genome(config, &mut rng), 0, i)
        })
        .collect())
}

/// Evaluates individuals in place. `threads == 0` evaluates serially; results
/// are identical either way.
struct Evaluator<'a> {
    target: &'a TargetConfiguration,
    settings: EvalSettings,
    pool: Option<rayon::ThreadPool>,
}

impl<'a> Evaluator<'a> {
    fn new(target: &'a TargetConfiguration, config: &EAConfig, threads: usize) -> Result<Self> {
        let pool = if threads == 0 {
            None
        } else {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build()
                    .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?,
            )
        };
        Ok(Self {
            target,
            settings: EvalSettings {
                sample_count: config.sample_count,
                ..EvalSettings::default()
            },
            pool,
        })
    }

    fn evaluate(&self, batch: &mut [Individual]) -> Result<()> {
        let score = |ind: &Individual| evaluate(&ind.coefficients(), self.target, &self.settings);
        let fits: Vec<Result<FitnessPair>> = match &self.pool {
            None => batch.iter().map(score).collect(),
            Some(pool) => pool.install(|| batch.par_iter().map(score).collect()),
        };
        for (ind, fit) in batch.iter_mut().zip(fits) {
            ind.fitness = Some(fit?);
        }
        Ok(())
    }
}

/// Assigns rank and crowding to every member of `population`.
fn rank_population(population: &mut [Individual]) -> Result<Fronts> {
    let fits = sort::fitnesses(population)?;
    let fronts = sort_fitness(&fits);
    for (rank, front) in fronts.iter().enumerate() {
        let crowding = crowding_of(&fits, front);
        for (&i, d) in front.iter().zip(crowding) {
            population[i].rank = rank;
            population[i].crowding = d;
        }
    }
    Ok(fronts)
}

/// Keeps the best `size` members: whole fronts first, then the most isolated
/// members of the first front that does not fit.
fn environmental_selection(merged: &[Individual], fronts: &Fronts, size: usize) -> Vec<Individual> {
    let mut survivors = Vec::with_capacity(size);
    for front in fronts {
        if survivors.len() + front.len() <= size {
            survivors.extend(front.iter().map(|&i| merged[i].clone()));
            continue;
        }
        let mut rest = front.clone();
        rest.sort_by(|&a, &b| merged[b].crowding.total_cmp(&merged[a].crowding).then(a.cmp(&b)));
        let room = size - survivors.len();
        survivors.extend(rest.into_iter().take(room).map(|i| merged[i].clone()));
        break;
    }
    survivors
}

fn make_offspring(parents: &[Individual], config: &EAConfig, generation: usize, first_index: usize) -> Vec<Individual> {
    let mut children = Vec::with_capacity(config.generation_size);
    for pair in 0..config.generation_size / 2 {
        let mut select = stream_rng(config.seed, generation, pair, Operator::Select);
        let a = binary_tournament(parents, &mut select);
        let b = binary_tournament(parents, &mut select);
        let mut cross = stream_rng(config.seed, generation, pair, Operator::Crossover);
        let (ga, gb) = sbx_crossover(&parents[a].genome, &parents[b].genome, config, &mut cross);
        for (k, genome) in [ga, gb].into_iter().enumerate() {
            let slot = 2 * pair + k;
            let mut mutate = stream_rng(config.seed, generation, slot, Operator::Mutate);
            let genome = polynomial_mutation(&genome, config, &mut mutate);
            children.push(Individual::new(genome, generation, first_index + slot));
        }
    }
    children
}

/// Runs the search with serial evaluation.
pub fn run(config: &EAConfig, target: &TargetConfiguration) -> Result<RunResult> {
    run_parallel(config, target, 0)
}

/// Runs the search, evaluating each generation on up to `threads` workers
/// (0 = serial). The result does not depend on `threads`.
pub fn run_parallel(config: &EAConfig, target: &TargetConfiguration, threads: usize) -> Result<RunResult> {
    config.validate()?;
    if config.n_divisions != target.n {
        return Err(Error::InvalidConfig(format!(
            "config expects {} divisions but the target has {}",
            config.n_divisions, target.n
        )));
    }
    let evaluator = Evaluator::new(target, config, threads)?;
    let size = config.generation_size;

    let mut population = init_population(config)?;
    evaluator.evaluate(&mut population)?;
    rank_population(&mut population)?;

    let mut archive = Vec::with_capacity(size * config.generation_count);
    let mut history = Vec::with_capacity(config.generation_count);
    history.push(GenerationStats::from_cohort(0, &population)?);
    archive.extend(population.iter().cloned());

    for generation in 1..config.generation_count {
        let mut offspring = make_offspring(&population, config, generation, archive.len());
        evaluator.evaluate(&mut offspring)?;

        let mut merged = population;
        merged.append(&mut offspring);
        let fronts = rank_population(&mut merged)?;

        let cohort = &merged[size..];
        let mut stats = GenerationStats::from_cohort(generation, cohort)?;
        archive.extend(cohort.iter().cloned());
        population = environmental_selection(&merged, &fronts, size);
        stats.elite = objective_minima(&sort::fitnesses(&population)?);
        history.push(stats);
    }

    let fits = sort::fitnesses(&archive)?;
    let front = sort_fitness(&fits).swap_remove(0);
    let pareto_front = front.into_iter().map(|i| archive[i].clone()).collect();

    Ok(RunResult {
        config: config.clone(),
        history,
        archive,
        pareto_front,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::targets::{synth_target, SynthOptions};

    fn target() -> TargetConfiguration {
        let c = CoefficientSet::new(vec![0.8, -0.6, 0.3], vec![-0.4, 1.2, -0.2]).unwrap();
        synth_target(&c, &SynthOptions::default()).unwrap()
    }

    #[test]
    fn survivors_keep_best_values() {
        let result = run(&EAConfig { seed: 11, ..Default::default() }, &target()).unwrap();
        for (h, b) in result.history.iter().zip(result.best_so_far()) {
            assert_eq!(h.elite, b, "generation {}", h.generation);
        }
    }

    #[test]
    fn init_is_deterministic_and_bounded() {
        let cfg = EAConfig { seed: 42, ..Default::default() };
        assert_eq!(init_population(&cfg).unwrap(), init_population(&cfg).unwrap());
        let cfg = EAConfig { seed: 1, ..Default::default() };
        let pop = init_population(&cfg).unwrap();
        assert_eq!(pop.len() * GENOME_LEN, 120);
        assert!(pop.iter().flat_map(|i| i.genome).all(|g| (-2.0..=2.0).contains(&g)));
        let other = init_population(&EAConfig { seed: 2, ..Default::default() }).unwrap();
        assert_ne!(pop, other);
    }

    #[test]
    fn init_with_pinned_bounds_is_zero() {
        let mut cfg = EAConfig::default();
        cfg.set_uniform_bounds(0.0, 0.0);
        assert!(init_population(&cfg).unwrap().iter().all(|i| i.genome == [0.0; 6]));
    }

    #[test]
    fn init_rejects_invalid_config() {
        let cfg = EAConfig { generation_size: 7, ..Default::default() };
        assert!(matches!(init_population(&cfg), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn single_generation_run() {
        let cfg = EAConfig { generation_count: 1, seed: 3, ..Default::default() };
        let res = run(&cfg, &target()).unwrap();
        assert_eq!(res.history.len(), 1);
        assert_eq!(res.archive.len(), 20);
        let mut init = init_population(&cfg).unwrap();
        for (a, b) in res.archive.iter().zip(init.iter_mut()) {
            assert_eq!(a.genome, b.genome);
        }
    }

    #[test]
    fn run_invariants() {
        let t = target();
        for seed in 0..3 {
            let cfg = EAConfig { seed, ..Default::default() };
            let res = run(&cfg, &t).unwrap();
            assert_eq!(res.archive.len(), 200);
            assert_eq!(res.history.len(), 10);
            for (i, ind) in res.archive.iter().enumerate() {
                assert_eq!(ind.index, i);
                assert_eq!(ind.generation, i / 20);
                assert!(ind.genome.iter().all(|g| (-2.0..=2.0).contains(g)));
            }
            let best = res.best_so_far();
            for w in best.windows(2) {
                assert!(w[1].mse1 <= w[0].mse1 && w[1].mse2 <= w[0].mse2);
            }
            for a in &res.pareto_front {
                let fa = a.fitness.unwrap();
                assert!(res.archive.iter().all(|b| !b.fitness.unwrap().dominates(&fa)));
            }
            for h in &res.history {
                assert!(h.mse1.std >= 0.0 && h.mse1.min <= h.mse1.mean);
                assert!(h.mse2.std >= 0.0 && h.mse2.min <= h.mse2.mean);
            }
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let t = target();
        let cfg = EAConfig { seed: 11, ..Default::default() };
        let serial = run(&cfg, &t).unwrap();
        for threads in [1, 3, 4] {
            assert_eq!(run_parallel(&cfg, &t, threads).unwrap(), serial);
        }
    }

    #[test]
    fn division_mismatch_is_rejected() {
        let cfg = EAConfig { n_divisions: 4, ..Default::default() };
        assert!(matches!(run(&cfg, &target()), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn environmental_selection_keeps_extremes() {
        let mut pop: Vec<Individual> = (0..6).map(|i| Individual::new([0.0; 6], 0, i)).collect();
        let fits = [(0.0, 5.0), (1.0, 4.0), (2.0, 3.0), (3.0, 2.0), (5.0, 0.0), (6.0, 6.0)];
        for (ind, (a, b)) in pop.iter_mut().zip(fits) {
            ind.fitness = Some(FitnessPair { mse1: a, mse2: b });
        }
        let fronts = rank_population(&mut pop).unwrap();
        let kept = environmental_selection(&pop, &fronts, 4);
        let idx: Vec<usize> = kept.iter().map(|i| i.index).collect();
        assert!(idx.contains(&0) && idx.contains(&4));
        assert!(!idx.contains(&5));
    }
}
