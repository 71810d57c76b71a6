//! Variation and selection operators for real-coded genomes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{EAConfig, Genome, Individual};

/// Operator tags used to split the random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum Operator {
    Init = 0,
    Select = 1,
    Crossover = 2,
    Mutate = 3,
}

/// A generator private to one (generation, slot, operator) triple, so draws do
/// not depend on the order in which other individuals are processed.
pub fn stream_rng(seed: u64, generation: usize, slot: usize, op: Operator) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(((generation as u64) << 40) | ((slot as u64) << 8) | op as u64);
    rng
}

const GENE_EPS: f64 = 1e-14;

/// Uniform sample inside the per-gene bounds.
pub fn random_genome<R: Rng>(config: &EAConfig, rng: &mut R) -> Genome {
    let mut g = [0.0; super::GENOME_LEN];
    for (gene, [lo, hi]) in g.iter_mut().zip(&config.bounds) {
        *gene = lo + (hi - lo) * rng.random::<f64>();
    }
    g
}

/// Simulated binary crossover with the bounded spread factor. With
/// probability `1 - crossover_prob` the parents are returned unchanged;
/// otherwise each gene is recombined with probability 1/2.
pub fn sbx_crossover<R: Rng>(a: &Genome, b: &Genome, config: &EAConfig, rng: &mut R) -> (Genome, Genome) {
    let mut ca = *a;
    let mut cb = *b;
    if rng.random::<f64>() >= config.crossover_prob {
        return (ca, cb);
    }
    let eta = config.sbx_eta;
    for i in 0..a.len() {
        let [lo, hi] = config.bounds[i];
        if rng.random::<f64>() > 0.5 || (a[i] - b[i]).abs() <= GENE_EPS || hi <= lo {
            continue;
        }
        let (y1, y2) = if a[i] < b[i] { (a[i], b[i]) } else { (b[i], a[i]) };
        let u = rng.random::<f64>();
        let spread = |beta: f64| {
            let alpha = 2.0 - beta.powf(-(eta + 1.0));
            if u <= 1.0 / alpha {
                (u * alpha).powf(1.0 / (eta + 1.0))
            } else {
                (1.0 / (2.0 - u * alpha)).powf(1.0 / (eta + 1.0))
            }
        };
        let betaq1 = spread(1.0 + 2.0 * (y1 - lo) / (y2 - y1));
        let betaq2 = spread(1.0 + 2.0 * (hi - y2) / (y2 - y1));
        let c1 = (0.5 * ((y1 + y2) - betaq1 * (y2 - y1))).clamp(lo, hi);
        let c2 = (0.5 * ((y1 + y2) + betaq2 * (y2 - y1))).clamp(lo, hi);
        if rng.random::<f64>() <= 0.5 {
            ca[i] = c2;
            cb[i] = c1;
        } else {
            ca[i] = c1;
            cb[i] = c2;
        }
    }
    (ca, cb)
}

/// Bounded polynomial mutation; each gene mutates with probability `mutation_prob`.
pub fn polynomial_mutation<R: Rng>(genome: &Genome, config: &EAConfig, rng: &mut R) -> Genome {
    let mut out = *genome;
    let eta = config.mutation_eta;
    let power = 1.0 / (eta + 1.0);
    for (i, y) in out.iter_mut().enumerate() {
        let [lo, hi] = config.bounds[i];
        if rng.random::<f64>() >= config.mutation_prob || hi <= lo {
            continue;
        }
        let width = hi - lo;
        let d1 = (*y - lo) / width;
        let d2 = (hi - *y) / width;
        let u = rng.random::<f64>();
        let deltaq = if u <= 0.5 {
            let v = 2.0 * u + (1.0 - 2.0 * u) * (1.0 - d1).powf(eta + 1.0);
            v.powf(power) - 1.0
        } else {
            let v = 2.0 * (1.0 - u) + 2.0 * (u - 0.5) * (1.0 - d2).powf(eta + 1.0);
            1.0 - v.powf(power)
        };
        *y = (*y + deltaq * width).clamp(lo, hi);
    }
    out
}

/// Crowded-comparison ordering: lower rank, then larger crowding, then earlier position.
fn beats(a: &Individual, ia: usize, b: &Individual, ib: usize) -> bool {
    if a.rank != b.rank {
        return a.rank < b.rank;
    }
    if a.crowding != b.crowding {
        return a.crowding > b.crowding;
    }
    ia < ib
}

/// Binary tournament between two distinct members; returns the winner's position.
pub fn binary_tournament<R: Rng>(population: &[Individual], rng: &mut R) -> usize {
    let n = population.len();
    let i = rng.random_range(0..n);
    let mut j = rng.random_range(0..n - 1);
    if j >= i {
        j += 1;
    }
    if beats(&population[i], i, &population[j], j) {
        i
    } else {
        j
    }
}
