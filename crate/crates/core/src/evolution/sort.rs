//! Non-dominated sorting and crowding distance.

use crate::error::{Error, Result};
use crate::objectives::FitnessPair;

use super::Individual;

/// Fronts as lists of indices into the input slice. Front 0 is non-dominated;
/// members of each front appear in ascending index order.
pub type Fronts = Vec<Vec<usize>>;

pub(crate) fn fitnesses(population: &[Individual]) -> Result<Vec<FitnessPair>> {
    population
        .iter()
        .enumerate()
        .map(|(i, ind)| ind.fitness.ok_or(Error::UnevaluatedIndividual(i)))
        .collect()
}

pub fn nondominated_sort(population: &[Individual]) -> Result<Fronts> {
    Ok(sort_fitness(&fitnesses(population)?))
}

/// Fast non-dominated sort over raw fitness pairs.
pub fn sort_fitness(fits: &[FitnessPair]) -> Fronts {
    let n = fits.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut domination_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            if fits[i].dominates(&fits[j]) {
                dominated_by[i].push(j);
                domination_count[j] += 1;
            } else if fits[j].dominates(&fits[i]) {
                dominated_by[j].push(i);
                domination_count[i] += 1;
            }
        }
    }

    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| domination_count[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominated_by[i] {
                domination_count[j] -= 1;
                if domination_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

pub fn crowding_distance(population: &[Individual], front: &[usize]) -> Result<Vec<f64>> {
    Ok(crowding_of(&fitnesses(population)?, front))
}

/// Crowding distance of each member of `front`, in the same order as `front`.
/// Extremes along either objective get `f64::INFINITY`.
pub fn crowding_of(fits: &[FitnessPair], front: &[usize]) -> Vec<f64> {
    let m = front.len();
    if m <= 2 {
        return vec![f64::INFINITY; m];
    }
    let mut distance = vec![0.0; m];
    for objective in 0..2 {
        let value = |k: usize| fits[front[k]].as_array()[objective];
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by(|&a, &b| value(a).total_cmp(&value(b)).then(front[a].cmp(&front[b])));
        distance[order[0]] = f64::INFINITY;
        distance[order[m - 1]] = f64::INFINITY;
        let range = value(order[m - 1]) - value(order[0]);
        if range > 0.0 {
            for w in 1..m - 1 {
                distance[order[w]] += (value(order[w + 1]) - value(order[w - 1])) / range;
            }
        }
    }
    distance
}
