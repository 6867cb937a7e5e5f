//! Simple ant colony optimization on n parallel weighted paths, driven by
//! the pseudo-random proportional rule, plus a brute-force argmin oracle.
//!
//! Each ant makes one decision per iteration: which path to take from source
//! to destination. Pheromone biases that choice; evaporation then deposition
//! update the trail levels once per iteration.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AcoError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no finite-weight path to optimize")]
    NoFinitePath,

    #[error("degenerate pheromone state: every feasible numerator is zero")]
    DegeneratePheromone,
}

/// Path weight; `None` marks an unreachable path.
pub type PathWeight = Option<u64>;

/// Tuning knobs of the simple ant system.
#[derive(Debug, Clone, PartialEq)]
pub struct AcoParams {
    /// Pheromone exponent.
    pub alpha: f64,
    /// Heuristic exponent.
    pub beta: f64,
    /// Evaporation factor in (0, 1].
    pub rho: f64,
    /// Exploitation threshold in [0, 1]: draws at or below it take the
    /// argmax, the rest sample proportionally.
    pub r0: f64,
    /// Deposit constant; each ant adds `q_deposit / weight`.
    pub q_deposit: f64,
    pub ants_per_iteration: usize,
    pub iterations: usize,
    pub seed: u64,
}

impl Default for AcoParams {
    fn default() -> Self {
        AcoParams {
            alpha: 1.0,
            beta: 2.0,
            rho: 0.1,
            r0: 0.5,
            q_deposit: 1.0,
            ants_per_iteration: 100,
            iterations: 200,
            seed: 1,
        }
    }
}

impl AcoParams {
    pub fn validate(&self) -> Result<(), AcoError> {
        if !(self.rho > 0.0 && self.rho <= 1.0) {
            return Err(AcoError::InvalidParams(format!(
                "rho must lie in (0, 1], got {}",
                self.rho
            )));
        }
        if !(0.0..=1.0).contains(&self.r0) {
            return Err(AcoError::InvalidParams(format!(
                "r0 must lie in [0, 1], got {}",
                self.r0
            )));
        }
        if self.alpha < 0.0 || self.beta < 0.0 {
            return Err(AcoError::InvalidParams(
                "alpha and beta must be nonnegative".into(),
            ));
        }
        if self.q_deposit < 0.0 {
            return Err(AcoError::InvalidParams(
                "deposit constant must be nonnegative".into(),
            ));
        }
        if self.ants_per_iteration == 0 {
            return Err(AcoError::InvalidParams("need at least one ant".into()));
        }
        if self.iterations == 0 {
            return Err(AcoError::InvalidParams(
                "need at least one iteration".into(),
            ));
        }
        Ok(())
    }
}

/// Trail levels and the fixed inverse-weight heuristic.
#[derive(Debug, Clone, PartialEq)]
pub struct PheromoneVector {
    pub tau: Vec<f64>,
    pub eta: Vec<f64>,
}

impl PheromoneVector {
    /// Constant unit pheromone on every path; eta = 1/W on finite paths.
    pub fn initial(weights: &[PathWeight]) -> Self {
        PheromoneVector {
            tau: vec![1.0; weights.len()],
            eta: weights
                .iter()
                .map(|w| w.map_or(0.0, |w| 1.0 / w as f64))
                .collect(),
        }
    }

    fn score(&self, params: &AcoParams, path: usize) -> f64 {
        self.tau[path].powf(params.alpha) * self.eta[path].powf(params.beta)
    }
}

/// Normalized selection distribution over the feasible set; zero elsewhere.
pub fn transition_probabilities(
    pheromone: &PheromoneVector,
    params: &AcoParams,
    feasible: &[usize],
) -> Result<Vec<f64>, AcoError> {
    if feasible.is_empty() {
        return Err(AcoError::NoFinitePath);
    }
    let mut probs = vec![0.0; pheromone.tau.len()];
    let total: f64 = feasible.iter().map(|&j| pheromone.score(params, j)).sum();
    if total <= 0.0 || !total.is_finite() {
        return Err(AcoError::DegeneratePheromone);
    }
    for &j in feasible {
        probs[j] = pheromone.score(params, j) / total;
    }
    Ok(probs)
}

/// Pseudo-random proportional rule: exploit the argmax when the draw `r`
/// falls at or below the threshold, otherwise sample proportionally using
/// the second uniform draw. Exact ties go to the lowest path id.
pub fn pseudo_random_select(
    pheromone: &PheromoneVector,
    params: &AcoParams,
    feasible: &[usize],
    r: f64,
    sample_draw: f64,
) -> Result<usize, AcoError> {
    if feasible.is_empty() {
        return Err(AcoError::NoFinitePath);
    }
    if r <= params.r0 {
        let mut best = feasible[0];
        let mut best_score = pheromone.score(params, best);
        for &j in &feasible[1..] {
            let score = pheromone.score(params, j);
            if score > best_score {
                best = j;
                best_score = score;
            }
        }
        if best_score <= 0.0 || !best_score.is_finite() {
            return Err(AcoError::DegeneratePheromone);
        }
        return Ok(best);
    }
    let probs = transition_probabilities(pheromone, params, feasible)?;
    let mut acc = 0.0;
    for &j in feasible {
        acc += probs[j];
        if sample_draw < acc {
            return Ok(j);
        }
    }
    Ok(*feasible.last().expect("feasible checked nonempty"))
}

/// Add one ant's deposit to its chosen path.
pub fn deposit(pheromone: &mut PheromoneVector, path: usize, weight: u64, params: &AcoParams) {
    pheromone.tau[path] += params.q_deposit / weight as f64;
}

/// Multiplicative decay of every trail.
pub fn evaporate(pheromone: &mut PheromoneVector, rho: f64) {
    for tau in &mut pheromone.tau {
        *tau *= 1.0 - rho;
    }
}

/// What a finished run reports.
#[derive(Debug, Clone, PartialEq)]
pub struct AcoResult {
    pub best_path: usize,
    pub best_weight: u64,
    /// Fraction of the final iteration's ants choosing each path.
    pub selection_frequency: Vec<f64>,
}

/// Seeded simple-ACO run: per iteration every ant picks a path, then all
/// trails evaporate, then each ant's path receives its deposit.
pub fn run_simple_aco(weights: &[PathWeight], params: &AcoParams) -> Result<AcoResult, AcoError> {
    params.validate()?;
    let feasible: Vec<usize> = weights
        .iter()
        .enumerate()
        .filter(|(_, w)| w.is_some())
        .map(|(i, _)| i)
        .collect();
    if feasible.is_empty() {
        return Err(AcoError::NoFinitePath);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut pheromone = PheromoneVector::initial(weights);
    let mut last_choices = vec![0usize; weights.len()];

    for _ in 0..params.iterations {
        let mut choices = vec![0usize; weights.len()];
        let mut chosen = Vec::with_capacity(params.ants_per_iteration);
        for _ in 0..params.ants_per_iteration {
            let r: f64 = rng.gen();
            let sample_draw: f64 = rng.gen();
            let path = pseudo_random_select(&pheromone, params, &feasible, r, sample_draw)?;
            choices[path] += 1;
            chosen.push(path);
        }
        evaporate(&mut pheromone, params.rho);
        for &path in &chosen {
            let weight = weights[path].expect("chosen paths are feasible");
            deposit(&mut pheromone, path, weight, params);
        }
        last_choices = choices;
    }

    let total = params.ants_per_iteration as f64;
    let selection_frequency: Vec<f64> = last_choices.iter().map(|&c| c as f64 / total).collect();
    let best_path = selection_frequency
        .iter()
        .enumerate()
        .max_by(|a, b| {
            a.1.partial_cmp(b.1)
                .expect("frequencies are finite")
                .then(b.0.cmp(&a.0)) // prefer the lowest id on ties
        })
        .map(|(i, _)| i)
        .expect("at least one path");
    let best_weight = weights[best_path].ok_or(AcoError::NoFinitePath)?;
    Ok(AcoResult {
        best_path,
        best_weight,
        selection_frequency,
    })
}

/// Ground truth: lowest-id index of minimal finite weight.
pub fn brute_force_argmin(weights: &[PathWeight]) -> Result<usize, AcoError> {
    weights
        .iter()
        .enumerate()
        .filter_map(|(i, w)| w.map(|w| (i, w)))
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(i, _)| i)
        .ok_or(AcoError::NoFinitePath)
}

/// Finite weights helper for callers without unreachable paths.
pub fn finite_weights(weights: &[u64]) -> Vec<PathWeight> {
    weights.iter().map(|&w| Some(w)).collect()
}
