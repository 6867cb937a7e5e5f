//! Line-oriented `key = value` experiment configuration with `#` comments.

use std::path::PathBuf;

use classical_aco::AcoParams;
use qaco_engine::{
    EngineModes, EvaporationPolicy, GuardMode, MarkingMode, ProblemInstance, StopRule,
};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("line {line}: unknown key `{key}`")]
    UnknownKey { line: usize, key: String },

    #[error("line {line}: malformed value for `{key}`: {reason}")]
    BadValue {
        line: usize,
        key: String,
        reason: String,
    },

    #[error("line {line}: expected `key = value`")]
    BadSyntax { line: usize },

    #[error("line {line}: weights list has {got} entries but n = {expected}")]
    WeightCountMismatch {
        line: usize,
        got: usize,
        expected: usize,
    },

    #[error("missing required key `{0}`")]
    MissingKey(&'static str),

    #[error("duplicate key `{key}` on line {line}")]
    DuplicateKey { line: usize, key: String },

    #[error("invalid configuration: {0}")]
    Invalid(String),
}

/// Everything a run needs: the instance, simulator modes, sampling, and the
/// classical reference parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub n: usize,
    pub weights: Vec<u64>,
    pub iterations: u64,
    pub box_qubits: usize,
    pub evaporation_policy: EvaporationPolicy,
    pub guard_mode: GuardMode,
    pub marking_mode: MarkingMode,
    pub stop_rule: StopRule,
    pub grover_iterations: usize,
    pub shots: u64,
    pub seed: u64,
    pub alpha: f64,
    pub beta: f64,
    pub rho: f64,
    pub r0: f64,
    pub q_deposit: f64,
    pub ants: usize,
    pub aco_iterations: usize,
    pub out_dir: PathBuf,
}

impl ExperimentConfig {
    pub fn modes(&self) -> EngineModes {
        EngineModes {
            evaporation: self.evaporation_policy,
            guard: self.guard_mode,
            marking: self.marking_mode,
            stop: self.stop_rule,
            grover_iterations: self.grover_iterations,
        }
    }

    pub fn instance(&self) -> Result<ProblemInstance, ConfigError> {
        ProblemInstance::from_finite_weights(
            &self.weights,
            self.iterations,
            self.box_qubits,
            self.modes(),
        )
        .map_err(|e| ConfigError::Invalid(e.to_string()))
    }

    pub fn aco_params(&self) -> AcoParams {
        AcoParams {
            alpha: self.alpha,
            beta: self.beta,
            rho: self.rho,
            r0: self.r0,
            q_deposit: self.q_deposit,
            ants_per_iteration: self.ants,
            iterations: self.aco_iterations,
            seed: self.seed,
        }
    }
}

struct RawEntry {
    line: usize,
    value: String,
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, ConfigError> {
    const KNOWN_KEYS: [&str; 19] = [
        "n",
        "weights",
        "iterations",
        "box_qubits",
        "evaporation_policy",
        "guard_mode",
        "marking_mode",
        "stop_rule",
        "grover_iterations",
        "shots",
        "seed",
        "alpha",
        "beta",
        "rho",
        "r0",
        "q_deposit",
        "ants",
        "aco_iterations",
        "out_dir",
    ];

    let mut entries: Vec<(String, RawEntry)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let (key, value) = stripped
            .split_once('=')
            .ok_or(ConfigError::BadSyntax { line })?;
        let key = key.trim().to_string();
        let value = value.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::UnknownKey { line, key });
        }
        if entries.iter().any(|(k, _)| *k == key) {
            return Err(ConfigError::DuplicateKey { line, key });
        }
        entries.push((key, RawEntry { line, value }));
    }

    let find = |key: &str| entries.iter().find(|(k, _)| k == key).map(|(_, e)| e);
    let bad = |entry: &RawEntry, key: &str, reason: &str| ConfigError::BadValue {
        line: entry.line,
        key: key.to_string(),
        reason: reason.to_string(),
    };

    fn parse_with<T: std::str::FromStr>(
        entry: &RawEntry,
        key: &str,
        what: &str,
    ) -> Result<T, ConfigError> {
        entry.value.parse::<T>().map_err(|_| ConfigError::BadValue {
            line: entry.line,
            key: key.to_string(),
            reason: format!("expected {what}, got `{}`", entry.value),
        })
    }

    let n_entry = find("n").ok_or(ConfigError::MissingKey("n"))?;
    let n: usize = parse_with(n_entry, "n", "a positive integer")?;

    let weights_entry = find("weights").ok_or(ConfigError::MissingKey("weights"))?;
    let weights: Vec<u64> = weights_entry
        .value
        .split(',')
        .map(|token| {
            token.trim().parse::<u64>().map_err(|_| {
                bad(
                    weights_entry,
                    "weights",
                    "expected comma-separated integers",
                )
            })
        })
        .collect::<Result<_, _>>()?;
    if weights.len() != n {
        return Err(ConfigError::WeightCountMismatch {
            line: weights_entry.line,
            got: weights.len(),
            expected: n,
        });
    }

    let iterations_entry = find("iterations").ok_or(ConfigError::MissingKey("iterations"))?;
    let iterations: u64 = parse_with(iterations_entry, "iterations", "a positive integer")?;

    let box_qubits = match find("box_qubits") {
        Some(e) => parse_with(e, "box_qubits", "a positive integer")?,
        None => 4,
    };

    let evaporation_policy = match find("evaporation_policy") {
        Some(e) => match e.value.as_str() {
            "verbatim" => EvaporationPolicy::Verbatim,
            "none" => EvaporationPolicy::None,
            other => match other.strip_prefix("period:") {
                Some(period) => {
                    let period: u64 = period.trim().parse().map_err(|_| {
                        bad(
                            e,
                            "evaporation_policy",
                            "period:<E> needs an integer E >= 1",
                        )
                    })?;
                    if period == 0 {
                        return Err(bad(e, "evaporation_policy", "period must be >= 1"));
                    }
                    EvaporationPolicy::Period(period)
                }
                None => {
                    return Err(bad(
                        e,
                        "evaporation_policy",
                        "expected verbatim | period:<E> | none",
                    ))
                }
            },
        },
        None => EvaporationPolicy::None,
    };

    let guard_mode = match find("guard_mode") {
        Some(e) => match e.value.as_str() {
            "verbatim" => GuardMode::Verbatim,
            "corrected" => GuardMode::Corrected,
            _ => return Err(bad(e, "guard_mode", "expected verbatim | corrected")),
        },
        None => GuardMode::Corrected,
    };

    let marking_mode = match find("marking_mode") {
        Some(e) => match e.value.as_str() {
            "verbatim_msb" => MarkingMode::VerbatimMsb,
            "flag_z" => MarkingMode::FlagZ,
            _ => return Err(bad(e, "marking_mode", "expected verbatim_msb | flag_z")),
        },
        None => MarkingMode::FlagZ,
    };

    let stop_rule = match find("stop_rule") {
        Some(e) => match e.value.as_str() {
            "fixed_k" => StopRule::FixedK,
            "first_full" => StopRule::FirstFull,
            _ => return Err(bad(e, "stop_rule", "expected fixed_k | first_full")),
        },
        None => StopRule::FirstFull,
    };

    let grover_iterations = match find("grover_iterations") {
        Some(e) => parse_with(e, "grover_iterations", "a nonnegative integer")?,
        None => 1,
    };
    let shots: u64 = match find("shots") {
        Some(e) => parse_with(e, "shots", "a positive integer")?,
        None => 8192,
    };
    if shots == 0 {
        let e = find("shots").expect("shots present when zero");
        return Err(bad(e, "shots", "must be at least 1"));
    }
    let seed = match find("seed") {
        Some(e) => parse_with(e, "seed", "an integer")?,
        None => 1,
    };
    let alpha = match find("alpha") {
        Some(e) => parse_with(e, "alpha", "a number")?,
        None => 1.0,
    };
    let beta = match find("beta") {
        Some(e) => parse_with(e, "beta", "a number")?,
        None => 2.0,
    };
    let rho = match find("rho") {
        Some(e) => parse_with(e, "rho", "a number")?,
        None => 0.1,
    };
    let r0 = match find("r0") {
        Some(e) => parse_with(e, "r0", "a number")?,
        None => 0.5,
    };
    let q_deposit = match find("q_deposit") {
        Some(e) => parse_with(e, "q_deposit", "a number")?,
        None => 1.0,
    };
    let ants = match find("ants") {
        Some(e) => parse_with(e, "ants", "a positive integer")?,
        None => 100,
    };
    let aco_iterations = match find("aco_iterations") {
        Some(e) => parse_with(e, "aco_iterations", "a positive integer")?,
        None => 200,
    };
    let out_dir = match find("out_dir") {
        Some(e) => PathBuf::from(&e.value),
        None => PathBuf::from("out"),
    };

    Ok(ExperimentConfig {
        n,
        weights,
        iterations,
        box_qubits,
        evaporation_policy,
        guard_mode,
        marking_mode,
        stop_rule,
        grover_iterations,
        shots,
        seed,
        alpha,
        beta,
        rho,
        r0,
        q_deposit,
        ants,
        aco_iterations,
        out_dir,
    })
}
