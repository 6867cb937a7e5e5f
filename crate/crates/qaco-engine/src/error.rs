use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EngineError {
    #[error(transparent)]
    Sim(#[from] qsim_core::SimError),

    #[error("invalid problem instance: {0}")]
    InvalidInstance(String),

    #[error("path id {path_id} out of range for {path_slots} path slots")]
    PathOutOfRange { path_id: usize, path_slots: usize },

    #[error(
        "path {path_id} carries more than one pheromone-box value at iteration {iteration}; \
         the state lost its per-path correlation"
    )]
    AmbiguousBoxValue { path_id: usize, iteration: usize },

    #[error(
        "path {path_id} has amplitude {amplitude} at iteration {iteration}, expected {expected}"
    )]
    BadBranchAmplitude {
        path_id: usize,
        iteration: usize,
        amplitude: f64,
        expected: f64,
    },
}
