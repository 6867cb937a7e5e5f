//! Subcommand implementations. Each writes its artifacts under the output
//! directory and prints a one-line summary to stdout.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use qaco_engine::{
    box_order, classical_box_oracle, fragments, run_qaco, EvaporationPolicy, ProblemInstance,
    QacoEngine, RegisterLayout, RunResult, StopRule,
};
use qsim_core::{apply_circuit, gate_metrics, qasm, Circuit, QuantumState};

use crate::artifacts::{histogram_csv, metrics_report, path_bits, trace_csv};
use crate::config::ExperimentConfig;

#[derive(Debug, thiserror::Error)]
pub enum CommandError {
    #[error("{0}")]
    Validation(String),

    #[error("{0}")]
    Runtime(String),

    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CommandError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CommandError::Validation(_) => 1,
            CommandError::Runtime(_) | CommandError::Io { .. } => 2,
        }
    }
}

fn runtime<E: std::fmt::Display>(e: E) -> CommandError {
    CommandError::Runtime(e.to_string())
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<PathBuf, CommandError> {
    fs::create_dir_all(dir).map_err(|source| CommandError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|source| CommandError::Io {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}

fn run_summary(config: &ExperimentConfig, result: &RunResult, path_qubits: usize) -> String {
    let mut out = String::new();
    match (result.converged_path, result.convergence_iteration) {
        (Some(path), Some(t)) => {
            let _ = writeln!(out, "converged_path = {path}");
            let _ = writeln!(out, "convergence_iteration = {t}");
        }
        _ => {
            let _ = writeln!(out, "converged_path = none");
            let _ = writeln!(out, "convergence_iteration = none");
        }
    }
    let argmax = result.argmax_pattern();
    let _ = writeln!(out, "iterations_executed = {}", result.iterations_executed);
    let _ = writeln!(out, "argmax_pattern = {}", path_bits(argmax, path_qubits));
    let _ = writeln!(out, "argmax_path_id = {argmax}");
    let _ = writeln!(out, "argmax_probability = {:?}", result.histogram[argmax]);
    let _ = writeln!(out, "shots = {}", config.shots);
    let _ = writeln!(out, "seed = {}", config.seed);
    out
}

/// Full experiment: run, then emit histogram CSV, trace CSV, gate-metrics
/// report, and a summary.
pub fn cmd_run(config: &ExperimentConfig, out_dir: &Path) -> Result<RunResult, CommandError> {
    let instance = config
        .instance()
        .map_err(|e| CommandError::Validation(e.to_string()))?;
    let result = run_qaco(&instance).map_err(runtime)?;
    let layout = RegisterLayout::for_instance(&instance);

    let counts = result
        .final_state
        .sample(&layout.path_qubits(), config.shots, config.seed)
        .map_err(runtime)?;
    write_file(
        out_dir,
        "histogram.csv",
        &histogram_csv(&result.histogram, &counts, layout.path_qubit_count()),
    )?;
    write_file(out_dir, "trace.csv", &trace_csv(&result.trace))?;
    write_file(out_dir, "metrics.txt", &metrics_report(&result.metrics))?;
    let summary = run_summary(config, &result, layout.path_qubit_count());
    write_file(out_dir, "summary.txt", &summary)?;

    match (result.converged_path, result.convergence_iteration) {
        (Some(path), Some(t)) => println!(
            "converged to path {path} at iteration {t}; argmax pattern {} (p = {:.6})",
            path_bits(result.argmax_pattern(), layout.path_qubit_count()),
            result.histogram[result.argmax_pattern()],
        ),
        _ => println!(
            "no convergence within K = {}; argmax pattern {}",
            config.iterations,
            path_bits(result.argmax_pattern(), layout.path_qubit_count()),
        ),
    }
    Ok(result)
}

/// Trace CSV only: iterate without marking or measurement. With `oracle`
/// set, the rows are recomputed by the classical automaton instead.
pub fn cmd_trace(
    config: &ExperimentConfig,
    out_dir: &Path,
    oracle: bool,
) -> Result<PathBuf, CommandError> {
    let instance = config
        .instance()
        .map_err(|e| CommandError::Validation(e.to_string()))?;
    let trace = if oracle {
        classical_box_oracle(&instance, iterations_to_run(&instance))
    } else {
        let mut engine = QacoEngine::new(instance.clone()).map_err(runtime)?;
        engine.run_iterations().map_err(runtime)?;
        engine.trace().clone()
    };
    let path = write_file(out_dir, "trace.csv", &trace_csv(&trace))?;
    println!("wrote {} rows to {}", trace.rows.len(), path.display());
    Ok(path)
}

/// How many iterations a trace covers under the configured stop rule.
fn iterations_to_run(instance: &ProblemInstance) -> u64 {
    match instance.modes.stop {
        StopRule::FixedK => instance.iterations,
        StopRule::FirstFull => {
            let mut oracle = qaco_engine::ClassicalBoxOracle::new(instance.clone());
            let full = (1u64 << instance.box_qubits) - 1;
            for _ in 0..instance.iterations {
                oracle.step();
                let full_count = oracle.boxes().iter().filter(|&&b| b == full).count();
                if full_count == 1 {
                    return oracle.iteration();
                }
            }
            instance.iterations
        }
    }
}

/// Which slice of the program to export.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QasmScope {
    Init,
    Iteration(u64),
    Full,
}

impl std::str::FromStr for QasmScope {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "init" => Ok(QasmScope::Init),
            "full" => Ok(QasmScope::Full),
            other => match other.strip_prefix("iteration:") {
                Some(t) => t
                    .parse::<u64>()
                    .map(QasmScope::Iteration)
                    .map_err(|_| format!("bad iteration index in `{other}`")),
                None => Err(format!(
                    "unknown scope `{other}`; expected init | iteration:<t> | full"
                )),
            },
        }
    }
}

/// Export OpenQASM 2.0 for the requested scope.
pub fn cmd_qasm(
    config: &ExperimentConfig,
    out_dir: &Path,
    scope: QasmScope,
) -> Result<PathBuf, CommandError> {
    let instance = config
        .instance()
        .map_err(|e| CommandError::Validation(e.to_string()))?;
    let layout = RegisterLayout::for_instance(&instance);
    let (name, circuit) = match scope {
        QasmScope::Init => ("init.qasm", fragments::init_circuit(&layout)),
        QasmScope::Iteration(t) => {
            if t < 1 || t > instance.iterations {
                return Err(CommandError::Validation(format!(
                    "iteration {t} outside 1..={}",
                    instance.iterations
                )));
            }
            (
                "iteration.qasm",
                fragments::iteration_circuit(t, &instance, &layout),
            )
        }
        QasmScope::Full => {
            let result = run_qaco(&instance).map_err(runtime)?;
            ("program.qasm", result.program)
        }
    };
    let path = write_file(out_dir, name, &qasm::export(&circuit))?;
    println!("wrote {}", path.display());
    Ok(path)
}

/// Classical reference run: per-path final selection frequencies.
pub fn cmd_classical(
    config: &ExperimentConfig,
    out_dir: &Path,
) -> Result<classical_aco::AcoResult, CommandError> {
    let weights = classical_aco::finite_weights(&config.weights);
    let params = config.aco_params();
    params
        .validate()
        .map_err(|e| CommandError::Validation(e.to_string()))?;
    let result = classical_aco::run_simple_aco(&weights, &params).map_err(runtime)?;

    let mut csv = String::from("path_id,weight,frequency\n");
    for (path, frequency) in result.selection_frequency.iter().enumerate() {
        let _ = writeln!(csv, "{path},{},{frequency:?}", config.weights[path]);
    }
    write_file(out_dir, "classical.csv", &csv)?;
    let summary = format!(
        "best_path = {}\nbest_weight = {}\nfinal_frequency = {:?}\n",
        result.best_path, result.best_weight, result.selection_frequency[result.best_path]
    );
    write_file(out_dir, "classical_summary.txt", &summary)?;
    println!(
        "classical best path {} (weight {}, final frequency {:.3})",
        result.best_path, result.best_weight, result.selection_frequency[result.best_path]
    );
    Ok(result)
}

/// Print the deposition state order for the configured box width.
pub fn cmd_order(box_qubits: usize) -> Result<(), CommandError> {
    if box_qubits < 2 {
        return Err(CommandError::Validation(
            "box must have at least 2 qubits".into(),
        ));
    }
    let order = box_order(box_qubits);
    let rendered: Vec<String> = order.iter().map(|v| v.to_string()).collect();
    println!("{}", rendered.join("-"));
    Ok(())
}

/// One bench row: the full program for an all-ones instance, so every path
/// is selected every iteration and the per-iteration cost is constant.
pub fn bench_program(
    n: usize,
    iterations: u64,
    config: &ExperimentConfig,
) -> Result<Circuit, CommandError> {
    let weights = vec![1u64; n];
    let mut modes = config.modes();
    modes.stop = StopRule::FixedK;
    let instance =
        ProblemInstance::from_finite_weights(&weights, iterations, config.box_qubits, modes)
            .map_err(|e| CommandError::Validation(e.to_string()))?;
    let layout = RegisterLayout::for_instance(&instance);
    let mut program = fragments::init_circuit(&layout);
    for t in 1..=iterations {
        program.extend_with(&fragments::iteration_circuit(t, &instance, &layout));
    }
    program.extend_with(&fragments::marking_circuit(&layout, &instance.modes));
    program.extend_with(&fragments::measure_paths_circuit(&layout));
    Ok(program)
}

/// Gate budget study over (n, K) grids; checks that the total count is an
/// exact affine function of K at fixed n.
pub fn cmd_bench(
    config: &ExperimentConfig,
    n_list: &[usize],
    k_list: &[u64],
    out_dir: &Path,
) -> Result<PathBuf, CommandError> {
    if n_list.is_empty() || k_list.is_empty() {
        return Err(CommandError::Validation(
            "bench needs nonempty n and K lists".into(),
        ));
    }
    if matches!(config.evaporation_policy, EvaporationPolicy::Period(_)) {
        return Err(CommandError::Validation(
            "bench needs an iteration-invariant policy (verbatim or none)".into(),
        ));
    }
    let mut csv = String::from("n,K,total_gates,depth,per_iteration_gates\n");
    for &n in n_list {
        let mut counts: Vec<(u64, usize, usize)> = Vec::new();
        let mut per_iteration = 0usize;
        for &k in k_list {
            let program = bench_program(n, k, config)?;
            let metrics = gate_metrics(&program);
            counts.push((k, metrics.total_gates, metrics.depth));
            per_iteration = per_iteration_gates(n, config)?;
            let _ = writeln!(
                csv,
                "{n},{k},{},{},{per_iteration}",
                metrics.total_gates, metrics.depth
            );
        }
        // count(K) = c0 + K * c1 must hold exactly.
        let (k0, total0, _) = counts[0];
        let c1 = per_iteration as u64;
        let c0 = total0 as u64 - k0 * c1;
        for &(k, total, _) in &counts {
            if total as u64 != c0 + k * c1 {
                return Err(CommandError::Runtime(format!(
                    "gate count is not affine in K at n = {n}: K = {k} gives {total}, \
                     expected {}",
                    c0 + k * c1
                )));
            }
        }
        println!("n = {n}: per-iteration gates {c1}, fixed overhead {c0}");
    }
    let path = write_file(out_dir, "bench.csv", &csv)?;
    Ok(path)
}

/// Gate count of one canonical iteration at this width.
fn per_iteration_gates(n: usize, config: &ExperimentConfig) -> Result<usize, CommandError> {
    let weights = vec![1u64; n];
    let mut modes = config.modes();
    modes.stop = StopRule::FixedK;
    let instance = ProblemInstance::from_finite_weights(&weights, 1, config.box_qubits, modes)
        .map_err(|e| CommandError::Validation(e.to_string()))?;
    let layout = RegisterLayout::for_instance(&instance);
    Ok(fragments::iteration_circuit(1, &instance, &layout)
        .ops
        .len())
}

/// Re-simulate an exported program and return path-register probabilities.
pub fn resimulate_program(qasm_text: &str, path_qubits: usize) -> Result<Vec<f64>, CommandError> {
    let circuit = qasm::parse(qasm_text).map_err(runtime)?;
    let mut state = QuantumState::zero(circuit.qubit_count).map_err(runtime)?;
    apply_circuit(&mut state, &circuit).map_err(runtime)?;
    let qubits: Vec<usize> = (0..path_qubits).collect();
    state.outcome_probabilities(&qubits).map_err(runtime)
}
