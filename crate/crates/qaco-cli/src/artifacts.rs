//! Deterministic text artifacts: trace and histogram CSVs, the gate-metrics
//! report, and the run summary.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use qaco_engine::IterationTrace;
use qsim_core::GateMetrics;

/// `t,path_id,box_value,box_bits` rows in trace order.
pub fn trace_csv(trace: &IterationTrace) -> String {
    let mut out = String::from("t,path_id,box_value,box_bits\n");
    for row in &trace.rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            row.t, row.path_id, row.box_value, row.box_bits
        );
    }
    out
}

/// `path_id,bits,probability,counts`, one row per path pattern.
pub fn histogram_csv(
    probabilities: &[f64],
    counts: &BTreeMap<usize, u64>,
    path_qubits: usize,
) -> String {
    let mut out = String::from("path_id,bits,probability,counts\n");
    for (pattern, probability) in probabilities.iter().enumerate() {
        let bits: String = (0..path_qubits)
            .rev()
            .map(|b| if (pattern >> b) & 1 == 1 { '1' } else { '0' })
            .collect();
        let count = counts.get(&pattern).copied().unwrap_or(0);
        let _ = writeln!(out, "{pattern},{bits},{probability:?},{count}");
    }
    out
}

/// Per-kind gate counts, total, and greedy depth.
pub fn metrics_report(metrics: &GateMetrics) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "total_gates = {}", metrics.total_gates);
    let _ = writeln!(out, "depth = {}", metrics.depth);
    for (kind, count) in &metrics.counts {
        let _ = writeln!(out, "{} = {}", kind.name(), count);
    }
    out
}

/// Render a path id as an MSB-first bit pattern.
pub fn path_bits(pattern: usize, path_qubits: usize) -> String {
    (0..path_qubits)
        .rev()
        .map(|b| if (pattern >> b) & 1 == 1 { '1' } else { '0' })
        .collect()
}
