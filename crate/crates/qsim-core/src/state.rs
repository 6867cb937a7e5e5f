use std::collections::BTreeMap;
use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::distributions::{Distribution, WeightedIndex};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::SimError;
use crate::gate::{GateKind, GateOp};

/// A single basis-state amplitude.
pub type Amplitude = Complex64;

/// Amplitudes below this magnitude are treated as exact zeros by the reset
/// and trace-extraction paths.
pub const AMP_EPS: f64 = 1e-12;

/// Hard ceiling on state size; 26 qubits is ~1 GiB of amplitudes.
pub const DEFAULT_QUBIT_LIMIT: usize = 26;

/// Dense statevector over `2^qubit_count` basis states.
///
/// Qubit `k` contributes bit `k` of the basis index, so qubit 0 is the least
/// significant index bit. Every module in the workspace shares this
/// convention.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantumState {
    qubit_count: usize,
    amplitudes: Vec<Amplitude>,
}

impl QuantumState {
    /// |0...0> on `qubit_count` qubits.
    pub fn zero(qubit_count: usize) -> Result<Self, SimError> {
        if qubit_count == 0 || qubit_count > DEFAULT_QUBIT_LIMIT {
            return Err(SimError::QubitLimitExceeded {
                requested: qubit_count,
                limit: DEFAULT_QUBIT_LIMIT,
            });
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << qubit_count];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        Ok(QuantumState {
            qubit_count,
            amplitudes,
        })
    }

    /// A single computational basis state.
    pub fn basis(qubit_count: usize, index: usize) -> Result<Self, SimError> {
        let mut state = Self::zero(qubit_count)?;
        if index >= state.amplitudes.len() {
            return Err(SimError::QubitOutOfRange { index, qubit_count });
        }
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[index] = Complex64::new(1.0, 0.0);
        Ok(state)
    }

    /// Build directly from amplitudes; the length must be a power of two.
    pub fn from_amplitudes(amplitudes: Vec<Amplitude>) -> Result<Self, SimError> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(SimError::QubitLimitExceeded {
                requested: len,
                limit: 1 << DEFAULT_QUBIT_LIMIT,
            });
        }
        Ok(QuantumState {
            qubit_count: len.trailing_zeros() as usize,
            amplitudes,
        })
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amplitudes
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amplitudes[index]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Apply one unitary gate in place. `Reset`/`Measure` are rejected; they
    /// have dedicated operations.
    pub fn apply_gate(&mut self, op: &GateOp) -> Result<(), SimError> {
        op.validate(self.qubit_count)?;
        let target_mask = 1usize << op.target;
        match op.kind {
            GateKind::Reset | GateKind::Measure => {
                return Err(SimError::NonUnitaryOp {
                    kind: op.kind.name(),
                })
            }
            GateKind::X => {
                for idx in 0..self.amplitudes.len() {
                    if idx & target_mask == 0 {
                        self.amplitudes.swap(idx, idx | target_mask);
                    }
                }
            }
            GateKind::H => {
                let h = FRAC_1_SQRT_2;
                for idx in 0..self.amplitudes.len() {
                    if idx & target_mask == 0 {
                        let lo = self.amplitudes[idx];
                        let hi = self.amplitudes[idx | target_mask];
                        self.amplitudes[idx] = (lo + hi) * h;
                        self.amplitudes[idx | target_mask] = (lo - hi) * h;
                    }
                }
            }
            GateKind::Cnot | GateKind::Ccnot | GateKind::Mct => {
                let ctrl_mask = op.control_mask();
                for idx in 0..self.amplitudes.len() {
                    if idx & ctrl_mask == ctrl_mask && idx & target_mask == 0 {
                        self.amplitudes.swap(idx, idx | target_mask);
                    }
                }
            }
            GateKind::Cphase => {
                let phase = Complex64::from_polar(1.0, op.angle);
                let ctrl_mask = op.control_mask();
                let full = ctrl_mask | target_mask;
                for idx in 0..self.amplitudes.len() {
                    if idx & full == full {
                        self.amplitudes[idx] *= phase;
                    }
                }
            }
        }
        Ok(())
    }

    /// Deterministic reset of a qubit whose value is a function of the other
    /// qubits in every nonzero branch: each nonzero component moves to the
    /// qubit=0 index. A genuine superposition on the qubit within a branch is
    /// a circuit-construction bug and is reported as a collision.
    pub fn branchwise_reset(&mut self, qubit: usize) -> Result<(), SimError> {
        if qubit >= self.qubit_count {
            return Err(SimError::QubitOutOfRange {
                index: qubit,
                qubit_count: self.qubit_count,
            });
        }
        let mask = 1usize << qubit;
        for idx in 0..self.amplitudes.len() {
            if idx & mask != 0 {
                continue;
            }
            let hi = idx | mask;
            if self.amplitudes[hi].norm() > AMP_EPS {
                if self.amplitudes[idx].norm() > AMP_EPS {
                    return Err(SimError::ResetCollision {
                        qubit,
                        index_a: idx,
                        index_b: hi,
                    });
                }
                self.amplitudes[idx] = self.amplitudes[hi];
            }
            self.amplitudes[hi] = Complex64::new(0.0, 0.0);
        }
        Ok(())
    }

    /// Marginal probability of each bit pattern over `qubits`, where
    /// `qubits[k]` supplies bit `k` of the pattern.
    pub fn outcome_probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>, SimError> {
        self.check_qubit_list(qubits)?;
        let mut probs = vec![0.0f64; 1 << qubits.len()];
        for (idx, amp) in self.amplitudes.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            probs[gather_bits(idx, qubits)] += p;
        }
        Ok(probs)
    }

    /// Seeded measurement sampling: counts per observed pattern, summing to
    /// `shots`. Identical seed, identical histogram.
    pub fn sample(
        &self,
        qubits: &[usize],
        shots: u64,
        seed: u64,
    ) -> Result<BTreeMap<usize, u64>, SimError> {
        if shots == 0 {
            return Err(SimError::ZeroShots);
        }
        let probs = self.outcome_probabilities(qubits)?;
        let weights: Vec<f64> = probs.iter().map(|p| p.max(0.0)).collect();
        let dist = WeightedIndex::new(&weights).expect("probabilities sum to one");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = BTreeMap::new();
        for _ in 0..shots {
            *counts.entry(dist.sample(&mut rng)).or_insert(0u64) += 1;
        }
        Ok(counts)
    }

    fn check_qubit_list(&self, qubits: &[usize]) -> Result<(), SimError> {
        let mut seen = vec![false; self.qubit_count];
        for &q in qubits {
            if q >= self.qubit_count {
                return Err(SimError::QubitOutOfRange {
                    index: q,
                    qubit_count: self.qubit_count,
                });
            }
            if seen[q] {
                return Err(SimError::DuplicateQubit { index: q });
            }
            seen[q] = true;
        }
        Ok(())
    }
}

/// Pattern formed by extracting `qubits[k]` of `index` into bit `k`.
pub fn gather_bits(index: usize, qubits: &[usize]) -> usize {
    let mut pattern = 0usize;
    for (k, &q) in qubits.iter().enumerate() {
        pattern |= ((index >> q) & 1) << k;
    }
    pattern
}
