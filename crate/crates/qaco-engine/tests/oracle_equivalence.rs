use proptest::prelude::*;
use qaco_engine::*;
use qsim_core::AMP_EPS;

const MODE_GRID: [(GuardMode, EvaporationPolicy); 6] = [
    (GuardMode::Verbatim, EvaporationPolicy::None),
    (GuardMode::Verbatim, EvaporationPolicy::Verbatim),
    (GuardMode::Verbatim, EvaporationPolicy::Period(3)),
    (GuardMode::Corrected, EvaporationPolicy::None),
    (GuardMode::Corrected, EvaporationPolicy::Verbatim),
    (GuardMode::Corrected, EvaporationPolicy::Period(3)),
];

fn instance_with(
    weights: &[u64],
    iterations: u64,
    d: usize,
    guard: GuardMode,
    evaporation: EvaporationPolicy,
) -> ProblemInstance {
    ProblemInstance::from_finite_weights(
        weights,
        iterations,
        d,
        EngineModes {
            guard,
            evaporation,
            stop: StopRule::FixedK,
            ..EngineModes::default()
        },
    )
    .unwrap()
}

/// Drive the quantum engine and the integer automaton side by side and
/// demand identical traces at every iteration.
fn assert_trace_equivalence(instance: ProblemInstance) {
    let t_max = instance.iterations;
    let mut engine = QacoEngine::new(instance.clone()).unwrap();
    for _ in 0..t_max {
        engine.step().unwrap();
    }
    let oracle = classical_box_oracle(&instance, t_max);
    assert_eq!(
        engine.trace().rows,
        oracle.rows,
        "quantum trace diverged from the classical automaton"
    );
}

#[test]
fn oracle_matches_quantum_trace_on_table1_all_modes() {
    for (guard, evaporation) in MODE_GRID {
        assert_trace_equivalence(instance_with(
            &EXAMPLE_WEIGHTS_8,
            200,
            4,
            guard,
            evaporation,
        ));
    }
}

#[test]
fn oracle_matches_quantum_trace_on_table2_all_modes() {
    for (guard, evaporation) in MODE_GRID {
        assert_trace_equivalence(instance_with(
            &EXAMPLE_WEIGHTS_16,
            120,
            4,
            guard,
            evaporation,
        ));
    }
}

#[test]
fn oracle_keeps_infinite_weight_paths_at_zero() {
    let mut instance = instance_with(
        &EXAMPLE_WEIGHTS_8,
        50,
        4,
        GuardMode::Corrected,
        EvaporationPolicy::None,
    );
    instance.set_weight(3, Weight::Infinite).unwrap();
    let trace = classical_box_oracle(&instance, 50);
    for t in 0..=50u64 {
        assert_eq!(trace.row(t, 3).unwrap().box_value, 0);
    }
}

#[test]
fn period_one_equals_verbatim_policy() {
    for guard in [GuardMode::Verbatim, GuardMode::Corrected] {
        let verbatim = instance_with(
            &EXAMPLE_WEIGHTS_8,
            60,
            4,
            guard,
            EvaporationPolicy::Verbatim,
        );
        let period = instance_with(
            &EXAMPLE_WEIGHTS_8,
            60,
            4,
            guard,
            EvaporationPolicy::Period(1),
        );
        assert_eq!(
            classical_box_oracle(&verbatim, 60).rows,
            classical_box_oracle(&period, 60).rows
        );
    }
}

#[test]
fn post_iteration_hygiene() {
    // After every iteration all nonzero components carry zeroed ancillas and
    // mark target, one component per path index at uniform magnitude.
    for (guard, evaporation) in MODE_GRID {
        let instance = instance_with(&[2, 3, 5, 7, 4], 40, 3, guard, evaporation);
        let mut engine = QacoEngine::new(instance.clone()).unwrap();
        let layout = *engine.layout();
        let expected = 1.0 / (instance.path_slots() as f64).sqrt();
        for _ in 0..40 {
            engine.step().unwrap();
            let mut seen = vec![0usize; instance.path_slots()];
            for (idx, amp) in engine.state().amplitudes().iter().enumerate() {
                if amp.norm() <= AMP_EPS {
                    continue;
                }
                assert_eq!(idx >> layout.deposit_flag() & 1, 0);
                assert_eq!(idx >> layout.evaporate_flag() & 1, 0);
                assert_eq!(idx >> layout.mark_target() & 1, 0);
                if let Some(g) = layout.guard_ancilla() {
                    assert_eq!(idx >> g & 1, 0);
                }
                assert!((amp.norm() - expected).abs() < 1e-9);
                seen[layout.path_of_index(idx)] += 1;
            }
            assert!(seen.iter().all(|&c| c == 1));
        }
    }
}

#[test]
fn evaporation_circuit_inverts_deposition_circuit() {
    // Both cascades with their flags raised, on every basis value, d <= 6.
    use qsim_core::{apply_circuit, QuantumState};
    for d in 2..=6usize {
        let layout = RegisterLayout::new(1, d, GuardMode::Verbatim);
        let mut roundtrip = qsim_core::Circuit::new(layout.total_qubits());
        roundtrip.extend_with(&fragments::pheromone_deposition_fragment(&layout));
        roundtrip.extend_with(&fragments::pheromone_evaporation_fragment(&layout));
        for value in 0..(1u64 << d) {
            let start = layout.index_of(0, value)
                | 1 << layout.deposit_flag()
                | 1 << layout.evaporate_flag();
            let mut state = QuantumState::basis(layout.total_qubits(), start).unwrap();
            apply_circuit(&mut state, &roundtrip).unwrap();
            assert!(
                (state.amplitude(start).norm() - 1.0).abs() < 1e-12,
                "d={d} value={value}"
            );
        }
    }
}

#[test]
fn corrected_guard_makes_full_boxes_absorbing() {
    // Keep iterating 20 steps past convergence in every policy; the full box
    // must never move again.
    for evaporation in [
        EvaporationPolicy::None,
        EvaporationPolicy::Verbatim,
        EvaporationPolicy::Period(3),
    ] {
        let instance = ProblemInstance::from_finite_weights(
            &[1, 6, 7, 9],
            7 + 20,
            4,
            EngineModes {
                guard: GuardMode::Corrected,
                evaporation,
                stop: StopRule::FixedK,
                ..EngineModes::default()
            },
        )
        .unwrap();
        let mut engine = QacoEngine::new(instance).unwrap();
        for _ in 0..27 {
            engine.step().unwrap();
        }
        for t in 7..=27u64 {
            assert_eq!(
                engine.trace().row(t, 0).unwrap().box_value,
                15,
                "policy {evaporation:?}, t={t}"
            );
        }
    }
}

#[test]
fn argmin_fills_first_under_deposition_only() {
    // Distinct weights, policy none: the first full box belongs to the
    // minimum weight and fills at deposits_to_full(d) * min(W).
    let cases: [(&[u64], usize); 3] = [
        (&[9, 4, 11, 7], 4),
        (&[6, 10, 3, 8, 12, 5], 3),
        (&[17, 2, 9, 5, 26, 13, 8, 21], 5),
    ];
    for (weights, d) in cases {
        let min_w = *weights.iter().min().unwrap();
        let argmin = weights.iter().position(|&w| w == min_w).unwrap();
        let horizon = deposits_to_full(d) * min_w;
        let instance =
            ProblemInstance::from_finite_weights(weights, horizon + 1, d, EngineModes::default())
                .unwrap();
        let result = run_qaco(&instance).unwrap();
        assert_eq!(result.converged_path, Some(argmin));
        assert_eq!(result.convergence_iteration, Some(horizon));
    }
}

#[test]
fn path_marginal_is_invariant_under_iterations() {
    // Selector fragments uncompute their dressing and guards only touch
    // ancilla/box, so the path-register distribution never changes.
    let instance = instance_with(
        &EXAMPLE_WEIGHTS_8,
        30,
        4,
        GuardMode::Corrected,
        EvaporationPolicy::Period(2),
    );
    let mut engine = QacoEngine::new(instance).unwrap();
    let layout = *engine.layout();
    let before = engine
        .state()
        .outcome_probabilities(&layout.path_qubits())
        .unwrap();
    for _ in 0..30 {
        engine.step().unwrap();
        let after = engine
            .state()
            .outcome_probabilities(&layout.path_qubits())
            .unwrap();
        for (a, b) in before.iter().zip(&after) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_equivalence_on_random_instances(
        n in 2usize..=10,
        d in 2usize..=5,
        k in 10u64..=60,
        guard_corrected in any::<bool>(),
        policy_pick in 0usize..3,
        seed in any::<u64>(),
    ) {
        // Weights drawn deterministically from the seed.
        let mut weights = Vec::with_capacity(n);
        let mut s = seed;
        for _ in 0..n {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            weights.push((s >> 33) % 12 + 1);
        }
        let guard = if guard_corrected { GuardMode::Corrected } else { GuardMode::Verbatim };
        let evaporation = match policy_pick {
            0 => EvaporationPolicy::None,
            1 => EvaporationPolicy::Verbatim,
            _ => EvaporationPolicy::Period(1 + (seed % 5)),
        };
        assert_trace_equivalence(instance_with(&weights, k, d, guard, evaporation));
    }
}
