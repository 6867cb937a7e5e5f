//! Circuit builders for every stage of the optimizer: initialization, path
//! selection, the guarded pheromone update, and marking plus diffusion.

use std::f64::consts::PI;

use qsim_core::{Circuit, GateOp};

use crate::instance::{EngineModes, GuardMode, MarkingMode, ProblemInstance};
use crate::layout::RegisterLayout;

/// Hadamards on the path register: the uniform superposition over all path
/// indices with ancillas, box, and target at zero.
pub fn init_circuit(layout: &RegisterLayout) -> Circuit {
    let mut circuit = Circuit::new(layout.total_qubits());
    for b in 0..layout.path_qubit_count() {
        circuit.push(GateOp::h(layout.path_qubit(b)));
    }
    circuit
}

/// Raise both update ancillas on the branch encoding `path_id`: X gates on
/// the zero bits of the index, one MCT per ancilla, then the same X gates to
/// uncompute.
pub fn path_selector_fragment(path_id: usize, layout: &RegisterLayout) -> Circuit {
    let x = layout.path_qubit_count();
    let mut circuit = Circuit::new(layout.total_qubits());
    let dress: Vec<usize> = (0..x)
        .filter(|&b| (path_id >> b) & 1 == 0)
        .map(|b| layout.path_qubit(b))
        .collect();
    for &q in &dress {
        circuit.push(GateOp::x(q));
    }
    circuit.push(GateOp::mct(layout.path_qubits(), layout.deposit_flag()));
    circuit.push(GateOp::mct(layout.path_qubits(), layout.evaporate_flag()));
    for &q in &dress {
        circuit.push(GateOp::x(q));
    }
    circuit
}

/// One deposition step: CCNOT cascade from the low end of the box upward,
/// then a NOT on the head bit, all controlled on the deposit flag. Walks the
/// box through its fixed state order.
pub fn pheromone_deposition_fragment(layout: &RegisterLayout) -> Circuit {
    let d = layout.box_qubit_count();
    let flag = layout.deposit_flag();
    let mut circuit = Circuit::new(layout.total_qubits());
    for m in (0..d - 1).rev() {
        circuit.push(GateOp::ccnot(
            flag,
            layout.box_qubit(m),
            layout.box_qubit(m + 1),
        ));
    }
    circuit.push(GateOp::cnot(flag, layout.box_qubit(0)));
    circuit
}

/// One evaporation step: the exact gate-reverse of deposition, controlled on
/// the evaporate flag.
pub fn pheromone_evaporation_fragment(layout: &RegisterLayout) -> Circuit {
    let d = layout.box_qubit_count();
    let flag = layout.evaporate_flag();
    let mut circuit = Circuit::new(layout.total_qubits());
    circuit.push(GateOp::cnot(flag, layout.box_qubit(0)));
    for m in 0..d - 1 {
        circuit.push(GateOp::ccnot(
            flag,
            layout.box_qubit(m),
            layout.box_qubit(m + 1),
        ));
    }
    circuit
}

/// The guarded pheromone update.
///
/// Entry convention: selected branches carry deposit=1/evaporate=0,
/// unselected branches deposit=0/evaporate=1.
///
/// Verbatim emits the verbatim sequence: full-box check into the deposit
/// flag, deposition, full-box check into the evaporate flag, X-dressed
/// empty-box check into the evaporate flag, evaporation. Its gate-level
/// consequences are kept as-is: a just-filled box is evaporated back one
/// step, a full box on a selected branch is evaporated, and a full box on
/// an unselected branch is pushed through the wrap step by the first check.
///
/// Corrected computes box fullness into the extra ancilla before and after
/// deposition and conditions the checks on the selection flags, so a full
/// box is absorbing: no deposit past full, no evaporation of a full or
/// just-filled box.
pub fn update_pheromone_fragment(
    layout: &RegisterLayout,
    guard: GuardMode,
    include_evaporation: bool,
) -> Circuit {
    match guard {
        GuardMode::Verbatim => verbatim_update(layout, include_evaporation),
        GuardMode::Corrected => corrected_update(layout, include_evaporation),
    }
}

fn verbatim_update(layout: &RegisterLayout, include_evaporation: bool) -> Circuit {
    let mut circuit = Circuit::new(layout.total_qubits());
    circuit.push(GateOp::mct(layout.box_qubits(), layout.deposit_flag()));
    circuit.extend_with(&pheromone_deposition_fragment(layout));
    if include_evaporation {
        circuit.push(GateOp::mct(layout.box_qubits(), layout.evaporate_flag()));
        for q in layout.box_qubits() {
            circuit.push(GateOp::x(q));
        }
        circuit.push(GateOp::mct(layout.box_qubits(), layout.evaporate_flag()));
        for q in layout.box_qubits() {
            circuit.push(GateOp::x(q));
        }
        circuit.extend_with(&pheromone_evaporation_fragment(layout));
    }
    circuit
}

fn corrected_update(layout: &RegisterLayout, include_evaporation: bool) -> Circuit {
    let guard = layout
        .guard_ancilla()
        .expect("corrected guard requires the extra ancilla in the layout");
    let deposit = layout.deposit_flag();
    let evaporate = layout.evaporate_flag();
    let mut circuit = Circuit::new(layout.total_qubits());

    // Fullness before deposition.
    circuit.push(GateOp::mct(layout.box_qubits(), guard));
    // Drop the deposit flag on full boxes of selected branches only; the
    // evaporate flag is still the untouched complement of selection here.
    circuit.push(GateOp::x(evaporate));
    circuit.push(GateOp::ccnot(guard, evaporate, deposit));
    circuit.push(GateOp::x(evaporate));

    circuit.extend_with(&pheromone_deposition_fragment(layout));

    // Restore the deposit flag to the plain selection flag.
    circuit.push(GateOp::x(evaporate));
    circuit.push(GateOp::ccnot(guard, evaporate, deposit));
    circuit.push(GateOp::x(evaporate));

    if include_evaporation {
        // No evaporation from boxes that were full at entry. Only unselected
        // branches can have the evaporate flag raised, and their boxes were
        // untouched by deposition, so the pre-deposition fullness is current.
        circuit.push(GateOp::x(deposit));
        circuit.push(GateOp::ccnot(guard, deposit, evaporate));
        circuit.push(GateOp::x(deposit));
        // Empty-box check, as in the verbatim sequence.
        for q in layout.box_qubits() {
            circuit.push(GateOp::x(q));
        }
        circuit.push(GateOp::mct(layout.box_qubits(), evaporate));
        for q in layout.box_qubits() {
            circuit.push(GateOp::x(q));
        }
        circuit.extend_with(&pheromone_evaporation_fragment(layout));
    }

    // Fullness after the update; cancels the first check wherever fullness
    // did not change. A just-filled branch leaves the ancilla raised and is
    // cleared by the end-of-iteration reset.
    circuit.push(GateOp::mct(layout.box_qubits(), guard));
    circuit
}

/// One full iteration: selector fragments for every path selected at `t`, a
/// NOT on the evaporate flag, the guarded update, and ancilla resets.
pub fn iteration_circuit(t: u64, instance: &ProblemInstance, layout: &RegisterLayout) -> Circuit {
    let mut circuit = Circuit::new(layout.total_qubits());
    for path_id in instance.selected_paths(t) {
        circuit.extend_with(&path_selector_fragment(path_id, layout));
    }
    circuit.push(GateOp::x(layout.evaporate_flag()));
    circuit.extend_with(&update_pheromone_fragment(
        layout,
        instance.modes.guard,
        instance.modes.evaporation.includes(t),
    ));
    circuit.push(GateOp::reset(layout.deposit_flag()));
    circuit.push(GateOp::reset(layout.evaporate_flag()));
    if let Some(guard) = layout.guard_ancilla() {
        circuit.push(GateOp::reset(guard));
    }
    circuit
}

/// Mark full-box branches and amplify: MCT from the box onto the mark
/// target, a pi phase per the marking mode, then the requested number of
/// inversion-about-mean operators on the path register.
pub fn marking_circuit(layout: &RegisterLayout, modes: &EngineModes) -> Circuit {
    let mut circuit = Circuit::new(layout.total_qubits());
    circuit.push(GateOp::mct(layout.box_qubits(), layout.mark_target()));
    match modes.marking {
        MarkingMode::VerbatimMsb => {
            let msb = layout.path_qubit(layout.path_qubit_count() - 1);
            circuit.push(GateOp::cphase(layout.mark_target(), msb, PI));
        }
        MarkingMode::FlagZ => {
            // Phase on the mark target alone, realized with a temporarily
            // raised helper so the controlled phase fires on every branch
            // with the target set. The deposit flag is zero on all branches
            // here.
            let helper = layout.deposit_flag();
            circuit.push(GateOp::x(helper));
            circuit.push(GateOp::cphase(helper, layout.mark_target(), PI));
            circuit.push(GateOp::x(helper));
        }
    }
    for _ in 0..modes.grover_iterations {
        circuit.extend_with(&diffusion_circuit(layout));
    }
    circuit
}

/// Inversion about the mean on the path register: H on all path qubits, X on
/// all, a pi phase on the all-ones pattern, X on all, H on all.
pub fn diffusion_circuit(layout: &RegisterLayout) -> Circuit {
    let x = layout.path_qubit_count();
    let mut circuit = Circuit::new(layout.total_qubits());
    for b in 0..x {
        circuit.push(GateOp::h(layout.path_qubit(b)));
    }
    for b in 0..x {
        circuit.push(GateOp::x(layout.path_qubit(b)));
    }
    match x {
        1 => {
            // Plain Z on the single path qubit via a raised helper.
            let helper = layout.deposit_flag();
            circuit.push(GateOp::x(helper));
            circuit.push(GateOp::cphase(helper, layout.path_qubit(0), PI));
            circuit.push(GateOp::x(helper));
        }
        2 => {
            circuit.push(GateOp::cphase(
                layout.path_qubit(0),
                layout.path_qubit(1),
                PI,
            ));
        }
        _ => {
            // Multi-controlled Z as an H-conjugated MCT on the top path qubit.
            let top = layout.path_qubit(x - 1);
            let controls: Vec<usize> = (0..x - 1).map(|b| layout.path_qubit(b)).collect();
            circuit.push(GateOp::h(top));
            circuit.push(GateOp::mct(controls, top));
            circuit.push(GateOp::h(top));
        }
    }
    for b in 0..x {
        circuit.push(GateOp::x(layout.path_qubit(b)));
    }
    for b in 0..x {
        circuit.push(GateOp::h(layout.path_qubit(b)));
    }
    circuit
}

/// Measurement markers for the path register.
pub fn measure_paths_circuit(layout: &RegisterLayout) -> Circuit {
    let mut circuit = Circuit::new(layout.total_qubits());
    for b in 0..layout.path_qubit_count() {
        circuit.push(GateOp::measure(layout.path_qubit(b)));
    }
    circuit
}

/// Advance a box value one deposition step (pure integer twin of the
/// cascade; wraps from all-ones to zero).
pub fn deposit_step(value: u64, d: usize) -> u64 {
    let mut bits = value_to_bits(value, d);
    for m in (0..d - 1).rev() {
        bits[m + 1] ^= bits[m];
    }
    bits[0] ^= true;
    bits_to_value(&bits)
}

/// Regress a box value one step (inverse cascade; wraps from zero to
/// all-ones).
pub fn evaporate_step(value: u64, d: usize) -> u64 {
    let mut bits = value_to_bits(value, d);
    bits[0] ^= true;
    for m in 0..d - 1 {
        bits[m + 1] ^= bits[m];
    }
    bits_to_value(&bits)
}

fn value_to_bits(value: u64, d: usize) -> Vec<bool> {
    (0..d).map(|m| (value >> (d - 1 - m)) & 1 == 1).collect()
}

fn bits_to_value(bits: &[bool]) -> u64 {
    let d = bits.len();
    bits.iter()
        .enumerate()
        .fold(0u64, |v, (m, &b)| v | ((b as u64) << (d - 1 - m)))
}

/// The sequence of box values produced by repeated deposition from the empty
/// box to the full one.
pub fn box_order(d: usize) -> Vec<u64> {
    assert!(d >= 2, "pheromone box needs at least 2 qubits");
    let full = (1u64 << d) - 1;
    let mut order = vec![0u64];
    let mut value = 0u64;
    while value != full {
        value = deposit_step(value, d);
        order.push(value);
    }
    order
}

/// Deposits needed to fill the box from empty: `2^(floor(log2 d) + 1) - 1`.
pub fn deposits_to_full(d: usize) -> u64 {
    (1u64 << (d.ilog2() + 1)) - 1
}

#[cfg(test)]
mod tests {
    use super::*;
    use qsim_core::{apply_circuit, GateKind, QuantumState};

    fn mk_layout(x: usize, d: usize, guard: GuardMode) -> RegisterLayout {
        RegisterLayout::new(x, d, guard)
    }

    /// Basis index for (path, deposit flag, evaporate flag, box value).
    fn index_for(
        layout: &RegisterLayout,
        path: usize,
        dep: bool,
        evap: bool,
        box_value: u64,
    ) -> usize {
        let mut idx = layout.index_of(path, box_value);
        if dep {
            idx |= 1 << layout.deposit_flag();
        }
        if evap {
            idx |= 1 << layout.evaporate_flag();
        }
        idx
    }

    /// Apply a fragment to one basis state and return the resulting index.
    fn run_on_basis(layout: &RegisterLayout, circuit: &Circuit, index: usize) -> usize {
        let mut state = QuantumState::basis(layout.total_qubits(), index).unwrap();
        apply_circuit(&mut state, circuit).unwrap();
        let hits: Vec<usize> = state
            .amplitudes()
            .iter()
            .enumerate()
            .filter(|(_, a)| a.norm() > 1e-9)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(hits.len(), 1, "fragment must permute basis states");
        hits[0]
    }

    #[test]
    fn box_order_d4_sequence() {
        assert_eq!(box_order(4), vec![0, 8, 4, 14, 1, 9, 5, 15]);
        assert_eq!(box_order(2), vec![0, 2, 1, 3]);
        assert_eq!(box_order(3), vec![0, 4, 2, 7]);
    }

    #[test]
    fn box_order_length_formula() {
        for d in 2..=8usize {
            let order = box_order(d);
            assert_eq!(order.len() as u64, deposits_to_full(d) + 1, "d={d}");
            assert_eq!(order[0], 0);
            assert_eq!(*order.last().unwrap(), (1 << d) - 1);
            let mut sorted = order.clone();
            sorted.sort_unstable();
            sorted.dedup();
            assert_eq!(sorted.len(), order.len(), "d={d}: entries must be distinct");
        }
        assert_eq!(deposits_to_full(5), 7);
        assert_eq!(box_order(5).len(), 8);
        assert_eq!(*box_order(5).last().unwrap(), 31);
    }

    #[test]
    fn evaporate_step_inverts_deposit_step() {
        for d in 2..=6usize {
            for value in 0..(1u64 << d) {
                assert_eq!(evaporate_step(deposit_step(value, d), d), value);
            }
        }
    }

    #[test]
    fn selector_dresses_zero_bits_only() {
        let layout = mk_layout(3, 4, GuardMode::Verbatim);
        // Path 6 = 110: only bit 0 is zero.
        let circuit = path_selector_fragment(6, &layout);
        let kinds: Vec<GateKind> = circuit.ops.iter().map(|op| op.kind).collect();
        assert_eq!(
            kinds,
            vec![GateKind::X, GateKind::Mct, GateKind::Mct, GateKind::X]
        );
        assert_eq!(circuit.ops[0].target, layout.path_qubit(0));
        assert_eq!(circuit.ops[3].target, layout.path_qubit(0));

        // Path 7 = 111: no dressing.
        let circuit = path_selector_fragment(7, &layout);
        assert_eq!(circuit.ops.len(), 2);
        assert!(circuit.ops.iter().all(|op| op.kind == GateKind::Mct));

        // x=4, path 13 = 1101: only bit 1 is zero.
        let layout = RegisterLayout::new(4, 4, GuardMode::Verbatim);
        let circuit = path_selector_fragment(13, &layout);
        let x_targets: Vec<usize> = circuit
            .ops
            .iter()
            .filter(|op| op.kind == GateKind::X)
            .map(|op| op.target)
            .collect();
        assert_eq!(x_targets, vec![layout.path_qubit(1), layout.path_qubit(1)]);
    }

    #[test]
    fn selector_raises_both_flags_on_its_branch_only() {
        let layout = mk_layout(3, 2, GuardMode::Verbatim);
        let circuit = path_selector_fragment(6, &layout);
        for path in 0..8usize {
            let start = index_for(&layout, path, false, false, 0);
            let end = run_on_basis(&layout, &circuit, start);
            let expected = index_for(&layout, path, path == 6, path == 6, 0);
            assert_eq!(end, expected, "path {path}");
        }
    }

    #[test]
    fn deposition_walks_the_fixed_state_order() {
        let layout = mk_layout(1, 4, GuardMode::Verbatim);
        let circuit = pheromone_deposition_fragment(&layout);
        // Flag raised: 0000 -> 1000 (value 0 -> 8), 1110 (14) -> 0001 (1).
        for (from, to) in [(0u64, 8u64), (14, 1)] {
            let start = index_for(&layout, 0, true, false, from);
            let end = run_on_basis(&layout, &circuit, start);
            assert_eq!(end, index_for(&layout, 0, true, false, to));
        }
        // Flag clear: any box unchanged.
        for value in 0..16u64 {
            let start = index_for(&layout, 0, false, false, value);
            assert_eq!(run_on_basis(&layout, &circuit, start), start);
        }
    }

    #[test]
    fn deposition_d3_sequence() {
        let layout = mk_layout(1, 3, GuardMode::Verbatim);
        let circuit = pheromone_deposition_fragment(&layout);
        let mut value = 0u64;
        let mut seen = vec![0u64];
        for _ in 0..3 {
            let start = index_for(&layout, 0, true, false, value);
            let end = run_on_basis(&layout, &circuit, start);
            value = layout.box_value_of_index(end);
            seen.push(value);
        }
        assert_eq!(seen, vec![0, 4, 2, 7]);
    }

    #[test]
    fn evaporation_reverses_deposition_steps() {
        let layout = mk_layout(1, 4, GuardMode::Verbatim);
        let circuit = pheromone_evaporation_fragment(&layout);
        for (from, to) in [(8u64, 0u64), (14, 4)] {
            let start = index_for(&layout, 0, false, true, from);
            let end = run_on_basis(&layout, &circuit, start);
            assert_eq!(end, index_for(&layout, 0, false, true, to));
        }
        for value in 0..16u64 {
            let start = index_for(&layout, 0, false, false, value);
            assert_eq!(run_on_basis(&layout, &circuit, start), start);
        }
    }

    fn update_box(
        layout: &RegisterLayout,
        guard: GuardMode,
        include_evaporation: bool,
        selected: bool,
        box_value: u64,
    ) -> u64 {
        let circuit = update_pheromone_fragment(layout, guard, include_evaporation);
        let start = index_for(layout, 0, selected, !selected, box_value);
        let end = run_on_basis(layout, &circuit, start);
        layout.box_value_of_index(end)
    }

    #[test]
    fn update_selected_empty_box_deposits() {
        for guard in [GuardMode::Verbatim, GuardMode::Corrected] {
            let layout = mk_layout(1, 4, guard);
            assert_eq!(update_box(&layout, guard, true, true, 0), 8, "{guard:?}");
            // Ancillas unchanged by guards on this branch.
            let circuit = update_pheromone_fragment(&layout, guard, true);
            let start = index_for(&layout, 0, true, false, 0);
            let end = run_on_basis(&layout, &circuit, start);
            assert_eq!(end, index_for(&layout, 0, true, false, 8));
        }
    }

    #[test]
    fn update_unselected_empty_box_is_guarded() {
        for guard in [GuardMode::Verbatim, GuardMode::Corrected] {
            let layout = mk_layout(1, 4, guard);
            assert_eq!(update_box(&layout, guard, true, false, 0), 0, "{guard:?}");
        }
    }

    #[test]
    fn update_selected_full_box_never_deposits() {
        // Corrected mode: a full box is absorbing whether or not the
        // evaporation half runs.
        let layout = mk_layout(1, 4, GuardMode::Corrected);
        assert_eq!(
            update_box(&layout, GuardMode::Corrected, true, true, 15),
            15
        );
        assert_eq!(
            update_box(&layout, GuardMode::Corrected, false, true, 15),
            15
        );
        // Verbatim mode blocks the deposit too; with the evaporation half
        // omitted the box stays put.
        let layout = mk_layout(1, 4, GuardMode::Verbatim);
        assert_eq!(
            update_box(&layout, GuardMode::Verbatim, false, true, 15),
            15
        );
        // With evaporation included, the verbatim sequence's post-deposition
        // full check raises the evaporate flag and regresses the box.
        assert_eq!(update_box(&layout, GuardMode::Verbatim, true, true, 15), 5);
    }

    #[test]
    fn update_unselected_full_box() {
        // Corrected: absorbing.
        let layout = mk_layout(1, 4, GuardMode::Corrected);
        assert_eq!(
            update_box(&layout, GuardMode::Corrected, true, false, 15),
            15
        );
        // Verbatim: the full check raises the deposit flag on the unselected
        // branch and the cascade wraps the box to zero.
        let layout = mk_layout(1, 4, GuardMode::Verbatim);
        assert_eq!(update_box(&layout, GuardMode::Verbatim, true, false, 15), 0);
    }

    #[test]
    fn update_one_step_from_full_anomaly() {
        // d=2, box at value 1 (one deposit short of full). The verbatim
        // sequence deposits to 3, then its full check raises the evaporate
        // flag and the evaporation undoes the deposit. Corrected ends full.
        let verbatim = mk_layout(1, 2, GuardMode::Verbatim);
        assert_eq!(update_box(&verbatim, GuardMode::Verbatim, true, true, 1), 1);
        let corrected = mk_layout(1, 2, GuardMode::Corrected);
        assert_eq!(
            update_box(&corrected, GuardMode::Corrected, true, true, 1),
            3
        );
    }

    #[test]
    fn update_unselected_middle_box_evaporates() {
        for guard in [GuardMode::Verbatim, GuardMode::Corrected] {
            let layout = mk_layout(1, 4, guard);
            assert_eq!(update_box(&layout, guard, true, false, 8), 0, "{guard:?}");
            assert_eq!(update_box(&layout, guard, true, false, 14), 4, "{guard:?}");
            // Evaporation half omitted: untouched.
            assert_eq!(update_box(&layout, guard, false, false, 8), 8, "{guard:?}");
        }
    }

    #[test]
    fn corrected_guard_ancilla_is_clean_except_just_filled() {
        let layout = mk_layout(1, 2, GuardMode::Corrected);
        let guard_bit = 1usize << layout.guard_ancilla().unwrap();
        let circuit = update_pheromone_fragment(&layout, GuardMode::Corrected, true);
        // Ordinary branch: ancilla returns to zero.
        let end = run_on_basis(&layout, &circuit, index_for(&layout, 0, false, true, 2));
        assert_eq!(end & guard_bit, 0);
        // Just-filled branch: ancilla left raised for the reset to clear.
        let end = run_on_basis(&layout, &circuit, index_for(&layout, 0, true, false, 1));
        assert_ne!(end & guard_bit, 0);
    }
}
