use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use proptest::prelude::*;

use qess_core::equilibrium::{
    bracket_differences, mw_pd_symmetric_ne, ne_payoff_differences, symmetric_ess_check,
    verify_nash, DEFAULT_TOL,
};
use qess_core::grid::uniform_grid;
use qess_core::invasion::{
    fitness, invasion_barrier, replicator_states, ContestTable, PopulationState,
};
use qess_core::mw::{mw_final_density, pd_symmetric_payoff};
use qess_core::quantum::{entangler, measure_probabilities, tensor, unitarity_defect2, State4};
use qess_core::{
    EisertGame, EntangledInitialState, MwGame, Pairing, PayoffBimatrix, QuantumStrategy,
    TacticProfile,
};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        ..ProptestConfig::default()
    }
}

fn payoff_entry() -> impl Strategy<Value = f64> {
    -10.0..10.0f64
}

fn bimatrix() -> impl Strategy<Value = PayoffBimatrix> {
    proptest::array::uniform8(payoff_entry()).prop_map(|e| {
        PayoffBimatrix::new([(e[0], e[1]), (e[2], e[3]), (e[4], e[5]), (e[6], e[7])]).unwrap()
    })
}

fn initial_state(pairing: Pairing) -> impl Strategy<Value = EntangledInitialState> {
    (0.0..=FRAC_PI_2, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(move |(chi, pa, pb)| {
        let a = Complex64::from_polar(chi.cos(), pa);
        let b = Complex64::from_polar(chi.sin(), pb);
        EntangledInitialState::new(a, b, pairing).unwrap()
    })
}

fn tactics() -> impl Strategy<Value = TacticProfile> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(p, q)| TacticProfile::new(p, q).unwrap())
}

fn strategy() -> impl Strategy<Value = QuantumStrategy> {
    (0.0..=PI, 0.0..=FRAC_PI_2).prop_map(|(t, p)| QuantumStrategy::two_parameter(t, p).unwrap())
}

fn table() -> impl Strategy<Value = ContestTable> {
    proptest::array::uniform4(payoff_entry())
        .prop_map(|e| ContestTable::new(e[0], e[1], e[2], e[3]).unwrap())
}

proptest! {
    #![proptest_config(config(1000))]

    #[test]
    fn bracket_form_matches_direct_differences(
        m in bimatrix(),
        init in initial_state(Pairing::Aligned),
        star in tactics(),
        dev in tactics(),
    ) {
        let direct = ne_payoff_differences(&m, &init, &star, &dev).unwrap();
        let bracket = bracket_differences(&m, init.a2(), init.b2(), &star, &dev);
        prop_assert!((direct.0 - bracket.0).abs() <= 1e-12, "{direct:?} vs {bracket:?}");
        prop_assert!((direct.1 - bracket.1).abs() <= 1e-12, "{direct:?} vs {bracket:?}");
    }

    #[test]
    fn invasion_barrier_agrees_with_dense_sweep(t in table()) {
        let barrier = invasion_barrier(&t);
        prop_assert!((0.0..=1.0).contains(&barrier));
        let mut eps = 1e-4;
        while eps < barrier - 1e-4 {
            let lhs = (1.0 - eps) * t.p_aa + eps * t.p_ab;
            let rhs = (1.0 - eps) * t.p_ba + eps * t.p_bb;
            prop_assert!(lhs > rhs, "violated at eps = {eps} below barrier {barrier}");
            eps += 1e-4;
        }
    }

    #[test]
    fn replicator_conserves_frequency(t in table(), share in 0.001..0.999f64) {
        for s in replicator_states(&t, share, 200).unwrap() {
            prop_assert!((s.incumbent + s.mutant - 1.0).abs() <= 1e-12);
            prop_assert!(s.mutant >= 0.0 && s.incumbent >= 0.0);
        }
    }
}

proptest! {
    #![proptest_config(config(256))]

    #[test]
    fn strategy_unitaries_are_unitary(s in strategy()) {
        prop_assert!(unitarity_defect2(s.unitary().as_matrix()) <= 1e-12);
    }

    #[test]
    fn entangled_eisert_operators_preserve_norm(
        gamma in 0.0..=FRAC_PI_2,
        alice in strategy(),
        bob in strategy(),
    ) {
        let j = entangler(gamma).unwrap();
        let local = tensor(alice.unitary().as_matrix(), bob.unitary().as_matrix()).unwrap();
        prop_assert!(j.unitarity_defect() <= 1e-12);
        prop_assert!(local.unitarity_defect() <= 1e-12);
        let psi = State4::basis(0).evolve(&j).unwrap().evolve(&local).unwrap();
        prop_assert!((psi.norm() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn eisert_probabilities_are_conserved(
        gamma in 0.0..=FRAC_PI_2,
        alice in strategy(),
        bob in strategy(),
    ) {
        let game = EisertGame::new(PayoffBimatrix::prisoners_dilemma(), gamma).unwrap();
        let dens = game.outcome_probabilities(&alice, &bob).unwrap();
        let amps = game.outcome_probabilities_by_amplitudes(&alice, &bob).unwrap();
        prop_assert!((dens.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
        prop_assert!(dens.iter().all(|&p| p >= 0.0));
        for (x, y) in dens.iter().zip(amps) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn mw_probabilities_are_conserved(
        init in initial_state(Pairing::Crossed),
        t in tactics(),
    ) {
        let rho = mw_final_density(&init, &t).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() <= 1e-12);
        let probs = measure_probabilities(&rho, &State4::computational_basis()).unwrap();
        prop_assert!((probs.iter().sum::<f64>() - 1.0).abs() <= 1e-9);
    }

    #[test]
    fn fitness_is_linear_in_frequencies(t in table(), x in 0.0..=1.0f64, y in 0.0..=1.0f64, w in 0.0..=1.0f64) {
        let px = PopulationState::with_mutant_share(x).unwrap();
        let py = PopulationState::with_mutant_share(y).unwrap();
        let mix = PopulationState::new(
            w * px.incumbent + (1.0 - w) * py.incumbent,
            w * px.mutant + (1.0 - w) * py.mutant,
        ).unwrap();
        let (fx, fy, fm) = (fitness(&t, &px), fitness(&t, &py), fitness(&t, &mix));
        prop_assert!((fm.0 - (w * fx.0 + (1.0 - w) * fy.0)).abs() <= 1e-12);
        prop_assert!((fm.1 - (w * fx.1 + (1.0 - w) * fy.1)).abs() <= 1e-12);
    }

    #[test]
    fn ess_implies_nash_for_tactic_games(m in bimatrix(), b2 in 0.0..=1.0f64, star in tactics()) {
        let game = MwGame::new(m, EntangledInitialState::from_b2(b2, Pairing::Aligned).unwrap()).unwrap();
        let r = verify_nash(&game, star, 101, DEFAULT_TOL).unwrap();
        prop_assert!(!r.is_ess || r.is_nash);
        prop_assert!(r.is_ess == r.is_strict);
        if r.witnesses.iter().any(|w| w.difference < -DEFAULT_TOL) {
            prop_assert!(!r.is_nash);
        }
    }

    #[test]
    fn crossed_game_is_aligned_game_with_mirrored_column(
        m in bimatrix(),
        b2 in 0.0..=1.0f64,
        t in tactics(),
    ) {
        let crossed = MwGame::new(m, EntangledInitialState::from_b2(b2, Pairing::Crossed).unwrap()).unwrap();
        let aligned = MwGame::new(m, EntangledInitialState::from_b2(b2, Pairing::Aligned).unwrap()).unwrap();
        let x = crossed.payoffs(t.p, t.q);
        let y = aligned.payoffs(t.p, 1.0 - t.q);
        prop_assert!((x.0 - y.0).abs() <= 1e-12 && (x.1 - y.1).abs() <= 1e-12);
    }
}

#[test]
fn analytic_pd_equilibria_survive_fine_grid() {
    let pd = PayoffBimatrix::prisoners_dilemma();
    let opponents = uniform_grid(0.0, 1.0, 1001);
    for b2 in uniform_grid(0.0, 1.0, 31) {
        let game = MwGame::new(
            pd,
            EntangledInitialState::from_b2(b2, Pairing::Aligned).unwrap(),
        )
        .unwrap();
        for member in mw_pd_symmetric_ne(b2).unwrap() {
            let r = verify_nash(&game, member.profile, 1001, DEFAULT_TOL).unwrap();
            assert!(r.is_nash, "b2 = {b2}, {:?}", member.profile);
            let ess = symmetric_ess_check(
                |x: &f64, y: &f64| pd_symmetric_payoff(*x, *y, b2),
                &member.profile.p,
                &opponents,
                |x, y| (x - y).abs() <= DEFAULT_TOL,
                DEFAULT_TOL,
            )
            .unwrap();
            assert!(ess.is_nash, "b2 = {b2}");
        }
    }
}
