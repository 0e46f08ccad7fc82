//! Probabilistic-tactic quantization of a 2×2 game.
//!
//! The players share an entangled initial state and each independently
//! applies either the identity (probability `p` for the row player, `q` for
//! the column player) or the spin flip `σx` to their own qubit. The final
//! state is measured in the computational basis.

use num_complex::Complex64;
// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::bimatrix::PayoffBimatrix;
use crate::error::{check_probability, Error, Result};
use crate::quantum::{
    kron, measure_probabilities, Amplitude, DensityMatrix4, State4, Unitary2, LINALG_TOL,
};

/// How the two amplitudes of the initial state are attached to basis kets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `a|OO⟩ + b|TT⟩` (also written `a|CC⟩ + b|DD⟩`).
    Aligned,
    /// `a|OT⟩ + b|TO⟩`.
    Crossed,
}

impl Pairing {
    /// Basis indices carrying `a` and `b`.
    fn slots(self) -> (usize, usize) {
        match self {
            Pairing::Aligned => (0, 3),
            Pairing::Crossed => (1, 2),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntangledInitialState {
    a: Amplitude,
    b: Amplitude,
    pairing: Pairing,
}

impl EntangledInitialState {
    pub fn new(a: Amplitude, b: Amplitude, pairing: Pairing) -> Result<Self> {
        let norm = a.norm_sqr() + b.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > LINALG_TOL {
            return Err(Error::Validation {
                what: "initial state",
                reason: alloc::format!("|a|^2 + |b|^2 = {norm}"),
            });
        }
        Ok(Self { a, b, pairing })
    }

    /// Real amplitudes `a = √(1 − b2)`, `b = √b2`.
    pub fn from_b2(b2: f64, pairing: Pairing) -> Result<Self> {
        check_probability("b2", b2)?;
        Ok(Self {
            a: Complex64::new((1.0 - b2).sqrt(), 0.0),
            b: Complex64::new(b2.sqrt(), 0.0),
            pairing,
        })
    }

    /// The product state `|OO⟩` (or `|OT⟩` when crossed).
    pub fn unentangled(pairing: Pairing) -> Self {
        Self::from_b2(0.0, pairing).expect("0 is a valid weight")
    }

    pub fn a(&self) -> Amplitude {
        self.a
    }

    pub fn b(&self) -> Amplitude {
        self.b
    }

    pub fn pairing(&self) -> Pairing {
        self.pairing
    }

    /// `|a|²`
    pub fn a2(&self) -> f64 {
        self.a.norm_sqr()
    }

    /// `|b|²`
    pub fn b2(&self) -> f64 {
        self.b.norm_sqr()
    }

    pub fn state(&self) -> State4 {
        let (ia, ib) = self.pairing.slots();
        let mut v = [Complex64::new(0.0, 0.0); 4];
        v[ia] = self.a;
        v[ib] = self.b;
        State4::new(v).expect("normalization checked on construction")
    }
}

/// Probabilities with which each player applies the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TacticProfile {
    pub p: f64,
    pub q: f64,
}

impl TacticProfile {
    pub fn new(p: f64, q: f64) -> Result<Self> {
        Ok(Self {
            p: check_probability("p", p)?,
            q: check_probability("q", q)?,
        })
    }

    pub fn with_p(self, p: f64) -> Result<Self> {
        Self::new(p, self.q)
    }

    pub fn with_q(self, q: f64) -> Result<Self> {
        Self::new(self.p, q)
    }
}

impl core::fmt::Display for TacticProfile {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        write!(f, "({:.6}, {:.6})", self.p, self.q)
    }
}

fn tactic_weights(x: f64) -> [(f64, Unitary2); 2] {
    [(x, Unitary2::identity()), (1.0 - x, Unitary2::pauli_x())]
}

/// `ρ_fin = Σ w_i(p) w_j(q) (T_i⊗T_j) ρ_in (T_i⊗T_j)†` over `T ∈ {I, σx}`.
pub fn mw_final_density(init: &EntangledInitialState, t: &TacticProfile) -> Result<DensityMatrix4> {
    let rho = init.state().density();
    let mut terms = [(0.0, rho); 4];
    let mut k = 0;
    for (wa, ta) in tactic_weights(t.p) {
        for (wb, tb) in tactic_weights(t.q) {
            terms[k] = (
                wa * wb,
                rho.conjugate(&kron(ta.as_matrix(), tb.as_matrix())),
            );
            k += 1;
        }
    }
    DensityMatrix4::mixture(terms.iter().map(|(w, r)| (*w, r)))
}

/// Payoffs from the diagonal measurement of [`mw_final_density`].
pub fn mw_payoffs(
    matrix: &PayoffBimatrix,
    init: &EntangledInitialState,
    t: &TacticProfile,
) -> Result<(f64, f64)> {
    let rho = mw_final_density(init, t)?;
    let probs = measure_probabilities(&rho, &State4::computational_basis())?;
    Ok(matrix.expected(&probs))
}

/// A bimatrix game bound to an initial state.
///
/// The final state is linear in each player's tactic weights, so payoffs
/// are `Σ w_i(p) w_j(q) P_ij` where `P_ij` comes from the full density
/// pipeline at the four pure tactic pairs. This is what equilibrium searches
/// evaluate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MwGame {
    matrix: PayoffBimatrix,
    init: EntangledInitialState,
    /// Indexed `[row tactic][column tactic]`, 0 = identity, 1 = flip.
    pure: [[(f64, f64); 2]; 2],
}

impl MwGame {
    pub fn new(matrix: PayoffBimatrix, init: EntangledInitialState) -> Result<Self> {
        let mut pure = [[(0.0, 0.0); 2]; 2];
        for (i, row) in pure.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let t = TacticProfile::new(1.0 - i as f64, 1.0 - j as f64)?;
                *cell = mw_payoffs(&matrix, &init, &t)?;
            }
        }
        Ok(Self { matrix, init, pure })
    }

    pub fn matrix(&self) -> &PayoffBimatrix {
        &self.matrix
    }

    pub fn initial_state(&self) -> &EntangledInitialState {
        &self.init
    }

    /// `(P_A(p, q), P_B(p, q))`; arguments are not range-checked.
    pub fn payoffs(&self, p: f64, q: f64) -> (f64, f64) {
        let wp = [p, 1.0 - p];
        let wq = [q, 1.0 - q];
        let mut out = (0.0, 0.0);
        for i in 0..2 {
            for j in 0..2 {
                let w = wp[i] * wq[j];
                out.0 += w * self.pure[i][j].0;
                out.1 += w * self.pure[i][j].1;
            }
        }
        out
    }

    pub fn payoffs_at(&self, t: &TacticProfile) -> (f64, f64) {
        self.payoffs(t.p, t.q)
    }

    /// Coefficients `(c0, c_p, c_q, c_pq)` of `P = c0 + c_p·p + c_q·q + c_pq·pq`
    /// for the row (`.0`) and column (`.1`) players.
    pub fn bilinear_coefficients(&self) -> ([f64; 4], [f64; 4]) {
        let f = |sel: fn((f64, f64)) -> f64| {
            let p11 = sel(self.pure[0][0]);
            let p10 = sel(self.pure[0][1]);
            let p01 = sel(self.pure[1][0]);
            let p00 = sel(self.pure[1][1]);
            [p00, p10 - p00, p01 - p00, p11 - p10 - p01 + p00]
        };
        (f(|x| x.0), f(|x| x.1))
    }
}

/// Reference closed forms, kept as oracles for the density pipeline.
pub mod closed_form {
    /// General aligned-state payoffs for the bimatrix
    /// `(α₁,α₂) (β₁,β₂) / (γ₁,γ₂) (σ₁,σ₂)`.
    pub fn aligned(cells: &[(f64, f64); 4], a2: f64, b2: f64, p: f64, q: f64) -> (f64, f64) {
        let both_id = p * q * a2 + (1.0 - p) * (1.0 - q) * b2;
        let first_second = p * (1.0 - q) * a2 + q * (1.0 - p) * b2;
        let second_first = p * (1.0 - q) * b2 + q * (1.0 - p) * a2;
        let both_flip = p * q * b2 + (1.0 - p) * (1.0 - q) * a2;
        let [(a1, a2_), (b1, b2_), (g1, g2), (s1, s2)] = *cells;
        (
            a1 * both_id + b1 * first_second + g1 * second_first + s1 * both_flip,
            a2_ * both_id + b2_ * first_second + g2 * second_first + s2 * both_flip,
        )
    }

    /// Prisoner's Dilemma special case.
    pub fn prisoners_dilemma(a2: f64, b2: f64, p: f64, q: f64) -> (f64, f64) {
        let pa = 3.0 * (p * q * a2 + (1.0 - p) * (1.0 - q) * b2)
            + 5.0 * (p * (1.0 - q) * b2 + q * (1.0 - p) * a2)
            + (p * q * b2 + (1.0 - p) * (1.0 - q) * a2);
        let pb = 3.0 * (p * q * a2 + (1.0 - p) * (1.0 - q) * b2)
            + 5.0 * (p * (1.0 - q) * a2 + q * (1.0 - p) * b2)
            + (p * q * b2 + (1.0 - p) * (1.0 - q) * a2);
        (pa, pb)
    }

    /// Battle of the Sexes on the crossed state, in reference form.
    ///
    /// The row payoff matches the pipeline. The reference column payoff
    /// coincides with the row payoff and does not; the pipeline value is
    /// `p(β|a|² + α|b|² − γ) + q(α|a|² + β|b|² − γ) − pq(α + β − 2γ) + γ`.
    pub fn battle_of_sexes_crossed(
        alpha: f64,
        beta: f64,
        gamma: f64,
        a2: f64,
        b2: f64,
        p: f64,
        q: f64,
    ) -> (f64, f64) {
        let k = alpha + beta - 2.0 * gamma;
        let pa = p * (-q * k + alpha * a2 + beta * b2 - gamma)
            + q * (alpha * b2 + beta * a2 - gamma)
            + gamma;
        let pb = q * (-p * k + beta * a2 + alpha * b2 - gamma)
            + p * (beta * b2 + alpha * a2 - gamma)
            + gamma;
        (pa, pb)
    }
}

/// Symmetric Prisoner's Dilemma payoff to a player using the identity with
/// probability `t_self` against an opponent using it with probability
/// `t_opp`, for initial weight `|b|² = b2`.
pub fn pd_symmetric_payoff(t_self: f64, t_opp: f64, b2: f64) -> Result<f64> {
    let p = check_probability("t_self", t_self)?;
    let q = check_probability("t_opp", t_opp)?;
    let b2 = check_probability("b2", b2)?;
    let a2 = 1.0 - b2;
    Ok(3.0 * (p * q * a2 + (1.0 - p) * (1.0 - q) * b2)
        + 5.0 * (p * (1.0 - q) * b2 + q * (1.0 - p) * a2)
        + (p * q * b2 + (1.0 - p) * (1.0 - q) * a2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::uniform_grid;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn identity_tactics_keep_the_initial_state() {
        for pairing in [Pairing::Aligned, Pairing::Crossed] {
            let init = EntangledInitialState::from_b2(0.3, pairing).unwrap();
            let rho = mw_final_density(&init, &TacticProfile::new(1.0, 1.0).unwrap()).unwrap();
            let expected = init.state().density();
            for (a, b) in rho
                .as_matrix()
                .iter()
                .flatten()
                .zip(expected.as_matrix().iter().flatten())
            {
                assert!((a - b).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn double_flip_swaps_weights() {
        let init = EntangledInitialState::from_b2(0.3, Pairing::Aligned).unwrap();
        let rho = mw_final_density(&init, &TacticProfile::new(0.0, 0.0).unwrap()).unwrap();
        let d = rho.diagonal();
        assert!(close(d[0], 0.3, 1e-15) && close(d[3], 0.7, 1e-15), "{d:?}");
        assert!(close(d[1] + d[2], 0.0, 1e-15));
    }

    #[test]
    fn single_flip_moves_support_off_diagonal() {
        let init = EntangledInitialState::from_b2(0.3, Pairing::Aligned).unwrap();
        let rho = mw_final_density(&init, &TacticProfile::new(1.0, 0.0).unwrap()).unwrap();
        let d = rho.diagonal();
        assert_eq!(d[0], 0.0);
        assert_eq!(d[3], 0.0);
        assert!(close(d[1], 0.7, 1e-15) && close(d[2], 0.3, 1e-15));
    }

    #[test]
    fn prisoners_dilemma_examples() {
        let pd = PayoffBimatrix::prisoners_dilemma();
        let t = TacticProfile::new(1.0, 1.0).unwrap();
        let unent = EntangledInitialState::from_b2(0.0, Pairing::Aligned).unwrap();
        assert_eq!(mw_payoffs(&pd, &unent, &t).unwrap(), (3.0, 3.0));
        let full = EntangledInitialState::from_b2(1.0, Pairing::Aligned).unwrap();
        assert_eq!(mw_payoffs(&pd, &full, &t).unwrap(), (1.0, 1.0));
    }

    #[test]
    fn crossed_battle_of_sexes_examples() {
        let bos = PayoffBimatrix::battle_of_sexes(3.0, 2.0, 1.0).unwrap();
        for b2 in uniform_grid(0.0, 1.0, 11) {
            let init = EntangledInitialState::from_b2(b2, Pairing::Crossed).unwrap();
            let (pa, _) = mw_payoffs(&bos, &init, &TacticProfile::new(0.0, 0.0).unwrap()).unwrap();
            assert!(
                close(pa, 1.0, 1e-12),
                "double flip lands on OT/TO, paying gamma"
            );
            let (pa, _) = mw_payoffs(&bos, &init, &TacticProfile::new(0.0, 1.0).unwrap()).unwrap();
            assert!(close(pa, 2.0 + b2, 1e-12));
        }
    }

    #[test]
    fn crossed_reference_column_payoff_is_not_physical() {
        let bos = PayoffBimatrix::battle_of_sexes(3.0, 2.0, 1.0).unwrap();
        let init = EntangledInitialState::from_b2(0.3, Pairing::Crossed).unwrap();
        let t = TacticProfile::new(1.0, 0.0).unwrap();
        let (pa, pb) = mw_payoffs(&bos, &init, &t).unwrap();
        let (ca, cb) = closed_form::battle_of_sexes_crossed(3.0, 2.0, 1.0, 0.7, 0.3, 1.0, 0.0);
        assert!(close(pa, ca, 1e-12));
        // I⊗σx maps a|OT⟩+b|TO⟩ to a|OO⟩+b|TT⟩: Bob earns 2·0.7 + 3·0.3
        assert!(close(pb, 2.3, 1e-12));
        assert!(close(cb, 2.7, 1e-12));
    }

    #[test]
    fn symmetric_payoff_examples() {
        let b2 = 1.0 / 3.0;
        for q in uniform_grid(0.0, 1.0, 11) {
            let zero_q = pd_symmetric_payoff(0.0, q, b2).unwrap();
            assert!(close(zero_q, 5.0 / 3.0 * (q + 1.0), 1e-12));
            let q_q = pd_symmetric_payoff(q, q, b2).unwrap();
            assert!(close(q_q, -q * q + 5.0 / 3.0 * (q + 1.0), 1e-12));
        }
        assert_eq!(pd_symmetric_payoff(1.0, 1.0, 0.0).unwrap(), 3.0);
        assert!(pd_symmetric_payoff(1.2, 0.0, 0.0).is_err());
        assert!(pd_symmetric_payoff(0.0, 0.0, -0.1).is_err());
    }

    #[test]
    fn initial_state_validation() {
        let c = |x| Complex64::new(x, 0.0);
        assert!(EntangledInitialState::new(c(1.0), c(1.0), Pairing::Aligned).is_err());
        let s =
            EntangledInitialState::new(c(0.6), Complex64::new(0.0, 0.8), Pairing::Crossed).unwrap();
        assert!(close(s.b2(), 0.64, 1e-15));
        assert!(EntangledInitialState::from_b2(1.5, Pairing::Aligned).is_err());
        assert!(TacticProfile::new(0.5, -0.5).is_err());
    }

    #[test]
    fn complex_amplitudes_only_matter_through_moduli() {
        let pd = PayoffBimatrix::prisoners_dilemma();
        let real = EntangledInitialState::from_b2(0.36, Pairing::Aligned).unwrap();
        let phased = EntangledInitialState::new(
            Complex64::from_polar(0.8, 0.4),
            Complex64::from_polar(0.6, -1.3),
            Pairing::Aligned,
        )
        .unwrap();
        let t = TacticProfile::new(0.3, 0.8).unwrap();
        let x = mw_payoffs(&pd, &real, &t).unwrap();
        let y = mw_payoffs(&pd, &phased, &t).unwrap();
        assert!(close(x.0, y.0, 1e-12) && close(x.1, y.1, 1e-12));
    }

    #[test]
    fn game_decomposition_matches_full_pipeline() {
        let bos = PayoffBimatrix::battle_of_sexes(3.0, 2.0, 1.0).unwrap();
        for pairing in [Pairing::Aligned, Pairing::Crossed] {
            let init = EntangledInitialState::from_b2(0.4, pairing).unwrap();
            let game = MwGame::new(bos, init).unwrap();
            for p in uniform_grid(0.0, 1.0, 6) {
                for q in uniform_grid(0.0, 1.0, 6) {
                    let t = TacticProfile::new(p, q).unwrap();
                    let full = mw_payoffs(&bos, &init, &t).unwrap();
                    let fast = game.payoffs(p, q);
                    assert!(close(full.0, fast.0, 1e-12) && close(full.1, fast.1, 1e-12));
                    let (ca, cb) = game.bilinear_coefficients();
                    let eval = |c: [f64; 4]| c[0] + c[1] * p + c[2] * q + c[3] * p * q;
                    assert!(close(eval(ca), fast.0, 1e-12) && close(eval(cb), fast.1, 1e-12));
                }
            }
        }
    }
}
