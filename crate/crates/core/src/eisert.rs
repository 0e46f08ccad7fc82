//! Unitary-strategy quantization of a 2×2 game.
//!
//! Both qubits start in `|CC⟩`, pass through the entangler `J(γ)`, receive
//! the players' local unitaries and are measured in the basis
//! `|ψ_xy⟩ = J|xy⟩`. Payoffs are expectations of the bimatrix entries under
//! the resulting outcome distribution.

use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

use num_complex::Complex64;
// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::bimatrix::PayoffBimatrix;
use crate::error::{check_range, Result};
use crate::grid::uniform_grid;
use crate::quantum::{
    entangler, measure_probabilities, sin_cos_reduced, tensor, Operator4, State4, Unitary2,
    LINALG_TOL,
};

/// Maximal entanglement, the default for every quantum game here.
pub const MAX_ENTANGLEMENT: f64 = FRAC_PI_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StrategyKind {
    /// `U(θ)`, a real rotation.
    OneParameter,
    /// `U(θ, φ)` with phase `e^{±iφ}` on the diagonal.
    TwoParameter,
}

/// A unitary strategy `U(θ)` or `U(θ, φ)` with `θ ∈ [0, π]`, `φ ∈ [0, π/2]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuantumStrategy {
    kind: StrategyKind,
    theta: f64,
    phi: f64,
}

impl QuantumStrategy {
    pub fn one_parameter(theta: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, PI, "[0, pi]")?;
        Ok(Self {
            kind: StrategyKind::OneParameter,
            theta,
            phi: 0.0,
        })
    }

    pub fn two_parameter(theta: f64, phi: f64) -> Result<Self> {
        check_range("theta", theta, 0.0, PI, "[0, pi]")?;
        check_range("phi", phi, 0.0, FRAC_PI_2, "[0, pi/2]")?;
        Ok(Self {
            kind: StrategyKind::TwoParameter,
            theta,
            phi,
        })
    }

    /// C = U(0, 0)
    pub fn cooperate() -> Self {
        Self {
            kind: StrategyKind::TwoParameter,
            theta: 0.0,
            phi: 0.0,
        }
    }

    /// D = U(π, 0)
    pub fn defect() -> Self {
        Self {
            kind: StrategyKind::TwoParameter,
            theta: PI,
            phi: 0.0,
        }
    }

    /// Q = U(0, π/2)
    pub fn quantum() -> Self {
        Self {
            kind: StrategyKind::TwoParameter,
            theta: 0.0,
            phi: FRAC_PI_2,
        }
    }

    pub fn kind(&self) -> StrategyKind {
        self.kind
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Zero for one-parameter strategies.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn unitary(&self) -> Unitary2 {
        strategy_unitary(self)
    }

    /// Whether two strategies realize the same operator (e.g. every
    /// `U(π, φ)` equals D).
    pub fn equivalent(&self, other: &Self) -> bool {
        self.unitary().distance(&other.unitary()) <= LINALG_TOL
    }
}

impl fmt::Display for QuantumStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            StrategyKind::OneParameter => write!(f, "U({:.6})", self.theta),
            StrategyKind::TwoParameter => write!(f, "U({:.6}, {:.6})", self.theta, self.phi),
        }
    }
}

/// ```text
/// U(θ, φ) = [ e^{iφ} cos(θ/2)    sin(θ/2)        ]
///           [ −sin(θ/2)          e^{−iφ} cos(θ/2) ]
/// ```
/// `U(θ)` is the `φ = 0` member.
pub fn strategy_unitary(s: &QuantumStrategy) -> Unitary2 {
    let (sin_h, cos_h) = sin_cos_reduced(s.theta / 2.0);
    let (sin_p, cos_p) = sin_cos_reduced(s.phi);
    let phase = Complex64::new(cos_p, sin_p);
    let m = [
        [phase * cos_h, Complex64::new(sin_h, 0.0)],
        [Complex64::new(-sin_h, 0.0), phase.conj() * cos_h],
    ];
    Unitary2::new(m).expect("U(theta, phi) is unitary for every real theta, phi")
}

/// A bimatrix game played through the entangler at a fixed `γ`.
#[derive(Debug, Clone, Copy)]
pub struct EisertGame {
    matrix: PayoffBimatrix,
    gamma: f64,
    gate: Operator4,
    /// `J|xy⟩` for the four outcomes.
    basis: [State4; 4],
}

impl EisertGame {
    pub fn new(matrix: PayoffBimatrix, gamma: f64) -> Result<Self> {
        let gate = entangler(gamma)?;
        let mut basis = State4::computational_basis();
        for b in basis.iter_mut() {
            *b = b.evolve(&gate)?;
        }
        Ok(Self {
            matrix,
            gamma,
            gate,
            basis,
        })
    }

    /// Maximally entangled version of `matrix`.
    pub fn maximal(matrix: PayoffBimatrix) -> Self {
        Self::new(matrix, MAX_ENTANGLEMENT).expect("pi/2 is a valid entanglement")
    }

    pub fn matrix(&self) -> &PayoffBimatrix {
        &self.matrix
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    /// Outcome distribution through the density-matrix route:
    /// `σ = (U_A⊗U_B) ρ (U_A⊗U_B)†`, `p_xy = tr[|ψ_xy⟩⟨ψ_xy| σ]`.
    pub fn outcome_probabilities(
        &self,
        alice: &QuantumStrategy,
        bob: &QuantumStrategy,
    ) -> Result<[f64; 4]> {
        let rho = self.basis[0].density();
        let local = tensor(alice.unitary().as_matrix(), bob.unitary().as_matrix())?;
        let sigma = rho.conjugate(&local);
        measure_probabilities(&sigma, &self.basis)
    }

    /// Outcome distribution through amplitudes:
    /// `p_xy = |⟨xy| J†(U_A⊗U_B)J |CC⟩|²`.
    pub fn outcome_probabilities_by_amplitudes(
        &self,
        alice: &QuantumStrategy,
        bob: &QuantumStrategy,
    ) -> Result<[f64; 4]> {
        let local = tensor(alice.unitary().as_matrix(), bob.unitary().as_matrix())?;
        let circuit = self.gate.adjoint().compose(&local).compose(&self.gate);
        let out = circuit.apply(State4::basis(0).amplitudes());
        Ok(out.map(|z| z.norm_sqr()))
    }

    /// `(P_A, P_B)` for Alice playing `alice` and Bob playing `bob`.
    pub fn payoffs(&self, alice: &QuantumStrategy, bob: &QuantumStrategy) -> Result<(f64, f64)> {
        Ok(self
            .matrix
            .expected(&self.outcome_probabilities(alice, bob)?))
    }

    pub fn payoffs_by_amplitudes(
        &self,
        alice: &QuantumStrategy,
        bob: &QuantumStrategy,
    ) -> Result<(f64, f64)> {
        Ok(self
            .matrix
            .expected(&self.outcome_probabilities_by_amplitudes(alice, bob)?))
    }

    /// Row payoff `P(s, t)` of a symmetric game: the payoff to an `s`
    /// player facing a `t` player.
    pub fn symmetric_payoff(&self, s: &QuantumStrategy, t: &QuantumStrategy) -> Result<f64> {
        Ok(self.payoffs(s, t)?.0)
    }
}

/// Payoff pair for one round of the quantized game.
pub fn eisert_payoffs(
    matrix: &PayoffBimatrix,
    alice: &QuantumStrategy,
    bob: &QuantumStrategy,
    gamma: f64,
) -> Result<(f64, f64)> {
    EisertGame::new(*matrix, gamma)?.payoffs(alice, bob)
}

/// Reference closed forms for one-parameter mutants against D in the
/// maximally entangled Prisoner's Dilemma.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseAPayoffs {
    pub mutant_vs_defect: f64,
    /// Reference form: `2cos²(θ/2) + 5cos²(θ/2)sin²(θ/2) + 1`. This does not
    /// match the pipeline, which gives `3cos⁴ + 5cos²sin² + sin⁴`.
    pub mutant_vs_mutant: f64,
    pub defect_vs_mutant: f64,
    pub defect_vs_defect: f64,
}

pub fn closed_form_case_a(theta: f64) -> Result<CaseAPayoffs> {
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = (theta / 2.0).sin().powi(2);
    Ok(CaseAPayoffs {
        mutant_vs_defect: s2,
        mutant_vs_mutant: 2.0 * c2 + 5.0 * c2 * s2 + 1.0,
        defect_vs_mutant: 5.0 * c2 + s2,
        defect_vs_defect: 1.0,
    })
}

/// Reference closed forms for two-parameter mutants `U` against D.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseBPayoffs {
    pub defect_vs_defect: f64,
    pub defect_vs_mutant: f64,
    pub mutant_vs_defect: f64,
    pub mutant_vs_mutant: f64,
}

pub fn closed_form_case_b(theta: f64, phi: f64) -> Result<CaseBPayoffs> {
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    check_range("phi", phi, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = (theta / 2.0).sin().powi(2);
    let (sp, cp) = (phi.sin(), phi.cos());
    // |x|² read literally as the squared modulus of a real number.
    let mutant_vs_mutant = 3.0 * ((2.0 * phi).cos() * c2).abs().powi(2)
        + 5.0 * c2 * s2 * (sp - cp).abs().powi(2)
        + ((2.0 * phi).sin() * c2 + s2).abs().powi(2);
    Ok(CaseBPayoffs {
        defect_vs_defect: 1.0,
        defect_vs_mutant: 5.0 * cp * cp * c2 + s2,
        mutant_vs_defect: 5.0 * sp * sp * c2 + s2,
        mutant_vs_mutant,
    })
}

/// Reference closed forms for two-parameter mutants `U` against Q.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CaseCPayoffs {
    pub q_vs_q: f64,
    pub mutant_vs_q: f64,
    pub q_vs_mutant: f64,
}

pub fn closed_form_case_c(theta: f64, phi: f64) -> Result<CaseCPayoffs> {
    check_range("theta", theta, 0.0, PI, "[0, pi]")?;
    check_range("phi", phi, 0.0, FRAC_PI_2, "[0, pi/2]")?;
    let c2 = (theta / 2.0).cos().powi(2);
    let s2 = (theta / 2.0).sin().powi(2);
    let common = (3.0 - 2.0 * phi.cos().powi(2)) * c2;
    Ok(CaseCPayoffs {
        q_vs_q: 3.0,
        mutant_vs_q: common,
        q_vs_mutant: common + 5.0 * s2,
    })
}

/// One closed-form quantity evaluated against the pipeline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleSample {
    /// `'A'`, `'B'` or `'C'`.
    pub case: char,
    /// Payoff label such as `"P(U,D)"`.
    pub quantity: &'static str,
    pub theta: f64,
    pub phi: f64,
    pub pipeline: f64,
    pub closed_form: f64,
}

impl OracleSample {
    pub fn abs_diff(&self) -> f64 {
        (self.pipeline - self.closed_form).abs()
    }
}

/// Every closed-form payoff on a `theta_steps × phi_steps` grid next to the
/// maximally entangled Prisoner's Dilemma pipeline.
///
/// Case A quantities are independent of `φ` and are sampled once per `θ`.
pub fn closed_form_samples(theta_steps: usize, phi_steps: usize) -> Result<Vec<OracleSample>> {
    let game = EisertGame::maximal(PayoffBimatrix::prisoners_dilemma());
    let d = QuantumStrategy::defect();
    let q = QuantumStrategy::quantum();
    let d1 = QuantumStrategy::one_parameter(PI)?;
    let mut out = Vec::new();
    let p = |s: &QuantumStrategy, t: &QuantumStrategy| game.symmetric_payoff(s, t);

    for &theta in &uniform_grid(0.0, PI, theta_steps) {
        let u = QuantumStrategy::one_parameter(theta)?;
        let a = closed_form_case_a(theta)?;
        for (quantity, pipeline, closed_form) in [
            ("P(theta,D)", p(&u, &d1)?, a.mutant_vs_defect),
            ("P(theta,theta)", p(&u, &u)?, a.mutant_vs_mutant),
            ("P(D,theta)", p(&d1, &u)?, a.defect_vs_mutant),
            ("P(D,D)", p(&d1, &d1)?, a.defect_vs_defect),
        ] {
            out.push(OracleSample {
                case: 'A',
                quantity,
                theta,
                phi: 0.0,
                pipeline,
                closed_form,
            });
        }
        for &phi in &uniform_grid(0.0, FRAC_PI_2, phi_steps) {
            let u = QuantumStrategy::two_parameter(theta, phi)?;
            let b = closed_form_case_b(theta, phi)?;
            let c = closed_form_case_c(theta, phi)?;
            for (case, quantity, pipeline, closed_form) in [
                ('B', "P(D,D)", p(&d, &d)?, b.defect_vs_defect),
                ('B', "P(D,U)", p(&d, &u)?, b.defect_vs_mutant),
                ('B', "P(U,D)", p(&u, &d)?, b.mutant_vs_defect),
                ('B', "P(U,U)", p(&u, &u)?, b.mutant_vs_mutant),
                ('C', "P(Q,Q)", p(&q, &q)?, c.q_vs_q),
                ('C', "P(U,Q)", p(&u, &q)?, c.mutant_vs_q),
                ('C', "P(Q,U)", p(&q, &u)?, c.q_vs_mutant),
            ] {
                out.push(OracleSample {
                    case,
                    quantity,
                    theta,
                    phi,
                    pipeline,
                    closed_form,
                });
            }
        }
    }
    Ok(out)
}
