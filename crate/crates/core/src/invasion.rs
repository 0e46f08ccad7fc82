//! Two-type population contests: fitness, invasion barriers and discrete
//! replicator dynamics, plus the three Prisoner's Dilemma invasion studies.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::bimatrix::PayoffBimatrix;
use crate::eisert::{EisertGame, QuantumStrategy, StrategyKind};
use crate::equilibrium::{ess_comparisons, EssComparison, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Frequency sums must stay within this distance of one.
pub const FREQUENCY_SUM_TOL: f64 = 1e-12;
/// A mutant share below this is extinct; above `1 −` this it has fixated.
pub const EXTINCTION_THRESHOLD: f64 = 1e-6;
pub const DEFAULT_INITIAL_SHARE: f64 = 0.01;
pub const DEFAULT_STEPS: usize = 200;

/// Pairwise payoffs between an incumbent `A` and a mutant `B`;
/// `p_xy` is the payoff to `x` against `y`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContestTable {
    pub p_aa: f64,
    pub p_ab: f64,
    pub p_ba: f64,
    pub p_bb: f64,
}

impl ContestTable {
    pub fn new(p_aa: f64, p_ab: f64, p_ba: f64, p_bb: f64) -> Result<Self> {
        let t = Self {
            p_aa,
            p_ab,
            p_ba,
            p_bb,
        };
        if t.entries().iter().any(|x| !x.is_finite()) {
            return Err(Error::Validation {
                what: "contest table",
                reason: format!("non-finite entry in {t:?}"),
            });
        }
        Ok(t)
    }

    /// Table for `incumbent` against `mutant` under a symmetric payoff.
    pub fn from_payoff<S, F>(mut payoff: F, incumbent: &S, mutant: &S) -> Result<Self>
    where
        F: FnMut(&S, &S) -> Result<f64>,
    {
        Self::new(
            payoff(incumbent, incumbent)?,
            payoff(incumbent, mutant)?,
            payoff(mutant, incumbent)?,
            payoff(mutant, mutant)?,
        )
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.p_aa, self.p_ab, self.p_ba, self.p_bb]
    }

    /// `(P_AA − P_BA, P_AB − P_BB)`: the incumbent's advantage against a
    /// pure-incumbent and a pure-mutant population.
    pub fn advantages(&self) -> (f64, f64) {
        (self.p_aa - self.p_ba, self.p_ab - self.p_bb)
    }
}

/// Incumbent and mutant frequencies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PopulationState {
    pub incumbent: f64,
    pub mutant: f64,
}

impl PopulationState {
    pub fn new(incumbent: f64, mutant: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && (0.0..=1.0).contains(&x);
        if !ok(incumbent) || !ok(mutant) || (incumbent + mutant - 1.0).abs() > FREQUENCY_SUM_TOL {
            return Err(Error::Validation {
                what: "population state",
                reason: format!(
                    "frequencies ({incumbent}, {mutant}) must lie in [0, 1] and sum to 1"
                ),
            });
        }
        Ok(Self { incumbent, mutant })
    }

    pub fn with_mutant_share(mutant: f64) -> Result<Self> {
        Self::new(1.0 - mutant, mutant)
    }
}

/// `(W_A, W_B)` with `W_A = P_AA F_A + P_AB F_B` and `W_B = P_BA F_A + P_BB F_B`.
pub fn fitness(table: &ContestTable, pop: &PopulationState) -> (f64, f64) {
    (
        table.p_aa * pop.incumbent + table.p_ab * pop.mutant,
        table.p_ba * pop.incumbent + table.p_bb * pop.mutant,
    )
}

/// Supremum `ε₀` such that the incumbent strictly outscores the mutant
/// against every population with mutant share in `(0, ε₀)`.
///
/// The advantage is linear in the share, `d₀ + ε(d₁ − d₀)`, so `ε₀` is its
/// root, clipped to `[0, 1]`. A `d₀` within 1e−9 of zero is a tie decided
/// by `d₁`.
pub fn invasion_barrier(table: &ContestTable) -> f64 {
    let (d0, d1) = table.advantages();
    if d0.abs() <= DEFAULT_TOL {
        return if d1 > DEFAULT_TOL { 1.0 } else { 0.0 };
    }
    if d0 < 0.0 {
        return 0.0;
    }
    if d1 >= 0.0 {
        1.0
    } else {
        d0 / (d0 - d1)
    }
}

/// Table with every entry raised by `1 − min` when the minimum entry is
/// not positive.
fn shifted(table: &ContestTable) -> ContestTable {
    let min = table.entries().into_iter().fold(f64::INFINITY, f64::min);
    let shift = if min <= 0.0 { 1.0 - min } else { 0.0 };
    ContestTable {
        p_aa: table.p_aa + shift,
        p_ab: table.p_ab + shift,
        p_ba: table.p_ba + shift,
        p_bb: table.p_bb + shift,
    }
}

/// One discrete replicator update on the positivity-shifted table.
pub fn replicator_step(table: &ContestTable, pop: &PopulationState) -> Result<PopulationState> {
    step_shifted(&shifted(table), pop)
}

fn step_shifted(table: &ContestTable, pop: &PopulationState) -> Result<PopulationState> {
    let (wa, wb) = fitness(table, pop);
    let mean = pop.incumbent * wa + pop.mutant * wb;
    if !(mean.is_finite() && mean > 0.0) {
        return Err(Error::Numeric(format!("degenerate mean fitness {mean}")));
    }
    Ok(PopulationState {
        incumbent: pop.incumbent * wa / mean,
        mutant: pop.mutant * wb / mean,
    })
}

/// The population after each of `steps` updates, starting from mutant
/// share `initial_share ∈ (0, 1)`; `steps + 1` states in total.
pub fn replicator_states(
    table: &ContestTable,
    initial_share: f64,
    steps: usize,
) -> Result<Vec<PopulationState>> {
    if !(initial_share > 0.0 && initial_share < 1.0) {
        return Err(Error::Domain {
            name: "initial mutant share",
            value: initial_share,
            range: "(0, 1)",
        });
    }
    if steps == 0 {
        return Err(Error::Domain {
            name: "steps",
            value: 0.0,
            range: ">= 1",
        });
    }
    let table = shifted(table);
    let mut pop = PopulationState::with_mutant_share(initial_share)?;
    let mut out = Vec::with_capacity(steps + 1);
    out.push(pop);
    for _ in 0..steps {
        pop = step_shifted(&table, &pop)?;
        out.push(pop);
    }
    Ok(out)
}

/// Mutant share along [`replicator_states`].
pub fn replicator_trajectory(
    table: &ContestTable,
    initial_share: f64,
    steps: usize,
) -> Result<Vec<f64>> {
    Ok(replicator_states(table, initial_share, steps)?
        .into_iter()
        .map(|s| s.mutant)
        .collect())
}

/// The three Prisoner's Dilemma invasion scenarios at maximal entanglement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Case {
    /// One-parameter mutants against the classical ESS `D`.
    A,
    /// Two-parameter mutants against `D`.
    B,
    /// Two-parameter mutants against `Q`.
    C,
}

impl Case {
    pub fn incumbent(self) -> QuantumStrategy {
        match self {
            Case::A => QuantumStrategy::one_parameter(core::f64::consts::PI)
                .expect("pi is a valid one-parameter angle"),
            Case::B => QuantumStrategy::defect(),
            Case::C => QuantumStrategy::quantum(),
        }
    }

    pub fn mutant_kind(self) -> StrategyKind {
        match self {
            Case::A => StrategyKind::OneParameter,
            Case::B | Case::C => StrategyKind::TwoParameter,
        }
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::A => "A",
            Case::B => "B",
            Case::C => "C",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InvasionVerdict {
    Resists,
    Invaded,
}

impl InvasionVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            InvasionVerdict::Resists => "resists",
            InvasionVerdict::Invaded => "invaded",
        }
    }
}

impl fmt::Display for InvasionVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CaseStudy {
    pub case: Case,
    pub incumbent: QuantumStrategy,
    pub mutant: QuantumStrategy,
    pub table: ContestTable,
    /// Both ESS conditions for the incumbent against this mutant.
    pub stability: EssComparison<QuantumStrategy>,
    pub barrier: f64,
    /// Mutant share after each replicator step.
    pub trajectory: Vec<f64>,
    /// Decided by the ESS conditions, not by the trajectory.
    pub verdict: InvasionVerdict,
}

impl CaseStudy {
    pub fn final_share(&self) -> f64 {
        *self.trajectory.last().expect("trajectory is never empty")
    }

    pub fn mutant_extinct(&self) -> bool {
        self.final_share() < EXTINCTION_THRESHOLD
    }

    pub fn mutant_fixated(&self) -> bool {
        self.final_share() > 1.0 - EXTINCTION_THRESHOLD
    }
}

/// [`case_study_with`] from a 1 % mutant share over 200 steps.
pub fn case_study(case: Case, mutant: QuantumStrategy) -> Result<CaseStudy> {
    case_study_with(case, mutant, DEFAULT_INITIAL_SHARE, DEFAULT_STEPS)
}

/// Pits `mutant` against the case's incumbent in the maximally entangled
/// Prisoner's Dilemma.
///
/// Fails with a validation error when the mutant has the wrong kind for the
/// case or acts identically to the incumbent.
pub fn case_study_with(
    case: Case,
    mutant: QuantumStrategy,
    initial_share: f64,
    steps: usize,
) -> Result<CaseStudy> {
    if mutant.kind() != case.mutant_kind() {
        return Err(Error::Validation {
            what: "mutant strategy",
            reason: format!(
                "case {case} needs a {} mutant",
                match case.mutant_kind() {
                    StrategyKind::OneParameter => "one-parameter",
                    StrategyKind::TwoParameter => "two-parameter",
                }
            ),
        });
    }
    let incumbent = case.incumbent();
    if mutant.equivalent(&incumbent) {
        return Err(Error::Validation {
            what: "mutant strategy",
            reason: format!("{mutant} is the incumbent {incumbent} and is ruled out"),
        });
    }
    let game = EisertGame::maximal(PayoffBimatrix::prisoners_dilemma());
    let payoff = |s: &QuantumStrategy, t: &QuantumStrategy| game.symmetric_payoff(s, t);
    let table = ContestTable::from_payoff(payoff, &incumbent, &mutant)?;
    let stability = ess_comparisons(payoff, &incumbent, &[mutant], |_, _| false, DEFAULT_TOL)?
        .pop()
        .expect("one opponent yields one comparison");
    let verdict = if stability.stable {
        InvasionVerdict::Resists
    } else {
        InvasionVerdict::Invaded
    };
    Ok(CaseStudy {
        case,
        incumbent,
        mutant,
        table,
        stability,
        barrier: invasion_barrier(&table),
        trajectory: replicator_trajectory(&table, initial_share, steps)?,
        verdict,
    })
}
