//! Nash-equilibrium verification and evolutionary-stability classification.
//!
//! Tactic games (probabilistic identity/flip play) are checked by brute
//! force over unilateral deviations on a uniform grid. Symmetric games use
//! the two-condition ESS test against an explicit list of mutants. For an
//! asymmetric game an ESS is exactly a strict Nash equilibrium.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::bimatrix::PayoffBimatrix;
use crate::error::{check_probability, Error, Result};
use crate::grid::uniform_grid;
use crate::mw::{mw_payoffs, EntangledInitialState, MwGame, TacticProfile};

/// Payoff differences within this distance of zero count as ties.
pub const DEFAULT_TOL: f64 = 1e-9;
/// Smallest deviation grid accepted by [`verify_nash`].
pub const MIN_RESOLUTION: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Row,
    Column,
}

/// A deviation and how much the deviating player loses by it
/// (negative: the deviation is profitable).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness<D> {
    pub player: Player,
    pub deviation: D,
    pub difference: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport<C, D = C> {
    pub candidate: C,
    pub is_nash: bool,
    pub is_strict: bool,
    pub is_ess: bool,
    pub witnesses: Vec<Witness<D>>,
    pub context: Option<EntangledInitialState>,
}

impl<C, D> EquilibriumReport<C, D> {
    pub fn verdict(&self) -> Verdict {
        match (self.is_nash, self.is_ess) {
            (true, true) => Verdict::Ess,
            (true, false) => Verdict::NashNotEss,
            (false, _) => Verdict::NotNash,
        }
    }

    /// Smallest difference recorded for `player`.
    pub fn min_difference(&self, player: Player) -> Option<f64> {
        self.witnesses
            .iter()
            .filter(|w| w.player == player)
            .map(|w| w.difference)
            .reduce(f64::min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Ess,
    NashNotEss,
    NotNash,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Ess => "ESS",
            Verdict::NashNotEss => "NE-not-ESS",
            Verdict::NotNash => "not-NE",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Verdict {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ESS" => Ok(Verdict::Ess),
            "NE-not-ESS" => Ok(Verdict::NashNotEss),
            "not-NE" => Ok(Verdict::NotNash),
            other => Err(Error::Validation {
                what: "verdict",
                reason: alloc::format!("unknown verdict {other:?}"),
            }),
        }
    }
}

/// `(P_A(p*,q*) − P_A(p,q*), P_B(p*,q*) − P_B(p*,q))` through the full
/// density pipeline.
pub fn ne_payoff_differences(
    matrix: &PayoffBimatrix,
    init: &EntangledInitialState,
    star: &TacticProfile,
    dev: &TacticProfile,
) -> Result<(f64, f64)> {
    let at_star = mw_payoffs(matrix, init, star)?;
    let row_dev = mw_payoffs(matrix, init, &TacticProfile::new(dev.p, star.q)?)?;
    let col_dev = mw_payoffs(matrix, init, &TacticProfile::new(star.p, dev.q)?)?;
    Ok((at_star.0 - row_dev.0, at_star.1 - col_dev.1))
}

/// Same differences in factored form for the aligned state:
///
/// ```text
/// ΔA = (p*−p)[|a|²(β₁−σ₁) + |b|²(γ₁−α₁) − q*{(β₁−σ₁) + (γ₁−α₁)}]
/// ΔB = (q*−q)[|a|²(γ₂−σ₂) + |b|²(β₂−α₂) − p*{(γ₂−σ₂) + (β₂−α₂)}]
/// ```
pub fn bracket_differences(
    matrix: &PayoffBimatrix,
    a2: f64,
    b2: f64,
    star: &TacticProfile,
    dev: &TacticProfile,
) -> (f64, f64) {
    let [(a1, a2_), (b1, b2_), (g1, g2), (s1, s2)] = *matrix.cells();
    let row =
        (star.p - dev.p) * (a2 * (b1 - s1) + b2 * (g1 - a1) - star.q * ((b1 - s1) + (g1 - a1)));
    let col =
        (star.q - dev.q) * (a2 * (g2 - s2) + b2 * (b2_ - a2_) - star.p * ((g2 - s2) + (b2_ - a2_)));
    (row, col)
}

/// Checks `star` against every unilateral deviation on a uniform grid of
/// `resolution` points over `[0, 1]` (endpoints included).
///
/// NE: no deviation gains more than `tol`. Strict: every deviation farther
/// than `tol` from the candidate loses more than `tol`. The report's ESS
/// flag is strictness. Witnesses hold the least costly deviation per player.
pub fn verify_nash(
    game: &MwGame,
    star: TacticProfile,
    resolution: usize,
    tol: f64,
) -> Result<EquilibriumReport<TacticProfile, f64>> {
    if resolution < MIN_RESOLUTION {
        return Err(Error::Domain {
            name: "grid resolution",
            value: resolution as f64,
            range: ">= 101",
        });
    }
    let (base_a, base_b) = game.payoffs_at(&star);
    let mut is_nash = true;
    let mut is_strict = true;
    let mut worst_a: Option<Witness<f64>> = None;
    let mut worst_b: Option<Witness<f64>> = None;

    let mut consider = |player: Player, own: f64, dev: f64, diff: f64| {
        if diff < -tol {
            is_nash = false;
        }
        if (dev - own).abs() <= tol {
            return;
        }
        if diff <= tol {
            is_strict = false;
        }
        let slot = match player {
            Player::Row => &mut worst_a,
            Player::Column => &mut worst_b,
        };
        if slot.is_none_or(|w| diff < w.difference) {
            *slot = Some(Witness {
                player,
                deviation: dev,
                difference: diff,
            });
        }
    };

    for x in uniform_grid(0.0, 1.0, resolution) {
        consider(Player::Row, star.p, x, base_a - game.payoffs(x, star.q).0);
        consider(
            Player::Column,
            star.q,
            x,
            base_b - game.payoffs(star.p, x).1,
        );
    }

    let is_strict = is_nash && is_strict;
    Ok(EquilibriumReport {
        candidate: star,
        is_nash,
        is_strict,
        is_ess: is_strict,
        witnesses: worst_a.into_iter().chain(worst_b).collect(),
        context: Some(*game.initial_state()),
    })
}

/// Outcome of pitting a candidate `A` against one mutant `B` in a
/// symmetric game.
#[derive(Debug, Clone, PartialEq)]
pub struct EssComparison<S> {
    pub opponent: S,
    /// `P(A,A) − P(B,A)`
    pub first: f64,
    /// `P(A,B) − P(B,B)`
    pub second: f64,
    pub stable: bool,
}

impl<S> EssComparison<S> {
    /// The difference that decides stability: `first`, or `second` on a tie.
    pub fn margin(&self, tol: f64) -> f64 {
        if self.first.abs() <= tol {
            self.second
        } else {
            self.first
        }
    }
}

/// Per-mutant ESS conditions: `A` is stable against `B` when
/// `P(A,A) > P(B,A)`, or `P(A,A) = P(B,A)` and `P(A,B) > P(B,B)`, with ties
/// and strict inequalities judged at `tol`. Mutants for which `same` holds
/// are skipped.
pub fn ess_comparisons<S, F, E>(
    mut payoff: F,
    candidate: &S,
    opponents: &[S],
    same: E,
    tol: f64,
) -> Result<Vec<EssComparison<S>>>
where
    S: Clone,
    F: FnMut(&S, &S) -> Result<f64>,
    E: Fn(&S, &S) -> bool,
{
    let p_aa = payoff(candidate, candidate)?;
    let mut out = Vec::with_capacity(opponents.len());
    for b in opponents.iter().filter(|b| !same(candidate, b)) {
        let first = p_aa - payoff(b, candidate)?;
        let second = payoff(candidate, b)? - payoff(b, b)?;
        let stable = first > tol || (first.abs() <= tol && second > tol);
        out.push(EssComparison {
            opponent: b.clone(),
            first,
            second,
            stable,
        });
    }
    Ok(out)
}

/// Symmetric ESS test of `candidate` against every listed mutant.
///
/// `is_nash`/`is_strict` refer to the first condition alone; the single
/// witness is the mutant with the smallest deciding margin.
pub fn symmetric_ess_check<S, F, E>(
    payoff: F,
    candidate: &S,
    opponents: &[S],
    same: E,
    tol: f64,
) -> Result<EquilibriumReport<S, S>>
where
    S: Clone,
    F: FnMut(&S, &S) -> Result<f64>,
    E: Fn(&S, &S) -> bool,
{
    let rows = ess_comparisons(payoff, candidate, opponents, same, tol)?;
    let is_nash = rows.iter().all(|r| r.first >= -tol);
    let is_strict = rows.iter().all(|r| r.first > tol);
    let is_ess = rows.iter().all(|r| r.stable);
    let witness = rows
        .iter()
        .min_by(|x, y| x.margin(tol).total_cmp(&y.margin(tol)))
        .map(|r| Witness {
            player: Player::Row,
            deviation: r.opponent.clone(),
            difference: r.margin(tol),
        });
    Ok(EquilibriumReport {
        candidate: candidate.clone(),
        is_nash,
        is_strict,
        is_ess,
        witnesses: witness.into_iter().collect(),
        context: None,
    })
}

/// The three symmetric equilibrium families of the aligned-state
/// Prisoner's Dilemma, indexed by `|b|²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PdNeFamily {
    /// `p = q = 0` for `3|b|² ≤ 1`.
    AlwaysFlip,
    /// `p = q = 1` for `3|b|² ≥ 2`.
    AlwaysIdentity,
    /// `p = q = 3|b|² − 1` for `1 < 3|b|² < 2`.
    Interior,
}

const BOUNDARY_TOL: f64 = 1e-12;

impl PdNeFamily {
    pub const ALL: [PdNeFamily; 3] = [
        PdNeFamily::AlwaysFlip,
        PdNeFamily::AlwaysIdentity,
        PdNeFamily::Interior,
    ];

    pub fn description(self) -> &'static str {
        match self {
            PdNeFamily::AlwaysFlip => "p = q = 0",
            PdNeFamily::AlwaysIdentity => "p = q = 1",
            PdNeFamily::Interior => "p = q = 3|b|^2 - 1",
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            PdNeFamily::AlwaysFlip => "3|b|^2 <= 1",
            PdNeFamily::AlwaysIdentity => "3|b|^2 >= 2",
            PdNeFamily::Interior => "1 < 3|b|^2 < 2",
        }
    }

    /// Boundaries `3|b|² ∈ {1, 2}` are resolved to within 1e−12 in favour of
    /// the closed conditions.
    pub fn holds(self, b2: f64) -> bool {
        let x = 3.0 * b2;
        match self {
            PdNeFamily::AlwaysFlip => x <= 1.0 + BOUNDARY_TOL,
            PdNeFamily::AlwaysIdentity => x >= 2.0 - BOUNDARY_TOL,
            PdNeFamily::Interior => x > 1.0 + BOUNDARY_TOL && x < 2.0 - BOUNDARY_TOL,
        }
    }

    pub fn profile(self, b2: f64) -> Result<TacticProfile> {
        let v = match self {
            PdNeFamily::AlwaysFlip => 0.0,
            PdNeFamily::AlwaysIdentity => 1.0,
            PdNeFamily::Interior => 3.0 * b2 - 1.0,
        };
        TacticProfile::new(v, v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NeFamilyMember {
    pub family: PdNeFamily,
    pub b2: f64,
    pub profile: TacticProfile,
}

/// Symmetric equilibria of the aligned-state Prisoner's Dilemma at `b2`.
pub fn mw_pd_symmetric_ne(b2: f64) -> Result<Vec<NeFamilyMember>> {
    check_probability("b2", b2)?;
    PdNeFamily::ALL
        .into_iter()
        .filter(|f| f.holds(b2))
        .map(|family| {
            Ok(NeFamilyMember {
                family,
                b2,
                profile: family.profile(b2)?,
            })
        })
        .collect()
}

/// Profiles that can be equilibria of a bilinear tactic game: the four
/// pure corners and, when it lies in the unit square, the point at which
/// each player is indifferent between their tactics.
pub fn candidate_profiles(game: &MwGame) -> Vec<TacticProfile> {
    let mut out: Vec<TacticProfile> = [(1.0, 1.0), (0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
        .into_iter()
        .map(|(p, q)| TacticProfile { p, q })
        .collect();
    if let Some(t) = indifference_profile(game) {
        if !out
            .iter()
            .any(|c| (c.p - t.p).abs() <= BOUNDARY_TOL && (c.q - t.q).abs() <= BOUNDARY_TOL)
        {
            out.push(t);
        }
    }
    out
}

/// Solves `∂P_A/∂p = 0` for `q` and `∂P_B/∂q = 0` for `p`.
pub fn indifference_profile(game: &MwGame) -> Option<TacticProfile> {
    let (ca, cb) = game.bilinear_coefficients();
    if ca[3] == 0.0 || cb[3] == 0.0 {
        return None;
    }
    let q = -ca[1] / ca[3];
    let p = -cb[2] / cb[3];
    TacticProfile::new(p, q).ok()
}

/// Equilibria among [`candidate_profiles`], each with its full report.
pub fn tactic_equilibria(
    game: &MwGame,
    resolution: usize,
    tol: f64,
) -> Result<Vec<EquilibriumReport<TacticProfile, f64>>> {
    let mut out = Vec::new();
    for c in candidate_profiles(game) {
        let report = verify_nash(game, c, resolution, tol)?;
        if report.is_nash {
            out.push(report);
        }
    }
    Ok(out)
}

/// Equilibria of Battle of the Sexes `(α,β) (γ,γ) / (γ,γ) (β,α)` played on
/// `init`, verified at resolution 1001.
pub fn bos_ne(
    alpha: f64,
    beta: f64,
    gamma: f64,
    init: &EntangledInitialState,
) -> Result<Vec<EquilibriumReport<TacticProfile, f64>>> {
    let game = MwGame::new(PayoffBimatrix::battle_of_sexes(alpha, beta, gamma)?, *init)?;
    tactic_equilibria(&game, 1001, DEFAULT_TOL)
}

/// Battle-of-the-Sexes interior equilibria in closed form.
pub mod closed_form {
    use crate::mw::TacticProfile;

    /// Mixed equilibrium of the aligned-state game; at `|b|² = 0` it is the
    /// classical `((α−γ)/(α+β−2γ), (β−γ)/(α+β−2γ))`.
    pub fn bos_interior_aligned(
        alpha: f64,
        beta: f64,
        gamma: f64,
        a2: f64,
        b2: f64,
    ) -> TacticProfile {
        let k = alpha + beta - 2.0 * gamma;
        TacticProfile {
            p: ((alpha - gamma) * a2 + (beta - gamma) * b2) / k,
            q: ((alpha - gamma) * b2 + (beta - gamma) * a2) / k,
        }
    }

    /// Crossed-state interior point in its reference form (denominator
    /// `α+β−γ`). It is not an equilibrium of the crossed game; see
    /// [`bos_interior_crossed`].
    pub fn bos_interior_crossed_reference(
        alpha: f64,
        beta: f64,
        gamma: f64,
        a2: f64,
        b2: f64,
    ) -> TacticProfile {
        let k = alpha + beta - gamma;
        TacticProfile {
            p: (beta * a2 + alpha * b2 - gamma) / k,
            q: (alpha * a2 + beta * b2 - gamma) / k,
        }
    }

    /// Interior equilibrium of the crossed-state game:
    /// `p = q = (α|a|² + β|b|² − γ)/(α+β−2γ)`.
    pub fn bos_interior_crossed(
        alpha: f64,
        beta: f64,
        gamma: f64,
        a2: f64,
        b2: f64,
    ) -> TacticProfile {
        let v = (alpha * a2 + beta * b2 - gamma) / (alpha + beta - 2.0 * gamma);
        TacticProfile { p: v, q: v }
    }
}

/// One `|b|²` sample of an ESS scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanPoint {
    pub b2: f64,
    pub verdict: Verdict,
    pub min_delta_a: f64,
    pub min_delta_b: f64,
}

/// A maximal run of consecutive scan points sharing a verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanInterval {
    pub b2_start: f64,
    pub b2_end: f64,
    pub verdict: Verdict,
}

/// Classifies `star` at every `|b|²` in `b2_grid` (ascending, within [0, 1]).
pub fn ess_scan_points(
    matrix: &PayoffBimatrix,
    pairing: crate::mw::Pairing,
    star: TacticProfile,
    b2_grid: &[f64],
    resolution: usize,
    tol: f64,
) -> Result<Vec<ScanPoint>> {
    if b2_grid
        .windows(2)
        .any(|w| w[0].partial_cmp(&w[1]).is_none_or(|o| o.is_gt()))
    {
        return Err(Error::Validation {
            what: "b2 grid",
            reason: "values must be sorted ascending".into(),
        });
    }
    b2_grid
        .iter()
        .map(|&b2| {
            let init = EntangledInitialState::from_b2(b2, pairing)?;
            let game = MwGame::new(*matrix, init)?;
            let report = verify_nash(&game, star, resolution, tol)?;
            Ok(ScanPoint {
                b2,
                verdict: report.verdict(),
                min_delta_a: report.min_difference(Player::Row).unwrap_or(0.0),
                min_delta_b: report.min_difference(Player::Column).unwrap_or(0.0),
            })
        })
        .collect()
}

/// Merges adjacent scan points with equal verdicts.
pub fn merge_intervals(points: &[ScanPoint]) -> Vec<ScanInterval> {
    let mut out: Vec<ScanInterval> = Vec::new();
    for pt in points {
        match out.last_mut() {
            Some(last) if last.verdict == pt.verdict => last.b2_end = pt.b2,
            _ => out.push(ScanInterval {
                b2_start: pt.b2,
                b2_end: pt.b2,
                verdict: pt.verdict,
            }),
        }
    }
    out
}

/// Verdict intervals for `star` over `b2_grid`.
pub fn ess_region_scan(
    matrix: &PayoffBimatrix,
    pairing: crate::mw::Pairing,
    star: TacticProfile,
    b2_grid: &[f64],
    resolution: usize,
    tol: f64,
) -> Result<Vec<ScanInterval>> {
    let points = ess_scan_points(matrix, pairing, star, b2_grid, resolution, tol)?;
    Ok(merge_intervals(&points))
}
