//! 2×2 bimatrix games.

use alloc::format;

use crate::error::{Error, Result};

/// Joint outcome of one round, in the fixed basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    /// Both play the first pure strategy (C, or O).
    FirstFirst = 0,
    FirstSecond = 1,
    SecondFirst = 2,
    /// Both play the second pure strategy (D, or T).
    SecondSecond = 3,
}

impl Outcome {
    pub const ALL: [Outcome; 4] = [
        Outcome::FirstFirst,
        Outcome::FirstSecond,
        Outcome::SecondFirst,
        Outcome::SecondSecond,
    ];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Payoff pairs `(row, column)` laid out as
///
/// ```text
/// (α₁, α₂)  (β₁, β₂)
/// (γ₁, γ₂)  (σ₁, σ₂)
/// ```
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PayoffBimatrix {
    cells: [(f64, f64); 4],
}

impl PayoffBimatrix {
    /// Builds a game from row-major payoff pairs.
    pub fn new(cells: [(f64, f64); 4]) -> Result<Self> {
        if let Some(bad) = cells.iter().find(|(a, b)| !a.is_finite() || !b.is_finite()) {
            return Err(Error::Validation {
                what: "payoff bimatrix",
                reason: format!("non-finite entry {bad:?}"),
            });
        }
        Ok(Self { cells })
    }

    /// The Prisoner's Dilemma `(3,3) (0,5) / (5,0) (1,1)`.
    pub fn prisoners_dilemma() -> Self {
        Self {
            cells: [(3.0, 3.0), (0.0, 5.0), (5.0, 0.0), (1.0, 1.0)],
        }
    }

    /// Battle of the Sexes `(α,β) (γ,γ) / (γ,γ) (β,α)`, requiring `α > β > γ`.
    pub fn battle_of_sexes(alpha: f64, beta: f64, gamma: f64) -> Result<Self> {
        if !(alpha > beta && beta > gamma) {
            return Err(Error::Domain {
                name: "battle of the sexes payoffs",
                value: beta,
                range: "alpha > beta > gamma",
            });
        }
        Self::new([(alpha, beta), (gamma, gamma), (gamma, gamma), (beta, alpha)])
    }

    /// `(1,1) (1,2) / (2,1) (3,2)`: (0,0) is an ESS only without entanglement.
    pub fn ess_lost_under_entanglement() -> Self {
        Self {
            cells: [(1.0, 1.0), (1.0, 2.0), (2.0, 1.0), (3.0, 2.0)],
        }
    }

    /// `(2,1) (1,0) / (1,0) (1,0)`: (0,0) becomes an ESS only with entanglement.
    pub fn ess_gained_under_entanglement() -> Self {
        Self {
            cells: [(2.0, 1.0), (1.0, 0.0), (1.0, 0.0), (1.0, 0.0)],
        }
    }

    pub fn cells(&self) -> &[(f64, f64); 4] {
        &self.cells
    }

    pub fn cell(&self, outcome: Outcome) -> (f64, f64) {
        self.cells[outcome.index()]
    }

    /// Row player's matrix `[[α₁, β₁], [γ₁, σ₁]]`.
    pub fn row_matrix(&self) -> [[f64; 2]; 2] {
        let c = &self.cells;
        [[c[0].0, c[1].0], [c[2].0, c[3].0]]
    }

    /// Column player's matrix `[[α₂, β₂], [γ₂, σ₂]]`.
    pub fn column_matrix(&self) -> [[f64; 2]; 2] {
        let c = &self.cells;
        [[c[0].1, c[1].1], [c[2].1, c[3].1]]
    }

    /// True when the column matrix is the transpose of the row matrix.
    pub fn is_symmetric(&self) -> bool {
        let r = self.row_matrix();
        let c = self.column_matrix();
        (0..2).all(|i| (0..2).all(|j| c[i][j] == r[j][i]))
    }

    /// Payoffs averaged over a distribution on the four outcomes.
    pub fn expected(&self, probs: &[f64; 4]) -> (f64, f64) {
        self.cells
            .iter()
            .zip(probs)
            .fold((0.0, 0.0), |(a, b), (&(ra, rb), &p)| {
                (a + p * ra, b + p * rb)
            })
    }

    /// Classical mixed play: the row player picks the first strategy with
    /// probability `p`, the column player with probability `q`.
    pub fn classical_mixed(&self, p: f64, q: f64) -> (f64, f64) {
        self.expected(&[p * q, p * (1.0 - q), (1.0 - p) * q, (1.0 - p) * (1.0 - q)])
    }
}
