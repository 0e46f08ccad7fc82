//! Two-qubit linear algebra.
//!
//! Every four-level object uses the ordered basis `|CC⟩, |CD⟩, |DC⟩, |DD⟩`
//! (index `2·x + y`, first qubit belongs to the row player). Local operators
//! combine through the row-major Kronecker product.

use alloc::format;
use num_complex::Complex64;
// Shadowed by inherent float methods whenever std is linked.
#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{Error, Result};

/// Complex amplitude or matrix entry.
pub type Amplitude = Complex64;

/// Raw 2×2 complex matrix.
pub type Matrix2 = [[Amplitude; 2]; 2];
/// Raw 4×4 complex matrix.
pub type Matrix4 = [[Amplitude; 4]; 4];

/// Tolerance for linear-algebra identities (unitarity, normalization, trace).
pub const LINALG_TOL: f64 = 1e-12;
/// Largest negative eigenvalue or probability still treated as round-off.
pub const NEGATIVITY_TOL: f64 = 1e-10;
/// Orthonormality tolerance for measurement bases.
pub const BASIS_TOL: f64 = 1e-10;
/// Tolerance on the total probability returned by a measurement.
pub const PROBABILITY_SUM_TOL: f64 = 1e-9;

const ZERO: Amplitude = Complex64::new(0.0, 0.0);
const ONE: Amplitude = Complex64::new(1.0, 0.0);

/// A validated single-qubit unitary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Unitary2(Matrix2);

impl Unitary2 {
    pub fn new(m: Matrix2) -> Result<Self> {
        check_unitary2(&m, "2x2 operator")?;
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self([[ONE, ZERO], [ZERO, ONE]])
    }

    /// Pauli σx, the spin-flip operator.
    pub fn pauli_x() -> Self {
        Self([[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn as_matrix(&self) -> &Matrix2 {
        &self.0
    }

    pub fn adjoint(&self) -> Self {
        let m = &self.0;
        Self([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[ZERO; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    /// Frobenius distance to another unitary.
    pub fn distance(&self, other: &Self) -> f64 {
        let mut acc = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                acc += (self.0[i][j] - other.0[i][j]).norm_sqr();
            }
        }
        acc.sqrt()
    }
}

/// `‖M·M† − I‖_F` for a 2×2 matrix.
pub fn unitarity_defect2(m: &Matrix2) -> f64 {
    let mut acc = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let mut s = ZERO;
            for k in 0..2 {
                s += m[i][k] * m[j][k].conj();
            }
            if i == j {
                s -= ONE;
            }
            acc += s.norm_sqr();
        }
    }
    acc.sqrt()
}

fn check_unitary2(m: &Matrix2, what: &'static str) -> Result<()> {
    if m.iter()
        .flatten()
        .any(|z| !z.re.is_finite() || !z.im.is_finite())
    {
        return Err(Error::Validation {
            what,
            reason: "non-finite entry".into(),
        });
    }
    let defect = unitarity_defect2(m);
    if defect > LINALG_TOL {
        return Err(Error::Validation {
            what,
            reason: format!("not unitary, |U U^dag - I|_F = {defect:e}"),
        });
    }
    Ok(())
}

/// A 4×4 operator on the two-qubit space.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Operator4(Matrix4);

impl Operator4 {
    pub fn from_matrix(m: Matrix4) -> Self {
        Self(m)
    }

    pub fn identity() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = ONE;
        }
        Self(m)
    }

    pub fn as_matrix(&self) -> &Matrix4 {
        &self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> Amplitude {
        self.0[row][col]
    }

    pub fn adjoint(&self) -> Self {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[j][i].conj();
            }
        }
        Self(out)
    }

    pub fn compose(&self, rhs: &Self) -> Self {
        Self(matmul4(&self.0, &rhs.0))
    }

    pub fn scale(&self, k: Amplitude) -> Self {
        let mut out = self.0;
        out.iter_mut().flatten().for_each(|z| *z *= k);
        Self(out)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.0;
        for (o, r) in out.iter_mut().flatten().zip(rhs.0.iter().flatten()) {
            *o += *r;
        }
        Self(out)
    }

    /// Applies the operator to raw amplitudes; the result is not renormalized.
    pub fn apply(&self, v: &[Amplitude; 4]) -> [Amplitude; 4] {
        let mut out = [ZERO; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|k| self.0[i][k] * v[k]).sum();
        }
        out
    }

    /// `‖A − B‖_F`
    pub fn distance(&self, other: &Self) -> f64 {
        self.0
            .iter()
            .flatten()
            .zip(other.0.iter().flatten())
            .map(|(a, b)| (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// `‖U·U† − I‖_F`
    pub fn unitarity_defect(&self) -> f64 {
        self.compose(&self.adjoint()).distance(&Self::identity())
    }
}

fn matmul4(a: &Matrix4, b: &Matrix4) -> Matrix4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..4).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

/// Kronecker product `u ⊗ v` in row-major basis order.
///
/// Both operands must be unitary within [`LINALG_TOL`]; the error names the
/// operand that is not.
pub fn tensor(u: &Matrix2, v: &Matrix2) -> Result<Operator4> {
    check_unitary2(u, "left tensor operand")?;
    check_unitary2(v, "right tensor operand")?;
    Ok(kron(u, v))
}

pub(crate) fn kron(u: &Matrix2, v: &Matrix2) -> Operator4 {
    let mut out = [[ZERO; 4]; 4];
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out[2 * i + k][2 * j + l] = u[i][j] * v[k][l];
                }
            }
        }
    }
    Operator4(out)
}

/// The entangling gate `J(γ) = cos(γ/2)·I⊗I + i·sin(γ/2)·D⊗D` with
/// `D = [[0, 1], [−1, 0]]`, for `γ ∈ [0, π/2]`.
///
/// `J(π/2)|CC⟩ = (|CC⟩ + i|DD⟩)/√2`.
pub fn entangler(gamma: f64) -> Result<Operator4> {
    crate::error::check_range(
        "gamma",
        gamma,
        0.0,
        core::f64::consts::FRAC_PI_2,
        "[0, pi/2]",
    )?;
    let d: Matrix2 = [[ZERO, ONE], [-ONE, ZERO]];
    let dd = kron(&d, &d);
    let (sin_h, cos_h) = sin_cos_reduced(gamma / 2.0);
    Ok(Operator4::identity()
        .scale(Complex64::new(cos_h, 0.0))
        .add(&dd.scale(Complex64::new(0.0, sin_h))))
}

/// `(sin x, cos x)` for `x ∈ [0, π]`, with the argument reflected towards
/// zero first so `π/2` and `π` yield exact zeros.
pub fn sin_cos_reduced(x: f64) -> (f64, f64) {
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};
    if x <= FRAC_PI_4 {
        (x.sin(), x.cos())
    } else if x <= 3.0 * FRAC_PI_4 {
        let y = FRAC_PI_2 - x;
        (y.cos(), y.sin())
    } else {
        let y = PI - x;
        (y.sin(), -y.cos())
    }
}

/// A normalized two-qubit pure state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct State4([Amplitude; 4]);

impl State4 {
    pub fn new(amplitudes: [Amplitude; 4]) -> Result<Self> {
        if amplitudes
            .iter()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Validation {
                what: "two-qubit state",
                reason: "non-finite amplitude".into(),
            });
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > LINALG_TOL {
            return Err(Error::Validation {
                what: "two-qubit state",
                reason: format!("norm {norm} differs from 1"),
            });
        }
        Ok(Self(amplitudes))
    }

    /// Computational basis ket `|k⟩`, `k ∈ 0..4`.
    pub fn basis(k: usize) -> Self {
        let mut v = [ZERO; 4];
        v[k] = ONE;
        Self(v)
    }

    pub fn computational_basis() -> [Self; 4] {
        [0, 1, 2, 3].map(Self::basis)
    }

    pub fn amplitudes(&self) -> &[Amplitude; 4] {
        &self.0
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &Self) -> Amplitude {
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies a unitary; the normalization invariant is re-checked.
    pub fn evolve(&self, u: &Operator4) -> Result<Self> {
        Self::new(u.apply(&self.0))
    }

    pub fn density(&self) -> DensityMatrix4 {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = self.0[i] * self.0[j].conj();
            }
        }
        DensityMatrix4(m)
    }
}

/// A validated two-qubit density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix4(Matrix4);

impl DensityMatrix4 {
    /// Checks Hermiticity and unit trace within [`LINALG_TOL`] and that no
    /// eigenvalue falls below `−NEGATIVITY_TOL`.
    pub fn new(m: Matrix4) -> Result<Self> {
        let what = "density matrix";
        if m.iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::Validation {
                what,
                reason: "non-finite entry".into(),
            });
        }
        let op = Operator4(m);
        let herm = op.distance(&op.adjoint());
        if herm > LINALG_TOL {
            return Err(Error::Validation {
                what,
                reason: format!("not Hermitian, |rho - rho^dag|_F = {herm:e}"),
            });
        }
        let trace: f64 = (0..4).map(|i| m[i][i].re).sum();
        if (trace - 1.0).abs() > LINALG_TOL {
            return Err(Error::Validation {
                what,
                reason: format!("trace {trace} differs from 1"),
            });
        }
        let min_eig = hermitian_eigenvalues(&m)[0];
        if min_eig < -NEGATIVITY_TOL {
            return Err(Error::Validation {
                what,
                reason: format!("eigenvalue {min_eig:e} is negative"),
            });
        }
        Ok(Self(m))
    }

    /// `I/4`
    pub fn maximally_mixed() -> Self {
        let mut m = [[ZERO; 4]; 4];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = Complex64::new(0.25, 0.0);
        }
        Self(m)
    }

    pub fn as_matrix(&self) -> &Matrix4 {
        &self.0
    }

    /// `U ρ U†`
    pub fn conjugate(&self, u: &Operator4) -> Self {
        Self(matmul4(&matmul4(&u.0, &self.0), &u.adjoint().0))
    }

    /// Convex combination `Σ wₖ ρₖ`. Weights are expected to be
    /// non-negative and to sum to one; the result is re-validated.
    pub fn mixture<'a, I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, &'a DensityMatrix4)>,
    {
        let mut acc = [[ZERO; 4]; 4];
        for (w, rho) in terms {
            for (a, r) in acc.iter_mut().flatten().zip(rho.0.iter().flatten()) {
                *a += r * w;
            }
        }
        Self::new(acc)
    }

    pub fn trace(&self) -> f64 {
        (0..4).map(|i| self.0[i][i].re).sum()
    }

    /// Populations in the computational basis.
    pub fn diagonal(&self) -> [f64; 4] {
        [0, 1, 2, 3].map(|i| self.0[i][i].re)
    }

    /// `⟨ψ|ρ|ψ⟩ = tr[|ψ⟩⟨ψ| ρ]`
    pub fn expectation(&self, psi: &State4) -> f64 {
        let v = Operator4(self.0).apply(psi.amplitudes());
        psi.inner(&State4(v)).re
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> [f64; 4] {
        hermitian_eigenvalues(&self.0)
    }
}

/// Outcome probabilities `p_k = tr[|ψ_k⟩⟨ψ_k| ρ]` for a projective
/// measurement in an orthonormal basis.
///
/// Values down to `−NEGATIVITY_TOL` are clamped to zero; anything more
/// negative, or a total further than [`PROBABILITY_SUM_TOL`] from one, is a
/// numeric error.
pub fn measure_probabilities(rho: &DensityMatrix4, basis: &[State4; 4]) -> Result<[f64; 4]> {
    for i in 0..4 {
        for j in 0..4 {
            let expected = if i == j { 1.0 } else { 0.0 };
            let overlap = basis[i].inner(&basis[j]);
            if (overlap - Complex64::new(expected, 0.0)).norm() > BASIS_TOL {
                return Err(Error::Validation {
                    what: "measurement basis",
                    reason: format!("<psi_{i}|psi_{j}> = {overlap}, expected {expected}"),
                });
            }
        }
    }
    let mut probs = [0.0; 4];
    for (p, psi) in probs.iter_mut().zip(basis) {
        let raw = rho.expectation(psi);
        if !(-NEGATIVITY_TOL..=1.0 + NEGATIVITY_TOL).contains(&raw) {
            return Err(Error::Numeric(format!(
                "outcome probability {raw} outside [0, 1]"
            )));
        }
        *p = raw.clamp(0.0, 1.0);
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > PROBABILITY_SUM_TOL {
        return Err(Error::Numeric(format!("probabilities sum to {total}")));
    }
    Ok(probs)
}

/// Von Neumann entropy (natural log) of the first qubit's reduced state.
pub fn entanglement_entropy(psi: &State4) -> f64 {
    let v = psi.amplitudes();
    // ρ_A = Tr_B |ψ⟩⟨ψ|
    let r00 = v[0].norm_sqr() + v[1].norm_sqr();
    let r11 = v[2].norm_sqr() + v[3].norm_sqr();
    let r01 = v[0] * v[2].conj() + v[1] * v[3].conj();
    let disc = ((r00 - r11) * (r00 - r11) + 4.0 * r01.norm_sqr()).sqrt();
    let trace = r00 + r11;
    [(trace + disc) / 2.0, (trace - disc) / 2.0]
        .into_iter()
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.ln())
        .sum()
}

/// Eigenvalues of a Hermitian 4×4 matrix, ascending.
///
/// Works on the real symmetric 8×8 embedding `[[Re, −Im], [Im, Re]]`, whose
/// spectrum is that of the input with every eigenvalue doubled, and
/// diagonalizes it with cyclic Jacobi rotations.
pub fn hermitian_eigenvalues(m: &Matrix4) -> [f64; 4] {
    let mut a = [[0.0f64; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let z = m[i][j];
            a[i][j] = z.re;
            a[i + 4][j + 4] = z.re;
            a[i][j + 4] = -z.im;
            a[i + 4][j] = z.im;
        }
    }
    for _sweep in 0..64 {
        let off: f64 = (0..8)
            .flat_map(|i| (0..8).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[i][j] * a[i][j])
            .sum();
        if off < 1e-30 {
            break;
        }
        for p in 0..8 {
            for q in (p + 1)..8 {
                if a[p][q].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..8 {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..8 {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut diag = [0.0; 8];
    for (i, d) in diag.iter_mut().enumerate() {
        *d = a[i][i];
    }
    diag.sort_by(|x, y| x.total_cmp(y));
    [diag[0], diag[2], diag[4], diag[6]]
}
