//! Matrix realizations of the fermion and meson algebras, the Minkowski
//! metric, the slash contraction and pure Lorentz boosts with their spinor
//! representation.
//!
//! Conventions used throughout the crate:
//! * metric signature (-+++), so `a.b = -a0 b0 + a1 b1 + a2 b2 + a3 b3`;
//! * fermion algebra `{g^mu, g^nu} = -2 g^{mu nu} I`, satisfied by the
//!   standard Dirac-Pauli matrices unchanged (`(g^0)^2 = +I`, `(g^j)^2 = -I`);
//! * chirality matrix fixed as `g5 = i g0 g1 g2 g3`, which makes the
//!   rotation operator Hermitian and the z-axis projection `Q` literally
//!   `diag(0,1,0,1)`;
//! * index lowering `v_0 = -v^0`, `v_j = v^j`, so
//!   `slash(v) = -v^0 g0 + v^j gj` and `slash(p)^2 = -(p.p) I`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::numerics::ComplexMatrix;

/// Minkowski metric diag(-1, 1, 1, 1).
pub const METRIC_DIAGONAL: [f64; 4] = [-1.0, 1.0, 1.0, 1.0];

#[derive(Debug, Error, PartialEq)]
pub enum CliffordError {
    #[error("unsupported representation dimension {0}: expected 5 (spin-0) or 10 (spin-1)")]
    UnsupportedDimension(usize),
    #[error("boost direction must be nonzero")]
    ZeroDirection,
    #[error("gamma matrices must be 4x4")]
    BadShape,
}

/// Real 4-component event/momentum/axis value under signature (-+++).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn new(v0: f64, v1: f64, v2: f64, v3: f64) -> Self {
        Self([v0, v1, v2, v3])
    }

    pub fn time(&self) -> f64 {
        self.0[0]
    }

    pub fn spatial(&self) -> [f64; 3] {
        [self.0[1], self.0[2], self.0[3]]
    }

    pub fn spatial_norm(&self) -> f64 {
        let [x, y, z] = self.spatial();
        (x * x + y * y + z * z).sqrt()
    }

    /// Minkowski dot product: -a0 b0 + a1 b1 + a2 b2 + a3 b3.
    pub fn minkowski_dot(&self, other: &FourVector) -> f64 {
        -self.0[0] * other.0[0]
            + self.0[1] * other.0[1]
            + self.0[2] * other.0[2]
            + self.0[3] * other.0[3]
    }

    pub fn scale(&self, factor: f64) -> FourVector {
        FourVector([
            self.0[0] * factor,
            self.0[1] * factor,
            self.0[2] * factor,
            self.0[3] * factor,
        ])
    }

    /// Cross product of the spatial parts.
    pub fn spatial_cross(&self, other: &FourVector) -> [f64; 3] {
        let [a1, a2, a3] = self.spatial();
        let [b1, b2, b3] = other.spatial();
        [a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1]
    }
}

impl std::ops::Index<usize> for FourVector {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// The four Dirac matrices and the chirality matrix.
#[derive(Debug, Clone)]
pub struct GammaBasis {
    gamma: [ComplexMatrix; 4],
    gamma5: ComplexMatrix,
}

impl GammaBasis {
    /// Dirac-Pauli representation: `g0 = diag(1,1,-1,-1)`, spatial matrices
    /// with off-diagonal Pauli blocks, `g5 = i g0 g1 g2 g3 = offdiag(I, I)`.
    pub fn standard() -> Self {
        let g0 = ComplexMatrix::from_real_rows(&[
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
            &[0.0, 0.0, -1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
        ]);
        let g1 = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 0.0, 1.0],
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, -1.0, 0.0, 0.0],
            &[-1.0, 0.0, 0.0, 0.0],
        ]);
        let mut g2 = ComplexMatrix::zeros(4, 4);
        g2[(0, 3)] = Complex64::new(0.0, -1.0);
        g2[(1, 2)] = Complex64::new(0.0, 1.0);
        g2[(2, 1)] = Complex64::new(0.0, 1.0);
        g2[(3, 0)] = Complex64::new(0.0, -1.0);
        let g3 = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, -1.0],
            &[-1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        let gamma5 = ComplexMatrix::from_real_rows(&[
            &[0.0, 0.0, 1.0, 0.0],
            &[0.0, 0.0, 0.0, 1.0],
            &[1.0, 0.0, 0.0, 0.0],
            &[0.0, 1.0, 0.0, 0.0],
        ]);
        Self {
            gamma: [g0, g1, g2, g3],
            gamma5,
        }
    }

    /// Builds a basis from explicit matrices without validating the algebra;
    /// `relation_residual` reports how badly the relations are violated.
    pub fn from_matrices(
        gamma: [ComplexMatrix; 4],
        gamma5: ComplexMatrix,
    ) -> Result<Self, CliffordError> {
        let ok = gamma.iter().chain([&gamma5]).all(|g| g.rows() == 4 && g.cols() == 4);
        if !ok {
            return Err(CliffordError::BadShape);
        }
        Ok(Self { gamma, gamma5 })
    }

    pub fn gamma(&self, mu: usize) -> &ComplexMatrix {
        &self.gamma[mu]
    }

    pub fn gamma5(&self) -> &ComplexMatrix {
        &self.gamma5
    }

    /// `slash(v) = g^mu v_mu` with the index lowered by the metric.
    pub fn slash(&self, v: &FourVector) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(4, 4);
        for mu in 0..4 {
            let lowered = METRIC_DIAGONAL[mu] * v[mu];
            if lowered != 0.0 {
                out = out.add(&self.gamma[mu].scale(Complex64::new(lowered, 0.0)));
            }
        }
        out
    }

    /// Max residual over the 16 anticommutation relations
    /// `g^mu g^nu + g^nu g^mu + 2 g^{mu nu} I = 0`.
    pub fn relation_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(4);
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            for nu in 0..4 {
                let anti = (&self.gamma[mu] * &self.gamma[nu])
                    .add(&(&self.gamma[nu] * &self.gamma[mu]));
                let metric = if mu == nu { METRIC_DIAGONAL[mu] } else { 0.0 };
                let res = anti.add(&id.scale(Complex64::new(2.0 * metric, 0.0)));
                worst = worst.max(res.max_norm());
            }
        }
        worst
    }

    /// Max residual over `{g5, g^mu} = 0` and `(g5)^2 = I`.
    pub fn gamma5_residual(&self) -> f64 {
        let id = ComplexMatrix::identity(4);
        let mut worst = (&self.gamma5 * &self.gamma5).sub(&id).max_norm();
        for g in &self.gamma {
            let anti = (&self.gamma5 * g).add(&(g * &self.gamma5));
            worst = worst.max(anti.max_norm());
        }
        worst
    }

    /// Hermiticity residual: g0 and g5 Hermitian, spatial gammas anti-Hermitian.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = self.gamma[0].adjoint().sub(&self.gamma[0]).max_norm();
        worst = worst.max(self.gamma5.adjoint().sub(&self.gamma5).max_norm());
        for g in &self.gamma[1..4] {
            worst = worst.max(g.adjoint().add(g).max_norm());
        }
        worst
    }
}

/// A matrix realization of the meson algebra
/// `b^l b^m b^n + b^n b^m b^l = -b^l g^{mn} - b^n g^{ml}`.
#[derive(Debug, Clone)]
pub struct BetaBasis {
    dim: usize,
    beta: [ComplexMatrix; 4],
}

impl BetaBasis {
    /// Builds the irreducible representation of the requested dimension:
    /// 5 for spin-0 (scalar plus vector components) and 10 for spin-1
    /// (vector plus antisymmetric tensor components). All entries are 0, +1
    /// or -1, so the algebra holds exactly in floating point.
    pub fn build(dim: usize) -> Result<Self, CliffordError> {
        match dim {
            5 => Ok(Self {
                dim,
                beta: Self::spin0(),
            }),
            10 => Ok(Self {
                dim,
                beta: Self::spin1(),
            }),
            other => Err(CliffordError::UnsupportedDimension(other)),
        }
    }

    /// Component order: (psi^0, psi^1, psi^2, psi^3, scalar).
    fn spin0() -> [ComplexMatrix; 4] {
        std::array::from_fn(|mu| {
            let mut m = ComplexMatrix::zeros(5, 5);
            // Row 4 couples the scalar to the vector slot mu; the vector row
            // couples back with the metric sign folded in.
            m[(4, mu)] = Complex64::new(1.0, 0.0);
            m[(mu, 4)] = Complex64::new(if mu == 0 { 1.0 } else { -1.0 }, 0.0);
            m
        })
    }

    /// Component order: (psi^0..psi^3, then the antisymmetric pairs
    /// (01),(02),(03),(12),(13),(23)).
    fn spin1() -> [ComplexMatrix; 4] {
        const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        // Metric with the opposite overall sign absorbs the sign convention
        // of the algebra; entries stay integral either way.
        let g_std = [1.0, -1.0, -1.0, -1.0];
        std::array::from_fn(|mu| {
            let mut m = ComplexMatrix::zeros(10, 10);
            for nu in 0..4 {
                for (ci, &(a, b)) in PAIRS.iter().enumerate() {
                    let mut val = 0.0;
                    if mu == a && nu == b {
                        val += 1.0;
                    }
                    if mu == b && nu == a {
                        val -= 1.0;
                    }
                    if val != 0.0 {
                        m[(nu, 4 + ci)] = Complex64::new(val, 0.0);
                    }
                }
            }
            for (ri, &(a, b)) in PAIRS.iter().enumerate() {
                for nu in 0..4 {
                    let mut val = 0.0;
                    if a == mu && b == nu {
                        val += g_std[a];
                    }
                    if b == mu && a == nu {
                        val -= g_std[b];
                    }
                    if val != 0.0 {
                        m[(4 + ri, nu)] = Complex64::new(val, 0.0);
                    }
                }
            }
            m
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn beta(&self, mu: usize) -> &ComplexMatrix {
        &self.beta[mu]
    }

    /// `b^mu p_mu` with the index lowered by the metric, mirroring `slash`.
    pub fn contract(&self, p: &FourVector) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for mu in 0..4 {
            let lowered = METRIC_DIAGONAL[mu] * p[mu];
            if lowered != 0.0 {
                out = out.add(&self.beta[mu].scale(Complex64::new(lowered, 0.0)));
            }
        }
        out
    }

    /// Max residual over all 64 meson-algebra relations.
    pub fn relation_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for l in 0..4 {
            for m in 0..4 {
                for n in 0..4 {
                    let lhs = (&(&self.beta[l] * &self.beta[m]) * &self.beta[n])
                        .add(&(&(&self.beta[n] * &self.beta[m]) * &self.beta[l]));
                    let g_mn = if m == n { METRIC_DIAGONAL[m] } else { 0.0 };
                    let g_ml = if m == l { METRIC_DIAGONAL[m] } else { 0.0 };
                    let rhs = self.beta[l]
                        .scale(Complex64::new(-g_mn, 0.0))
                        .add(&self.beta[n].scale(Complex64::new(-g_ml, 0.0)));
                    worst = worst.max(lhs.sub(&rhs).max_norm());
                }
            }
        }
        worst
    }
}

/// A pure boost: the vector transformation and its spinor representation.
#[derive(Debug, Clone)]
pub struct LorentzBoost {
    omega: [[f64; 4]; 4],
    spinor_rep: ComplexMatrix,
}

impl LorentzBoost {
    /// Pure boost with the given rapidity along `direction` (normalized
    /// internally). The spinor representation is the series exponential of
    /// `(rapidity / 2) g0 (n . gamma)`.
    pub fn build(
        direction: [f64; 3],
        rapidity: f64,
        basis: &GammaBasis,
    ) -> Result<Self, CliffordError> {
        let norm = (direction[0] * direction[0]
            + direction[1] * direction[1]
            + direction[2] * direction[2])
            .sqrt();
        if norm == 0.0 {
            return Err(CliffordError::ZeroDirection);
        }
        let n = [direction[0] / norm, direction[1] / norm, direction[2] / norm];
        let ch = rapidity.cosh();
        let sh = rapidity.sinh();
        let mut omega = [[0.0; 4]; 4];
        omega[0][0] = ch;
        for j in 0..3 {
            omega[0][j + 1] = sh * n[j];
            omega[j + 1][0] = sh * n[j];
            for k in 0..3 {
                omega[j + 1][k + 1] = (if j == k { 1.0 } else { 0.0 }) + (ch - 1.0) * n[j] * n[k];
            }
        }
        let mut generator = ComplexMatrix::zeros(4, 4);
        for j in 0..3 {
            if n[j] != 0.0 {
                generator = generator.add(
                    &(basis.gamma(0) * basis.gamma(j + 1)).scale(Complex64::new(n[j], 0.0)),
                );
            }
        }
        let spinor_rep = matrix_exp(&generator.scale(Complex64::new(rapidity / 2.0, 0.0)));
        Ok(Self { omega, spinor_rep })
    }

    pub fn identity(basis: &GammaBasis) -> Self {
        Self::build([1.0, 0.0, 0.0], 0.0, basis).expect("nonzero direction")
    }

    pub fn omega(&self) -> &[[f64; 4]; 4] {
        &self.omega
    }

    pub fn spinor_rep(&self) -> &ComplexMatrix {
        &self.spinor_rep
    }

    /// Applies the vector transformation: `(v')^mu = Omega^mu_nu v^nu`.
    pub fn apply(&self, v: &FourVector) -> FourVector {
        let mut out = [0.0; 4];
        for (mu, row) in self.omega.iter().enumerate() {
            out[mu] = (0..4).map(|nu| row[nu] * v[nu]).sum();
        }
        FourVector(out)
    }

    /// Residual of the metric-preservation property Omega^T G Omega = G.
    pub fn metric_residual(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for a in 0..4 {
            for b in 0..4 {
                let mut acc = 0.0;
                for mu in 0..4 {
                    acc += self.omega[mu][a] * METRIC_DIAGONAL[mu] * self.omega[mu][b];
                }
                let target = if a == b { METRIC_DIAGONAL[a] } else { 0.0 };
                worst = worst.max((acc - target).abs());
            }
        }
        worst
    }

    /// Residual of the covariance property
    /// `S^-1 g^mu S = Omega^mu_nu g^nu` (max over mu).
    pub fn covariance_residual(&self, basis: &GammaBasis) -> f64 {
        let inverse = matrix_exp_inverse(&self.spinor_rep);
        let mut worst: f64 = 0.0;
        for mu in 0..4 {
            let lhs = &(&inverse * basis.gamma(mu)) * &self.spinor_rep;
            let mut rhs = ComplexMatrix::zeros(4, 4);
            for nu in 0..4 {
                if self.omega[mu][nu] != 0.0 {
                    rhs = rhs.add(&basis.gamma(nu).scale(Complex64::new(self.omega[mu][nu], 0.0)));
                }
            }
            worst = worst.max(lhs.sub(&rhs).max_norm());
        }
        worst
    }
}

/// Series exponential with scaling and squaring; terms are added until they
/// fall below 1e-16 relative to the running maximum.
fn matrix_exp(a: &ComplexMatrix) -> ComplexMatrix {
    let n = a.rows();
    let norm = a.max_norm();
    let squarings = if norm > 0.5 {
        (norm / 0.5).log2().ceil() as u32
    } else {
        0
    };
    let scaled = a.scale(Complex64::new(1.0 / f64::powi(2.0, squarings as i32), 0.0));
    let mut result = ComplexMatrix::identity(n);
    let mut term = ComplexMatrix::identity(n);
    let mut k = 1.0;
    loop {
        term = (&term * &scaled).scale(Complex64::new(1.0 / k, 0.0));
        result = result.add(&term);
        if term.max_norm() < 1e-16 * result.max_norm().max(1.0) {
            break;
        }
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Inverse of a spinor boost representation. `S = exp(A)` with a traceless
/// generator, so the inverse is the exponential of `-A`; rather than track
/// the generator we solve `S X = I` by least squares, which is exact here.
fn matrix_exp_inverse(s: &ComplexMatrix) -> ComplexMatrix {
    let n = s.rows();
    let mut inv = ComplexMatrix::zeros(n, n);
    for col in 0..n {
        let e = crate::numerics::ComplexVector::basis(n, col);
        let (x, _res) = s.solve_linear_least_squares(&e).expect("square system");
        for row in 0..n {
            inv[(row, col)] = x[row];
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn gamma_relations_hold() {
        let basis = GammaBasis::standard();
        assert!(basis.relation_residual() < 1e-13);
        assert!(basis.gamma5_residual() < 1e-13);
        assert!(basis.hermiticity_residual() < 1e-13);
    }

    #[test]
    fn gamma0_gamma1_anticommute() {
        let basis = GammaBasis::standard();
        let anti = (basis.gamma(0) * basis.gamma(1)).add(&(basis.gamma(1) * basis.gamma(0)));
        assert_eq!(anti.max_norm(), 0.0);
    }

    #[test]
    fn gamma_squares_follow_metric() {
        let basis = GammaBasis::standard();
        let id = ComplexMatrix::identity(4);
        assert!((basis.gamma(0) * basis.gamma(0)).approx_eq(&id, 0.0));
        assert!((basis.gamma(2) * basis.gamma(2))
            .approx_eq(&id.scale(Complex64::new(-1.0, 0.0)), 0.0));
    }

    #[test]
    fn minkowski_dot_signature() {
        let e0 = FourVector::new(1.0, 0.0, 0.0, 0.0);
        let e3 = FourVector::new(0.0, 0.0, 0.0, 1.0);
        let p = FourVector::new(2.0, 0.0, 0.0, 1.0);
        assert_eq!(e0.minkowski_dot(&e0), -1.0);
        assert_eq!(e3.minkowski_dot(&e3), 1.0);
        assert_eq!(p.minkowski_dot(&p), -3.0);
    }

    #[test]
    fn slash_single_components() {
        let basis = GammaBasis::standard();
        let e3 = FourVector::new(0.0, 0.0, 0.0, 1.0);
        assert!(basis.slash(&e3).approx_eq(basis.gamma(3), 0.0));
        let e0 = FourVector::new(1.0, 0.0, 0.0, 0.0);
        assert!(basis
            .slash(&e0)
            .approx_eq(&basis.gamma(0).scale(Complex64::new(-1.0, 0.0)), 0.0));
    }

    #[test]
    fn slash_squares_to_mass() {
        let basis = GammaBasis::standard();
        let p = FourVector::new(2.0, 0.0, 0.0, 1.0);
        let expected = ComplexMatrix::identity(4).scale(Complex64::new(3.0, 0.0));
        let sq = &basis.slash(&p) * &basis.slash(&p);
        assert!(sq.approx_eq(&expected, 1e-13));
    }

    #[test]
    fn slash_is_linear() {
        let basis = GammaBasis::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let a = FourVector::new(rng.random(), rng.random(), rng.random(), rng.random());
            let b = FourVector::new(rng.random(), rng.random(), rng.random(), rng.random());
            let alpha: f64 = rng.random_range(-2.0..2.0);
            let combo = FourVector::new(
                alpha * a[0] + b[0],
                alpha * a[1] + b[1],
                alpha * a[2] + b[2],
                alpha * a[3] + b[3],
            );
            let lhs = basis.slash(&combo);
            let rhs = basis
                .slash(&a)
                .scale(Complex64::new(alpha, 0.0))
                .add(&basis.slash(&b));
            assert!(lhs.approx_eq(&rhs, 1e-12));
        }
    }

    #[test]
    fn beta_relations_hold_for_both_dims() {
        for dim in [5, 10] {
            let basis = BetaBasis::build(dim).unwrap();
            assert!(
                basis.relation_residual() < 1e-13,
                "dim {dim} residual {}",
                basis.relation_residual()
            );
        }
    }

    #[test]
    fn beta_rejects_bad_dimension() {
        assert_eq!(
            BetaBasis::build(7).unwrap_err(),
            CliffordError::UnsupportedDimension(7)
        );
    }

    #[test]
    fn beta0_cubes_to_itself() {
        for dim in [5, 10] {
            let basis = BetaBasis::build(dim).unwrap();
            let b0 = basis.beta(0);
            let cube = &(b0 * b0) * b0;
            assert!(cube.approx_eq(b0, 0.0));
        }
    }

    #[test]
    fn beta_contraction_spectrum_matches_frozen_oracle() {
        // Oracle values computed independently (dense eigensolve of the
        // explicit integer matrices) before this module was written:
        // spectrum of b.p for p = (2,0,0,1), mass sqrt(3), is
        //   dim 5:  {-sqrt3, 0, 0, 0, +sqrt3}
        //   dim 10: {-sqrt3 x3, 0 x4, +sqrt3 x3}
        let p = FourVector::new(2.0, 0.0, 0.0, 1.0);
        let sqrt3 = 3.0_f64.sqrt();
        let expect5 = [-sqrt3, 0.0, 0.0, 0.0, sqrt3];
        let expect10 = [
            -sqrt3, -sqrt3, -sqrt3, 0.0, 0.0, 0.0, 0.0, sqrt3, sqrt3, sqrt3,
        ];
        for (dim, expected) in [(5, &expect5[..]), (10, &expect10[..])] {
            let basis = BetaBasis::build(dim).unwrap();
            let ev = basis.contract(&p).eigenvalues().unwrap();
            assert_eq!(ev.len(), expected.len());
            for (got, want) in ev.iter().zip(expected) {
                assert!(
                    (got - Complex64::new(*want, 0.0)).norm() < 1e-10,
                    "dim {dim}: {got} vs {want}"
                );
            }
        }
    }

    #[test]
    fn boost_identity_at_zero_rapidity() {
        let basis = GammaBasis::standard();
        let boost = LorentzBoost::build([0.0, 0.0, 1.0], 0.0, &basis).unwrap();
        let p = FourVector::new(2.0, 1.0, 0.0, 1.0);
        assert_eq!(boost.apply(&p), p);
        assert!(boost
            .spinor_rep()
            .approx_eq(&ComplexMatrix::identity(4), 1e-15));
    }

    #[test]
    fn boost_rejects_zero_direction() {
        let basis = GammaBasis::standard();
        assert_eq!(
            LorentzBoost::build([0.0, 0.0, 0.0], 1.0, &basis).unwrap_err(),
            CliffordError::ZeroDirection
        );
    }

    #[test]
    fn boost_preserves_metric() {
        let basis = GammaBasis::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let dir = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0f64),
            ];
            if dir.iter().all(|d| d.abs() < 1e-3) {
                continue;
            }
            let zeta = rng.random_range(-2.0..2.0);
            let boost = LorentzBoost::build(dir, zeta, &basis).unwrap();
            assert!(boost.metric_residual() < 1e-12);
        }
    }

    #[test]
    fn boost_covariance() {
        let basis = GammaBasis::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..20 {
            let dir = [
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0f64),
            ];
            if dir.iter().all(|d| d.abs() < 1e-3) {
                continue;
            }
            let zeta = rng.random_range(-2.0..2.0);
            let boost = LorentzBoost::build(dir, zeta, &basis).unwrap();
            assert!(
                boost.covariance_residual(&basis) < 1e-11,
                "residual {}",
                boost.covariance_residual(&basis)
            );
        }
    }

    #[test]
    fn boost_composition_adds_rapidity() {
        let basis = GammaBasis::standard();
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..10 {
            let dir = [rng.random_range(-1.0..1.0), 0.3, rng.random_range(-1.0..1.0f64)];
            let (z1, z2) = (rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5));
            let b1 = LorentzBoost::build(dir, z1, &basis).unwrap();
            let b2 = LorentzBoost::build(dir, z2, &basis).unwrap();
            let b12 = LorentzBoost::build(dir, z1 + z2, &basis).unwrap();
            let mut worst: f64 = 0.0;
            for a in 0..4 {
                for b in 0..4 {
                    let composed: f64 =
                        (0..4).map(|k| b1.omega()[a][k] * b2.omega()[k][b]).sum();
                    worst = worst.max((composed - b12.omega()[a][b]).abs());
                }
            }
            assert!(worst < 1e-11, "composition residual {worst}");
        }
    }
}
