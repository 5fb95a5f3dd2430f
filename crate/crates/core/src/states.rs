//! Plane-wave modes and particle states: energy-momentum projections, the
//! rotation operator with its eigenprojections, the rotation-eigenstate
//! completion solver, common-axis boost selection and two-particle
//! eigenstate preparation.

use num_complex::Complex64;
use thiserror::Error;

use crate::clifford::{CliffordError, FourVector, GammaBasis, LorentzBoost};
use crate::numerics::{ComplexMatrix, ComplexVector, NumericsError};

/// Relative cross-product margin below which a momentum counts as parallel
/// to the rotation axis; separates the degenerate case from round-off.
pub const PARALLEL_MARGIN: f64 = 1e-8;

/// Residual above which the eigenstate completion system is deemed unsolvable.
pub const SOLVE_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum StateError {
    #[error("momentum must have nonzero energy component")]
    ZeroEnergy,
    #[error("momentum is not timelike: -p.p = {mass_sqr} must be positive")]
    NonTimelike { mass_sqr: f64 },
    #[error("rotation axis must be pure spacelike with unit norm: {detail}")]
    InvalidAxis { detail: String },
    #[error("rotation label {value} is not a half-integer multiple")]
    InvalidLabel { value: f64 },
    #[error("rotation label {value} is not supported here (expected +1/2 or -1/2)")]
    UnsupportedLabel { value: f64 },
    #[error("frame angle {value} outside [0, 2*pi)")]
    InvalidFrameAngle { value: f64 },
    #[error("amplitude spinor must have dimension 4, got {dim}")]
    BadSpinorDimension { dim: usize },
    #[error("spinor is not pure in its propagation branch: projection residual {residual:.3e}")]
    BranchImpure { residual: f64 },
    #[error("projection annihilates the seed spinor")]
    DegenerateSeed,
    #[error(
        "momentum and rotation axis are parallel (p x s = 0), so the eigenstate completion \
         system has no solution; least-squares residual {residual:.6e}"
    )]
    ParallelAxis { residual: f64 },
    #[error("eigenstate completion system unexpectedly inconsistent (residual {residual:.3e})")]
    NoSolution { residual: f64 },
    #[error("rotation label/axis attached to a state whose modes are not eigenvectors (residual {residual:.3e})")]
    NotRotationEigenstate { residual: f64 },
    #[error("state carries a rotation axis but no rotation label")]
    AxisWithoutLabel,
    #[error("boost sweep exhausted without reaching the transverse margin")]
    BoostSearchExhausted,
    #[error(transparent)]
    Clifford(#[from] CliffordError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Propagation branch of a plane-wave mode: the sign in front of the
/// mass-parameter phase, i.e. forward (+) or backward (-) in coordinate
/// time as the evolution parameter increases.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }

    pub fn from_sign(sign: f64) -> Option<Branch> {
        if sign == 1.0 {
            Some(Branch::Plus)
        } else if sign == -1.0 {
            Some(Branch::Minus)
        } else {
            None
        }
    }

    pub fn flip(self) -> Branch {
        match self {
            Branch::Plus => Branch::Minus,
            Branch::Minus => Branch::Plus,
        }
    }
}

/// Mass, energy sign and energy magnitude of a timelike momentum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassShell {
    pub mass: f64,
    pub energy_sign: f64,
    pub energy: f64,
}

/// `m_p = sqrt(-p.p)`, `phi_p = sign(p^0)`, `E_p = |p^0|`.
pub fn mass_and_sign(p: &FourVector) -> Result<MassShell, StateError> {
    if p[0] == 0.0 {
        return Err(StateError::ZeroEnergy);
    }
    let mass_sqr = -p.minkowski_dot(p);
    if mass_sqr <= 0.0 {
        return Err(StateError::NonTimelike { mass_sqr });
    }
    Ok(MassShell {
        mass: mass_sqr.sqrt(),
        energy_sign: p[0].signum(),
        energy: p[0].abs(),
    })
}

/// Energy-momentum projection `L_(+/-)(p) = (m -/+ phi slash(p)) / (2m)`.
pub fn energy_projection(
    p: &FourVector,
    branch: Branch,
    basis: &GammaBasis,
) -> Result<ComplexMatrix, StateError> {
    let shell = mass_and_sign(p)?;
    let slashed = basis.slash(p);
    let factor = -branch.sign() * shell.energy_sign / (2.0 * shell.mass);
    Ok(ComplexMatrix::identity(4)
        .scale(Complex64::new(0.5, 0.0))
        .add(&slashed.scale(Complex64::new(factor, 0.0))))
}

/// Pure spacelike unit four-vector serving as a rotation axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationAxis(FourVector);

impl RotationAxis {
    pub fn new(v: FourVector) -> Result<Self, StateError> {
        if v[0].abs() > 1e-12 {
            return Err(StateError::InvalidAxis {
                detail: format!("time component {} must vanish", v[0]),
            });
        }
        let norm_sqr = v.minkowski_dot(&v);
        if (norm_sqr - 1.0).abs() > 1e-9 {
            return Err(StateError::InvalidAxis {
                detail: format!("s.s = {norm_sqr}, expected 1"),
            });
        }
        Ok(Self(v))
    }

    /// Normalizes a spatial direction into an axis.
    pub fn from_spatial(direction: [f64; 3]) -> Result<Self, StateError> {
        let norm =
            (direction[0].powi(2) + direction[1].powi(2) + direction[2].powi(2)).sqrt();
        if norm == 0.0 {
            return Err(StateError::InvalidAxis {
                detail: "zero direction".into(),
            });
        }
        Ok(Self(FourVector::new(
            0.0,
            direction[0] / norm,
            direction[1] / norm,
            direction[2] / norm,
        )))
    }

    pub fn z() -> Self {
        Self(FourVector::new(0.0, 0.0, 0.0, 1.0))
    }

    pub fn four_vector(&self) -> &FourVector {
        &self.0
    }
}

/// Eigenvalue of the rotation operator attached to a state; half-integer
/// for the four-spinor representation, integer for the tensor ones.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RotationLabel(f64);

/// Whether a label belongs to the half-integer or the integer family.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinClass {
    HalfInteger,
    Integer,
}

impl RotationLabel {
    pub fn new(value: f64) -> Result<Self, StateError> {
        let doubled = 2.0 * value;
        if !value.is_finite() || doubled != doubled.round() {
            return Err(StateError::InvalidLabel { value });
        }
        Ok(Self(value))
    }

    pub fn value(&self) -> f64 {
        self.0
    }

    pub fn spin_class(&self) -> SpinClass {
        if (2.0 * self.0).round() as i64 % 2 == 0 {
            SpinClass::Integer
        } else {
            SpinClass::HalfInteger
        }
    }

    /// The 2*pi rotation factor `exp(2 pi i l)`: -1 for half-integer labels,
    /// +1 for integer labels, computed exactly.
    pub fn full_turn_sign(&self) -> f64 {
        match self.spin_class() {
            SpinClass::HalfInteger => -1.0,
            SpinClass::Integer => 1.0,
        }
    }
}

/// The rotation operator `R(s) = (1/2) g0 slash(s) g5` and its
/// eigenprojections `P = R + 1/2`, `Q = 1 - P`.
#[derive(Debug, Clone)]
pub struct RotationOperator {
    pub r: ComplexMatrix,
    pub p: ComplexMatrix,
    pub q: ComplexMatrix,
}

pub fn rotation_operator(s: &RotationAxis, basis: &GammaBasis) -> RotationOperator {
    let r = (&(basis.gamma(0) * &basis.slash(s.four_vector())) * basis.gamma5())
        .scale(Complex64::new(0.5, 0.0));
    let half = ComplexMatrix::identity(4).scale(Complex64::new(0.5, 0.0));
    let p = r.add(&half);
    let q = ComplexMatrix::identity(4).sub(&p);
    RotationOperator { r, p, q }
}

/// Max-entry norms of `[R(s), L+(p)]` and `[R(s), L-(p)]`; both vanish
/// exactly when the spatial momentum is parallel to the axis.
pub fn commutator_norm(
    s: &RotationAxis,
    p: &FourVector,
    basis: &GammaBasis,
) -> Result<(f64, f64), StateError> {
    let op = rotation_operator(s, basis);
    let plus = energy_projection(p, Branch::Plus, basis)?;
    let minus = energy_projection(p, Branch::Minus, basis)?;
    Ok((
        op.r.commutator(&plus)?.max_norm(),
        op.r.commutator(&minus)?.max_norm(),
    ))
}

/// One plane-wave term: timelike momentum, propagation branch and an
/// amplitude spinor lying in the branch's projection eigenspace.
#[derive(Debug, Clone, PartialEq)]
pub struct PlaneWaveMode {
    momentum: FourVector,
    branch: Branch,
    spinor: ComplexVector,
    shell: MassShell,
}

impl PlaneWaveMode {
    pub fn new(
        momentum: FourVector,
        branch: Branch,
        spinor: ComplexVector,
        basis: &GammaBasis,
    ) -> Result<Self, StateError> {
        if spinor.dim() != 4 {
            return Err(StateError::BadSpinorDimension { dim: spinor.dim() });
        }
        let shell = mass_and_sign(&momentum)?;
        let projection = energy_projection(&momentum, branch, basis)?;
        let residual = projection.mul_vector(&spinor)?.sub(&spinor).norm();
        if residual > 1e-8 * spinor.norm().max(1.0) {
            return Err(StateError::BranchImpure { residual });
        }
        Ok(Self {
            momentum,
            branch,
            spinor,
            shell,
        })
    }

    /// Projects an arbitrary seed spinor onto the branch eigenspace and
    /// normalizes it.
    pub fn project(
        momentum: FourVector,
        branch: Branch,
        seed: &ComplexVector,
        basis: &GammaBasis,
    ) -> Result<Self, StateError> {
        let projection = energy_projection(&momentum, branch, basis)?;
        let projected = projection.mul_vector(seed)?;
        if projected.norm() < 1e-10 {
            return Err(StateError::DegenerateSeed);
        }
        Self::new(momentum, branch, projected.normalized(), basis)
    }

    pub fn momentum(&self) -> &FourVector {
        &self.momentum
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    pub fn spinor(&self) -> &ComplexVector {
        &self.spinor
    }

    pub fn mass_shell(&self) -> &MassShell {
        &self.shell
    }

    /// Phase rate of this mode per unit evolution parameter:
    /// `branch * phi_p * m_p`.
    pub fn phase_rate(&self) -> f64 {
        self.branch.sign() * self.shell.energy_sign * self.shell.mass
    }
}

/// Finite superposition of plane-wave modes, optionally carrying a rotation
/// label, a frame angle and the rotation axis the label refers to.
#[derive(Debug, Clone, PartialEq)]
pub struct ParticleState {
    modes: Vec<(Complex64, PlaneWaveMode)>,
    label: Option<RotationLabel>,
    frame_angle: Option<f64>,
    axis: Option<RotationAxis>,
}

impl ParticleState {
    /// Canonicalizes on construction: modes sharing an identical
    /// (momentum, branch) pair (exact component equality) are folded into a
    /// single mode, and exactly-zero terms are dropped.
    pub fn new(modes: Vec<(Complex64, PlaneWaveMode)>) -> Self {
        let mut canonical: Vec<(Complex64, PlaneWaveMode)> = Vec::with_capacity(modes.len());
        for (coeff, mode) in modes {
            if let Some((_, existing)) = canonical
                .iter_mut()
                .find(|(_, m)| m.momentum == mode.momentum && m.branch == mode.branch)
            {
                // Same plane wave: fold the weighted spinors together.
                let combined = existing
                    .spinor
                    .scale(Complex64::new(1.0, 0.0))
                    .add(&mode.spinor.scale(coeff));
                existing.spinor = combined;
            } else if coeff != Complex64::new(0.0, 0.0) {
                let mut owned = mode;
                owned.spinor = owned.spinor.scale(coeff);
                canonical.push((Complex64::new(1.0, 0.0), owned));
            }
        }
        canonical.retain(|(_, m)| m.spinor.norm() != 0.0);
        canonical.sort_by(|(_, a), (_, b)| {
            let ka = (a.momentum[0], a.momentum[1], a.momentum[2], a.momentum[3], a.branch.sign());
            let kb = (b.momentum[0], b.momentum[1], b.momentum[2], b.momentum[3], b.branch.sign());
            ka.partial_cmp(&kb).expect("finite momenta")
        });
        Self {
            modes: canonical,
            label: None,
            frame_angle: None,
            axis: None,
        }
    }

    pub fn labeled(
        modes: Vec<(Complex64, PlaneWaveMode)>,
        label: RotationLabel,
        frame_angle: f64,
    ) -> Result<Self, StateError> {
        let mut state = Self::new(modes);
        if !(0.0..std::f64::consts::TAU).contains(&frame_angle) {
            return Err(StateError::InvalidFrameAngle { value: frame_angle });
        }
        state.label = Some(label);
        state.frame_angle = Some(frame_angle);
        Ok(state)
    }

    /// Records the rotation axis the label refers to, checking that every
    /// mode spinor actually satisfies `R(s) w = l w`.
    pub fn with_axis(mut self, axis: RotationAxis, basis: &GammaBasis) -> Result<Self, StateError> {
        let label = self.label.ok_or(StateError::AxisWithoutLabel)?;
        let op = rotation_operator(&axis, basis);
        let mut worst: f64 = 0.0;
        for (_, mode) in &self.modes {
            let rw = op.r.mul_vector(&mode.spinor)?;
            let lw = mode.spinor.scale(Complex64::new(label.value(), 0.0));
            worst = worst.max(rw.sub(&lw).norm() / mode.spinor.norm().max(1e-300));
        }
        if worst > 1e-8 {
            return Err(StateError::NotRotationEigenstate { residual: worst });
        }
        self.axis = Some(axis);
        Ok(self)
    }

    /// Same state with the frame angle replaced; used by the exchange
    /// construction where angles stay positional.
    pub fn with_frame_angle(mut self, frame_angle: f64) -> Result<Self, StateError> {
        if !(0.0..std::f64::consts::TAU).contains(&frame_angle) {
            return Err(StateError::InvalidFrameAngle { value: frame_angle });
        }
        self.frame_angle = Some(frame_angle);
        Ok(self)
    }

    pub fn modes(&self) -> &[(Complex64, PlaneWaveMode)] {
        &self.modes
    }

    pub fn label(&self) -> Option<RotationLabel> {
        self.label
    }

    pub fn frame_angle(&self) -> Option<f64> {
        self.frame_angle
    }

    pub fn axis(&self) -> Option<RotationAxis> {
        self.axis
    }

    /// The phase `exp(i l chi)` when both the label and the frame angle are
    /// present, 1 otherwise.
    pub fn frame_phase(&self) -> Complex64 {
        match (self.label, self.frame_angle) {
            (Some(l), Some(chi)) => Complex64::new(0.0, l.value() * chi).exp(),
            _ => Complex64::new(1.0, 0.0),
        }
    }

    /// True when every mode propagates with positive mass sign
    /// (branch equal to the energy sign).
    pub fn is_positive_mass(&self) -> bool {
        self.modes
            .iter()
            .all(|(_, m)| m.branch.sign() == m.shell.energy_sign)
    }

    pub(crate) fn replace_modes(&self, modes: Vec<(Complex64, PlaneWaveMode)>) -> Self {
        let mut state = Self::new(modes);
        state.label = self.label;
        state.frame_angle = self.frame_angle;
        state.axis = self.axis;
        state
    }
}

/// Output of the rotation-eigenstate completion solve.
#[derive(Debug, Clone)]
pub struct PreparedEigenstate {
    /// The full eigenspinor `w = w_plus + w_minus`.
    pub spinor: ComplexVector,
    /// The prescribed branch-plus part.
    pub plus_component: ComplexVector,
    /// The uniquely determined branch-minus part.
    pub minus_component: ComplexVector,
    /// `||R w - l w||`.
    pub rotation_residual: f64,
    /// `||L- w_minus - w_minus||`.
    pub branch_residual: f64,
    /// Least-squares residual of the completion system.
    pub solve_residual: f64,
}

/// Completes a branch-plus spinor into an eigenvector of `R(s)`.
///
/// For `l = +1/2` the minus part solves `Q(s) L- w- = -Q(s) w+`; for
/// `l = -1/2` the roles of `P` and `Q` swap. The minus part is unique
/// whenever the spatial momentum is not parallel to the axis; parallel
/// inputs are still attempted and succeed exactly when the right-hand side
/// vanishes on the relevant eigenspace, otherwise the error reports the
/// irreducible least-squares residual.
pub fn prepare_rotation_eigenstate(
    w_plus: &ComplexVector,
    p: &FourVector,
    s: &RotationAxis,
    label: RotationLabel,
    basis: &GammaBasis,
) -> Result<PreparedEigenstate, StateError> {
    if label.value().abs() != 0.5 {
        return Err(StateError::UnsupportedLabel {
            value: label.value(),
        });
    }
    let plus = energy_projection(p, Branch::Plus, basis)?;
    let minus = energy_projection(p, Branch::Minus, basis)?;
    let purity = plus.mul_vector(w_plus)?.sub(w_plus).norm();
    if purity > 1e-8 * w_plus.norm().max(1.0) {
        return Err(StateError::BranchImpure { residual: purity });
    }
    let op = rotation_operator(s, basis);
    // The projection that must annihilate the completed eigenvector.
    let killer = if label.value() > 0.0 { &op.q } else { &op.p };
    let system = killer.matmul(&minus)?;
    let rhs = killer
        .mul_vector(w_plus)?
        .scale(Complex64::new(-1.0, 0.0));
    let (solution, solve_residual) = system.solve_linear_least_squares(&rhs)?;
    let scale = w_plus.norm().max(1.0);
    if solve_residual > SOLVE_TOL * scale {
        let cross = FourVector::new(0.0, 0.0, 0.0, 0.0);
        let _ = cross;
        let [c1, c2, c3] = p.spatial_cross(s.four_vector());
        let cross_norm = (c1 * c1 + c2 * c2 + c3 * c3).sqrt();
        let rel = cross_norm / (p.spatial_norm().max(1e-300) * 1.0);
        return if rel <= PARALLEL_MARGIN || p.spatial_norm() == 0.0 {
            Err(StateError::ParallelAxis {
                residual: solve_residual,
            })
        } else {
            Err(StateError::NoSolution {
                residual: solve_residual,
            })
        };
    }
    let minus_component = minus.mul_vector(&solution)?;
    let spinor = w_plus.add(&minus_component);
    let rotation_residual = op
        .r
        .mul_vector(&spinor)?
        .sub(&spinor.scale(Complex64::new(label.value(), 0.0)))
        .norm();
    let branch_residual = minus
        .mul_vector(&minus_component)?
        .sub(&minus_component)
        .norm();
    Ok(PreparedEigenstate {
        spinor,
        plus_component: w_plus.clone(),
        minus_component,
        rotation_residual,
        branch_residual,
        solve_residual,
    })
}

/// Builds the two-mode particle state carried by a prepared eigenspinor:
/// the plus part on branch `+`, the minus part (when nonzero) on branch `-`.
pub fn eigenstate_particle(
    prepared: &PreparedEigenstate,
    p: &FourVector,
    s: &RotationAxis,
    label: RotationLabel,
    frame_angle: f64,
    basis: &GammaBasis,
) -> Result<ParticleState, StateError> {
    let one = Complex64::new(1.0, 0.0);
    let mut modes = vec![(
        one,
        PlaneWaveMode::new(*p, Branch::Plus, prepared.plus_component.clone(), basis)?,
    )];
    if prepared.minus_component.norm() > 1e-14 {
        modes.push((
            one,
            PlaneWaveMode::new(*p, Branch::Minus, prepared.minus_component.clone(), basis)?,
        ));
    }
    ParticleState::labeled(modes, label, frame_angle)?.with_axis(*s, basis)
}

/// Picks a boost such that every transformed momentum keeps a transverse
/// component (relative to the z axis) of Euclidean norm at least `epsilon`,
/// then returns that boost together with the z axis of the new frame.
///
/// Deterministic sweep: identity first, then boosts along x with rapidity
/// doubling from asinh(epsilon) up to a cap of 10, then the same ladder
/// along (1,1,0)/sqrt(2).
pub fn choose_common_axis(
    momenta: &[FourVector],
    epsilon: f64,
    basis: &GammaBasis,
) -> Result<(LorentzBoost, RotationAxis), StateError> {
    for p in momenta {
        mass_and_sign(p)?;
    }
    let margin_ok = |boost: &LorentzBoost| {
        momenta.iter().all(|p| {
            let q = boost.apply(p);
            (q[1] * q[1] + q[2] * q[2]).sqrt() >= epsilon
        })
    };
    let identity = LorentzBoost::identity(basis);
    if margin_ok(&identity) {
        return Ok((identity, RotationAxis::z()));
    }
    let sqrt_half = 0.5_f64.sqrt();
    for direction in [[1.0, 0.0, 0.0], [sqrt_half, sqrt_half, 0.0]] {
        let mut rapidity = epsilon.asinh();
        while rapidity <= 10.0 {
            let boost = LorentzBoost::build(direction, rapidity, basis)?;
            if margin_ok(&boost) {
                return Ok((boost, RotationAxis::z()));
            }
            rapidity *= 2.0;
        }
    }
    Err(StateError::BoostSearchExhausted)
}

/// Prepares both particles as `l = +1/2` eigenstates of the same axis, so
/// that the product operator acts as `R x R (wA x wB) = (1/4) (wA x wB)`.
pub fn prepare_two_particle_eigenstate(
    w_a_plus: &ComplexVector,
    p_a: &FourVector,
    w_b_plus: &ComplexVector,
    p_b: &FourVector,
    s: &RotationAxis,
    basis: &GammaBasis,
) -> Result<(PreparedEigenstate, PreparedEigenstate), StateError> {
    let half = RotationLabel::new(0.5)?;
    let a = prepare_rotation_eigenstate(w_a_plus, p_a, s, half, basis)?;
    let b = prepare_rotation_eigenstate(w_b_plus, p_b, s, half, basis)?;
    Ok((a, b))
}
