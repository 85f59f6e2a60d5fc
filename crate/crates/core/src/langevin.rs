//! Linearized Langevin model of the decoupled fluctuations (δP_r, δP₂, δA₂).
//!
//! The complex equations
//!
//! ```text
//! δṖ_r = −(γ0 − iδ)δP_r + iΩ δP₂ + f_r
//! δṖ₂  = −(γ + iΔ)δP₂ + iΩ δP_r + igN δA₂ + F₂
//! δȦ₂  = −(κ + iΔ_c)δA₂ + (ig/τ)δP₂ + √(2κ/τ) δA₂^in
//! ```
//!
//! are split into real quadratures with
//! δP_r = δJx + iδJy, δP₂ = X₂ + iY₂ and δA₂ = (δA_p + iδA_q)/2, giving the
//! state x = (δJx, δJy, X₂, Y₂, δA_p, δA_q) and dx/dt = M·x + B·u with inputs
//! u = (δA_p^in, δA_q^in, F₂x, F₂y, f_rx, f_ry). Because the field enters through
//! its quadratures, the atom → field coupling acting on δA_p, δA_q is 2g/τ and
//! the field → atom coupling acting on X₂, Y₂ is gN/2.
//!
//! Inputs are white. The squeezed vacuum has spectra e^{−2r} (squeezed axis)
//! and e^{+2r}; F₂x, F₂y have Nγ/2 and f_rx, f_ry have Nγ0/2; cross-spectra vanish.

use nalgebra::{Complex, SMatrix, Vector2, Vector6};

use crate::error::{Error, Result};
use crate::params::SystemParams;

pub type Matrix6 = SMatrix<f64, 6, 6>;
pub type ComplexMatrix6 = SMatrix<Complex<f64>, 6, 6>;

/// Positions in the state vector.
pub mod state {
    pub const JX: usize = 0;
    pub const JY: usize = 1;
    pub const X2: usize = 2;
    pub const Y2: usize = 3;
    pub const AP: usize = 4;
    pub const AQ: usize = 5;
}

/// Positions in the input vector.
pub mod input {
    pub const AP_IN: usize = 0;
    pub const AQ_IN: usize = 1;
    pub const F2X: usize = 2;
    pub const F2Y: usize = 3;
    pub const FRX: usize = 4;
    pub const FRY: usize = 5;
}

/// Real linear stochastic model of the fluctuations.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearModel {
    pub drift: Matrix6,
    pub input_coupling: Matrix6,
    /// White-noise spectral density matrix of the input vector.
    pub input_psd: Matrix6,
    /// |⟨J_z⟩|/2 = N/4, the coherent-state variance of a transverse spin component.
    pub n_norm: f64,
    pub r_squeeze: f64,
    /// Coupling mirror transmission T = 2κτ.
    pub mirror_t: f64,
}

/// The model after the exact similarity transform that divides the four atomic
/// quadratures by √(N/4). All entries are O(1) in N.
#[derive(Debug, Clone)]
pub(crate) struct Balanced {
    pub drift: Matrix6,
    pub coupling: Matrix6,
    pub input_psd: Matrix6,
    /// x = diag(scale)·x̃.
    pub scale: Vector6<f64>,
}

impl Balanced {
    pub fn diffusion(&self) -> Matrix6 {
        self.coupling * self.input_psd * self.coupling.transpose()
    }

    /// (−iω − M̃)⁻¹·B̃.
    pub fn response(&self, omega: f64) -> Result<ComplexMatrix6> {
        let lhs: ComplexMatrix6 = ComplexMatrix6::from_fn(|i, j| {
            let diag = if i == j { Complex::new(0.0, -omega) } else { Complex::new(0.0, 0.0) };
            diag - Complex::new(self.drift[(i, j)], 0.0)
        });
        let rhs = self.coupling.map(|v| Complex::new(v, 0.0));
        lhs.lu()
            .solve(&rhs)
            .ok_or(Error::Singular { what: "frequency response" })
    }
}

impl LinearModel {
    pub fn eigenvalues(&self) -> Vec<Complex<f64>> {
        // the balanced drift is similar to `drift` and better scaled
        self.balanced().drift.complex_eigenvalues().iter().copied().collect()
    }

    pub fn max_real_part(&self) -> f64 {
        self.eigenvalues()
            .iter()
            .map(|l| l.re)
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn ensure_stable(&self) -> Result<()> {
        let max_real_part = self.max_real_part();
        if max_real_part < 0.0 {
            Ok(())
        } else {
            Err(Error::Unstable { max_real_part })
        }
    }

    /// B·S_u·Bᵀ.
    pub fn diffusion(&self) -> Matrix6 {
        self.input_coupling * self.input_psd * self.input_coupling.transpose()
    }

    pub(crate) fn balanced(&self) -> Balanced {
        let s = self.n_norm.sqrt();
        let scale = Vector6::new(s, s, s, s, 1.0, 1.0);
        let drift = Matrix6::from_fn(|i, j| self.drift[(i, j)] * scale[j] / scale[i]);
        let coupling = Matrix6::from_fn(|i, j| self.input_coupling[(i, j)] / scale[i]);
        Balanced { drift, coupling, input_psd: self.input_psd, scale }
    }
}

pub fn build_model(params: &SystemParams) -> Result<LinearModel> {
    params.validate()?;
    let p = params;
    use input::*;
    use state::*;

    let n = p.n_atoms;
    let field_to_atom = p.g * n / 2.0;
    let atom_to_field = 2.0 * p.g / p.tau;

    let mut m = Matrix6::zeros();
    // δP_r
    m[(JX, JX)] = -p.gamma0;
    m[(JX, JY)] = -p.delta_2ph;
    m[(JX, Y2)] = -p.omega;
    m[(JY, JY)] = -p.gamma0;
    m[(JY, JX)] = p.delta_2ph;
    m[(JY, X2)] = p.omega;
    // δP₂
    m[(X2, X2)] = -p.gamma;
    m[(X2, Y2)] = p.delta_1;
    m[(X2, JY)] = -p.omega;
    m[(X2, AQ)] = -field_to_atom;
    m[(Y2, Y2)] = -p.gamma;
    m[(Y2, X2)] = -p.delta_1;
    m[(Y2, JX)] = p.omega;
    m[(Y2, AP)] = field_to_atom;
    // δA₂
    m[(AP, AP)] = -p.kappa;
    m[(AP, AQ)] = p.delta_c;
    m[(AP, Y2)] = -atom_to_field;
    m[(AQ, AQ)] = -p.kappa;
    m[(AQ, AP)] = -p.delta_c;
    m[(AQ, X2)] = atom_to_field;

    let mut b = Matrix6::zeros();
    let in_coupling = (2.0 * p.kappa / p.tau).sqrt();
    b[(AP, AP_IN)] = in_coupling;
    b[(AQ, AQ_IN)] = in_coupling;
    b[(X2, F2X)] = 1.0;
    b[(Y2, F2Y)] = 1.0;
    b[(JX, FRX)] = 1.0;
    b[(JY, FRY)] = 1.0;

    let mut q = Matrix6::zeros();
    let squeezed = (-2.0 * p.r_squeeze).exp();
    let anti = (2.0 * p.r_squeeze).exp();
    let (sin, cos) = p.squeezed_quadrature_angle.sin_cos();
    q[(AP_IN, AP_IN)] = squeezed * cos * cos + anti * sin * sin;
    q[(AQ_IN, AQ_IN)] = squeezed * sin * sin + anti * cos * cos;
    q[(AP_IN, AQ_IN)] = (squeezed - anti) * sin * cos;
    q[(AQ_IN, AP_IN)] = q[(AP_IN, AQ_IN)];
    q[(F2X, F2X)] = n * p.gamma / 2.0;
    q[(F2Y, F2Y)] = n * p.gamma / 2.0;
    q[(FRX, FRX)] = n * p.gamma0 / 2.0;
    q[(FRY, FRY)] = n * p.gamma0 / 2.0;

    Ok(LinearModel {
        drift: m,
        input_coupling: b,
        input_psd: q,
        n_norm: n / 4.0,
        r_squeeze: p.r_squeeze,
        mirror_t: p.mirror_transmission(),
    })
}

/// Linear map (x, u) ↦ (δA_p^out, δA_q^out) of the one-port input–output
/// relation A^out = √T·A − A^in.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputFieldMap {
    pub state_rows: SMatrix<f64, 2, 6>,
    pub input_rows: SMatrix<f64, 2, 6>,
}

impl OutputFieldMap {
    pub fn with_transmission(mirror_t: f64) -> Self {
        let sqrt_t = mirror_t.sqrt();
        let mut state_rows = SMatrix::<f64, 2, 6>::zeros();
        state_rows[(0, state::AP)] = sqrt_t;
        state_rows[(1, state::AQ)] = sqrt_t;
        let mut input_rows = SMatrix::<f64, 2, 6>::zeros();
        input_rows[(0, input::AP_IN)] = -1.0;
        input_rows[(1, input::AQ_IN)] = -1.0;
        Self { state_rows, input_rows }
    }

    pub fn apply(&self, x: &Vector6<f64>, u: &Vector6<f64>) -> Vector2<f64> {
        self.state_rows * x + self.input_rows * u
    }

    /// Output quadratures per unit input at angular frequency ω.
    pub fn frequency_response(
        &self,
        model: &LinearModel,
        omega: f64,
    ) -> Result<SMatrix<Complex<f64>, 2, 6>> {
        let balanced = model.balanced();
        let response = balanced.response(omega)?;
        // field rows are not rescaled, so C·diag(scale) = C on the rows we use
        let c = SMatrix::<f64, 2, 6>::from_fn(|i, j| self.state_rows[(i, j)] * balanced.scale[j])
            .map(|v| Complex::new(v, 0.0));
        Ok(c * response + self.input_rows.map(|v| Complex::new(v, 0.0)))
    }
}

pub fn output_field_map(model: &LinearModel) -> OutputFieldMap {
    OutputFieldMap::with_transmission(model.mirror_t)
}
