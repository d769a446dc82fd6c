//! Model parameters for the driven Jaynes-Cummings ladder, its
//! counter-rotating extension, and the crossed-field dictionary.
//!
//! Natural units `hbar = c = e = 1` are used everywhere: couplings and drive
//! amplitudes are rates, fields enter through the combinations `sqrt(2 e B)`
//! and `e E`, and lengths are inverse square roots of fields.

use thiserror::Error;

/// Errors from parameter construction and the optics/fields dictionary.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("coupling rate must be finite and >= 0, got {0}")]
    BadCoupling(f64),
    #[error("drive amplitude must be finite and >= 0, got {0}")]
    BadDrive(f64),
    #[error("counter-rotating weight must lie in [0, 1], got {0}")]
    EtaOutOfRange(f64),
    #[error("eta = 1 has no finite bare coupling; construct via ModelParams::from_scaled")]
    SqueezeDiverges,
    #[error("field dictionary requires eta = 0, got eta = {0}")]
    EtaNotZero(f64),
    #[error("magnetic field must be positive and finite, got {0}")]
    BadMagneticField(f64),
    #[error("electric field must be finite and >= 0, got {0}")]
    BadElectricField(f64),
    #[error("wavenumber must be finite, got {0}")]
    BadWavenumber(f64),
}

/// Spectral regime of the driven model.
///
/// `Discrete` below the critical drive (normalizable ladder states),
/// `Continuous` above it (delta-normalizable states, collapsed ladder),
/// `Critical` within tolerance of the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    Discrete,
    Critical,
    Continuous,
}

impl std::fmt::Display for Regime {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Regime::Discrete => write!(f, "discrete"),
            Regime::Critical => write!(f, "critical"),
            Regime::Continuous => write!(f, "continuous"),
        }
    }
}

/// Default tolerance on the drive ratio `2 eps' / (lambda' (1 + eta))` when
/// deciding whether a parameter point sits exactly at the transition.
pub const CRITICAL_RATIO_TOL: f64 = 1e-12;

/// Coupling, drive, and counter-rotating weight of one model instance.
///
/// The bare pair `(lambda, epsilon)` parameterizes the plain ladder
/// `i lambda (a sp - a+ sm) + epsilon (a + a+)`. For `eta > 0` the model of
/// interest carries the rescaled couplings
///
/// ```text
/// lambda' = lambda / sqrt(1 - eta^2)
/// eps'    = epsilon (lambda'/lambda) (1 + eta)
/// ```
///
/// and the unitary squeeze with `tanh z = eta` maps the bare Hamiltonian onto
/// the rescaled one, so both hold the same spectrum. `epsilon_prime` is the
/// drive coefficient that actually multiplies `(a + a+)` in the eta-model;
/// sweeps and critical-drive comparisons are stated on that axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    lambda: f64,
    epsilon: f64,
    eta: f64,
    lambda_prime: f64,
    epsilon_prime: f64,
}

impl ModelParams {
    /// Build from the bare coupling and drive. Requires `eta < 1`: the
    /// rescaled coupling diverges at the Rabi point, which is only reachable
    /// through [`ModelParams::from_scaled`]. A zero coupling is allowed (the
    /// drive-only chain) and puts every nonzero drive above critical.
    pub fn new(lambda: f64, epsilon: f64, eta: f64) -> Result<Self, ModelError> {
        if !(lambda.is_finite() && lambda >= 0.0) {
            return Err(ModelError::BadCoupling(lambda));
        }
        if !(epsilon.is_finite() && epsilon >= 0.0) {
            return Err(ModelError::BadDrive(epsilon));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(ModelError::EtaOutOfRange(eta));
        }
        if eta == 1.0 {
            return Err(ModelError::SqueezeDiverges);
        }
        let scale = (1.0 - eta * eta).sqrt();
        let lambda_prime = lambda / scale;
        let epsilon_prime = epsilon * (1.0 + eta) / scale;
        Ok(Self { lambda, epsilon, eta, lambda_prime, epsilon_prime })
    }

    /// Build from the couplings of the eta-model itself. This is the only
    /// entry point that admits `eta = 1`, where the bare pair degenerates to
    /// zero and every discrete level has already collapsed.
    pub fn from_scaled(lambda_prime: f64, epsilon_prime: f64, eta: f64) -> Result<Self, ModelError> {
        if !(lambda_prime.is_finite() && lambda_prime >= 0.0) {
            return Err(ModelError::BadCoupling(lambda_prime));
        }
        if !(epsilon_prime.is_finite() && epsilon_prime >= 0.0) {
            return Err(ModelError::BadDrive(epsilon_prime));
        }
        if !(0.0..=1.0).contains(&eta) {
            return Err(ModelError::EtaOutOfRange(eta));
        }
        let lambda = lambda_prime * (1.0 - eta * eta).sqrt();
        let epsilon = epsilon_prime * (1.0 - eta * eta).sqrt() / (1.0 + eta);
        Ok(Self { lambda, epsilon, eta, lambda_prime, epsilon_prime })
    }

    /// Bare coupling rate (zero when constructed at `eta = 1`).
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Bare drive amplitude.
    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Counter-rotating weight in `[0, 1]`.
    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Rescaled coupling `lambda / sqrt(1 - eta^2)`.
    pub fn lambda_prime(&self) -> f64 {
        self.lambda_prime
    }

    /// Drive coefficient of the eta-model, `epsilon (lambda'/lambda)(1 + eta)`.
    pub fn epsilon_prime(&self) -> f64 {
        self.epsilon_prime
    }

    /// Ratio of the drive to its critical value, `2 eps' / (lambda' (1 + eta))`.
    /// Equals `2 epsilon / lambda` whenever the bare coupling is nonzero. A
    /// driven chain with zero coupling sits infinitely far above critical; the
    /// fully trivial point (both zero) is classed with the discrete side.
    pub fn drive_ratio(&self) -> f64 {
        if self.lambda > 0.0 {
            2.0 * self.epsilon / self.lambda
        } else if self.lambda_prime > 0.0 {
            2.0 * self.epsilon_prime / (self.lambda_prime * (1.0 + self.eta))
        } else if self.epsilon_prime > 0.0 {
            f64::INFINITY
        } else {
            0.0
        }
    }

    /// Same parameters with the scaled drive replaced by `epsilon_prime`.
    pub fn with_scaled_drive(&self, epsilon_prime: f64) -> Result<Self, ModelError> {
        Self::from_scaled(self.lambda_prime, epsilon_prime, self.eta)
    }
}

/// Squeeze parameter `z` linking the bare ladder to the eta-model:
/// `cosh z = lambda'/lambda`, `sinh z = eta lambda'/lambda`, hence
/// `tanh z = eta`. Fails at `eta = 1` where `z` diverges.
pub fn squeeze_parameter(params: &ModelParams) -> Result<f64, ModelError> {
    if params.eta == 1.0 {
        return Err(ModelError::SqueezeDiverges);
    }
    Ok(params.eta.atanh())
}

/// Critical value of the scaled drive, `lambda' (1 + eta) / 2`. The spectrum
/// is discrete for `epsilon_prime` below this value and continuous above it;
/// at `eta = 0` it reduces to `lambda / 2`.
pub fn critical_drive(params: &ModelParams) -> f64 {
    params.lambda_prime * (1.0 + params.eta) / 2.0
}

/// Classify the spectral regime with the default ratio tolerance.
pub fn classify_regime(params: &ModelParams) -> Regime {
    classify_regime_with_tol(params, CRITICAL_RATIO_TOL)
}

/// Classify the spectral regime, calling the point critical when the drive
/// ratio sits within `tol` of one.
pub fn classify_regime_with_tol(params: &ModelParams, tol: f64) -> Regime {
    let r = params.drive_ratio();
    if (r - 1.0).abs() <= tol {
        Regime::Critical
    } else if r < 1.0 {
        Regime::Discrete
    } else {
        Regime::Continuous
    }
}

/// Static crossed fields `E e1` and `-B e3` seen by a massless charge, with
/// the derived velocity ratios and field lengths. Carries the conserved
/// transverse wavenumbers `k2` (along the drift) and `k3` (along `B`) of the
/// plane-wave factor; both default to zero, which is the sector the optical
/// model maps onto.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConfig {
    e_field: f64,
    b_field: f64,
    k2: f64,
    k3: f64,
}

impl FieldConfig {
    pub fn new(e_field: f64, b_field: f64) -> Result<Self, ModelError> {
        Self::with_wavenumbers(e_field, b_field, 0.0, 0.0)
    }

    pub fn with_wavenumbers(
        e_field: f64,
        b_field: f64,
        k2: f64,
        k3: f64,
    ) -> Result<Self, ModelError> {
        if !(b_field.is_finite() && b_field > 0.0) {
            return Err(ModelError::BadMagneticField(b_field));
        }
        if !(e_field.is_finite() && e_field >= 0.0) {
            return Err(ModelError::BadElectricField(e_field));
        }
        if !k2.is_finite() {
            return Err(ModelError::BadWavenumber(k2));
        }
        if !k3.is_finite() {
            return Err(ModelError::BadWavenumber(k3));
        }
        Ok(Self { e_field, b_field, k2, k3 })
    }

    pub fn e_field(&self) -> f64 {
        self.e_field
    }

    pub fn b_field(&self) -> f64 {
        self.b_field
    }

    pub fn k2(&self) -> f64 {
        self.k2
    }

    pub fn k3(&self) -> f64 {
        self.k3
    }

    /// Drift speed `E/B` of the boost that removes the electric field.
    /// Meaningful (subluminal) on the magnetic-dominated side.
    pub fn beta_b(&self) -> f64 {
        self.e_field / self.b_field
    }

    /// Drift speed `B/E` of the boost that removes the magnetic field.
    pub fn beta_e(&self) -> f64 {
        self.b_field / self.e_field
    }

    /// Magnetic length `1/sqrt(B)`.
    pub fn l_b(&self) -> f64 {
        1.0 / self.b_field.sqrt()
    }

    /// Electric length `1/sqrt(E)`. Infinite when the electric field is off.
    pub fn l_e(&self) -> f64 {
        1.0 / self.e_field.sqrt()
    }

    /// Which field dominates, with the same ratio tolerance used for the
    /// optics-side classification.
    pub fn regime(&self) -> Regime {
        let r = self.beta_b();
        if (r - 1.0).abs() <= CRITICAL_RATIO_TOL {
            Regime::Critical
        } else if r < 1.0 {
            Regime::Discrete
        } else {
            Regime::Continuous
        }
    }
}

/// Length scale built from the field invariant `B^2 - E^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InvariantLength {
    /// `(B^2 - E^2)^(-1/4)`, real on the magnetic-dominated side.
    Real(f64),
    /// `B = E`: the invariant vanishes and the length diverges.
    Critical,
    /// Electric-dominated side; carries the modulus `(E^2 - B^2)^(-1/4)`.
    Complex(f64),
}

/// Invariant length `(B^2 - E^2)^(-1/4)`. Real exactly when the spectrum is
/// discrete, divergent at the transition, and complex (modulus reported)
/// beyond it.
pub fn invariant_length(fields: &FieldConfig) -> InvariantLength {
    match fields.regime() {
        Regime::Discrete => {
            let inv = fields.b_field * fields.b_field - fields.e_field * fields.e_field;
            InvariantLength::Real(inv.powf(-0.25))
        }
        Regime::Critical => InvariantLength::Critical,
        Regime::Continuous => {
            let inv = fields.e_field * fields.e_field - fields.b_field * fields.b_field;
            InvariantLength::Complex(inv.powf(-0.25))
        }
    }
}

/// Translate a plain-ladder parameter point (`eta = 0`) into the crossed-field
/// configuration with the same spectrum:
///
/// ```text
/// lambda = sqrt(2 e B) l_B / l_B = sqrt(2 B),   epsilon = E / sqrt(2 B)
/// ```
///
/// so `B = lambda^2 / 2` and `E = epsilon lambda`. The drive ratio
/// `2 epsilon / lambda` becomes the field ratio `E / B`.
pub fn optics_to_fields(params: &ModelParams) -> Result<FieldConfig, ModelError> {
    if params.eta != 0.0 {
        return Err(ModelError::EtaNotZero(params.eta));
    }
    let b = params.lambda * params.lambda / 2.0;
    let e = params.epsilon * params.lambda;
    FieldConfig::new(e, b)
}

/// Inverse of [`optics_to_fields`]: `lambda = sqrt(2 B)`, `epsilon = E / lambda`.
pub fn fields_to_optics(fields: &FieldConfig) -> Result<ModelParams, ModelError> {
    let lambda = (2.0 * fields.b_field).sqrt();
    ModelParams::new(lambda, fields.e_field / lambda, 0.0)
}
