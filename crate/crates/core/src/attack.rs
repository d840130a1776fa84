//! Geometry of the translucent attack and the reliability of the corrected key.
//!
//! Alice's states are `(cos θ, ±sin θ)`. Eve's unitary leaves Bob with angle `θ'` and
//! her probe with angle `α`, constrained by `cos 2θ = cos 2θ' cos 2α`.

use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use crate::error::AttackError;

const UNITARITY_TOL: f64 = 1e-12;

/// Angles of one translucent attack, in radians.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackGeometry {
    theta: f64,
    theta_prime: f64,
    alpha: f64,
}

impl AttackGeometry {
    pub fn new(theta: f64, theta_prime: f64, alpha: f64) -> Result<Self, AttackError> {
        check_theta(theta)?;
        if !(0.0..=theta).contains(&theta_prime) {
            return Err(AttackError::ThetaPrime(theta_prime));
        }
        if !(0.0..FRAC_PI_4).contains(&alpha) {
            return Err(AttackError::Alpha { alpha, theta });
        }
        let g = Self { theta, theta_prime, alpha };
        let residual = g.unitarity_residual();
        if residual > UNITARITY_TOL {
            return Err(AttackError::Unitarity(residual));
        }
        Ok(g)
    }

    /// Solve for `θ'` and `α` from the error rate `p_e = sin²(θ - θ')`.
    pub fn from_error(theta: f64, p_e: f64) -> Result<Self, AttackError> {
        check_theta(theta)?;
        let max = theta.sin().powi(2);
        if !(0.0..=max).contains(&p_e) {
            return Err(AttackError::ErrorRate { p_e, max });
        }
        let gap = p_e.sqrt().asin();
        let theta_prime = (theta - gap).max(0.0);
        // sin²α = sin(θ+θ') sin(θ-θ') / cos 2θ', free of the cancellation in 1 - cos 2α
        let sin2_alpha = (theta + theta_prime).sin() * p_e.sqrt() / (2.0 * theta_prime).cos();
        let alpha = sin2_alpha.sqrt().min(1.0).asin();
        Self::new(theta, theta_prime, alpha)
    }

    /// Solve for `θ'` given Eve's probe angle. Requires `α ≤ θ`.
    pub fn from_alpha(theta: f64, alpha: f64) -> Result<Self, AttackError> {
        check_theta(theta)?;
        if !(0.0..=theta).contains(&alpha) {
            return Err(AttackError::Alpha { alpha, theta });
        }
        let ratio = ((2.0 * theta).cos() / (2.0 * alpha).cos()).min(1.0);
        let theta_prime = (0.5 * ratio.acos()).min(theta);
        Self::new(theta, theta_prime, alpha)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn theta_prime(&self) -> f64 {
        self.theta_prime
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// `cos α`
    pub fn c(&self) -> f64 {
        self.alpha.cos()
    }

    /// `sin α`
    pub fn s(&self) -> f64 {
        self.alpha.sin()
    }

    /// Raw error rate `sin²(θ - θ')`.
    pub fn error_rate(&self) -> f64 {
        (self.theta - self.theta_prime).sin().powi(2)
    }

    pub fn unitarity_residual(&self) -> f64 {
        ((2.0 * self.theta).cos() - (2.0 * self.theta_prime).cos() * (2.0 * self.alpha).cos()).abs()
    }
}

fn check_theta(theta: f64) -> Result<(), AttackError> {
    if theta > 0.0 && theta < FRAC_PI_4 {
        Ok(())
    } else {
        Err(AttackError::Theta(theta))
    }
}

/// Weak-attack approximation `α ≈ (p_e tan² 2θ)^{1/4}`.
pub fn alpha_small_angle(theta: f64, p_e: f64) -> Result<f64, AttackError> {
    check_theta(theta)?;
    if p_e < 0.0 {
        return Err(AttackError::ErrorRate { p_e, max: theta.sin().powi(2) });
    }
    Ok((p_e * (2.0 * theta).tan().powi(2)).powf(0.25))
}

/// How the conclusive-correct probability `p_c` is computed from `θ + θ'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PcConvention {
    /// `p_c = sin²(θ + θ')`
    #[default]
    Squared,
    /// `p_c = sin(θ + θ')`, as printed
    Linear,
    /// `p_c = sin²(θ + θ') / 2`; its weak-attack limit is `2 p_e / sin² 2θ`
    HalfSquared,
}

impl PcConvention {
    pub const ALL: [PcConvention; 3] = [PcConvention::Squared, PcConvention::Linear, PcConvention::HalfSquared];

    pub fn name(&self) -> &'static str {
        match self {
            PcConvention::Squared => "squared",
            PcConvention::Linear => "linear",
            PcConvention::HalfSquared => "half-squared",
        }
    }

    fn conclusive_correct(&self, sum_angle: f64) -> f64 {
        match self {
            PcConvention::Squared => sum_angle.sin().powi(2),
            PcConvention::Linear => sum_angle.sin(),
            PcConvention::HalfSquared => 0.5 * sum_angle.sin().powi(2),
        }
    }
}

impl fmt::Display for PcConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PcConvention {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PcConvention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown p_c convention `{s}` (squared, linear, half-squared)"))
    }
}

/// Error statistics of the sifted key.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorModel {
    pub p_e: f64,
    pub p_c: f64,
    pub p_e_norm: f64,
    pub convention: PcConvention,
}

impl ErrorModel {
    pub fn new(geometry: &AttackGeometry, convention: PcConvention) -> Self {
        let p_e = geometry.error_rate();
        let p_c = convention.conclusive_correct(geometry.theta + geometry.theta_prime);
        let p_e_norm = if p_e == 0.0 { 0.0 } else { p_e / (p_c + p_e) };
        Self { p_e, p_c, p_e_norm, convention }
    }
}

/// Error rate of the sifted key, `p_e / (p_c + p_e)`.
pub fn normalized_error_rate(geometry: &AttackGeometry, convention: PcConvention) -> f64 {
    ErrorModel::new(geometry, convention).p_e_norm
}

/// Weak-attack form `2 cos² 2θ / sin⁴ 2θ · α⁴`.
pub fn normalized_error_rate_small_alpha(theta: f64, alpha: f64) -> f64 {
    let (s2, c2) = (2.0 * theta).sin_cos();
    2.0 * c2 * c2 / s2.powi(4) * alpha.powi(4)
}

/// Probability that a string of `n` bits with independent error rate `q` carries
/// more than one error, i.e. that single-error correction fails.
pub fn failure_probability(n: usize, q: f64) -> f64 {
    assert!((0.0..=1.0).contains(&q), "error rate {q} outside [0, 1]");
    if n < 2 || q == 0.0 {
        return 0.0;
    }
    let nf = n as f64;
    if nf * q >= 1.0 || q >= 0.5 {
        let p0 = (1.0 - q).powi(n as i32);
        let p1 = nf * q * (1.0 - q).powi(n as i32 - 1);
        return (1.0 - p0 - p1).clamp(0.0, 1.0);
    }
    // sum the tail directly to avoid cancellation when n q is small
    let ratio = q / (1.0 - q);
    let mut term = nf * (nf - 1.0) / 2.0 * q * q * (1.0 - q).powi(n as i32 - 2);
    let mut total = 0.0;
    for k in 2..=n {
        total += term;
        if term < total * 1e-18 {
            break;
        }
        let kf = k as f64;
        term *= (nf - kf) / (kf + 1.0) * ratio;
    }
    total
}

/// Leading term `n (n-1) / 2 · q²`.
pub fn failure_probability_leading(n: usize, q: f64) -> f64 {
    let nf = n as f64;
    nf * (nf - 1.0) / 2.0 * q * q
}
