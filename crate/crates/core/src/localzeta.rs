//! Local fields, their zeta functions, and one-dimensional Mellin transforms.
//!
//! For a local field `F` of characteristic zero the constant
//!
//! ```text
//!   c_F = mu([-1,1])                      F = R
//!         mu(B(0,1))                      F = C
//!         (1 - q^-1) (log q)^-1 mu(o_F)   F ultrametric
//! ```
//!
//! is the residue at `s = 0` of `zeta_F(s) = int_{|x| <= 1} |x|^(s-1) dx`.
//! Ultrametric zeta functions are exact rational functions of `T = q^(-s)`;
//! archimedean ones are `c_F / s`. Default Haar normalizations are Lebesgue:
//! `mu(o_F) = 1`, `mu([-1,1]) = 2`, `mu(B(0,1)) = pi` (the complex absolute
//! value being the square of the modulus).

use crate::arith::is_prime_power;
use crate::poly::Polynomial;
use crate::quadrature::{self, QuadratureError, QuadratureSettings};
use crate::rational::{rat_int, Rat};
use crate::ratfun::{DenFactor, RatFun};
use crate::structured::{StructuredConstant, StructuredError};
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LocalFieldError {
    #[error("q = {0} is not a prime power >= 2")]
    NotAPrimePower(u64),
    #[error("Haar measure must be positive")]
    NonPositiveMeasure,
    #[error(transparent)]
    Structured(#[from] StructuredError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LocalField {
    /// The real field; `mu_interval` = mu([-1, 1]).
    Real { mu_interval: Rat },
    /// The complex field; `mu_ball_over_pi` = mu(B(0,1)) / pi.
    Complex { mu_ball_over_pi: Rat },
    /// A p-adic field with residue cardinality `q` and `mu0` = mu(o_F).
    Padic { q: u64, mu0: Rat },
}

impl LocalField {
    pub fn real() -> Self {
        LocalField::Real {
            mu_interval: rat_int(2),
        }
    }

    pub fn complex() -> Self {
        LocalField::Complex {
            mu_ball_over_pi: Rat::one(),
        }
    }

    pub fn padic(q: u64) -> Result<Self, LocalFieldError> {
        Self::padic_with_measure(q, Rat::one())
    }

    pub fn padic_with_measure(q: u64, mu0: Rat) -> Result<Self, LocalFieldError> {
        if !is_prime_power(q) {
            return Err(LocalFieldError::NotAPrimePower(q));
        }
        if !mu0.is_positive() {
            return Err(LocalFieldError::NonPositiveMeasure);
        }
        Ok(LocalField::Padic { q, mu0 })
    }
}

/// The constant `c_F`.
pub fn c_constant(field: &LocalField) -> StructuredConstant {
    match field {
        LocalField::Real { mu_interval } => StructuredConstant::from_rat(mu_interval.clone()),
        LocalField::Complex { mu_ball_over_pi } => StructuredConstant::new(
            mu_ball_over_pi.clone(),
            Rat::one(),
            Rat::zero(),
            0,
            1,
        ),
        LocalField::Padic { q, mu0 } => {
            let qr = rat_int(*q as i64);
            StructuredConstant::new(
                (Rat::one() - qr.recip()) * mu0,
                qr,
                Rat::zero(),
                -1,
                0,
            )
        }
    }
}

/// Product of `c_constant` over a family of fields (residue-measure
/// normalization of a stratum).
pub fn residue_measure_norm(fields: &[LocalField]) -> Result<StructuredConstant, LocalFieldError> {
    assert!(!fields.is_empty(), "need at least one local field");
    let mut acc = StructuredConstant::one();
    for f in fields {
        acc = acc.mul(&c_constant(f))?;
    }
    Ok(acc)
}

/// Closed form of the local zeta function.
#[derive(Debug, Clone)]
pub enum LocalZeta {
    /// `c_F / s`.
    Archimedean { c: StructuredConstant },
    /// `mu0 (1 - q^-1) / (1 - T)` with `T = q^(-s)`.
    Padic { ratfun: RatFun, q: u64 },
}

impl LocalZeta {
    pub fn eval(&self, s: f64) -> f64 {
        match self {
            LocalZeta::Archimedean { c } => c.eval() / s,
            LocalZeta::Padic { ratfun, q } => {
                let t = (*q as f64).powf(-s);
                ratfun.eval_complex(Complex64::new(t, 0.0)).re
            }
        }
    }

    pub fn eval_complex(&self, s: Complex64) -> Complex64 {
        match self {
            LocalZeta::Archimedean { c } => Complex64::new(c.eval(), 0.0) / s,
            LocalZeta::Padic { ratfun, q } => {
                let t = (-s * (*q as f64).ln()).exp();
                ratfun.eval_complex(t)
            }
        }
    }

    /// Residue at `s = 0`, computed exactly.
    ///
    /// For the ultrametric form `mu0 (1-q^-1)/(1-T)`: near `s = 0` one has
    /// `1 - q^(-s) = s log q + O(s^2)`, so the residue is the value of
    /// `num/(pole cofactor)` at `T = 1` times `(log q)^-1` per pole order.
    pub fn residue_at_zero(&self) -> StructuredConstant {
        match self {
            LocalZeta::Archimedean { c } => c.clone(),
            LocalZeta::Padic { ratfun, q } => {
                let one = Rat::one();
                assert_eq!(
                    ratfun.pole_order_at(&one),
                    1,
                    "local zeta has a simple pole at s = 0"
                );
                // lim s * Z = num(1) / prod_{other factors}(1 - c) / log q
                let mut cof = Rat::one();
                for f in ratfun.den_factors() {
                    if f.d == 1 && f.c.is_one() {
                        continue;
                    }
                    let v = Rat::one() - &f.c;
                    cof *= crate::rational::rat_pow_i64(&v, f.mult as i64);
                }
                let coeff = ratfun.num().eval(&one) / cof;
                StructuredConstant::new(coeff, rat_int(*q as i64), Rat::zero(), -1, 0)
            }
        }
    }
}

/// The local zeta function of `F`.
pub fn zeta_local(field: &LocalField) -> LocalZeta {
    match field {
        LocalField::Real { .. } | LocalField::Complex { .. } => LocalZeta::Archimedean {
            c: c_constant(field),
        },
        LocalField::Padic { q, mu0 } => {
            let qr = rat_int(*q as i64);
            let num = Polynomial::constant((Rat::one() - qr.recip()) * mu0);
            let ratfun = RatFun::new(num, vec![DenFactor::new(Rat::one(), 1, 1)])
                .expect("valid factor");
            LocalZeta::Padic { ratfun, q: *q }
        }
    }
}

/// A sampled real function with declared compact support.
pub struct SampledFunction<'a> {
    pub f: &'a dyn Fn(f64) -> f64,
    /// Support is contained in `[-support, support]`.
    pub support: f64,
}

/// Numeric Mellin transform `int phi(x) |x|^(s-1) dx` for `Re(s) > 0`.
///
/// The singular head `int_0^eps |x|^(s-1)` is handled in closed form against
/// `phi(0)`, leaving a quadrature-friendly remainder.
pub fn mellin_numeric(
    phi: &SampledFunction<'_>,
    s: Complex64,
    settings: &QuadratureSettings,
) -> Result<Complex64, QuadratureError> {
    assert!(s.re > 0.0, "Mellin transform needs Re(s) > 0");
    let x_max = phi.support;
    let eps = 1e-3_f64.min(x_max);
    let f = phi.f;
    let phi0 = f(0.0);
    // int_{eps <= |x| <= X} phi(x)|x|^{s-1} dx, folded onto (0, X]
    let outer = quadrature::integrate(
        |x| (f(x) + f(-x)) * Complex64::new(x, 0.0).powc(s - 1.0),
        eps,
        x_max,
        settings,
    )?;
    // head: 2 phi(0) eps^s / s, plus the smooth correction (phi(x)-phi(0))
    let head = 2.0 * phi0 * Complex64::new(eps, 0.0).powc(s) / s;
    let corr = quadrature::integrate(
        |x| (f(x) + f(-x) - 2.0 * phi0) * Complex64::new(x, 0.0).powc(s - 1.0),
        0.0,
        eps,
        settings,
    )?;
    Ok(outer + head + corr)
}

/// Result of the residue check at `s = 0`.
#[derive(Debug, Clone, Copy)]
pub struct ResidueCheck {
    /// `s * M(phi)(s)` at `s = 0.1, 0.05, 0.01`.
    pub values: [f64; 3],
    /// Linear extrapolation to `s = 0` from the two smallest samples;
    /// `s * M(s)` approaches its limit linearly in `s`.
    pub limit: f64,
}

/// Checks `lim_{s -> 0} s * M(phi)(s) = c_F * phi(0)` by evaluating
/// `s * M(s)` at `s = 0.1, 0.05, 0.01` and extrapolating to `s = 0`.
pub fn mellin_residue_check(
    phi: &SampledFunction<'_>,
    settings: &QuadratureSettings,
) -> Result<ResidueCheck, QuadratureError> {
    let samples = [0.1, 0.05, 0.01];
    let mut values = [0.0; 3];
    for (i, s) in samples.into_iter().enumerate() {
        let m = mellin_numeric(phi, Complex64::new(s, 0.0), settings)?;
        values[i] = (m * s).re;
    }
    let (s1, s2) = (samples[1], samples[2]);
    let limit = values[2] + (values[2] - values[1]) * s2 / (s1 - s2);
    Ok(ResidueCheck { values, limit })
}

/// Numeric integral of a decaying density over the real line.
pub fn integral_over_r<F: FnMut(f64) -> f64>(
    density: F,
    tolerance: f64,
) -> Result<f64, QuadratureError> {
    let settings = QuadratureSettings {
        abs_tol: tolerance,
        ..QuadratureSettings::default()
    };
    quadrature::integrate_over_r(density, &settings)
}
