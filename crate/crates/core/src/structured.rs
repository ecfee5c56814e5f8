//! Structured symbolic constants of the shape
//! `coeff * q^(q_exp) * (log q)^(logq_exp) * pi^(pi_exp)`.
//!
//! Residues and leading coefficients of local zeta functions live in this
//! family: e.g. the p-adic constant `(1 - q^-1) (log q)^-1 mu(o_F)` or the
//! archimedean `pi` showing up as the volume of the complex unit ball.

use crate::rational::{rat_to_f64, rat_to_string, Rat};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructuredError {
    /// Two q-carrying constants with different bases cannot be multiplied
    /// exactly.
    #[error("base mismatch: {0} vs {1}")]
    BaseMismatch(String, String),
}

/// Exact constant `coeff * q_base^q_exp * (log q_base)^logq_exp * pi^pi_exp`.
///
/// Invariants: `q_base > 0`; a zero coefficient forces all exponents to zero;
/// `q_base = 1` forces `q_exp = logq_exp = 0` (so `log q` never degenerates).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredConstant {
    #[serde(with = "crate::rational::rat_string")]
    pub coeff: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub q_base: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub q_exp: Rat,
    pub logq_exp: i64,
    pub pi_exp: i64,
}

impl StructuredConstant {
    pub fn new(coeff: Rat, q_base: Rat, q_exp: Rat, logq_exp: i64, pi_exp: i64) -> Self {
        assert!(q_base.is_positive(), "q_base must be positive");
        let mut c = StructuredConstant {
            coeff,
            q_base,
            q_exp,
            logq_exp,
            pi_exp,
        };
        c.normalize();
        c
    }

    /// A plain rational, with no transcendental part.
    pub fn from_rat(coeff: Rat) -> Self {
        Self::new(coeff, Rat::one(), Rat::zero(), 0, 0)
    }

    pub fn zero() -> Self {
        Self::from_rat(Rat::zero())
    }

    pub fn one() -> Self {
        Self::from_rat(Rat::one())
    }

    /// `pi^k`.
    pub fn pi_power(k: i64) -> Self {
        Self::new(Rat::one(), Rat::one(), Rat::zero(), 0, k)
    }

    fn normalize(&mut self) {
        if self.coeff.is_zero() {
            self.q_base = Rat::one();
            self.q_exp = Rat::zero();
            self.logq_exp = 0;
            self.pi_exp = 0;
            return;
        }
        if self.q_base.is_one() {
            assert!(
                self.logq_exp == 0,
                "log(1) = 0 cannot carry a nonzero exponent"
            );
            self.q_exp = Rat::zero();
        }
        if self.q_exp.is_zero() && self.logq_exp == 0 {
            // base is irrelevant; keep a canonical one so equality behaves
            self.q_base = Rat::one();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// Exact product. Fails with `BaseMismatch` when both factors carry a
    /// genuine q-dependence with distinct bases.
    pub fn mul(&self, other: &Self) -> Result<Self, StructuredError> {
        let self_base_free = self.q_exp.is_zero() && self.logq_exp == 0;
        let other_base_free = other.q_exp.is_zero() && other.logq_exp == 0;
        let q_base = if self_base_free {
            other.q_base.clone()
        } else if other_base_free || self.q_base == other.q_base {
            self.q_base.clone()
        } else {
            return Err(StructuredError::BaseMismatch(
                rat_to_string(&self.q_base),
                rat_to_string(&other.q_base),
            ));
        };
        Ok(Self::new(
            &self.coeff * &other.coeff,
            q_base,
            &self.q_exp + &other.q_exp,
            self.logq_exp + other.logq_exp,
            self.pi_exp + other.pi_exp,
        ))
    }

    /// Scales the rational coefficient.
    pub fn scale(&self, by: &Rat) -> Self {
        Self::new(
            &self.coeff * by,
            self.q_base.clone(),
            self.q_exp.clone(),
            self.logq_exp,
            self.pi_exp,
        )
    }

    /// Double-precision numeric value.
    pub fn eval(&self) -> f64 {
        if self.coeff.is_zero() {
            return 0.0;
        }
        let q = rat_to_f64(&self.q_base);
        let mut v = rat_to_f64(&self.coeff);
        let qe = rat_to_f64(&self.q_exp);
        if qe != 0.0 {
            v *= q.powf(qe);
        }
        if self.logq_exp != 0 {
            v *= q.ln().powi(self.logq_exp as i32);
        }
        if self.pi_exp != 0 {
            v *= std::f64::consts::PI.powi(self.pi_exp as i32);
        }
        v
    }
}

/// Product of several structured constants.
pub fn structured_mul(constants: &[StructuredConstant]) -> Result<StructuredConstant, StructuredError> {
    let mut acc = StructuredConstant::one();
    for c in constants {
        acc = acc.mul(c)?;
    }
    Ok(acc)
}

/// Numeric value of a product of structured constants.
pub fn structured_eval(constants: &[StructuredConstant]) -> Result<f64, StructuredError> {
    Ok(structured_mul(constants)?.eval())
}

impl std::fmt::Display for StructuredConstant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", rat_to_string(&self.coeff))?;
        if !self.q_exp.is_zero() {
            write!(
                f,
                " * {}^({})",
                rat_to_string(&self.q_base),
                rat_to_string(&self.q_exp)
            )?;
        }
        if self.logq_exp != 0 {
            write!(f, " * log({})^{}", rat_to_string(&self.q_base), self.logq_exp)?;
        }
        if self.pi_exp != 0 {
            write!(f, " * pi^{}", self.pi_exp)?;
        }
        Ok(())
    }
}
