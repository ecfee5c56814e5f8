//! Dense univariate polynomials over the rationals, plus truncated power
//! series. Coefficients are stored in ascending degree with the leading
//! coefficient nonzero (the zero polynomial has an empty coefficient vector).

use crate::rational::{rat_to_f64, rat_to_string, Rat};
use num_complex::Complex64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Polynomial {
    coeffs: Vec<Rat>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(c: Rat, k: usize) -> Self {
        let mut coeffs = vec![Rat::zero(); k + 1];
        coeffs[k] = c;
        Polynomial::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn eval_complex(&self, x: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + rat_to_f64(c);
        }
        acc
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn scale(&self, by: &Rat) -> Self {
        if by.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| c * by).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rat::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { coeffs }
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut acc = Polynomial::one();
        let mut sq = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            k >>= 1;
            if k > 0 {
                sq = sq.mul(&sq);
            }
        }
        acc
    }

    /// Euclidean division: `self = q * div + r` with `deg r < deg div`.
    ///
    /// Panics if `div` is zero.
    pub fn div_rem(&self, div: &Self) -> (Self, Self) {
        let d = div.degree().expect("division by the zero polynomial");
        let lead = div.leading_coeff();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rat::zero(); self.coeffs.len().saturating_sub(d)];
        while rem.len() > d {
            let k = rem.len() - 1 - d;
            let factor = rem.last().unwrap() / &lead;
            if !factor.is_zero() {
                for (i, c) in div.coeffs.iter().enumerate() {
                    rem[k + i] -= &factor * c;
                }
                quot[k] = factor;
            }
            // The top coefficient is now exactly zero.
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
            if rem.len() <= d {
                break;
            }
        }
        (Polynomial::from_coeffs(quot), Polynomial::from_coeffs(rem))
    }

    /// Order of vanishing at `x`, bounded by the degree; `None` for the zero
    /// polynomial (which vanishes to infinite order).
    pub fn vanishing_order(&self, x: &Rat) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut ord = 0;
        while p.eval(x).is_zero() {
            p = p.derivative();
            ord += 1;
        }
        Some(ord)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * Rat::from_integer(i.into()))
            .collect();
        Polynomial::from_coeffs(coeffs)
    }
}

impl std::fmt::Display for Polynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if i == 0 {
                write!(f, "{}", rat_to_string(c))?;
            } else if c.is_one() {
                write!(f, "T^{i}")?;
            } else {
                write!(f, "{}*T^{i}", rat_to_string(c))?;
            }
        }
        Ok(())
    }
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.coeffs.iter().map(rat_to_string))
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw: Vec<String> = Vec::deserialize(d)?;
        let mut coeffs = Vec::with_capacity(raw.len());
        for s in raw {
            coeffs.push(
                crate::rational::rat_from_str(&s)
                    .ok_or_else(|| D::Error::custom(format!("invalid rational: {s:?}")))?,
            );
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// Truncated power series: exactly the coefficients of `T^0 .. T^N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rat>,
}

impl PowerSeries {
    /// Builds a series of truncation order `n` (so `n + 1` coefficients),
    /// padding or cutting as needed.
    pub fn new(mut coeffs: Vec<Rat>, n: usize) -> Self {
        coeffs.resize(n + 1, Rat::zero());
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    /// Cauchy product truncated at the shorter order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let mut coeffs = vec![Rat::zero(); n + 1];
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs }
    }

    /// Partial sums `V_n = sum_{m <= n} Z_m`.
    pub fn partial_sums(&self) -> Vec<Rat> {
        let mut acc = Rat::zero();
        self.coeffs
            .iter()
            .map(|c| {
                acc += c;
                acc.clone()
            })
            .collect()
    }
}
