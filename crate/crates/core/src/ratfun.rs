//! Rational functions in one variable `T` with factored denominators
//! `prod (1 - c T^d)^mult`.
//!
//! This shape is exactly what ultrametric zeta functions produce: every
//! denominator factor has constant term 1, so Taylor expansion at `T = 0` is
//! exact, and coefficient asymptotics come out of partial fractions with no
//! numerical root finding. No automatic cancellation is performed; pole-order
//! queries subtract the numerator's vanishing order instead.

use crate::poly::{Polynomial, PowerSeries};
use crate::rational::{rat_to_string, rational_pow, Rat};
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest common power `T^M` used when regrouping factors of different
/// degrees onto one circle family. Mirrors the bounded-order-of-unity rule
/// for splitting `1 - c T^d` over the roots of `T^d = 1/c`.
pub const MAX_REGROUP_POWER: u32 = 1024;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatFunError {
    #[error("denominator factor must have c != 0 and d >= 1")]
    InvalidFactor,
    #[error("two denominator factors share the base {0} but were not merged")]
    RepeatedBaseMismatch(String),
    #[error("denominator contains a factor with d > 1; split it first")]
    DenominatorNotSplit,
    #[error("regrouping factors needs a common power {0} > {MAX_REGROUP_POWER}")]
    RegroupPowerTooLarge(u64),
}

/// One denominator factor `(1 - c T^d)^mult`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenFactor {
    #[serde(with = "crate::rational::rat_string")]
    pub c: Rat,
    pub d: u32,
    pub mult: u32,
}

impl DenFactor {
    pub fn new(c: Rat, d: u32, mult: u32) -> Self {
        DenFactor { c, d, mult }
    }

    fn expanded(&self) -> Polynomial {
        let base = Polynomial::from_coeffs({
            let mut v = vec![Rat::zero(); self.d as usize + 1];
            v[0] = Rat::one();
            v[self.d as usize] = -self.c.clone();
            v
        });
        base.pow(self.mult)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFun {
    num: Polynomial,
    den: Vec<DenFactor>,
}

impl RatFun {
    /// Builds a rational function, merging factors with equal `(c, d)`.
    pub fn new(num: Polynomial, factors: Vec<DenFactor>) -> Result<Self, RatFunError> {
        let mut merged: Vec<DenFactor> = Vec::new();
        for f in factors {
            if f.c.is_zero() || f.d == 0 {
                return Err(RatFunError::InvalidFactor);
            }
            if f.mult == 0 {
                continue;
            }
            match merged.iter_mut().find(|g| g.c == f.c && g.d == f.d) {
                Some(g) => g.mult += f.mult,
                None => merged.push(f),
            }
        }
        merged.sort_by(|a, b| (a.d, &a.c).cmp(&(b.d, &b.c)));
        Ok(RatFun { num, den: merged })
    }

    pub fn from_poly(num: Polynomial) -> Self {
        RatFun { num, den: vec![] }
    }

    pub fn one() -> Self {
        RatFun::from_poly(Polynomial::one())
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den_factors(&self) -> &[DenFactor] {
        &self.den
    }

    /// Denominator expanded to a single polynomial.
    pub fn den_expanded(&self) -> Polynomial {
        let mut acc = Polynomial::one();
        for f in &self.den {
            acc = acc.mul(&f.expanded());
        }
        acc
    }

    /// Exact Taylor coefficients of `T^0 .. T^n`.
    ///
    /// Every factor expands through the geometric series
    /// `1/(1 - c T^d)^m = sum_k binom(k+m-1, m-1) c^k T^(dk)`.
    pub fn series_expand(&self, n: usize) -> PowerSeries {
        let mut acc = PowerSeries::new(self.num.coeffs().to_vec(), n);
        for f in &self.den {
            acc = acc.mul(&factor_series(f, n));
        }
        acc
    }

    /// Value at a rational point, or `None` on a pole of the denominator.
    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        let mut den = Rat::one();
        for f in &self.den {
            let v = Rat::one() - &f.c * rational_pow_int(t, f.d);
            if v.is_zero() {
                return None;
            }
            den *= v.pow(f.mult as i32);
        }
        Some(self.num.eval(t) / den)
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        let mut den = Complex64::new(1.0, 0.0);
        for f in &self.den {
            let v = Complex64::new(1.0, 0.0)
                - Complex64::new(crate::rational::rat_to_f64(&f.c), 0.0) * t.powu(f.d);
            den *= v.powu(f.mult);
        }
        self.num.eval_complex(t) / den
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut factors = self.den.clone();
        factors.extend(other.den.iter().cloned());
        RatFun::new(self.num.mul(&other.num), factors).expect("valid factors")
    }

    pub fn scale(&self, by: &Rat) -> Self {
        RatFun {
            num: self.num.scale(by),
            den: self.den.clone(),
        }
    }

    /// Sum over the union denominator (factor multiset maximum).
    pub fn add(&self, other: &Self) -> Self {
        let mut union: Vec<DenFactor> = self.den.clone();
        for f in &other.den {
            match union.iter_mut().find(|g| g.c == f.c && g.d == f.d) {
                Some(g) => g.mult = g.mult.max(f.mult),
                None => union.push(f.clone()),
            }
        }
        let cofactor = |own: &[DenFactor]| {
            let mut acc = Polynomial::one();
            for f in &union {
                let have = own
                    .iter()
                    .find(|g| g.c == f.c && g.d == f.d)
                    .map_or(0, |g| g.mult);
                if f.mult > have {
                    acc = acc.mul(
                        &DenFactor::new(f.c.clone(), f.d, f.mult - have).expanded(),
                    );
                }
            }
            acc
        };
        let num = self
            .num
            .mul(&cofactor(&self.den))
            .add(&other.num.mul(&cofactor(&other.den)));
        RatFun::new(num, union).expect("valid factors")
    }

    /// Equality as rational functions: cross-multiplied polynomials agree.
    pub fn equivalent(&self, other: &Self) -> bool {
        self.num.mul(&other.den_expanded()) == other.num.mul(&self.den_expanded())
    }

    /// Pole order of the rational function at `T = 1/c` contributed by the
    /// `d = 1` factor with base `c`, accounting for numerator vanishing.
    pub fn pole_order_at(&self, c: &Rat) -> i64 {
        let mult: i64 = self
            .den
            .iter()
            .filter(|f| f.d == 1 && &f.c == c)
            .map(|f| f.mult as i64)
            .sum();
        if c.is_zero() {
            return 0;
        }
        let at = c.recip();
        let vanish = self.num.vanishing_order(&at).unwrap_or(i64::MAX as usize) as i64;
        mult - vanish
    }

    /// Splits factors `(1 - c T^d)` with even `d` into pairs
    /// `(1 - s T^(d/2))(1 + s T^(d/2))` whenever `s = sqrt(c)` is rational,
    /// repeating until no factor splits further.
    pub fn split_power_factors(&self) -> Self {
        let mut factors: Vec<DenFactor> = Vec::new();
        let mut queue: Vec<DenFactor> = self.den.clone();
        while let Some(f) = queue.pop() {
            if f.d % 2 == 0 && f.c.is_positive() {
                if let Some(s) = rational_pow(&f.c, &crate::rational::rat(1, 2)) {
                    queue.push(DenFactor::new(s.clone(), f.d / 2, f.mult));
                    queue.push(DenFactor::new(-s, f.d / 2, f.mult));
                    continue;
                }
            }
            factors.push(f);
        }
        RatFun::new(self.num.clone(), factors).expect("valid factors")
    }

    /// Partial-fraction decomposition for denominators with `d = 1` factors
    /// only: `self = poly + sum e_{c,i} / (1 - c T)^i`.
    pub fn partial_fractions(&self) -> Result<PartialFractions, RatFunError> {
        for f in &self.den {
            if f.d != 1 {
                return Err(RatFunError::DenominatorNotSplit);
            }
        }
        for (i, f) in self.den.iter().enumerate() {
            if self.den[i + 1..].iter().any(|g| g.c == f.c) {
                return Err(RatFunError::RepeatedBaseMismatch(rat_to_string(&f.c)));
            }
        }
        let den = self.den_expanded();
        let (poly, rem) = if self.den.is_empty() {
            (self.num.clone(), Polynomial::zero())
        } else if self.num.degree() >= den.degree() {
            self.num.div_rem(&den)
        } else {
            (Polynomial::zero(), self.num.clone())
        };

        let mut terms = Vec::new();
        for f in &self.den {
            let m = f.mult as usize;
            // Work at w = 1 - c T, i.e. T = (1 - w)/c. Writing
            // g(T) = self * (1 - cT)^m as a series in w, the coefficient of
            // w^(m-i) is e_{c,i}.
            let t_of_w = Polynomial::from_coeffs(vec![f.c.recip(), -f.c.recip()]);
            let num_w = compose(&rem, &t_of_w);
            let mut den_w = Polynomial::one();
            for g in &self.den {
                if g.c == f.c {
                    continue;
                }
                // 1 - g.c * T  at  T = (1 - w)/c
                let lin = Polynomial::from_coeffs(vec![
                    Rat::one() - &g.c / &f.c,
                    &g.c / &f.c,
                ]);
                den_w = den_w.mul(&lin.pow(g.mult));
            }
            let series = series_divide(&num_w, &den_w, m - 1);
            for i in 1..=m {
                let e = series[m - i].clone();
                if !e.is_zero() {
                    terms.push(PfTerm {
                        c: f.c.clone(),
                        i: i as u32,
                        coeff: e,
                    });
                }
            }
        }
        terms.sort_by(|a, b| (&a.c, a.i).cmp(&(&b.c, b.i)));
        Ok(PartialFractions { poly, terms })
    }

    /// Exact coefficient asymptotics: `Z_n = sum_j c_j^n P_j(n)` for all `n`
    /// past the polynomial part. Requires `d = 1` factors; factors with even
    /// powers are split first when their bases have rational square roots.
    pub fn coefficient_asymptotic(&self) -> Result<CoeffAsymptotic, RatFunError> {
        let split = self.split_power_factors();
        let pf = split.partial_fractions()?;
        let mut terms: Vec<(Rat, Polynomial)> = Vec::new();
        for t in &pf.terms {
            // e/(1-cT)^i contributes e * binom(n+i-1, i-1) c^n.
            let p = binom_poly(t.i as usize - 1).scale(&t.coeff);
            match terms.iter_mut().find(|(c, _)| c == &t.c) {
                Some((_, acc)) => *acc = acc.add(&p),
                None => terms.push((t.c.clone(), p)),
            }
        }
        terms.retain(|(_, p)| !p.is_zero());
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(CoeffAsymptotic {
            terms,
            poly_part: pf.poly,
        })
    }

    /// Rewrites all denominator factors over the common power `T^M`
    /// (`M = lcm of the d's`) and splits the coefficient stream into `M`
    /// residue classes: `Z_{r + kM}` is the `k`-th coefficient of the
    /// returned class-`r` rational function in `S = T^M`.
    ///
    /// This is the exact route to coefficients of functions whose poles sit
    /// on several rays of a circle, with no irrational root bookkeeping.
    pub fn residue_classes(&self) -> Result<ResidueClasses, RatFunError> {
        let mut m: u64 = 1;
        for f in &self.den {
            m = m.lcm(&(f.d as u64));
        }
        if m > MAX_REGROUP_POWER as u64 {
            return Err(RatFunError::RegroupPowerTooLarge(m));
        }
        let m = m as u32;
        // (1 - cT^d) * (sum_{j<M/d} c^j T^(jd)) = 1 - c^(M/d) T^M
        let mut num = self.num.clone();
        let mut grouped: Vec<DenFactor> = Vec::new();
        for f in &self.den {
            let k = m / f.d;
            let big_c = crate::rational::rat_pow_i64(&f.c, k as i64);
            let mut cof = vec![Rat::zero(); ((k - 1) * f.d + 1) as usize];
            let mut cj = Rat::one();
            for j in 0..k {
                cof[(j * f.d) as usize] = cj.clone();
                cj *= &f.c;
            }
            let cof = Polynomial::from_coeffs(cof).pow(f.mult);
            num = num.mul(&cof);
            match grouped.iter_mut().find(|g| g.c == big_c) {
                Some(g) => g.mult += f.mult,
                None => grouped.push(DenFactor::new(big_c, 1, f.mult)),
            }
        }
        // Split the numerator into classes mod M.
        let mut class_nums = vec![Vec::new(); m as usize];
        for (i, c) in num.coeffs().iter().enumerate() {
            let r = i % m as usize;
            let k = i / m as usize;
            let v = &mut class_nums[r];
            if v.len() <= k {
                v.resize(k + 1, Rat::zero());
            }
            v[k] = c.clone();
        }
        let classes = class_nums
            .into_iter()
            .map(|coeffs| {
                RatFun::new(Polynomial::from_coeffs(coeffs), grouped.clone())
                    .expect("valid factors")
            })
            .collect();
        Ok(ResidueClasses { modulus: m, classes })
    }

    /// Coefficients `Z_0 .. Z_n` recovered through residue classes and
    /// partial fractions, independent of the direct series expansion.
    pub fn coefficients_via_partial_fractions(&self, n: usize) -> Result<Vec<Rat>, RatFunError> {
        let rc = self.residue_classes()?;
        let asym: Vec<CoeffAsymptotic> = rc
            .classes
            .iter()
            .map(|c| c.coefficient_asymptotic())
            .collect::<Result<_, _>>()?;
        let m = rc.modulus as usize;
        let mut out = Vec::with_capacity(n + 1);
        for i in 0..=n {
            out.push(asym[i % m].coefficient(i / m));
        }
        Ok(out)
    }
}

fn rational_pow_int(t: &Rat, d: u32) -> Rat {
    crate::rational::rat_pow_i64(t, d as i64)
}

fn factor_series(f: &DenFactor, n: usize) -> PowerSeries {
    let mut coeffs = vec![Rat::zero(); n + 1];
    let m = f.mult as usize;
    let mut ck = Rat::one();
    let mut k = 0usize;
    while (k * f.d as usize) <= n {
        // binom(k + m - 1, m - 1)
        let mut b = Rat::one();
        for j in 1..m {
            b = b * crate::rational::rat_int((k + j) as i64) / crate::rational::rat_int(j as i64);
        }
        coeffs[k * f.d as usize] = b * &ck;
        ck *= &f.c;
        k += 1;
    }
    PowerSeries::new(coeffs, n)
}

/// `binom(n + i, i)` as a polynomial in `n` of degree `i`.
fn binom_poly(i: usize) -> Polynomial {
    let mut p = Polynomial::one();
    for j in 1..=i {
        // (n + j) / j
        let lin = Polynomial::from_coeffs(vec![
            crate::rational::rat(j as i64, j as i64),
            crate::rational::rat(1, j as i64),
        ]);
        p = p.mul(&lin);
    }
    p
}

/// Taylor coefficients of `num/den` at 0 up to order `n`; `den(0)` nonzero.
fn series_divide(num: &Polynomial, den: &Polynomial, n: usize) -> Vec<Rat> {
    let d0 = den.coeff(0);
    assert!(!d0.is_zero(), "series division needs den(0) != 0");
    let mut out = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut acc = num.coeff(k);
        for j in 1..=k {
            acc -= den.coeff(j) * &out[k - j];
        }
        out.push(acc / &d0);
    }
    out
}

/// `p(q(w))` by Horner in the polynomial ring.
fn compose(p: &Polynomial, q: &Polynomial) -> Polynomial {
    let mut acc = Polynomial::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(q).add(&Polynomial::constant(c.clone()));
    }
    acc
}

/// A term `coeff / (1 - c T)^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PfTerm {
    pub c: Rat,
    pub i: u32,
    pub coeff: Rat,
}

#[derive(Debug, Clone)]
pub struct PartialFractions {
    pub poly: Polynomial,
    pub terms: Vec<PfTerm>,
}

impl PartialFractions {
    /// Recombines the decomposition into a single rational function.
    pub fn recombine(&self) -> RatFun {
        let mut acc = RatFun::from_poly(self.poly.clone());
        for t in &self.terms {
            let term = RatFun::new(
                Polynomial::constant(t.coeff.clone()),
                vec![DenFactor::new(t.c.clone(), 1, t.i)],
            )
            .expect("valid factor");
            acc = acc.add(&term);
        }
        acc
    }
}

/// Exact asymptotic form `Z_n = [T^n] poly_part + sum_j c_j^n P_j(n)`.
#[derive(Debug, Clone)]
pub struct CoeffAsymptotic {
    pub terms: Vec<(Rat, Polynomial)>,
    pub poly_part: Polynomial,
}

impl CoeffAsymptotic {
    /// Indices where the closed form may disagree with the true coefficients.
    pub fn exceptional_below(&self) -> usize {
        self.poly_part.degree().map_or(0, |d| d + 1)
    }

    /// Reconstructs `Z_n` (exact for every `n`, including the polynomial part).
    pub fn coefficient(&self, n: usize) -> Rat {
        let mut acc = self.poly_part.coeff(n);
        for (c, p) in &self.terms {
            acc += crate::rational::rat_pow_i64(c, n as i64) * p.eval(&Rat::from_integer(n.into()));
        }
        acc
    }
}

/// Coefficient stream regrouped by residue class modulo `modulus`.
#[derive(Debug, Clone)]
pub struct ResidueClasses {
    pub modulus: u32,
    /// `classes[r]` generates `Z_{r + k*modulus}` as its `S^k` coefficients.
    pub classes: Vec<RatFun>,
}
