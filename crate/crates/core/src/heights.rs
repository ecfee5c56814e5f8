//! Heights on projective space over Q and the global abscissa bookkeeping
//! that turns divisor multiplicities into volume exponents.
//!
//! The exponential height of a rational point is computed on the coprime
//! integer representative: `H([x_0 : ... : x_n]) = max |x_i|`, which equals
//! the product over all places of `max |x_i|_v` by the product formula.

use crate::rational::{rat_int, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum HeightError {
    #[error("projective point must have a nonzero coordinate")]
    ZeroPoint,
    #[error("no components with both multiplicities declared")]
    EmptySupport,
    #[error("log-discrepancy data is inconsistent at component {0}: 1 - rho != (d - n) lambda + eps")]
    InconsistentDiscrepancies(usize),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
}

/// A rational point of projective space, up to scaling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjPoint {
    pub coords: Vec<Rat>,
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<Self, HeightError> {
        if coords.iter().all(Zero::is_zero) {
            return Err(HeightError::ZeroPoint);
        }
        Ok(ProjPoint { coords })
    }

    /// The coprime integer representative (primitive vector).
    pub fn primitive_integer_coords(&self) -> Vec<BigInt> {
        let mut lcm = BigInt::one();
        for c in &self.coords {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self
            .coords
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let mut gcd = BigInt::zero();
        for x in &ints {
            gcd = gcd.gcd(x);
        }
        if gcd.is_zero() || gcd.is_one() {
            return ints;
        }
        ints.iter().map(|x| x / &gcd).collect()
    }
}

/// Exponential height `max |x_i|` on the coprime integer representative.
pub fn height_pn(p: &ProjPoint) -> Rat {
    let ints = p.primitive_integer_coords();
    let max = ints
        .iter()
        .map(|x| x.abs())
        .max()
        .expect("nonempty coordinates");
    Rat::from_integer(max)
}

/// `prod_v max_i |x_i|_v` computed place by place over the primes dividing
/// the data (plus the archimedean place); used as an independent check of
/// the product formula.
pub fn height_by_places(p: &ProjPoint) -> Rat {
    let ints = p.primitive_integer_coords();
    // archimedean factor
    let mut h = Rat::from_integer(ints.iter().map(|x| x.abs()).max().unwrap());
    // finite places: |x|_p = p^(-v_p(x)); the max over coordinates is
    // p^(-min v_p). For a primitive vector some coordinate is a p-unit,
    // so min v_p = 0 and every finite factor is 1.
    let mut support = BTreeSet::new();
    for x in &ints {
        if x.is_zero() {
            continue;
        }
        let mut n = x.abs();
        let mut d = BigInt::from(2u8);
        while &d * &d <= n {
            if (&n % &d).is_zero() {
                support.insert(d.clone());
                while (&n % &d).is_zero() {
                    n /= &d;
                }
            }
            d += 1u8;
        }
        if n > BigInt::one() {
            support.insert(n);
        }
    }
    for prime in support {
        let min_val = ints
            .iter()
            .filter(|x| !x.is_zero())
            .map(|x| {
                let mut v = 0i64;
                let mut n = x.abs();
                while (&n % &prime).is_zero() {
                    n /= &prime;
                    v += 1;
                }
                v
            })
            .min()
            .unwrap();
        // p^(-min_val)
        let pr = Rat::from_integer(prime);
        h *= crate::rational::rat_pow_i64(&pr, -min_val);
    }
    h
}

/// Divisor data: per component, the multiplicity `d` in the boundary `D`,
/// the multiplicity `lambda` in the polarization `L`, and optional extras.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorWeights {
    pub components: Vec<ComponentWeights>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComponentWeights {
    pub id: String,
    #[serde(with = "crate::rational::rat_string")]
    pub d: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub lambda: Rat,
    #[serde(default)]
    pub has_point: bool,
}

/// Global abscissa `a = max d/lambda` and multiplicity `b = #argmax`.
pub fn global_abscissa(w: &DivisorWeights) -> Result<(Rat, usize), HeightError> {
    if w.components.is_empty() {
        return Err(HeightError::EmptySupport);
    }
    for c in &w.components {
        if !c.lambda.is_positive() || !c.d.is_positive() {
            return Err(HeightError::DegenerateInput(format!(
                "component {:?} needs positive d and lambda",
                c.id
            )));
        }
    }
    let ratios: Vec<Rat> = w.components.iter().map(|c| &c.d / &c.lambda).collect();
    let a = ratios.iter().max().unwrap().clone();
    let b = ratios.iter().filter(|r| **r == a).count();
    Ok((a, b))
}

/// Local abscissa `sigma = max (d-1)/lambda` over components with local
/// points; `None` encodes a compact point set (sigma = -infinity).
pub fn local_abscissa(w: &DivisorWeights) -> (Option<Rat>, BTreeSet<String>) {
    let mut sigma: Option<Rat> = None;
    for c in &w.components {
        if !c.has_point {
            continue;
        }
        let r = (&c.d - Rat::one()) / &c.lambda;
        sigma = Some(match sigma {
            None => r,
            Some(s) => s.max(r),
        });
    }
    let critical = match &sigma {
        None => BTreeSet::new(),
        Some(s) => w
            .components
            .iter()
            .filter(|c| c.has_point && &(&c.d - Rat::one()) / &c.lambda == *s)
            .map(|c| c.id.clone())
            .collect(),
    };
    (sigma, critical)
}

/// Log-discrepancy abscissa for a resolved pair: `a = max (rho_a - 1)/lambda_a`
/// over components with real points, `b = #argmax`.
///
/// When log-discrepancies `eps` are supplied along with the dimension gap
/// `n - d`, the identity `1 - rho = (d - n) lambda + eps` is enforced and
/// the equivalent formula `a = (n - d) + max (-eps/lambda)` is used.
pub fn log_discrepancy_abscissa(
    rho: &[Rat],
    lambda: &[Rat],
    flags: &[bool],
    eps_data: Option<(&[Rat], i64)>,
) -> Result<(Rat, usize), HeightError> {
    assert_eq!(rho.len(), lambda.len());
    assert_eq!(rho.len(), flags.len());
    if let Some((eps, n_minus_d)) = eps_data {
        assert_eq!(eps.len(), rho.len());
        for i in 0..rho.len() {
            // 1 - rho_i = (d - n) lambda_i + eps_i
            let lhs = Rat::one() - &rho[i];
            let rhs = rat_int(-n_minus_d) * &lambda[i] + &eps[i];
            if lhs != rhs {
                return Err(HeightError::InconsistentDiscrepancies(i));
            }
        }
    }
    let mut ratios = Vec::new();
    for i in 0..rho.len() {
        if !flags[i] {
            continue;
        }
        if !lambda[i].is_positive() {
            return Err(HeightError::DegenerateInput(format!(
                "lambda[{i}] must be positive"
            )));
        }
        ratios.push((&rho[i] - Rat::one()) / &lambda[i]);
    }
    if ratios.is_empty() {
        return Err(HeightError::EmptySupport);
    }
    let a = ratios.iter().max().unwrap().clone();
    let b = ratios.iter().filter(|r| **r == a).count();
    Ok((a, b))
}

/// Assembles the global leading constant
/// `integral * prod lambda^-1 / (a (b-1)!)`.
pub fn global_leading_constant(
    a: &Rat,
    b: usize,
    lambda_critical: &[Rat],
    integral: f64,
) -> Result<f64, HeightError> {
    if !a.is_positive() || b < 1 || !(integral > 0.0) {
        return Err(HeightError::DegenerateInput(
            "need a > 0, b >= 1, integral > 0".into(),
        ));
    }
    let mut v = integral / crate::rational::rat_to_f64(a);
    for l in lambda_critical {
        v /= crate::rational::rat_to_f64(l);
    }
    for k in 1..b {
        v /= k as f64;
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn point(coords: &[(i64, i64)]) -> ProjPoint {
        ProjPoint::new(coords.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    #[test]
    fn basic_heights() {
        assert_eq!(height_pn(&point(&[(1, 1), (1, 1)])), rat_int(1));
        // [2/3 : 1] = [2 : 3] has height 3
        assert_eq!(height_pn(&point(&[(2, 3), (1, 1)])), rat_int(3));
        // [0 : 5] = [0 : 1]
        assert_eq!(height_pn(&point(&[(0, 1), (5, 1)])), rat_int(1));
        assert!(ProjPoint::new(vec![Rat::zero(), Rat::zero()]).is_err());
    }

    #[test]
    fn product_formula_on_random_points() {
        // 100 deterministic pseudo-random rational points
        let mut state: u64 = 0xFEEDFACE;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64 % 40) - 20
        };
        let mut checked = 0;
        while checked < 100 {
            let coords: Vec<Rat> = (0..3)
                .map(|_| {
                    let n = next();
                    let d = 1 + next().abs();
                    rat(n, d)
                })
                .collect();
            if coords.iter().all(Zero::is_zero) {
                continue;
            }
            let p = ProjPoint::new(coords).unwrap();
            assert_eq!(height_pn(&p), height_by_places(&p));
            checked += 1;
        }
    }

    #[test]
    fn height_lower_bound() {
        // H >= 1 always; equality on points with a unit coordinate dividing
        // the rest
        let mut state: u64 = 31337;
        for _ in 0..50 {
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            let a = ((state >> 30) as i64 % 15) - 7;
            state = state.wrapping_mul(2862933555777941757).wrapping_add(3037000493);
            let b = ((state >> 30) as i64 % 15) - 7;
            if a == 0 && b == 0 {
                continue;
            }
            let h = height_pn(&point(&[(a, 1), (b, 1)]));
            assert!(h >= rat_int(1));
        }
        assert_eq!(height_pn(&point(&[(1, 1), (7, 1)])), rat_int(7));
        assert_eq!(height_pn(&point(&[(3, 1), (6, 1)])), rat_int(2)); // [1 : 2]
    }

    fn weights(data: &[(&str, (i64, i64), (i64, i64), bool)]) -> DivisorWeights {
        DivisorWeights {
            components: data
                .iter()
                .map(|&(id, d, l, has_point)| ComponentWeights {
                    id: id.to_string(),
                    d: rat(d.0, d.1),
                    lambda: rat(l.0, l.1),
                    has_point,
                })
                .collect(),
        }
    }

    #[test]
    fn global_abscissas() {
        // L = D: a = 1, b = number of components
        let w = weights(&[
            ("a", (2, 1), (2, 1), true),
            ("b", (3, 1), (3, 1), true),
            ("c", (1, 2), (1, 2), true),
        ]);
        assert_eq!(global_abscissa(&w).unwrap(), (rat_int(1), 3));
        let w = weights(&[("a", (2, 1), (1, 1), true), ("b", (3, 1), (1, 1), true)]);
        assert_eq!(global_abscissa(&w).unwrap(), (rat_int(3), 1));
        let w = weights(&[("a", (4, 1), (2, 1), true), ("b", (6, 1), (3, 1), true)]);
        assert_eq!(global_abscissa(&w).unwrap(), (rat_int(2), 2));
        assert_eq!(
            global_abscissa(&DivisorWeights { components: vec![] }).unwrap_err(),
            HeightError::EmptySupport
        );
    }

    #[test]
    fn abscissa_invariant_under_rescaling() {
        let w1 = weights(&[("a", (2, 1), (1, 1), true), ("b", (3, 1), (2, 1), true)]);
        let w2 = weights(&[("a", (6, 1), (3, 1), true), ("b", (9, 1), (6, 1), true)]);
        assert_eq!(global_abscissa(&w1).unwrap(), global_abscissa(&w2).unwrap());
    }

    #[test]
    fn local_abscissas() {
        let w = weights(&[("a", (2, 1), (1, 1), true)]);
        let (s, crit) = local_abscissa(&w);
        assert_eq!(s, Some(rat_int(1)));
        assert_eq!(crit.len(), 1);
        // all flags false: -infinity
        let w = weights(&[("a", (2, 1), (1, 1), false)]);
        assert_eq!(local_abscissa(&w).0, None);
        let w = weights(&[("a", (1, 1), (1, 1), true), ("b", (3, 1), (2, 1), true)]);
        let (s, _) = local_abscissa(&w);
        assert_eq!(s, Some(rat_int(1))); // max(0, 1) = 1
        // the local abscissa is strictly below the global one componentwise
        let (a, _) = global_abscissa(&w).unwrap();
        assert!(s.unwrap() < a);
    }

    #[test]
    fn binary_forms_discrepancies() {
        // rho = (1, 2), lambda = ((n-2)/2, n/2): a = 2/n, b = 1
        for n in 3i64..=10 {
            let rho = vec![rat_int(1), rat_int(2)];
            let lambda = vec![rat(n - 2, 2), rat(n, 2)];
            let flags = vec![true, true];
            let (a, b) = log_discrepancy_abscissa(&rho, &lambda, &flags, None).unwrap();
            assert_eq!(a, rat(2, n));
            assert_eq!(b, 1);
            // eps = (0, -1) with n - d = 0 must agree
            let eps = vec![rat_int(0), rat_int(-1)];
            let (a2, b2) =
                log_discrepancy_abscissa(&rho, &lambda, &flags, Some((&eps, 0))).unwrap();
            assert_eq!((a2, b2), (a, b));
        }
        // inconsistent eps data is rejected
        let r = log_discrepancy_abscissa(
            &[rat_int(1), rat_int(2)],
            &[rat(1, 2), rat(3, 2)],
            &[true, true],
            Some((&[rat_int(1), rat_int(-1)], 0)),
        );
        assert!(matches!(r, Err(HeightError::InconsistentDiscrepancies(_))));
    }

    #[test]
    fn leading_constants() {
        // L = D, one component, lambda = 1: the constant is the integral
        let tau = 2.5;
        assert_eq!(
            global_leading_constant(&rat_int(1), 1, &[rat_int(1)], tau).unwrap(),
            tau
        );
        // a = 2, b = 3, lambda = (1,1,1), integral = 4: 4/(2 * 2!) = 1
        assert_eq!(
            global_leading_constant(&rat_int(2), 3, &vec![rat_int(1); 3], 4.0).unwrap(),
            1.0
        );
        assert!(global_leading_constant(&rat_int(0), 1, &[], 1.0).is_err());
    }
}
