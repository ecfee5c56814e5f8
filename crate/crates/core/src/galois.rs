//! Permutation Galois modules and their local Artin factors.
//!
//! A module is a finite set acted on by Frobenius, one permutation per
//! (unramified) place. The local factor at a place with residue cardinality
//! `q` is `det(1 - q^(-s) Fr)^(-1) = prod_cycles (1 - q^(-ls))^(-1)`, where
//! `l` runs over Frobenius cycle lengths. Virtual modules (formal
//! differences) give ratios of such products; their value at real `s > 0`
//! is always a positive real because the characteristic polynomials are
//! products of cyclotomic polynomials.
//!
//! Quadratic characters are realized as 2-element sets with Frobenius
//! swapping the points exactly at inert primes, so `chi = (-4/.)` needs no
//! character table.

use crate::arith::kronecker;
use crate::poly::Polynomial;
use crate::rational::{rat_int, rat_pow_i64, Rat};
use crate::ratfun::{DenFactor, RatFun};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GaloisError {
    #[error("no Frobenius data at place {0}")]
    UnknownPlace(u64),
    #[error("cycle type {0:?} does not sum to the module size {1}")]
    BadCycleType(Vec<u32>, usize),
    #[error("quadratic-character module must have size 2")]
    BadQuadCharSize,
    #[error("place sets differ between modules")]
    PlaceSetMismatch,
    #[error("local factor at s = 1 is not positive: {0}")]
    NonPositive(f64),
    #[error("local volume callback failed at p = {0}")]
    CallbackFailure(u64),
}

/// How Frobenius acts, place by place.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrobRule {
    /// Identity at every place (split module).
    Trivial,
    /// Explicit cycle types per place: `p -> [l_1, l_2, ...]`.
    Explicit(BTreeMap<u64, Vec<u32>>),
    /// Two points swapped iff the Kronecker symbol `(d/p)` is -1.
    QuadChar(i64),
}

/// On the wire: `{"size": n, "frobenius": ...}` where `frobenius` is
/// `"trivial"`, a shorthand `"chi:-4"`, or a map `{"p": [cycle lengths]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermModule {
    pub size: usize,
    pub rule: FrobRule,
}

impl Serialize for PermModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("PermModule", 2)?;
        st.serialize_field("size", &self.size)?;
        match &self.rule {
            FrobRule::Trivial => st.serialize_field("frobenius", "trivial")?,
            FrobRule::QuadChar(d) => st.serialize_field("frobenius", &format!("chi:{d}"))?,
            FrobRule::Explicit(map) => {
                let by_name: BTreeMap<String, &Vec<u32>> =
                    map.iter().map(|(p, c)| (p.to_string(), c)).collect();
                st.serialize_field("frobenius", &by_name)?;
            }
        }
        st.end()
    }
}

impl<'de> Deserialize<'de> for PermModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Frob {
            Shorthand(String),
            Map(BTreeMap<String, Vec<u32>>),
        }
        #[derive(Deserialize)]
        struct Wire {
            size: usize,
            frobenius: Frob,
        }
        let w = Wire::deserialize(d)?;
        let rule = match w.frobenius {
            Frob::Shorthand(s) if s == "trivial" => FrobRule::Trivial,
            Frob::Shorthand(s) => {
                let d = s
                    .strip_prefix("chi:")
                    .and_then(|v| v.parse::<i64>().ok())
                    .ok_or_else(|| D::Error::custom(format!("bad frobenius rule {s:?}")))?;
                FrobRule::QuadChar(d)
            }
            Frob::Map(m) => {
                let mut map = BTreeMap::new();
                for (k, v) in m {
                    let p: u64 = k
                        .parse()
                        .map_err(|_| D::Error::custom(format!("bad place {k:?}")))?;
                    map.insert(p, v);
                }
                FrobRule::Explicit(map)
            }
        };
        Ok(PermModule { size: w.size, rule })
    }
}

impl PermModule {
    pub fn trivial(size: usize) -> Self {
        PermModule {
            size,
            rule: FrobRule::Trivial,
        }
    }

    pub fn quad_char(d: i64) -> Self {
        PermModule {
            size: 2,
            rule: FrobRule::QuadChar(d),
        }
    }

    pub fn explicit(size: usize, frobenius: BTreeMap<u64, Vec<u32>>) -> Self {
        PermModule {
            size,
            rule: FrobRule::Explicit(frobenius),
        }
    }

    /// Frobenius cycle type at a place.
    pub fn cycles_at(&self, place: u64) -> Result<Vec<u32>, GaloisError> {
        match &self.rule {
            FrobRule::Trivial => Ok(vec![1; self.size]),
            FrobRule::Explicit(map) => {
                let c = map
                    .get(&place)
                    .cloned()
                    .ok_or(GaloisError::UnknownPlace(place))?;
                if c.iter().map(|&l| l as usize).sum::<usize>() != self.size {
                    return Err(GaloisError::BadCycleType(c, self.size));
                }
                Ok(c)
            }
            FrobRule::QuadChar(d) => {
                if self.size != 2 {
                    return Err(GaloisError::BadQuadCharSize);
                }
                if kronecker(*d, place as i64) == -1 {
                    Ok(vec![2])
                } else {
                    Ok(vec![1, 1])
                }
            }
        }
    }

    /// Places at which explicit data exists; `None` means "all places".
    fn place_set(&self) -> Option<Vec<u64>> {
        match &self.rule {
            FrobRule::Explicit(map) => Some(map.keys().cloned().collect()),
            _ => None,
        }
    }
}

/// A formal difference of permutation modules.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VirtualPermModule {
    pub plus: Vec<PermModule>,
    pub minus: Vec<PermModule>,
}

impl VirtualPermModule {
    pub fn zero() -> Self {
        VirtualPermModule {
            plus: vec![],
            minus: vec![],
        }
    }

    pub fn from_module(m: PermModule) -> Self {
        VirtualPermModule {
            plus: vec![m],
            minus: vec![],
        }
    }
}

/// `EP = [boundary components] - [Picard lattice]` as a virtual module.
///
/// This is the convergence-factor module of an open variety with boundary.
pub fn ep_virtual(
    boundary: PermModule,
    pic: PermModule,
) -> Result<VirtualPermModule, GaloisError> {
    if let (Some(a), Some(b)) = (boundary.place_set(), pic.place_set()) {
        if a != b {
            return Err(GaloisError::PlaceSetMismatch);
        }
    }
    Ok(VirtualPermModule {
        plus: vec![boundary],
        minus: vec![pic],
    })
}

/// Local Artin factor of a virtual module at a place, as an exact rational
/// function of `T = q^(-s)`:
/// `prod_minus prod_cycles (1 - T^l)  /  prod_plus prod_cycles (1 - T^l)`.
pub fn artin_local_factor(
    m: &VirtualPermModule,
    place: u64,
    _q: u64,
) -> Result<RatFun, GaloisError> {
    let mut num = Polynomial::one();
    for module in &m.minus {
        for l in module.cycles_at(place)? {
            num = num.mul(&one_minus_tl(l));
        }
    }
    let mut den = Vec::new();
    for module in &m.plus {
        for l in module.cycles_at(place)? {
            den.push(DenFactor::new(Rat::one(), l, 1));
        }
    }
    Ok(RatFun::new(num, den).expect("valid factors"))
}

fn one_minus_tl(l: u32) -> Polynomial {
    let mut coeffs = vec![Rat::zero(); l as usize + 1];
    coeffs[0] = Rat::one();
    coeffs[l as usize] = -Rat::one();
    Polynomial::from_coeffs(coeffs)
}

/// Exact value of the local factor at real rational `s` (via `T = q^(-s)`,
/// requiring `q^(-s)` rational: integer `s` always qualifies).
pub fn artin_factor_value(
    m: &VirtualPermModule,
    place: u64,
    q: u64,
    s: i64,
) -> Result<Rat, GaloisError> {
    let rf = artin_local_factor(m, place, q)?;
    let t = rat_pow_i64(&rat_int(q as i64), -s);
    rf.eval(&t)
        .ok_or_else(|| GaloisError::NonPositive(f64::NAN))
}

/// Value at `s = 1`, with the positivity guarantee checked.
pub fn positivity_at_one(m: &VirtualPermModule, place: u64, q: u64) -> Result<f64, GaloisError> {
    let v = artin_factor_value(m, place, q, 1)?;
    let vf = crate::rational::rat_to_f64(&v);
    if vf <= 0.0 {
        return Err(GaloisError::NonPositive(vf));
    }
    Ok(vf)
}

/// Convergence factor `lambda_v = L_v(1, M0) / L_v(1, M1)`.
pub fn convergence_factor(
    m0: &PermModule,
    m1: &PermModule,
    place: u64,
    q: u64,
) -> Result<f64, GaloisError> {
    let virt = VirtualPermModule {
        plus: vec![m0.clone()],
        minus: vec![m1.clone()],
    };
    let v = artin_factor_value(&virt, place, q, 1)?;
    Ok(crate::rational::rat_to_f64(&v))
}

/// Result of a truncated regularized Euler product.
#[derive(Debug, Clone, Copy)]
pub struct TruncatedProduct {
    pub value: f64,
    /// Crude `O(1/P)` heuristic bound on the missing tail.
    pub tail_bound: f64,
    pub primes_used: usize,
}

/// `prod_{p in exceptional} vol_p  *  prod_{p <= P good} L_p(1, M) vol_p`.
///
/// Factors are accumulated in ascending prime order, so the result is
/// bit-stable run to run.
pub fn truncated_regularized_product<F>(
    local_volume: F,
    m: &VirtualPermModule,
    prime_bound: u64,
    exceptional: &BTreeMap<u64, f64>,
) -> Result<TruncatedProduct, GaloisError>
where
    F: Fn(u64) -> Option<f64> + Sync,
{
    use rayon::prelude::*;
    let primes = crate::arith::primes_up_to(prime_bound);
    let good: Vec<u64> = primes
        .iter()
        .cloned()
        .filter(|p| !exceptional.contains_key(p))
        .collect();
    // factors are computed in parallel, then multiplied in prime order
    let factors: Result<Vec<(u64, f64)>, GaloisError> = good
        .par_iter()
        .map(|&p| {
            let vol = local_volume(p).ok_or(GaloisError::CallbackFailure(p))?;
            let l = positivity_at_one(m, p, p)?;
            Ok((p, vol * l))
        })
        .collect();
    let mut factors = factors?;
    factors.sort_by_key(|&(p, _)| p);
    let mut value = 1.0;
    // exceptional places contribute their supplied volume only
    for v in exceptional.values() {
        value *= v;
    }
    for &(_, f) in &factors {
        value *= f;
    }
    Ok(TruncatedProduct {
        value,
        tail_bound: 1.0 / prime_bound as f64,
        primes_used: factors.len() + exceptional.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_int};

    fn ep_x2p1() -> VirtualPermModule {
        // boundary = irreducible conic (trivial rank 1),
        // pic = two rulings swapped at inert primes of Q(i)
        ep_virtual(PermModule::trivial(1), PermModule::quad_char(-4)).unwrap()
    }

    #[test]
    fn trivial_module_factor() {
        // one fixed point: (1 - q^{-s})^{-1}
        let m = VirtualPermModule::from_module(PermModule::trivial(1));
        let rf = artin_local_factor(&m, 5, 5).unwrap();
        assert_eq!(rf.den_factors().len(), 1);
        assert_eq!(rf.den_factors()[0], DenFactor::new(Rat::one(), 1, 1));
        assert_eq!(artin_factor_value(&m, 5, 5, 1).unwrap(), rat(5, 4));
        assert!((positivity_at_one(&m, 5, 5).unwrap() - 1.25).abs() < 1e-15);
    }

    #[test]
    fn two_cycle_factor() {
        // a single 2-cycle: (1 - q^{-2s})^{-1}
        let mut map = BTreeMap::new();
        map.insert(3u64, vec![2u32]);
        let m = VirtualPermModule::from_module(PermModule::explicit(2, map));
        let rf = artin_local_factor(&m, 3, 3).unwrap();
        assert_eq!(rf.den_factors(), &[DenFactor::new(Rat::one(), 2, 1)]);
        assert!(matches!(
            artin_local_factor(&m, 7, 7).unwrap_err(),
            GaloisError::UnknownPlace(7)
        ));
    }

    #[test]
    fn x2p1_factor_at_inert_prime() {
        // p ≡ 3 (mod 4): (1 - p^{-2s})/(1 - p^{-s}) = 1 + p^{-s}
        let ep = ep_x2p1();
        let rf = artin_local_factor(&ep, 3, 3).unwrap();
        let expected = RatFun::new(
            Polynomial::from_coeffs(vec![rat_int(1), rat_int(1)]),
            vec![],
        )
        .unwrap();
        assert!(rf.equivalent(&expected));
        assert_eq!(artin_factor_value(&ep, 3, 3, 1).unwrap(), rat(4, 3));
        // p ≡ 1 (mod 4): 1 - p^{-s}
        assert_eq!(artin_factor_value(&ep, 5, 5, 1).unwrap(), rat(4, 5));
    }

    #[test]
    fn projective_case_is_one() {
        // boundary = pic: factor ≡ 1
        let m = ep_virtual(PermModule::trivial(3), PermModule::trivial(3)).unwrap();
        let rf = artin_local_factor(&m, 7, 7).unwrap();
        assert!(rf.equivalent(&RatFun::one()));
    }

    #[test]
    fn swapped_boundary_over_trivial_pic() {
        // boundary = swapped pair, pic trivial rank 1:
        // (1 - q^{-s})/(1 - q^{-2s}) = (1 + q^{-s})^{-1}
        let mut map = BTreeMap::new();
        map.insert(7u64, vec![2u32]);
        let m = ep_virtual(PermModule::explicit(2, map), PermModule::trivial(1)).unwrap();
        let v = artin_factor_value(&m, 7, 7, 1).unwrap();
        assert_eq!(v, rat(7, 8)); // (1 + 1/7)^{-1}
    }

    #[test]
    fn convergence_factor_examples() {
        // M0 of rank 0, M1 trivial rank 1: lambda = (1 - 1/p)
        let m0 = PermModule::trivial(0);
        let m1 = PermModule::trivial(1);
        let l = convergence_factor(&m0, &m1, 11, 11).unwrap();
        assert!((l - (1.0 - 1.0 / 11.0)).abs() < 1e-15);
    }

    #[test]
    fn direct_sum_multiplies() {
        // factor of a disjoint union = product of factors
        let mut map_a = BTreeMap::new();
        map_a.insert(5u64, vec![3u32, 1]);
        let mut map_b = BTreeMap::new();
        map_b.insert(5u64, vec![2u32, 2]);
        let mut map_ab = BTreeMap::new();
        map_ab.insert(5u64, vec![3u32, 1, 2, 2]);
        let a = VirtualPermModule::from_module(PermModule::explicit(4, map_a));
        let b = VirtualPermModule::from_module(PermModule::explicit(4, map_b));
        let ab = VirtualPermModule::from_module(PermModule::explicit(8, map_ab));
        let va = artin_factor_value(&a, 5, 5, 1).unwrap();
        let vb = artin_factor_value(&b, 5, 5, 1).unwrap();
        let vab = artin_factor_value(&ab, 5, 5, 1).unwrap();
        assert_eq!(vab, va * vb);
    }

    #[test]
    fn positivity_for_random_cycle_types() {
        // 50 cycle types, q in {2, 3, 5}, s in {0.5, 1, 2}: the factor of a
        // genuine permutation module is a positive real.
        let mut state = 0x9E3779B97F4A7C15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let size = 1 + (next() % 6) as usize;
            let mut cycles = Vec::new();
            let mut left = size;
            while left > 0 {
                let l = 1 + (next() as usize % left);
                cycles.push(l as u32);
                left -= l;
            }
            for q in [2u64, 3, 5] {
                let mut map = BTreeMap::new();
                map.insert(q, cycles.clone());
                let m = VirtualPermModule::from_module(PermModule::explicit(size, map));
                let rf = artin_local_factor(&m, q, q).unwrap();
                for s in [0.5f64, 1.0, 2.0] {
                    let t = num_complex::Complex64::new((q as f64).powf(-s), 0.0);
                    let v = rf.eval_complex(t).re;
                    assert!(v > 0.0, "cycles {cycles:?}, q {q}, s {s}: {v}");
                }
            }
        }
    }

    #[test]
    fn det_identity_vs_matrix_determinant() {
        // prod_cycles (1 - x^l) = det(I - x P) for permutation matrices,
        // checked by cofactor expansion for sizes <= 6.
        fn det_poly(mat: &Vec<Vec<Polynomial>>) -> Polynomial {
            let n = mat.len();
            if n == 1 {
                return mat[0][0].clone();
            }
            let mut acc = Polynomial::zero();
            for j in 0..n {
                if mat[0][j].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<Polynomial>> = (1..n)
                    .map(|i| {
                        (0..n)
                            .filter(|&k| k != j)
                            .map(|k| mat[i][k].clone())
                            .collect()
                    })
                    .collect();
                let term = mat[0][j].mul(&det_poly(&minor));
                acc = if j % 2 == 0 {
                    acc.add(&term)
                } else {
                    acc.sub(&term)
                };
            }
            acc
        }

        let cases: Vec<Vec<u32>> = vec![
            vec![1],
            vec![2],
            vec![3, 1],
            vec![2, 2],
            vec![4, 2],
            vec![3, 2, 1],
            vec![6],
        ];
        for cycles in cases {
            let n: usize = cycles.iter().map(|&l| l as usize).sum();
            // permutation with the given cycle type
            let mut perm = vec![0usize; n];
            let mut start = 0;
            for &l in &cycles {
                let l = l as usize;
                for i in 0..l {
                    perm[start + i] = start + (i + 1) % l;
                }
                start += l;
            }
            // I - x P as a polynomial matrix
            let x = Polynomial::monomial(Rat::one(), 1);
            let mat: Vec<Vec<Polynomial>> = (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            let mut e = if i == j {
                                Polynomial::one()
                            } else {
                                Polynomial::zero()
                            };
                            if perm[i] == j {
                                e = e.sub(&x);
                            }
                            e
                        })
                        .collect()
                })
                .collect();
            let det = det_poly(&mat);
            let mut expected = Polynomial::one();
            for &l in &cycles {
                expected = expected.mul(&one_minus_tl(l));
            }
            assert_eq!(det, expected, "cycle type {cycles:?}");
        }
    }

    #[test]
    fn wire_format_round_trip() {
        let chi = PermModule::quad_char(-4);
        let js = serde_json::to_string(&chi).unwrap();
        assert_eq!(js, r#"{"size":2,"frobenius":"chi:-4"}"#);
        assert_eq!(serde_json::from_str::<PermModule>(&js).unwrap(), chi);
        let mut map = BTreeMap::new();
        map.insert(7u64, vec![3u32, 1]);
        let ex = PermModule::explicit(4, map);
        let js = serde_json::to_string(&ex).unwrap();
        assert_eq!(js, r#"{"size":4,"frobenius":{"7":[3,1]}}"#);
        assert_eq!(serde_json::from_str::<PermModule>(&js).unwrap(), ex);
        let triv = PermModule::trivial(3);
        let js = serde_json::to_string(&triv).unwrap();
        assert_eq!(serde_json::from_str::<PermModule>(&js).unwrap(), triv);
    }

    #[test]
    fn zeta2_inverse_by_truncated_product() {
        // all volumes (1 - p^{-2}), trivial module: product -> 1/zeta(2)
        let m = VirtualPermModule::zero();
        let r = truncated_regularized_product(
            |p| Some(1.0 - (p as f64).powi(-2)),
            &m,
            100_000,
            &BTreeMap::new(),
        )
        .unwrap();
        let inv_zeta2 = 6.0 / (std::f64::consts::PI * std::f64::consts::PI);
        assert!((r.value - inv_zeta2).abs() < 1e-4, "{}", r.value);
        // all volumes 1, trivial module: product = 1
        let one = truncated_regularized_product(|_| Some(1.0), &m, 1000, &BTreeMap::new())
            .unwrap();
        assert_eq!(one.value, 1.0);
    }
}
