//! Exhaustive point counting for polynomial systems over `Z/m`.
//!
//! Enumeration is brute force with modular evaluation: no Groebner bases,
//! no lifting. Budgets keep runs at desk scale; the leading variable is
//! chunked across threads and the per-chunk counts are summed in a fixed
//! order, so results are deterministic.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum CountError {
    #[error("enumeration of {candidates} tuples exceeds the budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },
    #[error("field counting requires a prime modulus, got {0}")]
    NonPrimeField(u64),
    #[error("affine cone count {count} is not divisible by q - 1 = {units}")]
    ConeNotDivisible { count: u64, units: u64 },
    #[error("unknown boundary component {0:?}")]
    UnknownComponent(String),
    #[error("modulus must be >= 2")]
    BadModulus,
}

/// A monomial `coef * prod x_i^exps[i]` with integer coefficient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Monomial {
    pub coef: i64,
    pub exps: Vec<u32>,
}

/// Sparse integer polynomial in `n_vars` variables.
/// On the wire: a bare array of monomials `[{"coef": 1, "exps": [2,0,0]}]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct IntPoly {
    pub monomials: Vec<Monomial>,
}

impl IntPoly {
    pub fn new(monomials: Vec<Monomial>) -> Self {
        IntPoly { monomials }
    }

    /// Builder from `(coef, exps)` pairs.
    pub fn from_terms(terms: &[(i64, &[u32])]) -> Self {
        IntPoly {
            monomials: terms
                .iter()
                .map(|&(coef, exps)| Monomial {
                    coef,
                    exps: exps.to_vec(),
                })
                .collect(),
        }
    }

    /// Evaluates modulo `m` given precomputed power tables
    /// `pows[v][e] = x_v^e mod m`.
    fn eval_mod(&self, pows: &[Vec<u64>], m: u64) -> u64 {
        let mut acc: u64 = 0;
        for mono in &self.monomials {
            let mut term = mono.coef.rem_euclid(m as i64) as u64;
            for (v, &e) in mono.exps.iter().enumerate() {
                if e > 0 {
                    term = term * pows[v][e as usize] % m;
                }
            }
            acc = (acc + term) % m;
        }
        acc
    }

    fn max_exponent(&self, var: usize) -> u32 {
        self.monomials
            .iter()
            .map(|mo| mo.exps.get(var).copied().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    /// Whether every monomial has the same total degree.
    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self
            .monomials
            .iter()
            .map(|mo| mo.exps.iter().map(|&e| e as u64).sum::<u64>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }
}

/// A polynomial system over `Z/m`: equations `= 0`, inequations `!= 0`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PolySystem {
    pub n_vars: usize,
    pub equations: Vec<IntPoly>,
    pub inequations: Vec<IntPoly>,
    pub declared_dimension: u32,
    /// When set, tuples are counted projectively: nonzero tuples satisfying
    /// the (homogeneous) system, divided by `q - 1`.
    #[serde(default)]
    pub projective: bool,
}

/// Default enumeration budget: candidate tuples per call.
pub const DEFAULT_BUDGET: u128 = 1_000_000_000;

#[derive(Debug, Clone, Copy)]
pub struct CountSettings {
    pub budget: u128,
}

impl Default for CountSettings {
    fn default() -> Self {
        CountSettings {
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Number of solutions of `sys` in `(Z/m)^n` (or in `P^(n-1)(F_m)` for
/// projective systems).
pub fn count_points(sys: &PolySystem, m: u64) -> Result<u64, CountError> {
    count_points_with(sys, m, &CountSettings::default())
}

pub fn count_points_with(
    sys: &PolySystem,
    m: u64,
    settings: &CountSettings,
) -> Result<u64, CountError> {
    if m < 2 {
        return Err(CountError::BadModulus);
    }
    let candidates = (m as u128).pow(sys.n_vars as u32);
    if candidates > settings.budget {
        return Err(CountError::BudgetExceeded {
            candidates,
            budget: settings.budget,
        });
    }
    if sys.projective {
        if !crate::arith::is_prime(m) {
            return Err(CountError::NonPrimeField(m));
        }
        let cone = enumerate(sys, m, true);
        let units = m - 1;
        if cone % units != 0 {
            return Err(CountError::ConeNotDivisible { count: cone, units });
        }
        return Ok(cone / units);
    }
    Ok(enumerate(sys, m, false))
}

/// Core enumeration; `skip_zero` drops the all-zero tuple (affine cone mode).
fn enumerate(sys: &PolySystem, m: u64, skip_zero: bool) -> u64 {
    let n = sys.n_vars;
    if n == 0 {
        let pows: Vec<Vec<u64>> = vec![];
        let ok = sys.equations.iter().all(|p| p.eval_mod(&pows, m) == 0)
            && sys.inequations.iter().all(|p| p.eval_mod(&pows, m) != 0);
        return ok as u64;
    }
    let max_exp: Vec<u32> = (0..n)
        .map(|v| {
            sys.equations
                .iter()
                .chain(sys.inequations.iter())
                .map(|p| p.max_exponent(v))
                .max()
                .unwrap_or(0)
        })
        .collect();

    (0..m)
        .into_par_iter()
        .map(|x0| {
            let mut pows: Vec<Vec<u64>> = (0..n)
                .map(|v| vec![0u64; max_exp[v] as usize + 1])
                .collect();
            fill_pows(&mut pows[0], x0, m);
            for v in 1..n {
                fill_pows(&mut pows[v], 0, m);
            }
            let mut count = 0u64;
            let mut tuple = vec![0u64; n];
            tuple[0] = x0;
            loop {
                let all_zero = skip_zero && tuple.iter().all(|&x| x == 0);
                if !all_zero {
                    let ok = sys.equations.iter().all(|p| p.eval_mod(&pows, m) == 0)
                        && sys.inequations.iter().all(|p| p.eval_mod(&pows, m) != 0);
                    count += ok as u64;
                }
                // odometer over variables 1..n (variable 0 is the chunk)
                let mut v = 1;
                loop {
                    if v >= n {
                        return count;
                    }
                    tuple[v] += 1;
                    if tuple[v] < m {
                        fill_pows(&mut pows[v], tuple[v], m);
                        break;
                    }
                    tuple[v] = 0;
                    fill_pows(&mut pows[v], 0, m);
                    v += 1;
                }
            }
        })
        .sum()
}

fn fill_pows(row: &mut [u64], x: u64, m: u64) {
    let mut acc = 1u64;
    for slot in row.iter_mut() {
        *slot = acc;
        acc = acc * x % m;
    }
}

/// A stratified boundary: ambient system plus labelled boundary divisors.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StratumSpec {
    pub ambient: PolySystem,
    pub boundary: Vec<(String, IntPoly)>,
}

/// Count of points lying on exactly the boundary components in `a`
/// (`= 0` for ids in `a`, `!= 0` otherwise), within the ambient system.
pub fn count_stratum(
    spec: &StratumSpec,
    a: &BTreeSet<String>,
    q: u64,
) -> Result<u64, CountError> {
    count_stratum_with(spec, a, q, &CountSettings::default())
}

pub fn count_stratum_with(
    spec: &StratumSpec,
    a: &BTreeSet<String>,
    q: u64,
    settings: &CountSettings,
) -> Result<u64, CountError> {
    if !crate::arith::is_prime(q) {
        return Err(CountError::NonPrimeField(q));
    }
    for id in a {
        if !spec.boundary.iter().any(|(bid, _)| bid == id) {
            return Err(CountError::UnknownComponent(id.clone()));
        }
    }
    let mut sys = spec.ambient.clone();
    for (id, poly) in &spec.boundary {
        if a.contains(id) {
            sys.equations.push(poly.clone());
        } else {
            sys.inequations.push(poly.clone());
        }
    }
    count_points_with(&sys, q, settings)
}

/// `count_points(sys, p^k) / p^(k * declared_dimension)` as an exact rational.
pub fn weil_volume(sys: &PolySystem, p: u64, k: u32) -> Result<crate::Rat, CountError> {
    weil_volume_with(sys, p, k, &CountSettings::default())
}

pub fn weil_volume_with(
    sys: &PolySystem,
    p: u64,
    k: u32,
    settings: &CountSettings,
) -> Result<crate::Rat, CountError> {
    let m = (p as u128).pow(k);
    let m64 = u64::try_from(m).map_err(|_| CountError::BudgetExceeded {
        candidates: u128::MAX,
        budget: settings.budget,
    })?;
    let count = count_points_with(sys, m64, settings)?;
    let denom = num_bigint::BigInt::from(p).pow(k * sys.declared_dimension);
    Ok(crate::Rat::new(count.into(), denom))
}

/// The surface `x^2 + yz + 1 = 0` in affine 3-space (dimension 2).
pub fn x2_plus_yz_plus_1() -> PolySystem {
    PolySystem {
        n_vars: 3,
        equations: vec![IntPoly::from_terms(&[
            (1, &[2, 0, 0]),
            (1, &[0, 1, 1]),
            (1, &[0, 0, 0]),
        ])],
        inequations: vec![],
        declared_dimension: 2,
        projective: false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn conic_counts_match_character_formula() {
        // #U(F_p) = p^2 + (-1/p) p for the surface x^2 + yz + 1 = 0
        let sys = x2_plus_yz_plus_1();
        assert_eq!(count_points(&sys, 3).unwrap(), 6); // 9 - 3
        assert_eq!(count_points(&sys, 5).unwrap(), 30); // 25 + 5
        assert_eq!(count_points(&sys, 7).unwrap(), 42); // 49 - 7
    }

    #[test]
    fn single_linear_equation() {
        // x = 0 in one variable mod 7
        let sys = PolySystem {
            n_vars: 1,
            equations: vec![IntPoly::from_terms(&[(1, &[1])])],
            inequations: vec![],
            declared_dimension: 0,
            projective: false,
        };
        assert_eq!(count_points(&sys, 7).unwrap(), 1);
    }

    #[test]
    fn affine_line_strata() {
        // boundary {x = 0} on the affine line
        let spec = StratumSpec {
            ambient: PolySystem {
                n_vars: 1,
                equations: vec![],
                inequations: vec![],
                declared_dimension: 1,
                projective: false,
            },
            boundary: vec![("x".into(), IntPoly::from_terms(&[(1, &[1])]))],
        };
        let empty = BTreeSet::new();
        let x: BTreeSet<String> = ["x".to_string()].into();
        for p in [3u64, 5, 7, 11] {
            assert_eq!(count_stratum(&spec, &empty, p).unwrap(), p - 1);
            assert_eq!(count_stratum(&spec, &x, p).unwrap(), 1);
        }
        let bad: BTreeSet<String> = ["y".to_string()].into();
        assert!(matches!(
            count_stratum(&spec, &bad, 5),
            Err(CountError::UnknownComponent(_))
        ));
    }

    #[test]
    fn projective_conic_stratum() {
        // x^2 + yz = 0 in P^2(F_5) has 6 points
        let sys = PolySystem {
            n_vars: 3,
            equations: vec![IntPoly::from_terms(&[(1, &[2, 0, 0]), (1, &[0, 1, 1])])],
            inequations: vec![],
            declared_dimension: 1,
            projective: true,
        };
        assert_eq!(count_points(&sys, 5).unwrap(), 6);
    }

    #[test]
    fn dyadic_volume_stabilizes() {
        let sys = x2_plus_yz_plus_1();
        // stabilization threshold confirmed by exhaustive counts: the value
        // is 1 at k = 1 and settles to 3/4 from k = 2 on
        assert_eq!(weil_volume(&sys, 2, 1).unwrap(), rat(1, 1));
        for k in 2..=6 {
            assert_eq!(weil_volume(&sys, 2, k).unwrap(), rat(3, 4), "k = {k}");
        }
    }

    #[test]
    fn hensel_stability_for_odd_primes() {
        let sys = x2_plus_yz_plus_1();
        // k = 3 stays within budget for p <= 7
        for p in [3u64, 5, 7] {
            let v1 = weil_volume(&sys, p, 1).unwrap();
            for k in 2..=3 {
                assert_eq!(weil_volume(&sys, p, k).unwrap(), v1, "p = {p}, k = {k}");
            }
        }
        for p in [11u64, 13] {
            let v1 = weil_volume(&sys, p, 1).unwrap();
            assert_eq!(weil_volume(&sys, p, 2).unwrap(), v1, "p = {p}");
        }
        // p = 13, k = 3 needs 13^9 > 1e9 tuples: the budget rejects it
        assert!(matches!(
            weil_volume(&sys, 13, 3),
            Err(CountError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn full_affine_space_has_volume_one() {
        let sys = PolySystem {
            n_vars: 2,
            equations: vec![],
            inequations: vec![],
            declared_dimension: 2,
            projective: false,
        };
        assert_eq!(weil_volume(&sys, 3, 2).unwrap(), rat(1, 1));
    }

    #[test]
    fn strata_partition_the_ambient_count() {
        // sum over subsets A of the stratum counts = ambient count
        let spec = StratumSpec {
            ambient: PolySystem {
                n_vars: 2,
                equations: vec![],
                inequations: vec![],
                declared_dimension: 2,
                projective: false,
            },
            boundary: vec![
                ("x".into(), IntPoly::from_terms(&[(1, &[1, 0])])),
                ("y".into(), IntPoly::from_terms(&[(1, &[0, 1])])),
            ],
        };
        for q in [3u64, 5] {
            let subsets: Vec<BTreeSet<String>> = vec![
                BTreeSet::new(),
                ["x".to_string()].into(),
                ["y".to_string()].into(),
                ["x".to_string(), "y".to_string()].into(),
            ];
            let total: u64 = subsets
                .iter()
                .map(|a| count_stratum(&spec, a, q).unwrap())
                .sum();
            assert_eq!(total, q * q);
        }
    }

    #[test]
    fn crt_multiplicativity() {
        let sys = x2_plus_yz_plus_1();
        let c3 = count_points(&sys, 3).unwrap();
        let c5 = count_points(&sys, 5).unwrap();
        let c15 = count_points(&sys, 15).unwrap();
        assert_eq!(c15, c3 * c5);
        let c2 = count_points(&sys, 2).unwrap();
        let c6 = count_points(&sys, 6).unwrap();
        assert_eq!(c6, c2 * c3);
    }

    #[test]
    fn budget_rejects_oversized_enumeration() {
        let sys = PolySystem {
            n_vars: 4,
            equations: vec![],
            inequations: vec![],
            declared_dimension: 4,
            projective: false,
        };
        let r = count_points_with(&sys, 100_000, &CountSettings { budget: 1_000_000 });
        assert!(matches!(r, Err(CountError::BudgetExceeded { .. })));
    }
}
