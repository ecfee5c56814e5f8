//! Igusa zeta functions from good-reduction stratum data.
//!
//! The inputs are residue-field stratum counts: for each subset `A` of
//! boundary components, the number `N_A` of residue points lying on exactly
//! the components in `A`, together with the residue-extension degrees
//! `f_alpha`. The zeta function is then the finite sum
//!
//! ```text
//!   Z((s_a)) = (q^-1 mu0)^dim * sum_A N_A * prod_{a in A} (q^f_a - 1)/(q^(f_a s_a) - 1)
//! ```
//!
//! Specializing along a line `s_a = -rho_a + lambda_a s` and letting
//! `T = q^(-s)` turns each factor into a geometric series
//! `(q^f - 1) sum_k q^(k f rho) T^(k f lambda)`, so the whole thing is an
//! exact rational function whose rightmost pole sits at
//! `a = max rho_a / lambda_a` with order `b = max_A #(critical in A)`.

use crate::poly::Polynomial;
use crate::rational::{rat_int, rat_pow_i64, rat_to_f64, rational_pow, Rat};
use crate::ratfun::{DenFactor, RatFun};
use crate::structured::StructuredConstant;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DenefError {
    #[error("stratum {0:?} references an undeclared component")]
    UnknownComponent(String),
    #[error("the empty stratum (A = {{}}) must be declared")]
    MissingEmptyStratum,
    #[error("line spec is missing component {0:?}")]
    MissingLine(String),
    #[error("lambda must be positive for component {0:?}")]
    NonPositiveLambda(String),
    #[error("s_{0} = {1} is not positive; the integral diverges")]
    NonconvergentParameter(String, String),
    #[error("q^({0}) is irrational; this datum needs an algebraic extension")]
    NonRationalPower(String),
    #[error("series of length {0} exceeds the budget {1}")]
    BudgetExceeded(u64, u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DenefComponent {
    pub id: String,
    /// Residue-extension degree `f_alpha >= 1`.
    pub f: u32,
}

/// Stratum counts and residue degrees: the complete local input.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DenefData {
    pub dim: u32,
    pub q: u64,
    #[serde(with = "crate::rational::rat_string", default = "Rat::one")]
    pub mu0: Rat,
    pub components: Vec<DenefComponent>,
    /// Pairs `(A, N_A)`; `A` by component id. Must include `A = {}`.
    #[serde(with = "strata_serde")]
    pub strata: Vec<(BTreeSet<String>, u64)>,
}

/// Strata on the wire: `[{"A": ["id", ...], "N": count}, ...]`.
mod strata_serde {
    use super::*;
    use serde::{Deserializer, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry {
        #[serde(rename = "A")]
        a: BTreeSet<String>,
        #[serde(rename = "N")]
        n: u64,
    }

    pub fn serialize<S: Serializer>(
        strata: &[(BTreeSet<String>, u64)],
        s: S,
    ) -> Result<S::Ok, S::Error> {
        s.collect_seq(strata.iter().map(|(a, n)| Entry {
            a: a.clone(),
            n: *n,
        }))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<(BTreeSet<String>, u64)>, D::Error> {
        let entries: Vec<Entry> = Vec::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.a, e.n)).collect())
    }
}

impl DenefData {
    pub fn validate(&self) -> Result<(), DenefError> {
        let ids: BTreeSet<&str> = self.components.iter().map(|c| c.id.as_str()).collect();
        let mut has_empty = false;
        for (a, _) in &self.strata {
            if a.is_empty() {
                has_empty = true;
            }
            for id in a {
                if !ids.contains(id.as_str()) {
                    return Err(DenefError::UnknownComponent(id.clone()));
                }
            }
        }
        if !has_empty {
            return Err(DenefError::MissingEmptyStratum);
        }
        Ok(())
    }

    fn degree_of(&self, id: &str) -> u32 {
        self.components
            .iter()
            .find(|c| c.id == id)
            .map(|c| c.f)
            .unwrap_or(1)
    }

    /// Components that occur in some stratum with `N_A > 0` (only these can
    /// contribute poles; a residue point on the open stratum lifts).
    pub fn populated_components(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for (a, n) in &self.strata {
            if *n > 0 {
                out.extend(a.iter().cloned());
            }
        }
        out
    }

    /// `(q^-1 mu0)^dim`.
    fn global_factor(&self) -> Rat {
        let q = rat_int(self.q as i64);
        rat_pow_i64(&(&self.mu0 / q), self.dim as i64)
    }
}

/// The affine line with boundary the origin: strata `{} -> q - 1`,
/// `{0} -> 1`. Its zeta function is the local zeta function of `Q_q`.
pub fn affine_line_data(q: u64) -> DenefData {
    DenefData {
        dim: 1,
        q,
        mu0: Rat::one(),
        components: vec![DenefComponent {
            id: "0".into(),
            f: 1,
        }],
        strata: vec![
            (BTreeSet::new(), q - 1),
            ([String::from("0")].into(), 1),
        ],
    }
}

/// Affine line in `s`-space: `s_alpha = -rho_alpha + lambda_alpha * s`.
/// On the wire: `{"id": {"lambda": "1", "rho": "0"}, ...}`.
#[derive(Debug, Clone, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct LineSpec {
    pub weights: BTreeMap<String, LineWeight>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LineWeight {
    #[serde(with = "crate::rational::rat_string")]
    pub lambda: Rat,
    #[serde(with = "crate::rational::rat_string")]
    pub rho: Rat,
}

impl LineSpec {
    pub fn new(weights: &[(&str, Rat, Rat)]) -> Self {
        LineSpec {
            weights: weights
                .iter()
                .map(|(id, lambda, rho)| {
                    (
                        id.to_string(),
                        LineWeight {
                            lambda: lambda.clone(),
                            rho: rho.clone(),
                        },
                    )
                })
                .collect(),
        }
    }

    /// The volume line of a divisor `D = sum d_a D_a` measured against
    /// `L = sum lambda_a D_a`: `rho_a = d_a - 1`.
    pub fn volume_line(d: &[(&str, Rat)], lambda: &[(&str, Rat)]) -> Self {
        let lmap: BTreeMap<&str, &Rat> = lambda.iter().map(|(k, v)| (*k, v)).collect();
        LineSpec {
            weights: d
                .iter()
                .map(|(id, d)| {
                    (
                        id.to_string(),
                        LineWeight {
                            lambda: (*lmap.get(id).expect("lambda for every component")).clone(),
                            rho: d - Rat::one(),
                        },
                    )
                })
                .collect(),
        }
    }

    fn get(&self, id: &str) -> Result<&LineWeight, DenefError> {
        let w = self
            .weights
            .get(id)
            .ok_or_else(|| DenefError::MissingLine(id.to_string()))?;
        if !w.lambda.is_positive() {
            return Err(DenefError::NonPositiveLambda(id.to_string()));
        }
        Ok(w)
    }
}

/// Exact value of the zeta function at fixed rational exponents
/// `s_alpha > 0`, as a structured constant (plain rational here).
pub fn igusa_zeta_at(
    data: &DenefData,
    s_values: &BTreeMap<String, Rat>,
) -> Result<StructuredConstant, DenefError> {
    data.validate()?;
    let populated = data.populated_components();
    let q = rat_int(data.q as i64);
    let mut total = Rat::zero();
    for (a, n) in &data.strata {
        if *n == 0 {
            continue;
        }
        let mut term = rat_int(*n as i64);
        for id in a {
            let f = data.degree_of(id) as i64;
            let s = s_values
                .get(id)
                .ok_or_else(|| DenefError::MissingLine(id.clone()))?;
            if populated.contains(id) && !s.is_positive() {
                return Err(DenefError::NonconvergentParameter(
                    id.clone(),
                    crate::rational::rat_to_string(s),
                ));
            }
            let qf = rat_pow_i64(&q, f);
            let exp = Rat::from_integer(f.into()) * s;
            let qfs = rational_pow(&q, &exp).ok_or_else(|| {
                DenefError::NonRationalPower(crate::rational::rat_to_string(&exp))
            })?;
            term *= (qf - Rat::one()) / (qfs - Rat::one());
        }
        total += term;
    }
    Ok(StructuredConstant::from_rat(total * data.global_factor()))
}

/// Numeric evaluation along a line at real `s` (for limit cross-checks).
pub fn igusa_eval_f64(data: &DenefData, line: &LineSpec, s: f64) -> Result<f64, DenefError> {
    data.validate()?;
    let mut total = 0.0;
    for (a, n) in &data.strata {
        if *n == 0 {
            continue;
        }
        let mut term = *n as f64;
        for id in a {
            let f = data.degree_of(id) as f64;
            let w = line.get(id)?;
            let s_a = -rat_to_f64(&w.rho) + rat_to_f64(&w.lambda) * s;
            let qf = (data.q as f64).powf(f);
            term *= (qf - 1.0) / (qf.powf(s_a) - 1.0);
        }
        total += term;
    }
    Ok(total * rat_to_f64(&data.mu0).powi(data.dim as i32)
        * (data.q as f64).powi(-(data.dim as i32)))
}

/// The zeta function along a line as an exact rational function of
/// `u = T^(1/L)`, `T = q^(-s)`, together with the rescaling `L`.
#[derive(Debug, Clone)]
pub struct ZetaLine {
    pub ratfun: RatFun,
    /// Exponent rescaling: the coefficient of `u^n` is the mass at
    /// `|f| = q^(-n/L)`-level `n/L` of `T`.
    pub rescale: u64,
}

/// Assembles the exact rational function of the zeta specialization.
///
/// Needs every `q^(f_a rho_a)` rational; fractional `lambda` is absorbed by
/// the global rescaling `T -> T^(1/L)`.
pub fn igusa_zeta_line(data: &DenefData, line: &LineSpec) -> Result<ZetaLine, DenefError> {
    data.validate()?;
    let q = rat_int(data.q as i64);
    // rescale so every T-exponent f * lambda becomes integral
    let mut rescale: u64 = 1;
    for c in &data.components {
        let w = line.get(&c.id)?;
        let e = &w.lambda * rat_int(c.f as i64);
        rescale = rescale.lcm(&e.denom().to_u64().unwrap_or(1));
    }
    // per-component factor data: (q^f - 1), c = q^(f rho), exponent f*lambda*L
    let mut comp: BTreeMap<&str, (Rat, Rat, u32)> = BTreeMap::new();
    for c in &data.components {
        let w = line.get(&c.id)?;
        let f = rat_int(c.f as i64);
        let qf = rat_pow_i64(&q, c.f as i64);
        let exp = &f * &w.rho;
        let cbase = rational_pow(&q, &exp).ok_or_else(|| {
            DenefError::NonRationalPower(crate::rational::rat_to_string(&exp))
        })?;
        let e = (&f * &w.lambda * rat_int(rescale as i64))
            .to_integer()
            .to_u32()
            .expect("rescaled exponent fits");
        comp.insert(&c.id, (qf - Rat::one(), cbase, e));
    }
    // common denominator: every populated component contributes its factor
    let populated = data.populated_components();
    let factors: Vec<DenFactor> = populated
        .iter()
        .map(|id| {
            let (_, c, e) = &comp[id.as_str()];
            DenFactor::new(c.clone(), *e, 1)
        })
        .collect();
    // numerator: sum over strata of N_A prod_{a in A} (q^f-1) c T^e
    //            * prod_{a populated, not in A} (1 - c T^e)
    let mut num = Polynomial::zero();
    for (a, n) in &data.strata {
        if *n == 0 {
            continue;
        }
        let mut term = Polynomial::constant(rat_int(*n as i64));
        for id in a {
            let (qf1, c, e) = &comp[id.as_str()];
            term = term.mul(&Polynomial::monomial(qf1 * c, *e as usize));
        }
        for id in populated.iter() {
            if a.contains(id) {
                continue;
            }
            let (_, c, e) = &comp[id.as_str()];
            let lin = Polynomial::from_coeffs({
                let mut v = vec![Rat::zero(); *e as usize + 1];
                v[0] = Rat::one();
                v[*e as usize] = -c.clone();
                v
            });
            term = term.mul(&lin);
        }
        num = num.add(&term);
    }
    num = num.scale(&data.global_factor());
    Ok(ZetaLine {
        ratfun: RatFun::new(num, factors).expect("valid factors"),
        rescale,
    })
}

/// Exact leading coefficient: a sum of structured constants. A single term
/// suffices when all critical exponents are integral; fractional exponents
/// rationalize `1/(q^e - 1)` into `sum_j q^(je) / (q^(re) - 1)` and leave a
/// genuine sum of q-powers.
#[derive(Debug, Clone, PartialEq)]
pub struct LeadingCoefficient {
    pub terms: Vec<StructuredConstant>,
}

impl LeadingCoefficient {
    pub fn zero() -> Self {
        LeadingCoefficient { terms: vec![] }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(|t| t.is_zero())
    }

    /// The unique term, when the sum collapses to one q-power.
    pub fn as_single(&self) -> Option<&StructuredConstant> {
        match self.terms.as_slice() {
            [one] => Some(one),
            _ => None,
        }
    }

    pub fn eval(&self) -> f64 {
        self.terms.iter().map(|t| t.eval()).sum()
    }
}

/// Pole location, order, and exact leading coefficient along a line.
#[derive(Debug, Clone)]
pub struct PoleReport {
    /// Abscissa `max rho/lambda` over populated components; `None` = −∞.
    pub a: Option<Rat>,
    /// Pole order at the abscissa.
    pub b: usize,
    /// `lim (s - a)^b Z(s)`, exact.
    pub leading: LeadingCoefficient,
    /// Components realizing the abscissa.
    pub critical_components: BTreeSet<String>,
    /// Populated strata with `b` critical components.
    pub critical_strata: Vec<BTreeSet<String>>,
}

/// Computes abscissa, pole order, and the exact leading coefficient.
///
/// Critical factors contribute `(q^f - 1)/(f lambda log q)` per vanishing
/// denominator; non-critical factors are evaluated at `s = a`.
pub fn pole_report(data: &DenefData, line: &LineSpec) -> Result<PoleReport, DenefError> {
    data.validate()?;
    let populated = data.populated_components();
    let mut a: Option<Rat> = None;
    for id in &populated {
        let w = line.get(id)?;
        let ratio = &w.rho / &w.lambda;
        a = Some(match a {
            None => ratio,
            Some(best) => best.max(ratio),
        });
    }
    let Some(a) = a else {
        return Ok(PoleReport {
            a: None,
            b: 0,
            leading: LeadingCoefficient::zero(),
            critical_components: BTreeSet::new(),
            critical_strata: vec![],
        });
    };
    let critical: BTreeSet<String> = populated
        .iter()
        .filter(|id| {
            let w = line.get(id).expect("validated");
            &w.rho == &(&a * &w.lambda)
        })
        .cloned()
        .collect();
    let b = data
        .strata
        .iter()
        .filter(|(_, n)| *n > 0)
        .map(|(set, _)| set.intersection(&critical).count())
        .max()
        .unwrap_or(0);
    let q = rat_int(data.q as i64);
    // exact arithmetic in the ring of rational combinations of q-powers:
    // exponent -> coefficient
    let mut sum: BTreeMap<Rat, Rat> = BTreeMap::new();
    let mut critical_strata = Vec::new();
    for (set, n) in &data.strata {
        if *n == 0 || set.intersection(&critical).count() != b {
            continue;
        }
        critical_strata.push(set.clone());
        let mut term: BTreeMap<Rat, Rat> = [(Rat::zero(), rat_int(*n as i64))].into();
        for id in set {
            let f = data.degree_of(id);
            let w = line.get(id)?;
            let qf1 = rat_pow_i64(&q, f as i64) - Rat::one();
            if critical.contains(id) {
                // (q^f - 1) / (f lambda log q); the log q lands in the
                // structured exponent below
                let scalar = qf1 / (rat_int(f as i64) * &w.lambda);
                for v in term.values_mut() {
                    *v *= &scalar;
                }
            } else {
                // (q^f - 1) / (q^e - 1) with e = f (lambda a - rho) > 0;
                // for fractional e = p/r multiply through by
                // sum_j q^(je) and divide by q^p - 1
                let exp = rat_int(f as i64) * (&w.lambda * &a - &w.rho);
                term = qpow_mul(&term, &qpow_inverse_qe_minus_1(&q, &exp));
                for v in term.values_mut() {
                    *v *= &qf1;
                }
            }
        }
        for (e, c) in term {
            *sum.entry(e).or_insert_with(Rat::zero) += c;
        }
    }
    let global = data.global_factor();
    let terms: Vec<StructuredConstant> = sum
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| StructuredConstant::new(c * &global, q.clone(), e, -(b as i64), 0))
        .collect();
    Ok(PoleReport {
        a: Some(a),
        b,
        leading: LeadingCoefficient { terms },
        critical_components: critical,
        critical_strata,
    })
}

/// Product in the ring `Q[q^(1/L)]` of exponent-indexed sums.
fn qpow_mul(a: &BTreeMap<Rat, Rat>, b: &BTreeMap<Rat, Rat>) -> BTreeMap<Rat, Rat> {
    let mut out: BTreeMap<Rat, Rat> = BTreeMap::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            *out.entry(ea + eb).or_insert_with(Rat::zero) += ca * cb;
        }
    }
    out
}

/// `1/(q^e - 1)` for rational `e = p/r > 0`, rationalized as
/// `(sum_{j<r} q^(je)) / (q^p - 1)`.
fn qpow_inverse_qe_minus_1(q: &Rat, e: &Rat) -> BTreeMap<Rat, Rat> {
    use num_traits::ToPrimitive;
    assert!(e.is_positive(), "exponent must be positive at the pole");
    let r = e.denom().to_i64().expect("small denominator");
    let p = e.numer().to_i64().expect("small numerator");
    let denom = rat_pow_i64(q, p) - Rat::one();
    (0..r)
        .map(|j| (e * rat_int(j), denom.clone().recip()))
        .collect()
}

/// Exact coefficients of the zeta line and their partial sums.
#[derive(Debug, Clone)]
pub struct SeriesCoefficients {
    pub rescale: u64,
    /// `z[n]` = mass at level `n/L` (coefficient of `u^n`).
    pub z: Vec<Rat>,
    /// `v[n] = sum_{m <= n} z[m]` = volume of the ball at height `q^(n/L)`.
    pub v: Vec<Rat>,
}

pub const SERIES_BUDGET: u64 = 4_000_000;

/// Expands the zeta line to order `n` in `T` (so `n * L` in `u`).
pub fn series_coefficients(
    data: &DenefData,
    line: &LineSpec,
    n: u64,
) -> Result<SeriesCoefficients, DenefError> {
    let zl = igusa_zeta_line(data, line)?;
    let len = n
        .checked_mul(zl.rescale)
        .filter(|&l| l <= SERIES_BUDGET)
        .ok_or(DenefError::BudgetExceeded(u64::MAX, SERIES_BUDGET))?;
    let series = zl.ratfun.series_expand(len as usize);
    let z = series.coeffs().to_vec();
    let v = series.partial_sums();
    Ok(SeriesCoefficients {
        rescale: zl.rescale,
        z,
        v,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::localzeta::{zeta_local, LocalField, LocalZeta};
    use crate::rational::rat;

    fn unit_line(ids: &[&str]) -> LineSpec {
        LineSpec::new(
            &ids.iter()
                .map(|id| (*id, Rat::one(), Rat::zero()))
                .collect::<Vec<_>>(),
        )
    }

    #[test]
    fn affine_line_matches_local_zeta_exactly() {
        for p in [2u64, 3, 5] {
            let data = affine_line_data(p);
            let line = unit_line(&["0"]);
            let zl = igusa_zeta_line(&data, &line).unwrap();
            assert_eq!(zl.rescale, 1);
            let LocalZeta::Padic { ratfun, .. } = zeta_local(&LocalField::padic(p).unwrap())
            else {
                panic!("padic expected")
            };
            assert!(zl.ratfun.equivalent(&ratfun), "p = {p}");
        }
    }

    #[test]
    fn no_boundary_is_constant() {
        let data = DenefData {
            dim: 2,
            q: 3,
            mu0: Rat::one(),
            components: vec![],
            strata: vec![(BTreeSet::new(), 7)],
        };
        let v = igusa_zeta_at(&data, &BTreeMap::new()).unwrap();
        assert_eq!(v.coeff, rat(7, 9));
    }

    #[test]
    fn disjoint_components_at_s_one() {
        // no joint stratum, f = 1, s_1 = s_2 = 1:
        // (q^-1 mu0)^dim (N_empty + N_1 + N_2) since (q-1)/(q-1) = 1
        let data = DenefData {
            dim: 1,
            q: 5,
            mu0: Rat::one(),
            components: vec![
                DenefComponent { id: "a".into(), f: 1 },
                DenefComponent { id: "b".into(), f: 1 },
            ],
            strata: vec![
                (BTreeSet::new(), 3),
                (["a".to_string()].into(), 1),
                (["b".to_string()].into(), 1),
            ],
        };
        let s: BTreeMap<String, Rat> =
            [("a".to_string(), Rat::one()), ("b".to_string(), Rat::one())].into();
        let v = igusa_zeta_at(&data, &s).unwrap();
        assert_eq!(v.coeff, rat(5, 5)); // (3 + 1 + 1)/5
    }

    #[test]
    fn weil_consistency_at_s_one() {
        // all s_a = 1: Z = (q^-1 mu0)^dim #X(k), the Weil measure
        let data = affine_line_data(7);
        let s: BTreeMap<String, Rat> = [("0".to_string(), Rat::one())].into();
        let v = igusa_zeta_at(&data, &s).unwrap();
        assert_eq!(v.coeff, Rat::one()); // (1/7) * (6 + 1)
    }

    #[test]
    fn nonconvergent_parameter_rejected() {
        let data = affine_line_data(3);
        let s: BTreeMap<String, Rat> = [("0".to_string(), Rat::zero())].into();
        assert!(matches!(
            igusa_zeta_at(&data, &s),
            Err(DenefError::NonconvergentParameter(_, _))
        ));
    }

    #[test]
    fn pure_zeta_pole_report() {
        // rho = 0, lambda = 1: a = 0, b = 1, leading = c_F
        for p in [2u64, 5] {
            let data = affine_line_data(p);
            let r = pole_report(&data, &unit_line(&["0"])).unwrap();
            assert_eq!(r.a, Some(Rat::zero()));
            assert_eq!(r.b, 1);
            let c = crate::localzeta::c_constant(&LocalField::padic(p).unwrap());
            assert_eq!(r.leading.as_single(), Some(&c), "p = {p}");
        }
    }

    #[test]
    fn volume_line_pole_report() {
        // D = 2*{0}, L = {0}: rho = 1, lambda = 1: a = 1, b = 1,
        // leading = (1 - p^-1)/log p
        let p = 3u64;
        let data = affine_line_data(p);
        let line = LineSpec::new(&[("0", Rat::one(), Rat::one())]);
        let r = pole_report(&data, &line).unwrap();
        assert_eq!(r.a, Some(Rat::one()));
        assert_eq!(r.b, 1);
        let single = r.leading.as_single().unwrap();
        assert_eq!(single.coeff, rat(2, 3));
        assert_eq!(single.logq_exp, -1);
        // numeric limit oracle: (s - 1) Z(s) at s = 1 + eps
        let lead = r.leading.eval();
        let mut prev_err = f64::INFINITY;
        for k in 3..=6 {
            let eps = 10f64.powi(-k);
            let z = igusa_eval_f64(&data, &line, 1.0 + eps).unwrap();
            let err = (z * eps - lead).abs();
            assert!(err < prev_err || err < 1e-9, "k = {k}");
            prev_err = err;
        }
        assert!(prev_err < 1e-4 * lead.abs());
    }

    #[test]
    fn negative_rho_still_reports() {
        let data = affine_line_data(3);
        let line = LineSpec::new(&[("0", Rat::one(), rat_int(-2))]);
        let r = pole_report(&data, &line).unwrap();
        assert_eq!(r.a, Some(rat_int(-2)));
        assert_eq!(r.b, 1);
    }

    #[test]
    fn empty_population_gives_minus_infinity() {
        let data = DenefData {
            dim: 1,
            q: 3,
            mu0: Rat::one(),
            components: vec![DenefComponent { id: "0".into(), f: 1 }],
            strata: vec![(BTreeSet::new(), 3), (["0".to_string()].into(), 0)],
        };
        let r = pole_report(&data, &unit_line(&["0"])).unwrap();
        assert_eq!(r.a, None);
        assert_eq!(r.b, 0);
    }

    #[test]
    fn zeta2_series_coefficients() {
        // Annulus masses of the plain measure on Z_2 (the line s_0 = 1 + s,
        // i.e. lambda = 1, rho = -1): Z_n = mu(|x| = 2^-n) = 2^(-n-1) and
        // V(2^N) = mu(|x| >= 2^-N) = 1 - 2^(-N-1).
        let data = affine_line_data(2);
        let line = LineSpec::new(&[("0", Rat::one(), rat_int(-1))]);
        let s = series_coefficients(&data, &line, 50).unwrap();
        assert_eq!(s.rescale, 1);
        for n in 0..=50usize {
            assert_eq!(s.z[n], rat_pow_i64(&rat(1, 2), n as i64 + 1));
            assert_eq!(s.v[n], Rat::one() - rat_pow_i64(&rat(1, 2), n as i64 + 1));
        }
        // The same data on the unit line (rho = 0) has constant coefficients
        // 1/2: the boundary-adapted measure gives every annulus equal mass,
        // matching the simple pole at s = 0.
        let s0 = series_coefficients(&data, &unit_line(&["0"]), 20).unwrap();
        assert!(s0.z.iter().all(|z| *z == rat(1, 2)));
    }

    #[test]
    fn constant_data_series() {
        let data = DenefData {
            dim: 1,
            q: 5,
            mu0: Rat::one(),
            components: vec![],
            strata: vec![(BTreeSet::new(), 4)],
        };
        let s = series_coefficients(&data, &LineSpec::default(), 10).unwrap();
        assert_eq!(s.z[0], rat(4, 5));
        assert!(s.z[1..].iter().all(|z| z.is_zero()));
    }

    #[test]
    fn growth_line_partial_sums() {
        // d = 2 line on the affine line: V(2^N) ~ c 2^N, and the ratio
        // matches the pole-report leading coefficient scaled by log q:
        // V(q^N)/q^(aN) -> leading * log(q) / (1 - q^(-a)) for b = 1.
        let data = affine_line_data(2);
        let line = LineSpec::new(&[("0", Rat::one(), Rat::one())]);
        let s = series_coefficients(&data, &line, 300).unwrap();
        let r = pole_report(&data, &line).unwrap();
        let lead = r.leading.eval();
        let expected = lead * 2f64.ln() / (1.0 - 0.5);
        let n = 300usize;
        let ratio = rat_to_f64(&(&s.v[n] / rat_pow_i64(&rat_int(2), n as i64)));
        assert!((ratio - expected).abs() < 1e-9, "{ratio} vs {expected}");
    }

    #[test]
    fn series_reconstructs_numeric_values() {
        // truncated series sums approximate Z(s) for s right of the pole
        let data = affine_line_data(3);
        let line = LineSpec::new(&[("0", rat_int(2), Rat::one())]); // s_0 = -1 + 2s
        let zl = igusa_zeta_line(&data, &line).unwrap();
        assert_eq!(zl.rescale, 1);
        let n = 400usize;
        let series = zl.ratfun.series_expand(n);
        let r = pole_report(&data, &line).unwrap();
        let a = rat_to_f64(r.a.as_ref().unwrap());
        for k in 1..=5 {
            let s = a + 0.5 + 0.3 * k as f64;
            let t = (3f64).powf(-s);
            let direct = igusa_eval_f64(&data, &line, s).unwrap();
            let mut acc = 0.0;
            let mut tn = 1.0;
            for m in 0..=n {
                acc += rat_to_f64(&series.coeff(m)) * tn;
                tn *= t;
            }
            assert!((acc - direct).abs() < 1e-8, "s = {s}");
        }
    }

    #[test]
    fn fractional_lambda_rescales() {
        // lambda = 1/2 needs T -> T^(1/2); with rho = 0 coefficients stay
        // rational and the pole sits at a = 0
        let data = affine_line_data(3);
        let line = LineSpec::new(&[("0", rat(1, 2), Rat::zero())]);
        let zl = igusa_zeta_line(&data, &line).unwrap();
        assert_eq!(zl.rescale, 2);
        let r = pole_report(&data, &line).unwrap();
        assert_eq!(r.a, Some(Rat::zero()));
        // leading: (1/3)(3-1)/((1)(1/2)) = 4/3, times (log q)^-1
        assert_eq!(r.leading.as_single().unwrap().coeff, rat(4, 3));
    }

    #[test]
    fn irrational_power_rejected() {
        // rho = 1/2 with q = 3: q^(1/2) is irrational
        let data = affine_line_data(3);
        let line = LineSpec::new(&[("0", Rat::one(), rat(1, 2))]);
        assert!(matches!(
            igusa_zeta_line(&data, &line),
            Err(DenefError::NonRationalPower(_))
        ));
        // but q = 4 admits rho = 1/2 exactly
        let data4 = DenefData {
            dim: 1,
            q: 4,
            mu0: Rat::one(),
            components: vec![DenefComponent { id: "0".into(), f: 1 }],
            strata: vec![(BTreeSet::new(), 3), (["0".to_string()].into(), 1)],
        };
        let line4 = LineSpec::new(&[("0", Rat::one(), rat(1, 2))]);
        let zl = igusa_zeta_line(&data4, &line4).unwrap();
        assert_eq!(zl.ratfun.den_factors()[0].c, rat_int(2));
    }

    /// Randomized check of the numeric pole-order identity:
    /// (s - a)^b Z(s) approaches the exact leading coefficient as s -> a.
    #[test]
    fn random_pole_reports_match_numeric_limits() {
        let mut state: u64 = 0xD1CE;
        let mut next = move |m: u64| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state % m
        };
        for _ in 0..25 {
            let q = [2u64, 3, 5][next(3) as usize];
            let n_comp = 1 + next(3) as usize;
            let components: Vec<DenefComponent> = (0..n_comp)
                .map(|i| DenefComponent {
                    id: format!("c{i}"),
                    f: 1 + next(3) as u32,
                })
                .collect();
            let mut strata = vec![(BTreeSet::new(), 1 + next(9))];
            let mut weights = Vec::new();
            for c in &components {
                strata.push(([c.id.clone()].into(), 1 + next(5)));
                weights.push((
                    c.id.clone(),
                    rat_int(1 + next(3) as i64),
                    rat_int(next(4) as i64),
                ));
            }
            if n_comp >= 2 {
                let joint: BTreeSet<String> =
                    components.iter().take(2).map(|c| c.id.clone()).collect();
                strata.push((joint, next(5)));
            }
            let data = DenefData {
                dim: 1 + next(3) as u32,
                q,
                mu0: Rat::one(),
                components,
                strata,
            };
            let line = LineSpec::new(
                &weights
                    .iter()
                    .map(|(id, l, r)| (id.as_str(), l.clone(), r.clone()))
                    .collect::<Vec<_>>(),
            );
            let report = pole_report(&data, &line).unwrap();
            let a = rat_to_f64(report.a.as_ref().unwrap());
            let b = report.b as i32;
            let lead = report.leading.eval();
            assert!(lead > 0.0);
            let mut prev = f64::INFINITY;
            for k in 3..=6 {
                let eps = 10f64.powi(-k);
                let z = igusa_eval_f64(&data, &line, a + eps).unwrap();
                let err = ((z * eps.powi(b)) - lead).abs() / lead;
                assert!(err < prev.max(1e-6) * 1.5, "no convergence at k = {k}");
                prev = err;
            }
            assert!(prev < 2e-3, "limit mismatch: {prev}");
        }
    }

    #[test]
    fn positivity_of_terms_forces_pole_order() {
        // two components, one joint stratum: b = 2 and the numeric pole
        // order matches (no cancellation can occur)
        let data = DenefData {
            dim: 2,
            q: 3,
            mu0: Rat::one(),
            components: vec![
                DenefComponent { id: "a".into(), f: 1 },
                DenefComponent { id: "b".into(), f: 2 },
            ],
            strata: vec![
                (BTreeSet::new(), 4),
                (["a".to_string()].into(), 2),
                (["b".to_string()].into(), 1),
                (["a".to_string(), "b".to_string()].into(), 3),
            ],
        };
        let line = LineSpec::new(&[
            ("a", Rat::one(), Rat::one()),
            ("b", rat_int(2), rat_int(2)),
        ]);
        let r = pole_report(&data, &line).unwrap();
        assert_eq!(r.a, Some(Rat::one()));
        assert_eq!(r.b, 2);
        assert_eq!(r.critical_components.len(), 2);
        assert_eq!(r.critical_strata, vec![BTreeSet::from(["a".to_string(), "b".to_string()])]);
        // numeric: (s-1)^2 Z(s) -> leading
        let lead = r.leading.eval();
        assert!(lead > 0.0);
        let eps = 1e-5;
        let z = igusa_eval_f64(&data, &line, 1.0 + eps).unwrap();
        assert!((z * eps * eps - lead).abs() < 1e-3 * lead);
    }
}
