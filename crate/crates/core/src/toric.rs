//! Fans of smooth toric compactifications, lattice Galois actions, and
//! the induced combinatorics: invariant sublattices, induced fans on the
//! fixed part, and the associated Clemens complexes.
//!
//! The boundary components of a torus embedding are the rays of its fan;
//! a set of components meets iff the rays span a common cone. The geometric
//! Clemens complex is therefore the set of positive-dimensional cones
//! ordered by inclusion, and the analytic one keeps the Galois-invariant
//! cones, a face of dimension `#(ray orbits) - 1` each: equivalently the
//! complex of the fan induced on the invariant sublattice.

use crate::clemens::{ClemensComplex, Face};
use crate::intlin::{self, IMat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ToricError {
    #[error("fan validation failed: {0}")]
    FanValidationFailure(String),
    #[error("matrix is not unimodular (det = {0})")]
    NotUnimodular(String),
    #[error("action does not preserve the fan: {0}")]
    ActionMismatch(String),
}

/// A simplicial fan given by the primitive generators of its cones.
/// The zero cone is implicit; every face of a listed cone must be listed.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Fan {
    pub rank: usize,
    /// Each cone is a list of primitive integer generators.
    pub cones: Vec<Vec<Vec<i64>>>,
    /// Smoothness flag: false when only simpliciality is guaranteed
    /// (induced fans on invariant sublattices may be singular).
    #[serde(default = "default_true")]
    pub smooth: bool,
}

fn default_true() -> bool {
    true
}

/// Canonical key of a cone: sorted set of primitive generators.
fn cone_key(cone: &[Vec<i64>]) -> BTreeSet<Vec<i64>> {
    cone.iter().map(|v| primitive_i64(v)).collect()
}

fn primitive_i64(v: &[i64]) -> Vec<i64> {
    let mut g: i64 = 0;
    for &x in v {
        g = num_integer::gcd(g, x.abs());
    }
    if g <= 1 {
        return v.to_vec();
    }
    v.iter().map(|&x| x / g).collect()
}

impl Fan {
    pub fn new(rank: usize, cones: Vec<Vec<Vec<i64>>>) -> Result<Fan, ToricError> {
        let fan = Fan {
            rank,
            cones,
            smooth: true,
        };
        fan.validate()?;
        Ok(fan)
    }

    /// The fan of `P^1`: rays `+1`, `-1`.
    pub fn p1() -> Fan {
        Fan::new(1, vec![vec![vec![1]], vec![vec![-1]]]).unwrap()
    }

    /// The fan of `P^2`: rays `e1`, `e2`, `-e1-e2` and the three 2-cones.
    pub fn p2() -> Fan {
        Fan::new(
            2,
            vec![
                vec![vec![1, 0]],
                vec![vec![0, 1]],
                vec![vec![-1, -1]],
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, -1]],
                vec![vec![1, 0], vec![-1, -1]],
            ],
        )
        .unwrap()
    }

    /// The fan of `P^1 x P^1`: four rays, four quadrant 2-cones.
    pub fn p1xp1() -> Fan {
        Fan::new(
            2,
            vec![
                vec![vec![1, 0]],
                vec![vec![-1, 0]],
                vec![vec![0, 1]],
                vec![vec![0, -1]],
                vec![vec![1, 0], vec![0, 1]],
                vec![vec![0, 1], vec![-1, 0]],
                vec![vec![-1, 0], vec![0, -1]],
                vec![vec![0, -1], vec![1, 0]],
            ],
        )
        .unwrap()
    }

    fn cone_mat(&self, cone: &[Vec<i64>]) -> IMat {
        // columns are the generators
        (0..self.rank)
            .map(|r| cone.iter().map(|g| BigInt::from(g[r])).collect())
            .collect()
    }

    pub fn validate(&self) -> Result<(), ToricError> {
        let keys: Vec<BTreeSet<Vec<i64>>> = self.cones.iter().map(|c| cone_key(c)).collect();
        let key_set: BTreeSet<&BTreeSet<Vec<i64>>> = keys.iter().collect();
        if key_set.len() != keys.len() {
            return Err(ToricError::FanValidationFailure("duplicate cones".into()));
        }
        for (i, cone) in self.cones.iter().enumerate() {
            if cone.is_empty() {
                return Err(ToricError::FanValidationFailure(
                    "the zero cone is implicit; cones must have generators".into(),
                ));
            }
            for g in cone {
                if g.len() != self.rank {
                    return Err(ToricError::FanValidationFailure(
                        "generator has wrong dimension".into(),
                    ));
                }
                if g.iter().all(|&x| x == 0) {
                    return Err(ToricError::FanValidationFailure(
                        "zero generator".into(),
                    ));
                }
                if primitive_i64(g) != *g {
                    return Err(ToricError::FanValidationFailure(format!(
                        "generator {g:?} is not primitive"
                    )));
                }
            }
            // linear independence (simpliciality)
            let m = self.cone_mat(cone);
            if intlin::rank(&m) != cone.len() {
                return Err(ToricError::FanValidationFailure(format!(
                    "cone {i} is not simplicial"
                )));
            }
            // faces present
            for mask in 1u64..(1 << cone.len()) - 1 {
                let sub: Vec<Vec<i64>> = cone
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, g)| g.clone())
                    .collect();
                let sk = cone_key(&sub);
                if !keys.contains(&sk) {
                    return Err(ToricError::FanValidationFailure(format!(
                        "face {sk:?} of cone {i} is missing"
                    )));
                }
            }
        }
        // distinct cones must intersect in the common face: it suffices that
        // the barycenter of each cone lies in no other cone except its
        // super-cones
        for (i, cone) in self.cones.iter().enumerate() {
            let bary: Vec<BigInt> = (0..self.rank)
                .map(|r| cone.iter().map(|g| BigInt::from(g[r])).sum())
                .collect();
            for (j, other) in self.cones.iter().enumerate() {
                if i == j {
                    continue;
                }
                if self.cone_contains(other, &bary) && !keys[j].is_superset(&keys[i]) {
                    return Err(ToricError::FanValidationFailure(format!(
                        "cones {i} and {j} overlap beyond a common face"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Membership of an integer vector in the (simplicial) cone.
    fn cone_contains(&self, cone: &[Vec<i64>], v: &[BigInt]) -> bool {
        let m = self.cone_mat(cone);
        match intlin::solve_rational(&m, v) {
            Some(coeffs) => coeffs.iter().all(|c| !c.is_negative()),
            None => false,
        }
    }

    /// Whether all cone generators extend to a lattice basis (gcd of the
    /// maximal minors is 1).
    pub fn check_smooth(&self) -> bool {
        for cone in &self.cones {
            let m = self.cone_mat(cone);
            let k = cone.len();
            // gcd of k x k minors via the echelon form's pivot product
            let (h, _) = intlin::column_echelon(&m);
            let mut prod = BigInt::one();
            let mut col = 0;
            for row in h.iter() {
                if col < k && !row[col].is_zero() {
                    prod *= row[col].abs();
                    col += 1;
                }
            }
            // echelon pivots multiply to the lattice index of the span
            if col != k || !prod.is_one() {
                return false;
            }
        }
        true
    }

    /// Rays (1-cones) in declaration order.
    pub fn rays(&self) -> Vec<Vec<i64>> {
        self.cones
            .iter()
            .filter(|c| c.len() == 1)
            .map(|c| c[0].clone())
            .collect()
    }
}

/// Lattice automorphisms preserving a fan.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeAction {
    pub generators: Vec<Vec<Vec<i64>>>,
}

impl LatticeAction {
    pub fn trivial() -> Self {
        LatticeAction { generators: vec![] }
    }

    pub fn new(generators: Vec<Vec<Vec<i64>>>) -> Self {
        LatticeAction { generators }
    }

    pub fn validate(&self, fan: &Fan) -> Result<(), ToricError> {
        let keys: BTreeSet<BTreeSet<Vec<i64>>> =
            fan.cones.iter().map(|c| cone_key(c)).collect();
        for g in &self.generators {
            if g.len() != fan.rank || g.iter().any(|row| row.len() != fan.rank) {
                return Err(ToricError::ActionMismatch("matrix size".into()));
            }
            let m = intlin::mat_from_i64(g);
            let d = intlin::det(&m);
            if !d.abs().is_one() {
                return Err(ToricError::NotUnimodular(d.to_string()));
            }
            for cone in &fan.cones {
                let image: Vec<Vec<i64>> = cone.iter().map(|v| apply(g, v)).collect();
                if !keys.contains(&cone_key(&image)) {
                    return Err(ToricError::ActionMismatch(format!(
                        "image of cone {cone:?} is not in the fan"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    (0..m.len())
        .map(|i| (0..v.len()).map(|j| m[i][j] * v[j]).sum())
        .collect()
}

/// Primitive basis of the sublattice fixed by every generator.
pub fn invariant_sublattice(action: &LatticeAction, rank: usize) -> Vec<Vec<BigInt>> {
    if action.generators.is_empty() {
        return intlin::identity(rank);
    }
    // stack (M_i - I) and take the saturated kernel
    let mut stacked: IMat = Vec::new();
    for g in &action.generators {
        for i in 0..rank {
            let mut row: Vec<BigInt> = (0..rank).map(|j| BigInt::from(g[i][j])).collect();
            row[i] -= BigInt::one();
            stacked.push(row);
        }
    }
    intlin::kernel_basis(&stacked)
        .into_iter()
        .map(|v| intlin::primitive(&v))
        .collect()
}

/// A fan on the invariant sublattice: cones are the intersections
/// `sigma ∩ (N_0)_R` over the invariant cones `sigma`, expressed in the
/// sublattice basis. Simplicial by construction, but possibly singular.
pub fn induced_fan(fan: &Fan, action: &LatticeAction) -> Result<Fan, ToricError> {
    action.validate(fan)?;
    let basis = invariant_sublattice(action, fan.rank);
    let sub_rank = basis.len();
    // basis as columns of a rank x sub_rank matrix
    let basis_mat: IMat = (0..fan.rank)
        .map(|r| (0..sub_rank).map(|c| basis[c][r].clone()).collect())
        .collect();
    let mut new_cones: BTreeSet<BTreeSet<Vec<i64>>> = BTreeSet::new();
    for cone in &fan.cones {
        if !is_invariant_cone(cone, action) {
            continue;
        }
        // orbit sums of the rays generate the intersection with N_0
        let gens = orbit_sums(cone, action);
        let mut expressed: Vec<Vec<i64>> = Vec::new();
        for g in gens {
            let target: Vec<BigInt> = g.iter().map(|&x| BigInt::from(x)).collect();
            let coeffs = intlin::solve_rational(&basis_mat, &target).ok_or_else(|| {
                ToricError::FanValidationFailure(
                    "orbit sum does not lie in the invariant sublattice".into(),
                )
            })?;
            let ints: Option<Vec<i64>> = coeffs
                .iter()
                .map(|c| {
                    if c.denom().is_one() {
                        num_traits::ToPrimitive::to_i64(c.numer())
                    } else {
                        None
                    }
                })
                .collect();
            let v = ints.ok_or_else(|| {
                ToricError::FanValidationFailure("non-integral invariant coordinates".into())
            })?;
            expressed.push(primitive_i64(&v));
        }
        expressed.sort();
        expressed.dedup();
        if !expressed.is_empty() {
            new_cones.insert(expressed.into_iter().collect());
        }
    }
    let cones: Vec<Vec<Vec<i64>>> = new_cones
        .into_iter()
        .map(|k| k.into_iter().collect())
        .collect();
    let mut out = Fan {
        rank: sub_rank,
        cones,
        smooth: true,
    };
    out.validate()?;
    out.smooth = out.check_smooth();
    Ok(out)
}

fn is_invariant_cone(cone: &[Vec<i64>], action: &LatticeAction) -> bool {
    let key = cone_key(cone);
    action.generators.iter().all(|g| {
        let image: Vec<Vec<i64>> = cone.iter().map(|v| apply(g, v)).collect();
        cone_key(&image) == key
    })
}

/// Sums of the generator orbits inside an invariant cone.
fn orbit_sums(cone: &[Vec<i64>], action: &LatticeAction) -> Vec<Vec<i64>> {
    let mut orbits: Vec<BTreeSet<Vec<i64>>> = cone
        .iter()
        .map(|v| BTreeSet::from([primitive_i64(v)]))
        .collect();
    // merge orbits until stable
    let mut changed = true;
    while changed {
        changed = false;
        for g in &action.generators {
            for i in 0..orbits.len() {
                let images: BTreeSet<Vec<i64>> =
                    orbits[i].iter().map(|v| primitive_i64(&apply(g, v))).collect();
                if let Some(j) = (0..orbits.len())
                    .find(|&j| j != i && !orbits[j].is_disjoint(&images))
                {
                    let (lo, hi) = (i.min(j), i.max(j));
                    let moved = orbits.remove(hi);
                    orbits[lo].extend(moved);
                    changed = true;
                    break;
                }
                if !images.is_subset(&orbits[i]) {
                    orbits[i].extend(images);
                    changed = true;
                }
            }
        }
    }
    orbits
        .iter()
        .map(|orbit| {
            let mut sum = vec![0i64; orbit.iter().next().map_or(0, |v| v.len())];
            for v in orbit {
                for (s, x) in sum.iter_mut().zip(v) {
                    *s += x;
                }
            }
            sum
        })
        .collect()
}

/// Clemens complexes of a torus embedding.
pub struct ToricClemens {
    /// All positive-dimensional cones, ordered by inclusion.
    pub geometric: ClemensComplex,
    /// Invariant cones; face dimension = #(ray orbits) - 1. Rational and
    /// analytic complexes coincide for toric varieties.
    pub rational_analytic: ClemensComplex,
}

/// Builds the geometric and rational(= analytic) Clemens complexes of the
/// compactification described by `fan` with Galois action `action`.
pub fn toric_clemens(fan: &Fan, action: &LatticeAction) -> Result<ToricClemens, ToricError> {
    fan.validate()?;
    action.validate(fan)?;
    let rays = fan.rays();
    let ray_index = |v: &[i64]| -> usize {
        let p = primitive_i64(v);
        rays.iter().position(|r| *r == p).expect("ray present")
    };
    let components: Vec<String> = rays.iter().map(|r| format!("D{r:?}")).collect();

    let cone_faces: Vec<(BTreeSet<usize>, usize)> = fan
        .cones
        .iter()
        .enumerate()
        .map(|(i, c)| (c.iter().map(|v| ray_index(v)).collect(), i))
        .collect();
    let faces: Vec<Face> = cone_faces
        .iter()
        .map(|(a, i)| Face {
            a: a.clone(),
            z: format!("orbit{{{i}}}"),
            has_point: true,
        })
        .collect();
    // order: cone inclusion = ray-set inclusion for simplicial fans
    let mut pairs = Vec::new();
    for (i, (a, _)) in cone_faces.iter().enumerate() {
        for (j, (b, _)) in cone_faces.iter().enumerate() {
            if i != j && a.is_subset(b) {
                pairs.push((i, j));
            }
        }
    }
    // induced action on faces
    let mut face_action = Vec::new();
    for g in &action.generators {
        let mut perm = Vec::with_capacity(faces.len());
        for cone in &fan.cones {
            let image: BTreeSet<usize> = cone
                .iter()
                .map(|v| ray_index(&apply(g, v)))
                .collect();
            let target = cone_faces
                .iter()
                .position(|(a, _)| *a == image)
                .ok_or_else(|| ToricError::ActionMismatch("cone image missing".into()))?;
            perm.push(target);
        }
        face_action.push(perm);
    }
    let geometric = ClemensComplex::from_poset(
        components.clone(),
        faces.clone(),
        &pairs,
        face_action,
        None,
    );

    // invariant cones with orbit-count dimensions
    let invariant: Vec<usize> = (0..fan.cones.len())
        .filter(|&i| is_invariant_cone(&fan.cones[i], action))
        .collect();
    let inv_faces: Vec<Face> = invariant.iter().map(|&i| faces[i].clone()).collect();
    let mut inv_pairs = Vec::new();
    for (x, &i) in invariant.iter().enumerate() {
        for (y, &j) in invariant.iter().enumerate() {
            if x != y && cone_faces[i].0.is_subset(&cone_faces[j].0) {
                inv_pairs.push((x, y));
            }
        }
    }
    let dims: Vec<usize> = invariant
        .iter()
        .map(|&i| orbit_sums(&fan.cones[i], action).len() - 1)
        .collect();
    let rational_analytic = ClemensComplex::from_poset(
        components,
        inv_faces,
        &inv_pairs,
        vec![],
        Some(dims),
    );
    Ok(ToricClemens {
        geometric,
        rational_analytic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn swap_action() -> LatticeAction {
        LatticeAction::new(vec![vec![vec![0, 1], vec![1, 0]]])
    }

    #[test]
    fn invariant_sublattices() {
        // trivial action: identity basis
        let t = invariant_sublattice(&LatticeAction::trivial(), 2);
        assert_eq!(t.len(), 2);
        // coordinate swap: diagonal (1, 1)
        let s = invariant_sublattice(&swap_action(), 2);
        assert_eq!(s.len(), 1);
        assert_eq!(s[0][0], s[0][1]);
        assert!(s[0][0].abs().is_one());
        // -I: anisotropic, zero lattice
        let m = invariant_sublattice(
            &LatticeAction::new(vec![vec![vec![-1, 0], vec![0, -1]]]),
            2,
        );
        assert!(m.is_empty());
    }

    #[test]
    fn induced_fan_of_p1xp1_swap_is_p1() {
        let fan = Fan::p1xp1();
        let induced = induced_fan(&fan, &swap_action()).unwrap();
        assert_eq!(induced.rank, 1);
        // cones {R+, R-} up to relabeling: exactly the P^1 fan
        let mut keys: Vec<Vec<Vec<i64>>> = induced.cones.clone();
        keys.sort();
        let mut expected = Fan::p1().cones;
        expected.sort();
        assert_eq!(keys, expected);
        assert!(induced.smooth);
    }

    #[test]
    fn induced_fan_trivial_action_is_identity() {
        let fan = Fan::p2();
        let induced = induced_fan(&fan, &LatticeAction::trivial()).unwrap();
        assert_eq!(induced.rank, 2);
        let mut a = induced.cones.iter().map(|c| cone_key(c)).collect::<Vec<_>>();
        let mut b = fan.cones.iter().map(|c| cone_key(c)).collect::<Vec<_>>();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn p1_clemens_is_two_points() {
        let tc = toric_clemens(&Fan::p1(), &LatticeAction::trivial()).unwrap();
        assert_eq!(tc.geometric.faces().len(), 2);
        assert_eq!(tc.geometric.dimension(), Some(0));
    }

    #[test]
    fn p2_clemens_is_a_triangle_boundary() {
        let tc = toric_clemens(&Fan::p2(), &LatticeAction::trivial()).unwrap();
        assert_eq!(tc.geometric.vertices().len(), 3);
        assert_eq!(tc.geometric.faces().len(), 6);
        assert_eq!(tc.geometric.dimension(), Some(1));
        // trivial action: rational = geometric
        assert_eq!(tc.rational_analytic.faces().len(), 6);
        assert_eq!(tc.rational_analytic.dimension(), Some(1));
    }

    #[test]
    fn p1xp1_swap_analytic_complex() {
        let tc = toric_clemens(&Fan::p1xp1(), &swap_action()).unwrap();
        // invariant positive-dimensional cones: the two diagonal quadrants
        assert_eq!(tc.rational_analytic.faces().len(), 2);
        for i in 0..2 {
            assert_eq!(tc.rational_analytic.face_dimension(i), 0);
        }
        assert_eq!(tc.rational_analytic.dimension(), Some(0));
        // geometric complex sees all eight cones
        assert_eq!(tc.geometric.faces().len(), 8);
    }

    #[test]
    fn analytic_complex_matches_induced_fan_complex() {
        // poset isomorphism between the invariant-cone complex and the
        // geometric complex of the induced fan
        let cases: Vec<(Fan, LatticeAction)> = vec![
            (Fan::p1xp1(), swap_action()),
            (Fan::p2(), LatticeAction::trivial()),
            (Fan::p1xp1(), LatticeAction::trivial()),
        ];
        for (fan, action) in cases {
            let tc = toric_clemens(&fan, &action).unwrap();
            let ind = induced_fan(&fan, &action).unwrap();
            let tc_ind = toric_clemens(&ind, &LatticeAction::trivial()).unwrap();
            assert!(
                poset_isomorphic(&tc.rational_analytic, &tc_ind.geometric),
                "analytic complex does not match the induced fan"
            );
        }
    }

    fn poset_isomorphic(a: &ClemensComplex, b: &ClemensComplex) -> bool {
        let n = a.faces().len();
        if n != b.faces().len() {
            return false;
        }
        // backtracking search over dimension-compatible assignments
        fn extend(
            a: &ClemensComplex,
            b: &ClemensComplex,
            map: &mut Vec<Option<usize>>,
            used: &mut Vec<bool>,
            i: usize,
        ) -> bool {
            let n = a.faces().len();
            if i == n {
                return true;
            }
            for j in 0..n {
                if used[j] || a.face_dimension(i) != b.face_dimension(j) {
                    continue;
                }
                let ok = (0..i).all(|k| {
                    let m = map[k].unwrap();
                    a.leq(k, i) == b.leq(m, j) && a.leq(i, k) == b.leq(j, m)
                });
                if ok {
                    map[i] = Some(j);
                    used[j] = true;
                    if extend(a, b, map, used, i + 1) {
                        return true;
                    }
                    map[i] = None;
                    used[j] = false;
                }
            }
            false
        }
        let mut map = vec![None; n];
        let mut used = vec![false; n];
        extend(a, b, &mut map, &mut used, 0)
    }

    #[test]
    fn analytic_face_dimensions_are_orbit_counts() {
        let tc = toric_clemens(&Fan::p1xp1(), &swap_action()).unwrap();
        for i in 0..tc.rational_analytic.faces().len() {
            // each invariant quadrant has two rays in one orbit
            assert_eq!(tc.rational_analytic.face_dimension(i), 0);
        }
    }

    /// P1 x P1 x P1 with the three factors rotated cyclically: the
    /// invariant sublattice is the main diagonal and the induced fan is P1.
    #[test]
    fn triple_product_rotation() {
        let mut cones: Vec<Vec<Vec<i64>>> = Vec::new();
        let e = |i: usize, s: i64| -> Vec<i64> {
            let mut v = vec![0i64; 3];
            v[i] = s;
            v
        };
        // all faces of the eight octant 3-cones
        for sx in [1i64, -1] {
            for sy in [1i64, -1] {
                for sz in [1i64, -1] {
                    let c = [e(0, sx), e(1, sy), e(2, sz)];
                    for mask in 1u8..8 {
                        let sub: Vec<Vec<i64>> = (0..3)
                            .filter(|k| mask >> k & 1 == 1)
                            .map(|k| c[k].clone())
                            .collect();
                        if !cones.iter().any(|d| cone_key(d) == cone_key(&sub)) {
                            cones.push(sub);
                        }
                    }
                }
            }
        }
        let fan = Fan::new(3, cones).unwrap();
        let rot = LatticeAction::new(vec![vec![
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![1, 0, 0],
        ]]);
        let sub = invariant_sublattice(&rot, 3);
        assert_eq!(sub.len(), 1);
        assert!(sub[0].iter().all(|x| x.abs().is_one()));
        let induced = induced_fan(&fan, &rot).unwrap();
        assert_eq!(induced.rank, 1);
        let mut keys = induced.cones.clone();
        keys.sort();
        assert_eq!(keys, vec![vec![vec![-1]], vec![vec![1]]]);
        // analytic complex: the two invariant octants, dimension 0 each
        let tc = toric_clemens(&fan, &rot).unwrap();
        assert_eq!(tc.rational_analytic.faces().len(), 2);
        assert_eq!(tc.rational_analytic.dimension(), Some(0));
        assert_eq!(tc.geometric.faces().len(), 26); // 6 rays + 12 2-cones + 8 octants
    }

    #[test]
    fn bad_fans_rejected() {
        // missing face
        assert!(matches!(
            Fan::new(2, vec![vec![vec![1, 0], vec![0, 1]]]),
            Err(ToricError::FanValidationFailure(_))
        ));
        // overlapping cones: R+ e1 and cone(e1, e2) without... actually
        // overlap via interiors: cone(e1, e2) and cone(e1+e2 direction ray)
        let overlapping = Fan::new(
            2,
            vec![
                vec![vec![1, 0]],
                vec![vec![0, 1]],
                vec![vec![1, 1]],
                vec![vec![1, 0], vec![0, 1]],
            ],
        );
        assert!(overlapping.is_err());
        // non-primitive generator
        assert!(Fan::new(1, vec![vec![vec![2]]]).is_err());
        // non-unimodular action
        let fan = Fan::p1();
        let act = LatticeAction::new(vec![vec![vec![2]]]);
        assert!(act.validate(&fan).is_err());
    }

    #[test]
    fn smoothness_detection() {
        // cone((1,1), (1,-1)) spans an index-2 sublattice
        let fan = Fan::new(
            2,
            vec![
                vec![vec![1, 1]],
                vec![vec![1, -1]],
                vec![vec![1, 1], vec![1, -1]],
            ],
        )
        .unwrap();
        assert!(!fan.check_smooth());
        assert!(Fan::p2().check_smooth());
    }
}
