//! Clemens complexes of strict-normal-crossings boundary divisors.
//!
//! A face is a pair `(A, Z)`: a set `A` of boundary components together with
//! an irreducible component `Z` of their intersection. Faces are ordered by
//! `(A, Z) < (A', Z')` iff `A ⊂ A'` and `Z ⊃ Z'`; normal crossings makes the
//! containing component at each level unique, which is what the validation
//! enforces. A finite group (Galois) acts on components and hence on faces;
//! the fixed sub-poset and the sub-poset of faces with local rational points
//! are the rational and analytic complexes.
//!
//! Incidence data is supplied, not computed from equations: faces list their
//! `A`-sets and stratum labels, and when an intersection is reducible the
//! record names its immediate sub-faces explicitly (field `within`).

use crate::rational::Rat;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ClemensError {
    #[error("invalid permutation in group action")]
    BadPermutation,
    #[error("group closure exceeds the bound {0}")]
    GroupTooLarge(usize),
    #[error("inconsistent incidence: {0}")]
    InconsistentIncidence(String),
    #[error("containment declarations create a cycle at face {0:?}")]
    NotAPoset(String),
    #[error("group action does not permute faces consistently: {0}")]
    ActionMismatch(String),
    #[error("face {0:?} is not invariant under the action")]
    FaceNotInvariant(String),
    #[error("point flags are not downward-closed: face {0:?} has a point but sub-face {1:?} does not")]
    PointFlagInconsistency(String, String),
    #[error("missing weight for component {0:?}")]
    MissingWeight(String),
    #[error("weight lambda must be positive for component {0:?}")]
    NonPositiveWeight(String),
}

/// A finite permutation group given by generators on `{0, .., degree-1}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupAction {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// Bound on the closure enumeration: Galois groups in scope are small.
pub const GROUP_BOUND: usize = 1_000_000;

impl GroupAction {
    pub fn trivial(degree: usize) -> Self {
        GroupAction {
            degree,
            generators: vec![],
        }
    }

    pub fn new(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self, ClemensError> {
        for g in &generators {
            if g.len() != degree {
                return Err(ClemensError::BadPermutation);
            }
            let mut seen = vec![false; degree];
            for &i in g {
                if i >= degree || seen[i] {
                    return Err(ClemensError::BadPermutation);
                }
                seen[i] = true;
            }
        }
        Ok(GroupAction { degree, generators })
    }

    /// All group elements, enumerated by closure under composition.
    pub fn elements(&self) -> Result<Vec<Vec<usize>>, ClemensError> {
        let id: Vec<usize> = (0..self.degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(id.clone());
        let mut frontier = vec![id];
        while let Some(g) = frontier.pop() {
            for gen in &self.generators {
                let comp: Vec<usize> = (0..self.degree).map(|i| gen[g[i]]).collect();
                if seen.insert(comp.clone()) {
                    if seen.len() > GROUP_BOUND {
                        return Err(ClemensError::GroupTooLarge(GROUP_BOUND));
                    }
                    frontier.push(comp);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }
}

/// One declared face `(A, Z)` of the incidence data.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceData {
    /// Component ids in `A`.
    #[serde(rename = "A")]
    pub a: BTreeSet<String>,
    /// Stratum label; globally unique.
    #[serde(rename = "Z")]
    pub z: String,
    #[serde(default = "default_true")]
    pub has_point: bool,
    /// Stratum labels of the immediate sub-faces (one per removed component).
    /// Only needed when some `D_A'` is reducible; otherwise inferred.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub within: Vec<String>,
}

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentData {
    pub id: String,
    /// Residue-extension degree label carried through to zeta assembly.
    #[serde(default = "default_one")]
    pub f: u32,
}

/// A group generator: a permutation of the components, optionally with an
/// explicit map on stratum labels. The stratum map is only needed when an
/// intersection is reducible (several strata share an `A`-set), where the
/// induced action on faces cannot be inferred from components alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorSpec {
    Plain(Vec<usize>),
    WithStrata {
        perm: Vec<usize>,
        #[serde(default)]
        z_map: BTreeMap<String, String>,
    },
}

impl GeneratorSpec {
    pub fn perm(&self) -> &[usize] {
        match self {
            GeneratorSpec::Plain(p) => p,
            GeneratorSpec::WithStrata { perm, .. } => perm,
        }
    }

    fn z_image(&self, z: &str) -> Option<&str> {
        match self {
            GeneratorSpec::Plain(_) => None,
            GeneratorSpec::WithStrata { z_map, .. } => z_map.get(z).map(|s| s.as_str()),
        }
    }
}

fn default_one() -> u32 {
    1
}

/// Raw incidence data for a boundary divisor.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DivisorIncidence {
    pub components: Vec<ComponentData>,
    /// Permutation generators acting on `components` (by index).
    #[serde(default)]
    pub generators: Vec<GeneratorSpec>,
    pub faces: Vec<FaceData>,
}

/// A face of the built complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub a: BTreeSet<usize>,
    pub z: String,
    pub has_point: bool,
}

/// The Clemens complex: faces, order closure, induced group action.
#[derive(Debug, Clone)]
pub struct ClemensComplex {
    components: Vec<String>,
    faces: Vec<Face>,
    /// `leq[i]` = indices j with face_i ≺ face_j (including i itself).
    above: Vec<BTreeSet<usize>>,
    /// Generators acting on face indices.
    action: Vec<Vec<usize>>,
    /// Orbit-count dimensions, when they differ from chain dimensions
    /// (used by analytic complexes of non-split data).
    dim_override: Option<Vec<usize>>,
}

impl ClemensComplex {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    pub fn component_name(&self, i: usize) -> &str {
        &self.components[i]
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn action_generators(&self) -> &[Vec<usize>] {
        &self.action
    }

    /// Whether `faces[i] ≺ faces[j]`.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.above[i].contains(&j)
    }

    /// Vertices: faces with a singleton `A`.
    pub fn vertices(&self) -> Vec<usize> {
        (0..self.faces.len())
            .filter(|&i| self.faces[i].a.len() == 1)
            .collect()
    }

    /// Chain dimension of a face: longest chain strictly below it.
    pub fn face_dimension(&self, i: usize) -> usize {
        if let Some(d) = &self.dim_override {
            return d[i];
        }
        self.chain_dimension(i)
    }

    fn chain_dimension(&self, i: usize) -> usize {
        // longest chain ending at i; faces are graded by |A| here, so a
        // simple DP over the strict down-set works
        let mut below: Vec<usize> = (0..self.faces.len())
            .filter(|&j| j != i && self.leq(j, i))
            .collect();
        below.push(i);
        below.sort_by_key(|&j| self.faces[j].a.len());
        let mut best: BTreeMap<usize, usize> = BTreeMap::new();
        for &j in &below {
            let mut d = 0;
            for &k in &below {
                if k != j && self.leq(k, j) {
                    if let Some(&dk) = best.get(&k) {
                        d = d.max(dk + 1);
                    }
                }
            }
            best.insert(j, d);
        }
        best[&i]
    }

    /// Dimension of the complex: maximum face dimension; `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        (0..self.faces.len())
            .map(|i| self.face_dimension(i))
            .max()
    }

    /// Restriction to a subset of face indices, with the order inherited and
    /// the action restricted (generators must preserve the subset).
    fn restrict(&self, keep: &[usize]) -> ClemensComplex {
        let index_of: BTreeMap<usize, usize> = keep
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new))
            .collect();
        let faces = keep.iter().map(|&i| self.faces[i].clone()).collect();
        let above = keep
            .iter()
            .map(|&i| {
                self.above[i]
                    .iter()
                    .filter_map(|j| index_of.get(j).copied())
                    .collect()
            })
            .collect();
        let action = self
            .action
            .iter()
            .filter_map(|g| {
                keep.iter()
                    .map(|&i| index_of.get(&g[i]).copied())
                    .collect::<Option<Vec<usize>>>()
            })
            .collect();
        let dim_override = self
            .dim_override
            .as_ref()
            .map(|d| keep.iter().map(|&i| d[i]).collect());
        ClemensComplex {
            components: self.components.clone(),
            faces,
            above,
            action,
            dim_override,
        }
    }

    /// Low-level constructor for callers that already know the face poset
    /// (toric fans build their complexes this way). `parents[i]` lists the
    /// covering relations; the order closure is computed here.
    pub fn from_poset(
        components: Vec<String>,
        faces: Vec<Face>,
        order_pairs: &[(usize, usize)],
        action: Vec<Vec<usize>>,
        dim_override: Option<Vec<usize>>,
    ) -> ClemensComplex {
        let n = faces.len();
        let mut above: Vec<BTreeSet<usize>> = (0..n).map(|i| BTreeSet::from([i])).collect();
        // transitive closure by iteration (complexes in scope are small)
        let mut changed = true;
        while changed {
            changed = false;
            for &(lo, hi) in order_pairs {
                let to_add: Vec<usize> = above[hi]
                    .iter()
                    .filter(|j| !above[lo].contains(j))
                    .cloned()
                    .collect();
                if !to_add.is_empty() {
                    above[lo].extend(to_add);
                    changed = true;
                }
            }
        }
        ClemensComplex {
            components,
            faces,
            above,
            action,
            dim_override,
        }
    }
}

/// Builds the geometric Clemens complex from incidence data, validating the
/// poset axioms and the unique-containing-component property.
pub fn build_clemens(data: &DivisorIncidence) -> Result<ClemensComplex, ClemensError> {
    let comp_index: BTreeMap<&str, usize> = data
        .components
        .iter()
        .enumerate()
        .map(|(i, c)| (c.id.as_str(), i))
        .collect();
    if comp_index.len() != data.components.len() {
        return Err(ClemensError::InconsistentIncidence(
            "duplicate component ids".into(),
        ));
    }
    let action = GroupAction::new(
        data.components.len(),
        data.generators.iter().map(|g| g.perm().to_vec()).collect(),
    )?;

    // resolve faces; stratum labels must be unique
    let mut z_index: BTreeMap<&str, usize> = BTreeMap::new();
    let mut faces: Vec<Face> = Vec::new();
    let mut within: Vec<Vec<String>> = Vec::new();
    for (i, fd) in data.faces.iter().enumerate() {
        if fd.a.is_empty() {
            return Err(ClemensError::InconsistentIncidence(format!(
                "face {:?} has empty A",
                fd.z
            )));
        }
        let mut a = BTreeSet::new();
        for id in &fd.a {
            let &idx = comp_index.get(id.as_str()).ok_or_else(|| {
                ClemensError::InconsistentIncidence(format!("unknown component {id:?}"))
            })?;
            a.insert(idx);
        }
        if z_index.insert(fd.z.as_str(), i).is_some() {
            return Err(ClemensError::InconsistentIncidence(format!(
                "duplicate stratum label {:?}",
                fd.z
            )));
        }
        faces.push(Face {
            a,
            z: fd.z.clone(),
            has_point: fd.has_point,
        });
        within.push(fd.within.clone());
    }

    // group faces by A-set for containment resolution
    let mut by_a: BTreeMap<BTreeSet<usize>, Vec<usize>> = BTreeMap::new();
    for (i, f) in faces.iter().enumerate() {
        by_a.entry(f.a.clone()).or_default().push(i);
    }

    // vertices: every component that occurs must have exactly one vertex face
    let occurring: BTreeSet<usize> = faces.iter().flat_map(|f| f.a.iter().cloned()).collect();
    for &c in &occurring {
        let single = BTreeSet::from([c]);
        let n = by_a.get(&single).map_or(0, |v| v.len());
        if n != 1 {
            return Err(ClemensError::InconsistentIncidence(format!(
                "component {:?} needs exactly one vertex face, found {n}",
                data.components[c].id
            )));
        }
    }

    // immediate sub-face links: face i covers face j when |A_i| = |A_j| + 1
    // and A_j ⊂ A_i with the stratum of j containing the stratum of i
    let mut covers: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
    for (i, f) in faces.iter().enumerate() {
        if f.a.len() == 1 {
            continue;
        }
        for &drop in &f.a {
            let sub: BTreeSet<usize> = f.a.iter().cloned().filter(|&c| c != drop).collect();
            let candidates = by_a.get(&sub).map_or(&[][..], |v| &v[..]);
            let chosen = match candidates {
                [] => {
                    return Err(ClemensError::InconsistentIncidence(format!(
                        "face {:?}: no declared face under A \\ {{{}}}",
                        f.z, data.components[drop].id
                    )))
                }
                [only] => *only,
                _ => {
                    // ambiguous level: the record must name its sub-face
                    let named: Vec<usize> = candidates
                        .iter()
                        .cloned()
                        .filter(|&j| within[i].contains(&faces[j].z))
                        .collect();
                    match named[..] {
                        [only] => only,
                        [] => {
                            return Err(ClemensError::InconsistentIncidence(format!(
                                "face {:?}: reducible intersection below needs a 'within' entry",
                                f.z
                            )))
                        }
                        _ => {
                            return Err(ClemensError::InconsistentIncidence(format!(
                                "face {:?}: multiple containing components declared",
                                f.z
                            )))
                        }
                    }
                }
            };
            covers[i].push(chosen);
        }
    }
    // reject 'within' entries pointing anywhere but strictly smaller levels
    for (i, w) in within.iter().enumerate() {
        for z in w {
            let &j = z_index.get(z.as_str()).ok_or_else(|| {
                ClemensError::InconsistentIncidence(format!("unknown stratum {z:?} in within"))
            })?;
            if faces[j].a.len() >= faces[i].a.len() {
                return Err(ClemensError::NotAPoset(faces[i].z.clone()));
            }
        }
    }

    let pairs: Vec<(usize, usize)> = covers
        .iter()
        .enumerate()
        .flat_map(|(i, subs)| subs.iter().map(move |&j| (j, i)))
        .collect();
    let mut cc = ClemensComplex::from_poset(
        data.components.iter().map(|c| c.id.clone()).collect(),
        faces,
        &pairs,
        vec![],
        None,
    );

    // unique containment at every depth: for each face and each A' ⊂ A,
    // exactly one declared face with that A-set lies below it
    for (i, f) in cc.faces.iter().enumerate() {
        let below: Vec<usize> = (0..cc.faces.len())
            .filter(|&j| j != i && cc.leq(j, i))
            .collect();
        for subset in proper_subsets(&f.a) {
            let n = below
                .iter()
                .filter(|&&j| cc.faces[j].a == subset)
                .count();
            let declared = by_a.contains_key(&subset);
            if declared && n != 1 {
                return Err(ClemensError::InconsistentIncidence(format!(
                    "face {:?} has {n} containing components at level {subset:?}",
                    f.z
                )));
            }
        }
    }

    // induce the action on faces
    let mut face_action: Vec<Vec<usize>> = Vec::new();
    for spec in &data.generators {
        let gen = spec.perm();
        let mut perm = Vec::with_capacity(cc.faces.len());
        for (i, f) in cc.faces.iter().enumerate() {
            let image_a: BTreeSet<usize> = f.a.iter().map(|&c| gen[c]).collect();
            let candidates: Vec<usize> = cc
                .faces
                .iter()
                .enumerate()
                .filter(|(_, g)| g.a == image_a)
                .map(|(j, _)| j)
                .collect();
            let target = match candidates[..] {
                [only] => only,
                [] => {
                    return Err(ClemensError::ActionMismatch(format!(
                        "image of face {:?} is not declared",
                        f.z
                    )))
                }
                _ => {
                    // several strata over the image A-set: the generator
                    // must name the image stratum explicitly
                    match spec.z_image(&f.z) {
                        Some(zi) => candidates
                            .into_iter()
                            .find(|&j| cc.faces[j].z == zi)
                            .ok_or_else(|| {
                                ClemensError::ActionMismatch(format!(
                                    "z_map sends {:?} to {zi:?}, which is not over the image A-set",
                                    f.z
                                ))
                            })?,
                        None => {
                            return Err(ClemensError::ActionMismatch(format!(
                                "image of face {:?} over a reducible intersection is ambiguous;                                  add a z_map entry",
                                f.z
                            )))
                        }
                    }
                }
            };
            perm.push(target);
        }
        // order preservation
        for i in 0..cc.faces.len() {
            for j in 0..cc.faces.len() {
                if cc.leq(i, j) != cc.leq(perm[i], perm[j]) {
                    return Err(ClemensError::ActionMismatch(format!(
                        "generator breaks the order at {:?} ≺ {:?}",
                        cc.faces[i].z, cc.faces[j].z
                    )));
                }
            }
        }
        face_action.push(perm);
    }
    cc.action = face_action;
    Ok(cc)
}

fn proper_subsets(a: &BTreeSet<usize>) -> Vec<BTreeSet<usize>> {
    let items: Vec<usize> = a.iter().cloned().collect();
    let mut out = Vec::new();
    let n = items.len();
    for mask in 1u64..(1 << n) - 1 {
        let mut s = BTreeSet::new();
        for (k, &it) in items.iter().enumerate() {
            if mask >> k & 1 == 1 {
                s.insert(it);
            }
        }
        out.push(s);
    }
    out
}

/// Sub-poset of faces fixed by every generator.
pub fn fixed_subcomplex(cc: &ClemensComplex) -> ClemensComplex {
    let keep: Vec<usize> = (0..cc.faces.len())
        .filter(|&i| cc.action.iter().all(|g| g[i] == i))
        .collect();
    cc.restrict(&keep)
}

/// Sub-poset of faces with `has_point = true`. The flags must be
/// downward-closed: a face with a point forces points on all its sub-faces.
pub fn analytic_subcomplex(cc: &ClemensComplex) -> Result<ClemensComplex, ClemensError> {
    for i in 0..cc.faces.len() {
        if !cc.faces[i].has_point {
            continue;
        }
        for j in 0..cc.faces.len() {
            if j != i && cc.leq(j, i) && !cc.faces[j].has_point {
                return Err(ClemensError::PointFlagInconsistency(
                    cc.faces[i].z.clone(),
                    cc.faces[j].z.clone(),
                ));
            }
        }
    }
    let keep: Vec<usize> = (0..cc.faces.len())
        .filter(|&i| cc.faces[i].has_point)
        .collect();
    Ok(cc.restrict(&keep))
}

/// Dimension of an invariant face as a face of the analytic complex:
/// number of orbits of the action on `A`, minus 1.
pub fn face_dimension_an(cc: &ClemensComplex, face: usize) -> Result<usize, ClemensError> {
    let f = &cc.faces[face];
    if cc.action.iter().any(|g| g[face] != face) {
        return Err(ClemensError::FaceNotInvariant(f.z.clone()));
    }
    // orbits of the component action restricted to A
    let items: Vec<usize> = f.a.iter().cloned().collect();
    let mut orbit_id: BTreeMap<usize, usize> = items.iter().map(|&c| (c, c)).collect();
    // union-find by repeated application of the component generators,
    // recovered from the face action's effect on vertices
    let comp_gens = component_generators(cc);
    let mut changed = true;
    while changed {
        changed = false;
        for g in &comp_gens {
            for &c in &items {
                let gc = g[c];
                if !orbit_id.contains_key(&gc) {
                    continue;
                }
                let (a, b) = (orbit_id[&c], orbit_id[&gc]);
                if a != b {
                    let m = a.min(b);
                    for v in orbit_id.values_mut() {
                        if *v == a || *v == b {
                            *v = m;
                        }
                    }
                    changed = true;
                }
            }
        }
    }
    let orbits: BTreeSet<usize> = orbit_id.values().cloned().collect();
    Ok(orbits.len() - 1)
}

/// Recovers the component-level permutations from the face action via the
/// vertex faces.
fn component_generators(cc: &ClemensComplex) -> Vec<Vec<usize>> {
    let n = cc.components.len();
    let vertex_of: BTreeMap<usize, usize> = cc
        .vertices()
        .into_iter()
        .map(|i| (*cc.faces[i].a.iter().next().unwrap(), i))
        .collect();
    cc.action
        .iter()
        .map(|g| {
            (0..n)
                .map(|c| match vertex_of.get(&c) {
                    Some(&v) => *cc.faces[g[v]].a.iter().next().unwrap(),
                    None => c,
                })
                .collect()
        })
        .collect()
}

/// Result of restricting an analytic complex along a weighting.
#[derive(Debug, Clone)]
pub struct RestrictedComplex {
    /// `max ρ_α/λ_α` over vertices; `None` encodes −∞ (no vertices).
    pub a: Option<Rat>,
    pub restricted: ClemensComplex,
    /// Pole order: `1 + dim(restricted)`, or 0 when empty.
    pub b: usize,
    /// Indices (in `restricted`) of the faces of maximal dimension.
    pub max_faces: Vec<usize>,
}

/// Removes all faces containing a vertex with `ρ_α/λ_α` below the maximum.
///
/// `lambda` must be positive on every vertex component of the complex.
pub fn restricted_complex(
    cc_an: &ClemensComplex,
    lambda: &BTreeMap<String, Rat>,
    rho: &BTreeMap<String, Rat>,
) -> Result<RestrictedComplex, ClemensError> {
    let verts = cc_an.vertices();
    if verts.is_empty() {
        return Ok(RestrictedComplex {
            a: None,
            restricted: cc_an.restrict(&[]),
            b: 0,
            max_faces: vec![],
        });
    }
    let mut ratios: BTreeMap<usize, Rat> = BTreeMap::new();
    for &v in &verts {
        let c = *cc_an.faces()[v].a.iter().next().unwrap();
        let name = cc_an.component_name(c).to_string();
        let l = lambda
            .get(&name)
            .ok_or_else(|| ClemensError::MissingWeight(name.clone()))?;
        if !l.is_positive() {
            return Err(ClemensError::NonPositiveWeight(name.clone()));
        }
        let r = rho
            .get(&name)
            .ok_or_else(|| ClemensError::MissingWeight(name.clone()))?;
        ratios.insert(c, r / l);
    }
    let a = ratios.values().max().cloned().expect("nonempty");
    let critical: BTreeSet<usize> = ratios
        .iter()
        .filter(|(_, r)| **r == a)
        .map(|(&c, _)| c)
        .collect();
    let keep: Vec<usize> = (0..cc_an.faces().len())
        .filter(|&i| cc_an.faces()[i].a.iter().all(|c| critical.contains(c)))
        .collect();
    let restricted = cc_an.restrict(&keep);
    let dim = restricted.dimension();
    let b = dim.map_or(0, |d| d + 1);
    let max_faces = match dim {
        None => vec![],
        Some(d) => (0..restricted.faces().len())
            .filter(|&i| restricted.face_dimension(i) == d)
            .collect(),
    };
    Ok(RestrictedComplex {
        a: Some(a),
        restricted,
        b,
        max_faces,
    })
}
