//! Simplicial lattice fans given by their maximal cones.
//!
//! A [`Fan`] can only be obtained through [`Fan::new`], which enforces the
//! full set of invariants: primitive pairwise distinct rays, maximal cones of
//! size `dim` on linearly independent rays, every ray used, and the fan
//! property (two maximal cones meet exactly in the cone on their shared rays).
//! Everything is decided with exact arithmetic.
//!
//! Completeness is decided combinatorially: a nonempty fan of full-dimensional
//! simplicial cones is complete iff every facet of a maximal cone lies in
//! exactly two maximal cones. The support is closed and its topological
//! boundary is contained in the facets that belong to a single cone, so with no
//! such facets the support is open and closed in `ℝ^dim`, hence everything.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{self, Int, Rat};
use crate::error::FanError;
use crate::lp::{self, Inequality};

/// A primitive lattice vector generating a ray of a fan.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RayVector(Vec<i64>);

impl RayVector {
    /// Accepts only nonzero vectors whose coordinates are coprime.
    pub fn new(coords: Vec<i64>) -> Result<Self, FanError> {
        if arith::gcd_i64(&coords) != 1 {
            return Err(FanError::NonPrimitiveRay { coords });
        }
        Ok(Self(coords))
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for RayVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Sorted, duplicate-free ray indices of a cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cone(Vec<usize>);

impl Cone {
    pub fn new(mut indices: Vec<usize>) -> Self {
        indices.sort_unstable();
        indices.dedup();
        Self(indices)
    }

    pub fn rays(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, ray: usize) -> bool {
        self.0.binary_search(&ray).is_ok()
    }

    pub fn is_subset_of(&self, other: &Cone) -> bool {
        self.0.iter().all(|r| other.contains(*r))
    }

    /// The cone with one ray removed.
    pub fn without(&self, ray: usize) -> Cone {
        Cone(self.0.iter().copied().filter(|&r| r != ray).collect())
    }

    pub fn with(&self, ray: usize) -> Cone {
        let mut v = self.0.clone();
        v.push(ray);
        Cone::new(v)
    }
}

/// A codimension-one cone shared by two maximal cones of a complete fan.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Wall {
    /// The `dim - 1` rays spanning the wall, ascending.
    pub wall_rays: Vec<usize>,
    /// Indices into [`Fan::max_cones`], ascending.
    pub side_cones: [usize; 2],
    /// For each side cone, its ray not on the wall.
    pub off_rays: [usize; 2],
}

/// A simplicial fan described by its maximal cones.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<RayVector>,
    max_cones: Vec<Cone>,
}

impl Fan {
    /// Validates raw data into a fan. The cone list is stored in canonical
    /// order (each cone ascending, the list sorted lexicographically).
    pub fn new(dim: usize, raw_rays: Vec<Vec<i64>>, raw_cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        if dim == 0 {
            return Err(FanError::ZeroDimension);
        }
        let mut rays = Vec::with_capacity(raw_rays.len());
        for (index, coords) in raw_rays.into_iter().enumerate() {
            if coords.len() != dim {
                return Err(FanError::RayDimension { index, expected: dim, found: coords.len() });
            }
            rays.push(RayVector::new(coords)?);
        }
        let mut seen = BTreeMap::new();
        for (i, r) in rays.iter().enumerate() {
            if let Some(&first) = seen.get(r) {
                return Err(FanError::DuplicateRay { first, second: i });
            }
            seen.insert(r.clone(), i);
        }

        let mut cones = Vec::with_capacity(raw_cones.len());
        for raw in raw_cones {
            if let Some(&bad) = raw.iter().find(|&&i| i >= rays.len()) {
                return Err(FanError::RayIndexOutOfRange { index: bad, ray_count: rays.len() });
            }
            let cone = Cone::new(raw.clone());
            if cone.len() != raw.len() || cone.len() != dim {
                return Err(FanError::ConeSize { cone: raw, expected: dim });
            }
            let vectors: Vec<&[i64]> = cone.rays().iter().map(|&i| rays[i].coords()).collect();
            if arith::rank(&vectors) != dim {
                return Err(FanError::DependentCone { cone: cone.rays().to_vec() });
            }
            cones.push(cone);
        }
        cones.sort();
        if let Some(w) = cones.windows(2).find(|w| w[0] == w[1]) {
            return Err(FanError::DuplicateCone { cone: w[0].rays().to_vec() });
        }
        let mut used = vec![false; rays.len()];
        for c in &cones {
            for &r in c.rays() {
                used[r] = true;
            }
        }
        if let Some(unused) = used.iter().position(|u| !u) {
            return Err(FanError::UnusedRay { index: unused });
        }

        let fan = Fan { dim, rays, max_cones: cones };
        for i in 0..fan.max_cones.len() {
            for j in i + 1..fan.max_cones.len() {
                if !fan.meet_in_common_face(i, j) {
                    return Err(FanError::Overlap {
                        first: fan.max_cones[i].rays().to_vec(),
                        second: fan.max_cones[j].rays().to_vec(),
                    });
                }
            }
        }
        Ok(fan)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[RayVector] {
        &self.rays
    }

    pub fn ray(&self, index: usize) -> &RayVector {
        &self.rays[index]
    }

    pub fn max_cones(&self) -> &[Cone] {
        &self.max_cones
    }

    pub fn raw_rays(&self) -> Vec<Vec<i64>> {
        self.rays.iter().map(|r| r.coords().to_vec()).collect()
    }

    pub fn raw_cones(&self) -> Vec<Vec<usize>> {
        self.max_cones.iter().map(|c| c.rays().to_vec()).collect()
    }

    fn cone_vectors(&self, cone: &Cone) -> Vec<&[i64]> {
        cone.rays().iter().map(|&i| self.rays[i].coords()).collect()
    }

    /// Coordinates of `point` in the ray basis of a maximal cone.
    pub fn cone_coordinates(&self, cone: &Cone, point: &[i64]) -> Vec<Rat> {
        arith::coordinates(&self.cone_vectors(cone), point)
            .expect("maximal cones are simplicial")
    }

    /// Determinant of the ray matrix of a maximal cone.
    pub fn cone_determinant(&self, cone: &Cone) -> Int {
        arith::det(&self.cone_vectors(cone))
    }

    fn meet_in_common_face(&self, i: usize, j: usize) -> bool {
        meet_in_common_face(&self.cone_vectors(&self.max_cones[i]), &self.cone_vectors(&self.max_cones[j]))
    }

    /// True iff every maximal cone is unimodular.
    pub fn is_smooth(&self) -> bool {
        self.max_cones.iter().all(|c| self.cone_determinant(c).abs() == Int::from(1))
    }

    /// Number of maximal cones containing each facet.
    fn facet_census(&self) -> BTreeMap<Cone, Vec<usize>> {
        let mut census: BTreeMap<Cone, Vec<usize>> = BTreeMap::new();
        for (ci, cone) in self.max_cones.iter().enumerate() {
            for &r in cone.rays() {
                census.entry(cone.without(r)).or_default().push(ci);
            }
        }
        census
    }

    pub fn is_complete(&self) -> bool {
        !self.max_cones.is_empty() && self.facet_census().values().all(|v| v.len() == 2)
    }

    /// Facets lying in a single maximal cone.
    pub fn unmatched_facets(&self) -> Vec<Cone> {
        self.facet_census()
            .into_iter()
            .filter(|(_, v)| v.len() != 2)
            .map(|(f, _)| f)
            .collect()
    }

    /// All walls, ordered lexicographically by their rays.
    pub fn walls(&self) -> Result<Vec<Wall>, FanError> {
        let census = self.facet_census();
        let mut out = Vec::with_capacity(census.len());
        for (facet, sides) in census {
            if sides.len() != 2 {
                return Err(FanError::UnmatchedWall { wall: facet.rays().to_vec() });
            }
            let off = |ci: usize| {
                *self.max_cones[ci]
                    .rays()
                    .iter()
                    .find(|r| !facet.contains(**r))
                    .unwrap()
            };
            out.push(Wall {
                wall_rays: facet.rays().to_vec(),
                side_cones: [sides[0], sides[1]],
                off_rays: [off(sides[0]), off(sides[1])],
            });
        }
        Ok(out)
    }

    pub fn find_wall(&self, wall_rays: &[usize]) -> Result<Wall, FanError> {
        let mut key = wall_rays.to_vec();
        key.sort_unstable();
        self.walls()?
            .into_iter()
            .find(|w| w.wall_rays == key)
            .ok_or(FanError::UnknownWall { wall: key })
    }

    pub fn picard_number(&self) -> Result<usize, FanError> {
        if !self.is_complete() {
            return Err(FanError::NotComplete);
        }
        Ok(self.rays.len() - self.dim)
    }

    /// True iff the rays span a cone of the fan.
    pub fn is_face(&self, rays: &[usize]) -> bool {
        self.max_cones
            .iter()
            .any(|c| rays.iter().all(|r| c.contains(*r)))
    }

    /// Maximal cones containing the given ray.
    pub fn star(&self, ray: usize) -> Vec<usize> {
        (0..self.max_cones.len())
            .filter(|&c| self.max_cones[c].contains(ray))
            .collect()
    }

    /// The smallest cone of the fan containing `point` together with the
    /// point's strictly positive coordinates in that cone's rays.
    pub fn locate(&self, point: &[i64]) -> Option<(Cone, Vec<Rat>)> {
        for cone in &self.max_cones {
            let coords = self.cone_coordinates(cone, point);
            if coords.iter().any(Signed::is_negative) {
                continue;
            }
            let (face, values): (Vec<usize>, Vec<Rat>) = cone
                .rays()
                .iter()
                .zip(coords)
                .filter(|(_, v)| v.is_positive())
                .map(|(&r, v)| (r, v))
                .unzip();
            return Some((Cone(face), values));
        }
        None
    }

    /// Applies an integer matrix to every ray, `v ↦ M v`, keeping the cones.
    pub fn transform(&self, matrix: &[Vec<i64>]) -> Result<Fan, FanError> {
        let rays = self
            .rays
            .iter()
            .map(|r| {
                matrix
                    .iter()
                    .map(|row| row.iter().zip(r.coords()).map(|(a, b)| a * b).sum())
                    .collect()
            })
            .collect();
        Fan::new(self.dim, rays, self.raw_cones())
    }

    /// Key comparing fans up to the order in which rays are listed.
    pub fn canonical_key(&self) -> CanonicalKey {
        let mut order: Vec<usize> = (0..self.rays.len()).collect();
        order.sort_by(|&a, &b| self.rays[a].cmp(&self.rays[b]));
        let mut relabel = vec![0; self.rays.len()];
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new;
        }
        let mut cones: Vec<Vec<usize>> = self
            .max_cones
            .iter()
            .map(|c| {
                let mut v: Vec<usize> = c.rays().iter().map(|&r| relabel[r]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        cones.sort();
        CanonicalKey {
            dim: self.dim,
            rays: order.iter().map(|&i| self.rays[i].coords().to_vec()).collect(),
            cones,
        }
    }

    pub fn ray_set(&self) -> BTreeSet<RayVector> {
        self.rays.iter().cloned().collect()
    }

    /// Human-readable `v<k>` label for a 0-based ray index.
    pub fn label(index: usize) -> String {
        format!("v{}", index + 1)
    }
}

/// True iff two full-dimensional simplicial cones meet in the cone on their
/// shared generators. Generators are compared by value.
pub fn meet_in_common_face(first: &[&[i64]], second: &[&[i64]]) -> bool {
    let n = first.len();
    // x = Σ α u = Σ β w with α, β >= 0. Writing α = M β, the meet leaves the
    // shared face iff some such x has Σ_{u not shared} α > 0.
    let columns: Vec<Vec<Rat>> = second
        .iter()
        .map(|w| arith::coordinates(first, w).expect("cones are simplicial"))
        .collect();
    let mut system = Vec::new();
    for k in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[k] = arith::rat(1);
        system.push(Inequality::new(e, Rat::zero()));
    }
    for row in 0..n {
        let coeffs = columns.iter().map(|col| col[row].clone()).collect();
        system.push(Inequality::new(coeffs, Rat::zero()));
    }
    let mut outside = vec![Rat::zero(); n];
    for (row, u) in first.iter().enumerate() {
        if !second.contains(u) {
            for (k, col) in columns.iter().enumerate() {
                outside[k] += &col[row];
            }
        }
    }
    let negated: Vec<Rat> = outside.iter().map(|c| -c).collect();
    system.push(Inequality::new(outside, arith::rat(1)));
    system.push(Inequality::new(negated, arith::rat(-1)));
    !lp::solve(&system, n).is_feasible()
}

/// Sorted rays and relabelled sorted cones; equal keys mean equal fans.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

impl CanonicalKey {
    /// Short hex digest of the key, used as a node label.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut h = Sha256::new();
        h.update(format!("{:?}|{:?}|{:?}", self.dim, self.rays, self.cones).as_bytes());
        hex::encode(&h.finalize()[..6])
    }

    /// The fan this key describes (keys are only built from valid fans).
    pub fn to_fan(&self) -> Fan {
        Fan::new(self.dim, self.rays.clone(), self.cones.clone())
            .expect("canonical keys come from valid fans")
    }
}
