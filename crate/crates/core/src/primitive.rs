//! Primitive collections (minimal non-faces) and their relations.

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::Int;
use crate::error::FanError;
use crate::fan::{Cone, Fan};

/// A minimal set of rays that does not span a cone.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimitiveCollection(Vec<usize>);

impl PrimitiveCollection {
    pub fn rays(&self) -> &[usize] {
        &self.0
    }
}

/// `Σ_{collection} v_i = Σ_k a_k w_k` with the `w_k` spanning the cone that
/// contains the sum in its relative interior.
///
/// When the sum is the origin the target cone is empty (a fiber-type
/// relation such as `v3 + v6 = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimitiveRelation {
    pub collection: PrimitiveCollection,
    pub target_cone: Cone,
    pub coefficients: Vec<Int>,
}

impl PrimitiveRelation {
    pub fn is_fiber_type(&self) -> bool {
        self.target_cone.is_empty()
    }

    /// Coefficient vector over all rays: `+1` on the collection, `-a_k` on
    /// the target rays. Pairing with divisor data gives the degree
    /// `Σ d_i - Σ a_k d_{w_k}`.
    pub fn degree_vector(&self, ray_count: usize) -> Vec<Int> {
        let mut v = vec![Int::zero(); ray_count];
        for &r in self.collection.rays() {
            v[r] += Int::one();
        }
        for (&w, a) in self.target_cone.rays().iter().zip(&self.coefficients) {
            v[w] -= a;
        }
        v
    }
}

impl fmt::Display for PrimitiveRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs: Vec<String> = self.collection.rays().iter().map(|&r| Fan::label(r)).collect();
        write!(f, "{} = ", lhs.join(" + "))?;
        if self.is_fiber_type() {
            return write!(f, "0");
        }
        let rhs: Vec<String> = self
            .target_cone
            .rays()
            .iter()
            .zip(&self.coefficients)
            .map(|(&w, a)| {
                if a.is_one() {
                    Fan::label(w)
                } else {
                    format!("{a}{}", Fan::label(w))
                }
            })
            .collect();
        write!(f, "{}", rhs.join(" + "))
    }
}

fn combinations(n: usize, k: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            visit(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, visit);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::with_capacity(k), &mut visit);
}

/// Every primitive collection, ordered by size and then lexicographically.
///
/// In a simplicial fan every set of `dim + 1` rays is a non-face, so minimal
/// non-faces have at most `dim + 1` elements.
pub fn primitive_collections(fan: &Fan) -> Vec<PrimitiveCollection> {
    let n = fan.rays().len();
    let mut out = Vec::new();
    for k in 2..=(fan.dim() + 1).min(n) {
        combinations(n, k, |subset| {
            if fan.is_face(subset) {
                return;
            }
            let minimal = (0..subset.len()).all(|skip| {
                let proper: Vec<usize> = subset
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &r)| r)
                    .collect();
                fan.is_face(&proper)
            });
            if minimal {
                out.push(PrimitiveCollection(subset.to_vec()));
            }
        });
    }
    out
}

/// Checks that `rays` form a primitive collection of `fan`.
pub fn as_primitive_collection(fan: &Fan, rays: &[usize]) -> Result<PrimitiveCollection, FanError> {
    let mut sorted = rays.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let not_primitive = || FanError::NotPrimitiveCollection { rays: rays.to_vec() };
    if sorted.len() < 2 || sorted.len() != rays.len() || sorted.iter().any(|&r| r >= fan.rays().len()) {
        return Err(not_primitive());
    }
    if fan.is_face(&sorted) {
        return Err(not_primitive());
    }
    for skip in 0..sorted.len() {
        let proper: Vec<usize> = sorted
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .map(|(_, &r)| r)
            .collect();
        if !fan.is_face(&proper) {
            return Err(not_primitive());
        }
    }
    Ok(PrimitiveCollection(sorted))
}

/// The primitive relation of a primitive collection.
pub fn primitive_relation(fan: &Fan, collection: &PrimitiveCollection) -> Result<PrimitiveRelation, FanError> {
    let mut sum = vec![0i64; fan.dim()];
    for &r in collection.rays() {
        for (s, c) in sum.iter_mut().zip(fan.ray(r).coords()) {
            *s += c;
        }
    }
    let (target, coords) = fan
        .locate(&sum)
        .ok_or_else(|| FanError::NoInteriorCone { rays: collection.rays().to_vec() })?;
    let mut coefficients = Vec::with_capacity(coords.len());
    for c in coords {
        if !c.is_integer() {
            return Err(FanError::NonIntegralRelation { rays: collection.rays().to_vec() });
        }
        coefficients.push(c.to_integer());
    }
    Ok(PrimitiveRelation { collection: collection.clone(), target_cone: target, coefficients })
}

/// Relations of every primitive collection, in collection order.
pub fn primitive_relations(fan: &Fan) -> Result<Vec<PrimitiveRelation>, FanError> {
    primitive_collections(fan)
        .iter()
        .map(|c| primitive_relation(fan, c))
        .collect()
}
