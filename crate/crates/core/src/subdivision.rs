//! Star subdivision along a new ray and its inverse, the ray contraction.

use num_traits::Signed;

use crate::arith;
use crate::error::FanError;
use crate::fan::{Cone, Fan};

/// Star subdivision of `fan` along `new_ray`.
///
/// Every maximal cone containing the minimal cone `τ ∋ new_ray` is replaced by
/// the cones joining `new_ray` with its facets that do not contain `τ`. The new
/// ray is appended as the last ray.
pub fn star_subdivide(fan: &Fan, new_ray: &[i64]) -> Result<Fan, FanError> {
    if new_ray.len() != fan.dim() {
        return Err(FanError::RayDimension {
            index: fan.rays().len(),
            expected: fan.dim(),
            found: new_ray.len(),
        });
    }
    if arith::gcd_i64(new_ray) != 1 {
        return Err(FanError::NonPrimitiveRay { coords: new_ray.to_vec() });
    }
    if fan.rays().iter().any(|r| r.coords() == new_ray) {
        return Err(FanError::RayExists { coords: new_ray.to_vec() });
    }
    let (face, _) = fan
        .locate(new_ray)
        .ok_or_else(|| FanError::OnBoundaryOfNoCone { coords: new_ray.to_vec() })?;
    let new_index = fan.rays().len();
    let mut cones = Vec::new();
    for cone in fan.max_cones() {
        if face.is_subset_of(cone) {
            for &r in face.rays() {
                cones.push(cone.without(r).with(new_index).rays().to_vec());
            }
        } else {
            cones.push(cone.rays().to_vec());
        }
    }
    let mut rays = fan.raw_rays();
    rays.push(new_ray.to_vec());
    Fan::new(fan.dim(), rays, cones)
}

/// The cycle of link rays around `ray` in a complete 3-fan, in cyclic order.
fn link_cycle(fan: &Fan, ray: usize) -> Option<Vec<usize>> {
    let edges: Vec<[usize; 2]> = fan
        .star(ray)
        .into_iter()
        .map(|c| {
            let e = fan.max_cones()[c].without(ray);
            [e.rays()[0], e.rays()[1]]
        })
        .collect();
    let first = edges.first()?;
    let mut cycle = vec![first[0], first[1]];
    let mut used = vec![false; edges.len()];
    used[0] = true;
    while cycle.len() < edges.len() {
        let last = *cycle.last().unwrap();
        let (i, e) = edges
            .iter()
            .enumerate()
            .find(|(i, e)| !used[*i] && e.contains(&last))?;
        used[i] = true;
        let next = if e[0] == last { e[1] } else { e[0] };
        if cycle.contains(&next) {
            return None;
        }
        cycle.push(next);
    }
    // the closing edge
    let (a, b) = (cycle[0], *cycle.last().unwrap());
    let closes = edges
        .iter()
        .enumerate()
        .any(|(i, e)| !used[i] && e.contains(&a) && e.contains(&b));
    closes.then_some(cycle)
}

/// Removes a ray whose star is a blow-up star (the inverse of
/// [`star_subdivide`]).
///
/// Two star shapes are supported in dimension 3: a triangle link whose cone
/// contains the ray in its interior (the ray blows up a point), and a 4-cycle
/// link `x, a, y, b` with the ray inside the 2-cone `⟨a, b⟩` (the ray blows up
/// a curve). Ray indices above `ray` shift down by one.
///
/// A flat 4-cycle star, with the ray inside both `⟨a, b⟩` and `⟨x, y⟩`, has
/// two blow-downs that differ by a flop. The diagonal avoiding the smaller
/// link ray of the first star cone is kept.
pub fn contract_ray(fan: &Fan, ray: usize) -> Result<Fan, FanError> {
    if fan.dim() != 3 {
        return Err(FanError::UnsupportedDimension { dim: fan.dim() });
    }
    if ray >= fan.rays().len() {
        return Err(FanError::RayIndexOutOfRange { index: ray, ray_count: fan.rays().len() });
    }
    let unsupported = || FanError::UnsupportedStarPattern { ray };
    let cycle = link_cycle(fan, ray).ok_or_else(unsupported)?;
    let point = fan.ray(ray).coords();
    let inside = |rays: &[usize]| -> bool {
        let basis: Vec<&[i64]> = rays.iter().map(|&r| fan.ray(r).coords()).collect();
        coordinates_in_span(&basis, point)
            .is_some_and(|c| c.iter().all(Signed::is_positive))
    };

    let replacement: Vec<Vec<usize>> = match cycle.len() {
        3 if inside(&cycle) => vec![cycle.clone()],
        4 => {
            let (x, a, y, b) = (cycle[0], cycle[1], cycle[2], cycle[3]);
            if inside(&[a, b]) {
                vec![vec![a, b, x], vec![a, b, y]]
            } else if inside(&[x, y]) {
                vec![vec![x, y, a], vec![x, y, b]]
            } else {
                return Err(unsupported());
            }
        }
        _ => return Err(unsupported()),
    };

    let shift = |r: usize| if r > ray { r - 1 } else { r };
    let mut cones: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .filter(|c| !c.contains(ray))
        .map(|c| c.rays().iter().map(|&r| shift(r)).collect())
        .collect();
    cones.extend(
        replacement
            .into_iter()
            .map(|c| Cone::new(c.into_iter().map(shift).collect()).rays().to_vec()),
    );
    let rays: Vec<Vec<i64>> = fan
        .raw_rays()
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| i != ray)
        .map(|(_, r)| r)
        .collect();
    Fan::new(fan.dim(), rays, cones)
}

/// Coordinates of `point` in the linearly independent `basis` when `point`
/// lies in their span.
fn coordinates_in_span(basis: &[&[i64]], point: &[i64]) -> Option<Vec<arith::Rat>> {
    let dim = point.len();
    if basis.len() == dim {
        return arith::coordinates(basis, point);
    }
    // extend to a basis of the ambient space with standard vectors
    let units: Vec<Vec<i64>> = (0..dim)
        .map(|i| (0..dim).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut extended: Vec<&[i64]> = basis.to_vec();
    for u in &units {
        if extended.len() == dim {
            break;
        }
        let mut trial = extended.clone();
        trial.push(u);
        if arith::rank(&trial) == trial.len() {
            extended = trial;
        }
    }
    let coords = arith::coordinates(&extended, point)?;
    coords[basis.len()..]
        .iter()
        .all(num_traits::Zero::is_zero)
        .then(|| coords[..basis.len()].to_vec())
}
