//! Test-only oracles. The oracles never call the library's solver, circuit or
//! enumeration code, so they stay independent of the paths they test;
//! `summary` is the one helper that gathers library predicates.
#![allow(dead_code)]

use fanfold::catalog::{self, CatalogId};
use fanfold::projectivity::{self, ProjectivityCertificate};
use fanfold::{primitive, surgery, Fan};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::Rng;

pub type Rat = BigRational;

pub fn r(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

pub fn projective_space() -> Fan {
    Fan::new(
        3,
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![-1, -1, -1]],
        vec![vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )
    .unwrap()
}

pub fn w() -> Fan {
    catalog::build(CatalogId::W7_5, &[]).unwrap()
}

pub fn det3(a: &[i64], b: &[i64], c: &[i64]) -> i64 {
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

pub fn sum_of(fan: &Fan, rays: &[usize]) -> Vec<i64> {
    (0..3).map(|k| rays.iter().map(|&r| fan.ray(r).coords()[k]).sum()).collect()
}

/// Index of the ray with the given coordinates.
pub fn ray_index(fan: &Fan, coords: &[i64]) -> usize {
    fan.rays()
        .iter()
        .position(|r| r.coords() == coords)
        .unwrap_or_else(|| panic!("no ray {coords:?}"))
}

/// Contracts rays named by their coordinates, one after another.
pub fn contract_chain(fan: &Fan, coords: &[Vec<i64>]) -> Vec<Fan> {
    let mut cur = fan.clone();
    let mut out = Vec::new();
    for c in coords {
        cur = fanfold::contract_ray(&cur, ray_index(&cur, c)).unwrap();
        out.push(cur.clone());
    }
    out
}

/// Walls found by counting facet occurrences: `(wall rays, off ray, off ray)`.
pub fn census_walls(fan: &Fan) -> Vec<([usize; 2], usize, usize)> {
    let cones = fan.raw_cones();
    let mut out = Vec::new();
    for i in 0..fan.rays().len() {
        for j in i + 1..fan.rays().len() {
            let sides: Vec<&Vec<usize>> = cones.iter().filter(|c| c.contains(&i) && c.contains(&j)).collect();
            if sides.len() == 2 {
                let off = |c: &Vec<usize>| *c.iter().find(|&&x| x != i && x != j).unwrap();
                out.push(([i, j], off(sides[0]), off(sides[1])));
            }
        }
    }
    out
}

/// The linear relation among the four rays of a wall by Cramer's rule,
/// scaled to be primitive with positive off-wall entries.
pub fn cramer_circuit(fan: &Fan, wall: [usize; 2], c: usize, d: usize) -> Vec<i64> {
    let v = |i: usize| fan.ray(i).coords().to_vec();
    let (a, b) = (wall[0], wall[1]);
    let idx = [a, b, c, d];
    let vecs: Vec<Vec<i64>> = idx.iter().map(|&i| v(i)).collect();
    let mut coeff = [0i64; 4];
    for k in 0..4 {
        let others: Vec<&Vec<i64>> = (0..4).filter(|&m| m != k).map(|m| &vecs[m]).collect();
        let sign = if k % 2 == 0 { 1 } else { -1 };
        coeff[k] = sign * det3(others[0], others[1], others[2]);
    }
    if coeff[2] < 0 {
        coeff.iter_mut().for_each(|x| *x = -*x);
    }
    let g = coeff.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let mut lambda = vec![0i64; fan.rays().len()];
    for (k, &i) in idx.iter().enumerate() {
        lambda[i] = coeff[k] / g;
    }
    lambda
}

pub fn all_circuits(fan: &Fan) -> Vec<Vec<i64>> {
    census_walls(fan)
        .into_iter()
        .map(|(w, c, d)| cramer_circuit(fan, w, c, d))
        .collect()
}

pub fn pair(lambda: &[i64], d: &[Rat]) -> Rat {
    lambda.iter().zip(d).map(|(&l, x)| x * r(l)).sum()
}

/// Strict convexity of the piecewise linear function with value `d_j` at
/// ray `j`: on every maximal cone its linear extension lies strictly below
/// the value at every ray outside the cone.
pub fn strictly_convex(fan: &Fan, d: &[Rat]) -> bool {
    for cone in fan.raw_cones() {
        let [a, b, c] = [cone[0], cone[1], cone[2]];
        let (va, vb, vc) = (fan.ray(a).coords(), fan.ray(b).coords(), fan.ray(c).coords());
        let det = r(det3(va, vb, vc));
        for j in 0..fan.rays().len() {
            if cone.contains(&j) {
                continue;
            }
            let vj = fan.ray(j).coords();
            let xa = r(det3(vj, vb, vc)) / &det;
            let xb = r(det3(va, vj, vc)) / &det;
            let xc = r(det3(va, vb, vj)) / &det;
            let linear = xa * &d[a] + xb * &d[b] + xc * &d[c];
            if d[j] <= linear {
                return false;
            }
        }
    }
    true
}

/// Phase-one simplex with Bland's rule on `A x >= b`, `x` free. Returns a
/// feasible point when one exists.
pub fn simplex_feasible(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let n = a[0].len();
    // columns: x+ (n), x- (n), surplus (m), artificial (m)
    let cols = 2 * n + 2 * m;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i].is_negative();
        let s = if flip { r(-1) } else { r(1) };
        let mut row = vec![Rat::zero(); cols];
        for j in 0..n {
            row[j] = &a[i][j] * &s;
            row[n + j] = -&a[i][j] * &s;
        }
        row[2 * n + i] = -s.clone();
        row[2 * n + m + i] = r(1);
        t.push(row);
        rhs.push(&b[i] * &s);
    }
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * n + m + i).collect();
    // objective: minimise the sum of artificials; reduced costs
    loop {
        let mut cost = vec![Rat::zero(); cols];
        for j in 2 * n + m..cols {
            cost[j] = r(1);
        }
        let mut reduced = cost.clone();
        for (i, &bi) in basis.iter().enumerate() {
            if cost[bi].is_zero() {
                continue;
            }
            for j in 0..cols {
                reduced[j] -= &cost[bi] * &t[i][j];
            }
        }
        let Some(enter) = (0..cols).find(|&j| reduced[j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rat)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &rhs[i] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let (p, _) = leave.expect("phase one is bounded below");
        let pivot = t[p][enter].clone();
        for j in 0..cols {
            t[p][j] /= &pivot;
        }
        rhs[p] /= &pivot;
        for i in 0..m {
            if i != p && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..cols {
                    let v = &f * &t[p][j];
                    t[i][j] -= v;
                }
                let v = &f * &rhs[p];
                rhs[i] -= v;
            }
        }
        basis[p] = enter;
    }
    let mut x = vec![Rat::zero(); cols];
    for (i, &bi) in basis.iter().enumerate() {
        x[bi] = rhs[i].clone();
    }
    if (2 * n + m..cols).any(|j| !x[j].is_zero()) {
        return None;
    }
    Some((0..n).map(|j| &x[j] - &x[n + j]).collect())
}

/// Projectivity decided by the simplex oracle on the Cramer circuits, with
/// every ray value free.
pub fn oracle_projective(fan: &Fan) -> bool {
    let a: Vec<Vec<Rat>> = all_circuits(fan)
        .iter()
        .map(|l| l.iter().map(|&x| r(x)).collect())
        .collect();
    let b = vec![r(1); a.len()];
    match simplex_feasible(&a, &b) {
        Some(d) => {
            assert!(strictly_convex(fan, &d), "oracle point must be strictly convex");
            true
        }
        None => false,
    }
}

/// A random integer matrix of determinant ±1 with small entries.
pub fn random_unimodular(rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let mut m = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
    for _ in 0..rng.gen_range(2..6) {
        let i = rng.gen_range(0..3);
        let mut j = rng.gen_range(0..3);
        while j == i {
            j = rng.gen_range(0..3);
        }
        let k: i64 = if rng.gen_bool(0.5) { 1 } else { -1 };
        // row_i += k * row_j
        let rj = m[j].clone();
        for (x, y) in m[i].iter_mut().zip(rj) {
            *x += k * y;
        }
    }
    m.swap(0, rng.gen_range(0..3));
    if rng.gen_bool(0.5) {
        m[1].iter_mut().for_each(|x| *x = -*x);
    }
    let d = det3(&m[0], &m[1], &m[2]);
    assert!(d == 1 || d == -1);
    m
}

/// Every catalog instance on the parameter grids used throughout the tests.
pub fn catalog_grid() -> Vec<(CatalogId, Vec<i64>)> {
    let mut out = vec![
        (CatalogId::W7_5, vec![]),
        (CatalogId::Z10, vec![]),
        (CatalogId::Z5pp, vec![]),
        (CatalogId::Z8, vec![]),
        (CatalogId::Z12, vec![]),
    ];
    for a in -3..=3 {
        out.push((CatalogId::Z2, vec![a]));
        out.push((CatalogId::Z5p, vec![a]));
    }
    for a in -2..=2 {
        out.push((CatalogId::Z14p, vec![a]));
        for b in -2..=2 {
            out.push((CatalogId::Z11, vec![a, b]));
            out.push((CatalogId::Z13p, vec![a, b]));
            out.push((CatalogId::Z14pp, vec![a, b]));
        }
    }
    let vals = [-1, 0, 1, 2];
    for a in vals {
        for b in vals {
            for c in vals {
                for d in vals {
                    out.push((CatalogId::Z13pp, vec![a, b, c, d]));
                }
            }
        }
    }
    out
}

/// One representative per catalog family.
pub fn catalog_representatives() -> Vec<(CatalogId, Vec<i64>)> {
    CatalogId::ALL
        .into_iter()
        .map(|id| {
            let params = match id.arity() {
                0 => vec![],
                1 => vec![1],
                2 => vec![1, 2],
                _ => vec![2, 7, 4, 2],
            };
            (id, params)
        })
        .collect()
}

pub type Summary = (bool, bool, Vec<Vec<usize>>, Vec<(Vec<usize>, Vec<usize>, Vec<String>)>, bool, Vec<String>);

/// Every predicate that should not notice a change of lattice basis, as a
/// comparable summary.
pub fn summary(fan: &Fan) -> Summary {
    let collections = primitive::primitive_collections(fan).iter().map(|c| c.rays().to_vec()).collect();
    let relations = if fan.is_smooth() && fan.is_complete() {
        primitive::primitive_relations(fan)
            .unwrap()
            .into_iter()
            .map(|r| {
                (
                    r.collection.rays().to_vec(),
                    r.target_cone.rays().to_vec(),
                    r.coefficients.iter().map(ToString::to_string).collect(),
                )
            })
            .collect()
    } else {
        Vec::new()
    };
    let kinds = surgery::classify_walls(fan)
        .unwrap()
        .into_iter()
        .map(|(w, c)| format!("{:?} {} {}", w.wall_rays, c.kind, c.degree))
        .collect();
    (
        fan.is_smooth(),
        fan.is_complete(),
        collections,
        relations,
        projectivity::is_projective(fan).unwrap().projective,
        kinds,
    )
}

/// Re-checks a certificate against the Cramer circuits. Ample data must be
/// positive on every wall; Farkas multipliers must be nonnegative, combine
/// the walls to zero and have positive total.
pub fn certificate_holds(fan: &Fan, cert: &ProjectivityCertificate) -> bool {
    let walls = all_circuits(fan);
    match cert {
        ProjectivityCertificate::Ample(d) => walls.iter().all(|l| pair(l, d.values()).is_positive()),
        ProjectivityCertificate::Farkas(y) => {
            let mut combination = vec![r(0); fan.rays().len()];
            let mut total = r(0);
            for (&w, m) in y {
                if m.is_negative() {
                    return false;
                }
                for (c, &l) in combination.iter_mut().zip(&walls[w]) {
                    *c += m * r(l);
                }
                total += m;
            }
            combination.iter().all(Zero::is_zero) && total.is_positive()
        }
    }
}

pub fn verdict_values(cert: &ProjectivityCertificate) -> Vec<Rat> {
    match cert {
        ProjectivityCertificate::Ample(d) => d.values().to_vec(),
        ProjectivityCertificate::Farkas(_) => Vec::new(),
    }
}
