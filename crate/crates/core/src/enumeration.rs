//! Every smooth complete fan on a fixed set of rays in dimension 3.
//!
//! Candidates are the unimodular triples whose closed cone contains no other
//! input ray. A generic point lies in the interior of exactly one maximal cone
//! of any complete fan; fixing that cone first and then always closing the
//! lexicographically smallest unmatched wall makes every branch forced by the
//! target fan, so each fan is reached along exactly one path.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::arith::{self, Int};
use crate::error::FanError;
use crate::fan::{self, CanonicalKey, Fan, RayVector};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnumerationReport {
    pub rays: Vec<Vec<i64>>,
    /// Sorted by canonical key.
    pub fans: Vec<Fan>,
    pub candidate_cone_count: usize,
    pub search_nodes: u64,
}

impl EnumerationReport {
    pub fn keys(&self) -> Vec<CanonicalKey> {
        self.fans.iter().map(Fan::canonical_key).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "rays": self.rays,
            "fan_count": self.fans.len(),
            "fans": self.fans.iter().map(|f| serde_json::json!({
                "digest": f.canonical_key().digest(),
                "fan": crate::io::fan_to_json(f),
            })).collect::<Vec<_>>(),
            "candidate_cone_count": self.candidate_cone_count,
            "search_nodes": self.search_nodes,
        })
    }
}

fn validate_rays(rays: &[Vec<i64>]) -> Result<(), FanError> {
    for (index, r) in rays.iter().enumerate() {
        if r.len() != 3 {
            return Err(FanError::RayDimension { index, expected: 3, found: r.len() });
        }
        RayVector::new(r.clone())?;
    }
    for i in 0..rays.len() {
        if let Some(j) = (i + 1..rays.len()).find(|&j| rays[j] == rays[i]) {
            return Err(FanError::DuplicateRay { first: i, second: j });
        }
    }
    let refs: Vec<&[i64]> = rays.iter().map(Vec::as_slice).collect();
    if arith::rank(&refs) < 3 {
        return Err(FanError::RaysDegenerate("the rays do not span a 3-dimensional space".into()));
    }
    Ok(())
}

/// Unimodular triples whose closed cone contains no other ray, in lex order.
pub fn candidate_cones(rays: &[Vec<i64>]) -> Vec<[usize; 3]> {
    let n = rays.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let basis = [rays[i].as_slice(), &rays[j], &rays[k]];
                if arith::det(&basis).abs() != Int::from(1) {
                    continue;
                }
                let covers_other = (0..n).filter(|r| ![i, j, k].contains(r)).any(|r| {
                    arith::coordinates(&basis, &rays[r])
                        .expect("unimodular")
                        .iter()
                        .all(|c| !c.is_negative())
                });
                if !covers_other {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out
}

/// A point off every plane spanned by two rays.
fn generic_point(rays: &[Vec<i64>]) -> Vec<i64> {
    let planes: Vec<[&[i64]; 2]> = (0..rays.len())
        .flat_map(|i| (i + 1..rays.len()).map(move |j| (i, j)))
        .map(|(i, j)| [rays[i].as_slice(), rays[j].as_slice()])
        .filter(|p| arith::rank(p) == 2)
        .collect();
    let mut n: i64 = 2;
    loop {
        let p = vec![1, n, n * n + 1];
        if planes.iter().all(|[u, v]| !arith::det(&[u, v, &p]).is_zero()) {
            return p;
        }
        n += 1;
    }
}

struct Search<'a> {
    candidates: &'a [[usize; 3]],
    compatible: Vec<Vec<bool>>,
    /// candidate indices containing each facet
    by_facet: BTreeMap<[usize; 2], Vec<usize>>,
    ray_count: usize,
    chosen: Vec<usize>,
    facet_use: BTreeMap<[usize; 2], u8>,
    nodes: u64,
    found: Vec<Vec<usize>>,
}

fn facets(c: &[usize; 3]) -> [[usize; 2]; 3] {
    [[c[0], c[1]], [c[0], c[2]], [c[1], c[2]]]
}

impl Search<'_> {
    fn push(&mut self, c: usize) {
        self.chosen.push(c);
        for f in facets(&self.candidates[c]) {
            *self.facet_use.entry(f).or_insert(0) += 1;
        }
    }

    fn pop(&mut self) {
        let c = self.chosen.pop().unwrap();
        for f in facets(&self.candidates[c]) {
            let e = self.facet_use.get_mut(&f).unwrap();
            *e -= 1;
            if *e == 0 {
                self.facet_use.remove(&f);
            }
        }
    }

    fn run(&mut self) {
        self.nodes += 1;
        let open = self.facet_use.iter().find(|(_, &n)| n == 1).map(|(f, _)| *f);
        let Some(wall) = open else {
            let mut used = vec![false; self.ray_count];
            for &c in &self.chosen {
                for &r in &self.candidates[c] {
                    used[r] = true;
                }
            }
            if used.iter().all(|&u| u) {
                self.found.push(self.chosen.clone());
            }
            return;
        };
        let options: Vec<usize> = self.by_facet[&wall]
            .iter()
            .copied()
            .filter(|&c| {
                !self.chosen.contains(&c)
                    && self.chosen.iter().all(|&s| self.compatible[s][c])
                    && facets(&self.candidates[c])
                        .iter()
                        .all(|f| self.facet_use.get(f).copied().unwrap_or(0) < 2)
            })
            .collect();
        for c in options {
            self.push(c);
            self.run();
            self.pop();
        }
    }
}

/// All smooth complete fans whose rays are exactly `rays`.
pub fn enumerate_smooth_complete_fans(rays: &[Vec<i64>]) -> Result<EnumerationReport, FanError> {
    validate_rays(rays)?;
    let candidates = candidate_cones(rays);
    let m = candidates.len();
    let vectors = |c: &[usize; 3]| -> Vec<&[i64]> { c.iter().map(|&r| rays[r].as_slice()).collect() };
    let mut compatible = vec![vec![true; m]; m];
    for a in 0..m {
        for b in a + 1..m {
            let ok = fan::meet_in_common_face(&vectors(&candidates[a]), &vectors(&candidates[b]));
            compatible[a][b] = ok;
            compatible[b][a] = ok;
        }
    }
    let mut by_facet: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
    for (i, c) in candidates.iter().enumerate() {
        for f in facets(c) {
            by_facet.entry(f).or_default().push(i);
        }
    }

    let point = generic_point(rays);
    let seeds: Vec<usize> = (0..m)
        .filter(|&c| {
            arith::coordinates(&vectors(&candidates[c]), &point)
                .expect("unimodular")
                .iter()
                .all(Signed::is_positive)
        })
        .collect();

    let mut search = Search {
        candidates: &candidates,
        compatible,
        by_facet,
        ray_count: rays.len(),
        chosen: Vec::new(),
        facet_use: BTreeMap::new(),
        nodes: 0,
        found: Vec::new(),
    };
    for seed in seeds {
        search.push(seed);
        search.run();
        search.pop();
    }

    let mut fans = Vec::with_capacity(search.found.len());
    for cones in &search.found {
        let fan = Fan::new(3, rays.to_vec(), cones.iter().map(|&c| candidates[c].to_vec()).collect())
            .expect("pairwise compatible unimodular cones form a fan");
        debug_assert!(fan.is_complete() && fan.is_smooth());
        fans.push(fan);
    }
    fans.sort_by_cached_key(Fan::canonical_key);
    fans.dedup_by_key(|f| f.canonical_key());
    Ok(EnumerationReport {
        rays: rays.to_vec(),
        fans,
        candidate_cone_count: m,
        search_nodes: search.nodes,
    })
}

/// Sufficient condition on `(a, b, c, d)` for the smooth complete fan on the
/// rays of `Z''13(a, b, c, d)` to be unique: `a, c, d` avoid `{-2, -1, 0, 1}`,
/// `c > a + 1`, and `b` exceeds the largest of `2, |a|, |a+2|, |c|, |c+2|,
/// |d-1|, |d+2|, |ad+a-cd|, |ad+a-cd+2|`.
pub fn unique_smooth_fan_condition(a: i64, b: i64, c: i64, d: i64) -> bool {
    let excluded = |x: i64| (-2..=1).contains(&x);
    if excluded(a) || excluded(c) || excluded(d) || c <= a + 1 {
        return false;
    }
    let e = a * d + a - c * d;
    let bound = [2, a.abs(), (a + 2).abs(), c.abs(), (c + 2).abs(), (d - 1).abs(), (d + 2).abs(), e.abs(), (e + 2).abs()]
        .into_iter()
        .max()
        .unwrap();
    b > bound
}
