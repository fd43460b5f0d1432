//! Ampleness, nefness and projectivity of simplicial complete fans.
//!
//! Each wall `τ` with side cones `⟨W, c⟩` and `⟨W, d⟩` carries the circuit
//! relation `λ` of the rays `W ∪ {c, d}`, normalized to be primitive integral
//! with `λ_c, λ_d > 0`. For divisor data `d` (one value per ray) the pairing
//! `λ · d` is the degree of `D = Σ d_i D_i` on the wall curve; `D` is ample
//! iff every pairing is positive. The projective-space hyperplane class
//! `(0, 0, 0, 1)` pairs to `1` with every wall, which pins the sign.
//!
//! Projectivity asks whether `{d : λ^τ · d >= 1 ∀τ}` is nonempty. The system
//! is homogeneous up to the right-hand side, so `>= 1` is equivalent to
//! `> 0`. Globally linear functions pair to zero with every wall, so `d` is
//! fixed to `0` on the rays of the first maximal cone before solving.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::arith::{self, Int, Rat};
use crate::error::FanError;
use crate::fan::{Fan, Wall};
use crate::lp::{self, Feasibility, Inequality};
use crate::primitive::{self, PrimitiveRelation};

/// One value per ray: the divisor `Σ d_i D_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DivisorData(pub Vec<Rat>);

impl DivisorData {
    pub fn from_integers(values: &[i64]) -> Self {
        Self(values.iter().map(|&v| arith::rat(v)).collect())
    }

    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn scaled(&self, factor: &Rat) -> Self {
        Self(self.0.iter().map(|v| v * factor).collect())
    }
}

/// The circuit relation across a wall, over all rays of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallInequality {
    pub wall: Wall,
    pub lambda: Vec<Int>,
}

impl WallInequality {
    pub fn evaluate(&self, d: &DivisorData) -> Rat {
        arith::dot_int(&self.lambda, d.values())
    }

    /// Anticanonical degree `Σ λ_i`.
    pub fn degree(&self) -> Int {
        self.lambda.iter().sum()
    }
}

/// Circuit relation of the rays in a wall's two side cones.
pub fn circuit(fan: &Fan, wall: &Wall) -> Vec<Int> {
    let [c, d] = wall.off_rays;
    let mut basis: Vec<usize> = wall.wall_rays.clone();
    basis.push(c);
    let vectors: Vec<&[i64]> = basis.iter().map(|&r| fan.ray(r).coords()).collect();
    // d = Σ x_i w_i + z c, so Σ (-x_i) w_i + (-z) c + d = 0 with -z > 0
    let x = arith::coordinates(&vectors, fan.ray(d).coords()).expect("side cones are simplicial");
    let mut rel: Vec<Rat> = x.iter().map(|v| -v).collect();
    rel.push(arith::rat(1));
    let prim = arith::primitive_integer_vector(&rel);
    let mut lambda = vec![Int::zero(); fan.rays().len()];
    for (&r, v) in basis.iter().chain(std::iter::once(&d)).zip(prim) {
        lambda[r] = v;
    }
    debug_assert!(lambda[c].is_positive() && lambda[d].is_positive());
    lambda
}

pub fn wall_inequalities(fan: &Fan) -> Result<Vec<WallInequality>, FanError> {
    let walls = fan.walls().map_err(|_| FanError::NotComplete)?;
    Ok(walls
        .into_iter()
        .map(|wall| {
            let lambda = circuit(fan, &wall);
            WallInequality { wall, lambda }
        })
        .collect())
}

/// A witness for or against projectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProjectivityCertificate {
    /// Divisor data with every wall pairing at least one.
    Ample(DivisorData),
    /// Nonnegative multipliers indexed by wall position whose weighted circuit
    /// sum is zero.
    Farkas(BTreeMap<usize, Rat>),
}

impl ProjectivityCertificate {
    /// Re-checks the certificate against the fan's walls by direct evaluation.
    pub fn verify(&self, inequalities: &[WallInequality]) -> bool {
        match self {
            ProjectivityCertificate::Ample(d) => inequalities
                .iter()
                .all(|w| w.evaluate(d) >= arith::rat(1)),
            ProjectivityCertificate::Farkas(mu) => {
                let Some(width) = inequalities.first().map(|w| w.lambda.len()) else {
                    return false;
                };
                if mu.values().any(Signed::is_negative) || !mu.values().any(Signed::is_positive) {
                    return false;
                }
                let mut sum = vec![Rat::zero(); width];
                for (&i, m) in mu {
                    let Some(w) = inequalities.get(i) else { return false };
                    for (s, l) in sum.iter_mut().zip(&w.lambda) {
                        *s += arith::rat_of(l) * m;
                    }
                }
                sum.iter().all(Zero::is_zero)
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            ProjectivityCertificate::Ample(d) => serde_json::json!({
                "feasible_d": d.values().iter().map(arith::rat_to_json).collect::<Vec<_>>()
            }),
            ProjectivityCertificate::Farkas(mu) => {
                let map: serde_json::Map<String, serde_json::Value> = mu
                    .iter()
                    .map(|(i, m)| (i.to_string(), arith::rat_to_json(m)))
                    .collect();
                serde_json::json!({ "farkas": map })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityVerdict {
    pub projective: bool,
    pub certificate: ProjectivityCertificate,
}

// Variables are the rays outside the first maximal cone.
fn gauge_fixed_rows(fan: &Fan, inequalities: &[WallInequality]) -> (Vec<usize>, Vec<Vec<Rat>>) {
    let gauge = &fan.max_cones()[0];
    let free: Vec<usize> = (0..fan.rays().len()).filter(|r| !gauge.contains(*r)).collect();
    let rows = inequalities
        .iter()
        .map(|w| free.iter().map(|&r| arith::rat_of(&w.lambda[r])).collect())
        .collect();
    (free, rows)
}

fn lift(fan: &Fan, free: &[usize], x: &[Rat]) -> DivisorData {
    let mut d = vec![Rat::zero(); fan.rays().len()];
    for (&r, v) in free.iter().zip(x) {
        d[r] = v.clone();
    }
    // clearing denominators scales by an integer >= 1, so bounds of the form
    // `>= 1` and `>= 0` still hold
    let lcm = d.iter().fold(Int::from(1), |acc, v| num_integer::Integer::lcm(&acc, v.denom()));
    DivisorData(d.iter().map(|v| v * arith::rat_of(&lcm)).collect())
}

pub fn is_projective(fan: &Fan) -> Result<ProjectivityVerdict, FanError> {
    let inequalities = wall_inequalities(fan)?;
    let (free, rows) = gauge_fixed_rows(fan, &inequalities);
    let system: Vec<Inequality> = rows
        .into_iter()
        .map(|coeffs| Inequality::new(coeffs, arith::rat(1)))
        .collect();
    let verdict = match lp::solve(&system, free.len()) {
        Feasibility::Feasible(x) => ProjectivityVerdict {
            projective: true,
            certificate: ProjectivityCertificate::Ample(lift(fan, &free, &x)),
        },
        Feasibility::Infeasible(y) => ProjectivityVerdict {
            projective: false,
            certificate: ProjectivityCertificate::Farkas(
                y.into_iter()
                    .enumerate()
                    .filter(|(_, m)| !m.is_zero())
                    .collect(),
            ),
        },
    };
    debug_assert!(verdict.certificate.verify(&inequalities));
    Ok(verdict)
}

fn check_length(fan: &Fan, d: &DivisorData) {
    assert_eq!(d.values().len(), fan.rays().len(), "divisor data must have one value per ray");
}

pub fn is_ample(fan: &Fan, d: &DivisorData) -> Result<bool, FanError> {
    check_length(fan, d);
    Ok(wall_inequalities(fan)?
        .iter()
        .all(|w| w.evaluate(d).is_positive()))
}

pub fn is_nef(fan: &Fan, d: &DivisorData) -> Result<bool, FanError> {
    check_length(fan, d);
    Ok(wall_inequalities(fan)?
        .iter()
        .all(|w| !w.evaluate(d).is_negative()))
}

/// A nef divisor with positive degree on `wall_index`, if one exists.
pub fn nef_positive_on(fan: &Fan, wall_index: usize) -> Result<Option<DivisorData>, FanError> {
    let inequalities = wall_inequalities(fan)?;
    let (free, rows) = gauge_fixed_rows(fan, &inequalities);
    let mut system: Vec<Inequality> = rows
        .iter()
        .map(|coeffs| Inequality::new(coeffs.clone(), Rat::zero()))
        .collect();
    system.push(Inequality::new(rows[wall_index].clone(), arith::rat(1)));
    Ok(match lp::solve(&system, free.len()) {
        Feasibility::Feasible(x) => Some(lift(fan, &free, &x)),
        Feasibility::Infeasible(_) => None,
    })
}

/// True iff some nef divisor pairs positively with some wall curve.
pub fn nontrivial_nef_exists(fan: &Fan) -> Result<bool, FanError> {
    let count = wall_inequalities(fan)?.len();
    for i in 0..count {
        if nef_positive_on(fan, i)?.is_some() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Refutation of an effective ample divisor from primitive relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveAmpleObstruction {
    pub relations: Vec<PrimitiveRelation>,
    /// Multiplier per relation, aligned with `relations`.
    pub relation_multipliers: Vec<Rat>,
    /// Multiplier per ray for the constraints `d_i >= 0`.
    pub nonnegativity_multipliers: Vec<Rat>,
}

impl EffectiveAmpleObstruction {
    /// `Σ μ_r · degree_vector(r) + Σ ν_i e_i = 0` with some `μ_r > 0` and all
    /// multipliers nonnegative.
    pub fn verify(&self, ray_count: usize) -> bool {
        if self.relation_multipliers.len() != self.relations.len()
            || self.nonnegativity_multipliers.len() != ray_count
        {
            return false;
        }
        let all = self.relation_multipliers.iter().chain(&self.nonnegativity_multipliers);
        if all.clone().any(Signed::is_negative) || !self.relation_multipliers.iter().any(Signed::is_positive) {
            return false;
        }
        let mut sum: Vec<Rat> = self.nonnegativity_multipliers.clone();
        for (rel, m) in self.relations.iter().zip(&self.relation_multipliers) {
            for (s, v) in sum.iter_mut().zip(rel.degree_vector(ray_count)) {
                *s += arith::rat_of(&v) * m;
            }
        }
        sum.iter().all(Zero::is_zero)
    }

    /// Relations carrying a positive multiplier.
    pub fn active_relations(&self) -> Vec<(&PrimitiveRelation, &Rat)> {
        self.relations
            .iter()
            .zip(&self.relation_multipliers)
            .filter(|(_, m)| m.is_positive())
            .collect()
    }
}

/// Infeasibility of `{d >= 0, degree of every primitive relation >= 1}`.
///
/// A witness proves that no effective torus-invariant divisor is ample. No
/// witness proves nothing.
pub fn effective_ample_obstruction(fan: &Fan) -> Result<Option<EffectiveAmpleObstruction>, FanError> {
    if !fan.is_complete() {
        return Err(FanError::NotComplete);
    }
    if !fan.is_smooth() {
        return Err(FanError::NotSmooth);
    }
    let n = fan.rays().len();
    let relations = primitive::primitive_relations(fan)?;
    let mut system = Vec::with_capacity(n + relations.len());
    for i in 0..n {
        let mut e = vec![Rat::zero(); n];
        e[i] = arith::rat(1);
        system.push(Inequality::new(e, Rat::zero()));
    }
    for rel in &relations {
        let coeffs = rel.degree_vector(n).iter().map(arith::rat_of).collect();
        system.push(Inequality::new(coeffs, arith::rat(1)));
    }
    Ok(match lp::solve(&system, n) {
        Feasibility::Feasible(_) => None,
        Feasibility::Infeasible(y) => {
            let nonnegativity_multipliers = y[..n].to_vec();
            let relation_multipliers = y[n..].to_vec();
            Some(EffectiveAmpleObstruction { relations, relation_multipliers, nonnegativity_multipliers })
        }
    })
}
