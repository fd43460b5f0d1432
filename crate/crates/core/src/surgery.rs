//! Flips, flops and anti-flips as wall exchanges on 3-dimensional fans.
//!
//! A wall `⟨a, b⟩` between `⟨a, b, c⟩` and `⟨a, b, d⟩` has the circuit
//! relation `λ_a a + λ_b b + λ_c c + λ_d d = 0` with `λ_c, λ_d > 0`. When both
//! `λ_a` and `λ_b` are negative the four rays are in convex position with the
//! segments `ab` and `cd` crossing, and the two cones can be exchanged for
//! `⟨c, d, a⟩` and `⟨c, d, b⟩`. The sign of the anticanonical degree `Σ λ_i`
//! decides the kind: positive is a flip, zero a flop, negative an anti-flip.

use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{self, Int};
use crate::error::FanError;
use crate::fan::{CanonicalKey, Fan, Wall};
use crate::projectivity;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SurgeryKind {
    Flip,
    Flop,
    AntiFlip,
    NotModifiable,
}

impl SurgeryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SurgeryKind::Flip => "flip",
            SurgeryKind::Flop => "flop",
            SurgeryKind::AntiFlip => "anti-flip",
            SurgeryKind::NotModifiable => "not-modifiable",
        }
    }

    pub fn is_modifiable(self) -> bool {
        self != SurgeryKind::NotModifiable
    }
}

impl fmt::Display for SurgeryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WallClassification {
    pub kind: SurgeryKind,
    /// Degree of `-K` on the wall curve.
    pub degree: Int,
}

/// One wall exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurgeryStep {
    pub wall: [usize; 2],
    pub classification: WallClassification,
    pub before_key: CanonicalKey,
    pub after_key: CanonicalKey,
}

impl SurgeryStep {
    /// `{"wall": [i, j], "kind": ..., "degree": n}` with 0-based indices.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "wall": self.wall,
            "label": format!("<{},{}>", Fan::label(self.wall[0]), Fan::label(self.wall[1])),
            "kind": self.classification.kind.as_str(),
            "degree": arith::int_to_json(&self.classification.degree),
        })
    }
}

fn require_dim3(fan: &Fan) -> Result<(), FanError> {
    if fan.dim() != 3 {
        return Err(FanError::UnsupportedDimension { dim: fan.dim() });
    }
    Ok(())
}

pub fn classify_wall(fan: &Fan, wall: &Wall) -> WallClassification {
    let lambda = projectivity::circuit(fan, wall);
    let degree: Int = lambda.iter().sum();
    let shrinkable = wall.wall_rays.iter().all(|&r| lambda[r].is_negative());
    let kind = if !shrinkable {
        SurgeryKind::NotModifiable
    } else if degree.is_positive() {
        SurgeryKind::Flip
    } else if degree.is_zero() {
        SurgeryKind::Flop
    } else {
        SurgeryKind::AntiFlip
    };
    WallClassification { kind, degree }
}

/// Classification of every wall, in wall order.
pub fn classify_walls(fan: &Fan) -> Result<Vec<(Wall, WallClassification)>, FanError> {
    require_dim3(fan)?;
    let walls = fan.walls().map_err(|_| FanError::NotComplete)?;
    Ok(walls
        .into_iter()
        .map(|w| {
            let c = classify_wall(fan, &w);
            (w, c)
        })
        .collect())
}

pub fn flopping_walls(fan: &Fan) -> Result<Vec<Wall>, FanError> {
    Ok(classify_walls(fan)?
        .into_iter()
        .filter(|(_, c)| c.kind == SurgeryKind::Flop)
        .map(|(w, _)| w)
        .collect())
}

/// Exchanges the two cones on either side of `wall`.
pub fn perform_surgery(fan: &Fan, wall: &Wall) -> Result<(Fan, SurgeryStep), FanError> {
    require_dim3(fan)?;
    let classification = classify_wall(fan, wall);
    if !classification.kind.is_modifiable() {
        return Err(FanError::NotModifiableWall { wall: wall.wall_rays.clone() });
    }
    let [a, b] = [wall.wall_rays[0], wall.wall_rays[1]];
    let [c, d] = wall.off_rays;
    let mut cones: Vec<Vec<usize>> = fan
        .max_cones()
        .iter()
        .enumerate()
        .filter(|(i, _)| !wall.side_cones.contains(i))
        .map(|(_, cone)| cone.rays().to_vec())
        .collect();
    cones.push(vec![c, d, a]);
    cones.push(vec![c, d, b]);
    let next = Fan::new(fan.dim(), fan.raw_rays(), cones)
        .map_err(|e| FanError::ResultInvalid(Box::new(e)))?;
    let step = SurgeryStep {
        wall: [a, b],
        classification,
        before_key: fan.canonical_key(),
        after_key: next.canonical_key(),
    };
    Ok((next, step))
}

/// Surgery on the wall spanned by the given pair of rays.
pub fn perform_surgery_at(fan: &Fan, rays: [usize; 2]) -> Result<(Fan, SurgeryStep), FanError> {
    let wall = fan.find_wall(&rays)?;
    perform_surgery(fan, &wall)
}
