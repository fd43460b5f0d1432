//! Builders for the non-projective smooth toric threefold of Picard number
//! four and the Picard-number-five families that cannot be blown down.
//!
//! Rays are numbered as in the classification listings: `v1` is index 0.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::fan::Fan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("{id} takes {expected} parameter(s), got {found}")]
    ArityMismatch { id: CatalogId, expected: usize, found: usize },
    #[error("catalog fan {id} with parameters {params:?} is invalid: {source}")]
    Invalid { id: CatalogId, params: Vec<i64>, source: crate::error::FanError },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CatalogId {
    /// `[7-5]`
    W7_5,
    /// `[8-2]`, `Z2(a)`
    Z2,
    /// `[8-5']`, `Z'5(a)`
    Z5p,
    /// `[8-5'']`
    Z5pp,
    /// `[8-8]`
    Z8,
    /// `[8-10]`
    Z10,
    /// `[8-11]`, `Z11(a, b)`
    Z11,
    /// `[8-12]`
    Z12,
    /// `[8-13']`, `Z'13(a, b)`
    Z13p,
    /// `[8-13'']`, `Z''13(a, b, c, d)`
    Z13pp,
    /// `[8-14']`, `Z'14(a)`
    Z14p,
    /// `[8-14'']`, `Z''14(a, b)`
    Z14pp,
}

impl CatalogId {
    pub const ALL: [CatalogId; 12] = [
        CatalogId::W7_5,
        CatalogId::Z2,
        CatalogId::Z5p,
        CatalogId::Z5pp,
        CatalogId::Z8,
        CatalogId::Z10,
        CatalogId::Z11,
        CatalogId::Z12,
        CatalogId::Z13p,
        CatalogId::Z13pp,
        CatalogId::Z14p,
        CatalogId::Z14pp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogId::W7_5 => "W7_5",
            CatalogId::Z2 => "Z2",
            CatalogId::Z5p => "Z5p",
            CatalogId::Z5pp => "Z5pp",
            CatalogId::Z8 => "Z8",
            CatalogId::Z10 => "Z10",
            CatalogId::Z11 => "Z11",
            CatalogId::Z12 => "Z12",
            CatalogId::Z13p => "Z13p",
            CatalogId::Z13pp => "Z13pp",
            CatalogId::Z14p => "Z14p",
            CatalogId::Z14pp => "Z14pp",
        }
    }

    /// Oda's classification label.
    pub fn label(self) -> &'static str {
        match self {
            CatalogId::W7_5 => "[7-5]",
            CatalogId::Z2 => "[8-2]",
            CatalogId::Z5p => "[8-5']",
            CatalogId::Z5pp => "[8-5'']",
            CatalogId::Z8 => "[8-8]",
            CatalogId::Z10 => "[8-10]",
            CatalogId::Z11 => "[8-11]",
            CatalogId::Z12 => "[8-12]",
            CatalogId::Z13p => "[8-13']",
            CatalogId::Z13pp => "[8-13'']",
            CatalogId::Z14p => "[8-14']",
            CatalogId::Z14pp => "[8-14'']",
        }
    }

    /// Parameter names, in order.
    pub fn params(self) -> &'static [&'static str] {
        match self {
            CatalogId::Z2 | CatalogId::Z5p | CatalogId::Z14p => &["a"],
            CatalogId::Z11 | CatalogId::Z13p | CatalogId::Z14pp => &["a", "b"],
            CatalogId::Z13pp => &["a", "b", "c", "d"],
            _ => &[],
        }
    }

    pub fn arity(self) -> usize {
        self.params().len()
    }
}

impl fmt::Display for CatalogId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CatalogId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CatalogId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s) || id.label() == s)
            .ok_or_else(|| CatalogError::UnknownId(s.to_string()))
    }
}

/// A catalog fan together with its known projectivity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: CatalogId,
    pub params: Vec<i64>,
    pub expected_projective: bool,
}

impl CatalogEntry {
    pub fn new(id: CatalogId, params: &[i64]) -> Result<Self, CatalogError> {
        Ok(Self { id, params: params.to_vec(), expected_projective: expected_projectivity(id, params)? })
    }

    pub fn build(&self) -> Result<Fan, CatalogError> {
        build(self.id, &self.params)
    }
}

fn check_arity(id: CatalogId, params: &[i64]) -> Result<(), CatalogError> {
    if params.len() != id.arity() {
        return Err(CatalogError::ArityMismatch { id, expected: id.arity(), found: params.len() });
    }
    Ok(())
}

/// Rays and 1-based cone triples of a catalog fan.
fn listing(id: CatalogId, p: &[i64]) -> (Vec<[i64; 3]>, Vec<[usize; 3]>) {
    match id {
        CatalogId::W7_5 => (
            vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1], [-1, -1, 0], [0, -1, -1], [-1, 0, -1]],
            vec![
                [1, 2, 3], [1, 2, 7], [1, 3, 6], [1, 6, 7], [2, 3, 5],
                [2, 5, 7], [3, 5, 6], [4, 5, 6], [4, 5, 7], [4, 6, 7],
            ],
        ),
        CatalogId::Z2 => {
            let a = p[0];
            (
                vec![[1, 0, 0], [0, -2, -1], [0, -1, 0], [0, 0, 1], [0, 1, a], [0, 0, -1], [0, -1, -1], [-1, -3, -2]],
                vec![
                    [1, 2, 3], [1, 2, 8], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 7],
                    [1, 7, 8], [2, 3, 8], [3, 4, 8], [4, 5, 8], [5, 6, 8], [6, 7, 8],
                ],
            )
        }
        CatalogId::Z10 => (
            vec![[0, 0, 1], [-1, -1, -1], [0, -1, -2], [0, 0, -1], [0, 1, 0], [1, 0, -1], [1, 0, 0], [1, -1, -2]],
            vec![
                [1, 2, 5], [1, 2, 7], [1, 5, 7], [2, 3, 4], [2, 3, 8], [2, 4, 5],
                [2, 7, 8], [3, 4, 8], [4, 5, 8], [5, 6, 7], [5, 6, 8], [6, 7, 8],
            ],
        ),
        CatalogId::Z11 => {
            let (a, b) = (p[0], p[1]);
            (
                vec![[1, 0, 0], [0, -1, 0], [0, 0, 1], [1, 1, a], [0, 0, -1], [0, -1, -1], [-1, -2, -1], [0, 1, b]],
                vec![
                    [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 7], [1, 2, 7],
                    [2, 3, 7], [5, 6, 7], [3, 4, 8], [4, 5, 8], [5, 7, 8], [3, 7, 8],
                ],
            )
        }
        CatalogId::Z5p => {
            let a = p[0];
            (
                vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, -1, -a], [0, 0, -1], [-1, 1, -1], [-1, 0, -1], [-1, -1, 0]],
                vec![
                    [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 8],
                    [3, 4, 8], [4, 5, 8], [5, 6, 7], [5, 7, 8], [6, 7, 8], [2, 6, 8],
                ],
            )
        }
        CatalogId::Z5pp => (
            vec![[0, 1, 0], [0, -1, -1], [1, 0, 0], [0, 0, 1], [-1, 0, -1], [-1, -2, -2], [-1, -1, -1], [-1, -1, 0]],
            vec![
                [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 2, 6], [2, 3, 8],
                [3, 4, 8], [4, 5, 8], [5, 6, 7], [5, 7, 8], [6, 7, 8], [2, 6, 8],
            ],
        ),
        CatalogId::Z8 => (
            vec![[0, 0, 1], [1, 0, 0], [0, -1, -1], [-1, -2, -1], [0, 1, 0], [0, 0, -1], [-1, -2, -2], [-1, -1, -2]],
            vec![
                [1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 2, 5], [2, 5, 6], [3, 4, 7],
                [2, 3, 8], [3, 7, 8], [4, 7, 8], [4, 5, 8], [5, 6, 8], [2, 6, 8],
            ],
        ),
        CatalogId::Z12 => (
            vec![[1, 0, 0], [0, 1, 0], [0, 0, 1], [0, -1, -1], [-1, 0, -1], [-2, -1, 0], [-1, -1, -1], [-2, -1, -1]],
            vec![
                [1, 2, 3], [1, 2, 4], [1, 3, 6], [1, 4, 6], [2, 3, 5], [2, 4, 5],
                [3, 5, 6], [4, 5, 7], [4, 6, 7], [5, 6, 8], [5, 7, 8], [6, 7, 8],
            ],
        ),
        CatalogId::Z13p => {
            let (a, b) = (p[0], p[1]);
            (
                vec![[-1, b, 0], [0, -1, 0], [1, -1, 0], [-1, 0, -1], [0, 0, -1], [0, 1, 0], [0, 0, 1], [1, 0, a]],
                vec![
                    [1, 2, 4], [2, 3, 4], [3, 4, 5], [4, 5, 6], [1, 4, 6], [1, 6, 7],
                    [1, 2, 7], [2, 3, 7], [3, 5, 8], [5, 6, 8], [3, 7, 8], [6, 7, 8],
                ],
            )
        }
        CatalogId::Z13pp => {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            (
                vec![[1, 1, b], [1, 0, 0], [0, -1, 0], [0, 0, -1], [-1, a, d], [0, 1, 0], [0, 0, 1], [-1, c, d + 1]],
                vec![
                    [1, 2, 4], [2, 3, 4], [3, 4, 5], [4, 5, 6], [1, 4, 6], [1, 6, 7],
                    [1, 2, 7], [2, 3, 7], [3, 5, 8], [5, 6, 8], [3, 7, 8], [6, 7, 8],
                ],
            )
        }
        CatalogId::Z14p => {
            let a = p[0];
            (
                vec![[0, 0, -1], [1, 0, 0], [0, 1, 0], [-1, -1, a], [-1, -1, a + 1], [1, 0, 1], [0, 0, 1], [0, 1, 1]],
                vec![
                    [1, 2, 3], [1, 3, 4], [1, 2, 4], [3, 4, 5], [4, 5, 6], [2, 4, 6],
                    [5, 6, 7], [2, 3, 8], [3, 5, 8], [5, 7, 8], [6, 7, 8], [2, 6, 8],
                ],
            )
        }
        CatalogId::Z14pp => {
            let (a, b) = (p[0], p[1]);
            (
                vec![[-1, a, b], [0, 1, 0], [0, -1, -1], [0, 0, 1], [1, 0, 1], [1, 1, 0], [1, 0, 0], [1, -1, -1]],
                vec![
                    [1, 2, 3], [1, 3, 4], [1, 2, 4], [3, 4, 5], [4, 5, 6], [2, 4, 6],
                    [5, 6, 7], [2, 3, 8], [3, 5, 8], [5, 7, 8], [6, 7, 8], [2, 6, 8],
                ],
            )
        }
    }
}

/// The catalog fan `id` at the given parameters.
pub fn build(id: CatalogId, params: &[i64]) -> Result<Fan, CatalogError> {
    check_arity(id, params)?;
    let (rays, cones) = listing(id, params);
    Fan::new(
        3,
        rays.iter().map(|r| r.to_vec()).collect(),
        cones.iter().map(|c| c.iter().map(|&i| i - 1).collect()).collect(),
    )
    .map_err(|source| CatalogError::Invalid { id, params: params.to_vec(), source })
}

/// Known projectivity of a catalog fan as a predicate on its parameters.
pub fn expected_projectivity(id: CatalogId, params: &[i64]) -> Result<bool, CatalogError> {
    check_arity(id, params)?;
    Ok(match id {
        CatalogId::Z2 | CatalogId::Z10 | CatalogId::Z11 => true,
        CatalogId::Z5p => params[0] == 0,
        CatalogId::Z13p => params[0] * params[1] == 0,
        CatalogId::Z13pp => params[1] == 0 || params[0] == params[2],
        CatalogId::W7_5
        | CatalogId::Z5pp
        | CatalogId::Z8
        | CatalogId::Z12
        | CatalogId::Z14p
        | CatalogId::Z14pp => false,
    })
}

/// Parses `a=2,b=7,...` against the parameter names of `id`.
pub fn parse_params(id: CatalogId, text: &str) -> Result<Vec<i64>, String> {
    let names = id.params();
    let mut values: Vec<Option<i64>> = vec![None; names.len()];
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected name=value, got {part:?}"))?;
        let slot = names
            .iter()
            .position(|n| *n == name.trim())
            .ok_or_else(|| format!("{id} has no parameter {:?}", name.trim()))?;
        let value = value
            .trim()
            .parse()
            .map_err(|_| format!("parameter {name} is not an integer: {value:?}"))?;
        values[slot] = Some(value);
    }
    values
        .into_iter()
        .zip(names)
        .map(|(v, n)| v.ok_or_else(|| format!("missing parameter {n} for {id}")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_through_names_and_labels() {
        for id in CatalogId::ALL {
            assert_eq!(id.name().parse::<CatalogId>().unwrap(), id);
            assert_eq!(id.label().parse::<CatalogId>().unwrap(), id);
        }
        assert!(matches!("Z99".parse::<CatalogId>(), Err(CatalogError::UnknownId(_))));
    }

    #[test]
    fn arity_is_enforced() {
        assert!(matches!(
            build(CatalogId::Z13pp, &[1, 2]),
            Err(CatalogError::ArityMismatch { expected: 4, found: 2, .. })
        ));
        assert!(build(CatalogId::Z10, &[]).is_ok());
    }

    #[test]
    fn parameters_parse_by_name() {
        assert_eq!(parse_params(CatalogId::Z13pp, "a=2,b=7,c=4,d=2").unwrap(), vec![2, 7, 4, 2]);
        assert_eq!(parse_params(CatalogId::Z13pp, "d=2, c=4, b=7, a=2").unwrap(), vec![2, 7, 4, 2]);
        assert!(parse_params(CatalogId::Z13pp, "a=2").is_err());
        assert!(parse_params(CatalogId::Z2, "x=1").is_err());
        assert_eq!(parse_params(CatalogId::Z12, "").unwrap(), Vec::<i64>::new());
    }

    #[test]
    fn instantiated_rays() {
        let f = build(CatalogId::Z13pp, &[2, 7, 4, 2]).unwrap();
        assert_eq!(f.ray(4).coords(), &[-1, 2, 2]);
        assert_eq!(f.ray(7).coords(), &[-1, 4, 3]);
        let f = build(CatalogId::Z2, &[0]).unwrap();
        assert_eq!(f.rays().len(), 8);
        assert_eq!(f.ray(4).coords(), &[0, 1, 0]);
        let w = build(CatalogId::W7_5, &[]).unwrap();
        assert_eq!((w.rays().len(), w.max_cones().len()), (7, 10));
    }
}
