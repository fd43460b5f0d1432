//! Exact feasibility of linear inequality systems `A x >= b` by
//! Fourier–Motzkin elimination.
//!
//! Every derived row remembers the nonnegative combination of original rows
//! that produced it, so an infeasible system yields a Farkas witness
//! `y >= 0, yᵀA = 0, yᵀb > 0` for free. Feasible systems are solved by
//! back-substitution through the stored elimination stages.
//!
//! Rows with identical left-hand sides keep only the strongest right-hand
//! side. No other pruning is done; the systems met here have at most a few
//! dozen rows in a handful of unknowns.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, Rat};

/// One row `coeffs · x >= rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
}

impl Inequality {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat) -> Self {
        Self { coeffs, rhs }
    }

    pub fn holds_at(&self, x: &[Rat]) -> bool {
        let lhs = self
            .coeffs
            .iter()
            .zip(x)
            .fold(Rat::zero(), |acc, (a, b)| acc + a * b);
        lhs >= self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    /// A point satisfying every row.
    Feasible(Vec<Rat>),
    /// Nonnegative multipliers, one per original row.
    Infeasible(Vec<Rat>),
}

impl Feasibility {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Feasibility::Feasible(_))
    }
}

/// Checks `y >= 0`, `yᵀA = 0` and `yᵀb > 0` by direct summation.
pub fn is_farkas_witness(system: &[Inequality], num_vars: usize, y: &[Rat]) -> bool {
    if y.len() != system.len() || y.iter().any(|m| m.is_negative()) {
        return false;
    }
    let mut combo = vec![Rat::zero(); num_vars];
    let mut rhs = Rat::zero();
    for (row, m) in system.iter().zip(y) {
        if m.is_zero() {
            continue;
        }
        for (c, a) in combo.iter_mut().zip(&row.coeffs) {
            *c += a * m;
        }
        rhs += &row.rhs * m;
    }
    combo.iter().all(Zero::is_zero) && rhs.is_positive()
}

#[derive(Clone, Debug)]
struct Row {
    coeffs: Vec<Rat>,
    rhs: Rat,
    // sparse multipliers over the original rows
    origin: BTreeMap<usize, Rat>,
}

impl Row {
    fn is_trivial(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scale by a positive factor so the coefficients are coprime integers.
    fn normalize(&mut self) {
        let mut lcm = Int::one();
        for c in self.coeffs.iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(c.denom());
        }
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(&(c.numer() * (&lcm / c.denom())));
        }
        if g.is_zero() {
            return;
        }
        let factor = Rat::new(lcm, g);
        if factor.is_one() {
            return;
        }
        for c in &mut self.coeffs {
            *c *= &factor;
        }
        self.rhs *= &factor;
        for m in self.origin.values_mut() {
            *m *= &factor;
        }
    }

    fn combine(pos: &Row, neg: &Row, var: usize) -> Row {
        // pos has coeff > 0 and neg has coeff < 0 at var
        let wp = -neg.coeffs[var].clone();
        let wn = pos.coeffs[var].clone();
        let coeffs = pos
            .coeffs
            .iter()
            .zip(&neg.coeffs)
            .map(|(p, n)| p * &wp + n * &wn)
            .collect();
        let rhs = &pos.rhs * &wp + &neg.rhs * &wn;
        let mut origin = BTreeMap::new();
        for (&k, m) in &pos.origin {
            *origin.entry(k).or_insert_with(Rat::zero) += m * &wp;
        }
        for (&k, m) in &neg.origin {
            *origin.entry(k).or_insert_with(Rat::zero) += m * &wn;
        }
        let mut row = Row { coeffs, rhs, origin };
        row.coeffs[var] = Rat::zero();
        row.normalize();
        row
    }
}

fn dedup_strongest(rows: Vec<Row>) -> Vec<Row> {
    let mut best: BTreeMap<Vec<Rat>, Row> = BTreeMap::new();
    for row in rows {
        match best.get(&row.coeffs) {
            Some(kept)
                if kept.rhs > row.rhs
                    || (kept.rhs == row.rhs && kept.origin.len() <= row.origin.len()) => {}
            _ => {
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    best.into_values().collect()
}

/// Decides feasibility of `system` over `num_vars` rational unknowns.
pub fn solve(system: &[Inequality], num_vars: usize) -> Feasibility {
    for row in system {
        assert_eq!(row.coeffs.len(), num_vars, "row width does not match");
    }
    let mut rows: Vec<Row> = system
        .iter()
        .enumerate()
        .map(|(i, r)| Row {
            coeffs: r.coeffs.clone(),
            rhs: r.rhs.clone(),
            origin: BTreeMap::from([(i, Rat::one())]),
        })
        .collect();

    let mut remaining: Vec<usize> = (0..num_vars).collect();
    // (eliminated variable, the system just before eliminating it)
    let mut stages: Vec<(usize, Vec<Row>)> = Vec::new();

    loop {
        if let Some(bad) = rows.iter().find(|r| r.is_trivial() && r.rhs.is_positive()) {
            let mut y = vec![Rat::zero(); system.len()];
            for (&k, m) in &bad.origin {
                y[k] = m.clone();
            }
            debug_assert!(is_farkas_witness(system, num_vars, &y));
            return Feasibility::Infeasible(y);
        }
        rows.retain(|r| !r.is_trivial());
        if remaining.is_empty() {
            break;
        }

        // eliminate the variable producing the fewest new rows
        let (pos_in_remaining, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|&(_, &v)| {
                let p = rows.iter().filter(|r| r.coeffs[v].is_positive()).count();
                let n = rows.iter().filter(|r| r.coeffs[v].is_negative()).count();
                (p * n) as isize - (p + n) as isize
            })
            .unwrap();
        remaining.remove(pos_in_remaining);

        let (mut pos, mut neg, mut zero) = (Vec::new(), Vec::new(), Vec::new());
        for r in &rows {
            if r.coeffs[var].is_positive() {
                pos.push(r);
            } else if r.coeffs[var].is_negative() {
                neg.push(r);
            } else {
                zero.push(r.clone());
            }
        }
        let mut next = zero;
        for p in &pos {
            for n in &neg {
                next.push(Row::combine(p, n, var));
            }
        }
        stages.push((var, rows));
        rows = dedup_strongest(next);
    }

    let mut x = vec![Rat::zero(); num_vars];
    for (var, stage_rows) in stages.iter().rev() {
        x[*var] = pick_value(stage_rows, *var, &x);
    }
    debug_assert!(system.iter().all(|r| r.holds_at(&x)));
    Feasibility::Feasible(x)
}

// Bounds on `var` implied by `rows` once every later variable is fixed in `x`.
fn pick_value(rows: &[Row], var: usize, x: &[Rat]) -> Rat {
    let mut lower: Option<Rat> = None;
    let mut upper: Option<Rat> = None;
    for r in rows {
        let a = &r.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let rest = r
            .coeffs
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != var)
            .fold(Rat::zero(), |acc, (j, c)| acc + c * &x[j]);
        let bound = (&r.rhs - rest) / a;
        if a.is_positive() {
            if lower.as_ref().is_none_or(|l| bound > *l) {
                lower = Some(bound);
            }
        } else if upper.as_ref().is_none_or(|u| bound < *u) {
            upper = Some(bound);
        }
    }
    match (lower, upper) {
        (None, None) => Rat::zero(),
        (Some(l), None) => {
            if l.is_negative() {
                Rat::zero()
            } else {
                l.ceil()
            }
        }
        (None, Some(u)) => {
            if u.is_positive() {
                Rat::zero()
            } else {
                u.floor()
            }
        }
        (Some(l), Some(u)) => {
            let z = Rat::zero();
            if l <= z && z <= u {
                z
            } else if l.ceil() <= u {
                l.ceil()
            } else {
                (l + u) / Rat::from_integer(Int::from(2))
            }
        }
    }
}
