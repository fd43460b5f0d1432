//! Exact integer and rational helpers shared by every module.
//!
//! Lattice coordinates are stored as `i64`; anything derived from them
//! (determinants, coordinates in a cone basis, circuit relations) is computed
//! with arbitrary-precision integers or rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn int(v: i64) -> Int {
    BigInt::from(v)
}

pub fn rat(v: i64) -> Rat {
    BigRational::from_integer(BigInt::from(v))
}

pub fn rat_of(v: &Int) -> Rat {
    BigRational::from_integer(v.clone())
}

/// gcd of the absolute values; `0` for an all-zero slice.
pub fn gcd_i64(values: &[i64]) -> u64 {
    values
        .iter()
        .fold(0u64, |acc, &v| acc.gcd(&v.unsigned_abs()))
}

/// Determinant of a square integer matrix given by rows (fraction-free Bareiss).
pub fn det(rows: &[&[i64]]) -> Int {
    let n = rows.len();
    if n == 0 {
        return Int::one();
    }
    let mut m: Vec<Vec<Int>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), n, "determinant of a non-square matrix");
            r.iter().map(|&x| int(x)).collect()
        })
        .collect();
    let mut sign = Int::one();
    let mut prev = Int::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    sign = -sign;
                }
                None => return Int::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

/// Rank of a list of integer vectors over the rationals.
pub fn rank(vectors: &[&[i64]]) -> usize {
    let mut rows: Vec<Vec<Rat>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| rat(x)).collect())
        .collect();
    let cols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &pivot;
                for j in c..cols {
                    let v = &rows[r][j] * &f;
                    rows[i][j] -= v;
                }
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    r
}

/// Coordinates of `target` in the basis `basis` (the basis vectors are the
/// columns of the linear system). Returns `None` when `basis` is not a basis
/// of the ambient space.
pub fn coordinates(basis: &[&[i64]], target: &[i64]) -> Option<Vec<Rat>> {
    let n = target.len();
    if basis.len() != n {
        return None;
    }
    // augmented matrix [B | t] with the basis vectors as columns
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rat> = basis.iter().map(|b| rat(b[i])).collect();
            row.push(rat(target[i]));
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for j in c..=n {
            m[c][j] = &m[c][j] / &pivot;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let v = &m[c][j] * &f;
                    m[i][j] -= v;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Clears denominators and divides out the content, keeping signs.
pub fn primitive_integer_vector(values: &[Rat]) -> Vec<Int> {
    let lcm = values
        .iter()
        .fold(Int::one(), |acc, v| acc.lcm(v.denom()));
    let ints: Vec<Int> = values
        .iter()
        .map(|v| v.numer() * (&lcm / v.denom()))
        .collect();
    let g = ints.iter().fold(Int::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|v| v / &g).collect()
}

/// `p/q` with `q > 0`, always written with the slash.
pub fn format_rat(value: &Rat) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

pub fn parse_rat(text: &str) -> Option<Rat> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: Int = p.trim().parse().ok()?;
            let q: Int = q.trim().parse().ok()?;
            if q.is_zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from_integer(text.parse().ok()?)),
    }
}

pub fn dot_int(lhs: &[Int], rhs: &[Rat]) -> Rat {
    lhs.iter()
        .zip(rhs)
        .fold(Rat::zero(), |acc, (a, b)| acc + rat_of(a) * b)
}

pub fn is_positive(v: &Rat) -> bool {
    v.is_positive()
}

pub fn to_i64(v: &Int) -> Option<i64> {
    i64::try_from(v).ok()
}

pub fn int_to_json(v: &Int) -> serde_json::Value {
    match to_i64(v) {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::String(v.to_string()),
    }
}

pub fn rat_to_json(v: &Rat) -> serde_json::Value {
    serde_json::Value::String(format_rat(v))
}
