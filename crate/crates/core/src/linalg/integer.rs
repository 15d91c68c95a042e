//! Smith normal form over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::sparse::eliminate;
use super::Triplets;

/// Rank and the invariant factors greater than one, in increasing order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Invariants {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

pub fn smith_invariants(t: &Triplets) -> Invariants {
    let red = eliminate(t, None);
    let mut m = vec![vec![BigInt::zero(); red.rest_cols]; red.rest.len()];
    for (r, row) in red.rest.iter().enumerate() {
        for &(c, v) in row {
            m[r][c] = BigInt::from(v);
        }
    }
    let diag = dense_diagonal(m);
    let mut inv = Invariants { rank: red.unit_pivots + diag.len(), torsion: Vec::new() };
    inv.torsion = normalize(diag).into_iter().filter(|d| !d.is_one()).collect();
    inv
}

/// Diagonalizes by row and column operations; returns the nonzero diagonal.
fn dense_diagonal(mut m: Vec<Vec<BigInt>>) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // Smallest nonzero entry of the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for (r, row) in m.iter().enumerate().skip(t) {
            for (c, x) in row.iter().enumerate().skip(t) {
                if !x.is_zero() && best.is_none_or(|(br, bc)| x.abs() < m[br][bc].abs()) {
                    best = Some((r, c));
                }
            }
        }
        let Some((r, c)) = best else { break };
        m.swap(t, r);
        for row in m.iter_mut() {
            row.swap(t, c);
        }
        let mut clean = true;
        for r in t + 1..rows {
            if !m[r][t].is_zero() {
                let q = &m[r][t] / &m[t][t];
                for c in t..cols {
                    let d = &q * &m[t][c];
                    m[r][c] -= d;
                }
                clean &= m[r][t].is_zero();
            }
        }
        for c in t + 1..cols {
            if !m[t][c].is_zero() {
                let q = &m[t][c] / &m[t][t];
                for row in m.iter_mut().skip(t) {
                    let d = &q * &row[t];
                    row[c] -= d;
                }
                clean &= m[t][c].is_zero();
            }
        }
        if clean {
            diag.push(m[t][t].abs());
            t += 1;
        }
    }
    diag
}

/// Turns a diagonal into invariant factors d1 | d2 | ... .
fn normalize(mut d: Vec<BigInt>) -> Vec<BigInt> {
    use num_integer::Integer;
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_dense(rows: &[&[i64]]) -> Triplets {
        let mut t = Triplets::new(rows.len(), rows[0].len());
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                t.push(r, c, v);
            }
        }
        t
    }

    #[test]
    fn invariant_factors() {
        let inv = smith_invariants(&from_dense(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(inv.rank, 3);
        assert_eq!(inv.torsion, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    #[test]
    fn unit_pivots_and_core() {
        let inv = smith_invariants(&from_dense(&[&[1, 1, 0], &[0, 2, 0], &[0, 0, 0]]));
        assert_eq!(inv, Invariants { rank: 2, torsion: vec![BigInt::from(2)] });
        let inv = smith_invariants(&from_dense(&[&[2, 0], &[0, 3]]));
        assert_eq!(inv, Invariants { rank: 2, torsion: vec![BigInt::from(6)] });
    }
}
