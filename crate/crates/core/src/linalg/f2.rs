//! Ranks over the two-element field.

use super::sparse::eliminate;
use super::Triplets;

/// Dense matrix over F2 with rows stored as bitsets.
#[derive(Clone, Debug)]
pub struct BitMatrix {
    cols: usize,
    words: usize,
    rows: Vec<Vec<u64>>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64);
        BitMatrix { cols, words, rows: vec![vec![0; words]; rows] }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        assert!(c < self.cols);
        self.rows[r][c / 64] ^= 1 << (c % 64);
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r][c / 64] >> (c % 64) & 1 == 1
    }

    pub fn rank(mut self) -> usize {
        let mut rank = 0;
        for c in 0..self.cols {
            let (w, b) = (c / 64, 1u64 << (c % 64));
            let Some(p) = (rank..self.rows.len()).find(|&r| self.rows[r][w] & b != 0) else { continue };
            self.rows.swap(rank, p);
            let pivot = std::mem::take(&mut self.rows[rank]);
            for r in rank + 1..self.rows.len() {
                if self.rows[r][w] & b != 0 {
                    for (x, y) in self.rows[r][w..].iter_mut().zip(&pivot[w..]) {
                        *x ^= y;
                    }
                }
            }
            self.rows[rank] = pivot;
            rank += 1;
        }
        debug_assert!(self.words == 0 || rank <= self.cols);
        rank
    }
}

/// Rank of an integer matrix reduced mod 2.
pub fn rank(t: &Triplets) -> usize {
    let red = eliminate(t, Some(2));
    let mut m = BitMatrix::zeros(red.rest.len(), red.rest_cols);
    for (r, row) in red.rest.iter().enumerate() {
        for &(c, _) in row {
            m.flip(r, c);
        }
    }
    red.unit_pivots + m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_rank() {
        let mut m = BitMatrix::zeros(3, 70);
        m.flip(0, 1);
        m.flip(0, 69);
        m.flip(1, 69);
        m.flip(2, 1);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn sparse_rank_mod_two() {
        let mut t = Triplets::new(2, 2);
        t.push(0, 0, 2);
        t.push(1, 1, 3);
        assert_eq!(rank(&t), 1);
    }
}
