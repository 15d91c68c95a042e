//! Exact ranks and Smith normal forms of sparse boundary matrices.

pub mod f2;
pub mod integer;
mod sparse;

pub use integer::{smith_invariants, Invariants};

/// Matrix in coordinate form; repeated coordinates are summed.
#[derive(Clone, Debug, Default)]
pub struct Triplets {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<(usize, usize, i64)>,
}

impl Triplets {
    pub fn new(rows: usize, cols: usize) -> Self {
        Triplets { rows, cols, entries: Vec::new() }
    }

    pub fn push(&mut self, r: usize, c: usize, v: i64) {
        debug_assert!(r < self.rows && c < self.cols);
        if v != 0 {
            self.entries.push((r, c, v));
        }
    }

    /// Whether `self * other` vanishes over the integers (or mod 2).
    pub fn product_is_zero(&self, other: &Triplets, mod2: bool) -> bool {
        assert_eq!(self.cols, other.rows);
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); other.rows];
        for &(r, c, v) in &other.entries {
            by_row[r].push((c, v));
        }
        let mut acc: std::collections::HashMap<(usize, usize), i128> = std::collections::HashMap::new();
        for &(r, k, v) in &self.entries {
            for &(c, w) in &by_row[k] {
                *acc.entry((r, c)).or_default() += v as i128 * w as i128;
            }
        }
        acc.values().all(|&x| if mod2 { x % 2 == 0 } else { x == 0 })
    }
}
