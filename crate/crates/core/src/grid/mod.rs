//! Grid diagrams and combinatorial knot Floer homology.
//!
//! Row `r` holds an X in column `x[r]` and an O in column `o[r]`. Rows count
//! upward and columns rightward. Vertical segments run from X to O,
//! horizontal ones from O to X, and vertical segments pass over.

mod complex;
mod from_pd;
mod gradings;
mod simplify;

use serde::{Deserialize, Serialize};

use crate::diagram::{ArcId, Crossing, Diagram, LinkDiagram, OverIn};
use crate::error::{Error, Result};

pub use complex::{hfk_hat, hfk_hat_of_grid, tilde_complex, tilde_homology, total_homology, deconvolve, GridLimits, TildeComplex, DEFAULT_GRID_CAP};
pub use from_pd::pd_to_grid;
pub use gradings::{alexander_doubled, gradings, maslov};
pub use simplify::simplify_grid;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridDiagram {
    pub n: usize,
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "O")]
    pub o: Vec<usize>,
}

fn is_permutation(p: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    p.len() == n && p.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

fn inverse(p: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v] = i;
    }
    inv
}

impl GridDiagram {
    pub fn new(x: Vec<usize>, o: Vec<usize>) -> Result<Self> {
        let g = GridDiagram { n: x.len(), x, o };
        g.check()?;
        Ok(g)
    }

    /// The 2×2 unknot.
    pub fn unknot() -> Self {
        GridDiagram { n: 2, x: vec![1, 0], o: vec![0, 1] }
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let g: GridDiagram = serde_json::from_str(s)?;
        g.check()?;
        Ok(g)
    }

    pub fn check(&self) -> Result<()> {
        let n = self.n;
        if n < 2 {
            return Err(Error::InvalidGrid(format!("size {n} is below 2")));
        }
        if !is_permutation(&self.x, n) || !is_permutation(&self.o, n) {
            return Err(Error::InvalidGrid("X and O must be permutations of 0..n".into()));
        }
        if let Some(r) = (0..n).find(|&r| self.x[r] == self.o[r]) {
            return Err(Error::InvalidGrid(format!("row {r} has X and O in the same cell")));
        }
        Ok(())
    }

    /// Next row along the oriented link: O to X along the row, then up or
    /// down the X's column to its O.
    fn next_row(&self, o_inv: &[usize], r: usize) -> usize {
        o_inv[self.x[r]]
    }

    pub fn components(&self) -> usize {
        let o_inv = inverse(&self.o);
        let mut seen = vec![false; self.n];
        let mut count = 0;
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            count += 1;
            let mut r = s;
            while !seen[r] {
                seen[r] = true;
                r = self.next_row(&o_inv, r);
            }
        }
        count
    }

    /// Rows of the X and the O in each column.
    pub(crate) fn column_rows(&self) -> (Vec<usize>, Vec<usize>) {
        (inverse(&self.x), inverse(&self.o))
    }

    /// Side by side, `other` up and to the right.
    pub fn disjoint_union(&self, other: &GridDiagram) -> GridDiagram {
        let n = self.n;
        let mut x = self.x.clone();
        let mut o = self.o.clone();
        x.extend(other.x.iter().map(|c| c + n));
        o.extend(other.o.iter().map(|c| c + n));
        GridDiagram { n: n + other.n, x, o }
    }

    /// Reflection in a vertical line, then transposition so that vertical
    /// strands stay on top: the mirror image.
    pub fn mirror(&self) -> GridDiagram {
        let n = self.n;
        let x = self.x.iter().map(|&c| n - 1 - c).collect::<Vec<_>>();
        let o = self.o.iter().map(|&c| n - 1 - c).collect::<Vec<_>>();
        // Reflecting alone swaps which strand is over; transposing the
        // reflected grid restores the vertical-over rule.
        GridDiagram { n, x, o }.transpose()
    }

    /// Swaps rows and columns and X with O, so orientation is kept.
    pub fn transpose(&self) -> GridDiagram {
        GridDiagram { n: self.n, x: inverse(&self.o), o: inverse(&self.x) }
    }

    /// All orientations reversed.
    pub fn reverse(&self) -> GridDiagram {
        GridDiagram { n: self.n, x: self.o.clone(), o: self.x.clone() }
    }

    /// The link diagram drawn by the grid.
    pub fn to_link(&self) -> LinkDiagram {
        grid_to_pd(self)
    }
}

/// Sides around a crossing, counterclockwise from east.
const EAST: usize = 0;
const NORTH: usize = 1;
const WEST: usize = 2;
const SOUTH: usize = 3;

pub fn grid_to_pd(g: &GridDiagram) -> LinkDiagram {
    let n = g.n;
    let (col_x, col_o) = g.column_rows();
    let o_inv = &col_o;
    let between = |v: usize, a: usize, b: usize| a.min(b) < v && v < a.max(b);
    // Crossings at (column, row) with the column's vertical passing over.
    let mut cross_id = std::collections::HashMap::new();
    for r in 0..n {
        for c in 0..n {
            if between(c, g.x[r], g.o[r]) && between(r, col_x[c], col_o[c]) {
                let id = cross_id.len();
                cross_id.insert((c, r), id);
            }
        }
    }
    let mut slots = vec![[u32::MAX; 4]; cross_id.len()];
    // For each crossing: side of the incoming under strand and of the incoming over strand.
    let mut sides = vec![(0usize, 0usize); cross_id.len()];
    let mut seen = vec![false; n];
    let mut next_arc: ArcId = 0;
    let mut loops = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        // Passages along one component: (crossing, entry side).
        let mut passages: Vec<(usize, usize)> = Vec::new();
        let mut r = start;
        while !seen[r] {
            seen[r] = true;
            let (from, to) = (g.o[r], g.x[r]);
            let cols: Vec<usize> = if from < to { (from + 1..to).collect() } else { (to + 1..from).rev().collect() };
            let entry = if from < to { WEST } else { EAST };
            passages.extend(cols.into_iter().filter_map(|c| cross_id.get(&(c, r)).map(|&id| (id, entry))));
            let c = to;
            let (a, b) = (col_x[c], col_o[c]);
            let rows: Vec<usize> = if a < b { (a + 1..b).collect() } else { (b + 1..a).rev().collect() };
            let entry = if a < b { SOUTH } else { NORTH };
            passages.extend(rows.into_iter().filter_map(|rr| cross_id.get(&(c, rr)).map(|&id| (id, entry))));
            r = o_inv[c];
        }
        if passages.is_empty() {
            loops += 1;
            continue;
        }
        let m = passages.len() as ArcId;
        let base = next_arc;
        next_arc += m;
        for (i, &(id, entry)) in passages.iter().enumerate() {
            let i = i as ArcId;
            let (incoming, outgoing) = (base + i, base + (i + 1) % m);
            if entry == WEST || entry == EAST {
                sides[id].0 = entry;
            } else {
                sides[id].1 = entry;
            }
            slots[id][entry] = incoming;
            slots[id][(entry + 2) % 4] = outgoing;
        }
    }
    // Rotate the side-indexed slots so slot 0 is the incoming under strand.
    let crossings = slots
        .iter()
        .zip(&sides)
        .map(|(s, &(under_in, over_in))| {
            let rot = [s[under_in], s[(under_in + 1) % 4], s[(under_in + 2) % 4], s[(under_in + 3) % 4]];
            let over = if (over_in + 4 - under_in) % 4 == 1 { OverIn::Slot1 } else { OverIn::Slot3 };
            Crossing::new(rot, Some(over))
        })
        .collect();
    LinkDiagram::new(Diagram { crossings, vertices: Vec::new(), loops }).expect("grid diagrams draw valid links")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::jones;

    pub(crate) fn trefoil() -> GridDiagram {
        GridDiagram::new((0..5).map(|r| (r + 2) % 5).collect(), (0..5).collect()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(GridDiagram::new(vec![1, 0], vec![0, 1]).is_ok());
        assert!(GridDiagram::new(vec![0, 1], vec![0, 1]).is_err());
        assert!(GridDiagram::new(vec![0], vec![0]).is_err());
        assert!(GridDiagram::from_json_str(r#"{"n":2,"X":[1,0],"O":[0,1]}"#).is_ok());
    }

    #[test]
    fn components_and_drawing() {
        assert_eq!(GridDiagram::unknot().components(), 1);
        let u = GridDiagram::unknot().to_link();
        assert_eq!((u.crossing_count(), u.component_count()), (0, 1));
        let two = GridDiagram::unknot().disjoint_union(&GridDiagram::unknot());
        assert_eq!(two.components(), 2);
        let t = trefoil();
        let l = t.to_link();
        assert_eq!(l.component_count(), 1);
        let jt = jones(&l).unwrap();
        let left = jones(&crate::census::link("3_1").unwrap()).unwrap();
        assert!(jt == left || jt == left.invert());
        assert_eq!(jones(&t.mirror().to_link()).unwrap(), jt.invert());
        assert_eq!(jones(&t.transpose().to_link()).unwrap(), jt);
    }
}
