//! Grid moves: commutation, cyclic translation, (de)stabilization.

use std::collections::{HashSet, VecDeque};

use super::GridDiagram;

/// Search budget per destabilization, in visited grids.
const SEARCH_BUDGET: usize = 4000;

impl GridDiagram {
    /// Moves the last column to the front.
    pub fn rotate_columns(&self) -> GridDiagram {
        let n = self.n;
        let f = |c: &usize| (c + 1) % n;
        GridDiagram { n, x: self.x.iter().map(f).collect(), o: self.o.iter().map(f).collect() }
    }

    /// Moves the top row to the bottom.
    pub fn rotate_rows(&self) -> GridDiagram {
        let n = self.n;
        let mut x = self.x.clone();
        let mut o = self.o.clone();
        x.rotate_right(1);
        o.rotate_right(1);
        GridDiagram { n, x, o }
    }

    /// Exchanges columns `c` and `c + 1` when their segments do not interleave.
    pub fn commute_columns(&self, c: usize) -> Option<GridDiagram> {
        if c + 1 >= self.n {
            return None;
        }
        let (cx, co) = self.column_rows();
        let span = |k: usize| (cx[k].min(co[k]), cx[k].max(co[k]));
        if interleave(span(c), span(c + 1)) {
            return None;
        }
        let swap = |v: &usize| if *v == c { c + 1 } else if *v == c + 1 { c } else { *v };
        Some(GridDiagram { n: self.n, x: self.x.iter().map(swap).collect(), o: self.o.iter().map(swap).collect() })
    }

    /// Exchanges rows `r` and `r + 1` when their segments do not interleave.
    pub fn commute_rows(&self, r: usize) -> Option<GridDiagram> {
        if r + 1 >= self.n {
            return None;
        }
        let span = |k: usize| (self.x[k].min(self.o[k]), self.x[k].max(self.o[k]));
        if interleave(span(r), span(r + 1)) {
            return None;
        }
        let mut g = self.clone();
        g.x.swap(r, r + 1);
        g.o.swap(r, r + 1);
        Some(g)
    }

    /// Stabilization at the X of row `r`. A new row and column are inserted
    /// next to the X's cell; bit 0 of `side` puts the column on the left,
    /// bit 1 puts the row below. The X's cell is left empty and the 2×2
    /// block gets two X's and one O.
    pub fn stabilize(&self, r: usize, side: u8) -> GridDiagram {
        let n = self.n;
        let c = self.x[r];
        let (new_col, old_col) = if side & 1 == 0 { (c + 1, c) } else { (c, c + 1) };
        let (new_row, old_row) = if side & 2 == 0 { (r + 1, r) } else { (r, r + 1) };
        let col = |v: usize| if v > c || (v == c && side & 1 == 1) { v + 1 } else { v };
        let row = |k: usize| if k > r || (k == r && side & 2 == 2) { k + 1 } else { k };
        let mut x = vec![0; n + 1];
        let mut o = vec![0; n + 1];
        for k in 0..n {
            x[row(k)] = col(self.x[k]);
            o[row(k)] = col(self.o[k]);
        }
        x[old_row] = new_col;
        x[new_row] = old_col;
        o[new_row] = new_col;
        GridDiagram { n: n + 1, x, o }
    }

    /// Removes a row whose X and O sit in cyclically adjacent columns,
    /// merging the two columns.
    pub fn destabilize_row(&self) -> Option<GridDiagram> {
        let n = self.n;
        if n <= 2 {
            return None;
        }
        for r in 0..n {
            let (a, b) = (self.x[r], self.o[r]);
            let d = (a + n - b) % n;
            if d != 1 && d != n - 1 {
                continue;
            }
            // Rotate so the pair does not wrap around the edge.
            let mut g = self.clone();
            while g.x[r].max(g.o[r]) - g.x[r].min(g.o[r]) != 1 {
                g = g.rotate_columns();
            }
            if let Some(h) = g.merge_at_row(r) {
                return Some(h);
            }
        }
        None
    }

    fn merge_at_row(&self, r: usize) -> Option<GridDiagram> {
        let lo = self.x[r].min(self.o[r]);
        let down = |v: usize| if v > lo { v - 1 } else { v };
        let mut x = Vec::with_capacity(self.n - 1);
        let mut o = Vec::with_capacity(self.n - 1);
        for k in (0..self.n).filter(|&k| k != r) {
            x.push(down(self.x[k]));
            o.push(down(self.o[k]));
        }
        let g = GridDiagram { n: self.n - 1, x, o };
        g.check().ok().map(|_| g)
    }

    /// A destabilization along a row or a column, if one exists.
    pub fn destabilize(&self) -> Option<GridDiagram> {
        self.destabilize_row().or_else(|| self.transpose().destabilize_row().map(|g| g.transpose()))
    }

    fn neighbours(&self) -> Vec<GridDiagram> {
        let mut out = vec![self.rotate_columns(), self.rotate_rows()];
        out.extend((0..self.n).filter_map(|c| self.commute_columns(c)));
        out.extend((0..self.n).filter_map(|r| self.commute_rows(r)));
        out
    }
}

fn interleave(a: (usize, usize), b: (usize, usize)) -> bool {
    let strictly_inside = |v: usize, s: (usize, usize)| s.0 < v && v < s.1;
    let disjoint = a.1 < b.0 || b.1 < a.0;
    let nested = (strictly_inside(b.0, a) && strictly_inside(b.1, a)) || (strictly_inside(a.0, b) && strictly_inside(a.1, b));
    !(disjoint || nested)
}

/// Greedy destabilization, searching through commutations and cyclic
/// translations when no destabilization is immediately available.
pub fn simplify_grid(g: &GridDiagram) -> GridDiagram {
    let mut cur = g.clone();
    loop {
        if let Some(h) = cur.destabilize() {
            cur = h;
            continue;
        }
        match search(&cur) {
            Some(h) => cur = h,
            None => return cur,
        }
    }
}

fn search(g: &GridDiagram) -> Option<GridDiagram> {
    let mut seen: HashSet<GridDiagram> = HashSet::new();
    let mut queue = VecDeque::from([g.clone()]);
    seen.insert(g.clone());
    while let Some(cur) = queue.pop_front() {
        for h in cur.neighbours() {
            if let Some(d) = h.destabilize() {
                return Some(d);
            }
            if seen.len() < SEARCH_BUDGET && seen.insert(h.clone()) {
                queue.push_back(h);
            }
        }
    }
    None
}
