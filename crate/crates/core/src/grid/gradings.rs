//! Maslov and Alexander gradings of grid states.
//!
//! Points are compared in doubled coordinates: the state point on vertical
//! line `c` and horizontal line `y[c]` sits at `(2c, 2y[c])`, a marker in
//! column `c` and row `r` at `(2c + 1, 2r + 1)`.

use super::GridDiagram;

type Pt = (i64, i64);

/// Ordered pairs `(p, q)` with `p` strictly southwest of `q`.
fn i_count(p: &[Pt], q: &[Pt]) -> i64 {
    p.iter().map(|a| q.iter().filter(|b| a.0 < b.0 && a.1 < b.1).count() as i64).sum()
}

/// `J(P, P) - 2J(P, Q) + J(Q, Q) + 1` with `J` the symmetrized count.
fn m_relative(x: &[Pt], markers: &[Pt]) -> i64 {
    i_count(x, x) - i_count(x, markers) - i_count(markers, x) + i_count(markers, markers) + 1
}

fn state_points(y: &[usize]) -> Vec<Pt> {
    y.iter().enumerate().map(|(c, &r)| (2 * c as i64, 2 * r as i64)).collect()
}

fn marker_points(cols: &[usize]) -> Vec<Pt> {
    cols.iter().enumerate().map(|(r, &c)| (2 * c as i64 + 1, 2 * r as i64 + 1)).collect()
}

/// Maslov grading `M_O` (an integer).
pub fn maslov(g: &GridDiagram, y: &[usize]) -> i64 {
    m_relative(&state_points(y), &marker_points(&g.o))
}

/// Doubled Alexander grading `M_O - M_X - (n - ℓ)`.
pub fn alexander_doubled(g: &GridDiagram, y: &[usize], components: usize) -> i64 {
    let pts = state_points(y);
    m_relative(&pts, &marker_points(&g.o)) - m_relative(&pts, &marker_points(&g.x)) - (g.n - components) as i64
}

/// Doubled `(M, A)` of the state `y` (point on vertical line `c` at height `y[c]`).
pub fn gradings(g: &GridDiagram, y: &[usize]) -> (i64, i64) {
    (2 * maslov(g, y), alexander_doubled(g, y, g.components()))
}

/// Precomputed marker data for grading many states of one grid.
pub(crate) struct Grader {
    o: Vec<Pt>,
    x: Vec<Pt>,
    oo: i64,
    xx: i64,
    shift: i64,
}

impl Grader {
    pub fn new(g: &GridDiagram) -> Self {
        let (o, x) = (marker_points(&g.o), marker_points(&g.x));
        Grader { oo: i_count(&o, &o), xx: i_count(&x, &x), o, x, shift: (g.n - g.components()) as i64 }
    }

    /// `(M, 2A)`.
    pub fn grade(&self, y: &[usize]) -> (i64, i64) {
        let p = state_points(y);
        let pp = i_count(&p, &p);
        let mo = pp - i_count(&p, &self.o) - i_count(&self.o, &p) + self.oo + 1;
        let mx = pp - i_count(&p, &self.x) - i_count(&self.x, &p) + self.xx + 1;
        (mo, mo - mx - self.shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_states() {
        let g = GridDiagram::unknot();
        assert_eq!(gradings(&g, &[0, 1]), (-2, -2));
        assert_eq!(gradings(&g, &[1, 0]), (0, 0));
        let gr = Grader::new(&g);
        assert_eq!(gr.grade(&[0, 1]), (-1, -2));
    }
}
