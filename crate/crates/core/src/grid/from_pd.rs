//! Grid presentations of link diagrams.
//!
//! The diagram is swept upward. The frontier is the ordered list of strand
//! pieces crossing the sweep line; each event is a cap (two new pieces), a
//! cup (two pieces of one arc closed off), or a crossing of two adjacent
//! pieces. Every piece is a vertical segment at its own x position; at a
//! crossing the under piece jogs horizontally across the over piece to a
//! fresh position, so vertical strands are always on top. Each vertical
//! segment then becomes a column and each horizontal segment a row.

use std::collections::BTreeMap;

use super::GridDiagram;
use crate::diagram::{ArcId, LinkDiagram};
use crate::error::{Error, Result};

type End = (usize, usize);

#[derive(Clone, Debug)]
struct Piece {
    arc: Option<ArcId>,
    target: End,
    x: usize,
    start: usize,
    up_forward: bool,
}

#[derive(Default)]
struct Drawing {
    /// X ids in left-to-right order.
    order: Vec<usize>,
    points: Vec<(usize, usize)>,
    /// Vertical segments `(bottom, top, upward is forward)`.
    vertical: Vec<(usize, usize, bool)>,
    horizontal: Vec<(usize, usize)>,
    rows: usize,
}

impl Drawing {
    fn new_x(&mut self, pos: usize) -> usize {
        let id = self.order.len();
        self.order.insert(pos, id);
        id
    }

    fn after(&mut self, left: Option<usize>) -> usize {
        let pos = left.map_or(0, |l| self.order.iter().position(|&v| v == l).expect("live x") + 1);
        self.new_x(pos)
    }

    fn before(&mut self, right: usize) -> usize {
        let pos = self.order.iter().position(|&v| v == right).expect("live x");
        self.new_x(pos)
    }

    fn point(&mut self, x: usize, y: usize) -> usize {
        self.points.push((x, y));
        self.points.len() - 1
    }

    fn row(&mut self) -> usize {
        self.rows += 1;
        self.rows - 1
    }

    /// Ends the vertical run of `p` at height `y`.
    fn stop(&mut self, p: &Piece, y: usize) -> usize {
        let q = self.point(p.x, y);
        self.vertical.push((p.start, q, p.up_forward));
        q
    }
}

struct Sweep<'a> {
    d: &'a LinkDiagram,
    ends: BTreeMap<ArcId, (End, End)>,
    done: Vec<bool>,
    frontier: Vec<Piece>,
    draw: Drawing,
}

impl Sweep<'_> {
    fn arc_at(&self, e: End) -> ArcId {
        self.d.diagram().crossings[e.0].slots[e.1]
    }

    fn other_end(&self, arc: ArcId, e: End) -> End {
        let (t, h) = self.ends[&arc];
        if t == e {
            h
        } else {
            t
        }
    }

    fn is_head(&self, arc: ArcId, e: End) -> bool {
        self.ends[&arc].1 == e
    }

    /// Pieces leaving endpoint `from` upward.
    fn piece_from(&self, from: End, x: usize, start: usize) -> Piece {
        let arc = self.arc_at(from);
        let target = self.other_end(arc, from);
        Piece { arc: Some(arc), target, x, start, up_forward: self.is_head(arc, target) }
    }

    fn cap(&mut self, pos: usize, left_target: End, arc: ArcId) {
        let right_target = self.other_end(arc, left_target);
        let left_x = if pos == 0 { None } else { Some(self.frontier[pos - 1].x) };
        let xl = self.draw.after(left_x);
        let xr = self.draw.after(Some(xl));
        let y = self.draw.row();
        let (a, b) = (self.draw.point(xl, y), self.draw.point(xr, y));
        self.draw.horizontal.push((a, b));
        let l = Piece { arc: Some(arc), target: left_target, x: xl, start: a, up_forward: self.is_head(arc, left_target) };
        let r = Piece { arc: Some(arc), target: right_target, x: xr, start: b, up_forward: self.is_head(arc, right_target) };
        self.frontier.splice(pos..pos, [l, r]);
    }

    fn cup(&mut self, pos: usize) {
        let y = self.draw.row();
        let (l, r) = (self.frontier[pos].clone(), self.frontier[pos + 1].clone());
        let a = self.draw.stop(&l, y);
        let b = self.draw.stop(&r, y);
        self.draw.horizontal.push((a, b));
        self.frontier.drain(pos..pos + 2);
    }

    /// Crossing `c` on the pieces at `pos`, `pos + 1`, whose slots are
    /// `m + 3` and `m` (mod 4).
    fn crossing(&mut self, c: usize, pos: usize, m: usize) {
        let (l, r) = (self.frontier[pos].clone(), self.frontier[pos + 1].clone());
        let y = self.draw.row();
        let slot = |k: usize| (m + k) % 4;
        let left_over = slot(3) % 2 == 1;
        let (top_left_x, top_left_start, top_right_x, top_right_start);
        if left_over {
            let a = self.draw.stop(&r, y);
            let xu = self.draw.before(l.x);
            let b = self.draw.point(xu, y);
            self.draw.horizontal.push((a, b));
            (top_left_x, top_left_start, top_right_x, top_right_start) = (xu, b, l.x, l.start);
        } else {
            let a = self.draw.stop(&l, y);
            let xu = self.draw.after(Some(r.x));
            let b = self.draw.point(xu, y);
            self.draw.horizontal.push((a, b));
            (top_left_x, top_left_start, top_right_x, top_right_start) = (r.x, r.start, xu, b);
        }
        let tl = self.piece_from((c, slot(2)), top_left_x, top_left_start);
        let tr = self.piece_from((c, slot(1)), top_right_x, top_right_start);
        self.frontier.splice(pos..pos + 2, [tl, tr]);
        self.done[c] = true;
    }

    fn auto_cup(&mut self) {
        let mut i = 0;
        while i + 1 < self.frontier.len() {
            let (a, b) = (&self.frontier[i], &self.frontier[i + 1]);
            if a.arc.is_some() && a.arc == b.arc && self.done[a.target.0] && self.done[b.target.0] {
                self.cup(i);
                i = i.saturating_sub(1);
            } else {
                i += 1;
            }
        }
    }

    /// The next crossing to place: `(crossing, first position, k, first slot)`.
    fn choose(&self) -> Option<(usize, usize, usize, usize)> {
        let mut by_crossing: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for (p, piece) in self.frontier.iter().enumerate() {
            if piece.arc.is_some() && !self.done[piece.target.0] {
                by_crossing.entry(piece.target.0).or_default().push((p, piece.target.1));
            }
        }
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for (c, hits) in by_crossing {
            let contiguous = hits.windows(2).all(|w| w[1].0 == w[0].0 + 1 && w[1].1 == (w[0].1 + 1) % 4);
            if !contiguous {
                continue;
            }
            let k = hits.len();
            if best.is_none_or(|b| k > b.2) {
                best = Some((c, hits[0].0, k, hits[0].1));
            }
        }
        best
    }

    fn run(&mut self) -> Result<()> {
        let n = self.d.crossing_count();
        loop {
            self.auto_cup();
            if self.done.iter().all(|&d| d) {
                break;
            }
            if self.frontier.iter().all(|p| p.arc.is_none() || self.done[p.target.0]) {
                // Start a new connected piece of the diagram.
                let c = (0..n).find(|&c| !self.done[c]).expect("unplaced crossing");
                let pos = self.frontier.len();
                self.cap(pos, (c, 0), self.arc_at((c, 0)));
                continue;
            }
            let Some((c, pos, k, a)) = self.choose() else {
                return Err(Error::Routing(format!("no crossing meets the sweep line in order; diagram {}", self.d.diagram())));
            };
            match k {
                1 => {
                    let next = (c, (a + 1) % 4);
                    self.cap(pos + 1, next, self.arc_at(next));
                    self.crossing(c, pos, (a + 1) % 4);
                }
                2 => self.crossing(c, pos, (a + 1) % 4),
                _ => self.crossing(c, pos + 1, (a + 2) % 4),
            }
        }
        if !self.frontier.is_empty() {
            return Err(Error::Routing(format!("{} strands left open; diagram {}", self.frontier.len(), self.d.diagram())));
        }
        Ok(())
    }
}

/// A grid presenting the same oriented link; vertical strands are on top
/// at every crossing.
pub fn pd_to_grid(d: &LinkDiagram) -> Result<GridDiagram> {
    if d.component_count() == 0 {
        return Err(Error::InvalidDiagram("empty link has no grid".into()));
    }
    let mut s = Sweep {
        d,
        ends: d.arc_ends().into_iter().collect(),
        done: vec![false; d.crossing_count()],
        frontier: Vec::new(),
        draw: Drawing::default(),
    };
    s.run()?;
    for _ in 0..d.loops() {
        let x0 = s.draw.after(None);
        let x1 = s.draw.after(Some(x0));
        let y0 = s.draw.row();
        let (a, b) = (s.draw.point(x0, y0), s.draw.point(x1, y0));
        s.draw.horizontal.push((a, b));
        let y1 = s.draw.row();
        let (c, e) = (s.draw.point(x0, y1), s.draw.point(x1, y1));
        s.draw.horizontal.push((c, e));
        s.draw.vertical.push((a, c, false));
        s.draw.vertical.push((b, e, true));
    }
    Ok(to_grid(&s.draw))
}

fn to_grid(dr: &Drawing) -> GridDiagram {
    let n = dr.order.len();
    debug_assert_eq!(n, dr.rows);
    let mut column = vec![0; n];
    for (i, &x) in dr.order.iter().enumerate() {
        column[x] = i;
    }
    let np = dr.points.len();
    let mut vert = vec![usize::MAX; np];
    let mut horiz = vec![usize::MAX; np];
    for &(a, b, _) in &dr.vertical {
        vert[a] = b;
        vert[b] = a;
    }
    for &(a, b) in &dr.horizontal {
        horiz[a] = b;
        horiz[b] = a;
    }
    let mut x = vec![usize::MAX; n];
    let mut o = vec![usize::MAX; n];
    let mut seen = vec![false; np];
    for &(bottom, top, up_forward) in &dr.vertical {
        if seen[bottom] {
            continue;
        }
        // Walk the component, leaving each point along the segment not yet used.
        let (mut p, mut vertical_next) = if up_forward { (bottom, true) } else { (top, true) };
        while !seen[p] {
            seen[p] = true;
            let (cx, cy) = dr.points[p];
            let (col, row) = (column[cx], cy);
            if vertical_next {
                x[row] = col;
                p = vert[p];
            } else {
                o[row] = col;
                p = horiz[p];
            }
            vertical_next = !vertical_next;
        }
    }
    GridDiagram { n, x, o }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;
    use crate::invariants::jones;

    #[test]
    fn unknot_is_two_by_two() {
        let g = pd_to_grid(&LinkDiagram::unknot()).unwrap();
        assert_eq!(g, GridDiagram::unknot());
    }

    #[test]
    fn census_links_round_trip() {
        for &name in census::LINK_NAMES {
            let l = census::link(name).unwrap();
            let g = pd_to_grid(&l).unwrap();
            g.check().unwrap();
            assert_eq!(g.components(), l.component_count(), "{name}");
            assert_eq!(jones(&g.to_link()).unwrap(), jones(&l).unwrap(), "{name}");
        }
    }
}
