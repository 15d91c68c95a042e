//! Generalized Reidemeister moves for link and graph diagrams.
//!
//! R1 to R3 are the classical moves. R4 slides a strand across a vertex: a
//! strand crossing a consecutive block of the vertex's edges is moved to the
//! far side, where it crosses the complementary block instead. R5 twists two
//! cyclically adjacent edges at a vertex around each other. Faces are indexed
//! as in [`Diagram::faces`].

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::net::{Net, NodeKind, Port};
use super::{ArcId, Diagram};
use crate::error::{Error, Result};

/// Placement of an R1 kink on an arc. Variants differ in which pass is
/// under and on which side of the strand the loop lies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kink {
    K0,
    K1,
    K2,
    K3,
}

impl Kink {
    pub const ALL: [Kink; 4] = [Kink::K0, Kink::K1, Kink::K2, Kink::K3];

    /// `(in1, out1, in2, out2)` ports of the new crossing, in travel order.
    fn ports(self) -> [usize; 4] {
        match self {
            Kink::K0 => [0, 2, 1, 3],
            Kink::K1 => [0, 2, 3, 1],
            Kink::K2 => [1, 3, 0, 2],
            Kink::K3 => [3, 1, 0, 2],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    R4,
    R5,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum MoveSite {
    R1Add { arc: ArcId, kink: Kink },
    R1Remove { crossing: usize },
    /// Pushes a finger of `finger` across `target` through a face they share.
    R2Add { face: usize, finger: ArcId, target: ArcId, finger_over: bool },
    R2Remove { face: usize },
    R3 { face: usize },
    /// Moves the strand crossing edges `start..start+count` (counterclockwise)
    /// of `vertex` to the other side. With `count == 0` the strand is the arc
    /// `arc` running past the corner just before `start`.
    R4 { vertex: usize, start: usize, count: usize, over: bool, arc: Option<ArcId> },
    R5Add { vertex: usize, slot: usize, over: bool },
    R5Remove { vertex: usize, slot: usize },
}

impl MoveSite {
    pub fn kind(&self) -> MoveKind {
        match self {
            MoveSite::R1Add { .. } | MoveSite::R1Remove { .. } => MoveKind::R1,
            MoveSite::R2Add { .. } | MoveSite::R2Remove { .. } => MoveKind::R2,
            MoveSite::R3 { .. } => MoveKind::R3,
            MoveSite::R4 { .. } => MoveKind::R4,
            MoveSite::R5Add { .. } | MoveSite::R5Remove { .. } => MoveKind::R5,
        }
    }

    /// Whether the move removes crossings (the undo direction).
    pub fn is_undo(&self) -> bool {
        matches!(self, MoveSite::R1Remove { .. } | MoveSite::R2Remove { .. } | MoveSite::R5Remove { .. })
    }
}

fn mismatch(msg: impl Into<String>) -> Error {
    Error::PatternMismatch(msg.into())
}

fn is_crossing(n: &Net, node: usize) -> bool {
    n.node(node).kind == NodeKind::Crossing
}

/// Faces as dart lists, the same order as [`Diagram::faces`].
fn face(n: &Net, idx: usize) -> Result<Vec<(usize, usize)>> {
    n.faces().into_iter().nth(idx).ok_or_else(|| mismatch(format!("face {idx} does not exist")))
}

fn arc_index(n: &Net, id: ArcId) -> Result<usize> {
    n.arc_by_id(id).ok_or_else(|| mismatch(format!("arc {id} does not exist")))
}

fn vertex_node(d: &Diagram, v: usize) -> Result<usize> {
    if v >= d.vertices.len() {
        return Err(mismatch(format!("vertex {v} does not exist")));
    }
    Ok(d.crossings.len() + v)
}

fn kink_arc(n: &Net, c: usize) -> Option<usize> {
    let ports = &n.node(c).ports;
    (0..4).find(|&k| ports[k] == ports[(k + 1) % 4]).map(|k| ports[k])
}

/// Bigon with one arc over at both ends and the other under at both.
fn r2_removable(n: &Net, f: &[(usize, usize)]) -> Option<[usize; 2]> {
    if f.len() != 2 {
        return None;
    }
    let (e, g) = (f[0].0, f[1].0);
    if e == g {
        return None;
    }
    let [e0, e1] = n.ends(e);
    let [g0, g1] = n.ends(g);
    let nodes = [e0.node, e1.node];
    if nodes[0] == nodes[1] || !nodes.iter().all(|&x| is_crossing(n, x)) {
        return None;
    }
    let mut gn = [g0.node, g1.node];
    gn.sort();
    let mut en = nodes;
    en.sort();
    if en != gn {
        return None;
    }
    let e_over = e0.slot % 2 == 1 && e1.slot % 2 == 1;
    let e_under = e0.slot % 2 == 0 && e1.slot % 2 == 0;
    let g_over = g0.slot % 2 == 1 && g1.slot % 2 == 1;
    let g_under = g0.slot % 2 == 0 && g1.slot % 2 == 0;
    ((e_over && g_under) || (e_under && g_over)).then_some(en)
}

/// Triangle of three distinct crossings with one side over at both ends.
fn r3_applicable(n: &Net, f: &[(usize, usize)]) -> bool {
    if f.len() != 3 {
        return false;
    }
    let mut nodes: Vec<usize> = f.iter().map(|&d| n.dart_ends(d).0.node).collect();
    if !nodes.iter().all(|&x| is_crossing(n, x)) {
        return false;
    }
    nodes.sort();
    nodes.dedup();
    let mut arcs: Vec<usize> = f.iter().map(|d| d.0).collect();
    arcs.sort();
    arcs.dedup();
    nodes.len() == 3
        && arcs.len() == 3
        && f.iter().any(|&(a, _)| {
            let [p, q] = n.ends(a);
            p.slot % 2 == 1 && q.slot % 2 == 1
        })
}

/// Crossings of a strand over (or under) the block of edges
/// `start..start+count` of vertex node `v`, as `(crossing, inner port)`.
fn r4_block(n: &Net, v: usize, start: usize, count: usize) -> Option<Vec<(usize, usize)>> {
    let deg = n.node(v).ports.len();
    let mut out = Vec::new();
    for j in 0..count {
        let i = (start + j) % deg;
        let a = n.arc_at(Port::new(v, i));
        let o = n.other_end(a, Port::new(v, i));
        if o.node == v || !is_crossing(n, o.node) || out.iter().any(|&(c, _)| c == o.node) {
            return None;
        }
        out.push((o.node, o.slot));
    }
    if out.iter().any(|&(_, p)| p % 2 != out[0].1 % 2) {
        return None;
    }
    for w in out.windows(2) {
        let (c, p) = w[0];
        let (c2, p2) = w[1];
        let a = n.arc_at(Port::new(c, (p + 3) % 4));
        if n.other_end(a, Port::new(c, (p + 3) % 4)) != Port::new(c2, (p2 + 1) % 4) {
            return None;
        }
    }
    Some(out)
}

/// New crossing ports `(s_in, e_inner, s_out, e_outer)` for a strand going
/// clockwise around a vertex.
fn r4_ports(over: bool) -> [usize; 4] {
    if over {
        [3, 0, 1, 2]
    } else {
        [0, 1, 2, 3]
    }
}

pub fn apply_move(d: &Diagram, site: &MoveSite) -> Result<Diagram> {
    let mut n = Net::from_diagram(d);
    match *site {
        MoveSite::R1Add { arc, kink } => {
            let a = arc_index(&n, arc)?;
            let c = n.add_node(NodeKind::Crossing, 4);
            let [i1, o1, i2, o2] = kink.ports();
            n.reroute(a, 0, &[(Port::new(c, i1), Port::new(c, o1)), (Port::new(c, i2), Port::new(c, o2))]);
        }
        MoveSite::R1Remove { crossing } => {
            if crossing >= d.crossings.len() {
                return Err(mismatch(format!("crossing {crossing} does not exist")));
            }
            if kink_arc(&n, crossing).is_none() {
                return Err(mismatch(format!("crossing {crossing} has no arc on two adjacent slots")));
            }
            n.remove_crossing_straight(crossing);
        }
        MoveSite::R2Add { face: fi, finger, target, finger_over } => {
            let f = face(&n, fi)?;
            let fa = arc_index(&n, finger)?;
            let tb = arc_index(&n, target)?;
            if fa == tb {
                return Err(mismatch("finger and target are the same arc"));
            }
            let da = *f.iter().find(|d| d.0 == fa).ok_or_else(|| mismatch(format!("arc {finger} not on face {fi}")))?;
            let db = *f.iter().find(|d| d.0 == tb).ok_or_else(|| mismatch(format!("arc {target} not on face {fi}")))?;
            let p1 = n.add_node(NodeKind::Crossing, 4);
            let p2 = n.add_node(NodeKind::Crossing, 4);
            // Finger over: P1 = [b3, a1, b2, a2], P2 = [b2, a3, b1, a2].
            let r = if finger_over { 0 } else { 3 };
            let at = |node: usize, k: usize| Port::new(node, (k + r) % 4);
            n.reroute(da.0, da.1, &[(at(p1, 1), at(p1, 3)), (at(p2, 3), at(p2, 1))]);
            n.reroute(db.0, db.1, &[(at(p2, 2), at(p2, 0)), (at(p1, 2), at(p1, 0))]);
        }
        MoveSite::R2Remove { face: fi } => {
            let f = face(&n, fi)?;
            let [c1, c2] = r2_removable(&n, &f).ok_or_else(|| mismatch(format!("face {fi} is not a removable bigon")))?;
            n.remove_crossing_straight(c1);
            n.remove_crossing_straight(c2);
        }
        MoveSite::R3 { face: fi } => {
            let f = face(&n, fi)?;
            if !r3_applicable(&n, &f) {
                return Err(mismatch(format!("face {fi} is not a triangle with a strand over both its crossings")));
            }
            let mut pi: HashMap<Port, Port> = HashMap::new();
            for &(a, _) in &f {
                let [x, y] = n.ends(a);
                let xo = Port::new(x.node, (x.slot + 2) % 4);
                let yo = Port::new(y.node, (y.slot + 2) % 4);
                pi.insert(x, yo);
                pi.insert(yo, x);
                pi.insert(y, xo);
                pi.insert(xo, y);
            }
            let live: Vec<usize> = n.live_arcs().collect();
            for a in live {
                let [t, h] = n.ends(a);
                if let Some(&p) = pi.get(&t) {
                    n.set_end(a, 0, p);
                }
                if let Some(&p) = pi.get(&h) {
                    n.set_end(a, 1, p);
                }
            }
        }
        MoveSite::R4 { vertex, start, count, over, arc } => {
            let v = vertex_node(d, vertex)?;
            let deg = n.node(v).ports.len();
            if count > deg || start >= deg {
                return Err(mismatch(format!("block {start}+{count} does not fit vertex {vertex}")));
            }
            // Dart along which the strand leaves its A side, heading for the vertex.
            let (s_arc, s_dir) = if count == 0 {
                let id = arc.ok_or_else(|| mismatch("empty block needs a strand arc"))?;
                let s = arc_index(&n, id)?;
                let corner = n
                    .faces()
                    .into_iter()
                    .find(|f| {
                        f.iter().any(|&dd| {
                            let (_, to) = n.dart_ends(dd);
                            to == Port::new(v, start)
                        })
                    })
                    .ok_or_else(|| mismatch("corner face not found"))?;
                let [p, q] = n.ends(s);
                if p.node == v || q.node == v {
                    return Err(mismatch(format!("arc {id} is incident to vertex {vertex}")));
                }
                *corner
                    .iter()
                    .find(|dd| dd.0 == s)
                    .ok_or_else(|| mismatch(format!("arc {id} does not pass the corner before slot {start}")))?
            } else {
                let block = r4_block(&n, v, start, count)
                    .ok_or_else(|| mismatch(format!("edges {start}+{count} of vertex {vertex} are not crossed by one strand")))?;
                if (block[0].1 % 2 == 0) != over {
                    return Err(mismatch("over flag does not match the strand"));
                }
                let (c0, p0) = block[0];
                let (cl, pl) = *block.last().unwrap();
                let a_side = Port::new(c0, (p0 + 1) % 4);
                let a = n.arc_at(a_side);
                let x_a = n.other_end(a, a_side);
                let b_side = Port::new(cl, (pl + 3) % 4);
                let b_arc = n.arc_at(b_side);
                let removed: Vec<usize> = block.iter().map(|b| b.0).collect();
                if a == b_arc && count != deg {
                    return Err(mismatch("strand closes up before covering the vertex"));
                }
                if removed.contains(&x_a.node) && a != b_arc {
                    return Err(mismatch("strand re-enters the block"));
                }
                // The sliding strand must not itself be an edge of the vertex.
                if [a, b_arc].iter().any(|&e| n.ends(e).iter().any(|p| p.node == v)) {
                    return Err(mismatch("strand is an edge of the vertex"));
                }
                for &c in &removed {
                    n.remove_crossing_straight(c);
                }
                if count == deg {
                    return Ok(n.to_diagram().0);
                }
                let s = n.arc_at(x_a);
                (s, if n.ends(s)[0] == x_a { 0 } else { 1 })
            };
            let [s_in, e_in, s_out, e_out] = r4_ports(over);
            let mut via = Vec::new();
            for j in 1..=(deg - count) {
                let i = (start + deg - j) % deg;
                let c = n.add_node(NodeKind::Crossing, 4);
                via.push((Port::new(c, s_in), Port::new(c, s_out)));
                let e = n.arc_at(Port::new(v, i));
                let dir = if n.ends(e)[0] == Port::new(v, i) { 0 } else { 1 };
                n.reroute(e, dir, &[(Port::new(c, e_in), Port::new(c, e_out))]);
            }
            n.reroute(s_arc, s_dir, &via);
        }
        MoveSite::R5Add { vertex, slot, over } => {
            let v = vertex_node(d, vertex)?;
            let deg = n.node(v).ports.len();
            if deg < 2 || slot >= deg {
                return Err(mismatch(format!("slot {slot} of vertex {vertex} has no neighbor")));
            }
            let pi = Port::new(v, slot);
            let pj = Port::new(v, (slot + 1) % deg);
            let a = n.arc_at(pi);
            let b = n.arc_at(pj);
            if a == b {
                return Err(mismatch("adjacent slots hold the same arc"));
            }
            // p runs from slot i to b's far end, q from slot i+1 to a's far end.
            // With p under the crossing is [p_low, q_high, p_high, q_low].
            let c = n.add_node(NodeKind::Crossing, 4);
            let r = if over { 1 } else { 0 };
            let at = |k: usize| Port::new(c, (k + r) % 4);
            let (p_low, q_high, p_high, q_low) = (at(0), at(1), at(2), at(3));
            let which_a = if n.ends(a)[0] == pi { 0 } else { 1 };
            let which_b = if n.ends(b)[0] == pj { 0 } else { 1 };
            n.set_end(a, which_a, q_high);
            n.set_end(b, which_b, p_high);
            n.add_arc(pi, p_low);
            n.add_arc(pj, q_low);
        }
        MoveSite::R5Remove { vertex, slot } => {
            let v = vertex_node(d, vertex)?;
            let deg = n.node(v).ports.len();
            if deg < 2 || slot >= deg {
                return Err(mismatch(format!("slot {slot} of vertex {vertex} has no neighbor")));
            }
            let (c, x) = r5_twist(&n, v, slot).ok_or_else(|| mismatch(format!("slots {slot}, {} of vertex {vertex} are not twisted", (slot + 1) % deg)))?;
            n.join(c, x, (x + 1) % 4);
            n.join(c, (x + 3) % 4, (x + 2) % 4);
            n.remove_node(c);
        }
    }
    Ok(n.to_diagram().0)
}

/// Crossing twisting slots `slot` and `slot+1` of vertex node `v`, and the
/// crossing port reached from `slot`.
fn r5_twist(n: &Net, v: usize, slot: usize) -> Option<(usize, usize)> {
    let deg = n.node(v).ports.len();
    let pi = Port::new(v, slot);
    let pj = Port::new(v, (slot + 1) % deg);
    let a = n.arc_at(pi);
    let b = n.arc_at(pj);
    if a == b {
        return None;
    }
    let x = n.other_end(a, pi);
    let y = n.other_end(b, pj);
    (x.node == y.node && x.node != v && is_crossing(n, x.node) && x.slot == (y.slot + 1) % 4).then_some((x.node, x.slot))
}

/// Every site where a move applies, in a deterministic order.
pub fn enumerate_sites(d: &Diagram) -> Vec<MoveSite> {
    let n = Net::from_diagram(d);
    let faces = n.faces();
    let mut out = Vec::new();
    for arc in d.arc_ids() {
        for kink in Kink::ALL {
            out.push(MoveSite::R1Add { arc, kink });
        }
    }
    for c in 0..d.crossings.len() {
        if kink_arc(&n, c).is_some() {
            out.push(MoveSite::R1Remove { crossing: c });
        }
    }
    for (fi, f) in faces.iter().enumerate() {
        let mut arcs: Vec<usize> = f.iter().map(|d| d.0).collect();
        arcs.dedup();
        for &a in &arcs {
            for &b in &arcs {
                if a != b {
                    for finger_over in [true, false] {
                        out.push(MoveSite::R2Add {
                            face: fi,
                            finger: n.ids[a].unwrap(),
                            target: n.ids[b].unwrap(),
                            finger_over,
                        });
                    }
                }
            }
        }
        if r2_removable(&n, f).is_some() {
            out.push(MoveSite::R2Remove { face: fi });
        }
        if r3_applicable(&n, f) {
            out.push(MoveSite::R3 { face: fi });
        }
    }
    let nc = d.crossings.len();
    for (vi, vert) in d.vertices.iter().enumerate() {
        let v = nc + vi;
        let deg = vert.slots.len();
        for start in 0..deg {
            for count in 1..=deg {
                if let Some(block) = r4_block(&n, v, start, count) {
                    let site = MoveSite::R4 { vertex: vi, start, count, over: block[0].1 % 2 == 0, arc: None };
                    // The block test does not see strands that wind back into it.
                    if apply_move(d, &site).is_ok() {
                        out.push(site);
                    }
                }
            }
            if let Some(f) = faces.iter().find(|f| f.iter().any(|&dd| n.dart_ends(dd).1 == Port::new(v, start))) {
                let mut arcs: Vec<usize> = f
                    .iter()
                    .map(|dd| dd.0)
                    .filter(|&a| {
                        let [p, q] = n.ends(a);
                        p.node != v && q.node != v
                    })
                    .collect();
                arcs.sort();
                arcs.dedup();
                for a in arcs {
                    for over in [true, false] {
                        out.push(MoveSite::R4 { vertex: vi, start, count: 0, over, arc: n.ids[a] });
                    }
                }
            }
            if deg >= 2 {
                let pi = Port::new(v, start);
                let pj = Port::new(v, (start + 1) % deg);
                if n.arc_at(pi) != n.arc_at(pj) {
                    for over in [true, false] {
                        out.push(MoveSite::R5Add { vertex: vi, slot: start, over });
                    }
                }
                if r5_twist(&n, v, start).is_some() {
                    out.push(MoveSite::R5Remove { vertex: vi, slot: start });
                }
            }
        }
    }
    out
}

/// A site on `apply_move(d, site)` whose move returns a diagram isomorphic
/// to `d`.
pub fn find_inverse(d: &Diagram, site: &MoveSite) -> Result<Option<MoveSite>> {
    let moved = apply_move(d, site)?;
    let target = d.canonical_code();
    Ok(enumerate_sites(&moved).into_iter().filter(|s| s.kind() == site.kind()).find(|s| {
        apply_move(&moved, s).map(|r| r.canonical_code() == target).unwrap_or(false)
    }))
}

/// Applies `count` random moves from `kinds`, seeded. Growth is kept in
/// check by preferring removals once the crossing count exceeds `max_crossings`.
pub fn random_moves(
    d: &Diagram,
    seed: u64,
    count: usize,
    kinds: &[MoveKind],
    max_crossings: usize,
) -> (Diagram, Vec<MoveSite>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cur = d.clone();
    let mut log = Vec::new();
    for _ in 0..count {
        let sites: Vec<MoveSite> = enumerate_sites(&cur).into_iter().filter(|s| kinds.contains(&s.kind())).collect();
        let too_big = cur.crossings.len() >= max_crossings;
        let mut groups: Vec<Vec<&MoveSite>> = Vec::new();
        for k in kinds {
            for undo in [false, true] {
                let g: Vec<&MoveSite> = sites
                    .iter()
                    .filter(|s| s.kind() == *k && s.is_undo() == undo)
                    .filter(|s| !too_big || s.is_undo() || s.kind() == MoveKind::R3)
                    .collect();
                if !g.is_empty() {
                    groups.push(g);
                }
            }
        }
        let Some(group) = groups.choose(&mut rng) else { break };
        let site = group[rng.gen_range(0..group.len())].clone();
        match apply_move(&cur, &site) {
            Ok(next) => {
                cur = next;
                log.push(site);
            }
            Err(e) => {
                log::warn!("skipping move {site:?}: {e}");
            }
        }
    }
    (cur, log)
}

/// Applies R1 and R2 removals until none is left.
pub(crate) fn greedy_reduce(d: &Diagram) -> Diagram {
    let mut cur = d.clone();
    loop {
        let sites = enumerate_sites_removals(&cur);
        match sites.first() {
            Some(s) => cur = apply_move(&cur, s).expect("enumerated site applies"),
            None => return cur,
        }
    }
}

fn enumerate_sites_removals(d: &Diagram) -> Vec<MoveSite> {
    let n = Net::from_diagram(d);
    let mut out: Vec<MoveSite> =
        (0..d.crossings.len()).filter(|&c| kink_arc(&n, c).is_some()).map(|c| MoveSite::R1Remove { crossing: c }).collect();
    if out.is_empty() {
        out = n
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| r2_removable(&n, f).is_some())
            .map(|(fi, _)| MoveSite::R2Remove { face: fi })
            .collect();
    }
    out
}
