//! Port graph used for surgery on diagrams.
//!
//! Nodes carry their incident arcs counterclockwise. Arc ends are stored as
//! `[tail, head]`; for unoriented diagrams the order is only the order of
//! occurrence. Crossing nodes keep the under-strand on ports 0 and 2.

use std::collections::{BTreeMap, HashMap, VecDeque};

use serde::Serialize;

use super::{ArcId, Crossing, Diagram, OverIn, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct Port {
    pub node: usize,
    pub slot: usize,
}

impl Port {
    pub fn new(node: usize, slot: usize) -> Self {
        Port { node, slot }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum NodeKind {
    Crossing,
    Vertex,
    /// Loose end of a strand, left behind when a vertex is opened up.
    Free,
}

#[derive(Clone, Debug)]
pub(crate) struct Node {
    pub kind: NodeKind,
    pub ports: Vec<usize>,
}

#[derive(Clone, Debug)]
pub(crate) struct Net {
    pub nodes: Vec<Option<Node>>,
    pub arcs: Vec<Option<[Port; 2]>>,
    /// Arc id in the source diagram, `None` for arcs created by surgery.
    pub ids: Vec<Option<ArcId>>,
    pub loops: usize,
}

/// Node of a diagram: a crossing or a vertex, by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NodeRef {
    Crossing(usize),
    Vertex(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NodeSlot {
    pub node: NodeRef,
    pub slot: usize,
}

/// One side of a face, walked with the face on the left.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FaceSide {
    pub arc: ArcId,
    pub from: NodeSlot,
    pub to: NodeSlot,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub sides: Vec<FaceSide>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.sides.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sides.is_empty()
    }
}

impl Net {
    pub fn from_diagram(d: &Diagram) -> Net {
        let ids: Vec<ArcId> = d.arc_ids().into_iter().collect();
        let index: HashMap<ArcId, usize> = ids.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let mut ends: Vec<Vec<Port>> = vec![Vec::new(); ids.len()];
        let mut heads: Vec<Option<Port>> = vec![None; ids.len()];
        let mut nodes = Vec::new();
        for (i, c) in d.crossings.iter().enumerate() {
            let ports: Vec<usize> = c.slots.iter().map(|a| index[a]).collect();
            for (k, &a) in ports.iter().enumerate() {
                ends[a].push(Port::new(i, k));
            }
            if let Some((u, o)) = c.incoming() {
                heads[ports[u]] = Some(Port::new(i, u));
                heads[ports[o]] = Some(Port::new(i, o));
            }
            nodes.push(Some(Node { kind: NodeKind::Crossing, ports }));
        }
        let nc = d.crossings.len();
        for (i, v) in d.vertices.iter().enumerate() {
            let ports: Vec<usize> = v.slots.iter().map(|a| index[a]).collect();
            for (k, &a) in ports.iter().enumerate() {
                ends[a].push(Port::new(nc + i, k));
            }
            nodes.push(Some(Node { kind: NodeKind::Vertex, ports }));
        }
        let arcs = ends
            .into_iter()
            .zip(heads)
            .map(|(e, h)| {
                assert_eq!(e.len(), 2, "diagram must be validated before building a net");
                match h {
                    Some(h) if h == e[0] => Some([e[1], e[0]]),
                    _ => Some([e[0], e[1]]),
                }
            })
            .collect();
        Net { nodes, arcs, ids: ids.into_iter().map(Some).collect(), loops: d.loops }
    }

    pub fn node(&self, n: usize) -> &Node {
        self.nodes[n].as_ref().expect("live node")
    }

    pub fn ends(&self, a: usize) -> [Port; 2] {
        self.arcs[a].expect("live arc")
    }

    pub fn arc_at(&self, p: Port) -> usize {
        self.node(p.node).ports[p.slot]
    }

    pub fn other_end(&self, a: usize, p: Port) -> Port {
        let [t, h] = self.ends(a);
        if t == p {
            h
        } else {
            debug_assert_eq!(h, p);
            t
        }
    }

    pub fn add_node(&mut self, kind: NodeKind, degree: usize) -> usize {
        self.nodes.push(Some(Node { kind, ports: vec![usize::MAX; degree] }));
        self.nodes.len() - 1
    }

    pub fn add_arc(&mut self, tail: Port, head: Port) -> usize {
        self.arcs.push(Some([tail, head]));
        self.ids.push(None);
        let a = self.arcs.len() - 1;
        self.attach(a, tail);
        self.attach(a, head);
        a
    }

    fn attach(&mut self, a: usize, p: Port) {
        self.nodes[p.node].as_mut().expect("live node").ports[p.slot] = a;
    }

    /// Moves end `which` (0 tail, 1 head) of arc `a` to port `p`.
    pub fn set_end(&mut self, a: usize, which: usize, p: Port) {
        self.arcs[a].as_mut().expect("live arc")[which] = p;
        self.attach(a, p);
    }

    pub fn remove_arc(&mut self, a: usize) {
        self.arcs[a] = None;
    }

    pub fn remove_node(&mut self, n: usize) {
        self.nodes[n] = None;
    }

    pub fn live_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.nodes.iter().enumerate().filter(|(_, n)| n.is_some()).map(|(i, _)| i)
    }

    pub fn live_arcs(&self) -> impl Iterator<Item = usize> + '_ {
        self.arcs.iter().enumerate().filter(|(_, a)| a.is_some()).map(|(i, _)| i)
    }

    pub fn arc_by_id(&self, id: ArcId) -> Option<usize> {
        self.ids.iter().position(|&x| x == Some(id)).filter(|&a| self.arcs[a].is_some())
    }

    /// Joins the arcs at ports `p` and `q` of `node` into one, leaving those
    /// ports dangling. An arc running from `p` to `q` closes into a loop.
    pub fn join(&mut self, node: usize, p: usize, q: usize) {
        let pp = Port::new(node, p);
        let pq = Port::new(node, q);
        let e = self.arc_at(pp);
        let f = self.arc_at(pq);
        if e == f {
            self.remove_arc(e);
            self.loops += 1;
            return;
        }
        let [et, eh] = self.ends(e);
        let [ft, fh] = self.ends(f);
        let x = if et == pp { eh } else { et };
        let y = if ft == pq { fh } else { ft };
        let merged = if eh == pp {
            [x, y]
        } else if fh == pq {
            [y, x]
        } else {
            [x, y]
        };
        self.arcs[e] = Some(merged);
        self.attach(e, x);
        self.attach(e, y);
        self.remove_arc(f);
        if self.ids[e].is_none() {
            self.ids[e] = self.ids[f];
        }
    }

    /// Splits the dart `(a, dir)` into pieces passing through the given
    /// `(entry, exit)` ports, preserving the arc's orientation. Returns the
    /// piece indices in dart order.
    pub fn reroute(&mut self, a: usize, dir: usize, via: &[(Port, Port)]) -> Vec<usize> {
        let (x, y) = self.dart_ends((a, dir));
        let mut pts = vec![x];
        for &(i, o) in via {
            pts.push(i);
            pts.push(o);
        }
        pts.push(y);
        let mut pieces = Vec::new();
        for (k, c) in pts.chunks(2).enumerate() {
            let ends = if dir == 0 { [c[0], c[1]] } else { [c[1], c[0]] };
            if k == 0 {
                self.arcs[a] = Some(ends);
                self.attach(a, ends[0]);
                self.attach(a, ends[1]);
                pieces.push(a);
            } else {
                pieces.push(self.add_arc(ends[0], ends[1]));
            }
        }
        pieces
    }

    /// Deletes a crossing, letting both strands pass straight through.
    pub fn remove_crossing_straight(&mut self, node: usize) {
        self.join(node, 0, 2);
        self.join(node, 1, 3);
        self.remove_node(node);
    }

    /// Oriented resolution of a crossing: incoming strands turn into the
    /// outgoing strand of the other crossing arc.
    pub fn smooth_oriented(&mut self, node: usize) {
        let heads: Vec<bool> = (0..4)
            .map(|k| {
                let a = self.arc_at(Port::new(node, k));
                self.ends(a)[1] == Port::new(node, k)
            })
            .collect();
        let u_in = if heads[0] { 0 } else { 2 };
        let o_in = if heads[1] { 1 } else { 3 };
        self.join(node, u_in, (o_in + 2) % 4);
        self.join(node, o_in, (u_in + 2) % 4);
        self.remove_node(node);
    }

    pub fn reverse_arcs(&mut self, pred: impl Fn(ArcId) -> bool) {
        for a in 0..self.arcs.len() {
            if let (Some(ends), Some(id)) = (self.arcs[a].as_mut(), self.ids[a]) {
                if pred(id) {
                    ends.swap(0, 1);
                }
            }
        }
    }

    /// Cuts the arcs with ids `a` and `b` and reconnects the four ends so
    /// that `a` ends where `b` did and vice versa (oriented band sum).
    pub fn splice_arcs(&mut self, a: ArcId, b: ArcId) {
        let ia = self.arc_by_id(a).expect("arc a");
        let ib = self.arc_by_id(b).expect("arc b");
        let [_, q] = self.ends(ia);
        let [_, s] = self.ends(ib);
        self.set_end(ia, 1, s);
        self.set_end(ib, 1, q);
    }

    /// Orients every strand of a crossing-only net consistently, keeping the
    /// stored direction of the lowest arc of each component.
    pub fn orient_components(&mut self) {
        let mut seen = vec![false; self.arcs.len()];
        for start in 0..self.arcs.len() {
            if self.arcs[start].is_none() || seen[start] {
                continue;
            }
            let mut a = start;
            loop {
                seen[a] = true;
                let h = self.ends(a)[1];
                let node = self.node(h.node);
                if node.kind != NodeKind::Crossing {
                    break;
                }
                let out = Port::new(h.node, (h.slot + 2) % 4);
                let next = node.ports[out.slot];
                if self.ends(next)[0] != out {
                    self.arcs[next].as_mut().unwrap().swap(0, 1);
                }
                if next == start {
                    break;
                }
                a = next;
            }
        }
    }

    /// Darts are `(arc, 0)` tail to head and `(arc, 1)` head to tail.
    pub fn dart_ends(&self, d: (usize, usize)) -> (Port, Port) {
        let [t, h] = self.ends(d.0);
        if d.1 == 0 {
            (t, h)
        } else {
            (h, t)
        }
    }

    /// Faces as dart cycles with the face on the left.
    pub fn faces(&self) -> Vec<Vec<(usize, usize)>> {
        let mut seen: HashMap<(usize, usize), bool> = HashMap::new();
        let mut out = Vec::new();
        for a in self.live_arcs() {
            for dir in 0..2 {
                if seen.contains_key(&(a, dir)) {
                    continue;
                }
                let mut face = Vec::new();
                let mut d = (a, dir);
                while !seen.contains_key(&d) {
                    seen.insert(d, true);
                    face.push(d);
                    let (_, to) = self.dart_ends(d);
                    let deg = self.node(to.node).ports.len();
                    let leave = Port::new(to.node, (to.slot + deg - 1) % deg);
                    let na = self.arc_at(leave);
                    let nd = if self.ends(na)[0] == leave { 0 } else { 1 };
                    d = (na, nd);
                }
                out.push(face);
            }
        }
        out
    }

    pub fn faces_public(&self, d: &Diagram) -> Vec<Face> {
        let nc = d.crossings.len();
        let conv = |p: Port| NodeSlot {
            node: if p.node < nc { NodeRef::Crossing(p.node) } else { NodeRef::Vertex(p.node - nc) },
            slot: p.slot,
        };
        self.faces()
            .into_iter()
            .map(|f| Face {
                sides: f
                    .into_iter()
                    .map(|dart| {
                        let (from, to) = self.dart_ends(dart);
                        FaceSide { arc: self.ids[dart.0].expect("source arc"), from: conv(from), to: conv(to) }
                    })
                    .collect(),
            })
            .collect()
    }

    fn is_oriented_link(&self) -> bool {
        self.live_nodes().all(|n| self.node(n).kind == NodeKind::Crossing)
    }

    /// Rebuilds a diagram. Crossings come first in node order, then vertices
    /// and loose ends (as one-valent vertices). Arcs are renumbered from 0 in
    /// order of first appearance; the returned map sends arc index to new id.
    pub fn to_diagram(&self) -> (Diagram, Vec<Option<ArcId>>) {
        let oriented = self.is_oriented_link();
        let mut crossings_raw = Vec::new();
        let mut vertices_raw = Vec::new();
        for n in self.live_nodes() {
            let node = self.node(n);
            match node.kind {
                NodeKind::Crossing => {
                    let head = |k: usize| self.ends(node.ports[k])[1] == Port::new(n, k);
                    let (rot, over_in) = if oriented && head(0) != head(2) {
                        let rot = if head(0) { 0 } else { 2 };
                        let over = if head((1 + rot) % 4) && !head((3 + rot) % 4) {
                            Some(OverIn::Slot1)
                        } else if head((3 + rot) % 4) && !head((1 + rot) % 4) {
                            Some(OverIn::Slot3)
                        } else {
                            None
                        };
                        (rot, over)
                    } else {
                        (0, None)
                    };
                    let ports: Vec<usize> = (0..4).map(|k| node.ports[(k + rot) % 4]).collect();
                    crossings_raw.push((ports, if over_in.is_some() { over_in } else { None }));
                }
                NodeKind::Vertex | NodeKind::Free => vertices_raw.push(node.ports.clone()),
            }
        }
        let mut map: Vec<Option<ArcId>> = vec![None; self.arcs.len()];
        let mut next: ArcId = 0;
        let mut id = |a: usize, map: &mut Vec<Option<ArcId>>| {
            *map[a].get_or_insert_with(|| {
                next += 1;
                next - 1
            })
        };
        let crossings = crossings_raw
            .into_iter()
            .map(|(p, o)| Crossing::new([id(p[0], &mut map), id(p[1], &mut map), id(p[2], &mut map), id(p[3], &mut map)], o))
            .collect();
        let vertices =
            vertices_raw.into_iter().map(|p| Vertex { slots: p.iter().map(|&a| id(a, &mut map)).collect() }).collect();
        (Diagram { crossings, vertices, loops: self.loops }, map)
    }

    fn bfs_code(&self, start: usize, start_slot: usize, oriented: bool, out: &mut Vec<i64>) {
        let mut order: HashMap<usize, (usize, usize)> = HashMap::new();
        order.insert(start, (0, start_slot));
        let mut queue = VecDeque::from([start]);
        while let Some(n) = queue.pop_front() {
            let node = self.node(n);
            let deg = node.ports.len();
            let (_, s) = order[&n];
            out.push(match node.kind {
                NodeKind::Crossing => 0,
                NodeKind::Vertex => 1,
                NodeKind::Free => 2,
            });
            out.push(deg as i64);
            if node.kind == NodeKind::Crossing {
                out.push((s % 2) as i64);
            }
            for j in 0..deg {
                let p = Port::new(n, (s + j) % deg);
                let a = node.ports[p.slot];
                let o = self.other_end(a, p);
                if !order.contains_key(&o.node) {
                    order.insert(o.node, (order.len(), o.slot));
                    queue.push_back(o.node);
                }
                let (oi, os) = order[&o.node];
                let odeg = self.node(o.node).ports.len();
                out.push(oi as i64);
                out.push(((o.slot + odeg - os) % odeg) as i64);
                if oriented {
                    out.push((self.ends(a)[0] == p) as i64);
                }
            }
        }
    }

    /// Complete isomorphism invariant of the planar embedding (with
    /// orientations for links).
    pub fn canonical_code(&self) -> Vec<i64> {
        let oriented = self.is_oriented_link();
        let mut comp: BTreeMap<usize, usize> = BTreeMap::new();
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for n in self.live_nodes() {
            if comp.contains_key(&n) {
                continue;
            }
            let c = comps.len();
            let mut members = vec![n];
            comp.insert(n, c);
            let mut i = 0;
            while i < members.len() {
                let m = members[i];
                for (k, &a) in self.node(m).ports.iter().enumerate() {
                    let o = self.other_end(a, Port::new(m, k));
                    if let std::collections::btree_map::Entry::Vacant(e) = comp.entry(o.node) {
                        e.insert(c);
                        members.push(o.node);
                    }
                }
                i += 1;
            }
            comps.push(members);
        }
        let mut codes: Vec<Vec<i64>> = comps
            .iter()
            .map(|members| {
                let mut best: Option<Vec<i64>> = None;
                for &n in members {
                    for s in 0..self.node(n).ports.len() {
                        let mut code = Vec::new();
                        self.bfs_code(n, s, oriented, &mut code);
                        if best.as_ref().is_none_or(|b| code < *b) {
                            best = Some(code);
                        }
                    }
                }
                best.unwrap_or_default()
            })
            .collect();
        codes.sort();
        let mut out = vec![self.loops as i64];
        for c in codes {
            out.push(-1);
            out.push(c.len() as i64);
            out.extend(c);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trefoil() -> Diagram {
        Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
    }

    #[test]
    fn round_trip_preserves_code() {
        let d = trefoil();
        let n = Net::from_diagram(&d);
        let (d2, _) = n.to_diagram();
        assert_eq!(d.canonical_code(), d2.canonical_code());
        assert_eq!(d2.writhe(), d.writhe());
    }

    #[test]
    fn euler_characteristic_of_faces() {
        // V - E + F = 2 for a connected diagram: 3 - 6 + F = 2.
        let d = trefoil();
        assert_eq!(Net::from_diagram(&d).faces().len(), 5);
        let hopf = Diagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        assert_eq!(Net::from_diagram(&hopf).faces().len(), 4);
    }

    #[test]
    fn relabeling_is_isomorphic_but_mirror_is_not() {
        let d = trefoil();
        let relabeled = Diagram::from_pd(&[[3, 6, 4, 1], [5, 2, 6, 3], [1, 4, 2, 5]]).unwrap();
        assert!(d.is_isomorphic(&relabeled));
        let m = super::super::LinkDiagram::new(d.clone()).unwrap().mirror();
        assert!(!d.is_isomorphic(m.diagram()));
    }

    #[test]
    fn removing_the_only_crossing_of_a_kink() {
        let d = Diagram::from_pd(&[[1, 2, 2, 1]]).unwrap();
        let mut n = Net::from_diagram(&d);
        n.remove_crossing_straight(0);
        let (d2, _) = n.to_diagram();
        assert_eq!(d2, Diagram::unknot());
    }

    #[test]
    fn smoothing_hopf_crossing_gives_a_kinked_unknot() {
        let d = Diagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap();
        let mut n = Net::from_diagram(&d);
        n.smooth_oriented(0);
        let (d2, _) = n.to_diagram();
        assert_eq!(d2.crossings.len(), 1);
        assert!(d2.crossings[0].over_in.is_some());
        assert_eq!(d2.loops, 0);
    }
}
