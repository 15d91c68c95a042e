//! Planar diagrams of links and embedded graphs.
//!
//! Crossings follow the PD convention: four arc ids listed counterclockwise
//! starting at the incoming under-strand, so slots 0 and 2 carry the under
//! strand and slots 1 and 3 the over strand. Vertices list their incident
//! arcs counterclockwise; the cyclic order is the planar embedding.
//! Crossing-free circles are counted in `loops` since a PD code cannot name
//! them.

mod json;
mod moves;
pub(crate) mod net;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use json::{DiagramJson, ValidationReport, Violation};
pub use moves::{apply_move, enumerate_sites, find_inverse, random_moves, Kink, MoveKind, MoveSite};
pub use net::{Face, FaceSide, NodeRef, NodeSlot};

pub type ArcId = u32;

/// Which over slot is the incoming one. Together with the PD convention this
/// fixes the crossing sign: over entering at slot 3 is a positive crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OverIn {
    Slot1,
    Slot3,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub slots: [ArcId; 4],
    /// `None` for unoriented crossings (graph diagrams).
    pub over_in: Option<OverIn>,
}

impl Crossing {
    pub fn new(slots: [ArcId; 4], over_in: Option<OverIn>) -> Self {
        Crossing { slots, over_in }
    }

    pub fn sign(&self) -> Option<i32> {
        self.over_in.map(|o| match o {
            OverIn::Slot3 => 1,
            OverIn::Slot1 => -1,
        })
    }

    /// Slots holding incoming arcs `(under, over)`.
    pub fn incoming(&self) -> Option<(usize, usize)> {
        self.over_in.map(|o| (0, if o == OverIn::Slot1 { 1 } else { 3 }))
    }

    /// The same crossing with over and under exchanged, rewritten so that
    /// slot 0 is again the incoming under-strand.
    pub fn switched(&self) -> Crossing {
        let [a, b, c, d] = self.slots;
        match self.over_in {
            Some(OverIn::Slot3) => Crossing::new([d, a, b, c], Some(OverIn::Slot1)),
            Some(OverIn::Slot1) => Crossing::new([b, c, d, a], Some(OverIn::Slot3)),
            None => Crossing::new([b, c, d, a], None),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vertex {
    pub slots: Vec<ArcId>,
}

/// Diagram of an embedded graph; a link diagram is the vertex-free case.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Diagram {
    pub crossings: Vec<Crossing>,
    pub vertices: Vec<Vertex>,
    pub loops: usize,
}

pub type GraphDiagram = Diagram;

impl Diagram {
    pub fn unknot() -> Self {
        Diagram { loops: 1, ..Default::default() }
    }

    pub fn unlink(k: usize) -> Self {
        Diagram { loops: k, ..Default::default() }
    }

    /// PD code with orientations derived from the under-strands.
    pub fn from_pd(pd: &[[ArcId; 4]]) -> Result<Self> {
        DiagramJson {
            crossings: pd.iter().map(|c| c.iter().map(|&x| x as i64).collect()).collect(),
            ..Default::default()
        }
        .into_diagram()
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: DiagramJson = serde_json::from_str(s)?;
        raw.into_diagram()
    }

    pub fn to_json(&self) -> DiagramJson {
        DiagramJson::from_diagram(self)
    }

    pub fn is_link(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arc_ids(&self) -> BTreeSet<ArcId> {
        self.slot_iter().map(|(_, a)| a).collect()
    }

    /// Every slot in reading order: crossings first, then vertices.
    pub(crate) fn slot_iter(&self) -> impl Iterator<Item = (SlotRef, ArcId)> + '_ {
        let cs = self
            .crossings
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.slots.iter().enumerate().map(move |(k, &a)| (SlotRef::Crossing(i, k), a)));
        let vs = self
            .vertices
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.slots.iter().enumerate().map(move |(k, &a)| (SlotRef::Vertex(i, k), a)));
        cs.chain(vs)
    }

    pub fn validate(&self) -> ValidationReport {
        json::validate_diagram(self)
    }

    /// Sum of crossing signs; unoriented crossings count zero.
    pub fn writhe(&self) -> i32 {
        self.crossings.iter().filter_map(|c| c.sign()).sum()
    }

    /// Relabels arcs canonically and compares; isomorphism means an
    /// orientation-preserving planar relabeling.
    pub fn is_isomorphic(&self, other: &Diagram) -> bool {
        self.canonical_code() == other.canonical_code()
    }

    pub fn canonical_code(&self) -> Vec<i64> {
        net::Net::from_diagram(self).canonical_code()
    }

    /// Faces of the planar embedding, in a deterministic order.
    pub fn faces(&self) -> Vec<Face> {
        net::Net::from_diagram(self).faces_public(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) enum SlotRef {
    Crossing(usize, usize),
    Vertex(usize, usize),
}

/// A validated, fully oriented diagram without vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinkDiagram(Diagram);

impl LinkDiagram {
    pub fn new(d: Diagram) -> Result<Self> {
        if !d.vertices.is_empty() {
            return Err(Error::NotALink(format!("{} vertices present", d.vertices.len())));
        }
        if d.crossings.iter().any(|c| c.over_in.is_none()) {
            return Err(Error::NotALink("unoriented crossing".into()));
        }
        let report = d.validate();
        if !report.is_valid() {
            return Err(Error::InvalidDiagram(report.to_string()));
        }
        Ok(LinkDiagram(d))
    }

    pub fn from_pd(pd: &[[ArcId; 4]]) -> Result<Self> {
        Self::new(Diagram::from_pd(pd)?)
    }

    pub fn unknot() -> Self {
        LinkDiagram(Diagram::unknot())
    }

    pub fn unlink(k: usize) -> Self {
        LinkDiagram(Diagram::unlink(k))
    }

    pub fn empty() -> Self {
        LinkDiagram(Diagram::default())
    }

    pub fn diagram(&self) -> &Diagram {
        &self.0
    }

    pub fn into_diagram(self) -> Diagram {
        self.0
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.0.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.0.crossings.len()
    }

    pub fn loops(&self) -> usize {
        self.0.loops
    }

    pub fn writhe(&self) -> i32 {
        self.0.writhe()
    }

    pub fn signs(&self) -> (usize, usize) {
        let pos = self.0.crossings.iter().filter(|c| c.sign() == Some(1)).count();
        (pos, self.0.crossings.len() - pos)
    }

    /// Component label per arc, and the number of components including
    /// crossing-free loops.
    pub fn split_components(&self) -> (BTreeMap<ArcId, usize>, usize) {
        let mut label = BTreeMap::new();
        let ends = self.arc_ends();
        let mut next = 0;
        for c in &self.0.crossings {
            for &start in &c.slots {
                if label.contains_key(&start) {
                    continue;
                }
                let mut arc = start;
                loop {
                    label.insert(arc, next);
                    // Follow the arc to its head and pass straight through.
                    let (ci, k) = ends[&arc].1;
                    arc = self.0.crossings[ci].slots[(k + 2) % 4];
                    if arc == start {
                        break;
                    }
                }
                next += 1;
            }
        }
        (label, next + self.0.loops)
    }

    pub fn component_count(&self) -> usize {
        self.split_components().1
    }

    /// `(tail, head)` slot of every arc.
    pub(crate) fn arc_ends(&self) -> BTreeMap<ArcId, ((usize, usize), (usize, usize))> {
        let mut tails = BTreeMap::new();
        let mut heads = BTreeMap::new();
        for (i, c) in self.0.crossings.iter().enumerate() {
            let (u_in, o_in) = c.incoming().expect("oriented");
            for k in 0..4 {
                if k == u_in || k == o_in {
                    heads.insert(c.slots[k], (i, k));
                } else {
                    tails.insert(c.slots[k], (i, k));
                }
            }
        }
        tails.into_iter().map(|(a, t)| (a, (t, heads[&a]))).collect()
    }

    pub fn mirror(&self) -> LinkDiagram {
        let crossings = self.0.crossings.iter().map(Crossing::switched).collect();
        LinkDiagram(Diagram { crossings, vertices: vec![], loops: self.0.loops })
    }

    /// Reverses the orientation of every component.
    pub fn reverse(&self) -> LinkDiagram {
        let crossings = self
            .0
            .crossings
            .iter()
            .map(|c| {
                let [a, b, cc, d] = c.slots;
                Crossing::new([cc, d, a, b], c.over_in)
            })
            .collect();
        LinkDiagram(Diagram { crossings, vertices: vec![], loops: self.0.loops })
    }

    /// Reverses the components whose labels are in `which`.
    pub fn reverse_components(&self, which: &BTreeSet<usize>) -> LinkDiagram {
        let (labels, _) = self.split_components();
        let mut n = net::Net::from_diagram(&self.0);
        n.reverse_arcs(|a| which.contains(&labels[&a]));
        LinkDiagram(n.to_diagram().0)
    }

    pub fn disjoint_union(&self, other: &LinkDiagram) -> LinkDiagram {
        let offset = self.0.arc_ids().last().map(|a| a + 1).unwrap_or(0);
        let mut crossings = self.0.crossings.clone();
        crossings.extend(other.0.crossings.iter().map(|c| {
            let mut c = c.clone();
            for s in &mut c.slots {
                *s += offset;
            }
            c
        }));
        LinkDiagram(Diagram { crossings, vertices: vec![], loops: self.0.loops + other.0.loops })
    }

    /// Oriented connected sum, cutting `self` at `arc_a` and `other` at
    /// `arc_b` (the first arc of each when `None`). Loops are used when a
    /// side has no crossings.
    pub fn connected_sum(&self, other: &LinkDiagram) -> LinkDiagram {
        if self.0.crossings.is_empty() && self.0.loops > 0 {
            let mut d = other.0.clone();
            d.loops += self.0.loops - 1;
            return LinkDiagram(d);
        }
        if other.0.crossings.is_empty() && other.0.loops > 0 {
            let mut d = self.0.clone();
            d.loops += other.0.loops - 1;
            return LinkDiagram(d);
        }
        let u = self.disjoint_union(other);
        let mut n = net::Net::from_diagram(&u.0);
        let offset = self.0.arc_ids().last().map(|a| a + 1).unwrap_or(0);
        let a = self.0.crossings[0].slots[0];
        let b = other.0.crossings[0].slots[0] + offset;
        n.splice_arcs(a, b);
        LinkDiagram(n.to_diagram().0)
    }

    /// Switches or smooths crossing `i`, keeping every other arc id.
    pub fn switch_crossing(&self, i: usize) -> LinkDiagram {
        let mut d = self.0.clone();
        d.crossings[i] = d.crossings[i].switched();
        LinkDiagram(d)
    }

    /// Oriented smoothing of crossing `i`.
    pub fn smooth_crossing(&self, i: usize) -> LinkDiagram {
        let mut n = net::Net::from_diagram(&self.0);
        n.smooth_oriented(i);
        LinkDiagram(n.to_diagram().0)
    }

    /// Removes kinks and bigons greedily until none remain.
    pub fn reduce(&self) -> LinkDiagram {
        let d = moves::greedy_reduce(&self.0);
        LinkDiagram(d)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl Serialize for LinkDiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl std::fmt::Display for Diagram {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", serde_json::to_string(&self.to_json()).map_err(|_| std::fmt::Error)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn hopf() -> LinkDiagram {
        LinkDiagram::from_pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]).unwrap()
    }

    pub(crate) fn trefoil() -> LinkDiagram {
        LinkDiagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap()
    }

    #[test]
    fn components() {
        assert_eq!(LinkDiagram::unknot().component_count(), 1);
        assert_eq!(hopf().component_count(), 2);
        assert_eq!(trefoil().component_count(), 1);
        assert_eq!(trefoil().disjoint_union(&LinkDiagram::unknot()).component_count(), 2);
        assert_eq!(trefoil().disjoint_union(&hopf()).component_count(), 3);
    }

    #[test]
    fn mirror_and_reverse_are_involutions() {
        for l in [hopf(), trefoil(), LinkDiagram::unknot()] {
            assert_eq!(l.mirror().mirror(), l);
            assert_eq!(l.reverse().reverse(), l);
            assert_eq!(l.mirror().writhe(), -l.writhe());
            assert_eq!(l.reverse().writhe(), l.writhe());
        }
        assert_eq!(LinkDiagram::unknot().mirror(), LinkDiagram::unknot());
    }

    #[test]
    fn union_identity() {
        let e = LinkDiagram::empty();
        assert_eq!(e.disjoint_union(&hopf()).component_count(), 2);
        assert!(e.disjoint_union(&hopf()).diagram().is_isomorphic(hopf().diagram()));
        let two = LinkDiagram::unknot().disjoint_union(&LinkDiagram::unknot());
        assert_eq!(two.component_count(), 2);
    }

    #[test]
    fn hopf_signs() {
        let h = hopf();
        assert_eq!(h.writhe().abs(), 2);
        assert_eq!(h.mirror().writhe(), -h.writhe());
    }
}
