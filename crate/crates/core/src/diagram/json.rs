//! JSON interchange and validation.
//!
//! Schema: `{"crossings":[[a,b,c,d],...], "vertices":[[s1,...,sk],...],
//! "loops":n, "orientations":{"arc":±1}}`. An orientation of `+1` means the
//! arc runs from its first occurrence to its second occurrence in reading
//! order (crossing slots in list order, then vertex slots). Orientations are
//! only needed for arcs whose direction is not forced by an under-strand;
//! anything left free is oriented from its first occurrence.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::net::Net;
use super::{ArcId, Crossing, Diagram, OverIn, SlotRef, Vertex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct DiagramJson {
    pub crossings: Vec<Vec<i64>>,
    pub vertices: Vec<Vec<i64>>,
    pub loops: usize,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub orientations: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    SlotCount { crossing: usize, found: usize },
    EmptyVertex { vertex: usize },
    NegativeArc { value: i64 },
    ArcMultiplicity { arc: i64, count: usize },
    BadOrientationValue { arc: String },
    Orientation { arc: ArcId, detail: String },
    /// `V - E + F` differs from twice the number of connected pieces.
    NonPlanar { euler: i64, pieces: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SlotCount { crossing, found } => {
                write!(f, "slot count: crossing {crossing} has {found} slots, expected 4")
            }
            Violation::EmptyVertex { vertex } => write!(f, "slot count: vertex {vertex} has no slots"),
            Violation::NegativeArc { value } => write!(f, "negative arc id {value}"),
            Violation::ArcMultiplicity { arc, count } => {
                write!(f, "arc multiplicity: arc {arc} appears {count} times, expected 2")
            }
            Violation::BadOrientationValue { arc } => {
                write!(f, "orientation: arc {arc} must be an existing arc with value +1 or -1")
            }
            Violation::Orientation { arc, detail } => write!(f, "inconsistent orientation at arc {arc}: {detail}"),
            Violation::NonPlanar { euler, pieces } => {
                write!(f, "non-planar: V - E + F = {euler} over {pieces} connected pieces, expected {}", 2 * pieces)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn structural(raw: &DiagramJson) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for (i, c) in raw.crossings.iter().enumerate() {
        if c.len() != 4 {
            out.push(Violation::SlotCount { crossing: i, found: c.len() });
        }
    }
    for (i, v) in raw.vertices.iter().enumerate() {
        if v.is_empty() {
            out.push(Violation::EmptyVertex { vertex: i });
        }
    }
    for &a in raw.crossings.iter().chain(&raw.vertices).flatten() {
        if a < 0 {
            out.push(Violation::NegativeArc { value: a });
        }
        *counts.entry(a).or_default() += 1;
    }
    for (arc, count) in counts {
        if count != 2 && arc >= 0 {
            out.push(Violation::ArcMultiplicity { arc, count });
        }
    }
    for (k, v) in &raw.orientations {
        let known = k.parse::<i64>().ok().filter(|a| raw.crossings.iter().chain(&raw.vertices).flatten().any(|x| x == a));
        if known.is_none() || (*v != 1 && *v != -1) {
            out.push(Violation::BadOrientationValue { arc: k.clone() });
        }
    }
    out
}

impl DiagramJson {
    pub fn validate(&self) -> ValidationReport {
        let mut violations = structural(self);
        if violations.is_empty() {
            match self.build() {
                Err(v) => violations.push(v),
                Ok(d) => violations.extend(planarity(&d)),
            }
        }
        ValidationReport { violations }
    }

    pub fn into_diagram(self) -> Result<Diagram> {
        let report = self.validate();
        if !report.is_valid() {
            return Err(Error::InvalidDiagram(report.to_string()));
        }
        self.build().map_err(|v| Error::InvalidDiagram(v.to_string()))
    }

    fn build(&self) -> std::result::Result<Diagram, Violation> {
        let crossings: Vec<[ArcId; 4]> = self
            .crossings
            .iter()
            .map(|c| [c[0] as ArcId, c[1] as ArcId, c[2] as ArcId, c[3] as ArcId])
            .collect();
        let vertices: Vec<Vertex> =
            self.vertices.iter().map(|v| Vertex { slots: v.iter().map(|&a| a as ArcId).collect() }).collect();
        let mut d = Diagram {
            crossings: crossings.iter().map(|&s| Crossing::new(s, None)).collect(),
            vertices,
            loops: self.loops,
        };
        if d.vertices.is_empty() {
            let given: BTreeMap<ArcId, i64> =
                self.orientations.iter().map(|(k, v)| (k.parse::<i64>().unwrap() as ArcId, *v)).collect();
            orient(&mut d, &given)?;
        }
        Ok(d)
    }

    pub fn from_diagram(d: &Diagram) -> Self {
        let mut orientations = BTreeMap::new();
        if d.is_link() && d.crossings.iter().all(|c| c.over_in.is_some()) {
            let occ = occurrences(d);
            for (arc, [first, _]) in &occ {
                let (ci, k) = match first {
                    SlotRef::Crossing(ci, k) => (*ci, *k),
                    SlotRef::Vertex(..) => unreachable!(),
                };
                let (u_in, o_in) = d.crossings[ci].incoming().unwrap();
                // First occurrence is the tail exactly when that slot is outgoing.
                let outgoing = k != u_in && k != o_in;
                orientations.insert(arc.to_string(), if outgoing { 1 } else { -1 });
            }
        }
        DiagramJson {
            crossings: d.crossings.iter().map(|c| c.slots.iter().map(|&a| a as i64).collect()).collect(),
            vertices: d.vertices.iter().map(|v| v.slots.iter().map(|&a| a as i64).collect()).collect(),
            loops: d.loops,
            orientations,
        }
    }
}

fn occurrences(d: &Diagram) -> BTreeMap<ArcId, [SlotRef; 2]> {
    let mut first: BTreeMap<ArcId, SlotRef> = BTreeMap::new();
    let mut out = BTreeMap::new();
    for (s, a) in d.slot_iter() {
        match first.get(&a) {
            None => {
                first.insert(a, s);
            }
            Some(&f) => {
                out.insert(a, [f, s]);
            }
        }
    }
    out
}

/// Assigns `over_in` to every crossing of a vertex-free diagram.
fn orient(d: &mut Diagram, given: &BTreeMap<ArcId, i64>) -> std::result::Result<(), Violation> {
    let occ = occurrences(d);
    // head[arc] = index (0 or 1) of the occurrence that is the arc's head.
    let mut head: BTreeMap<ArcId, usize> = BTreeMap::new();
    let mut queue: VecDeque<ArcId> = VecDeque::new();
    let slot_of = |r: SlotRef| match r {
        SlotRef::Crossing(c, k) => (c, k),
        SlotRef::Vertex(..) => unreachable!("links have no vertices"),
    };
    let assign = |arc: ArcId, h: usize, why: &str, head: &mut BTreeMap<ArcId, usize>, queue: &mut VecDeque<ArcId>| {
        match head.get(&arc) {
            Some(&prev) if prev != h => Err(Violation::Orientation { arc, detail: why.to_string() }),
            Some(_) => Ok(()),
            None => {
                head.insert(arc, h);
                queue.push_back(arc);
                Ok(())
            }
        }
    };
    for (&arc, ends) in &occ {
        for (idx, &r) in ends.iter().enumerate() {
            let (_, k) = slot_of(r);
            match k {
                0 => assign(arc, idx, "enters an under-strand slot 0 twice", &mut head, &mut queue)?,
                2 => assign(arc, 1 - idx, "leaves an under-strand slot 2 twice", &mut head, &mut queue)?,
                _ => {}
            }
        }
        if let Some(&v) = given.get(&arc) {
            assign(arc, if v == 1 { 1 } else { 0 }, "contradicts the given orientation", &mut head, &mut queue)?;
        }
    }
    let arcs: Vec<ArcId> = occ.keys().copied().collect();
    let mut next_free = 0;
    loop {
        while let Some(arc) = queue.pop_front() {
            let h = head[&arc];
            for (idx, &r) in occ[&arc].iter().enumerate() {
                let (c, k) = slot_of(r);
                if k % 2 == 1 {
                    // Over strand passes straight through: the opposite slot has
                    // the other direction.
                    let opp = d.crossings[c].slots[(k + 2) % 4];
                    let opp_ref = SlotRef::Crossing(c, (k + 2) % 4);
                    let opp_idx = occ[&opp].iter().position(|&x| x == opp_ref).unwrap();
                    let this_is_head = idx == h;
                    let opp_head = if this_is_head { 1 - opp_idx } else { opp_idx };
                    assign(opp, opp_head, "over-strand direction conflict", &mut head, &mut queue)?;
                }
            }
        }
        while next_free < arcs.len() && head.contains_key(&arcs[next_free]) {
            next_free += 1;
        }
        if next_free == arcs.len() {
            break;
        }
        assign(arcs[next_free], 1, "", &mut head, &mut queue)?;
    }
    for (i, c) in d.crossings.iter_mut().enumerate() {
        let a1 = c.slots[1];
        let r1 = SlotRef::Crossing(i, 1);
        let idx = occ[&a1].iter().position(|&x| x == r1).unwrap();
        c.over_in = Some(if head[&a1] == idx { OverIn::Slot1 } else { OverIn::Slot3 });
    }
    // Slot 3 must then be the opposite direction; checked by propagation.
    Ok(())
}

/// Euler characteristic check of the embedding given by the cyclic slot
/// orders: each connected piece must be a sphere.
fn planarity(d: &Diagram) -> Option<Violation> {
    let n = Net::from_diagram(d);
    let nodes: Vec<usize> = n.live_nodes().collect();
    if nodes.is_empty() {
        return None;
    }
    let mut parent: Vec<usize> = (0..n.nodes.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut edges = 0i64;
    for a in n.live_arcs() {
        let [p, q] = n.ends(a);
        let (rp, rq) = (find(&mut parent, p.node), find(&mut parent, q.node));
        parent[rp] = rq;
        edges += 1;
    }
    let pieces = nodes.iter().filter(|&&v| find(&mut parent, v) == v).count();
    let euler = nodes.len() as i64 - edges + n.faces().len() as i64;
    (euler != 2 * pieces as i64).then_some(Violation::NonPlanar { euler, pieces })
}

pub(crate) fn validate_diagram(d: &Diagram) -> ValidationReport {
    let raw = DiagramJson::from_diagram(d);
    let mut report = ValidationReport { violations: structural(&raw) };
    if report.is_valid() {
        report.violations.extend(planarity(d));
    }
    if report.is_valid() && d.is_link() && d.crossings.iter().all(|c| c.over_in.is_some()) {
        // Each arc must leave one slot and enter another.
        let mut ins: BTreeMap<ArcId, usize> = BTreeMap::new();
        for c in &d.crossings {
            let (u, o) = c.incoming().unwrap();
            *ins.entry(c.slots[u]).or_default() += 1;
            *ins.entry(c.slots[o]).or_default() += 1;
        }
        for a in d.arc_ids() {
            let n = ins.get(&a).copied().unwrap_or(0);
            if n != 1 {
                report.violations.push(Violation::Orientation { arc: a, detail: format!("{n} incoming ends") });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknot_loop_is_valid() {
        let raw: DiagramJson = serde_json::from_str(r#"{"loops":1}"#).unwrap();
        assert!(raw.validate().is_valid());
    }

    #[test]
    fn arc_in_three_slots() {
        let raw: DiagramJson = serde_json::from_str(r#"{"crossings":[[0,3,1,3]],"vertices":[[3]]}"#).unwrap();
        let r = raw.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::ArcMultiplicity { arc: 3, count: 3 })));
        assert!(r.to_string().contains("arc multiplicity"));
    }

    #[test]
    fn hopf_pd_is_valid() {
        let raw: DiagramJson = serde_json::from_str(r#"{"crossings":[[4,1,3,2],[2,3,1,4]]}"#).unwrap();
        assert!(raw.validate().is_valid());
        let d = raw.into_diagram().unwrap();
        assert!(d.validate().is_valid());
    }

    #[test]
    fn slot_count_violation() {
        let raw: DiagramJson = serde_json::from_str(r#"{"crossings":[[0,1,0]]}"#).unwrap();
        assert!(matches!(raw.validate().violations[0], Violation::SlotCount { crossing: 0, found: 3 }));
    }

    #[test]
    fn conflicting_orientation_is_reported() {
        // Arc 1 enters slot 0 of both crossings.
        let raw: DiagramJson = serde_json::from_str(r#"{"crossings":[[1,2,3,4],[1,4,3,2]]}"#).unwrap();
        let r = raw.validate();
        assert!(r.violations.iter().any(|v| matches!(v, Violation::Orientation { .. })), "{r}");
    }

    #[test]
    fn json_round_trip_keeps_orientation() {
        let d = Diagram::from_pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]).unwrap();
        let s = serde_json::to_string(&d.to_json()).unwrap();
        let back = Diagram::from_json_str(&s).unwrap();
        assert_eq!(back, d);
    }

    #[test]
    fn torus_embedding_is_rejected() {
        // A theta graph with equal rotations at both vertices has one face.
        let raw: DiagramJson = serde_json::from_str(r#"{"vertices":[[0,1,2],[0,1,2]]}"#).unwrap();
        let r = raw.validate();
        assert!(matches!(r.violations[..], [Violation::NonPlanar { euler: 0, pieces: 1 }]), "{r}");
        let ok: DiagramJson = serde_json::from_str(r#"{"vertices":[[0,1,2],[2,1,0]]}"#).unwrap();
        assert!(ok.validate().is_valid());
    }
}
