//! The link family T(G) of an embedded graph.
//!
//! A replacement at a vertex joins two of its edge-ends into one strand and
//! leaves the others as free ends. Once every vertex is replaced, strands
//! with a free end are erased together with the crossings they pass through.

use std::collections::{BTreeMap, BTreeSet};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::net::{Net, NodeKind, Port};
use crate::diagram::{Diagram, LinkDiagram};
use crate::error::{Error, Result};
use crate::invariants::{fingerprint, Fingerprint};

pub const DEFAULT_ASSIGNMENT_CAP: u128 = 1_000_000;

/// Unordered slot pairs `(i, j)` with `i < j`; empty for valence below two.
pub fn vertex_choices(valence: usize) -> Vec<(usize, usize)> {
    (0..valence).flat_map(|i| (i + 1..valence).map(move |j| (i, j))).collect()
}

/// One pair per vertex, `None` for vertices of valence at most one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ReplacementChoice(pub Vec<Option<(usize, usize)>>);

pub fn assignment_count(g: &Diagram) -> u128 {
    g.vertices.iter().map(|v| vertex_choices(v.slots.len()).len().max(1) as u128).product()
}

/// The `index`-th assignment in mixed-radix order, first vertex fastest.
pub fn nth_choice(g: &Diagram, mut index: u128) -> ReplacementChoice {
    let mut out = Vec::with_capacity(g.vertices.len());
    for v in &g.vertices {
        let choices = vertex_choices(v.slots.len());
        if choices.is_empty() {
            out.push(None);
        } else {
            let r = choices.len() as u128;
            out.push(Some(choices[(index % r) as usize]));
            index /= r;
        }
    }
    ReplacementChoice(out)
}

pub fn apply_replacement(g: &Diagram, c: &ReplacementChoice) -> Result<LinkDiagram> {
    if c.0.len() != g.vertices.len() {
        return Err(Error::ChoiceMismatch(format!("{} choices for {} vertices", c.0.len(), g.vertices.len())));
    }
    let report = g.validate();
    if !report.is_valid() {
        return Err(Error::InvalidDiagram(report.to_string()));
    }
    let mut n = Net::from_diagram(g);
    let nc = g.crossings.len();
    let mut free = Vec::new();
    for (vi, (vert, choice)) in g.vertices.iter().zip(&c.0).enumerate() {
        let deg = vert.slots.len();
        let v = nc + vi;
        match *choice {
            Some((i, j)) if i < j && j < deg => {}
            None if deg <= 1 => {}
            _ => return Err(Error::ChoiceMismatch(format!("choice {choice:?} at vertex {vi} of valence {deg}"))),
        }
        for k in 0..deg {
            if matches!(choice, Some((i, j)) if k == *i || k == *j) {
                continue;
            }
            let f = n.add_node(NodeKind::Free, 1);
            let a = n.arc_at(Port::new(v, k));
            let which = if n.ends(a)[0] == Port::new(v, k) { 0 } else { 1 };
            n.set_end(a, which, Port::new(f, 0));
            free.push(f);
        }
        if let Some((i, j)) = *choice {
            n.join(v, i, j);
        }
        n.remove_node(v);
    }
    for f in free {
        if n.nodes[f].is_none() {
            continue;
        }
        loop {
            let a = n.arc_at(Port::new(f, 0));
            let other = n.other_end(a, Port::new(f, 0));
            if n.node(other.node).kind == NodeKind::Free {
                n.remove_arc(a);
                n.remove_node(f);
                n.remove_node(other.node);
                break;
            }
            n.remove_crossing_straight(other.node);
        }
    }
    n.orient_components();
    LinkDiagram::new(n.to_diagram().0)
}

/// Orientation of the components minimizing the fingerprint; all
/// orientations of a knot give the same one.
pub fn canonical_orientation(l: &LinkDiagram) -> Result<(LinkDiagram, Fingerprint)> {
    let reduced = l.reduce();
    let comps = reduced.split_components().1 - reduced.loops();
    let mut best: Option<(LinkDiagram, Fingerprint)> = None;
    // Reversing every component leaves the invariants unchanged.
    let free = comps.saturating_sub(1).min(12);
    for mask in 0u32..(1 << free) {
        let set: BTreeSet<usize> = (0..free).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
        let cand = if set.is_empty() { reduced.clone() } else { reduced.reverse_components(&set) };
        let fp = fingerprint(&cand)?;
        if best.as_ref().is_none_or(|(_, b)| fp < *b) {
            best = Some((cand, fp));
        }
    }
    Ok(best.expect("at least one orientation"))
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilyMember {
    pub fingerprint: Fingerprint,
    pub diagram: LinkDiagram,
    pub multiplicity: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct LinkFamily {
    pub assignments: u128,
    /// Assignments whose result is the empty link.
    pub empty: u128,
    pub members: Vec<FamilyMember>,
}

impl LinkFamily {
    pub fn links(&self) -> impl Iterator<Item = &LinkDiagram> {
        self.members.iter().map(|m| &m.diagram)
    }

    pub fn fingerprints(&self) -> Vec<&Fingerprint> {
        self.members.iter().map(|m| &m.fingerprint).collect()
    }
}

pub fn family(g: &Diagram) -> Result<LinkFamily> {
    family_capped(g, DEFAULT_ASSIGNMENT_CAP)
}

pub fn family_capped(g: &Diagram, cap: u128) -> Result<LinkFamily> {
    let total = assignment_count(g);
    if total > cap {
        return Err(Error::TooManyAssignments { assignments: total, cap });
    }
    let run = |i: u128| -> Result<Option<(Vec<i64>, LinkDiagram)>> {
        let l = apply_replacement(g, &nth_choice(g, i))?.reduce();
        if l.component_count() == 0 {
            return Ok(None);
        }
        Ok(Some((l.diagram().canonical_code(), l)))
    };
    #[cfg(feature = "parallel")]
    let results: Vec<Option<(Vec<i64>, LinkDiagram)>> = (0..total as u64).into_par_iter().map(|i| run(i as u128)).collect::<Result<_>>()?;
    #[cfg(not(feature = "parallel"))]
    let results: Vec<Option<(Vec<i64>, LinkDiagram)>> = (0..total).map(run).collect::<Result<_>>()?;
    let mut empty = 0;
    let mut by_code: BTreeMap<Vec<i64>, (LinkDiagram, u128)> = BTreeMap::new();
    for r in results {
        match r {
            None => empty += 1,
            Some((code, l)) => by_code.entry(code).or_insert((l, 0)).1 += 1,
        }
    }
    let mut by_fp: BTreeMap<Fingerprint, (LinkDiagram, Vec<i64>, u128)> = BTreeMap::new();
    for (_, (l, mult)) in by_code {
        let (oriented, fp) = canonical_orientation(&l)?;
        let ocode = oriented.diagram().canonical_code();
        match by_fp.get_mut(&fp) {
            Some(entry) => {
                entry.2 += mult;
                let better = (oriented.crossing_count(), &ocode) < (entry.0.crossing_count(), &entry.1);
                if oriented.crossing_count() == entry.0.crossing_count() && ocode != entry.1 {
                    log::debug!("fingerprint shared by distinct reduced diagrams: {fp:?}");
                }
                if better {
                    entry.0 = oriented;
                    entry.1 = ocode;
                }
            }
            None => {
                by_fp.insert(fp, (oriented, ocode, mult));
            }
        }
    }
    let members = by_fp
        .into_iter()
        .map(|(mut fingerprint, (diagram, _, multiplicity))| {
            fingerprint.crossings = diagram.crossing_count();
            FamilyMember { fingerprint, diagram, multiplicity }
        })
        .collect();
    Ok(LinkFamily { assignments: total, empty, members })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn choices_count() {
        assert_eq!(vertex_choices(3).len(), 3);
        assert_eq!(vertex_choices(4).len(), 6);
        assert!(vertex_choices(1).is_empty());
        assert!(vertex_choices(0).is_empty());
    }

    #[test]
    fn handcuff_family() {
        let g = census::handcuff();
        assert_eq!(assignment_count(&g), 9);
        let f = family(&g).unwrap();
        assert_eq!(f.empty, 4);
        let comps: Vec<(usize, u128)> = f.members.iter().map(|m| (m.fingerprint.components, m.multiplicity)).collect();
        assert_eq!(comps, vec![(1, 4), (2, 1)]);
        assert!(f.members.iter().all(|m| m.diagram.crossing_count() == 0));
    }

    #[test]
    fn closing_both_loops_gives_an_unlink() {
        let g = census::handcuff();
        // Vertex slots are [loop, loop, bridge].
        let l = apply_replacement(&g, &ReplacementChoice(vec![Some((0, 1)), Some((1, 2))])).unwrap();
        assert_eq!(l.component_count(), 2);
        let l = apply_replacement(&g, &ReplacementChoice(vec![Some((0, 1)), Some((0, 2))])).unwrap();
        assert_eq!(l.component_count(), 1);
        let l = apply_replacement(&g, &ReplacementChoice(vec![Some((0, 2)), Some((0, 2))])).unwrap();
        assert_eq!(l.component_count(), 0);
    }

    #[test]
    fn hopf_handcuff_family() {
        let f = family(&census::hopf_handcuff()).unwrap();
        let comps: Vec<usize> = f.members.iter().map(|m| m.fingerprint.components).collect();
        assert_eq!(comps, vec![1, 2]);
        assert_eq!(f.members[1].diagram.crossing_count(), 2);
    }

    #[test]
    fn vertexless_diagram_is_its_own_family() {
        let tre = census::link("3_1").unwrap();
        let f = family(tre.diagram()).unwrap();
        assert_eq!(f.assignments, 1);
        assert_eq!(f.members.len(), 1);
        assert_eq!(f.members[0].fingerprint, fingerprint(&tre).unwrap());
    }

    #[test]
    fn choice_mismatch_is_reported() {
        let err = apply_replacement(&census::handcuff(), &ReplacementChoice(vec![Some((0, 1))])).unwrap_err();
        assert!(matches!(err, Error::ChoiceMismatch(_)));
    }
}
