//! Built-in regression corpus: small knots, links and the handcuff graphs.

use crate::diagram::{ArcId, Crossing, Diagram, LinkDiagram, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CensusKind {
    Link,
    Graph,
}

#[derive(Clone, Debug)]
pub struct CensusEntry {
    pub name: &'static str,
    pub kind: CensusKind,
    pub diagram: Diagram,
}

/// PD code of the `(2, n)` torus link, arcs numbered from 1.
pub fn torus_2n(n: u32) -> Vec<[ArcId; 4]> {
    let m = 2 * n;
    let wrap = |x: u32| (x - 1) % m + 1;
    (0..n).map(|k| 2 * k + 1).map(|i| [i, wrap(i + n), wrap(i + 1), wrap(i + n + 1)]).collect()
}

const PD: &[(&str, &[[ArcId; 4]])] = &[
    ("4_1", &[[4, 2, 5, 1], [8, 6, 1, 5], [6, 3, 7, 4], [2, 7, 3, 8]]),
    ("5_2", &[[1, 4, 2, 5], [3, 8, 4, 9], [5, 10, 6, 1], [9, 6, 10, 7], [7, 2, 8, 3]]),
    ("6_1", &[[1, 4, 2, 5], [7, 10, 8, 11], [3, 9, 4, 8], [9, 3, 10, 2], [5, 12, 6, 1], [11, 6, 12, 7]]),
    ("L2a1", &[[4, 1, 3, 2], [2, 3, 1, 4]]),
    ("L4a1", &[[6, 1, 7, 2], [8, 3, 5, 4], [2, 5, 3, 6], [4, 7, 1, 8]]),
    ("L5a1", &[[6, 1, 7, 2], [10, 7, 5, 8], [4, 5, 1, 6], [2, 10, 3, 9], [8, 4, 9, 3]]),
];

/// Link diagram by table name, e.g. `3_1` or `L2a1`.
pub fn link(name: &str) -> Option<LinkDiagram> {
    match name {
        "0_1" => Some(LinkDiagram::unknot()),
        "unlink2" => Some(LinkDiagram::unlink(2)),
        "3_1" => LinkDiagram::from_pd(&torus_2n(3)).ok(),
        "5_1" => LinkDiagram::from_pd(&torus_2n(5)).ok(),
        "7_1" => LinkDiagram::from_pd(&torus_2n(7)).ok(),
        _ => PD.iter().find(|(n, _)| *n == name).and_then(|(_, pd)| LinkDiagram::from_pd(pd).ok()),
    }
}

pub const LINK_NAMES: &[&str] = &["0_1", "unlink2", "3_1", "4_1", "5_1", "5_2", "6_1", "7_1", "L2a1", "L4a1", "L5a1"];

/// Two vertices, each carrying a loop, joined by a bridge.
pub fn handcuff() -> Diagram {
    Diagram {
        vertices: vec![Vertex { slots: vec![0, 0, 1] }, Vertex { slots: vec![1, 2, 2] }],
        ..Default::default()
    }
}

/// The handcuff with its two loops clasped like a Hopf link.
pub fn hopf_handcuff() -> Diagram {
    Diagram {
        crossings: vec![Crossing::new([3, 2, 4, 1], None), Crossing::new([0, 5, 1, 4], None)],
        vertices: vec![Vertex { slots: vec![0, 2, 6] }, Vertex { slots: vec![3, 5, 6] }],
        loops: 0,
    }
}

/// Two vertices joined by three edges.
pub fn theta() -> Diagram {
    Diagram { vertices: vec![Vertex { slots: vec![0, 1, 2] }, Vertex { slots: vec![2, 1, 0] }], ..Default::default() }
}

pub fn graph(name: &str) -> Option<Diagram> {
    match name {
        "handcuff" => Some(handcuff()),
        "hopf_handcuff" => Some(hopf_handcuff()),
        "theta" => Some(theta()),
        _ => None,
    }
}

pub const GRAPH_NAMES: &[&str] = &["handcuff", "hopf_handcuff", "theta"];

pub fn entries() -> Vec<CensusEntry> {
    let links = LINK_NAMES
        .iter()
        .map(|&name| CensusEntry { name, kind: CensusKind::Link, diagram: link(name).expect("census link").into_diagram() });
    let graphs =
        GRAPH_NAMES.iter().map(|&name| CensusEntry { name, kind: CensusKind::Graph, diagram: graph(name).expect("census graph") });
    links.chain(graphs).collect()
}
