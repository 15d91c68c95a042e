//! Floer-Kauffman and Khovanov-Kauffman homology of embedded graphs: direct
//! sums over the link family with Euler characteristic checks.

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{Diagram, LinkDiagram};
use crate::dims::BigradedDims;
use crate::error::{Error, Result};
use crate::grid::{hfk_hat_of_grid, pd_to_grid, simplify_grid, GridLimits};
use crate::invariants::{conway, Fingerprint};
use crate::kauffman::{family_capped, FamilyMember, DEFAULT_ASSIGNMENT_CAP};
use crate::khovanov::{euler_characteristic, khovanov_homology_capped, unnormalized_jones, Coeffs, DEFAULT_CROSSING_CAP};
use crate::poly::{conway_to_alexander, link_factor, EulerConvention, LaurentPoly, Var};

#[derive(Clone, Debug)]
pub struct Options {
    pub floer: bool,
    pub khovanov: bool,
    pub coeffs: Coeffs,
    pub grid: GridLimits,
    pub max_crossings: usize,
    /// Weight members by how many replacements produce them.
    pub multiset: bool,
    pub max_assignments: u128,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            floer: true,
            khovanov: true,
            coeffs: Coeffs::Z,
            grid: GridLimits::default(),
            max_crossings: DEFAULT_CROSSING_CAP,
            multiset: false,
            max_assignments: DEFAULT_ASSIGNMENT_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// Some member was skipped, so the comparison covers a partial sum.
    Partial,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum MemberResult {
    Computed {
        dims: BigradedDims,
        euler: LaurentPoly,
        /// The independent polynomial the Euler characteristic must equal.
        expected: LaurentPoly,
    },
    Skipped {
        reason: String,
    },
}

impl MemberResult {
    fn dims(&self) -> Option<&BigradedDims> {
        match self {
            MemberResult::Computed { dims, .. } => Some(dims),
            MemberResult::Skipped { .. } => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MemberReport {
    pub fingerprint: Fingerprint,
    pub multiplicity: u128,
    pub diagram: LinkDiagram,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floer: Option<MemberResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub khovanov: Option<MemberResult>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Aggregate {
    pub dims: BigradedDims,
    pub total_rank: u64,
    pub euler: LaurentPoly,
    pub expected: LaurentPoly,
    pub verdict: Verdict,
    /// Indices of skipped members.
    pub skipped: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FamilySummary {
    pub assignments: u128,
    pub empty: u128,
    pub members: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GraphHomologyReport {
    pub source: Diagram,
    pub family: FamilySummary,
    pub empty_family: bool,
    pub multiset: bool,
    pub members: Vec<MemberReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub floer: Option<Aggregate>,
    /// Sum of the members' Conway-normalized Alexander polynomials without
    /// the `(t^(1/2) - t^(-1/2))^(ℓ-1)` factor.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alexander_sum: Option<LaurentPoly>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub khovanov: Option<Aggregate>,
}

impl GraphHomologyReport {
    /// Combined verdict of the computed checks.
    pub fn euler_check(&self) -> Verdict {
        let vs: Vec<Verdict> = [&self.floer, &self.khovanov].into_iter().flatten().map(|a| a.verdict).collect();
        if vs.contains(&Verdict::Fail) {
            Verdict::Fail
        } else if vs.contains(&Verdict::Partial) {
            Verdict::Partial
        } else {
            Verdict::Pass
        }
    }

    /// One line per skipped computation, `member i: reason`.
    pub fn skip_list(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (i, m) in self.members.iter().enumerate() {
            for r in [&m.floer, &m.khovanov].into_iter().flatten() {
                if let MemberResult::Skipped { reason } = r {
                    out.push(format!("member {i}: {reason}"));
                }
            }
        }
        out
    }
}

/// `(t^(1/2) - t^(-1/2))^(ℓ-1) Δ` with `Δ` from the Conway polynomial.
pub fn floer_euler_oracle(l: &LinkDiagram) -> Result<LaurentPoly> {
    let comps = l.component_count();
    let delta = conway_to_alexander(&conway(l)?);
    Ok(&link_factor(comps.saturating_sub(1) as u32) * &delta)
}

fn floer_member(l: &LinkDiagram, limits: &GridLimits) -> (Option<usize>, MemberResult) {
    let grid = match pd_to_grid(l) {
        Ok(g) => simplify_grid(&g),
        Err(e) => return (None, MemberResult::Skipped { reason: format!("floer: skipped ({e})") }),
    };
    let n = grid.n;
    let run = || -> Result<MemberResult> {
        let dims = hfk_hat_of_grid(&grid, limits)?;
        let euler = dims.euler(Var::T, EulerConvention::HalfShift)?;
        Ok(MemberResult::Computed { dims, euler, expected: floer_euler_oracle(l)? })
    };
    let res = match run() {
        Ok(r) => r,
        Err(Error::GridTooLarge { .. }) => MemberResult::Skipped { reason: "floer: skipped (grid too large)".into() },
        Err(e @ Error::MemoryLimit { .. }) => MemberResult::Skipped { reason: format!("floer: skipped ({e})") },
        Err(e) => MemberResult::Skipped { reason: format!("floer: failed ({e})") },
    };
    (Some(n), res)
}

fn khovanov_member(l: &LinkDiagram, coeffs: Coeffs, cap: usize) -> MemberResult {
    let run = || -> Result<MemberResult> {
        let dims = khovanov_homology_capped(l, coeffs, cap)?;
        Ok(MemberResult::Computed { euler: euler_characteristic(&dims), expected: unnormalized_jones(l)?, dims })
    };
    match run() {
        Ok(r) => r,
        Err(Error::TooManyCrossings { .. }) => MemberResult::Skipped { reason: "khovanov: skipped (too many crossings)".into() },
        Err(e) => MemberResult::Skipped { reason: format!("khovanov: failed ({e})") },
    }
}

fn aggregate(members: &[MemberReport], pick: impl Fn(&MemberReport) -> &Option<MemberResult>, var: Var, multiset: bool) -> Aggregate {
    let mut dims = BigradedDims::new();
    let mut euler = LaurentPoly::zero(&[var]);
    let mut expected = LaurentPoly::zero(&[var]);
    let mut skipped = Vec::new();
    let mut failed = false;
    for (i, m) in members.iter().enumerate() {
        let weight = if multiset { m.multiplicity } else { 1 };
        match pick(m) {
            Some(MemberResult::Computed { dims: d, euler: e, expected: x }) => {
                dims += &d.times(weight as u64);
                let w = num_bigint::BigInt::from(weight);
                euler += &e.scale(&w);
                expected += &x.scale(&w);
                failed |= e != x;
            }
            _ => skipped.push(i),
        }
    }
    let verdict = if failed || euler != expected {
        Verdict::Fail
    } else if !skipped.is_empty() {
        Verdict::Partial
    } else {
        Verdict::Pass
    };
    Aggregate { total_rank: dims.total_rank(), dims, euler, expected, verdict, skipped }
}

pub fn graph_homology(g: &Diagram, opts: &Options) -> Result<GraphHomologyReport> {
    let fam = family_capped(g, opts.max_assignments)?;
    let work = |m: &FamilyMember| {
        let (grid_size, floer) = if opts.floer {
            let (n, r) = floer_member(&m.diagram, &opts.grid);
            (n, Some(r))
        } else {
            (None, None)
        };
        let khovanov = opts.khovanov.then(|| khovanov_member(&m.diagram, opts.coeffs, opts.max_crossings));
        MemberReport { fingerprint: m.fingerprint.clone(), multiplicity: m.multiplicity, diagram: m.diagram.clone(), grid_size, floer, khovanov }
    };
    #[cfg(feature = "parallel")]
    let members: Vec<MemberReport> = fam.members.par_iter().map(work).collect();
    #[cfg(not(feature = "parallel"))]
    let members: Vec<MemberReport> = fam.members.iter().map(work).collect();
    let floer = opts.floer.then(|| aggregate(&members, |m| &m.floer, Var::T, opts.multiset));
    let alexander_sum = if opts.floer {
        let mut s = LaurentPoly::zero(&[Var::T]);
        for m in &fam.members {
            let w = num_bigint::BigInt::from(if opts.multiset { m.multiplicity } else { 1 });
            s += &conway_to_alexander(&conway(&m.diagram)?).scale(&w);
        }
        Some(s)
    } else {
        None
    };
    let khovanov = opts.khovanov.then(|| aggregate(&members, |m| &m.khovanov, Var::Q, opts.multiset));
    Ok(GraphHomologyReport {
        source: g.clone(),
        family: FamilySummary { assignments: fam.assignments, empty: fam.empty, members: fam.members.len() },
        empty_family: fam.members.is_empty(),
        multiset: opts.multiset,
        members,
        floer,
        alexander_sum,
        khovanov,
    })
}

/// Floer-Kauffman homology: the direct sum of HFK-hat over the family.
pub fn hfg(g: &Diagram) -> Result<GraphHomologyReport> {
    graph_homology(g, &Options { khovanov: false, ..Options::default() })
}

/// Khovanov-Kauffman homology: the direct sum of Kh over the family.
pub fn kkh_graph(g: &Diagram, coeffs: Coeffs) -> Result<GraphHomologyReport> {
    graph_homology(g, &Options { floer: false, coeffs, ..Options::default() })
}

/// Member dims in report order, `None` where skipped.
pub fn member_dims(r: &GraphHomologyReport, floer: bool) -> Vec<Option<&BigradedDims>> {
    r.members.iter().map(|m| if floer { m.floer.as_ref() } else { m.khovanov.as_ref() }.and_then(|x| x.dims())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    #[test]
    fn handcuff_floer_and_khovanov() {
        let r = graph_homology(&census::handcuff(), &Options::default()).unwrap();
        let f = r.floer.as_ref().unwrap();
        assert_eq!((f.total_rank, f.verdict), (3, Verdict::Pass));
        let k = r.khovanov.as_ref().unwrap();
        assert_eq!((k.total_rank, k.verdict), (6, Verdict::Pass));
        assert_eq!(r.euler_check(), Verdict::Pass);
    }

    #[test]
    fn hopf_handcuff() {
        let r = graph_homology(&census::hopf_handcuff(), &Options::default()).unwrap();
        assert_eq!(r.floer.as_ref().unwrap().total_rank, 5);
        assert_eq!(r.khovanov.as_ref().unwrap().total_rank, 6);
        assert_eq!(r.euler_check(), Verdict::Pass);
    }

    #[test]
    fn caps_give_partial_results() {
        let tre = census::link("3_1").unwrap();
        let opts = Options { grid: GridLimits::new(4), max_crossings: 2, ..Options::default() };
        let r = graph_homology(tre.diagram(), &opts).unwrap();
        assert_eq!(r.floer.as_ref().unwrap().verdict, Verdict::Partial);
        assert_eq!(r.khovanov.as_ref().unwrap().skipped, vec![0]);
        assert_eq!(r.euler_check(), Verdict::Partial);
    }

    #[test]
    fn empty_family_is_zero() {
        // A single edge between two univalent vertices: every strand is open.
        let g = Diagram { crossings: vec![], vertices: vec![crate::diagram::Vertex { slots: vec![0] }, crate::diagram::Vertex { slots: vec![0] }], loops: 0 };
        let r = graph_homology(&g, &Options::default()).unwrap();
        assert!(r.empty_family);
        assert!(r.floer.as_ref().unwrap().dims.is_empty());
        assert_eq!(r.euler_check(), Verdict::Pass);
    }
}
