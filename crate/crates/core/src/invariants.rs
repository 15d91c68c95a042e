//! Classical link polynomials: Kauffman bracket, Jones, Conway and Alexander.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;

use crate::diagram::{ArcId, Diagram, LinkDiagram};
use crate::error::{Error, Result};
use crate::poly::{conway_to_alexander, normalize_alexander, LaurentPoly, Var};

/// Largest crossing count accepted by the state sum.
pub const DEFAULT_BRACKET_CAP: usize = 24;

/// Skein recursion depth beyond which the Conway computation gives up.
pub const CONWAY_DEPTH_CAP: usize = 4096;

const MEMO_LIMIT: usize = 200_000;

/// `-A^2 - A^-2`, the value of a crossing-free circle.
pub fn delta() -> LaurentPoly {
    LaurentPoly::from_terms(Var::A, &[(4, -1), (-4, -1)])
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        self.0[ra] = rb;
        ra != rb
    }
}

/// Crossings as compact arc indices.
pub(crate) fn compact_crossings(d: &Diagram) -> (Vec<[usize; 4]>, usize) {
    let index: HashMap<ArcId, usize> = d.arc_ids().into_iter().enumerate().map(|(i, a)| (a, i)).collect();
    let cs = d.crossings.iter().map(|c| c.slots.map(|a| index[&a])).collect();
    (cs, index.len())
}

/// Number of circles in the smoothing where bit `i` of `state` set means the
/// B-smoothing at crossing `i`. The A-smoothing joins slots 0-1 and 2-3.
pub(crate) fn circle_count(cs: &[[usize; 4]], arcs: usize, state: u64) -> usize {
    let mut uf = UnionFind::new(arcs);
    let mut circles = arcs;
    for (i, c) in cs.iter().enumerate() {
        let (p, q) = if state >> i & 1 == 0 { ((c[0], c[1]), (c[2], c[3])) } else { ((c[0], c[3]), (c[1], c[2])) };
        circles -= uf.union(p.0, p.1) as usize;
        circles -= uf.union(q.0, q.1) as usize;
    }
    circles
}

/// State sum `Σ A^(a-b) δ^(circles-1)`; crossing orientation is ignored.
pub fn kauffman_bracket_capped(d: &Diagram, cap: usize) -> Result<LaurentPoly> {
    if !d.is_link() {
        return Err(Error::NotALink(format!("{} vertices present", d.vertices.len())));
    }
    let c = d.crossings.len();
    if c > cap {
        return Err(Error::TooManyCrossings { crossings: c, cap });
    }
    if c == 0 && d.loops == 0 {
        // The empty diagram: δ^(-1) is not a Laurent polynomial.
        return Err(Error::NotALink("empty diagram has no bracket".into()));
    }
    let (cs, arcs) = compact_crossings(d);
    let histogram = |range: std::ops::Range<u64>| {
        let mut h: BTreeMap<(u32, usize), u64> = BTreeMap::new();
        for s in range {
            *h.entry((s.count_ones(), circle_count(&cs, arcs, s))).or_default() += 1;
        }
        h
    };
    let total = 1u64 << c;
    #[cfg(feature = "parallel")]
    let hist = {
        let chunk = 1u64 << 12;
        (0..total.div_ceil(chunk))
            .into_par_iter()
            .map(|k| histogram(k * chunk..((k + 1) * chunk).min(total)))
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_default() += v;
                }
                a
            })
    };
    #[cfg(not(feature = "parallel"))]
    let hist = histogram(0..total);
    let dl = delta();
    let mut out = LaurentPoly::zero(&[Var::A]);
    for ((b, circles), count) in hist {
        let circles = circles + d.loops;
        let a = c as i64 - b as i64;
        let mono = LaurentPoly::term(Var::A, 2 * (a - b as i64), count);
        out += &(&mono * &dl.pow((circles - 1) as u32));
    }
    Ok(out)
}

pub fn kauffman_bracket(d: &LinkDiagram) -> Result<LaurentPoly> {
    kauffman_bracket_capped(d.diagram(), DEFAULT_BRACKET_CAP)
}

/// `(-A^3)^(-w) <D>` with `A = t^(-1/4)`.
pub fn jones(d: &LinkDiagram) -> Result<LaurentPoly> {
    jones_capped(d, DEFAULT_BRACKET_CAP)
}

pub fn jones_capped(d: &LinkDiagram, cap: usize) -> Result<LaurentPoly> {
    let b = kauffman_bracket_capped(d.diagram(), cap)?;
    let w = d.writhe() as i64;
    let sign = if w.rem_euclid(2) == 1 { -1 } else { 1 };
    let f = LaurentPoly::term(Var::A, -6 * w, sign);
    // Doubled A exponent 2k becomes doubled t exponent -k/2.
    Ok((&f * &b).map_exponents(&[Var::T], |e| {
        debug_assert_eq!(e[0] % 4, 0);
        vec![-e[0] / 4]
    }))
}

fn memo() -> &'static Mutex<HashMap<Vec<i64>, LaurentPoly>> {
    static MEMO: OnceLock<Mutex<HashMap<Vec<i64>, LaurentPoly>>> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// First crossing met as an under-crossing when each component is traversed
/// from its lowest arc, components taken in order of that arc.
fn first_under_visit(d: &LinkDiagram) -> Option<usize> {
    let (labels, _) = d.split_components();
    let ends = d.arc_ends();
    let mut bases: BTreeMap<usize, ArcId> = BTreeMap::new();
    for (&a, &l) in &labels {
        bases.entry(l).and_modify(|b| *b = (*b).min(a)).or_insert(a);
    }
    let mut order: Vec<ArcId> = bases.into_values().collect();
    order.sort();
    let mut visited = vec![false; d.crossing_count()];
    for base in order {
        let mut arc = base;
        loop {
            let (ci, k) = ends[&arc].1;
            if !visited[ci] {
                if k % 2 == 0 {
                    return Some(ci);
                }
                visited[ci] = true;
            }
            arc = d.crossings()[ci].slots[(k + 2) % 4];
            if arc == base {
                break;
            }
        }
    }
    None
}

/// Conway polynomial in `z` by the skein relation, switching crossings
/// toward a descending diagram.
pub fn conway(d: &LinkDiagram) -> Result<LaurentPoly> {
    conway_rec(d, 0)
}

fn conway_rec(d: &LinkDiagram, depth: usize) -> Result<LaurentPoly> {
    if depth > CONWAY_DEPTH_CAP {
        return Err(Error::RecursionDepth(depth));
    }
    let one = LaurentPoly::one(&[Var::Z]);
    let zero = LaurentPoly::zero(&[Var::Z]);
    if d.crossing_count() == 0 {
        return Ok(if d.component_count() == 1 { one } else { zero });
    }
    let key = d.diagram().canonical_code();
    if let Some(v) = memo().lock().unwrap().get(&key) {
        return Ok(v.clone());
    }
    let value = match first_under_visit(d) {
        None => {
            if d.component_count() == 1 {
                one
            } else {
                zero
            }
        }
        Some(i) => {
            let sign = d.crossings()[i].sign().expect("oriented");
            let switched = conway_rec(&d.switch_crossing(i), depth + 1)?;
            let smoothed = conway_rec(&d.smooth_crossing(i).reduce(), depth + 1)?;
            let z = LaurentPoly::term(Var::Z, 2, sign);
            switched + &z * &smoothed
        }
    };
    let mut m = memo().lock().unwrap();
    if m.len() > MEMO_LIMIT {
        m.clear();
    }
    m.insert(key, value.clone());
    Ok(value)
}

/// Alexander polynomial from Conway, normalized; zero for split links.
pub fn alexander(d: &LinkDiagram) -> Result<LaurentPoly> {
    let a = conway_to_alexander(&conway(d)?);
    if a.is_zero() {
        Ok(a)
    } else {
        normalize_alexander(&a)
    }
}

/// `|∇(2i)|`, which is `|Δ(-1)|` for knots.
pub fn determinant_from_conway(c: &LaurentPoly) -> BigInt {
    let mut re = BigInt::zero();
    let mut im = BigInt::zero();
    for (e, coef) in c.terms() {
        let k = e[0] / 2;
        let v = coef * (BigInt::from(1) << k as usize);
        match k.rem_euclid(4) {
            0 => re += v,
            1 => im += v,
            2 => re -= v,
            _ => im -= v,
        }
    }
    // Exponents share a parity, so one part vanishes.
    (re + im).abs()
}

pub fn determinant(d: &LinkDiagram) -> Result<BigInt> {
    Ok(determinant_from_conway(&conway(d)?))
}

/// Invariants used to compare family members. Equality and order ignore
/// `crossings`, which is only the size of the stored representative.
#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub components: usize,
    pub jones: LaurentPoly,
    pub alexander: LaurentPoly,
    pub crossings: usize,
}

impl Fingerprint {
    fn key(&self) -> (usize, &LaurentPoly, &LaurentPoly) {
        (self.components, &self.jones, &self.alexander)
    }
}

impl PartialEq for Fingerprint {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for Fingerprint {}

impl PartialOrd for Fingerprint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Fingerprint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key().cmp(&other.key())
    }
}

impl std::hash::Hash for Fingerprint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state)
    }
}

pub fn fingerprint(d: &LinkDiagram) -> Result<Fingerprint> {
    let reduced = d.reduce();
    Ok(Fingerprint {
        components: reduced.component_count(),
        jones: jones(&reduced)?,
        alexander: alexander(&reduced)?,
        crossings: reduced.crossing_count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pd(code: &[[ArcId; 4]]) -> LinkDiagram {
        LinkDiagram::from_pd(code).unwrap()
    }

    fn t(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(Var::T, terms)
    }

    #[test]
    fn bracket_basics() {
        assert_eq!(kauffman_bracket(&LinkDiagram::unknot()).unwrap(), LaurentPoly::one(&[Var::A]));
        assert_eq!(kauffman_bracket(&LinkDiagram::unlink(2)).unwrap(), delta());
        let hopf = pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]);
        assert_eq!(kauffman_bracket(&hopf).unwrap(), LaurentPoly::from_terms(Var::A, &[(8, -1), (-8, -1)]));
    }

    #[test]
    fn left_trefoil_jones() {
        let l = pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        assert_eq!(l.writhe(), -3);
        assert_eq!(jones(&l).unwrap(), t(&[(-8, -1), (-6, 1), (-2, 1)]));
        assert_eq!(jones(&l.mirror()).unwrap(), t(&[(8, -1), (6, 1), (2, 1)]));
    }

    #[test]
    fn conway_examples() {
        assert_eq!(conway(&LinkDiagram::unknot()).unwrap(), LaurentPoly::one(&[Var::Z]));
        assert!(conway(&LinkDiagram::unlink(2)).unwrap().is_zero());
        let tre = pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        assert_eq!(conway(&tre).unwrap(), LaurentPoly::from_terms(Var::Z, &[(4, 1), (0, 1)]));
        let hopf = pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]);
        let sign = hopf.crossings()[0].sign().unwrap() as i64;
        assert_eq!(conway(&hopf).unwrap(), LaurentPoly::from_terms(Var::Z, &[(2, sign)]));
        assert_eq!(determinant(&tre).unwrap(), BigInt::from(3));
        assert_eq!(determinant(&hopf).unwrap(), BigInt::from(2));
    }

    #[test]
    fn kink_leaves_jones_unchanged() {
        let kinked = pd(&[[1, 2, 2, 1]]);
        assert_eq!(jones(&kinked).unwrap(), LaurentPoly::one(&[Var::T]));
        let b = kauffman_bracket(&kinked).unwrap();
        assert!(b == LaurentPoly::term(Var::A, 6, -1) || b == LaurentPoly::term(Var::A, -6, -1), "{b}");
    }

    #[test]
    fn fingerprints_separate_chiral_pairs() {
        let tre = pd(&[[1, 4, 2, 5], [3, 6, 4, 1], [5, 2, 6, 3]]);
        assert_ne!(fingerprint(&tre).unwrap(), fingerprint(&tre.mirror()).unwrap());
        let hopf = pd(&[[4, 1, 3, 2], [2, 3, 1, 4]]);
        assert_ne!(fingerprint(&hopf).unwrap(), fingerprint(&LinkDiagram::unlink(2)).unwrap());
        assert_eq!(fingerprint(&pd(&[[1, 2, 2, 1]])).unwrap(), fingerprint(&LinkDiagram::unknot()).unwrap());
    }
}
