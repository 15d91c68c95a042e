//! Khovanov homology from the cube of resolutions.
//!
//! Bit `b` of a cube vertex is the smoothing at crossing `b`: 0 is the
//! A-smoothing (slots 0-1 and 2-3 joined), 1 the B-smoothing. A generator
//! labels every circle of a resolution with `1` (degree +1) or `x` (degree
//! -1); in a label mask a set bit means `x`. The gradings are
//! `i = |v| - n₋` and `j = deg + |v| + n₊ - 2n₋`, and the graded Euler
//! characteristic is `(q + q⁻¹) J(t)` at `q = -t^(1/2)`.

use std::collections::{BTreeMap, HashMap};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use num_bigint::BigInt;
use serde::Serialize;

use crate::diagram::LinkDiagram;
use crate::dims::BigradedDims;
use crate::error::{Error, Result};
use crate::invariants::{compact_crossings, jones};
use crate::kauffman::LinkFamily;
use crate::linalg::{f2, smith_invariants, Triplets};
use crate::poly::{EulerConvention, LaurentPoly, Var};

pub const DEFAULT_CROSSING_CAP: usize = 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Coeffs {
    Z,
    F2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Merge,
    Split,
}

#[derive(Clone, Debug)]
pub struct ResolutionCube {
    crossings: Vec<[usize; 4]>,
    arcs: usize,
    loops: usize,
    pub n_plus: usize,
    pub n_minus: usize,
    /// Circle of each arc, per vertex; circles numbered by first arc.
    labels: Vec<Vec<u8>>,
    circles: Vec<u8>,
}

impl ResolutionCube {
    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.circles.len()
    }

    /// Circle count `k(v)`, free loops included.
    pub fn circles(&self, v: usize) -> usize {
        self.circles[v] as usize
    }

    /// Edge from `v` (bit `b` clear) to `v | 1 << b`, with its sign.
    pub fn edge(&self, v: usize, b: usize) -> (EdgeKind, i64) {
        assert_eq!(v >> b & 1, 0, "edge must leave a vertex with bit {b} clear");
        let kind = if self.circles[v | 1 << b] < self.circles[v] { EdgeKind::Merge } else { EdgeKind::Split };
        (kind, edge_sign(v, b))
    }

    /// Image in `v | 1 << b` of each circle of `v` away from crossing `b`,
    /// the circles of `v` at the crossing, and the circles of the target
    /// there (one for a merge, two for a split).
    fn circle_map(&self, v: usize, b: usize) -> (Vec<u8>, Vec<u8>, Vec<u8>) {
        let w = v | 1 << b;
        let (lv, lw) = (&self.labels[v], &self.labels[w]);
        let mut map = vec![u8::MAX; self.circles[v] as usize];
        for a in 0..self.arcs {
            map[lv[a] as usize] = lw[a];
        }
        let (arc_v, arc_w) = (self.circles[v] as usize - self.loops, self.circles[w] as usize - self.loops);
        for l in 0..self.loops {
            map[arc_v + l] = (arc_w + l) as u8;
        }
        let x = self.crossings[b];
        if self.circles[w] < self.circles[v] {
            (map, vec![lv[x[0]], lv[x[2]]], vec![lw[x[0]]])
        } else {
            (map, vec![lv[x[0]]], vec![lw[x[0]], lw[x[1]]])
        }
    }
}

fn edge_sign(v: usize, b: usize) -> i64 {
    if (v & ((1 << b) - 1)).count_ones().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn build_cube(d: &LinkDiagram) -> Result<ResolutionCube> {
    build_cube_capped(d, DEFAULT_CROSSING_CAP)
}

pub fn build_cube_capped(d: &LinkDiagram, cap: usize) -> Result<ResolutionCube> {
    let c = d.crossing_count();
    if c > cap {
        return Err(Error::TooManyCrossings { crossings: c, cap });
    }
    let (cs, arcs) = compact_crossings(d.diagram());
    let loops = d.loops();
    if arcs + loops > 48 {
        return Err(Error::TooManyCrossings { crossings: c, cap });
    }
    let resolve = |v: usize| -> (Vec<u8>, u8) {
        let mut parent: Vec<usize> = (0..arcs).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for (b, x) in cs.iter().enumerate() {
            let pairs = if v >> b & 1 == 0 { [(x[0], x[1]), (x[2], x[3])] } else { [(x[0], x[3]), (x[1], x[2])] };
            for (p, q) in pairs {
                let (rp, rq) = (find(&mut parent, p), find(&mut parent, q));
                parent[rp] = rq;
            }
        }
        let mut label = vec![u8::MAX; arcs];
        let mut root_label: HashMap<usize, u8> = HashMap::new();
        for a in 0..arcs {
            let r = find(&mut parent, a);
            let next = root_label.len() as u8;
            label[a] = *root_label.entry(r).or_insert(next);
        }
        let k = root_label.len() + loops;
        (label, k as u8)
    };
    let states = 1usize << c;
    #[cfg(feature = "parallel")]
    let resolved: Vec<(Vec<u8>, u8)> = (0..states).into_par_iter().map(resolve).collect();
    #[cfg(not(feature = "parallel"))]
    let resolved: Vec<(Vec<u8>, u8)> = (0..states).map(resolve).collect();
    let (labels, circles) = resolved.into_iter().unzip();
    let (n_plus, n_minus) = d.signs();
    Ok(ResolutionCube { crossings: cs, arcs, loops, n_plus, n_minus, labels, circles })
}

/// The chain complex split into quantum blocks. Gradings here are the
/// unshifted `(|v|, deg + |v|)`.
pub struct KhovanovComplex {
    pub n_plus: usize,
    pub n_minus: usize,
    /// Rank of each chain group.
    pub groups: BTreeMap<(i64, i64), usize>,
    /// `d: C^(i,j) -> C^(i+1,j)` keyed by its source.
    pub differentials: BTreeMap<(i64, i64), Triplets>,
}

impl KhovanovComplex {
    pub fn new(cube: &ResolutionCube) -> Self {
        let c = cube.crossing_count();
        let mut groups: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        // Index of every generator inside its block.
        let mut index: Vec<Vec<u32>> = Vec::with_capacity(cube.vertex_count());
        for v in 0..cube.vertex_count() {
            let k = cube.circles(v);
            let h = v.count_ones() as i64;
            let mut idx = Vec::with_capacity(1 << k);
            for mask in 0u64..1 << k {
                let deg = k as i64 - 2 * mask.count_ones() as i64;
                let slot = groups.entry((h, deg + h)).or_default();
                idx.push(*slot as u32);
                *slot += 1;
            }
            index.push(idx);
        }
        let mut differentials: BTreeMap<(i64, i64), Triplets> = BTreeMap::new();
        for (&(i, j), &n) in &groups {
            let m = groups.get(&(i + 1, j)).copied().unwrap_or(0);
            differentials.insert((i, j), Triplets::new(m, n));
        }
        for v in 0..cube.vertex_count() {
            let k = cube.circles(v);
            let h = v.count_ones() as i64;
            for b in (0..c).filter(|&b| v >> b & 1 == 0) {
                let w = v | 1 << b;
                let (kind, sign) = cube.edge(v, b);
                let (map, from, to) = cube.circle_map(v, b);
                let mut rest = (1u64 << k) - 1;
                for &f in &from {
                    rest &= !(1 << f);
                }
                for mask in 0u64..1 << k {
                    let deg = k as i64 - 2 * mask.count_ones() as i64;
                    let key = (h, deg + h);
                    let src = index[v][mask as usize] as usize;
                    let mut out = 0u64;
                    let mut m = mask & rest;
                    while m != 0 {
                        let circ = m.trailing_zeros() as usize;
                        out |= 1 << map[circ];
                        m &= m - 1;
                    }
                    let block = differentials.get_mut(&key).expect("every group has a differential");
                    let xs = from.iter().filter(|&&f| mask >> f & 1 == 1).count();
                    let mut push = |m: u64| block.push(index[w][m as usize] as usize, src, sign);
                    match kind {
                        // m(1⊗1) = 1, m(1⊗x) = m(x⊗1) = x, m(x⊗x) = 0
                        EdgeKind::Merge => match xs {
                            0 => push(out),
                            1 => push(out | 1 << to[0]),
                            _ => {}
                        },
                        // Δ(1) = 1⊗x + x⊗1, Δ(x) = x⊗x
                        EdgeKind::Split => {
                            if xs == 1 {
                                push(out | 1 << to[0] | 1 << to[1]);
                            } else {
                                push(out | 1 << to[1]);
                                push(out | 1 << to[0]);
                            }
                        }
                    }
                }
            }
        }
        KhovanovComplex { n_plus: cube.n_plus, n_minus: cube.n_minus, groups, differentials }
    }

    /// Checks that every composite of consecutive differentials vanishes.
    pub fn d_squared_is_zero(&self) -> bool {
        self.differentials.iter().all(|(&(i, j), d)| self.differentials.get(&(i + 1, j)).is_none_or(|e| e.product_is_zero(d, false)))
    }

    pub fn homology(&self, coeffs: Coeffs) -> BigradedDims {
        let keys: Vec<(i64, i64)> = self.differentials.keys().copied().collect();
        let work = |k: &(i64, i64)| {
            let d = &self.differentials[k];
            match coeffs {
                Coeffs::Z => {
                    let inv = smith_invariants(d);
                    (*k, inv.rank, inv.torsion)
                }
                Coeffs::F2 => (*k, f2::rank(d), Vec::new()),
            }
        };
        #[cfg(feature = "parallel")]
        let done: Vec<((i64, i64), usize, Vec<BigInt>)> = keys.par_iter().map(work).collect();
        #[cfg(not(feature = "parallel"))]
        let done: Vec<((i64, i64), usize, Vec<BigInt>)> = keys.iter().map(work).collect();
        let ranks: HashMap<(i64, i64), (usize, Vec<BigInt>)> = done.into_iter().map(|(k, r, t)| (k, (r, t))).collect();
        let (np, nm) = (self.n_plus as i64, self.n_minus as i64);
        let mut out = BigradedDims::new();
        for (&(i, j), &n) in &self.groups {
            let outgoing = ranks.get(&(i, j)).map_or(0, |r| r.0);
            let (incoming, torsion) = ranks.get(&(i - 1, j)).map_or((0, &[][..]), |r| (r.0, &r.1[..]));
            let free = n - outgoing - incoming;
            out.add(2 * (i - nm), 2 * (j + np - 2 * nm), free as u64, torsion);
        }
        out
    }
}

pub fn khovanov_homology(d: &LinkDiagram, coeffs: Coeffs) -> Result<BigradedDims> {
    khovanov_homology_capped(d, coeffs, DEFAULT_CROSSING_CAP)
}

pub fn khovanov_homology_capped(d: &LinkDiagram, coeffs: Coeffs, cap: usize) -> Result<BigradedDims> {
    let cube = build_cube_capped(d, cap)?;
    Ok(KhovanovComplex::new(&cube).homology(coeffs))
}

/// `Σ (-1)^i q^j rank`, a polynomial in `q`.
pub fn euler_characteristic(h: &BigradedDims) -> LaurentPoly {
    h.euler(Var::Q, EulerConvention::Strict).expect("Khovanov homological gradings are integers")
}

/// `(q + q⁻¹) J` with `t^(1/2) = -q`.
pub fn unnormalized_jones(d: &LinkDiagram) -> Result<LaurentPoly> {
    let j = jones(d)?;
    let mut q = LaurentPoly::zero(&[Var::Q]);
    for (e, c) in j.terms() {
        let c = if e[0].rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
        q.add_term(vec![2 * e[0]], c);
    }
    Ok(&q * &LaurentPoly::from_terms(Var::Q, &[(2, 1), (-2, 1)]))
}

/// Homology of each member in family order; members over the cap are
/// reported by their errors.
pub fn kkh_members(f: &LinkFamily, coeffs: Coeffs, cap: usize) -> Vec<Result<BigradedDims>> {
    #[cfg(feature = "parallel")]
    let it = f.members.par_iter();
    #[cfg(not(feature = "parallel"))]
    let it = f.members.iter();
    it.map(|m| khovanov_homology_capped(&m.diagram, coeffs, cap)).collect()
}

/// Direct sum of the Khovanov homologies of the distinct family members.
pub fn kkh_family(f: &LinkFamily, coeffs: Coeffs) -> Result<BigradedDims> {
    let mut sum = BigradedDims::new();
    let mut done = Vec::new();
    let mut failed = Vec::new();
    for (i, r) in kkh_members(f, coeffs, DEFAULT_CROSSING_CAP).into_iter().enumerate() {
        match r {
            Ok(h) => {
                sum += &h;
                done.push(i);
            }
            Err(e) => failed.push(format!("member {i}: {e}")),
        }
    }
    if failed.is_empty() {
        Ok(sum)
    } else {
        Err(Error::Partial { completed: done, skipped: failed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census;

    fn ranks(h: &BigradedDims) -> Vec<(i64, i64, u64)> {
        h.ranks().into_iter().map(|(i, j, r)| (i / 2, j / 2, r)).collect()
    }

    #[test]
    fn unknot_and_kink() {
        let u = LinkDiagram::unknot();
        let cube = build_cube(&u).unwrap();
        assert_eq!((cube.vertex_count(), cube.circles(0)), (1, 1));
        let h = khovanov_homology(&u, Coeffs::Z).unwrap();
        assert_eq!(ranks(&h), vec![(0, -1, 1), (0, 1, 1)]);
        let k = LinkDiagram::from_pd(&[[1, 2, 2, 1]]).unwrap();
        let cube = build_cube(&k).unwrap();
        let mut ks = [cube.circles(0), cube.circles(1)];
        ks.sort();
        assert_eq!(ks, [1, 2]);
        assert_eq!(khovanov_homology(&k, Coeffs::Z).unwrap(), h);
    }

    #[test]
    fn hopf_cube_and_homology() {
        let hopf = census::link("L2a1").unwrap();
        let cube = build_cube(&hopf).unwrap();
        let ks: Vec<usize> = (0..4).map(|v| cube.circles(v)).collect();
        assert_eq!(ks[0] + ks[3], 4);
        assert_eq!((ks[1], ks[2]), (1, 1));
        let positive = if hopf.writhe() > 0 { hopf.clone() } else { hopf.mirror() };
        let h = khovanov_homology(&positive, Coeffs::Z).unwrap();
        assert_eq!(ranks(&h), vec![(0, 0, 1), (0, 2, 1), (2, 4, 1), (2, 6, 1)]);
    }

    #[test]
    fn trefoil_has_two_torsion() {
        let left = census::link("3_1").unwrap();
        let right = left.mirror();
        let h = khovanov_homology(&right, Coeffs::Z).unwrap();
        assert_eq!(ranks(&h), vec![(0, 1, 1), (0, 3, 1), (2, 5, 1), (3, 9, 1)]);
        assert_eq!(h.get(6, 14).unwrap().torsion, vec![BigInt::from(2)]);
        let f = khovanov_homology(&right, Coeffs::F2).unwrap();
        assert_eq!(f.total_rank(), 6);
        assert_eq!(euler_characteristic(&h), unnormalized_jones(&right).unwrap());
    }

    #[test]
    fn squares_anticommute() {
        for name in ["3_1", "4_1", "L2a1", "5_2"] {
            let l = census::link(name).unwrap();
            assert!(KhovanovComplex::new(&build_cube(&l).unwrap()).d_squared_is_zero(), "{name}");
        }
    }

    #[test]
    fn cap_is_enforced() {
        let l = census::link("7_1").unwrap();
        assert!(matches!(khovanov_homology_capped(&l, Coeffs::F2, 5), Err(Error::TooManyCrossings { .. })));
    }
}
