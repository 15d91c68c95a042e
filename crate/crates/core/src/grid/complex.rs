//! The tilde grid complex over F2 and its hat deconvolution.

use std::collections::{BTreeMap, HashMap};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::gradings::Grader;
use super::{pd_to_grid, simplify_grid, GridDiagram};
use crate::diagram::LinkDiagram;
use crate::dims::BigradedDims;
use crate::error::{Error, Result};
use crate::linalg::{f2, Triplets};

pub const DEFAULT_GRID_CAP: usize = 8;

/// Size and memory limits for grid complexes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridLimits {
    pub max_n: usize,
    /// Bytes; `None` disables the guard.
    pub max_mem: Option<u128>,
}

impl Default for GridLimits {
    fn default() -> Self {
        Self::from_env(DEFAULT_GRID_CAP)
    }
}

impl GridLimits {
    pub fn new(max_n: usize) -> Self {
        GridLimits { max_n, max_mem: None }
    }

    /// Reads the memory limit from `GRAPHHOM_MAX_MEM` (bytes, optional
    /// K/M/G suffix).
    pub fn from_env(max_n: usize) -> Self {
        let max_mem = std::env::var("GRAPHHOM_MAX_MEM").ok().and_then(|v| parse_bytes(&v));
        GridLimits { max_n, max_mem }
    }

    pub fn check(&self, n: usize) -> Result<()> {
        let generators = factorial(n);
        if n > self.max_n {
            return Err(Error::GridTooLarge { n, cap: self.max_n, generators });
        }
        let needed = estimated_bytes(n);
        match self.max_mem {
            Some(limit) if needed > limit => Err(Error::MemoryLimit { needed, limit }),
            _ => Ok(()),
        }
    }
}

pub(crate) fn parse_bytes(s: &str) -> Option<u128> {
    let s = s.trim();
    let (num, mult) = match s.chars().last()?.to_ascii_uppercase() {
        'K' => (&s[..s.len() - 1], 1u128 << 10),
        'M' => (&s[..s.len() - 1], 1 << 20),
        'G' => (&s[..s.len() - 1], 1 << 30),
        _ => (s, 1),
    };
    num.trim().parse::<u128>().ok().map(|v| v * mult)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rough peak footprint of a tilde complex on an `n × n` grid.
pub fn estimated_bytes(n: usize) -> u128 {
    factorial(n) * (n as u128 * n as u128 * 8 + 128)
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::with_capacity(factorial(n) as usize);
    let mut p: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| p[i] < p[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("successor exists");
        p.swap(i, j);
        p[i + 1..].reverse();
    }
    out
}

/// Lexicographic rank of a permutation.
fn perm_rank(p: &[u8]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&v| v < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rectangles {
    /// No X, no O.
    Tilde,
    /// No O; X allowed.
    AvoidO,
}

/// Targets of the rectangles out of state `y`, reduced mod 2.
fn boundary(g: &GridDiagram, y: &[u8], kind: Rectangles) -> Vec<usize> {
    let n = g.n;
    let mut out = Vec::new();
    let mut z = y.to_vec();
    for a in 0..n {
        for b in 0..n {
            if a == b {
                continue;
            }
            let w = (b + n - a) % n;
            let (ya, yb) = (y[a] as usize, y[b] as usize);
            let h = (yb + n - ya) % n;
            let blocked = (1..w).any(|k| {
                let d = (y[(a + k) % n] as usize + n - ya) % n;
                d > 0 && d < h
            });
            if blocked {
                continue;
            }
            let marked = (0..h).any(|k| {
                let r = (ya + k) % n;
                (g.o[r] + n - a) % n < w || (kind == Rectangles::Tilde && (g.x[r] + n - a) % n < w)
            });
            if marked {
                continue;
            }
            z.swap(a, b);
            out.push(perm_rank(&z));
            z.swap(a, b);
        }
    }
    out.sort_unstable();
    // Pairs of rectangles with the same target cancel.
    let mut reduced = Vec::with_capacity(out.len());
    let mut i = 0;
    while i < out.len() {
        let j = out[i..].iter().take_while(|&&v| v == out[i]).count();
        if j % 2 == 1 {
            reduced.push(out[i]);
        }
        i += j;
    }
    reduced
}

/// Generators with gradings and boundaries.
pub struct TildeComplex {
    pub n: usize,
    pub components: usize,
    /// `(M, 2A)` per generator, indexed by lexicographic rank.
    pub gradings: Vec<(i64, i64)>,
    pub boundary: Vec<Vec<usize>>,
    avoid_o_only: bool,
}

fn build(g: &GridDiagram, kind: Rectangles, limits: &GridLimits) -> Result<TildeComplex> {
    g.check()?;
    limits.check(g.n)?;
    let gens = permutations(g.n);
    let grader = Grader::new(g);
    let work = |y: &Vec<u8>| {
        let yy: Vec<usize> = y.iter().map(|&v| v as usize).collect();
        (grader.grade(&yy), boundary(g, y, kind))
    };
    #[cfg(feature = "parallel")]
    let data: Vec<((i64, i64), Vec<usize>)> = gens.par_iter().map(work).collect();
    #[cfg(not(feature = "parallel"))]
    let data: Vec<((i64, i64), Vec<usize>)> = gens.iter().map(work).collect();
    let (gradings, boundary) = data.into_iter().unzip();
    Ok(TildeComplex { n: g.n, components: g.components(), gradings, boundary, avoid_o_only: kind == Rectangles::AvoidO })
}

pub fn tilde_complex(g: &GridDiagram, limits: &GridLimits) -> Result<TildeComplex> {
    build(g, Rectangles::Tilde, limits)
}

impl TildeComplex {
    pub fn generator_count(&self) -> usize {
        self.gradings.len()
    }

    fn key(&self, i: usize) -> (i64, i64) {
        let (m, a) = self.gradings[i];
        if self.avoid_o_only {
            (m, 0)
        } else {
            (m, a)
        }
    }

    /// Whether the boundary squares to zero mod 2.
    pub fn d_squared_is_zero(&self) -> bool {
        let check = |x: usize| {
            let mut count: HashMap<usize, u32> = HashMap::new();
            for &y in &self.boundary[x] {
                for &z in &self.boundary[y] {
                    *count.entry(z).or_default() += 1;
                }
            }
            count.values().all(|c| c % 2 == 0)
        };
        #[cfg(feature = "parallel")]
        return (0..self.generator_count()).into_par_iter().all(check);
        #[cfg(not(feature = "parallel"))]
        (0..self.generator_count()).all(check)
    }

    /// Whether every boundary term drops the Maslov grading by one (and,
    /// for the tilde complex, keeps the Alexander grading).
    pub fn gradings_are_consistent(&self) -> bool {
        (0..self.generator_count()).all(|x| {
            self.boundary[x].iter().all(|&y| {
                let (kx, ky) = (self.key(x), self.key(y));
                ky == (kx.0 - 1, kx.1)
            })
        })
    }

    /// Ranks of the homology at `(M, 2A)` (the second entry is 0 for the
    /// complex that ignores X), undoubled Maslov grading.
    pub fn homology_ranks(&self) -> BTreeMap<(i64, i64), u64> {
        let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
        let mut local = vec![0usize; self.generator_count()];
        for x in 0..self.generator_count() {
            let b = blocks.entry(self.key(x)).or_default();
            local[x] = b.len();
            b.push(x);
        }
        let keys: Vec<(i64, i64)> = blocks.keys().copied().collect();
        let rank_out = |k: &(i64, i64)| {
            let src = &blocks[k];
            let rows = blocks.get(&(k.0 - 1, k.1)).map_or(0, |b| b.len());
            let mut t = Triplets::new(rows, src.len());
            for (c, &x) in src.iter().enumerate() {
                for &y in &self.boundary[x] {
                    t.push(local[y], c, 1);
                }
            }
            (*k, f2::rank(&t))
        };
        #[cfg(feature = "parallel")]
        let ranks: HashMap<(i64, i64), usize> = keys.par_iter().map(rank_out).collect();
        #[cfg(not(feature = "parallel"))]
        let ranks: HashMap<(i64, i64), usize> = keys.iter().map(rank_out).collect();
        let mut out = BTreeMap::new();
        for (k, gens) in &blocks {
            let h = gens.len() - ranks[k] - ranks.get(&(k.0 + 1, k.1)).copied().unwrap_or(0);
            if h > 0 {
                out.insert(*k, h as u64);
            }
        }
        out
    }

    /// Homology as doubled `(M, A)` dims.
    pub fn homology(&self) -> BigradedDims {
        let mut d = BigradedDims::new();
        for ((m, a), r) in self.homology_ranks() {
            d.add(2 * m, a, r, &[]);
        }
        d
    }
}

/// Homology of the tilde complex, doubled `(M, A)`.
pub fn tilde_homology(g: &GridDiagram, limits: &GridLimits) -> Result<BigradedDims> {
    Ok(tilde_complex(g, limits)?.homology())
}

/// Divides a doubled-grading rank table by `(1 + u⁻¹t⁻¹)^k`; the quotient
/// must be exact with nonnegative ranks.
pub fn deconvolve(d: &BigradedDims, k: usize) -> Result<BigradedDims> {
    let mut cur: BTreeMap<(i64, i64), i64> = d.ranks().into_iter().map(|(a, b, r)| ((a, b), r as i64)).collect();
    for step in 0..k {
        let mut q: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        // Highest Maslov grading first: Q[m] = P[m] - Q[m + (2, 2)].
        for (&(a, b), &p) in cur.iter().rev() {
            let above = q.get(&(a + 2, b + 2)).copied().unwrap_or(0);
            let v = p - above;
            if v != 0 {
                q.insert((a, b), v);
            }
        }
        let mut back: BTreeMap<(i64, i64), i64> = BTreeMap::new();
        for (&(a, b), &v) in &q {
            *back.entry((a, b)).or_default() += v;
            *back.entry((a - 2, b - 2)).or_default() += v;
        }
        back.retain(|_, v| *v != 0);
        if back != cur || q.values().any(|&v| v < 0) {
            return Err(Error::Deconvolution(format!("step {} of {k}: table {:?} is not divisible by (1 + u^-1 t^-1)", step + 1, cur)));
        }
        cur = q;
    }
    let mut out = BigradedDims::new();
    for ((a, b), r) in cur {
        out.add(a, b, r as u64, &[]);
    }
    Ok(out)
}

/// Knot Floer homology from a grid: the tilde homology divided by
/// `(1 + u⁻¹t⁻¹)^(n-ℓ)`, Maslov grading shifted up by `(ℓ-1)/2`.
pub fn hfk_hat_of_grid(g: &GridDiagram, limits: &GridLimits) -> Result<BigradedDims> {
    let c = tilde_complex(g, limits)?;
    let l = c.components;
    Ok(deconvolve(&c.homology(), g.n - l)?.shift(l as i64 - 1, 0))
}

pub fn hfk_hat(d: &LinkDiagram, limits: &GridLimits) -> Result<BigradedDims> {
    let g = simplify_grid(&pd_to_grid(d)?);
    hfk_hat_of_grid(&g, limits)
}

/// Homology of the complex counting rectangles that avoid the O markers,
/// divided by `(1 + u⁻¹)^(n-ℓ)` and shifted as for the hat version; graded
/// by Maslov only (second grading 0).
pub fn total_homology(g: &GridDiagram, limits: &GridLimits) -> Result<BigradedDims> {
    let c = build(g, Rectangles::AvoidO, limits)?;
    let l = c.components;
    let raw = c.homology();
    // Dividing by 1 + u^-1 alone: lift to the diagonal and reuse deconvolve.
    let lifted = raw.reindex(|a, _| (a, a));
    Ok(deconvolve(&lifted, g.n - l)?.reindex(|a, _| (a, 0)).shift(l as i64 - 1, 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_ranks() {
        let ps = permutations(4);
        assert_eq!(ps.len(), 24);
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(perm_rank(p), i);
        }
    }

    #[test]
    fn unknot_tilde() {
        let g = GridDiagram::unknot();
        let c = tilde_complex(&g, &GridLimits::new(8)).unwrap();
        assert!(c.d_squared_is_zero());
        assert_eq!(c.homology().ranks(), vec![(-2, -2, 1), (0, 0, 1)]);
        assert_eq!(hfk_hat_of_grid(&g, &GridLimits::new(8)).unwrap().ranks(), vec![(0, 0, 1)]);
    }

    #[test]
    fn limits() {
        assert!(matches!(GridLimits::new(4).check(5), Err(Error::GridTooLarge { .. })));
        let l = GridLimits { max_n: 8, max_mem: Some(1000) };
        assert!(matches!(l.check(6), Err(Error::MemoryLimit { .. })));
        assert_eq!(parse_bytes("2K"), Some(2048));
        assert_eq!(parse_bytes("12"), Some(12));
        assert_eq!(parse_bytes("x"), None);
    }

    #[test]
    fn deconvolution_rejects_inexact_tables() {
        let mut d = BigradedDims::new();
        d.add(0, 0, 1, &[]);
        assert!(deconvolve(&d, 1).is_err());
        d.add(-2, -2, 1, &[]);
        assert_eq!(deconvolve(&d, 1).unwrap().ranks(), vec![(0, 0, 1)]);
    }
}
