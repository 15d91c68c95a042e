//! Bigraded ranks of a homology theory.
//!
//! Both gradings are stored doubled. For Khovanov homology they are the
//! homological and quantum gradings `(i, j)`; for knot Floer homology the
//! Maslov and Alexander gradings `(M, A)`.

use std::collections::BTreeMap;
use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::poly::{euler_substitute, EulerConvention, LaurentPoly, Var};

/// One bigraded group: free rank plus torsion orders.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Cell {
    pub rank: u64,
    pub torsion: Vec<BigInt>,
}

impl Cell {
    pub fn is_zero(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedDims {
    cells: BTreeMap<(i64, i64), Cell>,
}

impl BigradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a summand at doubled gradings `(a, b)`.
    pub fn add(&mut self, a: i64, b: i64, rank: u64, torsion: &[BigInt]) {
        if rank == 0 && torsion.is_empty() {
            return;
        }
        let cell = self.cells.entry((a, b)).or_default();
        cell.rank += rank;
        cell.torsion.extend_from_slice(torsion);
        cell.torsion.sort();
    }

    pub fn get(&self, a: i64, b: i64) -> Option<&Cell> {
        self.cells.get(&(a, b))
    }

    pub fn rank(&self, a: i64, b: i64) -> u64 {
        self.get(a, b).map_or(0, |c| c.rank)
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &Cell)> {
        self.cells.iter().map(|(&k, c)| (k, c))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn total_rank(&self) -> u64 {
        self.cells.values().map(|c| c.rank).sum()
    }

    /// `(a, b, rank)` triples, free part only.
    pub fn ranks(&self) -> Vec<(i64, i64, u64)> {
        self.cells.iter().filter(|(_, c)| c.rank > 0).map(|(&(a, b), c)| (a, b, c.rank)).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out += other;
        out
    }

    /// Every summand repeated `k` times.
    pub fn times(&self, k: u64) -> Self {
        let mut out = Self::new();
        for ((a, b), c) in self.iter() {
            let tor: Vec<BigInt> = (0..k).flat_map(|_| c.torsion.iter().cloned()).collect();
            out.add(a, b, c.rank * k, &tor);
        }
        out
    }

    pub fn shift(&self, da: i64, db: i64) -> Self {
        self.reindex(|a, b| (a + da, b + db))
    }

    pub fn reindex(&self, f: impl Fn(i64, i64) -> (i64, i64)) -> Self {
        let mut out = Self::new();
        for ((a, b), c) in self.iter() {
            let (x, y) = f(a, b);
            out.add(x, y, c.rank, &c.torsion);
        }
        out
    }

    /// Tensor product of the free parts.
    pub fn tensor(&self, other: &Self) -> Self {
        let mut out = Self::new();
        for (a, b, r) in self.ranks() {
            for (x, y, s) in other.ranks() {
                out.add(a + x, b + y, r * s, &[]);
            }
        }
        out
    }

    /// Free ranks as a polynomial, first grading in `vars[0]`.
    pub fn poincare(&self, vars: [Var; 2]) -> LaurentPoly {
        let mut p = LaurentPoly::zero(&vars);
        for (a, b, r) in self.ranks() {
            p.add_term(vec![a, b], BigInt::from(r));
        }
        p
    }

    /// `Σ (-1)^a x^b rank` in the variable `var`.
    pub fn euler(&self, var: Var, conv: EulerConvention) -> Result<LaurentPoly> {
        let e = euler_substitute(&self.poincare([Var::U, Var::T]), conv)?;
        Ok(e.retag(&[var]))
    }
}

impl AddAssign<&BigradedDims> for BigradedDims {
    fn add_assign(&mut self, rhs: &BigradedDims) {
        for ((a, b), c) in rhs.iter() {
            self.add(a, b, c.rank, &c.torsion);
        }
    }
}

struct CellJson<'a>(i64, i64, &'a Cell);

impl Serialize for CellJson<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Cell", 4)?;
        st.serialize_field("a2", &self.0)?;
        st.serialize_field("b2", &self.1)?;
        st.serialize_field("rank", &self.2.rank)?;
        let tor: Vec<serde_json::Value> = self
            .2
            .torsion
            .iter()
            .map(|t| t.to_i64().map_or_else(|| serde_json::Value::String(t.to_string()), serde_json::Value::from))
            .collect();
        st.serialize_field("torsion", &tor)?;
        st.end()
    }
}

/// A list of `{"a2", "b2", "rank", "torsion"}` cells in grading order, with
/// both gradings doubled.
impl Serialize for BigradedDims {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.cells.iter().map(|(&(a, b), c)| CellJson(a, b, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_and_tensors() {
        let mut x = BigradedDims::new();
        x.add(1, 0, 1, &[]);
        x.add(-1, 0, 1, &[]);
        let xx = x.tensor(&x);
        assert_eq!(xx.ranks(), vec![(-2, 0, 1), (0, 0, 2), (2, 0, 1)]);
        assert_eq!(xx.direct_sum(&x).total_rank(), 6);
        assert!(x.euler(Var::T, EulerConvention::HalfShift).unwrap().is_zero());
    }

    #[test]
    fn zero_cells_are_dropped() {
        let mut d = BigradedDims::new();
        d.add(0, 0, 0, &[]);
        assert!(d.is_empty());
        d.add(0, 2, 0, &[BigInt::from(2)]);
        assert_eq!(serde_json::to_string(&d).unwrap(), r#"[{"a2":0,"b2":2,"rank":0,"torsion":[2]}]"#);
    }
}
