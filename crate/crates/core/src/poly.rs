//! Exact Laurent polynomials with half-integer exponents.
//!
//! Every exponent is stored doubled, so `t^(1/2)` has stored exponent `1`
//! and `t^2` has stored exponent `4`. Coefficients are arbitrary-precision
//! integers; no zero coefficient is ever kept in the term map.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Variable tags.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    A,
    T,
    Q,
    Z,
    U,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::A => "A",
            Var::T => "t",
            Var::Q => "q",
            Var::Z => "z",
            Var::U => "u",
        }
    }
}

/// Exponent vector, one doubled exponent per variable.
pub type Exps = Vec<i64>;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Exps, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &[Var]) -> Self {
        LaurentPoly { vars: vars.to_vec(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::constant(vars, 1)
    }

    pub fn constant(vars: &[Var], c: impl Into<BigInt>) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    /// `c * prod(var_i ^ (doubled_i / 2))`.
    pub fn monomial(vars: &[Var], doubled: Exps, c: impl Into<BigInt>) -> Self {
        assert_eq!(vars.len(), doubled.len(), "exponent arity mismatch");
        let mut p = Self::zero(vars);
        p.add_term(doubled, c.into());
        p
    }

    /// Single-variable shorthand: `c * v^(doubled/2)`.
    pub fn term(v: Var, doubled: i64, c: impl Into<BigInt>) -> Self {
        Self::monomial(&[v], vec![doubled], c)
    }

    /// Builds a one-variable polynomial from `(doubled exponent, coefficient)` pairs.
    pub fn from_terms(v: Var, terms: &[(i64, i64)]) -> Self {
        let mut p = Self::zero(&[v]);
        for &(e, c) in terms {
            p.add_term(vec![e], BigInt::from(c));
        }
        p
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exps, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, doubled: &[i64]) -> BigInt {
        self.terms.get(doubled).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, doubled: Exps, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(doubled) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_tags(&self, other: &Self) -> Result<()> {
        if self.vars != other.vars {
            return Err(Error::VarMismatch { left: self.vars.clone(), right: other.vars.clone() });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.check_tags(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.check_tags(other)?;
        let mut acc: BTreeMap<Exps, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exps = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                *acc.entry(e).or_default() += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Ok(LaurentPoly { vars: self.vars.clone(), terms: acc })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one(&self.vars);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Multiplies by the monomial with the given doubled exponents.
    pub fn shift(&self, doubled: &[i64]) -> Self {
        assert_eq!(doubled.len(), self.vars.len());
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| (e.iter().zip(doubled).map(|(x, y)| x + y).collect(), c.clone()))
            .collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect();
        LaurentPoly { vars: self.vars.clone(), terms }
    }

    /// Applies `f` to every exponent vector, producing a polynomial in `vars`.
    pub fn map_exponents(&self, vars: &[Var], f: impl Fn(&[i64]) -> Exps) -> Self {
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            out.add_term(f(e), c.clone());
        }
        out
    }

    /// Replaces the variable tags without touching exponents.
    pub fn retag(&self, vars: &[Var]) -> Self {
        assert_eq!(vars.len(), self.vars.len());
        LaurentPoly { vars: vars.to_vec(), terms: self.terms.clone() }
    }

    /// `t -> t^-1` on every variable.
    pub fn invert(&self) -> Self {
        self.map_exponents(&self.vars, |e| e.iter().map(|x| -x).collect())
    }

    /// Minimum and maximum doubled exponent of variable `idx`.
    pub fn span(&self, idx: usize) -> Option<(i64, i64)> {
        let mut it = self.terms.keys().map(|e| e[idx]);
        let first = it.next()?;
        Some(it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x))))
    }

    /// Sum of all coefficients (evaluation at 1).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    pub fn all_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// Evaluates a one-variable polynomial with integer exponents at `x = -1`.
    pub fn eval_minus_one(&self) -> Result<BigInt> {
        let mut s = BigInt::zero();
        for (e, c) in &self.terms {
            if e.iter().any(|x| x % 2 != 0) {
                return Err(Error::HalfIntegerExponent);
            }
            let odd = e.iter().map(|x| x / 2).sum::<i64>().rem_euclid(2) == 1;
            if odd {
                s -= c;
            } else {
                s += c;
            }
        }
        Ok(s)
    }

    /// Leading (highest exponent) coefficient of a one-variable polynomial.
    pub fn leading(&self) -> Option<&BigInt> {
        self.terms.iter().next_back().map(|(_, c)| c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs).expect("polynomial variable mismatch")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        self.check_tags(rhs).expect("polynomial variable mismatch");
        for (e, c) in &rhs.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs).expect("polynomial variable mismatch")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

fn fmt_exp(v: Var, doubled: i64) -> String {
    match doubled {
        0 => String::new(),
        2 => v.symbol().to_string(),
        d if d % 2 == 0 => format!("{}^{}", v.symbol(), d / 2),
        d => format!("{}^({}/2)", v.symbol(), d),
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest exponent first reads like the usual tables.
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> =
                self.vars.iter().zip(e).map(|(v, d)| fmt_exp(*v, *d)).filter(|s| !s.is_empty()).collect();
            let mono = mono.join("*");
            let neg = c.is_negative();
            let mag = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

/// JSON form: `{"2*exp": coeff}` keyed by the doubled exponents, comma
/// separated for two variables. Coefficients beyond `i64` become strings.
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            let key = e.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
            match c.to_i64() {
                Some(v) => m.serialize_entry(&key, &v)?,
                None => m.serialize_entry(&key, &c.to_string())?,
            }
        }
        m.end()
    }
}

/// Two-variable Poincaré polynomial in `(u, t)` with nonnegative coefficients.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct PoincarePoly(LaurentPoly);

/// How half-integer `u` exponents are treated when substituting `u = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EulerConvention {
    /// Reject any half-integer `u` exponent.
    Strict,
    /// A term at doubled grading `m` carries sign `(-1)^floor(m/2)`, i.e. the
    /// complex is shifted up by `u^(1/2)` before substituting.
    HalfShift,
}

impl PoincarePoly {
    pub const VARS: [Var; 2] = [Var::U, Var::T];

    pub fn new(p: LaurentPoly) -> Result<Self> {
        if p.vars() != Self::VARS {
            return Err(Error::VarMismatch { left: p.vars().to_vec(), right: Self::VARS.to_vec() });
        }
        if !p.all_nonnegative() {
            return Err(Error::NegativePoincare);
        }
        Ok(PoincarePoly(p))
    }

    pub fn poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn into_inner(self) -> LaurentPoly {
        self.0
    }

    /// Collapses the `t` variable, keeping the `u` grading.
    pub fn total(&self) -> LaurentPoly {
        self.0.map_exponents(&[Var::U], |e| vec![e[0]])
    }

    pub fn euler_substitute(&self, conv: EulerConvention) -> Result<LaurentPoly> {
        euler_substitute(&self.0, conv)
    }
}

/// Substitutes `u = -1` in a `(u, t)` polynomial, leaving a polynomial in `t`.
pub fn euler_substitute(p: &LaurentPoly, conv: EulerConvention) -> Result<LaurentPoly> {
    if p.vars() != PoincarePoly::VARS {
        return Err(Error::VarMismatch { left: p.vars().to_vec(), right: PoincarePoly::VARS.to_vec() });
    }
    let mut out = LaurentPoly::zero(&[Var::T]);
    for (e, c) in p.terms() {
        let m = e[0];
        let sign_exp = match (conv, m.rem_euclid(2)) {
            (_, 0) => m / 2,
            (EulerConvention::HalfShift, _) => m.div_euclid(2),
            (EulerConvention::Strict, _) => return Err(Error::HalfIntegerExponent),
        };
        let c = if sign_exp.rem_euclid(2) == 1 { -c.clone() } else { c.clone() };
        out.add_term(vec![e[1]], c);
    }
    Ok(out)
}

/// Multiplies a one-variable polynomial by `±t^(k/2)` so that its support is
/// symmetric about zero and its leading coefficient is positive.
pub fn normalize_alexander(p: &LaurentPoly) -> Result<LaurentPoly> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    assert_eq!(p.vars().len(), 1, "normalize_alexander expects one variable");
    let (lo, hi) = p.span(0).expect("nonzero");
    // Centering needs lo + hi even in doubled units; otherwise no half-integer
    // shift is symmetric and the lowest term is anchored at zero instead.
    let shifted = if (lo + hi) % 2 == 0 { p.shift(&[-(lo + hi) / 2]) } else { p.shift(&[-lo]) };
    let lead_neg = shifted.leading().map(|c| c.is_negative()).unwrap_or(false);
    Ok(if lead_neg { -shifted } else { shifted })
}

/// `z -> t^(1/2) - t^(-1/2)` applied to a Conway polynomial in `z`.
pub fn conway_to_alexander(conway: &LaurentPoly) -> LaurentPoly {
    let step = LaurentPoly::from_terms(Var::T, &[(1, 1), (-1, -1)]);
    let mut out = LaurentPoly::zero(&[Var::T]);
    for (e, c) in conway.terms() {
        assert!(e[0] >= 0 && e[0] % 2 == 0, "Conway polynomial has integer nonnegative powers");
        out += &step.pow((e[0] / 2) as u32).scale(c);
    }
    out
}

/// `(t^(1/2) - t^(-1/2))^k`.
pub fn link_factor(k: u32) -> LaurentPoly {
    LaurentPoly::from_terms(Var::T, &[(1, 1), (-1, -1)]).pow(k)
}

/// Map with ordered keys for deterministic JSON.
pub type Ranked<K> = BTreeMap<K, BigInt>;
