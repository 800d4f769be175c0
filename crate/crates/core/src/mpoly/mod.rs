//! Sparse homogeneous polynomials over Q(zeta_N).

mod matrix;
mod parse;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::exactalg::{CycloField, CycloScalar};

pub use matrix::{euler_omega_check, hessian, jacobian, PolyMatrix, DEFAULT_DET_LIMIT};
pub use parse::parse_poly;

/// The polynomial ring Q(zeta_N)[x_0, ..., x_{k-1}].
#[derive(Clone, Debug)]
pub struct PolyRing {
    num_vars: usize,
    field: Arc<CycloField>,
}

impl PartialEq for PolyRing {
    fn eq(&self, other: &Self) -> bool {
        self.num_vars == other.num_vars && self.field.order() == other.field.order()
    }
}

impl Eq for PolyRing {}

impl PolyRing {
    pub fn new(num_vars: usize, field: Arc<CycloField>) -> Result<PolyRing> {
        if num_vars < 1 {
            return Err(Error::InvalidArgument(
                "a polynomial ring needs at least one variable".into(),
            ));
        }
        Ok(PolyRing { num_vars, field })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn zero(&self) -> Poly {
        Poly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(self.field.one())
    }

    pub fn constant(&self, c: CycloScalar) -> Poly {
        self.term(Monomial::one(self.num_vars), c)
    }

    pub fn term(&self, m: Monomial, c: CycloScalar) -> Poly {
        debug_assert_eq!(m.num_vars(), self.num_vars);
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Poly {
            ring: self.clone(),
            terms,
        }
    }

    pub fn var(&self, i: usize) -> Result<Poly> {
        if i >= self.num_vars {
            return Err(Error::VariableOutOfRange {
                index: i,
                num_vars: self.num_vars,
            });
        }
        Ok(self.term(Monomial::var(self.num_vars, i), self.field.one()))
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        parse_poly(text, self)
    }
}

/// Exponent vector. Ordered graded-lexicographically with x_0 > x_1 > ...
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u16; 12]>);

impl Monomial {
    pub fn new(exps: &[u16]) -> Monomial {
        Monomial(SmallVec::from_slice(exps))
    }

    pub fn one(num_vars: usize) -> Monomial {
        Monomial(SmallVec::from_elem(0, num_vars))
    }

    pub fn var(num_vars: usize, i: usize) -> Monomial {
        let mut m = Monomial::one(num_vars);
        m.0[i] = 1;
        m
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn exps(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        other
            .divides(self)
            .then(|| Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// All monomials of total degree `degree` in `num_vars` variables, largest first.
pub fn monomials_of_degree(num_vars: usize, degree: u32) -> Vec<Monomial> {
    bounded_monomials(num_vars, degree, &vec![u16::MAX; num_vars])
}

/// Monomials of total degree `degree` with exponent of x_i at most `bounds[i]`,
/// largest first.
pub fn bounded_monomials(num_vars: usize, degree: u32, bounds: &[u16]) -> Vec<Monomial> {
    fn rec(
        i: usize,
        left: u32,
        bounds: &[u16],
        tail_cap: &[u32],
        cur: &mut SmallVec<[u16; 12]>,
        out: &mut Vec<Monomial>,
    ) {
        let n = cur.len();
        if i == n - 1 {
            if left <= bounds[i] as u32 {
                cur[i] = left as u16;
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let hi = left.min(bounds[i] as u32);
        for e in (0..=hi).rev() {
            if left - e > tail_cap[i + 1] {
                break;
            }
            cur[i] = e as u16;
            rec(i + 1, left - e, bounds, tail_cap, cur, out);
        }
        cur[i] = 0;
    }
    let mut tail_cap = vec![0u32; num_vars + 1];
    for i in (0..num_vars).rev() {
        tail_cap[i] = tail_cap[i + 1].saturating_add(bounds[i] as u32);
    }
    let mut out = Vec::new();
    if tail_cap[0] < degree {
        return out;
    }
    let mut cur = SmallVec::from_elem(0, num_vars);
    rec(0, degree, bounds, &tail_cap, &mut cur, &mut out);
    out
}

/// binom(degree + num_vars - 1, num_vars - 1), saturating.
pub fn count_monomials(num_vars: usize, degree: u32) -> u128 {
    let k = num_vars as u128 - 1;
    let n = degree as u128 + k;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// A sparse polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, CycloScalar>,
}

impl Poly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from the largest monomial down.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycloScalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&CycloScalar> {
        self.terms.get(m)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    /// True when every term has degree `e` (vacuous for zero).
    pub fn is_homogeneous_of(&self, e: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == e)
    }

    /// `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self) -> Result<Option<u32>> {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return Ok(None);
        };
        let e = first.degree();
        if it.all(|m| m.degree() == e) {
            Ok(Some(e))
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    /// Degree of a nonzero homogeneous polynomial.
    pub fn degree(&self) -> Result<u32> {
        self.homogeneous_degree()?
            .ok_or_else(|| Error::InvalidArgument("the zero polynomial has no degree".into()))
    }

    fn same_ring(&self, other: &Poly) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: CycloScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_ring(other)?;
        let mut out = self.ring.zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloScalar) -> Poly {
        if c.is_zero() {
            return self.ring.zero();
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Poly {
        if k == 0 {
            return self.ring.zero();
        }
        let k = BigInt::from(k);
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v.scale_int(&k)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Partial derivative with respect to x_i.
    pub fn partial(&self, i: usize) -> Result<Poly> {
        if i >= self.ring.num_vars {
            return Err(Error::VariableOutOfRange {
                index: i,
                num_vars: self.ring.num_vars,
            });
        }
        let mut out = self.ring.zero();
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[i] -= 1;
            out.add_term(dm, c.scale_int(&BigInt::from(e)));
        }
        Ok(out)
    }

    /// Keeps only the terms accepted by `keep`.
    pub(crate) fn filter_terms(&self, mut keep: impl FnMut(&Monomial) -> bool) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms() {
            let is_const = m.degree() == 0;
            if let Some(r) = c.to_rational() {
                let neg = r.is_negative();
                let mag = r.abs();
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                if is_const {
                    write!(f, "{mag}")?;
                } else if mag.is_one() {
                    write!(f, "{m}")?;
                } else {
                    write!(f, "{mag}*{m}")?;
                }
            } else {
                if !first {
                    write!(f, " + ")?;
                }
                if is_const {
                    write!(f, "({c})")?;
                } else {
                    write!(f, "({c})*{m}")?;
                }
            }
            first = false;
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomial add")
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomial sub")
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomial mul")
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}
