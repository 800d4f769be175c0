//! Exact coefficient arithmetic: rationals and the cyclotomic fields Q(zeta_N).
//!
//! Q(zeta_N) is represented as Q[t]/Phi_N(t). Elements keep an integer
//! numerator vector of length phi(N) over a common positive denominator, always
//! in lowest terms, so two elements are equal exactly when their stored
//! representatives are.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary precision rational in lowest terms.
pub type Rational = BigRational;

/// Renders a rational as `num/den`, always with an explicit denominator.
pub fn rational_num_den(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Exact quotient of integer polynomials (coefficients low to high) by a monic divisor.
fn div_exact_monic(num: &[BigInt], div: &[BigInt]) -> Vec<BigInt> {
    let dn = div.len() - 1;
    let mut rem = num.to_vec();
    if rem.len() <= dn {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dn];
    for k in (dn..rem.len()).rev() {
        let c = rem[k].clone();
        if c.is_zero() {
            continue;
        }
        quot[k - dn] = c.clone();
        for (j, dj) in div.iter().enumerate() {
            rem[k - dn + j] -= &c * dj;
        }
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "division is not exact");
    quot
}

fn mul_int_poly(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn cyclotomic_int(n: u32) -> Vec<BigInt> {
    // t^n - 1 divided by Phi_m for every proper divisor m of n.
    let mut poly = vec![BigInt::zero(); n as usize + 1];
    poly[0] = BigInt::from(-1);
    poly[n as usize] = BigInt::one();
    let mut denom = vec![BigInt::one()];
    for m in 1..n {
        if n.is_multiple_of(m) {
            denom = mul_int_poly(&denom, &cyclotomic_int(m));
        }
    }
    div_exact_monic(&poly, &denom)
}

/// The N-th cyclotomic polynomial, coefficients listed from the constant term up.
pub fn cyclotomic_polynomial(n: u32) -> Result<Vec<Rational>> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "cyclotomic order must be >= 1".into(),
        ));
    }
    Ok(cyclotomic_int(n)
        .into_iter()
        .map(Rational::from_integer)
        .collect())
}

/// The field Q(zeta_N) presented as Q[t]/Phi_N.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    order: u32,
    modulus: Vec<BigInt>,
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<CycloField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<CycloField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl CycloField {
    /// Returns the shared field of order `order` (N >= 1).
    pub fn new(order: u32) -> Result<Arc<CycloField>> {
        if order == 0 {
            return Err(Error::InvalidArgument("root order must be >= 1".into()));
        }
        let mut cache = field_cache().lock().expect("field cache poisoned");
        Ok(cache
            .entry(order)
            .or_insert_with(|| {
                Arc::new(CycloField {
                    order,
                    modulus: cyclotomic_int(order),
                })
            })
            .clone())
    }

    /// The rational field, i.e. Q(zeta_1).
    pub fn rationals() -> Arc<CycloField> {
        CycloField::new(1).expect("order 1 is valid")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// phi(N), the dimension over Q.
    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus(&self) -> Vec<Rational> {
        self.modulus
            .iter()
            .cloned()
            .map(Rational::from_integer)
            .collect()
    }

    pub fn zero(self: &Arc<Self>) -> CycloScalar {
        CycloScalar {
            field: self.clone(),
            num: vec![BigInt::zero(); self.degree()],
            den: BigInt::one(),
        }
    }

    pub fn one(self: &Arc<Self>) -> CycloScalar {
        self.from_int(1)
    }

    pub fn from_int(self: &Arc<Self>, v: i64) -> CycloScalar {
        self.from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(self: &Arc<Self>, v: BigInt) -> CycloScalar {
        let mut s = self.zero();
        s.num[0] = v;
        s
    }

    pub fn from_rational(self: &Arc<Self>, r: &Rational) -> CycloScalar {
        let mut s = self.zero();
        s.num[0] = r.numer().clone();
        s.den = r.denom().clone();
        s
    }

    /// Builds an element from coordinates in the power basis 1, t, t^2, ...;
    /// any length is accepted and reduced modulo Phi_N.
    pub fn from_coords(self: &Arc<Self>, coords: &[Rational]) -> CycloScalar {
        let den = coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num: Vec<BigInt> = coords
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        self.assemble(num, den)
    }

    /// zeta_N^k for any integer k.
    pub fn zeta_pow(self: &Arc<Self>, k: i64) -> CycloScalar {
        let e = k.rem_euclid(self.order as i64) as usize;
        let mut num = vec![BigInt::zero(); e + 1];
        num[e] = BigInt::one();
        self.assemble(num, BigInt::one())
    }

    /// The distinguished primitive root zeta_N = t mod Phi_N.
    pub fn zeta(self: &Arc<Self>) -> CycloScalar {
        self.zeta_pow(1)
    }

    fn reduce(&self, mut num: Vec<BigInt>) -> Vec<BigInt> {
        let phi = self.degree();
        if num.len() > phi {
            for k in (phi..num.len()).rev() {
                let c = std::mem::take(&mut num[k]);
                if c.is_zero() {
                    continue;
                }
                for (j, mj) in self.modulus[..phi].iter().enumerate() {
                    if !mj.is_zero() {
                        num[k - phi + j] -= &c * mj;
                    }
                }
            }
            num.truncate(phi);
        }
        num.resize(phi, BigInt::zero());
        num
    }

    fn assemble(self: &Arc<Self>, num: Vec<BigInt>, den: BigInt) -> CycloScalar {
        let num = self.reduce(num);
        let mut s = CycloScalar {
            field: self.clone(),
            num,
            den,
        };
        s.normalize();
        s
    }
}

/// An element of Q(zeta_N).
#[derive(Clone)]
pub struct CycloScalar {
    field: Arc<CycloField>,
    num: Vec<BigInt>,
    den: BigInt,
}

impl CycloScalar {
    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num[0].is_one() && self.num[1..].iter().all(Zero::is_zero)
    }

    /// True when the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.num[1..].iter().all(Zero::is_zero)
    }

    pub fn to_rational(&self) -> Option<Rational> {
        self.is_rational()
            .then(|| Rational::new(self.num[0].clone(), self.den.clone()))
    }

    /// Coordinates in the power basis 1, zeta, ..., zeta^(phi-1).
    pub fn coords(&self) -> Vec<Rational> {
        self.num
            .iter()
            .map(|c| Rational::new(c.clone(), self.den.clone()))
            .collect()
    }

    fn normalize(&mut self) {
        if self.den.is_negative() {
            self.den = -std::mem::take(&mut self.den);
            for c in &mut self.num {
                *c = -std::mem::take(c);
            }
        }
        if self.is_zero() {
            self.den = BigInt::one();
            return;
        }
        if self.den.is_one() {
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                return;
            }
            if !c.is_zero() {
                g = g.gcd(c);
            }
        }
        if !g.is_one() {
            self.den /= &g;
            for c in &mut self.num {
                *c /= &g;
            }
        }
    }

    fn same_field(&self, other: &CycloScalar) -> Result<()> {
        if self.field.order == other.field.order {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field.order, other.field.order))
        }
    }

    fn combine(&self, other: &CycloScalar, negate: bool) -> CycloScalar {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| if negate { a - b } else { a + b })
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| {
                    let l = a * &other.den;
                    let r = b * &self.den;
                    if negate {
                        l - r
                    } else {
                        l + r
                    }
                })
                .collect();
            (num, &self.den * &other.den)
        };
        let mut s = CycloScalar {
            field: self.field.clone(),
            num,
            den,
        };
        s.normalize();
        s
    }

    pub fn checked_add(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.same_field(other)?;
        Ok(self.combine(other, false))
    }

    pub fn checked_sub(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.same_field(other)?;
        Ok(self.combine(other, true))
    }

    pub fn checked_mul(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.same_field(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.field.zero());
        }
        let phi = self.field.degree();
        if phi == 1 {
            let mut s = CycloScalar {
                field: self.field.clone(),
                num: vec![&self.num[0] * &other.num[0]],
                den: &self.den * &other.den,
            };
            s.normalize();
            return Ok(s);
        }
        let prod = mul_int_poly(&self.num, &other.num);
        Ok(self.field.assemble(prod, &self.den * &other.den))
    }

    pub fn inv(&self) -> Result<CycloScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_rational() {
            let mut s = self.field.zero();
            s.num[0] = self.den.clone();
            s.den = self.num[0].clone();
            s.normalize();
            return Ok(s);
        }
        // Extended Euclid in Q[t]: s*a + u*Phi = g with g a nonzero constant.
        let a: Vec<Rational> = trim(self.coords());
        let modulus = trim(self.field.modulus());
        let (mut r0, mut r1) = (modulus, a);
        let (mut s0, mut s1) = (vec![], vec![Rational::one()]);
        while !r1.is_empty() {
            let (q, r) = divrem_rat(&r0, &r1);
            let s2 = sub_rat(&s0, &mul_rat(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        debug_assert_eq!(r0.len(), 1, "Phi_N is irreducible");
        let g = r0[0].clone();
        let coords: Vec<Rational> = s0.iter().map(|c| c / &g).collect();
        Ok(self.field.from_coords(&coords))
    }

    pub fn checked_div(&self, other: &CycloScalar) -> Result<CycloScalar> {
        self.same_field(other)?;
        self.checked_mul(&other.inv()?)
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, exp: i64) -> Result<CycloScalar> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    pub fn scale_int(&self, k: &BigInt) -> CycloScalar {
        let mut s = CycloScalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * k).collect(),
            den: self.den.clone(),
        };
        s.normalize();
        s
    }

    pub fn mul_rational(&self, r: &Rational) -> CycloScalar {
        let mut s = CycloScalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| c * r.numer()).collect(),
            den: &self.den * r.denom(),
        };
        s.normalize();
        s
    }

    /// Floating-point value at zeta_N = exp(2 pi i / N); display only.
    pub fn approx(&self) -> (f64, f64) {
        let n = self.field.order as f64;
        let den = self.den.to_f64().unwrap_or(f64::NAN);
        let mut re = 0.0;
        let mut im = 0.0;
        for (k, c) in self.num.iter().enumerate() {
            let v = c.to_f64().unwrap_or(f64::NAN) / den;
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n;
            re += v * ang.cos();
            im += v * ang.sin();
        }
        (re, im)
    }

    fn fmt_terms(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for k in (0..self.num.len()).rev() {
            if self.num[k].is_zero() {
                continue;
            }
            let c = Rational::new(self.num[k].clone(), self.den.clone());
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "z")?;
                    } else {
                        write!(f, "z^{k}")?;
                    }
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn sub_rat(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let zero = Rational::zero();
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn mul_rat(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn divrem_rat(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    let lead = b[db].clone();
    if rem.len() < b.len() {
        return (vec![], rem);
    }
    let mut quot = vec![Rational::zero(); rem.len() - db];
    for k in (db..rem.len()).rev() {
        let c = &rem[k] / &lead;
        if c.is_zero() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            rem[k - db + j] -= &c * bj;
        }
        quot[k - db] = c;
    }
    (trim(quot), trim(rem))
}

impl PartialEq for CycloScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field.order == other.field.order && self.den == other.den && self.num == other.num
    }
}

impl Eq for CycloScalar {}

impl Hash for CycloScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.order.hash(state);
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloScalar[N={}](", self.field.order)?;
        self.fmt_terms(f)?;
        write!(f, ")")
    }
}

impl fmt::Display for CycloScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_terms(f)
    }
}

// Operator forms panic on mismatched fields or division by zero; the
// `checked_*` methods report those as errors instead.
impl Add for &CycloScalar {
    type Output = CycloScalar;
    fn add(self, rhs: &CycloScalar) -> CycloScalar {
        self.checked_add(rhs).expect("cyclotomic add")
    }
}

impl Sub for &CycloScalar {
    type Output = CycloScalar;
    fn sub(self, rhs: &CycloScalar) -> CycloScalar {
        self.checked_sub(rhs).expect("cyclotomic sub")
    }
}

impl Mul for &CycloScalar {
    type Output = CycloScalar;
    fn mul(self, rhs: &CycloScalar) -> CycloScalar {
        self.checked_mul(rhs).expect("cyclotomic mul")
    }
}

impl Div for &CycloScalar {
    type Output = CycloScalar;
    fn div(self, rhs: &CycloScalar) -> CycloScalar {
        self.checked_div(rhs).expect("cyclotomic div")
    }
}

impl Neg for &CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        CycloScalar {
            field: self.field.clone(),
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }
}

impl Neg for CycloScalar {
    type Output = CycloScalar;
    fn neg(self) -> CycloScalar {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    fn ints(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| q(x, 1)).collect()
    }

    // Independent route: Phi_N = prod_{m | N} (t^m - 1)^{mu(N/m)}.
    fn mobius(mut n: u32) -> i32 {
        let mut k = 0;
        let mut p = 2;
        while p * p <= n {
            if n.is_multiple_of(p) {
                n /= p;
                if n.is_multiple_of(p) {
                    return 0;
                }
                k += 1;
            }
            p += 1;
        }
        if n > 1 {
            k += 1;
        }
        if k % 2 == 0 {
            1
        } else {
            -1
        }
    }

    fn mobius_cyclotomic(n: u32) -> Vec<Rational> {
        let mut num = vec![Rational::one()];
        let mut den = vec![Rational::one()];
        for m in 1..=n {
            if !n.is_multiple_of(m) {
                continue;
            }
            let mut f = vec![Rational::zero(); m as usize + 1];
            f[0] = -Rational::one();
            f[m as usize] = Rational::one();
            match mobius(n / m) {
                1 => num = mul_rat(&num, &f),
                -1 => den = mul_rat(&den, &f),
                _ => {}
            }
        }
        let (quot, rem) = divrem_rat(&num, &den);
        assert!(rem.is_empty());
        quot
    }

    #[test]
    fn cyclotomic_small_orders() {
        assert_eq!(cyclotomic_polynomial(1).unwrap(), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(6).unwrap(), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(8).unwrap(), ints(&[1, 0, 0, 0, 1]));
        assert!(cyclotomic_polynomial(0).is_err());
    }

    #[test]
    fn cyclotomic_matches_mobius_product() {
        for n in 1..=40 {
            assert_eq!(
                cyclotomic_polynomial(n).unwrap(),
                mobius_cyclotomic(n),
                "N={n}"
            );
        }
    }

    #[test]
    fn modulus_divides_t_n_minus_one() {
        for n in 1..=30u32 {
            let phi = cyclotomic_polynomial(n).unwrap();
            let mut tn = vec![Rational::zero(); n as usize + 1];
            tn[0] = -Rational::one();
            tn[n as usize] = Rational::one();
            let (_, rem) = divrem_rat(&tn, &phi);
            assert!(rem.is_empty(), "N={n}");
            assert!(phi.last().unwrap().is_one());
        }
    }

    #[test]
    fn zeta_powers_reduce() {
        let k6 = CycloField::new(6).unwrap();
        assert_eq!(k6.zeta_pow(3), k6.from_int(-1));
        // t^2 = t - 1 mod t^2 - t + 1
        assert_eq!(k6.zeta_pow(2).coords(), ints(&[-1, 1]));
        assert_eq!(k6.zeta_pow(7), k6.zeta());
        let k8 = CycloField::new(8).unwrap();
        assert!((&k8.zeta() * &k8.zeta_pow(7)).is_one());
        assert_eq!(k8.zeta().pow(8).unwrap(), k8.one());
        assert_eq!(k8.zeta().pow(4).unwrap(), k8.from_int(-1));
        assert_eq!(k8.zeta().pow(-1).unwrap(), k8.zeta_pow(7));
    }

    #[test]
    fn rational_field_is_order_one() {
        let q1 = CycloField::rationals();
        assert_eq!(q1.degree(), 1);
        assert!(q1.zeta().is_one());
        let a = q1.from_rational(&q(3, 4));
        let b = q1.from_rational(&q(-2, 3));
        assert_eq!((&a * &b).to_rational(), Some(q(-1, 2)));
        assert_eq!((&a / &b).to_rational(), Some(q(-9, 8)));
    }

    #[test]
    fn division_errors() {
        let k = CycloField::new(10).unwrap();
        assert_eq!(k.one().checked_div(&k.zero()), Err(Error::DivisionByZero));
        let other = CycloField::new(6).unwrap();
        assert_eq!(
            k.one().checked_add(&other.one()),
            Err(Error::FieldMismatch(10, 6))
        );
    }

    #[test]
    fn inverse_of_non_rational() {
        let k = CycloField::new(10).unwrap();
        let a = k.from_coords(&[q(1, 2), q(3, 1), q(0, 1), q(-5, 7)]);
        let ai = a.inv().unwrap();
        assert!((&a * &ai).is_one());
    }

    #[test]
    fn display_forms() {
        let k = CycloField::new(6).unwrap();
        assert_eq!(k.zeta_pow(2).to_string(), "z - 1");
        assert_eq!(k.from_rational(&q(-1, 9)).to_string(), "-1/9");
        assert_eq!(k.zero().to_string(), "0");
        assert_eq!(rational_num_den(&q(-4, 1)), "-4/1");
    }

    #[test]
    fn numeric_smoke() {
        let k = CycloField::new(8).unwrap();
        let a = k.from_coords(&[q(1, 3), q(-2, 1), q(5, 1), q(1, 1)]);
        let b = k.from_coords(&[q(0, 1), q(7, 2), q(1, 1), q(-1, 1)]);
        let (ar, ai) = a.approx();
        let (br, bi) = b.approx();
        let (pr, pi) = (&a * &b).approx();
        assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
        assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
        let z = &a - &a;
        assert_eq!(z.approx(), (0.0, 0.0));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn element(order: u32) -> impl Strategy<Value = CycloScalar> {
            let k = CycloField::new(order).unwrap();
            let deg = k.degree();
            proptest::collection::vec((-20i64..20, 1i64..6), deg).prop_map(move |cs| {
                let coords: Vec<Rational> = cs.into_iter().map(|(n, d)| q(n, d)).collect();
                k.from_coords(&coords)
            })
        }

        fn pair() -> impl Strategy<Value = (CycloScalar, CycloScalar)> {
            prop_oneof![Just(2u32), Just(4), Just(6), Just(8), Just(10)]
                .prop_flat_map(|n| (element(n), element(n)))
        }

        proptest! {
            #[test]
            fn div_inverts_mul((a, b) in pair()) {
                prop_assume!(!a.is_zero());
                let prod = &a * &b;
                prop_assert_eq!(prod.checked_div(&a).unwrap(), b);
            }

            #[test]
            fn distributive((a, b) in pair()) {
                let c = &a - &b;
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            }
        }
    }
}
