//! Fermat varieties, their linear cycles, closed forms for associated
//! polynomials, intersections and periods, and the tangent-space verdict for
//! sums of two linear cycles.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::artinian::slice_meet;
use crate::error::{Error, Result};
use crate::exactalg::{CycloField, Rational};
use crate::mpoly::{Monomial, Poly, PolyRing};
use crate::periods::{CitCycle, ContextOptions, HypersurfaceContext, PeriodValue};

/// The ring Q(zeta_{2d})[x_0, ..., x_{n+1}].
pub fn fermat_ring(n: u32, d: u32) -> Result<PolyRing> {
    PolyRing::new(n as usize + 2, CycloField::new(2 * d)?)
}

/// x_0^d + ... + x_{n+1}^d.
pub fn fermat_poly(ring: &PolyRing, d: u32) -> Poly {
    let mut f = ring.zero();
    for i in 0..ring.num_vars() {
        let mut e = vec![0u16; ring.num_vars()];
        e[i] = d as u16;
        f.add_term(Monomial::new(&e), ring.field().one());
    }
    f
}

pub fn fermat_context(n: u32, d: u32) -> Result<HypersurfaceContext> {
    fermat_context_with(n, d, ContextOptions::default())
}

pub fn fermat_context_with(n: u32, d: u32, opts: ContextOptions) -> Result<HypersurfaceContext> {
    if !n.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("n must be even, got {n}")));
    }
    let ring = fermat_ring(n, d)?;
    let f = fermat_poly(&ring, d);
    HypersurfaceContext::with_options(n, d, f, opts)
}

/// The linear cycle {x_{2j-2} - zeta^{alpha_j} x_{2j-1} = 0 for all j}.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearCycleSpec {
    n: u32,
    d: u32,
    alphas: Vec<u32>,
}

impl LinearCycleSpec {
    pub fn new(n: u32, d: u32, alphas: Vec<u32>) -> Result<LinearCycleSpec> {
        if n < 2 || !n.is_multiple_of(2) || d < 2 {
            return Err(Error::InvalidArgument(format!(
                "need even n >= 2 and d >= 2, got n={n}, d={d}"
            )));
        }
        let k = n as usize / 2 + 1;
        if alphas.len() != k {
            return Err(Error::Arity {
                expected: k,
                found: alphas.len(),
            });
        }
        if let Some(a) = alphas.iter().find(|&&a| a % 2 == 0 || a >= 2 * d) {
            return Err(Error::InvalidArgument(format!(
                "alpha {a} must be odd and in 1..={}",
                2 * d - 1
            )));
        }
        Ok(LinearCycleSpec { n, d, alphas })
    }

    /// The spec with every alpha equal to 1.
    pub fn standard(n: u32, d: u32) -> Result<LinearCycleSpec> {
        LinearCycleSpec::new(n, d, vec![1; n as usize / 2 + 1])
    }

    /// Every spec for (n, d), in lexicographic order of alphas.
    pub fn all(n: u32, d: u32) -> Result<Vec<LinearCycleSpec>> {
        let k = n as usize / 2 + 1;
        let odd: Vec<u32> = (0..d).map(|i| 2 * i + 1).collect();
        let mut out = vec![Vec::new()];
        for _ in 0..k {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    odd.iter().map(move |&a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|a| LinearCycleSpec::new(n, d, a))
            .collect()
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn alphas(&self) -> &[u32] {
        &self.alphas
    }

    /// dim of the intersection with `other`: #{j : alpha_j = beta_j} - 1.
    pub fn meet_dim(&self, other: &LinearCycleSpec) -> i64 {
        self.alphas
            .iter()
            .zip(&other.alphas)
            .filter(|(a, b)| a == b)
            .count() as i64
            - 1
    }
}

fn pair_monomial(ring: &PolyRing, a: usize, ea: u32, b: usize, eb: u32) -> Monomial {
    let mut e = vec![0u16; ring.num_vars()];
    e[a] = ea as u16;
    e[b] = eb as u16;
    Monomial::new(&e)
}

/// f_j = x_{2j-2} - zeta^alpha x_{2j-1}, g_j = sum_l zeta^{alpha l} x_{2j-2}^{d-1-l} x_{2j-1}^l.
pub fn linear_cycle(spec: &LinearCycleSpec) -> Result<CitCycle> {
    let ring = fermat_ring(spec.n, spec.d)?;
    let field = ring.field().clone();
    let d = spec.d;
    let mut fs = Vec::new();
    let mut gs = Vec::new();
    for (j, &alpha) in spec.alphas.iter().enumerate() {
        let (a, b) = (2 * j, 2 * j + 1);
        let mut f = ring.var(a)?;
        f.add_term(
            pair_monomial(&ring, a, 0, b, 1),
            -&field.zeta_pow(alpha as i64),
        );
        let mut g = ring.zero();
        for l in 0..d {
            g.add_term(
                pair_monomial(&ring, a, d - 1 - l, b, l),
                field.zeta_pow((alpha * l) as i64),
            );
        }
        fs.push(f);
        gs.push(g);
    }
    Ok(CitCycle::single(1, fs, gs))
}

/// d^{n/2+1} zeta^{sum alpha} prod_j sum_{l=0}^{d-2} zeta^{alpha_j l} x_{2j-2}^{d-2-l} x_{2j-1}^l.
pub fn associated_poly_closed(spec: &LinearCycleSpec) -> Result<Poly> {
    let ring = fermat_ring(spec.n, spec.d)?;
    let field = ring.field().clone();
    let d = spec.d;
    let total: u32 = spec.alphas.iter().sum();
    let lead = num_traits::pow(BigInt::from(d), spec.alphas.len());
    let mut acc = ring.constant(field.zeta_pow(total as i64).scale_int(&lead));
    for (j, &alpha) in spec.alphas.iter().enumerate() {
        let mut factor = ring.zero();
        for l in 0..=d.saturating_sub(2) {
            factor.add_term(
                pair_monomial(&ring, 2 * j, d - 2 - l, 2 * j + 1, l),
                field.zeta_pow((alpha * l) as i64),
            );
        }
        acc = &acc * &factor;
    }
    Ok(acc)
}

/// (1 - (1-d)^{m+1}) / d with m the dimension of the intersection.
pub fn linear_intersection_closed(a: &LinearCycleSpec, b: &LinearCycleSpec) -> Result<BigInt> {
    if (a.n, a.d) != (b.n, b.d) {
        return Err(Error::InvalidArgument(
            "linear cycles live on different Fermat varieties".into(),
        ));
    }
    let m = a.meet_dim(b);
    let d = BigInt::from(a.d);
    let num = BigInt::one() - num_traits::pow(BigInt::one() - &d, (m + 1) as usize);
    let (q, r) = num.div_rem(&d);
    if !r.is_zero() {
        return Err(Error::Integrality(format!("{num}/{d} is not an integer")));
    }
    Ok(q)
}

/// Period of the alpha = (1, ..., 1) linear cycle against x^i.
pub fn linear_period_closed(n: u32, d: u32, exps: &[u16]) -> Result<PeriodValue> {
    if n < 2 || !n.is_multiple_of(2) || d < 2 {
        return Err(Error::InvalidArgument(format!(
            "need even n >= 2 and d >= 2, got n={n}, d={d}"
        )));
    }
    if exps.len() != n as usize + 2 {
        return Err(Error::Arity {
            expected: n as usize + 2,
            found: exps.len(),
        });
    }
    if let Some(e) = exps.iter().find(|&&e| e as u32 > d - 2) {
        return Err(Error::InvalidArgument(format!(
            "exponent {e} exceeds d - 2 = {}",
            d - 2
        )));
    }
    let sigma = (d - 2) * (n / 2 + 1);
    let total: u32 = exps.iter().map(|&e| e as u32).sum();
    if total != sigma {
        return Err(Error::DegreeMismatch {
            expected: sigma,
            found: total,
        });
    }
    let field = CycloField::new(2 * d)?;
    let pairs_ok = exps.chunks(2).all(|p| p[0] as u32 + p[1] as u32 == d - 2);
    let algebraic = if pairs_ok {
        let even: u32 = exps.iter().step_by(2).map(|&e| e as u32).sum();
        let k = n / 2 + 1;
        let denom = num_traits::pow(BigInt::from(d), k as usize);
        field
            .zeta_pow((k + even) as i64)
            .mul_rational(&Rational::new(BigInt::one(), denom))
    } else {
        field.zero()
    };
    Ok(PeriodValue {
        tpi_power: n / 2,
        inv_factorial: n / 2,
        factorial_power: 1,
        algebraic,
    })
}

fn binom(n: u64, k: u64) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

/// 2 binom(n/2+d, d) - 2 (n/2+1)^2 - binom(m+d, d) + (m+1)^2.
pub fn codim_formula(n: u32, d: u32, m: i64) -> Result<i128> {
    let h = (n / 2) as i64;
    if m < 0 || m > h {
        return Err(Error::InvalidArgument(format!(
            "m = {m} must lie in 0..={h}"
        )));
    }
    let (h, d64) = (h as u64, d as u64);
    Ok(
        2 * binom(h + d64, d64) - 2 * ((h + 1) as i128).pow(2) - binom(m as u64 + d64, d64)
            + ((m + 1) as i128).pow(2),
    )
}

/// Outcome of comparing the tangent space of the sum of two linear cycles with
/// the intersection of their tangent spaces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub n: u32,
    pub d: u32,
    pub m: i64,
    pub alphas_a: Vec<u32>,
    pub alphas_b: Vec<u32>,
    pub a: i64,
    pub b: i64,
    pub ambient_dim: usize,
    pub dim_meet: usize,
    pub dim_delta_tangent: usize,
    pub meet_in_delta: bool,
    pub equal: bool,
    pub expected_equal: bool,
    pub codim_formula_value: i128,
    pub codim_matches: bool,
    pub consistent: bool,
    /// A tangent vector of the sum outside the intersection, when one exists.
    pub witness: Option<Poly>,
}

/// Default second cycle: alpha = 3 on the first n/2 - m pairs, 1 on the rest.
pub fn default_second_alphas(n: u32, m: i64) -> Vec<u32> {
    let k = n as usize / 2 + 1;
    let differ = k - (m as usize + 1);
    (0..k).map(|j| if j < differ { 3 } else { 1 }).collect()
}

pub fn fermat_verdict(
    ctx: &HypersurfaceContext,
    m: i64,
    alphas_b: Option<Vec<u32>>,
    a: i64,
    b: i64,
) -> Result<VerdictReport> {
    let (n, d) = (ctx.n(), ctx.d());
    let h = (n / 2) as i64;
    if d < 3 {
        return Err(Error::InvalidArgument("the verdict needs d >= 3".into()));
    }
    if m < 0 || m > h - 1 {
        return Err(Error::InvalidArgument(format!(
            "m = {m} must lie in 0..={}",
            h - 1
        )));
    }
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument(
            "scalars a, b must be nonzero".into(),
        ));
    }
    if ctx.f() != &fermat_poly(ctx.ring(), d) {
        return Err(Error::InvalidArgument(
            "the verdict applies to the Fermat variety".into(),
        ));
    }
    let differ = (h - m) as usize;
    let alphas_b = alphas_b.unwrap_or_else(|| default_second_alphas(n, m));
    let spec_b = LinearCycleSpec::new(n, d, alphas_b.clone())?;
    for (j, &al) in spec_b.alphas().iter().enumerate() {
        let ok = if j < differ { al >= 3 } else { al == 1 };
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "second cycle must use alphas in 3..={} on the first {differ} pairs and 1 on the last {}",
                2 * d - 1,
                m + 1
            )));
        }
    }
    let spec_a = LinearCycleSpec::standard(n, d)?;
    let p1 = associated_poly_closed(&spec_a)?.scale_int(a);
    let p2 = associated_poly_closed(&spec_b)?.scale_int(b);
    let j = ctx.jacobian_ideal();
    let t1 = j.colon_slice(&p1, d)?;
    let t2 = j.colon_slice(&p2, d)?;
    let meet = slice_meet(&t1, &t2)?;
    let delta = j.colon_slice(&(&p1 + &p2), d)?;
    let meet_in_delta = meet.is_subspace_of(&delta)?;
    let equal = meet_in_delta && meet.dim() == delta.dim();
    let witness = if equal {
        None
    } else {
        delta.first_outside(&meet)?
    };
    let expected_equal = m * (d as i64 - 2) < h * (d as i64 - 2) - d as i64;
    let codim_formula_value = codim_formula(n, d, m)?;
    let ambient_dim = meet.ambient_dim();
    Ok(VerdictReport {
        n,
        d,
        m,
        alphas_a: spec_a.alphas.clone(),
        alphas_b,
        a,
        b,
        ambient_dim,
        dim_meet: meet.dim(),
        dim_delta_tangent: delta.dim(),
        meet_in_delta,
        equal,
        expected_equal,
        codim_matches: (ambient_dim - meet.dim()) as i128 == codim_formula_value,
        codim_formula_value,
        consistent: equal == expected_equal,
        witness,
    })
}
