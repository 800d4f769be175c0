//! Complete-intersection-type cycles on a smooth hypersurface: validation,
//! associated polynomials, periods, cycle classes, cup products, intersection
//! numbers, and periods of top forms on projective space.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::artinian::{ratio_of_forms, GorensteinReport, GradedIdeal, DEFAULT_MAX_DIM};
use crate::error::{Error, Result};
use crate::exactalg::{CycloScalar, Rational};
use crate::mpoly::{hessian, jacobian, Poly, PolyRing};

/// Options shared by every context-level computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ContextOptions {
    pub max_dim: usize,
    pub force_dense: bool,
}

impl Default for ContextOptions {
    fn default() -> Self {
        ContextOptions {
            max_dim: DEFAULT_MAX_DIM,
            force_dense: false,
        }
    }
}

/// A smooth degree-d hypersurface X = {F = 0} of even dimension n.
#[derive(Clone, Debug)]
pub struct HypersurfaceContext {
    n: u32,
    d: u32,
    ring: PolyRing,
    f: Poly,
    jacobian: GradedIdeal,
    sigma: u32,
    socle: u32,
    hess_det: Poly,
    hess_nf: Poly,
    gorenstein: GorensteinReport,
}

impl HypersurfaceContext {
    pub fn new(n: u32, d: u32, f: Poly) -> Result<HypersurfaceContext> {
        Self::with_options(n, d, f, ContextOptions::default())
    }

    pub fn with_options(
        n: u32,
        d: u32,
        f: Poly,
        opts: ContextOptions,
    ) -> Result<HypersurfaceContext> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "dimension n must be even and at least 2, got {n}"
            )));
        }
        if d < 2 {
            return Err(Error::InvalidArgument(format!(
                "degree d must be at least 2, got {d}"
            )));
        }
        let ring = f.ring().clone();
        if ring.num_vars() != n as usize + 2 {
            return Err(Error::Arity {
                expected: n as usize + 2,
                found: ring.num_vars(),
            });
        }
        let deg = f.degree()?;
        if deg != d {
            return Err(Error::DegreeMismatch {
                expected: d,
                found: deg,
            });
        }
        let socle = (d - 2) * (n + 2);
        let partials: Vec<Poly> = (0..ring.num_vars())
            .map(|i| f.partial(i))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|p| !p.is_zero())
            .collect();
        if partials.len() < ring.num_vars() {
            return Err(Error::NotGorenstein {
                socle,
                reason: "F does not involve every variable".into(),
            });
        }
        let mut jacobian = GradedIdeal::new(&ring, partials)?.with_max_dim(opts.max_dim);
        if opts.force_dense {
            jacobian = jacobian.force_dense();
        }
        let gorenstein = jacobian.gorenstein_check(socle)?;
        if !gorenstein.passes() {
            let reason = if !gorenstein.socle_dim_ok {
                format!("dim R_{socle} = {}", gorenstein.socle_dim)
            } else if !gorenstein.vanishing_ok {
                format!("R_{} is nonzero", socle + 1)
            } else {
                format!(
                    "pairing ranks {:?} are not perfect",
                    gorenstein.pairing_ranks
                )
            };
            return Err(Error::NotGorenstein { socle, reason });
        }
        let hess_det = hessian(&f)?.det()?;
        let hess_nf = jacobian.normal_form(&hess_det)?;
        if hess_nf.is_zero() {
            return Err(Error::NotGorenstein {
                socle,
                reason: "det Hess(F) lies in the Jacobian ideal".into(),
            });
        }
        Ok(HypersurfaceContext {
            n,
            d,
            ring,
            f,
            jacobian,
            sigma: (d - 2) * (n / 2 + 1),
            socle,
            hess_det,
            hess_nf,
            gorenstein,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn f(&self) -> &Poly {
        &self.f
    }

    pub fn jacobian_ideal(&self) -> &GradedIdeal {
        &self.jacobian
    }

    /// Degree (d-2)(n/2+1) of associated polynomials.
    pub fn sigma(&self) -> u32 {
        self.sigma
    }

    /// Socle degree (d-2)(n+2) of the Jacobian ring.
    pub fn socle(&self) -> u32 {
        self.socle
    }

    pub fn hessian_det(&self) -> &Poly {
        &self.hess_det
    }

    pub fn gorenstein(&self) -> &GorensteinReport {
        &self.gorenstein
    }

    /// (d-1)^{n+2}.
    fn hess_scale(&self) -> BigInt {
        num_traits::pow(BigInt::from(self.d - 1), self.n as usize + 2)
    }

    /// c with p = c * det Hess(F) modulo J, for p already in normal form.
    fn hess_ratio(&self, nf: &Poly) -> Result<CycloScalar> {
        ratio_of_forms(nf, &self.hess_nf)
    }
}

/// One term n_i * Z_i of a cycle, with F = sum_j fs[j] * gs[j].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitSummand {
    pub coeff: i64,
    pub fs: Vec<Poly>,
    pub gs: Vec<Poly>,
}

/// An integer combination of complete intersections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CitCycle {
    pub summands: Vec<CitSummand>,
}

impl CitCycle {
    pub fn single(coeff: i64, fs: Vec<Poly>, gs: Vec<Poly>) -> CitCycle {
        CitCycle {
            summands: vec![CitSummand { coeff, fs, gs }],
        }
    }

    pub fn scaled(&self, k: i64) -> CitCycle {
        CitCycle {
            summands: self
                .summands
                .iter()
                .map(|s| CitSummand {
                    coeff: s.coeff * k,
                    ..s.clone()
                })
                .collect(),
        }
    }

    /// Formal sum; summands are concatenated.
    pub fn plus(&self, other: &CitCycle) -> CitCycle {
        CitCycle {
            summands: self
                .summands
                .iter()
                .chain(&other.summands)
                .cloned()
                .collect(),
        }
    }
}

/// Summary of a successful validation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    /// deg(delta) = sum_i n_i prod_j deg f_{i,j}.
    pub degree: BigInt,
    pub summand_degrees: Vec<BigInt>,
    pub ci_checked: bool,
}

/// Coefficients of prod_j (1 - t^{d_j}) / (1 - t)^k for degrees 0..=e_max.
pub fn complete_intersection_series(k: usize, degrees: &[u32], e_max: u32) -> Vec<BigInt> {
    let len = e_max as usize + 1;
    let mut s = vec![BigInt::zero(); len];
    s[0] = BigInt::one();
    for _ in 0..k {
        for i in 1..len {
            let prev = s[i - 1].clone();
            s[i] += prev;
        }
    }
    for &d in degrees {
        let d = d as usize;
        if d == 0 {
            return vec![BigInt::zero(); len];
        }
        for i in (d..len).rev() {
            let lower = s[i - d].clone();
            s[i] -= lower;
        }
    }
    s
}

pub fn validate_cycle(
    ctx: &HypersurfaceContext,
    delta: &CitCycle,
    ci_check: bool,
) -> Result<ValidationReport> {
    if delta.summands.is_empty() {
        return Err(Error::InvalidArgument(
            "a cycle needs at least one summand".into(),
        ));
    }
    let k = ctx.n as usize / 2 + 1;
    let mut summand_degrees = Vec::with_capacity(delta.summands.len());
    let mut degree = BigInt::zero();
    for (idx, s) in delta.summands.iter().enumerate() {
        for list in [&s.fs, &s.gs] {
            if list.len() != k {
                return Err(Error::Arity {
                    expected: k,
                    found: list.len(),
                });
            }
        }
        let mut fdegs = Vec::with_capacity(k);
        for (f, g) in s.fs.iter().zip(&s.gs) {
            if f.ring() != &ctx.ring || g.ring() != &ctx.ring {
                return Err(Error::RingMismatch);
            }
            let df = f.degree()?;
            if let Some(dg) = g.homogeneous_degree()? {
                if df + dg != ctx.d {
                    return Err(Error::DegreeMismatch {
                        expected: ctx.d,
                        found: df + dg,
                    });
                }
            } else if df > ctx.d {
                return Err(Error::DegreeMismatch {
                    expected: ctx.d,
                    found: df,
                });
            }
            fdegs.push(df);
        }
        if ci_check {
            let e_max: u32 = fdegs.iter().sum();
            let ideal =
                GradedIdeal::new(&ctx.ring, s.fs.clone())?.with_max_dim(ctx.jacobian.max_dim());
            let profile = ideal.hilbert_function(e_max)?;
            let expect = complete_intersection_series(ctx.ring.num_vars(), &fdegs, e_max);
            for (e, (got, want)) in profile.dims.iter().zip(&expect).enumerate() {
                if BigInt::from(*got) != *want {
                    return Err(Error::NotCompleteIntersection {
                        summand: idx,
                        degree: e as u32,
                        found: *got,
                        expected: want.to_u128().unwrap_or(0),
                    });
                }
            }
        }
        let mut sum = ctx.ring.zero();
        for (f, g) in s.fs.iter().zip(&s.gs) {
            sum = &sum + &(f * g);
        }
        let residual = &sum - &ctx.f;
        if !residual.is_zero() {
            return Err(Error::DecompositionMismatch {
                summand: idx,
                residual: residual.to_string(),
            });
        }
        let zdeg: BigInt = fdegs.iter().map(|&x| BigInt::from(x)).product();
        degree += &zdeg * s.coeff;
        summand_degrees.push(zdeg);
    }
    Ok(ValidationReport {
        degree,
        summand_degrees,
        ci_checked: ci_check,
    })
}

/// (f_1, g_1, ..., f_k, g_k).
fn interleave(s: &CitSummand) -> Vec<Poly> {
    s.fs.iter()
        .zip(&s.gs)
        .flat_map(|(f, g)| [f.clone(), g.clone()])
        .collect()
}

/// A validated cycle with det Jac(H_i) precomputed per summand.
#[derive(Clone, Debug)]
pub struct PreparedCycle {
    cycle: CitCycle,
    degree: BigInt,
    jac_dets: Vec<Poly>,
    associated: Poly,
}

impl PreparedCycle {
    pub fn new(ctx: &HypersurfaceContext, delta: &CitCycle) -> Result<PreparedCycle> {
        let report = validate_cycle(ctx, delta, false)?;
        let jac_dets = delta
            .summands
            .par_iter()
            .map(|s| jacobian(&interleave(s))?.det())
            .collect::<Result<Vec<_>>>()?;
        let mut associated = ctx.ring.zero();
        for (s, det) in delta.summands.iter().zip(&jac_dets) {
            associated = &associated + &det.scale_int(s.coeff);
        }
        Ok(PreparedCycle {
            cycle: delta.clone(),
            degree: report.degree,
            jac_dets,
            associated,
        })
    }

    pub fn cycle(&self) -> &CitCycle {
        &self.cycle
    }

    pub fn degree(&self) -> &BigInt {
        &self.degree
    }

    /// det Jac(H_i) for each summand, in order.
    pub fn jacobian_dets(&self) -> &[Poly] {
        &self.jac_dets
    }

    /// P_delta = sum_i n_i det Jac(H_i).
    pub fn associated_polynomial(&self) -> &Poly {
        &self.associated
    }
}

pub fn associated_polynomial(ctx: &HypersurfaceContext, delta: &CitCycle) -> Result<Poly> {
    Ok(PreparedCycle::new(ctx, delta)?.associated)
}

/// An exact period: (2 pi i)^tpi_power / (inv_factorial!)^factorial_power * algebraic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodValue {
    pub tpi_power: u32,
    pub inv_factorial: u32,
    pub factorial_power: u32,
    pub algebraic: CycloScalar,
}

impl PeriodValue {
    pub fn is_zero(&self) -> bool {
        self.algebraic.is_zero()
    }
}

impl fmt::Display for PeriodValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(2*pi*i)^{}", self.tpi_power)?;
        match (self.inv_factorial, self.factorial_power) {
            (0, _) | (_, 0) => {}
            (k, 1) => write!(f, "/{k}!")?,
            (k, p) => write!(f, "/({k}!)^{p}")?,
        }
        write!(f, " * ({})", self.algebraic)
    }
}

fn require_degree(p: &Poly, expected: u32) -> Result<()> {
    match p.homogeneous_degree()? {
        Some(e) if e != expected => Err(Error::DegreeMismatch { expected, found: e }),
        _ => Ok(()),
    }
}

/// Sum over summands of n_i * c_i where P det Jac(H_i) = c_i det Hess(F) mod J.
pub fn period_prepared(
    ctx: &HypersurfaceContext,
    delta: &PreparedCycle,
    p: &Poly,
) -> Result<PeriodValue> {
    require_degree(p, ctx.sigma)?;
    if p.ring() != &ctx.ring {
        return Err(Error::RingMismatch);
    }
    let field = ctx.ring.field();
    let mut c = field.zero();
    for (s, det) in delta.cycle.summands.iter().zip(&delta.jac_dets) {
        let nf = ctx.jacobian.normal_form_of_product(p, det)?;
        let ci = ctx.hess_ratio(&nf)?;
        c = &c + &ci.scale_int(&BigInt::from(s.coeff));
    }
    Ok(PeriodValue {
        tpi_power: ctx.n / 2,
        inv_factorial: ctx.n / 2,
        factorial_power: 1,
        algebraic: c.scale_int(&ctx.hess_scale()),
    })
}

pub fn period(ctx: &HypersurfaceContext, delta: &CitCycle, p: &Poly) -> Result<PeriodValue> {
    period_prepared(ctx, &PreparedCycle::new(ctx, delta)?, p)
}

/// Cycle class data: [delta] = theta_coeff * theta^{n/2} + primitive_scale * omega_{P_delta}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClassRepr {
    pub degree: BigInt,
    pub theta_coeff: Rational,
    pub primitive_scale: Rational,
    pub primitive_poly: Poly,
    pub primitive_normal_form: Poly,
    pub is_theta_multiple: bool,
}

fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

pub fn cycle_class(ctx: &HypersurfaceContext, delta: &CitCycle) -> Result<CycleClassRepr> {
    let prepared = PreparedCycle::new(ctx, delta)?;
    let d = BigInt::from(ctx.d);
    let nf = ctx.jacobian.normal_form(&prepared.associated)?;
    Ok(CycleClassRepr {
        degree: prepared.degree.clone(),
        theta_coeff: Rational::new(prepared.degree.clone(), d.clone()),
        primitive_scale: -Rational::new(factorial(ctx.n / 2), d),
        is_theta_multiple: nf.is_zero(),
        primitive_poly: prepared.associated,
        primitive_normal_form: nf,
    })
}

/// Integral of omega_P wedge omega_Q over X.
pub fn cup_primitive(ctx: &HypersurfaceContext, p: &Poly, q: &Poly) -> Result<PeriodValue> {
    require_degree(p, ctx.sigma)?;
    require_degree(q, ctx.sigma)?;
    let nf = ctx.jacobian.normal_form_of_product(p, q)?;
    let c = ctx.hess_ratio(&nf)?;
    let scale = -(ctx.hess_scale() * BigInt::from(ctx.d));
    Ok(PeriodValue {
        tpi_power: ctx.n,
        inv_factorial: ctx.n / 2,
        factorial_power: 2,
        algebraic: c.scale_int(&scale),
    })
}

/// Exact intersection data for a pair of cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionReport {
    pub value: BigInt,
    /// c with P_delta P_mu = c det Hess(F) mod J.
    pub c: Rational,
    /// c (d-1)^{n+2}.
    pub c_scaled: BigInt,
    pub deg_delta: BigInt,
    pub deg_mu: BigInt,
    /// c (d-1)^{n+2} = deg(delta) deg(mu) (mod d).
    pub congruence_holds: bool,
}

pub fn intersection_prepared(
    ctx: &HypersurfaceContext,
    delta: &PreparedCycle,
    mu: &PreparedCycle,
) -> Result<IntersectionReport> {
    let field = ctx.ring.field();
    let mut c = field.zero();
    for (sa, da) in delta.cycle.summands.iter().zip(&delta.jac_dets) {
        for (sb, db) in mu.cycle.summands.iter().zip(&mu.jac_dets) {
            let nf = ctx.jacobian.normal_form_of_product(da, db)?;
            let cij = ctx.hess_ratio(&nf)?;
            c = &c + &cij.scale_int(&BigInt::from(sa.coeff * sb.coeff));
        }
    }
    let c = c
        .to_rational()
        .ok_or_else(|| Error::Integrality(format!("c = {c} is not rational")))?;
    let scaled = &c * Rational::from_integer(ctx.hess_scale());
    if !scaled.is_integer() {
        return Err(Error::Integrality(format!(
            "c*(d-1)^(n+2) = {scaled} is not an integer"
        )));
    }
    let c_scaled = scaled.to_integer();
    let d = BigInt::from(ctx.d);
    let num = &delta.degree * &mu.degree - &c_scaled;
    let (value, rem) = num.div_rem(&d);
    if !rem.is_zero() {
        return Err(Error::Integrality(format!(
            "intersection number {num}/{d} is not an integer"
        )));
    }
    let congruence_holds = (&c_scaled - &delta.degree * &mu.degree)
        .mod_floor(&d)
        .is_zero();
    Ok(IntersectionReport {
        value,
        c,
        c_scaled,
        deg_delta: delta.degree.clone(),
        deg_mu: mu.degree.clone(),
        congruence_holds,
    })
}

pub fn intersection_number(
    ctx: &HypersurfaceContext,
    delta: &CitCycle,
    mu: &CitCycle,
) -> Result<IntersectionReport> {
    let a = PreparedCycle::new(ctx, delta)?;
    let b = if delta == mu {
        a.clone()
    } else {
        PreparedCycle::new(ctx, mu)?
    };
    intersection_prepared(ctx, &a, &b)
}

/// Period of Q Omega / (f_0 ... f_{n+1}) over the torus attached to the covering
/// {f_i != 0}, where the f_i have common degree l and no common zero.
pub fn top_form_period(f: &[Poly], q: &Poly) -> Result<PeriodValue> {
    top_form_period_with_limit(f, q, DEFAULT_MAX_DIM)
}

pub fn top_form_period_with_limit(f: &[Poly], q: &Poly, max_dim: usize) -> Result<PeriodValue> {
    let jac = jacobian(f)?;
    let ring = jac.ring().clone();
    let k = ring.num_vars() as u32;
    if k < 2 {
        return Err(Error::InvalidArgument("need at least two variables".into()));
    }
    let l = f[0].degree()?;
    for p in f {
        let e = p.degree()?;
        if e != l {
            return Err(Error::DegreeMismatch {
                expected: l,
                found: e,
            });
        }
    }
    let socle = (l - 1) * k;
    require_degree(q, socle)?;
    let ideal = GradedIdeal::new(&ring, f.to_vec())?.with_max_dim(max_dim);
    let rep = ideal.gorenstein_check(socle)?;
    if !rep.passes() {
        return Err(Error::NotGorenstein {
            socle,
            reason: "the base locus of the f_i is nonempty".into(),
        });
    }
    let det = jac.det()?;
    let c = ideal.scalar_ratio(q, &det)?;
    let binom = k * (k - 1) / 2;
    let mut scale = num_traits::pow(BigInt::from(l), k as usize);
    if binom % 2 == 1 {
        scale = -scale;
    }
    Ok(PeriodValue {
        tpi_power: k - 1,
        inv_factorial: 0,
        factorial_power: 1,
        algebraic: c.scale_int(&scale),
    })
}

/// Sign helper used in reports: (-1)^{binom(n+2,2)}.
pub fn top_form_sign(n: u32) -> i64 {
    let k = n as i64 + 2;
    if (k * (k - 1) / 2) % 2 == 0 {
        1
    } else {
        -1
    }
}
