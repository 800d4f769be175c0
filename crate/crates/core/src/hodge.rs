//! Zariski tangent spaces of Hodge loci as degree-d colon slices, and the
//! colon-ideal equality test comparing intersections with sums.

use crate::artinian::{slice_meet, GradedIdeal, GradedSubspace};
use crate::error::{Error, Result};
use crate::mpoly::Poly;
use crate::periods::HypersurfaceContext;

/// Dimensions of a tangent space inside C[x]_d.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TangentReport {
    pub ambient_dim: usize,
    pub tangent_dim: usize,
    pub codim: usize,
    pub basis: Option<Vec<Poly>>,
}

impl TangentReport {
    fn from_space(space: &GradedSubspace, with_basis: bool) -> TangentReport {
        TangentReport {
            ambient_dim: space.ambient_dim(),
            tangent_dim: space.dim(),
            codim: space.ambient_dim() - space.dim(),
            basis: with_basis.then(|| space.basis()),
        }
    }
}

fn check_sigma(ctx: &HypersurfaceContext, p: &Poly) -> Result<()> {
    match p.homogeneous_degree()? {
        Some(e) if e != ctx.sigma() => Err(Error::DegreeMismatch {
            expected: ctx.sigma(),
            found: e,
        }),
        _ => Ok(()),
    }
}

/// (J : P)_d.
pub fn tangent_space(ctx: &HypersurfaceContext, p_delta: &Poly) -> Result<GradedSubspace> {
    check_sigma(ctx, p_delta)?;
    ctx.jacobian_ideal().colon_slice(p_delta, ctx.d())
}

pub fn tangent(
    ctx: &HypersurfaceContext,
    p_delta: &Poly,
    with_basis: bool,
) -> Result<TangentReport> {
    Ok(TangentReport::from_space(
        &tangent_space(ctx, p_delta)?,
        with_basis,
    ))
}

/// (J : P_1)_d intersected with (J : P_2)_d.
pub fn tangent_meet_space(
    ctx: &HypersurfaceContext,
    p1: &Poly,
    p2: &Poly,
) -> Result<GradedSubspace> {
    let a = tangent_space(ctx, p1)?;
    if p1 == p2 {
        return Ok(a);
    }
    let b = tangent_space(ctx, p2)?;
    slice_meet(&a, &b)
}

pub fn tangent_meet(
    ctx: &HypersurfaceContext,
    p1: &Poly,
    p2: &Poly,
    with_basis: bool,
) -> Result<TangentReport> {
    Ok(TangentReport::from_space(
        &tangent_meet_space(ctx, p1, p2)?,
        with_basis,
    ))
}

/// Comparison of (I:R_1)_e meet (I:R_2)_e with (I:R_1+R_2)_e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColonEquality {
    pub holds: bool,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub ambient_dim: usize,
    /// Always true; reported as a consistency check.
    pub lhs_in_rhs: bool,
    /// First canonical basis element of the right side missing from the left.
    pub witness: Option<Poly>,
}

pub fn colon_equality(i: &GradedIdeal, r1: &Poly, r2: &Poly, e: u32) -> Result<ColonEquality> {
    let sum = r1.checked_add(r2)?;
    let mut deg = None;
    for (name, r) in [("R_1", r1), ("R_2", r2), ("R_1 + R_2", &sum)] {
        if i.contains(r)? {
            return Err(Error::InvalidArgument(format!("{name} lies in the ideal")));
        }
        let dr = r.degree()?;
        match deg {
            None => deg = Some(dr),
            Some(d0) if d0 != dr => {
                return Err(Error::DegreeMismatch {
                    expected: d0,
                    found: dr,
                })
            }
            _ => {}
        }
    }
    let lhs = slice_meet(&i.colon_slice(r1, e)?, &i.colon_slice(r2, e)?)?;
    let rhs = i.colon_slice(&sum, e)?;
    let lhs_in_rhs = lhs.is_subspace_of(&rhs)?;
    let holds = lhs_in_rhs && lhs.dim() == rhs.dim();
    let witness = if holds {
        None
    } else {
        rhs.first_outside(&lhs)?
    };
    Ok(ColonEquality {
        holds,
        lhs_dim: lhs.dim(),
        rhs_dim: rhs.dim(),
        ambient_dim: rhs.ambient_dim(),
        lhs_in_rhs,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;
    use crate::mpoly::PolyRing;
    use crate::periods::{associated_polynomial, CitCycle};

    fn cubic_surface(d: u32) -> HypersurfaceContext {
        let r = PolyRing::new(4, CycloField::new(2 * d).unwrap()).unwrap();
        let f = r
            .parse(&format!("x0^{d} + x1^{d} + x2^{d} + x3^{d}"))
            .unwrap();
        HypersurfaceContext::new(2, d, f).unwrap()
    }

    fn line_poly(ctx: &HypersurfaceContext) -> Poly {
        let r = ctx.ring();
        let d = ctx.d();
        let g = |a: usize, b: usize| {
            let terms: Vec<String> = (0..d)
                .map(|l| format!("z^{l}*x{a}^{}*x{b}^{l}", d - 1 - l))
                .collect();
            r.parse(&terms.join(" + ")).unwrap()
        };
        let cycle = CitCycle::single(
            1,
            vec![r.parse("x0 - z*x1").unwrap(), r.parse("x2 - z*x3").unwrap()],
            vec![g(0, 1), g(2, 3)],
        );
        associated_polynomial(ctx, &cycle).unwrap()
    }

    #[test]
    fn line_tangent_codims() {
        let ctx = cubic_surface(3);
        let rep = tangent(&ctx, &line_poly(&ctx), false).unwrap();
        assert_eq!((rep.ambient_dim, rep.tangent_dim, rep.codim), (20, 20, 0));
        let ctx = cubic_surface(4);
        let rep = tangent(&ctx, &line_poly(&ctx), true).unwrap();
        assert_eq!((rep.ambient_dim, rep.tangent_dim, rep.codim), (35, 34, 1));
        assert_eq!(rep.basis.unwrap().len(), 34);
    }

    #[test]
    fn tangent_of_ideal_element() {
        let ctx = cubic_surface(4);
        let p = ctx.ring().parse("x0^3*x1 + x2^3*x3").unwrap();
        assert_eq!(tangent(&ctx, &p, false).unwrap().codim, 0);
        let q = line_poly(&ctx);
        assert_eq!(
            tangent_meet(&ctx, &q, &q, false).unwrap(),
            tangent(&ctx, &q, false).unwrap()
        );
    }

    #[test]
    fn colon_equality_examples() {
        let r = PolyRing::new(2, CycloField::new(6).unwrap()).unwrap();
        let i =
            GradedIdeal::new(&r, vec![r.parse("x0^2").unwrap(), r.parse("x1^2").unwrap()]).unwrap();
        let r1 = r.parse("x0 + x1").unwrap();
        let r2 = r.parse("x0 - x1").unwrap();
        let at1 = colon_equality(&i, &r1, &r2, 1).unwrap();
        assert!(!at1.holds && at1.lhs_in_rhs);
        assert_eq!(at1.witness, Some(r.parse("x0").unwrap()));
        assert_eq!((at1.lhs_dim, at1.rhs_dim), (0, 1));
        let at0 = colon_equality(&i, &r1, &r2, 0).unwrap();
        assert!(at0.holds && at0.rhs_dim == 0);
        let at2 = colon_equality(&i, &r1, &r2, 2).unwrap();
        assert!(at2.holds && at2.rhs_dim == 3);
        assert!(colon_equality(&i, &r1, &r.parse("-x0 - x1").unwrap(), 1).is_err());
        assert!(colon_equality(&i, &r1, &r.parse("x0^2").unwrap(), 1).is_err());
    }
}
