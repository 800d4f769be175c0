//! Graded pieces of homogeneous ideals: slice bases, normal forms, Hilbert
//! functions, the Gorenstein pairing, scalar ratios and colon slices.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exactalg::CycloScalar;
use crate::linalg::{kernel, SparseVec, Subspace};
use crate::mpoly::{
    bounded_monomials, count_monomials, monomials_of_degree, Monomial, Poly, PolyRing,
};

/// Default bound on the dimension of any materialized coordinate space.
pub const DEFAULT_MAX_DIM: usize = 200_000;

/// A homogeneous ideal given by generators, with per-degree slices cached.
#[derive(Clone, Debug)]
pub struct GradedIdeal {
    ring: PolyRing,
    generators: Vec<Poly>,
    is_monomial: bool,
    use_monomial_path: bool,
    max_dim: usize,
    leading: Vec<Monomial>,
    bounds: Vec<u16>,
    cache: Arc<Mutex<BTreeMap<u32, Arc<SliceBasis>>>>,
}

/// Exact data for the degree-`e` piece I_e and the quotient R_e.
#[derive(Clone, Debug)]
pub struct SliceBasis {
    degree: u32,
    num_monomials: u128,
    standard: Vec<Monomial>,
    standard_index: HashMap<Monomial, usize>,
    dense: Option<DenseSlice>,
}

/// Monomial coordinates and the reduced echelon basis of I_e.
#[derive(Clone, Debug)]
pub struct DenseSlice {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal_rows: Subspace,
}

impl SliceBasis {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn num_monomials(&self) -> u128 {
        self.num_monomials
    }

    /// Standard monomials, a basis of R_e, largest first.
    pub fn standard_monomials(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn quotient_dim(&self) -> usize {
        self.standard.len()
    }

    pub fn ideal_dim(&self) -> u128 {
        self.num_monomials - self.standard.len() as u128
    }

    pub fn standard_position(&self, m: &Monomial) -> Option<usize> {
        self.standard_index.get(m).copied()
    }

    /// Present only when the slice was built by elimination.
    pub fn dense(&self) -> Option<&DenseSlice> {
        self.dense.as_ref()
    }
}

impl DenseSlice {
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn ideal_rows(&self) -> &Subspace {
        &self.ideal_rows
    }

    /// Pivot monomial indices of the echelon basis.
    pub fn pivots(&self) -> Vec<usize> {
        self.ideal_rows.pivots().collect()
    }
}

/// dim R_e for e = 0..=e_max.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertProfile {
    pub dims: Vec<usize>,
}

impl HilbertProfile {
    pub fn get(&self, e: u32) -> Option<usize> {
        self.dims.get(e as usize).copied()
    }
}

/// Outcome of checking the Artinian Gorenstein conditions at a given socle degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GorensteinReport {
    pub sigma: u32,
    pub socle_dim: usize,
    pub socle_dim_ok: bool,
    pub vanishing_ok: bool,
    /// Rank of R_i x R_{sigma-i} -> R_sigma for i = 0..=sigma/2; empty when
    /// the socle is not one-dimensional.
    pub pairing_ranks: Vec<usize>,
    pub pairing_perfect: bool,
}

impl GorensteinReport {
    pub fn passes(&self) -> bool {
        self.socle_dim_ok && self.vanishing_ok && self.pairing_perfect
    }
}

/// A subspace of the degree-`e` polynomials, in monomial coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    ring: PolyRing,
    degree: u32,
    monomials: Arc<Vec<Monomial>>,
    space: Subspace,
}

impl GradedSubspace {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn space(&self) -> &Subspace {
        &self.space
    }

    fn to_poly(&self, v: &SparseVec) -> Poly {
        let mut p = self.ring.zero();
        for (i, c) in v.entries() {
            p.add_term(self.monomials[*i].clone(), c.clone());
        }
        p
    }

    /// Canonical basis, in echelon order.
    pub fn basis(&self) -> Vec<Poly> {
        self.space.rows().map(|r| self.to_poly(r)).collect()
    }

    pub fn coords(&self, p: &Poly) -> Result<SparseVec> {
        if !p.is_homogeneous_of(self.degree) {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree().unwrap_or(0),
            });
        }
        let index: HashMap<&Monomial, usize> = self
            .monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m, i))
            .collect();
        Ok(SparseVec::from_pairs(
            p.terms().map(|(m, c)| (index[m], c.clone())),
        ))
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.space.contains(&self.coords(p)?))
    }

    fn check(&self, other: &GradedSubspace) -> Result<()> {
        if self.degree != other.degree || self.monomials.len() != other.monomials.len() {
            return Err(Error::AmbientMismatch(
                self.monomials.len(),
                other.monomials.len(),
            ));
        }
        Ok(())
    }

    pub fn is_subspace_of(&self, other: &GradedSubspace) -> Result<bool> {
        self.check(other)?;
        Ok(self.space.is_subspace_of(&other.space))
    }

    /// First canonical basis vector of `self` outside `other`.
    pub fn first_outside(&self, other: &GradedSubspace) -> Result<Option<Poly>> {
        self.check(other)?;
        Ok(self
            .space
            .first_outside(&other.space)
            .map(|r| self.to_poly(r)))
    }
}

/// Intersection of two subspaces of the same degree-e space.
pub fn slice_meet(a: &GradedSubspace, b: &GradedSubspace) -> Result<GradedSubspace> {
    a.check(b)?;
    Ok(GradedSubspace {
        ring: a.ring.clone(),
        degree: a.degree,
        monomials: a.monomials.clone(),
        space: a.space.meet(&b.space)?,
    })
}

impl GradedIdeal {
    pub fn new(ring: &PolyRing, generators: Vec<Poly>) -> Result<GradedIdeal> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("an ideal needs a generator".into()));
        }
        for g in &generators {
            if g.ring() != ring {
                return Err(Error::RingMismatch);
            }
            g.degree()?;
        }
        let is_monomial = generators.iter().all(|g| g.num_terms() == 1);
        let leading: Vec<Monomial> = generators
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero").clone())
            .collect();
        let mut bounds = vec![u16::MAX; ring.num_vars()];
        if is_monomial {
            for m in &leading {
                let support: Vec<usize> = (0..m.num_vars()).filter(|&i| m.exps()[i] > 0).collect();
                if let [i] = support[..] {
                    bounds[i] = bounds[i].min(m.exps()[i] - 1);
                }
            }
        }
        Ok(GradedIdeal {
            ring: ring.clone(),
            generators,
            is_monomial,
            use_monomial_path: is_monomial,
            max_dim: DEFAULT_MAX_DIM,
            leading,
            bounds,
            cache: Arc::new(Mutex::new(BTreeMap::new())),
        })
    }

    pub fn with_max_dim(mut self, max_dim: usize) -> GradedIdeal {
        self.max_dim = max_dim;
        self.cache = Arc::new(Mutex::new(BTreeMap::new()));
        self
    }

    /// Disables the monomial shortcut, so every slice is built by elimination.
    pub fn force_dense(mut self) -> GradedIdeal {
        self.use_monomial_path = false;
        self.cache = Arc::new(Mutex::new(BTreeMap::new()));
        self
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_monomial(&self) -> bool {
        self.is_monomial
    }

    pub fn uses_monomial_path(&self) -> bool {
        self.use_monomial_path
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    fn in_monomial_ideal(&self, m: &Monomial) -> bool {
        self.leading.iter().any(|g| g.divides(m))
    }

    fn guard(&self, required: u128) -> Result<()> {
        if required > self.max_dim as u128 {
            return Err(Error::ResourceLimit {
                required,
                limit: self.max_dim,
            });
        }
        Ok(())
    }

    /// Number of monomials of degree `e` within the pure-power bounds.
    fn bounded_count(&self, e: u32) -> u128 {
        let mut dp = vec![0u128; e as usize + 1];
        dp[0] = 1;
        for &b in &self.bounds {
            let mut next = vec![0u128; e as usize + 1];
            for (s, &v) in dp.iter().enumerate() {
                if v == 0 {
                    continue;
                }
                let top = (e as usize - s).min(b as usize);
                for k in 0..=top {
                    next[s + k] = next[s + k].saturating_add(v);
                }
            }
            dp = next;
        }
        dp[e as usize]
    }

    pub fn slice(&self, e: u32) -> Result<Arc<SliceBasis>> {
        if let Some(s) = self.cache.lock().expect("slice cache").get(&e) {
            return Ok(s.clone());
        }
        let built = Arc::new(if self.use_monomial_path {
            self.monomial_slice(e)?
        } else {
            self.dense_slice(e)?
        });
        self.cache
            .lock()
            .expect("slice cache")
            .entry(e)
            .or_insert(built.clone());
        Ok(built)
    }

    fn monomial_slice(&self, e: u32) -> Result<SliceBasis> {
        self.guard(self.bounded_count(e))?;
        let standard: Vec<Monomial> = bounded_monomials(self.ring.num_vars(), e, &self.bounds)
            .into_iter()
            .filter(|m| !self.in_monomial_ideal(m))
            .collect();
        let standard_index = standard.iter().cloned().zip(0..).collect();
        Ok(SliceBasis {
            degree: e,
            num_monomials: count_monomials(self.ring.num_vars(), e),
            standard,
            standard_index,
            dense: None,
        })
    }

    fn dense_slice(&self, e: u32) -> Result<SliceBasis> {
        let total = count_monomials(self.ring.num_vars(), e);
        self.guard(total)?;
        let monomials = monomials_of_degree(self.ring.num_vars(), e);
        let index: HashMap<Monomial, usize> = monomials.iter().cloned().zip(0..).collect();
        // I_e = sum_i x_i I_{e-1} + span of the generators of degree e; the
        // reduced rows of I_{e-1} are sparse, which keeps coefficients small.
        let mut vectors: Vec<SparseVec> = Vec::new();
        if e > 0 {
            let below = self.slice(e - 1)?;
            let prev = below.dense().expect("dense path");
            let rows: Vec<&SparseVec> = prev.ideal_rows.rows().collect();
            let k = self.ring.num_vars();
            vectors = (0..k * rows.len())
                .into_par_iter()
                .map(|t| {
                    let x = Monomial::var(k, t % k);
                    SparseVec::from_pairs(
                        rows[t / k]
                            .entries()
                            .iter()
                            .map(|(j, c)| (index[&prev.monomials[*j].mul(&x)], c.clone())),
                    )
                })
                .collect();
            vectors.sort_by_key(|v| (v.lead().map(|l| l.0), v.nnz()));
        }
        for g in &self.generators {
            if g.degree()? == e {
                vectors.push(SparseVec::from_pairs(
                    g.terms().map(|(t, c)| (index[t], c.clone())),
                ));
            }
        }
        let ideal_rows = Subspace::span(monomials.len(), self.ring.field(), vectors);
        let standard: Vec<Monomial> = ideal_rows
            .free_columns()
            .into_iter()
            .map(|i| monomials[i].clone())
            .collect();
        let standard_index = standard.iter().cloned().zip(0..).collect();
        Ok(SliceBasis {
            degree: e,
            num_monomials: total,
            standard,
            standard_index,
            dense: Some(DenseSlice {
                monomials,
                index,
                ideal_rows,
            }),
        })
    }

    /// Coordinates of the normal form of `p` in the standard basis of its degree.
    pub fn normal_form_coords(&self, p: &Poly) -> Result<(u32, SparseVec)> {
        let Some(e) = p.homogeneous_degree()? else {
            return Ok((0, SparseVec::new()));
        };
        let slice = self.slice(e)?;
        Ok((e, self.coords_in(&slice, p)))
    }

    fn coords_in(&self, slice: &SliceBasis, p: &Poly) -> SparseVec {
        match &slice.dense {
            None => SparseVec::from_pairs(
                p.terms()
                    .filter_map(|(m, c)| slice.standard_position(m).map(|i| (i, c.clone()))),
            ),
            Some(d) => {
                let v = SparseVec::from_pairs(p.terms().map(|(m, c)| (d.index[m], c.clone())));
                let r = d.ideal_rows.reduce(&v);
                SparseVec::from_pairs(
                    r.entries()
                        .iter()
                        .map(|(i, c)| (slice.standard_index[&d.monomials[*i]], c.clone())),
                )
            }
        }
    }

    fn poly_from_coords(&self, slice: &SliceBasis, v: &SparseVec) -> Poly {
        let mut out = self.ring.zero();
        for (i, c) in v.entries() {
            out.add_term(slice.standard[*i].clone(), c.clone());
        }
        out
    }

    /// The representative of p + I supported on standard monomials.
    pub fn normal_form(&self, p: &Poly) -> Result<Poly> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let Some(e) = p.homogeneous_degree()? else {
            return Ok(self.ring.zero());
        };
        if self.use_monomial_path {
            return Ok(p.filter_terms(|m| !self.in_monomial_ideal(m)));
        }
        let slice = self.slice(e)?;
        Ok(self.poly_from_coords(&slice, &self.coords_in(&slice, p)))
    }

    /// normal_form(a * b); on the monomial path products landing in the ideal
    /// are skipped before any coefficient arithmetic.
    pub fn normal_form_of_product(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        if a.ring() != &self.ring || b.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        if !self.use_monomial_path {
            return self.normal_form(&a.checked_mul(b)?);
        }
        a.homogeneous_degree()?;
        b.homogeneous_degree()?;
        let mut out = self.ring.zero();
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let m = ma.mul(mb);
                if !self.in_monomial_ideal(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn contains(&self, p: &Poly) -> Result<bool> {
        Ok(self.normal_form(p)?.is_zero())
    }

    pub fn hilbert_function(&self, e_max: u32) -> Result<HilbertProfile> {
        let dims = (0..=e_max)
            .map(|e| self.slice(e).map(|s| s.quotient_dim()))
            .collect::<Result<Vec<_>>>()?;
        Ok(HilbertProfile { dims })
    }

    pub fn gorenstein_check(&self, sigma: u32) -> Result<GorensteinReport> {
        let top = self.slice(sigma)?;
        let above = self.slice(sigma + 1)?;
        let socle_dim = top.quotient_dim();
        let mut report = GorensteinReport {
            sigma,
            socle_dim,
            socle_dim_ok: socle_dim == 1,
            vanishing_ok: above.quotient_dim() == 0,
            pairing_ranks: Vec::new(),
            pairing_perfect: false,
        };
        if socle_dim != 1 {
            return Ok(report);
        }
        let mut perfect = true;
        for i in 0..=sigma / 2 {
            let left = self.slice(i)?;
            let right = self.slice(sigma - i)?;
            let rank = if self.use_monomial_path {
                let s = &top.standard[0];
                left.standard
                    .iter()
                    .filter(|m| {
                        s.div(m)
                            .is_some_and(|q| right.standard_position(&q).is_some())
                    })
                    .count()
            } else {
                let rows: Vec<SparseVec> = left
                    .standard
                    .par_iter()
                    .map(|ma| {
                        SparseVec::from_pairs(right.standard.iter().enumerate().filter_map(
                            |(j, mb)| {
                                let prod = self.ring.term(ma.mul(mb), self.ring.field().one());
                                let v = self.coords_in(&top, &prod);
                                v.get(0).map(|c| (j, c.clone()))
                            },
                        ))
                    })
                    .collect();
                Subspace::span(right.quotient_dim(), self.ring.field(), rows).dim()
            };
            perfect &= rank == left.quotient_dim() && rank == right.quotient_dim();
            report.pairing_ranks.push(rank);
        }
        report.pairing_perfect = perfect;
        Ok(report)
    }

    /// The unique c with normal_form(p) = c * normal_form(q).
    pub fn scalar_ratio(&self, p: &Poly, q: &Poly) -> Result<CycloScalar> {
        if let (Some(dp), Some(dq)) = (p.homogeneous_degree()?, q.homogeneous_degree()?) {
            if dp != dq {
                return Err(Error::DegreeMismatch {
                    expected: dq,
                    found: dp,
                });
            }
        }
        ratio_of_forms(&self.normal_form(p)?, &self.normal_form(q)?)
    }

    /// Basis of (I : p)_e in degree-e monomial coordinates.
    pub fn colon_slice(&self, p: &Poly, e: u32) -> Result<GradedSubspace> {
        if p.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        let nv = self.ring.num_vars();
        self.guard(count_monomials(nv, e))?;
        let monomials = Arc::new(monomials_of_degree(nv, e));
        let field = self.ring.field();
        let Some(dp) = p.homogeneous_degree()? else {
            return Ok(GradedSubspace {
                ring: self.ring.clone(),
                degree: e,
                space: Subspace::full(monomials.len(), field),
                monomials,
            });
        };
        let target = self.slice(e + dp)?;
        let images: Vec<SparseVec> = monomials
            .par_iter()
            .map(|m| self.coords_in(&target, &p.mul_monomial(m)))
            .collect();
        Ok(GradedSubspace {
            ring: self.ring.clone(),
            degree: e,
            space: kernel(monomials.len(), field, &images),
            monomials,
        })
    }

    /// I_e as a subspace of the degree-e monomial space.
    pub fn ideal_subspace(&self, e: u32) -> Result<GradedSubspace> {
        self.colon_slice(&self.ring.one(), e)
    }
}

/// The unique c with p = c * q, for q nonzero; errors when q is zero or the
/// two are not proportional.
pub fn ratio_of_forms(p: &Poly, q: &Poly) -> Result<CycloScalar> {
    let Some((m, cq)) = q.terms().next() else {
        return Err(Error::ReferenceInIdeal);
    };
    let c = match p.coefficient(m) {
        Some(cp) => cp.checked_div(cq)?,
        None => q.ring().field().zero(),
    };
    if p != &q.scale(&c) {
        return Err(Error::NotProportional);
    }
    Ok(c)
}
