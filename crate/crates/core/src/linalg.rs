//! Sparse exact linear algebra over Q(zeta_N): vectors, canonical reduced
//! row-echelon subspaces, annihilators, kernels and intersections.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{CycloField, CycloScalar};

/// Sparse vector with strictly increasing indices and no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec {
    entries: Vec<(usize, CycloScalar)>,
}

impl SparseVec {
    pub fn new() -> SparseVec {
        SparseVec::default()
    }

    /// Builds a vector from arbitrary (index, value) pairs, summing duplicates.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, CycloScalar)>) -> SparseVec {
        let mut map: BTreeMap<usize, CycloScalar> = BTreeMap::new();
        for (i, v) in pairs {
            match map.get_mut(&i) {
                Some(acc) => *acc = &*acc + &v,
                None => {
                    map.insert(i, v);
                }
            }
        }
        SparseVec {
            entries: map.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn unit(i: usize, field: &Arc<CycloField>) -> SparseVec {
        SparseVec {
            entries: vec![(i, field.one())],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, CycloScalar)] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> Option<&CycloScalar> {
        self.entries
            .binary_search_by_key(&i, |(k, _)| *k)
            .ok()
            .map(|p| &self.entries[p].1)
    }

    pub fn lead(&self) -> Option<&(usize, CycloScalar)> {
        self.entries.first()
    }

    pub fn scale(&self, c: &CycloScalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::new();
        }
        SparseVec {
            entries: self.entries.iter().map(|(i, v)| (*i, v * c)).collect(),
        }
    }

    /// self + c * other.
    pub fn axpy(&self, c: &CycloScalar, other: &SparseVec) -> SparseVec {
        if c.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (
            self.entries.iter().peekable(),
            other.entries.iter().peekable(),
        );
        loop {
            match (a.peek(), b.peek()) {
                (Some((ia, va)), Some((ib, vb))) => {
                    if ia < ib {
                        out.push((*ia, va.clone()));
                        a.next();
                    } else if ib < ia {
                        out.push((*ib, vb * c));
                        b.next();
                    } else {
                        let s = va + &(vb * c);
                        if !s.is_zero() {
                            out.push((*ia, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((ia, va)), None) => {
                    out.push((*ia, va.clone()));
                    a.next();
                }
                (None, Some((ib, vb))) => {
                    out.push((*ib, vb * c));
                    b.next();
                }
                (None, None) => break,
            }
        }
        SparseVec { entries: out }
    }

    pub fn dot(&self, other: &SparseVec) -> Option<CycloScalar> {
        let mut acc: Option<CycloScalar> = None;
        for (i, v) in &self.entries {
            if let Some(w) = other.get(*i) {
                let t = v * w;
                acc = Some(match acc {
                    Some(a) => &a + &t,
                    None => t,
                });
            }
        }
        acc
    }
}

/// A subspace of an `ambient`-dimensional coordinate space, stored in
/// canonical reduced row-echelon form: every row has a leading 1 at its pivot
/// and zeros at every other pivot column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    field: Arc<CycloField>,
    rows: BTreeMap<usize, SparseVec>,
}

impl Subspace {
    pub fn zero(ambient: usize, field: &Arc<CycloField>) -> Subspace {
        Subspace {
            ambient,
            field: field.clone(),
            rows: BTreeMap::new(),
        }
    }

    pub fn full(ambient: usize, field: &Arc<CycloField>) -> Subspace {
        Subspace {
            ambient,
            field: field.clone(),
            rows: (0..ambient)
                .map(|i| (i, SparseVec::unit(i, field)))
                .collect(),
        }
    }

    pub fn span(
        ambient: usize,
        field: &Arc<CycloField>,
        vectors: impl IntoIterator<Item = SparseVec>,
    ) -> Subspace {
        let mut s = Subspace::zero(ambient, field);
        for v in vectors {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.rows.contains_key(&col)
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    /// Canonical rows in increasing pivot order.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec> {
        self.rows.values()
    }

    /// Columns that carry no pivot, increasing.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ambient)
            .filter(|c| !self.rows.contains_key(c))
            .collect()
    }

    /// The unique representative of `v` modulo this subspace supported off the
    /// pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let hits: Vec<(usize, CycloScalar)> = v
            .entries
            .iter()
            .filter(|(i, _)| self.rows.contains_key(i))
            .cloned()
            .collect();
        let mut out = v.clone();
        for (p, c) in hits {
            out = out.axpy(&-&c, &self.rows[&p]);
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        debug_assert!(v.entries.last().is_none_or(|(i, _)| *i < self.ambient));
        let r = self.reduce(&v);
        let Some((p, lead)) = r.lead().cloned() else {
            return false;
        };
        let r = r.scale(&lead.inv().expect("nonzero lead"));
        for row in self.rows.values_mut() {
            if let Some(c) = row.get(p).cloned() {
                *row = row.axpy(&-&c, &r);
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient == other.ambient && self.rows.values().all(|r| other.contains(r))
    }

    /// First canonical row of `self` that is not in `other`.
    pub fn first_outside(&self, other: &Subspace) -> Option<&SparseVec> {
        self.rows.values().find(|r| !other.contains(r))
    }

    /// Annihilator under the standard bilinear form.
    pub fn annihilator(&self) -> Subspace {
        let mut by_free: BTreeMap<usize, Vec<(usize, CycloScalar)>> = BTreeMap::new();
        for f in self.free_columns() {
            by_free.insert(f, vec![(f, self.field.one())]);
        }
        for (p, row) in &self.rows {
            for (j, v) in &row.entries {
                if *j != *p {
                    by_free.get_mut(j).expect("non-pivot entry").push((*p, -v));
                }
            }
        }
        Subspace::span(
            self.ambient,
            &self.field,
            by_free.into_values().map(SparseVec::from_pairs),
        )
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        if self.field.order() != other.field.order() {
            return Err(Error::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ));
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for r in other.rows.values() {
            out.insert(r.clone());
        }
        Ok(out)
    }

    /// Intersection, computed as the annihilator of the sum of annihilators.
    pub fn meet(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.annihilator().sum(&other.annihilator())?.annihilator())
    }
}

/// Kernel of the linear map sending the basis vector e_i of a `domain`-dimensional
/// space to `images[i]`.
pub fn kernel(domain: usize, field: &Arc<CycloField>, images: &[SparseVec]) -> Subspace {
    debug_assert_eq!(images.len(), domain);
    let mut columns: BTreeMap<usize, Vec<(usize, CycloScalar)>> = BTreeMap::new();
    for (i, img) in images.iter().enumerate() {
        for (j, v) in &img.entries {
            columns.entry(*j).or_default().push((i, v.clone()));
        }
    }
    let transposed = Subspace::span(
        domain,
        field,
        columns.into_values().map(|entries| SparseVec { entries }),
    );
    transposed.annihilator()
}
