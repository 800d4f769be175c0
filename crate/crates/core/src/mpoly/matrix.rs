//! Square polynomial matrices, Jacobians, Hessians and exact determinants.

use std::collections::HashMap;

use super::{Poly, PolyRing};
use crate::error::{Error, Result};

/// Default bound on the dimension accepted by [`PolyMatrix::det`].
pub const DEFAULT_DET_LIMIT: usize = 12;

/// A k-by-k matrix of polynomials over one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    ring: PolyRing,
    dim: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    /// Builds a matrix from rows; every row must have `rows.len()` entries.
    pub fn new(ring: &PolyRing, rows: Vec<Vec<Poly>>) -> Result<PolyMatrix> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for row in rows {
            if row.len() != dim {
                return Err(Error::Arity {
                    expected: dim,
                    found: row.len(),
                });
            }
            for p in row {
                if p.ring() != ring {
                    return Err(Error::RingMismatch);
                }
                entries.push(p);
            }
        }
        Ok(PolyMatrix {
            ring: ring.clone(),
            dim,
            entries,
        })
    }

    pub fn identity(ring: &PolyRing, dim: usize) -> PolyMatrix {
        let rows = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { ring.one() } else { ring.zero() })
                    .collect()
            })
            .collect();
        PolyMatrix::new(ring, rows).expect("square by construction")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.dim + j]
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> PolyMatrix {
        let rows = (0..self.dim)
            .filter(|&r| r != i)
            .map(|r| {
                (0..self.dim)
                    .filter(|&c| c != j)
                    .map(|c| self.get(r, c).clone())
                    .collect()
            })
            .collect();
        PolyMatrix::new(&self.ring, rows).expect("square by construction")
    }

    pub fn det(&self) -> Result<Poly> {
        self.det_with_limit(DEFAULT_DET_LIMIT)
    }

    /// Cofactor expansion along the sparsest remaining row or column, memoized
    /// on the surviving row and column sets.
    pub fn det_with_limit(&self, limit: usize) -> Result<Poly> {
        if self.dim > limit || self.dim > 31 {
            return Err(Error::MatrixTooLarge {
                dim: self.dim,
                limit: limit.min(31),
            });
        }
        let full = (1u32 << self.dim) - 1;
        let mut memo = HashMap::new();
        Ok(self.det_rec(full, full, &mut memo))
    }

    fn det_rec(&self, rows: u32, cols: u32, memo: &mut HashMap<(u32, u32), Poly>) -> Poly {
        if rows == 0 {
            return self.ring.one();
        }
        if let Some(p) = memo.get(&(rows, cols)) {
            return p.clone();
        }
        let live = |mask: u32| (0..self.dim).filter(move |&k| mask >> k & 1 == 1);
        let nnz_row = |r: usize| live(cols).filter(|&c| !self.get(r, c).is_zero()).count();
        let nnz_col = |c: usize| live(rows).filter(|&r| !self.get(r, c).is_zero()).count();
        let best_row = live(rows).map(|r| (nnz_row(r), r)).min().expect("nonempty");
        let best_col = live(cols).map(|c| (nnz_col(c), c)).min().expect("nonempty");

        let mut acc = self.ring.zero();
        if best_row.0 <= best_col.0 {
            let r = best_row.1;
            let pr = live(rows).position(|k| k == r).expect("live row");
            for (pc, c) in live(cols).enumerate() {
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let sub = self.det_rec(rows & !(1 << r), cols & !(1 << c), memo);
                acc = self.accumulate(acc, a, &sub, pr + pc);
            }
        } else {
            let c = best_col.1;
            let pc = live(cols).position(|k| k == c).expect("live col");
            for (pr, r) in live(rows).enumerate() {
                let a = self.get(r, c);
                if a.is_zero() {
                    continue;
                }
                let sub = self.det_rec(rows & !(1 << r), cols & !(1 << c), memo);
                acc = self.accumulate(acc, a, &sub, pr + pc);
            }
        }
        memo.insert((rows, cols), acc.clone());
        acc
    }

    fn accumulate(&self, acc: Poly, a: &Poly, sub: &Poly, parity: usize) -> Poly {
        if sub.is_zero() {
            return acc;
        }
        let term = a * sub;
        if parity.is_multiple_of(2) {
            &acc + &term
        } else {
            &acc - &term
        }
    }
}

/// Jac(h)[i][j] = dh_i/dx_j; requires exactly `num_vars` entries.
pub fn jacobian(h: &[Poly]) -> Result<PolyMatrix> {
    let Some(first) = h.first() else {
        return Err(Error::Arity {
            expected: 1,
            found: 0,
        });
    };
    let ring = first.ring().clone();
    let k = ring.num_vars();
    if h.len() != k {
        return Err(Error::Arity {
            expected: k,
            found: h.len(),
        });
    }
    let mut rows = Vec::with_capacity(k);
    for p in h {
        if p.ring() != &ring {
            return Err(Error::RingMismatch);
        }
        rows.push((0..k).map(|j| p.partial(j)).collect::<Result<Vec<_>>>()?);
    }
    PolyMatrix::new(&ring, rows)
}

/// Hess(f)[i][j] = d^2 f / dx_i dx_j.
pub fn hessian(f: &Poly) -> Result<PolyMatrix> {
    f.homogeneous_degree()?;
    let ring = f.ring().clone();
    let k = ring.num_vars();
    let grads = (0..k).map(|i| f.partial(i)).collect::<Result<Vec<_>>>()?;
    jacobian(&grads).inspect(|m| {
        debug_assert_eq!(m.ring(), &ring);
    })
}

/// Checks `Omega_f = l^{-1} det(Jac f) Omega` coefficientwise: Euler's relation
/// for every f_i, then for every k
/// `l * sum_i (-1)^i f_i M_{ik} = (-1)^k x_k det(Jac f)` with M_{ik} the minor
/// of Jac f without row i and column k.
pub fn euler_omega_check(f: &[Poly]) -> Result<bool> {
    let jac = jacobian(f)?;
    let ring = jac.ring().clone();
    let k = ring.num_vars();
    let mut l = None;
    for p in f {
        let e = p.degree()?;
        match l {
            None => l = Some(e),
            Some(l0) if l0 != e => {
                return Err(Error::DegreeMismatch {
                    expected: l0,
                    found: e,
                })
            }
            _ => {}
        }
    }
    let l = l.expect("nonempty") as i64;
    if l < 1 {
        return Err(Error::InvalidArgument("degree must be at least 1".into()));
    }
    for (i, p) in f.iter().enumerate() {
        let mut lhs = ring.zero();
        for j in 0..k {
            lhs = &lhs + &(&ring.var(j)? * jac.get(i, j));
        }
        if lhs != p.scale_int(l) {
            return Ok(false);
        }
    }
    let det = jac.det()?;
    for col in 0..k {
        let mut lhs = ring.zero();
        for (i, p) in f.iter().enumerate() {
            let m = jac.minor(i, col).det()?;
            let t = p * &m;
            lhs = if i % 2 == 0 { &lhs + &t } else { &lhs - &t };
        }
        let rhs = &ring.var(col)? * &det;
        let rhs = if col % 2 == 0 { rhs } else { -&rhs };
        if lhs.scale_int(l) != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::CycloField;

    fn ring(n: usize) -> PolyRing {
        PolyRing::new(n, CycloField::new(1).unwrap()).unwrap()
    }

    fn polys(r: &PolyRing, texts: &[&str]) -> Vec<Poly> {
        texts.iter().map(|t| r.parse(t).unwrap()).collect()
    }

    #[test]
    fn fermat_cubic_hessian() {
        let r = ring(4);
        let f = r.parse("x0^3 + x1^3 + x2^3 + x3^3").unwrap();
        let h = hessian(&f).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let expect = if i == j {
                    r.parse(&format!("6*x{i}")).unwrap()
                } else {
                    r.zero()
                };
                assert_eq!(h.get(i, j), &expect);
            }
        }
        assert_eq!(h.det().unwrap(), r.parse("1296*x0*x1*x2*x3").unwrap());
    }

    #[test]
    fn jacobian_examples() {
        let r = ring(2);
        let j = jacobian(&polys(&r, &["x0", "x1"])).unwrap();
        assert_eq!(j, PolyMatrix::identity(&r, 2));
        let j = jacobian(&polys(&r, &["x0 + x1", "x0^2 - x0*x1 + x1^2"])).unwrap();
        assert_eq!(j.get(0, 0), &r.one());
        assert_eq!(j.get(0, 1), &r.one());
        assert_eq!(j.get(1, 0), &r.parse("2*x0 - x1").unwrap());
        assert_eq!(j.get(1, 1), &r.parse("2*x1 - x0").unwrap());
        assert_eq!(
            jacobian(&polys(&r, &["x0"])),
            Err(Error::Arity {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn line_block_determinant() {
        let r = ring(4);
        let h = polys(
            &r,
            &[
                "x0 + x1",
                "x0^2 - x0*x1 + x1^2",
                "x2 + x3",
                "x2^2 - x2*x3 + x3^2",
            ],
        );
        let det = jacobian(&h).unwrap().det().unwrap();
        assert_eq!(det, r.parse("9*(x0 - x1)*(x2 - x3)").unwrap());
    }

    #[test]
    fn identity_and_limit() {
        let r = ring(3);
        for k in 0..6 {
            assert_eq!(PolyMatrix::identity(&r, k).det().unwrap(), r.one());
        }
        assert_eq!(
            PolyMatrix::identity(&r, 13).det(),
            Err(Error::MatrixTooLarge { dim: 13, limit: 12 })
        );
        assert!(PolyMatrix::identity(&r, 13).det_with_limit(13).is_ok());
    }

    #[test]
    fn dense_determinant_matches_leibniz() {
        let r = ring(3);
        let e = polys(
            &r,
            &[
                "x0",
                "x1 + 2*x2",
                "3",
                "x0*x1",
                "-x2",
                "x1",
                "1",
                "x0 - x1",
                "x2^2",
            ],
        );
        let m = PolyMatrix::new(
            &r,
            vec![e[0..3].to_vec(), e[3..6].to_vec(), e[6..9].to_vec()],
        )
        .unwrap();
        let g = |i: usize, j: usize| &e[3 * i + j];
        let perms: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
            ([1, 0, 2], -1),
        ];
        let mut expect = r.zero();
        for (p, s) in perms {
            let t = &(g(0, p[0]) * g(1, p[1])) * g(2, p[2]);
            expect = &expect + &t.scale_int(s);
        }
        assert_eq!(m.det().unwrap(), expect);
    }

    #[test]
    fn euler_examples() {
        let r = ring(4);
        assert!(euler_omega_check(&polys(&r, &["x0", "x1", "x2", "x3"])).unwrap());
        let sq = polys(&r, &["x0^2", "x1^2", "x2^2", "x3^2"]);
        assert!(euler_omega_check(&sq).unwrap());
        assert_eq!(
            jacobian(&sq).unwrap().det().unwrap(),
            r.parse("16*x0*x1*x2*x3").unwrap()
        );
        let dense = polys(&r, &["x0^2 + x1*x2", "x1^2 - x3^2", "x2^2 + x0*x3", "x3^2"]);
        assert!(euler_omega_check(&dense).unwrap());
        assert_eq!(
            euler_omega_check(&polys(&r, &["x0", "x1^2", "x2", "x3"])),
            Err(Error::DegreeMismatch {
                expected: 1,
                found: 2
            })
        );
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn entry() -> impl Strategy<Value = String> {
            prop_oneof![
                Just("0".to_string()),
                (-3i64..4).prop_map(|c| c.to_string()),
                (-3i64..4, 0usize..3).prop_map(|(c, i)| format!("{c}*x{i}")),
                (0usize..3, 0usize..3).prop_map(|(i, j)| format!("x{i}*x{j} - 1")),
            ]
        }

        fn square(k: usize) -> impl Strategy<Value = Vec<String>> {
            proptest::collection::vec(entry(), k * k)
        }

        fn build(r: &PolyRing, k: usize, e: &[String]) -> PolyMatrix {
            let rows = (0..k)
                .map(|i| (0..k).map(|j| r.parse(&e[i * k + j]).unwrap()).collect())
                .collect();
            PolyMatrix::new(r, rows).unwrap()
        }

        proptest! {
            #[test]
            fn block_diagonal_det_is_product(a in square(2), b in square(3)) {
                let r = ring(3);
                let ma = build(&r, 2, &a);
                let mb = build(&r, 3, &b);
                let rows = (0..5)
                    .map(|i| {
                        (0..5)
                            .map(|j| match (i < 2, j < 2) {
                                (true, true) => ma.get(i, j).clone(),
                                (false, false) => mb.get(i - 2, j - 2).clone(),
                                _ => r.zero(),
                            })
                            .collect()
                    })
                    .collect();
                let big = PolyMatrix::new(&r, rows).unwrap();
                prop_assert_eq!(big.det().unwrap(), &ma.det().unwrap() * &mb.det().unwrap());
            }
        }
    }
}
