use std::collections::HashMap;

use serde::Serialize;

use super::ScAlgebra;
use crate::arith::{dense_inverse, kernel, Field, SparseMatrix, SparseVec, Subspace};
use crate::error::{Error, Result};

/// Eigenvalue with a basis of its eigenspace, sorted by the eigenvalue's
/// rational coordinates.
pub type Eigenspaces<F> = Vec<(F, Vec<SparseVec<F>>)>;

fn sort_key<F: Field>(x: &F) -> Vec<crate::arith::Rational> {
    x.rational_coords().unwrap_or_default()
}

/// Minimal polynomial of `m` on the cyclic subspace of `v` (ascending coefficients).
fn krylov_poly<F: Field>(m: &SparseMatrix<F>, v: &SparseVec<F>, desc: &F::Desc) -> Vec<F> {
    let n = m.nrows();
    let mut vecs = vec![v.clone()];
    loop {
        let next = m.mul_vec(vecs.last().unwrap());
        let sub = Subspace::new(n, vecs.clone()).expect("krylov vectors are independent");
        if let Some(c) = sub.coords(&next) {
            let deg = vecs.len();
            let mut poly: Vec<F> = c.to_dense(deg, desc).iter().map(|x| x.neg()).collect();
            poly.push(F::one(desc));
            return poly;
        }
        vecs.push(next);
    }
}

/// Exact eigenspaces of a matrix; fails unless they fill the space.
pub fn eigen_decompose<F: Field>(m: &SparseMatrix<F>, expected: Option<&[F]>, desc: &F::Desc) -> Result<Eigenspaces<F>> {
    let n = m.nrows();
    let mut values: Vec<F> = match expected {
        Some(e) => e.to_vec(),
        None => {
            let mut vals: Vec<F> = Vec::new();
            // two probe vectors; the fill check below certifies the outcome
            for shift in [1i64, 2] {
                let probe = SparseVec::from_dense(&(0..n).map(|k| F::from_i64(((k as i64 * 7 + shift) % 11) + 1, desc)).collect::<Vec<_>>());
                let poly = krylov_poly(m, &probe, desc);
                for r in F::roots(&poly) {
                    if !vals.contains(&r) {
                        vals.push(r);
                    }
                }
            }
            vals
        }
    };
    values.sort_by_key(sort_key);
    values.dedup();
    let rows: Vec<SparseVec<F>> = m.transpose().columns().to_vec();
    let mut out = Vec::new();
    let mut found = 0;
    for lam in values {
        let shifted: Vec<SparseVec<F>> = rows.iter().enumerate().map(|(r, row)| row.axpy(&lam.neg(), &SparseVec::unit(r, desc))).collect();
        let basis = kernel(&shifted, n, desc);
        if !basis.is_empty() {
            found += basis.len();
            out.push((lam, basis));
        }
    }
    if found != n {
        return Err(Error::NotSemisimpleOverField { found, dim: n });
    }
    Ok(out)
}

pub fn ad_eigendecomposition<F: Field>(l: &ScAlgebra<F>, h: &SparseVec<F>, expected: Option<&[F]>) -> Result<Eigenspaces<F>> {
    eigen_decompose(&l.ad(h), expected, l.desc())
}

#[derive(Clone, Debug, Serialize)]
pub struct RootDatum<F: Field> {
    #[serde(skip)]
    pub cartan: Vec<SparseVec<F>>,
    /// Values `α(h_i)` on the Cartan elements.
    #[serde(serialize_with = "ser_roots")]
    pub roots: Vec<Vec<F>>,
    #[serde(skip)]
    pub root_spaces: Vec<Vec<SparseVec<F>>>,
    /// `(α, β) = αᵀ G⁻¹ β` with `G_ij = Σ_α α(h_i) α(h_j)` (the Killing form on the Cartan).
    #[serde(skip)]
    pub gram: Vec<Vec<F>>,
    #[serde(skip)]
    pub cartan_gram_inv: Vec<Vec<F>>,
}

fn ser_roots<F: Field, S: serde::Serializer>(r: &[Vec<F>], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(r.len()))?;
    for v in r {
        seq.serialize_element(&v.iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
    }
    seq.end()
}

impl<F: Field> RootDatum<F> {
    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// `λᵀ G⁻¹ μ` for functionals on the Cartan.
    pub fn inner(&self, lam: &[F], mu: &[F]) -> F {
        let d = lam[0].desc();
        let mut s = F::zero(&d);
        for (i, a) in lam.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in mu.iter().enumerate() {
                if !b.is_zero() {
                    s.add_mul_assign(&a.mul(b), &self.cartan_gram_inv[i][j]);
                }
            }
        }
        s
    }

    pub fn closed_under_negation(&self) -> bool {
        let set: std::collections::HashSet<&Vec<F>> = self.roots.iter().collect();
        self.roots.iter().all(|r| set.contains(&r.iter().map(|x| x.neg()).collect::<Vec<_>>()))
    }
}

/// Joint eigenspaces of commuting operators on an `n`-dimensional space.
/// Each block is `(eigenvalues, basis)`.
pub fn simultaneous_eigen<F: Field>(ops: &[SparseMatrix<F>], n: usize, desc: &F::Desc) -> Result<Vec<(Vec<F>, Vec<SparseVec<F>>)>> {
    let mut blocks: Vec<(Vec<F>, Vec<SparseVec<F>>)> = vec![(Vec::new(), (0..n).map(|i| SparseVec::unit(i, desc)).collect())];
    for (ci, op) in ops.iter().enumerate() {
        let mut next = Vec::new();
        for (w, basis) in blocks {
            let sub = Subspace::new(n, basis.clone()).expect("block basis is independent");
            let k = basis.len();
            let cols = basis
                .iter()
                .map(|b| sub.coords(&op.mul_vec(b)).ok_or_else(|| Error::NotSplit(format!("operator {ci} does not preserve a joint eigenspace"))))
                .collect::<Result<Vec<_>>>()?;
            let restricted = SparseMatrix::from_columns(k, cols);
            let eig = eigen_decompose(&restricted, None, desc).map_err(|e| match e {
                Error::NotSemisimpleOverField { found, dim } => {
                    Error::NotSplit(format!("operator {ci}: eigenvalues fill {found} of {dim} in a joint eigenspace"))
                }
                other => other,
            })?;
            for (lam, vecs) in eig {
                let mut w2 = w.clone();
                w2.push(lam);
                let amb: Vec<SparseVec<F>> = vecs
                    .iter()
                    .map(|c| {
                        let mut v = SparseVec::new();
                        for (idx, x) in c.iter() {
                            v = v.axpy(x, &basis[*idx]);
                        }
                        v
                    })
                    .collect();
                next.push((w2, amb));
            }
        }
        blocks = next;
    }
    Ok(blocks)
}

/// Simultaneous eigendecomposition under commuting elements.
pub fn roots<F: Field>(l: &ScAlgebra<F>, cartan: &[SparseVec<F>]) -> Result<RootDatum<F>> {
    let d = l.desc().clone();
    let zero = F::zero(&d);
    let ads: Vec<SparseMatrix<F>> = cartan.iter().map(|h| l.ad(h)).collect();
    let blocks = simultaneous_eigen(&ads, l.dim(), &d)?;
    let r = cartan.len();
    let mut roots = Vec::new();
    let mut spaces = Vec::new();
    let zero_dim = blocks.iter().find(|(w, _)| w.iter().all(|x| x.is_zero())).map_or(0, |(_, b)| b.len());
    if zero_dim != r {
        return Err(Error::NotCartan { zero_dim, rank: r });
    }
    for (w, b) in blocks {
        if w.iter().all(|x| x.is_zero()) {
            continue;
        }
        if b.len() != 1 {
            return Err(Error::NotSplit(format!("root space of dimension {}", b.len())));
        }
        roots.push(w);
        spaces.push(b);
    }
    let cg: Vec<Vec<F>> = (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut s = zero.clone();
                    for a in &roots {
                        s.add_mul_assign(&a[i], &a[j]);
                    }
                    s
                })
                .collect()
        })
        .collect();
    let inv = dense_inverse(&cg, &d).map_err(|_| Error::NotCartan { zero_dim, rank: r })?;
    let mut datum = RootDatum { cartan: cartan.to_vec(), roots, root_spaces: spaces, gram: Vec::new(), cartan_gram_inv: inv };
    let gram = datum.roots.iter().map(|a| datum.roots.iter().map(|b| datum.inner(a, b)).collect()).collect();
    datum.gram = gram;
    Ok(datum)
}

/// Index of each root by value.
pub(crate) fn root_index<F: Field>(r: &RootDatum<F>) -> HashMap<Vec<F>, usize> {
    r.roots.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::lie::sl2;

    #[test]
    fn sl2_eigenspaces() {
        let l = sl2();
        let eig = ad_eigendecomposition(&l, &l.unit(1), None).unwrap();
        let vals: Vec<Rational> = eig.iter().map(|e| e.0.clone()).collect();
        assert_eq!(vals, vec![Rational::from(-2), Rational::from(0), Rational::from(2)]);
        assert_eq!(eig[2].1, vec![l.unit(0)]);
        let bad = ad_eigendecomposition(&l, &l.unit(0), None).unwrap_err();
        assert!(matches!(bad, Error::NotSemisimpleOverField { .. }));
    }

    #[test]
    fn sl2_roots() {
        let l = sl2();
        let r = roots(&l, &[l.unit(1)]).unwrap();
        let mut vals: Vec<Rational> = r.roots.iter().map(|v| v[0].clone()).collect();
        vals.sort();
        assert_eq!(vals, vec![Rational::from(-2), Rational::from(2)]);
        assert!(r.closed_under_negation());
        assert_eq!(r.inner(&r.roots[0], &r.roots[0]), Rational::new(1, 2).unwrap());
    }

    #[test]
    fn non_cartan_detected() {
        let l = crate::lie::direct_sum(&sl2(), &sl2());
        let err = roots(&l, &[l.unit(1)]).unwrap_err();
        assert!(matches!(err, Error::NotCartan { .. } | Error::NotSplit(_)), "{err:?}");
    }
}
