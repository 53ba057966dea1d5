//! Lie algebras given by sparse structure constants.

mod dynkin;
mod eigen;

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::linalg::Accumulator;
use crate::arith::{certified_rank, kernel, Field, QuadExt, RankCertificate, Rational, SparseMatrix, SparseVec, Subspace};
use crate::error::{Error, Result};

pub use dynkin::{bourbaki_cartan, identify_type, permutation_equivalent, TypeId};
pub use eigen::{ad_eigendecomposition, eigen_decompose, roots, simultaneous_eigen, Eigenspaces, RootDatum};

/// `[b_i, b_j] = Σ_k c_ij^k b_k`, stored densely over pairs and sparsely over `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScAlgebra<F: Field> {
    dim: usize,
    names: Vec<String>,
    table: Vec<SparseVec<F>>,
    desc: F::Desc,
}

impl<F: Field> ScAlgebra<F> {
    /// Build from `[b_i, b_j]` for `i < j`; the rest follows by antisymmetry.
    pub fn from_upper(names: Vec<String>, desc: F::Desc, mut upper: impl FnMut(usize, usize) -> SparseVec<F>) -> Self {
        let dim = names.len();
        let mut table = vec![SparseVec::new(); dim * dim];
        for i in 0..dim {
            for j in i + 1..dim {
                let v = upper(i, j);
                table[j * dim + i] = v.neg();
                table[i * dim + j] = v;
            }
        }
        ScAlgebra { dim, names, table, desc }
    }

    /// Build from explicit entries `(i, j, k, c)`. Entries for `(j, i)` are
    /// optional but must agree with antisymmetry when present.
    pub fn from_entries(names: Vec<String>, desc: F::Desc, entries: &[(usize, usize, usize, F)]) -> Result<Self> {
        let dim = names.len();
        let mut given: BTreeMap<(usize, usize, usize), F> = BTreeMap::new();
        for (i, j, k, c) in entries {
            let bad = |msg: &str| Error::Schema { field: format!("c[{i},{j},{k}]"), msg: msg.to_string() };
            if *i >= dim || *j >= dim || *k >= dim {
                return Err(bad("index out of range"));
            }
            if i == j && !c.is_zero() {
                return Err(bad("antisymmetry broken: nonzero [b_i, b_i]"));
            }
            if given.insert((*i, *j, *k), c.clone()).is_some() {
                return Err(bad("duplicate entry"));
            }
        }
        for ((i, j, k), c) in &given {
            let mirror = given.get(&(*j, *i, *k));
            if let Some(m) = mirror {
                if *m != c.neg() {
                    return Err(Error::Schema {
                        field: format!("c[{i},{j},{k}]"),
                        msg: format!("antisymmetry broken: c[{j},{i},{k}] = {m}, expected {}", c.neg()),
                    });
                }
            }
        }
        let mut raw: Vec<Vec<(usize, F)>> = vec![Vec::new(); dim * dim];
        for ((i, j, k), c) in given {
            if i < j {
                raw[i * dim + j].push((k, c));
            } else if i > j {
                raw[j * dim + i].push((k, c.neg()));
            }
        }
        // mirrors were verified equal, so drop the doubled copy
        let upper: Vec<SparseVec<F>> = raw
            .into_iter()
            .map(|mut e| {
                e.sort_by_key(|x| x.0);
                e.dedup_by(|a, b| a.0 == b.0);
                SparseVec::from_entries(e)
            })
            .collect();
        Ok(Self::from_upper(names, desc, |i, j| upper[i * dim + j].clone()))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn desc(&self) -> &F::Desc {
        &self.desc
    }

    pub fn basis_bracket(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i * self.dim + j]
    }

    pub fn unit(&self, i: usize) -> SparseVec<F> {
        SparseVec::unit(i, &self.desc)
    }

    pub fn bracket(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.dim, &self.desc);
        self.bracket_into(&mut acc, x, y);
        acc.drain()
    }

    fn bracket_into(&self, acc: &mut Accumulator<F>, x: &SparseVec<F>, y: &SparseVec<F>) {
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let ab = a.mul(b);
                for (k, c) in self.basis_bracket(*i, *j).iter() {
                    acc.add_mul(*k, &ab, c);
                }
            }
        }
    }

    /// Matrix of `ad x`.
    pub fn ad(&self, x: &SparseVec<F>) -> SparseMatrix<F> {
        let mut acc = Accumulator::new(self.dim, &self.desc);
        let cols = (0..self.dim)
            .map(|j| {
                for (i, a) in x.iter() {
                    for (k, c) in self.basis_bracket(*i, j).iter() {
                        acc.add_mul(*k, a, c);
                    }
                }
                acc.drain()
            })
            .collect();
        SparseMatrix::from_columns(self.dim, cols)
    }

    /// `J(x,y,z) = [[x,y],z] + [[y,z],x] + [[z,x],y]`.
    pub fn jacobiator(&self, x: &SparseVec<F>, y: &SparseVec<F>, z: &SparseVec<F>) -> SparseVec<F> {
        let mut acc = Accumulator::new(self.dim, &self.desc);
        self.bracket_into(&mut acc, &self.bracket(x, y), z);
        self.bracket_into(&mut acc, &self.bracket(y, z), x);
        self.bracket_into(&mut acc, &self.bracket(z, x), y);
        acc.drain()
    }

    fn basis_jacobiator(&self, acc: &mut Accumulator<F>, i: usize, j: usize, k: usize) -> SparseVec<F> {
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (l, x) in self.basis_bracket(a, b).iter() {
                for (m, y) in self.basis_bracket(*l, c).iter() {
                    acc.add_mul(*m, x, y);
                }
            }
        }
        acc.drain()
    }

    pub fn jacobi_check(&self, mode: JacobiMode) -> JacobiReport<F> {
        let n = self.dim;
        match mode {
            JacobiMode::Full => {
                let witness = (0..n).into_par_iter().find_map_first(|i| {
                    let mut acc = Accumulator::new(n, &self.desc);
                    for j in i + 1..n {
                        for k in j + 1..n {
                            let r = self.basis_jacobiator(&mut acc, i, j, k);
                            if !r.is_empty() {
                                return Some(((i, j, k), r));
                            }
                        }
                    }
                    None
                });
                let total = n * n.saturating_sub(1) * n.saturating_sub(2) / 6;
                JacobiReport { mode, triples_checked: total, witness }
            }
            JacobiMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut acc = Accumulator::new(n, &self.desc);
                let mut witness = None;
                let mut checked = 0;
                if n >= 3 {
                    while checked < count {
                        let mut t = [rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)];
                        t.sort_unstable();
                        if t[0] == t[1] || t[1] == t[2] {
                            continue;
                        }
                        checked += 1;
                        let r = self.basis_jacobiator(&mut acc, t[0], t[1], t[2]);
                        if !r.is_empty() {
                            witness = Some(((t[0], t[1], t[2]), r));
                            break;
                        }
                    }
                }
                JacobiReport { mode, triples_checked: checked, witness }
            }
        }
    }

    /// Killing form `K(b_i, b_j) = tr(ad b_i ∘ ad b_j)` with its certified rank.
    pub fn killing(&self, primes: &[u64]) -> KillingForm<F> {
        let n = self.dim;
        let rows: Vec<Vec<F>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        // Σ_{k,l} c_{jk}^l c_{il}^k
                        let mut t = F::zero(&self.desc);
                        for k in 0..n {
                            for (l, c) in self.basis_bracket(j, k).iter() {
                                if let Some(c2) = self.basis_bracket(i, *l).get(k) {
                                    t.add_mul_assign(c, c2);
                                }
                            }
                        }
                        t
                    })
                    .collect()
            })
            .collect();
        let sparse: Vec<SparseVec<F>> = rows.iter().map(|r| SparseVec::from_dense(r)).collect();
        let (rank, certificate) = certified_rank(&sparse, n, primes);
        KillingForm { matrix: rows, rank, certificate }
    }

    pub fn map_field<G: Field>(&self, desc: G::Desc, f: impl Fn(&F) -> G) -> ScAlgebra<G> {
        ScAlgebra { dim: self.dim, names: self.names.clone(), table: self.table.iter().map(|v| v.map_values(&f)).collect(), desc }
    }

    /// Structure constants in a new basis of a bracket-closed subspace.
    pub fn subalgebra(&self, basis: &[SparseVec<F>], names: Vec<String>) -> Result<ScAlgebra<F>> {
        let sub = Subspace::new(self.dim, basis.to_vec()).map_err(|k| Error::NotClosed(format!("basis vector {k} is dependent")))?;
        let m = basis.len();
        let mut upper = vec![SparseVec::new(); m * m];
        for i in 0..m {
            for j in i + 1..m {
                let br = self.bracket(&basis[i], &basis[j]);
                upper[i * m + j] =
                    sub.coords(&br).ok_or_else(|| Error::NotClosed(format!("[{}, {}] leaves the subspace", names[i], names[j])))?;
            }
        }
        Ok(ScAlgebra::from_upper(names, self.desc.clone(), |i, j| upper[i * m + j].clone()))
    }

    /// Does `[x, s] ∈ span(target)` hold for all `x ∈ xs`, `s ∈ ss`?
    pub fn brackets_into(&self, xs: &[SparseVec<F>], ss: &[SparseVec<F>], target: &Subspace<F>) -> Option<(usize, usize)> {
        for (a, x) in xs.iter().enumerate() {
            for (b, s) in ss.iter().enumerate() {
                if !target.contains(&self.bracket(x, s)) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> AlgebraJson {
        let mut c = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, v) in self.basis_bracket(i, j).iter() {
                    c.push((i, j, *k, v.to_string()));
                }
            }
        }
        AlgebraJson { dim: self.dim, names: self.names.clone(), c }
    }
}

impl ScAlgebra<Rational> {
    /// The same constants over `Q(√d)`.
    pub fn base_change(&self, d: i64) -> ScAlgebra<QuadExt> {
        self.map_field(d, |x| QuadExt::rational(x.clone(), d))
    }

    pub fn from_json(j: &AlgebraJson) -> Result<Self> {
        if j.names.len() != j.dim {
            return Err(Error::Schema { field: "names".into(), msg: format!("{} names for dim {}", j.names.len(), j.dim) });
        }
        let entries = j
            .c
            .iter()
            .map(|(i, jj, k, s)| {
                s.parse::<Rational>()
                    .map(|v| (*i, *jj, *k, v))
                    .map_err(|_| Error::Schema { field: format!("c[{i},{jj},{k}]"), msg: format!("bad scalar {s:?}") })
            })
            .collect::<Result<Vec<_>>>()?;
        ScAlgebra::from_entries(j.names.clone(), (), &entries)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    pub dim: usize,
    pub names: Vec<String>,
    pub c: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum JacobiMode {
    Full,
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct JacobiReport<F> {
    pub mode: JacobiMode,
    pub triples_checked: usize,
    pub witness: Option<((usize, usize, usize), SparseVec<F>)>,
}

impl<F> JacobiReport<F> {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug)]
pub struct KillingForm<F> {
    pub matrix: Vec<Vec<F>>,
    pub rank: usize,
    pub certificate: RankCertificate,
}

impl<F: Field> KillingForm<F> {
    pub fn nondegenerate(&self) -> bool {
        self.rank == self.matrix.len()
    }

    pub fn value(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> Option<F> {
        let mut acc: Option<F> = None;
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                let k = &self.matrix[*i][*j];
                if k.is_zero() {
                    continue;
                }
                let t = a.mul(b).mul(k);
                acc = Some(match acc {
                    Some(s) => s.add(&t),
                    None => t,
                });
            }
        }
        acc
    }

    fn value_or_zero(&self, x: &SparseVec<F>, y: &SparseVec<F>, desc: &F::Desc) -> F {
        self.value(x, y).unwrap_or_else(|| F::zero(desc))
    }

    /// Gram matrix on a list of vectors.
    pub fn gram(&self, vs: &[SparseVec<F>], desc: &F::Desc) -> Vec<Vec<F>> {
        vs.iter().map(|x| vs.iter().map(|y| self.value_or_zero(x, y, desc)).collect()).collect()
    }

    /// `{x ∈ span(ambient) : K(x, s) = 0 for all s ∈ S}`. Requires `K|_S` nondegenerate.
    pub fn complement(&self, ambient: &[SparseVec<F>], s: &[SparseVec<F>], desc: &F::Desc) -> Result<Vec<SparseVec<F>>> {
        let g = self.gram(s, desc);
        let rank = crate::arith::dense_rank(&g);
        if rank < s.len() {
            return Err(Error::DegenerateOnS { rank, dim: s.len() });
        }
        let rows: Vec<SparseVec<F>> = s
            .iter()
            .map(|sv| SparseVec::from_dense(&ambient.iter().map(|a| self.value_or_zero(a, sv, desc)).collect::<Vec<_>>()))
            .collect();
        let ker = kernel(&rows, ambient.len(), desc);
        Ok(ker
            .iter()
            .map(|coef| {
                let mut v = SparseVec::new();
                for (k, c) in coef.iter() {
                    v = v.axpy(c, &ambient[*k]);
                }
                v
            })
            .collect())
    }
}

/// Killing-orthogonal complement of `s` inside `ambient` (all of `L` when `None`).
pub fn killing_complement<F: Field>(
    l: &ScAlgebra<F>,
    kf: &KillingForm<F>,
    ambient: Option<&[SparseVec<F>]>,
    s: &[SparseVec<F>],
) -> Result<Vec<SparseVec<F>>> {
    let all: Vec<SparseVec<F>>;
    let amb = match ambient {
        Some(a) => a,
        None => {
            all = (0..l.dim()).map(|i| l.unit(i)).collect();
            &all
        }
    };
    kf.complement(amb, s, l.desc())
}

/// `sl2` with basis `(e, h, f)`.
pub fn sl2() -> ScAlgebra<Rational> {
    let names = vec!["e".to_string(), "h".to_string(), "f".to_string()];
    let r = |k: usize, c: i64| SparseVec::from_entries(vec![(k, Rational::from(c))]);
    ScAlgebra::from_upper(names, (), |i, j| match (i, j) {
        (0, 1) => r(0, -2),
        (0, 2) => r(1, 1),
        (1, 2) => r(2, -2),
        _ => SparseVec::new(),
    })
}

/// Direct sum of structure-constant algebras, the second shifted after the first.
pub fn direct_sum<F: Field>(a: &ScAlgebra<F>, b: &ScAlgebra<F>) -> ScAlgebra<F> {
    let n = a.dim();
    let names = a.names().iter().cloned().chain(b.names().iter().map(|s| format!("{s}'"))).collect();
    ScAlgebra::from_upper(names, a.desc().clone(), |i, j| {
        if j < n {
            a.basis_bracket(i, j).clone()
        } else if i >= n {
            b.basis_bracket(i - n, j - n).map_indices(|k| k + n)
        } else {
            SparseVec::new()
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::prime_pool;

    #[test]
    fn sl2_jacobi_and_killing() {
        let l = sl2();
        assert!(l.jacobi_check(JacobiMode::Full).passed());
        let k = l.killing(&prime_pool(8));
        // basis order (e, h, f)
        assert_eq!(k.matrix[1][1], Rational::from(8));
        assert_eq!(k.matrix[0][2], Rational::from(4));
        assert_eq!(k.matrix[1][0], Rational::from(0));
        assert!(k.nondegenerate());
    }

    fn sl2_variant(ef: i64, hf: i64) -> ScAlgebra<Rational> {
        let r = |k: usize, c: i64| SparseVec::from_entries(vec![(k, Rational::from(c))]);
        ScAlgebra::from_upper(vec!["e".into(), "h".into(), "f".into()], (), |i, j| match (i, j) {
            (0, 1) => r(0, -2),
            (0, 2) => r(1, ef),
            (1, 2) => r(2, hf),
            _ => SparseVec::new(),
        })
    }

    #[test]
    fn rescaled_ef_is_still_lie() {
        // [e,f] = 2h is sl2 again after f -> f/2
        assert!(sl2_variant(2, -2).jacobi_check(JacobiMode::Full).passed());
    }

    #[test]
    fn broken_sl2_fails_with_witness() {
        let l = sl2_variant(1, -3);
        let rep = l.jacobi_check(JacobiMode::Full);
        let ((i, j, k), _) = rep.witness.expect("must fail");
        let mut t = [l.names()[i].as_str(), l.names()[j].as_str(), l.names()[k].as_str()];
        t.sort_unstable();
        assert_eq!(t, ["e", "f", "h"]);
    }

    #[test]
    fn abelian_killing_is_zero() {
        let l: ScAlgebra<Rational> = ScAlgebra::from_upper(vec!["x".into(), "y".into()], (), |_, _| SparseVec::new());
        let k = l.killing(&prime_pool(2));
        assert!(!k.nondegenerate());
        assert_eq!(k.rank, 0);
    }

    #[test]
    fn killing_is_invariant() {
        let l = direct_sum(&sl2(), &sl2());
        let k = l.killing(&prime_pool(2));
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut rv = || SparseVec::from_dense(&(0..6).map(|_| Rational::from(rng.gen_range(-3i64..4))).collect::<Vec<_>>());
        for _ in 0..20 {
            let (x, y, z) = (rv(), rv(), rv());
            let a = k.value(&l.bracket(&x, &y), &z).unwrap_or_default();
            let b = k.value(&y, &l.bracket(&x, &z)).unwrap_or_default();
            assert!(Field::is_zero(&a.add(&b)));
        }
    }

    #[test]
    fn complement_of_first_factor() {
        let l = direct_sum(&sl2(), &sl2());
        let k = l.killing(&prime_pool(2));
        let s: Vec<_> = (0..3).map(|i| l.unit(i)).collect();
        let c = killing_complement(&l, &k, None, &s).unwrap();
        let span = Subspace::new(6, (3..6).map(|i| l.unit(i)).collect()).unwrap();
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|v| span.contains(v)));
        let err = killing_complement(&l, &k, None, &[l.unit(0)]).unwrap_err();
        assert_eq!(err, Error::DegenerateOnS { rank: 0, dim: 1 });
    }

    #[test]
    fn json_roundtrip_and_corruption() {
        let l = sl2();
        let j = l.to_json();
        assert_eq!(ScAlgebra::from_json(&j).unwrap(), l);
        let mut bad = j.clone();
        bad.c.push((1, 0, 0, "1/1".into()));
        let err = ScAlgebra::from_json(&bad).unwrap_err();
        assert!(matches!(err, Error::Schema { ref msg, .. } if msg.contains("antisymmetry")));
    }

    #[test]
    fn base_change_keeps_verdicts() {
        let l = sl2().base_change(-1);
        assert!(l.jacobi_check(JacobiMode::Full).passed());
        assert_eq!(l.killing(&prime_pool(2)).rank, 3);
    }
}
