use std::collections::HashMap;

use super::{ArithError, Field, PrimeScalar, Rational};

/// Sparse vector: `(index, value)` pairs sorted by index, no explicit zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct SparseVec<F> {
    entries: Vec<(usize, F)>,
}

impl<F: Field> SparseVec<F> {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    /// Build from arbitrary `(index, value)` pairs, summing duplicates.
    pub fn from_entries(mut raw: Vec<(usize, F)>) -> Self {
        raw.sort_by_key(|e| e.0);
        let mut entries: Vec<(usize, F)> = Vec::with_capacity(raw.len());
        for (i, v) in raw {
            match entries.last_mut() {
                Some((j, w)) if *j == i => *w = w.add(&v),
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|(_, v)| !v.is_zero());
        SparseVec { entries }
    }

    pub fn unit(i: usize, desc: &F::Desc) -> Self {
        SparseVec { entries: vec![(i, F::one(desc))] }
    }

    pub fn from_dense(v: &[F]) -> Self {
        SparseVec {
            entries: v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect(),
        }
    }

    pub fn to_dense(&self, n: usize, desc: &F::Desc) -> Vec<F> {
        let mut out = vec![F::zero(desc); n];
        for (i, v) in &self.entries {
            out[*i] = v.clone();
        }
        out
    }

    pub fn entries(&self) -> &[(usize, F)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, F)> {
        self.entries.iter()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&F> {
        self.entries.binary_search_by_key(&i, |e| e.0).ok().map(|k| &self.entries[k].1)
    }

    pub fn leading(&self) -> Option<&(usize, F)> {
        self.entries.first()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|e| e.0)
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return SparseVec::new();
        }
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.mul(a))).collect() }
    }

    pub fn neg(&self) -> Self {
        SparseVec { entries: self.entries.iter().map(|(i, v)| (*i, v.neg())).collect() }
    }

    /// `self + a·other`.
    pub fn axpy(&self, a: &F, other: &Self) -> Self {
        if a.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() || q < y.len() {
            if q >= y.len() || (p < x.len() && x[p].0 < y[q].0) {
                out.push(x[p].clone());
                p += 1;
            } else if p >= x.len() || y[q].0 < x[p].0 {
                out.push((y[q].0, y[q].1.mul(a)));
                q += 1;
            } else {
                let mut v = x[p].1.clone();
                v.add_mul_assign(a, &y[q].1);
                if !v.is_zero() {
                    out.push((x[p].0, v));
                }
                p += 1;
                q += 1;
            }
        }
        SparseVec { entries: out }
    }

    pub fn add(&self, other: &Self) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&F::one(&v.desc()), other),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        match other.entries.first() {
            None => self.clone(),
            Some((_, v)) => self.axpy(&F::one(&v.desc()).neg(), other),
        }
    }

    pub fn dot(&self, other: &Self) -> Option<F> {
        let mut acc: Option<F> = None;
        let (mut p, mut q) = (0, 0);
        let (x, y) = (&self.entries, &other.entries);
        while p < x.len() && q < y.len() {
            match x[p].0.cmp(&y[q].0) {
                std::cmp::Ordering::Less => p += 1,
                std::cmp::Ordering::Greater => q += 1,
                std::cmp::Ordering::Equal => {
                    match acc.as_mut() {
                        Some(a) => a.add_mul_assign(&x[p].1, &y[q].1),
                        None => acc = Some(x[p].1.mul(&y[q].1)),
                    }
                    p += 1;
                    q += 1;
                }
            }
        }
        acc
    }

    /// Re-index every entry through `f`.
    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> Self {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (f(*i), v.clone())).collect())
    }

    pub fn map_values<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseVec<G> {
        SparseVec::from_entries(self.entries.iter().map(|(i, v)| (*i, f(v))).collect())
    }
}

impl<F: Field> FromIterator<(usize, F)> for SparseVec<F> {
    fn from_iter<T: IntoIterator<Item = (usize, F)>>(iter: T) -> Self {
        SparseVec::from_entries(iter.into_iter().collect())
    }
}

/// Dense scratch accumulator producing sparse output.
pub(crate) struct Accumulator<F: Field> {
    vals: Vec<F>,
    touched: Vec<usize>,
    mark: Vec<bool>,
}

impl<F: Field> Accumulator<F> {
    pub fn new(n: usize, desc: &F::Desc) -> Self {
        Accumulator { vals: vec![F::zero(desc); n], touched: Vec::new(), mark: vec![false; n] }
    }

    #[inline]
    pub fn add_mul(&mut self, i: usize, a: &F, b: &F) {
        if !self.mark[i] {
            self.mark[i] = true;
            self.touched.push(i);
        }
        self.vals[i].add_mul_assign(a, b);
    }

    pub fn drain(&mut self) -> SparseVec<F> {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            self.mark[i] = false;
            let zero = F::zero(&self.vals[i].desc());
            let v = std::mem::replace(&mut self.vals[i], zero);
            if !v.is_zero() {
                entries.push((i, v));
            }
        }
        self.touched.clear();
        SparseVec { entries }
    }
}

/// Column-major sparse matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: Vec<SparseVec<F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols: vec![SparseVec::new(); cols] }
    }

    pub fn identity(n: usize, desc: &F::Desc) -> Self {
        SparseMatrix { rows: n, cols: (0..n).map(|i| SparseVec::unit(i, desc)).collect() }
    }

    pub fn from_columns(rows: usize, cols: Vec<SparseVec<F>>) -> Self {
        debug_assert!(cols.iter().all(|c| c.max_index().map_or(true, |m| m < rows)));
        SparseMatrix { rows, cols }
    }

    /// From dense rows.
    pub fn from_dense(data: &[Vec<F>]) -> Self {
        let rows = data.len();
        let ncols = data.first().map_or(0, |r| r.len());
        let cols = (0..ncols)
            .map(|c| SparseVec::from_entries((0..rows).map(|r| (r, data[r][c].clone())).collect()))
            .collect();
        SparseMatrix { rows, cols }
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &SparseVec<F> {
        &self.cols[c]
    }

    pub fn columns(&self) -> &[SparseVec<F>] {
        &self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Option<&F> {
        self.cols[c].get(r)
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(|c| c.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_empty())
    }

    pub fn mul_vec(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, a) in v.iter() {
            out = out.axpy(a, &self.cols[*i]);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.ncols(), other.rows, "dimension mismatch");
        SparseMatrix { rows: self.rows, cols: other.cols.iter().map(|c| self.mul_vec(c)).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().zip(&other.cols).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, a: &F) -> Self {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| c.scale(a)).collect() }
    }

    /// `self·other − other·self`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut raw: Vec<Vec<(usize, F)>> = vec![Vec::new(); self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.iter() {
                raw[*r].push((c, v.clone()));
            }
        }
        SparseMatrix { rows: self.cols.len(), cols: raw.into_iter().map(|e| SparseVec { entries: e }).collect() }
    }

    /// Kronecker product; index of `(i, j)` is `i·dim(b) + j`.
    pub fn kron(a: &Self, b: &Self) -> Self {
        let rows = a.rows * b.rows;
        let mut cols = Vec::with_capacity(a.ncols() * b.ncols());
        for ca in &a.cols {
            for cb in &b.cols {
                let mut e = Vec::with_capacity(ca.len() * cb.len());
                for (ra, va) in ca.iter() {
                    for (rb, vb) in cb.iter() {
                        e.push((ra * b.rows + rb, va.mul(vb)));
                    }
                }
                cols.push(SparseVec { entries: e });
            }
        }
        SparseMatrix { rows, cols }
    }

    pub fn trace(&self, desc: &F::Desc) -> F {
        let mut t = F::zero(desc);
        for (c, col) in self.cols.iter().enumerate() {
            if let Some(v) = col.get(c) {
                t = t.add(v);
            }
        }
        t
    }

    /// Flatten column-major into one vector of length `rows·cols`
    /// (index of `(r, c)` is `r·cols + c`).
    pub fn flatten(&self) -> SparseVec<F> {
        let n = self.ncols();
        SparseVec::from_entries(
            self.cols.iter().enumerate().flat_map(|(c, col)| col.iter().map(move |(r, v)| (r * n + c, v.clone()))).collect(),
        )
    }

    pub fn unflatten(v: &SparseVec<F>, rows: usize, cols: usize) -> Self {
        let mut raw: Vec<Vec<(usize, F)>> = vec![Vec::new(); cols];
        for (k, x) in v.iter() {
            raw[k % cols].push((k / cols, x.clone()));
        }
        SparseMatrix { rows, cols: raw.into_iter().map(SparseVec::from_entries).collect() }
    }

    pub fn to_dense(&self, desc: &F::Desc) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(desc); self.ncols()]; self.rows];
        for (c, col) in self.cols.iter().enumerate() {
            for (r, v) in col.iter() {
                out[*r][c] = v.clone();
            }
        }
        out
    }

    pub fn map_values<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        SparseMatrix { rows: self.rows, cols: self.cols.iter().map(|c| c.map_values(&f)).collect() }
    }
}

/// Incremental sparse Gaussian elimination. Each stored row is normalized so
/// that its leading entry is 1; leading columns are distinct.
#[derive(Clone, Debug)]
pub struct Reducer<F> {
    ncols: usize,
    rows: Vec<SparseVec<F>>,
    pivot_of: HashMap<usize, usize>,
}

impl<F: Field> Reducer<F> {
    pub fn new(ncols: usize) -> Self {
        Reducer { ncols, rows: Vec::new(), pivot_of: HashMap::new() }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against every stored pivot; returns the remainder.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        self.reduce_tracked(v, |_, _| {})
    }

    fn reduce_tracked(&self, v: &SparseVec<F>, mut on_pivot: impl FnMut(usize, &F)) -> SparseVec<F> {
        let mut cur = v.clone();
        let mut pos = 0;
        while pos < cur.entries.len() {
            let (col, coef) = (cur.entries[pos].0, cur.entries[pos].1.clone());
            if let Some(&r) = self.pivot_of.get(&col) {
                on_pivot(r, &coef);
                cur = cur.axpy(&coef.neg(), &self.rows[r]);
                // entries before `pos` are untouched by the pivot row
            } else {
                pos += 1;
            }
        }
        cur
    }

    /// Insert a row; returns `true` if it was independent of the stored rows.
    pub fn insert(&mut self, v: &SparseVec<F>) -> bool {
        self.insert_tracked(v).is_some()
    }

    fn insert_tracked(&mut self, v: &SparseVec<F>) -> Option<usize> {
        let rem = self.reduce(v);
        let (col, lead) = match rem.leading() {
            None => return None,
            Some((c, l)) => (*c, l.clone()),
        };
        let row = rem.scale(&lead.inv().expect("leading entry is nonzero"));
        self.pivot_of.insert(col, self.rows.len());
        self.rows.push(row);
        Some(self.rows.len() - 1)
    }

    /// Stored echelon rows, in insertion order.
    pub fn rows(&self) -> &[SparseVec<F>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.pivot_of.keys().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Basis of the null space of the stored rows.
    pub fn kernel(&self, desc: &F::Desc) -> Vec<SparseVec<F>> {
        let mut pivots: Vec<(usize, usize)> = self.pivot_of.iter().map(|(c, r)| (*c, *r)).collect();
        pivots.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out = Vec::new();
        for free in (0..self.ncols).filter(|c| !self.pivot_of.contains_key(c)) {
            let mut x: Vec<F> = vec![F::zero(desc); self.ncols];
            x[free] = F::one(desc);
            for &(p, r) in &pivots {
                if p < free {
                    // rows with leading column below `free` may still involve it
                }
                let mut s = F::zero(desc);
                for (c, v) in self.rows[r].iter() {
                    if *c != p && !x[*c].is_zero() {
                        s.add_mul_assign(v, &x[*c]);
                    }
                }
                x[p] = s.neg();
            }
            out.push(SparseVec::from_dense(&x));
        }
        out
    }

    /// Reduced row echelon form of the stored rows, sorted by pivot column.
    pub fn rref(&self) -> Vec<SparseVec<F>> {
        let mut order: Vec<(usize, usize)> = self.pivot_of.iter().map(|(c, r)| (*c, *r)).collect();
        order.sort_unstable();
        let mut done: Vec<SparseVec<F>> = Vec::with_capacity(order.len());
        let mut by_col: HashMap<usize, usize> = HashMap::new();
        // process from the last pivot backwards so later rows are already reduced
        for &(c, r) in order.iter().rev() {
            let mut row = self.rows[r].clone();
            let mut pos = 1;
            while pos < row.entries.len() {
                let col = row.entries[pos].0;
                if let Some(&k) = by_col.get(&col) {
                    let coef = row.entries[pos].1.neg();
                    row = row.axpy(&coef, &done[k]);
                } else {
                    pos += 1;
                }
            }
            by_col.insert(c, done.len());
            done.push(row);
        }
        done.reverse();
        done
    }
}

/// Kernel of the matrix whose rows are `rows` (each of length `ncols`).
pub fn kernel<F: Field>(rows: &[SparseVec<F>], ncols: usize, desc: &F::Desc) -> Vec<SparseVec<F>> {
    let mut r = Reducer::new(ncols);
    for row in rows {
        r.insert(row);
    }
    r.kernel(desc)
}

/// A subspace given by a basis, with coordinate extraction.
#[derive(Clone, Debug)]
pub struct Subspace<F> {
    basis: Vec<SparseVec<F>>,
    reducer: Reducer<F>,
    // combination of the original basis vectors making up each stored row
    combos: Vec<SparseVec<F>>,
}

impl<F: Field> Subspace<F> {
    /// Fails with the index of the first vector that depends on the earlier ones.
    pub fn new(ambient_dim: usize, basis: Vec<SparseVec<F>>) -> Result<Self, usize> {
        let mut reducer = Reducer::new(ambient_dim);
        let mut combos: Vec<SparseVec<F>> = Vec::with_capacity(basis.len());
        for (k, v) in basis.iter().enumerate() {
            let desc = match v.leading() {
                Some((_, x)) => x.desc(),
                None => return Err(k),
            };
            let mut combo = SparseVec::unit(k, &desc);
            let rem = reducer.reduce_tracked(v, |r, coef| {
                combo = combo.axpy(&coef.neg(), &combos[r]);
            });
            let Some((col, lead)) = rem.leading().cloned() else {
                return Err(k);
            };
            let inv = lead.inv().expect("nonzero");
            reducer.pivot_of.insert(col, reducer.rows.len());
            reducer.rows.push(rem.scale(&inv));
            combos.push(combo.scale(&inv));
        }
        Ok(Subspace { basis, reducer, combos })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.reducer.ncols
    }

    pub fn basis(&self) -> &[SparseVec<F>] {
        &self.basis
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reducer.contains(v)
    }

    /// Coordinates of `v` in the stored basis, or `None` if `v` is outside.
    pub fn coords(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let mut combo: SparseVec<F> = SparseVec::new();
        let rem = self.reducer.reduce_tracked(v, |r, coef| {
            combo = combo.axpy(coef, &self.combos[r]);
        });
        rem.is_empty().then_some(combo)
    }
}

/// Rank of a dense matrix by exact elimination.
pub fn dense_rank<F: Field>(m: &[Vec<F>]) -> usize {
    let ncols = m.first().map_or(0, |r| r.len());
    let mut r = Reducer::new(ncols);
    for row in m {
        r.insert(&SparseVec::from_dense(row));
    }
    r.rank()
}

/// Gauss–Jordan inverse of a square dense matrix.
pub fn dense_inverse<F: Field>(m: &[Vec<F>], desc: &F::Desc) -> Result<Vec<Vec<F>>, ArithError> {
    let n = m.len();
    let mut a: Vec<Vec<F>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::one(desc) } else { F::zero(desc) }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(ArithError::DivisionByZero)?;
        a.swap(col, piv);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for c in 0..2 * n {
                    let t = a[col][c].mul(&f);
                    a[r][c] = a[r][c].sub(&t);
                }
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of the image of a rational matrix (given by rows) over `GF(p)`.
/// This bounds the rational rank from below.
pub fn rank_mod_p(rows: &[SparseVec<Rational>], ncols: usize, p: u64) -> Result<usize, ArithError> {
    let mut r: Reducer<PrimeScalar> = Reducer::new(ncols);
    for row in rows {
        let mut e = Vec::with_capacity(row.len());
        for (i, v) in row.iter() {
            e.push((*i, v.reduce_mod(p).expect("rationals reduce")?));
        }
        r.insert(&SparseVec::from_entries(e));
    }
    Ok(r.rank())
}

/// Rank over `GF(p)` for any field; `None` when some entry has no image mod `p`.
pub fn rank_mod<F: Field>(rows: &[SparseVec<F>], ncols: usize, p: u64) -> Option<Result<usize, ArithError>> {
    let mut r: Reducer<PrimeScalar> = Reducer::new(ncols);
    for row in rows {
        let mut e = Vec::with_capacity(row.len());
        for (i, v) in row.iter() {
            match v.reduce_mod(p)? {
                Ok(x) => e.push((*i, x)),
                Err(err) => return Some(Err(err)),
            }
        }
        r.insert(&SparseVec::from_entries(e));
    }
    Some(Ok(r.rank()))
}

/// How a rank value was established.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub enum RankCertificate {
    /// Full rank seen modulo this prime, which proves full rational rank.
    ModP(u64),
    /// Exact elimination over the field itself.
    Exact,
}

/// Rank with the certification policy: full rank is accepted from a single
/// valid prime; anything short of full rank is decided by exact elimination.
pub fn certified_rank<F: Field>(rows: &[SparseVec<F>], ncols: usize, primes: &[u64]) -> (usize, RankCertificate) {
    let full = rows.len().min(ncols);
    'primes: for &p in primes {
        let mut red: Reducer<PrimeScalar> = Reducer::new(ncols);
        for row in rows {
            let mut e = Vec::with_capacity(row.len());
            for (i, v) in row.iter() {
                match v.reduce_mod(p) {
                    Some(Ok(x)) => e.push((*i, x)),
                    Some(Err(_)) => continue 'primes,
                    None => break 'primes,
                }
            }
            red.insert(&SparseVec::from_entries(e));
        }
        if red.rank() == full {
            return (full, RankCertificate::ModP(p));
        }
    }
    let mut red = Reducer::new(ncols);
    for row in rows {
        red.insert(row);
    }
    (red.rank(), RankCertificate::Exact)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> SparseVec<Rational> {
        SparseVec::from_dense(&v.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>())
    }

    #[test]
    fn identity_rank_mod_7() {
        let rows = vec![rv(&[1, 0, 0]), rv(&[0, 1, 0]), rv(&[0, 0, 1])];
        assert_eq!(rank_mod_p(&rows, 3, 7), Ok(3));
    }

    #[test]
    fn rank_one_mod_101() {
        let rows = vec![rv(&[1, 2]), rv(&[2, 4])];
        assert_eq!(rank_mod_p(&rows, 2, 101), Ok(1));
    }

    #[test]
    fn half_mod_two_is_bad_prime() {
        let rows = vec![SparseVec::from_dense(&[Rational::new(1, 2).unwrap()])];
        assert_eq!(rank_mod_p(&rows, 1, 2), Err(ArithError::BadPrime(2)));
    }

    #[test]
    fn kernel_of_rank_one() {
        let rows = vec![rv(&[1, 2, 3])];
        let k = kernel(&rows, 3, &());
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(rows[0].dot(v).map_or(true, |d| d.is_zero()));
        }
    }

    #[test]
    fn subspace_coordinates() {
        let s = Subspace::new(3, vec![rv(&[1, 1, 0]), rv(&[0, 1, 1])]).unwrap();
        let c = s.coords(&rv(&[2, 5, 3])).unwrap();
        assert_eq!(c.to_dense(2, &()), vec![Rational::from(2), Rational::from(3)]);
        assert!(s.coords(&rv(&[1, 0, 0])).is_none());
        assert_eq!(Subspace::new(3, vec![rv(&[1, 1, 0]), rv(&[2, 2, 0])]).unwrap_err(), 1);
    }

    #[test]
    fn rref_is_reduced() {
        let mut r = Reducer::new(3);
        r.insert(&rv(&[1, 1, 1]));
        r.insert(&rv(&[0, 1, 2]));
        let rows = r.rref();
        assert_eq!(rows[0], rv(&[1, 0, -1]));
        assert_eq!(rows[1], rv(&[0, 1, 2]));
    }

    #[test]
    fn inverse_roundtrip() {
        let m: Vec<Vec<Rational>> = vec![vec![2.into(), 1.into()], vec![1.into(), 1.into()]];
        let inv = dense_inverse(&m, &()).unwrap();
        assert_eq!(inv, vec![vec![Rational::from(1), Rational::from(-1)], vec![Rational::from(-1), Rational::from(2)]]);
    }

    #[test]
    fn certified_full_rank_uses_a_prime() {
        let rows = vec![rv(&[1, 2]), rv(&[3, 4])];
        let (r, cert) = certified_rank(&rows, 2, &[1048583]);
        assert_eq!(r, 2);
        assert_eq!(cert, RankCertificate::ModP(1048583));
        let (r, cert) = certified_rank(&[rv(&[1, 2]), rv(&[2, 4])], 2, &[1048583]);
        assert_eq!((r, cert), (1, RankCertificate::Exact));
    }
}
