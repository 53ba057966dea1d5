//! The five-step grading at a split point, the Lie triple system on the odd
//! part, and the embedding Lie algebra rebuilt from it.

mod d6a1;
mod gift;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{rank_mod, Field, Reducer, SparseMatrix, SparseVec, Subspace};
use crate::lie::{ad_eigendecomposition, JacobiMode, ScAlgebra};
use crate::manivel::{h_index, E7Assembly};
use crate::quaternion::{QuatElement, QuaternionAlgebra};
use crate::{Error, Result};

pub use d6a1::{d6a1_structure, D6A1Report};
pub use gift::{faulkner_data, verify_formula_star, FormulaStarReport, Gauge, GiftData, HermitianSign, Perturbation};

/// Dimension of the odd part `W = L1 ⊕ L-1`.
pub const W_DIM: usize = 64;
/// Dimension of `L1`.
pub const HALF: usize = 32;
/// Unordered pairs of distinct basis vectors of `W`.
pub const W_PAIRS: usize = W_DIM * (W_DIM - 1) / 2;

// positions in the adapted basis
const F_POS: usize = 0;
const LM1_POS: usize = 1;
const L0_POS: usize = 33;
const L1_POS: usize = 100;
const E_POS: usize = 132;
const DIMS: [usize; 5] = [1, 32, 67, 32, 1];

/// The algebra graded by `ad h` for the `sl2`-triple `(e, h, f)` of `sl1(Q_p)`.
///
/// The adapted basis is `f | [f, b_i] | h, L0 | b_i | e` where `b_i` spans `L1`.
/// `W` coordinates are `(u1, u2)` with `u1` on the `b_i` and `u2` on the
/// `[f, b_i]`, so `[e, ·]` sends the second block onto the first.
#[derive(Clone, Debug)]
pub struct GradedE7<F: Field> {
    pub point: usize,
    pub e: SparseVec<F>,
    pub f: SparseVec<F>,
    pub h: SparseVec<F>,
    /// Bases of `L-2, L-1, L0, L1, L2`, in the coordinates of the source algebra.
    pub layers: [Vec<SparseVec<F>>; 5],
    /// The adapted basis in source coordinates.
    pub basis: Vec<SparseVec<F>>,
    /// Structure constants in the adapted basis.
    pub algebra: ScAlgebra<F>,
    adapted: Subspace<F>,
}

impl<F: Field> GradedE7<F> {
    pub fn dims(&self) -> [usize; 5] {
        [0, 1, 2, 3, 4].map(|k| self.layers[k].len())
    }

    pub fn desc(&self) -> &F::Desc {
        self.algebra.desc()
    }

    /// Coordinates in the adapted basis of a vector of the source algebra.
    pub fn to_adapted(&self, x: &SparseVec<F>) -> Option<SparseVec<F>> {
        self.adapted.coords(x)
    }

    pub fn from_adapted(&self, x: &SparseVec<F>) -> SparseVec<F> {
        let mut v = SparseVec::new();
        for (k, c) in x.iter() {
            v = v.axpy(c, &self.basis[*k]);
        }
        v
    }

    /// Adapted position of the `a`-th basis vector of `W`.
    pub fn w_pos(a: usize) -> usize {
        if a < HALF {
            L1_POS + a
        } else {
            LM1_POS + a - HALF
        }
    }

    fn w_of_pos(k: usize) -> Option<usize> {
        match k {
            LM1_POS..=32 => Some(k - LM1_POS + HALF),
            L1_POS..=131 => Some(k - L1_POS),
            _ => None,
        }
    }

    /// Adapted positions of the even part `L-2 ⊕ L0 ⊕ L2`.
    pub fn even_positions() -> Vec<usize> {
        std::iter::once(F_POS).chain(L0_POS..L1_POS).chain(std::iter::once(E_POS)).collect()
    }

    pub fn h_pos() -> usize {
        L0_POS
    }

    pub fn e_pos() -> usize {
        E_POS
    }

    pub fn f_pos() -> usize {
        F_POS
    }

    /// `W` coordinates of an adapted vector, `None` if it has an even component.
    pub fn odd_coords(v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let mut out = Vec::with_capacity(v.len());
        for (k, c) in v.iter() {
            out.push((Self::w_of_pos(*k)?, c.clone()));
        }
        Some(SparseVec::from_entries(out))
    }

    fn degree(k: usize) -> i64 {
        match k {
            F_POS => -2,
            LM1_POS..=32 => -1,
            L0_POS..=99 => 0,
            L1_POS..=131 => 1,
            _ => 2,
        }
    }
}

fn sl1_vector<F: Field>(p: usize, x: &QuatElement<F>) -> SparseVec<F> {
    (1..4).map(|s| (h_index(p, s), x.coords[s].clone())).collect()
}

fn multiple_of<F: Field>(v: &SparseVec<F>, of: &SparseVec<F>) -> Option<F> {
    let (i, lead) = of.leading()?;
    let c = v.get(*i).cloned().unwrap_or_else(|| F::zero(&lead.desc())).div(lead).ok()?;
    (*v == of.scale(&c)).then_some(c)
}

pub fn grade_at_point<F: Field>(a: &E7Assembly<F>, p: usize) -> Result<GradedE7<F>> {
    grade(&a.algebra, &a.plane.algebras[p], p)
}

/// Grade `l` by the matrix units of the quaternion algebra `q` sitting at point `p`.
pub fn grade<F: Field>(l: &ScAlgebra<F>, q: &QuaternionAlgebra<F>, p: usize) -> Result<GradedE7<F>> {
    let d = l.desc().clone();
    let n = l.dim();
    let units = q.split_matrix_units().map_err(|_| Error::CenterNotSplit(format!("{} at point {p}", q.symbol_string())))?;
    let e = sl1_vector(p, &units[1]);
    let mut f = sl1_vector(p, &units[2]);
    let mut h = l.bracket(&e, &f);
    let c = multiple_of(&l.bracket(&h, &e), &e).ok_or_else(|| Error::BadGrading("[h, e] is not a multiple of e".into()))?;
    if c.is_zero() {
        return Err(Error::BadGrading("[h, e] = 0".into()));
    }
    let s = F::from_i64(2, &d).div(&c)?;
    f = f.scale(&s);
    h = h.scale(&s);
    let two = F::from_i64(2, &d);
    if l.bracket(&h, &e) != e.scale(&two) || l.bracket(&h, &f) != f.scale(&two.neg()) {
        return Err(Error::BadGrading("(e, h, f) is not an sl2-triple".into()));
    }

    let expected: Vec<F> = (-2..=2).map(|k| F::from_i64(k, &d)).collect();
    let eig = ad_eigendecomposition(l, &h, Some(&expected)).map_err(|err| Error::BadGrading(format!("ad h: {err}")))?;
    let mut raw: [Vec<SparseVec<F>>; 5] = Default::default();
    for (lam, basis) in eig {
        let k = expected.iter().position(|x| *x == lam).expect("eigenvalues come from the expected list");
        raw[k] = basis;
    }
    let dims = [0, 1, 2, 3, 4].map(|k| raw[k].len());
    if dims != DIMS {
        return Err(Error::BadGrading(format!("layer dimensions {dims:?}")));
    }
    if multiple_of(&raw[4][0], &e).is_none() || multiple_of(&raw[0][0], &f).is_none() {
        return Err(Error::BadGrading("L2 or L-2 is not spanned by e or f".into()));
    }

    let b = raw[3].clone();
    let lm1_space = Subspace::new(n, raw[1].clone()).expect("eigenbasis");
    let lm1: Vec<SparseVec<F>> = b.iter().map(|x| l.bracket(&f, x)).collect();
    if let Some(k) = lm1.iter().position(|v| !lm1_space.contains(v)) {
        return Err(Error::BadGrading(format!("[f, b_{k}] is not in L-1")));
    }
    let mut red = Reducer::new(n);
    let mut l0 = Vec::with_capacity(DIMS[2]);
    for v in std::iter::once(&h).chain(raw[2].iter()) {
        if red.insert(v) {
            l0.push(v.clone());
        }
    }
    if l0.len() != DIMS[2] {
        return Err(Error::BadGrading("h is not in L0".into()));
    }

    let mut names = vec!["f".to_string()];
    names.extend((0..HALF).map(|i| format!("[f,b{i}]")));
    names.push("h".into());
    names.extend((1..DIMS[2]).map(|i| format!("z{i}")));
    names.extend((0..HALF).map(|i| format!("b{i}")));
    names.push("e".into());
    let basis: Vec<SparseVec<F>> =
        std::iter::once(f.clone()).chain(lm1.iter().cloned()).chain(l0.iter().cloned()).chain(b.iter().cloned()).chain(std::iter::once(e.clone())).collect();
    let adapted = Subspace::new(n, basis.clone()).map_err(|k| Error::BadGrading(format!("adapted basis vector {k} is dependent")))?;
    let algebra = l.subalgebra(&basis, names)?;

    for k in 0..n {
        let want = algebra.unit(k).scale(&F::from_i64(GradedE7::<F>::degree(k), &d));
        if *algebra.basis_bracket(L0_POS, k) != want {
            return Err(Error::BadGrading(format!("[h, x] != deg(x) x for {}", algebra.names()[k])));
        }
    }
    Ok(GradedE7 { point: p, e: e.clone(), f: f.clone(), h, layers: [vec![f], lm1, l0, b, vec![e]], basis, algebra, adapted })
}

#[inline]
pub fn pair_index(a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < W_DIM);
    a * (2 * W_DIM - a - 1) / 2 + (b - a - 1)
}

/// Results of the three axiom sweeps.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct LtsAxioms {
    /// First basis vector with `D(u, u) != 0`.
    pub diagonal_witness: Option<usize>,
    pub cyclic_triples: usize,
    pub cyclic_witness: Option<[usize; 3]>,
    /// Size of the spanning set of operators the derivation rule is checked on.
    pub derivation_generators: usize,
    pub derivation_pairs: usize,
    pub derivation_witness: Option<[usize; 4]>,
    pub random_triples: usize,
    pub random_witness: Option<usize>,
}

impl LtsAxioms {
    pub fn ok(&self) -> bool {
        self.diagonal_witness.is_none() && self.cyclic_witness.is_none() && self.derivation_witness.is_none() && self.random_witness.is_none()
    }
}

/// `W` with `[u, v, w] = [[u, v], w]` and the operators `D(u, v) = [u, v, ·]`.
#[derive(Clone, Debug)]
pub struct LieTripleSystem<F: Field> {
    desc: F::Desc,
    ops: Vec<SparseMatrix<F>>,
    /// Pairs whose operators form a basis of `span{D(u, v)}`, in insertion order.
    pub span_pairs: Vec<(usize, usize)>,
    pub axioms: LtsAxioms,
}

impl<F: Field> LieTripleSystem<F> {
    pub fn desc(&self) -> &F::Desc {
        &self.desc
    }

    /// `D(w_a, w_b)` for `a < b`.
    pub fn op(&self, a: usize, b: usize) -> &SparseMatrix<F> {
        &self.ops[pair_index(a, b)]
    }

    /// `D(w_a, w_b)` for any `a`, `b`.
    pub fn op_any(&self, a: usize, b: usize) -> SparseMatrix<F> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.op(a, b).clone(),
            std::cmp::Ordering::Greater => self.op(b, a).scale(&F::one(&self.desc).neg()),
            std::cmp::Ordering::Equal => SparseMatrix::zero(W_DIM, W_DIM),
        }
    }

    /// `[w_a, w_b, w_c]`.
    pub fn basis_triple(&self, a: usize, b: usize, c: usize) -> SparseVec<F> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.op(a, b).column(c).clone(),
            std::cmp::Ordering::Greater => self.op(b, a).column(c).neg(),
            std::cmp::Ordering::Equal => SparseVec::new(),
        }
    }

    /// `D(u, v)` for arbitrary vectors.
    pub fn d(&self, u: &SparseVec<F>, v: &SparseVec<F>) -> SparseMatrix<F> {
        let mut cols: Vec<SparseVec<F>> = vec![SparseVec::new(); W_DIM];
        for (a, x) in u.iter() {
            for (b, y) in v.iter() {
                if a == b {
                    continue;
                }
                let (m, c) = if a < b { (self.op(*a, *b), x.mul(y)) } else { (self.op(*b, *a), x.mul(y).neg()) };
                for (k, col) in m.columns().iter().enumerate() {
                    if !col.is_empty() {
                        cols[k] = cols[k].axpy(&c, col);
                    }
                }
            }
        }
        SparseMatrix::from_columns(W_DIM, cols)
    }

    pub fn triple(&self, u: &SparseVec<F>, v: &SparseVec<F>, w: &SparseVec<F>) -> SparseVec<F> {
        self.d(u, v).mul_vec(w)
    }

    pub fn span_dim(&self) -> usize {
        self.span_pairs.len()
    }
}

fn random_sparse<F: Field>(rng: &mut ChaCha8Rng, n: usize, nnz: usize, desc: &F::Desc) -> SparseVec<F> {
    (0..nnz)
        .map(|_| {
            let mut c = 0;
            while c == 0 {
                c = rng.gen_range(-3i64..=3);
            }
            (rng.gen_range(0..n), F::from_i64(c, desc))
        })
        .collect()
}

/// Extract the triple system on `W` and sweep its axioms.
pub fn lts_extract<F: Field>(g: &GradedE7<F>, seed: u64, random_triples: usize) -> Result<LieTripleSystem<F>> {
    let d = g.desc().clone();
    let alg = &g.algebra;
    let even = GradedE7::<F>::even_positions();
    let mut slot = vec![usize::MAX; alg.dim()];
    for (s, &k) in even.iter().enumerate() {
        slot[k] = s;
    }
    // ad of each even basis vector restricted to W
    let adw: Vec<SparseMatrix<F>> = even
        .iter()
        .map(|&k| {
            let cols = (0..W_DIM)
                .map(|c| {
                    GradedE7::odd_coords(alg.basis_bracket(k, GradedE7::<F>::w_pos(c)))
                        .ok_or_else(|| Error::BadGrading(format!("[{}, w{c}] leaves W", alg.names()[k])))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(SparseMatrix::from_columns(W_DIM, cols))
        })
        .collect::<Result<Vec<_>>>()?;
    let build = |a: usize, b: usize| -> Result<SparseMatrix<F>> {
        let br = alg.basis_bracket(GradedE7::<F>::w_pos(a), GradedE7::<F>::w_pos(b));
        let mut cols: Vec<SparseVec<F>> = vec![SparseVec::new(); W_DIM];
        for (k, c) in br.iter() {
            let s = slot[*k];
            if s == usize::MAX {
                return Err(Error::BadGrading(format!("[w{a}, w{b}] has an odd component")));
            }
            for (j, col) in adw[s].columns().iter().enumerate() {
                if !col.is_empty() {
                    cols[j] = cols[j].axpy(c, col);
                }
            }
        }
        Ok(SparseMatrix::from_columns(W_DIM, cols))
    };
    let pairs: Vec<(usize, usize)> = (0..W_DIM).flat_map(|a| (a + 1..W_DIM).map(move |b| (a, b))).collect();
    let ops = pairs.par_iter().map(|&(a, b)| build(a, b)).collect::<Result<Vec<_>>>()?;
    let diagonal_witness = (0..W_DIM).find(|&a| !build(a, a).map(|m| m.is_zero()).unwrap_or(false));

    let mut red = Reducer::new(W_DIM * W_DIM);
    let mut span_pairs = Vec::new();
    for (idx, m) in ops.iter().enumerate() {
        if red.insert(&m.flatten()) {
            span_pairs.push(pairs[idx]);
        }
    }
    let mut t = LieTripleSystem {
        desc: d.clone(),
        ops,
        span_pairs,
        axioms: LtsAxioms {
            diagonal_witness,
            cyclic_triples: 0,
            cyclic_witness: None,
            derivation_generators: 0,
            derivation_pairs: 0,
            derivation_witness: None,
            random_triples: 0,
            random_witness: None,
        },
    };

    // cyclic rule on every ordered basis triple
    let cyclic_witness = (0..W_DIM).into_par_iter().find_map_first(|a| {
        for b in 0..W_DIM {
            for c in 0..W_DIM {
                let s = t.basis_triple(a, b, c).add(&t.basis_triple(b, c, a)).add(&t.basis_triple(c, a, b));
                if !s.is_empty() {
                    return Some([a, b, c]);
                }
            }
        }
        None
    });

    // derivation rule: linear in D(u, v), so a spanning set of operators and all
    // basis pairs (x, y) cover every basis 5-tuple
    let gens: Vec<(usize, usize)> = t.span_pairs.clone();
    let derivation_witness = gens.par_iter().find_map_first(|&(ga, gb)| {
        let delta = t.op(ga, gb);
        for x in 0..W_DIM {
            for y in x + 1..W_DIM {
                let dxy = t.op(x, y);
                let lhs = delta.commutator(dxy);
                let rhs = t.d(delta.column(x), &SparseVec::unit(y, &d)).add(&t.d(&SparseVec::unit(x, &d), delta.column(y)));
                if lhs != rhs {
                    return Some([ga, gb, x, y]);
                }
            }
        }
        None
    });

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut random_witness = None;
    for k in 0..random_triples {
        let vs: Vec<SparseVec<F>> = (0..5).map(|_| random_sparse(&mut rng, W_DIM, 3, &d)).collect();
        let delta = t.d(&vs[0], &vs[1]);
        let (x, y, z) = (&vs[2], &vs[3], &vs[4]);
        let lhs = delta.mul_vec(&t.triple(x, y, z));
        let rhs = t
            .triple(&delta.mul_vec(x), y, z)
            .add(&t.triple(x, &delta.mul_vec(y), z))
            .add(&t.triple(x, y, &delta.mul_vec(z)));
        if lhs != rhs {
            random_witness = Some(k);
            break;
        }
    }

    t.axioms.cyclic_triples = W_DIM * W_DIM * W_DIM;
    t.axioms.cyclic_witness = cyclic_witness;
    t.axioms.derivation_generators = gens.len();
    t.axioms.derivation_pairs = W_PAIRS;
    t.axioms.derivation_witness = derivation_witness;
    t.axioms.random_triples = random_triples;
    t.axioms.random_witness = random_witness;
    Ok(t)
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub span_dim: usize,
    /// `(p, rank mod p)`; `None` when the operators do not reduce mod `p`.
    pub span_dim_mod_p: Vec<(u64, Option<usize>)>,
    pub dim: usize,
    pub jacobi_triples: usize,
    pub jacobi_witness: Option<(usize, usize, usize)>,
    pub homomorphism_witness: Option<(usize, usize)>,
    pub image_rank: usize,
    pub grading_preserved: bool,
}

impl EmbeddingReport {
    pub fn ok(&self) -> bool {
        self.span_dim == 69
            && self.span_dim_mod_p.iter().all(|(_, r)| r.map_or(true, |r| r == self.span_dim))
            && self.jacobi_witness.is_none()
            && self.homomorphism_witness.is_none()
            && self.image_rank == self.dim
            && self.grading_preserved
    }
}

/// The embedding algebra `span{D(u, v)} ⊕ W` built from the operators alone.
pub fn embedding_algebra<F: Field>(t: &LieTripleSystem<F>) -> Result<ScAlgebra<F>> {
    let r = t.span_dim();
    let flats: Vec<SparseVec<F>> = t.span_pairs.iter().map(|&(a, b)| t.op(a, b).flatten()).collect();
    let span = Subspace::new(W_DIM * W_DIM, flats).expect("span_pairs are independent");
    let dim = r + W_DIM;
    let in_span = |m: &SparseMatrix<F>, what: &str| -> Result<SparseVec<F>> {
        span.coords(&m.flatten()).ok_or_else(|| Error::NotClosed(format!("{what} is outside span D(W, W)")))
    };
    let mut upper = vec![SparseVec::new(); dim * dim];
    for i in 0..r {
        let di = t.op(t.span_pairs[i].0, t.span_pairs[i].1);
        for j in i + 1..r {
            let dj = t.op(t.span_pairs[j].0, t.span_pairs[j].1);
            upper[i * dim + j] = in_span(&di.commutator(dj), &format!("[D{i}, D{j}]"))?;
        }
        for c in 0..W_DIM {
            upper[i * dim + r + c] = di.column(c).map_indices(|k| k + r);
        }
    }
    for a in 0..W_DIM {
        for b in a + 1..W_DIM {
            upper[(r + a) * dim + r + b] = in_span(t.op(a, b), &format!("D(w{a}, w{b})"))?;
        }
    }
    let names = t.span_pairs.iter().map(|(a, b)| format!("D(w{a},w{b})")).chain((0..W_DIM).map(|a| format!("w{a}"))).collect();
    Ok(ScAlgebra::from_upper(names, t.desc().clone(), |i, j| upper[i * dim + j].clone()))
}

/// Rebuild the embedding algebra and compare it with the graded source algebra.
pub fn embedding_roundtrip<F: Field>(t: &LieTripleSystem<F>, a: &E7Assembly<F>, g: &GradedE7<F>, primes: &[u64]) -> Result<EmbeddingReport> {
    let flats: Vec<SparseVec<F>> = t.ops.iter().map(|m| m.flatten()).collect();
    let span_dim_mod_p = primes
        .iter()
        .map(|&p| Ok((p, rank_mod(&flats, W_DIM * W_DIM, p).transpose()?)))
        .collect::<Result<Vec<_>>>()?;
    let emb = embedding_algebra(t)?;
    let jac = emb.jacobi_check(JacobiMode::Full);
    let r = t.span_dim();
    let src = &a.algebra;
    let image: Vec<SparseVec<F>> = (0..emb.dim())
        .map(|i| {
            if i < r {
                let (u, v) = t.span_pairs[i];
                src.bracket(&g.basis[GradedE7::<F>::w_pos(u)], &g.basis[GradedE7::<F>::w_pos(v)])
            } else {
                g.basis[GradedE7::<F>::w_pos(i - r)].clone()
            }
        })
        .collect();
    let phi = |x: &SparseVec<F>| {
        let mut v = SparseVec::new();
        for (k, c) in x.iter() {
            v = v.axpy(c, &image[*k]);
        }
        v
    };
    let n = emb.dim();
    let homomorphism_witness = (0..n).into_par_iter().find_map_first(|i| {
        (i + 1..n).find(|&j| phi(emb.basis_bracket(i, j)) != src.bracket(&image[i], &image[j])).map(|j| (i, j))
    });
    let mut red = Reducer::new(src.dim());
    for v in &image {
        red.insert(v);
    }
    let even = GradedE7::<F>::even_positions();
    let grading_preserved = image[..r].iter().all(|v| g.to_adapted(v).is_some_and(|c| c.iter().all(|(k, _)| even.contains(k))))
        && image[r..].iter().all(|v| g.to_adapted(v).is_some_and(|c| GradedE7::odd_coords(&c).is_some()));
    Ok(EmbeddingReport {
        span_dim: r,
        span_dim_mod_p,
        dim: n,
        jacobi_triples: jac.triples_checked,
        jacobi_witness: jac.witness.map(|(w, _)| w),
        homomorphism_witness,
        image_rank: red.rank(),
        grading_preserved,
    })
}

/// `ad x` on `W` for an even adapted vector `x`.
pub fn odd_action<F: Field>(g: &GradedE7<F>, x: &SparseVec<F>) -> Option<SparseMatrix<F>> {
    let cols = (0..W_DIM).map(|c| GradedE7::odd_coords(&g.algebra.bracket(x, &g.algebra.unit(GradedE7::<F>::w_pos(c))))).collect::<Option<Vec<_>>>()?;
    Some(SparseMatrix::from_columns(W_DIM, cols))
}
