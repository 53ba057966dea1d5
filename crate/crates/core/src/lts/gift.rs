//! Faulkner data `(⟨·,·⟩, ⟨·,·,·⟩, π, φ)` on `L1` and the check of the
//! expression for `D(u, v)` in terms of `π` and `φ`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{GradedE7, LieTripleSystem, E_POS, HALF, L1_POS, W_DIM, W_PAIRS};
use crate::arith::{certified_rank, dense_inverse, dense_rank, Field, RankCertificate, SparseMatrix, SparseVec};
use crate::{Error, Result};

type Mat2<F> = [[F; 2]; 2];

/// Which way `φ(y, x)` relates to the symplectic adjugate of `φ(x, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HermitianSign {
    Plus,
    Minus,
    Neither,
}

#[derive(Clone, Debug)]
pub struct GiftData<F: Field> {
    /// `[b_i, b_j] = pairing[i][j] e`.
    pub pairing: Vec<Vec<F>>,
    pub pairing_rank: usize,
    pub antisymmetric: bool,
    /// `ternary[i][j]` is the `32×32` matrix of `x ↦ ⟨b_i, b_j, x⟩`.
    pub ternary: Vec<Vec<SparseMatrix<F>>>,
    /// `π` on `End(L1)`, acting on `vec(M)` with index `32 r + c`.
    pub pi: SparseMatrix<F>,
    pub generator_rank: usize,
    pub generator_certificate: RankCertificate,
    pub pi_checks: usize,
    pub pi_witness: Option<usize>,
    pub hermitian: HermitianSign,
    pair_inv: Vec<Vec<F>>,
}

impl<F: Field> GiftData<F> {
    /// `⟨x, y⟩` for coordinate vectors on `L1`.
    pub fn pair(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> F {
        let d = self.pairing[0][0].desc();
        let mut s = F::zero(&d);
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                if !self.pairing[*i][*j].is_zero() {
                    s.add_mul_assign(&a.mul(b), &self.pairing[*i][*j]);
                }
            }
        }
        s
    }

    /// `φ((u1, u2), (v1, v2))`.
    pub fn phi(&self, u: &SparseVec<F>, v: &SparseVec<F>) -> Mat2<F> {
        let (u1, u2) = split(u);
        let (v1, v2) = split(v);
        [[self.pair(&u1, &v2), self.pair(&u1, &v1).neg()], [self.pair(&u2, &v2), self.pair(&u2, &v1).neg()]]
    }

    /// The matrix of `x ↦ ⟨x, p⟩ q`.
    pub fn rank_one(&self, p: &SparseVec<F>, q: &SparseVec<F>) -> SparseMatrix<F> {
        let d = self.pairing[0][0].desc();
        // ⟨b_l, p⟩ for every l
        let lp: Vec<F> = (0..HALF)
            .map(|l| {
                let mut s = F::zero(&d);
                for (i, c) in p.iter() {
                    s.add_mul_assign(c, &self.pairing[l][*i]);
                }
                s
            })
            .collect();
        let cols = lp.iter().map(|c| q.scale(c)).collect();
        SparseMatrix::from_columns(HALF, cols)
    }

    pub fn apply_pi(&self, m: &SparseMatrix<F>) -> SparseMatrix<F> {
        SparseMatrix::unflatten(&self.pi.mul_vec(&m.flatten()), HALF, HALF)
    }

    /// The inverse Gram matrix of the pairing.
    pub fn pairing_inverse(&self) -> &[Vec<F>] {
        &self.pair_inv
    }
}

fn split<F: Field>(u: &SparseVec<F>) -> (SparseVec<F>, SparseVec<F>) {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (k, c) in u.iter() {
        if *k < HALF {
            a.push((*k, c.clone()));
        } else {
            b.push((*k - HALF, c.clone()));
        }
    }
    (SparseVec::from_entries(a), SparseVec::from_entries(b))
}

fn adjugate<F: Field>(m: &Mat2<F>) -> Mat2<F> {
    [[m[1][1].clone(), m[0][1].neg()], [m[1][0].neg(), m[0][0].clone()]]
}

/// `⟨u, v, ·⟩ = [[[f, u], v], ·]` on `L1`, straight from the brackets.
fn ternary_op<F: Field>(g: &GradedE7<F>, u: &SparseVec<F>, v: &SparseVec<F>) -> Result<SparseMatrix<F>> {
    let alg = &g.algebra;
    let fu = alg.bracket(&alg.unit(super::F_POS), &u.map_indices(|i| L1_POS + i));
    let z = alg.bracket(&fu, &v.map_indices(|i| L1_POS + i));
    let cols = (0..HALF)
        .map(|x| {
            let r = alg.bracket(&z, &alg.unit(L1_POS + x));
            let mut out = Vec::with_capacity(r.len());
            for (k, c) in r.iter() {
                if !(L1_POS..L1_POS + HALF).contains(k) {
                    return Err(Error::BadGrading(format!("<u, v, b{x}> leaves L1")));
                }
                out.push((k - L1_POS, c.clone()));
            }
            Ok(SparseVec::from_entries(out))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SparseMatrix::from_columns(HALF, cols))
}

pub fn faulkner_data<F: Field>(g: &GradedE7<F>, seed: u64, pi_checks: usize, primes: &[u64]) -> Result<GiftData<F>> {
    let d = g.desc().clone();
    let alg = &g.algebra;
    let mut pairing = vec![vec![F::zero(&d); HALF]; HALF];
    for i in 0..HALF {
        for j in 0..HALF {
            let br = alg.basis_bracket(L1_POS + i, L1_POS + j);
            if br.iter().any(|(k, _)| *k != E_POS) {
                return Err(Error::BadGrading(format!("[b{i}, b{j}] is not a multiple of e")));
            }
            if let Some(c) = br.get(E_POS) {
                pairing[i][j] = c.clone();
            }
        }
    }
    let antisymmetric = (0..HALF).all(|i| (0..HALF).all(|j| pairing[i][j] == pairing[j][i].neg()));
    let pairing_rank = dense_rank(&pairing);
    if pairing_rank < HALF {
        return Err(Error::DegeneratePairing(pairing_rank));
    }
    let pair_inv = dense_inverse(&pairing, &d)?;

    let ternary: Vec<Vec<SparseMatrix<F>>> = (0..HALF)
        .into_par_iter()
        .map(|i| {
            (0..HALF)
                .map(|j| ternary_op(g, &SparseVec::unit(i, &d), &SparseVec::unit(j, &d)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    // π(E_rc) = Σ_i P⁻¹[i][c] ⟨b_i, b_r, ·⟩ since E_rc = Σ_i P⁻¹[i][c] ⟨·, b_i⟩ b_r
    let cols: Vec<SparseVec<F>> = (0..HALF * HALF)
        .into_par_iter()
        .map(|rc| {
            let (r, c) = (rc / HALF, rc % HALF);
            let mut v = SparseVec::new();
            for (i, row) in pair_inv.iter().enumerate() {
                if !row[c].is_zero() {
                    v = v.axpy(&row[c], &ternary[i][r].flatten());
                }
            }
            v
        })
        .collect();
    let pi = SparseMatrix::from_columns(HALF * HALF, cols);

    let mut gd = GiftData {
        pairing,
        pairing_rank,
        antisymmetric,
        ternary,
        pi,
        generator_rank: 0,
        generator_certificate: RankCertificate::Exact,
        pi_checks,
        pi_witness: None,
        hermitian: HermitianSign::Neither,
        pair_inv,
    };

    let gens: Vec<SparseVec<F>> = (0..HALF)
        .flat_map(|i| (0..HALF).map(move |j| (i, j)))
        .map(|(i, j)| gd.rank_one(&SparseVec::unit(i, &d), &SparseVec::unit(j, &d)).flatten())
        .collect();
    let (rank, cert) = certified_rank(&gens, HALF * HALF, primes);
    gd.generator_rank = rank;
    gd.generator_certificate = cert;

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples: Vec<(SparseVec<F>, SparseVec<F>)> = (0..pi_checks)
        .map(|_| {
            let mut pick = || -> SparseVec<F> {
                (0..3)
                    .map(|_| {
                        let c = [-2i64, -1, 1, 2, 3][rng.gen_range(0..5)];
                        (rng.gen_range(0..HALF), F::from_i64(c, &d))
                    })
                    .collect()
            };
            (pick(), pick())
        })
        .collect();
    gd.pi_witness = samples.par_iter().enumerate().find_map_first(|(k, (u, v))| {
        match ternary_op(g, u, v) {
            Ok(direct) => (gd.apply_pi(&gd.rank_one(u, v)) != direct).then_some(k),
            Err(_) => Some(k),
        }
    });

    let basis: Vec<SparseVec<F>> = (0..W_DIM).map(|a| SparseVec::unit(a, &d)).collect();
    let (mut plus, mut minus) = (true, true);
    for x in &basis {
        for y in &basis {
            let adj = adjugate(&gd.phi(x, y));
            let back = gd.phi(y, x);
            let neg = adj.clone().map(|r| r.map(|c| c.neg()));
            plus &= back == adj;
            minus &= back == neg;
        }
    }
    gd.hermitian = match (plus, minus) {
        (true, false) => HermitianSign::Plus,
        (false, true) => HermitianSign::Minus,
        _ => HermitianSign::Neither,
    };
    Ok(gd)
}

/// Deliberate corruptions used to show the check has teeth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Perturbation {
    None,
    DoublePi,
    NegatePhi,
}

/// How the gauge `t` in front of the `π̂` term is chosen.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Gauge<F> {
    /// Solve it on the first pair that determines it.
    Solve,
    /// Use a value fixed beforehand, e.g. from the unperturbed data.
    Fixed(F),
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaStarReport {
    pub perturbation: Perturbation,
    /// The pair that fixed the gauge; `None` when it was given.
    pub probe: Option<(usize, usize)>,
    /// Rescaling `f ↦ t f`, which multiplies `⟨·,·,·⟩` and `π` by `t`.
    pub gauge_t: String,
    pub pairs_checked: usize,
    pub diagonal_zero: bool,
}

/// Both sides of `2 D(u, v) = t π̂(...) + φ(v, u)• − φ(u, v)•` for basis vectors.
struct PairTerms<F: Field> {
    d: SparseMatrix<F>,
    pi_part: SparseMatrix<F>,
    phi_part: Mat2<F>,
}

fn pair_terms<F: Field>(t: &LieTripleSystem<F>, gd: &GiftData<F>, a: usize, b: usize, pert: Perturbation) -> PairTerms<F> {
    let desc = t.desc().clone();
    let u = SparseVec::unit(a, &desc);
    let v = SparseVec::unit(b, &desc);
    let (u1, u2) = split(&u);
    let (v1, v2) = split(&v);
    let minus = F::one(&desc).neg();
    // x ↦ ⟨x,u2⟩v1 − ⟨x,u1⟩v2 − ⟨x,v2⟩u1 + ⟨x,v1⟩u2, the L1 block of φ(·,u)v − φ(·,v)u
    let r = gd
        .rank_one(&u2, &v1)
        .add(&gd.rank_one(&u1, &v2).scale(&minus))
        .add(&gd.rank_one(&v2, &u1).scale(&minus))
        .add(&gd.rank_one(&v1, &u2));
    let mut pi_part = SparseMatrix::kron(&SparseMatrix::identity(2, &desc), &gd.apply_pi(&r));
    let pvu = gd.phi(&v, &u);
    let puv = gd.phi(&u, &v);
    let mut m: Mat2<F> = [[pvu[0][0].sub(&puv[0][0]), pvu[0][1].sub(&puv[0][1])], [pvu[1][0].sub(&puv[1][0]), pvu[1][1].sub(&puv[1][1])]];
    match pert {
        Perturbation::None => {}
        Perturbation::DoublePi => pi_part = pi_part.scale(&F::from_i64(2, &desc)),
        Perturbation::NegatePhi => m = m.map(|row| row.map(|x| x.neg())),
    }
    PairTerms { d: t.op_any(a, b), pi_part, phi_part: m }
}

impl<F: Field> PairTerms<F> {
    /// `M•` on `F² ⊗ L1`.
    fn phi_action(&self, desc: &F::Desc) -> SparseMatrix<F> {
        SparseMatrix::kron(&SparseMatrix::from_dense(&self.phi_part.clone().map(|r| r.to_vec()).to_vec()), &SparseMatrix::identity(HALF, desc))
    }

    /// Residual `2 D − M•` and the coefficient `Π` of `t`, entrywise.
    fn affine(&self, desc: &F::Desc) -> (SparseMatrix<F>, SparseMatrix<F>) {
        (self.d.scale(&F::from_i64(2, desc)).sub(&self.phi_action(desc)), self.pi_part.clone())
    }

    fn holds(&self, t: &F, desc: &F::Desc) -> bool {
        let (r, p) = self.affine(desc);
        r == p.scale(t)
    }
}

/// Fix the gauge, then check the identity on every unordered basis pair.
pub fn verify_formula_star<F: Field>(t: &LieTripleSystem<F>, gd: &GiftData<F>, pert: Perturbation, gauge: Gauge<F>) -> Result<FormulaStarReport> {
    let desc = t.desc().clone();
    let pairs: Vec<(usize, usize)> = (0..W_DIM).flat_map(|a| (a + 1..W_DIM).map(move |b| (a, b))).collect();
    let (probe, tval) = match gauge {
        Gauge::Fixed(v) => (None, v),
        Gauge::Solve => {
            let mut found = None;
            for &(a, b) in &pairs {
                let terms = pair_terms(t, gd, a, b, pert);
                let (r, p) = terms.affine(&desc);
                if r.is_zero() && p.is_zero() {
                    continue;
                }
                // first entry where t enters
                let entry = p.columns().iter().enumerate().find_map(|(c, col)| col.leading().map(|(i, x)| (*i, c, x.clone())));
                let Some((i, c, coef)) = entry else {
                    return Err(Error::NoConsistentGauge((a, b)));
                };
                let rv = r.get(i, c).cloned().unwrap_or_else(|| F::zero(&desc));
                let cand = rv.div(&coef)?;
                if cand.is_zero() || !terms.holds(&cand, &desc) {
                    return Err(Error::NoConsistentGauge((a, b)));
                }
                found = Some(((a, b), cand));
                break;
            }
            let (pr, v) = found.ok_or(Error::NoConsistentGauge((0, 0)))?;
            (Some(pr), v)
        }
    };
    let bad = pairs.par_iter().find_map_first(|&(a, b)| (!pair_terms(t, gd, a, b, pert).holds(&tval, &desc)).then_some((a, b)));
    if let Some(pair) = bad {
        return Err(Error::GaugeInconsistent { t: tval.to_string(), pair });
    }
    let diagonal_zero = (0..W_DIM).all(|a| {
        let terms = pair_terms(t, gd, a, a, pert);
        terms.d.is_zero() && terms.pi_part.is_zero() && terms.phi_part.iter().flatten().all(|x| x.is_zero())
    });
    Ok(FormulaStarReport { perturbation: pert, probe, gauge_t: tval.to_string(), pairs_checked: W_PAIRS, diagonal_zero })
}
