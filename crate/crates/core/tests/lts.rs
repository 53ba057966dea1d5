mod common;

use std::sync::OnceLock;

use common::{hamilton, q, split};
use e7forge::arith::{prime_pool, Field, Rational, SparseMatrix, SparseVec};
use e7forge::lts::*;
use e7forge::manivel::E7Assembly;
use e7forge::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Ctx {
    a: &'static E7Assembly<Rational>,
    g: GradedE7<Rational>,
    t: LieTripleSystem<Rational>,
    gd: GiftData<Rational>,
}

fn build(a: &'static E7Assembly<Rational>) -> Ctx {
    let g = grade_at_point(a, 0).unwrap();
    let t = lts_extract(&g, 1, 1000).unwrap();
    let gd = faulkner_data(&g, 1, 200, &prime_pool(3)).unwrap();
    Ctx { a, g, t, gd }
}

fn split_ctx() -> &'static Ctx {
    static C: OnceLock<Ctx> = OnceLock::new();
    C.get_or_init(|| build(split()))
}

fn hamilton_ctx() -> &'static Ctx {
    static C: OnceLock<Ctx> = OnceLock::new();
    C.get_or_init(|| build(hamilton()))
}

fn random_w(rng: &mut ChaCha8Rng) -> SparseVec<Rational> {
    (0..4).map(|_| (rng.gen_range(0..W_DIM), q(rng.gen_range(1..4) * if rng.gen_bool(0.5) { 1 } else { -1 }))).collect()
}

/// Oracle built only from the source brackets and the adapted basis vectors.
struct Source<'a> {
    c: &'a Ctx,
}

impl Source<'_> {
    fn w(&self, u: &SparseVec<Rational>) -> SparseVec<Rational> {
        let mut v = SparseVec::new();
        for (a, x) in u.iter() {
            v = v.axpy(x, &self.c.g.basis[GradedE7::<Rational>::w_pos(*a)]);
        }
        v
    }

    fn br(&self, x: &SparseVec<Rational>, y: &SparseVec<Rational>) -> SparseVec<Rational> {
        self.c.a.algebra.bracket(x, y)
    }

    fn back_to_w(&self, x: &SparseVec<Rational>) -> SparseVec<Rational> {
        GradedE7::odd_coords(&self.c.g.to_adapted(x).unwrap()).expect("odd result")
    }

    fn l1(&self, x: &SparseVec<Rational>) -> SparseVec<Rational> {
        self.w(x)
    }

    fn pair(&self, x: &SparseVec<Rational>, y: &SparseVec<Rational>) -> Rational {
        let z = self.c.g.to_adapted(&self.br(&self.l1(x), &self.l1(y))).unwrap();
        assert!(z.iter().all(|(k, _)| *k == GradedE7::<Rational>::e_pos()));
        z.get(GradedE7::<Rational>::e_pos()).cloned().unwrap_or_else(Rational::zero)
    }

    /// `⟨p, r, ·⟩` as a 32×32 matrix.
    fn ternary(&self, p: &SparseVec<Rational>, r: &SparseVec<Rational>) -> SparseMatrix<Rational> {
        let z = self.br(&self.br(&self.c.g.f, &self.l1(p)), &self.l1(r));
        let cols = (0..HALF)
            .map(|x| {
                let w = self.back_to_w(&self.br(&z, &self.l1(&SparseVec::unit(x, &()))));
                assert!(w.iter().all(|(k, _)| *k < HALF));
                w
            })
            .collect();
        SparseMatrix::from_columns(HALF, cols)
    }

    fn d(&self, u: &SparseVec<Rational>, v: &SparseVec<Rational>) -> SparseMatrix<Rational> {
        let uv = self.br(&self.w(u), &self.w(v));
        let cols = (0..W_DIM).map(|c| self.back_to_w(&self.br(&uv, &self.w(&SparseVec::unit(c, &()))))).collect();
        SparseMatrix::from_columns(W_DIM, cols)
    }
}

fn halves(u: &SparseVec<Rational>) -> (SparseVec<Rational>, SparseVec<Rational>) {
    let a = u.iter().filter(|(k, _)| *k < HALF).cloned().collect();
    let b = u.iter().filter(|(k, _)| *k >= HALF).map(|(k, c)| (k - HALF, c.clone())).collect();
    (a, b)
}

fn block_diag(m: &SparseMatrix<Rational>) -> SparseMatrix<Rational> {
    let cols = (0..W_DIM)
        .map(|c| if c < HALF { m.column(c).clone() } else { m.column(c - HALF).map_indices(|k| k + HALF) })
        .collect();
    SparseMatrix::from_columns(W_DIM, cols)
}

#[test]
fn layer_dimensions_at_every_split_point() {
    let a = split();
    for p in 0..7 {
        let g = grade_at_point(a, p).unwrap();
        assert_eq!(g.dims(), [1, 32, 67, 32, 1], "point {p}");
    }
}

#[test]
fn sl2_triple_relations() {
    for a in [split(), hamilton()] {
        let g = grade_at_point(a, 0).unwrap();
        let l = &a.algebra;
        assert_eq!(l.bracket(&g.e, &g.f), g.h);
        assert_eq!(l.bracket(&g.h, &g.e), g.e.scale(&q(2)));
        assert_eq!(l.bracket(&g.h, &g.f), g.f.scale(&q(-2)));
    }
}

#[test]
fn hamilton_nonsplit_point_is_rejected() {
    let err = grade_at_point(hamilton(), 1).unwrap_err();
    assert!(matches!(err, Error::CenterNotSplit(_)), "{err:?}");
    assert_eq!(grade_at_point(hamilton(), 0).unwrap().dims(), [1, 32, 67, 32, 1]);
}

#[test]
fn axioms_hold() {
    for c in [split_ctx(), hamilton_ctx()] {
        let ax = &c.t.axioms;
        assert!(ax.ok(), "{ax:?}");
        assert_eq!(ax.cyclic_triples, W_DIM * W_DIM * W_DIM);
        assert_eq!(ax.derivation_pairs, W_PAIRS);
        assert_eq!(ax.random_triples, 1000);
        assert_eq!(c.t.span_dim(), 69);
    }
}

#[test]
fn triple_product_matches_source_brackets() {
    for c in [split_ctx(), hamilton_ctx()] {
        let s = Source { c };
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..6 {
            let (u, v) = (random_w(&mut rng), random_w(&mut rng));
            assert_eq!(c.t.d(&u, &v), s.d(&u, &v));
        }
    }
}

#[test]
fn pairing_and_ternary_match_source_brackets() {
    for c in [split_ctx(), hamilton_ctx()] {
        let s = Source { c };
        let gd = &c.gd;
        assert_eq!(gd.pairing_rank, HALF);
        assert!(gd.antisymmetric);
        assert_eq!(gd.generator_rank, HALF * HALF);
        assert_eq!(gd.pi_witness, None);
        assert_eq!(gd.hermitian, HermitianSign::Plus);
        for i in (0..HALF).step_by(5) {
            for j in (0..HALF).step_by(3) {
                let (x, y) = (SparseVec::unit(i, &()), SparseVec::unit(j, &()));
                assert_eq!(gd.pairing[i][j], s.pair(&x, &y));
                assert_eq!(gd.ternary[i][j], s.ternary(&x, &y));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..5 {
            let p: SparseVec<Rational> = (0..3).map(|_| (rng.gen_range(0..HALF), q(rng.gen_range(1..5)))).collect();
            let r: SparseVec<Rational> = (0..3).map(|_| (rng.gen_range(0..HALF), q(-rng.gen_range(1..5)))).collect();
            assert_eq!(gd.apply_pi(&gd.rank_one(&p, &r)), s.ternary(&p, &r));
        }
    }
}

#[test]
fn formula_star_from_source_brackets() {
    // independent evaluation of 2 D(u, v) = π(R) ⊕ π(R) + M ⊗ I with t = 1
    for c in [split_ctx(), hamilton_ctx()] {
        let s = Source { c };
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..4 {
            let (u, v) = (random_w(&mut rng), random_w(&mut rng));
            let (u1, u2) = halves(&u);
            let (v1, v2) = halves(&v);
            let pi_r = s
                .ternary(&u2, &v1)
                .sub(&s.ternary(&u1, &v2))
                .sub(&s.ternary(&v2, &u1))
                .add(&s.ternary(&v1, &u2));
            let phi = |x1: &SparseVec<Rational>, x2: &SparseVec<Rational>, y1: &SparseVec<Rational>, y2: &SparseVec<Rational>| {
                [[s.pair(x1, y2), s.pair(x1, y1).neg()], [s.pair(x2, y2), s.pair(x2, y1).neg()]]
            };
            let (pvu, puv) = (phi(&v1, &v2, &u1, &u2), phi(&u1, &u2, &v1, &v2));
            let m: Vec<Vec<Rational>> = (0..2).map(|i| (0..2).map(|j| pvu[i][j].sub(&puv[i][j])).collect()).collect();
            let bullet = SparseMatrix::kron(&SparseMatrix::from_dense(&m), &SparseMatrix::identity(HALF, &()));
            let rhs = block_diag(&pi_r).add(&bullet);
            assert_eq!(s.d(&u, &v).scale(&q(2)), rhs);
        }
    }
}

#[test]
fn formula_star_exact_with_unit_gauge() {
    for c in [split_ctx(), hamilton_ctx()] {
        let r = verify_formula_star(&c.t, &c.gd, Perturbation::None, Gauge::Solve).unwrap();
        assert_eq!(r.gauge_t, "1");
        assert_eq!(r.pairs_checked, W_PAIRS);
        assert!(r.diagonal_zero);
        let fixed = verify_formula_star(&c.t, &c.gd, Perturbation::None, Gauge::Fixed(q(1))).unwrap();
        assert_eq!(fixed.pairs_checked, W_PAIRS);
    }
}

#[test]
fn formula_star_rejects_perturbations() {
    let c = split_ctx();
    let one = Gauge::Fixed(q(1));
    for p in [Perturbation::DoublePi, Perturbation::NegatePhi] {
        let err = verify_formula_star(&c.t, &c.gd, p, one.clone()).unwrap_err();
        assert!(matches!(err, Error::GaugeInconsistent { .. }), "{p:?}: {err:?}");
    }
    // a doubled π is a change of gauge, a negated φ is not
    let r = verify_formula_star(&c.t, &c.gd, Perturbation::DoublePi, Gauge::Solve).unwrap();
    assert_eq!(r.gauge_t, "1/2");
    let err = verify_formula_star(&c.t, &c.gd, Perturbation::NegatePhi, Gauge::Solve).unwrap_err();
    assert!(matches!(err, Error::NoConsistentGauge(_) | Error::GaugeInconsistent { .. }), "{err:?}");
    let err = verify_formula_star(&c.t, &c.gd, Perturbation::None, Gauge::Fixed(q(2))).unwrap_err();
    assert!(matches!(err, Error::GaugeInconsistent { .. }), "{err:?}");
}

#[test]
fn embedding_recovers_e7() {
    for c in [split_ctx(), hamilton_ctx()] {
        let r = embedding_roundtrip(&c.t, c.a, &c.g, &prime_pool(3)).unwrap();
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.dim, 133);
        assert_eq!(r.span_dim, 69);
    }
}

#[test]
fn embedding_bracket_of_operator_and_vector() {
    let c = split_ctx();
    let emb = embedding_algebra(&c.t).unwrap();
    let r = c.t.span_dim();
    for (i, &(a, b)) in c.t.span_pairs.iter().enumerate().step_by(7) {
        for w in [0, 17, 40, 63] {
            let got = emb.basis_bracket(i, r + w).clone();
            let want = c.t.basis_triple(a, b, w).map_indices(|k| k + r);
            assert_eq!(got, want);
        }
    }
}

#[test]
fn d6a1_in_split_and_after_base_change() {
    let r = d6a1_structure(split(), &split_ctx().g, &prime_pool(3), 1).unwrap();
    assert!(r.ok(), "{r:?}");
    assert_eq!(r.complement_dim, 66);
    assert_eq!(r.d6_type, "D6");
    assert_eq!(r.d6_roots, 60);
    assert_eq!(r.distinct_weights, 32);
    assert_eq!(r.orbit_size, 32);

    let b = hamilton().base_change(-1);
    let g = grade_at_point(&b, 0).unwrap();
    let r = d6a1_structure(&b, &g, &prime_pool(3), 1).unwrap();
    assert!(r.ok(), "{r:?}");
    // the nonsplit point becomes usable once i is adjoined
    assert_eq!(grade_at_point(&b, 1).unwrap().dims(), [1, 32, 67, 32, 1]);
}
