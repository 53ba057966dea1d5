use e7forge::arith::{rank_mod_p, Field, PrimeScalar, QuadExt, Rational, Reducer, SparseVec};
use proptest::prelude::*;

fn rat() -> impl Strategy<Value = Rational> {
    (-50i64..50, 1i64..20).prop_map(|(n, d)| Rational::new(n, d).unwrap())
}

fn quad(d: i64) -> impl Strategy<Value = QuadExt> {
    (rat(), rat()).prop_map(move |(x, y)| QuadExt::new(x, y, d))
}

fn prime(p: u64) -> impl Strategy<Value = PrimeScalar> {
    (0..p).prop_map(move |r| PrimeScalar::new(r, p))
}

fn field_axioms<F: Field>(a: &F, b: &F, c: &F) {
    let d = a.desc();
    assert_eq!(a.add(b), b.add(a));
    assert_eq!(a.mul(b), b.mul(a));
    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
    assert_eq!(a.add(&a.neg()), F::zero(&d));
    assert_eq!(a.mul(&F::one(&d)), *a);
    if !a.is_zero() {
        assert_eq!(a.mul(&a.inv().unwrap()), F::one(&d));
    } else {
        assert!(a.inv().is_err());
    }
}

proptest! {
    #[test]
    fn rationals_form_a_field(a in rat(), b in rat(), c in rat()) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn gaussian_rationals_form_a_field(a in quad(-1), b in quad(-1), c in quad(-1)) {
        field_axioms(&a, &b, &c);
        prop_assert_eq!(a.mul(&a.conj()), QuadExt::rational(a.norm(), -1));
    }

    #[test]
    fn real_quadratic_field(a in quad(2), b in quad(2), c in quad(2)) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn prime_field(a in prime(101), b in prime(101), c in prime(101)) {
        field_axioms(&a, &b, &c);
    }

    #[test]
    fn rank_mod_p_never_exceeds_exact_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..4, 6), 1..8)) {
        let vs: Vec<SparseVec<Rational>> =
            rows.iter().map(|r| SparseVec::from_dense(&r.iter().map(|&x| Rational::from(x)).collect::<Vec<_>>())).collect();
        let mut red = Reducer::new(6);
        for v in &vs {
            red.insert(v);
        }
        for p in [2u64, 3, 5, 7919] {
            prop_assert!(rank_mod_p(&vs, 6, p).unwrap() <= red.rank());
        }
    }
}
