mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{hamilton, labeling, q, split};
use e7forge::arith::{dense_inverse, prime_pool, Field, RankCertificate, Rational, SparseVec};
use e7forge::lie::{identify_type, permutation_equivalent, roots, JacobiMode, RootDatum};
use e7forge::manivel::{assemble, h_index, line_subalgebra_check, solve_constants, v_index, SolveOptions};
use e7forge::tensor_split::trace_route_check;
use e7forge::Error;
use serde::Deserialize;

#[derive(Deserialize)]
struct BourbakiFixture {
    cartan_matrix: Vec<Vec<i64>>,
    positive_roots: Vec<Vec<i64>>,
    highest_root: Vec<i64>,
}

fn bourbaki() -> BourbakiFixture {
    serde_json::from_str(&std::fs::read_to_string(common::fixture("bourbaki_e7.json")).unwrap()).unwrap()
}

/// Coefficients of every root in the basis of simple roots `simple`.
fn simple_coords(r: &RootDatum<Rational>, simple: &[usize]) -> Vec<Vec<Rational>> {
    let n = simple.len();
    // columns are the simple roots, so st * c = root
    let st: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| r.roots[simple[j]][i].clone()).collect()).collect();
    let inv = dense_inverse(&st, &()).unwrap();
    r.roots
        .iter()
        .map(|root| {
            (0..n)
                .map(|i| {
                    let mut s = Rational::zero();
                    for j in 0..n {
                        s = s.add(&inv[i][j].mul(&root[j]));
                    }
                    s
                })
                .collect()
        })
        .collect()
}

fn cartan_from_inner(r: &RootDatum<Rational>, simple: &[usize]) -> Vec<Vec<i64>> {
    simple
        .iter()
        .map(|&i| {
            simple
                .iter()
                .map(|&j| {
                    let num = r.inner(&r.roots[i], &r.roots[j]).mul(&q(2));
                    num.div(&r.inner(&r.roots[j], &r.roots[j])).unwrap().to_i64().unwrap()
                })
                .collect()
        })
        .collect()
}

#[test]
fn split_jacobi_and_killing() {
    let a = split();
    assert_eq!(a.algebra.dim(), 133);
    assert!(a.jacobi.passed());
    let full = a.algebra.jacobi_check(JacobiMode::Full);
    assert!(full.passed(), "{:?}", full.witness);
    assert_eq!(full.triples_checked, 133 * 132 * 131 / 6);
    let k = a.algebra.killing(&prime_pool(3));
    assert!(k.nondegenerate());
    assert!(matches!(k.certificate, RankCertificate::ModP(_)));
}

#[test]
fn split_roots_match_bourbaki() {
    let a = split();
    let r = roots(&a.algebra, &a.cartan()).unwrap();
    assert_eq!(r.roots.len(), 126);
    assert!(r.root_spaces.iter().all(|s| s.len() == 1));
    assert!(r.closed_under_negation());

    let fx = bourbaki();
    let labels: BTreeSet<String> = (0..5).map(|s| identify_type(&r, s).unwrap().label).collect();
    assert_eq!(labels, BTreeSet::from(["E7".to_string()]));

    let t = identify_type(&r, 0).unwrap();
    assert_eq!(t.positive_roots, 63);
    // recompute the Cartan matrix from the root inner products
    let c = cartan_from_inner(&r, &t.simple_roots);
    assert_eq!(c, t.cartan_matrix);
    let perm = t.bourbaki_perm.clone().unwrap();
    assert!(permutation_equivalent(&c, &fx.cartan_matrix).is_some());
    for i in 0..7 {
        for j in 0..7 {
            assert_eq!(c[i][j], fx.cartan_matrix[perm[i]][perm[j]]);
        }
    }

    let coords = simple_coords(&r, &t.simple_roots);
    let mut positive = BTreeSet::new();
    let mut negative = 0;
    for v in &coords {
        let ints: Vec<i64> = v.iter().map(|x| x.to_i64().expect("integral coordinates")).collect();
        if ints.iter().all(|&x| x >= 0) {
            let mut b = vec![0; 7];
            for (i, x) in ints.iter().enumerate() {
                b[perm[i]] = *x;
            }
            positive.insert(b);
        } else {
            assert!(ints.iter().all(|&x| x <= 0), "mixed signs {ints:?}");
            negative += 1;
        }
    }
    assert_eq!(negative, 63);
    let expected: BTreeSet<Vec<i64>> = fx.positive_roots.iter().cloned().collect();
    assert_eq!(positive, expected);
    let highest = positive.iter().max_by_key(|v| v.iter().sum::<i64>()).unwrap();
    assert_eq!(highest, &fx.highest_root);
}

#[test]
fn six_cartan_elements_are_not_a_cartan() {
    let a = split();
    let err = roots(&a.algebra, &a.cartan()[..6]).unwrap_err();
    assert!(matches!(err, Error::NotCartan { .. }), "{err:?}");
}

#[test]
fn schur_spaces_are_one_dimensional() {
    for a in [split(), hamilton()] {
        let dims = &a.intertwiners.dims;
        assert_eq!(dims.len(), 49);
        assert!(dims.iter().all(|(_, d)| *d == 1), "{dims:?}");
        assert_eq!(a.intertwiners.self_maps.len(), 28);
        assert_eq!(a.intertwiners.cross_maps.len(), 21);
    }
}

#[test]
fn line_subalgebras_split() {
    let a = split();
    for alpha in 0..7 {
        let r = line_subalgebra_check(a, alpha, 1);
        assert!(r.ok(), "{r:?}");
        assert_eq!(r.closure_dim, 37);
        assert_eq!(r.ideal_dim, 28);
        assert_eq!(r.ideal_type.as_deref(), Ok("D4"));
    }
}

#[derive(Deserialize)]
struct GoldenConstants {
    seed: u64,
    constants: BTreeMap<String, String>,
}

#[test]
fn constants_match_frozen_values() {
    for (a, file) in [(split(), "golden_split_constants.json"), (hamilton(), "golden_hamilton_constants.json")] {
        let g: GoldenConstants = serde_json::from_str(&std::fs::read_to_string(common::fixture(file)).unwrap()).unwrap();
        assert_eq!(g.seed, 1);
        assert_eq!(a.constants.table(), g.constants, "{file}");
        assert_eq!(g.constants.len(), 49);
    }
}

#[test]
fn solver_absorbs_rescaled_intertwiners() {
    let a = split();
    let mut tw = a.intertwiners.clone();
    let minus = q(-1);
    let three = q(3);
    let key = *tw.cross_maps.keys().next().unwrap();
    tw.cross_maps.insert(key, tw.cross_maps[&key].scale(&minus));
    let skey = *tw.self_maps.keys().nth(5).unwrap();
    tw.self_maps.insert(skey, tw.self_maps[&skey].scale(&three));
    let sol = solve_constants(&a.plane, &a.modules, &tw, &SolveOptions::standard(1)).unwrap();
    assert!(sol.jacobi.passed());
    assert!(sol.algebra.killing(&prime_pool(3)).nondegenerate());
    let cartan: Vec<_> = (0..7).map(|v| sol.algebra.unit(h_index(v, 1))).collect();
    let r = roots(&sol.algebra, &cartan).unwrap();
    assert_eq!(identify_type(&r, 1).unwrap().label, "E7");
}

#[test]
fn swapped_pairing_orientation_still_gives_e7() {
    let mut lab = labeling("split.json");
    for alpha in 0..7 {
        let (p, q) = lab.derive_pairing(alpha).unwrap();
        lab.explicit_pairings[alpha] = Some((q, p));
    }
    assert!(lab.validate().accepted());
    let a = assemble::<Rational>(&lab, &(), &SolveOptions::standard(1)).unwrap();
    assert!(a.algebra.jacobi_check(JacobiMode::Full).passed());
    let r = roots(&a.algebra, &a.cartan()).unwrap();
    assert_eq!(r.roots.len(), 126);
    assert_eq!(identify_type(&r, 2).unwrap().label, "E7");
}

#[test]
fn rescaling_a_module_changes_constants_not_type() {
    let a = split();
    let l = &a.algebra;
    let two = q(2);
    let scaled: Vec<usize> = (0..16).map(|c| v_index(0, c)).collect();
    let basis: Vec<SparseVec<Rational>> =
        (0..l.dim()).map(|i| if scaled.contains(&i) { l.unit(i).scale(&two) } else { l.unit(i) }).collect();
    let m = l.subalgebra(&basis, l.names().to_vec()).unwrap();
    assert!(m.jacobi_check(JacobiMode::Sampled { count: 20000, seed: 3 }).passed());
    // V_0 x V_0 lands in sl1 blocks, which were not rescaled
    let four = q(4);
    let mut saw = false;
    for x in 0..16 {
        for y in x + 1..16 {
            let (i2, j2) = (v_index(0, x), v_index(0, y));
            let old = l.basis_bracket(i2, j2);
            if !old.is_empty() {
                saw = true;
                assert_eq!(m.basis_bracket(i2, j2), &old.scale(&four));
            }
        }
    }
    assert!(saw);
    // V_0 x V_1 lands in the third module, also unscaled
    let mut cross = 0;
    for x in 0..16 {
        for y in 0..16 {
            let (i, j) = (v_index(0, x), v_index(1, y));
            cross += usize::from(!l.basis_bracket(i, j).is_empty());
            assert_eq!(m.basis_bracket(i, j), &l.basis_bracket(i, j).scale(&two));
        }
    }
    assert!(cross > 0);
    let cartan: Vec<_> = (0..7).map(|v| m.unit(h_index(v, 1))).collect();
    let r = roots(&m, &cartan).unwrap();
    assert_eq!(identify_type(&r, 0).unwrap().label, "E7");
}

#[test]
fn hamilton_over_q_is_nonsplit_then_splits() {
    let a = hamilton();
    assert!(a.jacobi.passed());
    assert!(a.algebra.killing(&prime_pool(3)).nondegenerate());
    assert!(roots(&a.algebra, &a.cartan()).is_err());
    let b = a.base_change(-1);
    let r = roots(&b.algebra, &b.cartan()).unwrap();
    assert_eq!(r.roots.len(), 126);
    assert_eq!(identify_type(&r, 0).unwrap().label, "E7");
}

#[test]
fn hamilton_line_subalgebras_after_base_change() {
    let b = hamilton().base_change(-1);
    for alpha in 0..7 {
        let r = line_subalgebra_check(&b, alpha, 1);
        assert!(r.ok(), "{r:?}");
    }
}

#[test]
fn cross_maps_factor_through_reduced_traces() {
    for a in [split(), hamilton()] {
        let routes = trace_route_check(&a.plane, &a.modules, &a.intertwiners).unwrap();
        assert_eq!(routes.len(), 21);
        for t in &routes {
            assert!(t.ok(), "{t:?}");
        }
    }
}
