//! The even part as `D6 × A1` and the weights of `W` under the `D6` Cartan.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use super::{odd_action, GradedE7, W_DIM};
use crate::arith::{Field, Subspace};
use crate::lie::{identify_type, killing_complement, roots, simultaneous_eigen};
use crate::manivel::E7Assembly;
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct D6A1Report {
    pub even_dim: usize,
    pub complement_dim: usize,
    /// `[even, complement] ⊆ complement`.
    pub complement_is_ideal: bool,
    pub d6_type: String,
    pub d6_roots: usize,
    pub a1_type: String,
    pub distinct_weights: usize,
    /// Distinct multiplicities of the weights of `W`.
    pub multiplicities: Vec<usize>,
    pub equal_norm: bool,
    pub minuscule_pairs: usize,
    /// `(weight, root)` indices breaking `2(w, α)/(α, α) ∈ {−1, 0, 1}`.
    pub minuscule_witness: Option<(usize, usize)>,
    pub orbit_size: usize,
    pub dims_audit: bool,
}

impl D6A1Report {
    pub fn ok(&self) -> bool {
        self.even_dim == 69
            && self.complement_dim == 66
            && self.complement_is_ideal
            && self.d6_type == "D6"
            && self.d6_roots == 60
            && self.a1_type == "A1"
            && self.distinct_weights == 32
            && self.multiplicities == [2]
            && self.equal_norm
            && self.minuscule_witness.is_none()
            && self.orbit_size == self.distinct_weights
            && self.dims_audit
    }
}

pub fn d6a1_structure<F: Field>(a: &E7Assembly<F>, g: &GradedE7<F>, primes: &[u64], seed: u64) -> Result<D6A1Report> {
    let alg = &g.algebra;
    let n = alg.dim();
    let desc = alg.desc().clone();
    let even: Vec<_> = GradedE7::<F>::even_positions().into_iter().map(|k| alg.unit(k)).collect();
    let s = vec![alg.unit(GradedE7::<F>::e_pos()), alg.unit(GradedE7::<F>::h_pos()), alg.unit(GradedE7::<F>::f_pos())];
    let kf = alg.killing(primes);
    let comp = killing_complement(alg, &kf, Some(&even), &s)?;
    let comp_space = Subspace::new(n, comp.clone()).map_err(|k| Error::NotClosed(format!("complement vector {k} dependent")))?;
    let complement_is_ideal = alg.brackets_into(&even, &comp, &comp_space).is_none();

    let cartan_adapted = (0..7)
        .filter(|&v| v != g.point)
        .map(|v| g.to_adapted(&a.h_point(v)).ok_or_else(|| Error::BadGrading(format!("h at point {v} outside the adapted basis"))))
        .collect::<Result<Vec<_>>>()?;
    let cartan_in_comp = cartan_adapted
        .iter()
        .map(|h| comp_space.coords(h).ok_or_else(|| Error::NotClosed("a Cartan element h_v lies outside the complement".into())))
        .collect::<Result<Vec<_>>>()?;
    let names = (0..comp.len()).map(|i| format!("d{i}")).collect();
    let d6 = alg.subalgebra(&comp, names)?;
    let d6_roots = roots(&d6, &cartan_in_comp)?;
    let d6_id = identify_type(&d6_roots, seed)?;

    let sl2 = alg.subalgebra(&s, vec!["e".into(), "h".into(), "f".into()])?;
    let a1 = identify_type(&roots(&sl2, &[sl2.unit(1)])?, seed)?;

    let ops = cartan_adapted.iter().map(|h| odd_action(g, h).ok_or_else(|| Error::NotClosed("h_v does not preserve W".into()))).collect::<Result<Vec<_>>>()?;
    let blocks = simultaneous_eigen(&ops, W_DIM, &desc)?;
    let weights: Vec<Vec<F>> = blocks.iter().map(|(w, _)| w.clone()).collect();
    let multiplicities: Vec<usize> = blocks.iter().map(|(_, b)| b.len()).collect::<BTreeSet<_>>().into_iter().collect();
    let norm0 = d6_roots.inner(&weights[0], &weights[0]);
    let equal_norm = weights.iter().all(|w| d6_roots.inner(w, w) == norm0);

    let two = F::from_i64(2, &desc);
    let allowed = [F::from_i64(-1, &desc), F::zero(&desc), F::one(&desc)];
    let coroot = |w: &[F], al: &[F]| two.mul(&d6_roots.inner(w, al)).div(&d6_roots.inner(al, al)).expect("roots have nonzero norm");
    let mut minuscule_witness = None;
    'outer: for (i, w) in weights.iter().enumerate() {
        for (j, al) in d6_roots.roots.iter().enumerate() {
            if !allowed.contains(&coroot(w, al)) {
                minuscule_witness = Some((i, j));
                break 'outer;
            }
        }
    }

    let mut orbit: HashSet<Vec<F>> = HashSet::new();
    let mut stack = vec![weights[0].clone()];
    orbit.insert(weights[0].clone());
    while let Some(w) = stack.pop() {
        for al in &d6_roots.roots {
            let c = coroot(&w, al);
            if c.is_zero() {
                continue;
            }
            let r: Vec<F> = w.iter().zip(al).map(|(x, y)| x.sub(&c.mul(y))).collect();
            if orbit.insert(r.clone()) {
                stack.push(r);
            }
        }
    }
    let weight_set: HashSet<&Vec<F>> = weights.iter().collect();
    let orbit_size = if orbit.iter().all(|w| weight_set.contains(w)) { orbit.len() } else { 0 };

    let dims = g.dims();
    let dims_audit = dims.iter().sum::<usize>() == n && even.len() + W_DIM == n && comp.len() + s.len() == even.len();
    Ok(D6A1Report {
        even_dim: even.len(),
        complement_dim: comp.len(),
        complement_is_ideal,
        d6_type: d6_id.label,
        d6_roots: d6_roots.roots.len(),
        a1_type: a1.label,
        distinct_weights: weights.len(),
        multiplicities,
        equal_norm,
        minuscule_pairs: weights.len() * d6_roots.roots.len(),
        minuscule_witness,
        orbit_size,
        dims_audit,
    })
}
