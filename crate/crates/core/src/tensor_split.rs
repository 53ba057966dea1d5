//! The 16-dimensional modules `V_α = Q_x ⊗ Q_u` with the commuting actions of
//! the four `sl1` algebras on the complementary quadruple, and spaces of
//! equivariant maps between tensor constructions of them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Field, Reducer, SparseMatrix, SparseVec};
use crate::error::{Error, Result};
use crate::fano::{self, FanoLabeling, Pairing, POINT_NAMES};
use crate::quaternion::{qtensor_to_end, QuaternionAlgebra};

/// A labeling realized over a concrete field.
#[derive(Clone, Debug)]
pub struct PlaneData<F: Field> {
    pub labeling: FanoLabeling,
    pub algebras: Vec<QuaternionAlgebra<F>>,
    pub pairings: [Pairing; 7],
    pub desc: F::Desc,
}

impl<F: Field> PlaneData<F> {
    pub fn new(labeling: &FanoLabeling, desc: &F::Desc) -> Result<Self> {
        let pairings = labeling.pairings()?;
        let algebras = labeling
            .points
            .iter()
            .map(|p| QuaternionAlgebra::from_rational_symbol(&p.symbol.0, &p.symbol.1, p.split, desc))
            .collect::<Result<Vec<_>>>()?;
        Ok(PlaneData { labeling: labeling.clone(), algebras, pairings, desc: desc.clone() })
    }
}

/// Action generators shared by every representation: `(point, s)` with
/// `s ∈ {i, j}`, which generate each `sl1`.
pub fn generator_keys() -> Vec<(usize, usize)> {
    (0..7).flat_map(|v| [(v, 1), (v, 2)]).collect()
}

#[derive(Clone, Debug)]
pub struct VAlphaModule<F: Field> {
    pub line: usize,
    pub pairing: Pairing,
    pub labels: Vec<String>,
    /// For each point of the quadruple, the images of `i, j, k`.
    pub actions: BTreeMap<usize, [SparseMatrix<F>; 3]>,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ModuleCheck {
    pub commute: bool,
    pub homomorphism: bool,
    pub generated_dim: usize,
}

impl ModuleCheck {
    pub fn ok(&self) -> bool {
        self.commute && self.homomorphism && self.generated_dim == 256
    }
}

pub fn build_valpha<F: Field>(plane: &PlaneData<F>, alpha: usize) -> Result<VAlphaModule<F>> {
    let pairing = plane.pairings[alpha];
    let ((x, y), (u, v)) = pairing;
    let unavailable = |e: Error| Error::PairingUnavailable(alpha, e.to_string());
    let first = qtensor_to_end(&plane.algebras[x], &plane.algebras[y]).map_err(unavailable)?;
    let second = qtensor_to_end(&plane.algebras[u], &plane.algebras[v]).map_err(unavailable)?;
    let id4 = SparseMatrix::identity(4, &plane.desc);
    let (qx, qu) = (&plane.algebras[x], &plane.algebras[u]);
    let mut actions = BTreeMap::new();
    actions.insert(x, std::array::from_fn(|s| SparseMatrix::kron(&first.image(&qx.basis(s + 1), &qx.one()), &id4)));
    actions.insert(y, std::array::from_fn(|s| SparseMatrix::kron(&first.image(&qx.one(), &qx.basis(s + 1)), &id4)));
    actions.insert(u, std::array::from_fn(|s| SparseMatrix::kron(&id4, &second.image(&qu.basis(s + 1), &qu.one()))));
    actions.insert(v, std::array::from_fn(|s| SparseMatrix::kron(&id4, &second.image(&qu.one(), &qu.basis(s + 1)))));
    let labels = (0..16)
        .map(|n| format!("{}{}", QuaternionAlgebra::<F>::basis_name(n / 4), QuaternionAlgebra::<F>::basis_name(n % 4)))
        .collect();
    Ok(VAlphaModule { line: alpha, pairing, labels, actions })
}

impl<F: Field> VAlphaModule<F> {
    /// Image of basis element `s ∈ {1,2,3}` of `sl1(Q_point)`; `None` when the
    /// point acts trivially.
    pub fn action(&self, point: usize, s: usize) -> Option<&SparseMatrix<F>> {
        self.actions.get(&point).map(|a| &a[s - 1])
    }

    pub fn check(&self, plane: &PlaneData<F>) -> ModuleCheck {
        let d = &plane.desc;
        let pts: Vec<usize> = self.actions.keys().copied().collect();
        let mut commute = true;
        for (n, &p) in pts.iter().enumerate() {
            for &q in &pts[n + 1..] {
                for s in 1..4 {
                    for t in 1..4 {
                        commute &= self.action(p, s).unwrap().commutator(self.action(q, t).unwrap()).is_zero();
                    }
                }
            }
        }
        let mut homomorphism = true;
        for &p in &pts {
            let q = &plane.algebras[p];
            for s in 1..4 {
                for t in 1..4 {
                    let (bs, bt) = (q.basis(s), q.basis(t));
                    let br = bs.mul(&bt).sub(&bt.mul(&bs));
                    let mut img = SparseMatrix::zero(16, 16);
                    for r in 1..4 {
                        img = img.add(&self.action(p, r).unwrap().scale(&br.coords[r]));
                    }
                    homomorphism &= self.action(p, s).unwrap().commutator(self.action(p, t).unwrap()) == img;
                }
            }
        }
        // associative closure of the action images together with the identity
        let gens: Vec<&SparseMatrix<F>> = pts.iter().flat_map(|&p| (1..4).map(move |s| (p, s))).map(|(p, s)| self.action(p, s).unwrap()).collect();
        let mut red = Reducer::new(256);
        let id = SparseMatrix::identity(16, d);
        red.insert(&id.flatten());
        let mut basis = vec![id];
        let mut next = 0;
        while next < basis.len() && red.rank() < 256 {
            let m = basis[next].clone();
            next += 1;
            for g in &gens {
                let prod = g.mul(&m);
                if red.insert(&prod.flatten()) {
                    basis.push(prod);
                }
            }
        }
        ModuleCheck { commute, homomorphism, generated_dim: red.rank() }
    }
}

/// A representation of the joint algebra given by the images of the
/// [`generator_keys`].
#[derive(Clone, Debug)]
pub struct Rep<F: Field> {
    pub dim: usize,
    pub gens: Vec<SparseMatrix<F>>,
}

impl<F: Field> Rep<F> {
    pub fn valpha(m: &VAlphaModule<F>) -> Self {
        let gens = generator_keys()
            .into_iter()
            .map(|(p, s)| m.action(p, s).cloned().unwrap_or_else(|| SparseMatrix::zero(16, 16)))
            .collect();
        Rep { dim: 16, gens }
    }

    /// Adjoint representation of `sl1(Q_v)` in the basis `(i, j, k)`.
    pub fn sl1(q: &QuaternionAlgebra<F>, v: usize) -> Self {
        let gens = generator_keys()
            .into_iter()
            .map(|(p, s)| if p == v { q.sl1_ad(&q.basis(s)) } else { SparseMatrix::zero(3, 3) })
            .collect();
        Rep { dim: 3, gens }
    }

    pub fn tensor(a: &Self, b: &Self, desc: &F::Desc) -> Self {
        let (ia, ib) = (SparseMatrix::identity(a.dim, desc), SparseMatrix::identity(b.dim, desc));
        let gens = a.gens.iter().zip(&b.gens).map(|(x, y)| SparseMatrix::kron(x, &ib).add(&SparseMatrix::kron(&ia, y))).collect();
        Rep { dim: a.dim * b.dim, gens }
    }

    /// Second exterior power, basis `e_a ∧ e_b` for `a < b` in [`wedge_index`] order.
    pub fn wedge2(a: &Self) -> Self {
        let n = a.dim;
        let gens = a
            .gens
            .iter()
            .map(|g| {
                let mut cols = Vec::with_capacity(n * (n - 1) / 2);
                for x in 0..n {
                    for y in x + 1..n {
                        let mut e = Vec::new();
                        let mut push = |p: usize, q: usize, c: &F| {
                            if p < q {
                                e.push((wedge_index(n, p, q), c.clone()));
                            } else if p > q {
                                e.push((wedge_index(n, q, p), c.neg()));
                            }
                        };
                        for (r, c) in g.column(x).iter() {
                            push(*r, y, c);
                        }
                        for (r, c) in g.column(y).iter() {
                            push(x, *r, c);
                        }
                        cols.push(SparseVec::from_entries(e));
                    }
                }
                SparseMatrix::from_columns(n * (n - 1) / 2, cols)
            })
            .collect();
        Rep { dim: n * (n - 1) / 2, gens }
    }
}

pub fn wedge_index(n: usize, a: usize, b: usize) -> usize {
    debug_assert!(a < b && b < n);
    a * n - a * (a + 1) / 2 + (b - a - 1)
}

/// Basis of `{M : M ρ_s(g) = ρ_t(g) M for every generator g}`, each element a
/// `target.dim × source.dim` matrix.
pub fn equivariant_map_space<F: Field>(source: &Rep<F>, target: &Rep<F>, desc: &F::Desc) -> Vec<SparseMatrix<F>> {
    let (ns, nt) = (source.dim, target.dim);
    let var = |r: usize, c: usize| r * ns + c;
    let mut red = Reducer::new(ns * nt);
    for (s, t) in source.gens.iter().zip(&target.gens) {
        if s.is_zero() && t.is_zero() {
            continue;
        }
        let mut rows: Vec<Vec<(usize, F)>> = vec![Vec::new(); ns * nt];
        for c in 0..ns {
            for (k, v) in s.column(c).iter() {
                for r in 0..nt {
                    rows[r * ns + c].push((var(r, *k), v.clone()));
                }
            }
        }
        for k in 0..nt {
            for (r, v) in t.column(k).iter() {
                for c in 0..ns {
                    rows[r * ns + c].push((var(k, c), v.neg()));
                }
            }
        }
        for row in rows {
            if !row.is_empty() {
                let v = SparseVec::from_entries(row);
                if !v.is_empty() {
                    red.insert(&v);
                }
            }
        }
    }
    red.kernel(desc).iter().map(|k| SparseMatrix::unflatten(k, nt, ns)).collect()
}

/// Bracket generators consumed by the assembly.
#[derive(Clone, Debug)]
pub struct Intertwiners<F: Field> {
    /// `(α, v)` → `3 × 120` map `Λ²V_α → sl1(Q_v)`.
    pub self_maps: BTreeMap<(usize, usize), SparseMatrix<F>>,
    /// `(α, β)` with `α < β` → `16 × 256` map `V_α ⊗ V_β → V_γ`.
    pub cross_maps: BTreeMap<(usize, usize), SparseMatrix<F>>,
    /// Dimension of each solved space, keyed by a readable label.
    pub dims: Vec<(String, usize)>,
}

pub fn self_label(alpha: usize, v: usize) -> String {
    format!("L{alpha}^L{alpha}->{}", POINT_NAMES[v])
}

pub fn cross_label(alpha: usize, beta: usize) -> String {
    format!("L{alpha}xL{beta}->L{}", fano::third_line(alpha, beta).expect("distinct"))
}

pub fn compute_intertwiners<F: Field>(plane: &PlaneData<F>, modules: &[VAlphaModule<F>]) -> Result<Intertwiners<F>> {
    let d = &plane.desc;
    let reps: Vec<Rep<F>> = modules.iter().map(Rep::valpha).collect();
    let mut jobs: Vec<(usize, usize, bool)> = Vec::new();
    for alpha in 0..7 {
        for v in fano::quadruple(alpha)? {
            jobs.push((alpha, v, true));
        }
    }
    for alpha in 0..7 {
        for beta in alpha + 1..7 {
            jobs.push((alpha, beta, false));
        }
    }
    let solved: Vec<(usize, usize, bool, Vec<SparseMatrix<F>>)> = jobs
        .into_par_iter()
        .map(|(a, b, is_self)| {
            let space = if is_self {
                let src = Rep::wedge2(&reps[a]);
                let tgt = Rep::sl1(&plane.algebras[b], b);
                equivariant_map_space(&src, &tgt, d)
            } else {
                let g = fano::third_line(a, b).expect("distinct lines");
                let src = Rep::tensor(&reps[a], &reps[b], d);
                equivariant_map_space(&src, &reps[g], d)
            };
            (a, b, is_self, space)
        })
        .collect();
    let mut out = Intertwiners { self_maps: BTreeMap::new(), cross_maps: BTreeMap::new(), dims: Vec::new() };
    for (a, b, is_self, mut space) in solved {
        let label = if is_self { self_label(a, b) } else { cross_label(a, b) };
        out.dims.push((label.clone(), space.len()));
        if space.len() != 1 {
            return Err(Error::IntertwinerDimension(label, space.len()));
        }
        let m = space.pop().unwrap();
        if is_self {
            out.self_maps.insert((a, b), m);
        } else {
            out.cross_maps.insert((a, b), m);
        }
    }
    Ok(out)
}

/// Comparison of a solved cross map with the factorization through
/// `Trd_x ⊗ Trd_y ⊗ id`, where `x, y` are the two points shared by the
/// quadruples of `α` and `β`. `Trd` is the projection of `Q ≅ F ⊕ sl1(Q)`
/// onto its invariant line, so the composite kills every nontrivial
/// `sl1(Q_x) × sl1(Q_y)` component of `V_α ⊗ V_β` and is an isomorphism from
/// the invariant part onto `V_γ`.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRoute {
    pub alpha: usize,
    pub beta: usize,
    pub gamma: usize,
    pub shared: (usize, usize),
    /// `sl1(Q_x) × sl1(Q_y)`-invariants of `V_α ⊗ V_β`.
    pub invariant_dim: usize,
    /// Span of the images of the `x`, `y` generators.
    pub moved_dim: usize,
    pub kills_moved: bool,
    /// Rank of the solved map on the invariants.
    pub rank_on_invariants: usize,
}

impl TraceRoute {
    pub fn ok(&self) -> bool {
        self.invariant_dim == 16 && self.moved_dim == 240 && self.kills_moved && self.rank_on_invariants == 16
    }
}

pub fn trace_route_check<F: Field>(plane: &PlaneData<F>, modules: &[VAlphaModule<F>], tw: &Intertwiners<F>) -> Result<Vec<TraceRoute>> {
    let d = &plane.desc;
    let reps: Vec<Rep<F>> = modules.iter().map(Rep::valpha).collect();
    let keys = generator_keys();
    tw.cross_maps
        .par_iter()
        .map(|(&(a, b), m)| {
            let (qa, qb) = (fano::quadruple(a)?, fano::quadruple(b)?);
            let shared: Vec<usize> = qa.iter().copied().filter(|v| qb.contains(v)).collect();
            let &[x, y] = shared.as_slice() else {
                return Err(Error::Unrecognized(format!("quadruples of L{a}, L{b} share {shared:?}")));
            };
            let src = Rep::tensor(&reps[a], &reps[b], d);
            let gens: Vec<&SparseMatrix<F>> =
                keys.iter().zip(&src.gens).filter(|((p, _), _)| *p == x || *p == y).map(|(_, g)| g).collect();
            let rows: Vec<SparseVec<F>> = gens.iter().flat_map(|g| g.transpose().columns().to_vec()).collect();
            let inv = crate::arith::kernel(&rows, src.dim, d);
            let mut moved = Reducer::new(src.dim);
            for g in &gens {
                for c in g.columns() {
                    moved.insert(c);
                }
            }
            let kills_moved = gens.iter().all(|g| m.mul(g).is_zero());
            let mut img = Reducer::new(m.nrows());
            for v in &inv {
                img.insert(&m.mul_vec(v));
            }
            Ok(TraceRoute {
                alpha: a,
                beta: b,
                gamma: fano::third_line(a, b)?,
                shared: (x, y),
                invariant_dim: inv.len(),
                moved_dim: moved.rank(),
                kills_moved,
                rank_on_invariants: img.rank(),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;

    fn split_plane() -> PlaneData<Rational> {
        PlaneData::new(&FanoLabeling::all_split(), &()).unwrap()
    }

    #[test]
    fn wedge_indices_are_dense() {
        let mut seen = vec![false; 120];
        for a in 0..16 {
            for b in a + 1..16 {
                seen[wedge_index(16, a, b)] = true;
            }
        }
        assert!(seen.iter().all(|&x| x));
    }

    #[test]
    fn split_modules_are_faithful() {
        let plane = split_plane();
        for alpha in [0, 6] {
            let m = build_valpha(&plane, alpha).unwrap();
            assert_eq!(m.labels.len(), 16);
            let c = m.check(&plane);
            assert!(c.ok(), "{c:?}");
        }
    }

    #[test]
    fn endomorphisms_are_scalars() {
        let plane = split_plane();
        let m = build_valpha(&plane, 3).unwrap();
        let r = Rep::valpha(&m);
        let space = equivariant_map_space(&r, &r, &());
        assert_eq!(space.len(), 1);
        assert_eq!(space[0], SparseMatrix::identity(16, &()));
    }

    #[test]
    fn wedge_to_sl1_is_one_dimensional() {
        let plane = split_plane();
        let m = build_valpha(&plane, 0).unwrap();
        let v = fano::quadruple(0).unwrap()[1];
        let space = equivariant_map_space(&Rep::wedge2(&Rep::valpha(&m)), &Rep::sl1(&plane.algebras[v], v), &());
        assert_eq!(space.len(), 1);
    }

    #[test]
    fn cross_map_is_one_dimensional() {
        let plane = split_plane();
        let (a, b) = (0, 1);
        let g = fano::third_line(a, b).unwrap();
        let [ma, mb, mg] = [a, b, g].map(|l| Rep::valpha(&build_valpha(&plane, l).unwrap()));
        let space = equivariant_map_space(&Rep::tensor(&ma, &mb, &()), &mg, &());
        assert_eq!(space.len(), 1);
    }
}
