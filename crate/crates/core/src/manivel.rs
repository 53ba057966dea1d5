//! Assembly of the 133-dimensional algebra `h ⊕ ⊕_α V_α` with
//! `h = ⊕_v sl1(Q_v)`, with bracket constants solved from Jacobi.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{Field, QuadExt, Rational, Reducer, SparseMatrix, SparseVec, Subspace};
use crate::error::{Error, Result};
use crate::fano::{self, FanoLabeling, POINT_NAMES};
use crate::lie::{identify_type, roots, JacobiMode, JacobiReport, ScAlgebra};
use crate::quaternion::QuaternionAlgebra;
use crate::tensor_split::{build_valpha, compute_intertwiners, wedge_index, Intertwiners, ModuleCheck, PlaneData, VAlphaModule};

pub const DIM: usize = 133;

pub fn h_index(v: usize, s: usize) -> usize {
    3 * v + (s - 1)
}

pub fn v_index(alpha: usize, c: usize) -> usize {
    21 + 16 * alpha + c
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Block {
    Point(usize),
    Line(usize),
}

pub fn block_of(i: usize) -> Block {
    if i < 21 {
        Block::Point(i / 3)
    } else {
        Block::Line((i - 21) / 16)
    }
}

/// Unknown bracket constants: `c(α, v)` for `v ∈ quadruple(α)`, then `d(α, β)` for `α < β`.
#[derive(Clone, Debug)]
pub struct Unknowns {
    pub names: Vec<String>,
    self_var: BTreeMap<(usize, usize), u8>,
    cross_var: BTreeMap<(usize, usize), u8>,
}

impl Unknowns {
    fn new() -> Self {
        let mut names = Vec::new();
        let mut self_var = BTreeMap::new();
        let mut cross_var = BTreeMap::new();
        for a in 0..7 {
            let mut q = fano::quadruple(a).unwrap();
            q.sort_unstable();
            for v in q {
                self_var.insert((a, v), names.len() as u8);
                names.push(format!("c(L{a},{})", POINT_NAMES[v]));
            }
        }
        for a in 0..7 {
            for b in a + 1..7 {
                cross_var.insert((a, b), names.len() as u8);
                names.push(format!("d(L{a},L{b})"));
            }
        }
        Unknowns { names, self_var, cross_var }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Branching order: cross constants, then self constants in quadruple order.
    fn branch_order(&self) -> Vec<u8> {
        let mut out: Vec<u8> = self.cross_var.values().copied().collect();
        for a in 0..7 {
            for v in fano::quadruple(a).unwrap() {
                out.push(self.self_var[&(a, v)]);
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
struct SymEntry<F> {
    k: usize,
    c: F,
    var: Option<u8>,
}

/// Bracket table with each coefficient tagged by the unknown constant it carries.
struct SymTable<F> {
    entries: Vec<Vec<SymEntry<F>>>,
}

type Monomial = Vec<u8>;
type Poly<F> = BTreeMap<Monomial, F>;

impl<F: Field> SymTable<F> {
    fn build(plane: &PlaneData<F>, modules: &[VAlphaModule<F>], tw: &Intertwiners<F>, u: &Unknowns) -> Self {
        let mut entries: Vec<Vec<SymEntry<F>>> = vec![Vec::new(); DIM * DIM];
        let plain = |k: usize, c: &F| SymEntry { k, c: c.clone(), var: None };
        for i in 0..DIM {
            for j in 0..DIM {
                let e: Vec<SymEntry<F>> = match (block_of(i), block_of(j)) {
                    (Block::Point(v), Block::Point(w)) if v == w => {
                        let q: &QuaternionAlgebra<F> = &plane.algebras[v];
                        let ad = q.sl1_ad(&q.basis(i - 3 * v + 1));
                        ad.column(j - 3 * w).iter().map(|(r, c)| plain(h_index(v, r + 1), c)).collect()
                    }
                    (Block::Point(_), Block::Point(_)) => Vec::new(),
                    (Block::Point(v), Block::Line(a)) => match modules[a].action(v, i - 3 * v + 1) {
                        Some(m) => m.column(j - v_index(a, 0)).iter().map(|(r, c)| plain(v_index(a, *r), c)).collect(),
                        None => Vec::new(),
                    },
                    (Block::Line(_), Block::Point(_)) => continue,
                    (Block::Line(a), Block::Line(b)) if a == b => {
                        let (x, y) = (i - v_index(a, 0), j - v_index(a, 0));
                        if x == y {
                            Vec::new()
                        } else {
                            let (lo, hi, sign) = if x < y { (x, y, false) } else { (y, x, true) };
                            let col = wedge_index(16, lo, hi);
                            let mut out = Vec::new();
                            for v in fano::quadruple(a).unwrap() {
                                let var = Some(u.self_var[&(a, v)]);
                                for (r, c) in tw.self_maps[&(a, v)].column(col).iter() {
                                    out.push(SymEntry { k: h_index(v, r + 1), c: if sign { c.neg() } else { c.clone() }, var });
                                }
                            }
                            out
                        }
                    }
                    (Block::Line(a), Block::Line(b)) => {
                        let (x, y) = (i - v_index(a, 0), j - v_index(b, 0));
                        let g = fano::third_line(a, b).unwrap();
                        let (key, col, sign) = if a < b { ((a, b), 16 * x + y, false) } else { ((b, a), 16 * y + x, true) };
                        let var = Some(u.cross_var[&key]);
                        tw.cross_maps[&key]
                            .column(col)
                            .iter()
                            .map(|(r, c)| SymEntry { k: v_index(g, *r), c: if sign { c.neg() } else { c.clone() }, var })
                            .collect()
                    }
                };
                entries[i * DIM + j] = e;
            }
        }
        // V-h entries by antisymmetry
        for i in 21..DIM {
            for j in 0..21 {
                let neg: Vec<SymEntry<F>> = entries[j * DIM + i].iter().map(|e| SymEntry { k: e.k, c: e.c.neg(), var: e.var }).collect();
                entries[i * DIM + j] = neg;
            }
        }
        SymTable { entries }
    }

    fn get(&self, i: usize, j: usize) -> &[SymEntry<F>] {
        &self.entries[i * DIM + j]
    }

    /// Jacobiator of a basis triple, one polynomial per nonzero output component.
    fn jacobi(&self, i: usize, j: usize, k: usize) -> Vec<Poly<F>> {
        let mut out: BTreeMap<usize, Poly<F>> = BTreeMap::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for e1 in self.get(a, b) {
                for e2 in self.get(e1.k, c) {
                    let mut mono: Monomial = e1.var.into_iter().chain(e2.var).collect();
                    mono.sort_unstable();
                    let p = out.entry(e2.k).or_default();
                    let t = e1.c.mul(&e2.c);
                    match p.get_mut(&mono) {
                        Some(x) => *x = x.add(&t),
                        None => {
                            p.insert(mono, t);
                        }
                    }
                }
            }
        }
        out.into_values()
            .map(|mut p| {
                p.retain(|_, v| !v.is_zero());
                p
            })
            .filter(|p| !p.is_empty())
            .collect()
    }

    fn evaluate(&self, names: Vec<String>, values: &[F], desc: &F::Desc) -> ScAlgebra<F> {
        ScAlgebra::from_upper(names, desc.clone(), |i, j| {
            SparseVec::from_entries(
                self.get(i, j)
                    .iter()
                    .map(|e| (e.k, match e.var {
                        Some(x) => e.c.mul(&values[x as usize]),
                        None => e.c.clone(),
                    }))
                    .collect(),
            )
        })
    }
}

fn eval_mono<F: Field>(m: &[u8], val: &[Option<F>], desc: &F::Desc) -> Option<F> {
    let mut r = F::one(desc);
    for x in m {
        r = r.mul(val[*x as usize].as_ref()?);
    }
    Some(r)
}

/// Fill in unknowns forced by relations with a single linear unknown.
/// Returns the index of a violated relation on contradiction.
fn propagate<F: Field>(rel: &[Poly<F>], val: &mut [Option<F>], desc: &F::Desc) -> std::result::Result<(), usize> {
    let mut changed = true;
    while changed {
        changed = false;
        for (n, p) in rel.iter().enumerate() {
            let unknown: BTreeSet<u8> = p.keys().flatten().copied().filter(|x| val[*x as usize].is_none()).collect();
            if unknown.is_empty() {
                let mut s = F::zero(desc);
                for (m, c) in p {
                    s.add_mul_assign(c, &eval_mono(m, val, desc).unwrap());
                }
                if !s.is_zero() {
                    return Err(n);
                }
                continue;
            }
            if unknown.len() != 1 {
                continue;
            }
            let x = *unknown.iter().next().unwrap();
            let (mut lin, mut cst) = (F::zero(desc), F::zero(desc));
            let mut linear = true;
            for (m, c) in p {
                let deg = m.iter().filter(|&&y| y == x).count();
                let rest: Vec<u8> = m.iter().copied().filter(|&y| y != x).collect();
                let v = eval_mono(&rest, val, desc).unwrap();
                match deg {
                    0 => cst.add_mul_assign(c, &v),
                    1 => lin.add_mul_assign(c, &v),
                    _ => linear = false,
                }
            }
            if !linear || lin.is_zero() {
                continue;
            }
            let s = cst.neg().div(&lin).expect("nonzero");
            if s.is_zero() {
                return Err(n);
            }
            val[x as usize] = Some(s);
            changed = true;
        }
    }
    Ok(())
}

pub const CANDIDATES: [(i64, i64); 6] = [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)];

struct Search<'a, F: Field> {
    rel: &'a [Poly<F>],
    order: Vec<u8>,
    desc: F::Desc,
    nodes: usize,
    failed: BTreeSet<usize>,
}

impl<F: Field> Search<'_, F> {
    fn run(&mut self, mut val: Vec<Option<F>>, choices: &mut Vec<(u8, F)>) -> Option<Vec<F>> {
        if let Err(n) = propagate(self.rel, &mut val, &self.desc) {
            self.failed.insert(n);
            return None;
        }
        self.nodes += 1;
        let Some(&x) = self.order.iter().find(|&&x| val[x as usize].is_none()) else {
            return Some(val.into_iter().map(Option::unwrap).collect());
        };
        for (p, q) in CANDIDATES {
            let c = F::from_rational(&Rational::new(p, q).unwrap(), &self.desc).expect("rationals embed");
            let mut v2 = val.clone();
            v2[x as usize] = Some(c.clone());
            choices.push((x, c));
            if let Some(s) = self.run(v2, choices) {
                return Some(s);
            }
            choices.pop();
        }
        None
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaugeRecord {
    pub seed: u64,
    pub triples_per_block: usize,
    pub sampled_triples: usize,
    pub relations: usize,
    pub search_nodes: usize,
    /// Unknowns fixed by branching, in order, with the chosen value.
    pub choices: Vec<(String, String)>,
    /// Extra triples added after a failed full sweep, per round.
    pub repair_triples: Vec<(usize, usize, usize)>,
    /// Whether every Jacobi identity with one argument in `h` holds identically in the unknowns.
    pub h_triples_identically_zero: bool,
}

#[derive(Clone, Debug)]
pub struct Constants<F> {
    pub values: Vec<F>,
    pub names: Vec<String>,
    self_var: BTreeMap<(usize, usize), u8>,
    cross_var: BTreeMap<(usize, usize), u8>,
}

impl<F: Field> Constants<F> {
    pub fn self_constant(&self, alpha: usize, v: usize) -> &F {
        &self.values[self.self_var[&(alpha, v)] as usize]
    }

    pub fn cross_constant(&self, alpha: usize, beta: usize) -> &F {
        &self.values[self.cross_var[&(alpha.min(beta), alpha.max(beta))] as usize]
    }

    /// `(line, point)` and `(line, line)` keyed table.
    pub fn table(&self) -> BTreeMap<String, String> {
        let mut t = BTreeMap::new();
        for (&(a, v), &x) in &self.self_var {
            t.insert(format!("L{a},{}", POINT_NAMES[v]), self.values[x as usize].to_string());
        }
        for (&(a, b), &x) in &self.cross_var {
            t.insert(format!("L{a},L{b}"), self.values[x as usize].to_string());
        }
        t
    }
}

#[derive(Clone, Debug, Default)]
pub struct SolveOptions {
    pub seed: u64,
    pub triples_per_block: usize,
    pub max_repairs: usize,
    /// Skip the symbolic sweep over triples with an `h` argument.
    pub skip_h_sweep: bool,
}

impl SolveOptions {
    pub fn standard(seed: u64) -> Self {
        SolveOptions { seed, triples_per_block: 24, max_repairs: 4, skip_h_sweep: false }
    }
}

pub struct Solution<F: Field> {
    pub algebra: ScAlgebra<F>,
    pub constants: Constants<F>,
    pub gauge: GaugeRecord,
    pub jacobi: JacobiReport<F>,
}

pub fn basis_names() -> Vec<String> {
    let mut names = Vec::with_capacity(DIM);
    for v in 0..7 {
        for s in 1..4 {
            names.push(format!("{}.{}", POINT_NAMES[v], QuaternionAlgebra::<Rational>::basis_name(s)));
        }
    }
    for a in 0..7 {
        for c in 0..16 {
            names.push(format!(
                "L{a}.{}{}",
                QuaternionAlgebra::<Rational>::basis_name(c / 4),
                QuaternionAlgebra::<Rational>::basis_name(c % 4)
            ));
        }
    }
    names
}

fn relations_from<F: Field>(eqs: &[Poly<F>], desc: &F::Desc) -> Vec<Poly<F>> {
    let monos: BTreeSet<&Monomial> = eqs.iter().flat_map(|p| p.keys()).collect();
    let monos: Vec<&Monomial> = monos.into_iter().collect();
    let index: BTreeMap<&Monomial, usize> = monos.iter().enumerate().map(|(n, m)| (*m, n)).collect();
    let mut red = Reducer::new(monos.len());
    for p in eqs {
        red.insert(&SparseVec::from_entries(p.iter().map(|(m, c)| (index[m], c.clone())).collect()));
    }
    let _ = desc;
    red.rows().iter().map(|r| r.iter().map(|(k, c)| (monos[*k].clone(), c.clone())).collect()).collect()
}

fn poly_string<F: Field>(p: &Poly<F>, u: &Unknowns) -> String {
    p.iter()
        .map(|(m, c)| {
            let vars: Vec<&str> = m.iter().map(|x| u.names[*x as usize].as_str()).collect();
            format!("({c})*{}", vars.join("*"))
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Solve the bracket constants so that the assembled bracket satisfies Jacobi.
pub fn solve_constants<F: Field>(
    plane: &PlaneData<F>,
    modules: &[VAlphaModule<F>],
    tw: &Intertwiners<F>,
    opts: &SolveOptions,
) -> Result<Solution<F>> {
    let desc = plane.desc.clone();
    let u = Unknowns::new();
    let table = SymTable::build(plane, modules, tw, &u);

    let h_ok = if opts.skip_h_sweep {
        false
    } else {
        (0..21).into_par_iter().all(|a| (21..DIM).all(|x| (x + 1..DIM).all(|y| table.jacobi(a, x, y).is_empty())))
    };

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut eqs: Vec<Poly<F>> = Vec::new();
    let mut sampled = 0;
    for a in 0..7 {
        for b in a..7 {
            for c in b..7 {
                let (mut hits, mut tries) = (0, 0);
                while hits < opts.triples_per_block && tries < opts.triples_per_block * 20 {
                    tries += 1;
                    let (i, j, k) = (v_index(a, rng.gen_range(0..16)), v_index(b, rng.gen_range(0..16)), v_index(c, rng.gen_range(0..16)));
                    if i == j || j == k || i == k {
                        continue;
                    }
                    sampled += 1;
                    let j3 = table.jacobi(i, j, k);
                    if !j3.is_empty() {
                        hits += 1;
                    }
                    eqs.extend(j3);
                }
            }
        }
    }
    let mut repairs = Vec::new();
    let mut total_nodes = 0;
    loop {
        let rel = relations_from(&eqs, &desc);
        let mut search = Search { rel: &rel, order: u.branch_order(), desc: desc.clone(), nodes: 0, failed: BTreeSet::new() };
        let mut choices = Vec::new();
        let found = search.run(vec![None; u.len()], &mut choices);
        total_nodes += search.nodes;
        let Some(values) = found else {
            return Err(Error::NoSolution(search.failed.iter().take(12).map(|&n| poly_string(&rel[n], &u)).collect()));
        };
        let algebra = table.evaluate(basis_names(), &values, &desc);
        let jacobi = algebra.jacobi_check(JacobiMode::Full);
        match jacobi.witness {
            Some(((i, j, k), _)) if repairs.len() < opts.max_repairs => {
                repairs.push((i, j, k));
                eqs.extend(table.jacobi(i, j, k));
            }
            _ => {
                let gauge = GaugeRecord {
                    seed: opts.seed,
                    triples_per_block: opts.triples_per_block,
                    sampled_triples: sampled,
                    relations: rel.len(),
                    search_nodes: total_nodes,
                    choices: choices.iter().map(|(x, c)| (u.names[*x as usize].clone(), c.to_string())).collect(),
                    repair_triples: repairs,
                    h_triples_identically_zero: h_ok,
                };
                let constants = Constants { values, names: u.names.clone(), self_var: u.self_var.clone(), cross_var: u.cross_var.clone() };
                return Ok(Solution { algebra, constants, gauge, jacobi });
            }
        }
    }
}

pub struct E7Assembly<F: Field> {
    pub algebra: ScAlgebra<F>,
    pub plane: PlaneData<F>,
    pub modules: Vec<VAlphaModule<F>>,
    pub module_checks: Vec<ModuleCheck>,
    pub intertwiners: Intertwiners<F>,
    pub constants: Constants<F>,
    pub gauge: GaugeRecord,
    pub jacobi: JacobiReport<F>,
}

impl<F: Field> E7Assembly<F> {
    pub fn block_index(&self, i: usize) -> Block {
        block_of(i)
    }

    /// The element `i` of `sl1(Q_v)`, used as the Cartan element at `v`.
    pub fn h_point(&self, v: usize) -> SparseVec<F> {
        self.algebra.unit(h_index(v, 1))
    }

    pub fn cartan(&self) -> Vec<SparseVec<F>> {
        (0..7).map(|v| self.h_point(v)).collect()
    }
}

impl E7Assembly<Rational> {
    /// The same assembly read over `ℚ(√d)`.
    pub fn base_change(&self, d: i64) -> E7Assembly<QuadExt> {
        let emb = |x: &Rational| QuadExt::rational(x.clone(), d);
        let mat = |m: &SparseMatrix<Rational>| m.map_values(emb);
        let maps = |b: &BTreeMap<(usize, usize), SparseMatrix<Rational>>| b.iter().map(|(k, m)| (*k, mat(m))).collect();
        E7Assembly {
            algebra: self.algebra.base_change(d),
            plane: PlaneData {
                labeling: self.plane.labeling.clone(),
                algebras: self.plane.algebras.iter().map(|q| q.map_field(emb)).collect(),
                pairings: self.plane.pairings.clone(),
                desc: d,
            },
            modules: self
                .modules
                .iter()
                .map(|m| VAlphaModule {
                    line: m.line,
                    pairing: m.pairing.clone(),
                    labels: m.labels.clone(),
                    actions: m.actions.iter().map(|(k, a)| (*k, [mat(&a[0]), mat(&a[1]), mat(&a[2])])).collect(),
                })
                .collect(),
            module_checks: self.module_checks.clone(),
            intertwiners: Intertwiners {
                self_maps: maps(&self.intertwiners.self_maps),
                cross_maps: maps(&self.intertwiners.cross_maps),
                dims: self.intertwiners.dims.clone(),
            },
            constants: Constants {
                values: self.constants.values.iter().map(emb).collect(),
                names: self.constants.names.clone(),
                self_var: self.constants.self_var.clone(),
                cross_var: self.constants.cross_var.clone(),
            },
            gauge: self.gauge.clone(),
            jacobi: JacobiReport {
                mode: self.jacobi.mode,
                triples_checked: self.jacobi.triples_checked,
                witness: self.jacobi.witness.as_ref().map(|(t, v)| (*t, v.map_values(emb))),
            },
        }
    }
}

pub fn assemble<F: Field>(labeling: &FanoLabeling, desc: &F::Desc, opts: &SolveOptions) -> Result<E7Assembly<F>> {
    let plane = PlaneData::<F>::new(labeling, desc)?;
    let modules = (0..7).map(|a| build_valpha(&plane, a)).collect::<Result<Vec<_>>>()?;
    let module_checks: Vec<ModuleCheck> = modules.par_iter().map(|m| m.check(&plane)).collect();
    if let Some((a, c)) = module_checks.iter().enumerate().find(|(_, c)| !c.ok()) {
        return Err(Error::PairingUnavailable(a, format!("module check failed: {c:?}")));
    }
    let intertwiners = compute_intertwiners(&plane, &modules)?;
    let sol = solve_constants(&plane, &modules, &intertwiners, opts)?;
    Ok(E7Assembly {
        algebra: sol.algebra,
        plane,
        modules,
        module_checks,
        intertwiners,
        constants: sol.constants,
        gauge: sol.gauge,
        jacobi: sol.jacobi,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct LineReport {
    pub line: usize,
    pub closure_dim: usize,
    pub closed: bool,
    pub self_bracket_in_quadruple: bool,
    pub ideal_dim: usize,
    pub ideal_closed: bool,
    pub others_centralize: bool,
    pub ideal_type: std::result::Result<String, String>,
    pub failures: Vec<String>,
}

impl LineReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn line_subalgebra_check<F: Field>(a: &E7Assembly<F>, alpha: usize, seed: u64) -> LineReport {
    let l = &a.algebra;
    let quad = fano::quadruple(alpha).unwrap();
    let vs: Vec<usize> = (0..16).map(|c| v_index(alpha, c)).collect();
    let sub: Vec<usize> = (0..21).chain(vs.iter().copied()).collect();
    let ideal: Vec<usize> = quad.iter().flat_map(|&v| (1..4).map(move |s| h_index(v, s))).chain(vs.iter().copied()).collect();
    let others: Vec<usize> = fano::LINES[alpha].iter().flat_map(|&v| (1..4).map(move |s| h_index(v, s))).collect();
    let in_set = |set: &[usize], v: &SparseVec<F>| v.iter().all(|(k, _)| set.contains(k));
    let mut failures = Vec::new();

    let mut span = Reducer::new(DIM);
    for &i in &sub {
        span.insert(&l.unit(i));
    }
    let mut closed = true;
    for (n, &i) in sub.iter().enumerate() {
        for &j in &sub[n + 1..] {
            let b = l.basis_bracket(i, j);
            span.insert(b);
            closed &= in_set(&sub, b);
        }
    }
    if !closed || span.rank() != 37 {
        failures.push(format!("h + V_{alpha} not closed (span dim {})", span.rank()));
    }
    let quad_h: Vec<usize> = quad.iter().flat_map(|&v| (1..4).map(move |s| h_index(v, s))).collect();
    let self_ok = vs.iter().all(|&i| vs.iter().all(|&j| in_set(&quad_h, l.basis_bracket(i, j))));
    if !self_ok {
        failures.push("[V,V] leaks outside the quadruple's sl1 blocks".into());
    }
    let ideal_closed = sub.iter().all(|&i| ideal.iter().all(|&j| in_set(&ideal, l.basis_bracket(i, j))));
    if !ideal_closed {
        failures.push("28-dimensional span is not an ideal".into());
    }
    let others_centralize = others.iter().all(|&i| ideal.iter().all(|&j| l.basis_bracket(i, j).is_empty()));
    if !others_centralize {
        failures.push("points on the line do not centralize the ideal".into());
    }
    let ideal_type = (|| -> Result<String> {
        let names: Vec<String> = ideal.iter().map(|&i| l.names()[i].clone()).collect();
        let basis: Vec<SparseVec<F>> = ideal.iter().map(|&i| l.unit(i)).collect();
        let s = l.subalgebra(&basis, names)?;
        let cartan: Vec<SparseVec<F>> = (0..4).map(|n| s.unit(3 * n)).collect();
        let r = roots(&s, &cartan)?;
        Ok(identify_type(&r, seed)?.label)
    })()
    .map_err(|e| e.to_string());
    if ideal_type.as_deref() != Ok("D4") {
        failures.push(format!("ideal type {ideal_type:?}"));
    }
    LineReport {
        line: alpha,
        closure_dim: span.rank(),
        closed,
        self_bracket_in_quadruple: self_ok,
        ideal_dim: ideal.len(),
        ideal_closed,
        others_centralize,
        ideal_type,
        failures,
    }
}

/// Subspace spanned by a set of basis indices.
pub fn coordinate_subspace<F: Field>(l: &ScAlgebra<F>, idx: &[usize]) -> Subspace<F> {
    Subspace::new(l.dim(), idx.iter().map(|&i| l.unit(i)).collect()).expect("distinct units")
}
