use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::eigen::{root_index, RootDatum};
use crate::arith::{Field, Rational};
use crate::error::{Error, Result};

/// Cartan matrix `a_ij = 2(α_i, α_j)/(α_j, α_j)` of an irreducible type with
/// Bourbaki's numbering of simple roots.
pub fn bourbaki_cartan(kind: char, n: usize) -> Option<Vec<Vec<i64>>> {
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    match (kind, n) {
        ('A', n) if n >= 1 => (1..n).for_each(|i| link(i, i + 1)),
        ('B', n) | ('C', n) if n >= 2 => (1..n).for_each(|i| link(i, i + 1)),
        ('D', n) if n >= 4 => {
            (1..n - 1).for_each(|i| link(i, i + 1));
            link(n - 2, n);
        }
        ('E', n) if (6..=8).contains(&n) => {
            link(1, 3);
            link(2, 4);
            (3..n).for_each(|i| link(i, i + 1));
        }
        ('F', 4) => (1..4).for_each(|i| link(i, i + 1)),
        ('G', 2) => link(1, 2),
        _ => return None,
    }
    match (kind, n) {
        ('B', n) => a[n - 2][n - 1] = -2,
        ('C', n) => a[n - 1][n - 2] = -2,
        ('F', _) => a[1][2] = -2,
        ('G', _) => a[1][0] = -3,
        _ => {}
    }
    Some(a)
}

fn candidates(n: usize) -> Vec<(String, Vec<Vec<i64>>)> {
    let mut out = Vec::new();
    for (k, lo) in [('A', 1), ('B', 2), ('C', 3), ('D', 4)] {
        if n >= lo {
            out.push((format!("{k}{n}"), bourbaki_cartan(k, n).unwrap()));
        }
    }
    if (6..=8).contains(&n) {
        out.push((format!("E{n}"), bourbaki_cartan('E', n).unwrap()));
    }
    if n == 4 {
        out.push(("F4".into(), bourbaki_cartan('F', 4).unwrap()));
    }
    if n == 2 {
        out.push(("G2".into(), bourbaki_cartan('G', 2).unwrap()));
    }
    out
}

/// A permutation `p` with `a[i][j] = b[p[i]][p[j]]`, if one exists.
pub fn permutation_equivalent(a: &[Vec<i64>], b: &[Vec<i64>]) -> Option<Vec<usize>> {
    let n = a.len();
    if b.len() != n {
        return None;
    }
    let sig = |m: &[Vec<i64>], i: usize| {
        let mut r: Vec<(i64, i64)> = (0..n).map(|j| (m[i][j], m[j][i])).collect();
        r.sort_unstable();
        r
    };
    let sa: Vec<_> = (0..n).map(|i| sig(a, i)).collect();
    let sb: Vec<_> = (0..n).map(|i| sig(b, i)).collect();
    fn go(i: usize, p: &mut Vec<usize>, used: &mut [bool], a: &[Vec<i64>], b: &[Vec<i64>], sa: &[Vec<(i64, i64)>], sb: &[Vec<(i64, i64)>]) -> bool {
        if i == a.len() {
            return true;
        }
        for c in 0..a.len() {
            if used[c] || sa[i] != sb[c] {
                continue;
            }
            if (0..i).all(|j| a[i][j] == b[c][p[j]] && a[j][i] == b[p[j]][c]) {
                used[c] = true;
                p.push(c);
                if go(i + 1, p, used, a, b, sa, sb) {
                    return true;
                }
                p.pop();
                used[c] = false;
            }
        }
        false
    }
    let mut p = Vec::with_capacity(n);
    let mut used = vec![false; n];
    go(0, &mut p, &mut used, a, b, &sa, &sb).then_some(p)
}

#[derive(Clone, Debug, Serialize)]
pub struct TypeId {
    pub label: String,
    pub rank: usize,
    pub cartan_matrix: Vec<Vec<i64>>,
    /// Indices into the datum's roots, in the order of `cartan_matrix`.
    pub simple_roots: Vec<usize>,
    pub positive_roots: usize,
    pub functional: Vec<i64>,
    /// For an irreducible match: `perm[i]` is the Bourbaki index (0-based) of simple root `i`.
    pub bourbaki_perm: Option<Vec<usize>>,
}

fn flatten<F: Field>(r: &[F]) -> Result<Vec<Rational>> {
    let mut out = Vec::new();
    for x in r {
        out.extend(x.rational_coords().ok_or_else(|| Error::Unrecognized("root without rational coordinates".into()))?);
    }
    Ok(out)
}

/// Type of a split semisimple root datum via a generic functional drawn from `seed`.
pub fn identify_type<F: Field>(r: &RootDatum<F>, seed: u64) -> Result<TypeId> {
    if r.roots.is_empty() {
        return Err(Error::Unrecognized("no roots".into()));
    }
    let flat: Vec<Vec<Rational>> = r.roots.iter().map(|x| flatten(x)).collect::<Result<_>>()?;
    let width = flat[0].len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = None;
    for _ in 0..64 {
        let w: Vec<i64> = (0..width).map(|_| rng.gen_range(1..=97) * if rng.gen_bool(0.5) { 1 } else { -1 }).collect();
        let vals: Vec<Rational> = flat
            .iter()
            .map(|c| c.iter().zip(&w).fold(Rational::zero(), |acc, (x, y)| acc + x * &Rational::from(*y)))
            .collect();
        if vals.iter().all(|v| !Field::is_zero(v)) {
            chosen = Some((w, vals));
            break;
        }
    }
    let (functional, vals) = chosen.ok_or_else(|| Error::Unrecognized("no generic functional found".into()))?;
    let positive: Vec<usize> = (0..r.roots.len()).filter(|&i| !vals[i].is_negative()).collect();
    let index = root_index(r);
    let mut decomposable: HashSet<usize> = HashSet::new();
    for (n, &a) in positive.iter().enumerate() {
        for &b in &positive[n + 1..] {
            let s: Vec<F> = r.roots[a].iter().zip(&r.roots[b]).map(|(x, y)| x.add(y)).collect();
            if let Some(&k) = index.get(&s) {
                decomposable.insert(k);
            }
        }
    }
    let simple: Vec<usize> = positive.iter().copied().filter(|k| !decomposable.contains(k)).collect();
    if simple.len() != r.rank() {
        return Err(Error::Unrecognized(format!("{} simple roots for rank {}", simple.len(), r.rank())));
    }
    let m = simple.len();
    let mut cm = vec![vec![0i64; m]; m];
    for i in 0..m {
        for j in 0..m {
            let num = r.gram[simple[i]][simple[j]].add(&r.gram[simple[i]][simple[j]]);
            let q = num.div(&r.gram[simple[j]][simple[j]]).map_err(|_| Error::Unrecognized("isotropic simple root".into()))?;
            cm[i][j] = q
                .to_rational()
                .and_then(|x| x.is_integer().then(|| x.to_i64()).flatten())
                .ok_or_else(|| Error::Unrecognized(format!("non-integral Cartan entry {q}")))?;
        }
    }
    // connected components
    let mut comp = vec![usize::MAX; m];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for s in 0..m {
        if comp[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        comp[s] = comps.len();
        let mut members = vec![];
        while let Some(x) = stack.pop() {
            members.push(x);
            for y in 0..m {
                if comp[y] == usize::MAX && cm[x][y] != 0 {
                    comp[y] = comps.len();
                    stack.push(y);
                }
            }
        }
        members.sort_unstable();
        comps.push(members);
    }
    let mut labels = Vec::new();
    let mut perm = None;
    for c in &comps {
        let sub: Vec<Vec<i64>> = c.iter().map(|&i| c.iter().map(|&j| cm[i][j]).collect()).collect();
        let hit = candidates(c.len()).into_iter().find_map(|(name, b)| permutation_equivalent(&sub, &b).map(|p| (name, p)));
        match hit {
            Some((name, p)) => {
                labels.push(name);
                if comps.len() == 1 {
                    perm = Some(p);
                }
            }
            None => return Err(Error::Unrecognized(format!("component with Cartan matrix {sub:?}"))),
        }
    }
    labels.sort();
    Ok(TypeId {
        label: labels.join("+"),
        rank: m,
        cartan_matrix: cm,
        simple_roots: simple,
        positive_roots: positive.len(),
        functional,
        bourbaki_perm: perm,
    })
}
