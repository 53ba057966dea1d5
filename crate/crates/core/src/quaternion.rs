//! Quaternion algebras `(a,b)` with basis `1, i, j, k`.

use crate::arith::{Field, Rational, Reducer, SparseMatrix, SparseVec};
use crate::error::{Error, Result};

const NAMES: [&str; 4] = ["1", "i", "j", "k"];

/// Product of basis elements: `e_p e_q = coef · e_r`, coefficient given as a
/// monomial `±a^x b^y`.
const TABLE: [[(usize, i8, u8, u8); 4]; 4] = [
    [(0, 1, 0, 0), (1, 1, 0, 0), (2, 1, 0, 0), (3, 1, 0, 0)],
    [(1, 1, 0, 0), (0, 1, 1, 0), (3, 1, 0, 0), (2, 1, 1, 0)],
    [(2, 1, 0, 0), (3, -1, 0, 0), (0, 1, 0, 1), (1, -1, 0, 1)],
    [(3, 1, 0, 0), (2, -1, 1, 0), (1, 1, 0, 1), (0, -1, 1, 1)],
];

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuaternionAlgebra<F: Field> {
    a: F,
    b: F,
    declared_split: bool,
    table: Vec<(usize, F)>,
}

impl<F: Field> QuaternionAlgebra<F> {
    pub fn new(a: F, b: F, declared_split: bool) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::Schema { field: "symbol".into(), msg: "quaternion symbol entries must be nonzero".into() });
        }
        if declared_split && !a.is_one() {
            return Err(Error::Schema { field: "split".into(), msg: "split algebras must be given with a = 1".into() });
        }
        let mut table = Vec::with_capacity(16);
        for row in TABLE.iter() {
            for &(r, sign, xa, yb) in row.iter() {
                let mut c = F::from_i64(sign as i64, &a.desc());
                if xa == 1 {
                    c = c.mul(&a);
                }
                if yb == 1 {
                    c = c.mul(&b);
                }
                table.push((r, c));
            }
        }
        Ok(QuaternionAlgebra { a, b, declared_split, table })
    }

    /// The canonical split presentation `(1,1)`.
    pub fn split(desc: &F::Desc) -> Self {
        Self::new(F::one(desc), F::one(desc), true).expect("(1,1) is valid")
    }

    pub fn from_rational_symbol(a: &Rational, b: &Rational, split: bool, desc: &F::Desc) -> Result<Self> {
        Self::new(F::from_rational(a, desc)?, F::from_rational(b, desc)?, split)
    }

    pub fn a(&self) -> &F {
        &self.a
    }

    pub fn b(&self) -> &F {
        &self.b
    }

    pub fn declared_split(&self) -> bool {
        self.declared_split
    }

    pub fn desc(&self) -> F::Desc {
        self.a.desc()
    }

    pub fn same_symbol(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }

    pub fn symbol_string(&self) -> String {
        format!("({},{})", self.a, self.b)
    }

    pub fn basis_name(k: usize) -> &'static str {
        NAMES[k]
    }

    /// `e_p e_q` as `(r, coefficient)`.
    pub fn basis_product(&self, p: usize, q: usize) -> &(usize, F) {
        &self.table[4 * p + q]
    }

    pub fn element(&self, coords: [F; 4]) -> QuatElement<F> {
        QuatElement { coords, alg: self.clone() }
    }

    pub fn from_ints(&self, c: [i64; 4]) -> QuatElement<F> {
        let d = self.desc();
        self.element(c.map(|x| F::from_i64(x, &d)))
    }

    pub fn basis(&self, k: usize) -> QuatElement<F> {
        let mut c = [0i64; 4];
        c[k] = 1;
        self.from_ints(c)
    }

    pub fn one(&self) -> QuatElement<F> {
        self.basis(0)
    }

    pub(crate) fn mul_coords(&self, x: &[F; 4], y: &[F; 4]) -> [F; 4] {
        let d = self.desc();
        let mut out: [F; 4] = std::array::from_fn(|_| F::zero(&d));
        for p in 0..4 {
            if x[p].is_zero() {
                continue;
            }
            for q in 0..4 {
                if y[q].is_zero() {
                    continue;
                }
                let (r, c) = &self.table[4 * p + q];
                out[*r].add_mul_assign(&x[p].mul(&y[q]), c);
            }
        }
        out
    }

    /// Matrix of `z ↦ x·z` in the basis `(1,i,j,k)`.
    pub fn left_matrix(&self, x: &QuatElement<F>) -> SparseMatrix<F> {
        let cols = (0..4)
            .map(|c| SparseVec::from_dense(&self.mul_coords(&x.coords, &self.basis(c).coords)))
            .collect();
        SparseMatrix::from_columns(4, cols)
    }

    /// Matrix of `z ↦ z·x`.
    pub fn right_matrix(&self, x: &QuatElement<F>) -> SparseMatrix<F> {
        let cols = (0..4)
            .map(|c| SparseVec::from_dense(&self.mul_coords(&self.basis(c).coords, &x.coords)))
            .collect();
        SparseMatrix::from_columns(4, cols)
    }

    /// Matrix units `(e11, e12, e21, e22)`. Needs `a` or `b` to be a square in the field.
    pub fn split_matrix_units(&self) -> Result<[QuatElement<F>; 4]> {
        let d = self.desc();
        let (s, r, t, r2) = if let Some(t) = self.a.sqrt() {
            (self.basis(1), self.basis(2), t, self.b.clone())
        } else if let Some(t) = self.b.sqrt() {
            (self.basis(2), self.basis(1), t, self.a.clone())
        } else {
            return Err(Error::NotSplitHere(self.symbol_string()));
        };
        let half = F::from_i64(2, &d).inv()?;
        let e11 = self.one().add(&s.scale(&t.inv()?)).scale(&half);
        let e22 = self.one().sub(&e11);
        let e12 = e11.mul(&r).mul(&e22);
        let e21 = e22.mul(&r).mul(&e11).scale(&r2.inv()?);
        Ok([e11, e12, e21, e22])
    }

    /// Coordinates `(i, j, k)` of a trace-zero element.
    pub fn sl1_coords(x: &QuatElement<F>) -> [F; 3] {
        debug_assert!(x.coords[0].is_zero());
        [x.coords[1].clone(), x.coords[2].clone(), x.coords[3].clone()]
    }

    /// `3×3` matrix of `ad s` on `sl1` in the basis `(i, j, k)`.
    pub fn sl1_ad(&self, s: &QuatElement<F>) -> SparseMatrix<F> {
        let cols = (1..4)
            .map(|c| {
                let b = self.basis(c);
                let br = s.mul(&b).sub(&b.mul(s));
                SparseVec::from_dense(&Self::sl1_coords(&br))
            })
            .collect();
        SparseMatrix::from_columns(3, cols)
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> QuaternionAlgebra<G> {
        QuaternionAlgebra::new(f(&self.a), f(&self.b), self.declared_split).expect("nonzero survives embedding")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuatElement<F: Field> {
    pub coords: [F; 4],
    alg: QuaternionAlgebra<F>,
}

impl<F: Field> QuatElement<F> {
    pub fn algebra(&self) -> &QuaternionAlgebra<F> {
        &self.alg
    }

    pub fn qmul(&self, other: &Self) -> Result<Self> {
        if !self.alg.same_symbol(&other.alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(self.alg.element(self.alg.mul_coords(&self.coords, &other.coords)))
    }

    /// Product within one algebra; panics on mismatch.
    pub fn mul(&self, other: &Self) -> Self {
        self.qmul(other).expect("same algebra")
    }

    pub fn add(&self, other: &Self) -> Self {
        self.alg.element(std::array::from_fn(|k| self.coords[k].add(&other.coords[k])))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.alg.element(std::array::from_fn(|k| self.coords[k].sub(&other.coords[k])))
    }

    pub fn scale(&self, c: &F) -> Self {
        self.alg.element(std::array::from_fn(|k| self.coords[k].mul(c)))
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn conj(&self) -> Self {
        let c = &self.coords;
        self.alg.element([c[0].clone(), c[1].neg(), c[2].neg(), c[3].neg()])
    }

    pub fn trd(&self) -> F {
        self.coords[0].add(&self.coords[0])
    }

    /// `x0² − a x1² − b x2² + ab x3²`.
    pub fn nrd(&self) -> F {
        let c = &self.coords;
        let (a, b) = (&self.alg.a, &self.alg.b);
        let mut n = c[0].mul(&c[0]);
        n = n.sub(&a.mul(&c[1]).mul(&c[1]));
        n = n.sub(&b.mul(&c[2]).mul(&c[2]));
        n.add(&a.mul(b).mul(&c[3]).mul(&c[3]))
    }

    pub fn qconj_trd_nrd(&self) -> (Self, F, F) {
        (self.conj(), self.trd(), self.nrd())
    }
}

impl<F: Field> std::fmt::Display for QuatElement<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = (0..4)
            .filter(|&k| !self.coords[k].is_zero())
            .map(|k| if k == 0 { format!("{}", self.coords[k]) } else { format!("({})*{}", self.coords[k], NAMES[k]) })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// The map `Q ⊗ Q → End(Q)`, `x⊗y ↦ (z ↦ x z ȳ)`.
#[derive(Clone, Debug)]
pub struct TensorToEnd<F: Field> {
    q: QuaternionAlgebra<F>,
}

pub fn qtensor_to_end<F: Field>(left: &QuaternionAlgebra<F>, right: &QuaternionAlgebra<F>) -> Result<TensorToEnd<F>> {
    if !left.same_symbol(right) {
        return Err(Error::SymbolMismatch(left.symbol_string(), right.symbol_string()));
    }
    Ok(TensorToEnd { q: left.clone() })
}

impl<F: Field> TensorToEnd<F> {
    pub fn image(&self, x: &QuatElement<F>, y: &QuatElement<F>) -> SparseMatrix<F> {
        self.q.left_matrix(x).mul(&self.q.right_matrix(&y.conj()))
    }

    /// Rank of the `16×16` matrix of images of basis tensors.
    pub fn rank(&self) -> usize {
        let mut red = Reducer::new(16);
        for p in 0..4 {
            for q in 0..4 {
                red.insert(&self.image(&self.q.basis(p), &self.q.basis(q)).flatten());
            }
        }
        red.rank()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::QuadExt;

    fn q(a: i64, b: i64) -> QuaternionAlgebra<Rational> {
        QuaternionAlgebra::new(a.into(), b.into(), false).unwrap()
    }

    #[test]
    fn relations() {
        let h = q(-1, -1);
        let (i, j, k) = (h.basis(1), h.basis(2), h.basis(3));
        assert_eq!(i.mul(&j), k);
        assert_eq!(i.mul(&i), h.from_ints([-1, 0, 0, 0]));
        assert_eq!(j.mul(&i), k.scale(&Rational::from(-1)));
        let g = q(2, 3);
        assert_eq!(g.basis(3).mul(&g.basis(3)), g.from_ints([-6, 0, 0, 0]));
    }

    #[test]
    fn idempotent_in_split() {
        let s = q(1, 1);
        let half = Rational::new(1, 2).unwrap();
        let e = s.from_ints([1, 1, 0, 0]).scale(&half);
        assert_eq!(e.mul(&e), e);
    }

    #[test]
    fn conj_trace_norm() {
        let h = q(-1, -1);
        let (c, t, n) = h.from_ints([1, 1, 1, 1]).qconj_trd_nrd();
        assert_eq!(c, h.from_ints([1, -1, -1, -1]));
        assert_eq!(t, Rational::from(2));
        assert_eq!(n, Rational::from(4));
        let (c, t, n) = q(5, 7).basis(1).qconj_trd_nrd();
        assert_eq!(c, q(5, 7).from_ints([0, -1, 0, 0]));
        assert_eq!((t, n), (Rational::from(0), Rational::from(-5)));
        let (_, t, n) = h.one().qconj_trd_nrd();
        assert_eq!((t, n), (Rational::from(2), Rational::from(1)));
    }

    #[test]
    fn mismatch() {
        assert_eq!(q(1, 1).basis(1).qmul(&q(-1, -1).basis(1)), Err(Error::AlgebraMismatch));
        assert!(matches!(qtensor_to_end(&q(1, 1), &q(-1, -1)), Err(Error::SymbolMismatch(..))));
    }

    fn check_units<F: Field>(u: &[QuatElement<F>; 4]) {
        // u = [e11, e12, e21, e22]; index (r,s) -> 2r+s
        for r in 0..2 {
            for s in 0..2 {
                for t in 0..2 {
                    for w in 0..2 {
                        let prod = u[2 * r + s].mul(&u[2 * t + w]);
                        if s == t {
                            assert_eq!(prod, u[2 * r + w]);
                        } else {
                            assert!(prod.is_zero());
                        }
                    }
                }
            }
        }
        assert_eq!(u[0].add(&u[3]), u[0].algebra().one());
    }

    #[test]
    fn matrix_units() {
        let s = QuaternionAlgebra::<Rational>::split(&());
        let u = s.split_matrix_units().unwrap();
        assert_eq!(u[0], s.from_ints([1, 1, 0, 0]).scale(&Rational::new(1, 2).unwrap()));
        check_units(&u);
        check_units(&q(4, -3).split_matrix_units().unwrap());
        check_units(&q(-3, 9).split_matrix_units().unwrap());
        assert!(matches!(q(-1, -1).split_matrix_units(), Err(Error::NotSplitHere(_))));
        let hq = QuaternionAlgebra::<QuadExt>::new(QuadExt::from_i64(-1, &-1), QuadExt::from_i64(-1, &-1), false).unwrap();
        check_units(&hq.split_matrix_units().unwrap());
    }

    #[test]
    fn tensor_to_end() {
        for (a, b) in [(1, 1), (-1, -1), (2, -5)] {
            let g = q(a, b);
            let m = qtensor_to_end(&g, &g).unwrap();
            assert_eq!(m.image(&g.one(), &g.one()), SparseMatrix::identity(4, &()));
            assert_eq!(m.rank(), 16);
            // z -> i z conj(i) squared is z -> a² z
            let ii = m.image(&g.basis(1), &g.basis(1));
            assert_eq!(ii.mul(&ii), SparseMatrix::identity(4, &()).scale(&Rational::from(a * a)));
            let (i, j) = (g.basis(1), g.basis(2));
            assert_eq!(m.image(&i, &j).mul(&m.image(&j, &i)), m.image(&i.mul(&j), &j.mul(&i)));
        }
    }

    #[test]
    fn sl1_is_closed() {
        let g = q(2, -5);
        for s in 1..4 {
            for t in 1..4 {
                let (x, y) = (g.basis(s), g.basis(t));
                assert!(x.mul(&y).sub(&y.mul(&x)).trd().is_zero());
            }
        }
        // ad i sends j to 2k
        let adi = g.sl1_ad(&g.basis(1));
        assert_eq!(adi.get(2, 1), Some(&Rational::from(2)));
    }
}
