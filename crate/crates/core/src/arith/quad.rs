use std::fmt;

use super::{rational_roots, ArithError, Field, PrimeScalar, Rational};

/// Element `x + y·√d` of the quadratic field `ℚ(√d)`, `d` square-free and not 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    pub x: Rational,
    pub y: Rational,
    pub d: i64,
}

impl QuadExt {
    pub fn new(x: Rational, y: Rational, d: i64) -> Self {
        debug_assert!(is_valid_radicand(d), "radicand {d} is not square-free");
        QuadExt { x, y, d }
    }

    pub fn rational(x: Rational, d: i64) -> Self {
        QuadExt::new(x, Rational::zero(), d)
    }

    /// `√d` itself.
    pub fn root(d: i64) -> Self {
        QuadExt::new(Rational::zero(), Rational::one(), d)
    }

    /// `x² − d·y²`.
    pub fn norm(&self) -> Rational {
        let dy2 = &Rational::from(self.d) * &(&self.y * &self.y);
        &(&self.x * &self.x) - &dy2
    }

    pub fn conj(&self) -> Self {
        QuadExt::new(self.x.clone(), -&self.y, self.d)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.d, o.d, "operands from different quadratic fields");
    }

    /// Canonical `x+y*sqrt(d)` string with both parts in `num/den` form.
    pub fn to_canonical(&self) -> String {
        format!("{}+{}*sqrt({})", self.x.to_canonical(), self.y.to_canonical(), self.d)
    }
}

/// `d` is a valid radicand: nonzero, not 1 and square-free.
pub fn is_valid_radicand(d: i64) -> bool {
    if d == 0 || d == 1 {
        return false;
    }
    let n = d.unsigned_abs();
    let mut k = 2u64;
    while k * k <= n {
        if n % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            write!(f, "{}", self.x)
        } else {
            write!(f, "{}+{}*sqrt({})", self.x, self.y, self.d)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for QuadExt {
    type Desc = i64;

    fn zero(d: &i64) -> Self {
        QuadExt::rational(Rational::zero(), *d)
    }
    fn one(d: &i64) -> Self {
        QuadExt::rational(Rational::one(), *d)
    }
    fn desc(&self) -> i64 {
        self.d
    }
    fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
    fn from_rational(q: &Rational, d: &i64) -> Result<Self, ArithError> {
        Ok(QuadExt::rational(q.clone(), *d))
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt::new(&self.x + &o.x, &self.y + &o.y, self.d)
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        QuadExt::new(&self.x - &o.x, &self.y - &o.y, self.d)
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let d = Rational::from(self.d);
        let x = &(&self.x * &o.x) + &(&d * &(&self.y * &o.y));
        let y = &(&self.x * &o.y) + &(&self.y * &o.x);
        QuadExt::new(x, y, self.d)
    }
    fn neg(&self) -> Self {
        QuadExt::new(-&self.x, -&self.y, self.d)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        let n = self.norm();
        if n.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let ni = n.inv()?;
        Ok(QuadExt::new(&self.x * &ni, -&(&self.y * &ni), self.d))
    }
    fn sqrt(&self) -> Option<Self> {
        let d = self.d;
        if self.y.is_zero() {
            if let Some(s) = self.x.sqrt() {
                return Some(QuadExt::rational(s, d));
            }
            // x = s² d  ⇒  √x = s √d
            let s = self.x.div(&Rational::from(d)).ok()?.sqrt()?;
            return Some(QuadExt::new(Rational::zero(), s, d));
        }
        // (u + v√d)² = x + y√d  ⇒  u² + d v² = x, 2uv = y
        let n = self.norm().sqrt()?;
        let two = Rational::from(2);
        for cand in [&self.x + &n, &self.x - &n] {
            let u2 = cand.div(&two).ok()?;
            if let Some(u) = u2.sqrt() {
                if u.is_zero() {
                    continue;
                }
                let v = self.y.div(&(&two * &u)).ok()?;
                let r = QuadExt::new(u, v, d);
                if r.mul(&r) == *self {
                    return Some(r);
                }
            }
        }
        None
    }
    fn rational_coords(&self) -> Option<Vec<Rational>> {
        Some(vec![self.x.clone(), self.y.clone()])
    }
    fn to_rational(&self) -> Option<Rational> {
        self.y.is_zero().then(|| self.x.clone())
    }
    fn reduce_mod(&self, p: u64) -> Option<Result<PrimeScalar, ArithError>> {
        if self.y.is_zero() {
            self.x.reduce_mod(p)
        } else {
            None
        }
    }

    /// Finds roots that are rational or rational multiples of `√d`.
    /// Mixed roots `x + y√d` with both parts nonzero are not searched for.
    fn roots(poly: &[Self]) -> Vec<Self> {
        let Some(first) = poly.first() else {
            return Vec::new();
        };
        let d = first.d;
        let mut out = Vec::new();
        // rational candidates: common rational roots of the x- and y-parts
        let xs: Vec<Rational> = poly.iter().map(|c| c.x.clone()).collect();
        let ys: Vec<Rational> = poly.iter().map(|c| c.y.clone()).collect();
        let cands = if ys.iter().all(|y| y.is_zero()) {
            rational_roots(&xs)
        } else if xs.iter().all(|x| x.is_zero()) {
            rational_roots(&ys)
        } else {
            let mut a = rational_roots(&xs);
            let b = rational_roots(&ys);
            a.retain(|r| b.contains(r));
            a
        };
        for r in cands {
            out.push(QuadExt::rational(r, d));
        }
        // candidates s√d: substitute X = s√d and split into rational and √d parts
        let dq = Rational::from(d);
        let mut even = Vec::new();
        let mut odd = Vec::new();
        let mut dpow = Rational::one();
        for (k, c) in poly.iter().enumerate() {
            // c · (√d)^k = c · d^{k/2} (even k) or c · d^{(k-1)/2} √d (odd k)
            let (re, im) = if k % 2 == 0 {
                (&c.x * &dpow, &c.y * &dpow)
            } else {
                (&(&c.y * &dpow) * &dq, &c.x * &dpow)
            };
            if k % 2 == 1 {
                dpow = &dpow * &dq;
            }
            even.push(re);
            odd.push(im);
        }
        let a = if odd.iter().all(|c| c.is_zero()) {
            rational_roots(&even)
        } else if even.iter().all(|c| c.is_zero()) {
            rational_roots(&odd)
        } else {
            let b = rational_roots(&odd);
            let mut a = rational_roots(&even);
            a.retain(|r| b.contains(r));
            a
        };
        for s in a {
            if !s.is_zero() {
                out.push(QuadExt::new(Rational::zero(), s, d));
            }
        }
        out.retain(|r| Field::is_zero(&super::field::eval_poly(poly, r)));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qe(x: i64, y: i64) -> QuadExt {
        QuadExt::new(Rational::from(x), Rational::from(y), -1)
    }

    #[test]
    fn gaussian_norm() {
        assert_eq!(qe(1, 1).mul(&qe(1, -1)), qe(2, 0));
    }

    #[test]
    fn inverse() {
        let z = qe(3, 4);
        assert_eq!(z.mul(&z.inv().unwrap()), qe(1, 0));
        assert_eq!(qe(0, 0).inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn sqrt_of_minus_one() {
        assert_eq!(qe(-1, 0).sqrt(), Some(qe(0, 1)));
        let w = qe(3, 4); // (2 + i)^2
        let r = w.sqrt().unwrap();
        assert_eq!(r.mul(&r), w);
    }

    #[test]
    fn pure_imaginary_roots() {
        // x^3 + 4x = x (x - 2i)(x + 2i)
        let p = vec![qe(0, 0), qe(4, 0), qe(0, 0), qe(1, 0)];
        let mut r = QuadExt::roots(&p);
        r.sort_by_key(|z| z.to_canonical());
        assert_eq!(r.len(), 3);
        assert!(r.contains(&qe(0, 2)) && r.contains(&qe(0, -2)) && r.contains(&qe(0, 0)));
    }

    #[test]
    fn radicands() {
        assert!(is_valid_radicand(-1));
        assert!(is_valid_radicand(6));
        assert!(!is_valid_radicand(12));
        assert!(!is_valid_radicand(1));
    }
}
