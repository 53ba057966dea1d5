use std::fmt;

use super::{ArithError, Field, Rational};

/// Residue class modulo an odd prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeScalar {
    r: u64,
    p: u64,
}

impl PrimeScalar {
    pub fn new(r: u64, p: u64) -> Self {
        PrimeScalar { r: r % p, p }
    }

    pub fn residue(&self) -> u64 {
        self.r
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.p, o.p, "operands from different prime fields");
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = PrimeScalar::new(1, self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.r, self.p)
    }
}

impl fmt::Debug for PrimeScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Field for PrimeScalar {
    type Desc = u64;

    fn zero(p: &u64) -> Self {
        PrimeScalar::new(0, *p)
    }
    fn one(p: &u64) -> Self {
        PrimeScalar::new(1, *p)
    }
    fn desc(&self) -> u64 {
        self.p
    }
    fn is_zero(&self) -> bool {
        self.r == 0
    }
    fn from_rational(q: &Rational, p: &u64) -> Result<Self, ArithError> {
        q.reduce_mod(*p).expect("rationals always reduce")
    }
    fn add(&self, o: &Self) -> Self {
        self.check(o);
        let s = self.r + o.r;
        PrimeScalar { r: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        PrimeScalar { r: if self.r >= o.r { self.r - o.r } else { self.r + self.p - o.r }, p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        PrimeScalar { r: ((self.r as u128 * o.r as u128) % self.p as u128) as u64, p: self.p }
    }
    fn neg(&self) -> Self {
        PrimeScalar { r: if self.r == 0 { 0 } else { self.p - self.r }, p: self.p }
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if self.r == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(self.pow(self.p - 2))
    }
    fn sqrt(&self) -> Option<Self> {
        if self.r == 0 {
            return Some(*self);
        }
        // Euler criterion, then brute force for small moduli only
        if self.pow((self.p - 1) / 2).r != 1 {
            return None;
        }
        if self.p % 4 == 3 {
            return Some(self.pow((self.p + 1) / 4));
        }
        (1..self.p.min(1 << 22)).map(|k| PrimeScalar::new(k, self.p)).find(|c| c.mul(c) == *self)
    }
    fn rational_coords(&self) -> Option<Vec<Rational>> {
        None
    }
    fn to_rational(&self) -> Option<Rational> {
        None
    }
    fn reduce_mod(&self, p: u64) -> Option<Result<PrimeScalar, ArithError>> {
        (p == self.p).then_some(Ok(*self))
    }
    /// Exhaustive search, only for moduli below 2^16.
    fn roots(poly: &[Self]) -> Vec<Self> {
        let Some(first) = poly.first() else {
            return Vec::new();
        };
        let p = first.p;
        if p >= 1 << 16 {
            return Vec::new();
        }
        (0..p)
            .map(|k| PrimeScalar::new(k, p))
            .filter(|x| super::field::eval_poly(poly, x).is_zero())
            .collect()
    }
}

/// Deterministic primality test for 64-bit integers (trial division is
/// enough for the prime pool sizes used here).
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut k = 3u64;
    while k * k <= n {
        if n % k == 0 {
            return false;
        }
        k += 2;
    }
    true
}

/// The first `count` primes strictly above 2^20.
pub fn prime_pool(count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut n = (1u64 << 20) + 1;
    while out.len() < count {
        if is_prime(n) {
            out.push(n);
        }
        n += 2;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_mod_7() {
        let a = PrimeScalar::new(3, 7);
        assert_eq!(a.mul(&a.inv().unwrap()).residue(), 1);
    }

    #[test]
    fn pool_is_above_two_to_twenty() {
        let pool = prime_pool(8);
        assert_eq!(pool.len(), 8);
        assert_eq!(pool[0], 1048583);
        assert!(pool.iter().all(|&p| p > 1 << 20 && is_prime(p)));
        assert!(pool.windows(2).all(|w| w[0] < w[1]));
    }
}
