use std::fmt;
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{CheckedSqrt, Reciprocal, Sign};
use malachite_base::num::basic::traits::{One, Zero};
use malachite_nz::integer::Integer;
use malachite_nz::natural::Natural;
use malachite_q::Rational as QInner;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{ArithError, Field, PrimeScalar};

/// Arbitrary-precision rational number in lowest terms.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(pub(crate) QInner);

impl Rational {
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(Rational(QInner::from_signeds(num, den)))
    }

    pub fn zero() -> Self {
        Rational(QInner::ZERO)
    }

    pub fn one() -> Self {
        Rational(QInner::ONE)
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == std::cmp::Ordering::Less
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    pub fn numerator(&self) -> Integer {
        let n = Integer::from(self.0.numerator_ref().clone());
        if self.is_negative() {
            -n
        } else {
            n
        }
    }

    pub fn denominator(&self) -> Natural {
        self.0.denominator_ref().clone()
    }

    /// The value as `i64` when it is an integer that fits.
    pub fn to_i64(&self) -> Option<i64> {
        if !self.is_integer() {
            return None;
        }
        i64::try_from(&self.numerator()).ok()
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            Rational(-self.0.clone())
        } else {
            self.clone()
        }
    }

    /// Canonical `num/den` form, always with an explicit denominator.
    pub fn to_canonical(&self) -> String {
        format!("{}/{}", self.numerator(), self.denominator())
    }

    /// Residue of the numerator and denominator modulo `p`.
    fn residue(&self, p: u64) -> Result<PrimeScalar, ArithError> {
        let pn = Natural::from(p);
        let den = u64::try_from(&(self.0.denominator_ref() % &pn)).expect("residue fits u64");
        if den == 0 {
            return Err(ArithError::BadPrime(p));
        }
        let num = u64::try_from(&(self.0.numerator_ref() % &pn)).expect("residue fits u64");
        let num = PrimeScalar::new(num, p);
        let num = if self.is_negative() { num.neg() } else { num };
        num.div(&PrimeScalar::new(den, p))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational(QInner::from(n))
    }
}

impl From<Integer> for Rational {
    fn from(n: Integer) -> Self {
        Rational(QInner::from(n))
    }
}

impl FromStr for Rational {
    type Err = ArithError;
    fn from_str(s: &str) -> Result<Self, ArithError> {
        let t = s.trim();
        if let Some((n, d)) = t.split_once('/') {
            let n = Integer::from_str(n.trim()).map_err(|_| ArithError::Parse(s.to_string()))?;
            let d = Integer::from_str(d.trim()).map_err(|_| ArithError::Parse(s.to_string()))?;
            if d == 0 {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rational(QInner::from_integers(n, d)))
        } else {
            let n = Integer::from_str(t).map_err(|_| ArithError::Parse(s.to_string()))?;
            Ok(Rational(QInner::from(n)))
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_canonical())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Rational::from_str(&s).map_err(serde::de::Error::custom)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl std::ops::$tr<&Rational> for &Rational {
            type Output = Rational;
            fn $m(self, o: &Rational) -> Rational {
                Rational(&self.0 $op &o.0)
            }
        }
        impl std::ops::$tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                Rational(self.0 $op o.0)
            }
        }
    };
}
rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

impl std::ops::Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl std::ops::Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Field for Rational {
    type Desc = ();

    fn zero(_: &()) -> Self {
        Rational::zero()
    }
    fn one(_: &()) -> Self {
        Rational::one()
    }
    fn desc(&self) {}
    fn is_zero(&self) -> bool {
        self.0 == 0u32
    }
    fn from_rational(q: &Rational, _: &()) -> Result<Self, ArithError> {
        Ok(q.clone())
    }
    fn add(&self, o: &Self) -> Self {
        Rational(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Rational(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Rational(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn inv(&self) -> Result<Self, ArithError> {
        if Field::is_zero(self) {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(Rational((&self.0).reciprocal()))
        }
    }
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        self.0 += &a.0 * &b.0;
    }
    fn sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        (&self.0).checked_sqrt().map(Rational)
    }
    fn rational_coords(&self) -> Option<Vec<Rational>> {
        Some(vec![self.clone()])
    }
    fn to_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
    fn reduce_mod(&self, p: u64) -> Option<Result<PrimeScalar, ArithError>> {
        Some(self.residue(p))
    }
    fn roots(poly: &[Self]) -> Vec<Self> {
        rational_roots(poly)
    }
}

/// Rational roots of a polynomial with rational coefficients (low degree
/// first), without multiplicity, in increasing order.
pub fn rational_roots(poly: &[Rational]) -> Vec<Rational> {
    let mut coeffs: Vec<Rational> = poly.to_vec();
    while coeffs.last().map_or(false, |c| Field::is_zero(c)) {
        coeffs.pop();
    }
    if coeffs.len() <= 1 {
        return Vec::new();
    }
    let mut roots = Vec::new();
    // strip the factor x^k
    let lead_zero = coeffs.iter().take_while(|c| Field::is_zero(*c)).count();
    if lead_zero > 0 {
        roots.push(Rational::zero());
        coeffs.drain(..lead_zero);
    }
    if coeffs.len() > 1 {
        // scale to integer coefficients
        let mut lcm = Natural::ONE;
        for c in &coeffs {
            let d = c.denominator();
            lcm = lcm_nat(&lcm, &d);
        }
        let scale = Rational(QInner::from(lcm));
        let ints: Vec<Integer> = coeffs.iter().map(|c| (c * &scale).numerator()).collect();
        let a0 = ints[0].clone();
        let an = ints[ints.len() - 1].clone();
        let ps = divisors(&abs_nat(&a0));
        let qs = divisors(&abs_nat(&an));
        let mut cands: Vec<Rational> = Vec::new();
        for p in &ps {
            for q in &qs {
                let r = Rational(QInner::from_naturals_ref(p, q));
                cands.push(r.clone());
                cands.push(-r);
            }
        }
        cands.sort();
        cands.dedup();
        for c in cands {
            if Field::is_zero(&super::field::eval_poly(&coeffs, &c)) {
                roots.push(c);
            }
        }
    }
    roots.sort();
    roots.dedup();
    roots
}

fn abs_nat(n: &Integer) -> Natural {
    use malachite_base::num::arithmetic::traits::UnsignedAbs;
    n.unsigned_abs()
}

fn lcm_nat(a: &Natural, b: &Natural) -> Natural {
    use malachite_base::num::arithmetic::traits::Lcm;
    a.clone().lcm(b.clone())
}

/// Positive divisors by trial division; only meant for the small integers
/// that appear as characteristic-polynomial coefficients here.
fn divisors(n: &Natural) -> Vec<Natural> {
    let Ok(n) = u64::try_from(n) else {
        return vec![Natural::ONE];
    };
    if n == 0 {
        return vec![Natural::ONE];
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(Natural::from(d));
            if d != n / d {
                out.push(Natural::from(n / d));
            }
        }
        d += 1;
    }
    out
}
