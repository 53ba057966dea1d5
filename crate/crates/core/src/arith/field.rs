use std::fmt::{Debug, Display};
use std::hash::Hash;

use super::{ArithError, PrimeScalar, Rational};

/// An exact field whose elements carry their own field descriptor.
///
/// Arithmetic methods panic when the two operands come from different
/// descriptors; the `checked_*` variants report [`ArithError::FieldMismatch`]
/// instead. Inside one algebra every scalar shares a descriptor, so the
/// panicking path is an internal invariant violation.
pub trait Field: Clone + PartialEq + Eq + Hash + Debug + Display + Send + Sync + 'static {
    /// Runtime parameters that pin down the field (`()` for the rationals).
    type Desc: Clone + PartialEq + Eq + Debug + Send + Sync + 'static;

    fn zero(desc: &Self::Desc) -> Self;
    fn one(desc: &Self::Desc) -> Self;
    fn desc(&self) -> Self::Desc;
    fn is_zero(&self) -> bool;
    fn from_rational(q: &Rational, desc: &Self::Desc) -> Result<Self, ArithError>;

    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self, ArithError>;

    /// `self += a * b`.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn div(&self, other: &Self) -> Result<Self, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    fn is_one(&self) -> bool {
        *self == Self::one(&self.desc())
    }

    fn from_i64(n: i64, desc: &Self::Desc) -> Self {
        Self::from_rational(&Rational::from(n), desc).expect("integers embed in every supported field")
    }

    /// A square root inside the field, if one exists.
    fn sqrt(&self) -> Option<Self>;

    /// Coordinates over the rationals, used to build generic linear functionals.
    /// `None` for fields without a rational structure (prime fields).
    fn rational_coords(&self) -> Option<Vec<Rational>>;

    /// The element as a rational number, if it lies in the prime subfield.
    fn to_rational(&self) -> Option<Rational>;

    /// Reduction modulo `p`; `None` when the element has no image there
    /// (irrational part), `Err(BadPrime)` when `p` divides a denominator.
    fn reduce_mod(&self, p: u64) -> Option<Result<PrimeScalar, ArithError>>;

    /// All roots in the field of a polynomial (coefficients low degree first),
    /// as far as this field knows how to find them.
    fn roots(poly: &[Self]) -> Vec<Self>;

    fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        same_field(self, other)?;
        Ok(self.add(other))
    }
    fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        same_field(self, other)?;
        Ok(self.sub(other))
    }
    fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        same_field(self, other)?;
        Ok(self.mul(other))
    }
    fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        same_field(self, other)?;
        self.div(other)
    }
}

fn same_field<F: Field>(a: &F, b: &F) -> Result<(), ArithError> {
    if a.desc() == b.desc() {
        Ok(())
    } else {
        Err(ArithError::FieldMismatch(format!("{:?} vs {:?}", a.desc(), b.desc())))
    }
}

/// Evaluate a polynomial (low degree first) by Horner's rule.
pub fn eval_poly<F: Field>(poly: &[F], x: &F) -> F {
    let mut acc = F::zero(&x.desc());
    for c in poly.iter().rev() {
        acc = acc.mul(x).add(c);
    }
    acc
}
