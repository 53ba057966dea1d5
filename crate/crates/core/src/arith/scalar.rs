use std::fmt;

use super::{ArithError, Field, PrimeScalar, QuadExt, Rational};

/// A scalar from any of the supported exact fields, with the field
/// descriptor checked at run time.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Quad(QuadExt),
    Prime(PrimeScalar),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpResult {
    Scalar(Scalar),
    Bool(bool),
}

impl Scalar {
    fn kind(&self) -> String {
        match self {
            Scalar::Rational(_) => "Q".to_string(),
            Scalar::Quad(q) => format!("Q(sqrt({}))", q.d),
            Scalar::Prime(p) => format!("GF({})", p.modulus()),
        }
    }

    /// Canonical report form: `num/den`, `x+y*sqrt(d)` or `r mod p`.
    pub fn to_canonical(&self) -> String {
        match self {
            Scalar::Rational(q) => q.to_canonical(),
            Scalar::Quad(q) => q.to_canonical(),
            Scalar::Prime(p) => p.to_string(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical())
    }
}

fn binary<F: Field>(a: &F, b: &F, op: FieldOp) -> Result<OpResult, ArithError>
where
    Scalar: From<F>,
{
    let r = match op {
        FieldOp::Add => a.checked_add(b)?,
        FieldOp::Sub => a.checked_sub(b)?,
        FieldOp::Mul => a.checked_mul(b)?,
        FieldOp::Div => a.checked_div(b)?,
        FieldOp::Eq => {
            if a.desc() != b.desc() {
                return Err(ArithError::FieldMismatch(format!("{:?} vs {:?}", a.desc(), b.desc())));
            }
            return Ok(OpResult::Bool(a == b));
        }
        FieldOp::Neg => a.neg(),
        FieldOp::Inv => a.inv()?,
    };
    Ok(OpResult::Scalar(r.into()))
}

/// Run one field operation on dynamically typed scalars. Unary operations
/// (`Neg`, `Inv`) ignore `b`.
pub fn field_op(a: &Scalar, b: &Scalar, op: FieldOp) -> Result<OpResult, ArithError> {
    let unary = matches!(op, FieldOp::Neg | FieldOp::Inv);
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => binary(x, y, op),
        (Scalar::Quad(x), Scalar::Quad(y)) => binary(x, y, op),
        (Scalar::Prime(x), Scalar::Prime(y)) => binary(x, y, op),
        (Scalar::Rational(x), _) if unary => binary(x, x, op),
        (Scalar::Quad(x), _) if unary => binary(x, x, op),
        (Scalar::Prime(x), _) if unary => binary(x, x, op),
        _ => Err(ArithError::FieldMismatch(format!("{} vs {}", a.kind(), b.kind()))),
    }
}

impl From<Rational> for Scalar {
    fn from(q: Rational) -> Self {
        Scalar::Rational(q)
    }
}

impl From<QuadExt> for Scalar {
    fn from(q: QuadExt) -> Self {
        Scalar::Quad(q)
    }
}

impl From<PrimeScalar> for Scalar {
    fn from(q: PrimeScalar) -> Self {
        Scalar::Prime(q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(Rational::new(n, d).unwrap())
    }

    #[test]
    fn rational_sum() {
        assert_eq!(field_op(&q(1, 2), &q(1, 3), FieldOp::Add).unwrap(), OpResult::Scalar(q(5, 6)));
    }

    #[test]
    fn gaussian_product() {
        let a = Scalar::Quad(QuadExt::new(Rational::one(), Rational::one(), -1));
        let b = Scalar::Quad(QuadExt::new(Rational::one(), Rational::from(-1), -1));
        let two = Scalar::Quad(QuadExt::rational(Rational::from(2), -1));
        assert_eq!(field_op(&a, &b, FieldOp::Mul).unwrap(), OpResult::Scalar(two));
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(field_op(&q(0, 1), &q(0, 1), FieldOp::Inv), Err(ArithError::DivisionByZero));
        assert_eq!(field_op(&q(1, 1), &q(0, 1), FieldOp::Div), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = Scalar::Quad(QuadExt::root(-1));
        let b = Scalar::Quad(QuadExt::root(2));
        assert!(matches!(field_op(&q(1, 1), &a, FieldOp::Add), Err(ArithError::FieldMismatch(_))));
        assert!(matches!(field_op(&a, &b, FieldOp::Mul), Err(ArithError::FieldMismatch(_))));
        let p = Scalar::Prime(PrimeScalar::new(1, 7));
        let p2 = Scalar::Prime(PrimeScalar::new(1, 11));
        assert!(matches!(field_op(&p, &p2, FieldOp::Eq), Err(ArithError::FieldMismatch(_))));
    }

    #[test]
    fn canonical_forms() {
        let a = Scalar::Quad(QuadExt::new(Rational::from(1), Rational::new(-1, 2).unwrap(), -1));
        assert_eq!(a.to_canonical(), "1/1+-1/2*sqrt(-1)");
        assert_eq!(q(4, 6).to_canonical(), "2/3");
    }
}
