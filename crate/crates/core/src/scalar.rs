//! Exact scalars over the rationals or a prime field GF(p).
//!
//! Every [`Scalar`] carries its field, so vectors and matrices can verify
//! that they never mix characteristics. Values are kept canonical (lowest
//! terms with positive denominator, or a residue in `[0, p)`), which makes
//! derived `PartialEq` an exact field equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest accepted prime modulus.
pub const MAX_MODULUS: u64 = 1 << 31;

/// A prime modulus, validated on construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(p: u64) -> Result<Self> {
        if (2..=MAX_MODULUS).contains(&p) && is_prime(p) {
            Ok(Modulus(p))
        } else {
            Err(Error::InvalidModulus(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(Modulus),
}

impl Field {
    /// GF(p); fails unless `p` is a prime no larger than 2^31.
    pub fn prime(p: u64) -> Result<Self> {
        Modulus::new(p).map(Field::Prime)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(m) => Some(m.get()),
        }
    }

    pub fn zero(self) -> Scalar {
        self.integer(0)
    }

    pub fn one(self) -> Scalar {
        self.integer(1)
    }

    pub fn integer(self, n: i64) -> Scalar {
        self.bigint(&BigInt::from(n))
    }

    fn bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar(Repr::Rational(BigRational::from_integer(n.clone()))),
            Field::Prime(m) => {
                let r = n.mod_floor(&BigInt::from(m.get()));
                Scalar(Repr::Residue(r.to_u64().expect("residue below modulus"), m))
            }
        }
    }

    /// `numerator / denominator` interpreted in this field.
    pub fn ratio(self, numerator: i64, denominator: i64) -> Result<Scalar> {
        self.integer(numerator).checked_div(&self.integer(denominator))
    }

    /// Parses the scalar grammar `[-]?[0-9]+(/[1-9][0-9]*)?`.
    ///
    /// In GF(p) the integer parts are reduced mod p and `/` is field
    /// division, so `"1/3"` over GF(5) is 2.
    pub fn parse(self, text: &str) -> Result<Scalar> {
        let malformed = || Error::Parse(format!("malformed scalar {text:?}"));
        let (num_text, den_text) = match text.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (text, None),
        };
        let digits = num_text.strip_prefix('-').unwrap_or(num_text);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(malformed());
        }
        let numerator = BigInt::from_str(num_text).map_err(|_| malformed())?;
        let numerator = self.bigint(&numerator);
        match den_text {
            None => Ok(numerator),
            Some(d) => {
                if d.is_empty() || !d.bytes().all(|b| b.is_ascii_digit()) {
                    return Err(malformed());
                }
                if d.bytes().all(|b| b == b'0') {
                    return Err(Error::DivisionByZero);
                }
                if d.starts_with('0') {
                    return Err(malformed());
                }
                let denominator = BigInt::from_str(d).map_err(|_| malformed())?;
                numerator.checked_div(&self.bigint(&denominator))
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Prime(m) => write!(f, "gf:{}", m.get()),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `rational` or `gf:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(Field::Rational);
        }
        let p = s
            .strip_prefix("gf:")
            .and_then(|p| p.parse::<u64>().ok())
            .ok_or_else(|| Error::Parse(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue(u64, Modulus),
}

/// An element of a [`Field`] in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn field(&self) -> Field {
        match &self.0 {
            Repr::Rational(_) => Field::Rational,
            Repr::Residue(_, m) => Field::Prime(*m),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Residue(v, _) => *v == 0,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            Repr::Residue(..) => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Residue(v, _) => Some(*v),
            Repr::Rational(_) => None,
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<()> {
        let (left, right) = (self.field(), other.field());
        if left == right {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left, right })
        }
    }

    pub fn checked_add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Residue(a, m), Repr::Residue(b, _)) => Scalar(Repr::Residue((a + b) % m.get(), *m)),
            _ => unreachable!("fields checked"),
        })
    }

    pub fn checked_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a - b)),
            (Repr::Residue(a, m), Repr::Residue(b, _)) => Scalar(Repr::Residue((a + m.get() - b) % m.get(), *m)),
            _ => unreachable!("fields checked"),
        })
    }

    pub fn checked_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        Ok(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Residue(a, m), Repr::Residue(b, _)) => Scalar(Repr::Residue(a * b % m.get(), *m)),
            _ => unreachable!("fields checked"),
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        self.check_field(other)?;
        self.checked_mul(&other.inverse()?)
    }

    /// Multiplicative inverse; GF(p) uses the extended Euclidean algorithm.
    pub fn inverse(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(q.recip())),
            Repr::Residue(v, m) => {
                let p = m.get() as i64;
                let ext = (*v as i64).extended_gcd(&p);
                debug_assert_eq!(ext.gcd, 1);
                Scalar(Repr::Residue(ext.x.rem_euclid(p) as u64, *m))
            }
        })
    }

    pub fn pow(&self, mut exp: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Repr::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Repr::Residue(v, _) => write!(f, "{v}"),
        }
    }
}

// Operator impls panic on mixed fields. Callers that cannot guarantee a
// shared field use the `checked_*` methods instead.
macro_rules! impl_binop {
    ($Op:ident, $op:ident, $checked:ident) => {
        impl $Op<&Scalar> for &Scalar {
            type Output = Scalar;

            #[track_caller]
            fn $op(self, rhs: &Scalar) -> Scalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }

        impl $Op<Scalar> for Scalar {
            type Output = Scalar;

            #[track_caller]
            fn $op(self, rhs: Scalar) -> Scalar {
                (&self).$op(&rhs)
            }
        }

        impl $Op<&Scalar> for Scalar {
            type Output = Scalar;

            #[track_caller]
            fn $op(self, rhs: &Scalar) -> Scalar {
                (&self).$op(rhs)
            }
        }
    };
}

impl_binop!(Add, add, checked_add);
impl_binop!(Sub, sub, checked_sub);
impl_binop!(Mul, mul, checked_mul);
impl_binop!(Div, div, checked_div);

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(q) => Scalar(Repr::Rational(-q)),
            Repr::Residue(v, m) => Scalar(Repr::Residue((m.get() - v) % m.get(), *m)),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}
