use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{domain, Error, Result};

/// The commutative semiring a matrix lives over.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum ScalarDomain {
    Boolean,
    Rational,
    PrimeField(u64),
}

/// A scalar tagged with its representation; the owning [`ScalarDomain`]
/// supplies the arithmetic.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Scalar {
    Bool(bool),
    Rat(BigRational),
    Fp(u64),
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Bool(b) => write!(f, "{}", u8::from(*b)),
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Fp(v) => write!(f, "{v}"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl ScalarDomain {
    /// 𝔽_p, rejecting composite or tiny moduli. The modulus is capped so that
    /// products fit in `u128` arithmetic comfortably.
    pub fn prime_field(p: u64) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return domain(format!("{p} is not a supported prime modulus"));
        }
        Ok(ScalarDomain::PrimeField(p))
    }

    /// ℚ for characteristic 0, 𝔽_p otherwise.
    pub fn field_of_characteristic(c: u64) -> Result<Self> {
        if c == 0 {
            Ok(ScalarDomain::Rational)
        } else {
            Self::prime_field(c)
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, ScalarDomain::Boolean)
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            ScalarDomain::PrimeField(p) => *p,
            _ => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            ScalarDomain::Boolean => Scalar::Bool(false),
            ScalarDomain::Rational => Scalar::Rat(BigRational::zero()),
            ScalarDomain::PrimeField(_) => Scalar::Fp(0),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            ScalarDomain::Boolean => Scalar::Bool(true),
            ScalarDomain::Rational => Scalar::Rat(BigRational::one()),
            ScalarDomain::PrimeField(_) => Scalar::Fp(1),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Bool(b) => !b,
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp(v) => *v == 0,
        }
    }

    /// True if `a` is a valid element of this domain.
    pub fn contains(&self, a: &Scalar) -> bool {
        match (self, a) {
            (ScalarDomain::Boolean, Scalar::Bool(_)) => true,
            (ScalarDomain::Rational, Scalar::Rat(_)) => true,
            (ScalarDomain::PrimeField(p), Scalar::Fp(v)) => v < p,
            _ => false,
        }
    }

    /// Image of a natural number under the unique rig map ℕ → domain.
    pub fn from_u64(&self, n: u64) -> Scalar {
        match self {
            ScalarDomain::Boolean => Scalar::Bool(n != 0),
            ScalarDomain::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            ScalarDomain::PrimeField(p) => Scalar::Fp(n % p),
        }
    }

    pub fn from_biguint(&self, n: &BigUint) -> Scalar {
        match self {
            ScalarDomain::Boolean => Scalar::Bool(!n.is_zero()),
            ScalarDomain::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n.clone()))),
            ScalarDomain::PrimeField(p) => Scalar::Fp((n % BigUint::from(*p)).to_u64().expect("reduced below p")),
        }
    }

    /// Integers map through ℤ; negative values are rejected over the Booleans.
    pub fn from_i64(&self, n: i64) -> Result<Scalar> {
        match self {
            ScalarDomain::Boolean if n < 0 => domain("negative scalar in the Boolean semiring"),
            ScalarDomain::Boolean => Ok(Scalar::Bool(n != 0)),
            ScalarDomain::Rational => Ok(Scalar::Rat(BigRational::from_integer(BigInt::from(n)))),
            ScalarDomain::PrimeField(p) => {
                let p = *p as i64;
                Ok(Scalar::Fp(n.rem_euclid(p) as u64))
            }
        }
    }

    pub fn from_rational(&self, r: &BigRational) -> Result<Scalar> {
        match self {
            ScalarDomain::Rational => Ok(Scalar::Rat(r.clone())),
            ScalarDomain::PrimeField(p) => {
                let pb = BigInt::from(*p);
                let num = r.numer().mod_floor_big(&pb);
                let den = r.denom().mod_floor_big(&pb);
                if den == 0 {
                    return domain(format!("denominator vanishes mod {p}"));
                }
                Ok(self.mul(&Scalar::Fp(num), &self.inv(&Scalar::Fp(den))?))
            }
            ScalarDomain::Boolean => domain("rationals do not embed in the Boolean semiring"),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarDomain::Boolean, Scalar::Bool(x), Scalar::Bool(y)) => Scalar::Bool(*x || *y),
            (ScalarDomain::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (ScalarDomain::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => Scalar::Fp((x + y) % p),
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self:?}"),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (ScalarDomain::Boolean, Scalar::Bool(x), Scalar::Bool(y)) => Scalar::Bool(*x && *y),
            (ScalarDomain::Rational, Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (ScalarDomain::PrimeField(p), Scalar::Fp(x), Scalar::Fp(y)) => {
                Scalar::Fp(((*x as u128 * *y as u128) % *p as u128) as u64)
            }
            _ => panic!("scalar {a:?} or {b:?} does not belong to {self:?}"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Result<Scalar> {
        match (self, a) {
            (ScalarDomain::Rational, Scalar::Rat(x)) => Ok(Scalar::Rat(-x)),
            (ScalarDomain::PrimeField(p), Scalar::Fp(x)) => Ok(Scalar::Fp((p - x) % p)),
            _ => Err(Error::UnsupportedDomain(format!("no negation in {self:?}"))),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Result<Scalar> {
        Ok(self.add(a, &self.neg(b)?))
    }

    pub fn inv(&self, a: &Scalar) -> Result<Scalar> {
        if self.is_zero(a) {
            return domain("division by zero");
        }
        match (self, a) {
            (ScalarDomain::Rational, Scalar::Rat(x)) => Ok(Scalar::Rat(x.recip())),
            (ScalarDomain::PrimeField(p), Scalar::Fp(x)) => Ok(Scalar::Fp(pow_mod(*x, p - 2, *p))),
            _ => Err(Error::UnsupportedDomain(format!("no division in {self:?}"))),
        }
    }

    /// Sign-aware rendering used in reports (e.g. `-1/2`).
    pub fn render(&self, a: &Scalar) -> String {
        match a {
            Scalar::Rat(r) if r.is_negative() => format!("-{}", -r),
            other => other.to_string(),
        }
    }
}

fn pow_mod(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let m128 = m as u128;
    let mut base = (b % m) as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m128;
        }
        base = base * base % m128;
        e >>= 1;
    }
    acc as u64
}

trait ModFloorBig {
    fn mod_floor_big(&self, m: &BigInt) -> u64;
}

impl ModFloorBig for BigInt {
    fn mod_floor_big(&self, m: &BigInt) -> u64 {
        let r = ((self % m) + m) % m;
        r.to_u64().expect("reduced below modulus")
    }
}
