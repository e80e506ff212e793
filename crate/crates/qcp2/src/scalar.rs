//! Coefficient scalars: exact Gaussian rationals and complex doubles.
//!
//! Every identity that the paper states algebraically runs in `Exact` mode;
//! Fourier-series data runs in `Float` mode. Mixing the two promotes to
//! `Float` (lossy, and deliberately explicit in the type).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Gaussian rational `re + i·im` with exact rational parts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn zero() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRational::new(BigRational::one(), BigRational::zero())
    }

    pub fn i() -> Self {
        GaussRational::new(BigRational::zero(), BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        GaussRational::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRational::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRational::new(self.re.clone(), -self.im.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        GaussRational::new(
            &self.re * &other.re - &self.im * &other.im,
            &self.re * &other.im + &self.im * &other.re,
        )
    }

    pub fn add(&self, other: &Self) -> Self {
        GaussRational::new(&self.re + &other.re, &self.im + &other.im)
    }

    pub fn sub(&self, other: &Self) -> Self {
        GaussRational::new(&self.re - &other.re, &self.im - &other.im)
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "inverse of zero Gaussian rational");
        GaussRational::new(&self.re / &norm, -&self.im / &norm)
    }

    pub fn to_complex(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }
}

/// Integer power of an exact rational, negative exponents allowed.
pub fn rational_pow(q: &BigRational, e: i64) -> BigRational {
    if e == 0 {
        return BigRational::one();
    }
    let base = if e > 0 { q.clone() } else { q.recip() };
    let mut acc = BigRational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        Some(BigRational::new(p, q))
    } else {
        let p: BigInt = s.parse().ok()?;
        Some(BigRational::from_integer(p))
    }
}

/// A coefficient: exact Gaussian rational or complex double.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(GaussRational),
    Float(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(GaussRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Exact(GaussRational::one())
    }

    pub fn i() -> Self {
        Scalar::Exact(GaussRational::i())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Exact(GaussRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar::Exact(GaussRational::from_ratio(num, den))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Exact(GaussRational::new(q, BigRational::zero()))
    }

    pub fn from_f64(x: f64) -> Self {
        Scalar::Float(Complex64::new(x, 0.0))
    }

    pub fn from_complex(z: Complex64) -> Self {
        Scalar::Float(z)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(g) => g.is_zero(),
            Scalar::Float(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    pub fn to_complex(&self) -> Complex64 {
        match self {
            Scalar::Exact(g) => g.to_complex(),
            Scalar::Float(z) => *z,
        }
    }

    pub fn abs(&self) -> f64 {
        self.to_complex().norm()
    }

    pub fn conj(&self) -> Self {
        match self {
            Scalar::Exact(g) => Scalar::Exact(g.conj()),
            Scalar::Float(z) => Scalar::Float(z.conj()),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.add(&b)),
            (a, b) => Scalar::Float(a.to_complex() + b.to_complex()),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.sub(&b)),
            (a, b) => Scalar::Float(a.to_complex() - b.to_complex()),
        }
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a.mul(&b)),
            (a, b) => Scalar::Float(a.to_complex() * b.to_complex()),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Exact(g) => Scalar::Exact(GaussRational::new(-g.re, -g.im)),
            Scalar::Float(z) => Scalar::Float(-z),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Exact(g) => {
                if g.im.is_zero() {
                    write!(f, "{}", g.re)
                } else if g.re.is_zero() {
                    write!(f, "{}i", g.im)
                } else if g.im.is_negative() {
                    write!(f, "{}{}i", g.re, g.im)
                } else {
                    write!(f, "{}+{}i", g.re, g.im)
                }
            }
            Scalar::Float(z) => write!(f, "{}", z),
        }
    }
}

// Exact scalars serialize their parts as "p/q" strings, floats as numbers.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ScalarPartRepr {
    Exact(String),
    Float(f64),
}

#[derive(Serialize, Deserialize)]
struct ScalarRepr {
    re: ScalarPartRepr,
    im: ScalarPartRepr,
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            Scalar::Exact(g) => ScalarRepr {
                re: ScalarPartRepr::Exact(g.re.to_string()),
                im: ScalarPartRepr::Exact(g.im.to_string()),
            },
            Scalar::Float(z) => ScalarRepr {
                re: ScalarPartRepr::Float(z.re),
                im: ScalarPartRepr::Float(z.im),
            },
        };
        repr.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let repr = ScalarRepr::deserialize(de)?;
        match (repr.re, repr.im) {
            (ScalarPartRepr::Exact(re), ScalarPartRepr::Exact(im)) => {
                let re = parse_rational(&re).ok_or_else(|| D::Error::custom("bad rational"))?;
                let im = parse_rational(&im).ok_or_else(|| D::Error::custom("bad rational"))?;
                Ok(Scalar::Exact(GaussRational::new(re, im)))
            }
            (re, im) => {
                let as_f64 = |p: ScalarPartRepr| -> Result<f64, D::Error> {
                    match p {
                        ScalarPartRepr::Float(x) => Ok(x),
                        ScalarPartRepr::Exact(s) => parse_rational(&s)
                            .and_then(|r| r.to_f64())
                            .ok_or_else(|| D::Error::custom("bad rational")),
                    }
                };
                Ok(Scalar::Float(Complex64::new(as_f64(re)?, as_f64(im)?)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_field_ops() {
        let a = GaussRational::new(
            BigRational::new(BigInt::from(1), BigInt::from(2)),
            BigRational::new(BigInt::from(-3), BigInt::from(4)),
        );
        let inv = a.inv();
        assert_eq!(a.mul(&inv), GaussRational::one());
        assert_eq!(a.conj().conj(), a);
    }

    #[test]
    fn promote_to_float() {
        let a = Scalar::from_ratio(1, 2);
        let b = Scalar::from_f64(0.25);
        match a * b {
            Scalar::Float(z) => assert_eq!(z, Complex64::new(0.125, 0.0)),
            _ => panic!("expected float"),
        }
    }

    #[test]
    fn rational_pow_negative() {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(rational_pow(&half, -2), BigRational::from_integer(BigInt::from(4)));
    }

    #[test]
    fn serde_exact_roundtrip() {
        let s = Scalar::from_ratio(-7, 3);
        let json = serde_json::to_string(&s).unwrap();
        assert!(json.contains("-7/3"));
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }

    #[test]
    fn serde_float_roundtrip() {
        let s = Scalar::from_complex(Complex64::new(0.5, -1.5));
        let json = serde_json::to_string(&s).unwrap();
        let back: Scalar = serde_json::from_str(&json).unwrap();
        assert_eq!(s, back);
    }
}
