//! Basis words for tensor products of the algebraic Toeplitz algebra and the
//! Laurent circle algebra.
//!
//! A Toeplitz factor has basis `S^m (S*)^n` (already normal-ordered: the
//! relation `S*S = 1` leaves nothing to reduce), a circle factor has basis
//! `u^k`. A word is one entry per tensor factor.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;

/// Kind of one tensor factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    /// Algebraic Toeplitz algebra, generated by the isometry `S`.
    Toeplitz,
    /// Laurent circle algebra, generated by the unitary `u`.
    Circle,
}

/// Ordered list of factor kinds shared by all words of an element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Signature(pub Vec<Factor>);

impl Signature {
    pub fn toeplitz(n: usize) -> Self {
        Signature(vec![Factor::Toeplitz; n])
    }

    pub fn circle(n: usize) -> Self {
        Signature(vec![Factor::Circle; n])
    }

    /// Empty signature: the scalars ℂ.
    pub fn scalars() -> Self {
        Signature(Vec::new())
    }

    pub fn of(factors: &[Factor]) -> Self {
        Signature(factors.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Signature) -> Signature {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Signature(v)
    }

    pub fn append(&self, f: Factor) -> Signature {
        let mut v = self.0.clone();
        v.push(f);
        Signature(v)
    }

    pub fn insert(&self, pos: usize, f: Factor) -> Signature {
        let mut v = self.0.clone();
        v.insert(pos, f);
        Signature(v)
    }

    pub fn identity_word(&self) -> Word {
        Word(
            self.0
                .iter()
                .map(|f| match f {
                    Factor::Toeplitz => FactorWord::T(0, 0),
                    Factor::Circle => FactorWord::C(0),
                })
                .collect(),
        )
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "C");
        }
        let parts: Vec<&str> = self
            .0
            .iter()
            .map(|x| match x {
                Factor::Toeplitz => "T",
                Factor::Circle => "C(S1)",
            })
            .collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

impl Serialize for Signature {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        let v: Vec<&str> = self
            .0
            .iter()
            .map(|f| match f {
                Factor::Toeplitz => "T",
                Factor::Circle => "C",
            })
            .collect();
        v.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Signature {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(de)?;
        let mut out = Vec::with_capacity(v.len());
        for s in v {
            out.push(match s.as_str() {
                "T" => Factor::Toeplitz,
                "C" => Factor::Circle,
                other => return Err(D::Error::custom(format!("unknown factor kind {other}"))),
            });
        }
        Ok(Signature(out))
    }
}

/// One tensor-factor entry of a basis word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FactorWord {
    /// `S^m (S*)^n`.
    T(u32, u32),
    /// `u^k`.
    C(i64),
}

impl FactorWord {
    pub fn kind(&self) -> Factor {
        match self {
            FactorWord::T(..) => Factor::Toeplitz,
            FactorWord::C(_) => Factor::Circle,
        }
    }

    /// U(1)-weight: `m − n` for `S^m (S*)^n`, `k` for `u^k`.
    pub fn weight(&self) -> i64 {
        match self {
            FactorWord::T(m, n) => *m as i64 - *n as i64,
            FactorWord::C(k) => *k,
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, FactorWord::T(0, 0) | FactorWord::C(0))
    }

    /// Normal-ordered product within one factor. Toeplitz words contract via
    /// `S*S = 1`; circle exponents add. Always a single basis word.
    pub fn mul(&self, other: &FactorWord) -> FactorWord {
        match (self, other) {
            (FactorWord::T(m1, n1), FactorWord::T(m2, n2)) => {
                let r = (*n1).min(*m2);
                FactorWord::T(m1 + m2 - r, n2 + n1 - r)
            }
            (FactorWord::C(k1), FactorWord::C(k2)) => FactorWord::C(k1 + k2),
            _ => panic!("factor kind mismatch in word product"),
        }
    }

    pub fn adjoint(&self) -> FactorWord {
        match self {
            FactorWord::T(m, n) => FactorWord::T(*n, *m),
            FactorWord::C(k) => FactorWord::C(-k),
        }
    }
}

impl fmt::Display for FactorWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorWord::T(0, 0) => write!(f, "1"),
            FactorWord::T(m, 0) => write!(f, "S^{m}"),
            FactorWord::T(0, n) => write!(f, "S*^{n}"),
            FactorWord::T(m, n) => write!(f, "S^{m}S*^{n}"),
            FactorWord::C(0) => write!(f, "1"),
            FactorWord::C(k) => write!(f, "u^{k}"),
        }
    }
}

/// A basis word: one entry per tensor factor.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<FactorWord>);

impl Word {
    pub fn weight(&self) -> i64 {
        self.0.iter().map(FactorWord::weight).sum()
    }

    pub fn matches(&self, sig: &Signature) -> bool {
        self.0.len() == sig.len()
            && self.0.iter().zip(sig.0.iter()).all(|(w, f)| w.kind() == *f)
    }

    pub fn mul(&self, other: &Word) -> Word {
        Word(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a.mul(b))
                .collect(),
        )
    }

    pub fn adjoint(&self) -> Word {
        Word(self.0.iter().map(FactorWord::adjoint).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.0.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join("⊗"))
    }
}

impl Serialize for FactorWord {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = ser.serialize_map(Some(1))?;
        match self {
            FactorWord::T(m, n) => map.serialize_entry("T", &[*m, *n])?,
            FactorWord::C(k) => map.serialize_entry("C", k)?,
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for FactorWord {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(de)?;
        let obj = v.as_object().ok_or_else(|| D::Error::custom("expected object"))?;
        if let Some(t) = obj.get("T") {
            let arr = t.as_array().ok_or_else(|| D::Error::custom("expected [m,n]"))?;
            if arr.len() != 2 {
                return Err(D::Error::custom("expected [m,n]"));
            }
            let m = arr[0].as_u64().ok_or_else(|| D::Error::custom("bad m"))? as u32;
            let n = arr[1].as_u64().ok_or_else(|| D::Error::custom("bad n"))? as u32;
            Ok(FactorWord::T(m, n))
        } else if let Some(c) = obj.get("C") {
            Ok(FactorWord::C(c.as_i64().ok_or_else(|| D::Error::custom("bad k"))?))
        } else {
            Err(D::Error::custom("expected {\"T\":[m,n]} or {\"C\":k}"))
        }
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.0.serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        Ok(Word(Vec::deserialize(de)?))
    }
}
