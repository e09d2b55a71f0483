use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{factor_degrees, FpPoly, PrimeField};
use crate::exact::Poly;
use crate::{Error, Result};

/// A partition, e.g. the cycle type of a permutation or the factor-degree
/// multiset of a polynomial. Parts are kept in decreasing order.
///
/// Text form groups equal parts: `"2^4.1"`, `"7.1^2"`, `"9"`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    parts: Vec<u32>,
}

impl CycleType {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType { parts }
    }

    pub fn identity(n: u32) -> Self {
        CycleType { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn degree(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn is_identity(&self) -> bool {
        self.parts.iter().all(|&p| p == 1)
    }

    /// Order of a permutation with this cycle type.
    pub fn order(&self) -> u64 {
        self.parts.iter().fold(1u64, |l, &p| num_integer::lcm(l, p as u64))
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.parts.len() {
            let k = self.parts[i];
            let mut j = i;
            while j < self.parts.len() && self.parts[j] == k {
                j += 1;
            }
            let c = j - i;
            out.push(if c == 1 { k.to_string() } else { format!("{k}^{c}") });
            i = j;
        }
        write!(f, "{}", out.join("."))
    }
}

impl FromStr for CycleType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidProfile(format!("cannot parse cycle type `{s}`"));
        let mut parts = Vec::new();
        for piece in s.trim().split('.') {
            let (k, c) = match piece.split_once('^') {
                Some((k, c)) => (k, c.parse::<usize>().map_err(|_| bad())?),
                None => (piece, 1),
            };
            let k: u32 = k.parse().map_err(|_| bad())?;
            if k == 0 || c == 0 {
                return Err(bad());
            }
            parts.extend(std::iter::repeat_n(k, c));
        }
        Ok(CycleType::new(parts))
    }
}

impl Serialize for CycleType {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CycleType {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A polynomial family `F(t, x)` reduced modulo `p`, ready for repeated
/// specialization at `t0 in F_p`.
#[derive(Clone, Debug)]
pub struct ReducedFamily {
    field: PrimeField,
    coeffs: Vec<FpPoly>,
}

impl ReducedFamily {
    pub fn new(family: &Poly, t: &str, x: &str, field: PrimeField) -> Result<Self> {
        let mut coeffs = Vec::new();
        for c in family.coefficients_in(x) {
            let u = c.to_upoly(t)?;
            let r = field.reduce(&u).ok_or_else(|| Error::BadPrime {
                prime: field.p(),
                reason: "divides a coefficient denominator".into(),
            })?;
            coeffs.push(r);
        }
        match coeffs.last() {
            Some(lc) if !lc.is_zero() => {}
            _ => {
                return Err(Error::BadPrime { prime: field.p(), reason: "kills the leading coefficient".into() });
            }
        }
        Ok(ReducedFamily { field, coeffs })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn specialize(&self, t0: u64) -> FpPoly {
        let r = self.field.ring();
        let ev = self.field.ring();
        r.from_coeffs(self.coeffs.iter().map(|c| ev.eval(c, &t0)).collect())
    }

    /// Factor-degree pattern of `F(t0, x)`; ramified or degree-dropping
    /// specializations are reported as errors so the caller can resample.
    pub fn pattern_at(&self, t0: u64) -> Result<CycleType> {
        let r = self.field.ring();
        let f = self.specialize(t0);
        if f.deg() != self.degree() || f.is_zero() {
            return Err(Error::RamifiedSpecialization);
        }
        if r.gcd(&f, &r.derivative(&f)).deg() > 0 {
            return Err(Error::RamifiedSpecialization);
        }
        Ok(CycleType::new(factor_degrees(&self.field, &f).into_iter().map(|d| d as u32).collect()))
    }
}

/// Multiset of irreducible-factor degrees of `F(t0, x)` over `F_p`.
pub fn degree_pattern(family: &Poly, t: &str, x: &str, field: PrimeField, t0: u64) -> Result<CycleType> {
    let t0 = t0 % field.p();
    ReducedFamily::new(family, t, x, field)?.pattern_at(t0)
}
