//! Prime fields `F_p` (word-sized `p`), polynomial factorization over them,
//! Frobenius cycle types, and the field with eight elements.

mod cycle;
mod f8;
mod factor;

pub use cycle::{degree_pattern, CycleType, ReducedFamily};
pub use f8::F8;
pub use factor::{
    distinct_degree, equal_degree, factor_mod_p, factor_degrees, is_irreducible_mod_p, roots_mod_p,
    squarefree_mod_p,
};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::exact::{Field, Ring};
use crate::exact::{PolyRing, Rational, UPoly};
use crate::{Error, Result};

pub type FpPoly = UPoly<u64>;

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, m);
        }
        a = mulmod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Smallest prime `>= n`.
pub fn next_prime(n: u64) -> u64 {
    let mut k = n.max(2);
    while !is_prime(k) {
        k += 1;
    }
    k
}

/// The prime field `Z/pZ`, elements stored as `u64` in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }

    pub fn from_bigint(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }

    /// `None` when `p` divides the denominator.
    pub fn from_rational(&self, r: &Rational) -> Option<u64> {
        let d = self.from_bigint(r.denom());
        if d == 0 {
            return None;
        }
        Some(mulmod(self.from_bigint(r.numer()), self.inv(&d)?, self.p))
    }

    pub fn ring(&self) -> PolyRing<PrimeField> {
        PolyRing::new(*self)
    }

    /// Reduces a rational polynomial; `None` if a denominator vanishes.
    pub fn reduce(&self, p: &UPoly<Rational>) -> Option<FpPoly> {
        let c: Option<Vec<u64>> = p.coeffs().iter().map(|c| self.from_rational(c)).collect();
        Some(self.ring().from_coeffs(c?))
    }

    pub fn reduce_int(&self, p: &UPoly<BigInt>) -> FpPoly {
        self.ring().from_coeffs(p.coeffs().iter().map(|c| self.from_bigint(c)).collect())
    }

    /// Symmetric lift to `(-p/2, p/2]`.
    pub fn lift(&self, a: u64) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Ring for PrimeField {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        let s = *a as u128 + *b as u128;
        (s % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mulmod(*a, *b, self.p)
    }
    fn from_i64(&self, n: i64) -> u64 {
        self.elem(n)
    }
    fn pow(&self, a: &u64, e: u64) -> u64 {
        powmod(*a, e, self.p)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i128, *a as i128);
        let (mut t0, mut t1) = (0i128, 1i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        (r0 == 1).then(|| t0.rem_euclid(self.p as i128) as u64)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "{n}");
        }
        assert!(is_prime(2305843009213693951));
        assert!(!is_prime(3215031751));
        assert_eq!(next_prime(101), 101);
        assert_eq!(next_prime(102), 103);
    }

    #[test]
    fn field_ops() {
        let f = PrimeField::new(101).unwrap();
        assert!(PrimeField::new(100).is_err());
        for a in 1..101 {
            assert_eq!(f.mul(&a, &f.inv(&a).unwrap()), 1);
        }
        assert_eq!(f.from_rational(&rat(1, 2)), Some(51));
        assert_eq!(f.from_rational(&rat(1, 101)), None);
        assert_eq!(f.from_rational(&rat(-3, 1)), Some(98));
        assert_eq!(f.lift(100), -1);
    }
}
