use std::fmt;
use std::ops::{Add, Mul};

/// An element of `F_8 = F_2[w]/(w^3 + w + 1)`, bit `i` holding the
/// coefficient of `w^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct F8(u8);

impl F8 {
    pub const ZERO: F8 = F8(0);
    pub const ONE: F8 = F8(1);
    /// The class of `w`, a generator of the multiplicative group.
    pub const W: F8 = F8(2);

    pub fn new(bits: u8) -> F8 {
        F8(bits & 7)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn all() -> impl Iterator<Item = F8> {
        (0..8).map(F8)
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn pow(self, mut e: u32) -> F8 {
        let mut base = self;
        let mut acc = F8::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    pub fn inv(self) -> Option<F8> {
        (!self.is_zero()).then(|| self.pow(6))
    }
}

impl Add for F8 {
    type Output = F8;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: F8) -> F8 {
        F8(self.0 ^ rhs.0)
    }
}

impl Mul for F8 {
    type Output = F8;
    fn mul(self, rhs: F8) -> F8 {
        let mut prod = 0u8;
        for i in 0..3 {
            if rhs.0 >> i & 1 == 1 {
                prod ^= self.0 << i;
            }
        }
        for i in (3..5).rev() {
            if prod >> i & 1 == 1 {
                prod ^= 0b1011 << (i - 3);
            }
        }
        F8(prod)
    }
}

impl fmt::Display for F8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_fixes_everything() {
        for a in F8::all() {
            assert_eq!(a.pow(8), a);
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic_of_order_7() {
        let powers: std::collections::BTreeSet<F8> = (0..7).map(|k| F8::W.pow(k)).collect();
        assert_eq!(powers.len(), 7);
        assert_eq!(F8::W.pow(7), F8::ONE);
        assert_eq!(F8::W.pow(3), F8::W + F8::ONE);
        for a in F8::all().filter(|a| !a.is_zero()) {
            assert_eq!(a * a.inv().unwrap(), F8::ONE);
        }
    }

    #[test]
    fn distributive() {
        for a in F8::all() {
            for b in F8::all() {
                for c in F8::all() {
                    assert_eq!(a * (b + c), a * b + a * c);
                    assert_eq!((a * b) * c, a * (b * c));
                }
            }
        }
    }
}
