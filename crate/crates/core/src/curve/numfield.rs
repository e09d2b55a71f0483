use num_traits::{One, Zero};

use crate::exact::zpoly::QPoly;
use crate::exact::{qx, resultant, Field, Poly, Rational, Rationals, Ring};
use crate::qfactor::is_irreducible_q;
use crate::{Error, Result};

/// A number field `Q[z]/(m)` with `m` monic irreducible. The degree-one
/// modulus `z` gives `Q` itself, so rational and algebraic points share one
/// code path.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientField {
    modulus: QPoly,
}

impl QuotientField {
    /// Certifies irreducibility of `m` over `Q` before accepting it.
    pub fn new(m: &QPoly) -> Result<Self> {
        if m.deg() == 0 {
            return Err(Error::DegreeTooSmall { needed: 1, got: 0 });
        }
        let w = is_irreducible_q(&Poly::from_upoly("z", m))?;
        if !w.irreducible {
            return Err(Error::Precondition(format!("modulus is reducible, factor degrees {:?}", w.factor_degrees)));
        }
        Ok(Self::new_unchecked(m))
    }

    /// Caller guarantees irreducibility; a zero divisor met later surfaces
    /// as [`Error::NotInvertible`].
    pub fn new_unchecked(m: &QPoly) -> Self {
        QuotientField { modulus: qx().monic(m) }
    }

    pub fn rationals() -> Self {
        QuotientField { modulus: qx().x() }
    }

    pub fn modulus(&self) -> &QPoly {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn embed(&self, c: &Rational) -> QPoly {
        qx().constant(c.clone())
    }

    /// The class of `z`.
    pub fn generator(&self) -> QPoly {
        self.reduce(&qx().x())
    }

    pub fn reduce(&self, a: &QPoly) -> QPoly {
        qx().rem(a, &self.modulus)
    }

    pub fn to_rational(&self, a: &QPoly) -> Option<Rational> {
        match a.degree() {
            None => Some(Rational::zero()),
            Some(0) => Some(a.coeffs()[0].clone()),
            _ => None,
        }
    }

    /// Inverse with distinct errors for zero and for zero divisors.
    pub fn try_inv(&self, a: &QPoly) -> Result<QPoly> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (g, s, _) = qx().xgcd(a, &self.modulus);
        if g.deg() > 0 {
            return Err(Error::NotInvertible(format!("shares a factor of degree {} with the modulus", g.deg())));
        }
        Ok(self.reduce(&s))
    }

    /// Characteristic polynomial of multiplication by `a` (monic, in `X`).
    pub fn char_poly(&self, a: &QPoly) -> QPoly {
        let m = Poly::from_upoly("z", &self.modulus);
        let x = &Poly::var("X") - &Poly::from_upoly("z", a);
        let r = resultant(&m, &x, "z").expect("modulus has positive degree");
        qx().monic(&r.to_upoly("X").expect("univariate"))
    }

    pub fn norm(&self, a: &QPoly) -> Rational {
        let c = self.char_poly(a);
        let n = c.coeffs()[0].clone();
        if self.degree() % 2 == 1 {
            -n
        } else {
            n
        }
    }

    pub fn format(&self, a: &QPoly) -> String {
        if a.is_zero() {
            return "0".into();
        }
        Poly::from_upoly("z", a).to_string()
    }
}

impl Ring for QuotientField {
    type Elem = QPoly;
    fn zero(&self) -> QPoly {
        qx().zero()
    }
    fn one(&self) -> QPoly {
        qx().one()
    }
    fn is_zero(&self, a: &QPoly) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &QPoly, b: &QPoly) -> QPoly {
        qx().add(a, b)
    }
    fn sub(&self, a: &QPoly, b: &QPoly) -> QPoly {
        qx().sub(a, b)
    }
    fn neg(&self, a: &QPoly) -> QPoly {
        qx().neg(a)
    }
    fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
        self.reduce(&qx().mul(a, b))
    }
    fn from_i64(&self, n: i64) -> QPoly {
        qx().constant(Rationals.from_i64(n))
    }
    fn is_one(&self, a: &QPoly) -> bool {
        a.deg() == 0 && a.coeffs().first().map(|c| c.is_one()).unwrap_or(false)
    }
}

impl Field for QuotientField {
    fn inv(&self, a: &QPoly) -> Option<QPoly> {
        self.try_inv(a).ok()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}
