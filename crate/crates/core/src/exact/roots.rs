use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::zpoly::{clear_denominators, max_abs_coeff, ZPoly};
use super::{qx, zx, Poly, Rational, UPoly};
use crate::finite_field::{next_prime, PrimeField};
use crate::{Error, Result};

/// Rational roots with multiplicities, sorted increasingly.
pub fn rational_roots(p: &Poly) -> Result<Vec<(Rational, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    match p.univariate_var()? {
        None => Ok(Vec::new()),
        Some(v) => rational_roots_upoly(&p.to_upoly(&v)?),
    }
}

pub fn rational_roots_upoly(p: &UPoly<Rational>) -> Result<Vec<(Rational, u32)>> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, m) in qx().squarefree_char0(p) {
        let (z, _) = clear_denominators(&part);
        for r in squarefree_integer_roots(&z) {
            out.push((r, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

fn eval_exact(z: &ZPoly, r: &Rational) -> Rational {
    z.coeffs().iter().rev().fold(Rational::zero(), |acc, c| acc * r + Rational::from_integer(c.clone()))
}

fn eval_mod(z: &ZPoly, x: &BigInt, m: &BigInt) -> BigInt {
    z.coeffs().iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn inverse_mod(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Roots of a square-free primitive integer polynomial: simple roots mod a
/// small good prime, Newton-lifted until `lc * root` is determined, then
/// checked exactly.
fn squarefree_integer_roots(z: &ZPoly) -> Vec<Rational> {
    let n = z.deg();
    if n == 0 {
        return Vec::new();
    }
    let lc = z.lc().unwrap().clone();
    if n == 1 {
        return vec![Rational::new(-z.coeffs()[0].clone(), lc)];
    }
    let zr = zx();
    let dz = zr.derivative(z);
    let mut p = 3;
    let field = loop {
        let f = PrimeField::new(p).unwrap();
        let r = f.ring();
        let zb = f.reduce_int(z);
        if zb.deg() == n && r.gcd(&zb, &r.derivative(&zb)).deg() == 0 {
            break f;
        }
        p = next_prime(p + 1);
    };
    let r = field.ring();
    let zb = field.reduce_int(z);
    let small: Vec<u64> = (0..field.p()).filter(|a| r.eval(&zb, a) == 0).collect();
    let bound: BigInt = (lc.abs() + max_abs_coeff(z)) * 2 + 1;
    let mut out = Vec::new();
    for a in small {
        let mut m = BigInt::from(field.p());
        let mut x = BigInt::from(a);
        while m <= bound {
            m = &m * &m;
            let fx = eval_mod(z, &x, &m);
            let inv = inverse_mod(&eval_mod(&dz, &x, &m), &m).expect("simple root stays simple");
            x = (x - fx * inv).mod_floor(&m);
        }
        let mut y = (&lc * &x).mod_floor(&m);
        if y > (&m >> 1) {
            y -= &m;
        }
        let cand = Rational::new(y, lc.clone());
        if eval_exact(z, &cand).is_zero() {
            out.push(cand);
        }
    }
    out
}
