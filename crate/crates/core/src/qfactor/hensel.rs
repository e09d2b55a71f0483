//! Multifactor Hensel lifting over `Z / p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::exact::zpoly::{reduce_mod, ZPoly};
use crate::exact::{zx, Ring};
use crate::finite_field::{FpPoly, PrimeField};

fn modp(a: &ZPoly, m: &BigInt) -> ZPoly {
    reduce_mod(a, m)
}

fn mul(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    modp(&zx().mul(a, b), m)
}

fn add(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    modp(&zx().add(a, b), m)
}

fn sub(a: &ZPoly, b: &ZPoly, m: &BigInt) -> ZPoly {
    modp(&zx().sub(a, b), m)
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let db = b.deg();
    debug_assert!(b.lc().map(|c| c.is_one()).unwrap_or(false));
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    if r.len() <= db {
        return (zx().zero(), modp(a, m));
    }
    let mut q = vec![BigInt::default(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = r[i].mod_floor(m);
        if c == BigInt::default() {
            continue;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[i - db + j] = (&r[i - db + j] - &c * bc).mod_floor(m);
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (zx().from_coeffs(q), modp(&zx().from_coeffs(r), m))
}

fn lift_fp(p: &FpPoly) -> ZPoly {
    zx().from_coeffs(p.coeffs().iter().map(|&c| BigInt::from(c)).collect())
}

/// One quadratic step: from `f = g h`, `s g + t h = 1 (mod m)` to the same
/// relations mod `m^2`. `h` must be monic.
fn step(f: &ZPoly, g: &ZPoly, h: &ZPoly, s: &ZPoly, t: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = sub(f, &mul(g, h, &m2), &m2);
    let (q, r) = divrem_monic(&mul(s, &e, &m2), h, &m2);
    let g2 = add(&add(g, &mul(t, &e, &m2), &m2), &mul(&q, g, &m2), &m2);
    let h2 = add(h, &r, &m2);
    let b = sub(&add(&mul(s, &g2, &m2), &mul(t, &h2, &m2), &m2), &zx().one(), &m2);
    let (c, d) = divrem_monic(&mul(s, &b, &m2), &h2, &m2);
    let s2 = sub(s, &d, &m2);
    let t2 = sub(&sub(t, &mul(t, &b, &m2), &m2), &mul(&c, &g2, &m2), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f = lc(f) * prod(factors) (mod p)`, factors monic and pairwise
/// coprime mod p, to the same relation mod `p^(2^j)` where the exponent is
/// the first power of two with `p^(2^j) > bound`. Returns the lifted monic
/// factors in the input order and the final modulus.
pub fn lift(field: &PrimeField, f: &ZPoly, factors: &[FpPoly], bound: &BigInt) -> (Vec<ZPoly>, BigInt) {
    let mut steps = 0u32;
    let mut m = BigInt::from(field.p());
    while &m <= bound {
        m = &m * &m;
        steps += 1;
    }
    let out = lift_tree(field, f, factors, steps);
    (out, m)
}

fn lift_tree(field: &PrimeField, f: &ZPoly, factors: &[FpPoly], steps: u32) -> Vec<ZPoly> {
    let p = BigInt::from(field.p());
    let mut modulus = p.clone();
    for _ in 0..steps {
        modulus = &modulus * &modulus;
    }
    let lc = f.lc().unwrap().clone();
    if factors.len() == 1 {
        let inv = lc.mod_floor(&modulus).extended_gcd(&modulus).x.mod_floor(&modulus);
        return vec![modp(&zx().scale(f, &inv), &modulus)];
    }
    let r = field.ring();
    let half = factors.len() / 2;
    let gp = factors[..half].iter().fold(r.constant(field.from_bigint(&lc)), |a, b| r.mul(&a, b));
    let hp = factors[half..].iter().fold(r.one(), |a, b| r.mul(&a, b));
    let (one, s, t) = r.xgcd(&gp, &hp);
    debug_assert!(field.is_one(&one.coeffs()[0]) && one.deg() == 0);
    let (mut g, mut h, mut s, mut t) = (lift_fp(&gp), lift_fp(&hp), lift_fp(&s), lift_fp(&t));
    let mut m = p;
    for _ in 0..steps {
        (g, h, s, t) = step(f, &g, &h, &s, &t, &m);
        m = &m * &m;
    }
    let mut out = lift_tree(field, &g, &factors[..half], steps);
    out.extend(lift_tree(field, &h, &factors[half..], steps));
    out
}
