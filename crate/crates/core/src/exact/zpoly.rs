//! Helpers for `Z[x]`: content, primitive parts, exact division, gcd.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{qx, zx, Rational, UPoly};

pub type ZPoly = UPoly<BigInt>;
pub type QPoly = UPoly<Rational>;

/// Non-negative gcd of the coefficients; zero for the zero polynomial.
pub fn content(p: &ZPoly) -> BigInt {
    p.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part normalized to a positive leading coefficient.
pub fn primitive_part(p: &ZPoly) -> ZPoly {
    if p.is_zero() {
        return p.clone();
    }
    let mut c = content(p);
    if p.lc().unwrap().is_negative() {
        c = -c;
    }
    zx().from_coeffs(p.coeffs().iter().map(|x| x / &c).collect())
}

/// Writes `p = scale * z` with `z` primitive, positive leading coefficient.
pub fn clear_denominators(p: &QPoly) -> (ZPoly, Rational) {
    if p.is_zero() {
        return (zx().zero(), Rational::zero());
    }
    let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let z = scaled_numerators(p, &l);
    let pp = primitive_part(&z);
    let ratio = Rational::new(z.lc().unwrap().clone(), pp.lc().unwrap().clone());
    (pp, ratio / Rational::from_integer(l))
}

fn scaled_numerators(p: &QPoly, l: &BigInt) -> ZPoly {
    zx().from_coeffs(p.coeffs().iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect())
}

pub fn to_rational(p: &ZPoly) -> QPoly {
    qx().from_coeffs(p.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect())
}

/// Exact quotient in `Z[x]`, `None` when `b` does not divide `a`.
pub fn div_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.degree()?;
    if a.is_zero() {
        return Some(a.clone());
    }
    let da = a.degree().unwrap();
    if da < db {
        return None;
    }
    let lb = b.lc().unwrap();
    let mut r: Vec<BigInt> = a.coeffs().to_vec();
    let mut q = vec![BigInt::zero(); da - db + 1];
    for i in (db..=da).rev() {
        if r[i].is_zero() {
            continue;
        }
        let (c, rem) = r[i].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bc) in b.coeffs().iter().enumerate() {
            r[i - db + j] -= &c * bc;
        }
        q[i - db] = c;
    }
    if r.iter().take(db).any(|c| !c.is_zero()) {
        return None;
    }
    Some(zx().from_coeffs(q))
}

/// `lc(b)^(deg a - deg b + 1) a mod b`.
pub fn pseudo_rem(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let db = b.degree().expect("pseudo-division by zero");
    let ring = zx();
    let Some(da) = a.degree() else { return a.clone() };
    if da < db {
        return a.clone();
    }
    let lb = b.lc().unwrap().clone();
    let mut r = a.clone();
    let mut steps = da - db + 1;
    while let Some(dr) = r.degree() {
        if dr < db {
            break;
        }
        let lr = r.lc().unwrap().clone();
        let t = ring.shift(&ring.scale(b, &lr), dr - db);
        r = ring.sub(&ring.scale(&r, &lb), &t);
        steps -= 1;
    }
    let f = num_traits::pow(lb, steps);
    ring.scale(&r, &f)
}

/// gcd in `Z[x]` by the primitive remainder sequence; primitive with
/// positive leading coefficient (times the gcd of contents).
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() {
        return zx().scale(&primitive_part(b), &content(b));
    }
    if b.is_zero() {
        return zx().scale(&primitive_part(a), &content(a));
    }
    let cg = content(a).gcd(&content(b));
    let (mut x, mut y) = (primitive_part(a), primitive_part(b));
    if x.deg() < y.deg() {
        std::mem::swap(&mut x, &mut y);
    }
    while !y.is_zero() {
        let r = pseudo_rem(&x, &y);
        x = y;
        y = if r.is_zero() { r } else { primitive_part(&r) };
    }
    zx().scale(&primitive_part(&x), &cg)
}

/// Coefficients reduced into `[0, m)`.
pub fn reduce_mod(p: &ZPoly, m: &BigInt) -> ZPoly {
    zx().from_coeffs(p.coeffs().iter().map(|c| c.mod_floor(m)).collect())
}

/// Coefficients reduced into `(-m/2, m/2]`.
pub fn symmetric_mod(p: &ZPoly, m: &BigInt) -> ZPoly {
    let half: BigInt = m >> 1;
    zx().from_coeffs(
        p.coeffs()
            .iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// `ceil(sqrt(sum c_i^2))`.
pub fn norm2_ceil(p: &ZPoly) -> BigInt {
    let s: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    let r = s.sqrt();
    if &r * &r == s {
        r
    } else {
        r + 1
    }
}

/// Bound on the absolute value of every coefficient of every factor of
/// `p` in `Z[x]` (Mignotte): `2^deg * ||p||_2`.
pub fn mignotte_bound(p: &ZPoly) -> BigInt {
    norm2_ceil(p) << p.deg()
}

pub fn max_abs_coeff(p: &ZPoly) -> BigInt {
    p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn clear_denominators_roundtrip() {
        let q = qx().from_coeffs(vec![rat(-1, 6), rat(0, 1), rat(-2, 3)]);
        let (z, s) = clear_denominators(&q);
        assert_eq!(z.coeffs(), &[BigInt::from(1), BigInt::from(0), BigInt::from(4)]);
        assert_eq!(qx().scale(&to_rational(&z), &s), q);
    }

    #[test]
    fn integer_gcd_and_division() {
        let r = zx();
        let a = r.from_i64s(&[-2, 0, 2]); // 2(x^2-1)
        let b = r.from_i64s(&[4, 4]); // 4(x+1)
        assert_eq!(gcd(&a, &b), r.from_i64s(&[2, 2]));
        assert_eq!(div_exact(&a, &r.from_i64s(&[1, 1])), Some(r.from_i64s(&[-2, 2])));
        assert_eq!(div_exact(&a, &r.from_i64s(&[1, 2])), None);
    }
}
