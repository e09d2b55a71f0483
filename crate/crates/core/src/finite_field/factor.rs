use num_bigint::BigUint;
use rand::Rng;

use super::{FpPoly, PrimeField};
use crate::exact::{PolyRing, Ring};
use crate::{Error, Result};

fn x_poly(r: &PolyRing<PrimeField>) -> FpPoly {
    r.x()
}

fn sort_factors(v: &mut [(FpPoly, u32)]) {
    v.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
}

/// Square-free factorization of a nonzero polynomial over `F_p`: monic,
/// pairwise coprime, square-free parts with multiplicities.
pub fn squarefree_mod_p(field: &PrimeField, a: &FpPoly) -> Vec<(FpPoly, u32)> {
    let r = field.ring();
    let p = field.p();
    let mut out = Vec::new();
    let f = r.monic(a);
    if f.deg() == 0 {
        return out;
    }
    let df = r.derivative(&f);
    let mut c = r.gcd(&f, &df);
    let mut w = r.div_exact(&f, &c).unwrap();
    let mut i = 1u32;
    while w.deg() > 0 {
        let y = r.gcd(&w, &c);
        let fac = r.div_exact(&w, &y).unwrap();
        if fac.deg() > 0 {
            out.push((fac, i));
        }
        w = y;
        c = r.div_exact(&c, &w).unwrap();
        i += 1;
    }
    if c.deg() > 0 {
        // c is a polynomial in x^p; its p-th root has coefficients c_{kp}.
        let root: Vec<u64> = c.coeffs().iter().step_by(p as usize).copied().collect();
        let root = r.from_coeffs(root);
        for (g, m) in squarefree_mod_p(field, &root) {
            out.push((g, m * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a monic square-free polynomial:
/// `(product of all irreducible factors of degree d, d)`.
pub fn distinct_degree(field: &PrimeField, f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let r = field.ring();
    let p = BigUint::from(field.p());
    let x = x_poly(&r);
    let mut out = Vec::new();
    let mut rest = r.monic(f);
    let mut h = r.rem(&x, &rest);
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = r.powmod(&h, &p, &rest);
        let g = r.gcd(&rest, &r.sub(&h, &x));
        if g.deg() > 0 {
            rest = r.div_exact(&rest, &g).unwrap();
            h = r.rem(&h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let k = rest.deg();
        out.push((rest, k));
    }
    out
}

/// Splits a monic square-free product of irreducibles of degree `d`.
/// Odd `p` uses Cantor-Zassenhaus with random elements; `p = 2` uses the
/// trace map on the monomials `x^k`, which is deterministic.
pub fn equal_degree<R: Rng + ?Sized>(field: &PrimeField, f: &FpPoly, d: usize, rng: &mut R) -> Result<Vec<FpPoly>> {
    let r = field.ring();
    let n = f.deg();
    if n == d {
        return Ok(vec![r.monic(f)]);
    }
    if !n.is_multiple_of(d) || n == 0 {
        return Err(Error::Precondition(format!("degree {n} is not a multiple of {d}")));
    }
    let split = if field.p() == 2 {
        trace_split(field, f, d)?
    } else {
        random_split(field, f, d, rng)
    };
    let q = r.div_exact(f, &split).unwrap();
    let mut out = equal_degree(field, &split, d, rng)?;
    out.extend(equal_degree(field, &q, d, rng)?);
    Ok(out)
}

fn random_split<R: Rng + ?Sized>(field: &PrimeField, f: &FpPoly, d: usize, rng: &mut R) -> FpPoly {
    let r = field.ring();
    let p = field.p();
    let n = f.deg();
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let a = r.from_coeffs((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.deg() == 0 {
            continue;
        }
        let g = r.gcd(&a, f);
        if g.deg() > 0 && g.deg() < n {
            return g;
        }
        let b = r.sub(&r.powmod(&a, &e, f), &r.one());
        let g = r.gcd(&b, f);
        if g.deg() > 0 && g.deg() < n {
            return g;
        }
    }
}

fn trace_split(field: &PrimeField, f: &FpPoly, d: usize) -> Result<FpPoly> {
    let r = field.ring();
    let n = f.deg();
    for k in 1..n {
        let a = r.monomial(1, k);
        let mut term = r.rem(&a, f);
        let mut tr = term.clone();
        for _ in 1..d {
            term = r.rem(&r.mul(&term, &term), f);
            tr = r.add(&tr, &term);
        }
        let g = r.gcd(&tr, f);
        if g.deg() > 0 && g.deg() < n {
            return Ok(g);
        }
    }
    Err(Error::Unexpected("trace map failed to split".into()))
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by degree then coefficients.
pub fn factor_mod_p<R: Rng + ?Sized>(field: &PrimeField, a: &FpPoly, rng: &mut R) -> Result<Vec<(FpPoly, u32)>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (part, m) in squarefree_mod_p(field, a) {
        for (prod, d) in distinct_degree(field, &part) {
            for g in equal_degree(field, &prod, d, rng)? {
                out.push((g, m));
            }
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// Degrees of the irreducible factors of a square-free polynomial, from
/// distinct-degree factorization alone (sorted descending).
pub fn factor_degrees(field: &PrimeField, f: &FpPoly) -> Vec<usize> {
    let mut out = Vec::new();
    for (g, d) in distinct_degree(field, f) {
        out.extend(std::iter::repeat_n(d, g.deg() / d));
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// Rabin's test: `f` of degree `n` is irreducible iff `x^(p^n) = x mod f`
/// and `gcd(x^(p^(n/q)) - x, f) = 1` for every prime `q | n`.
pub fn is_irreducible_mod_p(field: &PrimeField, f: &FpPoly) -> bool {
    let r = field.ring();
    let n = f.deg();
    if n == 0 {
        return false;
    }
    let f = r.monic(f);
    let x = r.x();
    let p = BigUint::from(field.p());
    let frob = |k: usize| {
        let mut h = r.rem(&x, &f);
        for _ in 0..k {
            h = r.powmod(&h, &p, &f);
        }
        h
    };
    if !r.sub(&frob(n), &r.rem(&x, &f)).is_zero() {
        return false;
    }
    let mut m = n;
    let mut q = 2;
    while m > 1 {
        if m.is_multiple_of(q) {
            while m.is_multiple_of(q) {
                m /= q;
            }
            let g = r.gcd(&r.sub(&frob(n / q), &x), &f);
            if g.deg() > 0 {
                return false;
            }
        }
        q += 1;
    }
    true
}

/// Distinct roots in `F_p`, sorted.
pub fn roots_mod_p<R: Rng + ?Sized>(field: &PrimeField, a: &FpPoly, rng: &mut R) -> Result<Vec<u64>> {
    if a.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let r = field.ring();
    let p = BigUint::from(field.p());
    let f = r.monic(a);
    let x = r.x();
    let xp = r.powmod(&x, &p, &f);
    let lin = r.gcd(&r.sub(&xp, &x), &f);
    if lin.deg() == 0 {
        return Ok(Vec::new());
    }
    let mut roots: Vec<u64> = equal_degree(field, &lin, 1, rng)?
        .into_iter()
        .map(|g| field.neg(&g.coeffs()[0]))
        .collect();
    roots.sort_unstable();
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::seeded;

    fn product(field: &PrimeField, fs: &[(FpPoly, u32)]) -> FpPoly {
        let r = field.ring();
        fs.iter().fold(r.one(), |acc, (g, m)| r.mul(&acc, &r.pow(g, *m as u64)))
    }

    #[test]
    fn x2_plus_1_mod_5() {
        let f = PrimeField::new(5).unwrap();
        let r = f.ring();
        let a = r.from_i64s(&[1, 0, 1]);
        let fs = factor_mod_p(&f, &a, &mut seeded(1)).unwrap();
        assert_eq!(fs, vec![(r.from_i64s(&[2, 1]), 1), (r.from_i64s(&[3, 1]), 1)]);
        assert_eq!(roots_mod_p(&f, &a, &mut seeded(1)).unwrap(), vec![2, 3]);
    }

    #[test]
    fn repeated_and_pth_power_factors() {
        let f = PrimeField::new(3).unwrap();
        let r = f.ring();
        // (x+1)^3 (x^2+1)^2 x
        let a = r.mul(&r.mul(&r.pow(&r.from_i64s(&[1, 1]), 3), &r.pow(&r.from_i64s(&[1, 0, 1]), 2)), &r.x());
        let fs = factor_mod_p(&f, &a, &mut seeded(7)).unwrap();
        assert_eq!(product(&f, &fs), a);
        let mults: Vec<u32> = fs.iter().map(|x| x.1).collect();
        assert_eq!(mults, vec![1, 3, 2]);
    }

    #[test]
    fn characteristic_two_trace_split() {
        let f = PrimeField::new(2).unwrap();
        let r = f.ring();
        // x^8 - x over F_2 = x (x+1) (x^3+x+1) (x^3+x^2+1)
        let a = r.sub(&r.monomial(1, 8), &r.x());
        let fs = factor_mod_p(&f, &a, &mut seeded(0)).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&f, &fs), a);
        assert!(fs.iter().all(|(g, _)| is_irreducible_mod_p(&f, g)));
    }

    #[test]
    fn rabin_test() {
        let f = PrimeField::new(7).unwrap();
        let r = f.ring();
        assert!(is_irreducible_mod_p(&f, &r.from_i64s(&[-3, 0, 1])));
        assert!(!is_irreducible_mod_p(&f, &r.from_i64s(&[-2, 0, 1])));
        assert!(!is_irreducible_mod_p(&f, &r.mul(&r.from_i64s(&[3, 0, 1]), &r.from_i64s(&[3, 0, 1]))));
    }
}
