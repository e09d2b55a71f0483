use super::{qx, Poly};
use crate::{Error, Result};

type Coeffs = Vec<Poly>;

fn deg(a: &Coeffs) -> usize {
    a.len() - 1
}

fn trim(mut a: Coeffs) -> Coeffs {
    while a.len() > 1 && a.last().unwrap().is_zero() {
        a.pop();
    }
    a
}

fn is_zero(a: &Coeffs) -> bool {
    a.len() == 1 && a[0].is_zero()
}

fn scale(a: &Coeffs, c: &Poly) -> Coeffs {
    a.iter().map(|x| x * c).collect()
}

fn pow(a: &Poly, e: usize) -> Poly {
    a.pow(e as u32)
}

fn div_all(a: &Coeffs, d: &Poly) -> Coeffs {
    a.iter().map(|x| x.div_exact(d).expect("inexact division in subresultant sequence")).collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) * a mod b`.
fn prem(a: &Coeffs, b: &Coeffs) -> Coeffs {
    let db = deg(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = 0;
    let expected = deg(a) + 1 - db;
    while !is_zero(&r) && deg(&r) >= db {
        let dr = deg(&r);
        let lr = r[dr].clone();
        let mut next = scale(&r, &lb);
        for (i, bc) in b.iter().enumerate() {
            let k = i + dr - db;
            next[k] = &next[k] - &(bc * &lr);
        }
        r = trim(next);
        steps += 1;
    }
    if steps < expected {
        r = scale(&r, &pow(&lb, expected - steps));
    }
    r
}

fn coeffs_of(p: &Poly, var: &str) -> Coeffs {
    let c = p.coefficients_in(var);
    if c.is_empty() {
        vec![Poly::zero()]
    } else {
        c
    }
}

/// Resultant eliminating `var`, by the subresultant remainder sequence.
///
/// Follows the convention `res(p, q) = lc(p)^deg q * prod q(roots of p)`,
/// so `res(q, p) = (-1)^(deg p * deg q) res(p, q)`.
pub fn resultant(p: &Poly, q: &Poly, var: &str) -> Result<Poly> {
    let dp = p.degree_in(var);
    let dq = q.degree_in(var);
    if dp == 0 && dq == 0 {
        return Err(Error::ConstantInVariable(var.to_string()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero());
    }
    if p.used_vars().iter().chain(q.used_vars().iter()).all(|v| v == var) {
        let a = p.to_upoly(var)?;
        let b = q.to_upoly(var)?;
        return Ok(Poly::constant(qx().resultant(&a, &b)));
    }
    let a = coeffs_of(p, var);
    let b = coeffs_of(q, var);
    Ok(subresultant(a, b))
}

fn subresultant(mut a: Coeffs, mut b: Coeffs) -> Poly {
    let mut s = Poly::one();
    if deg(&a) < deg(&b) {
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -&s;
        }
        std::mem::swap(&mut a, &mut b);
    }
    if deg(&b) == 0 {
        return &s * &pow(&b[0], deg(&a));
    }
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        if deg(&a) % 2 == 1 && deg(&b) % 2 == 1 {
            s = -&s;
        }
        let r = prem(&a, &b);
        a = b;
        let d = &g * &pow(&h, delta);
        b = div_all(&r, &d);
        g = a[deg(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            _ => pow(&g, delta).div_exact(&pow(&h, delta - 1)).expect("inexact subresultant scale"),
        };
        if deg(&b) == 0 {
            break;
        }
    }
    if b[0].is_zero() {
        return Poly::zero();
    }
    let da = deg(&a);
    let t = if da == 1 {
        b[0].clone()
    } else {
        pow(&b[0], da).div_exact(&pow(&h, da - 1)).expect("inexact final subresultant")
    };
    &s * &t
}

/// Determinant of the Sylvester matrix, by fraction-free elimination.
/// Kept as an independent check on [`resultant`] for small degrees.
pub fn sylvester_resultant(p: &Poly, q: &Poly, var: &str) -> Result<Poly> {
    let m = p.degree_in(var);
    let n = q.degree_in(var);
    if m == 0 && n == 0 {
        return Err(Error::ConstantInVariable(var.to_string()));
    }
    if p.is_zero() || q.is_zero() {
        return Ok(Poly::zero());
    }
    let a = coeffs_of(p, var);
    let b = coeffs_of(q, var);
    let size = m + n;
    let mut mat = vec![vec![Poly::zero(); size]; size];
    for i in 0..n {
        for (k, c) in a.iter().enumerate() {
            mat[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in b.iter().enumerate() {
            mat[n + i][i + n - k] = c.clone();
        }
    }
    Ok(bareiss_det(mat))
}

pub(crate) fn bareiss_det(mut mat: Vec<Vec<Poly>>) -> Poly {
    let size = mat.len();
    if size == 0 {
        return Poly::one();
    }
    let mut sign = false;
    let mut prev = Poly::one();
    for k in 0..size - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..size).find(|&i| !mat[i][k].is_zero()) {
                Some(i) => {
                    mat.swap(i, k);
                    sign = !sign;
                }
                None => return Poly::zero(),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &(&mat[k][k] * &mat[i][j]) - &(&mat[i][k] * &mat[k][j]);
                mat[i][j] = v.div_exact(&prev).expect("inexact Bareiss step");
            }
        }
        prev = mat[k][k].clone();
    }
    let d = mat[size - 1][size - 1].clone();
    if sign {
        -&d
    } else {
        d
    }
}

/// `(-1)^(d(d-1)/2) res(p, dp/dvar) / lc(p)`.
pub fn discriminant(p: &Poly, var: &str) -> Result<Poly> {
    let d = p.degree_in(var);
    if d < 2 {
        return Err(Error::DegreeTooSmall { needed: 2, got: d });
    }
    let r = resultant(p, &p.derivative(var), var)?;
    let lc = p.coefficients_in(var).pop().unwrap();
    let mut out = r.div_exact(&lc).ok_or_else(|| Error::Unexpected("discriminant not divisible by lc".into()))?;
    if (d * (d - 1) / 2) % 2 == 1 {
        out = -&out;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x() -> Poly {
        Poly::var("x")
    }
    fn c(n: i64) -> Poly {
        Poly::int(n)
    }

    #[test]
    fn linear_factors() {
        let a = Poly::var("a");
        let b = Poly::var("b");
        let r = resultant(&(&x() - &a), &(&x() - &b), "x").unwrap();
        assert_eq!(r, &a - &b);
        assert_eq!(sylvester_resultant(&(&x() - &a), &(&x() - &b), "x").unwrap(), &a - &b);
    }

    #[test]
    fn common_factor_gives_zero() {
        let p = &x().pow(2) - &c(2);
        assert!(resultant(&p, &p, "x").unwrap().is_zero());
    }

    #[test]
    fn cubic_discriminants() {
        let p = &(&(&x().pow(3) + &x().pow(2)) - &x().scale(&rat(4, 1))) + &c(1);
        assert_eq!(discriminant(&p, "x").unwrap(), c(169));
        let dp = p.derivative("x");
        assert_eq!(resultant(&p, &dp, "x").unwrap(), c(-169));
        let q = &(&(&x().pow(3) - &x().pow(2)) - &x().scale(&rat(4, 1))) + &c(12);
        assert_eq!(discriminant(&q, "x").unwrap(), c(-2704));
        assert_eq!(discriminant(&(&x().pow(2) - &c(1)), "x").unwrap(), c(4));
        assert!(discriminant(&x(), "x").is_err());
    }

    #[test]
    fn constant_inputs() {
        assert!(resultant(&c(2), &c(3), "x").is_err());
        assert_eq!(resultant(&c(2), &(&x().pow(3) + &c(1)), "x").unwrap(), c(8));
    }

    #[test]
    fn multivariate_matches_sylvester() {
        let y = Poly::var("y");
        let p = &(&x().pow(3) - &(&y * &x())) + &y.pow(2);
        let q = &(&(&x().pow(2) * &y) + &x()) - &c(3);
        let r1 = resultant(&p, &q, "x").unwrap();
        let r2 = sylvester_resultant(&p, &q, "x").unwrap();
        assert_eq!(r1, r2);
        let r3 = resultant(&q, &p, "x").unwrap();
        assert_eq!(r3, r1);
        let gp = discriminant(&p, "x").unwrap();
        let expected = &(&y.pow(3).scale(&rat(4, 1)) - &y.pow(4).scale(&rat(27, 1))) + &Poly::zero();
        assert_eq!(gp, expected);
    }
}
