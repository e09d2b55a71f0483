use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AffinePoint, PlaneCurve, F, G};
use crate::exact::zpoly::{self, QPoly, ZPoly};
use crate::exact::{zx, Field, Poly, Rational, Ring};
use crate::{Error, Result};

/// An element `(n0 + n1 f + n2 f^2) / d` of the function field, with
/// `n_i, d` in `Z[g]`, no common factor and `lc(d) > 0`. This form is
/// unique, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveFn {
    num: [ZPoly; 3],
    den: ZPoly,
}

impl CurveFn {
    pub fn numerators(&self) -> &[ZPoly; 3] {
        &self.num
    }

    pub fn denominator(&self) -> &ZPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.iter().all(|n| n.is_zero())
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.num[1].is_zero() && self.num[2].is_zero() && self.den.deg() == 0 && self.num[0].deg() == 0 {
            let n = self.num[0].coeffs().first().cloned().unwrap_or_else(BigInt::zero);
            return Some(Rational::new(n, self.den.coeffs()[0].clone()));
        }
        None
    }

    /// Numerator as a polynomial in `(f, g)` and denominator in `g`.
    pub fn to_polys(&self) -> (Poly, Poly) {
        let f = Poly::var(F);
        let mut num = Poly::zero();
        for (i, n) in self.num.iter().enumerate() {
            num = &num + &(&Poly::from_upoly(G, &zpoly::to_rational(n)) * &f.pow(i as u32));
        }
        (num, Poly::from_upoly(G, &zpoly::to_rational(&self.den)))
    }

    /// Total `g`-degree of numerators and denominator, a size measure.
    pub fn g_degree(&self) -> usize {
        self.num.iter().chain(std::iter::once(&self.den)).map(|p| p.deg()).max().unwrap_or(0)
    }
}

impl std::fmt::Display for CurveFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let (n, d) = self.to_polys();
        if d.constant_value().map(|c| c.is_one()).unwrap_or(false) {
            write!(f, "{n}")
        } else {
            write!(f, "({n}) / ({d})")
        }
    }
}

/// `L^-e * (p0 + p1 f + p2 f^2)`: unnormalized arithmetic for long
/// products where intermediate gcds would dominate.
#[derive(Clone, Debug)]
struct Scaled {
    poly: [ZPoly; 3],
    e: u32,
}

/// The function field `Q(g)[f] / (C)` of a plane cubic monic in `f`.
///
/// Reduction uses `L f^3 = -(r2 f^2 + r1 f + r0)` with `L` a positive
/// integer and `r_i` in `Z[g]`.
#[derive(Clone, Debug)]
pub struct FunctionField {
    curve: PlaneCurve,
    l: BigInt,
    r: [ZPoly; 3],
}

fn zpoly_scale(p: &ZPoly, c: &BigInt) -> ZPoly {
    zx().scale(p, c)
}

impl FunctionField {
    pub fn new(curve: &PlaneCurve) -> Self {
        let coeffs = curve.poly().coefficients_in(F);
        let lower: Vec<QPoly> = coeffs[..3].iter().map(|c| c.to_upoly(G).expect("curve is in f, g")).collect();
        let l = lower
            .iter()
            .flat_map(|p| p.coeffs().iter())
            .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let lr = Rational::from_integer(l.clone());
        let r: Vec<ZPoly> = lower
            .iter()
            .map(|p| zx().from_coeffs(p.coeffs().iter().map(|c| (c * &lr).to_integer()).collect()))
            .collect();
        FunctionField { curve: curve.clone(), l, r: [r[0].clone(), r[1].clone(), r[2].clone()] }
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    /// Reduces `sum p_k f^k` to degree < 3; returns `(q, e)` with
    /// `L^e * sum p_k f^k = q` modulo `C`.
    fn reduce_raw(&self, mut v: Vec<ZPoly>) -> ([ZPoly; 3], u32) {
        let ring = zx();
        let mut e = 0;
        while v.len() > 3 {
            let k = v.len() - 1;
            let top = v.pop().unwrap();
            if !top.is_zero() {
                if !self.l.is_one() {
                    for c in v.iter_mut() {
                        *c = zpoly_scale(c, &self.l);
                    }
                    e += 1;
                }
                for (j, rj) in self.r.iter().enumerate() {
                    let idx = k - 3 + j;
                    v[idx] = ring.sub(&v[idx], &ring.mul(&top, rj));
                }
            }
        }
        while v.len() < 3 {
            v.push(ring.zero());
        }
        ([v[0].clone(), v[1].clone(), v[2].clone()], e)
    }

    fn normalize(&self, num: [ZPoly; 3], den: ZPoly) -> CurveFn {
        let ring = zx();
        if num.iter().all(|n| n.is_zero()) {
            return CurveFn { num: [ring.zero(), ring.zero(), ring.zero()], den: ring.one() };
        }
        let mut g = den.clone();
        for n in &num {
            if n.is_zero() {
                continue;
            }
            if g.deg() == 0 {
                let c = zpoly::content(n);
                g = ring.constant(g.coeffs()[0].gcd(&c));
            } else {
                g = zpoly::gcd(&g, n);
            }
            if g.deg() == 0 && g.coeffs()[0].is_one() {
                break;
            }
        }
        if den.lc().unwrap().is_negative() {
            g = ring.neg(&g);
        }
        let div = |p: &ZPoly| zpoly::div_exact(p, &g).expect("gcd divides");
        CurveFn { num: [div(&num[0]), div(&num[1]), div(&num[2])], den: div(&den) }
    }

    pub fn zero(&self) -> CurveFn {
        self.normalize([zx().zero(), zx().zero(), zx().zero()], zx().one())
    }

    pub fn constant(&self, c: &Rational) -> CurveFn {
        let ring = zx();
        self.normalize([ring.constant(c.numer().clone()), ring.zero(), ring.zero()], ring.constant(c.denom().clone()))
    }

    pub fn f(&self) -> CurveFn {
        let ring = zx();
        self.normalize([ring.zero(), ring.one(), ring.zero()], ring.one())
    }

    pub fn g(&self) -> CurveFn {
        let ring = zx();
        self.normalize([ring.x(), ring.zero(), ring.zero()], ring.one())
    }

    /// Reduces a polynomial in `f, g` modulo the curve.
    pub fn from_poly(&self, p: &Poly) -> Result<CurveFn> {
        if let Some(v) = p.used_vars().into_iter().find(|v| v != F && v != G) {
            return Err(Error::VariableMismatch(format!("`{v}` is not a curve coordinate")));
        }
        let coeffs = p.coefficients_in(F);
        let qs: Vec<QPoly> = coeffs.iter().map(|c| c.to_upoly(G)).collect::<Result<_>>()?;
        let l = qs.iter().flat_map(|q| q.coeffs().iter()).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let lr = Rational::from_integer(l.clone());
        let v: Vec<ZPoly> =
            qs.iter().map(|q| zx().from_coeffs(q.coeffs().iter().map(|c| (c * &lr).to_integer()).collect())).collect();
        let (n, e) = self.reduce_raw(v);
        let den = zx().constant(l * num_traits::pow(self.l.clone(), e as usize));
        Ok(self.normalize(n, den))
    }

    /// `num / den` for polynomials in `f, g`.
    pub fn from_ratio(&self, num: &Poly, den: &Poly) -> Result<CurveFn> {
        let n = self.from_poly(num)?;
        let d = self.from_poly(den)?;
        self.try_div(&n, &d)
    }

    pub fn add(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        let ring = zx();
        if a.den == b.den {
            let num = [ring.add(&a.num[0], &b.num[0]), ring.add(&a.num[1], &b.num[1]), ring.add(&a.num[2], &b.num[2])];
            return self.normalize(num, a.den.clone());
        }
        let num = [0, 1, 2].map(|i| ring.add(&ring.mul(&a.num[i], &b.den), &ring.mul(&b.num[i], &a.den)));
        self.normalize(num, ring.mul(&a.den, &b.den))
    }

    pub fn neg(&self, a: &CurveFn) -> CurveFn {
        let ring = zx();
        CurveFn { num: [0, 1, 2].map(|i| ring.neg(&a.num[i])), den: a.den.clone() }
    }

    pub fn sub(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        self.add(a, &self.neg(b))
    }

    fn mul_raw(&self, a: &[ZPoly; 3], b: &[ZPoly; 3]) -> ([ZPoly; 3], u32) {
        let ring = zx();
        let mut v = vec![ring.zero(); 5];
        for i in 0..3 {
            if a[i].is_zero() {
                continue;
            }
            for j in 0..3 {
                if !b[j].is_zero() {
                    v[i + j] = ring.add(&v[i + j], &ring.mul(&a[i], &b[j]));
                }
            }
        }
        self.reduce_raw(v)
    }

    fn l_pow(&self, e: u32) -> BigInt {
        num_traits::pow(self.l.clone(), e as usize)
    }

    pub fn mul(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        let (n, e) = self.mul_raw(&a.num, &b.num);
        let den = zpoly_scale(&zx().mul(&a.den, &b.den), &self.l_pow(e));
        self.normalize(n, den)
    }

    pub fn pow(&self, a: &CurveFn, e: u32) -> CurveFn {
        Ring::pow(self, a, e as u64)
    }

    /// Inverse from the adjugate of the multiplication-by-`a` matrix on
    /// the basis `1, f, f^2`. A vanishing determinant for nonzero `a`
    /// means the curve is reducible.
    pub fn try_inv(&self, a: &CurveFn) -> Result<CurveFn> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ring = zx();
        let basis = |i: usize| {
            let mut b = [ring.zero(), ring.zero(), ring.zero()];
            b[i] = ring.one();
            b
        };
        let cols: Vec<([ZPoly; 3], u32)> = (0..3).map(|j| self.mul_raw(&a.num, &basis(j))).collect();
        let emax = cols.iter().map(|c| c.1).max().unwrap();
        let m: Vec<[ZPoly; 3]> = cols
            .iter()
            .map(|(c, e)| {
                let s = self.l_pow(emax - e);
                [0, 1, 2].map(|i| zpoly_scale(&c[i], &s))
            })
            .collect();
        // m[j][i]: coefficient of f^i in a * f^j (column j).
        let at = |i: usize, j: usize| &m[j][i];
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| {
            ring.sub(&ring.mul(at(r0, c0), at(r1, c1)), &ring.mul(at(r0, c1), at(r1, c0)))
        };
        let cof = [minor(1, 2, 1, 2), ring.neg(&minor(1, 2, 0, 2)), minor(1, 2, 0, 1)];
        let det = ring.add(
            &ring.add(&ring.mul(at(0, 0), &cof[0]), &ring.mul(at(0, 1), &cof[1])),
            &ring.mul(at(0, 2), &cof[2]),
        );
        if det.is_zero() {
            return Err(Error::NotInvertible("norm vanishes: the curve is reducible".into()));
        }
        // adj[i][0] = cofactor (0, i), i.e. cof[i] of row 0.
        let scale = zpoly_scale(&a.den, &self.l_pow(emax));
        let num = [0, 1, 2].map(|i| ring.mul(&cof[i], &scale));
        Ok(self.normalize(num, det))
    }

    pub fn try_div(&self, a: &CurveFn, b: &CurveFn) -> Result<CurveFn> {
        if b.num[1].is_zero() && b.num[2].is_zero() && !b.num[0].is_zero() {
            // b is a function of g alone.
            let ring = zx();
            let num = [0, 1, 2].map(|i| ring.mul(&a.num[i], &b.den));
            return Ok(self.normalize(num, ring.mul(&a.den, &b.num[0])));
        }
        Ok(self.mul(a, &self.try_inv(b)?))
    }

    /// Evaluates a polynomial in `f, g` at curve functions.
    pub fn compose_poly(&self, p: &Poly, f: &CurveFn, g: &CurveFn) -> Result<CurveFn> {
        let coeffs = p.coefficients_in(F);
        // Horner in f with coefficients evaluated in g by Horner as well.
        let mut acc = self.zero();
        for c in coeffs.iter().rev() {
            let cg = c.to_upoly(G)?;
            let mut inner = self.zero();
            for k in cg.coeffs().iter().rev() {
                inner = self.add(&self.mul(&inner, g), &self.constant(k));
            }
            acc = self.add(&self.mul(&acc, f), &inner);
        }
        Ok(acc)
    }

    /// Value at a point, in the point's field.
    pub fn evaluate(&self, a: &CurveFn, p: &AffinePoint) -> Result<QPoly> {
        let k = &p.field;
        let ev = |z: &ZPoly| -> QPoly {
            z.coeffs().iter().rev().fold(k.zero(), |acc, c| {
                k.add(&k.mul(&acc, &p.g), &k.embed(&Rational::from_integer(c.clone())))
            })
        };
        let d = ev(&a.den);
        if d.is_zero() {
            return Err(Error::Pole);
        }
        let mut num = k.zero();
        for n in a.num.iter().rev() {
            num = k.add(&k.mul(&num, &p.f), &ev(n));
        }
        k.try_inv(&d).map(|inv| k.mul(&num, &inv))
    }

    fn to_scaled(&self, a: &[ZPoly; 3]) -> Scaled {
        Scaled { poly: a.clone(), e: 0 }
    }

    fn scaled_mul(&self, a: &Scaled, b: &Scaled) -> Scaled {
        let (poly, e) = self.mul_raw(&a.poly, &b.poly);
        Scaled { poly, e: a.e + b.e + e }
    }

    fn scaled_add(&self, a: &Scaled, b: &Scaled) -> Scaled {
        let ring = zx();
        let e = a.e.max(b.e);
        let sa = self.l_pow(e - a.e);
        let sb = self.l_pow(e - b.e);
        Scaled {
            poly: [0, 1, 2].map(|i| ring.add(&zpoly_scale(&a.poly[i], &sa), &zpoly_scale(&b.poly[i], &sb))),
            e,
        }
    }

    fn scaled_by(&self, a: &Scaled, c: &ZPoly) -> Scaled {
        let ring = zx();
        Scaled { poly: [0, 1, 2].map(|i| ring.mul(&a.poly[i], c)), e: a.e }
    }

    /// Whether `rel(u, v)` is identically zero on the curve, decided
    /// exactly without intermediate normalization: with `u = U/du`,
    /// `v = V/dv` it tests `sum c_ij U^i du^(n-i) V^j dv^(m-j) = 0`.
    pub fn relation_vanishes(&self, rel: &Poly, xvar: &str, yvar: &str, u: &CurveFn, v: &CurveFn) -> Result<bool> {
        let (rel, _) = rel.primitive_integer();
        let n = rel.degree_in(xvar);
        let m = rel.degree_in(yvar);
        let ring = zx();
        let one = self.to_scaled(&[ring.one(), ring.zero(), ring.zero()]);
        let uu = self.to_scaled(&u.num);
        let vv = self.to_scaled(&v.num);
        let du_pows: Vec<ZPoly> = (0..=n).map(|k| ring.pow(&u.den, k as u64)).collect();
        let dv_pows: Vec<ZPoly> = (0..=m).map(|k| ring.pow(&v.den, k as u64)).collect();
        let rows = rel.coefficients_in(yvar);
        let mut acc: Option<Scaled> = None;
        for j in (0..=m).rev() {
            let row = rows.get(j).cloned().unwrap_or_else(Poly::zero);
            let cs = row.coefficients_in(xvar);
            let mut pj: Option<Scaled> = None;
            for i in (0..=n).rev() {
                let c = cs.get(i).and_then(|c| c.constant_value()).unwrap_or_else(Rational::zero);
                if !c.is_integer() {
                    return Err(Error::Unexpected("relation has non-constant coefficients".into()));
                }
                let term = self.scaled_by(&one, &zpoly_scale(&du_pows[n - i], &c.to_integer()));
                pj = Some(match pj {
                    None => term,
                    Some(p) => self.scaled_add(&self.scaled_mul(&p, &uu), &term),
                });
            }
            let pj = self.scaled_by(&pj.unwrap(), &dv_pows[m - j]);
            acc = Some(match acc {
                None => pj,
                Some(a) => self.scaled_add(&self.scaled_mul(&a, &vv), &pj),
            });
        }
        Ok(acc.map(|a| a.poly.iter().all(|p| p.is_zero())).unwrap_or(true))
    }

    /// `f`-degree-`< 3` representative of a rational function of `g`
    /// alone, used when building maps.
    pub fn from_g_ratio(&self, num: &QPoly, den: &QPoly) -> Result<CurveFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let (zn, sn) = zpoly::clear_denominators(num);
        let (zd, sd) = zpoly::clear_denominators(den);
        let s = sn / sd;
        let ring = zx();
        let n0 = zpoly_scale(&zn, s.numer());
        let d0 = zpoly_scale(&zd, s.denom());
        Ok(self.normalize([n0, ring.zero(), ring.zero()], d0))
    }
}

impl Ring for FunctionField {
    type Elem = CurveFn;
    fn zero(&self) -> CurveFn {
        FunctionField::zero(self)
    }
    fn one(&self) -> CurveFn {
        self.constant(&Rational::one())
    }
    fn is_zero(&self, a: &CurveFn) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        FunctionField::add(self, a, b)
    }
    fn sub(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        FunctionField::sub(self, a, b)
    }
    fn neg(&self, a: &CurveFn) -> CurveFn {
        FunctionField::neg(self, a)
    }
    fn mul(&self, a: &CurveFn, b: &CurveFn) -> CurveFn {
        FunctionField::mul(self, a, b)
    }
    fn from_i64(&self, n: i64) -> CurveFn {
        self.constant(&Rational::from_integer(n.into()))
    }
}

impl Field for FunctionField {
    fn inv(&self, a: &CurveFn) -> Option<CurveFn> {
        self.try_inv(a).ok()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}
