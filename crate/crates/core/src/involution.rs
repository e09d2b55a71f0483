//! Birational self-maps of the curve, their fixed points, and the
//! algebraic relation between a function and its transform.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::certificate::Certificate;
use crate::cover::{normalize, FiberPolynomial};
use crate::curve::{CurveFn, FunctionField, PlaneCurve, QuotientField, F, G};
use crate::exact::{format_rational, gcd, rational_roots, resultant, Field, Poly, PolyRing, Rational, Ring, UPoly};
use crate::finite_field::{is_prime, roots_mod_p, PrimeField};
use crate::qfactor::factor_over_q;
use crate::rng::substream;
use crate::{Error, Result};

pub const X: &str = "X";
pub const Y: &str = "Y";

type QPoly = UPoly<Rational>;

/// `(f, g) -> (fn/fd, gn/gd)` with polynomials in `f, g`.
#[derive(Clone, Debug, PartialEq)]
pub struct BirationalMap {
    pub image_f: (Poly, Poly),
    pub image_g: (Poly, Poly),
}

impl BirationalMap {
    pub fn new(f_num: Poly, f_den: Poly, g_num: Poly, g_den: Poly) -> Result<Self> {
        if f_den.is_zero() || g_den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(BirationalMap { image_f: (f_num, f_den), image_g: (g_num, g_den) })
    }

    pub fn identity() -> Self {
        BirationalMap { image_f: (Poly::var(F), Poly::one()), image_g: (Poly::var(G), Poly::one()) }
    }

    /// Images of `f` and `g` in the function field.
    pub fn images(&self, ff: &FunctionField) -> Result<(CurveFn, CurveFn)> {
        let img = |(n, d): &(Poly, Poly)| -> Result<CurveFn> {
            let d = ff.from_poly(d)?;
            if d.is_zero() {
                return Err(Error::Precondition("denominator vanishes on the curve".into()));
            }
            ff.try_div(&ff.from_poly(n)?, &d)
        };
        Ok((img(&self.image_f)?, img(&self.image_g)?))
    }

    /// `h(image_f, image_g)` for a polynomial `h` in `f, g`.
    pub fn pull_back(&self, ff: &FunctionField, h: &Poly) -> Result<CurveFn> {
        let (u, v) = self.images(ff)?;
        ff.compose_poly(h, &u, &v)
    }

    /// `self ∘ other`: first `self`, then `other`, on functions.
    pub fn compose_images(&self, ff: &FunctionField, other: &BirationalMap) -> Result<(CurveFn, CurveFn)> {
        let (u, v) = self.images(ff)?;
        let sub = |(n, d): &(Poly, Poly)| -> Result<CurveFn> {
            ff.try_div(&ff.compose_poly(n, &u, &v)?, &ff.compose_poly(d, &u, &v)?)
        };
        Ok((sub(&other.image_f)?, sub(&other.image_g)?))
    }
}

/// Numerator of `C(fn/fd, gn/gd)` after multiplying by `fd^a gd^b`.
fn cleared_pullback(c: &Poly, m: &BirationalMap) -> Poly {
    let (fnum, fden) = &m.image_f;
    let (gnum, gden) = &m.image_g;
    let a = c.degree_in(F) as u32;
    let b = c.degree_in(G) as u32;
    let fp: Vec<(Poly, Poly)> = (0..=a).map(|i| (fnum.pow(i), fden.pow(a - i))).collect();
    let gp: Vec<(Poly, Poly)> = (0..=b).map(|j| (gnum.pow(j), gden.pow(b - j))).collect();
    let mut out = Poly::zero();
    for (i, row) in c.coefficients_in(F).iter().enumerate() {
        for (j, k) in row.coefficients_in(G).iter().enumerate() {
            let Some(k) = k.constant_value() else { continue };
            if k.is_zero() {
                continue;
            }
            let t = &(&(&fp[i].0 * &fp[i].1) * &gp[j].0) * &gp[j].1;
            out = &out + &t.scale(&k);
        }
    }
    out
}

/// Whether the map sends the curve into itself: the cleared numerator of
/// `C(image_f, image_g)` is divisible by `C`.
pub fn verify_self_map(curve: &PlaneCurve, m: &BirationalMap) -> Result<Certificate> {
    const CHECK: &str = "self-map";
    let ff = FunctionField::new(curve);
    for d in [&m.image_f.1, &m.image_g.1] {
        if ff.from_poly(d)?.is_zero() {
            return Err(Error::Precondition("denominator vanishes identically on the curve".into()));
        }
    }
    let n = cleared_pullback(curve.poly(), m);
    let q = n.div_exact(curve.poly());
    let ok = q.is_some();
    let mut cert = Certificate::verdict(
        CHECK,
        ok,
        if ok { "pullback of the curve equation is a multiple of it" } else { "pullback is not divisible by the curve equation" },
    )
    .with("pullback_terms", n.num_terms());
    if let Some(q) = q {
        cert = cert.with("cofactor", q.to_string());
    }
    Ok(cert)
}

/// Whether `m ∘ m` is the identity on the function field.
pub fn verify_involution(curve: &PlaneCurve, m: &BirationalMap) -> Result<Certificate> {
    const CHECK: &str = "involution";
    let ff = FunctionField::new(curve);
    let (ff2, gg2) = m.compose_images(&ff, m)?;
    let ok_f = ff2 == ff.f();
    let ok_g = gg2 == ff.g();
    Ok(Certificate::verdict(CHECK, ok_f && ok_g, if ok_f && ok_g { "m(m(f)) = f and m(m(g)) = g" } else { "m ∘ m is not the identity" })
        .with("mm_f", ff2.to_string())
        .with("mm_g", gg2.to_string()))
}

/// Fixed points lying over the roots of one irreducible factor in `g`.
#[derive(Clone, Debug)]
pub struct FixedComponent {
    /// Irreducible in `g`, primitive.
    pub g_poly: Poly,
    pub field: QuotientField,
    /// Monic, square-free, over `Q[g]/(g_poly)`.
    pub f_poly: UPoly<QPoly>,
    pub count: usize,
}

impl FixedComponent {
    pub fn describe(&self) -> String {
        let terms: Vec<String> = self
            .f_poly
            .coeffs()
            .iter()
            .enumerate()
            .rev()
            .map(|(i, c)| format!("({})*f^{i}", self.field.format(c)))
            .collect();
        format!("{} = 0, {} = 0", self.g_poly, terms.join(" + "))
    }

    /// The point, if it is a single rational point.
    pub fn rational_point(&self) -> Option<(Rational, Rational)> {
        if self.count != 1 {
            return None;
        }
        let g0 = crate::exact::rational_roots(&self.g_poly).ok()?.first()?.0.clone();
        let c0 = self.field.to_rational(&self.f_poly.coeffs()[0])?;
        Some((-c0, g0))
    }
}

#[derive(Clone, Debug)]
pub struct FixedLocus {
    pub components: Vec<FixedComponent>,
}

impl FixedLocus {
    /// Number of geometric points.
    pub fn count(&self) -> usize {
        self.components.iter().map(|c| c.count).sum()
    }
}

fn specialize_g(p: &Poly, k: &QuotientField) -> Result<UPoly<QPoly>> {
    let theta = k.generator();
    let coeffs = p
        .coefficients_in(F)
        .iter()
        .map(|c| c.eval_in(k, &[(G, theta.clone())], |r| k.embed(r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(PolyRing::new(k.clone()).from_coeffs(coeffs))
}

/// Affine fixed points where the defining formulas of `m` are regular.
pub fn fixed_locus(curve: &PlaneCurve, m: &BirationalMap) -> Result<FixedLocus> {
    let c = curve.poly();
    let fv = Poly::var(F);
    let gv = Poly::var(G);
    let a = &m.image_f.0 - &(&fv * &m.image_f.1);
    let b = &m.image_g.0 - &(&gv * &m.image_g.1);
    let elim = |e: &Poly| -> Result<Poly> {
        if e.is_zero() {
            return Ok(Poly::zero());
        }
        if e.degree_in(F) == 0 {
            return Ok(e.clone());
        }
        resultant(c, e, F)
    };
    let h = gcd(&elim(&a)?, &elim(&b)?)?;
    if h.is_zero() {
        return Err(Error::Precondition("fixed locus is positive-dimensional".into()));
    }
    let mut components = Vec::new();
    if h.is_constant() {
        return Ok(FixedLocus { components });
    }
    for (m_g, _) in factor_over_q(&h)?.factors {
        let k = QuotientField::new(&m_g.to_upoly(G)?)?;
        let ring = PolyRing::new(k.clone());
        let mut sys = specialize_g(c, &k)?;
        for e in [&a, &b] {
            sys = ring.gcd(&sys, &specialize_g(e, &k)?);
        }
        for d in [&m.image_f.1, &m.image_g.1] {
            let d = specialize_g(d, &k)?;
            loop {
                let common = ring.gcd(&sys, &d);
                if common.deg() == 0 || d.is_zero() {
                    break;
                }
                sys = ring.div_exact(&sys, &common).expect("gcd divides");
            }
            if d.is_zero() {
                sys = ring.one();
            }
        }
        let sys = ring.monic(&sys);
        if sys.deg() == 0 {
            continue;
        }
        let count = sys.deg() * k.degree();
        components.push(FixedComponent { g_poly: normalize(&m_g), field: k, f_poly: sys, count });
    }
    Ok(FixedLocus { components })
}

/// A relation `Phi(X, Y)` with `Phi(u, v) = 0` on the curve.
#[derive(Clone, Debug, Serialize)]
pub struct ModularPolynomial {
    #[serde(serialize_with = "ser_poly")]
    pub poly: Poly,
    pub bidegree: (usize, usize),
    pub primes_used: usize,
    pub certified: bool,
}

fn ser_poly<S: serde::Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&p.to_string())
}

impl ModularPolynomial {
    /// `Some(1)` if `Phi(Y, X) = Phi(X, Y)`, `Some(-1)` if it is `-Phi`.
    pub fn symmetry_sign(&self) -> Option<i8> {
        let swapped = self.poly.compose(&[(X, Poly::var(Y)), (Y, Poly::var(X))]);
        if swapped == self.poly {
            Some(1)
        } else if swapped == -&self.poly {
            Some(-1)
        } else {
            None
        }
    }

    pub fn diagonal(&self) -> Poly {
        self.poly.substitute(Y, &Poly::var(X))
    }
}

struct ModFn {
    num: [crate::finite_field::FpPoly; 3],
    den: crate::finite_field::FpPoly,
}

impl ModFn {
    fn new(k: &PrimeField, a: &CurveFn) -> Self {
        ModFn { num: a.numerators().clone().map(|z| k.reduce_int(&z)), den: k.reduce_int(a.denominator()) }
    }

    fn eval(&self, k: &PrimeField, f0: u64, g0: u64) -> Option<u64> {
        let r = k.ring();
        let d = r.eval(&self.den, &g0);
        let inv = k.inv(&d)?;
        let mut acc = 0;
        for n in self.num.iter().rev() {
            acc = k.add(&k.mul(&acc, &f0), &r.eval(n, &g0));
        }
        Some(k.mul(&acc, &inv))
    }
}

/// Kernel of a matrix mod p, if it is one-dimensional: the free column
/// and the vector normalized to 1 there.
fn kernel_line(k: &PrimeField, mut rows: Vec<Vec<u64>>, ncols: usize) -> Option<(usize, Vec<u64>)> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i][col] != 0) else { continue };
        rows.swap(r, sel);
        let inv = k.inv(&rows[r][col]).unwrap();
        for x in rows[r].iter_mut() {
            *x = k.mul(x, &inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row[col] != 0 {
                let c = row[col];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = k.sub(x, &k.mul(&c, y));
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    if free.len() != 1 {
        return None;
    }
    let j = free[0];
    let mut v = vec![0; ncols];
    v[j] = 1;
    for (i, &pc) in pivots.iter().enumerate() {
        v[pc] = k.neg(&rows[i][j]);
    }
    Some((j, v))
}

fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound || !r1.gcd(&s1).is_one() {
        return None;
    }
    Some(Rational::new(r1, s1))
}

/// Primes just below `2^61`, descending.
fn large_primes() -> impl Iterator<Item = u64> {
    (0..).map(|i| (1u64 << 61) - 1 - 2 * i).filter(|&n| is_prime(n))
}

struct Sampler {
    field: PrimeField,
    fiber: Vec<crate::finite_field::FpPoly>,
    u: ModFn,
    v: ModFn,
}

impl Sampler {
    fn new(curve: &PlaneCurve, u: &CurveFn, v: &CurveFn, p: u64) -> Option<Self> {
        let field = PrimeField::new(p).ok()?;
        let fiber = curve
            .poly()
            .coefficients_in(F)
            .iter()
            .map(|c| field.reduce(&c.to_upoly(G).ok()?))
            .collect::<Option<Vec<_>>>()?;
        Some(Sampler { field, fiber, u: ModFn::new(&field, u), v: ModFn::new(&field, v) })
    }

    /// Values `(u(P), v(P))` at `n` random points of the curve mod p.
    fn values<R: Rng>(&self, n: usize, rng: &mut R) -> Result<Vec<(u64, u64)>> {
        let k = &self.field;
        let r = k.ring();
        let mut out = Vec::with_capacity(n);
        let mut attempts = 0;
        while out.len() < n {
            attempts += 1;
            if attempts > 50 * n + 100 {
                return Err(Error::Precondition(format!("too few usable points mod {}", k.p())));
            }
            let g0 = rng.gen_range(0..k.p());
            let cubic = r.from_coeffs(self.fiber.iter().map(|c| r.eval(c, &g0)).collect());
            if cubic.deg() == 0 {
                continue;
            }
            for f0 in roots_mod_p(k, &cubic, rng)? {
                if let (Some(a), Some(b)) = (self.u.eval(k, f0, g0), self.v.eval(k, f0, g0)) {
                    out.push((a, b));
                }
            }
        }
        out.truncate(n);
        Ok(out)
    }
}

fn design_matrix(k: &PrimeField, pts: &[(u64, u64)], bx: usize, by: usize) -> Vec<Vec<u64>> {
    pts.iter()
        .map(|&(a, b)| {
            let ap: Vec<u64> = (0..=bx).map(|i| k.pow(&a, i as u64)).collect();
            let bp: Vec<u64> = (0..=by).map(|j| k.pow(&b, j as u64)).collect();
            let mut row = Vec::with_capacity((bx + 1) * (by + 1));
            for x in &ap {
                for y in &bp {
                    row.push(k.mul(x, y));
                }
            }
            row
        })
        .collect()
}

const EXTRA_ROWS: usize = 12;
const MAX_PRIMES: usize = 64;

/// The minimal relation between `u` and `v`, with `deg_X <= max.0` and
/// `deg_Y <= max.1`.
///
/// The bidegree is found as the smallest box with a nonzero kernel of the
/// evaluation matrix at random curve points mod a large prime. The kernel
/// line is then computed mod further primes, combined by CRT, rationally
/// reconstructed, and accepted once it is stable and `Phi(u, v)` reduces
/// to zero exactly in the function field.
pub fn algebraic_relation(
    ff: &FunctionField,
    u: &CurveFn,
    v: &CurveFn,
    max: (usize, usize),
    seed: u64,
) -> Result<ModularPolynomial> {
    if u.as_constant().is_some() || v.as_constant().is_some() {
        return Err(Error::Precondition("constant function".into()));
    }
    let curve = ff.curve();
    let mut primes = large_primes();
    let (sampler, p0) = loop {
        let p = primes.next().unwrap();
        if let Some(s) = Sampler::new(curve, u, v, p) {
            break (s, p);
        }
    };
    let mut rng = substream(seed, p0);
    let pts = sampler.values((max.0 + 1) * (max.1 + 1) + EXTRA_ROWS, &mut rng)?;
    let mut shape = None;
    'search: for total in 1..=max.0 + max.1 {
        for bx in 0..=total.min(max.0) {
            let by = total - bx;
            if by > max.1 {
                continue;
            }
            let n = (bx + 1) * (by + 1);
            let m = design_matrix(&sampler.field, &pts[..n + EXTRA_ROWS], bx, by);
            if let Some(line) = kernel_line(&sampler.field, m, n) {
                shape = Some((bx, by, line));
                break 'search;
            }
        }
    }
    let (bx, by, (free, first)) = shape.ok_or_else(|| Error::Elimination("no relation within the degree bound".into()))?;
    let n = (bx + 1) * (by + 1);
    let mut residues: Vec<BigInt> = first.iter().map(|&c| BigInt::from(c)).collect();
    let mut modulus = BigInt::from(p0);
    let mut previous: Option<Vec<Rational>> = None;
    let mut used = 1;
    for p in primes {
        let Some(s) = Sampler::new(curve, u, v, p) else { continue };
        let mut rng = substream(seed, p);
        let pts = s.values(n + EXTRA_ROWS, &mut rng)?;
        let Some((j, line)) = kernel_line(&s.field, design_matrix(&s.field, &pts, bx, by), n) else { continue };
        if j != free {
            continue;
        }
        let pb = BigInt::from(p);
        let minv = BigInt::from(s.field.inv(&s.field.from_bigint(&modulus)).unwrap());
        for (r, &c) in residues.iter_mut().zip(&line) {
            let delta = ((BigInt::from(c) - &*r) * &minv).mod_floor(&pb);
            *r += &modulus * delta;
        }
        modulus *= &pb;
        used += 1;
        let recon: Option<Vec<Rational>> = residues.iter().map(|r| rational_reconstruct(r, &modulus)).collect();
        if let Some(recon) = recon {
            if previous.as_ref() == Some(&recon) {
                let poly = relation_poly(&recon, by);
                if ff.relation_vanishes(&poly, X, Y, u, v)? {
                    return Ok(ModularPolynomial { poly: normalize(&poly), bidegree: (bx, by), primes_used: used, certified: true });
                }
            }
            previous = Some(recon);
        }
        if used >= MAX_PRIMES {
            break;
        }
    }
    Err(Error::Elimination("relation did not stabilize".into()))
}

fn relation_poly(coeffs: &[Rational], by: usize) -> Poly {
    let terms = coeffs.iter().enumerate().map(|(idx, c)| (vec![(idx / (by + 1)) as u32, (idx % (by + 1)) as u32], c.clone()));
    Poly::from_terms(&[X, Y], terms).expect("two variables")
}

/// Square-free integer representing the class of `r` in `Q* / (Q*)^2`.
/// Trial division runs up to `10^6`; a cofactor beyond that is assumed
/// square-free unless it is a perfect square.
pub fn square_class(r: &Rational) -> BigInt {
    let mut n = r.numer() * r.denom();
    let sign = if n.is_negative() { -1 } else { 1 };
    n = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2);
    let limit = BigInt::from(1_000_000);
    while &d * &d <= n && d <= limit {
        let mut e = 0;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    let s = n.sqrt();
    if &s * &s != n {
        out *= n;
    }
    out * sign
}

/// `n = prod p^e` by trial division; `None` if a factor exceeds `limit`.
pub fn small_factorization(n: &BigInt, limit: u64) -> Option<Vec<(u64, u32)>> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut p = 2u64;
    while !n.is_one() && p <= limit {
        let bp = BigInt::from(p);
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += 1;
    }
    n.is_one().then_some(out)
}

fn format_factorization(fs: &[(u64, u32)]) -> String {
    if fs.is_empty() {
        return "1".into();
    }
    fs.iter().map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{p}^{e}") }).collect::<Vec<_>>().join("*")
}

/// Compares the factorization of `Phi(X, X)` with `expected` (up to a
/// constant) and its rational roots with `expected_roots`.
pub fn diagonal_cm_report(
    phi: &ModularPolynomial,
    expected: &[(Poly, u32)],
    expected_roots: &[(Rational, u32)],
) -> Result<Certificate> {
    const CHECK: &str = "diagonal-cm";
    let diag = phi.diagonal();
    let fac = factor_over_q(&diag)?;
    let mut found: BTreeMap<String, u32> = BTreeMap::new();
    for (p, m) in &fac.factors {
        *found.entry(normalize(&p.rename(&fac.var, X)).to_string()).or_default() += m;
    }
    let mut want: BTreeMap<String, u32> = BTreeMap::new();
    for (p, m) in expected {
        let v = p.univariate_var()?.unwrap_or_else(|| X.into());
        *want.entry(normalize(&p.rename(&v, X)).to_string()).or_default() += m;
    }
    let roots = rational_roots(&diag)?;
    let roots_ok = roots.len() == expected_roots.len()
        && roots.iter().all(|(r, m)| expected_roots.iter().any(|(e, k)| e == r && k == m));
    let factors_ok = found == want;
    let ok = factors_ok && roots_ok;
    let root_witness: Vec<BTreeMap<&str, String>> = roots
        .iter()
        .map(|(r, m)| {
            let mut e = BTreeMap::new();
            e.insert("value", format_rational(r));
            e.insert("multiplicity", m.to_string());
            let num = small_factorization(r.numer(), 10_000).map(|f| format_factorization(&f));
            let den = small_factorization(r.denom(), 10_000).map(|f| format_factorization(&f));
            if let (Some(n), Some(d)) = (num, den) {
                let sign = if r.is_negative() { "-" } else { "" };
                e.insert("factored", format!("{sign}{n}/{d}"));
            }
            e
        })
        .collect();
    let reason = match (factors_ok, roots_ok) {
        (true, true) => "diagonal factors and rational roots match",
        (false, _) => "diagonal factorization differs",
        (true, false) => "rational roots differ",
    };
    Ok(Certificate::verdict(CHECK, ok, reason)
        .with("factors", &found)
        .with("expected", &want)
        .with("rational_roots", root_witness))
}

/// Shape of `F(t0, x)` over `Q`.
#[derive(Clone, Debug, Serialize)]
pub struct FiberFactorization {
    pub t0: String,
    pub degrees: Vec<usize>,
    pub factors: Vec<String>,
    /// Square classes of the discriminants of the quadratic factors.
    pub quadratic_classes: Vec<String>,
}

pub fn fiber_factorization(fiber: &FiberPolynomial, t0: &Rational) -> Result<FiberFactorization> {
    let s = fiber.specialize(t0);
    let fac = factor_over_q(&Poly::from_upoly(crate::cover::X, &s))?;
    let mut parts: Vec<(usize, Poly)> = Vec::new();
    for (p, m) in &fac.factors {
        for _ in 0..*m {
            parts.push((p.degree_in(&fac.var), p.clone()));
        }
    }
    parts.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.to_string().cmp(&b.1.to_string())));
    let quadratic_classes = parts
        .iter()
        .filter(|(d, _)| *d == 2)
        .map(|(_, q)| {
            let c = q.coefficients_in(&fac.var).into_iter().map(|c| c.constant_value().unwrap()).collect::<Vec<_>>();
            let disc = &c[1] * &c[1] - Rational::from_integer(4.into()) * &c[2] * &c[0];
            square_class(&disc).to_string()
        })
        .collect();
    Ok(FiberFactorization {
        t0: format_rational(t0),
        degrees: parts.iter().map(|(d, _)| *d).collect(),
        factors: parts.iter().map(|(_, p)| normalize(p).to_string()).collect(),
        quadratic_classes,
    })
}

/// Checks the factor degrees of `F(t0, x)` and, if requested, that a
/// quadratic factor has discriminant in `class * (Q*)^2`.
pub fn cm_fiber_report(
    fiber: &FiberPolynomial,
    t0: &Rational,
    degrees: &[usize],
    quadratic_class: Option<&str>,
) -> Result<Certificate> {
    let check = format!("cm-fiber {}", format_rational(t0));
    let r = fiber_factorization(fiber, t0)?;
    let mut want = degrees.to_vec();
    want.sort_unstable();
    let degrees_ok = r.degrees == want;
    let class_ok = quadratic_class.is_none_or(|c| r.quadratic_classes.iter().any(|q| q == c));
    let ok = degrees_ok && class_ok;
    let reason = if ok {
        "fiber factorization has the expected shape".to_string()
    } else if !degrees_ok {
        format!("factor degrees {:?}, expected {:?}", r.degrees, want)
    } else {
        "no quadratic factor with the expected discriminant class".to_string()
    };
    Ok(Certificate::verdict(&check, ok, reason).with("factorization", &r))
}
