//! Weierstrass models of pointed plane cubics.

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use serde::Serialize;

use crate::certificate::Certificate;
use crate::curve::{AffinePoint, FunctionField, PlaneCurve, QuotientField, F, G};
use crate::exact::{format_rational, qx, rational_roots_upoly, Field, Poly, Rational, Ring, UPoly};
use crate::{Error, Result};

type QPoly = UPoly<Rational>;

fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    pub a: [Rational; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Invariants {
    #[serde(serialize_with = "ser_rat")]
    pub b2: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub b4: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub b6: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub b8: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub c4: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub c6: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub disc: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub j: Rational,
}

fn ser_rat<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// `x = u^2 x' + r`, `y = u^3 y' + s u^2 x' + t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsoWitness {
    #[serde(serialize_with = "ser_rat")]
    pub u: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub r: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub s: Rational,
    #[serde(serialize_with = "ser_rat")]
    pub t: Rational,
}

fn b_invariants(a: &[Rational; 5]) -> [Rational; 4] {
    let [a1, a2, a3, a4, a6] = a;
    let b2 = a1 * a1 + q(4) * a2;
    let b4 = q(2) * a4 + a1 * a3;
    let b6 = a3 * a3 + q(4) * a6;
    let b8 = a1 * a1 * a6 + q(4) * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
    [b2, b4, b6, b8]
}

impl WeierstrassCurve {
    pub fn new(a: [Rational; 5]) -> Result<Self> {
        let w = WeierstrassCurve { a };
        w.invariants()?;
        Ok(w)
    }

    pub fn from_ints(a: [i64; 5]) -> Result<Self> {
        Self::new(a.map(q))
    }

    pub fn invariants(&self) -> Result<Invariants> {
        invariants(self)
    }

    /// Model obtained by the substitution `w`.
    pub fn transform(&self, w: &IsoWitness) -> WeierstrassCurve {
        let [a1, a2, a3, a4, a6] = &self.a;
        let IsoWitness { u, r, s, t } = w;
        let n1 = a1 + q(2) * s;
        let n2 = a2 - s * a1 + q(3) * r - s * s;
        let n3 = a3 + r * a1 + q(2) * t;
        let n4 = a4 - s * a3 + q(2) * r * a2 - (t + r * s) * a1 + q(3) * r * r - q(2) * s * t;
        let n6 = a6 + r * a4 + r * r * a2 + r * r * r - t * a3 - t * t - r * t * a1;
        let u2 = u * u;
        let u3 = &u2 * u;
        WeierstrassCurve { a: [n1 / u, n2 / &u2, n3 / &u3, n4 / (&u2 * &u2), n6 / (&u3 * &u3)] }
    }

    /// `lhs - rhs` of the equation at `(x, y)`.
    pub fn equation_at<R: Ring>(&self, ring: &R, x: &R::Elem, y: &R::Elem, embed: impl Fn(&Rational) -> R::Elem) -> R::Elem {
        let [a1, a2, a3, a4, a6] = self.a.each_ref().map(embed);
        let lhs = ring.add(&ring.mul(y, y), &ring.add(&ring.mul(&a1, &ring.mul(x, y)), &ring.mul(&a3, y)));
        let x2 = ring.mul(x, x);
        let rhs = ring.add(
            &ring.add(&ring.mul(&x2, x), &ring.mul(&a2, &x2)),
            &ring.add(&ring.mul(&a4, x), &a6),
        );
        ring.sub(&lhs, &rhs)
    }

    /// `4x^3 + b2 x^2 + 2 b4 x + b6`.
    pub fn two_division_cubic(&self) -> QPoly {
        let [b2, b4, b6, _] = b_invariants(&self.a);
        qx().from_coeffs(vec![b6, q(2) * b4, b2, q(4)])
    }

    pub fn format(&self) -> String {
        format!("[{}]", self.a.iter().map(format_rational).collect::<Vec<_>>().join(", "))
    }
}

/// Standard `b`, `c`, discriminant and `j`; checks `1728 disc = c4^3 - c6^2`.
pub fn invariants(w: &WeierstrassCurve) -> Result<Invariants> {
    let [b2, b4, b6, b8] = b_invariants(&w.a);
    let c4 = &b2 * &b2 - q(24) * &b4;
    let c6 = -(&b2 * &b2 * &b2) + q(36) * &b2 * &b4 - q(216) * &b6;
    let disc = -(&b2 * &b2 * &b8) - q(8) * &b4 * &b4 * &b4 - q(27) * &b6 * &b6 + q(9) * &b2 * &b4 * &b6;
    if q(1728) * &disc != &c4 * &c4 * &c4 - &c6 * &c6 {
        return Err(Error::Unexpected("1728 disc != c4^3 - c6^2".into()));
    }
    if disc.is_zero() {
        return Err(Error::Singular(format!("discriminant of {} vanishes", w.format())));
    }
    let j = &c4 * &c4 * &c4 / &disc;
    Ok(Invariants { b2, b4, b6, b8, c4, c6, disc, j })
}

fn rational_kth_roots(k: usize, value: &Rational) -> Result<Vec<Rational>> {
    let mut c = vec![Rational::zero(); k + 1];
    c[0] = -value.clone();
    c[k] = Rational::one();
    Ok(rational_roots_upoly(&qx().from_coeffs(c))?.into_iter().map(|(r, _)| r).collect())
}

/// A change of variables taking `src` to `dst`, if one exists over `Q`.
pub fn is_q_isomorphic(src: &WeierstrassCurve, dst: &WeierstrassCurve) -> Result<Option<IsoWitness>> {
    let a = invariants(src)?;
    let b = invariants(dst)?;
    if a.j != b.j {
        return Ok(None);
    }
    let us = if !a.c4.is_zero() && !a.c6.is_zero() {
        rational_kth_roots(2, &(&a.c6 * &b.c4 / (&b.c6 * &a.c4)))?
    } else if a.c6.is_zero() {
        rational_kth_roots(4, &(&a.c4 / &b.c4))?
    } else {
        rational_kth_roots(6, &(&a.c6 / &b.c6))?
    };
    let [a1, a2, a3, _, _] = &src.a;
    let [d1, d2, d3, _, _] = &dst.a;
    for u in us {
        let s = (&u * d1 - a1) / q(2);
        let r = (&u * &u * d2 - a2 + &s * a1 + &s * &s) / q(3);
        let t = (&u * &u * &u * d3 - a3 - &r * a1) / q(2);
        let w = IsoWitness { u, r, s, t };
        if src.transform(&w) == *dst {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

fn int_into<R: Ring>(ring: &R, n: &BigInt) -> R::Elem {
    let (sign, digits) = n.to_u32_digits();
    let base = ring.from_i64(1i64 << 32);
    let mut acc = ring.zero();
    for d in digits.iter().rev() {
        acc = ring.add(&ring.mul(&acc, &base), &ring.from_i64(*d as i64));
    }
    if sign == Sign::Minus {
        ring.neg(&acc)
    } else {
        acc
    }
}

/// A rational constant in any field of characteristic zero.
pub fn embed_rational<R: Field>(ring: &R, r: &Rational) -> R::Elem {
    let n = int_into(ring, r.numer());
    let d = int_into(ring, r.denom());
    ring.div(&n, &d).expect("nonzero denominator")
}

fn eval_upoly<R: Field>(ring: &R, p: &QPoly, x: &R::Elem) -> R::Elem {
    p.coeffs().iter().rev().fold(ring.zero(), |acc, c| ring.add(&ring.mul(&acc, x), &embed_rational(ring, c)))
}

/// Nagell's reduction of a cubic with a rational point `O`.
///
/// Lines through `O` with slope `l` cut the curve in `O` and the roots of
/// `a(l) s^2 + b(l) s + c(l)`, so the curve is birational to
/// `w^2 = D(l) = b^2 - 4ac` with `w = 2 a s + b`. The tangent slope `l_T`
/// has `D(l_T) = b(l_T)^2`; it is zero exactly when `O` is a flex.
#[derive(Clone, Debug)]
pub struct NagellReduction {
    pub point: (Rational, Rational),
    pub flex: bool,
    /// Lines are parametrized by `df/dg` instead of `dg/df`.
    pub swapped: bool,
    pub lambda_t: Rational,
    a: QPoly,
    b: QPoly,
    /// Taylor coefficients of `D` at `l_T`.
    e: [Rational; 5],
    /// `b(l_T)`, zero for a flex.
    q0: Rational,
    pub model: WeierstrassCurve,
}

const S: &str = "s";
const L: &str = "l";

pub fn nagell_reduce(curve: &PlaneCurve, point: (Rational, Rational)) -> Result<NagellReduction> {
    let c = curve.poly();
    let (of, og) = point.clone();
    if !c.eval_rational(&[(F, of.clone()), (G, og.clone())])?.is_zero() {
        return Err(Error::PointNotOnCurve);
    }
    if !curve.is_smooth()?.smooth {
        return Err(Error::Singular("curve has a singular point".into()));
    }
    let at = [(F, of.clone()), (G, og.clone())];
    let cf = c.derivative(F).eval_rational(&at)?;
    let cg = c.derivative(G).eval_rational(&at)?;
    let swapped = cg.is_zero();
    let (sv, lv) = (Poly::var(S), Poly::var(L));
    let line = &sv * &lv;
    let (fsub, gsub, lambda_t) = if swapped {
        (&Poly::constant(of.clone()) + &line, &Poly::constant(og.clone()) + &sv, -&cg / &cf)
    } else {
        (&Poly::constant(of.clone()) + &sv, &Poly::constant(og.clone()) + &line, -&cf / &cg)
    };
    let restricted = c.compose(&[(F, fsub), (G, gsub)]);
    let parts = restricted.coefficients_in(S);
    let coeff = |k: usize| -> Result<QPoly> {
        parts.get(k).map(|p| p.to_upoly(L)).unwrap_or_else(|| Ok(qx().zero()))
    };
    let (cc, b, a) = (coeff(1)?, coeff(2)?, coeff(3)?);
    let qr = qx();
    let d = qr.sub(&qr.mul(&b, &b), &qr.scale(&qr.mul(&a, &cc), &q(4)));
    let shifted = qr.compose(&d, &qr.from_coeffs(vec![lambda_t.clone(), q(1)]));
    let e: [Rational; 5] = std::array::from_fn(|k| shifted.coeff(k).cloned().unwrap_or_else(Rational::zero));
    let q0 = qr.eval(&b, &lambda_t);
    let flex = q0.is_zero();
    let model = if flex {
        if e[1].is_zero() {
            return Err(Error::Singular("tangent quartic has a double root".into()));
        }
        WeierstrassCurve::new([q(0), e[2].clone(), q(0), &e[3] * &e[1], &e[4] * &e[1] * &e[1]])?
    } else {
        let a1 = &e[1] / &q0;
        let a2 = &e[2] - &e[1] * &e[1] / (q(4) * &q0 * &q0);
        let a3 = q(2) * &q0 * &e[3];
        let a4 = -(q(4) * &q0 * &q0 * &e[4]);
        let a6 = &a2 * &a4;
        WeierstrassCurve::new([a1, a2, a3, a4, a6])?
    };
    Ok(NagellReduction { point, flex, swapped, lambda_t, a, b, e, q0, model })
}

impl NagellReduction {
    /// Image of `(f, g)` on the model, in any field of characteristic
    /// zero; `None` where the map is not defined by these formulas.
    pub fn forward<R: Field>(&self, ring: &R, f: &R::Elem, g: &R::Elem) -> Option<(R::Elem, R::Elem)> {
        let k = |r: &Rational| embed_rational(ring, r);
        let df = ring.sub(f, &k(&self.point.0));
        let dg = ring.sub(g, &k(&self.point.1));
        let (s, rise) = if self.swapped { (dg, df) } else { (df, dg) };
        let lam = ring.div(&rise, &s)?;
        let w = ring.add(&ring.mul(&ring.mul(&k(&q(2)), &eval_upoly(ring, &self.a, &lam)), &s), &eval_upoly(ring, &self.b, &lam));
        let u = ring.sub(&lam, &k(&self.lambda_t));
        if self.flex {
            let x = ring.inv(&u)?;
            let y = ring.mul(&w, &ring.mul(&x, &x));
            let c3 = k(&self.e[1]);
            Some((ring.mul(&c3, &x), ring.mul(&c3, &y)))
        } else {
            let q0 = k(&self.q0);
            let two_q = ring.mul(&k(&q(2)), &q0);
            let d = k(&self.e[1]);
            let c = k(&self.e[2]);
            let u2 = ring.mul(&u, &u);
            let vq = ring.add(&w, &q0);
            let x = ring.div(&ring.add(&ring.mul(&two_q, &vq), &ring.mul(&d, &u)), &u2)?;
            let d2_over = ring.div(&ring.mul(&d, &d), &two_q)?;
            let num = ring.add(
                &ring.mul(&ring.mul(&two_q, &two_q), &vq),
                &ring.sub(&ring.mul(&two_q, &ring.add(&ring.mul(&d, &u), &ring.mul(&c, &u2))), &ring.mul(&d2_over, &u2)),
            );
            let y = ring.div(&num, &ring.mul(&u2, &u))?;
            Some((x, y))
        }
    }

    /// Inverse of [`Self::forward`].
    pub fn inverse<R: Field>(&self, ring: &R, x: &R::Elem, y: &R::Elem) -> Option<(R::Elem, R::Elem)> {
        let k = |r: &Rational| embed_rational(ring, r);
        let (u, w) = if self.flex {
            let c3 = k(&self.e[1]);
            let xx = ring.div(x, &c3)?;
            let yy = ring.div(y, &c3)?;
            let u = ring.inv(&xx)?;
            (u, ring.div(&yy, &ring.mul(&xx, &xx))?)
        } else {
            let q0 = k(&self.q0);
            let two_q = ring.mul(&k(&q(2)), &q0);
            let d = k(&self.e[1]);
            let c = k(&self.e[2]);
            let d2_over = ring.div(&ring.mul(&d, &d), &two_q)?;
            let u = ring.div(&ring.sub(&ring.mul(&two_q, &ring.add(x, &c)), &d2_over), y)?;
            let v = ring.sub(&ring.div(&ring.mul(&u, &ring.sub(&ring.mul(&u, x), &d)), &two_q)?, &q0);
            (u, v)
        };
        let lam = ring.add(&u, &k(&self.lambda_t));
        let a = eval_upoly(ring, &self.a, &lam);
        let s = ring.div(&ring.sub(&w, &eval_upoly(ring, &self.b, &lam)), &ring.mul(&k(&q(2)), &a))?;
        let rise = ring.mul(&lam, &s);
        let (df, dg) = if self.swapped { (rise, s) } else { (s, rise) };
        Some((ring.add(&df, &k(&self.point.0)), ring.add(&dg, &k(&self.point.1))))
    }

    /// The forward map as functions on the curve, checked to satisfy the
    /// model's equation identically.
    pub fn verify_identically(&self, ff: &FunctionField) -> Result<bool> {
        let (x, y) = self.forward(ff, &ff.f(), &ff.g()).ok_or(Error::Pole)?;
        Ok(self.model.equation_at(ff, &x, &y, |r| ff.constant(r)).is_zero())
    }

    /// Round trip through the model at the given points.
    pub fn round_trip(&self, points: &[AffinePoint]) -> Result<usize> {
        let mut ok = 0;
        for p in points {
            let k = &p.field;
            let Some((x, y)) = self.forward(k, &p.f, &p.g) else { continue };
            if !k.is_zero(&self.model.equation_at(k, &x, &y, |r| k.embed(r))) {
                return Err(Error::Unexpected(format!("image of {} is off the model", p.describe())));
            }
            let (f, g) = self.inverse(k, &x, &y).ok_or(Error::Pole)?;
            if f != p.f || g != p.g {
                return Err(Error::Unexpected(format!("round trip moved {}", p.describe())));
            }
            ok += 1;
        }
        Ok(ok)
    }
}

/// Three sample points with `g = 1, 2, 3, ...` where the map is regular.
pub fn sample_points(curve: &PlaneCurve, red: &NagellReduction, n: usize) -> Result<Vec<AffinePoint>> {
    let mut out = Vec::new();
    for g0 in 1i64.. {
        if out.len() == n || g0 > 50 {
            break;
        }
        for p in curve.points_over_g(&q(g0))? {
            if red.forward(&p.field, &p.f, &p.g).is_some() {
                out.push(p);
                break;
            }
        }
    }
    Ok(out)
}

/// The model is isomorphic over `Q` to `target`, with an explicit witness.
pub fn weierstrass_check(curve: &PlaneCurve, point: (Rational, Rational), target: &WeierstrassCurve) -> Result<Certificate> {
    const CHECK: &str = "weierstrass";
    let red = nagell_reduce(curve, point)?;
    let ff = FunctionField::new(curve);
    let identically = red.verify_identically(&ff)?;
    let samples = sample_points(curve, &red, 3)?;
    let trips = red.round_trip(&samples)?;
    let iso = is_q_isomorphic(&red.model, target)?;
    let inv = invariants(&red.model)?;
    let ok = identically && trips == 3 && iso.is_some();
    let reason = if ok {
        "reduced model is isomorphic to the target"
    } else if iso.is_none() {
        "reduced model is not isomorphic to the target"
    } else {
        "birational map failed verification"
    };
    let mut cert = Certificate::verdict(CHECK, ok, reason)
        .with("model", red.model.format())
        .with("flex", red.flex)
        .with("invariants", &inv)
        .with("target_invariants", invariants(target)?)
        .with("map_on_curve", identically)
        .with("round_trips", trips);
    if let Some(w) = iso {
        cert = cert.with("isomorphism", w);
    }
    Ok(cert)
}

/// The zeros of `f` map to points of order 2 whose `x`-coordinates are the
/// roots of the 2-division cubic.
pub fn two_torsion_check(curve: &PlaneCurve, point: (Rational, Rational), target: &WeierstrassCurve) -> Result<Certificate> {
    const CHECK: &str = "two-torsion";
    let red = nagell_reduce(curve, point)?;
    let model = match is_q_isomorphic(&red.model, target)? {
        Some(_) => target.clone(),
        None => red.model.clone(),
    };
    let iso = is_q_isomorphic(&red.model, &model)?.ok_or_else(|| Error::Unexpected("model".into()))?;
    let zeros = curve.poly().eval(F, &Rational::zero()).to_upoly(G)?;
    let k = QuotientField::new(&zeros)?;
    let (x, y) = red.forward(&k, &k.zero(), &k.generator()).ok_or(Error::Pole)?;
    // move to the chosen model: x = u^2 x' + r, y = u^3 y' + s u^2 x' + t
    let e = |r: &Rational| k.embed(r);
    let u2 = &iso.u * &iso.u;
    let xp = k.mul(&k.sub(&x, &e(&iso.r)), &e(&(Rational::one() / &u2)));
    let yp = k.mul(
        &k.sub(&k.sub(&y, &k.mul(&e(&(&iso.s * &u2)), &xp)), &e(&iso.t)),
        &e(&(Rational::one() / (&u2 * &iso.u))),
    );
    let on_curve = k.is_zero(&model.equation_at(&k, &xp, &yp, e));
    let [a1, _, a3, _, _] = &model.a;
    let order_two = k.is_zero(&k.add(&k.add(&k.mul(&e(&q(2)), &yp), &k.mul(&e(a1), &xp)), &e(a3)));
    let cubic = model.two_division_cubic();
    let charpoly = k.char_poly(&xp);
    let roots_match = qx().monic(&cubic) == charpoly;
    let ok = on_curve && order_two && roots_match;
    Ok(Certificate::verdict(
        CHECK,
        ok,
        if ok { "the zeros of f map to the three points of order 2" } else { "zeros of f are not 2-torsion" },
    )
    .with("field", Poly::from_upoly("z", k.modulus()).to_string())
    .with("x", k.format(&xp))
    .with("y", k.format(&yp))
    .with("x_char_poly", Poly::from_upoly("x", &charpoly).to_string())
    .with("two_division", Poly::from_upoly("x", &cubic).to_string())
    .with("model", model.format()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::Corpus;
    use crate::exact::rat;

    fn target() -> WeierstrassCurve {
        WeierstrassCurve::from_ints([1, -1, 1, -65773, -6478507]).unwrap()
    }

    #[test]
    fn standard_invariants() {
        let w = WeierstrassCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        let i = w.invariants().unwrap();
        assert_eq!((i.c4, i.c6, i.j), (q(48), q(0), q(1728)));
        let i = target().invariants().unwrap();
        assert_eq!((i.b2, i.b4, i.b6), (q(-3), q(-131545), q(-25914027)));
        assert_eq!(i.disc, q(-13364932132864));
        assert!(WeierstrassCurve::from_ints([0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn isomorphism_witness() {
        let w = IsoWitness { u: rat(2, 3), r: rat(1, 2), s: q(-1), t: rat(5, 7) };
        let t = target().transform(&w);
        let found = is_q_isomorphic(&target(), &t).unwrap().unwrap();
        assert_eq!(target().transform(&found), t);
        let other = WeierstrassCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert!(is_q_isomorphic(&target(), &other).unwrap().is_none());
        let twist = WeierstrassCurve::from_ints([0, 0, 0, -16, 0]).unwrap();
        let base = WeierstrassCurve::from_ints([0, 0, 0, -1, 0]).unwrap();
        assert!(is_q_isomorphic(&base, &twist).unwrap().is_some());
        let twist3 = WeierstrassCurve::from_ints([0, 0, 0, -9, 0]).unwrap();
        assert!(is_q_isomorphic(&base, &twist3).unwrap().is_none());
    }

    #[test]
    fn corpus_reduction() {
        let c = Corpus::builtin();
        let curve = c.curve().unwrap();
        let red = nagell_reduce(&curve, (rat(16, 21), q(0))).unwrap();
        assert!(red.flex);
        assert_eq!(red.lambda_t, rat(12, 17));
        assert_eq!(red.model.invariants().unwrap().j, rat(-38575685889, 16384));
        let cert = weierstrass_check(&curve, (rat(16, 21), q(0)), &target()).unwrap();
        assert!(cert.passed(), "{}", cert.stable_json());
        let cert = two_torsion_check(&curve, (rat(16, 21), q(0)), &target()).unwrap();
        assert!(cert.passed(), "{}", cert.stable_json());
    }

    #[test]
    fn point_must_lie_on_curve() {
        let curve = Corpus::builtin().curve().unwrap();
        assert!(matches!(nagell_reduce(&curve, (q(0), q(0))), Err(Error::PointNotOnCurve)));
    }

    fn j0_curve() -> PlaneCurve {
        let f = Poly::var(F);
        let g = Poly::var(G);
        PlaneCurve::new(&(&f.pow(3) + &Poly::one()) - &g.pow(2)).unwrap()
    }

    #[test]
    fn flex_on_j_zero_curve() {
        let curve = j0_curve();
        let red = nagell_reduce(&curve, (q(0), q(1))).unwrap();
        assert!(red.flex);
        assert!(red.model.invariants().unwrap().c4.is_zero());
        assert!(red.verify_identically(&FunctionField::new(&curve)).unwrap());
    }

    #[test]
    fn non_flex_point() {
        let curve = j0_curve();
        let red = nagell_reduce(&curve, (q(2), q(3))).unwrap();
        assert!(!red.flex);
        let ff = FunctionField::new(&curve);
        assert!(red.verify_identically(&ff).unwrap());
        let pts = sample_points(&curve, &red, 3).unwrap();
        assert_eq!(red.round_trip(&pts).unwrap(), 3);
        let base = WeierstrassCurve::from_ints([0, 0, 0, 0, 1]).unwrap();
        assert_eq!(red.model.invariants().unwrap().j, q(0));
        assert!(is_q_isomorphic(&red.model, &base).unwrap().is_some());
    }

    #[test]
    fn vertical_tangent() {
        // at (-1, 0) the tangent to g^2 = f^3 + 1 is vertical
        let curve = j0_curve();
        let red = nagell_reduce(&curve, (q(-1), q(0))).unwrap();
        assert!(red.swapped);
        assert!(red.verify_identically(&FunctionField::new(&curve)).unwrap());
    }
}
