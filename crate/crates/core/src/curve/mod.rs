//! Plane curves, their points over number fields, and the function field
//! of a plane cubic monic in `f`.

mod function_field;
mod numfield;

pub use function_field::{CurveFn, FunctionField};
pub use numfield::QuotientField;

use serde::Serialize;

use crate::exact::zpoly::QPoly;
use crate::exact::{gcd, resultant, Poly, PolyRing, Rational, Ring};
use crate::qfactor::factor_over_q;
use crate::{Error, Result};

pub const F: &str = "f";
pub const G: &str = "g";

/// A plane curve `C(f, g) = 0` with `C` monic of degree 3 in `f`.
#[derive(Clone, Debug, PartialEq)]
pub struct PlaneCurve {
    poly: Poly,
}

impl PlaneCurve {
    pub fn new(poly: Poly) -> Result<Self> {
        if let Some(v) = poly.used_vars().into_iter().find(|v| v != F && v != G) {
            return Err(Error::InvalidCurve(format!("unexpected variable `{v}`")));
        }
        let c = poly.coefficients_in(F);
        if c.len() != 4 || c[3].constant_value().map(|x| x != Rational::from_integer(1.into())).unwrap_or(true) {
            return Err(Error::InvalidCurve("curve must be monic of degree 3 in f".into()));
        }
        Ok(PlaneCurve { poly })
    }

    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    /// `C(f, g0)` as a polynomial in `f`.
    pub fn fiber_over_g(&self, g0: &Rational) -> QPoly {
        self.poly.eval(G, g0).to_upoly(F).expect("only f remains")
    }

    /// `C(f0, g)` as a polynomial in `g`.
    pub fn fiber_over_f(&self, f0: &Rational) -> QPoly {
        self.poly.eval(F, f0).to_upoly(G).expect("only g remains")
    }

    pub fn contains_point(&self, p: &AffinePoint) -> Result<bool> {
        Ok(p.field.is_zero(&p.eval(&self.poly)?))
    }

    /// One point per irreducible factor of `C(f, g0)`, each over the field
    /// that factor defines.
    pub fn points_over_g(&self, g0: &Rational) -> Result<Vec<AffinePoint>> {
        let fib = Poly::from_upoly(F, &self.fiber_over_g(g0));
        let mut out = Vec::new();
        for (q, _) in factor_over_q(&fib)?.factors {
            let k = QuotientField::new_unchecked(&q.to_upoly(F)?);
            let theta = k.generator();
            let g = k.embed(g0);
            out.push(AffinePoint::new(k, theta, g));
        }
        Ok(out)
    }

    /// The points with `f = f0`, one per irreducible factor of `C(f0, g)`.
    pub fn points_over_f(&self, f0: &Rational) -> Result<Vec<AffinePoint>> {
        let fib = Poly::from_upoly(G, &self.fiber_over_f(f0));
        let mut out = Vec::new();
        for (q, _) in factor_over_q(&fib)?.factors {
            let k = QuotientField::new_unchecked(&q.to_upoly(G)?);
            let theta = k.generator();
            let f = k.embed(f0);
            out.push(AffinePoint::new(k, f, theta));
        }
        Ok(out)
    }

    pub fn is_smooth(&self) -> Result<SmoothnessWitness> {
        is_smooth_poly(&self.poly, F, G)
    }

    /// Genus of a smooth plane curve of this total degree.
    pub fn plane_genus(&self) -> usize {
        let d = self.poly.total_degree();
        (d - 1) * (d - 2) / 2
    }
}

/// A point with both coordinates in one number field.
#[derive(Clone, Debug, PartialEq)]
pub struct AffinePoint {
    pub field: QuotientField,
    pub f: QPoly,
    pub g: QPoly,
}

impl AffinePoint {
    pub fn new(field: QuotientField, f: QPoly, g: QPoly) -> Self {
        let f = field.reduce(&f);
        let g = field.reduce(&g);
        AffinePoint { field, f, g }
    }

    pub fn rational(f: Rational, g: Rational) -> Self {
        let k = QuotientField::rationals();
        AffinePoint { f: k.embed(&f), g: k.embed(&g), field: k }
    }

    /// Both coordinates when the point is rational.
    pub fn as_rational(&self) -> Option<(Rational, Rational)> {
        Some((self.field.to_rational(&self.f)?, self.field.to_rational(&self.g)?))
    }

    pub fn eval(&self, p: &Poly) -> Result<QPoly> {
        let k = &self.field;
        p.eval_in(k, &[(F, self.f.clone()), (G, self.g.clone())], |c| k.embed(c))
    }

    pub fn describe(&self) -> String {
        format!(
            "(f, g) = ({}, {}) over Q[z]/({})",
            self.field.format(&self.f),
            self.field.format(&self.g),
            Poly::from_upoly("z", self.field.modulus())
        )
    }
}

/// Evidence for or against smoothness of a plane curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SmoothnessWitness {
    pub smooth: bool,
    /// gcd of `res_x(C, C_x)` and `res_x(C, C_y)`, the candidate
    /// `y`-coordinates of affine singular points.
    pub candidate_polynomial: String,
    pub affine_singularities: Vec<String>,
    pub singular_at_infinity: bool,
    pub reason: String,
}

/// Smoothness of the projective closure of `C(x, y) = 0`.
pub fn is_smooth_poly(c: &Poly, x: &str, y: &str) -> Result<SmoothnessWitness> {
    let cx = c.derivative(x);
    let cy = c.derivative(y);
    let mut w = SmoothnessWitness {
        smooth: true,
        candidate_polynomial: String::new(),
        affine_singularities: Vec::new(),
        singular_at_infinity: false,
        reason: String::new(),
    };
    if c.degree_in(x) == 0 {
        return Err(Error::InvalidCurve(format!("curve does not involve `{x}`")));
    }
    let r1 = resultant(c, &cx, x)?;
    let r2 = if cy.is_zero() { Poly::zero() } else { resultant(c, &cy, x)? };
    if r1.is_zero() {
        w.smooth = false;
        w.reason = "C and its x-derivative share a component: repeated factor".into();
        return Ok(w);
    }
    let h = gcd(&r1, &r2)?;
    w.candidate_polynomial = h.to_string();
    if h.total_degree() > 0 {
        for (q, _) in factor_over_q(&h)?.factors {
            let k = QuotientField::new_unchecked(&q.to_upoly(y)?);
            let theta = k.generator();
            let ring = PolyRing::new(k.clone());
            let spec = |p: &Poly| -> Result<crate::exact::UPoly<QPoly>> {
                let cs: Result<Vec<QPoly>> = p
                    .coefficients_in(x)
                    .iter()
                    .map(|cf| cf.eval_in(&k, &[(y, theta.clone())], |r| k.embed(r)))
                    .collect();
                Ok(ring.from_coeffs(cs?))
            };
            let a = spec(c)?;
            if a.is_zero() {
                w.smooth = false;
                w.reason = format!("component {q} = 0: reducible curve");
                w.affine_singularities.push(format!("{y}: {q}"));
                continue;
            }
            let common = ring.gcd(&ring.gcd(&a, &spec(&cx)?), &spec(&cy)?);
            if common.deg() > 0 {
                w.smooth = false;
                w.affine_singularities.push(format!("{y} root of {q}, {x}-degree {}", common.deg()));
            }
        }
    }
    if singular_at_infinity(c, x, y)? {
        w.smooth = false;
        w.singular_at_infinity = true;
    }
    if w.smooth {
        w.reason = "no common zero of C, C_x, C_y in the affine plane or on the line at infinity".into();
    } else if w.reason.is_empty() {
        w.reason = if w.affine_singularities.is_empty() {
            "singular point on the line at infinity".into()
        } else {
            "affine singular point".into()
        };
    }
    Ok(w)
}

fn singular_at_infinity(c: &Poly, x: &str, y: &str) -> Result<bool> {
    let d = c.total_degree();
    let top = c.homogeneous_part(d);
    let next = if d > 0 { c.homogeneous_part(d - 1) } else { Poly::zero() };
    let parts = [top.clone(), top.derivative(x), top.derivative(y), next];
    // Chart y = 1.
    let mut acc: Option<Poly> = None;
    for p in &parts {
        let s = p.eval(y, &Rational::from_integer(1.into()));
        acc = Some(match acc {
            None => s,
            Some(a) => gcd(&a, &s)?,
        });
    }
    let chart = acc.unwrap();
    if chart.is_zero() || chart.total_degree() > 0 {
        return Ok(true);
    }
    // The point [1 : 0 : 0].
    let one = Rational::from_integer(1.into());
    let zero = Rational::from_integer(0.into());
    let at = |p: &Poly| p.eval_rational(&[(x, one.clone()), (y, zero.clone())]);
    for p in &parts {
        if at(p)? != zero {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn f() -> Poly {
        Poly::var(F)
    }
    fn g() -> Poly {
        Poly::var(G)
    }

    #[test]
    fn cusp_is_singular() {
        let c = &f().pow(2) - &g().pow(3);
        let w = is_smooth_poly(&c, F, G).unwrap();
        assert!(!w.smooth);
        assert!(!w.affine_singularities.is_empty());
    }

    #[test]
    fn reducible_is_singular() {
        let c = &(&(&f() * &g()) - &Poly::int(1)) * &(&f() - &g());
        assert!(!is_smooth_poly(&c, F, G).unwrap().smooth);
    }

    #[test]
    fn smooth_cubic() {
        // f^3 + 1 = g^2 (the j = 0 curve), smooth in the projective plane.
        let c = PlaneCurve::new(&(&f().pow(3) + &Poly::int(1)) - &g().pow(2)).unwrap();
        let w = c.is_smooth().unwrap();
        assert!(w.smooth, "{w:?}");
        assert_eq!(c.plane_genus(), 1);
        assert!(c.contains_point(&AffinePoint::rational(rat(2, 1), rat(3, 1))).unwrap());
        assert!(!c.contains_point(&AffinePoint::rational(rat(2, 1), rat(2, 1))).unwrap());
    }

    #[test]
    fn fermat_cubic_and_nodal_cubic() {
        let fermat = &(&f().pow(3) + &g().pow(3)) - &Poly::int(1);
        assert!(is_smooth_poly(&fermat, F, G).unwrap().smooth);
        let nodal = &(&f().pow(3) + &f().pow(2)) - &g().pow(2);
        assert!(!is_smooth_poly(&nodal, F, G).unwrap().smooth);
        let cusp_monic = &f().pow(3) - &g().pow(2);
        assert!(!is_smooth_poly(&cusp_monic, F, G).unwrap().smooth);
    }

    #[test]
    fn rejects_non_monic() {
        assert!(PlaneCurve::new(&f().pow(2) - &g().pow(3)).is_err());
        assert!(PlaneCurve::new(&f().pow(3).scale(&rat(2, 1)) + &g()).is_err());
    }

    #[test]
    fn algebraic_points() {
        let c = PlaneCurve::new(&(&f().pow(3) + &Poly::int(1)) - &g().pow(2)).unwrap();
        let pts = c.points_over_g(&rat(0, 1)).unwrap();
        assert_eq!(pts.len(), 2);
        for p in &pts {
            assert!(c.contains_point(p).unwrap());
        }
        let over_f = c.points_over_f(&rat(0, 1)).unwrap();
        assert_eq!(over_f.len(), 2);
    }
}
