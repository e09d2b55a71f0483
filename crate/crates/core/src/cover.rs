//! Covers `C -> P^1` given by a function on a plane curve.
//!
//! Everything goes through the fiber polynomial `F(t, x)`: the minimal
//! relation between the base coordinate `t` and a coordinate `x` on the
//! curve, obtained by eliminating `f` and `g` with resultants.

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::certificate::Certificate;
use crate::curve::{PlaneCurve, QuotientField, F, G};
use crate::exact::{discriminant, gcd, qx, rat, resultant, squarefree_decompose, Poly, PolyRing, Rational, UPoly};
use crate::finite_field::CycleType;
use crate::qfactor::is_irreducible_q;
use crate::{Error, Result};

/// Base coordinate.
pub const T: &str = "t";
/// Coordinate on the curve used in fiber polynomials.
pub const X: &str = "x";

type QPoly = UPoly<Rational>;

/// A rational function `num / den` in `f, g`, viewed as a map to the line.
#[derive(Clone, Debug)]
pub struct CoverMap {
    curve: PlaneCurve,
    num: Poly,
    den: Poly,
    declared_degree: usize,
}

impl CoverMap {
    pub fn new(curve: PlaneCurve, num: Poly, den: Poly, declared_degree: usize) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        for p in [&num, &den] {
            if let Some(v) = p.used_vars().into_iter().find(|v| v != F && v != G) {
                return Err(Error::VariableMismatch(format!("map involves `{v}`")));
            }
        }
        if num.is_constant() && den.is_constant() {
            return Err(Error::Precondition("constant map".into()));
        }
        Ok(CoverMap { curve, num, den, declared_degree })
    }

    pub fn polynomial(curve: PlaneCurve, phi: Poly, declared_degree: usize) -> Result<Self> {
        Self::new(curve, phi, Poly::one(), declared_degree)
    }

    pub fn curve(&self) -> &PlaneCurve {
        &self.curve
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn declared_degree(&self) -> usize {
        self.declared_degree
    }
}

/// `x = (a f + b g + c) / (d f + e g + h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeparatingCoordinate {
    num: [Rational; 3],
    den: [Rational; 3],
}

fn linear_form(c: &[Rational; 3]) -> Poly {
    &(&Poly::var(F).scale(&c[0]) + &Poly::var(G).scale(&c[1])) + &Poly::constant(c[2].clone())
}

impl SeparatingCoordinate {
    pub fn new(num: [Rational; 3], den: [Rational; 3]) -> Result<Self> {
        let n = linear_form(&num);
        let d = linear_form(&den);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if d.is_constant() && n.is_constant() {
            return Err(Error::Precondition("constant coordinate".into()));
        }
        Ok(SeparatingCoordinate { num, den })
    }

    /// `f + k g`.
    pub fn linear(k: i64) -> Self {
        SeparatingCoordinate { num: [rat(1, 1), rat(k, 1), rat(0, 1)], den: [rat(0, 1), rat(0, 1), rat(1, 1)] }
    }

    pub fn f() -> Self {
        Self::linear(0)
    }

    pub fn g() -> Self {
        SeparatingCoordinate { num: [rat(0, 1), rat(1, 1), rat(0, 1)], den: [rat(0, 1), rat(0, 1), rat(1, 1)] }
    }

    pub fn f_over_g() -> Self {
        SeparatingCoordinate { num: [rat(1, 1), rat(0, 1), rat(0, 1)], den: [rat(0, 1), rat(1, 1), rat(0, 1)] }
    }

    pub fn g_over_f() -> Self {
        SeparatingCoordinate { num: [rat(0, 1), rat(1, 1), rat(0, 1)], den: [rat(1, 1), rat(0, 1), rat(0, 1)] }
    }

    /// `f, g, f+g, f+2g, f+3g, f/g, g/f`.
    pub fn fallback() -> Vec<Self> {
        vec![
            Self::f(),
            Self::g(),
            Self::linear(1),
            Self::linear(2),
            Self::linear(3),
            Self::f_over_g(),
            Self::g_over_f(),
        ]
    }

    pub fn numerator(&self) -> Poly {
        linear_form(&self.num)
    }

    pub fn denominator(&self) -> Poly {
        linear_form(&self.den)
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator().is_constant()
    }
}

impl fmt::Display for SeparatingCoordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &Poly| if p.num_terms() > 1 { format!("({p})") } else { p.to_string() };
        let n = self.numerator();
        let d = self.denominator();
        match d.constant_value() {
            Some(c) if c.is_one() => write!(f, "{n}"),
            _ => write!(f, "{}/{}", wrap(&n), wrap(&d)),
        }
    }
}

/// Multiplies `p` by `den^deg` after substituting `var = num / den`.
fn substitute_fraction(p: &Poly, var: &str, num: &Poly, den: &Poly) -> Poly {
    let cs = p.coefficients_in(var);
    let k = cs.len().saturating_sub(1) as u32;
    let mut out = Poly::zero();
    for (i, c) in cs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let term = &(c * &num.pow(i as u32)) * &den.pow(k - i as u32);
        out = &out + &term;
    }
    out
}

/// Monic gcd of the coefficients of `p` with respect to `var`.
fn content_in(p: &Poly, var: &str) -> Result<Poly> {
    let mut g = Poly::zero();
    for c in p.coefficients_in(var) {
        g = gcd(&g, &c)?;
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    Ok(g)
}

/// Primitive integer multiple with positive leading coefficient.
pub fn normalize(p: &Poly) -> Poly {
    p.primitive_integer().0
}

/// Raw elimination of `f, g` from `C = 0`, `t den - num = 0`, `x = coord`,
/// with factors free of `t` or of `x` removed.
pub fn eliminate(cover: &CoverMap, coord: &SeparatingCoordinate) -> Result<Poly> {
    let x = Poly::var(X);
    let lin = |i: usize| &x.scale(&coord.den[i]) - &Poly::constant(coord.num[i].clone());
    let (alpha, beta, gamma) = (lin(0), lin(1), lin(2));
    // alpha f + beta g + gamma = 0
    let (solved, kept, lead, other) = if !alpha.is_zero() { (F, G, alpha, beta) } else { (G, F, beta, alpha) };
    if lead.is_zero() {
        return Err(Error::Precondition(format!("coordinate {coord} does not involve f or g")));
    }
    let value = -&(&(&other * &Poly::var(kept)) + &gamma);
    let curve = substitute_fraction(cover.curve.poly(), solved, &value, &lead);
    let rel = &(&Poly::var(T) * &cover.den) - &cover.num;
    let rel = substitute_fraction(&rel, solved, &value, &lead);
    let r = if curve.degree_in(kept) == 0 {
        curve
    } else if rel.degree_in(kept) == 0 {
        rel
    } else {
        resultant(&curve, &rel, kept)?
    };
    if r.is_zero() {
        return Err(Error::Elimination(format!("resultant vanishes for coordinate {coord}")));
    }
    let cx = content_in(&r, T)?;
    let r = r.div_exact(&cx).ok_or_else(|| Error::Unexpected("content in x".into()))?;
    let ct = content_in(&r, X)?;
    let r = r.div_exact(&ct).ok_or_else(|| Error::Unexpected("content in t".into()))?;
    Ok(normalize(&r))
}

/// `F(t, x)` for one coordinate.
#[derive(Clone, Debug)]
pub struct FiberPolynomial {
    pub coordinate: SeparatingCoordinate,
    pub poly: Poly,
    pub degree: usize,
    pub t_degree: usize,
}

impl FiberPolynomial {
    pub fn specialize(&self, t0: &Rational) -> QPoly {
        self.poly.eval(T, t0).to_upoly(X).expect("fiber polynomial is in t and x")
    }

    /// `lim s^k F(1/s, x)` as `s -> 0`.
    pub fn at_infinity(&self) -> QPoly {
        let top = self.poly.coefficients_in(T).pop().unwrap_or_else(Poly::zero);
        top.to_upoly(X).expect("fiber polynomial is in t and x")
    }

    /// Specialization at a root of the irreducible `m(t)`, over `Q[t]/(m)`.
    pub fn specialize_algebraic(&self, field: &QuotientField) -> Result<UPoly<QPoly>> {
        let theta = field.generator();
        let coeffs = self
            .poly
            .coefficients_in(X)
            .iter()
            .map(|c| c.eval_in(field, &[(T, theta.clone())], |r| field.embed(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(PolyRing::new(field.clone()).from_coeffs(coeffs))
    }

    /// Square-free over `Q(t)`: some specialization keeps the degree and is square-free.
    pub fn is_squarefree(&self) -> bool {
        sample_points().take(40).any(|t0| {
            let s = self.specialize(&t0);
            s.deg() == self.degree && s.degree().is_some() && {
                let d = qx().derivative(&s);
                qx().gcd(&s, &d).deg() == 0
            }
        })
    }

    /// A rational `t0` where `F(t0, x)` is irreducible of full degree.
    pub fn irreducibility_witness(&self, tries: usize) -> Result<Option<Rational>> {
        for t0 in sample_points().take(tries) {
            let s = self.specialize(&t0);
            if s.deg() != self.degree || self.degree == 0 {
                continue;
            }
            if is_irreducible_q(&Poly::from_upoly(X, &s))?.irreducible {
                return Ok(Some(t0));
            }
        }
        Ok(None)
    }
}

/// `0, 1, -1, 2, -2, ...`
fn sample_points() -> impl Iterator<Item = Rational> {
    (0i64..).map(|i| if i % 2 == 1 { rat((i + 1) / 2, 1) } else { rat(-i / 2, 1) })
}

/// Fiber polynomials of a cover over the fallback coordinates.
#[derive(Clone, Debug)]
pub struct CoverAnalysis {
    cover: CoverMap,
    fibers: Vec<FiberPolynomial>,
}

impl CoverAnalysis {
    pub fn new(cover: CoverMap) -> Result<Self> {
        Self::with_coordinates(cover, SeparatingCoordinate::fallback())
    }

    pub fn with_coordinates(cover: CoverMap, coords: Vec<SeparatingCoordinate>) -> Result<Self> {
        let mut fibers = Vec::new();
        for coord in coords {
            let poly = match eliminate(&cover, &coord) {
                Ok(p) => p,
                Err(Error::Elimination(_)) | Err(Error::Precondition(_)) => continue,
                Err(e) => return Err(e),
            };
            let fp = FiberPolynomial { degree: poly.degree_in(X), t_degree: poly.degree_in(T), coordinate: coord, poly };
            if fp.degree > 0 && fp.is_squarefree() {
                fibers.push(fp);
            }
        }
        if fibers.is_empty() {
            return Err(Error::Elimination("no separating coordinate".into()));
        }
        let top = fibers.iter().map(|f| f.degree).max().unwrap();
        fibers.retain(|f| f.degree == top);
        Ok(CoverAnalysis { cover, fibers })
    }

    pub fn cover(&self) -> &CoverMap {
        &self.cover
    }

    /// Valid fiber polynomials, in fallback order.
    pub fn fibers(&self) -> &[FiberPolynomial] {
        &self.fibers
    }

    pub fn primary(&self) -> &FiberPolynomial {
        &self.fibers[0]
    }

    /// Degree of the cover, read off the fiber polynomial.
    pub fn degree(&self) -> usize {
        self.primary().degree
    }

    pub fn degree_consistent(&self) -> bool {
        self.degree() == self.cover.declared_degree
    }

    pub fn branch_locus(&self) -> Result<BranchLocus> {
        branch_locus(self)
    }

    pub fn ramification_profile(&self, base: &BasePoint) -> Result<RamificationProfile> {
        ramification_profile(self, base)
    }
}

/// Fiber polynomial for the first coordinate in the fallback list that
/// yields a square-free relation.
pub fn fiber_min_poly(cover: &CoverMap) -> Result<FiberPolynomial> {
    Ok(CoverAnalysis::new(cover.clone())?.primary().clone())
}

fn squarefree_part(p: &Poly) -> Result<Poly> {
    if p.is_constant() {
        return Ok(Poly::one());
    }
    let d = squarefree_decompose(p)?;
    Ok(normalize(&d.factors.iter().fold(Poly::one(), |acc, (f, _)| &acc * f)))
}

#[derive(Clone, Debug, Serialize)]
pub struct BranchLocus {
    /// Square-free, primitive, positive leading coefficient, in `t`.
    #[serde(serialize_with = "ser_display")]
    pub finite: Poly,
    pub includes_infinity: bool,
    pub coordinates: Vec<String>,
}

fn ser_display<S: serde::Serializer, D: fmt::Display>(v: &D, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

/// Gcd of the square-free parts of `disc_x F` over two coordinates, which
/// removes the spurious factors a single coordinate picks up where it
/// fails to separate points.
pub fn branch_locus(a: &CoverAnalysis) -> Result<BranchLocus> {
    let mut finite: Option<Poly> = None;
    let mut coordinates = Vec::new();
    for fp in a.fibers.iter().take(2) {
        let part = if fp.degree < 2 { Poly::one() } else { squarefree_part(&discriminant(&fp.poly, X)?)? };
        finite = Some(match finite {
            None => part,
            Some(prev) => normalize(&gcd(&prev, &part)?),
        });
        coordinates.push(fp.coordinate.to_string());
    }
    let includes_infinity = !a.ramification_profile(&BasePoint::Infinity)?.partition.is_identity();
    Ok(BranchLocus { finite: finite.unwrap(), includes_infinity, coordinates })
}

/// A point of the base line.
#[derive(Clone, Debug, PartialEq)]
pub enum BasePoint {
    Rational(Rational),
    Infinity,
    /// A root of an irreducible polynomial in `t`; the fiber is computed
    /// over the field it generates.
    Algebraic(Poly),
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasePoint::Rational(r) => write!(f, "t = {}", crate::exact::format_rational(r)),
            BasePoint::Infinity => write!(f, "t = infinity"),
            BasePoint::Algebraic(m) => write!(f, "root of {m}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RamificationProfile {
    pub base: String,
    pub partition: CycleType,
    pub coordinate: String,
}

fn partition_of<R: crate::exact::Field>(ring: &PolyRing<R>, p: &UPoly<R::Elem>) -> CycleType {
    let mut parts = Vec::new();
    for (fac, m) in ring.squarefree_char0(p) {
        parts.extend(std::iter::repeat_n(m, fac.deg()));
    }
    CycleType::new(parts)
}

/// Multiplicities of the points over `base`. Each coordinate that stays
/// finite over `base` gives a coarsening of the true partition; the finest
/// one is returned.
pub fn ramification_profile(a: &CoverAnalysis, base: &BasePoint) -> Result<RamificationProfile> {
    let field = match base {
        BasePoint::Algebraic(m) => {
            let v = m.univariate_var()?.ok_or(Error::DegreeTooSmall { needed: 1, got: 0 })?;
            if v != T {
                return Err(Error::VariableMismatch(format!("base point polynomial in `{v}`, expected `{T}`")));
            }
            Some(QuotientField::new(&m.to_upoly(T)?)?)
        }
        _ => None,
    };
    let mut best: Option<(CycleType, String)> = None;
    for fp in &a.fibers {
        let part = match base {
            BasePoint::Rational(t0) => {
                let s = fp.specialize(t0);
                (s.deg() == fp.degree).then(|| partition_of(&qx(), &s))
            }
            BasePoint::Infinity => {
                let s = fp.at_infinity();
                (s.deg() == fp.degree).then(|| partition_of(&qx(), &s))
            }
            BasePoint::Algebraic(_) => {
                let k = field.as_ref().unwrap();
                let s = fp.specialize_algebraic(k)?;
                (s.deg() == fp.degree).then(|| partition_of(&PolyRing::new(k.clone()), &s))
            }
        };
        let Some(part) = part else { continue };
        let finer = best.as_ref().is_none_or(|(b, _)| part.parts().len() > b.parts().len());
        if finer {
            best = Some((part, fp.coordinate.to_string()));
        }
    }
    let (partition, coordinate) =
        best.ok_or_else(|| Error::Precondition(format!("no coordinate is finite over {base}")))?;
    Ok(RamificationProfile { base: base.to_string(), partition, coordinate })
}

/// Genus from Riemann-Hurwitz over `P^1`. Each profile comes with the
/// number of branch points sharing it.
pub fn riemann_hurwitz(degree: u32, profiles: &[(CycleType, u32)]) -> Result<u32> {
    let mut total: i64 = -2 * degree as i64;
    for (p, count) in profiles {
        if p.degree() != degree {
            return Err(Error::InvalidProfile(format!("{p} is not a partition of {degree}")));
        }
        total += (degree as i64 - p.parts().len() as i64) * *count as i64;
    }
    if total < -2 || total % 2 != 0 {
        return Err(Error::InvalidProfile(format!("2g - 2 = {total}")));
    }
    Ok(((total + 2) / 2) as u32)
}

/// Checks that the map sends the zeros of `f` to the roots of `expected`.
pub fn divisor_of_f_check(cover: &CoverMap, expected: &Poly) -> Result<Certificate> {
    const CHECK: &str = "divisor-of-f";
    let c0 = cover.curve.poly().eval(F, &Rational::zero());
    if c0.degree_in(G) == 0 {
        return Err(Error::Precondition("f vanishes on a line component".into()));
    }
    let den0 = cover.den.eval(F, &Rational::zero());
    let num0 = cover.num.eval(F, &Rational::zero());
    let rel = &(&Poly::var(T) * &den0) - &num0;
    let r = if rel.degree_in(G) == 0 { rel.pow(c0.degree_in(G) as u32) } else { resultant(&c0, &rel, G)? };
    let image = normalize(&r);
    let zeros_irreducible = is_irreducible_q(&c0)?.irreducible;
    let target = normalize(&expected.rename(&expected.univariate_var()?.unwrap_or_else(|| T.into()), T));
    let ok = image == target;
    Ok(Certificate::verdict(
        CHECK,
        ok,
        if ok { "images of the zeros of f are the expected points" } else { "images of the zeros of f differ" },
    )
    .with("zeros_of_f", c0.to_string())
    .with("zeros_irreducible", zeros_irreducible)
    .with("image", image.to_string())
    .with("expected", target.to_string()))
}
