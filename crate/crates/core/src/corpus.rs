//! Corpus files: a curve, a map and the values it is expected to produce.

use std::cell::OnceCell;
use std::path::Path;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::certificate::{run, Certificate};
use crate::cover::{divisor_of_f_check, normalize, riemann_hurwitz, BasePoint, BranchLocus, CoverAnalysis, CoverMap, T};
use crate::curve::{FunctionField, PlaneCurve, F, G};
use crate::elliptic::{two_torsion_check, weierstrass_check, WeierstrassCurve};
use crate::exact::{discriminant, format_rational, parse_rational, Poly, Rational};
use crate::finite_field::CycleType;
use crate::galois::{certify_monodromy, enumerate_psl2_f8, sample_cycle_types};
use crate::involution::{
    algebraic_relation, cm_fiber_report, diagonal_cm_report, fixed_locus, verify_involution, verify_self_map,
    BirationalMap, ModularPolynomial,
};
use crate::qfactor::is_irreducible_q;
use crate::rng::substream;
use crate::{Error, Result};

const BUILTIN: &str = include_str!("../corpus/x0_2.json");

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<(Vec<u32>, String)>,
}

fn poly_from_repr(r: PolyRepr) -> Result<Poly> {
    let vars: Vec<&str> = r.vars.iter().map(String::as_str).collect();
    let terms = r.terms.into_iter().map(|(e, c)| Ok((e, parse_rational(&c)?))).collect::<Result<Vec<_>>>()?;
    Poly::from_terms(&vars, terms)
}

fn poly_to_repr(p: &Poly) -> PolyRepr {
    let vars = p.vars().to_vec();
    let terms = p.terms().rev().map(|(e, c)| (e.to_vec(), format_rational(c))).collect();
    PolyRepr { vars, terms }
}

/// A polynomial in the corpus JSON encoding.
pub fn poly_to_json(p: &Poly) -> serde_json::Value {
    serde_json::to_value(poly_to_repr(p)).expect("polynomial serializes")
}

pub fn poly_from_json(v: &serde_json::Value) -> Result<Poly> {
    poly_from_repr(serde_json::from_value(v.clone())?)
}

/// Serde adapter: `{"vars": [...], "terms": [[[exps], "p/q"], ...]}`.
pub mod poly_json {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Poly, s: S) -> std::result::Result<S::Ok, S::Error> {
        poly_to_repr(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        poly_from_repr(PolyRepr::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a rational as `"p/q"`.
pub mod rational_str {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        parse_rational(&String::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a sequence of rationals.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RationalMap {
    #[serde(with = "poly_json")]
    pub num: Poly,
    #[serde(with = "poly_json")]
    pub den: Poly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Profiles {
    pub infinity: CycleType,
    pub branch: CycleType,
    pub generic: CycleType,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorSpec {
    #[serde(with = "poly_json")]
    pub poly: Poly,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSpec {
    #[serde(with = "rational_str")]
    pub value: Rational,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberSpec {
    #[serde(with = "rational_str")]
    pub t: Rational,
    pub degrees: Vec<usize>,
    /// Square class of the discriminant of the quadratic factor, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quadratic_discriminant_class: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Expectations {
    pub cover_degree: usize,
    #[serde(with = "poly_json")]
    pub branch_cubic: Poly,
    pub profiles: Profiles,
    pub phi2_bidegree: [usize; 2],
    pub phi2_diagonal_factors: Vec<FactorSpec>,
    pub cm_points: Vec<RootSpec>,
    pub cm_fibers: Vec<FiberSpec>,
    /// `[a1, a2, a3, a4, a6]`.
    #[serde(with = "rational_vec")]
    pub weierstrass_target: Vec<Rational>,
    #[serde(with = "rational_vec")]
    pub rational_point: Vec<Rational>,
    pub fixed_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Corpus {
    pub schema: u32,
    pub name: String,
    #[serde(with = "poly_json")]
    pub curve: Poly,
    #[serde(with = "poly_json")]
    pub phi: Poly,
    pub w2_f: RationalMap,
    pub w2_g: RationalMap,
    #[serde(with = "poly_json")]
    pub constant_field: Poly,
    pub expectations: Expectations,
}

impl Corpus {
    /// The corpus compiled into the crate.
    pub fn builtin() -> Corpus {
        Self::from_json(BUILTIN).expect("builtin corpus parses")
    }

    pub fn from_json(s: &str) -> Result<Corpus> {
        let c: Corpus = serde_json::from_str(s)?;
        if c.schema != crate::certificate::SCHEMA {
            return Err(Error::Corpus(format!("unsupported schema {}", c.schema)));
        }
        if c.expectations.weierstrass_target.len() != 5 {
            return Err(Error::Corpus("weierstrass_target needs five coefficients".into()));
        }
        if c.expectations.rational_point.len() != 2 {
            return Err(Error::Corpus("rational_point needs two coordinates".into()));
        }
        Ok(c)
    }

    pub fn load(path: &Path) -> Result<Corpus> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("corpus serializes")
    }

    pub fn curve(&self) -> Result<PlaneCurve> {
        PlaneCurve::new(self.curve.clone())
    }

    pub fn cover(&self) -> Result<CoverMap> {
        CoverMap::polynomial(self.curve()?, self.phi.clone(), self.expectations.cover_degree)
    }

    pub fn w2(&self) -> Result<BirationalMap> {
        BirationalMap::new(self.w2_f.num.clone(), self.w2_f.den.clone(), self.w2_g.num.clone(), self.w2_g.den.clone())
    }

    pub fn rational_point(&self) -> (Rational, Rational) {
        let p = &self.expectations.rational_point;
        (p[0].clone(), p[1].clone())
    }

    pub fn weierstrass_target(&self) -> Result<WeierstrassCurve> {
        let a = &self.expectations.weierstrass_target;
        WeierstrassCurve::new([a[0].clone(), a[1].clone(), a[2].clone(), a[3].clone(), a[4].clone()])
    }
}

/// Parameters of the randomized checks.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub primes: Vec<u64>,
    pub samples: usize,
    pub tolerance: Rational,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: 42, primes: vec![103, 109, 131], samples: 1000, tolerance: Rational::new(1.into(), 20.into()) }
    }
}

/// Named groups of checks, in the order `all` runs them.
pub const CHECKS: &[&str] = &[
    "verify-curve",
    "ramification",
    "involution",
    "divisor-of-f",
    "modular-poly",
    "cm-points",
    "weierstrass",
    "two-torsion",
    "galois",
];

/// Runs checks against one corpus, sharing the expensive intermediate
/// results between them.
pub struct Runner {
    corpus: Corpus,
    options: RunOptions,
    analysis: OnceCell<CoverAnalysis>,
    branch: OnceCell<BranchLocus>,
    phi2: OnceCell<ModularPolynomial>,
}

impl Runner {
    pub fn new(corpus: Corpus, options: RunOptions) -> Self {
        Runner { corpus, options, analysis: OnceCell::new(), branch: OnceCell::new(), phi2: OnceCell::new() }
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn analysis(&self) -> Result<&CoverAnalysis> {
        if let Some(a) = self.analysis.get() {
            return Ok(a);
        }
        let a = CoverAnalysis::new(self.corpus.cover()?)?;
        Ok(self.analysis.get_or_init(|| a))
    }

    pub fn branch_locus_cached(&self) -> Result<&BranchLocus> {
        if let Some(b) = self.branch.get() {
            return Ok(b);
        }
        let b = self.analysis()?.branch_locus()?;
        Ok(self.branch.get_or_init(|| b))
    }

    /// Profile over one base point, compared with the corpus when the
    /// point is infinity or a root of the branch cubic.
    pub fn profile_at(&self, base: &BasePoint) -> Certificate {
        run("profile", || {
            let p = self.analysis()?.ramification_profile(base)?;
            let e = &self.corpus.expectations;
            let expected = match base {
                BasePoint::Infinity => Some(&e.profiles.infinity),
                BasePoint::Algebraic(m) if normalize(m) == normalize(&e.branch_cubic) => Some(&e.profiles.branch),
                _ => None,
            };
            let ok = expected.is_none_or(|x| *x == p.partition);
            let mut c = Certificate::verdict("profile", ok, format!("ramification over {base}")).with("profile", &p);
            if let Some(x) = expected {
                c = c.with("expected", x);
            }
            Ok(c)
        })
    }

    pub fn modular_polynomial(&self) -> Result<&ModularPolynomial> {
        if let Some(p) = self.phi2.get() {
            return Ok(p);
        }
        let curve = self.corpus.curve()?;
        let ff = FunctionField::new(&curve);
        let u = ff.from_poly(&self.corpus.phi)?;
        let v = self.corpus.w2()?.pull_back(&ff, &self.corpus.phi)?;
        let [bx, by] = self.corpus.expectations.phi2_bidegree;
        let p = algebraic_relation(&ff, &u, &v, (bx, by), self.options.seed)?;
        Ok(self.phi2.get_or_init(|| p))
    }

    /// Certificates for one named group from [`CHECKS`].
    pub fn run_group(&self, name: &str) -> Result<Vec<Certificate>> {
        Ok(match name {
            "verify-curve" => vec![
                run("curve-membership", || self.membership()),
                run("constant-field", || self.constant_field()),
                run("smoothness-genus", || self.smoothness_genus()),
            ],
            "ramification" => vec![
                run("cover-degree", || self.cover_degree()),
                run("branch-locus", || self.branch_locus()),
                run("profiles", || self.profiles()),
            ],
            "involution" => vec![
                run("self-map", || verify_self_map(&self.corpus.curve()?, &self.corpus.w2()?)),
                run("involution", || verify_involution(&self.corpus.curve()?, &self.corpus.w2()?)),
                run("fixed-locus", || self.fixed_locus()),
            ],
            "divisor-of-f" => {
                vec![run("divisor-of-f", || divisor_of_f_check(&self.corpus.cover()?, &self.corpus.expectations.branch_cubic))]
            }
            "modular-poly" => vec![run("modular-poly", || self.modular_poly())],
            "cm-points" => {
                let mut out = vec![run("diagonal-cm", || self.diagonal_cm())];
                for spec in &self.corpus.expectations.cm_fibers {
                    let name = format!("cm-fiber {}", format_rational(&spec.t));
                    out.push(run(&name, || {
                        cm_fiber_report(self.analysis()?.primary(), &spec.t, &spec.degrees, spec.quadratic_discriminant_class.as_deref())
                    }));
                }
                out
            }
            "weierstrass" => vec![run("weierstrass", || {
                weierstrass_check(&self.corpus.curve()?, self.corpus.rational_point(), &self.corpus.weierstrass_target()?)
            })],
            "two-torsion" => vec![run("two-torsion", || {
                two_torsion_check(&self.corpus.curve()?, self.corpus.rational_point(), &self.corpus.weierstrass_target()?)
            })],
            "galois" => vec![
                run("group-oracle", || self.group_oracle()),
                run("fiber-irreducible", || self.fiber_irreducible()),
                run("monodromy", || self.monodromy()),
            ],
            other => return Err(Error::Precondition(format!("unknown check `{other}`"))),
        })
    }

    pub fn run_all(&self) -> Vec<Certificate> {
        CHECKS.iter().flat_map(|c| self.run_group(c).expect("known check")).collect()
    }

    fn membership(&self) -> Result<Certificate> {
        let (f0, g0) = self.corpus.rational_point();
        let v = self.corpus.curve.eval_rational(&[(F, f0.clone()), (G, g0.clone())])?;
        Ok(Certificate::verdict("curve-membership", v == Rational::from_integer(0.into()), "curve equation at the rational point")
            .with("point", [format_rational(&f0), format_rational(&g0)])
            .with("value", format_rational(&v)))
    }

    fn constant_field(&self) -> Result<Certificate> {
        let m = &self.corpus.constant_field;
        let v = m.univariate_var()?.unwrap_or_else(|| T.into());
        let d = discriminant(m, &v)?.constant_value().unwrap_or_default();
        let irr = is_irreducible_q(m)?.irreducible;
        let r = d.numer().sqrt();
        let square = d.is_integer() && d > Rational::from_integer(0.into()) && &r * &r == *d.numer();
        Ok(Certificate::verdict("constant-field", irr && square, "cyclic cubic: irreducible with square discriminant")
            .with("polynomial", m.to_string())
            .with("discriminant", format_rational(&d))
            .with("irreducible", irr))
    }

    fn smoothness_genus(&self) -> Result<Certificate> {
        let curve = self.corpus.curve()?;
        let w = curve.is_smooth()?;
        let a = self.analysis()?;
        let branch = self.branch_locus_cached()?;
        let mut profiles = vec![(a.ramification_profile(&BasePoint::Infinity)?.partition, 1)];
        for (fac, _) in crate::qfactor::factor_over_q(&branch.finite)?.factors {
            let p = a.ramification_profile(&BasePoint::Algebraic(fac.clone()))?.partition;
            profiles.push((p, fac.degree_in(T) as u32));
        }
        let genus = riemann_hurwitz(a.degree() as u32, &profiles)?;
        let plane = curve.plane_genus();
        let ok = w.smooth && genus as usize == plane;
        let shown: Vec<String> = profiles.iter().map(|(p, n)| format!("{p} x{n}")).collect();
        Ok(Certificate::verdict("smoothness-genus", ok, "smooth cubic whose Riemann-Hurwitz genus is the plane genus")
            .with("smoothness", &w)
            .with("profiles", shown)
            .with("riemann_hurwitz_genus", genus)
            .with("plane_genus", plane))
    }

    fn cover_degree(&self) -> Result<Certificate> {
        let a = self.analysis()?;
        Ok(Certificate::verdict("cover-degree", a.degree_consistent(), "degree of the fiber polynomial in x")
            .with("computed", a.degree())
            .with("declared", a.cover().declared_degree())
            .with("coordinate", a.primary().coordinate.to_string()))
    }

    fn branch_locus(&self) -> Result<Certificate> {
        let b = self.branch_locus_cached()?;
        let want = normalize(&self.corpus.expectations.branch_cubic);
        let ok = b.finite == want && b.includes_infinity;
        Ok(Certificate::verdict("branch-locus", ok, "finite branch points and infinity")
            .with("locus", b)
            .with("expected", want.to_string()))
    }

    fn profiles(&self) -> Result<Certificate> {
        let a = self.analysis()?;
        let e = &self.corpus.expectations.profiles;
        let inf = a.ramification_profile(&BasePoint::Infinity)?;
        let br = a.ramification_profile(&BasePoint::Algebraic(self.corpus.expectations.branch_cubic.clone()))?;
        let mut rng = substream(self.options.seed, 0);
        let mut generic = vec![a.ramification_profile(&BasePoint::Rational(Rational::from_integer(0.into())))?];
        for _ in 0..10 {
            let t0 = Rational::new(rng.gen_range(-1000i64..=1000).into(), rng.gen_range(1i64..=100).into());
            generic.push(a.ramification_profile(&BasePoint::Rational(t0))?);
        }
        let ok = inf.partition == e.infinity && br.partition == e.branch && generic.iter().all(|g| g.partition == e.generic);
        Ok(Certificate::verdict("profiles", ok, "ramification profiles at infinity, a branch point and generic points")
            .with("infinity", &inf)
            .with("branch", &br)
            .with("generic", &generic))
    }

    fn fixed_locus(&self) -> Result<Certificate> {
        let curve = self.corpus.curve()?;
        let fl = fixed_locus(&curve, &self.corpus.w2()?)?;
        let zeros = normalize(&curve.poly().eval(F, &Rational::from_integer(0.into())));
        let has_zeros = fl
            .components
            .iter()
            .any(|c| c.g_poly == zeros && c.f_poly.deg() == 1 && c.f_poly.coeffs()[0].is_zero());
        let rational: Vec<(Rational, Rational)> = fl.components.iter().filter_map(|c| c.rational_point()).collect();
        let has_point = rational.contains(&self.corpus.rational_point());
        let count_ok = fl.count() == self.corpus.expectations.fixed_points;
        let ok = has_zeros && has_point && count_ok && fl.components.len() == 2;
        let comps: Vec<String> = fl.components.iter().map(|c| format!("{} [{} points]", c.describe(), c.count)).collect();
        Ok(Certificate::verdict("fixed-locus", ok, "fixed points are the zeros of f and the rational point")
            .with("components", comps)
            .with("count", fl.count()))
    }

    fn modular_poly(&self) -> Result<Certificate> {
        let phi = self.modular_polynomial()?;
        let [bx, by] = self.corpus.expectations.phi2_bidegree;
        let sign = phi.symmetry_sign();
        let ok = phi.bidegree == (bx, by) && sign.is_some() && phi.certified;
        Ok(Certificate::verdict("modular-poly", ok, "relation between the map and its transform, checked on the curve")
            .with("bidegree", [phi.bidegree.0, phi.bidegree.1])
            .with("symmetry_sign", sign)
            .with("terms", phi.poly.num_terms())
            .with("primes", phi.primes_used)
            .with("vanishes_on_curve", phi.certified))
    }

    fn diagonal_cm(&self) -> Result<Certificate> {
        let e = &self.corpus.expectations;
        let factors: Vec<(Poly, u32)> = e.phi2_diagonal_factors.iter().map(|f| (f.poly.clone(), f.multiplicity)).collect();
        let roots: Vec<(Rational, u32)> = e.cm_points.iter().map(|r| (r.value.clone(), r.multiplicity)).collect();
        diagonal_cm_report(self.modular_polynomial()?, &factors, &roots)
    }

    fn group_oracle(&self) -> Result<Certificate> {
        let g = enumerate_psl2_f8();
        let closed = g.spot_check_closure(1000, self.options.seed);
        let sylow = g.sylow_consistent();
        let table: std::collections::BTreeMap<String, usize> = g.table().iter().map(|(k, v)| (k.to_string(), *v)).collect();
        Ok(Certificate::verdict("group-oracle", g.order() == 504 && closed && sylow, "PSL_2(F_8) on the projective line over F_8")
            .with("order", g.order())
            .with("cycle_types", table)
            .with("closure_spot_check", closed)
            .with("sylow_consistent", sylow))
    }

    fn fiber_irreducible(&self) -> Result<Certificate> {
        let f = self.analysis()?.primary();
        let w = f.irreducibility_witness(20)?;
        let mut c = Certificate::verdict("fiber-irreducible", w.is_some(), "an irreducible specialization makes F irreducible over Q(t)");
        if let Some(t0) = w {
            c = c.with("t0", format_rational(&t0));
        }
        Ok(c)
    }

    fn monodromy(&self) -> Result<Certificate> {
        let f = &self.analysis()?.primary().poly;
        let o = &self.options;
        let report = sample_cycle_types(f, &o.primes, o.samples, o.seed, Some(&self.corpus.constant_field))?;
        certify_monodromy(&report, &enumerate_psl2_f8(), &o.tolerance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn builtin_parses() {
        let c = Corpus::builtin();
        assert_eq!(c.expectations.cover_degree, 9);
        assert_eq!(c.expectations.rational_point, vec![rat(16, 21), rat(0, 1)]);
        assert_eq!(c.expectations.profiles.branch.to_string(), "2^4.1");
        assert_eq!(c.curve.coeff_of(&[("f", 1), ("g", 1)]), rat(-25, 84));
    }

    #[test]
    fn round_trip() {
        let c = Corpus::builtin();
        let again = Corpus::from_json(&c.to_json()).unwrap();
        assert_eq!(again, c);
    }

    #[test]
    fn poly_json_round_trip() {
        let p = &Poly::var("X").pow(3).scale(&rat(-7, 3)) + &(&Poly::var("Y") * &Poly::var("X"));
        assert_eq!(poly_from_json(&poly_to_json(&p)).unwrap(), p);
    }

    #[test]
    fn unknown_check() {
        let r = Runner::new(Corpus::builtin(), RunOptions::default());
        assert!(r.run_group("nope").is_err());
        assert!(r.run_group("verify-curve").unwrap().iter().all(|c| c.passed()));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Corpus::from_json("{}").is_err());
        let mut v: serde_json::Value = serde_json::from_str(BUILTIN).unwrap();
        v["schema"] = 7.into();
        assert!(matches!(Corpus::from_json(&v.to_string()), Err(Error::Corpus(_))));
        let mut v: serde_json::Value = serde_json::from_str(BUILTIN).unwrap();
        v["phi"]["terms"][0][1] = "1/0".into();
        assert!(Corpus::from_json(&v.to_string()).is_err());
    }
}
