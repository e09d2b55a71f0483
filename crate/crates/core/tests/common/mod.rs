//! Strategies and algebraic laws shared by the property suites.

#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use shimcover::curve::{FunctionField, PlaneCurve};
use shimcover::exact::{gcd, qx, rat, resultant, sylvester_resultant, Poly, Rational};
use shimcover::qfactor::factor_over_q;

pub const CASES: u32 = 128;

pub fn upoly(v: &str, coeffs: &[i64]) -> Poly {
    Poly::from_upoly(v, &qx().from_i64s(coeffs))
}

/// Nonzero univariate polynomial of degree at most `deg` with small coefficients.
pub fn small_poly(v: &'static str, deg: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(-6i64..=6, 1..=deg + 1)
        .prop_map(move |c| upoly(v, &c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

/// Non-constant univariate polynomial.
pub fn proper_poly(v: &'static str, deg: usize) -> impl Strategy<Value = Poly> {
    small_poly(v, deg).prop_filter("non-constant", move |p| p.degree_in(v) > 0)
}

/// Polynomial in `x` whose coefficients are polynomials of degree <= 2 in `t`.
pub fn bivariate(deg_x: usize) -> impl Strategy<Value = Poly> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, 3), 2..=deg_x + 1).prop_map(|rows| {
        let coeffs: Vec<Poly> = rows.iter().map(|r| upoly("t", r)).collect();
        Poly::from_coefficients_in("x", &coeffs)
    })
}

/// Polynomial in `f, g` with degree <= 2 in `f` and <= 2 in `g`.
pub fn curve_poly() -> impl Strategy<Value = Poly> {
    prop::collection::vec(prop::collection::vec(-3i64..=3, 3), 3).prop_map(|rows| {
        let coeffs: Vec<Poly> = rows.iter().map(|r| upoly("g", r)).collect();
        Poly::from_coefficients_in("f", &coeffs)
    })
}

pub fn curve() -> PlaneCurve {
    let f = Poly::var("f");
    let g = Poly::var("g");
    let c = &(&(&f.pow(3) - &g.pow(2)) + &(&f * &g)) - &Poly::int(2);
    PlaneCurve::new(c).unwrap()
}

fn check(ok: bool, what: &str) -> Result<(), TestCaseError> {
    if ok {
        Ok(())
    } else {
        Err(TestCaseError::fail(what.to_string()))
    }
}

pub fn factor_round_trip(factors: &[Poly], scale: i64) -> Result<(), TestCaseError> {
    let p = factors.iter().fold(Poly::int(scale), |acc, f| &acc * f);
    let fac = factor_over_q(&p).map_err(|e| TestCaseError::fail(e.to_string()))?;
    check(fac.reconstruct() == p, "reconstruction differs")?;
    let total: usize = fac.degree_multiset().iter().sum();
    check(total == p.degree_in("x"), "degrees do not add up")?;
    for (f, _) in &fac.factors {
        let again = factor_over_q(f).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(again.factors.len() == 1 && again.factors[0].1 == 1, "factor is not irreducible")?;
    }
    Ok(())
}

pub fn gcd_laws(a: &Poly, b: &Poly, c: &Poly) -> Result<(), TestCaseError> {
    let g = gcd(a, b).unwrap();
    check(a.div_exact(&g).is_some() && b.div_exact(&g).is_some(), "gcd does not divide")?;
    check(gcd(b, a).unwrap() == g, "gcd not symmetric")?;
    let gc = gcd(&(a * c), &(b * c)).unwrap();
    let cg = gcd(&(c * &g), &Poly::zero()).unwrap();
    check(gc == cg, "gcd(ac, bc) != c gcd(a, b)")?;
    let shifted = gcd(&(a + &(b * c)), b).unwrap();
    check(shifted == g, "gcd(a + bc, b) != gcd(a, b)")?;
    Ok(())
}

pub fn resultant_laws(a: &Poly, b: &Poly, c: &Poly) -> Result<(), TestCaseError> {
    let v = "x";
    let r = |p: &Poly, q: &Poly| resultant(p, q, v).unwrap();
    let rab = r(a, b);
    check(rab == sylvester_resultant(a, b, v).unwrap(), "subresultant != Sylvester")?;
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    let sign = if da * db % 2 == 1 { -&rab } else { rab.clone() };
    check(r(b, a) == sign, "antisymmetry fails")?;
    check(r(a, &(b * c)) == &rab * &r(a, c), "multiplicativity fails")?;
    Ok(())
}

pub fn resultant_root_law(root: i64, b: &Poly) -> Result<(), TestCaseError> {
    let a = upoly("x", &[-root, 1]);
    let r = resultant(&a, b, "x").unwrap();
    let expected = b.eval("x", &rat(root, 1));
    check(r == expected, "res(x - r, b) != b(r)")
}

pub fn bivariate_resultant(a: &Poly, b: &Poly) -> Result<(), TestCaseError> {
    if a.degree_in("x") == 0 || b.degree_in("x") == 0 {
        return Ok(());
    }
    let r = resultant(a, b, "x").unwrap();
    check(r == sylvester_resultant(a, b, "x").unwrap(), "bivariate subresultant != Sylvester")?;
    let t0: Rational = rat(3, 2);
    let (sa, sb) = (a.eval("t", &t0), b.eval("t", &t0));
    if sa.degree_in("x") == a.degree_in("x") && sb.degree_in("x") == b.degree_in("x") {
        check(r.eval("t", &t0) == resultant(&sa, &sb, "x").unwrap(), "resultant does not commute with t = 3/2")?;
    }
    Ok(())
}

pub fn field_axioms(ff: &FunctionField, p: [&Poly; 3], q: &Poly) -> Result<(), TestCaseError> {
    let a = ff.from_poly(p[0]).unwrap();
    let b = ff.from_poly(p[1]).unwrap();
    let reduced = ff.from_poly(p[2]).unwrap();
    let c = if q.is_zero() { reduced } else { ff.from_ratio(p[2], q).unwrap() };
    check(ff.add(&ff.add(&a, &b), &c) == ff.add(&a, &ff.add(&b, &c)), "+ not associative")?;
    check(ff.add(&a, &b) == ff.add(&b, &a), "+ not commutative")?;
    check(ff.mul(&ff.mul(&a, &b), &c) == ff.mul(&a, &ff.mul(&b, &c)), "* not associative")?;
    check(ff.mul(&a, &b) == ff.mul(&b, &a), "* not commutative")?;
    check(ff.mul(&a, &ff.add(&b, &c)) == ff.add(&ff.mul(&a, &b), &ff.mul(&a, &c)), "not distributive")?;
    check(ff.add(&a, &ff.neg(&a)).is_zero(), "a - a != 0")?;
    check(ff.mul(&a, &ff.constant(&rat(1, 1))) == a, "1 is not neutral")?;
    check(ff.from_poly(&(p[0] * p[1])).unwrap() == ff.mul(&a, &b), "reduction is not multiplicative")?;
    check(ff.from_poly(&(p[0] + ff.curve().poly())).unwrap() == a, "curve does not reduce to zero")?;
    if !c.is_zero() {
        let inv = ff.try_inv(&c).unwrap();
        check(ff.mul(&c, &inv).as_constant() == Some(rat(1, 1)), "c * c^-1 != 1")?;
        check(ff.try_div(&ff.mul(&a, &c), &c).unwrap() == a, "(ac)/c != a")?;
    } else {
        check(ff.try_inv(&c).is_err(), "zero is invertible")?;
    }
    Ok(())
}

/// Runs every law for `cases` cases each, returning a summary per suite.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let mk = || TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    let ff = FunctionField::new(&curve());
    let mut out = Vec::new();
    let fac = (prop::collection::vec(proper_poly("x", 3), 1..=3), 1i64..=12);
    out.push(("factorization round-trip", mk().run(&fac, |(fs, s)| factor_round_trip(&fs, s)).map_err(|e| e.to_string())));
    let g = (small_poly("x", 4), small_poly("x", 4), small_poly("x", 3));
    out.push(("gcd laws", mk().run(&g, |(a, b, c)| gcd_laws(&a, &b, &c)).map_err(|e| e.to_string())));
    let r = (proper_poly("x", 4), proper_poly("x", 4), proper_poly("x", 3));
    out.push(("resultant laws", mk().run(&r, |(a, b, c)| resultant_laws(&a, &b, &c)).map_err(|e| e.to_string())));
    let cf = (curve_poly(), curve_poly(), curve_poly(), curve_poly());
    out.push((
        "CurveFn field axioms",
        mk().run(&cf, |(a, b, c, d)| field_axioms(&ff, [&a, &b, &c], &d)).map_err(|e| e.to_string()),
    ));
    out
}
