//! Acceptance suite: one line per criterion, nonzero exit if any fails.

mod common;

use std::collections::BTreeMap;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use shimcover::corpus::{Corpus, RunOptions, Runner};
use shimcover::cover::{riemann_hurwitz, BasePoint, T};
use shimcover::curve::{FunctionField, QuotientField, F, G};
use shimcover::elliptic::{is_q_isomorphic, nagell_reduce, WeierstrassCurve};
use shimcover::exact::{discriminant, qx, rat, rational_roots, resultant, Poly, Rational, Ring};
use shimcover::finite_field::CycleType;
use shimcover::galois::{enumerate_psl2_f8, sample_cycle_types};
use shimcover::involution::{algebraic_relation, fixed_locus, verify_involution, verify_self_map, X, Y};
use shimcover::qfactor::factor_over_q;
use shimcover::rng::seeded;

type Outcome = Result<String, String>;
type Check = fn(&Ctx) -> Outcome;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn q(s: &str) -> Rational {
    shimcover::exact::parse_rational(s).unwrap()
}

fn ct(s: &str) -> CycleType {
    s.parse().unwrap()
}

fn e<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// `p` from rational coefficients, highest degree last.
fn poly(v: &str, coeffs: &[&str]) -> Poly {
    Poly::from_upoly(v, &qx().from_coeffs(coeffs.iter().map(|c| q(c)).collect()))
}

fn monic(p: &Poly) -> Poly {
    let lc = p.leading_term().map(|(_, c)| c.clone()).unwrap();
    p.scale(&(Rational::one() / lc))
}

fn same_up_to_constant(a: &Poly, b: &Poly) -> bool {
    !a.is_zero() && !b.is_zero() && monic(a) == monic(b)
}

fn branch_cubic(v: &str) -> Poly {
    poly(v, &["-20736", "-992", "-1", "1"])
}

fn cubic_disc(c: [i64; 4]) -> BigInt {
    let [d, cc, b, a] = c.map(BigInt::from);
    &b * &b * &cc * &cc - 4 * &a * &cc * &cc * &cc - 4 * &b * &b * &b * &d - 27 * &a * &a * &d * &d
        + 18 * &a * &b * &cc * &d
}

fn is_rational_square(r: &Rational) -> bool {
    if r.is_negative() {
        return false;
    }
    let n = r.numer() * r.denom();
    let s = n.sqrt();
    &s * &s == n
}

struct Ctx {
    corpus: Corpus,
    runner: Runner,
}

fn c1(cx: &Ctx) -> Outcome {
    let (f, g) = (q("16/21"), Rational::zero());
    let c = cx.corpus.curve.clone();
    let mut direct = Rational::zero();
    for (exps, coeff) in c.terms() {
        let mut term = coeff.clone();
        for (v, k) in c.vars().iter().zip(exps) {
            let base = if v == F { &f } else { &g };
            for _ in 0..*k {
                term *= base;
            }
        }
        direct += term;
    }
    ensure(direct.is_zero(), "term-by-term evaluation is nonzero")?;
    let lib = e(c.eval_rational(&[(F, f), (G, g)]))?;
    ensure(lib.is_zero(), "library evaluation is nonzero")?;
    Ok("C(16/21, 0) = 0".into())
}

fn c2(cx: &Ctx) -> Outcome {
    let curve = e(cx.corpus.curve())?;
    let w = e(curve.is_smooth())?;
    ensure(w.smooth, format!("not smooth: {}", w.reason))?;
    let profiles = [(ct("3^3"), 1), (ct("2^4.1"), 3)];
    let genus = e(riemann_hurwitz(9, &profiles))?;
    let ramification: i64 = profiles.iter().map(|(c, n)| (9 - c.parts().len() as i64) * *n as i64).sum();
    let hand = (ramification - 2 * 9) / 2 + 1;
    ensure(genus == 1 && hand == 1, format!("Riemann-Hurwitz genus {genus}, by hand {hand}"))?;
    ensure(curve.plane_genus() == 1, "plane genus is not 1")?;
    Ok("smooth, genus 1 from Riemann-Hurwitz and plane degree".into())
}

fn c3(cx: &Ctx) -> Outcome {
    let b = e(cx.runner.branch_locus_cached())?;
    let finite = b.finite.clone();
    ensure(same_up_to_constant(&finite, &branch_cubic(T)), format!("branch polynomial {finite}"))?;
    ensure(b.includes_infinity, "infinity is not a branch point")?;
    Ok(format!("branch locus {} and infinity", monic(&finite)))
}

fn c4(cx: &Ctx) -> Outcome {
    let a = e(cx.runner.analysis())?;
    let at = |b: BasePoint| e(a.ramification_profile(&b)).map(|p| p.partition);
    let inf = at(BasePoint::Infinity)?;
    ensure(inf == ct("3^3"), format!("infinity: {inf}"))?;
    let br = at(BasePoint::Algebraic(branch_cubic(T)))?;
    ensure(br == ct("2^4.1"), format!("branch root: {br}"))?;
    let mut rng = seeded(7);
    let mut bases = vec![Rational::zero()];
    for _ in 0..10 {
        bases.push(Rational::new(rng.gen_range(-1000..=1000).into(), rng.gen_range(1..=100).into()));
    }
    for t0 in &bases {
        let p = at(BasePoint::Rational(t0.clone()))?;
        ensure(p == CycleType::identity(9), format!("t = {t0}: {p}"))?;
    }
    Ok(format!("3^3 at infinity, 2^4.1 over the branch cubic, 1^9 at {} rationals", bases.len()))
}

fn c5(cx: &Ctx) -> Outcome {
    let curve = e(cx.corpus.curve())?;
    let w2 = e(cx.corpus.w2())?;
    ensure(e(verify_self_map(&curve, &w2))?.passed(), "w2 does not map C to itself")?;
    ensure(e(verify_involution(&curve, &w2))?.passed(), "w2 o w2 != id")?;
    let ff = FunctionField::new(&curve);
    let (fi, gi) = e(w2.images(&ff))?;
    let (ff2, gg2) = (e(ff.compose_poly(&w2.image_f.0, &fi, &gi))?, e(ff.compose_poly(&w2.image_f.1, &fi, &gi))?);
    ensure(e(ff.try_div(&ff2, &gg2))? == ff.f(), "f does not return after two steps")?;
    let locus = e(fixed_locus(&curve, &w2))?;
    ensure(locus.count() == 4, format!("{} fixed points", locus.count()))?;
    let zeros = curve.poly().eval(F, &Rational::zero());
    let mut seen_zeros = false;
    let mut seen_point = false;
    for comp in &locus.components {
        if comp.rational_point() == Some((q("16/21"), Rational::zero())) {
            seen_point = true;
        } else if comp.count == 3 && same_up_to_constant(&comp.g_poly, &zeros) {
            let f_is_zero = comp.f_poly.deg() == 1 && comp.field.is_zero(&comp.f_poly.coeffs()[0]);
            ensure(f_is_zero, format!("component {} is not on f = 0", comp.describe()))?;
            seen_zeros = true;
        } else {
            return Err(format!("unexpected fixed component {}", comp.describe()));
        }
    }
    ensure(seen_zeros && seen_point, "fixed locus is missing points")?;
    Ok("w2 is an involution of C fixing the three zeros of f and (16/21, 0)".into())
}

fn c6(cx: &Ctx) -> Outcome {
    let c0 = cx.corpus.curve.eval(F, &Rational::zero());
    let phi0 = cx.corpus.phi.eval(F, &Rational::zero());
    let r = e(resultant(&c0, &(&Poly::var("x") - &phi0), G))?;
    ensure(same_up_to_constant(&r, &branch_cubic("x")), format!("eliminant {r}"))?;
    let cert = cx.runner.run_group("divisor-of-f").map_err(|e| e.to_string())?;
    ensure(cert.iter().all(|c| c.passed()), "divisor-of-f certificate failed")?;
    Ok("res_g(C(0, g), x - phi(0, g)) is the branch cubic".into())
}

fn expected_diagonal() -> Poly {
    let lin1 = poly(X, &["-4752/125", "1"]);
    let lin2 = poly(X, &["23549/125", "1"]);
    let c1 = branch_cubic(X);
    let c2 = poly(X, &["-203493376/125", "-1212672/125", "95568/125", "1"]);
    let c3 = poly(X, &["1126199296/15625", "-22910208/15625", "-16752/125", "1"]);
    [lin1.pow(2), lin2, c1, c2.pow(2), c3.pow(2)].iter().fold(Poly::one(), |a, b| &a * b)
}

fn c7(cx: &Ctx) -> Outcome {
    let phi2 = e(cx.runner.modular_polynomial())?;
    let p = &phi2.poly;
    ensure((p.degree_in(X), p.degree_in(Y)) == (9, 9), format!("bidegree ({}, {})", p.degree_in(X), p.degree_in(Y)))?;
    let swapped = p.rename(X, "Z").rename(Y, X).rename("Z", Y);
    ensure(swapped == *p || swapped == -p, "not symmetric up to sign")?;
    let curve = e(cx.corpus.curve())?;
    let ff = FunctionField::new(&curve);
    let u = e(ff.from_poly(&cx.corpus.phi))?;
    let v = e(e(cx.corpus.w2())?.pull_back(&ff, &cx.corpus.phi))?;
    ensure(e(ff.relation_vanishes(p, X, Y, &u, &v))?, "Phi(phi, phi o w2) is not zero on C")?;
    let wide = e(algebraic_relation(&ff, &u, &v, (12, 12), 1))?;
    ensure(wide.bidegree == (9, 9), format!("search up to (12, 12) found {:?}", wide.bidegree))?;
    ensure(same_up_to_constant(&wide.poly, p), "relation depends on the search box")?;
    let diag = p.substitute(Y, &Poly::var(X));
    ensure(same_up_to_constant(&diag, &expected_diagonal()), "Phi(X, X) differs from the expected product")?;
    Ok(format!("Phi2 of bidegree (9, 9), symmetric, vanishing on C; diagonal matches ({} primes)", phi2.primes_used))
}

fn c8(cx: &Ctx) -> Outcome {
    let diag = e(cx.runner.modular_polynomial())?.diagonal();
    let roots = e(rational_roots(&diag))?;
    let expected = vec![(q("-23549/125"), 1), (q("4752/125"), 2)];
    let mut got = roots.clone();
    got.sort();
    ensure(got == expected, format!("rational roots {got:?}"))?;
    let linear: BTreeMap<String, u32> = e(factor_over_q(&diag))?
        .factors
        .iter()
        .filter(|(f, _)| f.degree_in(X) == 1)
        .map(|(f, m)| (f.to_string(), *m))
        .collect();
    ensure(linear.len() == 2 && linear.values().sum::<u32>() == 3, format!("linear factors {linear:?}"))?;
    for (r, m) in &expected {
        let mut d = diag.clone();
        for _ in 0..*m {
            ensure(d.eval(X, r).is_zero(), format!("{r} is not a root of multiplicity {m}"))?;
            d = d.derivative(X);
        }
        ensure(!d.eval(X, r).is_zero(), format!("{r} has multiplicity above {m}"))?;
    }
    ensure(2i64.pow(4) * 3i64.pow(3) * 11 == 4752 && 5i64.pow(3) == 125, "4752/125 factorization")?;
    Ok("rational roots 4752/125 (x2) and -23549/125; 4752 = 2^4 3^3 11".into())
}

fn c9(cx: &Ctx) -> Outcome {
    let fiber = e(cx.runner.analysis())?.primary().clone();
    let at = |t: &str| e(factor_over_q(&Poly::from_upoly("x", &fiber.specialize(&q(t)))));
    let a = at("4752/125")?;
    let quad: Vec<&Poly> = a.factors.iter().filter(|(f, m)| f.degree_in("x") == 2 && *m == 1).map(|(f, _)| f).collect();
    ensure(!quad.is_empty(), format!("no quadratic factor at 4752/125: {:?}", a.degree_multiset()))?;
    for f in &quad {
        let c = |k: u32| f.coeff_of(&[("x", k)]);
        let disc = c(1) * c(1) - rat(4, 1) * c(2) * c(0);
        ensure(is_rational_square(&(disc.clone() / rat(-7, 1))), format!("discriminant {disc} not in -7 (Q*)^2"))?;
    }
    let b = at("-23549/125")?;
    ensure(b.degree_multiset() == vec![1, 8], format!("degrees at -23549/125: {:?}", b.degree_multiset()))?;
    Ok(format!("quadratic over Q(sqrt -7) at 4752/125 ({:?}); {{1, 8}} at -23549/125", a.degree_multiset()))
}

fn c10(cx: &Ctx) -> Outcome {
    let curve = e(cx.corpus.curve())?;
    let red = e(nagell_reduce(&curve, (q("16/21"), Rational::zero())))?;
    ensure(e(red.verify_identically(&FunctionField::new(&curve)))?, "reduction is not a birational map")?;
    let target = e(WeierstrassCurve::from_ints([1, -1, 1, -65773, -6478507]))?;
    let w = e(is_q_isomorphic(&red.model, &target))?.ok_or("no isomorphism witness")?;
    let [a1, a2, a3, a4, a6] = red.model.a.clone();
    let (u, r, s, t) = (w.u.clone(), w.r.clone(), w.s.clone(), w.t.clone());
    let two = rat(2, 1);
    let three = rat(3, 1);
    let image = [
        (&a1 + &two * &s) / &u,
        (&a2 - &s * &a1 + &three * &r - &s * &s) / u.pow(2),
        (&a3 + &r * &a1 + &two * &t) / u.pow(3),
        (&a4 - &s * &a3 + &two * &r * &a2 - (&t + &r * &s) * &a1 + &three * &r * &r - &two * &s * &t) / u.pow(4),
        (&a6 + &r * &a4 + &r * &r * &a2 + r.pow(3) - &t * &a3 - &t * &t - &r * &t * &a1) / u.pow(6),
    ];
    ensure(image == target.a, format!("witness maps the model to {image:?}"))?;
    Ok(format!("model {} isomorphic via (u, r, s, t) = ({}, {}, {}, {})", red.model.format(), u, r, s, t))
}

fn c11(cx: &Ctx) -> Outcome {
    let curve = e(cx.corpus.curve())?;
    let red = e(nagell_reduce(&curve, (q("16/21"), Rational::zero())))?;
    let zeros = e(curve.poly().eval(F, &Rational::zero()).to_upoly(G))?;
    let k = e(QuotientField::new(&zeros))?;
    let (x, y) = red.forward(&k, &k.zero(), &k.generator()).ok_or("zeros of f are poles")?;
    let [a1, a2, a3, a4, a6] = red.model.a.clone();
    let em = |r: &Rational| k.embed(r);
    let four = rat(4, 1);
    let b2 = &a1 * &a1 + &four * &a2;
    let b4 = rat(2, 1) * &a4 + &a1 * &a3;
    let b6 = &a3 * &a3 + &four * &a6;
    let x2 = k.mul(&x, &x);
    let division = [k.mul(&em(&four), &k.mul(&x2, &x)), k.mul(&em(&b2), &x2), k.mul(&em(&(rat(2, 1) * &b4)), &x), em(&b6)]
        .iter()
        .fold(k.zero(), |acc, v| k.add(&acc, v));
    ensure(k.is_zero(&division), "x is not a root of the 2-division cubic")?;
    let tangent = k.add(&k.add(&k.mul(&em(&rat(2, 1)), &y), &k.mul(&em(&a1), &x)), &em(&a3));
    ensure(k.is_zero(&tangent), "2y + a1 x + a3 != 0")?;
    let certs = cx.runner.run_group("two-torsion").map_err(|e| e.to_string())?;
    ensure(certs.iter().all(|c| c.passed()), "two-torsion certificate failed")?;
    Ok("zeros of f map to the 2-torsion over Q[g]/(C(0, g))".into())
}

fn c12(cx: &Ctx) -> Outcome {
    let oracle = enumerate_psl2_f8();
    ensure(oracle.order() == 504, format!("order {}", oracle.order()))?;
    let expected: BTreeMap<CycleType, usize> =
        [("1^9", 1), ("2^4.1", 63), ("3^3", 56), ("7.1^2", 216), ("9", 168)].iter().map(|(c, n)| (ct(c), *n)).collect();
    ensure(*oracle.table() == expected, format!("cycle table {:?}", oracle.table()))?;
    let opts = RunOptions::default();
    let family = e(cx.runner.analysis())?.primary().poly.clone();
    let cf = Some(&cx.corpus.constant_field);
    let report = e(sample_cycle_types(&family, &opts.primes, opts.samples, opts.seed, cf))?;
    ensure(report.primes.len() >= 3 && report.samples >= 1000, "fewer than 3 primes x 1000 samples")?;
    let hist = report.histogram();
    let total: usize = hist.values().sum();
    let mut worst = Rational::zero();
    for (c, n) in &hist {
        ensure(expected.contains_key(c), format!("type {c} is not in the group"))?;
        let dev = (Rational::new((*n).into(), total.into()) - Rational::new(expected[c].into(), 504.into())).abs();
        worst = worst.max(dev);
    }
    for (c, n) in &expected {
        if c.is_identity() {
            continue;
        }
        ensure(hist.contains_key(c), format!("type {c} never observed"))?;
        let dev = (Rational::new(hist[c].into(), total.into()) - Rational::new((*n).into(), 504.into())).abs();
        worst = worst.max(dev);
    }
    ensure(worst <= rat(1, 20), format!("deviation {worst} above 1/20"))?;
    let mut reversed = opts.primes.clone();
    reversed.reverse();
    let again = e(sample_cycle_types(&family, &reversed, opts.samples, opts.seed, cf))?;
    ensure(again.histogram() == hist, "sampling is not deterministic")?;
    let certs = cx.runner.run_group("galois").map_err(|e| e.to_string())?;
    ensure(certs.iter().all(|c| c.passed()), "galois certificates failed")?;
    let worst_f = worst.numer().to_string().parse::<f64>().unwrap() / worst.denom().to_string().parse::<f64>().unwrap();
    Ok(format!("PSL2(F8) table exact; {total} samples, max deviation {worst_f:.4}"))
}

fn c13(_: &Ctx) -> Outcome {
    let a = e(discriminant(&poly("x", &["1", "-4", "1", "1"]), "x"))?;
    let b = e(discriminant(&poly("x", &["12", "-4", "-1", "1"]), "x"))?;
    ensure(cubic_disc([1, -4, 1, 1]) == BigInt::from(169), "formula disagrees for x^3 + x^2 - 4x + 1")?;
    ensure(cubic_disc([12, -4, -1, 1]) == BigInt::from(-2704), "formula disagrees for x^3 - x^2 - 4x + 12")?;
    ensure(a.constant_value() == Some(rat(169, 1)), format!("disc {a}"))?;
    ensure(b.constant_value() == Some(rat(-2704, 1)), format!("disc {b}"))?;
    Ok("169 = 13^2 and -2704 = -2^4 13^2".into())
}

fn c14(_: &Ctx) -> Outcome {
    let mut names = Vec::new();
    for (name, r) in common::run_all(common::CASES) {
        r.map_err(|m| format!("{name}: {m}"))?;
        names.push(name);
    }
    Ok(format!("{} with {} cases each", names.join(", "), common::CASES))
}

fn main() {
    let corpus = Corpus::builtin();
    let cx = Ctx { runner: Runner::new(corpus.clone(), RunOptions::default()), corpus };
    let criteria: [(&str, Check); 14] = [
        ("curve membership", c1),
        ("smoothness and genus", c2),
        ("branch locus", c3),
        ("ramification profiles", c4),
        ("involution", c5),
        ("divisor of f", c6),
        ("modular polynomial", c7),
        ("rational CM points", c8),
        ("CM fibers", c9),
        ("Weierstrass model", c10),
        ("two-torsion", c11),
        ("monodromy", c12),
        ("discriminants", c13),
        ("library hygiene", c14),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = check(&cx);
        let ms = start.elapsed().as_millis();
        match out {
            Ok(detail) => println!("PASS criterion {:2} {name} ({ms} ms): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:2} {name} ({ms} ms): {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
