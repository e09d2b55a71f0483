//! Factorization over `Q`: square-free decomposition, a good prime,
//! factorization mod p, Hensel lifting above the Mignotte bound, and
//! exhaustive subset recombination.

mod hensel;

pub use hensel::lift;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::exact::zpoly::{self, clear_denominators, mignotte_bound, symmetric_mod, to_rational, ZPoly};
use crate::exact::{qx, zx, Poly, Rational, UPoly};
use crate::finite_field::{factor_degrees, factor_mod_p, next_prime, FpPoly, PrimeField};
use crate::rng::seeded;
use crate::{Error, Result};

pub const FIRST_PRIME: u64 = 101;
const CANDIDATE_PRIMES: usize = 5;

/// `unit * prod(factor^mult)`, factors primitive integral irreducible with
/// positive leading coefficient, sorted by degree then coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct QFactorization {
    pub var: String,
    pub unit: Rational,
    pub factors: Vec<(Poly, u32)>,
}

impl QFactorization {
    pub fn reconstruct(&self) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    /// Degrees with multiplicity, e.g. `[1, 8]`.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = self
            .factors
            .iter()
            .flat_map(|(f, m)| std::iter::repeat_n(f.degree_in(&self.var), *m as usize))
            .collect();
        d.sort_unstable();
        d
    }
}

/// Factors a univariate polynomial over `Q`.
pub fn factor_over_q(p: &Poly) -> Result<QFactorization> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let var = p.univariate_var()?.unwrap_or_else(|| "x".to_string());
    let (unit, factors) = factor_qpoly(&p.to_upoly(&var)?)?;
    Ok(QFactorization {
        factors: factors.iter().map(|(z, m)| (Poly::from_upoly(&var, &to_rational(z)), *m)).collect(),
        var,
        unit,
    })
}

/// Dense version of [`factor_over_q`].
pub fn factor_qpoly(p: &UPoly<Rational>) -> Result<(Rational, Vec<(ZPoly, u32)>)> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (z, scale) = clear_denominators(p);
    let mut out = Vec::new();
    for (part, m) in qx().squarefree_char0(&to_rational(&z)) {
        let (zp, _) = clear_denominators(&part);
        for g in factor_squarefree(&zp) {
            out.push((g, m));
        }
    }
    out.sort_by(|a, b| a.0.deg().cmp(&b.0.deg()).then_with(|| a.0.coeffs().cmp(b.0.coeffs())));
    let prod = out.iter().fold(zx().one(), |acc, (g, m)| zx().mul(&acc, &zx().pow(g, *m as u64)));
    let ratio = Rational::new(z.lc().unwrap().clone(), prod.lc().unwrap().clone());
    let unit = scale * ratio;
    debug_assert_eq!(qx().scale(&to_rational(&prod), &unit), *p);
    spot_check(&out)?;
    Ok((unit, out))
}

fn good_prime(z: &ZPoly, p: u64) -> Option<PrimeField> {
    let field = PrimeField::new(p).ok()?;
    let zb = field.reduce_int(z);
    let r = field.ring();
    (zb.deg() == z.deg() && r.gcd(&zb, &r.derivative(&zb)).deg() == 0).then_some(field)
}

/// The first `count` primes `>= start` for which `z` keeps its degree and
/// stays square-free.
pub fn good_primes(z: &ZPoly, start: u64, count: usize) -> Vec<PrimeField> {
    let mut out = Vec::new();
    let mut p = next_prime(start);
    while out.len() < count {
        if let Some(f) = good_prime(z, p) {
            out.push(f);
        }
        p = next_prime(p + 1);
    }
    out
}

/// Irreducible factors of a primitive square-free polynomial of positive
/// leading coefficient.
pub fn factor_squarefree(z: &ZPoly) -> Vec<ZPoly> {
    if z.deg() <= 1 {
        return vec![z.clone()];
    }
    let primes = good_primes(z, FIRST_PRIME, CANDIDATE_PRIMES);
    let mut best: Option<(PrimeField, Vec<FpPoly>)> = None;
    for field in primes {
        let zb = field.reduce_int(z);
        if factor_degrees(&field, &zb).len() == 1 {
            return vec![z.clone()];
        }
        let fs: Vec<FpPoly> = factor_mod_p(&field, &zb, &mut seeded(field.p()))
            .expect("nonzero")
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if best.as_ref().map(|b| fs.len() < b.1.len()).unwrap_or(true) {
            best = Some((field, fs));
        }
    }
    let (field, fs) = best.unwrap();
    let bound: BigInt = mignotte_bound(z) * z.lc().unwrap().abs() * 4;
    let (lifted, m) = lift(&field, z, &fs, &bound);
    recombine(z, lifted, &m)
}

fn recombine(z: &ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt) -> Vec<ZPoly> {
    let r = zx();
    let mut f = z.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        for subset in subsets(lifted.len(), size) {
            let lc = f.lc().unwrap().clone();
            let cand = subset.iter().fold(r.constant(lc), |acc, &i| r.mul(&acc, &lifted[i]));
            let cand = zpoly::primitive_part(&symmetric_mod(&cand, m));
            if let Some(q) = zpoly::div_exact(&f, &cand) {
                out.push(cand);
                f = q;
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.deg() > 0 {
        out.push(zpoly::primitive_part(&f));
    }
    out
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < n - k + i {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Whether the parts of `pattern` can be grouped so the group sums are
/// exactly `degrees` (a mod-p pattern always refines the degrees over `Q`).
pub fn refines(pattern: &[usize], degrees: &[usize]) -> bool {
    fn go(parts: &[usize], bins: &mut Vec<usize>) -> bool {
        let Some((&first, rest)) = parts.split_first() else {
            return bins.iter().all(|&b| b == 0);
        };
        let mut tried = Vec::new();
        for i in 0..bins.len() {
            if bins[i] >= first && !tried.contains(&bins[i]) {
                tried.push(bins[i]);
                bins[i] -= first;
                if go(rest, bins) {
                    bins[i] += first;
                    return true;
                }
                bins[i] += first;
            }
        }
        false
    }
    let mut p = pattern.to_vec();
    p.sort_unstable_by(|a, b| b.cmp(a));
    p.iter().sum::<usize>() == degrees.iter().sum::<usize>() && go(&p, &mut degrees.to_vec())
}

/// Independent consistency check: at two good primes the mod-p factor
/// degrees of the square-free part must refine the degrees found over Q.
fn spot_check(factors: &[(ZPoly, u32)]) -> Result<()> {
    let sq = factors.iter().fold(zx().one(), |acc, (g, _)| zx().mul(&acc, g));
    if sq.deg() == 0 {
        return Ok(());
    }
    let degrees: Vec<usize> = factors.iter().map(|(g, _)| g.deg()).collect();
    for field in good_primes(&sq, 2 * FIRST_PRIME, 2) {
        let pattern = factor_degrees(&field, &field.reduce_int(&sq));
        if !refines(&pattern, &degrees) {
            return Err(Error::Unexpected(format!(
                "factor degrees {degrees:?} over Q are not refined by {pattern:?} mod {}",
                field.p()
            )));
        }
    }
    Ok(())
}

/// Outcome of an irreducibility test with its evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityWitness {
    pub irreducible: bool,
    /// Degrees of the factors over Q, with multiplicity.
    pub factor_degrees: Vec<usize>,
    /// A prime modulo which the polynomial is already irreducible, if one
    /// was found among the candidates.
    pub prime_shortcut: Option<u64>,
}

pub fn is_irreducible_q(p: &Poly) -> Result<IrreducibilityWitness> {
    let var = p.univariate_var()?;
    let Some(var) = var else {
        return Err(Error::DegreeTooSmall { needed: 1, got: 0 });
    };
    let fac = factor_over_q(p)?;
    let degs = fac.degree_multiset();
    let irreducible = degs.len() == 1;
    let mut prime_shortcut = None;
    let (z, _) = clear_denominators(&p.to_upoly(&var)?);
    if irreducible && z.deg() > 1 {
        for field in good_primes(&z, FIRST_PRIME, CANDIDATE_PRIMES) {
            if factor_degrees(&field, &field.reduce_int(&z)).len() == 1 {
                prime_shortcut = Some(field.p());
                break;
            }
        }
    }
    Ok(IrreducibilityWitness { irreducible, factor_degrees: degs, prime_shortcut })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x() -> Poly {
        Poly::var("x")
    }

    #[test]
    fn difference_of_squares() {
        let p = &x().pow(2) - &Poly::int(1);
        let f = factor_over_q(&p).unwrap();
        assert_eq!(f.factors, vec![(&x() - &Poly::int(1), 1), (&x() + &Poly::int(1), 1)]);
        assert_eq!(f.reconstruct(), p);
    }

    #[test]
    fn swinnerton_dyer_style_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits into quadratics or
        // linears modulo every prime.
        let p = &(&x().pow(4) - &x().pow(2).scale(&rat(10, 1))) + &Poly::int(1);
        let f = factor_over_q(&p).unwrap();
        assert_eq!(f.factors.len(), 1);
        let w = is_irreducible_q(&p).unwrap();
        assert!(w.irreducible);
        assert_eq!(w.prime_shortcut, None);
    }

    #[test]
    fn mixed_multiplicities_and_units() {
        let a = &(&x().pow(3) - &x().pow(2)) - &(&x().scale(&rat(992, 1)) + &Poly::int(20736));
        let b = &x().scale(&rat(125, 1)) - &Poly::int(4752);
        let p = (&(&a * &b.pow(2)) * &(&x().pow(2) + &Poly::int(7))).scale(&rat(-3, 14));
        let f = factor_over_q(&p).unwrap();
        assert_eq!(f.reconstruct(), p);
        assert_eq!(f.degree_multiset(), vec![1, 1, 2, 3]);
        assert!(f.factors.contains(&(b, 2)));
    }

    #[test]
    fn cubics_from_the_branch_data() {
        let c = &(&(&x().pow(3) + &x().pow(2)) - &x().scale(&rat(4, 1))) + &Poly::int(1);
        assert!(is_irreducible_q(&c).unwrap().irreducible);
        let c2 = &(&(&x().pow(3) - &x().pow(2)) - &x().scale(&rat(992, 1))) - &Poly::int(20736);
        let w = is_irreducible_q(&c2).unwrap();
        assert!(w.irreducible);
        assert!(w.prime_shortcut.is_some());
        assert!(!is_irreducible_q(&(&x().pow(2) - &Poly::int(1))).unwrap().irreducible);
        assert!(is_irreducible_q(&Poly::int(3)).is_err());
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 1), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert!(refines(&[2, 1, 1], &[3, 1]));
        assert!(!refines(&[2, 2], &[3, 1]));
    }
}
