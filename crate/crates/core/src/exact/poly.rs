use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::ring::Ring;
use super::{format_rational, qx, Rational, UPoly};
use crate::{Error, Result};

/// Sparse multivariate polynomial over `Q`.
///
/// Variables are kept sorted by name; binary operations work on the union
/// of both variable lists. Zero coefficients are never stored, so the zero
/// polynomial has an empty term map. Exponent vectors are compared
/// lexicographically in variable order, which is the monomial order used by
/// [`Poly::div_exact`].
#[derive(Clone, Debug, Default)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let vars = union(&self.vars, &other.vars);
        self.with_vars(&vars).terms == other.with_vars(&vars).terms
    }
}

impl Eq for Poly {}

fn union(a: &[String], b: &[String]) -> Vec<String> {
    let mut v: Vec<String> = a.iter().chain(b.iter()).cloned().collect();
    v.sort();
    v.dedup();
    v
}

impl Poly {
    pub fn zero() -> Poly {
        Poly::default()
    }

    pub fn one() -> Poly {
        Poly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Poly {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        Poly { vars: Vec::new(), terms }
    }

    pub fn int(n: i64) -> Poly {
        Poly::constant(Rational::from_integer(BigInt::from(n)))
    }

    pub fn var(name: &str) -> Poly {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        Poly { vars: vec![name.to_string()], terms }
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, exponents
    /// listed in the order of `vars` (which need not be sorted).
    pub fn from_terms<I>(vars: &[&str], terms: I) -> Result<Poly>
    where
        I: IntoIterator<Item = (Vec<u32>, Rational)>,
    {
        let mut sorted: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != vars.len() {
            return Err(Error::VariableMismatch(format!("duplicate variable in {vars:?}")));
        }
        let perm: Vec<usize> = vars.iter().map(|v| sorted.iter().position(|s| s == v).unwrap()).collect();
        let mut out = Poly { vars: sorted, terms: BTreeMap::new() };
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::VariableMismatch(format!(
                    "exponent vector {e:?} does not match {} variables",
                    vars.len()
                )));
            }
            let mut k = vec![0; vars.len()];
            for (i, &p) in perm.iter().enumerate() {
                k[p] = e[i];
            }
            out.add_term(k, c);
        }
        Ok(out)
    }

    fn add_term(&mut self, e: Vec<u32>, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn var_index(&self, v: &str) -> Option<usize> {
        self.vars.iter().position(|s| s == v)
    }

    /// Variables that actually occur with positive exponent.
    pub fn used_vars(&self) -> Vec<String> {
        self.vars
            .iter()
            .enumerate()
            .filter(|(i, _)| self.terms.keys().any(|e| e[*i] > 0))
            .map(|(_, v)| v.clone())
            .collect()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn constant_value(&self) -> Option<Rational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.values().next().cloned().unwrap_or_else(Rational::zero))
    }

    pub fn degree_in(&self, v: &str) -> usize {
        match self.var_index(v) {
            None => 0,
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0) as usize,
        }
    }

    pub fn total_degree(&self) -> usize {
        self.terms.keys().map(|e| e.iter().sum::<u32>()).max().unwrap_or(0) as usize
    }

    /// Coefficient of the monomial given by `(var, exponent)` pairs; absent
    /// variables have exponent zero.
    pub fn coeff_of(&self, monomial: &[(&str, u32)]) -> Rational {
        let mut e = vec![0u32; self.vars.len()];
        for (v, k) in monomial {
            match self.var_index(v) {
                Some(i) => e[i] = *k,
                None if *k == 0 => {}
                None => return Rational::zero(),
            }
        }
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Re-expresses over a superset of the current variables.
    pub fn with_vars(&self, vars: &[String]) -> Poly {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let idx: Vec<usize> = self
            .vars
            .iter()
            .map(|v| vars.iter().position(|s| s == v).expect("with_vars needs a superset"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut k = vec![0; vars.len()];
                for (i, &j) in idx.iter().enumerate() {
                    k[j] = e[i];
                }
                (k, c.clone())
            })
            .collect();
        Poly { vars: vars.to_vec(), terms }
    }

    /// Drops variables that do not occur.
    pub fn trim_vars(&self) -> Poly {
        let used = self.used_vars();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let keep: Vec<usize> = self.vars.iter().enumerate().filter(|(_, v)| used.contains(v)).map(|(i, _)| i).collect();
        let terms = self.terms.iter().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone())).collect();
        Poly { vars: used, terms }
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        }
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Coefficients with respect to `v`: entry `k` is the coefficient of
    /// `v^k`, a polynomial in the remaining variables.
    pub fn coefficients_in(&self, v: &str) -> Vec<Poly> {
        let Some(i) = self.var_index(v) else {
            return if self.is_zero() { Vec::new() } else { vec![self.clone()] };
        };
        let rest: Vec<String> = self.vars.iter().filter(|s| *s != v).cloned().collect();
        let n = self.degree_in(v);
        let mut out = vec![Poly { vars: rest.clone(), terms: BTreeMap::new() }; n + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let mut k = e.clone();
            let d = k.remove(i) as usize;
            out[d].terms.insert(k, c.clone());
        }
        out
    }

    /// Inverse of [`Poly::coefficients_in`].
    pub fn from_coefficients_in(v: &str, coeffs: &[Poly]) -> Poly {
        let x = Poly::var(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * &x) + c;
        }
        acc
    }

    pub fn derivative(&self, v: &str) -> Poly {
        let Some(i) = self.var_index(v) else {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        };
        let mut out = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut k = e.clone();
            k[i] -= 1;
            out.add_term(k, c * Rational::from_integer(BigInt::from(e[i])));
        }
        out
    }

    /// Substitutes a rational for `v`; the variable is removed.
    pub fn eval(&self, v: &str, x: &Rational) -> Poly {
        let coeffs = self.coefficients_in(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &acc.scale(x) + c;
        }
        if self.var_index(v).is_some() {
            let rest: Vec<String> = self.vars.iter().filter(|s| *s != v).cloned().collect();
            acc = acc.with_vars(&union(&rest, acc.vars()));
        }
        acc
    }

    /// Substitutes a polynomial for `v`.
    pub fn substitute(&self, v: &str, p: &Poly) -> Poly {
        let coeffs = self.coefficients_in(v);
        let mut acc = Poly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * p) + c;
        }
        acc
    }

    /// Simultaneous substitution of several variables.
    pub fn compose(&self, subs: &[(&str, Poly)]) -> Poly {
        let mut acc = Poly::zero();
        for (e, c) in &self.terms {
            let mut t = Poly::constant(c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let name = &self.vars[i];
                let base = match subs.iter().find(|(v, _)| v == name) {
                    Some((_, p)) => p.clone(),
                    None => Poly::var(name),
                };
                t = &t * &base.pow(k);
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Renames a variable (the target must not already occur).
    pub fn rename(&self, from: &str, to: &str) -> Poly {
        self.compose(&[(from, Poly::var(to))])
    }

    /// Evaluates at ring elements. Variables missing from `assign` are an
    /// error if they occur.
    pub fn eval_in<R, F>(&self, ring: &R, assign: &[(&str, R::Elem)], embed: F) -> Result<R::Elem>
    where
        R: Ring,
        F: Fn(&Rational) -> R::Elem,
    {
        let idx: Vec<Option<usize>> =
            self.vars.iter().map(|v| assign.iter().position(|(name, _)| name == v)).collect();
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut t = embed(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                let j = idx[i].ok_or_else(|| Error::VariableMismatch(format!("no value for `{}`", self.vars[i])))?;
                t = ring.mul(&t, &ring.pow(&assign[j].1, k as u64));
            }
            acc = ring.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Evaluates at rationals for every occurring variable.
    pub fn eval_rational(&self, assign: &[(&str, Rational)]) -> Result<Rational> {
        self.eval_in(&super::Rationals, assign, |c| c.clone())
    }

    /// Dense univariate view; fails if another variable occurs.
    pub fn to_upoly(&self, v: &str) -> Result<UPoly<Rational>> {
        if let Some(other) = self.used_vars().into_iter().find(|s| s != v) {
            return Err(Error::VariableMismatch(format!("expected a polynomial in `{v}` only, found `{other}`")));
        }
        let coeffs = self.coefficients_in(v).into_iter().map(|c| c.constant_value().unwrap()).collect();
        Ok(qx().from_coeffs(coeffs))
    }

    pub fn from_upoly(v: &str, p: &UPoly<Rational>) -> Poly {
        let mut out = Poly { vars: vec![v.to_string()], terms: BTreeMap::new() };
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(vec![i as u32], c.clone());
        }
        out
    }

    /// The single variable of a univariate polynomial, if any.
    pub fn univariate_var(&self) -> Result<Option<String>> {
        let used = self.used_vars();
        match used.len() {
            0 => Ok(None),
            1 => Ok(Some(used[0].clone())),
            _ => Err(Error::VariableMismatch(format!("expected univariate polynomial, found {used:?}"))),
        }
    }

    /// Lex-leading term.
    pub fn leading_term(&self) -> Option<(&[u32], &Rational)> {
        self.terms.iter().next_back().map(|(e, c)| (e.as_slice(), c))
    }

    /// Exact quotient, `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let vars = union(&self.vars, &d.vars);
        let mut r = self.with_vars(&vars);
        let d = d.with_vars(&vars);
        let (ed, cd) = {
            let (e, c) = d.terms.iter().next_back().unwrap();
            (e.clone(), c.clone())
        };
        let cd_inv = cd.recip();
        let mut q = Poly { vars: vars.clone(), terms: BTreeMap::new() };
        while let Some((er, cr)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            if er.iter().zip(&ed).any(|(a, b)| a < b) {
                return None;
            }
            let m: Vec<u32> = er.iter().zip(&ed).map(|(a, b)| a - b).collect();
            let c = &cr * &cd_inv;
            for (e, x) in &d.terms {
                let k: Vec<u32> = e.iter().zip(&m).map(|(a, b)| a + b).collect();
                r.add_term(k, -(x * &c));
            }
            q.add_term(m, c);
        }
        Some(q)
    }

    /// Returns `(z, s)` with `self = s * z`, `z` having coprime integer
    /// coefficients and a positive lex-leading coefficient.
    pub fn primitive_integer(&self) -> (Poly, Rational) {
        if self.is_zero() {
            return (self.clone(), Rational::zero());
        }
        let l = self.terms.values().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let g = self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(&(c * Rational::from_integer(l.clone())).to_integer()));
        let mut s = Rational::new(g, l);
        if self.leading_term().unwrap().1.is_negative() {
            s = -s;
        }
        (self.scale(&s.recip()), s)
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficients as integers; panics if some coefficient is not integral.
    pub fn integer_terms(&self) -> impl Iterator<Item = (&[u32], BigInt)> {
        self.terms.iter().map(|(e, c)| {
            assert!(c.is_integer(), "non-integral coefficient");
            (e.as_slice(), c.to_integer())
        })
    }

    /// Homogenizes with a new variable `z` to total degree `deg`.
    pub fn homogenize(&self, z: &str, deg: usize) -> Poly {
        let mut acc = Poly::zero();
        let zv = Poly::var(z);
        for (e, c) in &self.terms {
            let d = e.iter().sum::<u32>() as usize;
            let mut t = Poly { vars: self.vars.clone(), terms: BTreeMap::new() };
            t.terms.insert(e.clone(), c.clone());
            acc = &acc + &(&t * &zv.pow((deg - d) as u32));
        }
        acc
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() as usize == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let vars = union(&self.vars, &rhs.vars);
        let mut out = self.with_vars(&vars);
        let rhs = rhs.with_vars(&vars);
        for (e, c) in rhs.terms {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let vars = union(&self.vars, &rhs.vars);
        let a = self.with_vars(&vars);
        let b = rhs.with_vars(&vars);
        let mut out = Poly { vars, terms: BTreeMap::new() };
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca * cb);
            }
        }
        out
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { self.vars[i].clone() } else { format!("{}^{}", self.vars[i], k) })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if mono.is_empty() {
                write!(f, "{}", format_rational(&a))?;
            } else if a.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&a), mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn f() -> Poly {
        Poly::var("f")
    }
    fn g() -> Poly {
        Poly::var("g")
    }

    #[test]
    fn arithmetic_aligns_variables() {
        let p = &f() + &g();
        let q = &f() - &g();
        let prod = &p * &q;
        assert_eq!(prod, &f().pow(2) - &g().pow(2));
        assert_eq!(prod.vars(), &["f".to_string(), "g".to_string()]);
        assert!((&prod - &prod).is_zero());
    }

    #[test]
    fn exact_division() {
        let p = &f().pow(3) - &(&f() * &g().pow(2));
        let d = &f() - &g();
        let q = p.div_exact(&d).unwrap();
        assert_eq!(&q * &d, p);
        assert!(p.div_exact(&(&f() + &Poly::int(1))).is_none());
    }

    #[test]
    fn eval_and_substitute() {
        let p = &(&f() * &g()) + &Poly::int(3);
        assert_eq!(p.eval("f", &rat(1, 2)), &g().scale(&rat(1, 2)) + &Poly::int(3));
        let s = p.substitute("g", &(&f() + &Poly::int(1)));
        assert_eq!(s, &(&f().pow(2) + &f()) + &Poly::int(3));
        assert_eq!(p.eval_rational(&[("f", rat(2, 1)), ("g", rat(5, 1))]).unwrap(), rat(13, 1));
    }

    #[test]
    fn from_terms_reorders_variables() {
        let p = Poly::from_terms(&["g", "f"], vec![(vec![2, 1], rat(1, 1))]).unwrap();
        assert_eq!(p, &f() * &g().pow(2));
        assert!(Poly::from_terms(&["f"], vec![(vec![1, 1], rat(1, 1))]).is_err());
    }

    #[test]
    fn display_is_readable() {
        let p = &(&f().pow(2).scale(&rat(-25, 84)) + &g()) - &Poly::int(1);
        assert_eq!(p.to_string(), "-25/84*f^2 + g - 1");
    }

    #[test]
    fn primitive_integer_form() {
        let p = &f().scale(&rat(-2, 3)) + &Poly::constant(rat(4, 9));
        let (z, s) = p.primitive_integer();
        assert!(z.is_integral());
        assert_eq!(z.scale(&s), p);
        assert!(z.leading_term().unwrap().1.is_positive());
    }
}
