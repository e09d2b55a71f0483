use num_traits::Zero;

use super::{qx, Poly, Rational};
use crate::{Error, Result};

fn common_var(p: &Poly, q: &Poly) -> Result<Option<String>> {
    let a = p.univariate_var()?;
    let b = q.univariate_var()?;
    match (a, b) {
        (Some(x), Some(y)) if x != y => Err(Error::VariableMismatch(format!("`{x}` vs `{y}`"))),
        (Some(x), _) | (_, Some(x)) => Ok(Some(x)),
        (None, None) => Ok(None),
    }
}

/// Monic gcd of two univariate polynomials in the same variable.
pub fn gcd(p: &Poly, q: &Poly) -> Result<Poly> {
    let Some(v) = common_var(p, q)? else {
        return Ok(if p.is_zero() && q.is_zero() { Poly::zero() } else { Poly::one() });
    };
    let a = p.to_upoly(&v)?;
    let b = q.to_upoly(&v)?;
    Ok(Poly::from_upoly(&v, &qx().gcd(&a, &b)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SquarefreeDecomposition {
    /// Monic, square-free, pairwise coprime factors with multiplicities.
    pub factors: Vec<(Poly, u32)>,
    pub unit: Rational,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> Poly {
        self.factors.iter().fold(Poly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }

    pub fn multiplicity_of(&self, factor: &Poly) -> u32 {
        self.factors
            .iter()
            .filter(|(f, _)| f.div_exact(factor).is_some())
            .map(|(_, m)| *m)
            .sum()
    }
}

/// Yun decomposition of a univariate polynomial over `Q`.
pub fn squarefree_decompose(p: &Poly) -> Result<SquarefreeDecomposition> {
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let Some(v) = p.univariate_var()? else {
        return Ok(SquarefreeDecomposition { factors: Vec::new(), unit: p.constant_value().unwrap() });
    };
    let a = p.to_upoly(&v)?;
    let unit = a.lc().cloned().unwrap_or_else(Rational::zero);
    let factors = qx()
        .squarefree_char0(&a)
        .into_iter()
        .filter(|(f, _)| f.deg() > 0)
        .map(|(f, m)| (Poly::from_upoly(&v, &f), m))
        .collect();
    Ok(SquarefreeDecomposition { factors, unit })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn x() -> Poly {
        Poly::var("x")
    }

    #[test]
    fn gcd_basics() {
        let p = &x().pow(2) - &Poly::int(1);
        let q = &x() - &Poly::int(1);
        assert_eq!(gcd(&p, &q).unwrap(), q);
        assert_eq!(gcd(&p.scale(&rat(3, 1)), &Poly::zero()).unwrap(), p);
        assert!(gcd(&x(), &Poly::var("y")).is_err());
    }

    #[test]
    fn yun_multiplicities() {
        let p = &(&x() - &Poly::int(1)).pow(2) * &(&x() + &Poly::int(2));
        let d = squarefree_decompose(&p.scale(&rat(-3, 2))).unwrap();
        assert_eq!(d.unit, rat(-3, 2));
        assert_eq!(d.factors, vec![(&x() + &Poly::int(2), 1), (&x() - &Poly::int(1), 2)]);
        assert_eq!(d.reconstruct(), p.scale(&rat(-3, 2)));
        let n = squarefree_decompose(&x().pow(9)).unwrap();
        assert_eq!(n.factors, vec![(x(), 9)]);
        assert!(squarefree_decompose(&Poly::zero()).is_err());
    }
}
