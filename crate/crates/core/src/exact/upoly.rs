use super::ring::{Field, Ring};

/// Dense univariate polynomial, coefficients from degree 0 upward.
///
/// Never stores a zero leading coefficient; the zero polynomial has no
/// coefficients. Construct through [`PolyRing`] so trimming uses the
/// coefficient ring's notion of zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UPoly<E> {
    coeffs: Vec<E>,
}

impl<E> UPoly<E> {
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }

    pub fn map<F, T>(&self, f: F) -> Vec<T>
    where
        F: FnMut(&E) -> T,
    {
        self.coeffs.iter().map(f).collect()
    }
}

/// Polynomial ring `R[x]` over a ring structure.
#[derive(Clone, Debug)]
pub struct PolyRing<R: Ring> {
    pub base: R,
}

impl<R: Ring> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> UPoly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> UPoly<R::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.base.from_i64(c)).collect())
    }

    pub fn zero(&self) -> UPoly<R::Elem> {
        UPoly { coeffs: Vec::new() }
    }

    pub fn one(&self) -> UPoly<R::Elem> {
        self.constant(self.base.one())
    }

    pub fn constant(&self, c: R::Elem) -> UPoly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c * x^k`.
    pub fn monomial(&self, c: R::Elem, k: usize) -> UPoly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn x(&self) -> UPoly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn add(&self, a: &UPoly<R::Elem>, b: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.add(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn sub(&self, a: &UPoly<R::Elem>, b: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.base.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&z);
                let y = b.coeffs.get(i).unwrap_or(&z);
                self.base.sub(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        UPoly { coeffs: a.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    pub fn mul(&self, a: &UPoly<R::Elem>, b: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.base.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(x, y);
                v[i + j] = self.base.add(&v[i + j], &t);
            }
        }
        self.from_coeffs(v)
    }

    pub fn scale(&self, a: &UPoly<R::Elem>, c: &R::Elem) -> UPoly<R::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.base.mul(x, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, a: &UPoly<R::Elem>, k: usize) -> UPoly<R::Elem> {
        if a.is_zero() {
            return self.zero();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(a.coeffs.iter().cloned());
        UPoly { coeffs: v }
    }

    pub fn pow(&self, a: &UPoly<R::Elem>, mut e: u64) -> UPoly<R::Elem> {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, a: &UPoly<R::Elem>, x: &R::Elem) -> R::Elem {
        let mut acc = self.base.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.base.add(&self.base.mul(&acc, x), c);
        }
        acc
    }

    /// `a(b(x))`.
    pub fn compose(&self, a: &UPoly<R::Elem>, b: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        let mut acc = self.zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, b), &self.constant(c.clone()));
        }
        acc
    }

    pub fn derivative(&self, a: &UPoly<R::Elem>) -> UPoly<R::Elem> {
        let v = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.base.mul(&self.base.from_i64(i as i64), c))
            .collect();
        self.from_coeffs(v)
    }

    /// Coefficients reversed with respect to degree `n` (`x^n a(1/x)`).
    pub fn reverse(&self, a: &UPoly<R::Elem>, n: usize) -> UPoly<R::Elem> {
        let mut v = vec![self.base.zero(); n + 1];
        for (i, c) in a.coeffs.iter().enumerate() {
            v[n - i] = c.clone();
        }
        self.from_coeffs(v)
    }

    /// Maps coefficients into another ring.
    pub fn map_into<S: Ring, F>(&self, target: &PolyRing<S>, a: &UPoly<R::Elem>, f: F) -> UPoly<S::Elem>
    where
        F: FnMut(&R::Elem) -> S::Elem,
    {
        target.from_coeffs(a.coeffs.iter().map(f).collect())
    }
}

impl<F: Field> PolyRing<F> {
    pub fn monic(&self, a: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        match a.lc() {
            None => self.zero(),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("leading coefficient invertible");
                self.scale(a, &inv)
            }
        }
    }

    /// Euclidean division. Panics on division by zero or a non-invertible
    /// leading coefficient.
    pub fn divrem(&self, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> (UPoly<F::Elem>, UPoly<F::Elem>) {
        let db = b.degree().expect("division by zero polynomial");
        let inv = self.base.inv(b.lc().unwrap()).expect("leading coefficient invertible");
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (self.zero(), a.clone());
        }
        let mut q = vec![self.base.zero(); r.len() - db];
        for i in (db..r.len()).rev() {
            if self.base.is_zero(&r[i]) {
                continue;
            }
            let c = self.base.mul(&r[i], &inv);
            for (j, bc) in b.coeffs.iter().enumerate() {
                let t = self.base.mul(&c, bc);
                r[i - db + j] = self.base.sub(&r[i - db + j], &t);
            }
            q[i - db] = c;
        }
        r.truncate(db);
        (self.from_coeffs(q), self.from_coeffs(r))
    }

    pub fn rem(&self, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        self.divrem(a, b).1
    }

    /// Quotient when `b` divides `a`, `None` otherwise.
    pub fn div_exact(&self, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> Option<UPoly<F::Elem>> {
        let (q, r) = self.divrem(a, b);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn xgcd(
        &self,
        a: &UPoly<F::Elem>,
        b: &UPoly<F::Elem>,
    ) -> (UPoly<F::Elem>, UPoly<F::Elem>, UPoly<F::Elem>) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.sub(&s0, &self.mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.sub(&t0, &self.mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = self.base.inv(lc).expect("invertible");
                (self.scale(&r0, &inv), self.scale(&s0, &inv), self.scale(&t0, &inv))
            }
        }
    }

    /// `a^e mod m`.
    pub fn powmod(&self, a: &UPoly<F::Elem>, e: &num_bigint::BigUint, m: &UPoly<F::Elem>) -> UPoly<F::Elem> {
        let mut acc = self.one();
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        self.rem(&acc, m)
    }

    /// Resultant over a field by the Euclidean recurrence.
    pub fn resultant(&self, a: &UPoly<F::Elem>, b: &UPoly<F::Elem>) -> F::Elem {
        let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
            return self.base.zero();
        };
        let (mut a, mut b) = (a.clone(), b.clone());
        let mut acc = self.base.one();
        loop {
            if db == 0 {
                return self.base.mul(&acc, &self.base.pow(b.lc().unwrap(), da as u64));
            }
            let r = self.rem(&a, &b);
            let Some(dr) = r.degree() else {
                return self.base.zero();
            };
            if (da * db) % 2 == 1 {
                acc = self.base.neg(&acc);
            }
            acc = self.base.mul(&acc, &self.base.pow(b.lc().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }

    /// Yun square-free decomposition in characteristic zero: monic
    /// pairwise-coprime square-free `(factor, multiplicity)` pairs whose
    /// product is the monic associate of `a`.
    pub fn squarefree_char0(&self, a: &UPoly<F::Elem>) -> Vec<(UPoly<F::Elem>, u32)> {
        debug_assert_eq!(self.base.characteristic(), 0);
        let mut out = Vec::new();
        if a.deg() == 0 {
            return out;
        }
        let a = self.monic(a);
        let da = self.derivative(&a);
        let mut b = self.gcd(&a, &da);
        let mut c = self.div_exact(&a, &b).unwrap();
        let mut d = self.sub(&self.div_exact(&da, &b).unwrap(), &self.derivative(&c));
        let mut i = 1;
        while c.deg() > 0 {
            b = self.gcd(&c, &d);
            let c2 = self.div_exact(&c, &b).unwrap();
            if b.deg() > 0 {
                out.push((b.clone(), i));
            }
            d = self.sub(&self.div_exact(&d, &b).unwrap(), &self.derivative(&c2));
            c = c2;
            i += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use crate::exact::{qx, rat};

    #[test]
    fn divrem_reconstructs() {
        let r = qx();
        let a = r.from_i64s(&[-20736, -992, -1, 1]);
        let b = r.from_i64s(&[3, 0, 2]);
        let (q, rem) = r.divrem(&a, &b);
        assert_eq!(r.add(&r.mul(&q, &b), &rem), a);
        assert!(rem.deg() < 2);
    }

    #[test]
    fn xgcd_bezout() {
        let r = qx();
        let a = r.from_i64s(&[-1, 0, 1]);
        let b = r.from_i64s(&[-1, 1]);
        let (g, s, t) = r.xgcd(&a, &b);
        assert_eq!(g, b);
        assert_eq!(r.add(&r.mul(&s, &a), &r.mul(&t, &b)), g);
    }

    #[test]
    fn field_resultant_of_linear_factors() {
        let r = qx();
        // res(x - 2, x - 5) = 2 - 5
        let a = r.from_i64s(&[-2, 1]);
        let b = r.from_i64s(&[-5, 1]);
        assert_eq!(r.resultant(&a, &b), rat(-3, 1));
    }

    #[test]
    fn yun_on_repeated_roots() {
        let r = qx();
        let l1 = r.from_i64s(&[-1, 1]);
        let l2 = r.from_i64s(&[2, 1]);
        let p = r.mul(&r.pow(&l1, 2), &l2);
        let sq = r.squarefree_char0(&p);
        assert_eq!(sq, vec![(l2, 1), (l1, 2)]);
    }
}
