//! Sparse multivariate polynomials over a [`Field`].

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::monomial::{default_vars, GradedMonomialBasis, Monomial};

/// A polynomial as a map from exponent vectors to nonzero coefficients.
///
/// Terms are stored in deg-lex order, so the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    n: usize,
    field: Field,
    terms: BTreeMap<Monomial, Scalar>,
}

impl MultiPoly {
    pub fn zero(field: Field, n: usize) -> Self {
        MultiPoly {
            n,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: Field, n: usize, c: Scalar) -> Self {
        Self::term(field, n, Monomial::one(n), c)
    }

    pub fn one(field: Field, n: usize) -> Self {
        Self::constant(field, n, field.one())
    }

    /// The variable `x_i` (0-based).
    pub fn var(field: Field, n: usize, i: usize) -> Self {
        Self::term(field, n, Monomial::var(n, i), field.one())
    }

    pub fn monomial(field: Field, m: Monomial) -> Self {
        let n = m.n();
        Self::term(field, n, m, field.one())
    }

    pub fn term(field: Field, n: usize, m: Monomial, c: Scalar) -> Self {
        assert_eq!(m.n(), n);
        let mut p = Self::zero(field, n);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// repeats and dropping zeros.
    pub fn from_terms(field: Field, n: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        let mut p = Self::zero(field, n);
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    /// The form `sum_i v[i] * basis[i]`.
    pub fn from_coords(field: Field, basis: &GradedMonomialBasis, v: &[Scalar]) -> Self {
        Self::from_terms(
            field,
            basis.n(),
            basis
                .monomials()
                .iter()
                .zip(v)
                .filter(|(_, c)| !c.is_zero())
                .map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending deg-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.keys().next_back()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Largest total degree of a term (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(d)` iff every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub(crate) fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let s = &*existing + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.n, other.n, "ambient mismatch");
        assert_eq!(self.field, other.field, "field mismatch");
    }

    pub fn add(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &MultiPoly) -> MultiPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            n: self.n,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return Self::zero(self.field, self.n);
        }
        MultiPoly {
            n: self.n,
            field: self.field,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPoly) -> MultiPoly {
        self.check_compatible(other);
        let mut out = Self::zero(self.field, self.n);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), &(c1 * c2));
            }
        }
        out
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly {
            n: self.n,
            field: self.field,
            terms: self.terms.iter().map(|(a, c)| (a.mul(m), c.clone())).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = Self::one(self.field, self.n);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Ring homomorphism `x_i -> images[i]`.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<MultiPoly> {
        if images.len() != self.n {
            return Err(Error::AmbientMismatch {
                expected: self.n,
                got: images.len(),
            });
        }
        let target_n = match images.first() {
            Some(p) => p.n,
            None => 0,
        };
        if let Some(bad) = images.iter().find(|p| p.n != target_n) {
            return Err(Error::AmbientMismatch {
                expected: target_n,
                got: bad.n,
            });
        }
        let mut powers: Vec<Vec<MultiPoly>> = images
            .iter()
            .map(|p| vec![MultiPoly::one(self.field, target_n), p.clone()])
            .collect();
        let mut out = Self::zero(self.field, target_n);
        for (m, c) in &self.terms {
            let mut acc = MultiPoly::constant(self.field, target_n, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().unwrap().mul(&images[i]);
                    powers[i].push(next);
                }
                acc = acc.mul(&powers[i][e as usize]);
            }
            out = out.add(&acc);
        }
        Ok(out)
    }

    /// The reparametrization `x_i -> x_i^p`.
    pub fn zeta(&self, p: u32) -> MultiPoly {
        MultiPoly {
            n: self.n,
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.pow(p), c.clone())).collect(),
        }
    }

    /// Coordinates over the canonical basis of the given degree. Terms of
    /// other degrees are ignored.
    pub fn coords(&self, basis: &GradedMonomialBasis) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); basis.len()];
        for (m, c) in &self.terms {
            if let Some(i) = basis.index_of(m) {
                v[i] = c.clone();
            }
        }
        v
    }

    /// `self / d` by deg-lex long division; `None` if there is a remainder.
    pub fn divide_exact(&self, d: &MultiPoly) -> Option<MultiPoly> {
        self.check_compatible(d);
        let (lm, lc) = d.leading_term()?;
        let lc_inv = lc.inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field, self.n);
        while let Some((m, c)) = rem.leading_term() {
            let q_m = m.div(lm)?;
            let q_c = c * &lc_inv;
            let step = d.mul_monomial(&q_m).scale(&q_c);
            quot.add_term(q_m, &q_c);
            rem = rem.sub(&step);
        }
        Some(quot)
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative_repr();
            let abs = if negative { -c } else { c.clone() };
            if i == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mono = m.format_with(vars);
            if m.degree() == 0 {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&format!("{abs}*{mono}"));
            }
        }
        out
    }
}

impl std::fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.format_with(&default_vars(self.n)))
    }
}

impl std::fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_poly;

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &default_vars(3), Field::Rational).unwrap()
    }

    #[test]
    fn zeta_doubles_exponents() {
        assert_eq!(p("x + y").zeta(2), p("x^2 + y^2"));
    }

    #[test]
    fn substitute_linear_form() {
        let f = p("x*z");
        let images = [p("x"), p("y"), p("x + y")];
        assert_eq!(f.substitute(&images).unwrap(), p("x^2 + x*y"));
        assert!(f.substitute(&images[..2]).is_err());
    }

    #[test]
    fn homogeneity() {
        assert_eq!(p("x^2 + y*z").homogeneous_degree(), Some(2));
        assert_eq!(p("x^2 + y").homogeneous_degree(), None);
        assert_eq!(p("0").homogeneous_degree(), None);
    }

    #[test]
    fn leading_monomial_is_deglex_max() {
        assert_eq!(p("y^3 + x*z^2 + x^2").leading_monomial(), Some(&Monomial::new(vec![1, 0, 2])));
    }

    #[test]
    fn exact_division() {
        let f = p("x^3*y^2*z^2 + x^2*y^3*z^2 + x^2*y^2*z^3");
        assert_eq!(f.divide_exact(&p("x*y*z")), Some(p("x^2*y*z + x*y^2*z + x*y*z^2")));
        assert_eq!(p("x^2 + y").divide_exact(&p("x")), None);
    }

    #[test]
    fn printing() {
        assert_eq!(p("-x^2 + 1/2*y*z - 3").to_string(), "-x^2 + 1/2*y*z - 3");
        assert_eq!(p("0").to_string(), "0");
    }
}
