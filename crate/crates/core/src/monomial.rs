//! Exponent vectors, the degree-lexicographic order and graded monomial bases.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

/// Exponent vector of a monomial in `n` variables.
///
/// Ordered degree-lexicographically with `x1 > x2 > ... > xn`: higher total
/// degree is larger, ties are broken by the first differing exponent.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i` (0-based).
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.n(), other.n());
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(Monomial)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn pow(&self, k: u32) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Whether some exponent reaches `m`, i.e. the monomial lies in
    /// `(x1^m, ..., xn^m)`.
    pub fn in_pure_powers(&self, m: u32) -> bool {
        self.0.iter().any(|&e| e >= m)
    }

    pub fn max_exponent(&self) -> u32 {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| {
                if e == 1 {
                    vars[i].clone()
                } else {
                    format!("{}^{}", vars[i], e)
                }
            })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Default variable names: `x,y,z` for three variables, `x1..xn` otherwise.
pub fn default_vars(n: usize) -> Vec<String> {
    if n == 3 {
        vec!["x".into(), "y".into(), "z".into()]
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as usize
}

/// Number of monomials of degree `t` in `n` variables.
pub fn count_monomials(n: usize, t: usize) -> usize {
    if n == 0 {
        return usize::from(t == 0);
    }
    binomial(t + n - 1, n - 1)
}

/// All monomials of degree `t` in `n` variables, in canonical order
/// (deg-lex descending, so `x1^t` comes first).
#[derive(Clone, Debug)]
pub struct GradedMonomialBasis {
    n: usize,
    degree: usize,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl GradedMonomialBasis {
    pub fn new(n: usize, t: usize) -> Self {
        let monomials = monomials_of_degree(n, t);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        GradedMonomialBasis {
            n,
            degree: t,
            monomials,
            index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// Enumerates the degree-`t` exponent vectors of `n` variables in canonical
/// order.
pub fn monomials_of_degree(n: usize, t: usize) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(count_monomials(n, t));
    if n == 0 {
        if t == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    let mut current = vec![0u32; n];
    fill(&mut current, 0, t as u32, &mut out);
    out
}

fn fill(current: &mut Vec<u32>, pos: usize, remaining: u32, out: &mut Vec<Monomial>) {
    let n = current.len();
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(Monomial(current.clone()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[pos] = e;
        fill(current, pos + 1, remaining - e, out);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(n: usize, t: usize) -> Vec<String> {
        let v = default_vars(n);
        monomials_of_degree(n, t)
            .iter()
            .map(|m| m.format_with(&v))
            .collect()
    }

    #[test]
    fn quadrics_in_three_variables() {
        assert_eq!(names(3, 2), ["x^2", "x*y", "x*z", "y^2", "y*z", "z^2"]);
    }

    #[test]
    fn single_variable_and_constants() {
        assert_eq!(names(1, 5), ["x1^5"]);
        assert_eq!(monomials_of_degree(4, 0), vec![Monomial::one(4)]);
    }

    #[test]
    fn sizes_are_binomial() {
        assert_eq!(monomials_of_degree(3, 4).len(), 15);
        for n in 1..5 {
            for t in 0..7 {
                assert_eq!(monomials_of_degree(n, t).len(), count_monomials(n, t));
            }
        }
    }

    #[test]
    fn canonical_order_is_strictly_descending() {
        let ms = monomials_of_degree(4, 5);
        assert!(ms.windows(2).all(|w| w[0] > w[1]));
        let b = GradedMonomialBasis::new(4, 5);
        for (i, m) in ms.iter().enumerate() {
            assert_eq!(b.index_of(m), Some(i));
        }
    }
}
