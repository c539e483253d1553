//! Inverse systems in the divided-power algebra `k_DP[y1..yn]`.
//!
//! `R` acts by contraction: `x^a ∘ y^[b] = y^[b-a]`, and `0` when some
//! component of `b - a` is negative. No factorials appear, so everything
//! works in any characteristic.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ideal::{check_independent_lines, minimal_generators_from_pieces, GradedIdeal, MonomialTables};
use crate::linalg::{ExactMatrix, Subspace};
use crate::monomial::{GradedMonomialBasis, Monomial};
use crate::par;
use crate::poly::MultiPoly;

/// Header printed above inverse-system forms.
pub const INVERSE_HEADER: &str = "inverse-system form (divided powers, contraction action)";

/// Capitalized dual variable names: `X,Y,Z` or `X1..Xn`.
pub fn dual_vars(n: usize) -> Vec<String> {
    crate::monomial::default_vars(n)
        .into_iter()
        .map(|v| v.to_uppercase())
        .collect()
}

/// A form `F = sum b_β y^[β]` in the divided-power algebra.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct InverseForm {
    poly: MultiPoly,
}

impl InverseForm {
    pub fn from_terms(field: Field, n: usize, terms: impl IntoIterator<Item = (Monomial, Scalar)>) -> Self {
        InverseForm {
            poly: MultiPoly::from_terms(field, n, terms),
        }
    }

    /// Reads the coefficients of `p` as divided-power coefficients.
    pub fn from_poly(p: MultiPoly) -> Self {
        InverseForm { poly: p }
    }

    /// The same coefficients viewed as an ordinary polynomial.
    pub fn as_poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn n(&self) -> usize {
        self.poly.n()
    }

    pub fn field(&self) -> Field {
        self.poly.field()
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn degree(&self) -> Option<usize> {
        self.poly.homogeneous_degree()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> {
        self.poly.terms()
    }

    pub fn coeff(&self, m: &Monomial) -> Scalar {
        self.poly.coeff(m)
    }

    pub fn coords(&self, basis: &GradedMonomialBasis) -> Vec<Scalar> {
        self.poly.coords(basis)
    }

    pub fn add(&self, other: &InverseForm) -> InverseForm {
        InverseForm {
            poly: self.poly.add(&other.poly),
        }
    }

    pub fn scale(&self, c: &Scalar) -> InverseForm {
        InverseForm {
            poly: self.poly.scale(c),
        }
    }

    pub fn format_with(&self, vars: &[String]) -> String {
        self.poly.format_with(vars)
    }
}

impl fmt::Display for InverseForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.poly.format_with(&dual_vars(self.n())))
    }
}

impl fmt::Debug for InverseForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "InverseForm({self})")
    }
}

impl Serialize for InverseForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `f ∘ F`.
pub fn contract(f: &MultiPoly, form: &InverseForm) -> Result<InverseForm> {
    if f.n() != form.n() {
        return Err(Error::AmbientMismatch {
            expected: form.n(),
            got: f.n(),
        });
    }
    let mut terms = Vec::new();
    for (a, ca) in f.terms() {
        for (b, cb) in form.terms() {
            if let Some(rest) = b.div(a) {
                terms.push((rest, ca * cb));
            }
        }
    }
    Ok(InverseForm::from_terms(form.field(), form.n(), terms))
}

/// Matrix of `R_t -> D_{s-t}, g -> g ∘ F`: one column per degree-`t`
/// monomial, one row per dual monomial of degree `s - t`.
pub fn catalecticant(form: &InverseForm, t: usize) -> Result<ExactMatrix> {
    let s = form.degree().ok_or(Error::ZeroPolynomial)?;
    let n = form.n();
    let field = form.field();
    let source = GradedMonomialBasis::new(n, t);
    if t > s {
        return Ok(ExactMatrix::zeros(field, 0, source.len()));
    }
    let target = GradedMonomialBasis::new(n, s - t);
    let mut m = ExactMatrix::zeros(field, target.len(), source.len());
    for (j, a) in source.monomials().iter().enumerate() {
        for (b, c) in form.terms() {
            if let Some(rest) = b.div(a) {
                m.set(target.index_of(&rest).unwrap(), j, c.clone());
            }
        }
    }
    Ok(m)
}

/// `Ann(F)` with minimal generators through degree `t_max` (at least `s + 1`).
pub fn annihilator(form: &InverseForm, t_max: Option<usize>) -> Result<GradedIdeal> {
    let s = form.degree().ok_or(Error::ZeroPolynomial)?;
    let t_max = t_max.unwrap_or(s + 1).max(s + 1);
    let field = form.field();
    let n = form.n();
    let tables = MonomialTables::new(n, t_max);
    let pieces = par::map_range(t_max + 1, |t| {
        let dim = tables.basis(t).len();
        if t > s {
            return Subspace::full(field, dim);
        }
        let (_, kernel) = catalecticant(form, t).expect("nonzero form").rank_kernel();
        Subspace::span(field, dim, kernel)
    });
    let gens = minimal_generators_from_pieces(field, &tables, &pieces);
    GradedIdeal::new(field, n, gens)
}

/// The degree-`s` generator of the inverse system of a Gorenstein ideal,
/// scaled so its first coefficient in canonical order is 1.
pub fn macaulay_inverse(ideal: &GradedIdeal) -> Result<InverseForm> {
    let report = ideal.socle_report()?;
    let s = report.socle_degree;
    let field = ideal.field();
    let tables = ideal.tables(s);
    let piece = ideal.pieces(&tables, s).pop().unwrap();
    let basis = tables.basis(s);
    let kernel = if piece.dim() == 0 {
        (0..basis.len())
            .map(|i| {
                let mut v = vec![field.zero(); basis.len()];
                v[i] = field.one();
                v
            })
            .collect()
    } else {
        ExactMatrix::from_rows(field, basis.len(), piece.basis().to_vec())
            .rank_kernel()
            .1
    };
    if kernel.len() != 1 || !report.is_gorenstein {
        return Err(Error::NotGorenstein(format!(
            "socle dimensions {:?}",
            report.socle_dims
        )));
    }
    let v = &kernel[0];
    let lead = v.iter().find(|c| !c.is_zero()).unwrap().inv().unwrap();
    let v: Vec<Scalar> = v.iter().map(|c| c * &lead).collect();
    Ok(InverseForm {
        poly: MultiPoly::from_coords(field, basis, &v),
    })
}

fn reflect(m: &Monomial, nu: &[u32]) -> Option<Monomial> {
    m.exponents()
        .iter()
        .zip(nu)
        .map(|(&e, &v)| v.checked_sub(e))
        .collect::<Option<Vec<_>>>()
        .map(Monomial::new)
}

/// Exponentwise maxima of the terms of `f`.
pub fn newton_directrix(f: &MultiPoly) -> Vec<u32> {
    let mut nu = vec![0; f.n()];
    for (m, _) in f.terms() {
        for (a, &e) in nu.iter_mut().zip(m.exponents()) {
            *a = (*a).max(e);
        }
    }
    nu
}

/// Plain Newton dual: every exponent `a` becomes `ν - a` with `ν` the
/// exponentwise maximum over the terms of `f`.
pub fn newton_dual(f: &MultiPoly) -> Result<MultiPoly> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let nu = newton_directrix(f);
    Ok(MultiPoly::from_terms(
        f.field(),
        f.n(),
        f.terms().map(|(m, c)| (reflect(m, &nu).unwrap(), c.clone())),
    ))
}

fn socle_nu(f: &MultiPoly, m: u32) -> Result<Vec<u32>> {
    if m == 0 {
        return Err(Error::Precondition("m must be at least 1".into()));
    }
    let nu = vec![m - 1; f.n()];
    for (t, _) in f.terms() {
        if t.exponents().iter().any(|&e| e >= m) {
            return Err(Error::TermInPurePowerIdeal(t.format_with(&crate::monomial::default_vars(f.n()))));
        }
    }
    Ok(nu)
}

/// Socle-like Newton dual with directrix `ν = (m-1, ..., m-1)`.
pub fn socle_newton_dual(f: &MultiPoly, m: u32) -> Result<InverseForm> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let nu = socle_nu(f, m)?;
    Ok(InverseForm::from_terms(
        f.field(),
        f.n(),
        f.terms().map(|(t, c)| (reflect(t, &nu).unwrap(), c.clone())),
    ))
}

/// Inverse of [`socle_newton_dual`].
pub fn from_socle_newton_dual(form: &InverseForm, m: u32) -> Result<MultiPoly> {
    Ok(socle_newton_dual(form.as_poly(), m)?.poly)
}

/// The form `f` of degree `n(m-1) - s` with `(x1^m, ..., xn^m) : f = I`.
pub fn directrix_form(ideal: &GradedIdeal, m: u32) -> Result<MultiPoly> {
    let report = ideal.socle_report()?;
    if !report.is_gorenstein {
        return Err(Error::NotGorenstein(format!(
            "socle dimensions {:?}",
            report.socle_dims
        )));
    }
    let n = ideal.n();
    let s = report.socle_degree;
    if n * (m as usize).saturating_sub(1) < s {
        return Err(Error::Precondition(format!(
            "n(m-1) = {} is below the socle degree {s}",
            n * (m as usize).saturating_sub(1)
        )));
    }
    for i in 0..n {
        let power = MultiPoly::var(ideal.field(), n, i).pow(m);
        if !ideal.contains(&power) {
            return Err(Error::Precondition(format!(
                "{power} is not in the ideal"
            )));
        }
    }
    let inverse = macaulay_inverse(ideal)?;
    from_socle_newton_dual(&inverse, m)
}

/// Directrix form relative to independent linear forms: `(l_1^m, ..., l_n^m) : f = I`.
/// Computed in coordinates where `l_i = x_i`, then rewritten in the `l_i`.
pub fn directrix_form_lines(ideal: &GradedIdeal, lines: &[MultiPoly], m: u32) -> Result<MultiPoly> {
    let n = ideal.n();
    check_independent_lines(lines, n)?;
    let field = ideal.field();
    let basis = GradedMonomialBasis::new(n, 1);
    let l = ExactMatrix::from_rows(field, n, lines.iter().map(|p| p.coords(&basis)).collect());
    let inv = l.inverse()?;
    // x_j -> sum_i inv[j][i] x_i sends l_i to x_i
    let to_standard: Vec<MultiPoly> = (0..n)
        .map(|j| {
            (0..n).fold(MultiPoly::zero(field, n), |acc, i| {
                acc.add(&MultiPoly::var(field, n, i).scale(inv.get(j, i)))
            })
        })
        .collect();
    let moved = ideal.substitute(&to_standard)?;
    let f = directrix_form(&moved, m)?;
    f.substitute(lines)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::default_vars;
    use crate::parse::parse_poly;
    use std::collections::BTreeMap;

    fn q() -> Field {
        Field::Rational
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &default_vars(3), q()).unwrap()
    }

    fn dual(s: &str) -> InverseForm {
        InverseForm::from_poly(p(s))
    }

    fn ideal(s: &str) -> GradedIdeal {
        GradedIdeal::parse(s, &default_vars(3), q()).unwrap()
    }

    const EX_2_5: &str = "x*y, x*z, y*z, x^2 - z^2, y^2 - z^2";
    const EX_3_7: &str = "x^3, y^3, z^3, x*y*z, x*(y^2 - z^2), y*(x^2 - z^2), z*(x^2 - y^2)";

    #[test]
    fn contraction_basics() {
        assert_eq!(contract(&p("x"), &dual("x^2")).unwrap(), dual("x"));
        assert!(contract(&p("x^2"), &dual("y^2")).unwrap().is_zero());
        assert_eq!(contract(&p("x*y + z"), &dual("x^2*y + z^3")).unwrap(), dual("x + z^2"));
        let one_var = InverseForm::from_poly(parse_poly("x", &["x".to_string()], q()).unwrap());
        assert!(contract(&p("x"), &one_var).is_err());
    }

    #[test]
    fn printing_uses_capitals() {
        assert_eq!(dual("x^2 + y*z").to_string(), "X^2 + Y*Z");
    }

    #[test]
    fn annihilator_of_sum_of_squares() {
        let ann = annihilator(&dual("x^2 + y^2 + z^2"), None).unwrap();
        assert_eq!(ann.minimal_generator_profile(), BTreeMap::from([(2, 5)]));
        let r = ann.socle_report().unwrap();
        assert!(r.is_gorenstein);
        assert_eq!(r.socle_degree, 2);
        assert!(ann.same_ideal(&ideal(EX_2_5)).unwrap());
    }

    #[test]
    fn annihilator_of_a_power_in_one_variable() {
        let v = vec!["x".to_string()];
        let f = InverseForm::from_poly(parse_poly("x^4", &v, q()).unwrap());
        let ann = annihilator(&f, None).unwrap();
        assert_eq!(ann.generators(), &[parse_poly("x^5", &v, q()).unwrap()]);
        assert_eq!(macaulay_inverse(&ann).unwrap(), f);
    }

    #[test]
    fn inverse_of_the_examples() {
        assert_eq!(macaulay_inverse(&ideal(EX_2_5)).unwrap(), dual("x^2 + y^2 + z^2"));
        assert_eq!(
            macaulay_inverse(&ideal(EX_3_7)).unwrap(),
            dual("x^2*y^2 + x^2*z^2 + y^2*z^2")
        );
        assert!(matches!(
            macaulay_inverse(&ideal("x^2, x*y, y^2, z^2, x*z")),
            Err(Error::NotGorenstein(_))
        ));
    }

    #[test]
    fn newton_duals() {
        assert_eq!(newton_dual(&p("x*y + z^2")).unwrap(), p("z^2 + x*y"));
        assert_eq!(
            socle_newton_dual(&p("x^2*y^2 + x^2*z^2 + y^2*z^2"), 3).unwrap(),
            dual("x^2 + y^2 + z^2")
        );
        assert_eq!(
            socle_newton_dual(&p("x^3"), 3),
            Err(Error::TermInPurePowerIdeal("x^3".into()))
        );
    }

    #[test]
    fn directrix_forms() {
        assert_eq!(directrix_form(&ideal(EX_2_5), 3).unwrap(), p("x^2*y^2 + x^2*z^2 + y^2*z^2"));
        assert_eq!(directrix_form(&ideal(EX_3_7), 3).unwrap(), p("x^2 + y^2 + z^2"));
        assert_eq!(
            directrix_form(&ideal(EX_3_7), 5).unwrap(),
            p("x^2*y^2*z^2*(x^2 + y^2 + z^2)")
        );
        assert!(matches!(directrix_form(&ideal(EX_3_7), 2), Err(Error::Precondition(_))));
    }

    #[test]
    fn directrix_along_skew_lines() {
        let i = ideal(EX_3_7);
        let lines = vec![p("x + y"), p("y"), p("z")];
        // image of I under x -> x + y contains the cubes of the lines
        let moved = i.substitute(&lines).unwrap();
        let f = directrix_form_lines(&moved, &lines, 3).unwrap();
        let cube = GradedIdeal::powers_of(&lines, &[3, 3, 3]).unwrap();
        assert!(cube.colon_form(&f, None).unwrap().ideal.same_ideal(&moved).unwrap());
    }

    #[test]
    fn catalecticant_ranks_are_symmetric() {
        let f = dual("x^2*y^2 + x^2*z^2 + y^2*z^2");
        let ranks: Vec<usize> = (0..=4).map(|t| catalecticant(&f, t).unwrap().rank()).collect();
        assert_eq!(ranks, vec![1, 3, 6, 3, 1]);
    }
}
