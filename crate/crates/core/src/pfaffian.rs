//! Alternating polynomial matrices and their Pfaffians.
//!
//! Signs: `Pf(A) = sum_{j>=2} (-1)^j a_{1j} Pf(A_{1j,1j})` (1-indexed), and the
//! `i`-th maximal Pfaffian of an odd matrix carries `(-1)^{i+1}`.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::{random_coeff, rng_for, GradedIdeal, RESEED_ATTEMPTS};
use crate::linalg::ExactMatrix;
use crate::monomial::binomial;
use crate::par;
use crate::parse::{parse_poly, split_top_level};
use crate::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkewPolyMatrix {
    n: usize,
    field: Field,
    entries: Vec<Vec<MultiPoly>>,
}

impl SkewPolyMatrix {
    /// Validates a full square matrix.
    pub fn new(field: Field, n: usize, entries: Vec<Vec<MultiPoly>>) -> Result<Self> {
        let r = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != r {
                return Err(Error::NotSquare);
            }
            for (j, a) in row.iter().enumerate() {
                if a.n() != n {
                    return Err(Error::AmbientMismatch {
                        expected: n,
                        got: a.n(),
                    });
                }
                if j >= i && !a.add(&entries[j][i]).is_zero() {
                    return Err(Error::NotAlternating(i, j));
                }
            }
        }
        Ok(SkewPolyMatrix { n, field, entries })
    }

    /// Builds the matrix from its strictly upper triangle; `upper[i]` holds
    /// the entries `(i, i+1), ..., (i, r-1)`.
    pub fn from_upper(field: Field, n: usize, r: usize, upper: &[Vec<MultiPoly>]) -> Result<Self> {
        if upper.len() > r {
            return Err(Error::NotSquare);
        }
        let mut entries = vec![vec![MultiPoly::zero(field, n); r]; r];
        for i in 0..r {
            let row = upper.get(i).map_or(&[][..], Vec::as_slice);
            if row.len() != r - 1 - i {
                return Err(Error::NotSquare);
            }
            for (k, a) in row.iter().enumerate() {
                let j = i + 1 + k;
                entries[i][j] = a.clone();
                entries[j][i] = a.neg();
            }
        }
        Self::new(field, n, entries)
    }

    /// Parses one row per line, entries separated by commas. A line may
    /// list the full row or only its strictly upper part.
    pub fn parse(text: &str, vars: &[String], field: Field) -> Result<Self> {
        let rows: Vec<Vec<MultiPoly>> = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                split_top_level(line)
                    .into_iter()
                    .map(|s| parse_poly(s, vars, field))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        let n = vars.len();
        if rows.iter().all(|row| row.len() == rows.len()) {
            return Self::new(field, n, rows);
        }
        // the empty last row of an upper triangle may be omitted
        let r = rows.first().map_or(0, |row| row.len() + 1);
        Self::from_upper(field, n, r, &rows)
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entry(&self, i: usize, j: usize) -> &MultiPoly {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<MultiPoly>] {
        &self.entries
    }

    /// Common degree of all nonzero entries, if there is one.
    pub fn uniform_degree(&self) -> Option<usize> {
        let mut degree = None;
        for row in &self.entries {
            for a in row.iter().filter(|a| !a.is_zero()) {
                let d = a.homogeneous_degree()?;
                match degree {
                    None => degree = Some(d),
                    Some(e) if e != d => return None,
                    _ => {}
                }
            }
        }
        degree
    }

    /// Pfaffian of the principal submatrix on `idx` (sorted, even length).
    fn sub_pfaffian(&self, idx: &[usize], memo: &mut HashMap<Vec<usize>, MultiPoly>) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::one(self.field, self.n);
        }
        if let Some(p) = memo.get(idx) {
            return p.clone();
        }
        let first = idx[0];
        let mut acc = MultiPoly::zero(self.field, self.n);
        for p in 1..idx.len() {
            let a = &self.entries[first][idx[p]];
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx.iter().enumerate().filter(|&(k, _)| k != 0 && k != p).map(|(_, &v)| v).collect();
            let term = a.mul(&self.sub_pfaffian(&rest, memo));
            // 1-indexed column j = p + 1 carries (-1)^j
            acc = if p % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
        }
        memo.insert(idx.to_vec(), acc.clone());
        acc
    }

    fn pfaffian_on(&self, idx: &[usize]) -> MultiPoly {
        self.sub_pfaffian(idx, &mut HashMap::new())
    }

    pub fn pfaffian(&self) -> Result<MultiPoly> {
        if self.size() % 2 == 1 {
            return Err(Error::OddSize(self.size()));
        }
        let idx: Vec<usize> = (0..self.size()).collect();
        Ok(self.pfaffian_on(&idx))
    }

    /// The `r` signed maximal Pfaffians of an odd-size matrix.
    pub fn maximal_pfaffians(&self) -> Result<Vec<MultiPoly>> {
        let r = self.size();
        if r % 2 == 0 {
            return Err(Error::EvenSize(r));
        }
        let out = par::map_range(r, |i| {
            let idx: Vec<usize> = (0..r).filter(|&k| k != i).collect();
            let p = self.pfaffian_on(&idx);
            if i % 2 == 0 {
                p
            } else {
                p.neg()
            }
        });
        if let Some(dp) = self.uniform_degree() {
            let d = (r - 1) * dp / 2;
            for p in out.iter().filter(|p| !p.is_zero()) {
                assert_eq!(p.homogeneous_degree(), Some(d), "maximal Pfaffian of wrong degree");
            }
        }
        Ok(out)
    }

    /// Ideal generated by the nonzero maximal Pfaffians.
    pub fn pfaffian_ideal(&self) -> Result<GradedIdeal> {
        let gens = self.maximal_pfaffians()?.into_iter().filter(|p| !p.is_zero()).collect();
        GradedIdeal::new(self.field, self.n, gens)
    }

    /// `P^T A P` for a scalar matrix `P`.
    pub fn congruence(&self, p: &ExactMatrix) -> Result<SkewPolyMatrix> {
        let r = self.size();
        if p.rows() != r || p.cols() != r {
            return Err(Error::NotSquare);
        }
        let mut ap = vec![vec![MultiPoly::zero(self.field, self.n); r]; r];
        for (i, row) in ap.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for k in 0..r {
                    *slot = slot.add(&self.entries[i][k].scale(p.get(k, j)));
                }
            }
        }
        let mut out = vec![vec![MultiPoly::zero(self.field, self.n); r]; r];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                for (k, ap_row) in ap.iter().enumerate() {
                    *slot = slot.add(&ap_row[j].scale(p.get(k, i)));
                }
            }
        }
        SkewPolyMatrix::new(self.field, self.n, out)
    }

    /// Applies a ring homomorphism entry-wise.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<SkewPolyMatrix> {
        let n = images.first().map_or(0, MultiPoly::n);
        let entries = self
            .entries
            .iter()
            .map(|row| row.iter().map(|a| a.substitute(images)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(SkewPolyMatrix {
            n,
            field: self.field,
            entries,
        })
    }

    pub fn format_rows(&self, vars: &[String]) -> Vec<Vec<String>> {
        self.entries
            .iter()
            .map(|row| row.iter().map(|a| a.format_with(vars)).collect())
            .collect()
    }
}

/// The model in `C(r,2)` variables with entries `x_ij^{d'}` above the diagonal.
pub fn structural_matrix(field: Field, r: usize, d_prime: u32) -> SkewPolyMatrix {
    let big_n = binomial(r, 2);
    let mut upper = Vec::with_capacity(r);
    let mut k = 0;
    for i in 0..r {
        let mut row = Vec::new();
        for _ in i + 1..r {
            row.push(MultiPoly::var(field, big_n, k).pow(d_prime));
            k += 1;
        }
        upper.push(row);
    }
    SkewPolyMatrix::from_upper(field, big_n, r, &upper).expect("structural matrix is alternating")
}

#[derive(Clone, Debug)]
pub struct GenericModel {
    pub seed: u64,
    pub attempts: usize,
    pub matrix: SkewPolyMatrix,
    pub ideal: GradedIdeal,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelSummary {
    pub seed: u64,
    pub attempts: usize,
    pub r: usize,
    pub d_prime: u32,
    pub n: usize,
}

/// Specializes the structural matrix to `n` variables by substituting each
/// trailing variable with a seeded random combination of the earlier ones,
/// then takes maximal Pfaffians. For `n = 3` the result must be Artinian;
/// otherwise new coefficients are drawn.
pub fn generic_power_model(field: Field, r: usize, d_prime: u32, n: usize, seed: u64) -> Result<GenericModel> {
    let big_n = binomial(r, 2);
    if r < 3 || r % 2 == 0 || d_prime == 0 || n < 3 || n > big_n {
        return Err(Error::Precondition(format!(
            "need odd r >= 3, d' >= 1 and 3 <= n <= C(r,2); got r={r}, d'={d_prime}, n={n}"
        )));
    }
    let mut rng = rng_for(seed);
    for attempt in 1..=RESEED_ATTEMPTS {
        // images[k] is the image of z_k as a linear form in n variables
        let mut images: Vec<Option<MultiPoly>> = (0..big_n)
            .map(|k| (k < n).then(|| MultiPoly::var(field, n, k)))
            .collect();
        let mut coeffs = vec![Vec::new(); big_n];
        for (v, slot) in coeffs.iter_mut().enumerate().skip(n).rev() {
            *slot = (0..v).map(|_| random_coeff(&mut rng, field)).collect();
        }
        for v in n..big_n {
            let mut form = MultiPoly::zero(field, n);
            for (u, c) in coeffs[v].iter().enumerate() {
                form = form.add(&images[u].as_ref().unwrap().scale(c));
            }
            images[v] = Some(form);
        }
        let images: Vec<MultiPoly> = images.into_iter().map(Option::unwrap).collect();
        let matrix = structural_matrix(field, r, d_prime).substitute(&images)?;
        let ideal = match matrix.pfaffian_ideal() {
            Ok(i) => i,
            Err(_) => continue,
        };
        if n == 3 && !ideal.is_artinian() {
            continue;
        }
        return Ok(GenericModel {
            seed,
            attempts: attempt,
            matrix,
            ideal,
        });
    }
    Err(Error::Reseed {
        seed,
        attempts: RESEED_ATTEMPTS,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::default_vars;

    fn q() -> Field {
        Field::Rational
    }

    fn vars(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn two_by_two() {
        let v = vars(&["a"]);
        let m = SkewPolyMatrix::parse("0, a\n-a, 0", &v, q()).unwrap();
        assert_eq!(m.pfaffian().unwrap(), parse_poly("a", &v, q()).unwrap());
    }

    #[test]
    fn four_by_four_generic() {
        let v = vars(&["a12", "a13", "a14", "a23", "a24", "a34"]);
        let m = SkewPolyMatrix::parse("a12, a13, a14\na23, a24\na34", &v, q()).unwrap();
        let expected = parse_poly("a12*a34 - a13*a24 + a14*a23", &v, q()).unwrap();
        assert_eq!(m.pfaffian().unwrap(), expected);
    }

    #[test]
    fn three_by_three_maximal() {
        let v = vars(&["a", "b", "c"]);
        let m = SkewPolyMatrix::parse("a, b\nc\n", &v, q()).unwrap();
        let p = m.maximal_pfaffians().unwrap();
        let e = |s| parse_poly(s, &v, q()).unwrap();
        assert_eq!(p, vec![e("c"), e("-b"), e("a")]);
    }

    #[test]
    fn size_and_alternation_errors() {
        let v = vars(&["a", "b", "c"]);
        let odd = SkewPolyMatrix::parse("a, b\nc\n", &v, q()).unwrap();
        assert_eq!(odd.pfaffian(), Err(Error::OddSize(3)));
        let even = SkewPolyMatrix::parse("0, a\n-a, 0", &v, q()).unwrap();
        assert_eq!(even.maximal_pfaffians(), Err(Error::EvenSize(2)));
        assert_eq!(
            SkewPolyMatrix::parse("0, a\na, 0", &v, q()),
            Err(Error::NotAlternating(0, 1))
        );
        assert_eq!(
            SkewPolyMatrix::parse("a, a\n-a, 0", &v, q()),
            Err(Error::NotAlternating(0, 0))
        );
    }

    #[test]
    fn sextic_example_matrix() {
        let m = SkewPolyMatrix::parse(
            "x*y*z, y^3, x^3, x^2*y\nz^3, y^3, z^3\nz^3, x^3\nz^3",
            &default_vars(3),
            q(),
        )
        .unwrap();
        let i = m.pfaffian_ideal().unwrap();
        assert_eq!(i.generators().len(), 5);
        assert_eq!(i.virtual_datum().unwrap().d_prime, 3);
        assert_eq!(i.virtual_datum().unwrap().d, 6);
        let ci = GradedIdeal::parse(
            "x^6 - x^2*y*z^3 - y^3*z^3, y^6 - x^3*z^3 - x*y*z^4, z^6 - 1/2*x^3*y^3",
            &default_vars(3),
            q(),
        )
        .unwrap();
        let colon = ci.colon_form(&MultiPoly::var(q(), 3, 2).pow(3), None).unwrap();
        assert!(colon.ideal.same_ideal(&i).unwrap());
    }

    #[test]
    fn model_with_three_rows_is_linear_complete_intersection() {
        let model = generic_power_model(q(), 3, 1, 3, 11).unwrap();
        assert_eq!(model.ideal.minimal_generator_profile(), [(1, 3)].into());
        assert!(model.ideal.socle_report().unwrap().is_gorenstein);
    }

    #[test]
    fn model_preconditions() {
        assert!(generic_power_model(q(), 4, 1, 3, 1).is_err());
        assert!(generic_power_model(q(), 3, 1, 4, 1).is_err());
        assert!(generic_power_model(q(), 5, 0, 3, 1).is_err());
    }
}
