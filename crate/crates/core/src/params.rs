//! Rank tests evaluated at concrete parameter points.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ideal::{random_coeff, rng_for, GradedIdeal};
use crate::linalg::ExactMatrix;
use crate::monomial::{binomial, GradedMonomialBasis};
use crate::par;
use crate::poly::MultiPoly;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpanReport {
    pub rows: usize,
    pub cols: usize,
    pub rank: usize,
    pub spans: bool,
}

fn common_degree(forms: &[MultiPoly]) -> Result<usize> {
    let first = forms.first().ok_or(Error::Invalid("no forms given".into()))?;
    let d = first.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    for f in forms {
        if f.n() != first.n() {
            return Err(Error::AmbientMismatch {
                expected: first.n(),
                got: f.n(),
            });
        }
        match f.homogeneous_degree() {
            Some(e) if e == d => {}
            Some(_) => return Err(Error::UnequalDegrees),
            None => return Err(Error::NotHomogeneous),
        }
    }
    Ok(d)
}

/// Whether `R_e f_1 + ... + R_e f_r = R_{d+e}`, via the rank of the
/// `dim R_{d+e} x (r dim R_e)` multiplication matrix.
pub fn spans_target(forms: &[MultiPoly], e: usize) -> Result<SpanReport> {
    let d = common_degree(forms)?;
    let n = forms[0].n();
    let field = forms[0].field();
    let shifts = GradedMonomialBasis::new(n, e);
    let target = GradedMonomialBasis::new(n, d + e);
    let columns: Vec<Vec<Scalar>> = forms
        .iter()
        .flat_map(|f| shifts.monomials().iter().map(move |m| f.mul_monomial(m)))
        .map(|g| g.coords(&target))
        .collect();
    let m = ExactMatrix::from_columns(field, target.len(), &columns);
    let rank = m.rank();
    Ok(SpanReport {
        rows: target.len(),
        cols: columns.len(),
        rank,
        spans: rank == target.len(),
    })
}

/// Rows: degree-`(e+e')` monomials outside `(x1^m, ..., xn^m)`; columns:
/// degree-`e'` monomials; entry `(γ, β)` is the coefficient of `x^{γ-β}` in `f`.
/// Its kernel is `((x1^m, ..., xn^m) : f)_{e'}`.
pub fn linres_matrix(f: &MultiPoly, m: u32, e_prime: usize) -> Result<ExactMatrix> {
    let e = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let n = f.n();
    let columns = GradedMonomialBasis::new(n, e_prime);
    let rows: Vec<_> = GradedMonomialBasis::new(n, e + e_prime)
        .monomials()
        .iter()
        .filter(|g| !g.in_pure_powers(m))
        .cloned()
        .collect();
    let data = rows
        .iter()
        .map(|g| {
            columns
                .monomials()
                .iter()
                .map(|b| match g.div(b) {
                    Some(a) => f.coeff(&a),
                    None => f.field().zero(),
                })
                .collect()
        })
        .collect();
    Ok(ExactMatrix::from_rows(f.field(), columns.len(), data))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Decision {
    Yes,
    No,
}

impl fmt::Display for Decision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Decision::Yes => "YES",
            Decision::No => "NO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinresReport {
    pub n: usize,
    pub m: u32,
    pub deg_f: usize,
    pub s: usize,
    pub rows: usize,
    pub cols: usize,
    pub rank: Option<usize>,
    pub target_rank: Option<usize>,
    pub verdict: Decision,
    pub d: Option<usize>,
}

/// Decides whether `(x1^m, ..., xn^m) : f` is equigenerated with a linear
/// resolution: `s = n(m-1) - deg f` must be even and the matrix for
/// `e' = s/2` must have rank `C(s/2 + n - 1, n - 1)`.
pub fn is_equigen_linres(f: &MultiPoly, m: u32) -> Result<LinresReport> {
    let e = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
    let n = f.n();
    let s = n as i64 * (m as i64 - 1) - e as i64;
    if s < 0 {
        return Err(Error::DegreeTooLarge { s });
    }
    let s = s as usize;
    let mut report = LinresReport {
        n,
        m,
        deg_f: e,
        s,
        rows: 0,
        cols: 0,
        rank: None,
        target_rank: None,
        verdict: Decision::No,
        d: None,
    };
    if s % 2 == 1 {
        return Ok(report);
    }
    let half = s / 2;
    let matrix = linres_matrix(f, m, half)?;
    let rank = matrix.rank();
    let target = binomial(half + n - 1, n - 1);
    report.rows = matrix.rows();
    report.cols = matrix.cols();
    report.rank = Some(rank);
    report.target_rank = Some(target);
    if rank == target {
        report.verdict = Decision::Yes;
        report.d = Some(half + 1);
    }
    Ok(report)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Verdict {
    Gorenstein,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Gorenstein => "GORENSTEIN",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadricsCertificate {
    pub delta: Scalar,
    pub deltas: Vec<Scalar>,
    pub big_d: Scalar,
    pub spans_r3: bool,
    pub verdict: Verdict,
}

/// Certificate for five quadrics in three variables. `Θ` holds the
/// coefficients over `x², xy, xz, y², yz, z²` column by column, `B` is its
/// top 5x5 block, `(Δ1..Δ5) = L adj(B)` with `L` the last row, and `𝔻` is the
/// determinant of `[[Δ1,Δ2,Δ3],[Δ2,Δ4,Δ5],[Δ3,Δ5,-Δ]]`.
pub fn five_quadrics_certificate(quadrics: &[MultiPoly]) -> Result<QuadricsCertificate> {
    if quadrics.len() != 5 {
        return Err(Error::Precondition(format!("expected five quadrics, got {}", quadrics.len())));
    }
    if common_degree(quadrics)? != 2 || quadrics[0].n() != 3 {
        return Err(Error::Precondition("expected quadrics in three variables".into()));
    }
    let field = quadrics[0].field();
    let basis = GradedMonomialBasis::new(3, 2);
    let columns: Vec<Vec<Scalar>> = quadrics.iter().map(|q| q.coords(&basis)).collect();
    let theta = ExactMatrix::from_columns(field, 6, &columns);
    let b = ExactMatrix::from_rows(field, 5, theta.row_vectors()[..5].to_vec());
    let last = ExactMatrix::from_rows(field, 5, vec![theta.row(5).to_vec()]);
    let delta = b.determinant()?;
    let deltas = last.mul(&b.adjugate()?).row(0).to_vec();
    let sym = ExactMatrix::from_rows(
        field,
        3,
        vec![
            vec![deltas[0].clone(), deltas[1].clone(), deltas[2].clone()],
            vec![deltas[1].clone(), deltas[3].clone(), deltas[4].clone()],
            vec![deltas[2].clone(), deltas[4].clone(), -&delta],
        ],
    );
    let big_d = sym.determinant()?;
    let spans_r3 = spans_target(quadrics, 1)?.spans;
    let verdict = if !delta.is_zero() && !big_d.is_zero() && spans_r3 {
        Verdict::Gorenstein
    } else {
        Verdict::Inconclusive
    };
    Ok(QuadricsCertificate {
        delta,
        deltas,
        big_d,
        spans_r3,
        verdict,
    })
}

/// Five quadrics in `x, y, z` with seeded random nonzero coefficients.
pub fn random_quadrics(field: Field, seed: u64) -> Vec<MultiPoly> {
    let mut rng = rng_for(seed);
    let basis = GradedMonomialBasis::new(3, 2);
    (0..5)
        .map(|_| {
            let v: Vec<Scalar> = (0..basis.len()).map(|_| random_coeff(&mut rng, field)).collect();
            MultiPoly::from_coords(field, &basis, &v)
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub seed: u64,
    pub verdict: Verdict,
    pub socle_gorenstein: bool,
}

/// Runs the certificate on random quadrics for each seed and cross-checks
/// every verdict against the socle.
pub fn certificate_sweep(field: Field, seeds: &[u64]) -> Result<Vec<SweepRow>> {
    par::map_slice(seeds, |&seed| {
        let quadrics = random_quadrics(field, seed);
        let cert = five_quadrics_certificate(&quadrics)?;
        let ideal = GradedIdeal::new(field, 3, quadrics)?;
        let socle_gorenstein = ideal.socle_report().map(|r| r.is_gorenstein).unwrap_or(false);
        Ok(SweepRow {
            seed,
            verdict: cert.verdict,
            socle_gorenstein,
        })
    })
    .into_iter()
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::default_vars;
    use crate::parse::{parse_poly, parse_poly_list};

    fn q() -> Field {
        Field::Rational
    }

    fn p(s: &str) -> MultiPoly {
        parse_poly(s, &default_vars(3), q()).unwrap()
    }

    fn list(s: &str) -> Vec<MultiPoly> {
        parse_poly_list(s, &default_vars(3), q()).unwrap()
    }

    #[test]
    fn span_examples() {
        let r = spans_target(&list("x*y, x*z, y*z, x^2 - z^2, y^2 - z^2"), 1).unwrap();
        assert_eq!((r.rows, r.cols, r.rank, r.spans), (10, 15, 10, true));
        let v = default_vars(2);
        let two = parse_poly_list("x1^2, x2^2", &v, q()).unwrap();
        let r = spans_target(&two, 0).unwrap();
        assert_eq!((r.rank, r.spans), (2, false));
        assert_eq!(spans_target(&list("x^2, y^3"), 1), Err(Error::UnequalDegrees));
    }

    #[test]
    fn linres_matrix_for_a_square_of_a_sum() {
        let m = linres_matrix(&p("(x + y + z)^2"), 3, 2).unwrap();
        assert_eq!(m.cols(), 6);
        assert_eq!(m.rank(), 6);
    }

    #[test]
    fn linres_matrix_of_unit() {
        let m = linres_matrix(&p("1"), 2, 2).unwrap();
        // rows: degree-2 monomials outside (x^2, y^2, z^2)
        assert_eq!((m.rows(), m.cols(), m.rank()), (3, 6, 3));
    }

    #[test]
    fn linres_decisions() {
        let r = is_equigen_linres(&p("(x + y + z)^2"), 3).unwrap();
        assert_eq!((r.verdict, r.d, r.s), (Decision::Yes, Some(3), 4));
        let r = is_equigen_linres(&p("x^3 + y^3 + z^3"), 4).unwrap();
        assert_eq!(r.verdict, Decision::No);
        let r = is_equigen_linres(&p("x + y + z"), 3).unwrap();
        assert_eq!((r.verdict, r.s, r.rank), (Decision::No, 5, None));
        assert_eq!(is_equigen_linres(&p("x^7"), 3), Err(Error::DegreeTooLarge { s: -1 }));
    }

    #[test]
    fn certificate_at_the_reference_point() {
        let c = five_quadrics_certificate(&list("x^2 + z^2, x*y + z^2, x*z, y^2, y*z")).unwrap();
        assert!(c.delta.is_one());
        assert!(c.big_d.is_one());
        assert_eq!(c.verdict, Verdict::Gorenstein);
    }

    #[test]
    fn certificate_input_checks() {
        assert!(five_quadrics_certificate(&list("x^2, y^2")).is_err());
        assert!(five_quadrics_certificate(&list("x^2, y^2, z^2, x*y, x*y*z")).is_err());
    }

    #[test]
    fn sweep_has_no_false_positives() {
        let seeds: Vec<u64> = (0..8).collect();
        for row in certificate_sweep(q(), &seeds).unwrap() {
            if row.verdict == Verdict::Gorenstein {
                assert!(row.socle_gorenstein, "seed {}", row.seed);
            }
        }
    }
}
