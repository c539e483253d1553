//! Registered example cases. Every expected value records where it comes
//! from: a published statement, an elementary argument, or an independent
//! computation.

use std::collections::BTreeMap;
use std::fmt;

use gorenstein::monomial::{count_monomials, default_vars};
use gorenstein::params::{certificate_sweep, Decision, Verdict};
use gorenstein::{
    annihilator, betti_table, directrix_form, five_quadrics_certificate, generic_power_model, has_linear_resolution,
    is_equigen_linres, macaulay_inverse, parse_poly, parse_poly_list, socle_decomposition_from_betti, spans_target,
    Error, Field, GradedIdeal, MultiPoly,
};
use serde::Serialize;
use serde_json::Value;

type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    Published,
    Elementary,
    Computed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub basis: Basis,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct Outcome {
    pub id: &'static str,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: Vec<Check>,
}

pub struct ReproCase {
    pub id: &'static str,
    pub summary: &'static str,
    pub inputs: &'static [(&'static str, &'static str)],
    /// Expectations that only hold in characteristic zero.
    pub rational_only: bool,
    run: fn(Field) -> Result<Checks>,
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn expect(&mut self, name: impl Into<String>, basis: Basis, expected: impl Serialize, actual: impl Serialize) {
        let expected = serde_json::to_value(expected).expect("serializable");
        let actual = serde_json::to_value(actual).expect("serializable");
        let pass = expected == actual;
        self.0.push(Check {
            name: name.into(),
            basis,
            expected,
            actual,
            pass,
        });
    }
}

const CASES: &[ReproCase] = &[
    ReproCase {
        id: "ex-2-5",
        summary: "(x^3,y^3,z^3) : (x^2y^2+x^2z^2+y^2z^2) is five quadrics",
        inputs: &[("ci", "x^3, y^3, z^3"), ("f", "x^2*y^2 + x^2*z^2 + y^2*z^2")],
        rational_only: false,
        run: ex_2_5,
    },
    ReproCase {
        id: "ex-3-7",
        summary: "(x^3,y^3,z^3) : (x^2+y^2+z^2) is seven cubics with linear resolution",
        inputs: &[("ci", "x^3, y^3, z^3"), ("f", "x^2 + y^2 + z^2")],
        rational_only: false,
        run: ex_3_7,
    },
    ReproCase {
        id: "ex-4-5",
        summary: "(x^5,y^5,z^5) : (x+y+z)^5 has datum (4,5,2)",
        inputs: &[("ci", "x^5, y^5, z^5"), ("f", "(x + y + z)^5")],
        rational_only: false,
        run: ex_4_5,
    },
    ReproCase {
        id: "ex-4-9",
        summary: "(x^5,y^5,z^5) : (x+y+z)^6 has datum (4,9,1)",
        inputs: &[("ci", "x^5, y^5, z^5"), ("f", "(x + y + z)^6")],
        rational_only: false,
        run: ex_4_9,
    },
    ReproCase {
        id: "non-equigen-xyz",
        summary: "(x^4,y^4,z^4) : (x^3+y^3+z^3) has the minimal generator xyz",
        inputs: &[("ci", "x^4, y^4, z^4"), ("f", "x^3 + y^3 + z^3")],
        rational_only: false,
        run: non_equigen_xyz,
    },
    ReproCase {
        id: "prop-exmonomial-d3",
        summary: "monomial family at d = 3: Betti table, socle, spanning",
        inputs: &[("ideal", "z(x,y)^2, x^2(x,y), y^3, z^3")],
        rational_only: false,
        run: exmonomial_d3,
    },
    ReproCase {
        id: "prop-exmonomial-d4",
        summary: "monomial family at d = 4: Betti table, socle, spanning",
        inputs: &[("ideal", "z(x,y)^3, x^2(x,y)^2, y^4, z^4")],
        rational_only: false,
        run: exmonomial_d4,
    },
    ReproCase {
        id: "prop-bis-d3-dp2",
        summary: "x -> x^2 applied to the d = 3 monomial family",
        inputs: &[("ideal", "zeta_2 of z(x,y)^2, x^2(x,y), y^3, z^3")],
        rational_only: false,
        run: bis_d3_dp2,
    },
    ReproCase {
        id: "prop-bisbis-dp2",
        summary: "(x^4,y^4,z^4,x^2y^2,xz^3): Betti table, socle {6:3}, spanning",
        inputs: &[("ideal", "x^4, y^4, z^4, x^2*y^2, x*z^3")],
        rational_only: false,
        run: bisbis_dp2,
    },
    ReproCase {
        id: "sum-power-m-ge-d",
        summary: "(x^m,y^m,z^m) : (x+y+z)^e is linear exactly when m >= s/2 + 1",
        inputs: &[("range", "m <= 5, e <= 6, s = 3(m-1) - e even")],
        rational_only: true,
        run: sum_power,
    },
    ReproCase {
        id: "five-quadrics-P",
        summary: "certificate at the special point and a seeded sweep",
        inputs: &[("quadrics", "x^2 + z^2, x*y + z^2, x*z, y^2, y*z"), ("seeds", "1..=100")],
        rational_only: false,
        run: five_quadrics,
    },
    ReproCase {
        id: "power-max-2-5",
        summary: "powers of the five quadrics equal powers of the maximal ideal",
        inputs: &[("ideal", "x*y, x*z, y*z, x^2 - z^2, y^2 - z^2"), ("seeds", "1..=10")],
        rational_only: false,
        run: power_max_2_5,
    },
    ReproCase {
        id: "duality-roundtrip",
        summary: "inverse systems and directrix forms of the Gorenstein examples",
        inputs: &[("ideals", "ex-2-5, ex-3-7, ex-4-5, ex-4-9")],
        rational_only: false,
        run: duality_roundtrip,
    },
    ReproCase {
        id: "gap-3-7",
        summary: "pure power index 3, gap 2 and the m = 5 directrix of the seven cubics",
        inputs: &[("ideal", EX_3_7)],
        rational_only: false,
        run: gap_3_7,
    },
    ReproCase {
        id: "model-properness",
        summary: "generic power models for r = 5, d' = 1, 2 over ten seeds",
        inputs: &[("r", "5"), ("d_prime", "1, 2"), ("seeds", "1..=10")],
        rational_only: false,
        run: model_properness,
    },
];

pub fn cases() -> &'static [ReproCase] {
    CASES
}

pub fn find(id: &str) -> Option<&'static ReproCase> {
    CASES.iter().find(|c| c.id == id)
}

pub fn run_case(case: &ReproCase, field: Field) -> Outcome {
    if case.rational_only && field != Field::Rational {
        return Outcome {
            id: case.id,
            status: Status::Skip,
            note: Some("expectations hold in characteristic zero only".into()),
            checks: Vec::new(),
        };
    }
    match (case.run)(field) {
        Ok(Checks(checks)) => Outcome {
            id: case.id,
            status: if checks.iter().all(|c| c.pass) {
                Status::Pass
            } else {
                Status::Fail
            },
            note: None,
            checks,
        },
        Err(e) => Outcome {
            id: case.id,
            status: Status::Fail,
            note: Some(e.to_string()),
            checks: Vec::new(),
        },
    }
}

/// Runs the cases concurrently; the result keeps the input order.
pub fn run_cases(cases: &[&ReproCase], field: Field) -> Vec<Outcome> {
    gorenstein::par::map_slice(cases, |c| run_case(c, field))
}

const EX_2_5: &str = "x*y, x*z, y*z, x^2 - z^2, y^2 - z^2";
const EX_3_7: &str = "x^3, y^3, z^3, x*y*z, x*(y^2 - z^2), y*(x^2 - z^2), z*(x^2 - y^2)";

fn vars() -> Vec<String> {
    default_vars(3)
}

fn poly(field: Field, s: &str) -> Result<MultiPoly> {
    parse_poly(s, &vars(), field)
}

fn ideal(field: Field, s: &str) -> Result<GradedIdeal> {
    GradedIdeal::parse(s, &vars(), field)
}

fn colon(field: Field, ci: &str, f: &str) -> Result<GradedIdeal> {
    Ok(ideal(field, ci)?.colon_form(&poly(field, f)?, None)?.ideal)
}

fn xyz(field: Field) -> Vec<MultiPoly> {
    (0..3).map(|i| MultiPoly::var(field, 3, i)).collect()
}

/// Degree-to-count map with zero counts dropped.
fn shifts(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &(k, v) in pairs {
        if v > 0 {
            *m.entry(k).or_insert(0) += v;
        }
    }
    m
}

fn datum_of(i: &GradedIdeal) -> Option<[usize; 3]> {
    i.virtual_datum().ok().map(|d| [d.d, d.r, d.d_prime])
}

fn gorenstein_checks(c: &mut Checks, i: &GradedIdeal, s: usize, basis: Basis) -> Result<()> {
    let rep = i.socle_report()?;
    c.expect("gorenstein", basis, true, rep.is_gorenstein);
    c.expect("socle degree", basis, s, rep.socle_degree);
    Ok(())
}

fn ex_2_5(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = colon(field, "x^3, y^3, z^3", "x^2*y^2 + x^2*z^2 + y^2*z^2")?;
    c.expect("equals the five quadrics", Basis::Published, true, i.same_ideal(&ideal(field, EX_2_5)?)?);
    c.expect("profile", Basis::Published, shifts(&[(2, 5)]), i.minimal_generator_profile());
    gorenstein_checks(&mut c, &i, 2, Basis::Published)?;
    c.expect("datum", Basis::Published, Some([2, 5, 1]), datum_of(&i));
    Ok(c)
}

fn ex_3_7(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = colon(field, "x^3, y^3, z^3", "x^2 + y^2 + z^2")?;
    c.expect("equals the seven cubics", Basis::Published, true, i.same_ideal(&ideal(field, EX_3_7)?)?);
    c.expect("profile", Basis::Published, shifts(&[(3, 7)]), i.minimal_generator_profile());
    gorenstein_checks(&mut c, &i, 4, Basis::Published)?;
    c.expect("datum", Basis::Published, Some([3, 7, 1]), datum_of(&i));
    let betti = has_linear_resolution(&i)?;
    let rank = is_equigen_linres(&poly(field, "x^2 + y^2 + z^2")?, 3)?;
    c.expect("linear resolution (Betti table)", Basis::Published, true, betti);
    c.expect("linear resolution (rank test)", Basis::Published, Decision::Yes, rank.verdict);
    c.expect("rank test agrees with Betti table", Basis::Computed, betti, rank.verdict == Decision::Yes);
    Ok(c)
}

fn ex_4_5(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = colon(field, "x^5, y^5, z^5", "(x + y + z)^5")?;
    c.expect("datum", Basis::Published, Some([4, 5, 2]), datum_of(&i));
    // socle degree 2d + d' - 3
    gorenstein_checks(&mut c, &i, 7, Basis::Elementary)?;
    Ok(c)
}

fn ex_4_9(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = colon(field, "x^5, y^5, z^5", "(x + y + z)^6")?;
    c.expect("datum", Basis::Published, Some([4, 9, 1]), datum_of(&i));
    gorenstein_checks(&mut c, &i, 6, Basis::Elementary)?;
    Ok(c)
}

fn non_equigen_xyz(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = colon(field, "x^4, y^4, z^4", "x^3 + y^3 + z^3")?;
    let profile = i.minimal_generator_profile();
    c.expect("xyz in the colon", Basis::Published, true, i.contains(&poly(field, "x*y*z")?));
    c.expect("lowest generator degree", Basis::Published, Some(3), profile.keys().next().copied());
    c.expect("equigenerated", Basis::Published, false, profile.len() == 1);
    Ok(c)
}

/// Generators `z(x,y)^{d-1}, x^2(x,y)^{d-2}, y^d, z^d`.
fn exmonomial(field: Field, d: u32) -> Result<GradedIdeal> {
    let mut gens = Vec::new();
    for k in 0..d {
        gens.push(format!("z*x^{}*y^{}", d - 1 - k, k));
    }
    for k in 0..d - 1 {
        gens.push(format!("x^2*x^{}*y^{}", d - 2 - k, k));
    }
    gens.push(format!("y^{d}"));
    gens.push(format!("z^{d}"));
    ideal(field, &gens.join(", "))
}

/// Closed-form shifts of `beta_1..beta_3` and the socle for the monomial
/// family after `x -> x^p`.
fn exmonomial_expected(d: usize, p: usize) -> [BTreeMap<usize, usize>; 4] {
    [
        shifts(&[(d * p, 2 * d + 1)]),
        shifts(&[(d * p + p, 3 * d - 3), (d * p + 2 * p, 1), (2 * d * p - p, d)]),
        shifts(&[(d * p + 2 * p, d - 2), (d * p + 3 * p, 1), (2 * d * p, d - 1)]),
        shifts(&[(d * p + 2 * p - 3, d - 2), (d * p + 3 * p - 3, 1), (2 * d * p - 3, d - 1)]),
    ]
}

fn betti_checks(c: &mut Checks, i: &GradedIdeal, expected: &[BTreeMap<usize, usize>; 4]) -> Result<()> {
    let table = betti_table(i, None)?;
    for k in 1..=3 {
        c.expect(format!("beta_{k}"), Basis::Published, &expected[k - 1], table.shifts(k));
    }
    c.expect("socle", Basis::Published, &expected[3], i.socle_report()?.socle_dims);
    c.expect("socle from Betti table", Basis::Computed, &expected[3], socle_decomposition_from_betti(i)?);
    Ok(())
}

fn exmonomial_case(field: Field, d: u32) -> Result<Checks> {
    let mut c = Checks::default();
    let i = exmonomial(field, d)?;
    betti_checks(&mut c, &i, &exmonomial_expected(d as usize, 1))?;
    let span = spans_target(i.generators(), d as usize - 2)?;
    c.expect(format!("generators span degree {}", 2 * d - 2), Basis::Published, true, span.spans);
    Ok(c)
}

fn exmonomial_d3(field: Field) -> Result<Checks> {
    exmonomial_case(field, 3)
}

fn exmonomial_d4(field: Field) -> Result<Checks> {
    exmonomial_case(field, 4)
}

fn bis_d3_dp2(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = exmonomial(field, 3)?.zeta(2);
    c.expect("profile", Basis::Elementary, shifts(&[(6, 7)]), i.minimal_generator_profile());
    betti_checks(&mut c, &i, &exmonomial_expected(3, 2))?;
    Ok(c)
}

fn bisbis_dp2(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let dp = 2;
    let i = ideal(field, "x^4, y^4, z^4, x^2*y^2, x*z^3")?;
    let expected = [
        shifts(&[(2 * dp, 5)]),
        shifts(&[(2 * dp + 1, 1), (3 * dp, 2), (4 * dp - 1, 2), (4 * dp, 2)]),
        shifts(&[(4 * dp + 1, 1), (5 * dp - 1, 2)]),
        shifts(&[(4 * dp - 2, 1), (5 * dp - 4, 2)]),
    ];
    betti_checks(&mut c, &i, &expected)?;
    let span = spans_target(i.generators(), 3 * dp - 3)?;
    c.expect("generators span degree 7", Basis::Published, true, span.spans);
    Ok(c)
}

fn sum_power(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    for m in 1u32..=5 {
        for e in 1usize..=6 {
            let s = 3 * (m as i64 - 1) - e as i64;
            if s < 0 || s % 2 == 1 {
                continue;
            }
            let d = s as usize / 2 + 1;
            let expect_yes = m as usize >= d;
            let f = format!("(x + y + z)^{e}");
            let report = is_equigen_linres(&poly(field, &f)?, m)?;
            let verdict = if expect_yes { Decision::Yes } else { Decision::No };
            c.expect(format!("m={m} e={e} rank test"), Basis::Published, verdict, report.verdict);
            if expect_yes {
                let i = colon(field, &format!("x^{m}, y^{m}, z^{m}"), &f)?;
                let linear = i.socle_report()?.is_gorenstein && has_linear_resolution(&i).unwrap_or(false);
                c.expect(format!("m={m} e={e} Betti table"), Basis::Computed, true, linear);
            }
        }
    }
    Ok(c)
}

fn five_quadrics(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let qs = parse_poly_list("x^2 + z^2, x*y + z^2, x*z, y^2, y*z", &vars(), field)?;
    let cert = five_quadrics_certificate(&qs)?;
    c.expect("delta", Basis::Published, field.one(), &cert.delta);
    c.expect("D", Basis::Published, field.one(), &cert.big_d);
    c.expect("verdict", Basis::Published, Verdict::Gorenstein, cert.verdict);
    let seeds: Vec<u64> = (1..=100).collect();
    let rows = certificate_sweep(field, &seeds)?;
    let false_positives: Vec<u64> = rows
        .iter()
        .filter(|r| r.verdict == Verdict::Gorenstein && !r.socle_gorenstein)
        .map(|r| r.seed)
        .collect();
    c.expect("sweep false positives", Basis::Computed, Vec::<u64>::new(), false_positives);
    Ok(c)
}

fn power_max_2_5(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = ideal(field, EX_2_5)?;
    for k in 2..=3usize {
        let expected: Vec<usize> = (0..=2 * k + 2)
            .map(|t| if t >= 2 * k { count_monomials(3, t) } else { 0 })
            .collect();
        let actual: Vec<usize> = (0..=2 * k + 2).map(|t| i.power_piece(k, t).dim()).collect();
        c.expect(format!("dim (I^{k})_t"), Basis::Published, expected, actual);
    }
    let failing: Vec<u64> = (1..=10u64)
        .filter(|&seed| !i.check_reduction_two(seed).map(|r| r.reduction_number_two()).unwrap_or(false))
        .collect();
    c.expect("seeds without reduction number two", Basis::Published, Vec::<u64>::new(), failing);
    Ok(c)
}

fn duality_roundtrip(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let examples = [
        ("ex-2-5", "x^3, y^3, z^3", "x^2*y^2 + x^2*z^2 + y^2*z^2"),
        ("ex-3-7", "x^3, y^3, z^3", "x^2 + y^2 + z^2"),
        ("ex-4-5", "x^5, y^5, z^5", "(x + y + z)^5"),
        ("ex-4-9", "x^5, y^5, z^5", "(x + y + z)^6"),
    ];
    for (name, ci, f) in examples {
        let i = colon(field, ci, f)?;
        let inverse = macaulay_inverse(&i)?;
        let ann = annihilator(&inverse, None)?;
        c.expect(format!("{name} Ann(F) = I"), Basis::Elementary, true, ann.same_ideal(&i)?);
        let s = i.socle_report()?.socle_degree;
        let m_min = i.pure_power_index(&xyz(field))?;
        for m in [m_min, s + 1] {
            let g = directrix_form(&i, m as u32)?;
            c.expect(format!("{name} m={m} degree"), Basis::Elementary, Some(3 * (m - 1) - s), g.homogeneous_degree());
            let outside = g.terms().all(|(mono, _)| !mono.in_pure_powers(m as u32));
            c.expect(format!("{name} m={m} terms outside pure powers"), Basis::Elementary, true, outside);
            let back = GradedIdeal::pure_powers(field, 3, m as u32).colon_form(&g, None)?.ideal;
            c.expect(format!("{name} m={m} colon identity"), Basis::Published, true, back.same_ideal(&i)?);
        }
    }
    Ok(c)
}

fn gap_3_7(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    let i = ideal(field, EX_3_7)?;
    c.expect("pure power index", Basis::Published, 3, i.pure_power_index(&xyz(field))?);
    c.expect("gap", Basis::Published, 2, i.pure_power_gap(&xyz(field))?);
    let f = directrix_form(&i, 5)?;
    let quotient = f.divide_exact(&poly(field, "x^2*y^2*z^2")?).map(|q| {
        let lead = q.leading_term().map(|(_, c)| c.inv().expect("nonzero")).expect("nonzero quotient");
        q.scale(&lead).format_with(&vars())
    });
    c.expect("directrix / (xyz)^2", Basis::Published, Some("x^2 + y^2 + z^2"), quotient);
    Ok(c)
}

fn model_properness(field: Field) -> Result<Checks> {
    let mut c = Checks::default();
    for (dp, datum) in [(1u32, [2usize, 5, 1]), (2, [4, 5, 2])] {
        let s = 2 * datum[0] + datum[2] - 3;
        let successes = (1..=10u64)
            .filter(|&seed| {
                let Ok(model) = generic_power_model(field, 5, dp, 3, seed) else {
                    return false;
                };
                let gorenstein = model
                    .ideal
                    .socle_report()
                    .map(|r| r.is_gorenstein && r.socle_degree == s)
                    .unwrap_or(false);
                gorenstein && datum_of(&model.ideal) == Some(datum)
            })
            .count();
        c.expect(format!("d'={dp} at least 9 of 10 seeds"), Basis::Published, true, successes >= 9);
    }
    Ok(c)
}
