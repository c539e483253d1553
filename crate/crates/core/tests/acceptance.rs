use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use gorenstein::apolarity::{annihilator, directrix_form, macaulay_inverse};
use gorenstein::ideal::{colon_iteration_check, GradedIdeal};
use gorenstein::linalg::Subspace;
use gorenstein::monomial::{count_monomials, default_vars, GradedMonomialBasis, Monomial};
use gorenstein::params::{
    certificate_sweep, five_quadrics_certificate, is_equigen_linres, linres_matrix, spans_target, Decision,
    Verdict,
};
use gorenstein::pfaffian::{generic_power_model, SkewPolyMatrix};
use gorenstein::resolution::{betti_table, has_linear_resolution, socle_decomposition_from_betti, BettiTable};
use gorenstein::{parse_poly, parse_poly_list, Field, MultiPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

macro_rules! ensure_eq {
    ($left:expr, $right:expr, $what:expr) => {{
        let (l, r) = (&$left, &$right);
        if l != r {
            return Err(format!("{}: got {:?}, expected {:?}", $what, l, r));
        }
    }};
}

fn q() -> Field {
    Field::Rational
}

fn poly(s: &str) -> MultiPoly {
    parse_poly(s, &default_vars(3), q()).unwrap()
}

fn ideal(s: &str) -> GradedIdeal {
    GradedIdeal::parse(s, &default_vars(3), q()).unwrap()
}

fn colon(ci: &str, f: &str) -> GradedIdeal {
    let c = ideal(ci).colon_form(&poly(f), None).unwrap();
    assert!(c.complete);
    c.ideal
}

fn xyz() -> Vec<MultiPoly> {
    vec![poly("x"), poly("y"), poly("z")]
}

fn map(pairs: &[(usize, usize)]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &(k, v) in pairs {
        if v > 0 {
            *m.entry(k).or_insert(0) += v;
        }
    }
    m
}

const EX_2_5: &str = "x*y, x*z, y*z, x^2 - z^2, y^2 - z^2";
const EX_3_7: &str = "x^3, y^3, z^3, x*y*z, x*(y^2 - z^2), y*(x^2 - z^2), z*(x^2 - y^2)";

fn ex_2_5() -> GradedIdeal {
    colon("x^3, y^3, z^3", "x^2*y^2 + x^2*z^2 + y^2*z^2")
}

fn ex_3_7() -> GradedIdeal {
    colon("x^3, y^3, z^3", "x^2 + y^2 + z^2")
}

fn ex_4_5() -> GradedIdeal {
    colon("x^5, y^5, z^5", "(x + y + z)^5")
}

fn ex_4_9() -> GradedIdeal {
    colon("x^5, y^5, z^5", "(x + y + z)^6")
}

fn check_datum(i: &GradedIdeal, d: usize, r: usize, dp: usize) -> Check {
    let datum = i.virtual_datum().map_err(|e| e.to_string())?;
    ensure_eq!((datum.d, datum.r, datum.d_prime), (d, r, dp), "datum");
    ensure_eq!(datum.d_prime * (datum.r - 1), 2 * datum.d, "skew relation");
    Ok(())
}

fn check_gorenstein(i: &GradedIdeal, s: usize) -> Check {
    let report = i.socle_report().map_err(|e| e.to_string())?;
    ensure!(report.is_gorenstein, "not Gorenstein: {:?}", report.socle_dims);
    ensure_eq!(report.socle_degree, s, "socle degree");
    Ok(())
}

fn criterion_1() -> Check {
    let i = ex_2_5();
    ensure!(i.same_ideal(&ideal(EX_2_5)).unwrap(), "colon differs from the five quadrics");
    ensure_eq!(i.minimal_generator_profile(), map(&[(2, 5)]), "profile");
    check_gorenstein(&i, 2)?;
    // socle degree 2d + d' - 3 with (d, d') = (2, 1)
    check_datum(&i, 2, 5, 1)
}

fn criterion_2() -> Check {
    let i = ex_3_7();
    ensure!(i.same_ideal(&ideal(EX_3_7)).unwrap(), "colon differs from the seven cubics");
    ensure_eq!(i.minimal_generator_profile(), map(&[(3, 7)]), "profile");
    check_gorenstein(&i, 4)?;
    check_datum(&i, 3, 7, 1)?;
    let betti = has_linear_resolution(&i).map_err(|e| e.to_string())?;
    let rank = is_equigen_linres(&poly("x^2 + y^2 + z^2"), 3).unwrap();
    ensure!(betti, "Betti table is not linear");
    ensure_eq!(rank.verdict, Decision::Yes, "rank criterion");
    ensure_eq!(rank.d, Some(3), "rank criterion degree");
    Ok(())
}

fn criterion_3() -> Check {
    check_datum(&ex_4_5(), 4, 5, 2)?;
    check_datum(&ex_4_9(), 4, 9, 1)?;
    check_gorenstein(&ex_4_5(), 7)?;
    check_gorenstein(&ex_4_9(), 6)
}

fn criterion_4() -> Check {
    let i = colon("x^4, y^4, z^4", "x^3 + y^3 + z^3");
    let profile = i.minimal_generator_profile();
    ensure!(profile.contains_key(&3), "no cubic generators: {profile:?}");
    ensure!(!profile.contains_key(&2) && !profile.contains_key(&1), "lower generators: {profile:?}");
    // nothing below degree 3, so a cubic in I is a minimal generator
    ensure!(i.contains(&poly("x*y*z")), "xyz not in the colon ideal");
    ensure!(profile.len() > 1, "equigenerated: {profile:?}");
    Ok(())
}

/// Generators `z(x,y)^{d-1}, x^2(x,y)^{d-2}, y^d, z^d`.
fn exmonomial(d: u32) -> GradedIdeal {
    let mut gens = Vec::new();
    for k in 0..d {
        gens.push(format!("z*x^{}*y^{}", d - 1 - k, k));
    }
    for k in 0..d - 1 {
        gens.push(format!("x^2*x^{}*y^{}", d - 2 - k, k));
    }
    gens.push(format!("y^{d}"));
    gens.push(format!("z^{d}"));
    ideal(&gens.join(", "))
}

/// The stated resolution and socle for the monomial family, after `x -> x^p`.
fn exmonomial_expected(d: usize, p: usize) -> [BTreeMap<usize, usize>; 4] {
    [
        map(&[(d * p, 2 * d + 1)]),
        map(&[(d * p + p, 3 * d - 3), (d * p + 2 * p, 1), (2 * d * p - p, d)]),
        map(&[(d * p + 2 * p, d - 2), (d * p + 3 * p, 1), (2 * d * p, d - 1)]),
        map(&[(d * p + 2 * p - 3, d - 2), (d * p + 3 * p - 3, 1), (2 * d * p - 3, d - 1)]),
    ]
}

fn check_betti(i: &GradedIdeal, expected: &[BTreeMap<usize, usize>; 4]) -> Check {
    let table = betti_table(i, None).map_err(|e| e.to_string())?;
    ensure_eq!(table.shifts(0), map(&[(0, 1)]), "beta_0");
    for k in 1..=3 {
        ensure_eq!(table.shifts(k), expected[k - 1], format!("beta_{k}"));
    }
    ensure_eq!(table.shifts(4), BTreeMap::new(), "beta_4");
    let socle = i.socle_report().map_err(|e| e.to_string())?.socle_dims;
    ensure_eq!(socle, expected[3], "socle from socle report");
    ensure_eq!(socle_decomposition_from_betti(i).unwrap(), expected[3], "socle from Betti table");
    Ok(())
}

fn criterion_5() -> Check {
    for d in [3u32, 4] {
        let i = exmonomial(d);
        ensure_eq!(i.generators().len(), 2 * d as usize + 1, "generator count");
        check_betti(&i, &exmonomial_expected(d as usize, 1)).map_err(|e| format!("d={d}: {e}"))?;
        let span = spans_target(i.generators(), d as usize - 2).unwrap();
        ensure!(span.spans, "d={d}: generators do not span in degree {}", 2 * d - 2);
    }
    Ok(())
}

fn criterion_6() -> Check {
    let i = exmonomial(3).zeta(2);
    ensure_eq!(i.minimal_generator_profile(), map(&[(6, 7)]), "profile");
    let expected = exmonomial_expected(3, 2);
    ensure_eq!(expected[3], map(&[(7, 1), (9, 3)]), "closed-form socle");
    check_betti(&i, &expected)
}

fn criterion_7() -> Check {
    let dp = 2;
    let i = ideal("x^4, y^4, z^4, x^2*y^2, x*z^3");
    let expected = [
        map(&[(2 * dp, 5)]),
        map(&[(2 * dp + 1, 1), (3 * dp, 2), (4 * dp - 1, 2), (4 * dp, 2)]),
        map(&[(4 * dp + 1, 1), (5 * dp - 1, 2)]),
        map(&[(4 * dp - 2, 1), (5 * dp - 4, 2)]),
    ];
    ensure_eq!(expected[3], map(&[(6, 3)]), "closed-form socle");
    check_betti(&i, &expected)?;
    ensure!(spans_target(i.generators(), 3 * dp - 3).unwrap().spans, "no spanning in degree 7");
    Ok(())
}

fn criterion_8() -> Check {
    let mut cases = 0;
    for m in 1u32..=5 {
        for e in 1usize..=6 {
            let s = 3 * (m as i64 - 1) - e as i64;
            if s < 0 || s % 2 == 1 {
                continue;
            }
            cases += 1;
            let d = s as usize / 2 + 1;
            let f = format!("(x + y + z)^{e}");
            let report = is_equigen_linres(&poly(&f), m).unwrap();
            let expect_yes = m as usize >= d;
            ensure_eq!(report.verdict == Decision::Yes, expect_yes, format!("verdict for m={m}, e={e}"));
            let ci = format!("x^{m}, y^{m}, z^{m}");
            let i = colon(&ci, &f);
            let gorenstein = i.socle_report().map(|r| r.is_gorenstein).unwrap_or(false);
            let profile_ok = i.minimal_generator_profile().keys().copied().collect::<Vec<_>>() == vec![d];
            let linear = has_linear_resolution(&i).unwrap_or(false);
            ensure_eq!(
                gorenstein && profile_ok && linear,
                expect_yes,
                format!("Betti cross-check for m={m}, e={e}")
            );
            if expect_yes {
                ensure_eq!(report.d, Some(d), format!("generation degree for m={m}, e={e}"));
            }
        }
    }
    ensure_eq!(cases, 11, "instance count");
    Ok(())
}

fn criterion_9() -> Check {
    let quadrics = parse_poly_list("x^2 + z^2, x*y + z^2, x*z, y^2, y*z", &default_vars(3), q()).unwrap();
    let cert = five_quadrics_certificate(&quadrics).unwrap();
    ensure!(cert.delta.is_one(), "delta = {}", cert.delta);
    ensure!(cert.big_d.is_one(), "D = {}", cert.big_d);
    let seeds: Vec<u64> = (1..=100).collect();
    let rows = certificate_sweep(q(), &seeds).unwrap();
    let mut certified = 0;
    for row in &rows {
        if row.verdict == Verdict::Gorenstein {
            certified += 1;
            ensure!(row.socle_gorenstein, "false positive at seed {}", row.seed);
        }
    }
    ensure!(certified >= 95, "only {certified} of 100 certified");
    Ok(())
}

fn criterion_10() -> Check {
    let i = ideal(EX_2_5);
    for k in 2..=3usize {
        for t in 0..=2 * k + 2 {
            let piece = i.power_piece(k, t);
            let expected = if t >= 2 * k { count_monomials(3, t) } else { 0 };
            ensure_eq!(piece.dim(), expected, format!("dim (I^{k})_{t}"));
        }
    }
    for seed in 1..=10 {
        let r = i.check_reduction_two(seed).map_err(|e| e.to_string())?;
        ensure!(r.reduction_number_two(), "seed {seed}: {r:?}");
    }
    Ok(())
}

/// Exponent of the largest power of `xyz` dividing `f`.
fn xyz_valuation(f: &MultiPoly) -> u32 {
    f.terms()
        .map(|(m, _)| *m.exponents().iter().min().unwrap())
        .min()
        .unwrap_or(0)
}

fn check_duality(i: &GradedIdeal) -> Check {
    let inverse = macaulay_inverse(i).map_err(|e| e.to_string())?;
    let ann = annihilator(&inverse, None).unwrap();
    ensure!(ann.same_ideal(i).unwrap(), "Ann(F) differs from I");
    let s = i.socle_report().unwrap().socle_degree;
    let m_min = i.pure_power_index(&xyz()).unwrap();
    for m in [m_min, s + 1] {
        let f = directrix_form(i, m as u32).map_err(|e| format!("m={m}: {e}"))?;
        ensure_eq!(f.homogeneous_degree(), Some(3 * (m - 1) - s), format!("deg f at m={m}"));
        for (mono, _) in f.terms() {
            ensure!(!mono.in_pure_powers(m as u32), "term {mono:?} in pure powers at m={m}");
        }
        let ci = GradedIdeal::pure_powers(q(), 3, m as u32);
        let back = ci.colon_form(&f, None).unwrap().ideal;
        ensure!(back.same_ideal(i).unwrap(), "colon identity fails at m={m}");
    }
    Ok(())
}

fn criterion_11() -> Check {
    for (name, i) in [("ex-2-5", ex_2_5()), ("ex-3-7", ex_3_7()), ("ex-4-5", ex_4_5()), ("ex-4-9", ex_4_9())] {
        check_duality(&i).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn criterion_12() -> Check {
    let i = ideal(EX_3_7);
    ensure_eq!(i.pure_power_index(&xyz()).unwrap(), 3, "m(I, xyz)");
    ensure_eq!(i.pure_power_gap(&xyz()).unwrap(), 2, "gap");
    let f = directrix_form(&i, 5).unwrap();
    let quotient = f.divide_exact(&poly("x^2*y^2*z^2")).ok_or("not divisible by (xyz)^2")?;
    let (_, lead) = quotient.leading_term().unwrap();
    let normalized = quotient.scale(&lead.inv().unwrap());
    ensure_eq!(normalized, poly("x^2 + y^2 + z^2"), "quotient");
    ensure_eq!(xyz_valuation(&f), 2, "largest power of xyz dividing f");
    Ok(())
}

fn criterion_13() -> Check {
    for (dp, datum) in [(1u32, (2, 5, 1)), (2, (4, 5, 2))] {
        let mut successes = 0;
        for seed in 1..=10 {
            let Ok(model) = generic_power_model(q(), 5, dp, 3, seed) else {
                continue;
            };
            let Ok(report) = model.ideal.socle_report() else {
                continue;
            };
            let d = model.ideal.virtual_datum();
            let s = 2 * datum.0 + datum.2 - 3;
            if report.is_gorenstein
                && report.socle_degree == s
                && d.map(|d| (d.d, d.r, d.d_prime)) == Ok(datum)
            {
                successes += 1;
            }
        }
        ensure!(successes >= 9, "d'={dp}: {successes} of 10 seeds");
    }
    Ok(())
}

fn leibniz_det(m: &[Vec<i64>]) -> i128 {
    fn rec(m: &[Vec<i64>], row: usize, used: &mut Vec<bool>, sign: i128, acc: i128, total: &mut i128) {
        let n = m.len();
        if row == n {
            *total += sign * acc;
            return;
        }
        // sign tracks inversions: count used columns greater than the chosen one
        for c in 0..n {
            if used[c] || m[row][c] == 0 {
                continue;
            }
            let inversions = used[c + 1..].iter().filter(|&&u| u).count();
            let s = if inversions % 2 == 0 { sign } else { -sign };
            used[c] = true;
            rec(m, row + 1, used, s, acc * m[row][c] as i128, total);
            used[c] = false;
        }
    }
    let mut total = 0;
    rec(m, 0, &mut vec![false; m.len()], 1, 1, &mut total);
    total
}

fn random_alternating(rng: &mut ChaCha8Rng, r: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; r]; r];
    for i in 0..r {
        for j in i + 1..r {
            let v = rng.random_range(-9..=9);
            a[i][j] = v;
            a[j][i] = -v;
        }
    }
    a
}

fn pfaffian_of(a: &[Vec<i64>]) -> MultiPoly {
    let text: Vec<String> = a
        .iter()
        .map(|row| row.iter().map(|v| format!("({v})")).collect::<Vec<_>>().join(", "))
        .collect();
    let m = SkewPolyMatrix::parse(&text.join("\n"), &default_vars(1), q()).unwrap();
    m.pfaffian().unwrap()
}

fn random_form(rng: &mut ChaCha8Rng, degree: usize) -> MultiPoly {
    let basis = GradedMonomialBasis::new(3, degree);
    loop {
        let mut terms = Vec::new();
        for m in basis.monomials() {
            if rng.random_bool(0.5) {
                terms.push((m.clone(), q().from_i64(rng.random_range(-3..=3))));
            }
        }
        let f = MultiPoly::from_terms(q(), 3, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

fn hilbert_numerator(i: &GradedIdeal, top: usize) -> Vec<i64> {
    let hf = i.hilbert_series(top);
    // multiply by (1 - t)^3
    let mut coeffs: Vec<i64> = hf.iter().map(|&v| v as i64).collect();
    for _ in 0..3 {
        let mut next = coeffs.clone();
        for k in 1..coeffs.len() {
            next[k] -= coeffs[k - 1];
        }
        coeffs = next;
    }
    coeffs
}

fn betti_numerator(table: &BettiTable, top: usize) -> Vec<i64> {
    let mut out = vec![0i64; top + 1];
    for (i, j, v) in table.triples() {
        if j <= top {
            out[j] += if i % 2 == 0 { v as i64 } else { -(v as i64) };
        }
    }
    out
}

fn criterion_14() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for r in [2usize, 4, 6, 8] {
        for seed in 0..50 {
            let a = random_alternating(&mut rng, r);
            let pf = pfaffian_of(&a);
            let det = leibniz_det(&a);
            let pf_value = pf.coeff(&Monomial::one(1));
            ensure_eq!(pf_value.pow(2), q().from_i64(det as i64), format!("Pf^2 = det, r={r}, seed {seed}"));
        }
    }

    let lines = xyz();
    for k in 0..25 {
        let degree = rng.random_range(0..=4);
        let f = random_form(&mut rng, degree);
        let m: Vec<u32> = (0..3).map(|_| rng.random_range(2..=4)).collect();
        let i = rng.random_range(0..3);
        ensure!(colon_iteration_check(&lines, &m, &f, i).unwrap(), "iterated colon instance {k}: f={f}, m={m:?}, i={i}");
    }

    for k in 0..25 {
        let degree = rng.random_range(0..=3);
        let f = random_form(&mut rng, degree);
        let m: u32 = rng.random_range(2..=4);
        let e_prime = rng.random_range(0..=4);
        let kernel_dim = {
            let mat = linres_matrix(&f, m, e_prime).unwrap();
            mat.cols() - mat.rank()
        };
        let c = GradedIdeal::pure_powers(q(), 3, m).colon_form(&f, None).unwrap().ideal;
        let colon_dim: usize = c.piece(e_prime).dim();
        ensure_eq!(kernel_dim, colon_dim, format!("kernel vs colon instance {k}: f={f}, m={m}, e'={e_prime}"));
    }

    let suite: Vec<(&str, GradedIdeal)> = vec![
        ("ex-2-5", ex_2_5()),
        ("ex-3-7", ex_3_7()),
        ("ex-4-5", ex_4_5()),
        ("ex-4-9", ex_4_9()),
        ("exmonomial-3", exmonomial(3)),
        ("exmonomial-4", exmonomial(4)),
        ("bis", exmonomial(3).zeta(2)),
        ("bisbis", ideal("x^4, y^4, z^4, x^2*y^2, x*z^3")),
        ("non-equigen", colon("x^4, y^4, z^4", "x^3 + y^3 + z^3")),
        ("ci", ideal("x^2, y^2, z^2")),
    ];
    for (name, i) in &suite {
        let report = i.socle_report().unwrap();
        let s = report.socle_degree;
        if report.is_gorenstein {
            let hf = &report.hilbert_function;
            for t in 0..=s {
                ensure_eq!(hf[t], hf[s - t], format!("{name}: HF symmetry at {t}"));
            }
        }
        let table = betti_table(i, None).unwrap();
        ensure_eq!(
            socle_decomposition_from_betti(i).unwrap(),
            report.socle_dims,
            format!("{name}: socle from Betti vs socle report")
        );
        let top = s + 4;
        ensure_eq!(
            betti_numerator(&table, top),
            hilbert_numerator(i, top),
            format!("{name}: Betti numbers vs Hilbert series")
        );
        if report.is_gorenstein {
            ensure!(table.is_symmetric(), "{name}: Betti table not symmetric");
        }
    }
    Ok(())
}

fn acceptance() -> Vec<usize> {
    let criteria: [(&str, fn() -> Check); 14] = [
        ("ex-2-5", criterion_1),
        ("ex-3-7", criterion_2),
        ("ex-4-5 / ex-4-9", criterion_3),
        ("non-equigen-xyz", criterion_4),
        ("prop-exmonomial-d3 / d4", criterion_5),
        ("prop-bis-d3-dp2", criterion_6),
        ("prop-bisbis-dp2", criterion_7),
        ("sum-power", criterion_8),
        ("five-quadrics-P", criterion_9),
        ("power-max-2-5", criterion_10),
        ("duality-roundtrip", criterion_11),
        ("gap-3-7", criterion_12),
        ("model-properness", criterion_13),
        ("property suites", criterion_14),
    ];
    let mut failures = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2} {name}: PASS ({secs:.1}s)", k + 1),
            Err(msg) => {
                println!("criterion {:>2} {name}: FAIL ({secs:.1}s) {msg}", k + 1);
                failures.push(k + 1);
            }
        }
    }
    failures
}

fn subspace_oracle_for_maximal_powers() {
    // (m^4)_t is all of R_t for t >= 4
    let full = Subspace::full(q(), count_monomials(3, 5));
    assert_eq!(ideal(EX_2_5).power_piece(2, 5), full);
}

/// Runs without the libtest harness so the criterion lines are always shown.
fn main() -> std::process::ExitCode {
    subspace_oracle_for_maximal_powers();
    let failures = acceptance();
    if failures.is_empty() {
        println!("acceptance: all 14 criteria PASS");
        std::process::ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failures:?}");
        std::process::ExitCode::FAILURE
    }
}
