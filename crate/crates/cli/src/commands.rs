use std::collections::BTreeMap;
use std::fmt;

use gorenstein::apolarity::{directrix_form_lines, from_socle_newton_dual, INVERSE_HEADER};
use gorenstein::ideal::profile_of;
use gorenstein::monomial::count_monomials;
use gorenstein::params::{random_quadrics, Verdict};
use gorenstein::resolution::euler_characteristics;
use gorenstein::{
    annihilator, betti_table, directrix_form, five_quadrics_certificate, generic_power_model, has_linear_resolution,
    is_equigen_linres, macaulay_inverse, newton_dual, parse_poly, parse_poly_list, socle_decomposition_from_betti,
    socle_newton_dual, spans_target, Error, Field, GradedIdeal, InverseForm, MultiPoly, SkewPolyMatrix,
};

use crate::registry;
use crate::report::Report;

pub struct Ctx {
    pub field: Field,
    pub seed: u64,
    pub vars: Vec<String>,
    pub t_max: Option<usize>,
}

#[derive(Debug)]
pub enum CliError {
    /// Malformed input; exit status 2.
    Parse(String),
    /// A computation could not be carried out; exit status 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(m) | CliError::Failure(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::UnknownVariable(_) | Error::BadField(_) | Error::NotPrime(_) => {
                CliError::Parse(e.to_string())
            }
            _ => CliError::Failure(e.to_string()),
        }
    }
}

type Out = Result<Report, CliError>;

impl Ctx {
    fn report(&self, command: &str, seeded: bool) -> Report {
        let mut r = Report::new(command);
        r.put("field", self.field.name());
        if seeded {
            r.put("seed", self.seed);
        }
        r.put("vars", self.vars.join(","));
        r
    }

    fn n(&self) -> usize {
        self.vars.len()
    }

    fn poly(&self, arg: &str) -> Result<MultiPoly, CliError> {
        Ok(parse_poly(&input(arg)?, &self.vars, self.field)?)
    }

    fn polys(&self, arg: &str) -> Result<Vec<MultiPoly>, CliError> {
        Ok(parse_poly_list(&input(arg)?, &self.vars, self.field)?)
    }

    fn ideal(&self, arg: &str) -> Result<GradedIdeal, CliError> {
        let gens = self.polys(arg)?;
        Ok(GradedIdeal::new(self.field, self.n(), gens)?)
    }

    fn lines(&self, arg: Option<&str>) -> Result<Vec<MultiPoly>, CliError> {
        match arg {
            Some(a) => self.polys(a),
            None => Ok((0..self.n()).map(|i| MultiPoly::var(self.field, self.n(), i)).collect()),
        }
    }

    fn fmt(&self, p: &MultiPoly) -> String {
        p.format_with(&self.vars)
    }

    fn fmt_all(&self, ps: &[MultiPoly]) -> Vec<String> {
        ps.iter().map(|p| self.fmt(p)).collect()
    }

    fn dual_vars(&self) -> Vec<String> {
        self.vars.iter().map(|v| v.to_uppercase()).collect()
    }
}

/// Reads `@path` arguments from disk.
fn input(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| CliError::Parse(format!("cannot read {path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn profile_json(p: &BTreeMap<usize, usize>) -> BTreeMap<String, usize> {
    p.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn put_socle(r: &mut Report, ideal: &GradedIdeal) -> Result<bool, CliError> {
    let s = ideal.socle_report()?;
    r.put("gorenstein", s.is_gorenstein);
    r.put("socle_degree", s.socle_degree);
    r.put("socle", profile_json(&s.socle_dims));
    r.put("hilbert_function", &s.hilbert_function);
    Ok(s.is_gorenstein)
}

fn put_datum(r: &mut Report, ideal: &GradedIdeal) {
    match ideal.virtual_datum() {
        Ok(d) => r.put("datum", [d.d, d.r, d.d_prime]),
        Err(e) => {
            r.put("datum", ());
            r.put("datum_note", e.to_string());
        }
    }
}

pub fn colon(ctx: &Ctx, ci: &str, f: &str) -> Out {
    let mut r = ctx.report("colon", false);
    let ideal = ctx.ideal(ci)?;
    let f = ctx.poly(f)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    r.put("f", ctx.fmt(&f));
    let c = ideal.colon_form(&f, ctx.t_max)?;
    let gens = c.ideal.generators();
    r.put("complete", c.complete);
    r.put("through", c.through);
    r.put("generator_count", gens.len());
    r.put("profile", profile_json(&profile_of(gens)));
    r.put("generators", ctx.fmt_all(gens));
    if c.complete {
        put_socle(&mut r, &c.ideal)?;
        put_datum(&mut r, &c.ideal);
    }
    Ok(r)
}

pub fn socle(ctx: &Ctx, ideal: &str) -> Out {
    let mut r = ctx.report("socle", false);
    let ideal = ctx.ideal(ideal)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    put_socle(&mut r, &ideal)?;
    Ok(r)
}

pub fn betti(ctx: &Ctx, ideal: &str) -> Out {
    let mut r = ctx.report("betti", false);
    let ideal = ctx.ideal(ideal)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    let table = betti_table(&ideal, ctx.t_max)?;
    r.put("table", table.to_text());
    r.put("entries", &table);
    if ideal.is_artinian() {
        r.put("linear_resolution", has_linear_resolution(&ideal)?);
        r.put("socle_from_betti", profile_json(&socle_decomposition_from_betti(&ideal)?));
        let j = table.top_shift().unwrap_or(0);
        let (lhs, rhs) = euler_characteristics(&ideal, j);
        r.put("euler_check_top_degree", lhs == rhs);
    }
    Ok(r)
}

pub fn datum(ctx: &Ctx, ideal: &str) -> Out {
    let mut r = ctx.report("datum", false);
    let ideal = ctx.ideal(ideal)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    r.put("profile", profile_json(&ideal.minimal_generator_profile()));
    let d = ideal.virtual_datum()?;
    r.put("datum", [d.d, d.r, d.d_prime]);
    Ok(r)
}

pub fn pfaffian(ctx: &Ctx, matrix: &str) -> Out {
    let mut r = ctx.report("pfaffian", false);
    let text = input(matrix)?.replace(';', "\n");
    let m = SkewPolyMatrix::parse(&text, &ctx.vars, ctx.field)?;
    r.put("size", m.size());
    r.put("matrix", m.format_rows(&ctx.vars));
    if m.size() % 2 == 0 {
        r.put("pfaffian", ctx.fmt(&m.pfaffian()?));
        return Ok(r);
    }
    let pf = m.maximal_pfaffians()?;
    r.put("maximal_pfaffians", ctx.fmt_all(&pf));
    let ideal = GradedIdeal::new(ctx.field, ctx.n(), pf.into_iter().filter(|p| !p.is_zero()).collect())?;
    if ideal.is_artinian() {
        put_socle(&mut r, &ideal)?;
        put_datum(&mut r, &ideal);
    } else {
        r.put("artinian", false);
    }
    Ok(r)
}

pub fn model(ctx: &Ctx, size: usize, d_prime: u32) -> Out {
    let mut r = ctx.report("model", true);
    r.put("r", size);
    r.put("d_prime", d_prime);
    let m = generic_power_model(ctx.field, size, d_prime, ctx.n(), ctx.seed)?;
    r.put("attempts", m.attempts);
    r.put("matrix", m.matrix.format_rows(&ctx.vars));
    r.put("pfaffians", ctx.fmt_all(m.ideal.generators()));
    put_socle(&mut r, &m.ideal)?;
    put_datum(&mut r, &m.ideal);
    Ok(r)
}

pub fn inverse(ctx: &Ctx, ideal: &str) -> Out {
    let mut r = ctx.report("inverse", false);
    let ideal = ctx.ideal(ideal)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    let form = macaulay_inverse(&ideal)?;
    r.put("kind", INVERSE_HEADER);
    r.put("degree", form.degree());
    r.put("form", form.format_with(&ctx.dual_vars()));
    Ok(r)
}

pub fn ann(ctx: &Ctx, form: &str) -> Out {
    let mut r = ctx.report("ann", false);
    let dual = ctx.dual_vars();
    let p = parse_poly(&input(form)?, &dual, ctx.field)?;
    let form = InverseForm::from_poly(p);
    r.put("kind", INVERSE_HEADER);
    r.put("form", form.format_with(&dual));
    let ideal = annihilator(&form, ctx.t_max)?;
    let gens = ideal.generators();
    r.put("profile", profile_json(&profile_of(gens)));
    r.put("generators", ctx.fmt_all(gens));
    Ok(r)
}

pub fn newton_dual_cmd(ctx: &Ctx, f: &str, m: Option<u32>) -> Out {
    let mut r = ctx.report("newton-dual", false);
    let f = ctx.poly(f)?;
    r.put("f", ctx.fmt(&f));
    match m {
        None => r.put("dual", ctx.fmt(&newton_dual(&f)?)),
        Some(m) => {
            let form = socle_newton_dual(&f, m)?;
            r.put("m", m);
            r.put("kind", INVERSE_HEADER);
            r.put("dual", form.format_with(&ctx.dual_vars()));
            let back = from_socle_newton_dual(&form, m)?;
            r.put("roundtrip", back == f);
        }
    }
    Ok(r)
}

pub fn directrix(ctx: &Ctx, ideal: &str, m: Option<u32>, lines: Option<&str>) -> Out {
    let mut r = ctx.report("directrix", false);
    let ideal = ctx.ideal(ideal)?;
    let ls = ctx.lines(lines)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    r.put("lines", ctx.fmt_all(&ls));
    let m = match m {
        Some(m) => m,
        None => ideal.pure_power_index(&ls)? as u32,
    };
    r.put("m", m);
    let f = match lines {
        Some(_) => directrix_form_lines(&ideal, &ls, m)?,
        None => directrix_form(&ideal, m)?,
    };
    r.put("degree", f.homogeneous_degree());
    r.put("form", ctx.fmt(&f));
    Ok(r)
}

pub fn linres_test(ctx: &Ctx, f: &str, m: u32) -> Out {
    let mut r = ctx.report("linres-test", false);
    let f = ctx.poly(f)?;
    r.put("f", ctx.fmt(&f));
    let rep = is_equigen_linres(&f, m)?;
    r.put("m", m);
    r.put("s", rep.s);
    r.put("rows", rep.rows);
    r.put("cols", rep.cols);
    r.put("rank", rep.rank);
    r.put("target_rank", rep.target_rank);
    r.put("verdict", rep.verdict);
    r.put("d", rep.d);
    if ctx.field != Field::Rational {
        r.put("note", "the sum-power guarantees hold in characteristic zero only");
    }
    Ok(r)
}

pub fn spans(ctx: &Ctx, forms: &str, e: usize) -> Out {
    let mut r = ctx.report("spans", false);
    let forms = ctx.polys(forms)?;
    r.put("forms", ctx.fmt_all(&forms));
    r.put("e", e);
    let rep = spans_target(&forms, e)?;
    r.put("rows", rep.rows);
    r.put("cols", rep.cols);
    r.put("rank", rep.rank);
    r.put("spans", rep.spans);
    Ok(r)
}

pub fn certify_quadrics(ctx: &Ctx, quadrics: Option<&str>) -> Out {
    let mut r = ctx.report("certify-quadrics", quadrics.is_none());
    let qs = match quadrics {
        Some(q) => ctx.polys(q)?,
        None => {
            if ctx.n() != 3 {
                return Err(CliError::Failure("random quadrics need three variables".into()));
            }
            random_quadrics(ctx.field, ctx.seed)
        }
    };
    r.put("quadrics", ctx.fmt_all(&qs));
    let cert = five_quadrics_certificate(&qs)?;
    r.put("delta", &cert.delta);
    r.put("deltas", &cert.deltas);
    r.put("big_d", &cert.big_d);
    r.put("spans_r3", cert.spans_r3);
    r.put("verdict", cert.verdict);
    let ideal = GradedIdeal::new(ctx.field, 3, qs)?;
    let confirmed = ideal.socle_report().map(|s| s.is_gorenstein).unwrap_or(false);
    r.put("socle_gorenstein", confirmed);
    if cert.verdict == Verdict::Gorenstein && !confirmed {
        r.fail();
    }
    Ok(r)
}

pub fn gap(ctx: &Ctx, ideal: &str, lines: Option<&str>) -> Out {
    let mut r = ctx.report("gap", false);
    let ideal = ctx.ideal(ideal)?;
    let ls = ctx.lines(lines)?;
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    r.put("lines", ctx.fmt_all(&ls));
    r.put("socle_degree", ideal.socle_report()?.socle_degree);
    r.put("pure_power_index", ideal.pure_power_index(&ls)?);
    r.put("gap", ideal.pure_power_gap(&ls)?);
    Ok(r)
}

pub fn power_check(ctx: &Ctx, ideal: &str, k: usize) -> Out {
    let mut r = ctx.report("power-check", true);
    let ideal = ctx.ideal(ideal)?.minimalized();
    r.put("ideal", ctx.fmt_all(ideal.generators()));
    r.put("k", k);
    let profile = ideal.minimal_generator_profile();
    if profile.len() != 1 {
        return Err(CliError::Failure(format!("ideal is not equigenerated: {profile:?}")));
    }
    let d = *profile.keys().next().unwrap();
    let top = ctx.t_max.unwrap_or(k * d + 2);
    let mut rows = Vec::new();
    let mut equal = true;
    for t in 0..=top {
        let dim = ideal.power_piece(k, t).dim();
        let full = if t >= k * d { count_monomials(ctx.n(), t) } else { 0 };
        equal &= dim == full;
        rows.push(serde_json::json!({ "t": t, "dim_power": dim, "dim_max_power": full }));
    }
    r.put("pieces", rows);
    r.put("equals_max_power", equal);
    let red = ideal.check_reduction_two(ctx.seed)?;
    r.put("reduction_attempts", red.attempts);
    r.put("reduction", &red.reduction);
    r.put("ji2_equals_i3", red.ji2_equals_i3);
    r.put("ji_equals_i2", red.ji_equals_i2);
    r.put("reduction_number_two", red.reduction_number_two());
    Ok(r)
}

pub fn reproduce(ctx: &Ctx, case: Option<&str>, all: bool, list: bool) -> Out {
    let mut r = ctx.report("reproduce", false);
    if list {
        let cases: Vec<_> = registry::cases()
            .iter()
            .map(|c| serde_json::json!({ "id": c.id, "summary": c.summary, "inputs": c.inputs.iter().map(|(k, v)| format!("{k}: {v}")).collect::<Vec<_>>() }))
            .collect();
        r.put("cases", cases);
        return Ok(r);
    }
    let selected: Vec<&registry::ReproCase> = match (case, all) {
        (Some(id), _) => vec![registry::find(id).ok_or_else(|| CliError::Failure(format!("unknown case `{id}`")))?],
        (None, true) => registry::cases().iter().collect(),
        (None, false) => return Err(CliError::Parse("give --case <id>, --all or --list".into())),
    };
    let outcomes = registry::run_cases(&selected, ctx.field);
    let mut summary = BTreeMap::new();
    for o in &outcomes {
        *summary.entry(o.status.to_string()).or_insert(0usize) += 1;
        if o.status == registry::Status::Fail {
            r.fail();
        }
    }
    r.put("cases", &outcomes);
    r.put("summary", summary);
    Ok(r)
}
