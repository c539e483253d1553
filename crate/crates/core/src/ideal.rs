//! Homogeneous ideals queried degree by degree.
//!
//! Every question about an ideal `I` is answered inside a single graded
//! piece `I_t ⊂ R_t` by exact linear algebra over the canonical monomial
//! basis. For Artinian ideals this is complete: once `I_t = R_t`, every
//! higher piece is full as well.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{ExactMatrix, Subspace};
use crate::monomial::{count_monomials, GradedMonomialBasis, Monomial};
use crate::par;
use crate::parse::parse_poly_list;
use crate::poly::MultiPoly;

/// Monomial bases of `R_0..=R_top` with multiplication-by-variable tables.
#[derive(Clone, Debug)]
pub struct MonomialTables {
    n: usize,
    bases: Vec<GradedMonomialBasis>,
    // shift[t][k][i] = index of x_k * bases[t][i] in bases[t + 1]
    shift: Vec<Vec<Vec<usize>>>,
}

impl MonomialTables {
    pub fn new(n: usize, top: usize) -> Self {
        let bases: Vec<_> = (0..=top + 1).map(|t| GradedMonomialBasis::new(n, t)).collect();
        let shift = (0..=top)
            .map(|t| {
                (0..n)
                    .map(|k| {
                        let xk = Monomial::var(n, k);
                        bases[t]
                            .monomials()
                            .iter()
                            .map(|m| bases[t + 1].index_of(&m.mul(&xk)).unwrap())
                            .collect()
                    })
                    .collect()
            })
            .collect();
        MonomialTables { n, bases, shift }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest degree whose multiplication table is available.
    pub fn top(&self) -> usize {
        self.shift.len() - 1
    }

    pub fn basis(&self, t: usize) -> &GradedMonomialBasis {
        &self.bases[t]
    }

    /// `x_k * v` for `v` in degree `t`.
    pub fn times_var(&self, t: usize, k: usize, v: &[Scalar]) -> Vec<Scalar> {
        let field = v.first().map(Scalar::field).unwrap_or(Field::Rational);
        let mut out = vec![field.zero(); self.bases[t + 1].len()];
        for (i, x) in v.iter().enumerate() {
            if !x.is_zero() {
                out[self.shift[t][k][i]] = x.clone();
            }
        }
        out
    }

    /// Image of the monomial `bases[t][i]` under `x_k`, as an index.
    pub fn shift_index(&self, t: usize, k: usize, i: usize) -> usize {
        self.shift[t][k][i]
    }

    /// `R_1 * S` for a subspace `S` of degree `t`.
    pub fn expand(&self, t: usize, s: &Subspace) -> Subspace {
        let field = s.field();
        let dim = self.bases[t + 1].len();
        if s.dim() == 0 {
            return Subspace::zero(field, dim);
        }
        if s.is_full() {
            return Subspace::full(field, dim);
        }
        let vectors = s
            .basis()
            .iter()
            .flat_map(|v| (0..self.n).map(move |k| self.times_var(t, k, v)))
            .collect();
        Subspace::span(field, dim, vectors)
    }
}

/// A homogeneous ideal of `k[x1..xn]` given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedIdeal {
    n: usize,
    field: Field,
    generators: Vec<MultiPoly>,
}

/// Per-degree socle data of `R/I`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SocleReport {
    pub socle_dims: BTreeMap<usize, usize>,
    pub socle_degree: usize,
    pub is_gorenstein: bool,
    pub artinian_bound: usize,
    pub hilbert_function: Vec<usize>,
}

impl SocleReport {
    pub fn total_socle_dim(&self) -> usize {
        self.socle_dims.values().sum()
    }
}

/// Generation degree `d`, generator count `r` and skew degree `d'`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct VirtualDatum {
    pub d: usize,
    pub r: usize,
    pub d_prime: usize,
}

impl VirtualDatum {
    pub fn from_counts(d: usize, r: usize) -> Result<Self> {
        if r < 3 || r % 2 == 0 || d < 2 || d % ((r - 1) / 2) != 0 {
            return Err(Error::DatumViolation { d, r });
        }
        Ok(VirtualDatum {
            d,
            r,
            d_prime: 2 * d / (r - 1),
        })
    }
}

/// Result of a colon computation. `complete` is set when the input was
/// Artinian and every degree that can carry a minimal generator was
/// examined; otherwise `ideal` is only correct through degree `through`.
#[derive(Clone, Debug)]
pub struct ColonIdeal {
    pub ideal: GradedIdeal,
    pub through: usize,
    pub complete: bool,
}

/// Outcome of a seeded minimal-reduction test `J I^2 = I^3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub seed: u64,
    pub attempts: usize,
    pub d: usize,
    pub reduction: Vec<String>,
    pub ji2_equals_i3: bool,
    pub ji_equals_i2: bool,
}

impl ReductionReport {
    /// `J I^2 = I^3` while `J I != I^2`.
    pub fn reduction_number_two(&self) -> bool {
        self.ji2_equals_i3 && !self.ji_equals_i2
    }

    pub fn reduction_number_at_most_one(&self) -> bool {
        self.ji_equals_i2
    }
}

/// Retry budget for seeded random constructions.
pub const RESEED_ATTEMPTS: usize = 16;
/// Random coefficients are drawn from `{-B..=B} \ {0}`.
pub const COEFF_BOUND: i64 = 10;

pub(crate) fn random_coeff(rng: &mut ChaCha8Rng, field: Field) -> Scalar {
    loop {
        let c = rng.random_range(-COEFF_BOUND..=COEFF_BOUND);
        let s = field.from_i64(c);
        if c != 0 && !s.is_zero() {
            return s;
        }
    }
}

pub(crate) fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

impl GradedIdeal {
    pub fn new(field: Field, n: usize, generators: Vec<MultiPoly>) -> Result<Self> {
        for g in &generators {
            if g.n() != n {
                return Err(Error::AmbientMismatch {
                    expected: n,
                    got: g.n(),
                });
            }
            if g.is_zero() {
                return Err(Error::ZeroPolynomial);
            }
            if g.homogeneous_degree().is_none() {
                return Err(Error::NotHomogeneous);
            }
        }
        Ok(GradedIdeal {
            n,
            field,
            generators,
        })
    }

    /// Parses comma-separated generators.
    pub fn parse(text: &str, vars: &[String], field: Field) -> Result<Self> {
        let gens = parse_poly_list(text, vars, field)?;
        Self::new(field, vars.len(), gens)
    }

    pub fn zero_ideal(field: Field, n: usize) -> Self {
        GradedIdeal {
            n,
            field,
            generators: Vec::new(),
        }
    }

    pub fn unit(field: Field, n: usize) -> Self {
        GradedIdeal {
            n,
            field,
            generators: vec![MultiPoly::one(field, n)],
        }
    }

    pub fn maximal(field: Field, n: usize) -> Self {
        GradedIdeal {
            n,
            field,
            generators: (0..n).map(|i| MultiPoly::var(field, n, i)).collect(),
        }
    }

    /// `(l_1^{m_1}, ..., l_n^{m_n})`.
    pub fn powers_of(lines: &[MultiPoly], exponents: &[u32]) -> Result<Self> {
        let first = lines.first().ok_or(Error::Invalid("no forms".into()))?;
        if lines.len() != exponents.len() {
            return Err(Error::Invalid("one exponent per form required".into()));
        }
        let gens = lines
            .iter()
            .zip(exponents)
            .map(|(l, &m)| l.pow(m))
            .filter(|g| !g.is_zero())
            .collect();
        Self::new(first.field(), first.n(), gens)
    }

    /// `(x1^m, ..., xn^m)`.
    pub fn pure_powers(field: Field, n: usize, m: u32) -> Self {
        let vars: Vec<_> = (0..n).map(|i| MultiPoly::var(field, n, i)).collect();
        Self::powers_of(&vars, &vec![m; n]).expect("variables are valid generators")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> usize {
        self.generators
            .iter()
            .filter_map(MultiPoly::homogeneous_degree)
            .max()
            .unwrap_or(0)
    }

    /// Default search cap for the Artinian bound: `4 * max degree * n`.
    pub fn default_cap(&self) -> usize {
        (4 * self.max_generator_degree().max(1) * self.n).max(4)
    }

    /// Image under the reparametrization `x_i -> x_i^p`.
    pub fn zeta(&self, p: u32) -> GradedIdeal {
        GradedIdeal {
            n: self.n,
            field: self.field,
            generators: self.generators.iter().map(|g| g.zeta(p)).collect(),
        }
    }

    /// Image under a homogeneous linear substitution.
    pub fn substitute(&self, images: &[MultiPoly]) -> Result<GradedIdeal> {
        let n = images.first().map_or(0, MultiPoly::n);
        let gens = self
            .generators
            .iter()
            .map(|g| g.substitute(images))
            .collect::<Result<Vec<_>>>()?;
        Self::new(self.field, n, gens.into_iter().filter(|g| !g.is_zero()).collect())
    }

    pub fn tables(&self, top: usize) -> MonomialTables {
        MonomialTables::new(self.n, top)
    }

    fn generators_of_degree(&self, tables: &MonomialTables, t: usize) -> Vec<Vec<Scalar>> {
        self.generators
            .iter()
            .filter(|g| g.homogeneous_degree() == Some(t))
            .map(|g| g.coords(tables.basis(t)))
            .collect()
    }

    /// `I_0, ..., I_{t_max}` as row spaces over the canonical bases.
    pub fn pieces(&self, tables: &MonomialTables, t_max: usize) -> Vec<Subspace> {
        let mut out: Vec<Subspace> = Vec::with_capacity(t_max + 1);
        for t in 0..=t_max {
            out.push(self.next_piece(tables, t, out.last()));
        }
        out
    }

    fn next_piece(&self, tables: &MonomialTables, t: usize, prev: Option<&Subspace>) -> Subspace {
        let dim = tables.basis(t).len();
        let mut space = match prev {
            Some(p) => tables.expand(t - 1, p),
            None => Subspace::zero(self.field, dim),
        };
        if !space.is_full() {
            for g in self.generators_of_degree(tables, t) {
                space.insert(&g);
            }
        }
        space
    }

    /// The graded piece `I_t`.
    pub fn piece(&self, t: usize) -> Subspace {
        let tables = self.tables(t);
        self.pieces(&tables, t).pop().unwrap()
    }

    /// `dim_k (R/I)_t`.
    pub fn hilbert_function(&self, t: usize) -> usize {
        count_monomials(self.n, t) - self.piece(t).dim()
    }

    /// Hilbert function of `R/I` for `t = 0..=t_max`.
    pub fn hilbert_series(&self, t_max: usize) -> Vec<usize> {
        let tables = self.tables(t_max);
        self.pieces(&tables, t_max)
            .iter()
            .map(|p| p.ambient_dim() - p.dim())
            .collect()
    }

    /// Least `t` with `(R/I)_t = 0`, searching up to `cap`.
    pub fn artinian_bound(&self, cap: usize) -> Option<usize> {
        let tables = self.tables(cap);
        let mut prev: Option<Subspace> = None;
        for t in 0..=cap {
            let p = self.next_piece(&tables, t, prev.as_ref());
            if p.is_full() {
                return Some(t);
            }
            prev = Some(p);
        }
        None
    }

    fn require_artinian(&self) -> Result<usize> {
        let cap = self.default_cap();
        self.artinian_bound(cap).ok_or(Error::NotArtinian { cap })
    }

    pub fn is_artinian(&self) -> bool {
        self.artinian_bound(self.default_cap()).is_some()
    }

    pub fn contains(&self, f: &MultiPoly) -> bool {
        if f.is_zero() {
            return true;
        }
        let Some(t) = f.homogeneous_degree() else {
            // A homogeneous ideal contains f iff it contains every component.
            let mut by_degree: BTreeMap<usize, Vec<(Monomial, Scalar)>> = BTreeMap::new();
            for (m, c) in f.terms() {
                by_degree.entry(m.degree()).or_default().push((m.clone(), c.clone()));
            }
            return by_degree
                .into_values()
                .all(|ts| self.contains(&MultiPoly::from_terms(self.field, self.n, ts)));
        };
        let tables = self.tables(t);
        let piece = self.pieces(&tables, t).pop().unwrap();
        piece.contains(&f.coords(tables.basis(t)))
    }

    /// Minimal generators found in degrees `0..=t_max`, grouped by degree.
    pub fn minimal_generators_through(&self, t_max: usize) -> Vec<MultiPoly> {
        let tables = self.tables(t_max);
        let pieces = self.pieces(&tables, t_max);
        minimal_generators_from_pieces(self.field, &tables, &pieces)
    }

    /// Minimal generators (canonical representatives) of the ideal.
    pub fn minimal_generators(&self) -> Vec<MultiPoly> {
        self.minimal_generators_through(self.max_generator_degree())
    }

    /// Number of minimal generators in each degree.
    pub fn minimal_generator_profile(&self) -> BTreeMap<usize, usize> {
        profile_of(&self.minimal_generators())
    }

    /// The same ideal presented by its minimal generators.
    pub fn minimalized(&self) -> GradedIdeal {
        GradedIdeal {
            n: self.n,
            field: self.field,
            generators: self.minimal_generators(),
        }
    }

    /// Socle dimensions of `R/I` per degree and the Gorenstein flag.
    pub fn socle_report(&self) -> Result<SocleReport> {
        let a = self.require_artinian()?;
        let tables = self.tables(a);
        let pieces = self.pieces(&tables, a);
        Ok(socle_from_pieces(&tables, &pieces, a))
    }

    /// `(I : f)`. With `t_max = None` the ideal must be Artinian and the
    /// result is complete; otherwise it is computed through `t_max`.
    pub fn colon_form(&self, f: &MultiPoly, t_max: Option<usize>) -> Result<ColonIdeal> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let e = f.homogeneous_degree().ok_or(Error::NotHomogeneous)?;
        if f.n() != self.n {
            return Err(Error::AmbientMismatch {
                expected: self.n,
                got: f.n(),
            });
        }
        let bound = self.artinian_bound(self.default_cap().max(t_max.unwrap_or(0) + e));
        let (through, complete) = match (t_max, bound) {
            (None, None) => {
                return Err(Error::NotArtinian {
                    cap: self.default_cap(),
                })
            }
            (None, Some(a)) => (a.saturating_sub(e), true),
            (Some(t), Some(a)) => (t, t >= a.saturating_sub(e)),
            (Some(t), None) => (t, false),
        };
        let top = through + e;
        let tables = self.tables(top);
        let pieces = self.pieces(&tables, top);
        let colon_pieces = colon_pieces(&tables, &pieces, f, e, through);
        let gens = minimal_generators_from_pieces(self.field, &tables, &colon_pieces);
        Ok(ColonIdeal {
            ideal: GradedIdeal {
                n: self.n,
                field: self.field,
                generators: gens,
            },
            through,
            complete,
        })
    }

    /// The virtual datum `(d, r, d')` of an equigenerated ideal.
    pub fn virtual_datum(&self) -> Result<VirtualDatum> {
        let profile = self.minimal_generator_profile();
        if profile.len() != 1 {
            return Err(Error::NotEquigenerated {
                profile: profile.into_iter().collect(),
            });
        }
        let (&d, &r) = profile.iter().next().unwrap();
        VirtualDatum::from_counts(d, r)
    }

    /// Graded ideal equality through degree `t_max`.
    pub fn same_through(&self, other: &GradedIdeal, t_max: usize) -> bool {
        assert_eq!(self.n, other.n);
        let tables = self.tables(t_max);
        self.pieces(&tables, t_max) == other.pieces(&tables, t_max)
    }

    /// Equality of Artinian ideals, compared through the larger Artinian
    /// bound (both are full beyond it).
    pub fn same_ideal(&self, other: &GradedIdeal) -> Result<bool> {
        if self.n != other.n {
            return Ok(false);
        }
        let a = self.require_artinian()?;
        let b = other.require_artinian()?;
        Ok(self.same_through(other, a.max(b)))
    }

    /// Products of `k` generators (one per multiset of indices).
    pub fn power_generators(&self, k: usize) -> Vec<MultiPoly> {
        let r = self.generators.len();
        let mut out = Vec::new();
        let mut idx = vec![0usize; k];
        if r == 0 {
            return out;
        }
        loop {
            let mut p = MultiPoly::one(self.field, self.n);
            for &i in &idx {
                p = p.mul(&self.generators[i]);
            }
            if !p.is_zero() {
                out.push(p);
            }
            // next non-decreasing index tuple
            let mut pos = k;
            while pos > 0 && idx[pos - 1] == r - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            let v = idx[pos - 1];
            for slot in idx.iter_mut().skip(pos) {
                *slot = v;
            }
        }
        out
    }

    pub fn power(&self, k: usize) -> GradedIdeal {
        GradedIdeal {
            n: self.n,
            field: self.field,
            generators: self.power_generators(k),
        }
    }

    /// `(I^k)_t`.
    pub fn power_piece(&self, k: usize, t: usize) -> Subspace {
        self.minimalized().power(k).piece(t)
    }

    /// Seeded test that a random minimal reduction `J` (three general
    /// combinations of the degree-`d` generators) satisfies `J I^2 = I^3`.
    pub fn check_reduction_two(&self, seed: u64) -> Result<ReductionReport> {
        if self.n != 3 {
            return Err(Error::Precondition("reduction check needs n = 3".into()));
        }
        let datum_profile = self.minimal_generator_profile();
        if datum_profile.len() != 1 {
            return Err(Error::NotEquigenerated {
                profile: datum_profile.into_iter().collect(),
            });
        }
        self.require_artinian()?;
        let gens = self.minimal_generators();
        let d = gens[0].homogeneous_degree().unwrap();
        let mut rng = rng_for(seed);
        for attempt in 1..=RESEED_ATTEMPTS {
            let j: Vec<MultiPoly> = (0..3)
                .map(|_| {
                    gens.iter().fold(MultiPoly::zero(self.field, self.n), |acc, g| {
                        acc.add(&g.scale(&random_coeff(&mut rng, self.field)))
                    })
                })
                .collect();
            if j.iter().any(MultiPoly::is_zero) {
                continue;
            }
            let j_ideal = GradedIdeal::new(self.field, self.n, j.clone())?;
            if !j_ideal.is_artinian() {
                continue;
            }
            let ideal = self.minimalized();
            let i2 = ideal.power_generators(2);
            let i3 = ideal.power_generators(3);
            let products = |a: &[MultiPoly], b: &[MultiPoly]| -> Vec<MultiPoly> {
                a.iter().flat_map(|x| b.iter().map(move |y| x.mul(y))).collect()
            };
            let span_at = |polys: &[MultiPoly], deg: usize| {
                let basis = GradedMonomialBasis::new(self.n, deg);
                Subspace::span(
                    self.field,
                    basis.len(),
                    polys.iter().map(|p| p.coords(&basis)).collect(),
                )
            };
            let ji2 = span_at(&products(&j, &i2), 3 * d);
            let ji = span_at(&products(&j, &gens), 2 * d);
            return Ok(ReductionReport {
                seed,
                attempts: attempt,
                d,
                reduction: j.iter().map(|p| p.to_string()).collect(),
                ji2_equals_i3: ji2 == span_at(&i3, 3 * d),
                ji_equals_i2: ji == span_at(&i2, 2 * d),
            });
        }
        Err(Error::Reseed {
            seed,
            attempts: RESEED_ATTEMPTS,
        })
    }

    /// Least `m` with `l_i^m ∈ I` for every `i`.
    pub fn pure_power_index(&self, lines: &[MultiPoly]) -> Result<usize> {
        check_independent_lines(lines, self.n)?;
        let report = self.socle_report()?;
        let s = report.socle_degree;
        let tables = self.tables(s + 1);
        let pieces = self.pieces(&tables, s + 1);
        for m in 1..=s + 1 {
            let all_in = lines.iter().all(|l| {
                let p = l.pow(m as u32);
                p.is_zero() || pieces[m].contains(&p.coords(tables.basis(m)))
            });
            if all_in {
                return Ok(m);
            }
        }
        // R_{s+1} ⊂ I, so the loop always returns.
        unreachable!("pure powers of degree s+1 always lie in I")
    }

    /// `s + 1 - m(I, l)`.
    pub fn pure_power_gap(&self, lines: &[MultiPoly]) -> Result<usize> {
        let m = self.pure_power_index(lines)?;
        let s = self.socle_report()?.socle_degree;
        Ok(s + 1 - m)
    }
}

/// Compares `(l^m) : f` with the ideal obtained by raising the `i`-th
/// exponent by one and multiplying `f` by `l_i`.
pub fn colon_iteration_check(lines: &[MultiPoly], exponents: &[u32], f: &MultiPoly, i: usize) -> Result<bool> {
    let mut raised = exponents.to_vec();
    *raised.get_mut(i).ok_or(Error::Invalid("index out of range".into()))? += 1;
    compare_colons(lines, exponents, f, &raised, &lines[i].mul(f))
}

/// Compares `(l^m) : f` with `(l_1^{m_1+k}, ..., l_n^{m_n+k}) : (l_1 ... l_n)^k f`.
pub fn colon_iteration_check_k(lines: &[MultiPoly], exponents: &[u32], f: &MultiPoly, k: u32) -> Result<bool> {
    let raised: Vec<u32> = exponents.iter().map(|m| m + k).collect();
    let product = lines
        .iter()
        .fold(MultiPoly::one(f.field(), f.n()), |acc, l| acc.mul(l));
    compare_colons(lines, exponents, f, &raised, &product.pow(k).mul(f))
}

fn compare_colons(
    lines: &[MultiPoly],
    exponents: &[u32],
    f: &MultiPoly,
    raised: &[u32],
    g: &MultiPoly,
) -> Result<bool> {
    check_independent_lines(lines, f.n())?;
    let left = GradedIdeal::powers_of(lines, exponents)?.colon_form(f, None)?;
    let right = GradedIdeal::powers_of(lines, raised)?.colon_form(g, None)?;
    left.ideal.same_ideal(&right.ideal)
}

pub fn profile_of(gens: &[MultiPoly]) -> BTreeMap<usize, usize> {
    let mut profile = BTreeMap::new();
    for g in gens {
        if let Some(d) = g.homogeneous_degree() {
            *profile.entry(d).or_insert(0) += 1;
        }
    }
    profile
}

/// Fails unless `lines` are `n` linearly independent linear forms.
pub fn check_independent_lines(lines: &[MultiPoly], n: usize) -> Result<()> {
    if lines.len() != n {
        return Err(Error::DependentLines);
    }
    let basis = GradedMonomialBasis::new(n, 1);
    let mut rows = Vec::new();
    for l in lines {
        if l.homogeneous_degree() != Some(1) || l.n() != n {
            return Err(Error::DependentLines);
        }
        rows.push(l.coords(&basis));
    }
    let field = lines[0].field();
    if ExactMatrix::from_rows(field, n, rows).rank() != n {
        return Err(Error::DependentLines);
    }
    Ok(())
}

/// Socle of `R/I` given the pieces `I_0..=I_a` with `I_a = R_a`.
pub(crate) fn socle_from_pieces(tables: &MonomialTables, pieces: &[Subspace], a: usize) -> SocleReport {
    let n = tables.n();
    let hilbert: Vec<usize> = pieces[..a].iter().map(|p| p.ambient_dim() - p.dim()).collect();
    let dims = par::map_range(a, |t| {
        let standard = pieces[t].non_pivots();
        if standard.is_empty() {
            return 0;
        }
        let next = &pieces[t + 1];
        let field = pieces[t].field();
        let unit = |i: usize| {
            let mut v = vec![field.zero(); tables.basis(t).len()];
            v[i] = field.one();
            v
        };
        // columns: standard monomials of degree t; rows: all x_k-images in (R/I)_{t+1}
        let columns: Vec<Vec<Scalar>> = standard
            .iter()
            .map(|&i| {
                let v = unit(i);
                (0..n)
                    .flat_map(|k| next.quotient_coords(&tables.times_var(t, k, &v)))
                    .collect()
            })
            .collect();
        let height = columns.first().map_or(0, Vec::len);
        if height == 0 {
            return standard.len();
        }
        let m = ExactMatrix::from_columns(field, height, &columns);
        standard.len() - m.rank()
    });
    let socle_dims: BTreeMap<usize, usize> = dims
        .into_iter()
        .enumerate()
        .filter(|(_, d)| *d > 0)
        .collect();
    let socle_degree = socle_dims.keys().next_back().copied().unwrap_or(0);
    let total: usize = socle_dims.values().sum();
    SocleReport {
        is_gorenstein: total == 1,
        socle_degree,
        socle_dims,
        artinian_bound: a,
        hilbert_function: hilbert,
    }
}

/// `(I : f)_t` for `t = 0..=through`, given `I` through degree `through + e`.
fn colon_pieces(
    tables: &MonomialTables,
    pieces: &[Subspace],
    f: &MultiPoly,
    e: usize,
    through: usize,
) -> Vec<Subspace> {
    par::map_range(through + 1, |t| {
        let target = &pieces[t + e];
        let field = target.field();
        let dim = tables.basis(t).len();
        if target.is_full() {
            return Subspace::full(field, dim);
        }
        let columns: Vec<Vec<Scalar>> = tables
            .basis(t)
            .monomials()
            .iter()
            .map(|m| target.quotient_coords(&f.mul_monomial(m).coords(tables.basis(t + e))))
            .collect();
        let height = target.ambient_dim() - target.dim();
        let (_, kernel) = ExactMatrix::from_columns(field, height, &columns).rank_kernel();
        Subspace::span(field, dim, kernel)
    })
}

/// Minimal generators of the ideal whose pieces are `pieces[0..]`: in each
/// degree, a canonical complement of `R_1 * I_{t-1}` inside `I_t`.
pub(crate) fn minimal_generators_from_pieces(
    field: Field,
    tables: &MonomialTables,
    pieces: &[Subspace],
) -> Vec<MultiPoly> {
    let per_degree = par::map_range(pieces.len(), |t| {
        let below = if t == 0 {
            Subspace::zero(field, pieces[0].ambient_dim())
        } else {
            tables.expand(t - 1, &pieces[t - 1])
        };
        if below.dim() == pieces[t].dim() {
            return Vec::new();
        }
        let mut fresh = Subspace::zero(field, pieces[t].ambient_dim());
        let mut grown = below.clone();
        for v in pieces[t].basis() {
            if grown.insert(v) {
                fresh.insert(&below.reduce(v));
            }
        }
        fresh
            .basis()
            .iter()
            .map(|v| MultiPoly::from_coords(field, tables.basis(t), v))
            .collect()
    });
    per_degree.into_iter().flatten().collect()
}
