//! Graded Betti numbers of `R/I` from Koszul homology.
//!
//! `β_{i,j} = dim H_i(K(x1..xn) ⊗ R/I)_j`, where the chain module in
//! homological degree `i` and internal degree `j` is `∧^i k^n ⊗ (R/I)_{j-i}`.
//! Exterior basis elements are index subsets in lexicographic order.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ideal::{GradedIdeal, MonomialTables};
use crate::linalg::{ExactMatrix, Subspace};
use crate::par;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, usize), usize>,
}

#[derive(Serialize)]
struct Triple {
    i: usize,
    j: usize,
    value: usize,
}

impl Serialize for BettiTable {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.entries.len()))?;
        for (&(i, j), &value) in &self.entries {
            seq.serialize_element(&Triple { i, j, value })?;
        }
        seq.end()
    }
}

impl BettiTable {
    pub fn from_entries(n: usize, entries: impl IntoIterator<Item = ((usize, usize), usize)>) -> Self {
        BettiTable {
            n,
            entries: entries.into_iter().filter(|(_, v)| *v > 0).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Nonzero `(i, j, β_{i,j})`, ordered by `i` then `j`.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        self.entries.iter().map(|(&(i, j), &v)| (i, j, v)).collect()
    }

    /// Shifts of the `i`-th free module: `j -> β_{i,j}`.
    pub fn shifts(&self, i: usize) -> BTreeMap<usize, usize> {
        self.entries
            .iter()
            .filter(|((a, _), _)| *a == i)
            .map(|(&(_, j), &v)| (j, v))
            .collect()
    }

    pub fn total(&self, i: usize) -> usize {
        self.shifts(i).values().sum()
    }

    /// Largest shift in the last module.
    pub fn top_shift(&self) -> Option<usize> {
        self.shifts(self.n).keys().next_back().copied()
    }

    /// `β_{i,j} = β_{n-i, D-j}` with `D` the top shift.
    pub fn is_symmetric(&self) -> bool {
        let Some(top) = self.top_shift() else {
            return false;
        };
        self.entries.iter().all(|(&(i, j), &v)| {
            i <= self.n && j <= top && self.get(self.n - i, top - j) == v
        })
    }

    /// Staircase layout: column `i`, row `j - i`.
    pub fn to_text(&self) -> String {
        let max_i = self.entries.keys().map(|k| k.0).max().unwrap_or(0);
        let max_row = self.entries.keys().map(|&(i, j)| j - i).max().unwrap_or(0);
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut width = 1;
        for &v in self.entries.values() {
            width = width.max(v.to_string().len());
        }
        for i in 0..=max_i {
            width = width.max(self.total(i).to_string().len());
        }
        let label_width = format!("{max_row}").len().max(5) + 1;
        let mut out = format!("{:>label_width$}", "");
        for i in 0..=max_i {
            out.push_str(&format!(" {i:>width$}"));
        }
        out.push('\n');
        out.push_str(&format!("{:>label_width$}", "total:"));
        for i in 0..=max_i {
            out.push_str(&format!(" {:>width$}", self.total(i)));
        }
        out.push('\n');
        for row in 0..=max_row {
            out.push_str(&format!("{:>label_width$}", format!("{row}:")));
            for i in 0..=max_i {
                out.push_str(&format!(" {:>width$}", cell(self.get(i, i + row))));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Index subsets of `0..n` of size `k` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// Pieces of `R/I` and the Koszul complex over them.
struct KoszulData {
    n: usize,
    tables: MonomialTables,
    pieces: Vec<Subspace>,
    standard: Vec<Vec<usize>>,
    exterior: Vec<Vec<Vec<usize>>>,
}

impl KoszulData {
    fn new(ideal: &GradedIdeal, top: usize) -> Self {
        let n = ideal.n();
        let tables = ideal.tables(top + 1);
        let pieces = ideal.pieces(&tables, top + 1);
        let standard = pieces.iter().map(Subspace::non_pivots).collect();
        let exterior = (0..=n).map(|k| subsets(n, k)).collect();
        KoszulData {
            n,
            tables,
            pieces,
            standard,
            exterior,
        }
    }

    fn quotient_dim(&self, t: isize) -> usize {
        if t < 0 || t as usize >= self.standard.len() {
            0
        } else {
            self.standard[t as usize].len()
        }
    }

    /// `dim (K_i ⊗ R/I)_j`.
    fn chain_dim(&self, i: usize, j: usize) -> usize {
        self.exterior[i].len() * self.quotient_dim(j as isize - i as isize)
    }

    /// Rank of `d_i : (K_i)_j -> (K_{i-1})_j`.
    fn differential_rank(&self, i: usize, j: usize) -> usize {
        if i == 0 || i > self.n || j < i {
            return 0;
        }
        let t = j - i;
        if self.chain_dim(i, j) == 0 || self.chain_dim(i - 1, j) == 0 {
            return 0;
        }
        let field = self.pieces[0].field();
        let target_std = self.standard[t + 1].len();
        let target_sets = &self.exterior[i - 1];
        let height = target_sets.len() * target_std;
        let mut columns = Vec::with_capacity(self.chain_dim(i, j));
        for set in &self.exterior[i] {
            for &mon in &self.standard[t] {
                let mut col = vec![field.zero(); height];
                for (k, &var) in set.iter().enumerate() {
                    let mut rest = set.clone();
                    rest.remove(k);
                    let block = target_sets.binary_search(&rest).unwrap() * target_std;
                    let mut unit = vec![field.zero(); self.tables.basis(t + 1).len()];
                    unit[self.tables.shift_index(t, var, mon)] = field.one();
                    let image = self.pieces[t + 1].quotient_coords(&unit);
                    for (slot, c) in col[block..block + target_std].iter_mut().zip(image) {
                        *slot = if k % 2 == 0 { &*slot + &c } else { &*slot - &c };
                    }
                }
                columns.push(col);
            }
        }
        ExactMatrix::from_columns(field, height, &columns).rank()
    }
}

fn betti_row(data: &KoszulData, j: usize) -> Vec<usize> {
    let n = data.n;
    let ranks: Vec<usize> = (0..=n + 1).map(|i| data.differential_rank(i, j)).collect();
    (0..=n)
        .map(|i| data.chain_dim(i, j) - ranks[i] - ranks[i + 1])
        .collect()
}

/// Betti table of `R/I` for internal degrees `j <= j_max` (default
/// `s + n + 1`, enough for any Artinian quotient).
pub fn betti_table(ideal: &GradedIdeal, j_max: Option<usize>) -> Result<BettiTable> {
    let report = ideal.socle_report()?;
    let n = ideal.n();
    let j_max = j_max.unwrap_or(report.socle_degree + n + 1);
    let data = KoszulData::new(ideal, j_max);
    let rows = par::map_range(j_max + 1, |j| betti_row(&data, j));
    let entries = rows
        .into_iter()
        .enumerate()
        .flat_map(|(j, row)| row.into_iter().enumerate().map(move |(i, v)| ((i, j), v)))
        .collect::<Vec<_>>();
    Ok(BettiTable::from_entries(n, entries))
}

/// Alternating sums of chain dimensions and of Betti numbers in degree `j`.
pub fn euler_characteristics(ideal: &GradedIdeal, j: usize) -> (i64, i64) {
    let data = KoszulData::new(ideal, j);
    let row = betti_row(&data, j);
    let sign = |i: usize| if i % 2 == 0 { 1 } else { -1 };
    let chains = (0..=data.n).map(|i| sign(i) * data.chain_dim(i, j) as i64).sum();
    let betti = row.iter().enumerate().map(|(i, &b)| sign(i) * b as i64).sum();
    (chains, betti)
}

/// True iff all syzygies are linear: `β_{i,j} = 0` unless `j = d + i - 1`
/// for `1 <= i < n`, and the last module is `R(-(2d + n - 2))`.
pub fn has_linear_resolution(ideal: &GradedIdeal) -> Result<bool> {
    let profile = ideal.minimal_generator_profile();
    if profile.len() != 1 {
        return Err(Error::NotEquigenerated {
            profile: profile.into_iter().collect(),
        });
    }
    let d = *profile.keys().next().unwrap();
    let table = betti_table(ideal, None)?;
    let n = ideal.n();
    let middle_linear = table
        .triples()
        .into_iter()
        .filter(|&(i, _, _)| (1..n).contains(&i))
        .all(|(i, j, _)| j == d + i - 1);
    let last = table.shifts(n);
    Ok(middle_linear && last == BTreeMap::from([(2 * d + n - 2, 1)]))
}

/// Socle degrees read off the last module: shift `j` gives degree `j - n`.
pub fn socle_decomposition_from_betti(ideal: &GradedIdeal) -> Result<BTreeMap<usize, usize>> {
    let table = betti_table(ideal, None)?;
    let n = ideal.n();
    Ok(table.shifts(n).into_iter().map(|(j, v)| (j - n, v)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use crate::monomial::default_vars;

    fn ideal(s: &str) -> GradedIdeal {
        GradedIdeal::parse(s, &default_vars(3), Field::Rational).unwrap()
    }

    #[test]
    fn subsets_are_lexicographic() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn koszul_table_of_squares() {
        let t = betti_table(&ideal("x^2, y^2, z^2"), None).unwrap();
        assert_eq!(t.triples(), vec![(0, 0, 1), (1, 2, 3), (2, 4, 3), (3, 6, 1)]);
        assert!(t.is_symmetric());
        assert!(!has_linear_resolution(&ideal("x^2, y^2, z^2")).unwrap());
    }

    #[test]
    fn five_quadrics_are_linear() {
        let i = ideal("x*y, x*z, y*z, x^2 - z^2, y^2 - z^2");
        let t = betti_table(&i, None).unwrap();
        assert_eq!(t.shifts(1), BTreeMap::from([(2, 5)]));
        assert_eq!(t.shifts(2), BTreeMap::from([(3, 5)]));
        assert_eq!(t.shifts(3), BTreeMap::from([(5, 1)]));
        assert!(has_linear_resolution(&i).unwrap());
        assert_eq!(socle_decomposition_from_betti(&i).unwrap(), BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn staircase_text() {
        let t = betti_table(&ideal("x^2, y^2, z^2"), None).unwrap();
        let text = t.to_text();
        assert!(text.contains("total: 1 3 3 1"), "{text}");
        assert!(text.contains("    1: . 3 . ."), "{text}");
    }

    #[test]
    fn euler_characteristic_balances() {
        let i = ideal("z*x^2, z*x*y, z*y^2, x^3, x^2*y, y^3, z^3");
        for j in 0..8 {
            let (a, b) = euler_characteristics(&i, j);
            assert_eq!(a, b, "degree {j}");
        }
    }

    #[test]
    fn not_equigenerated_rejected() {
        assert!(matches!(
            has_linear_resolution(&ideal("x^2, y^3, z^3")),
            Err(Error::NotEquigenerated { .. })
        ));
    }
}
