//! Zero-or-root-of-unity statistics over rows and columns of a table.
//!
//! For a character `χ`, `θ(χ)` is the fraction of group elements where `χ`
//! is zero or a root of unity. For an element `g`, `θ′(g)` is the fraction
//! of irreducible characters that are zero or a root of unity at `g`.
//! `L′(G)` collects the classes with `|C_G(g)| ≤ k(G)` (at least average
//! size) and `L(G)` those with `|C_G(g)| < k(G)`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::cyclotomic::CycloNum;

/// Exact rational in lowest terms.
pub type Rational = BigRational;

pub fn ratio(num: u64, den: u64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Zero or a root of unity.
pub fn value_predicate(v: &CycloNum) -> bool {
    v.classify().is_zero_or_root_of_unity()
}

/// `qualifies[r][c]` is the predicate on `χ_r(g_c)`.
pub fn predicate_matrix(table: &CharacterTable) -> Vec<Vec<bool>> {
    table
        .values()
        .iter()
        .map(|row| row.iter().map(value_predicate).collect())
        .collect()
}

/// Class sizes of the qualifying columns, summed, over `|G|`.
pub fn theta(table: &CharacterTable, row: usize) -> Rational {
    theta_from(table, &predicate_matrix_row(table, row))
}

fn predicate_matrix_row(table: &CharacterTable, row: usize) -> Vec<bool> {
    table.values()[row].iter().map(value_predicate).collect()
}

fn theta_from(table: &CharacterTable, row: &[bool]) -> Rational {
    let count: u64 = row
        .iter()
        .zip(table.class_sizes())
        .filter(|(&q, _)| q)
        .map(|(_, &s)| s)
        .sum();
    ratio(count, table.group_order())
}

/// Qualifying rows at column `col`, over `k`.
pub fn theta_prime(table: &CharacterTable, col: usize) -> Rational {
    let count = table
        .values()
        .iter()
        .filter(|row| value_predicate(&row[col]))
        .count();
    ratio(count as u64, table.class_count() as u64)
}

/// Columns with `|C_G(g)| ≤ k`.
pub fn l_prime_set(table: &CharacterTable) -> BTreeSet<usize> {
    let k = table.class_count() as u64;
    (0..table.class_count())
        .filter(|&c| table.centralizer_orders()[c] <= k)
        .collect()
}

/// Columns with `|C_G(g)| < k`.
pub fn l_set(table: &CharacterTable) -> BTreeSet<usize> {
    let k = table.class_count() as u64;
    (0..table.class_count())
        .filter(|&c| table.centralizer_orders()[c] < k)
        .collect()
}

/// Every `|χ(g)| = 1` occurs on a linear character.
pub fn is_circle_avoiding(table: &CharacterTable) -> bool {
    let e = table.conductor();
    let one = CycloNum::one(e);
    table
        .values()
        .iter()
        .zip(table.degrees())
        .filter(|(_, &d)| d != 1)
        .all(|(row, _)| row.iter().all(|v| v.abs_squared() != one))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Severity {
    /// Contradicts a theorem, so the table or the code is wrong.
    Error,
    /// `θ(χ) < 1/2`.
    CounterexampleRow,
    /// `θ′(g) < 1/2` for `g ∈ L′(G)`.
    CounterexampleColumnWeak,
    /// `θ′(g) < 1/2` for `g ∈ L(G)`.
    CounterexampleColumnStrict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Bound {
    /// `θ(χ) > 1/3`.
    Thompson,
    /// `θ′(g) > 1/3` on `L′(G)`.
    Gallagher,
    /// `θ(χ) ≥ 1/2`.
    RowHalf,
    /// `θ′(g) ≥ 1/2` on `L′(G)`.
    ColumnHalfOnLPrime,
    /// `θ′(g) ≥ 1/2` on `L(G)`.
    ColumnHalfOnL,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Row(usize),
    Column(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub severity: Severity,
    pub bound: Bound,
    pub target: Target,
    pub value: Rational,
}

/// Per-table statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaStats {
    pub order: u64,
    pub class_count: usize,
    pub degrees: Vec<u64>,
    pub theta_per_character: Vec<Rational>,
    pub theta_prime_per_class: Vec<Rational>,
    pub centralizer_orders: Vec<u64>,
    pub class_sizes: Vec<u64>,
    pub l_prime_classes: BTreeSet<usize>,
    pub l_classes: BTreeSet<usize>,
    pub min_theta: Rational,
    /// Absent when `L′(G)` is empty.
    pub min_theta_prime_on_l_prime: Option<Rational>,
    pub circle_avoiding: bool,
    pub findings: Vec<Finding>,
}

impl ThetaStats {
    pub fn compute(table: &CharacterTable) -> Self {
        let k = table.class_count();
        let qualifies = predicate_matrix(table);
        let theta_per_character: Vec<Rational> =
            qualifies.iter().map(|row| theta_from(table, row)).collect();
        let theta_prime_per_class: Vec<Rational> = (0..k)
            .map(|c| {
                let count = qualifies.iter().filter(|row| row[c]).count();
                ratio(count as u64, k as u64)
            })
            .collect();
        let l_prime_classes = l_prime_set(table);
        let l_classes = l_set(table);
        let min_theta = theta_per_character.iter().min().cloned().unwrap_or_else(Rational::one);
        let min_theta_prime_on_l_prime = l_prime_classes
            .iter()
            .map(|&c| theta_prime_per_class[c].clone())
            .min();
        let findings = findings(
            &theta_per_character,
            &theta_prime_per_class,
            &l_prime_classes,
            &l_classes,
        );
        Self {
            order: table.group_order(),
            class_count: k,
            degrees: table.degrees().to_vec(),
            theta_per_character,
            theta_prime_per_class,
            centralizer_orders: table.centralizer_orders().to_vec(),
            class_sizes: table.class_sizes().to_vec(),
            l_prime_classes,
            l_classes,
            min_theta,
            min_theta_prime_on_l_prime,
            circle_avoiding: is_circle_avoiding(table),
            findings,
        }
    }

    pub fn count(&self, severity: Severity) -> usize {
        self.findings.iter().filter(|f| f.severity == severity).count()
    }

    /// Elements (not classes) lying in columns with the given severity.
    pub fn elements_with(&self, severity: Severity) -> u64 {
        self.findings
            .iter()
            .filter(|f| f.severity == severity)
            .filter_map(|f| match f.target {
                Target::Column(c) => Some(self.class_sizes[c]),
                Target::Row(_) => None,
            })
            .sum()
    }
}

/// One finding per violated bound.
pub fn check_bounds(table: &CharacterTable) -> Vec<Finding> {
    ThetaStats::compute(table).findings
}

fn findings(
    thetas: &[Rational],
    theta_primes: &[Rational],
    l_prime: &BTreeSet<usize>,
    l: &BTreeSet<usize>,
) -> Vec<Finding> {
    let third = ratio(1, 3);
    let half = ratio(1, 2);
    let mut out = Vec::new();
    for (r, t) in thetas.iter().enumerate() {
        let target = Target::Row(r);
        if *t <= third {
            out.push(Finding {
                severity: Severity::Error,
                bound: Bound::Thompson,
                target,
                value: t.clone(),
            });
        }
        if *t < half {
            out.push(Finding {
                severity: Severity::CounterexampleRow,
                bound: Bound::RowHalf,
                target,
                value: t.clone(),
            });
        }
    }
    for &c in l_prime {
        let t = &theta_primes[c];
        let target = Target::Column(c);
        if *t <= third {
            out.push(Finding {
                severity: Severity::Error,
                bound: Bound::Gallagher,
                target,
                value: t.clone(),
            });
        }
        if *t < half {
            out.push(Finding {
                severity: Severity::CounterexampleColumnWeak,
                bound: Bound::ColumnHalfOnLPrime,
                target,
                value: t.clone(),
            });
            if l.contains(&c) {
                out.push(Finding {
                    severity: Severity::CounterexampleColumnStrict,
                    bound: Bound::ColumnHalfOnL,
                    target,
                    value: t.clone(),
                });
            }
        }
    }
    out
}
