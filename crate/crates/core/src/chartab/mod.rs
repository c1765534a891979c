//! Exact character tables by the Dixon–Schneider method.
//!
//! Class structure constants give commuting class-sum matrices whose common
//! eigenvectors over `F_p` (with `p ≡ 1 mod e`) are the central characters.
//! Those are turned into characters modulo `p` and lifted to exact values
//! in `Q(ζ_e)` from eigenvalue multiplicities.

mod dixon;
mod lift;
pub mod modp;

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::{Integer, Roots};
use thiserror::Error;

pub use dixon::{modular_characters, ModularTable, DEFAULT_SPLIT_ATTEMPTS};
pub use lift::lift_table;

use crate::classes::{all_power_maps, conjugacy_data, ClassData};
use crate::cyclotomic::{hermitian_sum, CycloNum, SparseCyclo};
use crate::group::FiniteGroup;
use crate::structure::is_prime;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("eigenspace splitting stalled on a {dimension}-dimensional subspace after {attempts} attempts")]
    SplitFailure { dimension: usize, attempts: usize },
    #[error("no character degree matches the modular norm")]
    DegreeRecovery,
    #[error("row {row}, class {class}: multiplicity {multiplicity} exceeds degree {degree}")]
    LiftRange {
        row: usize,
        class: usize,
        multiplicity: u64,
        degree: u64,
    },
    #[error("malformed table: {0}")]
    Shape(String),
    #[error("orthogonality fails: {0}")]
    Orthogonality(String),
}

/// `a[i][j][l]`: the number of ways a fixed element of class `l` factors as
/// `x · y` with `x` in class `i` and `y` in class `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureConstants {
    pub k: usize,
    a: Vec<u32>,
}

impl StructureConstants {
    #[inline]
    pub fn get(&self, i: usize, j: usize, l: usize) -> u32 {
        self.a[(i * self.k + j) * self.k + l]
    }
}

pub fn structure_constants(group: &FiniteGroup, data: &ClassData) -> StructureConstants {
    let k = data.class_count();
    let mut a = vec![0u32; k * k * k];
    for (l, class) in data.classes.iter().enumerate() {
        let z = class.representative;
        for x in 0..group.order() {
            let y = group.mul(group.inverse(x), z);
            a[(data.class_of[x] * k + data.class_of[y]) * k + l] += 1;
        }
    }
    StructureConstants { k, a }
}

/// Smallest prime `p ≡ 1 (mod e)` with `p > 2⌈√order⌉`.
pub fn choose_prime(e: u64, order: u64) -> u64 {
    let bound = 2 * ceil_sqrt(order);
    let mut p = e + 1;
    while p <= bound || !is_prime(p) {
        p += e;
    }
    p
}

fn ceil_sqrt(n: u64) -> u64 {
    let r = n.sqrt();
    if r * r == n {
        r
    } else {
        r + 1
    }
}

/// Raw table data, validated by [`CharacterTable::from_parts`].
#[derive(Debug, Clone)]
pub struct TableParts {
    pub group_order: u64,
    pub exponent: u64,
    pub class_sizes: Vec<u64>,
    pub centralizer_orders: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub degrees: Vec<u64>,
    /// `values[r][c]`; each conductor must divide the exponent.
    pub values: Vec<Vec<CycloNum>>,
}

/// The irreducible characters of a group: rows are characters, columns are
/// conjugacy classes with the identity class first. All values have
/// conductor equal to the group exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharacterTable {
    group_order: u64,
    exponent: u64,
    class_sizes: Vec<u64>,
    centralizer_orders: Vec<u64>,
    class_orders: Vec<u64>,
    degrees: Vec<u64>,
    values: Vec<Vec<CycloNum>>,
}

fn shape(msg: impl Into<String>) -> TableError {
    TableError::Shape(msg.into())
}

impl CharacterTable {
    /// Checks every table invariant, including exact row and column
    /// orthogonality, before accepting the data.
    pub fn from_parts(parts: TableParts) -> Result<Self, TableError> {
        Self::validated(parts, None)
    }

    pub(crate) fn validated(
        parts: TableParts,
        forms: Option<Vec<Vec<SparseCyclo>>>,
    ) -> Result<Self, TableError> {
        let TableParts {
            group_order,
            exponent,
            class_sizes,
            centralizer_orders,
            class_orders,
            degrees,
            values,
        } = parts;
        let k = class_sizes.len();
        if k == 0 {
            return Err(shape("no classes"));
        }
        if centralizer_orders.len() != k || class_orders.len() != k || degrees.len() != k {
            return Err(shape("class data and degrees must all have one entry per class"));
        }
        if values.len() != k || values.iter().any(|row| row.len() != k) {
            return Err(shape(format!("values must be a {k}×{k} matrix")));
        }
        if exponent == 0 || group_order == 0 || group_order % exponent != 0 {
            return Err(shape("the exponent must divide the group order"));
        }
        if class_sizes[0] != 1 || class_orders[0] != 1 {
            return Err(shape("column 0 must be the identity class"));
        }
        if class_sizes.iter().sum::<u64>() != group_order {
            return Err(shape("class sizes do not sum to the group order"));
        }
        for c in 0..k {
            if class_sizes[c] * centralizer_orders[c] != group_order {
                return Err(shape(format!("class {c}: size × centralizer ≠ |G|")));
            }
            if class_orders[c] == 0 || exponent % class_orders[c] != 0 {
                return Err(shape(format!("class {c}: element order does not divide the exponent")));
            }
        }
        if degrees.iter().map(|d| d * d).sum::<u64>() != group_order {
            return Err(TableError::Orthogonality("sum of squared degrees ≠ |G|".into()));
        }

        let values = values
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| v.cast(exponent).map_err(|e| shape(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        for (r, row) in values.iter().enumerate() {
            if degrees[r] == 0 || row[0].as_integer() != Some(&BigInt::from(degrees[r])) {
                return Err(shape(format!("row {r}: first column must equal the degree")));
            }
        }

        let table = Self {
            group_order,
            exponent,
            class_sizes,
            centralizer_orders,
            class_orders,
            degrees,
            values,
        };
        match forms.or_else(|| table.sparse_forms()) {
            Some(forms) => table.check_orthogonality(&forms)?,
            None => table.check_orthogonality_bigint()?,
        }
        Ok(table)
    }

    fn sparse_forms(&self) -> Option<Vec<Vec<SparseCyclo>>> {
        self.values
            .iter()
            .map(|row| row.iter().map(SparseCyclo::from_cyclo).collect())
            .collect()
    }

    /// Same relations as `check_orthogonality` with plain `CycloNum`
    /// arithmetic, for coefficients outside the machine-integer range.
    fn check_orthogonality_bigint(&self) -> Result<(), TableError> {
        let k = self.class_count();
        let e = self.exponent;
        let conj: Vec<Vec<CycloNum>> = self
            .values
            .iter()
            .map(|row| row.iter().map(CycloNum::conj).collect())
            .collect();
        for r in 0..k {
            for s in r..k {
                let mut sum = CycloNum::zero(e);
                for c in 0..k {
                    let weight = CycloNum::from_int(e, self.class_sizes[c]);
                    sum = &sum + &(&weight * &(&self.values[r][c] * &conj[s][c]));
                }
                let expect = if r == s { self.group_order } else { 0 };
                if sum != CycloNum::from_int(e, expect) {
                    return Err(TableError::Orthogonality(format!("rows {r} and {s}")));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let mut sum = CycloNum::zero(e);
                for r in 0..k {
                    sum = &sum + &(&self.values[r][c] * &conj[r][d]);
                }
                let expect = if c == d { self.centralizer_orders[c] } else { 0 };
                if sum != CycloNum::from_int(e, expect) {
                    return Err(TableError::Orthogonality(format!("columns {c} and {d}")));
                }
            }
        }
        Ok(())
    }

    /// Both orthogonality relations, exactly.
    fn check_orthogonality(&self, forms: &[Vec<SparseCyclo>]) -> Result<(), TableError> {
        let k = self.class_count();
        let e = self.exponent;
        let weights: Vec<i64> = self.class_sizes.iter().map(|&s| s as i64).collect();
        for r in 0..k {
            for s in r..k {
                let sum = hermitian_sum(
                    e,
                    (0..k).map(|c| (weights[c], &forms[r][c], &forms[s][c])),
                );
                let expect = if r == s { self.group_order as i64 } else { 0 };
                if sum != CycloNum::from_int(e, expect) {
                    return Err(TableError::Orthogonality(format!(
                        "rows {r} and {s}: Σ |C| χ·conj(ψ) = {sum}, expected {expect}"
                    )));
                }
            }
        }
        for c in 0..k {
            for d in c..k {
                let sum = hermitian_sum(e, (0..k).map(|r| (1, &forms[r][c], &forms[r][d])));
                let expect = if c == d { self.centralizer_orders[c] as i64 } else { 0 };
                if sum != CycloNum::from_int(e, expect) {
                    return Err(TableError::Orthogonality(format!(
                        "columns {c} and {d}: Σ χ·conj(χ) = {sum}, expected {expect}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn group_order(&self) -> u64 {
        self.group_order
    }

    /// Number of classes, which equals the number of irreducible characters.
    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Conductor shared by every value.
    pub fn conductor(&self) -> u64 {
        self.exponent
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.class_sizes
    }

    pub fn centralizer_orders(&self) -> &[u64] {
        &self.centralizer_orders
    }

    pub fn class_orders(&self) -> &[u64] {
        &self.class_orders
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn values(&self) -> &[Vec<CycloNum>] {
        &self.values
    }

    pub fn value(&self, row: usize, col: usize) -> &CycloNum {
        &self.values[row][col]
    }

    /// Sorts rows by degree, then by the coefficient vectors of the row.
    fn sort_rows(&mut self) {
        let mut rows: Vec<(u64, Vec<CycloNum>)> = self
            .degrees
            .drain(..)
            .zip(self.values.drain(..))
            .collect();
        rows.sort_by(|(da, ra), (db, rb)| {
            da.cmp(db).then_with(|| {
                ra.iter()
                    .zip(rb)
                    .map(|(x, y)| x.canonical_cmp(y))
                    .find(|o| o.is_ne())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })
        });
        for (d, row) in rows {
            self.degrees.push(d);
            self.values.push(row);
        }
    }

    /// Whether every `ζ ↦ ζ^j` with `gcd(j, e) = 1` maps rows to rows.
    pub fn galois_permutes_rows(&self) -> bool {
        let e = self.exponent;
        let keys: HashSet<Vec<Vec<BigInt>>> = self.values.iter().map(|row| row_key(row)).collect();
        (1..e.max(2)).filter(|j| j.gcd(&e) == 1).all(|j| {
            self.values.iter().all(|row| {
                let image: Vec<CycloNum> =
                    row.iter().map(|v| v.galois(j as i64).unwrap()).collect();
                keys.contains(&row_key(&image))
            })
        })
    }
}

fn row_key(row: &[CycloNum]) -> Vec<Vec<BigInt>> {
    row.iter().map(|v| v.coeffs().to_vec()).collect()
}

/// Options for [`character_table_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TableOptions {
    /// Seed for the random splitting combinations.
    pub seed: u64,
    pub max_split_attempts: usize,
}

impl Default for TableOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            max_split_attempts: DEFAULT_SPLIT_ATTEMPTS,
        }
    }
}

pub fn character_table(group: &FiniteGroup) -> Result<CharacterTable, TableError> {
    character_table_with(group, &conjugacy_data(group), TableOptions::default())
}

/// Full pipeline: structure constants, prime choice, modular characters and
/// lifting, followed by the canonical row sort.
pub fn character_table_with(
    group: &FiniteGroup,
    data: &ClassData,
    options: TableOptions,
) -> Result<CharacterTable, TableError> {
    let sc = structure_constants(group, data);
    let prime = choose_prime(data.exponent, group.order() as u64);
    let inverses = data.inverse_classes(group);
    let modular = modular_characters(
        &sc,
        data,
        &inverses,
        prime,
        options.seed,
        options.max_split_attempts,
    )?;
    let mut table = lift_table(&modular, data, &all_power_maps(data, group))?;
    table.sort_rows();
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::generate_group;
    use crate::perm::Permutation;

    fn group(degree: usize, gens: &[&[u32]]) -> FiniteGroup {
        let gens = gens
            .iter()
            .map(|g| Permutation::new(g.to_vec()).unwrap())
            .collect();
        generate_group(degree, gens).unwrap()
    }

    fn int(n: u64, v: i64) -> CycloNum {
        CycloNum::from_int(n, v)
    }

    #[test]
    fn prime_choice() {
        assert_eq!(choose_prime(1, 1), 3);
        assert_eq!(choose_prime(6, 6), 7);
        assert_eq!(choose_prime(4, 8), 13);
        assert_eq!(choose_prime(140, 1960), 281);
    }

    #[test]
    fn structure_constants_of_small_groups() {
        let trivial = group(1, &[]);
        let sc = structure_constants(&trivial, &conjugacy_data(&trivial));
        assert_eq!(sc.get(0, 0, 0), 1);

        let c2 = group(2, &[&[1, 0]]);
        let sc = structure_constants(&c2, &conjugacy_data(&c2));
        assert_eq!(sc.get(1, 1, 0), 1);
        assert_eq!(sc.get(1, 1, 1), 0);

        let s3 = group(3, &[&[1, 0, 2], &[1, 2, 0]]);
        let data = conjugacy_data(&s3);
        let sc = structure_constants(&s3, &data);
        let t = 2; // transpositions
        assert_eq!(data.classes[t].size, 3);
        assert_eq!(sc.get(t, t, 0), 3);
        // Σ_l a[i][j][l] |C_l| = |C_i| |C_j|, and the identity row is δ.
        for i in 0..3 {
            for j in 0..3 {
                let lhs: u32 = (0..3).map(|l| sc.get(i, j, l) * data.classes[l].size as u32).sum();
                assert_eq!(lhs as usize, data.classes[i].size * data.classes[j].size);
                for l in 0..3 {
                    assert_eq!(sc.get(0, j, l), u32::from(j == l));
                }
            }
        }
    }

    #[test]
    fn modular_table_of_c2() {
        let c2 = group(2, &[&[1, 0]]);
        let data = conjugacy_data(&c2);
        let sc = structure_constants(&c2, &data);
        let inv = data.inverse_classes(&c2);
        let m = modular_characters(&sc, &data, &inv, 5, 0, 64).unwrap();
        let mut rows = m.values.clone();
        rows.sort();
        assert_eq!(rows, vec![vec![1, 1], vec![1, 4]]);
        assert_eq!(m.degrees, vec![1, 1]);
    }

    #[test]
    fn s3_table() {
        let s3 = group(3, &[&[1, 0, 2], &[1, 2, 0]]);
        let t = character_table(&s3).unwrap();
        assert_eq!(t.degrees(), &[1, 1, 2]);
        // Columns: identity, 3-cycles, transpositions.
        assert_eq!(t.values()[2], vec![int(6, 2), int(6, -1), int(6, 0)]);
        assert_eq!(t.conductor(), 6);
        assert!(t.galois_permutes_rows());
    }

    #[test]
    fn cyclic_tables_are_powers_of_zeta() {
        let c4 = group(4, &[&[1, 2, 3, 0]]);
        let t = character_table(&c4).unwrap();
        assert_eq!(t.class_count(), 4);
        for row in t.values() {
            for v in row {
                assert!(matches!(v.classify(), crate::cyclotomic::Classification::RootOfUnity { .. }));
            }
        }
        // Exactly one row takes the value i on the generator's class.
        let data = conjugacy_data(&c4);
        let gen_class = data.class_of[1];
        let i = CycloNum::zeta(4, 1);
        assert_eq!(t.values().iter().filter(|row| row[gen_class] == i).count(), 1);
    }

    #[test]
    fn validation_rejects_corruption() {
        let c2 = group(2, &[&[1, 0]]);
        let t = character_table(&c2).unwrap();
        let mut parts = TableParts {
            group_order: 2,
            exponent: 2,
            class_sizes: t.class_sizes().to_vec(),
            centralizer_orders: t.centralizer_orders().to_vec(),
            class_orders: t.class_orders().to_vec(),
            degrees: t.degrees().to_vec(),
            values: t.values().to_vec(),
        };
        assert!(CharacterTable::from_parts(parts.clone()).is_ok());
        parts.values[1][1] = int(2, 2);
        assert!(matches!(
            CharacterTable::from_parts(parts),
            Err(TableError::Orthogonality(_))
        ));
    }
}
