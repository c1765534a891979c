//! On-disk formats: group files and the table exchange document.

use std::path::Path;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use super::HarnessError;
use crate::chartab::{CharacterTable, TableParts};
use crate::cyclotomic::CycloNum;
use crate::group::FiniteGroup;
use crate::perm::Permutation;

/// A group given by permutation generators on `0..degree`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected: Option<Expected>,
}

/// Pinned results for regression checks. Absent fields are not checked.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Expected {
    pub order: Option<u64>,
    pub class_count: Option<usize>,
    pub exponent: Option<u64>,
    /// Sorted ascending.
    pub degrees: Option<Vec<u64>>,
    pub min_theta: Option<String>,
    pub min_theta_prime_on_l_prime: Option<String>,
    pub nilpotent: Option<bool>,
    pub sylow_series: Option<bool>,
    pub solvable: Option<bool>,
    pub circle_avoiding: Option<bool>,
    pub column_weak_counterexamples: Option<usize>,
    pub column_strict_counterexamples: Option<usize>,
}

fn read(path: &Path) -> Result<String, HarnessError> {
    std::fs::read_to_string(path).map_err(|source| HarnessError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, String> {
    serde_json::from_str(text).map_err(|e| e.to_string())
}

pub fn load_group_file(path: &Path) -> Result<GroupFile, HarnessError> {
    parse_group_file(&read(path)?).map_err(|message| HarnessError::Parse {
        path: path.to_path_buf(),
        message,
    })
}

impl GroupFile {
    pub fn build(&self, cap: usize) -> Result<FiniteGroup, crate::group::GroupError> {
        let gens = self
            .generators
            .iter()
            .map(|g| Permutation::new(g.clone()))
            .collect::<Result<Vec<_>, _>>()?;
        FiniteGroup::generate(self.degree, gens, cap)
    }
}

/// The exchange document. Every integer is a decimal string; each value
/// is `[conductor, coefficients]` with coefficients of `ζ_n^0, ζ_n^1, …`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TableDocument {
    pub group_order: String,
    pub exponent: String,
    pub class_sizes: Vec<String>,
    pub centralizer_orders: Vec<String>,
    pub class_orders: Vec<String>,
    pub degrees: Vec<String>,
    pub values: Vec<Vec<(String, Vec<String>)>>,
}

fn strings(v: &[u64]) -> Vec<String> {
    v.iter().map(u64::to_string).collect()
}

impl TableDocument {
    /// Values are written in the canonical basis of `Q(ζ_e)`, so the
    /// output is unique for a given table.
    pub fn from_table(table: &CharacterTable) -> Self {
        let e = table.exponent().to_string();
        let values = table
            .values()
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| (e.clone(), v.coeffs().iter().map(BigInt::to_string).collect()))
                    .collect()
            })
            .collect();
        Self {
            group_order: table.group_order().to_string(),
            exponent: e,
            class_sizes: strings(table.class_sizes()),
            centralizer_orders: strings(table.centralizer_orders()),
            class_orders: strings(table.class_orders()),
            degrees: strings(table.degrees()),
            values,
        }
    }

    /// Decodes the numbers. Coefficient lists may have any length; each is
    /// reduced in its own conductor, which must divide the exponent.
    pub fn to_parts(&self) -> Result<TableParts, String> {
        fn num(field: &str, s: &str) -> Result<u64, String> {
            s.parse()
                .map_err(|_| format!("{field}: {s:?} is not a non-negative integer"))
        }
        fn nums(field: &str, v: &[String]) -> Result<Vec<u64>, String> {
            v.iter().map(|s| num(field, s)).collect()
        }
        let exponent = num("exponent", &self.exponent)?;
        let mut values = Vec::with_capacity(self.values.len());
        for (r, row) in self.values.iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (c, (conductor, coeffs)) in row.iter().enumerate() {
                let n = num("conductor", conductor)?;
                if n == 0 || exponent == 0 || exponent % n != 0 {
                    return Err(format!(
                        "value [{r}][{c}]: conductor {n} does not divide the exponent {exponent}"
                    ));
                }
                let coeffs = coeffs
                    .iter()
                    .map(|s| {
                        s.parse::<BigInt>()
                            .map_err(|_| format!("value [{r}][{c}]: {s:?} is not an integer"))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                out.push(CycloNum::from_powers(n, coeffs));
            }
            values.push(out);
        }
        Ok(TableParts {
            group_order: num("group_order", &self.group_order)?,
            exponent,
            class_sizes: nums("class_sizes", &self.class_sizes)?,
            centralizer_orders: nums("centralizer_orders", &self.centralizer_orders)?,
            class_orders: nums("class_orders", &self.class_orders)?,
            degrees: nums("degrees", &self.degrees)?,
            values,
        })
    }
}

/// Reads and validates a table document. Syntax and decoding problems are
/// format errors; tables that decode but break an invariant are rejected
/// with the validator's reason.
pub fn load_table(path: &Path) -> Result<CharacterTable, HarnessError> {
    let text = read(path)?;
    let doc: TableDocument = serde_json::from_str(&text).map_err(|e| HarnessError::Format {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let parts = doc.to_parts().map_err(|message| HarnessError::Format {
        path: path.to_path_buf(),
        message,
    })?;
    CharacterTable::from_parts(parts).map_err(|source| HarnessError::Rejected {
        path: path.to_path_buf(),
        source,
    })
}

pub fn table_json(table: &CharacterTable) -> String {
    let mut s = serde_json::to_string_pretty(&TableDocument::from_table(table))
        .expect("table documents always serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_file_round_trip() {
        let text = r#"{"name": "c2", "degree": 2, "generators": [[1, 0]]}"#;
        let file = parse_group_file(text).unwrap();
        assert_eq!(file.generators, vec![vec![1, 0]]);
        assert!(file.expected.is_none());
        assert_eq!(file.build(10).unwrap().order(), 2);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(parse_group_file(r#"{"name": "x", "degree": 1, "generators": [], "gens": []}"#).is_err());
        assert!(parse_group_file(
            r#"{"name": "x", "degree": 1, "generators": [], "expected": {"oder": 1}}"#
        )
        .is_err());
    }

    #[test]
    fn long_coefficient_lists_are_reduced() {
        // 1 + ζ_3 + ζ_3^2 written with all three powers is zero.
        let doc = TableDocument {
            group_order: "1".into(),
            exponent: "3".into(),
            class_sizes: vec!["1".into()],
            centralizer_orders: vec!["1".into()],
            class_orders: vec!["1".into()],
            degrees: vec!["1".into()],
            values: vec![vec![("3".into(), vec!["2".into(), "1".into(), "1".into()])]],
        };
        let parts = doc.to_parts().unwrap();
        assert_eq!(parts.values[0][0], CycloNum::one(1));
    }

    #[test]
    fn conductor_must_divide_exponent() {
        let doc = TableDocument {
            group_order: "1".into(),
            exponent: "1".into(),
            class_sizes: vec!["1".into()],
            centralizer_orders: vec!["1".into()],
            class_orders: vec!["1".into()],
            degrees: vec!["1".into()],
            values: vec![vec![("5".into(), vec!["1".into()])]],
        };
        assert!(doc.to_parts().is_err());
    }
}
