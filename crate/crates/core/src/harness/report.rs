//! Report documents and their text rendering.

use std::fmt::Write as _;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::chartab::CharacterTable;
use crate::theta::{Bound, Finding, Rational, Severity, Target, ThetaStats};

/// `a/b`, always with a denominator, so `1` prints as `1/1`.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    let (a, b) = s.split_once('/').unwrap_or((s, "1"));
    let a = a.trim().parse().ok()?;
    let b: num_bigint::BigInt = b.trim().parse().ok()?;
    (b != 0.into()).then(|| Rational::new(a, b))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingRecord {
    pub severity: Severity,
    pub bound: Bound,
    pub target: Target,
    pub value: String,
}

impl From<&Finding> for FindingRecord {
    fn from(f: &Finding) -> Self {
        Self {
            severity: f.severity,
            bound: f.bound,
            target: f.target,
            value: format_rational(&f.value),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FindingCounts {
    pub error: usize,
    pub counterexample_row: usize,
    pub counterexample_column_weak: usize,
    pub counterexample_column_strict: usize,
}

impl FindingCounts {
    pub fn add(&mut self, severity: Severity) {
        match severity {
            Severity::Error => self.error += 1,
            Severity::CounterexampleRow => self.counterexample_row += 1,
            Severity::CounterexampleColumnWeak => self.counterexample_column_weak += 1,
            Severity::CounterexampleColumnStrict => self.counterexample_column_strict += 1,
        }
    }

    pub fn merge(&mut self, other: &Self) {
        self.error += other.error;
        self.counterexample_row += other.counterexample_row;
        self.counterexample_column_weak += other.counterexample_column_weak;
        self.counterexample_column_strict += other.counterexample_column_strict;
    }
}

/// Everything that is determined by the table alone.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Statistics {
    pub order: u64,
    pub class_count: usize,
    pub exponent: u64,
    pub degrees: Vec<u64>,
    pub class_sizes: Vec<u64>,
    pub centralizer_orders: Vec<u64>,
    pub class_orders: Vec<u64>,
    pub theta_per_character: Vec<String>,
    pub theta_prime_per_class: Vec<String>,
    pub l_prime_class_indices: Vec<usize>,
    pub l_class_indices: Vec<usize>,
    pub min_theta: String,
    pub min_theta_prime_on_l_prime: Option<String>,
    pub findings: Vec<FindingRecord>,
    pub finding_counts: FindingCounts,
    /// Number of group elements in the flagged classes.
    pub column_weak_elements: u64,
    pub column_strict_elements: u64,
}

impl Statistics {
    pub fn from_table(table: &CharacterTable) -> (Self, ThetaStats) {
        let s = ThetaStats::compute(table);
        let mut counts = FindingCounts::default();
        for f in &s.findings {
            counts.add(f.severity);
        }
        let stats = Self {
            order: s.order,
            class_count: s.class_count,
            exponent: table.exponent(),
            degrees: s.degrees.clone(),
            class_sizes: s.class_sizes.clone(),
            centralizer_orders: s.centralizer_orders.clone(),
            class_orders: table.class_orders().to_vec(),
            theta_per_character: s.theta_per_character.iter().map(format_rational).collect(),
            theta_prime_per_class: s.theta_prime_per_class.iter().map(format_rational).collect(),
            l_prime_class_indices: s.l_prime_classes.iter().copied().collect(),
            l_class_indices: s.l_classes.iter().copied().collect(),
            min_theta: format_rational(&s.min_theta),
            min_theta_prime_on_l_prime: s.min_theta_prime_on_l_prime.as_ref().map(format_rational),
            findings: s.findings.iter().map(FindingRecord::from).collect(),
            finding_counts: counts,
            column_weak_elements: s.elements_with(Severity::CounterexampleColumnWeak),
            column_strict_elements: s.elements_with(Severity::CounterexampleColumnStrict),
        };
        (stats, s)
    }
}

/// Structural flags. Only `circle_avoiding` is known when the report comes
/// from a table without generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Flags {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilpotent: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow_series: Option<bool>,
    /// Primes in the order their Sylow subgroups were split off.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sylow_tower: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solvable: Option<bool>,
    pub circle_avoiding: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub field: String,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub group_name: String,
    /// Splitting seed; absent for ingested tables.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub flags: Flags,
    pub statistics: Statistics,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected_mismatches: Vec<Mismatch>,
}

impl ThetaReport {
    /// 2 for a theorem violation, 3 for a pinned value that changed.
    pub fn exit_code(&self) -> u8 {
        if self.statistics.finding_counts.error > 0 {
            2
        } else if !self.expected_mismatches.is_empty() {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let st = &self.statistics;
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: order {}, {} classes, exponent {}",
            self.group_name, st.order, st.class_count, st.exponent
        );
        let degrees: Vec<String> = st.degrees.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "degrees: {}", degrees.join(" "));
        let _ = writeln!(out, "flags: {}", flags_text(&self.flags));
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }

        let _ = writeln!(out, "\n{:>5} {:>8} {:>8}", "row", "degree", "theta");
        for (r, (d, t)) in st.degrees.iter().zip(&st.theta_per_character).enumerate() {
            let _ = writeln!(out, "{r:>5} {d:>8} {t:>8}");
        }

        let _ = writeln!(
            out,
            "\n{:>5} {:>6} {:>8} {:>10} {:>8}  set",
            "class", "order", "size", "|C(g)|", "theta'"
        );
        for c in 0..st.class_count {
            let set = if st.l_class_indices.contains(&c) {
                "L"
            } else if st.l_prime_class_indices.contains(&c) {
                "L'"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{c:>5} {:>6} {:>8} {:>10} {:>8}  {set}",
                st.class_orders[c], st.class_sizes[c], st.centralizer_orders[c], st.theta_prime_per_class[c]
            );
        }

        let _ = writeln!(out, "\nmin theta: {}", st.min_theta);
        let _ = writeln!(
            out,
            "min theta' on L': {}",
            st.min_theta_prime_on_l_prime.as_deref().unwrap_or("(L' empty)")
        );
        if st.findings.is_empty() {
            let _ = writeln!(out, "findings: none");
        } else {
            let _ = writeln!(out, "findings:");
            for f in &st.findings {
                let _ = writeln!(out, "  {}", finding_text(f));
            }
            let c = &st.finding_counts;
            let _ = writeln!(
                out,
                "  total: {} error, {} row, {} column (L'), {} column (L); {} elements in flagged L' classes",
                c.error,
                c.counterexample_row,
                c.counterexample_column_weak,
                c.counterexample_column_strict,
                st.column_weak_elements
            );
        }
        for m in &self.expected_mismatches {
            let _ = writeln!(
                out,
                "expected {} = {}, found {}",
                m.field, m.expected, m.found
            );
        }
        out
    }
}

fn flags_text(flags: &Flags) -> String {
    let mut parts = Vec::new();
    let yes_no = |b: bool, yes: &str, no: &str| if b { yes.to_string() } else { no.to_string() };
    if let Some(n) = flags.nilpotent {
        parts.push(yes_no(n, "nilpotent", "not nilpotent"));
    }
    if let Some(s) = flags.sylow_series {
        let mut t = yes_no(s, "Sylow series", "no Sylow series");
        if let Some(tower) = &flags.sylow_tower {
            let primes: Vec<String> = tower.iter().map(u64::to_string).collect();
            let _ = write!(t, " ({})", primes.join(", "));
        }
        parts.push(t);
    }
    if let Some(s) = flags.solvable {
        parts.push(yes_no(s, "solvable", "not solvable"));
    }
    parts.push(yes_no(flags.circle_avoiding, "circle-avoiding", "not circle-avoiding"));
    parts.join(", ")
}

pub fn finding_text(f: &FindingRecord) -> String {
    let what = match f.target {
        Target::Row(r) => format!("row {r}: theta"),
        Target::Column(c) => format!("class {c}: theta'"),
    };
    let bound = match f.bound {
        Bound::Thompson => "> 1/3 (theorem)",
        Bound::Gallagher => "> 1/3 on L' (theorem)",
        Bound::RowHalf => ">= 1/2",
        Bound::ColumnHalfOnLPrime => ">= 1/2 on L'",
        Bound::ColumnHalfOnL => ">= 1/2 on L",
    };
    format!("{:?}: {what} = {} violates {bound}", f.severity, f.value)
}

/// One corpus entry in a verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum EntryRecord {
    Ok {
        file: String,
        report: Box<ThetaReport>,
    },
    Error {
        file: String,
        exit_code: u8,
        message: String,
    },
    Skipped {
        file: String,
    },
}

impl EntryRecord {
    pub fn file(&self) -> &str {
        match self {
            Self::Ok { file, .. } | Self::Error { file, .. } | Self::Skipped { file } => file,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            Self::Ok { report, .. } => report.exit_code(),
            Self::Error { exit_code, .. } => *exit_code,
            Self::Skipped { .. } => 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupFinding {
    pub group: String,
    #[serde(flatten)]
    pub finding: FindingRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub entries: usize,
    pub analyzed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub min_theta: Option<String>,
    pub min_theta_groups: Vec<String>,
    pub finding_counts: FindingCounts,
    pub findings: Vec<GroupFinding>,
    pub expected_mismatches: usize,
}

/// Result of `verify`. Wall times are kept out of the JSON document so that
/// it stays byte-identical between runs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub entries: Vec<EntryRecord>,
    pub summary: Summary,
    #[serde(skip)]
    pub timings: Vec<Option<Duration>>,
}

impl VerifyReport {
    pub fn new(entries: Vec<EntryRecord>, timings: Vec<Option<Duration>>) -> Self {
        let mut summary = Summary {
            entries: entries.len(),
            analyzed: 0,
            failed: 0,
            skipped: 0,
            min_theta: None,
            min_theta_groups: Vec::new(),
            finding_counts: FindingCounts::default(),
            findings: Vec::new(),
            expected_mismatches: 0,
        };
        let mut min: Option<Rational> = None;
        for entry in &entries {
            match entry {
                EntryRecord::Ok { report, .. } => {
                    summary.analyzed += 1;
                    let st = &report.statistics;
                    summary.finding_counts.merge(&st.finding_counts);
                    summary.expected_mismatches += report.expected_mismatches.len();
                    summary.findings.extend(st.findings.iter().map(|f| GroupFinding {
                        group: report.group_name.clone(),
                        finding: f.clone(),
                    }));
                    let t = parse_rational(&st.min_theta).expect("reports hold valid rationals");
                    match &min {
                        Some(m) if t > *m => {}
                        Some(m) if t == *m => summary.min_theta_groups.push(report.group_name.clone()),
                        _ => {
                            min = Some(t);
                            summary.min_theta_groups = vec![report.group_name.clone()];
                        }
                    }
                }
                EntryRecord::Error { .. } => summary.failed += 1,
                EntryRecord::Skipped { .. } => summary.skipped += 1,
            }
        }
        summary.min_theta = min.as_ref().map(format_rational);
        Self {
            entries,
            summary,
            timings,
        }
    }

    /// A theorem violation outranks an internal failure, which outranks a
    /// bad input file.
    pub fn exit_code(&self) -> u8 {
        let codes: Vec<u8> = self.entries.iter().map(EntryRecord::exit_code).collect();
        [2, 3, 1].into_iter().find(|c| codes.contains(c)).unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports always serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (entry, time) in self.entries.iter().zip(&self.timings) {
            let time = time.map_or(String::new(), |t| format!(" [{:.3}s]", t.as_secs_f64()));
            match entry {
                EntryRecord::Ok { file, report } => {
                    let st = &report.statistics;
                    let _ = writeln!(
                        out,
                        "{:<16} {:<24} order {:>6}, k {:>4}, min theta {:>7}, findings {}{}{time}",
                        report.group_name,
                        file,
                        st.order,
                        st.class_count,
                        st.min_theta,
                        st.findings.len(),
                        if report.expected_mismatches.is_empty() {
                            ""
                        } else {
                            ", EXPECTED VALUES DIFFER"
                        }
                    );
                }
                EntryRecord::Error { file, message, .. } => {
                    let _ = writeln!(out, "{file:<41} error: {message}{time}");
                }
                EntryRecord::Skipped { file } => {
                    let _ = writeln!(out, "{file:<41} skipped");
                }
            }
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "\n{} entries: {} analyzed, {} failed, {} skipped",
            s.entries, s.analyzed, s.failed, s.skipped
        );
        if let Some(m) = &s.min_theta {
            let _ = writeln!(out, "min theta: {m} ({})", s.min_theta_groups.join(", "));
        }
        if s.findings.is_empty() {
            let _ = writeln!(out, "findings: none");
        } else {
            let _ = writeln!(out, "findings:");
            for f in &s.findings {
                let _ = writeln!(out, "  {}: {}", f.group, finding_text(&f.finding));
            }
        }
        if s.expected_mismatches > 0 {
            let _ = writeln!(out, "expected-value mismatches: {}", s.expected_mismatches);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_always_carry_a_denominator() {
        assert_eq!(format_rational(&Rational::from_integer(1.into())), "1/1");
        assert_eq!(parse_rational("32/70"), Some(parse_rational("16/35").unwrap()));
        assert_eq!(parse_rational("3"), Some(Rational::from_integer(3.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn exit_code_precedence() {
        let err = |code| EntryRecord::Error {
            file: "f".into(),
            exit_code: code,
            message: String::new(),
        };
        let run = |codes: &[u8]| VerifyReport::new(codes.iter().map(|&c| err(c)).collect(), vec![]);
        assert_eq!(run(&[]).exit_code(), 0);
        assert_eq!(run(&[1, 3]).exit_code(), 3);
        assert_eq!(run(&[1, 1]).exit_code(), 1);
        assert_eq!(run(&[3, 2, 1]).exit_code(), 2);
    }
}
