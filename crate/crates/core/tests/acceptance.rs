//! Acceptance criteria. Runs without the libtest harness so that every
//! criterion prints exactly one PASS or FAIL line; the process exits
//! nonzero if any criterion fails.
//!
//! All comparisons are exact (rationals, cyclotomic equality) except the
//! wall-clock budgets pinned below.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use chartheta::chartab::{character_table_with, CharacterTable, TableOptions};
use chartheta::classes::conjugacy_data;
use chartheta::cyclotomic::{Classification, CycloNum};
use chartheta::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use chartheta::harness::{self, load_group_file, load_table, table_json, GroupFile, RunConfig, ThetaReport};
use chartheta::structure::is_nilpotent;
use chartheta::theta::{ratio, theta, theta_prime, Severity};

/// Budget for the order-1960 group: two minutes on one core.
const SG1960_BUDGET: Duration = Duration::from_secs(120);
/// Budget for the row check over the whole corpus.
const CORPUS_BUDGET: Duration = Duration::from_secs(300);
/// Root-of-unity decision procedure budget.
const UNITY_BUDGET: Duration = Duration::from_secs(60);
const RANDOM_CYCLOTOMICS: usize = 1000;
const MAX_CONDUCTOR: u64 = 24;
const UNITY_SEED: u64 = 0x5eed;

fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

struct Entry {
    file: GroupFile,
    path: PathBuf,
    group: FiniteGroup,
    table: CharacterTable,
}

fn load_corpus() -> Vec<Entry> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(data_dir().join("corpus"))
        .expect("corpus directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let file = load_group_file(&path).expect("group file");
            let group = file.build(DEFAULT_ORDER_CAP).expect("group");
            let table = character_table_with(&group, &conjugacy_data(&group), TableOptions::default())
                .expect("character table");
            Entry {
                file,
                path,
                group,
                table,
            }
        })
        .collect()
}

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn order_1960_counterexample(report: &ThetaReport, table: &CharacterTable, elapsed: Duration) -> Outcome {
    let st = &report.statistics;
    ensure(st.order == 1960, || format!("order {}", st.order))?;
    ensure(report.flags.nilpotent == Some(false), || "group is nilpotent".into())?;
    ensure(report.flags.sylow_series == Some(true), || "no Sylow series".into())?;
    let k = table.class_count();
    let below_half = |c: usize| theta_prime(table, c) < ratio(1, 2);
    let weak: Vec<usize> = st
        .l_prime_class_indices
        .iter()
        .copied()
        .filter(|&c| below_half(c))
        .collect();
    ensure(weak.len() == 12, || format!("{} classes of L' below 1/2", weak.len()))?;
    for &c in &weak {
        ensure(theta_prime(table, c) == ratio(16, 35), || format!("class {c}: θ′ ≠ 16/35"))?;
        ensure(table.centralizer_orders()[c] == k as u64, || {
            format!("class {c}: |C| = {} but k = {k}", table.centralizer_orders()[c])
        })?;
    }
    let strict = st.l_class_indices.iter().filter(|&&c| below_half(c)).count();
    ensure(strict == 0, || format!("{strict} classes of L below 1/2"))?;
    ensure(st.finding_counts.counterexample_column_weak == 12, || "finding count".into())?;
    ensure(st.finding_counts.counterexample_row == 0, || "row findings".into())?;
    ensure(elapsed < SG1960_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "order 1960, k = {k}, 12 classes at θ′ = 16/35 with |C| = k, none in L, {:.2}s",
        elapsed.as_secs_f64()
    ))
}

fn rows_reach_one_half(corpus: &[Entry], elapsed: Duration) -> Outcome {
    let half = ratio(1, 2);
    for e in corpus {
        for r in 0..e.table.class_count() {
            let t = theta(&e.table, r);
            ensure(t >= half, || format!("{}: row {r} has θ = {t}", e.file.name))?;
        }
    }
    ensure(elapsed < CORPUS_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} groups, every θ(χ) ≥ 1/2", corpus.len()))
}

fn theorem_suite(corpus: &[Entry]) -> Outcome {
    let third = ratio(1, 3);
    let mut rows = 0;
    let mut cols = 0;
    for e in corpus {
        let t = &e.table;
        for r in 0..t.class_count() {
            ensure(theta(t, r) > third, || format!("{}: Thompson fails on row {r}", e.file.name))?;
            rows += 1;
        }
        let k = t.class_count() as u64;
        for c in (0..t.class_count()).filter(|&c| t.centralizer_orders()[c] <= k) {
            ensure(theta_prime(t, c) > third, || {
                format!("{}: Gallagher fails on class {c}", e.file.name)
            })?;
            cols += 1;
        }
        let errors = chartheta::theta::check_bounds(t)
            .iter()
            .filter(|f| f.severity == Severity::Error)
            .count();
        ensure(errors == 0, || format!("{}: {errors} Error findings", e.file.name))?;
    }
    Ok(format!("{rows} rows above 1/3, {cols} L′ columns above 1/3"))
}

/// `Σ_c |C_c| x_c conj(y_c)`, straight from the definition.
fn inner(t: &CharacterTable, a: usize, b: usize) -> CycloNum {
    let e = t.conductor();
    let mut acc = CycloNum::zero(e);
    for c in 0..t.class_count() {
        let term = t.value(a, c) * &t.value(b, c).conj();
        acc = acc + CycloNum::from_int(e, t.class_sizes()[c]) * term;
    }
    acc
}

fn column_inner(t: &CharacterTable, c: usize, d: usize) -> CycloNum {
    let e = t.conductor();
    let mut acc = CycloNum::zero(e);
    for r in 0..t.class_count() {
        acc = acc + t.value(r, c) * &t.value(r, d).conj();
    }
    acc
}

fn table_properties(corpus: &[Entry]) -> Outcome {
    for e in corpus {
        let t = &e.table;
        let name = &e.file.name;
        let k = t.class_count();
        let order = t.group_order();
        ensure(t.values().len() == k && k == conjugacy_data(&e.group).class_count(), || {
            format!("{name}: row count ≠ class count")
        })?;
        ensure(t.degrees().iter().map(|d| d * d).sum::<u64>() == order, || {
            format!("{name}: Σ d² ≠ |G|")
        })?;
        let conductor = t.conductor();
        for a in 0..k {
            for b in a..k {
                let want = if a == b { order } else { 0 };
                ensure(inner(t, a, b) == CycloNum::from_int(conductor, want), || {
                    format!("{name}: rows {a}, {b} not orthogonal")
                })?;
                let want = if a == b { t.centralizer_orders()[a] } else { 0 };
                ensure(column_inner(t, a, b) == CycloNum::from_int(conductor, want), || {
                    format!("{name}: columns {a}, {b} not orthogonal")
                })?;
            }
        }
        ensure(t.galois_permutes_rows(), || format!("{name}: Galois action does not permute rows"))?;
        let again = character_table_with(&e.group, &conjugacy_data(&e.group), TableOptions::default())
            .map_err(|err| err.to_string())?;
        ensure(table_json(&again) == table_json(t), || format!("{name}: second run differs"))?;
    }
    Ok(format!("{} tables: orthogonality, Σd², k×k, Galois, determinism", corpus.len()))
}

fn s5_oracle(corpus: &[Entry]) -> Outcome {
    let s5 = corpus
        .iter()
        .find(|e| e.file.name == "s5")
        .ok_or("s5 missing from corpus")?;
    let mine = &s5.table;
    let mut degrees = mine.degrees().to_vec();
    degrees.sort_unstable();
    ensure(degrees == [1, 1, 4, 4, 5, 5, 6], || format!("degrees {degrees:?}"))?;

    let gap = load_table(&data_dir().join("tables/s5.table.json")).map_err(|e| e.to_string())?;
    ensure(gap.class_count() == mine.class_count(), || "class counts differ".into())?;
    // (size, element order) identifies every class of S5.
    let key = |t: &CharacterTable, c: usize| (t.class_sizes()[c], t.class_orders()[c]);
    let mut columns = Vec::new();
    for c in 0..mine.class_count() {
        let matches: Vec<usize> = (0..gap.class_count())
            .filter(|&d| key(&gap, d) == key(mine, c))
            .collect();
        ensure(matches.len() == 1, || format!("class {c} is not identified by size and order"))?;
        columns.push(matches[0]);
    }
    let e = mine.conductor().lcm(&gap.conductor());
    let row = |t: &CharacterTable, r: usize, cols: &dyn Fn(usize) -> usize| -> Vec<Vec<BigInt>> {
        (0..t.class_count())
            .map(|c| t.value(r, cols(c)).cast(e).unwrap().coeffs().to_vec())
            .collect()
    };
    let mut a: Vec<_> = (0..mine.class_count()).map(|r| row(mine, r, &|c| c)).collect();
    let mut b: Vec<_> = (0..gap.class_count()).map(|r| row(&gap, r, &|c| columns[c])).collect();
    a.sort();
    b.sort();
    ensure(a == b, || "tables differ after aligning columns".into())?;
    Ok("degrees {1,1,4,4,5,5,6}; table equals the external export up to row order".into())
}

/// A sum of `±ζ_n^k` rewritten with extra zero sums, so the input is not
/// already canonical.
fn disguised(rng: &mut ChaCha8Rng, n: u64, mut coeffs: Vec<BigInt>) -> CycloNum {
    coeffs.resize(n as usize, BigInt::from(0));
    for p in (2..=n).filter(|&p| n.is_multiple_of(p) && (2..p).all(|q| p % q != 0)) {
        // Σ_j ζ_n^(s + j·n/p) = 0 for a prime p dividing n.
        let c = BigInt::from(rng.gen_range(-2i64..=2));
        let s = rng.gen_range(0..n);
        for j in 0..p {
            coeffs[((s + j * (n / p)) % n) as usize] += &c;
        }
    }
    CycloNum::from_powers(n, coeffs)
}

fn random_cyclotomic(rng: &mut ChaCha8Rng) -> CycloNum {
    let n = rng.gen_range(1..=MAX_CONDUCTOR);
    let mut coeffs = vec![BigInt::from(0); n as usize];
    match rng.gen_range(0..4) {
        // Arbitrary small integer combination.
        0 | 1 => {
            for c in &mut coeffs {
                *c = BigInt::from(rng.gen_range(-2i64..=2));
            }
        }
        // ±ζ^k in disguise.
        2 => {
            let k = rng.gen_range(0..n) as usize;
            coeffs[k] = BigInt::from(if rng.gen_bool(0.5) { 1 } else { -1 });
        }
        // Zero in disguise.
        _ => {}
    }
    disguised(rng, n, coeffs)
}

/// Classifies by brute force: zero, or the least `d ≤ lcm(2, n)` with
/// `a^d = 1`.
fn powering_oracle(a: &CycloNum) -> Option<Option<u64>> {
    if a.is_zero() {
        return Some(None);
    }
    let n = a.conductor();
    let m = n.lcm(&2);
    let one = CycloNum::one(n);
    if a.pow(m) != one {
        return None;
    }
    let mut power = a.clone();
    for d in 1..=m {
        if power == one {
            return Some(Some(d));
        }
        power = &power * a;
    }
    unreachable!("a^m = 1 forces a smaller order to divide m")
}

fn agrees(a: &CycloNum) -> Result<(), String> {
    let got = a.classify();
    match (powering_oracle(a), got) {
        (Some(None), Classification::Zero) => Ok(()),
        (None, Classification::Neither) => Ok(()),
        (Some(Some(d)), Classification::RootOfUnity { order, exponent }) => {
            ensure(order == d, || format!("{a}: order {order}, oracle {d}"))?;
            ensure(exponent.gcd(&order) == 1, || format!("{a}: exponent not coprime"))?;
            let value = CycloNum::zeta(order, exponent as i64);
            ensure(value == *a, || format!("{a}: reported ζ_{order}^{exponent}"))
        }
        (oracle, got) => Err(format!("{a}: classified {got:?}, oracle {oracle:?}")),
    }
}

fn unity_procedure() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(UNITY_SEED);
    let mut tally = BTreeMap::new();
    for _ in 0..RANDOM_CYCLOTOMICS {
        let a = random_cyclotomic(&mut rng);
        agrees(&a)?;
        let kind = match a.classify() {
            Classification::Zero => "zero",
            Classification::RootOfUnity { .. } => "root",
            Classification::Neither => "neither",
        };
        *tally.entry(kind).or_insert(0) += 1;
    }
    let mut candidates = 0;
    for n in 1..=MAX_CONDUCTOR {
        for k in 0..n as i64 {
            for sign in [1, -1] {
                let z = CycloNum::zeta(n, k) * CycloNum::from_int(n, sign);
                agrees(&z)?;
                ensure(z.classify().is_zero_or_root_of_unity(), || format!("{z} missed"))?;
                candidates += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < UNITY_BUDGET, || format!("took {elapsed:?}"))?;
    ensure(tally.len() == 3, || "random sample missed a classification kind".into())?;
    Ok(format!(
        "{RANDOM_CYCLOTOMICS} random values and {candidates} ±ζ^k candidates agree with the powering oracle"
    ))
}

fn nilpotent_circle_avoiding(corpus: &[Entry]) -> Outcome {
    let mut nilpotent = 0;
    for e in corpus.iter().filter(|e| is_nilpotent(&e.group)) {
        nilpotent += 1;
        ensure(chartheta::theta::is_circle_avoiding(&e.table), || {
            format!("{} is nilpotent but not circle-avoiding", e.file.name)
        })?;
    }
    ensure(nilpotent > 0, || "no nilpotent group in the corpus".into())?;
    Ok(format!("{nilpotent} nilpotent groups, all circle-avoiding"))
}

fn round_trip(corpus: &[Entry]) -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let config = RunConfig::default();
    for e in corpus {
        let table = harness::cmd_table(&e.path, &config).map_err(|e| e.to_string())?;
        let path = dir.path().join(format!("{}.table.json", e.file.name));
        std::fs::write(&path, table_json(&table)).map_err(|e| e.to_string())?;
        let ingested = harness::cmd_check_table(&path).map_err(|e| e.to_string())?;
        let direct = harness::cmd_analyze(&e.path, &config).map_err(|e| e.to_string())?;
        let a = serde_json::to_string_pretty(&direct.statistics).unwrap();
        let b = serde_json::to_string_pretty(&ingested.statistics).unwrap();
        ensure(a == b, || format!("{}: statistics differ after the round trip", e.file.name))?;
        ensure(direct.flags.circle_avoiding == ingested.flags.circle_avoiding, || {
            format!("{}: circle-avoiding flag differs", e.file.name)
        })?;
    }
    Ok(format!("{} tables re-ingested with byte-identical statistics", corpus.len()))
}

fn main() {
    let start = Instant::now();
    let corpus = load_corpus();
    let corpus_time = start.elapsed();

    let sg_path = data_dir().join("corpus/sg1960_122.json");
    let sg_start = Instant::now();
    let sg = harness::cmd_analyze(&sg_path, &RunConfig::default());
    let sg_time = sg_start.elapsed();
    let sg_table = &corpus
        .iter()
        .find(|e| e.file.name == "sg1960_122")
        .expect("sg1960_122 in corpus")
        .table;

    let results: Vec<(&str, Outcome)> = vec![
        (
            "1 order-1960 counterexample",
            sg.as_ref()
                .map_err(|e| e.to_string())
                .and_then(|r| order_1960_counterexample(r, sg_table, sg_time)),
        ),
        (
            "2 order-1960 group is circle-avoiding",
            sg.as_ref().map_err(|e| e.to_string()).and_then(|r| {
                ensure(r.flags.circle_avoiding, || "flag is false".into())?;
                Ok("|χ(g)| = 1 only on linear characters".into())
            }),
        ),
        ("3 θ ≥ 1/2 on the corpus", rows_reach_one_half(&corpus, corpus_time)),
        ("4 Thompson and Gallagher bounds", theorem_suite(&corpus)),
        ("5 table correctness", table_properties(&corpus)),
        ("6 S5 against external table", s5_oracle(&corpus)),
        ("7 root-of-unity decision", unity_procedure()),
        ("8 nilpotent implies circle-avoiding", nilpotent_circle_avoiding(&corpus)),
        ("9 table/check-table round trip", round_trip(&corpus)),
    ];

    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
