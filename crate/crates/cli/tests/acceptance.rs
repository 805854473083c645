//! Acceptance gate: one test per primary requirement, exercising the
//! compiled binary where the requirement is about a command and the
//! library where it is about an algorithm.
//!
//! The stretch-tier table reproduction is `#[ignore]`d because it chops
//! modules above dimension 16,000 on one core; run it explicitly with
//! `cargo test -p unirep-cli --test acceptance -- --ignored`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::collections::{BTreeMap, HashMap};
use std::path::PathBuf;
use std::process::Command;
use std::sync::LazyLock;
use std::time::{Duration, Instant};
use unirep::jordan::{is_unipotent, jordan_type, unipotent_order, JordanType};
use unirep::meataxe::{chop, is_irreducible, Verdict};
use unirep::symplectic::{collect_labels, hesselink_label, is_isometry, SearchParams};
use unirep::weights::{c_l_presteinberg_predictor, steinberg_block_predictor};
use unirep::{
    presets, DimensionTable, FieldMatrix, GfError, GroupWord, MatRep, MeataxeConfig,
    ModuleBuilder, Weight,
};

fn out_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("unirep-acceptance-{name}.json"))
}

/// Runs the binary, asserts success, and returns (stdout, parsed JSON).
fn run_json(args: &[&str], name: &str) -> (String, Value) {
    let path = out_path(name);
    let output = Command::new(env!("CARGO_BIN_EXE_unirep"))
        .args(args)
        .arg("--out")
        .arg(&path)
        .output()
        .expect("binary runs");
    assert!(
        output.status.success(),
        "unirep {args:?} failed:\n{}",
        String::from_utf8_lossy(&output.stderr)
    );
    let json: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("JSON report written"))
            .expect("JSON report parses");
    (String::from_utf8_lossy(&output.stdout).into_owned(), json)
}

/// One shared required-tier table run feeds criteria 2 and 4.
static TABLE3_REQUIRED: LazyLock<(Duration, String, Value)> = LazyLock::new(|| {
    let started = Instant::now();
    let (stdout, json) = run_json(
        &["table3", "--budget", "8000", "--seed", "0"],
        "table3-8000",
    );
    (started.elapsed(), stdout, json)
});

const REQUIRED_ROWS: [(&str, &str); 10] = [
    ("10000", "(2^2, 6)"),
    ("01000", "(1^2, 2^2, 6^5, 8)"),
    ("00100", "(2^2, 6^8, 8^6)"),
    ("00010", "(2^8, 6^6, 8^14)"),
    ("00001", "(2^4, 6^4)"),
    ("11000", "(2^16, 6^16, 8^24)"),
    ("10100", "(2^8, 4, 6^23, 8^64)"),
    ("10010", "(2^32, 6^32, 8^144)"),
    ("01100", "(2^36, 6^34, 8^304)"),
    ("01010", "(2^6, 4^6, 6^16, 8^374)"),
];

fn row<'a>(json: &'a Value, weight: &str) -> &'a Value {
    json["rows"]
        .as_array()
        .unwrap()
        .iter()
        .find(|r| r["weight"] == weight)
        .unwrap_or_else(|| panic!("row {weight} missing"))
}

/// The two distinguished words are unipotent isometries of order 8 with
/// Jordan type (2^2, 6) and the two expected class labels.
#[test]
fn criterion_1_distinguished_words_classify_exactly() {
    let started = Instant::now();
    let preset = presets::by_name("sp10").unwrap();
    for (name, expected_label) in [("u", "(2_1^2, 6_3)"), ("u'", "(2_0^2, 6_3)")] {
        let word = preset.word(name).unwrap();
        let m = preset.rep().evaluate_word(word).unwrap();
        assert!(is_isometry(&m, preset.form()).unwrap(), "{name} isometry");
        assert!(is_unipotent(&m).unwrap(), "{name} unipotent");
        assert_eq!(unipotent_order(&m).unwrap(), 8, "{name} order");
        assert_eq!(jordan_type(&m).unwrap().to_string(), "(2^2, 6)");
        assert_eq!(
            hesselink_label(&m, preset.form()).unwrap().to_string(),
            expected_label
        );
    }
    assert!(started.elapsed() < Duration::from_secs(1), "runtime < 1 s");
}

/// Required tier: the ten rows with plans inside budget 8000 come out
/// built, and each equals the published Jordan type exactly.
#[test]
fn criterion_2_table3_required_tier_exact() {
    let (elapsed, _, json) = &*TABLE3_REQUIRED;
    for (weight, expected) in REQUIRED_ROWS {
        let r = row(json, weight);
        assert_eq!(r["source"], "built", "row {weight} source");
        assert_eq!(r["jordan_type"], expected, "row {weight}");
    }
    assert_eq!(json["built"], 10);
    // Allowed 30 minutes; observed under a minute, so assert with wide
    // headroom to catch order-of-magnitude regressions.
    assert!(*elapsed < Duration::from_secs(30 * 60), "runtime <= 30 min");
}

/// Stretch tier at budget 32000: three more rows built exactly, two
/// echoed as reference, and the top row predicted with uniform blocks.
#[test]
#[ignore = "chops modules above dimension 16,000; run with -- --ignored"]
fn criterion_3_table3_stretch_tier_exact() {
    let (_, json) = run_json(
        &["table3", "--budget", "32000", "--seed", "0"],
        "table3-32000",
    );
    for (weight, expected) in [
        ("00110", "(2^32, 6^32, 8^1072)"),
        ("11100", "(2^128, 6^128, 8^2112)"),
        ("11010", "(2^24, 4^36, 6^44, 8^2744)"),
    ] {
        let r = row(&json, weight);
        assert_eq!(r["source"], "built", "row {weight} source");
        assert_eq!(r["jordan_type"], expected, "row {weight}");
    }
    for weight in ["10110", "01110"] {
        let r = row(&json, weight);
        assert_eq!(r["source"], "reference", "row {weight} source");
        assert!(r["jordan_type"].is_null(), "row {weight} not computed");
    }
    let top = row(&json, "11110");
    assert_eq!(top["source"], "predicted");
    assert_eq!(top["jordan_type"], "(8^131072)");
    assert_eq!(json["built"], 13);
}

/// Headline assertion: the run hard-asserts u-type = u'-type on every
/// built and predicted row, and exits 0 only when that holds.
#[test]
fn criterion_4_words_agree_on_every_computed_row() {
    let (_, stdout, json) = &*TABLE3_REQUIRED;
    assert!(
        stdout.contains("hard assertion held"),
        "stdout reports the assertion:\n{stdout}"
    );
    assert_eq!(json["predicted"], 1);
    for r in json["rows"].as_array().unwrap() {
        let source = r["source"].as_str().unwrap();
        if source == "built" || source == "predicted" {
            assert!(
                r["jordan_type"].is_string(),
                "computed row {} has a type",
                r["weight"]
            );
        }
    }
}

/// Separation experiment: the fundamental irreducibles separate every
/// label pair on sp4 and sp6, and leave exactly the counterexample pair
/// unseparated on sp10.
#[test]
fn criterion_5_separation_experiment() {
    let started = Instant::now();
    for preset in ["sp4", "sp6"] {
        let (_, json) = run_json(
            &["separate", "--preset", preset, "--seed", "0"],
            &format!("separate-{preset}"),
        );
        assert_eq!(
            json["unseparated_pairs"].as_array().unwrap().len(),
            0,
            "{preset} separates all labels"
        );
    }
    let (_, json) = run_json(&["separate", "--preset", "sp10", "--seed", "0"], "separate-sp10");
    let pairs = json["unseparated_pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 1, "exactly one unseparated pair");
    assert_eq!(pairs[0][0], "(2_0^2, 6_3)");
    assert_eq!(pairs[0][1], "(2_1^2, 6_3)");
    // Allowed 2 hours; observed seconds.
    assert!(started.elapsed() < Duration::from_secs(2 * 60 * 60));
}

/// Walks the whole group by breadth-first search, remembering one word
/// per element so the element can be evaluated in any module.
fn bfs_words(rep: &MatRep) -> HashMap<u64, (FieldMatrix, String)> {
    let n = rep.dim();
    assert!(n * n <= 64);
    let pack = |m: &FieldMatrix| -> u64 {
        let mut k = 0u64;
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) == 1 {
                    k |= 1 << (i * n + j);
                }
            }
        }
        k
    };
    let id = FieldMatrix::identity(rep.prime(), n);
    let mut seen: HashMap<u64, (FieldMatrix, String)> = HashMap::new();
    let mut frontier = vec![(id.clone(), String::new())];
    seen.insert(pack(&id), (id, String::new()));
    while let Some((m, word)) = frontier.pop() {
        for (name, g) in rep.names().iter().zip(rep.gens()) {
            let next = m.mat_mul(g).unwrap();
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(pack(&next)) {
                let mut w = word.clone();
                w.push(*name);
                e.insert((next.clone(), w.clone()));
                frontier.push((next, w));
            }
        }
    }
    seen
}

/// Steinberg-module block shape, exhaustively: every unipotent element
/// of the rank-2 preset group acts on the 16-dimensional module of
/// highest weight (1,1) with all blocks equal to its order.
#[test]
fn criterion_6_steinberg_uniform_blocks_exhaustive_sp4() {
    let started = Instant::now();
    let preset = presets::by_name("sp4").unwrap();
    let builder = ModuleBuilder::new(
        preset.rep().clone(),
        DimensionTable::for_rank(2),
        6,
        8000,
    );
    let steinberg = builder.module(&"11".parse::<Weight>().unwrap()).unwrap();
    assert_eq!(steinberg.dim(), 16, "dimension determined by chop");

    let elements = bfs_words(preset.rep());
    assert_eq!(elements.len(), 720);
    let mut unipotent_seen = 0;
    for (m, word) in elements.values() {
        if !is_unipotent(m).unwrap() {
            continue;
        }
        unipotent_seen += 1;
        let order = unipotent_order(m).unwrap();
        let image = steinberg
            .evaluate_word(&GroupWord::parse(word).unwrap())
            .unwrap();
        assert_eq!(
            jordan_type(&image).unwrap(),
            steinberg_block_predictor(order, 16).unwrap(),
            "element '{word}' of order {order}"
        );
    }
    assert_eq!(unipotent_seen, 256);
    assert!(started.elapsed() < Duration::from_secs(60), "runtime < 1 min");
}

/// Uniform-block rule below the Steinberg weight: on the rank-3 preset,
/// every unipotent witness of order > 2 acts on the 64-dimensional
/// module of highest weight (1,1,0) with all blocks of its order.
#[test]
fn criterion_7_presteinberg_uniform_blocks_sp6() {
    let started = Instant::now();
    let preset = presets::by_name("sp6").unwrap();
    let params = SearchParams {
        saturation_window: 20_000,
        seed: 0,
        ..SearchParams::default()
    };
    let collection = collect_labels(preset.rep(), preset.form(), &params).unwrap();
    let builder = ModuleBuilder::new(
        preset.rep().clone(),
        DimensionTable::for_rank(3),
        7,
        8000,
    );
    let lam: Weight = "110".parse().unwrap();
    let dim = builder.table().dim(&lam).unwrap();
    assert_eq!(dim, 64);
    let mut checked = 0;
    for entry in &collection.entries {
        let word = GroupWord::parse(&entry.word).unwrap();
        let order = unipotent_order(&preset.rep().evaluate_word(&word).unwrap()).unwrap();
        if order <= 2 {
            continue;
        }
        checked += 1;
        assert_eq!(
            builder.jordan_on_weight(&lam, &word).unwrap(),
            c_l_presteinberg_predictor(order, dim).unwrap(),
            "witness {} of order {order}",
            entry.word
        );
    }
    assert!(checked >= 3, "several witnesses of order 4 and 8 exist");
    assert!(started.elapsed() < Duration::from_secs(10 * 60));
}

fn random_matrix(p: u8, n: usize, rng: &mut ChaCha8Rng) -> FieldMatrix {
    let entries: Vec<u8> = (0..n * n).map(|_| rng.gen_range(0..p)).collect();
    FieldMatrix::from_entries(p, n, n, &entries)
}

/// (a) 500 construct-and-conjugate instances over GF(2) and GF(3).
fn oracle_suite_jordan_conjugation() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0AC1E);
    for trial in 0..500 {
        let p = if trial % 2 == 0 { 2 } else { 3 };
        let mut blocks: BTreeMap<usize, usize> = BTreeMap::new();
        let mut total = 0;
        loop {
            let size = rng.gen_range(1..=8);
            let mult = rng.gen_range(1..=3);
            if total + size * mult > 40 {
                break;
            }
            *blocks.entry(size).or_insert(0) += mult;
            total += size * mult;
            if rng.gen_bool(0.3) {
                break;
            }
        }
        if blocks.is_empty() {
            blocks.insert(1, 1);
        }
        let jt = JordanType::new(blocks.into_iter().collect()).unwrap();
        let j = jt.block_matrix(p);
        let n = j.nrows();
        let g = loop {
            let cand = random_matrix(p, n, &mut rng);
            if cand.rank() == n {
                break cand;
            }
        };
        let conj = g
            .mat_inverse()
            .unwrap()
            .mat_mul(&j)
            .unwrap()
            .mat_mul(&g)
            .unwrap();
        assert_eq!(jordan_type(&conj).unwrap(), jt, "trial {trial}");
    }
}

/// (b) chop of an assembled direct sum returns exactly the summands.
fn oracle_suite_direct_sum_reconstruction() {
    let preset = presets::by_name("sp10").unwrap();
    let nat = preset.rep().clone();
    let builder = ModuleBuilder::new(nat.clone(), DimensionTable::for_rank(5), 99, 8000);
    let l2 = builder.module(&"01000".parse::<Weight>().unwrap()).unwrap();
    let triv = MatRep::trivial(2, 1, nat.names());

    let pad = |a: &MatRep, b: &MatRep| -> MatRep {
        let n = a.dim() + b.dim();
        let gens = a
            .gens()
            .iter()
            .zip(b.gens())
            .map(|(ga, gb)| {
                let mut m = FieldMatrix::zeros(2, n, n);
                for i in 0..a.dim() {
                    for j in 0..a.dim() {
                        m.set(i, j, ga.get(i, j));
                    }
                }
                for i in 0..b.dim() {
                    for j in 0..b.dim() {
                        m.set(a.dim() + i, a.dim() + j, gb.get(i, j));
                    }
                }
                m
            })
            .collect();
        MatRep::new(a.names().to_vec(), gens).unwrap()
    };
    let sum = pad(&pad(&nat, &l2), &pad(&triv, &nat));
    let cfg = MeataxeConfig::default();
    let factors = chop(&sum, &mut ChaCha8Rng::seed_from_u64(42), &cfg).unwrap();
    assert_eq!(factors.dimension_profile(), vec![(1, 1), (10, 2), (44, 1)]);
    assert_eq!(factors.total_dimension(), 65);
    for (factor, _) in factors.factors() {
        assert!(matches!(
            is_irreducible(factor, &mut ChaCha8Rng::seed_from_u64(43), &cfg).unwrap(),
            Verdict::Irreducible(_)
        ));
    }
}

/// (c) exhaustive conjugacy on the rank-2 preset group versus labels.
fn oracle_suite_sp4_conjugacy_vs_labels() {
    let preset = presets::by_name("sp4").unwrap();
    let elements = bfs_words(preset.rep());
    assert_eq!(elements.len(), 720);

    // Conjugacy orbits under the generators, with the label constant on
    // each orbit and the frozen census over all unipotent elements.
    let gens = preset.rep().gens();
    let invs: Vec<FieldMatrix> = gens.iter().map(|g| g.mat_inverse().unwrap()).collect();
    let n = preset.rep().dim();
    let pack = |m: &FieldMatrix| -> u64 {
        let mut k = 0u64;
        for i in 0..n {
            for j in 0..n {
                if m.get(i, j) == 1 {
                    k |= 1 << (i * n + j);
                }
            }
        }
        k
    };
    let mut class_of: HashMap<u64, usize> = HashMap::new();
    let mut n_classes = 0usize;
    for (key, (m, _)) in &elements {
        if class_of.contains_key(key) {
            continue;
        }
        let idx = n_classes;
        n_classes += 1;
        class_of.insert(*key, idx);
        let mut orbit = vec![m.clone()];
        while let Some(x) = orbit.pop() {
            for (g, gi) in gens.iter().zip(&invs) {
                let y = gi.mat_mul(&x).unwrap().mat_mul(g).unwrap();
                if let std::collections::hash_map::Entry::Vacant(e) = class_of.entry(pack(&y)) {
                    e.insert(idx);
                    orbit.push(y);
                }
            }
        }
    }
    let mut class_label: HashMap<usize, Option<String>> = HashMap::new();
    let mut census: BTreeMap<String, usize> = BTreeMap::new();
    for (key, (m, _)) in &elements {
        let label = if is_unipotent(m).unwrap() {
            let l = hesselink_label(m, preset.form()).unwrap().to_string();
            *census.entry(l.clone()).or_insert(0) += 1;
            Some(l)
        } else {
            None
        };
        match class_label.get(&class_of[key]) {
            None => {
                class_label.insert(class_of[key], label);
            }
            Some(prev) => assert_eq!(prev, &label, "label constant on each class"),
        }
    }
    let expected: BTreeMap<String, usize> = [
        ("(1_0^4)", 1),
        ("(1_0^2, 2_1)", 15),
        ("(2_0^2)", 15),
        ("(2_1^2)", 45),
        ("(4_2)", 180),
    ]
    .into_iter()
    .map(|(s, c)| (s.to_string(), c))
    .collect();
    assert_eq!(census, expected);
}

/// (d) packed GF(2) kernels agree bit-exactly with the scalar reference.
fn oracle_suite_packed_vs_scalar() {
    use unirep::gf::reference;
    let mut rng = ChaCha8Rng::seed_from_u64(0xD00D);
    for round in 0..5 {
        let n = 200;
        let a = random_matrix(2, n, &mut rng);
        let b = random_matrix(2, n, &mut rng);
        assert_eq!(
            a.mat_mul(&b).unwrap(),
            reference::mat_mul(&a, &b).unwrap(),
            "round {round}"
        );
        assert_eq!(a.rank(), reference::rank(&a));
        assert_eq!(a.nullspace_basis(), reference::nullspace_basis(&a));
        assert_eq!(a.char_poly().unwrap(), reference::char_poly(&a).unwrap());
        match (a.mat_inverse(), reference::mat_inverse(&a)) {
            (Ok(x), Ok(y)) => assert_eq!(x, y),
            (Err(GfError::Singular), Err(GfError::Singular)) => {}
            other => panic!("inverse paths disagree: {other:?}"),
        }
    }
}

/// Oracle equivalence: four independent-cross-check suites, all exact.
#[test]
fn criterion_8_oracle_equivalence_suites() {
    let started = Instant::now();
    oracle_suite_jordan_conjugation();
    oracle_suite_direct_sum_reconstruction();
    oracle_suite_sp4_conjugacy_vs_labels();
    oracle_suite_packed_vs_scalar();
    assert!(started.elapsed() < Duration::from_secs(5 * 60), "total < 5 min");
}
