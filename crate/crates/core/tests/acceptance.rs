//! End-to-end acceptance checks. Each test prints one PASS line (visible
//! with --nocapture); the test verdicts themselves are the pass/fail
//! report. The expensive 2^34 sweeps are cached and shared between
//! criteria.

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sdcode::dataset;
use sdcode::gf2::BitVector;
use sdcode::neighbor::{neighbor, neighbor_distance};
use sdcode::search::{run_search, sample_x, SearchConfig, SearchTarget};
use sdcode::selfdual::SelfDualCode;
use sdcode::wenum::{
    classify_enumerator, full_weight_distribution, weight_distribution, EnumOptions,
    EnumeratorForm, Partition, WeightDistribution,
};
use sdcode::Error;
use std::sync::OnceLock;

mod common;

/// Full distributions of the five bundled chain codes, each computed
/// once per test-binary run.
fn chain_dist(i: usize) -> &'static WeightDistribution {
    static DISTS: [OnceLock<WeightDistribution>; 5] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    DISTS[i].get_or_init(|| full_weight_distribution(dataset::chain_code(i)).expect("chain sweep"))
}

fn gamma_beta(dist: &WeightDistribution) -> (i64, i64) {
    let params = classify_enumerator(dist).expect("length-68 distribution");
    assert!(
        matches!(params.form, EnumeratorForm::W68_1 | EnumeratorForm::W68_2),
        "expected an extremal two-parameter form, got {}",
        params.form
    );
    (params.gamma.unwrap_or(16), params.beta.unwrap())
}

#[test]
fn criterion_1_chain_reproduction() {
    let expected = [(5, 213), (6, 210), (7, 212), (8, 221), (9, 221)];
    for (i, &(gamma, beta)) in expected.iter().enumerate() {
        let dist = chain_dist(i);
        assert_eq!(dist.min_distance().unwrap(), 12, "chain code {i}");
        assert_eq!(gamma_beta(dist), (gamma, beta), "chain code {i}");
    }
    println!("criterion 1: PASS — chain codes 0..4 give (5,213) (6,210) (7,212) (8,221) (9,221), d_min 12 throughout");
}

#[test]
fn criterion_2_base_code_parameters() {
    let dist = chain_dist(0);
    assert_eq!(dist.count(12), 1294);
    assert_eq!(dist.count(14), 11976);
    println!("criterion 2: PASS — base code has A_12 = 1294, A_14 = 11976");
}

#[test]
fn criterion_3_table_spot_reproduction() {
    let spots = [
        ("C_1", (5, 195)),
        ("C_8", (6, 175)),
        ("C_34", (7, 174)),
        ("C_82", (8, 213)),
        ("C_101", (9, 186)),
        ("C_139", (9, 230)),
    ];
    let mut tables_seen = std::collections::BTreeSet::new();
    for (label, expected) in spots {
        let entry = dataset::entry_by_label(label).expect(label);
        assert_eq!((entry.gamma, entry.beta), expected, "{label} as recorded");
        tables_seen.insert(entry.table);
        let code = entry.build_code().expect(label);
        let dist = weight_distribution(
            &code,
            &EnumOptions {
                halving: true,
                ..EnumOptions::default()
            },
        )
        .expect(label)
        .into_complete()
        .expect(label);
        assert_eq!(dist.min_distance().unwrap(), 12, "{label}");
        assert_eq!(gamma_beta(&dist), expected, "{label} recomputed");
    }
    assert_eq!(tables_seen.into_iter().collect::<Vec<_>>(), [2, 3, 4, 5, 6]);
    println!("criterion 3: PASS — C_1, C_8, C_34, C_82, C_101, C_139 rebuilt across all five tables");
}

#[test]
fn criterion_4_distance_is_a_metric_verified_against_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    let mut total = 0usize;
    let mut max_seen = 0usize;
    for n in (4..=16).step_by(2) {
        let codes: Vec<SelfDualCode> = (0..30)
            .map(|t| common::random_self_dual(&mut rng, n, t % 4))
            .collect();
        let sets: Vec<_> = codes.iter().map(common::codeword_set).collect();
        total += codes.len();

        for (i, a) in codes.iter().enumerate() {
            assert_eq!(neighbor_distance(a, a).unwrap(), 0, "d(C, C) at n = {n}");
            for (j, b) in codes.iter().enumerate().skip(i + 1) {
                let d = neighbor_distance(a, b).unwrap();
                assert_eq!(d, neighbor_distance(b, a).unwrap(), "symmetry at n = {n}");
                let oracle = n / 2 - common::intersection_dim_bruteforce(&sets[i], &sets[j]);
                assert_eq!(d, oracle, "oracle mismatch at n = {n}");
                if sets[i] == sets[j] {
                    assert_eq!(d, 0, "identity at n = {n}");
                } else {
                    assert!(
                        (1..=n / 2 - 1).contains(&d),
                        "strict bound violated at n = {n}: d = {d}"
                    );
                }
                max_seen = max_seen.max(d);
            }
        }
        let idx: Vec<usize> = (0..codes.len()).collect();
        for _ in 0..200 {
            let pick = |r: &mut ChaCha8Rng| *idx.choose(r).unwrap();
            let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
            let via = neighbor_distance(&codes[a], &codes[b]).unwrap()
                + neighbor_distance(&codes[b], &codes[c]).unwrap();
            assert!(
                neighbor_distance(&codes[a], &codes[c]).unwrap() <= via,
                "triangle inequality at n = {n}"
            );
        }
    }
    assert!(total >= 200);
    println!(
        "criterion 4: PASS — {total} random codes of lengths 4..=16: identity, symmetry, \
         triangle and the strict n/2-1 bound all hold, every pairwise distance matches the \
         brute-force intersection (largest seen: {max_seen})"
    );
}

#[test]
fn criterion_6_sampled_vectors_give_validated_neighbors_of_the_base() {
    let n0 = dataset::base_code();
    let free = n0.free_columns();
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let mut distinct = std::collections::BTreeSet::new();
    for _ in 0..1000 {
        let x = sample_x(&mut rng, n0, &free).unwrap();
        assert_eq!(x.weight() % 2, 0, "sampled x must have even weight");
        assert!(!n0.contains(&x).unwrap(), "sampled x must lie outside");
        let d = neighbor(n0, &x).unwrap();
        // full revalidation from the raw generator: length, rank,
        // pairwise orthogonality, evenness
        let revalidated = SelfDualCode::from_generator(d.generator()).unwrap();
        assert_eq!(revalidated, d);
        assert_eq!((d.length(), d.dim()), (68, 34));
        assert!(d.contains(&x).unwrap(), "a neighbor contains its x");
        assert_eq!(neighbor_distance(n0, &d).unwrap(), 1);
        distinct.insert(d.fingerprint());
    }

    let mut odd = BitVector::zeros(68);
    odd.set(3, true);
    assert!(matches!(neighbor(n0, &odd), Err(Error::OddWeightX { .. })));
    let in_code = n0.generator().rows()[5].clone();
    assert!(matches!(neighbor(n0, &in_code), Err(Error::TrivialNeighbor)));
    assert!(matches!(
        neighbor(n0, &BitVector::zeros(68)),
        Err(Error::TrivialNeighbor)
    ));
    assert!(matches!(
        neighbor(n0, &BitVector::ones(66)),
        Err(Error::DimensionMismatch { .. })
    ));
    println!(
        "criterion 6: PASS — 1000 sampled vectors ({} distinct codes) all built validated \
         self-dual [68,34] neighbors at distance 1; odd-weight, in-code, zero and wrong-length \
         vectors rejected",
        distinct.len()
    );
}

#[test]
fn criterion_7_chain_distances_bounded() {
    let mut seen = Vec::new();
    for i in 1..=4usize {
        let d = neighbor_distance(dataset::chain_code(0), dataset::chain_code(i)).unwrap();
        assert!(d <= i, "d_N(N0, N{i}) = {d} exceeds {i}");
        assert!(d >= 1, "chain code {i} equals the base");
        seen.push(d);
    }
    println!("criterion 7: PASS — d_N(base, chain i) = {seen:?}, within 1..=i");
}

/// Criterion 5 has two halves: the Gray-code sweep against the literal
/// per-message oracle on small random codes, and partition sums against
/// the full sweep on the length-68 chain codes.
#[test]
fn criterion_5_enumeration_matches_oracle_and_partition_sums() {
    let mut rng = ChaCha8Rng::seed_from_u64(505);
    let mut checked = 0usize;
    for round in 0..60 {
        let n = 4 + 2 * (round % 15); // lengths 4..=32, dimensions 2..=16
        let code = common::random_self_dual(&mut rng, n, round % 3);
        let opts = match round % 3 {
            0 => EnumOptions::default(),
            1 => EnumOptions {
                halving: true,
                ..EnumOptions::default()
            },
            _ => EnumOptions {
                threads: 2,
                ..EnumOptions::default()
            },
        };
        let dist = weight_distribution(&code, &opts)
            .unwrap()
            .into_complete()
            .unwrap();
        assert_eq!(
            dist.counts(),
            common::naive_distribution(&code),
            "n = {n}, round {round}"
        );
        checked += 1;
    }
    assert!(checked >= 50);

    for (code_idx, t) in [(0usize, 4u32), (2, 8)] {
        let full = chain_dist(code_idx);
        let code = dataset::chain_code(code_idx);
        let mut sum = vec![0u64; 69];
        for p in 0..1u64 << t {
            let part = weight_distribution(
                code,
                &EnumOptions {
                    partition: Some(Partition {
                        prefix_bits: t,
                        prefix_value: p,
                    }),
                    ..EnumOptions::default()
                },
            )
            .unwrap()
            .into_complete()
            .unwrap();
            for (w, c) in part.support() {
                sum[w] += c;
            }
        }
        assert_eq!(&sum[..], full.counts(), "chain code {code_idx}, t = {t}");
    }
    println!(
        "criterion 5: PASS — {checked} random codes up to dimension 16 match the per-message \
         oracle (plain, halved and 2-thread); partition sums (t = 4 on chain 0, t = 8 on \
         chain 2) match the full sweeps"
    );
}

/// Two identically-configured searches must emit byte-identical output.
/// Extremal neighbors are far too rare for a short random walk to find
/// (thousands of sampled candidates from the chain codes produced none),
/// so the hit list is usually empty; what the criterion pins down is the
/// candidate stream and the emission path, byte for byte.
#[test]
fn criterion_8_seeded_search_is_reproducible() {
    let exe = env!("CARGO_BIN_EXE_sdcode");
    let base = concat!(env!("CARGO_MANIFEST_DIR"), "/data/n0.txt");
    let run = || {
        std::process::Command::new(exe)
            .args([
                "search", base, "--seed", "11", "--candidates", "64", "--depth", "2",
            ])
            .output()
            .expect("spawn search")
    };
    let first = run();
    assert!(
        first.status.success(),
        "search failed: {}",
        String::from_utf8_lossy(&first.stderr)
    );
    let second = run();
    assert_eq!(
        first.stdout, second.stdout,
        "same seed must give identical candidate streams"
    );
    assert_eq!(first.stderr, second.stderr);
    let lines = first.stdout.split(|&b| b == b'\n').filter(|l| !l.is_empty());
    for line in lines.clone() {
        let v: serde_json::Value = serde_json::from_slice(line).expect("JSON line");
        assert!(v.get("fingerprint").is_some());
    }

    // Same property at the API level, including a targeted config.
    for target in [
        None,
        Some(SearchTarget::Pairs(vec![(6, 210), (9, 221)])),
    ] {
        let cfg = SearchConfig {
            seed: 2024,
            max_candidates: 32,
            chain_depth: 1,
            target,
            free_coordinates: None,
        };
        let a = run_search(dataset::base_code(), &cfg).expect("search");
        let b = run_search(dataset::base_code(), &cfg).expect("search");
        let fps = |hits: &[sdcode::search::SearchHit]| {
            hits.iter().map(|h| h.fingerprint.clone()).collect::<Vec<_>>()
        };
        assert_eq!(fps(&a), fps(&b), "run_search must be a pure function of its config");
    }
    println!(
        "criterion 8: PASS — two seed-11 depth-2 searches emitted byte-identical output \
         ({} JSON lines); run_search returns identical hit lists on repeat calls",
        lines.count()
    );
}
