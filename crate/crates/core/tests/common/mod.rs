//! Shared generators and brute-force oracles for the integration tests.
//! Everything here is deliberately naive: these are the definitions the
//! fast implementations are checked against.

use rand::Rng;
use sdcode::gf2::{BitMatrix, BitVector};
use sdcode::neighbor::neighbor;
use sdcode::search::sample_x;
use sdcode::selfdual::SelfDualCode;
use std::collections::BTreeSet;

/// The direct sum of n/2 copies of the [2,1] repetition code; the
/// starting point for random walks through the self-dual codes of
/// length n.
pub fn block_code(n: usize) -> SelfDualCode {
    assert!(n >= 2 && n % 2 == 0);
    let rows = (0..n / 2)
        .map(|i| {
            let mut r = BitVector::zeros(n);
            r.set(2 * i, true);
            r.set(2 * i + 1, true);
            r
        })
        .collect();
    SelfDualCode::from_generator(&BitMatrix::new(rows).unwrap()).unwrap()
}

/// A random self-dual code of length n, produced by `steps` neighbor
/// moves from the block code. Every self-dual code admits such walks,
/// and each move keeps self-duality by construction.
pub fn random_self_dual<R: Rng>(rng: &mut R, n: usize, steps: usize) -> SelfDualCode {
    let mut code = block_code(n);
    for _ in 0..steps {
        let free = code.free_columns();
        let x = sample_x(rng, &code, &free).unwrap();
        code = neighbor(&code, &x).unwrap();
    }
    code
}

/// Weight distribution by definition: materialize all 2^k codewords one
/// message at a time.
pub fn naive_distribution(code: &SelfDualCode) -> Vec<u64> {
    let k = code.dim();
    assert!(k <= 20, "oracle is exponential; keep k small");
    let rows = code.generator().rows();
    let mut counts = vec![0u64; code.length() + 1];
    for msg in 0u64..(1 << k) {
        let mut word = BitVector::zeros(code.length());
        for (i, row) in rows.iter().enumerate() {
            if msg >> i & 1 == 1 {
                word.xor_assign(row);
            }
        }
        counts[word.weight()] += 1;
    }
    counts
}

/// Every codeword of a small code, as bit strings.
pub fn codeword_set(code: &SelfDualCode) -> BTreeSet<String> {
    let k = code.dim();
    assert!(k <= 16);
    let rows = code.generator().rows();
    let mut all = BTreeSet::new();
    for msg in 0u64..(1 << k) {
        let mut word = BitVector::zeros(code.length());
        for (i, row) in rows.iter().enumerate() {
            if msg >> i & 1 == 1 {
                word.xor_assign(row);
            }
        }
        all.insert(word.to_bitstring());
    }
    all
}

/// dim(C1 ∩ C2) from the materialized codeword sets: count the shared
/// words, which must be a power of two.
pub fn intersection_dim_bruteforce(s1: &BTreeSet<String>, s2: &BTreeSet<String>) -> usize {
    let shared = s1.intersection(s2).count();
    assert!(shared.is_power_of_two());
    shared.trailing_zeros() as usize
}
