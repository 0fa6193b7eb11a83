//! Seeded randomized search for extremal neighbors.
//!
//! Candidates x are drawn with support restricted to a coordinate
//! window (by default the free columns of the current generator, which
//! hit every coset of the code exactly once), constructed into
//! neighbors, and kept when the exact enumeration reports an extremal
//! code matching the requested (γ, β) targets. Everything is driven by
//! one ChaCha8 stream, so a (origin, config) pair fully determines the
//! output; the RNG algorithm is fixed and documented, not tied to
//! platform or library defaults.

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::neighbor::neighbor;
use crate::selfdual::SelfDualCode;
use crate::wenum::{
    classify_enumerator, weight_distribution, EnumOptions, EnumOutcome, EnumeratorForm,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::ops::RangeInclusive;

/// Resampling cap for [`sample_x`]; rejection is a membership test
/// against a 2^-34-dense subspace, so hitting this means the free
/// window is degenerate, not unlucky.
const SAMPLE_RETRY_CAP: usize = 1000;

/// Which enumerator parameters count as a hit.
#[derive(Clone, Debug)]
pub enum SearchTarget {
    /// Any second-form code whose γ is listed.
    GammaIn(Vec<i64>),
    /// Exact (γ, β) pairs.
    Pairs(Vec<(i64, i64)>),
}

impl SearchTarget {
    fn matches(&self, gamma: Option<i64>, beta: i64) -> bool {
        match self {
            SearchTarget::GammaIn(gs) => gamma.is_some_and(|g| gs.contains(&g)),
            SearchTarget::Pairs(ps) => {
                gamma.is_some_and(|g| ps.contains(&(g, beta)))
            }
        }
    }
}

/// Search parameters. `free_coordinates` is a 1-based inclusive range;
/// `None` samples on the free (non-pivot) columns of whichever code the
/// search is currently standing on, so candidates cover its cosets
/// uniformly.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub seed: u64,
    /// Candidate x samples drawn at each chain position.
    pub max_candidates: usize,
    /// Number of times the search advances to a found neighbor and
    /// continues from there; 0 searches around the origin only.
    pub chain_depth: usize,
    /// Hits must match; `None` keeps every extremal neighbor found.
    pub target: Option<SearchTarget>,
    pub free_coordinates: Option<RangeInclusive<usize>>,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            max_candidates: 10,
            chain_depth: 0,
            target: None,
            free_coordinates: None,
        }
    }
}

/// An extremal neighbor found by the search: the x vectors leading to it
/// from the origin (earlier entries are the chain advances), its
/// enumerator parameters, and its canonical identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchHit {
    /// 68-bit x vectors, applied to the origin in order.
    pub chain: Vec<String>,
    pub form: EnumeratorForm,
    pub gamma: Option<i64>,
    pub beta: i64,
    pub d_min: usize,
    pub fingerprint: String,
}

/// Draws a uniformly random even-weight nonzero vector supported on the
/// 0-based `free` coordinates, resampled until it lies outside `code`.
/// Even weight comes from letting the last free coordinate absorb the
/// parity of the others, which maps the uniform (|free|-1)-bit space
/// bijectively onto the even-weight vectors.
pub fn sample_x<R: Rng>(rng: &mut R, code: &SelfDualCode, free: &[usize]) -> Result<BitVector> {
    let n = code.length();
    if free.len() < 2 {
        return Err(Error::InvalidOptions(
            "need at least 2 free coordinates to form an even-weight x".into(),
        ));
    }
    if free.iter().any(|&c| c >= n) {
        return Err(Error::InvalidOptions(format!(
            "free coordinates must lie in 0..{n}"
        )));
    }
    for _ in 0..SAMPLE_RETRY_CAP {
        let mut x = BitVector::zeros(n);
        let mut parity = false;
        for &coord in &free[..free.len() - 1] {
            if rng.random::<bool>() {
                x.set(coord, true);
                parity = !parity;
            }
        }
        if parity {
            x.set(free[free.len() - 1], true);
        }
        if !x.is_zero() && !code.contains(&x)? {
            return Ok(x);
        }
    }
    Err(Error::SampleRetriesExhausted {
        attempts: SAMPLE_RETRY_CAP,
    })
}

/// Runs the seeded neighbor search from `origin`. At each chain position
/// up to `max_candidates` x vectors are drawn and evaluated with the
/// early-exit enumeration; extremal results matching the target are
/// recorded (deduplicated by generator fingerprint, which is exact code
/// equality, not equivalence). The search then advances to the first
/// extremal candidate of the position — or the first valid neighbor if
/// none was extremal — and repeats. Candidate evaluation order is fixed,
/// so a given (origin, config) always returns the same hits.
pub fn run_search(origin: &SelfDualCode, cfg: &SearchConfig) -> Result<Vec<SearchHit>> {
    let n = origin.length();
    if n != 68 {
        // hits are defined by the [68,34,12] enumerator forms
        return Err(Error::ClassifyLength { len: n });
    }
    let explicit_free: Option<Vec<usize>> = match &cfg.free_coordinates {
        Some(range) => {
            if *range.start() < 1 || *range.end() > n || range.is_empty() {
                return Err(Error::InvalidOptions(format!(
                    "free coordinates {range:?} not within 1..={n}"
                )));
            }
            Some(range.clone().map(|c| c - 1).collect())
        }
        None => None,
    };

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let eval_opts = EnumOptions {
        halving: true,
        early_exit: Some(12),
        ..EnumOptions::default()
    };

    let mut hits = Vec::new();
    let mut seen = BTreeSet::new();
    let mut current = origin.clone();
    let mut applied: Vec<BitVector> = Vec::new();

    for position in 0..=cfg.chain_depth {
        let mut extremal_step: Option<(BitVector, SelfDualCode)> = None;
        let mut valid_step: Option<(BitVector, SelfDualCode)> = None;
        let free: Vec<usize> = match &explicit_free {
            Some(f) => f.clone(),
            None => current.free_columns(),
        };

        for _ in 0..cfg.max_candidates {
            let x = sample_x(&mut rng, &current, &free)?;
            let Ok(code) = neighbor(&current, &x) else {
                continue; // skipped, not fatal: the sample was degenerate
            };
            if valid_step.is_none() {
                valid_step = Some((x.clone(), code.clone()));
            }
            let EnumOutcome::Complete(dist) = weight_distribution(&code, &eval_opts)? else {
                continue; // a codeword below weight 12 exists
            };
            let params = classify_enumerator(&dist)?;
            if !matches!(params.form, EnumeratorForm::W68_1 | EnumeratorForm::W68_2) {
                continue;
            }
            if extremal_step.is_none() {
                extremal_step = Some((x.clone(), code.clone()));
            }
            let beta = params.beta.expect("recognized forms carry beta");
            if cfg
                .target
                .as_ref()
                .is_none_or(|t| t.matches(params.gamma, beta))
                && seen.insert(code.fingerprint())
            {
                let mut chain: Vec<String> =
                    applied.iter().map(BitVector::to_bitstring).collect();
                chain.push(x.to_bitstring());
                hits.push(SearchHit {
                    chain,
                    form: params.form,
                    gamma: params.gamma,
                    beta,
                    d_min: dist.min_distance()?,
                    fingerprint: code.fingerprint(),
                });
            }
        }

        if position < cfg.chain_depth {
            let Some((x, code)) = extremal_step.or(valid_step) else {
                break; // nothing to advance to
            };
            applied.push(x);
            current = code;
        }
    }
    Ok(hits)
}
