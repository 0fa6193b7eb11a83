//! Exact weight distributions by Gray-code enumeration.
//!
//! A [68,34] code has 2^34 codewords; walking the messages in reflected
//! Gray order means each codeword differs from the previous one by a
//! single generator row, so a step is one XOR and one popcount. The
//! message space splits by fixing a prefix of the message bits, which
//! makes the sweep embarrassingly parallel and restartable.

use crate::error::{Error, Result};
use crate::gf2::BitVector;
use crate::selfdual::SelfDualCode;
use std::sync::atomic::{AtomicBool, Ordering};

/// Longest supported code for enumeration: codewords must fit two words.
pub const ENUM_MAX_LEN: usize = 128;

/// Steps taken between abort checks. 2^16 steps is ~50µs of work, short
/// enough that an early exit or a cross-thread stop lands promptly.
const CHUNK_STEPS: u64 = 1 << 16;

/// Exact codeword counts by weight: `counts[w]` is the number of
/// codewords of weight `w`, for `w` in `0..=length`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeightDistribution {
    len: usize,
    counts: Vec<u64>,
}

impl WeightDistribution {
    pub(crate) fn from_counts(len: usize, counts: Vec<u64>) -> Self {
        debug_assert_eq!(counts.len(), len + 1);
        WeightDistribution { len, counts }
    }

    /// Code length n; weights run 0..=n.
    pub fn length(&self) -> usize {
        self.len
    }

    pub fn count(&self, weight: usize) -> u64 {
        self.counts.get(weight).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Total number of codewords, 2^k for a complete enumeration.
    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// The nonzero entries, in increasing weight order.
    pub fn support(&self) -> impl Iterator<Item = (usize, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(w, &c)| (w, c))
    }

    /// Smallest positive weight with a nonzero count.
    pub fn min_distance(&self) -> Result<usize> {
        (1..=self.len)
            .find(|&w| self.counts[w] > 0)
            .ok_or(Error::ZeroCode)
    }
}

/// Restriction of the enumeration to messages whose first `prefix_bits`
/// coefficients equal `prefix_value` (bit i of the value is the
/// coefficient of generator row i). The partial distributions over all
/// 2^t prefix values sum to the full distribution.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Partition {
    pub prefix_bits: u32,
    pub prefix_value: u64,
}

/// Tuning knobs for [`weight_distribution`].
#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Worker threads. Values above 1 split the message space into
    /// 2^ceil(log2(threads)) prefix partitions spread over the workers.
    pub threads: usize,
    /// Enumerate a single message-space slice instead of the whole code.
    /// Meant for callers orchestrating their own parallelism, so it
    /// requires `threads == 1`.
    pub partition: Option<Partition>,
    /// Stop as soon as a codeword of weight `0 < w < threshold` is seen.
    /// Checked between chunks, so the sweep may run up to [`CHUNK_STEPS`]
    /// past the first offender; the outcome is still deterministic, since
    /// a finished sweep is downgraded to `EarlyExit` whenever the final
    /// distribution violates the threshold.
    pub early_exit: Option<usize>,
    /// Enumerate only half the code and mirror the counts. Every
    /// self-dual code contains the all-ones vector; rebasing so that it
    /// is a generator row and freezing that row's coefficient to 0 visits
    /// one codeword of each complement pair {c, c+1}, and c+1 has weight
    /// n - wt(c).
    pub halving: bool,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions {
            threads: 1,
            partition: None,
            early_exit: None,
            halving: false,
        }
    }
}

/// Result of an enumeration: the exact distribution, or the evidence
/// that the code fails the early-exit weight threshold. The reported
/// weight is the smallest offender seen before stopping (with more than
/// one thread, an aborted sweep may report a larger offender than the
/// true minimum; whether it aborts is still deterministic).
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum EnumOutcome {
    Complete(WeightDistribution),
    EarlyExit { weight: usize },
}

impl EnumOutcome {
    pub fn into_complete(self) -> Option<WeightDistribution> {
        match self {
            EnumOutcome::Complete(d) => Some(d),
            EnumOutcome::EarlyExit { .. } => None,
        }
    }
}

/// Exact weight distribution of `code` over all its codewords (or over
/// one message-space partition), by Gray-code sweep.
pub fn weight_distribution(code: &SelfDualCode, opts: &EnumOptions) -> Result<EnumOutcome> {
    let n = code.length();
    if n > ENUM_MAX_LEN {
        return Err(Error::EnumLengthLimit {
            len: n,
            max: ENUM_MAX_LEN,
        });
    }
    if opts.threads == 0 {
        return Err(Error::InvalidOptions("threads must be at least 1".into()));
    }

    let rows = if opts.halving {
        basis_without_all_ones(code)?
    } else {
        code.generator().rows().to_vec()
    };
    let k = rows.len() as u32;

    let (prefix_bits, prefix_values) = match opts.partition {
        Some(p) => {
            if opts.threads > 1 {
                return Err(Error::InvalidOptions(
                    "an explicit partition runs on the calling thread; use threads = 1".into(),
                ));
            }
            if p.prefix_bits > k {
                return Err(Error::InvalidOptions(format!(
                    "prefix_bits {} exceeds the {} enumerated generator rows",
                    p.prefix_bits, k
                )));
            }
            if p.prefix_bits < 64 && p.prefix_value >> p.prefix_bits != 0 {
                return Err(Error::InvalidOptions(format!(
                    "prefix_value {} does not fit in {} bits",
                    p.prefix_value, p.prefix_bits
                )));
            }
            (p.prefix_bits, vec![p.prefix_value])
        }
        None => {
            let t = ceil_log2(opts.threads).min(k);
            (t, (0..1u64 << t).collect())
        }
    };

    if n <= 64 {
        run_partitions::<1>(n, &rows, prefix_bits, &prefix_values, opts)
    } else {
        run_partitions::<2>(n, &rows, prefix_bits, &prefix_values, opts)
    }
}

/// [`weight_distribution`] with default options; never exits early.
pub fn full_weight_distribution(code: &SelfDualCode) -> Result<WeightDistribution> {
    match weight_distribution(code, &EnumOptions::default())? {
        EnumOutcome::Complete(d) => Ok(d),
        EnumOutcome::EarlyExit { .. } => unreachable!("no early-exit threshold was set"),
    }
}

fn ceil_log2(x: usize) -> u32 {
    x.next_power_of_two().trailing_zeros()
}

/// A generating set of size k-1 whose span misses the all-ones vector,
/// obtained by writing all-ones in the row basis and dropping one row of
/// that combination. The span plus its all-ones coset is the whole code.
fn basis_without_all_ones(code: &SelfDualCode) -> Result<Vec<BitVector>> {
    let gen = code.generator();
    let mut rem = BitVector::ones(code.length());
    let mut drop_row = None;
    for (i, row) in gen.rows().iter().enumerate() {
        if let Some(first) = row.first_set() {
            if rem.get(first) {
                rem.xor_assign(row);
                drop_row.get_or_insert(i);
            }
        }
    }
    if !rem.is_zero() {
        // cannot happen for a self-dual code: <1, c> = wt(c) mod 2 = 0
        // for every codeword, so 1 is in the dual, which is the code
        return Err(Error::InvalidOptions(
            "halving requires the all-ones vector to be a codeword".into(),
        ));
    }
    let drop_row = drop_row.expect("all-ones is nonzero, some row participated");
    Ok(gen
        .rows()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != drop_row)
        .map(|(_, r)| r.clone())
        .collect())
}

type Banks = [[u64; 256]; 2];

fn run_partitions<const W: usize>(
    n: usize,
    rows: &[BitVector],
    prefix_bits: u32,
    prefix_values: &[u64],
    opts: &EnumOptions,
) -> Result<EnumOutcome> {
    let packed: Vec<[u64; W]> = rows.iter().map(pack::<W>).collect();
    let (prefix_rows, sweep_rows) = packed.split_at(prefix_bits as usize);

    let stop = AtomicBool::new(false);
    let watch = Watch {
        stop: &stop,
        n,
        early_exit: opts.early_exit,
        halving: opts.halving,
    };

    // Each worker sweeps a strided share of the prefix values into its
    // own banks; the shares only meet at the final merge.
    let run_share = |worker: usize, workers: usize| -> Banks {
        let mut banks = [[0u64; 256]; 2];
        for &p in prefix_values.iter().skip(worker).step_by(workers) {
            let start = prefix_state(prefix_rows, p);
            if !sweep::<W>(sweep_rows, start, &mut banks, &mut |b| watch.should_stop(b)) {
                break;
            }
        }
        banks
    };
    let workers = opts.threads.min(prefix_values.len()).max(1);
    let all_banks: Vec<Banks> = if workers == 1 {
        vec![run_share(0, 1)]
    } else {
        std::thread::scope(|scope| {
            let run_share = &run_share;
            let handles: Vec<_> = (0..workers)
                .map(|worker| scope.spawn(move || run_share(worker, workers)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    // Merge the per-worker banks into per-weight counts, mirroring the
    // halved sweep onto the complement weights.
    let mut raw = vec![0u64; n + 1];
    for banks in &all_banks {
        for w in 0..=n {
            raw[w] += banks[0][w] + banks[1][w];
        }
    }
    let counts = if opts.halving {
        (0..=n).map(|w| raw[w] + raw[n - w]).collect()
    } else {
        raw
    };

    if let Some(threshold) = opts.early_exit {
        let bound = threshold.min(n + 1);
        if let Some(w) = (1..bound).find(|&w| counts[w] > 0) {
            return Ok(EnumOutcome::EarlyExit { weight: w });
        }
    }
    debug_assert!(!stop.load(Ordering::Relaxed), "stop implies an offender");
    Ok(EnumOutcome::Complete(WeightDistribution::from_counts(
        n, counts,
    )))
}

fn pack<const W: usize>(v: &BitVector) -> [u64; W] {
    let mut out = [0u64; W];
    for (slot, word) in out.iter_mut().zip(v.words()) {
        *slot = *word;
    }
    out
}

fn prefix_state<const W: usize>(prefix_rows: &[[u64; W]], value: u64) -> [u64; W] {
    let mut state = [0u64; W];
    for (i, row) in prefix_rows.iter().enumerate() {
        if value >> i & 1 == 1 {
            for (s, r) in state.iter_mut().zip(row) {
                *s ^= r;
            }
        }
    }
    state
}

/// Shared stop condition, polled between chunks by every worker.
struct Watch<'a> {
    stop: &'a AtomicBool,
    n: usize,
    early_exit: Option<usize>,
    halving: bool,
}

impl Watch<'_> {
    fn should_stop(&self, banks: &Banks) -> bool {
        if self.stop.load(Ordering::Relaxed) {
            return true;
        }
        let Some(threshold) = self.early_exit else {
            return false;
        };
        let bound = threshold.min(self.n + 1);
        let hit = |w: usize| banks[0][w] + banks[1][w] > 0;
        let mut found = (1..bound).any(hit);
        if !found && self.halving {
            // a halved count at weight w stands for a codeword of weight
            // n - w as well, so large weights can violate the threshold
            found = (self.n + 1 - bound..self.n).any(hit);
        }
        if found {
            self.stop.store(true, Ordering::Relaxed);
        }
        found
    }
}

/// One Gray-code sweep over the 2^k combinations of `rows`, offset by
/// `start`. Weights land in `banks` (two banks to keep the increment off
/// the critical path; entries above index n stay zero because weights
/// are at most 64*W <= 128 < 256). Returns false if `pause` stopped the
/// sweep at a chunk boundary.
fn sweep<const W: usize>(
    rows: &[[u64; W]],
    start: [u64; W],
    banks: &mut Banks,
    pause: &mut dyn FnMut(&Banks) -> bool,
) -> bool {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("popcnt") {
            // SAFETY: the popcnt feature was just detected at runtime.
            return unsafe { sweep_popcnt::<W>(rows, start, banks, pause) };
        }
    }
    sweep_fallback::<W>(rows, start, banks, pause)
}

/// The sweep compiled with hardware popcount. The baseline x86-64 target
/// lowers `count_ones` to a bit-slice routine that triples the step
/// time, so the kernel is compiled twice and picked at runtime.
#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "popcnt")]
unsafe fn sweep_popcnt<const W: usize>(
    rows: &[[u64; W]],
    start: [u64; W],
    banks: &mut Banks,
    pause: &mut dyn FnMut(&Banks) -> bool,
) -> bool {
    sweep_impl::<W>(rows, start, banks, pause)
}

fn sweep_fallback<const W: usize>(
    rows: &[[u64; W]],
    start: [u64; W],
    banks: &mut Banks,
    pause: &mut dyn FnMut(&Banks) -> bool,
) -> bool {
    sweep_impl::<W>(rows, start, banks, pause)
}

#[inline(always)]
fn weight_of<const W: usize>(state: &[u64; W]) -> usize {
    let mut total = 0u32;
    for word in state {
        total += word.count_ones();
    }
    total as usize
}

/// Pair-unrolled Gray walk: of steps 1..2^k, every odd step flips row 0
/// and even step 2u flips row tz(u)+1, so the loop body handles two
/// steps with the row-0 flip statically known.
#[inline(always)]
fn sweep_impl<const W: usize>(
    rows: &[[u64; W]],
    start: [u64; W],
    banks: &mut Banks,
    pause: &mut dyn FnMut(&Banks) -> bool,
) -> bool {
    let mut state = start;
    banks[0][weight_of(&state) & 255] += 1;
    let k = rows.len() as u32;
    if k == 0 {
        return true;
    }
    let row0 = rows[0];
    let half: u64 = 1 << (k - 1);
    let mut u: u64 = 1;
    while u < half {
        let seg_end = (u + CHUNK_STEPS / 2).min(half);
        for uu in u..seg_end {
            for i in 0..W {
                state[i] ^= row0[i];
            }
            banks[0][weight_of(&state) & 255] += 1;
            let row = rows[(uu.trailing_zeros() + 1) as usize];
            for i in 0..W {
                state[i] ^= row[i];
            }
            banks[1][weight_of(&state) & 255] += 1;
        }
        u = seg_end;
        if u < half && pause(banks) {
            return false;
        }
    }
    for i in 0..W {
        state[i] ^= row0[i];
    }
    banks[0][weight_of(&state) & 255] += 1;
    true
}

/// The two admissible weight enumerators of an extremal [68,34,12] code:
///
/// * `W68_1`: 1 + (442+4β)y^12 + (10864−8β)y^14 + …, with 104 ≤ β ≤ 1358;
/// * `W68_2`: 1 + (442+4β)y^12 + (14960−8β−256γ)y^14 + …, with 0 ≤ γ ≤ 9.
///
/// A distribution with minimum distance below 12 is `NonExtremal`; one
/// whose A_12, A_14 fit neither shape is `Unrecognized`.
#[allow(non_camel_case_types)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EnumeratorForm {
    W68_1,
    W68_2,
    NonExtremal,
    Unrecognized,
}

impl std::fmt::Display for EnumeratorForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            EnumeratorForm::W68_1 => "W68_1",
            EnumeratorForm::W68_2 => "W68_2",
            EnumeratorForm::NonExtremal => "NonExtremal",
            EnumeratorForm::Unrecognized => "Unrecognized",
        })
    }
}

/// Enumerator classification of a length-68 distribution. `beta` is set
/// for both recognized forms, `gamma` only for `W68_2`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumeratorParams {
    pub form: EnumeratorForm,
    pub beta: Option<i64>,
    pub gamma: Option<i64>,
}

impl EnumeratorParams {
    fn bare(form: EnumeratorForm) -> Self {
        EnumeratorParams {
            form,
            beta: None,
            gamma: None,
        }
    }
}

/// Reads (form, β, γ) off A_12 and A_14. β must satisfy A_12 = 442+4β
/// with β ≥ 0; then A_14 = 14960−8β−256γ with 0 ≤ γ ≤ 9 gives the second
/// form, while γ = 16 — that is, A_14 = 10864−8β — gives the first. The
/// forms cannot collide since 16 > 9.
pub fn classify_enumerator(dist: &WeightDistribution) -> Result<EnumeratorParams> {
    if dist.length() != 68 {
        return Err(Error::ClassifyLength { len: dist.length() });
    }
    if dist.min_distance()? < 12 {
        return Ok(EnumeratorParams::bare(EnumeratorForm::NonExtremal));
    }
    let a12 = dist.count(12) as i64;
    let a14 = dist.count(14) as i64;
    if a12 < 442 || (a12 - 442) % 4 != 0 {
        return Ok(EnumeratorParams::bare(EnumeratorForm::Unrecognized));
    }
    let beta = (a12 - 442) / 4;
    let rest = 14960 - 8 * beta - a14;
    if rest % 256 != 0 {
        return Ok(EnumeratorParams::bare(EnumeratorForm::Unrecognized));
    }
    match rest / 256 {
        g @ 0..=9 => Ok(EnumeratorParams {
            form: EnumeratorForm::W68_2,
            beta: Some(beta),
            gamma: Some(g),
        }),
        16 if (104..=1358).contains(&beta) => Ok(EnumeratorParams {
            form: EnumeratorForm::W68_1,
            beta: Some(beta),
            gamma: None,
        }),
        _ => Ok(EnumeratorParams::bare(EnumeratorForm::Unrecognized)),
    }
}
