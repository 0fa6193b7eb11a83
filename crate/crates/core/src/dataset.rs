//! Bundled code data: the base [68,34] generator, the four-step neighbor
//! chain N_(0)..N_(4), and the recorded neighbor vectors with their
//! expected (γ, β) parameters.
//!
//! Files live under `data/` as plain text so they can be audited
//! character by character. Every x vector is stored as the 34 bits of a
//! tabulation window: the last 34 coordinates of the origin code after
//! its columns are permuted into standard form (I_34 | A).
//!
//! The permutation is the stable one — pivot columns move to the front,
//! both halves keeping their relative order — and it compounds along the
//! chain: each chain code's frame is obtained by re-standardizing inside
//! the previous frame, not from scratch. Concretely, frame(0) is the
//! identity (the base generator is already (I | A)) and frame(i+1)
//! stably front-sorts the pivot columns of chain code i+1 as scanned in
//! frame(i) order. For codes whose pivots are 0..33 in the scan order
//! the window is just the free columns ascending; where a pivot has
//! drifted the window order deviates, and reading the vectors on the
//! wrong window silently lands in a different coset. The frames here
//! reproduce every recorded (γ, β); the free-columns-ascending reading
//! does not.

use crate::codefile::{parse_matrix, parse_vectors};
use crate::error::Result;
use crate::gf2::{BitMatrix, BitVector};
use crate::neighbor::neighbor;
use crate::selfdual::SelfDualCode;
use std::sync::OnceLock;

const N0_RIGHT: &str = include_str!("../data/n0_right.txt");
const N0_FULL: &str = include_str!("../data/n0.txt");
const CHAIN: &str = include_str!("../data/chain.txt");
const TABLES: [&str; 5] = [
    include_str!("../data/table2.txt"),
    include_str!("../data/table3.txt"),
    include_str!("../data/table4.txt"),
    include_str!("../data/table5.txt"),
    include_str!("../data/table6.txt"),
];

/// One step of the bundled chain: applying `x` (expanded onto the i-th
/// tabulation window) to the i-th chain code produces the (i+1)-th, with
/// the recorded enumerator parameters.
pub struct ChainStep {
    pub x: BitVector,
    pub gamma: i64,
    pub beta: i64,
}

/// One recorded neighbor: `x` applied to chain code `origin` yields a
/// code with the expected parameters.
pub struct TableEntry {
    /// Source table number, 2..=6.
    pub table: u8,
    /// Code label, unique across all tables ("C_1".."C_139", with the
    /// twice-printed C_42 split into "C_42a"/"C_42b").
    pub label: &'static str,
    /// Index of the chain code this neighbors: table t records neighbors
    /// of chain code t-2.
    pub origin: usize,
    pub x: BitVector,
    pub gamma: i64,
    pub beta: i64,
}

impl TableEntry {
    /// Rebuilds the recorded code: `x` expanded onto the origin chain
    /// code's tabulation window and applied to it.
    pub fn build_code(&self) -> Result<SelfDualCode> {
        neighbor(
            chain_code(self.origin),
            &expand_on(tabulation_window(self.origin), &self.x),
        )
    }
}

/// Places the 34 bits of a stored vector on the given window columns.
fn expand_on(window: &[usize], bits: &BitVector) -> BitVector {
    assert_eq!(bits.len(), window.len());
    let mut x = BitVector::zeros(68);
    for (u, &c) in window.iter().enumerate() {
        if bits.get(u) {
            x.set(c, true);
        }
    }
    x
}

/// Pivot positions of `gen`'s row space when its columns are scanned in
/// `order`: position p enters the list when column order[p] enlarges the
/// span of the columns before it.
fn pivot_positions(gen: &BitMatrix, order: &[usize]) -> Vec<usize> {
    let mut rows: Vec<BitVector> = gen.rows().to_vec();
    let mut piv = Vec::new();
    let mut r = 0;
    for (p, &c) in order.iter().enumerate() {
        let Some(sel) = (r..rows.len()).find(|&i| rows[i].get(c)) else {
            continue;
        };
        rows.swap(r, sel);
        let lead = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && row.get(c) {
                row.xor_assign(&lead);
            }
        }
        piv.push(p);
        r += 1;
    }
    piv
}

/// The next tabulation frame: pivot columns (in `prev` scan order)
/// stably moved to the front, everything else keeping its order.
fn next_frame(code: &SelfDualCode, prev: &[usize]) -> Vec<usize> {
    let piv = pivot_positions(code.generator(), prev);
    let is_piv: Vec<bool> = {
        let mut v = vec![false; prev.len()];
        for &p in &piv {
            v[p] = true;
        }
        v
    };
    let mut frame: Vec<usize> = piv.iter().map(|&p| prev[p]).collect();
    frame.extend((0..prev.len()).filter(|&p| !is_piv[p]).map(|p| prev[p]));
    frame
}

fn data_lines(text: &'static str) -> impl Iterator<Item = &'static str> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
}

fn parse_bits(s: &str, what: &str) -> BitVector {
    BitVector::from_bitstring(s).unwrap_or_else(|e| panic!("bundled {what}: {e}"))
}

/// The right half A of the base generator (I_34 | A).
pub fn base_matrix_right() -> &'static BitMatrix {
    static CELL: OnceLock<BitMatrix> = OnceLock::new();
    CELL.get_or_init(|| parse_matrix(N0_RIGHT).expect("bundled base matrix"))
}

/// The base [68,34] code, with generator (I_34 | A).
pub fn base_code() -> &'static SelfDualCode {
    chain_code(0)
}

pub fn chain_steps() -> &'static [ChainStep] {
    static CELL: OnceLock<Vec<ChainStep>> = OnceLock::new();
    CELL.get_or_init(|| {
        data_lines(CHAIN)
            .map(|line| {
                let mut f = line.split_whitespace();
                let step = (|| -> Option<ChainStep> {
                    Some(ChainStep {
                        x: parse_bits(f.next()?, "chain vector"),
                        gamma: f.next()?.parse().ok()?,
                        beta: f.next()?.parse().ok()?,
                    })
                })();
                step.unwrap_or_else(|| panic!("bundled chain line {line:?} malformed"))
            })
            .collect()
    })
}

/// The chain codes: index 0 is the base code, index i the result of
/// applying the first i chain vectors. Valid indices are 0..=4.
pub fn chain_code(i: usize) -> &'static SelfDualCode {
    &chain().codes[i]
}

/// The 34 coordinates the i-th code's stored vectors are written on, in
/// storage bit order: the right half of its compounded standard-form
/// frame. For the base code this is 34..=67.
pub fn tabulation_window(i: usize) -> &'static [usize] {
    &chain().frames[i][34..]
}

struct Chain {
    codes: [SelfDualCode; 5],
    frames: [Vec<usize>; 5],
}

fn chain() -> &'static Chain {
    static CELL: OnceLock<Chain> = OnceLock::new();
    CELL.get_or_init(|| {
        let build = || -> Result<Chain> {
            let rows = parse_vectors(N0_FULL)?;
            let base = SelfDualCode::from_generator(&BitMatrix::new(rows)?)?;
            let id: Vec<usize> = (0..base.length()).collect();
            let mut codes = [base.clone(), base.clone(), base.clone(), base.clone(), base];
            let mut frames = [id.clone(), id.clone(), id.clone(), id.clone(), id];
            frames[0] = next_frame(&codes[0], &frames[0]);
            for (i, step) in chain_steps().iter().enumerate() {
                let x = expand_on(&frames[i][34..], &step.x);
                codes[i + 1] = neighbor(&codes[i], &x)?;
                frames[i + 1] = next_frame(&codes[i + 1], &frames[i]);
            }
            Ok(Chain { codes, frames })
        };
        build().expect("bundled base generator and chain")
    })
}

/// Recorded neighbors from one bundled table, 2..=6.
pub fn table_entries(table: u8) -> &'static [TableEntry] {
    assert!((2..=6).contains(&table), "tables are numbered 2..=6");
    let all = all_tables();
    &all[table as usize - 2]
}

/// Every recorded neighbor, tables 2 through 6 in order.
pub fn all_table_entries() -> impl Iterator<Item = &'static TableEntry> {
    all_tables().iter().flatten()
}

pub fn entry_by_label(label: &str) -> Option<&'static TableEntry> {
    all_table_entries().find(|e| e.label == label)
}

fn all_tables() -> &'static [Vec<TableEntry>; 5] {
    static CELL: OnceLock<[Vec<TableEntry>; 5]> = OnceLock::new();
    CELL.get_or_init(|| std::array::from_fn(|i| parse_table(TABLES[i], i as u8 + 2)))
}

fn parse_table(text: &'static str, table: u8) -> Vec<TableEntry> {
    data_lines(text)
        .map(|line| {
            let mut f = line.split_whitespace();
            let entry = (|| -> Option<TableEntry> {
                Some(TableEntry {
                    table,
                    label: f.next()?,
                    origin: table as usize - 2,
                    x: parse_bits(f.next()?, "table vector"),
                    gamma: f.next()?.parse().ok()?,
                    beta: f.next()?.parse().ok()?,
                })
            })();
            entry.unwrap_or_else(|| panic!("bundled table {table} line {line:?} malformed"))
        })
        .collect()
}
