//! Self-dual code construction and classification.

use crate::error::{Error, Result};
use crate::gf2::{reduce_to_zero, BitMatrix, BitVector};
use sha2::{Digest, Sha256};

/// Type classification of a binary self-dual code: II when every codeword
/// weight is divisible by 4, I otherwise (weights divisible by 2 only).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CodeType {
    TypeI,
    TypeII,
}

impl std::fmt::Display for CodeType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CodeType::TypeI => "I",
            CodeType::TypeII => "II",
        })
    }
}

/// A binary self-dual [n, n/2] code, stored as the reduced row echelon
/// form of its generator matrix. The rref is unique per row space, so two
/// values compare equal exactly when they generate the same code.
#[derive(Clone, PartialEq, Eq)]
pub struct SelfDualCode {
    generator: BitMatrix,
    pivots: Vec<usize>,
}

impl SelfDualCode {
    /// Validates that the rows of `m` generate a self-dual code: even
    /// length, pairwise orthogonal rows (each row orthogonal to itself,
    /// i.e. even weight), and rank exactly n/2. Row indices in errors are
    /// 1-based positions in `m`, not in the stored echelon form.
    pub fn from_generator(m: &BitMatrix) -> Result<Self> {
        let n = m.num_cols();
        if n % 2 != 0 {
            return Err(Error::OddLength { len: n });
        }
        let rows = m.rows();
        for a in 0..rows.len() {
            for b in a..rows.len() {
                if rows[a].dot(&rows[b]) {
                    return Err(Error::NotSelfOrthogonal {
                        row_a: a + 1,
                        row_b: b + 1,
                    });
                }
            }
        }
        let (generator, pivots) = m.rref();
        if generator.num_rows() != n / 2 {
            return Err(Error::WrongRank {
                rank: generator.num_rows(),
                len: n,
            });
        }
        Ok(SelfDualCode { generator, pivots })
    }

    pub fn length(&self) -> usize {
        self.generator.num_cols()
    }

    pub fn dim(&self) -> usize {
        self.generator.num_rows()
    }

    /// Generator matrix in reduced row echelon form.
    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool> {
        if v.len() != self.length() {
            return Err(Error::DimensionMismatch {
                context: "codeword membership",
                left: self.length(),
                right: v.len(),
            });
        }
        Ok(reduce_to_zero(&self.generator, &self.pivots, v))
    }

    /// Type II iff every generator row has weight divisible by 4. Because
    /// rows are pairwise orthogonal, wt(a+b) = wt(a)+wt(b)-2|a∧b| with
    /// |a∧b| even, so doubly even generators force every codeword to be
    /// doubly even.
    pub fn classify_type(&self) -> CodeType {
        if self
            .generator
            .rows()
            .iter()
            .all(|r| r.weight() % 4 == 0)
        {
            CodeType::TypeII
        } else {
            CodeType::TypeI
        }
    }

    /// Whether `d_min` meets the largest minimum distance permitted at
    /// this length and type.
    pub fn is_extremal(&self, d_min: usize) -> Result<bool> {
        Ok(d_min == extremal_bound(self.length(), self.classify_type())?)
    }

    /// The n/2 columns of the echelon-form generator that carry no pivot,
    /// in ascending order. Every coset of the code has exactly one
    /// representative supported on these columns, so a vector's values on
    /// them are canonical coset coordinates.
    pub fn free_columns(&self) -> Vec<usize> {
        let mut piv = self.pivots.iter().copied().peekable();
        (0..self.length())
            .filter(|&c| {
                if piv.peek() == Some(&c) {
                    piv.next();
                    false
                } else {
                    true
                }
            })
            .collect()
    }

    /// SHA-256 of the echelon-form generator text; a stable identity for
    /// deduplicating codes across runs.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.generator.to_text().as_bytes());
        let mut out = String::with_capacity(64);
        for byte in digest {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

impl std::fmt::Debug for SelfDualCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SelfDualCode[{}, {}] {}",
            self.length(),
            self.dim(),
            &self.fingerprint()[..12]
        )
    }
}

/// Upper bound on the minimum distance of a self-dual code of length `n`:
/// 4*floor(n/24) + 4, except type I lengths congruent to 22 mod 24, where
/// two more is attainable. Type II requires n divisible by 8.
pub fn extremal_bound(n: usize, code_type: CodeType) -> Result<usize> {
    if n == 0 {
        return Err(Error::LengthOutOfRange {
            len: 0,
            max: crate::gf2::MAX_LEN,
        });
    }
    if n % 2 != 0 {
        return Err(Error::OddLength { len: n });
    }
    match code_type {
        CodeType::TypeII => {
            if n % 8 != 0 {
                return Err(Error::TypeIILength { len: n });
            }
            Ok(4 * (n / 24) + 4)
        }
        CodeType::TypeI => {
            if n % 24 == 22 {
                Ok(4 * (n / 24) + 6)
            } else {
                Ok(4 * (n / 24) + 4)
            }
        }
    }
}
