//! Neighbor construction and the neighbor distance between self-dual
//! codes of the same length.
//!
//! Two self-dual codes are neighbors when they intersect in a subcode of
//! codimension 1. Given a code C and an even-weight vector x outside C,
//! the code generated by (x ∩ C's orthogonal part) together with x,
//!   D = < {c in C : <x,c> = 0}, x >,
//! is again self-dual and is a neighbor of C.

use crate::error::{Error, Result};
use crate::gf2::{BitMatrix, BitVector};
use crate::selfdual::SelfDualCode;

/// Builds the self-dual neighbor of `code` determined by `x`.
///
/// `x` must have even weight (so `<x,x> = 0`) and must not already lie in
/// the code, otherwise the construction returns the code itself.
pub fn neighbor(code: &SelfDualCode, x: &BitVector) -> Result<SelfDualCode> {
    let n = code.length();
    if x.len() != n {
        return Err(Error::DimensionMismatch {
            context: "neighbor vector",
            left: n,
            right: x.len(),
        });
    }
    if x.weight() % 2 != 0 {
        return Err(Error::OddWeightX { weight: x.weight() });
    }
    if code.contains(x)? {
        return Err(Error::TrivialNeighbor);
    }

    // Split the generators by <x, g_i>. Rows orthogonal to x stay; the
    // non-orthogonal ones are folded into one another so that exactly one
    // leaves, and x takes its place. Since x is outside C = C^perp, at
    // least one generator is non-orthogonal.
    let mut rows: Vec<BitVector> = code.generator().rows().to_vec();
    let hot: Vec<usize> = (0..rows.len()).filter(|&i| x.dot(&rows[i])).collect();
    let (&pivot, rest) = hot
        .split_first()
        .expect("x outside a self-dual code cannot be orthogonal to all generators");
    let pivot_row = rows[pivot].clone();
    for &i in rest {
        rows[i].xor_assign(&pivot_row);
    }
    rows[pivot] = x.clone();

    SelfDualCode::from_generator(&BitMatrix::new(rows)?)
}

/// Expands an n/2-bit vector into a full-length neighbor vector by
/// placing its bits on the code's free (non-pivot) columns in ascending
/// order. Those columns are canonical coset coordinates, so this is the
/// natural compressed form for an x: for a generator in standard form
/// (I | A) it coincides with writing x on the last n/2 coordinates.
/// Full-length input is returned unchanged.
pub fn expand_x(code: &SelfDualCode, bits: &BitVector) -> Result<BitVector> {
    let n = code.length();
    if bits.len() == n {
        return Ok(bits.clone());
    }
    if bits.len() != n / 2 {
        return Err(Error::DimensionMismatch {
            context: "neighbor vector (full length or one bit per free column)",
            left: n,
            right: bits.len(),
        });
    }
    let mut x = BitVector::zeros(n);
    for (j, c) in code.free_columns().into_iter().enumerate() {
        if bits.get(j) {
            x.set(c, true);
        }
    }
    Ok(x)
}

/// Neighbor distance n/2 - dim(C1 ∩ C2), computed as the rank of the
/// stacked generators minus n/2. Zero exactly for equal codes; distinct
/// codes of the same length always share the all-ones vector, so the
/// distance never exceeds n/2 - 1.
pub fn neighbor_distance(c1: &SelfDualCode, c2: &SelfDualCode) -> Result<usize> {
    if c1.length() != c2.length() {
        return Err(Error::DimensionMismatch {
            context: "neighbor distance",
            left: c1.length(),
            right: c2.length(),
        });
    }
    let sum_dim = c1.generator().row_space_sum_rank(c2.generator())?;
    // dim(C1) + dim(C2) - dim(C1 + C2) = dim(C1 ∩ C2)
    Ok(sum_dim - c1.dim())
}

/// Whether the codes are within neighbor distance `k` of each other.
/// k = 0 means equality; k = 1 means equal or neighbors.
pub fn are_k_range_neighbors(c1: &SelfDualCode, c2: &SelfDualCode, k: usize) -> Result<bool> {
    Ok(neighbor_distance(c1, c2)? <= k)
}

/// One link in a [`NeighborChain`]: the vector applied and the code it
/// produced.
#[derive(Clone)]
pub struct NeighborStep {
    pub x: BitVector,
    pub code: SelfDualCode,
}

/// A base code followed by repeated neighbor steps, each applied to the
/// previous code. Extension is persistent: `extend` leaves the original
/// chain usable.
#[derive(Clone)]
pub struct NeighborChain {
    base: SelfDualCode,
    steps: Vec<NeighborStep>,
}

impl NeighborChain {
    pub fn new(base: SelfDualCode) -> Self {
        NeighborChain {
            base,
            steps: Vec::new(),
        }
    }

    /// Applies every `x` in turn, starting from `base`.
    pub fn from_steps<I>(base: SelfDualCode, xs: I) -> Result<Self>
    where
        I: IntoIterator<Item = BitVector>,
    {
        let mut chain = NeighborChain::new(base);
        for x in xs {
            chain = chain.extend(&x)?;
        }
        Ok(chain)
    }

    /// Returns a new chain with `neighbor(last, x)` appended.
    pub fn extend(&self, x: &BitVector) -> Result<NeighborChain> {
        let code = neighbor(self.last(), x)?;
        let mut steps = self.steps.clone();
        steps.push(NeighborStep {
            x: x.clone(),
            code,
        });
        Ok(NeighborChain {
            base: self.base.clone(),
            steps,
        })
    }

    /// Number of codes in the chain (base included).
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false // always holds at least the base
    }

    /// The i-th code; index 0 is the base.
    pub fn code(&self, i: usize) -> &SelfDualCode {
        if i == 0 {
            &self.base
        } else {
            &self.steps[i - 1].code
        }
    }

    pub fn last(&self) -> &SelfDualCode {
        match self.steps.last() {
            Some(s) => &s.code,
            None => &self.base,
        }
    }

    pub fn steps(&self) -> &[NeighborStep] {
        &self.steps
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(rows: &[&str]) -> SelfDualCode {
        SelfDualCode::from_generator(
            &BitMatrix::new(
                rows.iter()
                    .map(|r| BitVector::from_bitstring(r).unwrap())
                    .collect(),
            )
            .unwrap(),
        )
        .unwrap()
    }

    fn x(s: &str) -> BitVector {
        BitVector::from_bitstring(s).unwrap()
    }

    #[test]
    fn four_bit_example() {
        let c = code(&["1100", "0011"]);
        let d = neighbor(&c, &x("1010")).unwrap();
        assert_eq!(d, code(&["1010", "0101"]));
        assert_eq!(neighbor_distance(&c, &d).unwrap(), 1);
        // the shared subcode is {0000, 1111}
        assert!(d.contains(&BitVector::ones(4)).unwrap());
        assert!(!d.contains(&x("1100")).unwrap());
    }

    #[test]
    fn expand_places_bits_on_free_columns() {
        let c = code(&["1100", "0011"]); // pivots 0 and 2, free 1 and 3
        assert_eq!(c.free_columns(), vec![1, 3]);
        assert_eq!(expand_x(&c, &x("10")).unwrap(), x("0100"));
        assert_eq!(expand_x(&c, &x("11")).unwrap(), x("0101"));
        // full-length vectors pass through untouched
        assert_eq!(expand_x(&c, &x("1010")).unwrap(), x("1010"));
        assert!(matches!(
            expand_x(&c, &x("101")),
            Err(Error::DimensionMismatch { .. })
        ));
        // expansion of the free-column coordinates round-trips the coset:
        // reducing the expansion by the generator reproduces nothing new
        let d = neighbor(&c, &expand_x(&c, &x("11")).unwrap()).unwrap();
        assert_eq!(d, code(&["1010", "0101"]));
    }

    #[test]
    fn rejects_bad_x() {
        let c = code(&["1100", "0011"]);
        assert!(matches!(
            neighbor(&c, &x("1000")),
            Err(Error::OddWeightX { weight: 1 })
        ));
        assert!(matches!(
            neighbor(&c, &x("1100")),
            Err(Error::TrivialNeighbor)
        ));
        assert!(matches!(
            neighbor(&c, &x("0000")),
            Err(Error::TrivialNeighbor)
        ));
        assert!(matches!(
            neighbor(&c, &x("110000")),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn distance_is_a_metric_on_the_length_4_codes() {
        // all three self-dual codes of length 4
        let all = [
            code(&["1100", "0011"]),
            code(&["1010", "0101"]),
            code(&["1001", "0110"]),
        ];
        for (i, a) in all.iter().enumerate() {
            for (j, b) in all.iter().enumerate() {
                let d = neighbor_distance(a, b).unwrap();
                assert_eq!(d == 0, i == j);
                assert_eq!(d, neighbor_distance(b, a).unwrap());
                assert!(d <= 4 / 2 - 1); // strict bound for distinct codes
                for c in all.iter() {
                    let via = neighbor_distance(a, c).unwrap() + neighbor_distance(c, b).unwrap();
                    assert!(d <= via);
                }
            }
        }
    }

    #[test]
    fn k_range_thresholds() {
        let a = code(&["1100", "0011"]);
        let b = code(&["1010", "0101"]);
        assert!(are_k_range_neighbors(&a, &a, 0).unwrap());
        assert!(!are_k_range_neighbors(&a, &b, 0).unwrap());
        assert!(are_k_range_neighbors(&a, &b, 1).unwrap());
        assert!(are_k_range_neighbors(&a, &b, 5).unwrap());
    }

    #[test]
    fn neighbor_is_symmetric_as_a_relation() {
        // d is a neighbor of c via x; c must also be within distance 1 of d
        let c = code(&["1100", "0011"]);
        let d = neighbor(&c, &x("1010")).unwrap();
        assert!(are_k_range_neighbors(&d, &c, 1).unwrap());
    }

    #[test]
    fn chain_is_persistent() {
        let base = code(&["1100", "0011"]);
        let chain = NeighborChain::new(base.clone());
        let longer = chain.extend(&x("1010")).unwrap();
        assert_eq!(chain.len(), 1);
        assert_eq!(longer.len(), 2);
        assert_eq!(longer.code(0), &base);
        assert_eq!(longer.last(), &code(&["1010", "0101"]));
        // consecutive codes in a chain are neighbors
        assert_eq!(
            neighbor_distance(longer.code(0), longer.code(1)).unwrap(),
            1
        );

        let back = longer.extend(&x("1100")).unwrap();
        assert_eq!(back.last(), &base);
        assert_eq!(back.steps().len(), 2);
    }

    #[test]
    fn from_steps_matches_manual_extension() {
        let base = code(&["1100", "0011"]);
        let chain = NeighborChain::from_steps(base.clone(), [x("1010"), x("1100")]).unwrap();
        assert_eq!(chain.len(), 3);
        assert_eq!(chain.last(), &base);
    }
}
