//! Finite real sequences, decreasing rearrangement, tensor products, and the
//! best-first stream of largest pairwise products of a weight sequence.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashSet};

use crate::error::{Error, Result};
use crate::spaces::WeightGenerator;

/// Hard cap on tensor product sizes; callers hitting this should reconsider
/// their input rather than raise it.
pub const TENSOR_ENTRY_CAP: usize = 1 << 22;

/// Default cap on the number of products streamed by [`top_k_products`].
pub const TOP_K_CAP: usize = 4_000_000;

/// A nonempty finite sequence of finite real values.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteSeq {
    entries: Vec<f64>,
}

impl FiniteSeq {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("sequence must be nonempty"));
        }
        if let Some(bad) = entries.iter().find(|x| !x.is_finite()) {
            return Err(Error::invalid(format!("non-finite entry {bad}")));
        }
        Ok(FiniteSeq { entries })
    }

    /// All-ones vector of length `n`.
    pub fn ones(n: usize) -> Self {
        assert!(n >= 1);
        FiniteSeq {
            entries: vec![1.0; n],
        }
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn norm_l1(&self) -> f64 {
        self.entries.iter().map(|x| x.abs()).sum()
    }

    pub fn norm_max(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, x| m.max(x.abs()))
    }
}

/// Decreasing rearrangement: nonnegative, nonincreasing, same multiset as the
/// absolute values of its source.
#[derive(Debug, Clone, PartialEq)]
pub struct RearrangedSeq {
    entries: Vec<f64>,
}

impl RearrangedSeq {
    /// Wrap a vector that is already nonincreasing and nonnegative.
    pub fn from_sorted(entries: Vec<f64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::invalid("sequence must be nonempty"));
        }
        for w in entries.windows(2) {
            if !(w[0] >= w[1]) {
                return Err(Error::invalid("entries must be nonincreasing"));
            }
        }
        if *entries.last().unwrap() < 0.0 {
            return Err(Error::invalid("entries must be nonnegative"));
        }
        Ok(RearrangedSeq { entries })
    }

    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn norm_l1(&self) -> f64 {
        self.entries.iter().sum()
    }

    pub fn norm_max(&self) -> f64 {
        self.entries[0]
    }

    pub fn into_finite(self) -> FiniteSeq {
        FiniteSeq {
            entries: self.entries,
        }
    }

    pub fn as_finite(&self) -> FiniteSeq {
        FiniteSeq {
            entries: self.entries.clone(),
        }
    }
}

/// Nonincreasing permutation of the absolute values.
///
/// Ties break by original index, which makes the permutation (not just the
/// value sequence) deterministic.
pub fn rearrange(a: &FiniteSeq) -> RearrangedSeq {
    let mut idx: Vec<usize> = (0..a.entries.len()).collect();
    idx.sort_by(|&i, &j| {
        let (x, y) = (a.entries[i].abs(), a.entries[j].abs());
        y.partial_cmp(&x).unwrap().then(i.cmp(&j))
    });
    RearrangedSeq {
        entries: idx.iter().map(|&i| a.entries[i].abs()).collect(),
    }
}

/// Sort a raw buffer of nonnegative values into a rearrangement. Used on hot
/// paths that build unions of scaled blocks.
pub fn rearrange_values(mut values: Vec<f64>) -> RearrangedSeq {
    values.sort_by(|x, y| y.partial_cmp(x).unwrap());
    RearrangedSeq { entries: values }
}

/// Row-major tensor product `(a_i b_j)`.
pub fn tensor(a: &FiniteSeq, b: &FiniteSeq) -> Result<FiniteSeq> {
    let n = a.len().saturating_mul(b.len());
    if n > TENSOR_ENTRY_CAP {
        return Err(Error::limit(format!(
            "tensor product size {} exceeds cap {}",
            n, TENSOR_ENTRY_CAP
        )));
    }
    let mut out = Vec::with_capacity(n);
    for &x in &a.entries {
        for &y in &b.entries {
            out.push(x * y);
        }
    }
    Ok(FiniteSeq { entries: out })
}

/// Shift representation of the tensor product: both factors are zero-padded
/// to a common length `n` and the output is `sum_i a_i b~^i` where `b~^i`
/// places `b` at offset `(i-1)n`. Rearranging the output matches
/// `rearrange(tensor(a, b))` up to trailing zeros.
pub fn tensor_blocks(a: &FiniteSeq, b: &FiniteSeq) -> Result<FiniteSeq> {
    let n = a.len().max(b.len());
    let total = n.saturating_mul(n);
    if total > TENSOR_ENTRY_CAP {
        return Err(Error::limit(format!(
            "tensor product size {} exceeds cap {}",
            total, TENSOR_ENTRY_CAP
        )));
    }
    let mut out = vec![0.0; total];
    for i in 0..n {
        let ai = a.entries.get(i).copied().unwrap_or(0.0);
        for j in 0..n {
            let bj = b.entries.get(j).copied().unwrap_or(0.0);
            out[i * n + j] = ai * bj;
        }
    }
    Ok(FiniteSeq { entries: out })
}

#[derive(PartialEq)]
struct Frontier {
    value: f64,
    i: u64,
    j: u64,
}

impl Eq for Frontier {}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        // Max-heap on the product value; indices break ties so the pop order
        // is independent of heap internals.
        self.value
            .partial_cmp(&other.value)
            .unwrap()
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The `k` largest values of `{w_i w_j : i, j >= 1}` in nonincreasing order.
///
/// Best-first expansion over the product grid from `(1, 1)` with successors
/// `(i+1, j)` and `(i, j+1)` and a deduplicating visited set. Correct because
/// `w` is nonincreasing, so each cell dominates its successors; the full grid
/// is never materialized.
pub fn top_k_products(w: &WeightGenerator, k: usize) -> Result<RearrangedSeq> {
    if k == 0 {
        return Err(Error::invalid("k must be >= 1"));
    }
    if k > TOP_K_CAP {
        return Err(Error::limit(format!("k = {k} exceeds cap {TOP_K_CAP}")));
    }
    if let Some(len) = w.explicit_len() {
        if k > len * len {
            return Err(Error::invalid(format!(
                "k = {k} exceeds the {} products of an explicit weight of length {len}",
                len * len
            )));
        }
    }
    let in_range = |i: u64| match w.explicit_len() {
        Some(len) => i <= len as u64,
        None => true,
    };
    let mut heap = BinaryHeap::new();
    let mut seen = HashSet::new();
    heap.push(Frontier {
        value: w.weight(1) * w.weight(1),
        i: 1,
        j: 1,
    });
    seen.insert((1u64, 1u64));
    let mut out = Vec::with_capacity(k);
    while out.len() < k {
        let top = heap
            .pop()
            .ok_or_else(|| Error::Internal("product frontier exhausted".into()))?;
        out.push(top.value);
        for (ni, nj) in [(top.i + 1, top.j), (top.i, top.j + 1)] {
            if in_range(ni) && in_range(nj) && seen.insert((ni, nj)) {
                heap.push(Frontier {
                    value: w.weight(ni) * w.weight(nj),
                    i: ni,
                    j: nj,
                });
            }
        }
    }
    Ok(RearrangedSeq { entries: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn seq(v: &[f64]) -> FiniteSeq {
        FiniteSeq::new(v.to_vec()).unwrap()
    }

    #[test]
    fn rearrange_basic() {
        assert_eq!(rearrange(&seq(&[3.0, -4.0, 0.0])).entries(), &[4.0, 3.0, 0.0]);
        assert_eq!(rearrange(&seq(&[5.0, 5.0, 5.0])).entries(), &[5.0, 5.0, 5.0]);
    }

    #[test]
    fn rearrange_rejects_empty_and_nonfinite() {
        assert!(FiniteSeq::new(vec![]).is_err());
        assert!(FiniteSeq::new(vec![1.0, f64::NAN]).is_err());
        assert!(FiniteSeq::new(vec![f64::INFINITY]).is_err());
    }

    #[test]
    fn tensor_basic() {
        let t = tensor(&seq(&[1.0, 2.0]), &seq(&[3.0, 4.0])).unwrap();
        assert_eq!(t.entries(), &[3.0, 4.0, 6.0, 8.0]);
        let id = tensor(&seq(&[2.0, -1.0, 5.0]), &seq(&[1.0])).unwrap();
        assert_eq!(id.entries(), &[2.0, -1.0, 5.0]);
    }

    #[test]
    fn tensor_blocks_shifts() {
        // (1,2) x (3,4): block i holds a_i * b at offset (i-1)*2.
        let t = tensor_blocks(&seq(&[1.0, 2.0]), &seq(&[3.0, 4.0])).unwrap();
        assert_eq!(t.entries(), &[3.0, 4.0, 6.0, 8.0]);
        // a x (1, 0) spreads a on positions 1, n+1, ...
        let t = tensor_blocks(&seq(&[5.0, 7.0]), &seq(&[1.0, 0.0])).unwrap();
        assert_eq!(t.entries(), &[5.0, 0.0, 7.0, 0.0]);
    }

    #[test]
    fn tensor_cap() {
        let a = FiniteSeq::ones(3000);
        assert!(matches!(
            tensor(&a, &a),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn top_k_dyadic() {
        // w = (1, 1/2, 1/4, 1/8): four largest products are 1, 1/2, 1/2, 1/4.
        let w = WeightGenerator::explicit(vec![1.0, 0.5, 0.25, 0.125]).unwrap();
        let d = top_k_products(&w, 4).unwrap();
        assert_eq!(d.entries(), &[1.0, 0.5, 0.5, 0.25]);
    }

    #[test]
    fn top_k_constant() {
        let w = WeightGenerator::constant();
        let d = top_k_products(&w, 5).unwrap();
        assert_eq!(d.entries(), &[1.0; 5]);
    }

    #[test]
    fn top_k_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let len = 200;
            let mut w = Vec::with_capacity(len);
            let mut cur = 1.0f64;
            w.push(cur);
            for _ in 1..len {
                cur *= rng.gen_range(0.8f64..1.0);
                w.push(cur);
            }
            let gen = WeightGenerator::explicit(w.clone()).unwrap();
            let k = rng.gen_range(1..=50usize);
            let got = top_k_products(&gen, k).unwrap();
            let mut all: Vec<f64> = Vec::with_capacity(len * len);
            for i in 0..len {
                for j in 0..len {
                    all.push(w[i] * w[j]);
                }
            }
            all.sort_by(|a, b| b.partial_cmp(a).unwrap());
            for (g, e) in got.entries().iter().zip(all.iter()) {
                assert_eq!(g, e);
            }
        }
    }

    #[test]
    fn top_k_respects_caps() {
        let w = WeightGenerator::constant();
        assert!(matches!(
            top_k_products(&w, TOP_K_CAP + 1),
            Err(Error::ResourceLimit(_))
        ));
        let e = WeightGenerator::explicit(vec![1.0, 0.5]).unwrap();
        assert!(top_k_products(&e, 5).is_err());
    }

    proptest! {
        #[test]
        fn rearrange_idempotent_and_sign_invariant(
            v in proptest::collection::vec(-1e6f64..1e6, 1..40)
        ) {
            let a = seq(&v);
            let r = rearrange(&a);
            let r2 = rearrange(&r.as_finite());
            prop_assert_eq!(r.entries(), r2.entries());
            let flipped: Vec<f64> = v.iter().map(|x| -x).collect();
            let rf = rearrange(&seq(&flipped));
            prop_assert_eq!(r.entries(), rf.entries());
        }

        #[test]
        fn rearrange_permutation_invariant(
            v in proptest::collection::vec(-1e6f64..1e6, 1..40),
            seed in any::<u64>()
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut p = v.clone();
            p.shuffle(&mut rng);
            let (rv, rp) = (rearrange(&seq(&v)), rearrange(&seq(&p)));
            prop_assert_eq!(rv.entries(), rp.entries());
        }

        #[test]
        fn rearrange_preserves_l1(
            v in proptest::collection::vec(-1e3f64..1e3, 1..40)
        ) {
            let a = seq(&v);
            let r = rearrange(&a);
            let lhs = r.norm_l1();
            let rhs = a.norm_l1();
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs.max(1.0));
        }

        #[test]
        fn tensor_commutes_after_rearrangement(
            a in proptest::collection::vec(-10f64..10.0, 1..12),
            b in proptest::collection::vec(-10f64..10.0, 1..12)
        ) {
            let (a, b) = (seq(&a), seq(&b));
            let ab = rearrange(&tensor(&a, &b).unwrap());
            let ba = rearrange(&tensor(&b, &a).unwrap());
            for (x, y) in ab.entries().iter().zip(ba.entries()) {
                prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
            }
        }

        #[test]
        fn tensor_blocks_matches_tensor(
            a in proptest::collection::vec(-10f64..10.0, 1..12),
            b in proptest::collection::vec(-10f64..10.0, 1..12)
        ) {
            let (a, b) = (seq(&a), seq(&b));
            let plain = rearrange(&tensor(&a, &b).unwrap());
            let blocks = rearrange(&tensor_blocks(&a, &b).unwrap());
            // The block form is zero-padded, so it extends the plain
            // rearrangement by zeros.
            for (i, x) in blocks.entries().iter().enumerate() {
                let expect = plain.entries().get(i).copied().unwrap_or(0.0);
                prop_assert!((x - expect).abs() <= 1e-12 * expect.abs().max(1.0));
            }
        }
    }
}
