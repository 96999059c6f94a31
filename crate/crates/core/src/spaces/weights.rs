//! Lorentz weight sequences `w` and their partial sums `S_n`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Mutex;

use crate::error::{Error, Result};

/// Entries below this index are cached densely; larger partial sums use
/// sparse checkpoints.
const DENSE_LIMIT: u64 = 1 << 16;

/// Hard ceiling on partial-sum indices. Operations enforce their own caps
/// before getting anywhere near this.
pub const PARTIAL_SUM_HARD_CAP: u64 = 1 << 32;

#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `w_k = k^alpha - (k-1)^alpha` with `0 < alpha < 1`; `S_n = n^alpha`.
    PowerAlpha { alpha: f64 },
    /// `w_1 = w_2 = 1`, `w_k = 1/log k` for `k >= 3`.
    InvLog,
    /// `w_k = 1`. Degenerate: `lambda_q(1) = l_q`.
    Constant,
    /// A finite explicit table; weights are undefined past its length.
    Explicit(Vec<f64>),
}

/// A nonincreasing positive weight sequence with `w_1 = 1` and access to its
/// partial sums. Partial sums are always accumulated left to right, so a
/// cached value is bit-identical to a fresh scan.
#[derive(Debug)]
pub struct WeightGenerator {
    kind: WeightKind,
    memo: Mutex<SumMemo>,
}

#[derive(Debug, Default)]
struct SumMemo {
    /// `dense[i] = S_{i+1}` for `i < dense.len()`.
    dense: Vec<f64>,
    /// Checkpoints beyond the dense prefix.
    sparse: BTreeMap<u64, f64>,
}

impl Clone for WeightGenerator {
    fn clone(&self) -> Self {
        WeightGenerator::from_kind(self.kind.clone())
    }
}

impl PartialEq for WeightGenerator {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl WeightGenerator {
    fn from_kind(kind: WeightKind) -> Self {
        WeightGenerator {
            kind,
            memo: Mutex::new(SumMemo::default()),
        }
    }

    pub fn power_alpha(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::invalid(format!(
                "power weight needs 0 < alpha < 1, got {alpha}"
            )));
        }
        Ok(Self::from_kind(WeightKind::PowerAlpha { alpha }))
    }

    pub fn inv_log() -> Self {
        Self::from_kind(WeightKind::InvLog)
    }

    pub fn constant() -> Self {
        Self::from_kind(WeightKind::Constant)
    }

    pub fn explicit(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("explicit weight must be nonempty"));
        }
        if (values[0] - 1.0).abs() > 1e-12 {
            return Err(Error::invalid("explicit weight must start at w_1 = 1"));
        }
        for w in values.windows(2) {
            if !(w[0] >= w[1]) {
                return Err(Error::invalid("explicit weight must be nonincreasing"));
            }
        }
        if *values.last().unwrap() <= 0.0 {
            return Err(Error::invalid("explicit weight must be positive"));
        }
        Ok(Self::from_kind(WeightKind::Explicit(values)))
    }

    pub fn kind(&self) -> &WeightKind {
        &self.kind
    }

    /// Length of the explicit table, if this generator is finite.
    pub fn explicit_len(&self) -> Option<usize> {
        match &self.kind {
            WeightKind::Explicit(v) => Some(v.len()),
            _ => None,
        }
    }

    /// True when the generator violates `lim w_k = 0` (constant weights);
    /// such spaces collapse to `l_q`.
    pub fn is_degenerate(&self) -> bool {
        matches!(self.kind, WeightKind::Constant)
    }

    /// `w_k`, one-indexed.
    pub fn weight(&self, k: u64) -> f64 {
        debug_assert!(k >= 1);
        match &self.kind {
            WeightKind::PowerAlpha { alpha } => {
                (k as f64).powf(*alpha) - ((k - 1) as f64).powf(*alpha)
            }
            WeightKind::InvLog => {
                if k <= 2 {
                    1.0
                } else {
                    1.0 / (k as f64).ln()
                }
            }
            WeightKind::Constant => 1.0,
            WeightKind::Explicit(v) => v[(k - 1) as usize],
        }
    }

    /// `S_n = w_1 + ... + w_n`. Closed form where available, memoized
    /// left-to-right accumulation otherwise.
    pub fn partial_sum(&self, n: u64) -> f64 {
        assert!(n >= 1, "partial sum index must be >= 1");
        assert!(
            n <= PARTIAL_SUM_HARD_CAP,
            "partial sum index {n} beyond hard cap"
        );
        match &self.kind {
            WeightKind::PowerAlpha { alpha } => (n as f64).powf(*alpha),
            WeightKind::Constant => n as f64,
            WeightKind::InvLog | WeightKind::Explicit(_) => self.memo_sum(n),
        }
    }

    fn memo_sum(&self, n: u64) -> f64 {
        if let WeightKind::Explicit(v) = &self.kind {
            assert!(
                (n as usize) <= v.len(),
                "partial sum index {n} beyond explicit weight length {}",
                v.len()
            );
        }
        let mut memo = self.memo.lock().unwrap();
        if (n as usize) <= memo.dense.len() {
            return memo.dense[(n - 1) as usize];
        }
        if n <= DENSE_LIMIT {
            let mut acc = memo.dense.last().copied().unwrap_or(0.0);
            let start = memo.dense.len() as u64 + 1;
            memo.dense.reserve((n - start + 1) as usize);
            for k in start..=n {
                acc += self.weight(k);
                memo.dense.push(acc);
            }
            return acc;
        }
        if let Some(&v) = memo.sparse.get(&n) {
            return v;
        }
        // Resume from the closest cached prefix below n.
        let (mut idx, mut acc) = memo
            .sparse
            .range(..=n)
            .next_back()
            .map(|(&k, &v)| (k, v))
            .unwrap_or((0, 0.0));
        if idx < DENSE_LIMIT {
            let dense_end = self.dense_prefix(&mut memo, DENSE_LIMIT.min(n));
            idx = DENSE_LIMIT.min(n);
            acc = dense_end;
        }
        const CHECKPOINT_STRIDE: u64 = 1 << 20;
        let mut next_mark = (idx / CHECKPOINT_STRIDE + 1) * CHECKPOINT_STRIDE;
        for k in (idx + 1)..=n {
            acc += self.weight(k);
            if k == next_mark {
                memo.sparse.insert(k, acc);
                next_mark += CHECKPOINT_STRIDE;
            }
        }
        memo.sparse.insert(n, acc);
        acc
    }

    fn dense_prefix(&self, memo: &mut SumMemo, upto: u64) -> f64 {
        if (upto as usize) <= memo.dense.len() {
            return memo.dense[(upto - 1) as usize];
        }
        let mut acc = memo.dense.last().copied().unwrap_or(0.0);
        let start = memo.dense.len() as u64 + 1;
        for k in start..=upto {
            acc += self.weight(k);
            memo.dense.push(acc);
        }
        acc
    }
}

impl fmt::Display for WeightGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            WeightKind::PowerAlpha { alpha } => write!(f, "power({alpha})"),
            WeightKind::InvLog => write!(f, "invlog"),
            WeightKind::Constant => write!(f, "constant"),
            WeightKind::Explicit(v) => {
                write!(f, "explicit(")?;
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{x}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_alpha_closed_form() {
        let w = WeightGenerator::power_alpha(0.5).unwrap();
        assert_eq!(w.weight(1), 1.0);
        assert!((w.partial_sum(16) - 4.0).abs() < 1e-12);
        // Closed form matches direct accumulation.
        let direct: f64 = (1..=100).map(|k| w.weight(k)).sum();
        assert!((w.partial_sum(100) - direct).abs() < 1e-9);
    }

    #[test]
    fn invlog_values() {
        let w = WeightGenerator::inv_log();
        assert_eq!(w.weight(1), 1.0);
        assert_eq!(w.weight(2), 1.0);
        assert!((w.weight(3) - 1.0 / 3f64.ln()).abs() < 1e-15);
        assert!((w.partial_sum(3) - (2.0 + 1.0 / 3f64.ln())).abs() < 1e-15);
    }

    #[test]
    fn memoized_sums_are_path_independent() {
        // Ask out of order and compare against a single fresh scan.
        let w = WeightGenerator::inv_log();
        let far = w.partial_sum(DENSE_LIMIT + 5_000);
        let near = w.partial_sum(10);
        let fresh = WeightGenerator::inv_log();
        assert_eq!(near, fresh.partial_sum(10));
        assert_eq!(far, fresh.partial_sum(DENSE_LIMIT + 5_000));
        // Strictly increasing in n.
        assert!(w.partial_sum(11) > near);
    }

    #[test]
    fn explicit_validation() {
        assert!(WeightGenerator::explicit(vec![]).is_err());
        assert!(WeightGenerator::explicit(vec![0.9]).is_err());
        assert!(WeightGenerator::explicit(vec![1.0, 1.1]).is_err());
        assert!(WeightGenerator::explicit(vec![1.0, 0.0]).is_err());
        let w = WeightGenerator::explicit(vec![1.0, 0.5, 0.5]).unwrap();
        assert_eq!(w.partial_sum(3), 2.0);
        assert_eq!(w.explicit_len(), Some(3));
    }

    #[test]
    fn display_round_trip_shapes() {
        assert_eq!(WeightGenerator::power_alpha(0.5).unwrap().to_string(), "power(0.5)");
        assert_eq!(WeightGenerator::inv_log().to_string(), "invlog");
        assert_eq!(WeightGenerator::constant().to_string(), "constant");
    }
}
