//! Shared fixtures for the benchmark suite.

use optseq::spaces::{OrliczGenerator, WeightGenerator};
use optseq::{FiniteSeq, SpaceDescriptor};

/// Deterministic quasi-random vector in `(0, 1]^n`.
pub fn sample_vector(n: usize) -> FiniteSeq {
    let mut state = 0x9e3779b97f4a7c15u64;
    let entries = (0..n)
        .map(|_| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64).max(1e-6)
        })
        .collect();
    FiniteSeq::new(entries).unwrap()
}

pub fn bench_spaces() -> Vec<SpaceDescriptor> {
    vec![
        SpaceDescriptor::lp(2.0).unwrap(),
        SpaceDescriptor::lpq(2.0, 1.0).unwrap(),
        SpaceDescriptor::lorentz(1.0, WeightGenerator::inv_log()).unwrap(),
        SpaceDescriptor::orlicz(OrliczGenerator::power_log(2.0, 1.0).unwrap()).unwrap(),
    ]
}
