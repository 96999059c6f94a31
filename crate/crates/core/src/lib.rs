//! Numerical toolkit for symmetric sequence spaces and their optimal upper
//! and lower companion spaces.
//!
//! The crate evaluates norms for the concrete families `l_p`, `l_{p,q}`,
//! Lorentz `lambda_q(w)` and Orlicz `l_N`, computes fundamental functions,
//! dilation functions and fundamental indices, estimates the
//! finite-dimensional optimal-space norms by derivative-free search over
//! disjoint block configurations, and mechanically checks the classification
//! criteria that identify the optimal spaces for each family.

pub mod criteria;
pub mod error;
pub mod fundidx;
pub mod optimal;
pub mod seq;
pub mod spaces;
pub mod verify;

pub use error::{Error, Result};
pub use seq::{rearrange, tensor, tensor_blocks, top_k_products, FiniteSeq, RearrangedSeq};
pub use spaces::{OrliczGenerator, SpaceDescriptor, WeightGenerator};

#[cfg(test)]
mod thread_safety {
    use super::*;

    fn assert_send_sync<T: Send + Sync>() {}

    #[test]
    fn shared_types_are_send_sync() {
        assert_send_sync::<SpaceDescriptor>();
        assert_send_sync::<WeightGenerator>();
        assert_send_sync::<OrliczGenerator>();
        assert_send_sync::<FiniteSeq>();
    }
}
