//! Exact-arithmetic toolkit for smooth toric fourfolds and their blow-ups:
//! fans, intersection numbers, Riemann–Roch, split projective bundles over
//! P², blow-up invariant updates, and a verified catalog of the Fano
//! fourfolds with Picard number 5 and Lefschetz defect 3.

pub mod blowup;
pub mod bundle;
pub mod catalog;
pub mod chow;
pub mod error;
pub mod fan;
mod linalg;

pub use error::{Error, Result};
pub use fan::{Cone, Fan, FanValidation, LatticeVector, SplitBundleFan};

#[cfg(test)]
mod tests {
    fn assert_send_sync<T: Send + Sync>() {}

    // all values are immutable after construction and safe to share
    #[test]
    fn values_are_shareable_across_threads() {
        assert_send_sync::<crate::Fan>();
        assert_send_sync::<crate::SplitBundleFan>();
        assert_send_sync::<crate::chow::DivisorClass>();
        assert_send_sync::<crate::chow::CurveClassVector>();
        assert_send_sync::<crate::bundle::BundleRing>();
        assert_send_sync::<crate::bundle::RingElement>();
        assert_send_sync::<crate::blowup::FourfoldInvariants>();
        assert_send_sync::<crate::catalog::ConstructionRecipe>();
    }
}
