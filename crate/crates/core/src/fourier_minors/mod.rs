//! Minors of the p×p Fourier matrix `(ω^(i·j))`, their exact determinants,
//! exhaustive non-vanishing checks, and a step-by-step kernel argument.

mod composite;
mod index_set;
mod minor;
mod trace;
mod verify;

pub use composite::{composite_counterexample, CompositeCounterexample, GaussInt, PrimeControl};
pub use index_set::{combinations, IndexSet};
pub use minor::FourierMinor;
pub use trace::{proof_trace, ProofTrace, RowResidual, SparseCycPoly, Verdict};
pub use verify::{
    verify_all_minors, Counterexample, VerificationReport, VerifyOptions, VERIFY_MAX_P,
};
