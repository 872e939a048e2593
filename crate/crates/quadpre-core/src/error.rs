//! Error type shared by all modules of the crate.

use alloc::boxed::Box;
use alloc::string::String;

/// Crate-wide result alias.
pub type Result<T> = core::result::Result<T, Error>;

/// Failure modes of the exact and certified computations.
///
/// The variants separate resource exhaustion (caps chosen by the caller)
/// from genuine numerical breakdown, because callers react differently:
/// a cap can be raised, while a certification failure means the produced
/// numbers must not be trusted.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// A construction would exceed the configured polynomial degree cap.
    DegreeCapExceeded { required: u64, cap: u64 },
    /// A depth parameter (preperiod plus period) exceeds the configured cap.
    DepthCapExceeded { requested: u32, cap: u32 },
    /// An argument violates a mathematical precondition of the operation.
    DomainViolation(String),
    /// Malformed input, such as an unparseable sign sequence.
    InvalidInput(String),
    /// An interval endpoint is a root of the (squarefree part of the)
    /// polynomial; the caller must perturb the endpoint and retry.
    EndpointIsRoot { which: &'static str },
    /// A bisection bracket or sign change that theory guarantees was not
    /// observed numerically; results would be meaningless.
    NumericalBreakdown(String),
    /// The simultaneous root refinement stopped before every root was
    /// certified; the partial result is attached with per-root flags.
    UncertifiedRoots(Box<crate::roots::RootSet>),
    /// A computation was declined because no terminating strategy applies
    /// within the configured resource limits.
    ResourceLimit(String),
}

impl core::fmt::Display for Error {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Error::DegreeCapExceeded { required, cap } => {
                write!(f, "degree {required} exceeds the configured cap {cap}")
            }
            Error::DepthCapExceeded { requested, cap } => {
                write!(f, "depth k+p = {requested} exceeds the configured cap {cap}")
            }
            Error::DomainViolation(msg) => write!(f, "domain violation: {msg}"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::EndpointIsRoot { which } => {
                write!(
                    f,
                    "interval endpoint ({which}) is a root of the squarefree part; perturb it"
                )
            }
            Error::NumericalBreakdown(msg) => write!(f, "numerical breakdown: {msg}"),
            Error::UncertifiedRoots(set) => write!(
                f,
                "root refinement left {} of {} roots uncertified",
                set.uncertified_count(),
                set.total_multiplicity()
            ),
            Error::ResourceLimit(msg) => write!(f, "resource limit: {msg}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
