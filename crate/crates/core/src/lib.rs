//! Lattice polytopes and the combinatorial obstructions to torically maximal
//! hypersurfaces.
//!
//! The crate computes exact lattice invariants of Newton polytopes (volumes,
//! facet areas, edge lengths, smoothness in dimension 1), runs the chain of
//! obstructions that rules out every torically maximal hypersurface except
//! the hyperplane, and scans the Gauss-map fibers of a singular example
//! family numerically.

pub mod certifier;
pub mod gauss_fiber;
pub mod intmat;
pub mod invariants;
pub mod lattice;
pub mod parse;
pub mod poly;
pub mod report;
pub mod topology;

pub use certifier::{CertificateOutcome, CertifyError, Obstruction, Verdict};
pub use gauss_fiber::FiberError;
pub use intmat::Int;
pub use invariants::InvariantError;
pub use lattice::{convex_hull, Face, LatticeError, LatticePoint, LatticePolytope};
pub use topology::TopologyError;

/// Any error raised by the crate, tagged with the module that owns it.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Certify(#[from] CertifyError),
    #[error(transparent)]
    Fiber(#[from] FiberError),
}

impl Error {
    /// `module::Variant`, naming the module where the error originates.
    pub fn qualified_name(&self) -> String {
        let (module, name) = match self {
            Error::Lattice(e) => ("lattice", e.name()),
            Error::Invariant(InvariantError::Lattice(e)) => ("lattice", e.name()),
            Error::Invariant(e) => ("invariants", e.name()),
            Error::Topology(TopologyError::Invariant(InvariantError::Lattice(e))) => {
                ("lattice", e.name())
            }
            Error::Topology(TopologyError::Invariant(e)) => ("invariants", e.name()),
            Error::Topology(e) => ("topology", e.name()),
            Error::Certify(CertifyError::Lattice(e)) => ("lattice", e.name()),
            Error::Certify(CertifyError::Invariant(e)) => {
                return Error::Invariant(e.clone()).qualified_name()
            }
            Error::Certify(CertifyError::Topology(e)) => {
                return Error::Topology(e.clone()).qualified_name()
            }
            Error::Certify(e) => ("certifier", e.name()),
            Error::Fiber(e) => ("gauss_fiber", e.name()),
        };
        format!("{module}::{name}")
    }

    /// Malformed input, as opposed to a well-formed request the mathematics
    /// rejects.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::Lattice(LatticeError::Parse(_) | LatticeError::MixedDimension(..))
                | Error::Fiber(FiberError::Parse(_))
        )
    }
}
