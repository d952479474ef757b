//! Jones polynomials of homogeneous braid closures `s1^m1 s2^m2 ... s(n-1)^m(n-1)`
//! computed in polynomial time as a Kasteleyn determinant of the balanced
//! overlaid Tait graph, with spanning-tree, perfect-matching and state-sum
//! cross-checks, plus recursive Kauffman polynomials of (2, q) torus links.
//!
//! ```
//! use braid_dimer::{braid::BraidWord, dimer::jones_via_det};
//!
//! let trefoil = BraidWord::parse("s1^3", None).unwrap();
//! assert_eq!(jones_via_det(&trefoil).unwrap().to_string(), "A^-4 + A^-12 - A^-16");
//! ```

pub mod activity;
pub mod braid;
pub mod cli;
pub mod diagram;
pub mod dimer;
pub mod kauffman;
pub mod laurent;
pub mod oracle;
pub mod overlay;
pub mod tait;
mod unionfind;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Braid(#[from] braid::BraidError),
    #[error(transparent)]
    Activity(#[from] activity::ActivityParseError),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Overlay(#[from] overlay::OverlayError),
    #[error(transparent)]
    Dimer(#[from] dimer::DimerError),
    #[error(transparent)]
    Kauffman(#[from] kauffman::KauffmanError),
    #[error(transparent)]
    Oracle(#[from] oracle::OracleError),
    #[error("{0}")]
    Usage(String),
    #[error("methods disagree on {0}")]
    Mismatch(String),
}

impl Error {
    /// Process exit status: 1 for bad input, 2 for words outside the supported
    /// family, 3 when a resource cap is hit, 4 when cross-checks disagree.
    pub fn exit_code(&self) -> i32 {
        use dimer::DimerError as D;
        use oracle::OracleError as O;
        match self {
            Error::Braid(_) | Error::Activity(_) | Error::Laurent(_) | Error::Kauffman(_) | Error::Usage(_) => 1,
            Error::Dimer(D::UnsupportedWord(_)) | Error::Diagram(_) | Error::Overlay(_) => 2,
            Error::Dimer(D::Diagram(_)) | Error::Dimer(D::Overlay(_)) | Error::Oracle(O::Diagram(_)) => 2,
            Error::Oracle(_) => 3,
            Error::Dimer(_) | Error::Mismatch(_) => 4,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
