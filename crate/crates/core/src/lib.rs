//! Exact construction and verification of orthogonal symmetric Jordan bases
//! for the lattice of subspaces of a finite vector space.
//!
//! Everything here is exact: subspaces are keyed by their Schubert normal
//! form, coefficients live in the cyclotomic integers `Z[ω]`, and every
//! count is an arbitrary-precision integer.
//!
//! - [`qcomb`]: q-integers, Gaussian binomials, Galois numbers.
//! - [`cyclotomic`]: the ring `Z[ω]` for a prime `p`.
//! - [`gflinalg`]: linear algebra over `F_q` and canonical subspaces.
//! - [`lattice`]: enumeration of `B_q(n)`, the up operator and formal sums.
//! - [`haction`]: the translation group acting on subspaces off the hyperplane,
//!   its characters, projections and the maps `θ` and `γ`.
//! - [`sjb`]: the inductive Jordan basis and its verifier.
//! - [`scheme`]: Grassmann scheme eigenvalues, Laplacians and tree counts.
//! - [`cli`]: the command-line front end.

pub mod cli;
pub mod cyclotomic;
pub mod error;
pub mod gflinalg;
pub mod haction;
pub mod json;
pub mod lattice;
pub mod qcomb;
pub mod report;
pub mod scheme;
pub mod sjb;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use gflinalg::{Fq, FqMatrix, Subspace};
pub use haction::{Character, GroupElement};
pub use lattice::LatticeVector;
pub use report::Report;
pub use sjb::{JordanChain, Sjb};

/// Returns true when `q` is a prime that fits the `u8` entry representation.
pub fn is_supported_prime(q: u64) -> bool {
    if !(2..=251).contains(&q) {
        return false;
    }
    (2..q)
        .take_while(|d| d * d <= q)
        .all(|d| !q.is_multiple_of(d))
}

pub(crate) fn check_prime(q: u64) -> Result<u8> {
    if is_supported_prime(q) {
        Ok(q as u8)
    } else {
        Err(Error::Unsupported(format!(
            "q must be prime (2 <= q <= 251), got {q}"
        )))
    }
}
