//! Exact-arithmetic workbench for invariant rings of finite matrix groups.
//!
//! The library computes, over ℤ, cyclotomic orders ℤ[ζ_p], and F_p[t]
//! (optionally localized at a designated prime):
//!
//! * integer/PID normal forms (Hermite, Smith) and lattice kernels,
//! * finite matrix groups and their action on graded pieces of A[X_1..X_n],
//! * degreewise invariants, Hilbert functions and Molien series,
//! * graded group cohomology via the 2-periodic complex (cyclic groups)
//!   and crossed homomorphisms (small general groups),
//! * Cohen-Macaulay certification by freeness over a Noether
//!   normalization cross-checked against the depth-of-H^1 criterion,
//! * simultaneous diagonalization of order-p matrices over a DVR and the
//!   explicit coboundary construction.
//!
//! All arithmetic is exact; there is no floating point anywhere.

pub mod cm_certify;
pub mod coeff_rings;
pub mod cohomology;
pub mod diagonalize;
pub mod error;
pub mod exact_linalg;
pub mod group_action;
pub mod invariants;
pub mod polynomial;
pub mod ring_matrix;
pub mod verify;

pub use error::Error;
