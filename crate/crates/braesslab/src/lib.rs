//! Exact arithmetic for Kemeny's constant on random walks over undirected
//! graphs, and for the Braess paradox that adding an edge can *slow* the
//! walk down.
//!
//! The numerical spine is integer spanning-forest combinatorics: κ(G) =
//! dᵀFd/(4mτ) where F counts separating 2-forests and τ spanning trees.
//! On top of that sit an exact Braess-edge scanner, a polynomial criterion
//! for when closing a pair of pendent paths is paradoxical, finite-range
//! threshold certification over graph families, and brute-force enumeration
//! oracles that cross-check every pipeline on small graphs.
//!
//! All verdict-bearing quantities are `BigRational`; floating point appears
//! only in the spectral cross-check and display formatting.

pub mod asymptotics;
pub mod braess;
pub mod cli;
pub mod error;
pub mod exact;
pub mod forest;
pub mod graph;
pub mod kemeny;
pub mod oracle;

pub use braess::{
    big_phi, braess_scan, braess_scan_sequential, is_paradoxical_at, phi_v, BraessScanResult,
    ParadoxEvidence, PhiBreakdown, ScanEntry,
};
pub use error::{Error, Result};
pub use exact::{Int, Rat};
pub use graph::{Graph, TwinPathSpec};
pub use kemeny::{kemeny_constant, kemeny_mfpt, kemeny_spectral, KemenyValue};
