//! Heights on finite projective space `P^(d-1)(F_p)` and their use as upper
//! bounds for the minimum feedback arc set of Cayley digraphs on `F_p`.
//!
//! - [`modular`]: exact residue arithmetic, primality, canonical projective points.
//! - [`heights`]: the height function, closed-form line heights, spectra, gap scans
//!   and sum-free searches.
//! - [`cayley`]: Cayley digraphs `(F_p, E_A)`, deletion sets `B_{σ_k}`, exact
//!   feedback arc sets for small graphs, and CSS audits.

pub mod cayley;
pub mod digraph;
pub mod error;
pub mod heights;
pub mod modular;

pub use error::{Error, Result};
pub use modular::{PrimeModulus, ProjectivePoint, Residue, ResidueSet};

mod ser {
    use num_rational::Ratio;
    use serde::Serializer;

    /// Exact rationals are emitted as `"n/d"` (or `"n"` when integral).
    pub fn ratio<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }
}
