//! Exact minimal log discrepancies of Q-factorial toric varieties.
//!
//! The crate is organized bottom-up:
//!
//! * [`exactmath`]: big rationals, matrices, Hermite and Smith normal forms.
//! * [`lattice`]: finite overlattices `N ⊇ Z^d` and their quotient groups.
//! * [`toric`]: simplicial fans and the piecewise-linear log discrepancy.
//! * [`mld`]: minimal log discrepancy by parallelepiped enumeration, with an
//!   independent brute-force scan.
//! * [`mfs`]: toric Mori fiber spaces in normal form, the generic fiber and
//!   the `1/(l⁴+1)` example family.
//! * [`witness`]: the Dirichlet box search lifting a small discrepancy on the
//!   base to one on the total space, and the effective `δ(ε)` estimate.
//!
//! No floating point is used in any computation; `f64` only appears in
//! approximate summary values.

pub mod exactmath;
pub mod lattice;
pub mod mfs;
pub mod mld;
pub mod toric;
pub mod witness;

mod error;

pub use error::Error;
pub use exactmath::{BigInt, IntMat, Rat, RatMat};
pub use lattice::{quotient_reps, Lattice, QuotientGroup};
pub use mfs::{
    example_family, generic_fiber, generic_fiber_group, make_mfs, sweep_family, validate, Check,
    FiberData, SweepRow, ToricMfs, ValidationReport,
};
pub use mld::{cyclic_quotient, mld, mld_bruteforce, mld_cyclic, MldMethod, MldResult, DEFAULT_GUARD};
pub use toric::{Fan, LogDiscrepancy, SimplicialCone, ToricVariety};
pub use witness::{
    check_eps_delta, dirichlet_pair, effective_delta, find_witness, lift_to_x, EffectiveDelta,
    EpsDeltaCertificate, RootBound, WitnessReport,
};

pub type Result<T, E = Error> = std::result::Result<T, E>;
