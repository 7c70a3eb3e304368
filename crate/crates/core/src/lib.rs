//! Exact computation of classical and dihedral invariants of hyperelliptic
//! curves, and determination of their automorphism groups.
//!
//! The crate has two independent classification routes that validate each
//! other:
//!
//! * an invariant route: transvectants of the degree `2g+2` binary form,
//!   the classical invariants built from them, and the dihedral invariants
//!   of a normal decomposition `Y^2 = F(X^n)` / `Y^2 = X F(X^n)`;
//! * a symmetry oracle: brute-force enumeration of the Moebius
//!   transformations preserving the branch-point set, with group
//!   identification by element-order census and fixed-orbit matching
//!   against the embedded registry of admissible automorphism groups.
//!
//! All symbolic computation is exact, over `Q` or a single quadratic
//! extension `Q(sqrt(m))`; the oracle falls back to certified complex balls
//! of configurable precision when branch points are not that nice.

pub mod binforms;
pub mod classify;
pub mod dihedral;
pub mod error;
pub mod exactnum;
pub mod families;
pub mod invariants;
pub mod recon;
pub mod symmetry;

pub use binforms::{BinaryForm, MoebiusMap};
pub use exactnum::{ComplexApprox, QuadExt, Rat, Scalar};
pub use families::HyperellipticCurve;
