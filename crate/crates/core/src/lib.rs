//! Exact topology of moduli spaces of vortex-type pairs `(L, α)` on a compact
//! Riemann surface: a line bundle `L` of degree `d` together with a nonzero
//! holomorphic section of `L ⊗ E` up to scale, for a rank-`N` bundle `E` of
//! degree `D`.
//!
//! Everything is computed with exact rationals. The crate is layered:
//!
//! - [`combinatorics`]: generalized binomials, the binomial tail sums `Λ(g, n)`,
//!   Todd series coefficients.
//! - [`ring`] and [`surface`]: sparse graded-commutative rings, in particular
//!   `H*(X)`, `H*(J)`, `H*(X × J)` and the polynomial model `Q[Θ, ξ]`.
//! - [`charclass`]: Chern classes, Chern characters, Todd classes, twists,
//!   duals and exterior powers of virtual bundles.
//! - [`projective`]: the cohomology of the projectivized stabilized index
//!   bundle and its pushforward to the Jacobian.
//! - [`index`]: the families-index computation of the Chern data of the
//!   Dolbeault index bundle and of the (stable) tangent bundle.
//! - [`moduli`]: dimension, Euler characteristic, Betti and Hodge numbers.
//! - [`report`] and [`verify`]: the machinery behind the command-line tool.
//!
//! Most quantities are produced along two independent routes; a disagreement
//! surfaces as [`Error::Consistency`].
//!
//! ```
//! use moduli_topology::{moduli, ModuliParams};
//!
//! // N = 2, D = 0, genus 2, degree 1: a curve of genus 5
//! let params = ModuliParams::new(2, 2, 0, 1).unwrap();
//! assert_eq!(moduli::dimension(&params), 1);
//! assert_eq!(moduli::euler_characteristic(&params).unwrap(), (-8).into());
//! let betti = moduli::betti_table(&params).unwrap();
//! assert_eq!(betti.values(), &[1.into(), 10.into(), 1.into()]);
//! ```

pub mod charclass;
pub mod combinatorics;
pub mod error;
pub mod index;
pub mod moduli;
pub mod params;
pub mod projective;
pub mod report;
pub mod ring;
pub mod series;
pub mod surface;
pub mod verify;

pub use combinatorics::Rational;
pub use error::{Error, Result};
pub use params::ModuliParams;
pub use ring::{GradedClass, RingModel};
