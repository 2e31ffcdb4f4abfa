//! Exact-arithmetic toolkit for translation tilings of convex polyhedral cones.
//!
//! * [`kernel`]: rationals, vectors, matrices, cone membership and strict
//!   supporting functionals decided by a rational simplex.
//! * [`cone`]: cones from generators, frames, faces, facets, regularity.
//! * [`slice`]: 2-D slices through 2-faces, corner-cut detection, feasible
//!   2-face search, boundary projections and slice metrics.
//! * [`tiling`]: cube tiles on `(Z+)^n`, direct-sum verification, greedy
//!   completion, rescaling of rational box tilings, facet restriction and a
//!   bounded search for local tilings of planar regions.
//! * [`selfaffine`]: self-affine systems, digit expansions, tile
//!   approximations, cube-union verdicts and corner probes.
//! * [`oracles`]: deliberately naive cross-check implementations.
//! * [`io`] and [`svg`]: JSON schemas and SVG figures used by the CLI.

pub mod cone;
pub mod io;
pub mod kernel;
pub mod oracles;
pub mod selfaffine;
pub mod slice;
pub mod svg;
pub mod tiling;

pub use cone::{Cone, ConeError, Face};
pub use kernel::{KernelError, Rational, RationalMatrix, RationalVector};
