//! Exact l∞-nearest ultrametrics and M-ultrametrics.
//!
//! Given weights on the ground set of a matroid (for phylogenetics: a
//! dissimilarity map, i.e. weights on the edges of a complete graph), the
//! crate computes the l∞ distance to the Bergman fan, the maximal closest
//! point, a finite generating set of all nearest points, its tropical
//! vertices and their topologies. All arithmetic is exact over rationals.
//!
//! ```
//! use ultranest::{nearest, GraphicMatroid, WeightVector};
//!
//! let m = GraphicMatroid::complete(&["A", "B", "C", "D"]);
//! let delta = WeightVector::from_ints(&[2, 4, 6, 8, 10, 12]);
//! let sol = nearest::solve(&m, &delta, &Default::default()).unwrap();
//! assert_eq!(sol.distance, 3.into());
//! assert_eq!(sol.vertices.len(), 3);
//! ```

pub mod bergman;
pub mod error;
pub mod io;
pub mod matroid;
pub mod nearest;
pub mod par;
pub mod phylo;
pub mod rational;
pub mod tropical;
pub mod weights;

pub use error::{Error, Result};
pub use matroid::{ElementSet, GraphicMatroid, GroundSet, Matroid};
pub use nearest::{NearestSolution, SolveOptions};
pub use par::Parallelism;
pub use phylo::DissimilarityMap;
pub use rational::Rational;
pub use weights::WeightVector;
