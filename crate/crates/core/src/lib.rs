//! Persistent homology over F₂, from data to barcodes.
//!
//! The pipeline has three stages:
//!
//! 1. **Data to filtered complex.** [`builders`] turns point clouds, distance matrices and
//!    weighted networks into Vietoris–Rips, Čech, witness and weight-rank clique
//!    filtrations; [`cubical`] turns grey-scale images into filtered cubical complexes.
//! 2. **Filtered complex to barcode.** [`complex::boundary_matrix`] assembles the F₂
//!    boundary matrix, [`reduction`] reduces it with the standard, twist or dual algorithm
//!    and reads off the intervals.
//! 3. **Comparing barcodes.** [`diagrams`] holds persistence diagrams with the bottleneck
//!    and p-Wasserstein distances, plus SVG output.
//!
//! [`datasets`] generates seeded synthetic inputs, [`io`] reads and writes the plain-text
//! formats, and [`bench`] and [`cli`] drive everything from the command line.
//!
//! ```
//! use phkit::complex::make_complex;
//! use phkit::reduction::{compute_barcode, Algorithm};
//!
//! let triangle = make_complex(vec![
//!     (vec![0], 1.0),
//!     (vec![1], 2.0),
//!     (vec![2], 2.0),
//!     (vec![0, 1], 2.0),
//!     (vec![0, 2], 3.0),
//!     (vec![1, 2], 3.0),
//!     (vec![0, 1, 2], 4.0),
//! ])
//! .unwrap();
//! let barcode = compute_barcode(&triangle, Algorithm::Twist, true);
//! assert_eq!(barcode.pairs_in_dim(0), vec![(1.0, f64::INFINITY), (2.0, 3.0)]);
//! assert_eq!(barcode.pairs_in_dim(1), vec![(3.0, 4.0)]);
//! ```

pub mod bench;
pub mod builders;
pub mod cli;
pub mod complex;
pub mod cubical;
pub mod datasets;
pub mod diagrams;
pub mod error;
pub mod io;
pub mod pipeline;
pub mod reduction;

pub use complex::{boundary_matrix, euler_characteristic, make_complex, FilteredComplex, Simplex, SparseF2Matrix};
pub use error::{Error, Result};
pub use reduction::{betti_numbers, compute_barcode, extract_barcode, Algorithm, Barcode, Interval, ReductionState};
