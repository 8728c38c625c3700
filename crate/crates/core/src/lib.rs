//! Nilpotent orbits of `so_N` and `sp_N`, their codimension-2 degenerations
//! and the singularities of universal equivariant covers along them.
//!
//! Orbits are named by partitions. From a partition the crate computes
//! dimensions, `π₁^G`, second cohomology, the Kraft-Procesi type of every
//! codimension-2 degeneration, Lusztig-Spaltenstein induction data and the
//! Namikawa dimensions of `Spec C[O]` and `Spec C[Õ]`.
//!
//! ```
//! use nilcover::{Algebra, Orbit};
//! use nilcover::cover::cover_report;
//!
//! let o = Orbit::new(Algebra::sp(22), "4,4,4,2,2,2,2,2".parse()?)?;
//! let report = cover_report(&o)?;
//! let leaf = report.leaves.iter().find(|l| l.q == 3).unwrap();
//! assert_eq!(leaf.cover.to_string(), "A1");
//! assert!(leaf.etale);
//! # Ok::<(), nilcover::Error>(())
//! ```
//!
//! The [`oracle`] module holds brute-force versions of the combinatorics and
//! a suite that cross-checks the fast paths against them.

pub mod cli;
pub mod cover;
pub mod degeneration;
pub mod error;
pub mod induction;
pub mod oracle;
pub mod orbit;
pub mod partition;

pub use error::{Error, Result};
pub use orbit::Orbit;
pub use partition::{Algebra, Partition, Series};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    mod partitions {}
    #[doc = include_str!("../../../book/src/orbits.md")]
    mod orbits {}
    #[doc = include_str!("../../../book/src/degenerations.md")]
    mod degenerations {}
    #[doc = include_str!("../../../book/src/induction.md")]
    mod induction {}
    #[doc = include_str!("../../../book/src/covers.md")]
    mod covers {}
    #[doc = include_str!("../../../book/src/checking.md")]
    mod checking {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
