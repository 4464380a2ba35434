//! Rank-two bundles on Hirzebruch surfaces and the threefold scrolls they embed.
//!
//! A family member is fixed by `(e, b, t)`. The bundle `E` on `F_e` is an
//! extension of `O(3C0 + (3e+6+t)f)` by `O(C0 + bf)` with the Chern data of
//! `O(3C0 + (3e+5+t)f) ⊕ O(C0 + (b+1)f)`. Its projectivisation embeds by the
//! tautological bundle as a scroll `X ⊂ P^n`.
//!
//! Modules, from the bottom up:
//!
//! - [`surface_lattice`]: divisor classes, intersections and line bundle
//!   cohomology on `F_e`, with a lattice-point oracle.
//! - [`bundle_family`]: parameter validation, Chern data, uniformity and the
//!   cohomology of `E` and `Sym²E(−c1)`.
//! - [`chow_ring`]: the Chow ring of `P(E)` and the intersection numbers of `X`.
//! - [`scroll_invariants`]: `n`, the degree and the Hilbert polynomial.
//! - [`hilbert_component`]: normal bundle, tangent cohomology and the
//!   dimension of the Hilbert scheme component.
//! - [`verify`]: the grid-wide identity suite.
//!
//! Everything is generic over a signed primitive integer; every operation is
//! checked and overflow surfaces as [`Error::Overflow`]. Aliases for `i64` and
//! `i128` are provided below.
//!
//! ```
//! use hirzebruch::{component_dimension, FamilyParams64};
//!
//! let params = FamilyParams64::new(2, 7, 0)?;
//! let report = component_dimension(&params)?;
//! assert_eq!(report.n, 51);
//! assert_eq!(report.dim_component, Some(2690));
//! # Ok::<(), hirzebruch::Error>(())
//! ```

pub mod bundle_family;
pub mod chow_ring;
pub mod error;
pub mod hilbert_component;
pub mod scalar;
pub mod scroll_invariants;
pub mod surface_lattice;
pub mod verify;

pub use bundle_family::{ChernData, ExtensionData, FamilyParams, SplitBundle, UniformityEvidence};
pub use chow_ring::{
    intersection_numbers, ChowClass, IntersectionNumbers, ScrollContext, TangentChern,
};
pub use error::{Error, ParamViolation, Result};
pub use hilbert_component::{
    check_hypotheses, chi_normal, chi_tangent_relative, component_dimension, normal_bundle_chern,
    scroll_locus_codim, surface_tangent_cohomology, tangent_cohomology, HilbertReport,
    HypothesisFlags, NormalChern, TangentCohomology,
};
pub use scalar::Int;
pub use scroll_invariants::{
    embedding_dimension, hilbert_polynomial, scroll_degree, scroll_report, vanishing_report,
    RationalCubic, ScrollReport,
};
pub use surface_lattice::{CohomologyTable, DivisorClass, Surface};
pub use verify::{family_grid, Fault, Suite, Summary};

pub type Surface64 = Surface<i64>;
pub type DivisorClass64 = DivisorClass<i64>;
pub type CohomologyTable64 = CohomologyTable<i64>;
pub type FamilyParams64 = FamilyParams<i64>;
pub type ChowClass64 = ChowClass<i64>;
pub type ScrollContext64 = ScrollContext<i64>;
pub type RationalCubic64 = RationalCubic<i64>;
pub type ScrollReport64 = ScrollReport<i64>;
pub type HilbertReport64 = HilbertReport<i64>;

pub type Surface128 = Surface<i128>;
pub type DivisorClass128 = DivisorClass<i128>;
pub type CohomologyTable128 = CohomologyTable<i128>;
pub type FamilyParams128 = FamilyParams<i128>;
pub type ChowClass128 = ChowClass<i128>;
pub type ScrollContext128 = ScrollContext<i128>;
pub type RationalCubic128 = RationalCubic<i128>;
pub type ScrollReport128 = ScrollReport<i128>;
pub type HilbertReport128 = HilbertReport<i128>;
