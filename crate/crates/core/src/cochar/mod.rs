//! Cocharacter side: partitions, tableaux, symmetrizers and explicit witnesses.

pub mod partition;
pub mod tableau;
pub mod theta;
pub mod multiplicity;
pub mod witness;

pub use partition::{all_partitions, dim_bounds, enumerate_partitions, hook_dim, DimBounds, LinearForm, Partition, PartitionConstraints};
pub use tableau::{apply_symmetrizer, AltBlock, AlternatingProduct, Convention, GradedPolynomial, Multilinear, SymmetrizerValue, TaggedMonomial, YoungTableau};
pub use witness::{build_witness, canonical_beta, multiplicity_nonzero_certificate, BetaDecomposition, Construction, NonzeroCertificate, Variant, Witness};
pub use multiplicity::{alternation_vanishing_check, multiplicity_exact, multiplicity_exact_capped, AlternationReport, DEFAULT_MULTIPLICITY_MAX_N};
pub use theta::{theta, theta_scan, ThetaScan, ThetaViolation};
