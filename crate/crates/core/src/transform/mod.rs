//! Passing from `(C, D, Omega)` to the prime-adapted triple `(C', D', Omega')`
//! and comparing the algebras on both sides.

mod decomposition;
mod lusztig;
mod main_iso;
mod prime_triple;
mod structure;
mod tables;

pub use decomposition::{
    bimodule_decomposition, sigma_sets, BimoduleDecomposition, DecompositionChecks, SigmaSets,
};
pub use lusztig::{
    compatibility_check, lusztig_forward, lusztig_inverse, lusztig_labels,
    orientation_correspondence, CompatibilityReport, GraphWithAutomorphism, QuiverWithAutomorphism,
};
pub use main_iso::{
    auxiliary_prime, build_main_isomorphism, theorem_field, MainIsoReport, MainIsomorphism,
};
pub use prime_triple::{
    check_prime, construct_prime_triple, theta_embedding, PrimeFactoredSymmetrizer, PrimeTriple,
};
pub use structure::{
    classify_prime_triple_consistency, gcd_preserved, multiple_symmetrizer_graph,
    quadratic_compatible, sigma_cardinalities, MultipleSymmetrizerReport, TypeConsistency,
};
pub use tables::{regenerate_tables, table_report, TableInstance, TableReport, TableRow};
