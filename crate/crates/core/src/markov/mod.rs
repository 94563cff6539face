//! Markov triples, the Springborn mediant tree of Markov fractions, and the
//! arithmetic attached to it.

mod congruence;
mod tree;
mod triple;

pub use congruence::{
    factorize, is_probable_prime, solve_by_factoring, solve_by_scan, solve_congruence,
    BRUTE_FORCE_LIMIT,
};
pub use tree::{
    check_relations, fibonacci, fibonacci_branch, fibonacci_branch_recurrence, markov_fraction, mu,
    mu_in, pell_branch, pell_pair, springborn_mediant, unicity_scan, FractionTriple,
    MarkovFraction, MarkovTree, RelationReport, TreePosition, TreeVertex, UnicityReport,
    UNICITY_MAX_DEPTH,
};
pub use triple::{generalized_enumerate, vieta_mutate, GeneralizedEquation, MarkovTriple};
