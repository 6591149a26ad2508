//! The Vaughan-type identity for ζ′/ζ, the nine-fold dyadic decomposition of
//! a₂, divisor splitting, Perron truncation, the A/B factorization plan and a
//! numerical monitor for the hybrid large sieve.

mod decomposition;
mod identity;
mod perron;
mod plan;
mod sieve;
mod split;

pub use decomposition::{
    decompose_a2, reconstruct, term_convolution, DecompositionTerm, Slot, SlotFn, SLOT_FUNCTIONS,
};
pub use identity::{vaughan_rhs_coefficients, verify_vaughan, VaughanConfig, VaughanReport};
pub use perron::{perron_truncation, perron_check, PerronCheck};
pub use plan::{build_dyadic_plan, default_eta, FactorRoute, DyadicPlan, PlanBounds};
pub use sieve::{
    hybrid_large_sieve_monitor, primitive_band, s_qxd_bruteforce, s_qxd_from_table, sieve_trials,
    SieveMonitorReport,
};
pub use split::{ordered_factorizations, split_by_divisor, SplitReport};

/// Largest table length any routine here will allocate.
pub const TABLE_BUDGET: usize = 20_000_000;
