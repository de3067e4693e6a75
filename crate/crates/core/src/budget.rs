use serde::{Deserialize, Serialize};

/// Resource limits shared by every exhaustive search in the crate.
///
/// Exceeding any of them is reported as an error; nothing is ever truncated
/// silently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Largest group that may be materialized from generators.
    pub max_order: usize,
    /// Partial nodes visited by a single isomorphism/automorphism search.
    pub aut_nodes: u64,
    /// Cocycles enumerated by a single Z¹ enumeration (also caps the number
    /// of amalgams listed by the oracle).
    pub cocycles: usize,
    /// Generator moves applied during a single orbit computation.
    pub orbit_moves: u64,
}

impl Budgets {
    pub const DEFAULT_MAX_ORDER: usize = 20160;
    pub const DEFAULT_AUT_NODES: u64 = 10_000_000;
    pub const DEFAULT_COCYCLES: usize = 1_000_000;
    pub const DEFAULT_ORBIT_MOVES: u64 = 10_000_000;
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_order: Self::DEFAULT_MAX_ORDER,
            aut_nodes: Self::DEFAULT_AUT_NODES,
            cocycles: Self::DEFAULT_COCYCLES,
            orbit_moves: Self::DEFAULT_ORBIT_MOVES,
        }
    }
}
