//! Distance-to-leader vectors, PMI sequences and the numerical checks around
//! the controllability bound they certify.

mod kirchhoff;
mod leaders;
mod pmi;
mod rank;

pub use kirchhoff::kirchhoff_index;
pub use leaders::{distance_to_leader_vectors, leader_distance_table, DistanceToLeaderVector, LeaderSet};
pub use pmi::{
    is_pmi, pmi_exact, pmi_greedy, pmi_solvers, validate_pmi, ExactPmi, GreedyPmi, PmiCheck, PmiEntry,
    PmiSequence, PmiSolver, EXACT_PMI_MAX_DISTINCT,
};
pub use rank::{
    controllability_matrix, controllability_rank, explicit_gamma_rank, validate_ssc_bound, InputMatrix, ValidationReport,
    RANK_TOLERANCE, WEIGHT_RANGE,
};
