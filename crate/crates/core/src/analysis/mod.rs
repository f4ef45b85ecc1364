//! Rounding-error analysis: gamma factors, condition numbers, empirical
//! stability factors, a-posteriori bound checks and flop models.

pub mod bounds;
pub mod condition;
pub mod flops;
pub mod gamma;
pub mod stability;

pub use bounds::{bound_check, BoundReport, BoundRow, Variant};
pub use condition::{condition_table, condition_table_f64, ConditionTable, ConditionTableF64};
pub use flops::{average_ratio, flop_model, instrumented_cell_flops, CellFlops, Target};
pub use gamma::{gamma, gamma_exact};
pub use stability::{stability_factors, StabilityFactors};
