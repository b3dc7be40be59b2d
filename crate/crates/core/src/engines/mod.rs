//! Generating-function constructions: recursion tables, closed forms,
//! column and diagonal generating functions, continued fractions, and
//! residual checkers for the identities relating them.

pub mod closed;
pub mod column;
pub mod contfrac;
pub mod diagonal;
pub mod table;

pub use closed::{explicit_gf, f0_closed, functional_residual, functional_residual_of};
pub use column::{column_gf, column_gfs, theorem1_residual, theorem1_residual_of};
pub use contfrac::{
    contfrac_gf, contfrac_gf_depth, mixed_height_gf, mixed_height_schedule, oddheight_gf,
    oddheight_schedule, peakfree_gf, peakfree_schedule, plateau_schedule, uhd_uhhd_gf,
    uhd_uhhd_schedule, ClosedFormCheck, CorrectionSchedule, SpecialGf,
};
pub use diagonal::{
    diagonal_gf, difdif_residual, difdif_residual_of, theorem2_residual, theorem2_residual_of,
    RationalFn,
};
pub use table::{base_column, base_column_noplats, table_from_recursion, PlateauTable};
