//! Matrix-level calculus over `Q` with a `p`-adic absolute value: minors,
//! the open-cell functions `alpha_k`/`beta_l`, valuation recovery, the
//! kernel `|K|`, the minor expansion and the Gauss shell integral.
//!
//! The residue cardinality `q` is taken equal to `p`.

mod cell;
mod checks;
mod gauss;
mod matrix;
mod valued;

pub use cell::{
    abs_cell_kernel, alpha_k, beta_l, factor_valuations, random_open_cell, random_torus, random_unipotent,
    CellFactorization, CellKernel, OpenCellSample, UnipotentPart,
};
pub use checks::{kernel_from_torus, verify_cells, CellReport, PropertyCheck};
pub use gauss::{gauss_shell, gauss_shell_character_sum};
pub use matrix::{minor_expansion_check, RootKind, SympMatrix, EXPANSION_SIZE_LIMIT};
pub use valued::{fractional_part, valuation, PValued};
