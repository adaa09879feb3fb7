//! The eight calculations, each run on the exact bundle partition and
//! summarized in a [`CalcReport`].
//!
//! * Calculations 1–2: the reflection symmetries `μ` and `ν` conjugate `F`
//!   to `F⁻¹`, checked on intersecting pieces and a lattice grid.
//! * Calculations 3–4 and 5, 7: the renormalization maps `φ` and `ω`
//!   conjugate `F` to a first-return map; see [`ReturnOrbitTable`].
//! * Calculations 6 and 8: inspections of the period-2 tiles and the sets
//!   next to them.
//!
//! [`replay`] cross-checks the conjugacies directly on planar orbits.

mod calc12;
mod calc34;
mod calc57;
mod calc68;
mod chain;
mod error;
mod fiber;
pub mod replay;
mod report;

pub use calc12::{calc1, calc2};
pub use calc34::{calc3, calc4};
pub use calc57::{calc5, calc7, Modular};
pub use calc68::{calc6, calc8, z_star};
pub use chain::{Direction, Half, ReturnOrbitRow, ReturnOrbitTable};
pub use error::CalcError;
pub use fiber::{covered_by, fiber, fiber_of_bundle, segment_covered};
pub use report::CalcReport;

use bundle::Bundle;

/// Runs calculations 1–8 in order.
pub fn run_all(b: &Bundle) -> Result<Vec<CalcReport>, CalcError> {
    Ok(vec![calc1(b)?, calc2(b)?, calc3(b)?, calc4(b)?, calc5(b)?, calc6(b)?, calc7(b)?, calc8(b)?])
}

/// Runs one calculation by number.
pub fn run(b: &Bundle, id: u8) -> Result<CalcReport, CalcError> {
    match id {
        1 => calc1(b),
        2 => calc2(b),
        3 => calc3(b),
        4 => calc4(b),
        5 => calc5(b),
        6 => calc6(b),
        7 => calc7(b),
        8 => calc8(b),
        _ => Err(CalcError::Unknown(id)),
    }
}
