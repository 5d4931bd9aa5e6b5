//! Law reports and the verification suites.

mod report;
mod suites;

pub use report::{Checker, LawEntry, LawReport, Status, Stop};
pub use suites::{
    monad_laws, order_laws, verify_laws, verify_laws_for, LawBounds, MultFn, Suite, DEFAULT_SEED, SKOLEM_FULL_SWEEP,
    SKOLEM_SAMPLES,
};
