//! Session language, command dispatch and report emission for `lcass`.

pub mod check;
pub mod eval;
pub mod report;
pub mod syntax;

pub use check::parse_session;
pub use eval::Settings;
pub use report::{exit_code, run_session, Format, RunOutcome};
