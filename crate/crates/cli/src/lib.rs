//! Harness logic behind the `eftspan` binary: command drivers and the
//! parameter sweep. Kept as a library so integration tests can drive the
//! same code paths the binary uses.

pub mod commands;
pub mod sweep;

/// Process exit codes shared by all subcommands.
pub mod exit {
    pub const OK: i32 = 0;
    pub const VERIFICATION_FAILURE: i32 = 1;
    pub const INPUT_ERROR: i32 = 2;
    pub const BUDGET_REFUSAL: i32 = 3;
}

/// Maps an error to the exit code contract: budget refusals are 3,
/// everything else is an input/usage error.
pub fn error_exit_code(e: &eftspan_core::Error) -> i32 {
    match e {
        eftspan_core::Error::BudgetExceeded { .. } => exit::BUDGET_REFUSAL,
        _ => exit::INPUT_ERROR,
    }
}
