//! Library half of the `dcenter` command-line tool: the verification
//! checks and their machine-readable report format. The binary in
//! `main.rs` and the acceptance tests both drive the same code.

pub mod report;
pub mod verify;

/// Reads the worker bound from `DCENTER_THREADS`; unset falls back to the
/// machine's parallelism, anything unparsable is a configuration error.
pub fn thread_budget() -> Result<usize, String> {
    match std::env::var("DCENTER_THREADS") {
        Ok(raw) => match raw.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(format!("DCENTER_THREADS must be a positive integer, got {raw:?}")),
        },
        Err(std::env::VarError::NotPresent) => {
            Ok(std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
        }
        Err(err) => Err(format!("DCENTER_THREADS is not readable: {err}")),
    }
}
