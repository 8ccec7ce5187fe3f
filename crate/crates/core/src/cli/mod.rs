//! File formats and command implementations behind the `entpow` binary.

pub mod eval;
pub mod format;
pub mod sweep;
pub mod verify;

pub use eval::render_report;
pub use format::{parse_operator_file, serialize_operator, FormatError, OperatorFile};
pub use sweep::{sweep_csv, sweep_rows, write_sweep, Family, SweepError, SweepRow, SweepSpec};
pub use verify::{run_verify, Check, VerifyOptions};

/// Process exit status for bad input files or flags.
pub const EXIT_VALIDATION: i32 = 1;
/// Process exit status for failed checks (unitarity or verification).
pub const EXIT_CHECK_FAILED: i32 = 2;
