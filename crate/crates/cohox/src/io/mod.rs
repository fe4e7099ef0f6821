//! File formats, group literals, and report rendering.

pub mod format;
pub mod literal;
pub mod report;
