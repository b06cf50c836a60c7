//! Experiment plumbing shared by the `qma-amp` binary and its tests.

pub mod compare;
pub mod report;
