//! Document model shared by the `lefcalc` binary and its integration tests.

pub mod doc;
