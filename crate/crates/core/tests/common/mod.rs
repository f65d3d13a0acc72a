//! Shared test support. `oracle` and `free_oracle` are independent
//! brute-force enumerators; nothing in them calls the enumeration,
//! canonicalisation or composition code under test.

#![allow(dead_code)]

pub mod free_oracle;
pub mod gen;
pub mod laws;
pub mod oracle;
