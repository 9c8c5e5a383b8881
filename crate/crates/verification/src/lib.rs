//! Holds the `acceptance` test target, which checks the workspace end to end
//! and prints one PASS/FAIL line per criterion. Run it with
//! `cargo test -p tau-verification --test acceptance`.
