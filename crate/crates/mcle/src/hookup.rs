//! Hookup probability (stub).
