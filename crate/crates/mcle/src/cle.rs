//! CLE exploration (stub).
