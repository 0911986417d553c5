//! Multichordal configurations (stub).
