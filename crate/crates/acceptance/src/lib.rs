//! Holds no code; the checks live in the `acceptance` test target.
