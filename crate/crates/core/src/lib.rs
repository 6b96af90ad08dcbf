//! Exact recurrence coefficients for the extended q-Hahn class of
//! q-orthogonal polynomial sequences.
//!
//! A sequence in the class is fixed by parameters `(q, y, d1, d2, d3, α₁)`.
//! [`coeffs`] turns them into the recurrence coefficients `α_k`, `β_k`,
//! `σ_k` and the constants `σ₀²`, `t`; [`qmatrix`] checks those tables
//! against the defining quadratic matrix equation and against orthogonality;
//! [`families`] maps classical families onto the parameters. All arithmetic
//! is exact, see [`exactfield`].

pub mod cli;
pub mod coeffs;
pub mod exactfield;
pub mod families;
pub mod qmatrix;
pub mod ratfunc;
