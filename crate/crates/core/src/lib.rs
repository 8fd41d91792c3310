//! Signature-based Gröbner bases with the original incremental F5 algorithm over
//! `GF(p)`, instrumented so that every run can be re-checked after the fact.
//!
//! * [`poly`]: field, monomials, orders, polynomials, normal forms.
//! * [`signature`]: signatures, labeled polynomials, module vectors, admissibility.
//! * [`engine`]: the incremental F5 driver with its critical pairs, rules and reductions.
//! * [`trace`]: the event log and post-hoc checkers that replay it.
//! * [`oracle`]: representation descent over frozen bases, plus a Buchberger reference.
//! * [`cli`]: problem-file parsing and the batch front end.

pub mod cli;
pub mod engine;
pub mod oracle;
pub mod poly;
pub mod signature;
pub mod trace;
