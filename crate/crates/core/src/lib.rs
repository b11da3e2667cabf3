//! Exact computer algebra for quommutator deformations of `osp(2,2)` and
//! `osp(1,2)`: relation tables, a normal-ordering rewrite engine, and
//! finite-difference matrix representations.

pub mod algebra;
pub mod element;
pub mod expr;
pub mod linalg;
pub mod matrix;
pub mod qcalc;
pub mod rep;
pub mod report;
pub mod rewrite;

pub mod scalar;
