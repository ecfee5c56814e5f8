//! Exact-arithmetic toolkit for volumes of height balls: Igusa-type zeta
//! functions over local fields, Clemens complexes of boundary divisors,
//! pole/leading-coefficient extraction, and the Tauberian machinery turning
//! pole data into `V(B) ~ Theta * B^a * (log B)^k` asymptotics.
//!
//! Everything that can be exact is exact: rationals are arbitrary precision,
//! zeta functions of good-reduction data are factored rational functions in
//! `T = q^(-s)`, and leading constants are kept symbolically as
//! `rational * q^r * (log q)^k * pi^m`. Floating point appears only in
//! quadrature, truncated Euler products, and final numeric reports.

pub mod arith;
pub mod rational;
pub mod structured;
pub mod poly;
pub mod quadrature;
pub mod ratfun;
pub mod localzeta;
pub mod galois;
pub mod pointcount;
pub mod clemens;
pub mod denef;
pub mod tauber;
pub mod intlin;
pub mod toric;
pub mod rootdata;
pub mod heights;

pub use rational::{rat, rat_from_str, rat_int, rat_to_string, Rat};
pub use structured::{structured_eval, structured_mul, StructuredConstant};
pub use poly::{Polynomial, PowerSeries};
pub use ratfun::{DenFactor, RatFun};
