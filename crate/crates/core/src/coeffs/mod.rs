//! Exact arithmetic in the coefficient field `Q(q, r, s)` (extended by the
//! free scalars `alpha`, `beta` used for candidate maps).

mod poly;
mod ratfunc;

pub use poly::{gcd, grlex_cmp, Exponents, Poly, Var, NUM_VARS};
pub use ratfunc::{binomial, check_q_admissible, q_bracket, q_pow, Point, RatFunc};
