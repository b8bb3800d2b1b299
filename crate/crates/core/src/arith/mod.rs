//! Exact integer primitives on `i128`.

mod factor;
mod montgomery;
mod prime;
mod roots;

pub use factor::{factor, gcd, is_squarefree, valuation, Factorization, PrimePower};
pub use prime::is_prime;
pub use roots::{icbrt, is_perfect_cube, is_perfect_square, isqrt};
