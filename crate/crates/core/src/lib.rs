//! Exact combinatorics of pattern-avoiding set partitions and the
//! q-Fibonacci polynomials they generate.
//!
//! * [`poly`]: sparse Laurent polynomials in `x, y, p, q` with big-integer
//!   coefficients, the value type of every generating function here.
//! * [`combinat`]: set partitions, pattern containment, the `ls`/`rb`
//!   statistics and the bijections to integer partitions, binary words and
//!   Morse sequences.
//! * [`families`]: `A_n(q)`, `F_n(q)`, `F_n(x,y,q)`, the Carlitz and Cigler
//!   polynomials, `F_n(x,y,p,q)` and (p,)q-binomial coefficients, each
//!   buildable by recursion and by enumeration.
//! * [`lgv`]: weighted paths in the Fibonacci digraph and minors of the
//!   Toeplitz-like matrix of shifted `F_n(x,y,q)`.
//! * [`verify`]: a registry of exact identities and a runner that checks
//!   them over parameter ranges.

pub mod cli;
pub mod combinat;
pub mod config;
pub mod error;
pub mod families;
pub mod lgv;
pub mod poly;
pub mod verify;

pub use config::Ceilings;
pub use error::{Error, Result};
pub use poly::{LaurentPoly, Monomial, Var};

/// Fibonacci numbers with `F_0 = F_1 = 1`.
pub fn fibonacci(n: usize) -> num_bigint::BigInt {
    let (mut a, mut b) = (num_bigint::BigInt::from(1), num_bigint::BigInt::from(1));
    for _ in 0..n {
        let c = &a + &b;
        a = std::mem::replace(&mut b, c);
    }
    a
}

pub(crate) fn binom2(n: i64) -> i64 {
    n * (n - 1) / 2
}
