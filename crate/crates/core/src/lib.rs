//! Exact computer algebra in prime characteristic.
//!
//! The crate computes Frobenius trace images and `p^e`-th roots of ideals,
//! truncated test ideals `τ(I^t)`, ν-invariants and F-pure-threshold bounds
//! over `F_p[x_1, ..., x_n]`, builds first generic links
//! `J = (g_1, ..., g_c) : IS`, and checks the structural identities relating
//! the parameter test submodule of `S/J` to `τ(I^c)`.
//!
//! Everything is exact: coefficients live in `F_p` and ideal comparisons go
//! through reduced Gröbner bases.
//!
//! ```
//! use fptool::ring::RingContext;
//! use fptool::groebner::Ideal;
//! use fptool::frobenius::{pe_root, FrobeniusLevel};
//!
//! let r = RingContext::grevlex(2, &["x", "y"]).unwrap();
//! let i = Ideal::parse("x^2*y, x*y^2", &r).unwrap();
//! let root = pe_root(&i, FrobeniusLevel::new(2, 1).unwrap()).unwrap();
//! assert!(root.equals(&Ideal::parse("x, y", &r).unwrap()).unwrap());
//! ```

pub mod cli;
pub mod error;
pub mod frobenius;
pub mod fsing;
pub mod groebner;
pub mod linkage;
pub mod report;
pub mod ring;

pub use error::{Error, Result};
