//! Shared numerical kernels: quadrature rules, tridiagonal eigenproblems,
//! cancellation-safe elementary expressions, sphere averages, and
//! convergence-fit helpers.

pub mod fit;
pub mod legendre;
pub mod sphere;
pub mod stable;
pub mod tridiag;
