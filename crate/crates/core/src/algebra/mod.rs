//! Exact algebra: dense matrices and polynomials over a generic scalar,
//! integer normal forms, irreducibility over `Q`, and certified complex roots.

mod factor;
mod matrix;
mod modp;
mod normal_form;
mod poly;
mod roots;

pub use factor::{is_irreducible_q, irreducibility, mignotte_bound, IrreducibilityCertificate};
pub use matrix::{parse_matrix, Matrix};
pub use normal_form::{column_echelon, hermite_normal_form, integer_kernel, smith_normal_form, ColumnEchelon, SnfDecomposition};
pub use poly::{char_poly, minimal_denominator, parse_polynomial, primitive_integer_clearing, Polynomial};
pub use roots::{complex_roots, CertifiedRoot, ComplexRational};
