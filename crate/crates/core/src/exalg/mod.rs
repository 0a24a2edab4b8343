//! Exact linear algebra over the Gaussian rationals ℚ(i).

mod gaussian;
mod matrix;

pub use gaussian::{
    fmt_rational, parse_rational, rat, GaussianRational, ParseGaussianError, Rational,
};
pub use matrix::{
    add, axpy, conj_vec, coordinates, gram, in_span, inner, is_zero_vec, orthogonal_complement,
    project_onto_span, scale, span_basis, span_dim, sub, Matrix, Vector,
};

/// Kernel of `m` as a list of column vectors (reduced-echelon free-variable basis).
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    m.kernel_basis()
}

/// Solution of `m · x = b` orthogonal to `ker m`, or [`crate::Error::NotSolvable`].
pub fn solve_in_image(m: &Matrix, b: &[GaussianRational]) -> crate::Result<Vector> {
    m.solve_in_image(b)
}
