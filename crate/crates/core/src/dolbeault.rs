//! The complex `𝔤^{*(0,k)} ⊗ 𝔤^{1,0}` with differential `∂̄`, its adjoint,
//! Laplacian, Green's operator and harmonic representatives.
//!
//! Chain coordinates: the element `ω̄^I ⊗ X_a` (with `I` a sorted index set)
//! sits at position `a · C(n,k) + rank(I)`, where `rank` is the position of
//! `I` among the `k`-subsets in lexicographic order. The frame `{ω̄^I ⊗ X_a}`
//! is declared orthonormal.

use std::fmt;
use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::cxs::{self, ComplexFrame};
use crate::error::{Error, Result};
use crate::exalg::{self, GaussianRational as C, Matrix, Vector};

/// `k`-subsets of `{0..n}` as bit masks, in lexicographic order of their
/// sorted index tuples.
pub fn subsets(n: usize, k: usize) -> Vec<u32> {
    fn rec(n: usize, k: usize, start: usize, mask: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(mask);
            return;
        }
        for i in start..n {
            rec(n, k - 1, i + 1, mask | (1 << i), out);
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, 0, &mut out);
    }
    out
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn subset_rank(n: usize, mask: u32) -> usize {
    // lexicographic rank among subsets of the same size
    let k = mask.count_ones() as usize;
    let mut rank = 0;
    let mut prev: usize = 0;
    let mut left = k;
    let mut bits = mask;
    while bits != 0 {
        let i = bits.trailing_zeros() as usize;
        for skipped in prev..i {
            rank += binomial(n - skipped - 1, left - 1);
        }
        prev = i + 1;
        left -= 1;
        bits &= bits - 1;
    }
    rank
}

/// An element of `𝔤^{*(0,k)} ⊗ 𝔤^{1,0}` in frame coordinates.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorForm {
    n: usize,
    k: usize,
    coeffs: Vector,
}

impl VectorForm {
    pub fn zero(n: usize, k: usize) -> Self {
        Self {
            n,
            k,
            coeffs: vec![C::zero(); n * binomial(n, k)],
        }
    }

    pub fn from_coeffs(n: usize, k: usize, coeffs: Vector) -> Result<Self> {
        if coeffs.len() != n * binomial(n, k) {
            return Err(Error::Dimension(format!(
                "degree {k} vector forms need {} coefficients, got {}",
                n * binomial(n, k),
                coeffs.len()
            )));
        }
        Ok(Self { n, k, coeffs })
    }

    /// `c · ω̄^{forms} ∧ … ⊗ X_a` summed over the given terms; form indices
    /// are 0-based and need not be sorted.
    pub fn from_terms(n: usize, k: usize, terms: &[(&[usize], usize, C)]) -> Result<Self> {
        let mut out = Self::zero(n, k);
        for (forms, a, c) in terms {
            if forms.len() != k || *a >= n || forms.iter().any(|&i| i >= n) {
                return Err(Error::Dimension("term does not fit the degree".into()));
            }
            let mut mask = 0u32;
            let mut sign = 1;
            for &i in forms.iter() {
                if mask & (1 << i) != 0 {
                    sign = 0;
                    break;
                }
                // moving ω̄^i past the larger indices already present
                if (mask >> (i + 1)).count_ones() % 2 == 1 {
                    sign = -sign;
                }
                mask |= 1 << i;
            }
            if sign != 0 {
                out.add_term(*a, mask, if sign > 0 { c.clone() } else { -c });
            }
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.k
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vector {
        self.coeffs
    }

    pub(crate) fn index(&self, a: usize, mask: u32) -> usize {
        a * binomial(self.n, self.k) + subset_rank(self.n, mask)
    }

    pub fn get(&self, a: usize, mask: u32) -> &C {
        &self.coeffs[self.index(a, mask)]
    }

    pub fn add_term(&mut self, a: usize, mask: u32, c: C) {
        let idx = self.index(a, mask);
        self.coeffs[idx] += c;
    }

    /// Nonzero terms as `(a, mask, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, u32, &C)> {
        let masks = subsets(self.n, self.k);
        let per = masks.len();
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(idx, c)| (idx / per, masks[idx % per], c))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        exalg::is_zero_vec(&self.coeffs)
    }

    pub fn add(&self, other: &VectorForm) -> VectorForm {
        debug_assert_eq!((self.n, self.k), (other.n, other.k));
        Self {
            n: self.n,
            k: self.k,
            coeffs: exalg::add(&self.coeffs, &other.coeffs),
        }
    }

    pub fn sub(&self, other: &VectorForm) -> VectorForm {
        debug_assert_eq!((self.n, self.k), (other.n, other.k));
        Self {
            n: self.n,
            k: self.k,
            coeffs: exalg::sub(&self.coeffs, &other.coeffs),
        }
    }

    pub fn scale(&self, c: &C) -> VectorForm {
        Self {
            n: self.n,
            k: self.k,
            coeffs: exalg::scale(c, &self.coeffs),
        }
    }

    /// The coefficient `(0,k)`-form of `X_a`, as a frame form.
    pub fn form_part(&self, a: usize) -> cxs::InvariantForm {
        let mut out = cxs::InvariantForm::zero(self.n);
        for (b, mask, c) in self.terms() {
            if b == a {
                out = out.add(&cxs::InvariantForm::monomial(
                    self.n,
                    mask << self.n,
                    c.clone(),
                ));
            }
        }
        out
    }
}

impl fmt::Debug for VectorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for VectorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(a, mask, c)| {
                let forms: Vec<String> = (0..self.n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| format!("wb{}", i + 1))
                    .collect();
                let form = if forms.is_empty() {
                    String::new()
                } else {
                    format!("{}*", forms.join("^"))
                };
                let coeff = if c.is_one() {
                    String::new()
                } else {
                    format!("({c})*")
                };
                format!("{coeff}{form}X{}", a + 1)
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Hermitian inner product with `{ω̄^I ⊗ X_a}` orthonormal.
pub fn inner_product(mu: &VectorForm, nu: &VectorForm) -> Result<C> {
    if (mu.n, mu.k) != (nu.n, nu.k) {
        return Err(Error::Dimension(format!(
            "inner product of degree {} and degree {} forms",
            mu.k, nu.k
        )));
    }
    Ok(exalg::inner(&mu.coeffs, &nu.coeffs))
}

/// Harmonic representatives of `H^k_∂̄(𝔤^{1,0})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologySpace {
    pub degree: usize,
    pub dimension: usize,
    /// Canonical (reduced echelon, unnormalized) basis of `ker △_k`.
    pub harmonic_basis: Vec<VectorForm>,
    /// `gram[(i, j)] = ⟨β_i, β_j⟩`.
    pub gram: Matrix,
}

impl CohomologySpace {
    fn vectors(&self) -> Vec<Vector> {
        self.harmonic_basis
            .iter()
            .map(|b| b.coeffs.clone())
            .collect()
    }

    /// Orthogonal projection onto the harmonic space.
    pub fn project(&self, mu: &VectorForm) -> VectorForm {
        let coeffs =
            exalg::project_onto_span(&mu.coeffs, &self.vectors()).expect("independent basis");
        VectorForm {
            n: mu.n,
            k: mu.k,
            coeffs,
        }
    }

    /// Coordinates of a harmonic element in the harmonic basis.
    pub fn coordinates(&self, mu: &VectorForm) -> Option<Vector> {
        exalg::coordinates(&mu.coeffs, &self.vectors())
    }

    /// `Σ c_i β_i`.
    pub fn combine(&self, c: &[C]) -> VectorForm {
        let n = self.harmonic_basis.first().map_or(0, |b| b.n);
        let mut out = VectorForm::zero(n, self.degree);
        for (ci, b) in c.iter().zip(&self.harmonic_basis) {
            out = out.add(&b.scale(ci));
        }
        out
    }
}

struct DegreeData {
    laplacian: Matrix,
    cohomology: CohomologySpace,
    green: OnceLock<Matrix>,
}

/// The `∂̄`-complex of an abelian complex structure in a fixed frame.
pub struct DolbeaultComplex {
    frame: ComplexFrame,
    dbar: Vec<Matrix>,
    degrees: Vec<OnceLock<DegreeData>>,
}

impl DolbeaultComplex {
    /// Builds all `∂̄_k`. Requires an abelian structure.
    pub fn new(frame: &ComplexFrame) -> Result<Self> {
        if !cxs::is_abelian(frame.algebra(), frame.structure())? {
            return Err(Error::Precondition(
                "the complex structure is not abelian".into(),
            ));
        }
        if !cxs::check_dbar_closed_conjugates(frame) {
            return Err(Error::SelfCheck("some dω̄ has a (0,2) part".into()));
        }
        let n = frame.n();
        let dbar = (0..=n).map(|k| dbar_matrix(frame, k)).collect();
        let degrees = (0..=n).map(|_| OnceLock::new()).collect();
        Ok(Self {
            frame: frame.clone(),
            dbar,
            degrees,
        })
    }

    pub fn frame(&self) -> &ComplexFrame {
        &self.frame
    }

    pub fn n(&self) -> usize {
        self.frame.n()
    }

    /// Dimension of the chain space in degree `k`.
    pub fn chain_dim(&self, k: usize) -> usize {
        self.n() * binomial(self.n(), k)
    }

    /// Matrix of `∂̄_k` from degree `k` to `k+1` (zero rows when `k = n`).
    pub fn dbar_matrix(&self, k: usize) -> &Matrix {
        &self.dbar[k]
    }

    /// Matrix of `∂̄*` from degree `k` to `k−1`.
    pub fn adjoint_matrix(&self, k: usize) -> Matrix {
        self.dbar[k - 1].conj_transpose()
    }

    pub fn dbar(&self, mu: &VectorForm) -> VectorForm {
        let coeffs = self.dbar[mu.k]
            .mul_vec(&mu.coeffs)
            .expect("dimension checked");
        VectorForm {
            n: mu.n,
            k: mu.k + 1,
            coeffs,
        }
    }

    /// `∂̄*μ`; the adjoint of `∂̄_{k−1}` for the orthonormal frame.
    pub fn dbar_adjoint(&self, mu: &VectorForm) -> Result<VectorForm> {
        if mu.k == 0 {
            return Err(Error::Precondition("adjoint needs degree >= 1".into()));
        }
        let coeffs = self.adjoint_matrix(mu.k).mul_vec(&mu.coeffs)?;
        Ok(VectorForm {
            n: mu.n,
            k: mu.k - 1,
            coeffs,
        })
    }

    fn data(&self, k: usize) -> &DegreeData {
        self.degrees[k].get_or_init(|| self.compute_degree(k))
    }

    fn compute_degree(&self, k: usize) -> DegreeData {
        let dk = &self.dbar[k];
        let mut laplacian = dk.conj_transpose().mul(dk).expect("dimension checked");
        if k > 0 {
            let down = &self.dbar[k - 1];
            laplacian = laplacian
                .add(&down.mul(&down.conj_transpose()).expect("dimension checked"))
                .expect("same shape");
        }
        let dim = self.chain_dim(k);
        let basis = exalg::span_basis(dim, &laplacian.kernel_basis());
        let gram = exalg::gram(&basis);
        let harmonic_basis = basis
            .into_iter()
            .map(|coeffs| VectorForm {
                n: self.n(),
                k,
                coeffs,
            })
            .collect::<Vec<_>>();
        let cohomology = CohomologySpace {
            degree: k,
            dimension: harmonic_basis.len(),
            harmonic_basis,
            gram,
        };
        DegreeData {
            laplacian,
            cohomology,
            green: OnceLock::new(),
        }
    }

    pub fn laplacian(&self, k: usize) -> &Matrix {
        &self.data(k).laplacian
    }

    /// Harmonic space in degree `k`.
    ///
    /// Its dimension is checked against `dim ker ∂̄_k − rank ∂̄_{k−1}`.
    pub fn cohomology(&self, k: usize) -> Result<&CohomologySpace> {
        let h = &self.data(k).cohomology;
        let dim = self.chain_dim(k);
        let kernel = dim - self.dbar[k].rank();
        let image = if k == 0 { 0 } else { self.dbar[k - 1].rank() };
        if h.dimension != kernel - image {
            return Err(Error::SelfCheck(format!(
                "harmonic dimension {} differs from cohomology dimension {} in degree {k}",
                h.dimension,
                kernel - image
            )));
        }
        Ok(h)
    }

    /// Green's operator: zero on harmonics, inverse of `△` on their
    /// orthogonal complement.
    pub fn green(&self, mu: &VectorForm) -> Result<VectorForm> {
        let data = self.data(mu.k);
        let h = data.cohomology.project(mu);
        let rest = mu.sub(&h);
        let coeffs = data.laplacian.solve_in_image(&rest.coeffs)?;
        Ok(VectorForm {
            n: mu.n,
            k: mu.k,
            coeffs,
        })
    }

    /// Matrix of the Green's operator in degree `k`, as `(△ + H)⁻¹ − H`
    /// with `H` the harmonic projection.
    pub fn green_matrix(&self, k: usize) -> Result<Matrix> {
        let data = self.data(k);
        if let Some(g) = data.green.get() {
            return Ok(g.clone());
        }
        let dim = self.chain_dim(k);
        let cols: Vec<Vector> = (0..dim)
            .map(|i| {
                let mut e = vec![C::zero(); dim];
                e[i] = C::one();
                exalg::project_onto_span(&e, &data.cohomology.vectors())
            })
            .collect::<Result<_>>()?;
        let projection = Matrix::from_columns(dim, &cols)?;
        let inverse = data.laplacian.add(&projection)?.inverse().ok_or_else(|| {
            Error::SelfCheck(format!(
                "laplacian plus harmonic projection is singular in degree {k}"
            ))
        })?;
        let g = inverse.sub(&projection)?;
        Ok(data.green.get_or_init(|| g).clone())
    }
}

fn dbar_matrix(frame: &ComplexFrame, k: usize) -> Matrix {
    let n = frame.n();
    let src = subsets(n, k);
    let rows = n * binomial(n, k + 1);
    let cols = n * src.len();
    let mut mat = Matrix::zeros(rows, cols);
    if k >= n {
        return mat;
    }
    let target = VectorForm::zero(n, k + 1);
    let sign_k = if k.is_multiple_of(2) {
        C::one()
    } else {
        -C::one()
    };
    for a in 0..n {
        for (ri, &mask) in src.iter().enumerate() {
            let col = a * src.len() + ri;
            for j in (0..n).filter(|j| mask & (1 << j) == 0) {
                // ω̄^I ∧ ω̄^j = ± ω̄^{I ∪ j}
                let swaps = (mask >> (j + 1)).count_ones();
                let sign = if swaps % 2 == 0 {
                    sign_k.clone()
                } else {
                    -&sign_k
                };
                for b in 0..n {
                    let c = frame.bracket_coefficient(b, n + j, a);
                    if c.is_zero() {
                        continue;
                    }
                    let row = target.index(b, mask | (1 << j));
                    mat[(row, col)] += &(c * &sign);
                }
            }
        }
    }
    mat
}

/// `∂̄V = Σ_j ω̄^j ⊗ [X̄_j, V]^{1,0}` for `V = Σ v_a X_a`.
pub fn dbar_vector(frame: &ComplexFrame, v: &[C]) -> Result<VectorForm> {
    let n = frame.n();
    let zero = VectorForm::from_coeffs(n, 0, v.to_vec())?;
    let coeffs = dbar_matrix(frame, 0).mul_vec(&zero.coeffs)?;
    Ok(VectorForm { n, k: 1, coeffs })
}
