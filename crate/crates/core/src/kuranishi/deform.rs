use std::collections::BTreeSet;

use num_traits::Zero;

use super::bracket::{entry, schouten_with_coframe, Contractions};
use super::series::DeformationSeries;
use crate::cxs::{self, AlmostComplexStructure, ComplexFrame};
use crate::dolbeault::{DolbeaultComplex, VectorForm};
use crate::error::{Error, Result};
use crate::exalg::{self, GaussianRational as C, Matrix, Vector};
use crate::lie::LieAlgebra;

/// A complex structure obtained from a truncated Kuranishi series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformedStructure {
    pub t_point: Vec<C>,
    pub j: AlmostComplexStructure,
    /// Name of the underlying algebra.
    pub algebra: String,
    /// Truncation order of the series used.
    pub order: u32,
}

/// `J_Φ` with `(0,1)`-vectors `X̄_j + Φ(t)(X̄_j)`, for `Φ(t)` truncated at the
/// series order.
pub fn deform_structure(
    frame: &ComplexFrame,
    series: &DeformationSeries,
    t: &[C],
) -> Result<DeformedStructure> {
    if t.len() != series.params {
        return Err(Error::Dimension(format!(
            "expected {} parameters, got {}",
            series.params,
            t.len()
        )));
    }
    let phi = series.eval(t);
    let j = structure_from_phi(frame, &phi)?;
    Ok(DeformedStructure {
        t_point: t.to_vec(),
        j,
        algebra: frame.algebra().name().to_string(),
        order: series.order,
    })
}

/// The real operator whose `(1,0)`-space is spanned by
/// `Y_j = X_j + conj(Φ(X̄_j))`.
pub fn structure_from_phi(
    frame: &ComplexFrame,
    phi: &VectorForm,
) -> Result<AlmostComplexStructure> {
    let n = frame.n();
    let m = 2 * n;
    let ys: Vec<Vector> = (0..n)
        .map(|j| {
            let mut y = frame.x(j);
            for a in 0..n {
                let c = entry(phi, a, j);
                if !c.is_zero() {
                    exalg::axpy(&mut y, &c.conj(), &exalg::conj_vec(&frame.x(a)));
                }
            }
            y
        })
        .collect();
    let mut cols = ys.clone();
    cols.extend(ys.iter().map(|y| exalg::conj_vec(y)));
    let q = Matrix::from_columns(m, &cols)?;
    let q_inv = q.inverse().ok_or(Error::DegenerateDeformation)?;
    let mut diag = Matrix::zeros(m, m);
    for k in 0..m {
        diag[(k, k)] = if k < n { C::i() } else { -C::i() };
    }
    let j = q.mul(&diag)?.mul(&q_inv)?;
    if !j.is_real() {
        return Err(Error::SelfCheck("deformed J is not real".into()));
    }
    AlmostComplexStructure::new(j)
}

/// Classification of a complex structure on a fixed algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeformationClass {
    pub integrable: bool,
    pub abelian: bool,
    pub nilpotent: bool,
}

pub fn classify_deformation(a: &LieAlgebra, d: &DeformedStructure) -> Result<DeformationClass> {
    classify_structure(a, &d.j)
}

pub fn classify_structure(a: &LieAlgebra, j: &AlmostComplexStructure) -> Result<DeformationClass> {
    Ok(DeformationClass {
        integrable: cxs::is_integrable(a, j)?.integrable,
        abelian: cxs::is_abelian(a, j)?,
        nilpotent: cxs::j_ascending_series(a, j).nilpotent,
    })
}

/// Harmonic `μ` with `{μ, ω̄^l} = 0` for all `l`, in harmonic-basis
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianLocus {
    pub dimension: usize,
    /// Canonical basis of the locus in coordinates of the `H^1` basis.
    pub basis: Vec<Vector>,
    /// The same directions as vector forms.
    pub directions: Vec<VectorForm>,
}

pub fn infinitesimal_abelian_locus(complex: &DolbeaultComplex) -> Result<AbelianLocus> {
    let frame = complex.frame();
    let n = frame.n();
    let h1 = complex.cohomology(1)?;
    let brackets: Vec<Vec<cxs::InvariantForm>> = h1
        .harmonic_basis
        .iter()
        .map(|beta| {
            (0..n)
                .map(|l| schouten_with_coframe(frame, beta, l))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let masks: BTreeSet<u32> = brackets
        .iter()
        .flatten()
        .flat_map(|f| f.terms().map(|(m, _)| m).collect::<Vec<_>>())
        .collect();
    let rows: Vec<Vector> = (0..n)
        .flat_map(|l| masks.iter().map(move |&m| (l, m)))
        .map(|(l, m)| brackets.iter().map(|b| b[l].coefficient(m)).collect())
        .collect();
    let dim = h1.dimension;
    let basis = if rows.is_empty() {
        Matrix::identity(dim).columns()
    } else {
        Matrix::from_rows(&rows)?.kernel_basis()
    };
    let basis = exalg::span_basis(dim, &basis);
    let directions = basis.iter().map(|c| h1.combine(c)).collect();
    Ok(AbelianLocus {
        dimension: basis.len(),
        basis,
        directions,
    })
}

/// Center of the Lie algebra `𝔤^{1,0} ⊕ 𝔤^{*(0,1)}` with
/// `{V, ω̄} = ι_V dω̄` and the other brackets zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedCenter {
    /// Central `(1,0)`-vectors in frame coordinates `X_1..X_n`.
    pub vectors: Vec<Vector>,
    /// Central `(0,1)`-forms in coframe coordinates `ω̄^1..ω̄^n`.
    pub coforms: Vec<Vector>,
}

impl GradedCenter {
    pub fn contains_vector(&self, v: &[C]) -> bool {
        exalg::in_span(v, &self.vectors)
    }

    pub fn contains_coform(&self, alpha: &[C]) -> bool {
        exalg::in_span(alpha, &self.coforms)
    }

    /// Whether every vector component `V_j` and every form component of
    /// `μ = Σ ω̄^j ⊗ V_j` is central. This implies `{μ, ω̄} = 0` for all
    /// `ω̄` but is not implied by it.
    pub fn contains_components(&self, mu: &VectorForm) -> bool {
        let n = mu.n();
        (0..n).all(|j| {
            self.contains_vector(&(0..n).map(|a| entry(mu, a, j).clone()).collect::<Vec<_>>())
        }) && (0..n).all(|a| {
            self.contains_coform(&(0..n).map(|j| entry(mu, a, j).clone()).collect::<Vec<_>>())
        })
    }
}

pub fn graded_center(frame: &ComplexFrame) -> Result<GradedCenter> {
    if !cxs::is_abelian(frame.algebra(), frame.structure())? {
        return Err(Error::Precondition(
            "the complex structure is not abelian".into(),
        ));
    }
    let n = frame.n();
    let k = Contractions::new(frame);
    // V central iff Σ_a v_a K[l][a][j] = 0 for all l, j
    let vector_rows: Vec<Vector> = (0..n)
        .flat_map(|l| (0..n).map(move |j| (l, j)))
        .map(|(l, j)| (0..n).map(|a| k.get(l, a, j).clone()).collect())
        .collect();
    // α central iff Σ_l α_l K[l][b][j] = 0 for all b, j
    let coform_rows: Vec<Vector> = (0..n)
        .flat_map(|b| (0..n).map(move |j| (b, j)))
        .map(|(b, j)| (0..n).map(|l| k.get(l, b, j).clone()).collect())
        .collect();
    let kernel = |rows: Vec<Vector>| -> Result<Vec<Vector>> {
        if n == 0 {
            return Ok(Vec::new());
        }
        Ok(exalg::span_basis(
            n,
            &Matrix::from_rows(&rows)?.kernel_basis(),
        ))
    };
    Ok(GradedCenter {
        vectors: kernel(vector_rows)?,
        coforms: kernel(coform_rows)?,
    })
}
