//! Almost complex structures on a Lie algebra: integrability, abelianness,
//! `J`-nilpotency, adapted `(1,0)`-frames and the invariant form calculus.

mod forms;
mod frame;
mod structure;

use num_traits::Zero;

pub use forms::InvariantForm;
pub use frame::ComplexFrame;
pub use structure::AlmostComplexStructure;

use crate::error::{Error, Result};
use crate::exalg::{self, GaussianRational as C, Matrix, Vector};
use crate::lie::{self, Flag, LieAlgebra};

/// Outcome of [`is_integrable`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegrabilityReport {
    pub integrable: bool,
    /// Index `a` of a `(1,0)`-form `ω^a` of the standard frame and the
    /// nonzero `(0,2)`-part of `dω^a`.
    pub witness: Option<(usize, InvariantForm)>,
}

/// Whether `dω` has no `(0,2)`-part for every `(1,0)`-form `ω`.
pub fn is_integrable(a: &LieAlgebra, j: &AlmostComplexStructure) -> Result<IntegrabilityReport> {
    let frame = ComplexFrame::standard(a, j)?;
    Ok(integrability_in(&frame))
}

pub(crate) fn integrability_in(frame: &ComplexFrame) -> IntegrabilityReport {
    for k in 0..frame.n() {
        let part = frame.d_theta(k).component(0, 2);
        if !part.is_zero() {
            return IntegrabilityReport {
                integrable: false,
                witness: Some((k, part)),
            };
        }
    }
    IntegrabilityReport {
        integrable: true,
        witness: None,
    }
}

/// Whether `[JX, JY] = [X, Y]` for all `X, Y`.
///
/// Decided twice: by the bracket identity on basis pairs and by the bidegree
/// of `dω` on `(1,0)`-forms. Disagreement is reported as
/// [`Error::SelfCheck`].
pub fn is_abelian(a: &LieAlgebra, j: &AlmostComplexStructure) -> Result<bool> {
    let m = a.dim();
    if j.dim() != m {
        return Err(Error::Dimension("J and algebra differ in dimension".into()));
    }
    let basis = Matrix::identity(m).columns();
    let images: Vec<Vector> = basis.iter().map(|e| j.apply(e)).collect();
    let by_bracket = (0..m).all(|p| {
        (p + 1..m).all(|q| a.bracket(&images[p], &images[q]) == a.bracket(&basis[p], &basis[q]))
    });
    let frame = ComplexFrame::standard(a, j)?;
    let by_forms =
        (0..frame.n()).all(|k| frame.d_theta(k).bidegrees().iter().all(|&d| d == (1, 1)));
    if by_bracket != by_forms {
        return Err(Error::SelfCheck(format!(
            "abelian criteria disagree: bracket identity {by_bracket}, bidegree {by_forms}"
        )));
    }
    Ok(by_bracket)
}

/// The `J`-ascending series and whether it exhausts `𝔤`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JSeries {
    /// Terms up to the point where the series reaches `𝔤` or stops growing.
    pub flag: Flag,
    pub nilpotent: bool,
}

/// `𝔤^J_ℓ = {X : [X, 𝔤] ⊆ 𝔤^J_{ℓ−1}, [JX, 𝔤] ⊆ 𝔤^J_{ℓ−1}}`.
pub fn j_ascending_series(a: &LieAlgebra, j: &AlmostComplexStructure) -> JSeries {
    let m = a.dim();
    let mut subspaces: Vec<Vec<Vector>> = Vec::new();
    let mut prev: Vec<Vector> = Vec::new();
    while prev.len() < m {
        let next = lie::series_step(a, &prev, Some(j.matrix()));
        if next.len() == prev.len() {
            return JSeries {
                flag: Flag { subspaces },
                nilpotent: false,
            };
        }
        subspaces.push(next.clone());
        prev = next;
    }
    JSeries {
        flag: Flag { subspaces },
        nilpotent: true,
    }
}

/// Frame adapted to the ascending series; see [`ComplexFrame::adapted`].
pub fn adapted_frame(a: &LieAlgebra, j: &AlmostComplexStructure) -> Result<ComplexFrame> {
    ComplexFrame::adapted(a, j)
}

/// Coefficients `A[i][j][k]` with `dω^i = Σ A[i][j][k] ω^j ∧ ω̄^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureCoefficients {
    n: usize,
    data: Vec<C>,
}

impl StructureCoefficients {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &C {
        &self.data[(i * self.n + j) * self.n + k]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

/// Structure coefficients of an abelian structure in the given frame.
///
/// Fails with [`Error::NotAbelian`] if some `dω^i` has a `(2,0)` or `(0,2)`
/// part. The reconstruction `Σ A ω^j ∧ ω̄^k` is compared with `dω^i`.
pub fn structure_coefficients(frame: &ComplexFrame) -> Result<StructureCoefficients> {
    let n = frame.n();
    let mut data = vec![C::zero(); n * n * n];
    for i in 0..n {
        let d = frame.d_theta(i);
        if !d.component(2, 0).is_zero() {
            return Err(Error::NotAbelian("(2,0)"));
        }
        if !d.component(0, 2).is_zero() {
            return Err(Error::NotAbelian("(0,2)"));
        }
        let mut rebuilt = InvariantForm::zero(n);
        for j in 0..n {
            for k in 0..n {
                let c = -frame.bracket_coefficient(i, j, n + k);
                let term = InvariantForm::omega(n, j)
                    .wedge(&InvariantForm::omega_bar(n, k))
                    .scale(&c);
                rebuilt = rebuilt.add(&term);
                data[(i * n + j) * n + k] = c;
            }
        }
        if rebuilt != frame.exterior_derivative(&InvariantForm::omega(n, i)) {
            return Err(Error::SelfCheck(format!(
                "structure coefficients do not reconstruct dω^{}",
                i + 1
            )));
        }
    }
    Ok(StructureCoefficients { n, data })
}

/// Whether every `ω̄^i` has `dω̄^i` without `(0,2)`-part.
pub fn check_dbar_closed_conjugates(frame: &ComplexFrame) -> bool {
    let n = frame.n();
    (0..n).all(|i| frame.d_theta(n + i).component(0, 2).is_zero())
}

/// Whether `span(v)` is `J`-invariant.
pub fn is_invariant(j: &AlmostComplexStructure, v: &[Vector]) -> bool {
    j.preserves(v)
}

/// Real span of the real and imaginary parts of `(1,0)`-vectors.
pub fn realify(vs: &[Vector]) -> Vec<Vector> {
    let m = vs.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for v in vs {
        out.push(v.iter().map(|c| C::from_rational(c.re.clone())).collect());
        out.push(v.iter().map(|c| C::from_rational(c.im.clone())).collect());
    }
    exalg::span_basis(m, &out)
}
