use std::collections::BTreeMap;

use num_traits::Zero;

use super::bracket::{schouten_with, Contractions};
use crate::dolbeault::{inner_product, DolbeaultComplex, VectorForm};
use crate::error::{Error, Result};
use crate::exalg::{self, GaussianRational as C, Matrix};
use crate::poly::{Monomial, Polynomial};

/// Truncated solution `Φ(t) = Σ_α t^α φ_α` of the Kuranishi recursion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationSeries {
    /// Number of parameters `N`.
    pub params: usize,
    /// Truncation degree.
    pub order: u32,
    /// Linear directions `φ_{t_i}`; the harmonic basis unless chosen otherwise.
    pub basis: Vec<VectorForm>,
    /// Gram matrix of `basis`.
    pub basis_gram: Matrix,
    /// Nonzero coefficients `φ_α`, `1 ≤ |α| ≤ order`.
    pub coeffs: BTreeMap<Monomial, VectorForm>,
    /// Nonzero coefficients of `{Φ, Φ}`, `2 ≤ |α| ≤ order`.
    pub brackets: BTreeMap<Monomial, VectorForm>,
    n: usize,
}

impl DeformationSeries {
    /// Homogeneous part `φ_r` as its nonzero monomial coefficients.
    pub fn phi(&self, r: u32) -> Vec<(&Monomial, &VectorForm)> {
        self.coeffs
            .iter()
            .filter(|(m, _)| m.degree() == r)
            .collect()
    }

    /// `φ_r(t)`.
    pub fn eval_degree(&self, r: u32, t: &[C]) -> VectorForm {
        eval_part(&self.coeffs, self.n, 1, r, t)
    }

    /// `Φ(t)` truncated at the series order.
    pub fn eval(&self, t: &[C]) -> VectorForm {
        (1..=self.order).fold(VectorForm::zero(self.n, 1), |acc, r| {
            acc.add(&self.eval_degree(r, t))
        })
    }

    /// Degree `r` part of `{Φ(t), Φ(t)}`.
    pub fn bracket_degree(&self, r: u32, t: &[C]) -> VectorForm {
        eval_part(&self.brackets, self.n, 2, r, t)
    }
}

fn eval_part(
    map: &BTreeMap<Monomial, VectorForm>,
    n: usize,
    k: usize,
    r: u32,
    t: &[C],
) -> VectorForm {
    let mut out = VectorForm::zero(n, k);
    for (m, v) in map.iter().filter(|(m, _)| m.degree() == r) {
        out = out.add(&v.scale(&m.eval(t)));
    }
    out
}

/// The Kuranishi series with linear term `Σ t_i β_i` over the harmonic basis
/// of `H^1`.
pub fn kuranishi_series(complex: &DolbeaultComplex, order: u32) -> Result<DeformationSeries> {
    let basis = complex.cohomology(1)?.harmonic_basis.clone();
    kuranishi_series_along(complex, &basis, order)
}

/// The Kuranishi series with linear term `Σ t_i μ_i` for harmonic `μ_i`.
///
/// `φ_r = −½ Σ_{s=1}^{r−1} ∂̄*𝒢{φ_s, φ_{r−s}}`; with this sign `Φ` solves
/// `∂̄Φ + ½{Φ,Φ} = 0` up to harmonic terms. The operators `∂̄*𝒢` and
/// `𝒢∂̄*` are compared before use.
pub fn kuranishi_series_along(
    complex: &DolbeaultComplex,
    directions: &[VectorForm],
    order: u32,
) -> Result<DeformationSeries> {
    let n = complex.n();
    let h1 = complex.cohomology(1)?;
    for d in directions {
        if d.degree() != 1 || !h1.project(d).sub(d).is_zero() {
            return Err(Error::Precondition(
                "linear directions must be harmonic of degree 1".into(),
            ));
        }
    }
    let params = directions.len();
    let basis_gram = exalg::gram(
        &directions
            .iter()
            .map(|d| d.coeffs().to_vec())
            .collect::<Vec<_>>(),
    );
    let solver = solver_matrix(complex)?;
    let table = Contractions::new(complex.frame());

    let mut coeffs: BTreeMap<Monomial, VectorForm> = BTreeMap::new();
    for (i, d) in directions.iter().enumerate() {
        if !d.is_zero() {
            coeffs.insert(Monomial::var(params, i), d.clone());
        }
    }
    let mut brackets = BTreeMap::new();
    let minus_half = C::ratio(-1, 2);
    for r in 2..=order {
        let lower: Vec<(Monomial, VectorForm)> =
            coeffs.iter().map(|(m, v)| (m.clone(), v.clone())).collect();
        let mut degree_r: BTreeMap<Monomial, VectorForm> = BTreeMap::new();
        for (i, (mb, vb)) in lower.iter().enumerate() {
            for (mc, vc) in lower[i..].iter() {
                if mb.degree() + mc.degree() != r {
                    continue;
                }
                let mut q = schouten_with(&table, vb, vc);
                if mb != mc {
                    // the unordered pair appears twice in the sum
                    q = q.scale(&C::from_int(2));
                }
                let key = mb.mul(mc);
                let entry = degree_r
                    .entry(key)
                    .or_insert_with(|| VectorForm::zero(n, 2));
                *entry = entry.add(&q);
            }
        }
        for (m, q) in degree_r {
            if q.is_zero() {
                continue;
            }
            let phi = solver.mul_vec(q.coeffs())?;
            let phi = VectorForm::from_coeffs(n, 1, phi)?.scale(&minus_half);
            if !phi.is_zero() {
                coeffs.insert(m.clone(), phi);
            }
            brackets.insert(m, q);
        }
    }
    Ok(DeformationSeries {
        params,
        order,
        basis: directions.to_vec(),
        basis_gram,
        coeffs,
        brackets,
        n,
    })
}

/// Matrix of `∂̄*𝒢` from degree 2 to degree 1, checked against `𝒢∂̄*`.
fn solver_matrix(complex: &DolbeaultComplex) -> Result<Matrix> {
    if complex.n() < 2 {
        return Ok(Matrix::zeros(complex.chain_dim(1), complex.chain_dim(2)));
    }
    let adjoint = complex.adjoint_matrix(2);
    let left = adjoint.mul(&complex.green_matrix(2)?)?;
    let right = complex.green_matrix(1)?.mul(&adjoint)?;
    if left != right {
        return Err(Error::SelfCheck("∂̄*𝒢 and 𝒢∂̄* differ".into()));
    }
    Ok(left)
}

/// Obstruction polynomials `f_k(t) = ⟨{Φ(t), Φ(t)}, γ_k⟩`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ObstructionSet {
    pub polys: Vec<Polynomial>,
}

impl ObstructionSet {
    pub fn is_zero(&self) -> bool {
        self.polys.iter().all(Polynomial::is_zero)
    }

    /// Whether every `f_k` vanishes at `t`.
    pub fn vanish_at(&self, t: &[C]) -> bool {
        self.polys.iter().all(|p| p.eval(t).is_zero())
    }

    /// Whether every homogeneous part of every `f_k` vanishes at `t`, that is
    /// `f_k(s t) = 0` identically in `s`.
    pub fn vanish_along_ray(&self, t: &[C]) -> bool {
        self.polys.iter().all(|p| {
            p.degree()
                .is_none_or(|top| (0..=top).all(|d| p.homogeneous(d).eval(t).is_zero()))
        })
    }
}

/// Pairs `{Φ,Φ}` (truncated at the series order) with the unnormalized
/// harmonic basis `γ_k` of `H^2`.
pub fn obstructions(
    complex: &DolbeaultComplex,
    series: &DeformationSeries,
) -> Result<ObstructionSet> {
    if complex.n() < 2 {
        return Ok(ObstructionSet { polys: Vec::new() });
    }
    let h2 = complex.cohomology(2)?;
    let polys = h2
        .harmonic_basis
        .iter()
        .map(|gamma| {
            let mut p = Polynomial::zero(series.params);
            for (m, q) in &series.brackets {
                p.add_term(m.clone(), inner_product(q, gamma)?);
            }
            Ok(p)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ObstructionSet { polys })
}

/// Homogeneous parts `R_r = ∂̄φ_r + ½{Φ,Φ}_r` of the Maurer–Cartan
/// expression at a point, for `1 ≤ r ≤ order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McResidual {
    pub components: Vec<VectorForm>,
    pub total: VectorForm,
}

impl McResidual {
    /// Whether `∂̄Φ(st) + ½{Φ(st), Φ(st)}` vanishes modulo `s^{order+1}`.
    pub fn is_zero(&self) -> bool {
        self.components.iter().all(VectorForm::is_zero)
    }
}

pub fn mc_residual(
    complex: &DolbeaultComplex,
    series: &DeformationSeries,
    t: &[C],
) -> Result<McResidual> {
    if t.len() != series.params {
        return Err(Error::Dimension(format!(
            "expected {} parameters, got {}",
            series.params,
            t.len()
        )));
    }
    let n = complex.n();
    let half = C::ratio(1, 2);
    let mut components = Vec::new();
    let mut total = VectorForm::zero(n, 2);
    for r in 1..=series.order {
        let part = complex
            .dbar(&series.eval_degree(r, t))
            .add(&series.bracket_degree(r, t).scale(&half));
        total = total.add(&part);
        components.push(part);
    }
    Ok(McResidual { components, total })
}
