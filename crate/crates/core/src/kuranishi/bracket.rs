use num_traits::Zero;

use crate::cxs::{ComplexFrame, InvariantForm};
use crate::dolbeault::VectorForm;
use crate::error::{Error, Result};
use crate::exalg::{GaussianRational as C, Vector};

/// Contraction table `K[l][a][j]` with `ι_{X_a} dω̄^l = Σ_j K[l][a][j] ω̄^j`.
#[derive(Debug, Clone)]
pub(crate) struct Contractions {
    n: usize,
    data: Vec<C>,
}

impl Contractions {
    pub(crate) fn new(frame: &ComplexFrame) -> Self {
        let n = frame.n();
        let mut data = vec![C::zero(); n * n * n];
        for l in 0..n {
            for a in 0..n {
                for j in 0..n {
                    data[(l * n + a) * n + j] = -frame.bracket_coefficient(n + l, a, n + j);
                }
            }
        }
        Self { n, data }
    }

    pub(crate) fn get(&self, l: usize, a: usize, j: usize) -> &C {
        &self.data[(l * self.n + a) * self.n + j]
    }
}

fn check_degree(mu: &VectorForm, k: usize) -> Result<()> {
    if mu.degree() != k {
        return Err(Error::Dimension(format!(
            "expected a degree {k} vector form, got degree {}",
            mu.degree()
        )));
    }
    Ok(())
}

/// Coefficient `μ^a_j` of `ω̄^j ⊗ X_a` in a degree 1 vector form.
pub(crate) fn entry(mu: &VectorForm, a: usize, j: usize) -> &C {
    mu.get(a, 1 << j)
}

/// `{μ, ν}` for degree 1 vector forms over an abelian base, extended
/// bilinearly from
/// `{ω̄^p ⊗ X_a, ω̄^q ⊗ X_b} = ω̄^q ∧ ι_{X_b}dω̄^p ⊗ X_a + ω̄^p ∧ ι_{X_a}dω̄^q ⊗ X_b`.
pub(crate) fn schouten_with(k: &Contractions, mu: &VectorForm, nu: &VectorForm) -> VectorForm {
    let n = mu.n();
    let mut out = VectorForm::zero(n, 2);
    let mu_terms: Vec<(usize, usize, C)> = mu
        .terms()
        .into_iter()
        .map(|(a, m, c)| (a, m.trailing_zeros() as usize, c.clone()))
        .collect();
    let nu_terms: Vec<(usize, usize, C)> = nu
        .terms()
        .into_iter()
        .map(|(a, m, c)| (a, m.trailing_zeros() as usize, c.clone()))
        .collect();
    for (a, p, x) in &mu_terms {
        for (b, q, y) in &nu_terms {
            let xy = x * y;
            for j in 0..n {
                let kp = k.get(*p, *b, j);
                if !kp.is_zero() && *q != j {
                    add_wedge(&mut out, *a, *q, j, &(&xy * kp));
                }
                let kq = k.get(*q, *a, j);
                if !kq.is_zero() && *p != j {
                    add_wedge(&mut out, *b, *p, j, &(&xy * kq));
                }
            }
        }
    }
    out
}

/// Adds `c · ω̄^i ∧ ω̄^j ⊗ X_a`.
fn add_wedge(out: &mut VectorForm, a: usize, i: usize, j: usize, c: &C) {
    let mask = (1u32 << i) | (1u32 << j);
    if i < j {
        out.add_term(a, mask, c.clone());
    } else {
        out.add_term(a, mask, -c);
    }
}

/// Schouten bracket of two degree 1 vector forms (abelian base).
pub fn schouten(frame: &ComplexFrame, mu: &VectorForm, nu: &VectorForm) -> Result<VectorForm> {
    check_degree(mu, 1)?;
    check_degree(nu, 1)?;
    Ok(schouten_with(&Contractions::new(frame), mu, nu))
}

/// `{μ, ω̄} = Σ_j ω̄^j ∧ ι_{V_j} dω̄` for `μ = Σ_j ω̄^j ⊗ V_j` and a
/// `(0,1)`-form `ω̄` given by its coefficients on `ω̄^1..ω̄^n`.
///
/// The result is a `(0,2)`-form.
pub fn schouten_with_coform(
    frame: &ComplexFrame,
    mu: &VectorForm,
    coform: &[C],
) -> Result<InvariantForm> {
    check_degree(mu, 1)?;
    let n = frame.n();
    if coform.len() != n {
        return Err(Error::Dimension(format!("coform needs {n} coefficients")));
    }
    let mut alpha = InvariantForm::zero(n);
    for (l, c) in coform.iter().enumerate() {
        alpha = alpha.add(&InvariantForm::omega_bar(n, l).scale(c));
    }
    let d_alpha = frame.exterior_derivative(&alpha);
    let mut out = InvariantForm::zero(n);
    for j in 0..n {
        let v: Vector = (0..2 * n)
            .map(|r| {
                if r < n {
                    entry(mu, r, j).clone()
                } else {
                    C::zero()
                }
            })
            .collect();
        let contracted = d_alpha.interior(&v);
        out = out.add(&InvariantForm::omega_bar(n, j).wedge(&contracted));
    }
    Ok(out)
}

/// [`schouten_with_coform`] against the coframe element `ω̄^l`.
pub fn schouten_with_coframe(
    frame: &ComplexFrame,
    mu: &VectorForm,
    l: usize,
) -> Result<InvariantForm> {
    let mut coform = vec![C::zero(); frame.n()];
    coform[l] = C::from_int(1);
    schouten_with_coform(frame, mu, &coform)
}
