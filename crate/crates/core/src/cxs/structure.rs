use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exalg::{self, GaussianRational as C, Matrix, Rational, Vector};

/// A real operator `J` on `𝔤` with `J² = −I`, acting on coordinate columns:
/// `J e_i = Σ_k J[k][i] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlmostComplexStructure {
    j: Matrix,
}

impl AlmostComplexStructure {
    pub fn new(j: Matrix) -> Result<Self> {
        let m = j.rows();
        if j.cols() != m {
            return Err(Error::InvalidStructure("J must be square".into()));
        }
        if !m.is_multiple_of(2) {
            return Err(Error::InvalidStructure(format!("odd dimension {m}")));
        }
        if !j.is_real() {
            return Err(Error::InvalidStructure("J must be real".into()));
        }
        let sq = j.mul(&j)?;
        if sq != Matrix::identity(m).scale(&-C::one()) {
            return Err(Error::InvalidStructure("J^2 != -I".into()));
        }
        Ok(Self { j })
    }

    /// `J e_{2i-1} = e_{2i}` for `i = 1..m/2`.
    pub fn standard(m: usize) -> Result<Self> {
        let mut j = Matrix::zeros(m, m);
        for p in 0..m / 2 {
            j[(2 * p + 1, 2 * p)] = C::one();
            j[(2 * p, 2 * p + 1)] = -C::one();
        }
        Self::new(j)
    }

    /// Builds `J` from prescribed images `J e_i = v`.
    ///
    /// Each prescription also yields `J v = −e_i`. The resulting pairs must
    /// span `ℝ^m` and be consistent with a single linear map.
    pub fn from_images(m: usize, images: &[(usize, Vec<Rational>)]) -> Result<Self> {
        let mut pairs: Vec<(Vector, Vector)> = Vec::new();
        for (i, v) in images {
            if *i >= m || v.len() != m {
                return Err(Error::Dimension(format!(
                    "image of e{} has wrong size",
                    i + 1
                )));
            }
            let mut e = vec![C::zero(); m];
            e[*i] = C::one();
            let v: Vector = v.iter().cloned().map(C::from_rational).collect();
            pairs.push((v.clone(), exalg::scale(&-C::one(), &e)));
            pairs.push((e, v));
        }
        let mut chosen: Vec<usize> = Vec::new();
        let mut acc: Vec<Vector> = Vec::new();
        for (k, (u, _)) in pairs.iter().enumerate() {
            if !exalg::is_zero_vec(u) && !exalg::in_span(u, &acc) {
                acc.push(u.clone());
                chosen.push(k);
            }
        }
        if acc.len() < m {
            return Err(Error::InvalidStructure(format!(
                "images determine J on a {}-dimensional subspace only",
                acc.len()
            )));
        }
        let u = Matrix::from_columns(m, &acc)?;
        let w = Matrix::from_columns(
            m,
            &chosen
                .iter()
                .map(|&k| pairs[k].1.clone())
                .collect::<Vec<_>>(),
        )?;
        let j = w.mul(&u.inverse().expect("independent columns"))?;
        for (u, w) in &pairs {
            if j.mul_vec(u)? != *w {
                return Err(Error::InvalidStructure("inconsistent images".into()));
            }
        }
        Self::new(j)
    }

    pub fn dim(&self) -> usize {
        self.j.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.j
    }

    pub fn apply(&self, v: &[C]) -> Vector {
        self.j.mul_vec(v).expect("dimension checked")
    }

    /// `J e_i` as real coordinates.
    pub fn image(&self, i: usize) -> Vec<Rational> {
        self.j.column(i).into_iter().map(|c| c.re).collect()
    }

    /// The structure transported by a real change of basis `f_i = Σ s[k][i] e_k`.
    pub fn change_basis(&self, s: &Matrix) -> Result<Self> {
        let inv = s
            .inverse()
            .ok_or_else(|| Error::Dimension("singular change of basis".into()))?;
        Self::new(inv.mul(&self.j)?.mul(s)?)
    }

    /// Whether `J` maps `span(v)` into itself.
    pub fn preserves(&self, v: &[Vector]) -> bool {
        v.iter().all(|x| exalg::in_span(&self.apply(x), v))
    }
}
