use std::collections::HashMap;

use num_traits::{One, Zero};

use super::forms::InvariantForm;
use super::structure::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::exalg::{self, GaussianRational as C, Matrix, Vector};
use crate::lie::{self, LieAlgebra};

/// A basis `X_1..X_n` of `𝔤^{1,0}` together with its conjugates and the dual
/// coframe.
///
/// Frame vectors are indexed `Z_p`, `p < 2n`, with `Z_a = X_a` and
/// `Z_{n+a} = X̄_a`; dual forms are `θ^a = ω^a` and `θ^{n+a} = ω̄^a`.
#[derive(Debug, Clone)]
pub struct ComplexFrame {
    algebra: LieAlgebra,
    j: AlmostComplexStructure,
    n: usize,
    z: Matrix,
    coframe: Matrix,
    table: Vec<C>,
    levels: Vec<usize>,
}

impl ComplexFrame {
    /// Frame from explicit `(1,0)`-vectors.
    pub fn new(algebra: &LieAlgebra, j: &AlmostComplexStructure, xs: Vec<Vector>) -> Result<Self> {
        Self::with_levels(algebra, j, xs, Vec::new())
    }

    fn with_levels(
        algebra: &LieAlgebra,
        j: &AlmostComplexStructure,
        xs: Vec<Vector>,
        levels: Vec<usize>,
    ) -> Result<Self> {
        let m = algebra.dim();
        if j.dim() != m {
            return Err(Error::Dimension(format!(
                "J is {}x{}, algebra has dim {m}",
                j.dim(),
                j.dim()
            )));
        }
        let n = m / 2;
        if xs.len() != n || xs.iter().any(|x| x.len() != m) {
            return Err(Error::Dimension(format!("need {n} vectors of length {m}")));
        }
        for x in &xs {
            if j.apply(x) != exalg::scale(&C::i(), x) {
                return Err(Error::Precondition(
                    "frame vector is not of type (1,0)".into(),
                ));
            }
        }
        let mut cols = xs.clone();
        cols.extend(xs.iter().map(|x| exalg::conj_vec(x)));
        let z = Matrix::from_columns(m, &cols)?;
        let coframe = z
            .inverse()
            .ok_or_else(|| Error::Precondition("frame vectors are dependent".into()))?;
        let mut table = vec![C::zero(); m * m * m];
        for p in 0..m {
            for q in p + 1..m {
                let b = coframe.mul_vec(&algebra.bracket(&cols[p], &cols[q]))?;
                for (r, v) in b.into_iter().enumerate() {
                    table[(r * m + q) * m + p] = -&v;
                    table[(r * m + p) * m + q] = v;
                }
            }
        }
        Ok(Self {
            algebra: algebra.clone(),
            j: j.clone(),
            n,
            z,
            coframe,
            table,
            levels,
        })
    }

    /// Greedy frame `X = e_i − iJe_i` over the standard basis.
    pub fn standard(algebra: &LieAlgebra, j: &AlmostComplexStructure) -> Result<Self> {
        let m = algebra.dim();
        let basis = Matrix::identity(m).columns();
        let mut acc = Vec::new();
        let xs = greedy_vectors(j, &basis, &mut acc);
        Self::new(algebra, j, xs)
    }

    /// Frame adapted to the ascending series: the first `n_1` vectors span
    /// `(𝔤_1)^{1,0}`, the first `n_2` span `(𝔤_2)^{1,0}`, and so on.
    ///
    /// Within each level, the canonical basis vectors of `𝔤_ℓ` are scanned in
    /// order and `v − iJv` is added whenever `v` is new modulo the `J`-span
    /// of what was already chosen.
    pub fn adapted(algebra: &LieAlgebra, j: &AlmostComplexStructure) -> Result<Self> {
        let flag = lie::ascending_series(algebra)?;
        let mut acc = Vec::new();
        let mut xs = Vec::new();
        let mut levels = Vec::new();
        for l in 1..=flag.len() {
            let level = flag.level(l);
            if !j.preserves(level) {
                return Err(Error::SeriesNotInvariant(l));
            }
            xs.extend(greedy_vectors(j, level, &mut acc));
            levels.push(xs.len());
        }
        Self::with_levels(algebra, j, xs, levels)
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn structure(&self) -> &AlmostComplexStructure {
        &self.j
    }

    /// Complex dimension `n`.
    pub fn n(&self) -> usize {
        self.n
    }

    /// `X_a` in real-basis coordinates.
    pub fn x(&self, a: usize) -> Vector {
        self.z.column(a)
    }

    /// `Z_p` in real-basis coordinates.
    pub fn z(&self, p: usize) -> Vector {
        self.z.column(p)
    }

    /// Matrix whose columns are `Z_0..Z_{2n-1}`.
    pub fn z_matrix(&self) -> &Matrix {
        &self.z
    }

    /// `θ^r` as a row of real-basis dual coordinates.
    pub fn theta_row(&self, r: usize) -> &[C] {
        self.coframe.row(r)
    }

    /// Frame coordinates of a real-basis vector.
    pub fn to_frame(&self, v: &[C]) -> Vector {
        self.coframe.mul_vec(v).expect("dimension checked")
    }

    /// Real-basis coordinates of a frame combination.
    pub fn from_frame(&self, c: &[C]) -> Vector {
        self.z.mul_vec(c).expect("dimension checked")
    }

    /// Cumulative counts `n_ℓ` of frame vectors in `𝔤_ℓ`; empty unless built
    /// by [`ComplexFrame::adapted`].
    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    /// `θ^r([Z_p, Z_q])`.
    pub fn bracket_coefficient(&self, r: usize, p: usize, q: usize) -> &C {
        let m = 2 * self.n;
        &self.table[(r * m + p) * m + q]
    }

    /// `dθ^r = −Σ_{p<q} θ^r([Z_p, Z_q]) θ^p ∧ θ^q`.
    pub fn d_theta(&self, r: usize) -> InvariantForm {
        let m = 2 * self.n;
        let mut out = InvariantForm::zero(self.n);
        for p in 0..m {
            for q in p + 1..m {
                let c = self.bracket_coefficient(r, p, q);
                if !c.is_zero() {
                    out.add_term((1 << p) | (1 << q), -c);
                }
            }
        }
        out
    }

    /// Chevalley–Eilenberg differential, extended from 1-forms by the
    /// graded Leibniz rule.
    pub fn exterior_derivative(&self, form: &InvariantForm) -> InvariantForm {
        let mut memo = HashMap::new();
        let mut out = InvariantForm::zero(self.n);
        for (mask, c) in form.terms() {
            out = out.add(&self.d_monomial(mask, &mut memo).scale(c));
        }
        out
    }

    fn d_monomial(&self, mask: u32, memo: &mut HashMap<u32, InvariantForm>) -> InvariantForm {
        if let Some(f) = memo.get(&mask) {
            return f.clone();
        }
        let out = if mask == 0 {
            InvariantForm::zero(self.n)
        } else {
            let r = mask.trailing_zeros() as usize;
            let rest_mask = mask & !(1 << r);
            let rest = InvariantForm::monomial(self.n, rest_mask, C::one());
            let first = self.d_theta(r).wedge(&rest);
            let second = InvariantForm::theta(self.n, r).wedge(&self.d_monomial(rest_mask, memo));
            first.add(&second.scale(&-C::one()))
        };
        memo.insert(mask, out.clone());
        out
    }
}

/// Scans `candidates` and returns `v − iJv` for every `v` not in the span of
/// `acc ∪ J·acc`, updating `acc`.
fn greedy_vectors(
    j: &AlmostComplexStructure,
    candidates: &[Vector],
    acc: &mut Vec<Vector>,
) -> Vec<Vector> {
    let mut out = Vec::new();
    for v in candidates {
        if exalg::in_span(v, acc) {
            continue;
        }
        let jv = j.apply(v);
        acc.push(v.clone());
        acc.push(jv.clone());
        out.push(exalg::sub(v, &exalg::scale(&C::i(), &jv)));
    }
    out
}
