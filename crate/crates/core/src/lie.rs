//! Real Lie algebras given by rational structure constants.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exalg::{self, span_basis, GaussianRational as C, Matrix, Rational, Vector};

/// Nonzero bracket `[e_i, e_j] = Σ coeff · e_k` with `i < j` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bracket {
    pub i: usize,
    pub j: usize,
    pub terms: Vec<(usize, Rational)>,
}

/// A real Lie algebra on the basis `e_1..e_m`, stored as the dense tensor
/// `c[i][j][k]` with `[e_i, e_j] = Σ_k c[i][j][k] e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieAlgebra {
    name: String,
    dim: usize,
    c: Vec<Rational>,
}

impl LieAlgebra {
    /// Builds the algebra from the brackets with `i < j`; the rest follows by
    /// antisymmetry. Repeated pairs are rejected.
    pub fn new(name: impl Into<String>, dim: usize, brackets: &[Bracket]) -> Result<Self> {
        let mut c = vec![Rational::zero(); dim * dim * dim];
        let mut seen = std::collections::HashSet::new();
        for b in brackets {
            if b.i >= b.j || b.j >= dim {
                return Err(Error::Dimension(format!(
                    "bracket [e{}, e{}] needs i < j <= {dim}",
                    b.i + 1,
                    b.j + 1
                )));
            }
            if !seen.insert((b.i, b.j)) {
                return Err(Error::Dimension(format!(
                    "bracket [e{}, e{}] given twice",
                    b.i + 1,
                    b.j + 1
                )));
            }
            for (k, v) in &b.terms {
                if *k >= dim {
                    return Err(Error::Dimension(format!("e{} out of range", k + 1)));
                }
                c[(b.i * dim + b.j) * dim + k] += v;
                c[(b.j * dim + b.i) * dim + k] -= v;
            }
        }
        Ok(Self {
            name: name.into(),
            dim,
            c,
        })
    }

    /// Builds the algebra from a full tensor, checking antisymmetry.
    pub fn from_structure_constants(
        name: impl Into<String>,
        dim: usize,
        c: Vec<Rational>,
    ) -> Result<Self> {
        if c.len() != dim * dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} structure constants",
                dim * dim * dim
            )));
        }
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if c[(i * dim + j) * dim + k] != -&c[(j * dim + i) * dim + k] {
                        return Err(Error::Antisymmetry { i: i + 1, j: j + 1 });
                    }
                }
            }
        }
        Ok(Self {
            name: name.into(),
            dim,
            c,
        })
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        Self {
            name: name.into(),
            dim,
            c: vec![Rational::zero(); dim * dim * dim],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[(i * self.dim + j) * self.dim + k]
    }

    pub fn structure_constants(&self) -> &[Rational] {
        &self.c
    }

    /// `[e_i, e_j]` in coordinates.
    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        let start = (i * self.dim + j) * self.dim;
        self.c[start..start + self.dim].to_vec()
    }

    /// The nonzero brackets `[e_i, e_j]`, `i < j`, in lexicographic order.
    pub fn brackets(&self) -> Vec<Bracket> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let terms: Vec<(usize, Rational)> = self
                    .bracket_basis(i, j)
                    .into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect();
                if !terms.is_empty() {
                    out.push(Bracket { i, j, terms });
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(Zero::is_zero)
    }

    /// Complex-bilinear bracket of coordinate vectors in `𝔤_ℂ`.
    pub fn bracket(&self, x: &[C], y: &[C]) -> Vector {
        let m = self.dim;
        let mut out = vec![C::zero(); m];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                if i == j {
                    continue;
                }
                let xy = xi * yj;
                let base = (i * m + j) * m;
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.c[base + k];
                    if !c.is_zero() {
                        *o += &xy.scale(c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad_{e_j}` restricted to the first argument: column `i` is
    /// `[e_i, e_j]`.
    fn right_bracket_matrix(&self, j: usize) -> Matrix {
        let m = self.dim;
        let mut a = Matrix::zeros(m, m);
        for i in 0..m {
            for k in 0..m {
                a[(k, i)] = C::from_rational(self.structure_constant(i, j, k).clone());
            }
        }
        a
    }

    /// Sends the algebra through the real change of basis `f_i = Σ_k s[k][i] e_k`.
    pub fn change_basis(&self, s: &Matrix) -> Result<LieAlgebra> {
        let m = self.dim;
        let inv = s
            .inverse()
            .ok_or_else(|| Error::Dimension("singular change of basis".into()))?;
        if !s.is_real() || s.rows() != m {
            return Err(Error::Dimension(
                "change of basis must be a real square matrix".into(),
            ));
        }
        let cols = s.columns();
        let mut c = vec![Rational::zero(); m * m * m];
        for i in 0..m {
            for j in 0..m {
                let b = inv.mul_vec(&self.bracket(&cols[i], &cols[j]))?;
                for (k, v) in b.into_iter().enumerate() {
                    c[(i * m + j) * m + k] = v.re;
                }
            }
        }
        LieAlgebra::from_structure_constants(self.name.clone(), m, c)
    }
}

/// Outcome of [`validate_lie`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub dim: usize,
    /// Nilpotency step `k`: the ascending series reaches `𝔤` at `𝔤_k`.
    pub step: usize,
}

/// Checks antisymmetry, the Jacobi identity on all basis triples, and
/// nilpotency.
pub fn validate_lie(a: &LieAlgebra) -> Result<ValidationReport> {
    let m = a.dim();
    for i in 0..m {
        for j in i..m {
            for k in 0..m {
                if *a.structure_constant(i, j, k) != -a.structure_constant(j, i, k) {
                    return Err(Error::Antisymmetry { i: i + 1, j: j + 1 });
                }
            }
        }
    }
    check_jacobi(a)?;
    let flag = series(a, None)?;
    Ok(ValidationReport {
        dim: m,
        step: flag.len(),
    })
}

fn check_jacobi(a: &LieAlgebra) -> Result<()> {
    let m = a.dim();
    let e = |i: usize| -> Vector {
        let mut v = vec![C::zero(); m];
        v[i] = C::one();
        v
    };
    for i in 0..m {
        for j in i + 1..m {
            let eij = a.bracket(&e(i), &e(j));
            for k in j + 1..m {
                let ejk = a.bracket(&e(j), &e(k));
                let eki = a.bracket(&e(k), &e(i));
                let s = exalg::add(
                    &exalg::add(&a.bracket(&e(i), &ejk), &a.bracket(&e(j), &eki)),
                    &a.bracket(&e(k), &eij),
                );
                if !exalg::is_zero_vec(&s) {
                    return Err(Error::Jacobi {
                        i: i + 1,
                        j: j + 1,
                        k: k + 1,
                    });
                }
            }
        }
    }
    Ok(())
}

/// Increasing chain of subspaces `0 = V_0 ⊂ V_1 ⊂ … ⊂ V_k = 𝔤`.
///
/// Only `V_1..V_k` are stored; each is a canonical (reduced echelon) basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flag {
    pub subspaces: Vec<Vec<Vector>>,
}

impl Flag {
    pub fn dims(&self) -> Vec<usize> {
        self.subspaces.iter().map(Vec::len).collect()
    }

    pub fn len(&self) -> usize {
        self.subspaces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subspaces.is_empty()
    }

    /// `V_ℓ`, with `V_0 = {0}`.
    pub fn level(&self, l: usize) -> &[Vector] {
        if l == 0 {
            &[]
        } else {
            &self.subspaces[l - 1]
        }
    }
}

/// One step of the ascending series: all `X` with `[X, 𝔤] ⊆ prev` (and
/// `[JX, 𝔤] ⊆ prev` when `j` is given).
pub(crate) fn series_step(a: &LieAlgebra, prev: &[Vector], j: Option<&Matrix>) -> Vec<Vector> {
    let m = a.dim();
    let annihilator: Vec<Vector> = if prev.is_empty() {
        Matrix::identity(m).columns()
    } else {
        Matrix::from_rows(prev)
            .expect("equal lengths")
            .kernel_basis()
    };
    let mut rows: Vec<Vector> = Vec::new();
    for e in 0..m {
        let ad = a.right_bracket_matrix(e);
        for q in &annihilator {
            // row r with r·X = q·[X, e_e]
            let r: Vector = (0..m)
                .map(|i| q.iter().enumerate().map(|(k, qk)| qk * &ad[(k, i)]).sum())
                .collect();
            if exalg::is_zero_vec(&r) {
                continue;
            }
            if let Some(j) = j {
                let rj: Vector = (0..m)
                    .map(|i| (0..m).map(|l| &r[l] * &j[(l, i)]).sum())
                    .collect();
                rows.push(rj);
            }
            rows.push(r);
        }
    }
    if rows.is_empty() {
        return Matrix::identity(m).columns();
    }
    let ker = Matrix::from_rows(&rows)
        .expect("equal lengths")
        .kernel_basis();
    span_basis(m, &ker)
}

/// Iterates [`series_step`] until it reaches `𝔤` or stalls.
pub(crate) fn series(a: &LieAlgebra, j: Option<&Matrix>) -> Result<Flag> {
    let m = a.dim();
    let mut subspaces: Vec<Vec<Vector>> = Vec::new();
    let mut prev: Vec<Vector> = Vec::new();
    if m == 0 {
        return Ok(Flag { subspaces });
    }
    loop {
        let next = series_step(a, &prev, j);
        if next.len() == prev.len() {
            return Err(Error::NotNilpotent {
                stalled_at: prev.len(),
                dim: m,
            });
        }
        let done = next.len() == m;
        subspaces.push(next.clone());
        prev = next;
        if done {
            return Ok(Flag { subspaces });
        }
    }
}

/// The ascending central series `𝔤_ℓ = {X : [X, 𝔤] ⊆ 𝔤_{ℓ−1}}`.
///
/// Also verifies that every `𝔤_ℓ / 𝔤_{ℓ−1}` is abelian in `𝔤 / 𝔤_{ℓ−1}`.
pub fn ascending_series(a: &LieAlgebra) -> Result<Flag> {
    let flag = series(a, None)?;
    for l in 1..=flag.len() {
        let cur = flag.level(l);
        let below = flag.level(l - 1);
        for x in cur {
            for y in cur {
                if !exalg::in_span(&a.bracket(x, y), below) {
                    return Err(Error::SelfCheck(format!(
                        "g_{l}/g_{} is not abelian",
                        l - 1
                    )));
                }
            }
        }
    }
    Ok(flag)
}

/// Basis of the center `{X : [X, 𝔤] = 0}`.
pub fn center(a: &LieAlgebra) -> Vec<Vector> {
    series_step(a, &[], None)
}

/// Whether `span(v)` is an ideal.
pub fn is_ideal(a: &LieAlgebra, v: &[Vector]) -> bool {
    let m = a.dim();
    (0..m).all(|e| {
        let mut ev = vec![C::zero(); m];
        ev[e] = C::one();
        v.iter().all(|x| exalg::in_span(&a.bracket(x, &ev), v))
    })
}

/// Standard basis vectors, in order, that extend `span(v)` to all of `ℝ^m`.
pub fn echelon_complement(m: usize, v: &[Vector]) -> Vec<Vector> {
    let mut acc: Vec<Vector> = v.to_vec();
    let mut out = Vec::new();
    for i in 0..m {
        let mut e = vec![C::zero(); m];
        e[i] = C::one();
        if !exalg::in_span(&e, &acc) {
            acc.push(e.clone());
            out.push(e);
        }
    }
    out
}

/// The quotient `𝔤 / V` on the echelon complement of `V`.
pub fn quotient(a: &LieAlgebra, v: &[Vector]) -> Result<LieAlgebra> {
    let m = a.dim();
    let v = span_basis(m, v);
    if !is_ideal(a, &v) {
        return Err(Error::NotIdeal);
    }
    let comp = echelon_complement(m, &v);
    let q = comp.len();
    let mut basis = v.clone();
    basis.extend(comp.iter().cloned());
    let b = Matrix::from_columns(m, &basis)?;
    let mut c = vec![Rational::zero(); q * q * q];
    for i in 0..q {
        for j in 0..q {
            let coords = b.solve(&a.bracket(&comp[i], &comp[j]))?;
            for k in 0..q {
                c[(i * q + j) * q + k] = coords[v.len() + k].re.clone();
            }
        }
    }
    let out = LieAlgebra::from_structure_constants(format!("{}/V", a.name()), q, c)?;
    check_jacobi(&out)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exalg::rat;

    fn br(i: usize, j: usize, terms: &[(usize, i64)]) -> Bracket {
        Bracket {
            i: i - 1,
            j: j - 1,
            terms: terms.iter().map(|&(k, v)| (k - 1, rat(v, 1))).collect(),
        }
    }

    fn h9() -> LieAlgebra {
        LieAlgebra::new(
            "h9",
            6,
            &[
                br(1, 2, &[(3, 1)]),
                br(1, 3, &[(6, 1)]),
                br(2, 4, &[(6, 1)]),
            ],
        )
        .unwrap()
    }

    fn unit(m: usize, i: usize) -> Vector {
        let mut v = vec![C::zero(); m];
        v[i - 1] = C::one();
        v
    }

    #[test]
    fn h9_is_three_step() {
        assert_eq!(validate_lie(&h9()).unwrap().step, 3);
        assert_eq!(ascending_series(&h9()).unwrap().dims(), vec![2, 4, 6]);
    }

    #[test]
    fn abelian_is_one_step() {
        let a = LieAlgebra::abelian("r6", 6);
        assert_eq!(validate_lie(&a).unwrap().step, 1);
        assert_eq!(ascending_series(&a).unwrap().dims(), vec![6]);
        assert_eq!(center(&a).len(), 6);
    }

    #[test]
    fn so3_is_not_nilpotent() {
        let so3 = LieAlgebra::new(
            "so3",
            3,
            &[
                br(1, 2, &[(3, 1)]),
                br(2, 3, &[(1, 1)]),
                br(1, 3, &[(2, -1)]),
            ],
        )
        .unwrap();
        assert_eq!(
            validate_lie(&so3),
            Err(Error::NotNilpotent {
                stalled_at: 0,
                dim: 3
            })
        );
    }

    #[test]
    fn jacobi_violation_is_located() {
        // [e1,e2]=e3, [e2,e3]=e4, [e1,e3]=0 but [e1,e4]=e1 breaks Jacobi
        let bad = LieAlgebra::new(
            "bad",
            4,
            &[
                br(1, 2, &[(3, 1)]),
                br(2, 3, &[(4, 1)]),
                br(1, 4, &[(4, 1)]),
            ],
        )
        .unwrap();
        assert!(matches!(validate_lie(&bad), Err(Error::Jacobi { .. })));
    }

    #[test]
    fn center_of_h9() {
        assert_eq!(center(&h9()), vec![unit(6, 5), unit(6, 6)]);
    }

    #[test]
    fn quotients() {
        let a = h9();
        let flag = ascending_series(&a).unwrap();
        let q = quotient(&a, flag.level(2)).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(q.is_abelian());
        assert_eq!(
            quotient(&a, &[]).unwrap().structure_constants(),
            a.structure_constants()
        );
        assert_eq!(quotient(&a, flag.level(3)).unwrap().dim(), 0);
        assert_eq!(quotient(&a, &[unit(6, 1)]), Err(Error::NotIdeal));
    }
}
