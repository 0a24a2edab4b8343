#![allow(dead_code)]

use nilcx::cxs::{AlmostComplexStructure, ComplexFrame};
use nilcx::dolbeault::{DolbeaultComplex, VectorForm};
use nilcx::exalg::{self, rat};
use nilcx::lie::LieAlgebra;
use nilcx::{catalog, cxs, GaussianRational as C, Matrix, Vector};

pub fn c(n: i64, d: i64) -> C {
    C::ratio(n, d)
}

pub fn unit(m: usize, i: usize) -> Vector {
    (0..m)
        .map(|k| {
            if k == i {
                C::from_int(1)
            } else {
                C::from_int(0)
            }
        })
        .collect()
}

pub fn complex_of(a: &LieAlgebra, j: &AlmostComplexStructure) -> DolbeaultComplex {
    let frame = cxs::adapted_frame(a, j).unwrap();
    DolbeaultComplex::new(&frame).unwrap()
}

pub fn h9_complex() -> DolbeaultComplex {
    let e = catalog::h9().unwrap();
    complex_of(&e.algebra, e.structure())
}

pub fn h15_complex() -> DolbeaultComplex {
    let e = catalog::h15().unwrap();
    complex_of(&e.algebra, e.structure())
}

/// `N(x, y) = [Jx, Jy] − J[Jx, y] − J[x, Jy] − [x, y]` on all basis pairs.
pub fn nijenhuis_vanishes(a: &LieAlgebra, j: &AlmostComplexStructure) -> bool {
    let m = a.dim();
    (0..m).all(|p| {
        (p + 1..m).all(|q| {
            let (x, y) = (unit(m, p), unit(m, q));
            let (jx, jy) = (j.apply(&x), j.apply(&y));
            let n = exalg::sub(
                &exalg::sub(
                    &exalg::sub(&a.bracket(&jx, &jy), &j.apply(&a.bracket(&jx, &y))),
                    &j.apply(&a.bracket(&x, &jy)),
                ),
                &a.bracket(&x, &y),
            );
            exalg::is_zero_vec(&n)
        })
    })
}

/// `[Jx, Jy] = [x, y]` on all basis pairs.
pub fn brackets_commute_with_j(a: &LieAlgebra, j: &AlmostComplexStructure) -> bool {
    let m = a.dim();
    (0..m).all(|p| {
        (p + 1..m).all(|q| {
            let (x, y) = (unit(m, p), unit(m, q));
            a.bracket(&j.apply(&x), &j.apply(&y)) == a.bracket(&x, &y)
        })
    })
}

/// Dimensions of `a_l = {x : [x, 𝔤] ⊆ a_{l−1}, [Jx, 𝔤] ⊆ a_{l−1}}`, until
/// the sequence stalls.
pub fn j_series_dims(a: &LieAlgebra, j: &AlmostComplexStructure) -> Vec<usize> {
    let m = a.dim();
    let ad: Vec<Matrix> = (0..m)
        .map(|k| {
            let cols: Vec<Vector> = (0..m)
                .map(|i| a.bracket(&unit(m, i), &unit(m, k)))
                .collect();
            Matrix::from_columns(m, &cols).unwrap()
        })
        .collect();
    let mut current: Vec<Vector> = Vec::new();
    let mut dims = Vec::new();
    loop {
        let annihilator: Vec<Vector> = if current.is_empty() {
            (0..m).map(|i| unit(m, i)).collect()
        } else {
            Matrix::from_rows(&current).unwrap().kernel_basis()
        };
        let mut rows: Vec<Vector> = Vec::new();
        if !annihilator.is_empty() {
            let p = Matrix::from_rows(&annihilator).unwrap();
            for mk in &ad {
                let pm = p.mul(mk).unwrap();
                rows.extend((0..pm.rows()).map(|r| pm.row(r).to_vec()));
                let pmj = pm.mul(j.matrix()).unwrap();
                rows.extend((0..pmj.rows()).map(|r| pmj.row(r).to_vec()));
            }
        }
        let next = if rows.is_empty() {
            (0..m).map(|i| unit(m, i)).collect()
        } else {
            Matrix::from_rows(&rows).unwrap().kernel_basis()
        };
        if next.len() == current.len() {
            return dims;
        }
        dims.push(next.len());
        current = next;
    }
}

/// Frame coordinates (first `n` entries: `(1,0)`-part) of a vector, found
/// by solving against the frame columns.
pub fn frame_coordinates(frame: &ComplexFrame, v: &[C]) -> Vector {
    let cols: Vec<Vector> = (0..2 * frame.n()).map(|p| frame.z(p)).collect();
    exalg::coordinates(v, &cols).unwrap()
}

pub fn vf(n: usize, k: usize, terms: &[(&[usize], usize, C)]) -> VectorForm {
    VectorForm::from_terms(n, k, terms).unwrap()
}

/// Reference harmonic representatives for `𝔥₉`, with the square roots
/// removed.
pub fn h9_reference_betas() -> Vec<VectorForm> {
    vec![
        vf(3, 1, &[(&[0], 0, c(1, 1))]),
        vf(3, 1, &[(&[1], 1, c(1, 1)), (&[2], 2, c(-1, 1))]),
        vf(3, 1, &[(&[1], 0, c(1, 1)), (&[2], 1, c(-1, 1))]),
    ]
}

/// Reference harmonic representatives for `𝔥₁₅`, with the square roots
/// removed.
pub fn h15_reference_betas() -> Vec<VectorForm> {
    vec![
        vf(3, 1, &[(&[0], 0, c(1, 1))]),
        vf(3, 1, &[(&[1], 0, c(1, 1)), (&[2], 1, c(-2, 1))]),
        vf(3, 1, &[(&[2], 0, c(1, 1))]),
        vf(3, 1, &[(&[0], 1, c(1, 1))]),
        vf(3, 1, &[(&[1], 1, c(1, 1))]),
    ]
}

pub fn same_span(a: &[VectorForm], b: &[VectorForm]) -> bool {
    let va: Vec<Vector> = a.iter().map(|x| x.coeffs().to_vec()).collect();
    let vb: Vec<Vector> = b.iter().map(|x| x.coeffs().to_vec()).collect();
    exalg::span_dim(&va) == exalg::span_dim(&vb) && va.iter().all(|v| exalg::in_span(v, &vb))
}

pub fn rational_point(values: &[(i64, i64)]) -> Vec<C> {
    values
        .iter()
        .map(|&(n, d)| C::from_rational(rat(n, d)))
        .collect()
}
