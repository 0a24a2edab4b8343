//! Checks against values computed by independent routes: real-basis brackets
//! instead of frame tables, and hand-expanded formulas.

mod common;

use common::*;
use nilcx::cxs::{self, ComplexFrame, InvariantForm};
use nilcx::dolbeault::{self, DolbeaultComplex, VectorForm};
use nilcx::kuranishi::{self, schouten, schouten_with_coform};
use nilcx::{catalog, exalg, GaussianRational as C, Vector};

/// `(∂̄μ)(X̄_r, X̄_s) = [X̄_r, μX̄_s]^{1,0} − [X̄_s, μX̄_r]^{1,0} − μ([X̄_r, X̄_s])`
/// evaluated with real brackets, for degree 0 and 1.
fn koszul_dbar(frame: &ComplexFrame, mu: &VectorForm) -> VectorForm {
    let n = frame.n();
    let a = frame.algebra();
    let vector_of = |coeffs: &[C]| -> Vector {
        let mut v = vec![C::from_int(0); 2 * n];
        for (b, cb) in coeffs.iter().enumerate() {
            exalg::axpy(&mut v, cb, &frame.x(b));
        }
        v
    };
    let one_zero = |v: &[C]| -> Vector { frame_coordinates(frame, v)[..n].to_vec() };
    let xbar = |j: usize| exalg::conj_vec(&frame.x(j));
    let mut out = VectorForm::zero(n, mu.degree() + 1);
    match mu.degree() {
        0 => {
            let v = vector_of(mu.coeffs());
            for j in 0..n {
                let w = one_zero(&a.bracket(&xbar(j), &v));
                for (b, cb) in w.into_iter().enumerate() {
                    out.add_term(b, 1 << j, cb);
                }
            }
        }
        1 => {
            let apply = |s: usize| -> Vector {
                vector_of(
                    &(0..n)
                        .map(|b| mu.get(b, 1 << s).clone())
                        .collect::<Vec<_>>(),
                )
            };
            for r in 0..n {
                for s in r + 1..n {
                    let mut w = exalg::sub(
                        &a.bracket(&xbar(r), &apply(s)),
                        &a.bracket(&xbar(s), &apply(r)),
                    );
                    w = one_zero(&w);
                    let inner = frame_coordinates(frame, &a.bracket(&xbar(r), &xbar(s)));
                    for (b, wb) in w.iter_mut().enumerate() {
                        for (p, ip) in inner[n..].iter().enumerate() {
                            *wb -= &(ip * mu.get(b, 1 << p));
                        }
                    }
                    for (b, cb) in w.into_iter().enumerate() {
                        out.add_term(b, (1 << r) | (1 << s), cb);
                    }
                }
            }
        }
        _ => unreachable!(),
    }
    out
}

fn basis_forms(n: usize, k: usize) -> Vec<VectorForm> {
    let dim = VectorForm::zero(n, k).coeffs().len();
    (0..dim)
        .map(|i| VectorForm::from_coeffs(n, k, unit(dim, i)).unwrap())
        .collect()
}

fn test_complexes() -> Vec<(String, DolbeaultComplex)> {
    let mut out = vec![
        ("h9".to_string(), h9_complex()),
        ("h15".to_string(), h15_complex()),
    ];
    let n10 = catalog::n10(&exalg::rat(1, 1), &exalg::rat(0, 1)).unwrap();
    out.push(("n10".into(), complex_of(&n10.algebra, n10.structure())));
    for r in catalog::random_abelian_suite(4, 11).unwrap() {
        out.push((r.algebra.name().to_string(), complex_of(&r.algebra, &r.j)));
    }
    out
}

#[test]
fn dbar_matches_koszul_formula_in_degrees_0_and_1() {
    for (name, complex) in test_complexes() {
        let frame = complex.frame();
        for k in 0..=1 {
            for mu in basis_forms(frame.n(), k) {
                assert_eq!(
                    complex.dbar(&mu),
                    koszul_dbar(frame, &mu),
                    "{name}, degree {k}, {mu}"
                );
            }
        }
    }
}

#[test]
fn dbar_vector_on_h9_x3() {
    let complex = h9_complex();
    let frame = complex.frame();
    // by hand: [X̄_2, X_3] = −2e_6 = −i(X_1 − X̄_1), [X̄_3, X_3] = −2i e_3 = −i(X_2 + X̄_2)
    let got = dolbeault::dbar_vector(frame, &unit(3, 2)).unwrap();
    let minus_i = -C::i();
    assert_eq!(
        got,
        vf(3, 1, &[(&[1], 0, minus_i.clone()), (&[2], 1, minus_i)])
    );
    assert_eq!(
        got,
        koszul_dbar(frame, &VectorForm::from_coeffs(3, 0, unit(3, 2)).unwrap())
    );
    assert!(dolbeault::dbar_vector(frame, &unit(3, 0))
        .unwrap()
        .is_zero());
}

#[test]
fn structure_coefficients_match_real_brackets() {
    for (name, complex) in test_complexes() {
        let frame = complex.frame();
        let n = frame.n();
        let sc = cxs::structure_coefficients(frame).unwrap();
        for j in 0..n {
            for k in 0..n {
                // dω^i(X_j, X̄_k) = −ω^i([X_j, X̄_k])
                let w = frame_coordinates(
                    frame,
                    &frame
                        .algebra()
                        .bracket(&frame.x(j), &exalg::conj_vec(&frame.x(k))),
                );
                for i in 0..n {
                    assert_eq!(sc.get(i, j, k), &-&w[i], "{name} c[{i}][{j}][{k}]");
                }
            }
        }
    }
}

#[test]
fn h9_structure_coefficients_frozen() {
    let complex = h9_complex();
    let sc = cxs::structure_coefficients(complex.frame()).unwrap();
    let mut nonzero = Vec::new();
    for i in 0..3 {
        for j in 0..3 {
            for k in 0..3 {
                let v = sc.get(i, j, k);
                if !num_traits::Zero::is_zero(v) {
                    nonzero.push(((i, j, k), v.to_string()));
                }
            }
        }
    }
    // by hand: dω^1(X_2, X̄_3) = −ω^1([e3 − ie4, e1 + ie2]) = −ω^1(−2e6) = i
    assert_eq!(
        nonzero,
        vec![
            ((0, 1, 2), "i".to_string()),
            ((0, 2, 1), "-i".to_string()),
            ((1, 2, 2), "-i".to_string())
        ]
    );
}

/// `Σ` over pairs of monomials of
/// `ω̄^q ∧ ι_{X_b}dω̄^p ⊗ X_a + ω̄^p ∧ ι_{X_a}dω̄^q ⊗ X_b`, built from
/// exterior derivatives of frame forms.
fn schouten_by_forms(frame: &ComplexFrame, mu: &VectorForm, nu: &VectorForm) -> VectorForm {
    let n = frame.n();
    let x = |a: usize| -> Vector { unit(2 * n, a) };
    let term = |coform: usize, v: usize, wedge_with: usize| -> InvariantForm {
        let d = frame.exterior_derivative(&InvariantForm::omega_bar(n, coform));
        InvariantForm::omega_bar(n, wedge_with).wedge(&d.interior(&x(v)))
    };
    let mut out = VectorForm::zero(n, 2);
    for (a, pm, cx) in mu.terms() {
        let p = pm.trailing_zeros() as usize;
        for (b, qm, cy) in nu.terms() {
            let q = qm.trailing_zeros() as usize;
            let coefficient = cx * cy;
            for (form, target) in [(term(p, b, q), a), (term(q, a, p), b)] {
                for (mask, value) in form.terms() {
                    assert_eq!(mask & ((1 << n) - 1), 0, "not a (0,2)-form");
                    out.add_term(target, mask >> n, value * &coefficient);
                }
            }
        }
    }
    out
}

#[test]
fn schouten_matches_form_expansion() {
    for (name, complex) in test_complexes() {
        let frame = complex.frame();
        let basis = basis_forms(frame.n(), 1);
        for mu in &basis {
            for nu in &basis {
                assert_eq!(
                    schouten(frame, mu, nu).unwrap(),
                    schouten_by_forms(frame, mu, nu),
                    "{name}: {{{mu}, {nu}}}"
                );
            }
        }
    }
}

#[test]
fn h15_beta4_self_bracket() {
    let complex = h15_complex();
    let frame = complex.frame();
    let beta4 = &h15_reference_betas()[3];
    let got = schouten(frame, beta4, beta4).unwrap();
    // 2 ω̄^1 ∧ ι_{X_2} dω̄^1 ⊗ X_2
    let d = frame.exterior_derivative(&InvariantForm::omega_bar(3, 0));
    let form = InvariantForm::omega_bar(3, 0).wedge(&d.interior(&unit(6, 1)));
    let mut expected = VectorForm::zero(3, 2);
    for (mask, v) in form.terms() {
        expected.add_term(1, mask >> 3, v * &C::from_int(2));
    }
    assert_eq!(got, expected);
    assert!(!got.is_zero());
    // frozen value
    assert_eq!(got, vf(3, 2, &[(&[0, 2], 1, c(4, 1))]));
    // closed but not exact: a nonzero harmonic part
    assert!(complex.dbar(&got).is_zero());
    assert!(!complex.cohomology(2).unwrap().project(&got).is_zero());
}

#[test]
fn reference_representatives_are_harmonic() {
    for (complex, betas, dim) in [
        (h9_complex(), h9_reference_betas(), 3),
        (h15_complex(), h15_reference_betas(), 5),
    ] {
        for beta in &betas {
            assert!(complex.dbar(beta).is_zero(), "{beta}");
            assert!(complex.dbar_adjoint(beta).unwrap().is_zero(), "{beta}");
        }
        let h1 = complex.cohomology(1).unwrap();
        assert_eq!(h1.dimension, dim);
        assert!(same_span(&h1.harmonic_basis, &betas));
    }
}

#[test]
fn h15_harmonic_basis_is_the_reference_one() {
    let h1 = h15_complex().cohomology(1).unwrap().clone();
    assert_eq!(h1.harmonic_basis, h15_reference_betas());
    let gram: Vec<String> = (0..5).map(|i| h1.gram[(i, i)].to_string()).collect();
    assert_eq!(gram, vec!["1", "5", "1", "1", "1"]);
}

#[test]
fn coform_bracket_matches_contraction_sum() {
    // {μ, ω̄^l} = Σ_j ω̄^j ∧ ι_{V_j} dω̄^l, with V_j = Σ_a μ^a_j X_a
    let complex = h15_complex();
    let frame = complex.frame();
    for mu in basis_forms(3, 1) {
        for l in 0..3 {
            let mut coform = vec![C::from_int(0); 3];
            coform[l] = C::from_int(1);
            let got = schouten_with_coform(frame, &mu, &coform).unwrap();
            let d = frame.exterior_derivative(&InvariantForm::omega_bar(3, l));
            let mut expected = InvariantForm::zero(3);
            for (a, mask, cf) in mu.terms() {
                let j = mask.trailing_zeros() as usize;
                expected = expected.add(
                    &InvariantForm::omega_bar(3, j)
                        .wedge(&d.interior(&unit(6, a)))
                        .scale(cf),
                );
            }
            assert_eq!(got, expected);
            assert!(got.bidegrees().iter().all(|&b| b == (0, 2)));
        }
    }
}

#[test]
fn h15_second_order_term_by_hand() {
    // φ_2 = −½ ∂̄*𝒢 {μ, μ} for μ = Σ t_i β_i, evaluated monomial by monomial
    let complex = h15_complex();
    let frame = complex.frame();
    let series = kuranishi::kuranishi_series(&complex, 2).unwrap();
    let betas = h15_reference_betas();
    for i in 0..5 {
        for j in i..5 {
            let mut q = schouten_by_forms(frame, &betas[i], &betas[j]);
            if i != j {
                q = q.add(&schouten_by_forms(frame, &betas[j], &betas[i]));
            }
            let expected = complex
                .dbar_adjoint(&complex.green(&q).unwrap())
                .unwrap()
                .scale(&C::ratio(-1, 2));
            let mono = nilcx::poly::Monomial::var(5, i).mul(&nilcx::poly::Monomial::var(5, j));
            let got = series
                .coeffs
                .get(&mono)
                .cloned()
                .unwrap_or_else(|| VectorForm::zero(3, 1));
            assert_eq!(got, expected, "t{}t{}", i + 1, j + 1);
        }
    }
    // β4 and β5 are the only directions with a nonzero self term
    let nonzero: Vec<String> = series.phi(2).iter().map(|(m, _)| m.to_string()).collect();
    assert!(
        nonzero.iter().all(|m| m.contains("t4") || m.contains("t5")),
        "{nonzero:?}"
    );
}

#[test]
fn h9_graded_center_contains_x1() {
    let complex = h9_complex();
    let frame = complex.frame();
    for l in 0..3 {
        let d = frame.exterior_derivative(&InvariantForm::omega_bar(3, l));
        assert!(d.interior(&unit(6, 0)).is_zero());
    }
    let center = kuranishi::graded_center(frame).unwrap();
    assert!(center.contains_vector(&unit(3, 0)));
    assert_eq!(center.vectors, vec![unit(3, 0)]);
    assert_eq!(center.coforms, vec![unit(3, 2)]);
}
