//! Acceptance criteria, one test per criterion. Every check prints a
//! `PASS` or `FAIL` line; a criterion passes only if all of its checks do.

mod common;

use common::*;
use nilcx::catalog;
use nilcx::cxs::{self, AlmostComplexStructure};
use nilcx::dolbeault::{inner_product, DolbeaultComplex, VectorForm};
use nilcx::exalg::{self, rat};
use nilcx::kuranishi;
use nilcx::lie::LieAlgebra;
use nilcx::{GaussianRational as C, Matrix, Vector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Criterion {
    id: &'static str,
    failures: Vec<String>,
}

impl Criterion {
    fn new(id: &'static str) -> Self {
        Self {
            id,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, what: impl AsRef<str>, ok: bool) {
        let what = what.as_ref();
        println!(
            "{} criterion {}: {}",
            if ok { "PASS" } else { "FAIL" },
            self.id,
            what
        );
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn note(&self, what: impl AsRef<str>) {
        println!("INFO criterion {}: {}", self.id, what.as_ref());
    }

    fn finish(self) {
        println!(
            "{} criterion {}",
            if self.failures.is_empty() {
                "PASS"
            } else {
                "FAIL"
            },
            self.id
        );
        assert!(
            self.failures.is_empty(),
            "criterion {} failed: {:?}",
            self.id,
            self.failures
        );
    }
}

fn point(values: &[(i64, i64)]) -> Vec<C> {
    rational_point(values)
}

fn classify(a: &LieAlgebra, j: &AlmostComplexStructure) -> (bool, bool, bool) {
    let class = kuranishi::classify_structure(a, j).unwrap();
    (class.integrable, class.abelian, class.nilpotent)
}

#[test]
fn criterion_1_cohomology_dimensions() {
    let mut c = Criterion::new("1");
    for (name, complex, given, dim) in [
        ("h9", h9_complex(), h9_reference_betas(), 3),
        ("h15", h15_complex(), h15_reference_betas(), 5),
    ] {
        let h1 = complex.cohomology(1).unwrap();
        c.check(
            format!("dim H^1({name}) = {} (expected {dim})", h1.dimension),
            h1.dimension == dim,
        );
        let harmonic = given
            .iter()
            .all(|b| complex.dbar(b).is_zero() && complex.dbar_adjoint(b).unwrap().is_zero());
        c.check(
            format!("{name}: reference representatives are harmonic"),
            harmonic,
        );
        c.check(
            format!("{name}: reference span equals computed harmonic space"),
            same_span(&given, &h1.harmonic_basis),
        );
    }
    c.finish();
}

#[test]
fn criterion_2_infinitesimal_abelian_locus() {
    let mut c = Criterion::new("2");
    let h9 = h9_complex();
    let locus = kuranishi::infinitesimal_abelian_locus(&h9).unwrap();
    c.check(
        format!("h9 locus dimension {} = dim H^1 = 3", locus.dimension),
        locus.dimension == 3,
    );

    let h15 = h15_complex();
    let h1 = h15.cohomology(1).unwrap();
    let locus = kuranishi::infinitesimal_abelian_locus(&h15).unwrap();
    c.check(
        format!("h15 locus dimension {} = 3", locus.dimension),
        locus.dimension == 3,
    );
    // the Gram matrix is diagonal, so orthonormal coordinates are a diagonal
    // rescaling of ours and a4 = a5 = 0 reads t4 = t5 = 0
    let diagonal = (0..5).all(|i| (0..5).all(|k| i == k || h1.gram[(i, k)] == C::from_int(0)));
    c.check(
        "h15 harmonic basis is orthogonal (Gram rescaling is diagonal)",
        diagonal,
    );
    let cut: Vec<Vector> = (0..3).map(|i| unit(5, i)).collect();
    let same = locus.basis.len() == 3 && locus.basis.iter().all(|v| exalg::in_span(v, &cut));
    c.check("h15 locus is {a4 = a5 = 0}", same);
    let given = h15_reference_betas();
    c.check(
        "h15 computed basis is the reference one up to scale",
        h1.harmonic_basis == given,
    );
    c.finish();
}

#[test]
fn criterion_3_h9_stability() {
    let mut c = Criterion::new("3");
    let complex = h9_complex();
    let frame = complex.frame();
    let series = kuranishi::kuranishi_series(&complex, 6).unwrap();
    let higher = (2..=6).all(|r| series.phi(r).is_empty());
    c.check(
        "h9 order 6: phi_r = 0 for 2 <= r <= 6 (symbolic in t1..t3)",
        higher,
    );
    let obstructions = kuranishi::obstructions(&complex, &series).unwrap();
    c.check(
        format!(
            "h9: all {} obstruction polynomials vanish identically",
            obstructions.polys.len()
        ),
        obstructions.is_zero(),
    );
    let samples = [
        point(&[(1, 4), (0, 1), (0, 1)]),
        point(&[(0, 1), (-1, 4), (1, 5)]),
        point(&[(1, 7), (1, 9), (-1, 4)]),
        point(&[(-1, 4), (1, 4), (1, 4)]),
        point(&[(1, 10), (-1, 6), (1, 8)]),
    ];
    for t in &samples {
        let d = kuranishi::deform_structure(frame, &series, t).unwrap();
        let (integrable, abelian, _) = classify(frame.algebra(), &d.j);
        let oracle = nijenhuis_vanishes(frame.algebra(), &d.j)
            && brackets_commute_with_j(frame.algebra(), &d.j);
        c.check(
            format!("h9 at t = {t:?}: integrable and abelian"),
            integrable && abelian && oracle,
        );
    }
    c.finish();
}

#[test]
fn criterion_4_h15_instability() {
    let mut c = Criterion::new("4");
    let complex = h15_complex();
    let frame = complex.frame();
    let a = frame.algebra();
    let order = 4;
    let series = kuranishi::kuranishi_series(&complex, order).unwrap();
    let obstructions = kuranishi::obstructions(&complex, &series).unwrap();

    let beta4 = point(&[(0, 1), (0, 1), (0, 1), (1, 10), (0, 1)]);
    let d = kuranishi::deform_structure(frame, &series, &beta4).unwrap();
    let (integrable, abelian, nilpotent) = classify(a, &d.j);
    c.note(format!("direction beta4, t = 1/10: integrable {integrable}, nilpotent {nilpotent}, abelian {abelian}"));
    c.note(format!(
        "direction beta4: obstruction values at t = {:?}; {{beta4, beta4}} has nonzero harmonic part",
        obstructions.polys.iter().map(|p| p.eval(&beta4).to_string()).collect::<Vec<_>>()
    ));
    c.check(
        "beta4, t = 1/10: deformed J integrable",
        integrable && nijenhuis_vanishes(a, &d.j),
    );
    c.check("beta4, t = 1/10: deformed J is J-nilpotent", nilpotent);
    c.check(
        "beta4, t = 1/10: deformed J is not abelian",
        !abelian && !brackets_commute_with_j(a, &d.j),
    );

    let beta5 = point(&[(0, 1), (0, 1), (0, 1), (0, 1), (1, 10)]);
    let d = kuranishi::deform_structure(frame, &series, &beta5).unwrap();
    let (integrable, abelian, nilpotent) = classify(a, &d.j);
    c.note(format!(
        "supplementary, direction beta5 (a5 != 0), t = 1/10: integrable {integrable}, nilpotent {nilpotent}, abelian {abelian}"
    ));

    let inside = [
        point(&[(1, 10), (0, 1), (0, 1), (0, 1), (0, 1)]),
        point(&[(0, 1), (1, 10), (0, 1), (0, 1), (0, 1)]),
        point(&[(0, 1), (0, 1), (1, 10), (0, 1), (0, 1)]),
        point(&[(1, 10), (-1, 7), (1, 5), (0, 1), (0, 1)]),
    ];
    for t in &inside {
        let d = kuranishi::deform_structure(frame, &series, t).unwrap();
        let (integrable, abelian, nilpotent) = classify(a, &d.j);
        let oracle = nijenhuis_vanishes(a, &d.j) && brackets_commute_with_j(a, &d.j);
        c.check(
            format!("inside a4 = a5 = 0, t = {t:?}: integrable, nilpotent, abelian"),
            integrable && abelian && nilpotent && oracle,
        );
    }
    c.finish();
}

#[test]
fn criterion_5_ten_dimensional_instability() {
    let mut c = Criterion::new("5");
    for (s, t) in [((1, 1), (1, 2)), ((3, 1), (1, 2)), ((2, 1), (-1, 3))] {
        let (s, t) = (rat(s.0, s.1), rat(t.0, t.1));
        let e = catalog::n10(&s, &t).unwrap();
        let a = &e.algebra;
        let j = e.structure();
        let label = format!("J(s={s}, t={t})");
        let frame = cxs::ComplexFrame::standard(a, j).unwrap();
        let no_02 = (0..5).all(|r| frame.d_theta(r).component(0, 2).is_zero());
        c.check(
            format!("{label}: every d(omega^j) has zero (0,2)-part"),
            no_02 && nijenhuis_vanishes(a, j),
        );
        let e6_e10 = vec![unit(10, 5), unit(10, 9)];
        c.check(
            format!("{label}: span(e6, e10) is not J-invariant"),
            !cxs::is_invariant(j, &e6_e10),
        );
        let series = cxs::j_ascending_series(a, j);
        c.note(format!(
            "{label}: J-ascending series dims {:?}, algebra center dim {}, step {}",
            series.flag.dims(),
            nilcx::lie::center(a).len(),
            e.facts.step
        ));
        c.check(
            format!("{label}: J-ascending series reports non-nilpotent"),
            !series.nilpotent && j_series_dims(a, j).last() != Some(&10),
        );
    }
    let e = catalog::n10(&rat(1, 1), &rat(0, 1)).unwrap();
    c.check(
        "J(s=1, t=0): abelian",
        cxs::is_abelian(&e.algebra, e.structure()).unwrap()
            && brackets_commute_with_j(&e.algebra, e.structure()),
    );
    c.finish();
}

struct Case {
    name: String,
    complex: DolbeaultComplex,
    base: AlmostComplexStructure,
}

fn property_cases() -> Vec<Case> {
    let mut out = Vec::new();
    for spec in ["h9", "h15", "n10", "torus(3)"] {
        let e = catalog::get(spec).unwrap();
        out.push(Case {
            name: spec.to_string(),
            complex: complex_of(&e.algebra, e.structure()),
            base: e.structure().clone(),
        });
    }
    for r in catalog::random_abelian_suite(25, 20240601).unwrap() {
        out.push(Case {
            name: format!("{} ({})", r.algebra.name(), r.kind),
            complex: complex_of(&r.algebra, &r.j),
            base: r.j.clone(),
        });
    }
    out
}

fn random_form(rng: &mut ChaCha8Rng, n: usize, k: usize) -> VectorForm {
    let len = VectorForm::zero(n, k).coeffs().len();
    let coeffs = (0..len)
        .map(|_| C::new(rat(rng.gen_range(-3..=3), 1), rat(rng.gen_range(-3..=3), 1)))
        .collect();
    VectorForm::from_coeffs(n, k, coeffs).unwrap()
}

#[test]
fn criterion_6_property_suites() {
    let mut c = Criterion::new("6");
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let cases = property_cases();
    let steps: Vec<usize> = cases
        .iter()
        .map(|k| {
            nilcx::lie::validate_lie(k.complex.frame().algebra())
                .unwrap()
                .step
        })
        .collect();
    c.note(format!(
        "{} cases: 4 catalog entries and 25 random algebras of steps {:?}",
        cases.len(),
        &steps[4..]
    ));

    let mut d_squared = true;
    let mut bookkeeping = true;
    let mut decomposition = true;
    let mut green = true;
    let mut pairs = 0;
    let mut adjoint = true;
    let mut residual = true;
    let mut orthogonal = true;
    let mut at_zero = true;
    for case in &cases {
        let complex = &case.complex;
        let n = complex.n();
        for k in 0..n {
            d_squared &= complex
                .dbar_matrix(k + 1)
                .mul(complex.dbar_matrix(k))
                .unwrap()
                .is_zero();
        }
        for k in 0..=n {
            let h = complex.cohomology(k).unwrap();
            let below = if k == 0 {
                0
            } else {
                complex.dbar_matrix(k - 1).rank()
            };
            bookkeeping &=
                complex.chain_dim(k) == h.dimension + below + complex.dbar_matrix(k).rank();
            let mu = random_form(&mut rng, n, k);
            let g = complex.green(&mu).unwrap();
            let exact = if k == 0 {
                VectorForm::zero(n, 0)
            } else {
                complex.dbar(&complex.dbar_adjoint(&g).unwrap())
            };
            let coexact = if k == n {
                VectorForm::zero(n, n)
            } else {
                complex.dbar_adjoint(&complex.dbar(&g)).unwrap()
            };
            decomposition &= h.project(&mu).add(&exact).add(&coexact) == mu;
            let dim = complex.chain_dim(k);
            let basis: Vec<Vector> = h
                .harmonic_basis
                .iter()
                .map(|b| b.coeffs().to_vec())
                .collect();
            let cols: Vec<Vector> = (0..dim)
                .map(|i| exalg::project_onto_span(&unit(dim, i), &basis).unwrap())
                .collect();
            let projection = Matrix::from_columns(dim, &cols).unwrap();
            let lg = complex
                .laplacian(k)
                .mul(&complex.green_matrix(k).unwrap())
                .unwrap();
            green &= lg.add(&projection).unwrap() == Matrix::identity(dim);
        }
        for i in 0..4 {
            let k = i % n;
            let mu = random_form(&mut rng, n, k + 1);
            let nu = random_form(&mut rng, n, k);
            adjoint &= inner_product(&complex.dbar_adjoint(&mu).unwrap(), &nu).unwrap()
                == inner_product(&mu, &complex.dbar(&nu)).unwrap();
            pairs += 1;
        }

        let order = 3;
        let series = kuranishi::kuranishi_series(complex, order).unwrap();
        let obstructions = kuranishi::obstructions(complex, &series).unwrap();
        let h1 = complex.cohomology(1).unwrap();
        let params = series.params;
        let mut points: Vec<Vec<C>> = (0..params)
            .map(|i| exalg::scale(&C::ratio(1, 10), &unit(params, i)))
            .collect();
        points.push(
            (0..params)
                .map(|_| C::ratio(rng.gen_range(-2..=2), 10))
                .collect(),
        );
        for t in &points {
            let r = kuranishi::mc_residual(complex, &series, t).unwrap();
            if obstructions.vanish_along_ray(t) {
                residual &= r.is_zero();
            } else {
                residual &= !r.is_zero();
            }
            for deg in 2..=order {
                let phi = series.eval_degree(deg, t);
                orthogonal &= h1
                    .harmonic_basis
                    .iter()
                    .all(|b| inner_product(&phi, b).unwrap() == C::from_int(0));
            }
        }
        let d =
            kuranishi::deform_structure(complex.frame(), &series, &vec![C::from_int(0); params])
                .unwrap();
        at_zero &= d.j == case.base;
        if !(d_squared
            && bookkeeping
            && decomposition
            && green
            && adjoint
            && residual
            && orthogonal
            && at_zero)
        {
            c.note(format!("first failing case: {}", case.name));
        }
    }
    c.check("dbar_{k+1} o dbar_k = 0 for all k", d_squared);
    c.check(
        "dim C^k = dim H^k + rank dbar_{k-1} + rank dbar_k",
        bookkeeping,
    );
    c.check(
        "mu = H mu + dbar dbar* G mu + dbar* dbar G mu",
        decomposition,
    );
    c.check(
        format!("<dbar* mu, nu> = <mu, dbar nu> on {pairs} random pairs"),
        adjoint && pairs >= 100,
    );
    c.check("laplacian o G + harmonic projection = identity", green);
    c.check(
        "mc_residual = 0 mod t^(order+1) exactly where all obstructions vanish (order 3)",
        residual,
    );
    c.check("phi_r orthogonal to harmonics for r >= 2", orthogonal);
    c.check("deform_structure(0) = base J", at_zero);
    c.finish();
}

#[test]
fn criterion_7_out_of_scope() {
    println!(
        "SKIP criterion 7: local completeness of the family and the sheaf-level isomorphism are not executable; \
         covered only by the invariance and classification checks of criteria 3 to 6"
    );
}
