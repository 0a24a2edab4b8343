//! Built-in algebras with complex structures, and seeded generators of
//! random abelian examples.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cxs::AlmostComplexStructure;
use crate::error::{Error, Result};
use crate::exalg::{self, parse_rational, rat, GaussianRational as C, Matrix, Rational};
use crate::lie::{self, Bracket, LieAlgebra};

/// Facts about an entry that the test suite re-derives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedFacts {
    pub dim: usize,
    pub step: usize,
    pub series_dims: Vec<usize>,
    pub center_dim: usize,
    /// `dim H^1_∂̄` for the first structure, when it is abelian.
    pub h1_dim: Option<usize>,
    /// Whether the first structure is abelian.
    pub abelian: bool,
    /// Whether the first structure is `J`-nilpotent.
    pub nilpotent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub algebra: LieAlgebra,
    pub structures: Vec<(String, AlmostComplexStructure)>,
    pub facts: ExpectedFacts,
    /// Structure equations `de^k = Σ c e^{ij}` as originally given, if the
    /// entry was defined that way.
    pub differentials: Option<Vec<Differential>>,
}

impl CatalogEntry {
    /// The first (default) structure.
    pub fn structure(&self) -> &AlmostComplexStructure {
        &self.structures[0].1
    }
}

/// `de^k = Σ c · e^i ∧ e^j` with `i < j` (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Differential {
    pub k: usize,
    pub terms: Vec<(usize, usize, Rational)>,
}

/// Names accepted by [`get`].
pub const NAMES: &[&str] = &["h9", "h15", "n10", "torus"];

/// Looks up `h9`, `h15`, `n10`, `n10(s,t)`, `torus` or `torus(n)`.
///
/// `n10` defaults to `s = 1, t = 0`; `torus` defaults to `n = 3`.
pub fn get(spec: &str) -> Result<CatalogEntry> {
    let spec = spec.trim();
    let (name, args) = match spec.split_once('(') {
        Some((name, rest)) => {
            let inner = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::UnknownEntry(spec.to_string()))?;
            (
                name.trim(),
                inner.split(',').map(str::trim).collect::<Vec<_>>(),
            )
        }
        None => (spec, Vec::new()),
    };
    let bad = || Error::InvalidParameters(format!("cannot parse parameters of `{spec}`"));
    match (name, args.len()) {
        ("h9", 0) => h9(),
        ("h15", 0) => h15(),
        ("n10", 0) => n10(&rat(1, 1), &rat(0, 1)),
        ("n10", 2) => {
            let s = parse_rational(args[0]).ok_or_else(bad)?;
            let t = parse_rational(args[1]).ok_or_else(bad)?;
            n10(&s, &t)
        }
        ("torus", 0) => torus(3),
        ("torus", 1) => torus(args[0].parse().map_err(|_| bad())?),
        ("h9" | "h15" | "n10" | "torus", _) => Err(bad()),
        _ => Err(Error::UnknownEntry(spec.to_string())),
    }
}

fn br(i: usize, j: usize, terms: &[(usize, i64)]) -> Bracket {
    Bracket {
        i: i - 1,
        j: j - 1,
        terms: terms.iter().map(|&(k, c)| (k - 1, rat(c, 1))).collect(),
    }
}

fn unit(m: usize, i: usize) -> Vec<Rational> {
    (0..m)
        .map(|k| {
            if k == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        })
        .collect()
}

/// `J e_1 = e_2, J e_3 = e_4, …`.
fn standard_structure(m: usize) -> Result<AlmostComplexStructure> {
    AlmostComplexStructure::standard(m)
}

fn finish(
    name: &str,
    algebra: LieAlgebra,
    structures: Vec<(String, AlmostComplexStructure)>,
    differentials: Option<Vec<Differential>>,
) -> Result<CatalogEntry> {
    let report = lie::validate_lie(&algebra)?;
    let series = lie::ascending_series(&algebra)?;
    let center = lie::center(&algebra);
    let j = &structures[0].1;
    let abelian = crate::cxs::is_abelian(&algebra, j)?;
    let nilpotent = crate::cxs::j_ascending_series(&algebra, j).nilpotent;
    let h1_dim = if abelian {
        let frame = crate::cxs::adapted_frame(&algebra, j)?;
        Some(
            crate::dolbeault::DolbeaultComplex::new(&frame)?
                .cohomology(1)?
                .dimension,
        )
    } else {
        None
    };
    let facts = ExpectedFacts {
        dim: report.dim,
        step: report.step,
        series_dims: series.dims(),
        center_dim: center.len(),
        h1_dim,
        abelian,
        nilpotent,
    };
    Ok(CatalogEntry {
        name: name.to_string(),
        algebra,
        structures,
        facts,
        differentials,
    })
}

/// The 3-step algebra with `[e1,e2] = e3`, `[e1,e3] = [e2,e4] = e6`.
pub fn h9() -> Result<CatalogEntry> {
    let a = LieAlgebra::new(
        "h9",
        6,
        &[
            br(1, 2, &[(3, 1)]),
            br(1, 3, &[(6, 1)]),
            br(2, 4, &[(6, 1)]),
        ],
    )?;
    finish("h9", a, vec![("J".into(), standard_structure(6)?)], None)
}

/// The 3-step algebra with `[e1,e2] = −e4`, `[e1,e3] = [e2,e4] = e5`,
/// `[e1,e4] = −[e2,e3] = −e6`.
pub fn h15() -> Result<CatalogEntry> {
    let a = LieAlgebra::new(
        "h15",
        6,
        &[
            br(1, 2, &[(4, -1)]),
            br(1, 3, &[(5, 1)]),
            br(2, 4, &[(5, 1)]),
            br(1, 4, &[(6, -1)]),
            br(2, 3, &[(6, 1)]),
        ],
    )?;
    finish("h15", a, vec![("J".into(), standard_structure(6)?)], None)
}

fn n10_differentials() -> Vec<Differential> {
    let d = |k: usize, terms: &[(usize, usize, i64)]| Differential {
        k: k - 1,
        terms: terms
            .iter()
            .map(|&(i, j, c)| (i - 1, j - 1, rat(c, 1)))
            .collect(),
    };
    vec![
        d(4, &[(1, 2, -1), (1, 3, 1), (2, 7, 1)]),
        d(5, &[(1, 2, -1), (1, 7, -1), (2, 3, 1)]),
        d(
            6,
            &[
                (1, 4, -1),
                (1, 5, -1),
                (2, 5, -1),
                (2, 4, 1),
                (1, 9, -1),
                (2, 8, 1),
                (4, 5, -2),
                (4, 8, 1),
                (5, 9, 1),
                (4, 9, -1),
                (5, 8, 1),
                (8, 9, -1),
            ],
        ),
        d(8, &[(1, 7, -1), (2, 3, 1), (1, 3, -1), (2, 7, -1)]),
        d(
            9,
            &[(1, 2, 2), (1, 7, 1), (2, 3, -1), (1, 3, -1), (2, 7, -1)],
        ),
    ]
}

/// Brackets from structure equations under `dα(X, Y) = −α([X, Y])`:
/// `de^k = Σ c e^{ij}` gives a `−c e_k` term in `[e_i, e_j]`.
pub fn brackets_from_differentials(dim: usize, ds: &[Differential]) -> Result<LieAlgebra> {
    let mut c = vec![Rational::zero(); dim * dim * dim];
    for d in ds {
        for (i, j, v) in &d.terms {
            if i >= j || *j >= dim || d.k >= dim {
                return Err(Error::Dimension(
                    "structure equation term out of range".into(),
                ));
            }
            c[(i * dim + j) * dim + d.k] -= v;
            c[(j * dim + i) * dim + d.k] += v;
        }
    }
    LieAlgebra::from_structure_constants("", dim, c)
}

/// Structure equations of an algebra, one per nonzero `de^k`, terms sorted
/// by `(i, j)`.
pub fn differentials(a: &LieAlgebra) -> Vec<Differential> {
    let m = a.dim();
    (0..m)
        .filter_map(|k| {
            let terms: Vec<(usize, usize, Rational)> = (0..m)
                .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
                .filter_map(|(i, j)| {
                    let c = a.structure_constant(i, j, k);
                    (!c.is_zero()).then(|| (i, j, -c.clone()))
                })
                .collect();
            (!terms.is_empty()).then_some(Differential { k, terms })
        })
        .collect()
}

fn normalized(ds: &[Differential]) -> Vec<Differential> {
    let mut out: Vec<Differential> = ds
        .iter()
        .map(|d| {
            let mut terms = d.terms.clone();
            terms.sort_by_key(|(i, j, _)| (*i, *j));
            Differential { k: d.k, terms }
        })
        .filter(|d| !d.terms.is_empty())
        .collect();
    out.sort_by_key(|d| d.k);
    out
}

/// The 10-dimensional algebra given by its structure equations, with the
/// structure `J_{s,t}` (requires `t² ≠ s²`).
pub fn n10(s: &Rational, t: &Rational) -> Result<CatalogEntry> {
    if t * t == s * s {
        return Err(Error::InvalidParameters("t^2 = s^2".into()));
    }
    let given = n10_differentials();
    let a = brackets_from_differentials(10, &given)?.with_name("n10");
    if normalized(&differentials(&a)) != normalized(&given) {
        return Err(Error::SelfCheck(
            "n10 brackets do not reproduce the structure equations".into(),
        ));
    }
    let j = n10_structure(s, t)?;
    finish(
        "n10",
        a,
        vec![(
            format!("J({},{})", exalg::fmt_rational(s), exalg::fmt_rational(t)),
            j,
        )],
        Some(given),
    )
}

/// `J_{s,t}` on the 10-dimensional algebra.
pub fn n10_structure(s: &Rational, t: &Rational) -> Result<AlmostComplexStructure> {
    let m = 10;
    let q = Rational::one() / (t * t - s * s);
    let combo = |terms: &[(usize, Rational)]| {
        let mut v = vec![Rational::zero(); m];
        for (k, c) in terms {
            v[k - 1] += c;
        }
        v
    };
    let images = vec![
        (0, unit(m, 1)),
        (3, unit(m, 4)),
        (7, unit(m, 8)),
        (2, combo(&[(6, t.clone()), (7, s.clone())])),
        (9, combo(&[(6, -s.clone()), (7, -t.clone())])),
        (5, combo(&[(3, -t * &q), (10, -s * &q)])),
        (6, combo(&[(3, s * &q), (10, t * &q)])),
    ];
    AlmostComplexStructure::from_images(m, &images)
}

/// The abelian algebra `ℝ^{2n}` with the standard structure.
pub fn torus(n: usize) -> Result<CatalogEntry> {
    if n == 0 || n > 8 {
        return Err(Error::InvalidParameters(format!(
            "torus dimension {n} out of range 1..=8"
        )));
    }
    let name = format!("torus{n}");
    let a = LieAlgebra::abelian(name.clone(), 2 * n);
    finish(
        &name,
        a,
        vec![("J".into(), standard_structure(2 * n)?)],
        None,
    )
}

/// A random nilpotent algebra of step 2 or 3 with an abelian structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RandomAbelian {
    pub seed: u64,
    pub kind: &'static str,
    pub algebra: LieAlgebra,
    pub j: AlmostComplexStructure,
}

/// `count` random examples, deterministic in `seed`. All have real dimension
/// at most 10 and nilpotency step 2 or 3.
pub fn random_abelian_suite(count: usize, seed: u64) -> Result<Vec<RandomAbelian>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count {
        attempts += 1;
        if attempts > 50 * count.max(1) {
            return Err(Error::SelfCheck(
                "random generator keeps producing unusable algebras".into(),
            ));
        }
        let sub = rng.gen::<u64>();
        let candidate = random_abelian(sub)?;
        let step = lie::validate_lie(&candidate.algebra)?.step;
        if step == 2 || step == 3 {
            out.push(candidate);
        }
    }
    Ok(out)
}

/// One random example; the construction is chosen by the seed.
pub fn random_abelian(seed: u64) -> Result<RandomAbelian> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (kind, algebra, j) = match rng.gen_range(0..5) {
        0 => {
            let (p, q) = [(2, 1), (2, 2), (3, 1)][rng.gen_range(0..3)];
            let (a, j) = two_step(&mut rng, p, q)?;
            ("two-step", a, j)
        }
        1 => {
            let (a, j) = affine(&cubic_truncated())?;
            ("aff(x,x2,x3)", a, j)
        }
        2 => {
            let alpha = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
            let beta = rat(rng.gen_range(-2..=2), rng.gen_range(1..=2));
            let (a, j) = affine(&cubic_with_y(&alpha, &beta))?;
            ("aff(x,x2,x3,y)", a, j)
        }
        3 => {
            let (a, j) = affine(&two_variable_quadratic())?;
            ("aff(m/m3)", a, j)
        }
        _ => {
            let (a1, j1) = affine(&CommutativeAlgebra {
                dim: 2,
                mult: vec![(0, 0, 1, rat(1, 1))],
            })?;
            let (a2, j2) = two_step(&mut rng, 2, 1)?;
            let (a, j) = direct_sum(&a1, &j1, &a2, &j2)?;
            ("aff(x,x2)+two-step", a, j)
        }
    };
    let s = complex_linear_change(&mut rng, &j)?;
    let algebra = algebra
        .change_basis(&s)?
        .with_name(format!("random-{seed:016x}"));
    let j = j.change_basis(&s)?;
    Ok(RandomAbelian {
        seed,
        kind,
        algebra,
        j,
    })
}

/// `V ⊕ Z` with `[x, y] = Σ_k (a_k(x,y) + a_k(Jx,Jy)) z_k` for random
/// antisymmetric `a_k` on `V = ℝ^{2p}` and `Z = ℝ^{2q}`.
fn two_step(
    rng: &mut ChaCha8Rng,
    p: usize,
    q: usize,
) -> Result<(LieAlgebra, AlmostComplexStructure)> {
    let v = 2 * p;
    let m = v + 2 * q;
    let jv = AlmostComplexStructure::standard(v)?;
    let jm = jv.matrix();
    let mut c = vec![Rational::zero(); m * m * m];
    for k in 0..2 * q {
        let mut a = vec![vec![Rational::zero(); v]; v];
        for i in 0..v {
            for j in i + 1..v {
                let x = rat(rng.gen_range(-2..=2), 1);
                a[j][i] = -x.clone();
                a[i][j] = x;
            }
        }
        for i in 0..v {
            for j in 0..v {
                // a(J e_i, J e_j) = Σ J[p][i] J[q][j] a[p][q]
                let mut w = a[i][j].clone();
                for pp in 0..v {
                    for qq in 0..v {
                        let jp = &jm[(pp, i)];
                        let jq = &jm[(qq, j)];
                        if !jp.is_zero() && !jq.is_zero() {
                            w += &jp.re * &jq.re * &a[pp][qq];
                        }
                    }
                }
                c[(i * m + j) * m + v + k] = w;
            }
        }
    }
    let algebra = LieAlgebra::from_structure_constants("two-step", m, c)?;
    Ok((algebra, AlmostComplexStructure::standard(m)?))
}

/// A commutative associative algebra by its nonzero products
/// `b_i b_j = c · b_k` with `i ≤ j`.
struct CommutativeAlgebra {
    dim: usize,
    mult: Vec<(usize, usize, usize, Rational)>,
}

impl CommutativeAlgebra {
    fn product(&self, i: usize, j: usize) -> Vec<Rational> {
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        let mut out = vec![Rational::zero(); self.dim];
        for (a, b, k, c) in &self.mult {
            if (*a, *b) == (i, j) {
                out[*k] += c;
            }
        }
        out
    }
}

/// `x, x², x³` with `x·x = x²`, `x·x² = x³`.
fn cubic_truncated() -> CommutativeAlgebra {
    CommutativeAlgebra {
        dim: 3,
        mult: vec![(0, 0, 1, rat(1, 1)), (0, 1, 2, rat(1, 1))],
    }
}

/// `x, x², x³, y` with `xy = αx³`, `y² = βx³`.
fn cubic_with_y(alpha: &Rational, beta: &Rational) -> CommutativeAlgebra {
    CommutativeAlgebra {
        dim: 4,
        mult: vec![
            (0, 0, 1, rat(1, 1)),
            (0, 1, 2, rat(1, 1)),
            (0, 3, 2, alpha.clone()),
            (3, 3, 2, beta.clone()),
        ],
    }
}

/// `m/m³` for `m = (x, y)`: basis `x, y, x², xy, y²`.
fn two_variable_quadratic() -> CommutativeAlgebra {
    CommutativeAlgebra {
        dim: 5,
        mult: vec![
            (0, 0, 2, rat(1, 1)),
            (0, 1, 3, rat(1, 1)),
            (1, 1, 4, rat(1, 1)),
        ],
    }
}

/// `A ⊕ A` with `[(a,b), (a',b')] = (0, ab' − a'b)` and `J(a,b) = (b,−a)`.
fn affine(alg: &CommutativeAlgebra) -> Result<(LieAlgebra, AlmostComplexStructure)> {
    let d = alg.dim;
    let m = 2 * d;
    let mut c = vec![Rational::zero(); m * m * m];
    for i in 0..d {
        for j in 0..d {
            // [(e_i, 0), (0, e_j)] = (0, e_i e_j)
            let prod = alg.product(i, j);
            for (k, v) in prod.into_iter().enumerate() {
                if !v.is_zero() {
                    c[(i * m + d + j) * m + d + k] += &v;
                    c[((d + j) * m + i) * m + d + k] -= &v;
                }
            }
        }
    }
    let algebra = LieAlgebra::from_structure_constants("aff", m, c)?;
    let mut jm = Matrix::zeros(m, m);
    for i in 0..d {
        jm[(d + i, i)] = -C::one();
        jm[(i, d + i)] = C::one();
    }
    Ok((algebra, AlmostComplexStructure::new(jm)?))
}

fn direct_sum(
    a: &LieAlgebra,
    ja: &AlmostComplexStructure,
    b: &LieAlgebra,
    jb: &AlmostComplexStructure,
) -> Result<(LieAlgebra, AlmostComplexStructure)> {
    let (p, q) = (a.dim(), b.dim());
    let m = p + q;
    let mut c = vec![Rational::zero(); m * m * m];
    for i in 0..p {
        for j in 0..p {
            for k in 0..p {
                c[(i * m + j) * m + k] = a.structure_constant(i, j, k).clone();
            }
        }
    }
    for i in 0..q {
        for j in 0..q {
            for k in 0..q {
                c[((p + i) * m + p + j) * m + p + k] = b.structure_constant(i, j, k).clone();
            }
        }
    }
    let mut jm = Matrix::zeros(m, m);
    for i in 0..p {
        for k in 0..p {
            jm[(k, i)] = ja.matrix()[(k, i)].clone();
        }
    }
    for i in 0..q {
        for k in 0..q {
            jm[(p + k, p + i)] = jb.matrix()[(k, i)].clone();
        }
    }
    let algebra = LieAlgebra::from_structure_constants(format!("{}+{}", a.name(), b.name()), m, c)?;
    Ok((algebra, AlmostComplexStructure::new(jm)?))
}

/// Random invertible `S = R − JRJ`, which commutes with `J`.
fn complex_linear_change(rng: &mut ChaCha8Rng, j: &AlmostComplexStructure) -> Result<Matrix> {
    let m = j.dim();
    let jm = j.matrix();
    loop {
        let mut r = Matrix::zeros(m, m);
        for i in 0..m {
            for k in 0..m {
                let v: i64 = if i == k {
                    1
                } else if rng.gen_bool(0.25) {
                    rng.gen_range(-1..=1)
                } else {
                    0
                };
                r[(i, k)] = C::from_int(v);
            }
        }
        let s = r.sub(&jm.mul(&r)?.mul(jm)?)?;
        if s.inverse().is_some() {
            return Ok(s);
        }
    }
}
