//! Invariant complex forms written in a frame coframe `θ^1..θ^{2n}`, where
//! `θ^a = ω^a` and `θ^{n+a} = ω̄^a`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::exalg::GaussianRational as C;

/// Sign of `θ^a ∧ θ^b` relative to `θ^{a∪b}` (indices sorted), or `None`
/// when the monomials overlap.
pub(crate) fn wedge_sign(a: u32, b: u32) -> Option<i32> {
    if a & b != 0 {
        return None;
    }
    // count pairs (x in a, y in b) with x > y
    let mut inversions = 0u32;
    let mut bits = b;
    while bits != 0 {
        let y = bits.trailing_zeros();
        inversions += (a >> (y + 1)).count_ones();
        bits &= bits - 1;
    }
    Some(if inversions.is_multiple_of(2) { 1 } else { -1 })
}

/// An invariant form: a finite sum of coefficients times wedge monomials.
#[derive(Clone, PartialEq, Eq)]
pub struct InvariantForm {
    n: usize,
    terms: BTreeMap<u32, C>,
}

impl InvariantForm {
    /// The zero form on a frame of complex dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `θ^r` (0-based).
    pub fn theta(n: usize, r: usize) -> Self {
        Self::monomial(n, 1 << r, C::from_int(1))
    }

    /// `ω^a` (0-based).
    pub fn omega(n: usize, a: usize) -> Self {
        Self::theta(n, a)
    }

    /// `ω̄^a` (0-based).
    pub fn omega_bar(n: usize, a: usize) -> Self {
        Self::theta(n, n + a)
    }

    pub fn monomial(n: usize, mask: u32, c: C) -> Self {
        let mut f = Self::zero(n);
        f.add_term(mask, c);
        f
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn coefficient(&self, mask: u32) -> C {
        self.terms.get(&mask).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn add_term(&mut self, mask: u32, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(C::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    /// Bidegree `(p, q)` of a monomial.
    pub fn bidegree_of(&self, mask: u32) -> (usize, usize) {
        let low = (1u32 << self.n) - 1;
        (
            (mask & low).count_ones() as usize,
            (mask >> self.n).count_ones() as usize,
        )
    }

    /// The `(p, q)`-component.
    pub fn component(&self, p: usize, q: usize) -> InvariantForm {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| self.bidegree_of(**m) == (p, q))
            .map(|(m, c)| (*m, c.clone()))
            .collect();
        Self { n: self.n, terms }
    }

    /// Bidegrees with nonzero support, sorted.
    pub fn bidegrees(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> =
            self.terms.keys().map(|m| self.bidegree_of(*m)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn add(&self, other: &InvariantForm) -> InvariantForm {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> InvariantForm {
        let mut out = Self::zero(self.n);
        for (m, x) in &self.terms {
            out.add_term(*m, x * c);
        }
        out
    }

    pub fn wedge(&self, other: &InvariantForm) -> InvariantForm {
        let mut out = Self::zero(self.n);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some(s) = wedge_sign(*a, *b) {
                    let v = x * y;
                    out.add_term(a | b, if s > 0 { v } else { -v });
                }
            }
        }
        out
    }

    /// Interior product `ι_V α` with `V` given in the frame `Z_1..Z_{2n}`
    /// (`Z_a = X_a`, `Z_{n+a} = X̄_a`).
    pub fn interior(&self, v: &[C]) -> InvariantForm {
        let mut out = Self::zero(self.n);
        for (mask, c) in &self.terms {
            let mut bits = *mask;
            let mut pos = 0;
            while bits != 0 {
                let r = bits.trailing_zeros() as usize;
                if !v[r].is_zero() {
                    let val = c * &v[r];
                    out.add_term(mask & !(1 << r), if pos % 2 == 0 { val } else { -val });
                }
                bits &= bits - 1;
                pos += 1;
            }
        }
        out
    }

    /// Evaluates on frame vectors given by coordinates in `Z_1..Z_{2n}`,
    /// with `(θ^{i_1} ∧ … ∧ θ^{i_k})(Z_{i_1}, …, Z_{i_k}) = 1`.
    pub fn evaluate(&self, vs: &[Vec<C>]) -> C {
        let mut f = self.clone();
        for v in vs {
            f = f.interior(v);
        }
        f.coefficient(0)
    }
}

impl fmt::Debug for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for InvariantForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(mask, c)| {
                let names: Vec<String> = (0..2 * self.n)
                    .filter(|r| mask & (1 << r) != 0)
                    .map(|r| {
                        if r < self.n {
                            format!("w{}", r + 1)
                        } else {
                            format!("wb{}", r - self.n + 1)
                        }
                    })
                    .collect();
                format!("({c})*{}", names.join("^"))
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
