//! Sparse multivariate polynomials over the rationals.
//!
//! Terms are kept in a `BTreeMap` ordered by graded lexicographic order on
//! the exponent vectors, so the leading term is well defined and the
//! reduction to the elementary symmetric basis terminates deterministically.
//! Exponent vectors may have different lengths; comparison and arithmetic
//! treat missing trailing exponents as zero, and the variable count of a
//! result is the maximum of the operands'.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{rat, rat_pow, Rat};
use crate::ring::Ring;

/// Exponent vector; `exps[i]` is the exponent of variable `i`. Trailing
/// zero exponents do not distinguish monomials: comparison and equality
/// pad with zeros.
#[derive(Clone, Debug)]
pub struct Monomial(pub Vec<u32>);

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Monomial {}

impl Monomial {
    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn exp(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.0.len().max(other.0.len());
        Monomial((0..n).map(|i| self.exp(i) + other.exp(i)).collect())
    }

    fn permuted(&self, perm: &[usize]) -> Monomial {
        let mut out = vec![0u32; perm.len()];
        for (i, &target) in perm.iter().enumerate() {
            out[target] = self.exp(i);
        }
        Monomial(out)
    }

    fn trimmed(mut self) -> Monomial {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
        self
    }
}

/// Graded lexicographic order: compare total degree first, then exponents
/// left to right.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.total_degree().cmp(&other.total_degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let n = self.0.len().max(other.0.len());
        for i in 0..n {
            match self.exp(i).cmp(&other.exp(i)) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial; no zero coefficients are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, Rat>,
    nvars: usize,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly {
            terms: BTreeMap::new(),
            nvars,
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(Vec::new()), c);
        p
    }

    /// The variable `x_idx` (0-based).
    pub fn var(nvars: usize, idx: usize) -> Self {
        assert!(idx < nvars, "variable index out of range");
        let mut exps = vec![0u32; idx + 1];
        exps[idx] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(Monomial(exps), rat(1));
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, mono: Monomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let mono = mono.trimmed();
        self.nvars = self.nvars.max(mono.0.len());
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Largest term in graded lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| m.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn scale(&self, c: &Rat) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
            nvars: self.nvars,
        }
    }

    pub fn pow(&self, mut e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::constant(self.nvars, rat(1));
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Evaluate at a rational point; `values` must cover every variable.
    pub fn eval(&self, values: &[Rat]) -> Rat {
        assert!(values.len() >= self.nvars, "not enough values");
        let mut acc = Rat::zero();
        for (mono, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term *= rat_pow(&values[i], e as i64);
                }
            }
            acc += term;
        }
        acc
    }

    /// Substitute a polynomial for every variable.
    pub fn substitute(&self, values: &[MultiPoly]) -> MultiPoly {
        assert!(values.len() >= self.nvars, "not enough substitutions");
        let out_vars = values.iter().map(|p| p.nvars).max().unwrap_or(0);
        let mut acc = MultiPoly::zero(out_vars);
        for (mono, coeff) in &self.terms {
            let mut term = MultiPoly::constant(out_vars, coeff.clone());
            for (i, &e) in mono.0.iter().enumerate() {
                if e > 0 {
                    term = &term * &values[i].pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Apply a permutation of the variables.
    pub fn permute(&self, perm: &[usize]) -> MultiPoly {
        assert!(perm.len() >= self.nvars);
        let mut out = MultiPoly::zero(self.nvars);
        for (mono, coeff) in &self.terms {
            out.add_term(mono.permuted(perm), coeff.clone());
        }
        out
    }

    /// Invariance under all variable permutations, checked on the adjacent
    /// transpositions (they generate the symmetric group).
    pub fn is_symmetric(&self) -> bool {
        let d = self.nvars;
        for k in 0..d.saturating_sub(1) {
            let mut perm: Vec<usize> = (0..d).collect();
            perm.swap(k, k + 1);
            if self.permute(&perm) != *self {
                return false;
            }
        }
        true
    }

    fn add_impl(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        out.nvars = out.nvars.max(other.nvars);
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    fn mul_impl(&self, other: &MultiPoly) -> MultiPoly {
        let mut out = MultiPoly::zero(self.nvars.max(other.nvars));
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    /// Single-divisor multivariate long division by leading terms; returns
    /// the quotient only when the division is exact.
    fn div_exact_impl(&self, divisor: &MultiPoly) -> Option<MultiPoly> {
        let (dlt, dlc) = divisor.leading_term()?;
        let (dlt, dlc) = (dlt.clone(), dlc.clone());
        let nvars = self.nvars.max(divisor.nvars);
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(nvars);
        while let Some((rlt, rlc)) = rem.leading_term() {
            // leading monomial of the remainder must be divisible
            let n = rlt.0.len().max(dlt.0.len());
            let mut qexp = Vec::with_capacity(n);
            for i in 0..n {
                let (a, b) = (rlt.exp(i), dlt.exp(i));
                if a < b {
                    return None;
                }
                qexp.push(a - b);
            }
            let qmono = Monomial(qexp);
            let qcoeff = rlc / &dlc;
            let mut piece = MultiPoly::zero(nvars);
            piece.add_term(qmono, qcoeff);
            rem = &rem - &(&piece * divisor);
            quot = &quot + &piece;
        }
        Some(quot)
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: Self) -> MultiPoly {
        self.add_impl(other)
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, other: Self) -> MultiPoly {
        self.add_impl(&other.neg())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: Self) -> MultiPoly {
        self.mul_impl(other)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
            nvars: self.nvars,
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (mono, coeff) in self.terms.iter().rev() {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{}", crate::rational::format_rational(coeff))?;
            for (i, &e) in mono.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

impl Add for MultiPoly {
    type Output = MultiPoly;
    fn add(self, other: Self) -> MultiPoly {
        &self + &other
    }
}

impl Mul for MultiPoly {
    type Output = MultiPoly;
    fn mul(self, other: Self) -> MultiPoly {
        &self * &other
    }
}

impl num_traits::Zero for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
}

impl num_traits::One for MultiPoly {
    fn one() -> Self {
        MultiPoly::constant(0, rat(1))
    }
}

impl Ring for MultiPoly {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        self.div_exact_impl(other)
    }
    fn div_int(&self, k: u64) -> Self {
        self.scale(&rat_pow(&rat(k as i64), -1))
    }
}

/// Elementary symmetric polynomial `e_k(x_1, ..., x_nvars)`.
pub fn elementary_symmetric(nvars: usize, k: usize) -> MultiPoly {
    if k > nvars {
        return MultiPoly::zero(nvars);
    }
    // product-by-variable DP over (1 + x_i z), collecting the z^k slice
    let mut rows: Vec<MultiPoly> = vec![MultiPoly::zero(nvars); k + 1];
    rows[0] = MultiPoly::constant(nvars, rat(1));
    for i in 0..nvars {
        let xi = MultiPoly::var(nvars, i);
        for j in (1..=k.min(i + 1)).rev() {
            let lifted = &rows[j - 1] * &xi;
            rows[j] = &rows[j] + &lifted;
        }
    }
    rows.pop().unwrap()
}

/// Express a symmetric polynomial in the elementary symmetric basis.
///
/// The result is a polynomial whose variable `i` stands for
/// `e_(i+1)(x_1, ..., x_d)`. Substituting the elementary symmetric
/// polynomials back reproduces the input exactly. Non-symmetric input is
/// rejected.
///
/// Classical leading-term elimination: the graded-lex leading exponent
/// `(a_1 >= a_2 >= ... >= a_d)` of a symmetric polynomial is matched by
/// `e_1^(a_1-a_2) e_2^(a_2-a_3) ... e_d^(a_d)`, which has the same leading
/// term with coefficient one; subtracting strictly lowers the leading term.
pub fn sym_reduce(p: &MultiPoly) -> Result<MultiPoly> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let d = p.nvars();
    let elementary: Vec<MultiPoly> = (1..=d).map(|k| elementary_symmetric(d, k)).collect();
    let mut work = p.clone();
    let mut out = MultiPoly::zero(d);
    while let Some((mono, coeff)) = work.leading_term() {
        let coeff = coeff.clone();
        let mut a: Vec<u32> = (0..d).map(|i| mono.exp(i)).collect();
        debug_assert!(
            a.windows(2).all(|w| w[0] >= w[1]),
            "leading exponent of a symmetric polynomial must be weakly decreasing"
        );
        a.push(0);
        let eexp: Vec<u32> = (0..d).map(|k| a[k] - a[k + 1]).collect();

        out.add_term(Monomial(eexp.clone()), coeff.clone());
        let mut prod = MultiPoly::constant(d, coeff);
        for (k, &e) in eexp.iter().enumerate() {
            if e > 0 {
                prod = &prod * &elementary[k].pow(e);
            }
        }
        work = &work - &prod;
    }
    Ok(out)
}
