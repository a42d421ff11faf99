//! Dense univariate polynomials over the rationals.
//!
//! `UniPoly` stores coefficients in ascending degree order. The
//! representation is canonical: the vector is empty for the zero
//! polynomial and never carries a trailing zero coefficient, so
//! `degree = len - 1` whenever the polynomial is nonzero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use crate::rational::{binom, rat, rat_pow, Rat};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly {
            coeffs: vec![rat(1)],
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// The indeterminate.
    pub fn x() -> Self {
        UniPoly {
            coeffs: vec![rat(0), rat(1)],
        }
    }

    /// `c * x^deg`.
    pub fn monomial(c: Rat, deg: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![Rat::zero(); deg + 1];
        coeffs[deg] = c;
        UniPoly { coeffs }
    }

    /// Construct from ascending coefficients; trailing zeros are stripped.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        let mut p = UniPoly { coeffs };
        p.normalize();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| rat(c)).collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `x^k` (zero beyond the stored length).
    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Substitute another polynomial for the indeterminate.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * rat(k as i64))
            .collect();
        UniPoly::from_coeffs(coeffs)
    }

    /// `j`-th Taylor coefficient at `y`, i.e. `p^(j)(y) / j!`, computed as
    /// `sum_(a>=j) coeff_a * C(a,j) * y^(a-j)`.
    pub fn taylor_coeff(&self, j: usize, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        let mut y_pow = Rat::one();
        for a in j..self.coeffs.len() {
            let b = Rat::from_integer(binom(a as i64, j as i64));
            acc += &self.coeffs[a] * b * &y_pow;
            y_pow *= y;
        }
        acc
    }

    pub fn scale(&self, c: &Rat) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Divide by the leading coefficient; `None` for the zero polynomial.
    pub fn monic(&self) -> Option<UniPoly> {
        if self.is_zero() {
            return None;
        }
        Some(self.scale(&self.leading_coeff().recip()))
    }

    /// Long division; `None` when `divisor` is zero.
    pub fn div_rem(&self, divisor: &UniPoly) -> Option<(UniPoly, UniPoly)> {
        let dd = divisor.degree()?;
        let lead = divisor.leading_coeff();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((UniPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = &rem[k] / &lead;
            if q.is_zero() {
                continue;
            }
            for (i, c) in divisor.coeffs.iter().enumerate() {
                let idx = k - dd + i;
                rem[idx] = &rem[idx] - &(c * &q);
            }
            quot[k - dd] = q;
        }
        Some((UniPoly::from_coeffs(quot), UniPoly::from_coeffs(rem)))
    }

    fn add_impl(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        UniPoly::from_coeffs(out)
    }

    fn mul_impl(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Render with a chosen variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let first = out.is_empty();
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(if sign == "-" { " - " } else { " + " });
            }
            let show_coeff = !mag.is_one() || k == 0;
            if show_coeff {
                out.push_str(&crate::rational::format_rational(&mag));
            }
            if k > 0 {
                if show_coeff {
                    out.push('*');
                }
                out.push_str(var);
                if k > 1 {
                    out.push_str(&format!("^{k}"));
                }
            }
        }
        out
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({self})")
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, other: Self) -> UniPoly {
        self.add_impl(other)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, other: Self) -> UniPoly {
        self.add_impl(&-other)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, other: Self) -> UniPoly {
        self.mul_impl(other)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Add for UniPoly {
    type Output = UniPoly;
    fn add(self, other: Self) -> UniPoly {
        &self + &other
    }
}

impl Mul for UniPoly {
    type Output = UniPoly;
    fn mul(self, other: Self) -> UniPoly {
        &self * &other
    }
}

impl num_traits::Zero for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
}

impl num_traits::One for UniPoly {
    fn one() -> Self {
        UniPoly::one()
    }
}

impl Ring for UniPoly {
    fn div_exact(&self, other: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(other)?;
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }
    fn div_int(&self, k: u64) -> Self {
        self.scale(&rat_pow(&rat(k as i64), -1))
    }
}
