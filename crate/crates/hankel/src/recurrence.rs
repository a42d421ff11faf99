//! Linear recurrences for scaled Hankel sequences.
//!
//! When the recurrence data is eventually constant with tails `s` and `t`,
//! the scaled Hankel determinants
//!
//! ```text
//! H_n = t_0^-(n-1) t^-C(n-1,2) det_(0<=i,j<=n-1)( sum_k lambda_k mu_(i+j+k) )
//! ```
//!
//! satisfy a linear recurrence with constant coefficients of order `2^d`.
//! Its coefficients are the characteristic polynomial of the Kronecker
//! product of the `2x2` companion-style matrices `[[x_i + s, t], [-1, 0]]`,
//! where the `x_i` are the formal roots of `sum_k lambda_k x^k`; everything
//! is expressed through the `lambda_k` by reducing the (symmetric)
//! coefficients to the elementary symmetric basis, so no root-finding is
//! ever needed. An independent exact linear solver recovers the same
//! coefficients from the sequence values and serves as the cross-check.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::identity::{combined_hankel_det, LinearCombination};
use crate::matrix::Matrix;
use crate::multipoly::{sym_reduce, MultiPoly};
use crate::orthopoly::{moments_from_coeffs, RecurrenceCoeffs};
use crate::poly::UniPoly;
use crate::rational::{format_rational, rat, rat_pow, Rat};

/// Which validity-window rule produced `validity_start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowRule {
    /// Tails reached after index 1 at the latest: window starts at `2^d + 1`.
    Cor9,
    /// `t` constant from index 0 on: window starts at `2^d`.
    Remark2a,
    /// Prefixes of combined length `N`: window starts at `2^d + N`.
    Remark2b,
    /// Produced by the fitting solver; the window is whatever was requested.
    Fitted,
}

impl WindowRule {
    pub fn as_str(self) -> &'static str {
        match self {
            WindowRule::Cor9 => "cor9",
            WindowRule::Remark2a => "remark2a",
            WindowRule::Remark2b => "remark2b",
            WindowRule::Fitted => "fitted",
        }
    }
}

/// An order-`2^d` linear recurrence `sum_(i=0)^order c_i H_(n-i) = 0`,
/// asserted for `n >= validity_start`, normalised by `c_0 = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceSpec {
    pub order: usize,
    pub c: Vec<Rat>,
    pub validity_start: usize,
    pub window_rule: WindowRule,
}

impl RecurrenceSpec {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order,
            "c": self.c.iter().map(format_rational).collect::<Vec<_>>(),
            "validity_start": self.validity_start,
            "window_rule": self.window_rule.as_str(),
        })
    }
}

/// Scaled Hankel values `H_0 .. H_(count-1)` (`values[n]` is `H_n`, with
/// `H_0 = 1`), together with the data they came from.
#[derive(Clone, Debug)]
pub struct ScaledHankelSeq {
    values: Vec<Rat>,
    coeffs: RecurrenceCoeffs,
    lambda: LinearCombination,
}

impl ScaledHankelSeq {
    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn coeffs(&self) -> &RecurrenceCoeffs {
        &self.coeffs
    }

    pub fn lambda(&self) -> &LinearCombination {
        &self.lambda
    }
}

/// Compute `H_0 .. H_(count-1)`. The scaling divisor
/// `t_0^(n-1) t^C(n-1,2)` equals the base Hankel determinant whenever the
/// `t`-prefix has length at most 1, and `H_0 = 1` by convention.
pub fn scaled_hankel_seq(
    c: &RecurrenceCoeffs,
    lc: &LinearCombination,
    count: usize,
) -> ScaledHankelSeq {
    let d = lc.degree();
    let moments = moments_from_coeffs(c, 2 * count + d + 1);
    let mut values = Vec::with_capacity(count);
    for n in 0..count {
        if n == 0 {
            values.push(rat(1));
            continue;
        }
        let det = combined_hankel_det(&moments, lc, n).expect("enough moments generated");
        let divisor = rat_pow(&c.t(0), (n - 1) as i64)
            * rat_pow(c.t_tail(), ((n - 1) * n.saturating_sub(2) / 2) as i64);
        values.push(det / divisor);
    }
    ScaledHankelSeq {
        values,
        coeffs: c.clone(),
        lambda: lc.clone(),
    }
}

/// Characteristic polynomial (monic, degree `2^d`, ascending coefficients)
/// of the `d`-fold Kronecker product of `[[x_i + s, t], [-1, 0]]`, with the
/// elementary symmetric functions of the `x_i` replaced by the `lambda_k`
/// (`e_(d-k) = lambda_k`). Computed symbolically: Faddeev-LeVerrier over
/// multivariate polynomial entries, then reduction of each coefficient to
/// the elementary basis. A symmetry failure inside the reduction would be
/// an implementation bug, not bad input; it surfaces as an error.
pub fn charpoly_tensor(lc: &LinearCombination, s: &Rat, t: &Rat) -> Result<UniPoly> {
    let d = lc.degree();
    let mut m: Matrix<MultiPoly> = Matrix::identity(1);
    for i in 0..d {
        let xi_plus_s = {
            let mut p = MultiPoly::var(d, i);
            p.add_term(crate::multipoly::Monomial(Vec::new()), s.clone());
            p
        };
        let factor = Matrix::new(
            2,
            2,
            vec![
                xi_plus_s,
                MultiPoly::constant(d, t.clone()),
                MultiPoly::constant(d, rat(-1)),
                MultiPoly::zero(d),
            ],
        )
        .expect("2x2 shape");
        m = m.kronecker(&factor);
    }
    let coeffs = m.char_poly()?;
    // substitute e_k = lambda_(d-k)
    let e_values: Vec<Rat> = (1..=d).map(|k| lc.lambda()[d - k].clone()).collect();
    let mut out = Vec::with_capacity(coeffs.len());
    for coeff in &coeffs {
        let reduced = sym_reduce(coeff)?;
        out.push(reduced.eval(&e_values));
    }
    Ok(UniPoly::from_coeffs(out))
}

/// The linear coefficient of the recurrence in closed form:
/// `c_1 = - sum_j lambda_j s^j`.
pub fn c1_value(lc: &LinearCombination, s: &Rat) -> Rat {
    let mut acc = Rat::zero();
    let mut s_pow = rat(1);
    for l in lc.lambda() {
        acc += l * &s_pow;
        s_pow *= s;
    }
    -acc
}

/// Coefficient symmetry `c_(2^d - i) = t^(d (2^(d-1) - i)) c_i` for
/// `i = 0 .. 2^d`. Vacuously true at `d = 0`; false when `t = 0` (the
/// negative powers would be undefined, and no valid recurrence data has
/// `t = 0`).
pub fn symmetry_check(spec: &RecurrenceSpec, t: &Rat, d: usize) -> bool {
    if d == 0 {
        return true;
    }
    let order = 1usize << d;
    if spec.order != order || spec.c.len() != order + 1 {
        return false;
    }
    if t.is_zero() {
        return false;
    }
    let half = 1i64 << (d - 1);
    (0..=order).all(|i| {
        let factor = rat_pow(t, d as i64 * (half - i as i64));
        spec.c[order - i] == &factor * &spec.c[i]
    })
}

/// Check `sum_(i=0)^order c_i H_(n-i) = 0` for every checkable
/// `n >= validity_start`. At least `order + 4` instances must be checkable.
pub fn verify_recurrence(seq: &ScaledHankelSeq, spec: &RecurrenceSpec) -> Result<bool> {
    verify_recurrence_values(seq.values(), spec)
}

/// Same as [`verify_recurrence`] over a raw value slice (`values[n]` is the
/// `n`-th term).
pub fn verify_recurrence_values(values: &[Rat], spec: &RecurrenceSpec) -> Result<bool> {
    let start = spec.validity_start.max(spec.order);
    let needed = start + spec.order + 4;
    if values.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            available: values.len(),
        });
    }
    for n in start..values.len() {
        let mut acc = Rat::zero();
        for (i, c) in spec.c.iter().enumerate() {
            acc += c * &values[n - i];
        }
        if !acc.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fit an order-`order` recurrence with `c_0 = 1` to `seq` (indexed from 0)
/// over the window `n >= start`, by exact Gaussian elimination. Returns
/// `None` when no such recurrence exists. When the solution space has
/// dimension above one, the reduced-echelon solution with free variables
/// set to zero is returned, which makes the result deterministic.
#[allow(clippy::needless_range_loop)]
pub fn fit_recurrence(
    seq: &[Rat],
    order: usize,
    start: usize,
) -> Result<Option<RecurrenceSpec>> {
    let needed = start + 2 * order + 2;
    if seq.len() < needed {
        return Err(Error::InsufficientTerms {
            needed,
            available: seq.len(),
        });
    }
    let first = start.max(order);
    // rows: [H_(n-1) ... H_(n-order) | -H_n]
    let mut rows: Vec<Vec<Rat>> = (first..seq.len())
        .map(|n| {
            let mut row: Vec<Rat> = (1..=order).map(|i| seq[n - i].clone()).collect();
            row.push(-&seq[n]);
            row
        })
        .collect();

    // reduced row echelon form over the rationals
    let ncols = order;
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..rows.len() {
            if r != rank && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for j in 0..=ncols {
                    let delta = &f * &rows[rank][j];
                    rows[r][j] = &rows[r][j] - &delta;
                }
            }
        }
        pivot_of_col[col] = Some(rank);
        rank += 1;
    }
    // inconsistent system: a zero row with nonzero right-hand side
    for row in rows.iter().skip(rank) {
        if !row[ncols].is_zero() {
            return Ok(None);
        }
    }
    let mut c = Vec::with_capacity(order + 1);
    c.push(rat(1));
    for col in 0..ncols {
        match pivot_of_col[col] {
            Some(r) => c.push(rows[r][ncols].clone()),
            None => c.push(Rat::zero()), // free variable
        }
    }
    Ok(Some(RecurrenceSpec {
        order,
        c,
        validity_start: start,
        window_rule: WindowRule::Fitted,
    }))
}

/// Validity window for the given recurrence data and combination length:
/// `2^d + max(len(s_prefix) - 1, len(t_prefix), 0)`, tagged with the rule
/// that produced it.
pub fn validity_window(c: &RecurrenceCoeffs, d: usize) -> (usize, WindowRule) {
    let order = 1usize << d;
    let ps = c.s_prefix_len();
    let pt = c.t_prefix_len();
    let n = (ps as i64 - 1).max(pt as i64).max(0) as usize;
    if n == 0 {
        (order, WindowRule::Remark2a)
    } else if n == 1 && ps <= 1 && pt <= 1 {
        (order + 1, WindowRule::Cor9)
    } else {
        (order + n, WindowRule::Remark2b)
    }
}

/// How large a `d` the symbolic tensor route handles before `synthesize`
/// switches to fitting; the `2^d x 2^d` multivariate determinant grows
/// quickly past this.
pub const SYMBOLIC_TENSOR_MAX_D: usize = 3;

/// Produce the recurrence for the scaled Hankel sequence of `(c, lc)`.
///
/// For `d <= SYMBOLIC_TENSOR_MAX_D` this is the symbolic tensor
/// characteristic polynomial; beyond that the coefficients are fitted from
/// sequence values and verified. When the `t`-prefix is longer than 1 the
/// fixed scaling in `H_n` no longer cancels the base determinant: the
/// mismatch is eventually a pure power `rho^n` with
/// `rho = prod_(i=1)^(P_t - 1) t_i / t_tail`, so the recurrence roots scale
/// by `rho` and the coefficients pick up `c_i -> c_i rho^i`.
pub fn synthesize(c: &RecurrenceCoeffs, lc: &LinearCombination) -> Result<RecurrenceSpec> {
    let d = lc.degree();
    let order = 1usize << d;
    let (validity_start, window_rule) = validity_window(c, d);
    if d > SYMBOLIC_TENSOR_MAX_D {
        let seq = scaled_hankel_seq(c, lc, validity_start + 2 * order + 4);
        let fitted = fit_recurrence(seq.values(), order, validity_start)?
            .ok_or(Error::NoRecurrence)?;
        return Ok(RecurrenceSpec {
            validity_start,
            window_rule,
            ..fitted
        });
    }
    let poly = charpoly_tensor(lc, c.s_tail(), c.t_tail())?;
    // c_i is the coefficient of X^(order - i)
    let mut coeffs: Vec<Rat> = (0..=order).map(|i| poly.coeff(order - i)).collect();
    let pt = c.t_prefix_len();
    if pt >= 2 {
        let mut rho = rat(1);
        for i in 1..pt {
            rho *= c.t(i) / c.t_tail();
        }
        let mut rho_pow = rat(1);
        for coeff in coeffs.iter_mut().skip(1) {
            rho_pow *= &rho;
            *coeff = &*coeff * &rho_pow;
        }
    }
    Ok(RecurrenceSpec {
        order,
        c: coeffs,
        validity_start,
        window_rule,
    })
}
