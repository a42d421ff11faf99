//! Orthogonal-polynomial families from three-term recurrences and their
//! moment sequences.
//!
//! A family is specified by eventually-constant coefficient sequences
//! `(s_i)` and `(t_i)`: the monic polynomials satisfy
//! `p_n(x) = (x - s_(n-1)) p_(n-1)(x) - t_(n-2) p_(n-2)(x)` with `p_0 = 1`,
//! and the companion family `f_n(x) = (-1)^n p_n(-x)` satisfies the same
//! recurrence with `+s_(n-1)`. The moments of the orthogonality functional
//! are realised combinatorially, as weighted lattice paths: a path from
//! height 0 back to height 0 contributes the product of its step weights,
//! with up-steps weighted 1, level steps at height `h` weighted `s(h)`, and
//! down-steps from height `h` weighted `t(h-1)`. This needs no division and
//! serves as an oracle independent of the determinant formulas.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::UniPoly;
use crate::rational::{rat, Rat};

/// Eventually-constant recurrence data: `s(i)` is `s_prefix[i]` while the
/// prefix lasts and `s_tail` afterwards, likewise for `t`. Every `t(i)`
/// must be nonzero.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceCoeffs {
    s_prefix: Vec<Rat>,
    s_tail: Rat,
    t_prefix: Vec<Rat>,
    t_tail: Rat,
}

impl RecurrenceCoeffs {
    pub fn new(
        s_prefix: Vec<Rat>,
        s_tail: Rat,
        t_prefix: Vec<Rat>,
        t_tail: Rat,
    ) -> Result<Self> {
        for (i, t) in t_prefix.iter().enumerate() {
            if t.is_zero() {
                return Err(Error::ZeroT { index: i });
            }
        }
        if t_tail.is_zero() {
            return Err(Error::ZeroT {
                index: t_prefix.len(),
            });
        }
        Ok(RecurrenceCoeffs {
            s_prefix,
            s_tail,
            t_prefix,
            t_tail,
        })
    }

    /// Constant coefficients `s(i) = s`, `t(i) = t`.
    pub fn constant(s: Rat, t: Rat) -> Result<Self> {
        Self::new(Vec::new(), s, Vec::new(), t)
    }

    pub fn s(&self, i: usize) -> Rat {
        self.s_prefix.get(i).unwrap_or(&self.s_tail).clone()
    }

    pub fn t(&self, i: usize) -> Rat {
        self.t_prefix.get(i).unwrap_or(&self.t_tail).clone()
    }

    pub fn s_prefix_len(&self) -> usize {
        self.s_prefix.len()
    }

    pub fn t_prefix_len(&self) -> usize {
        self.t_prefix.len()
    }

    pub fn s_tail(&self) -> &Rat {
        &self.s_tail
    }

    pub fn t_tail(&self) -> &Rat {
        &self.t_tail
    }

    /// Parse from the JSON document
    /// `{"s_prefix":["1"], "s_tail":"2", "t_prefix":[], "t_tail":"1"}`
    /// with rationals as strings.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::Json("expected an object".into()))?;
        let list = |key: &str| -> Result<Vec<Rat>> {
            match obj.get(key) {
                None => Ok(Vec::new()),
                Some(v) => v
                    .as_array()
                    .ok_or_else(|| Error::Json(format!("{key} must be an array")))?
                    .iter()
                    .map(|s| {
                        s.as_str()
                            .ok_or_else(|| Error::Json(format!("{key} entries must be strings")))
                            .and_then(crate::rational::parse_rational)
                    })
                    .collect(),
            }
        };
        let scalar = |key: &str| -> Result<Rat> {
            obj.get(key)
                .and_then(|v| v.as_str())
                .ok_or_else(|| Error::Json(format!("missing string field {key}")))
                .and_then(crate::rational::parse_rational)
        };
        RecurrenceCoeffs::new(list("s_prefix")?, scalar("s_tail")?, list("t_prefix")?, scalar("t_tail")?)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let strs = |v: &[Rat]| -> Vec<serde_json::Value> {
            v.iter()
                .map(|r| crate::rational::format_rational(r).into())
                .collect()
        };
        serde_json::json!({
            "s_prefix": strs(&self.s_prefix),
            "s_tail": crate::rational::format_rational(&self.s_tail),
            "t_prefix": strs(&self.t_prefix),
            "t_tail": crate::rational::format_rational(&self.t_tail),
        })
    }
}

/// Where a moment sequence came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MomentSource {
    FromCoeffs,
    FromMeasure,
    UserSupplied,
}

/// A prefix `mu_0, mu_1, ...` of the moments of a linear functional.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentSequence {
    values: Vec<Rat>,
    source: MomentSource,
}

impl MomentSequence {
    pub fn new(values: Vec<Rat>, source: MomentSource) -> Self {
        MomentSequence { values, source }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> MomentSource {
        self.source
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn moment(&self, n: usize) -> Result<&Rat> {
        self.values.get(n).ok_or(Error::InsufficientMoments {
            needed: n + 1,
            available: self.values.len(),
        })
    }
}

/// Which of the two sign conventions a family follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyKind {
    /// `p_n(x) = (x - s_(n-1)) p_(n-1) - t_(n-2) p_(n-2)`
    P,
    /// `f_n(x) = (x + s_(n-1)) f_(n-1) - t_(n-2) f_(n-2)`
    F,
}

/// Monic family members `family[n]` (degree `n`) together with the norms
/// `omega_n = t_0 t_1 ... t_(n-1)`.
#[derive(Clone, Debug)]
pub struct PolyFamily {
    pub kind: FamilyKind,
    polys: Vec<UniPoly>,
    norms: Vec<Rat>,
}

impl PolyFamily {
    pub fn poly(&self, n: usize) -> &UniPoly {
        &self.polys[n]
    }

    pub fn polys(&self) -> &[UniPoly] {
        &self.polys
    }

    pub fn norm(&self, n: usize) -> &Rat {
        &self.norms[n]
    }

    /// Highest index built.
    pub fn upto(&self) -> usize {
        self.polys.len() - 1
    }
}

/// Moments `mu_0 .. mu_(count-1)` realised by the weighted-path dynamic
/// programme described in the module docs. `mu_0 = 1` always.
pub fn moments_from_coeffs(c: &RecurrenceCoeffs, count: usize) -> MomentSequence {
    let mut values = Vec::with_capacity(count);
    // heights[h] = total weight of paths currently ending at height h
    let mut heights: Vec<Rat> = vec![rat(1)];
    for _step in 0..count {
        values.push(heights[0].clone());
        let mut next = vec![Rat::zero(); heights.len() + 1];
        for (h, w) in heights.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            next[h + 1] += w; // up-step, weight 1
            next[h] += w * c.s(h); // level step at height h
            if h > 0 {
                next[h - 1] += w * c.t(h - 1); // down-step from height h
            }
        }
        heights = next;
    }
    MomentSequence::new(values, MomentSource::FromCoeffs)
}

/// Build `family[0..=upto]` of the requested kind, with norms.
pub fn build_family(c: &RecurrenceCoeffs, kind: FamilyKind, upto: usize) -> PolyFamily {
    let sgn = match kind {
        FamilyKind::P => rat(-1),
        FamilyKind::F => rat(1),
    };
    let mut polys = Vec::with_capacity(upto + 1);
    let mut norms = Vec::with_capacity(upto + 1);
    polys.push(UniPoly::one());
    norms.push(rat(1));
    for n in 1..=upto {
        let linear = UniPoly::from_coeffs(vec![&sgn * &c.s(n - 1), rat(1)]);
        let mut next = &linear * &polys[n - 1];
        if n >= 2 {
            next = &next - &polys[n - 2].scale(&c.t(n - 2));
        }
        polys.push(next);
        norms.push(&norms[n - 1] * &c.t(n - 1));
    }
    PolyFamily { kind, polys, norms }
}

/// The monic degree-`n` orthogonal polynomial of the functional with
/// moments `m`, reconstructed from the bordered moment determinant: the
/// coefficient of `x^j` is the signed maximal minor of the `n x (n+1)`
/// moment block that omits column `j`. Requires at least `2n` moments and
/// non-vanishing leading principal Hankel minors up to size `n`; a zero
/// minor is reported with the failing size.
pub fn poly_from_moments(m: &MomentSequence, n: usize) -> Result<UniPoly> {
    if n == 0 {
        return Ok(UniPoly::one());
    }
    if m.len() < 2 * n {
        return Err(Error::InsufficientMoments {
            needed: 2 * n,
            available: m.len(),
        });
    }
    for size in 1..=n {
        let h = Matrix::from_fn(size, size, |i, j| m.values()[i + j].clone());
        if crate::matrix::det_rat(&h)?.is_zero() {
            return Err(Error::DegenerateHankel { size });
        }
    }
    let mut coeffs = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let minor = Matrix::from_fn(n, n, |r, col| {
            let c = if col < j { col } else { col + 1 };
            m.values()[r + c].clone()
        });
        let sign = if j % 2 == 0 { rat(1) } else { rat(-1) };
        coeffs.push(sign * crate::matrix::det_rat(&minor)?);
    }
    let poly = UniPoly::from_coeffs(coeffs);
    Ok(poly
        .monic()
        .expect("leading coefficient nonzero by the minor check"))
}

/// `det(mu_(i+j))_(0<=i,j<=n-1)` by the product formula
/// `prod_(i=0)^(n-1) t_i^(n-i-1)`.
pub fn hankel_base_det(c: &RecurrenceCoeffs, n: usize) -> Rat {
    let mut acc = rat(1);
    for i in 0..n {
        acc *= crate::rational::rat_pow(&c.t(i), (n - i - 1) as i64);
    }
    acc
}

/// Chebyshev polynomials of the second kind `U_0 .. U_upto`:
/// `U_0 = 1`, `U_1 = 2x`, `U_n = 2x U_(n-1) - U_(n-2)`.
pub fn chebyshev_u(upto: usize) -> Vec<UniPoly> {
    let mut out = Vec::with_capacity(upto + 1);
    out.push(UniPoly::one());
    if upto >= 1 {
        out.push(UniPoly::from_i64_coeffs(&[0, 2]));
    }
    let two_x = UniPoly::from_i64_coeffs(&[0, 2]);
    for n in 2..=upto {
        let next = &(&two_x * &out[n - 1]) - &out[n - 2];
        out.push(next);
    }
    out
}

/// Apply the moment functional: `L(p) = sum_a coeff_a(p) * mu_a`.
pub fn apply_functional(m: &MomentSequence, p: &UniPoly) -> Result<Rat> {
    let needed = p.degree().map_or(0, |d| d + 1);
    if m.len() < needed {
        return Err(Error::InsufficientMoments {
            needed,
            available: m.len(),
        });
    }
    let mut acc = Rat::zero();
    for (a, coeff) in p.coeffs().iter().enumerate() {
        acc += coeff * &m.values()[a];
    }
    Ok(acc)
}
