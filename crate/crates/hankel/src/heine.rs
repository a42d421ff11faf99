//! Finitely supported formal measures and Heine's multisum.
//!
//! For a measure with atoms `(u_a, w_a)` the moment Hankel determinant has
//! Heine's closed form as an `n`-fold sum over atom tuples,
//!
//! ```text
//! det(nu_(i+j))_(0<=i,j<=n-1)
//!   = (1/n!) * sum over tuples of prod_(i<j)(u_i - u_j)^2 * prod w_i,
//! ```
//!
//! which this module evaluates by brute force as an oracle for the Hankel
//! machinery. Twisting the measure by `prod_l (x_l - u)` connects the
//! multisum to the combined Hankel determinants of the `identity` module.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::identity::{combined_hankel_det, LinearCombination, PointConfiguration};
use crate::orthopoly::{MomentSequence, MomentSource};
use crate::rational::{factorial, rat, rat_pow, Rat};

/// Hard cap on the number of tuples [`heine_multisum`] will enumerate.
pub const ENUMERATION_BUDGET: u128 = 10_000_000;

/// A formal measure with finitely many atoms: pairwise distinct locations,
/// nonzero (possibly negative) rational weights.
#[derive(Clone, Debug, PartialEq)]
pub struct DiscreteMeasure {
    atoms: Vec<(Rat, Rat)>,
}

impl DiscreteMeasure {
    pub fn new(atoms: Vec<(Rat, Rat)>) -> Result<Self> {
        for (i, (x, w)) in atoms.iter().enumerate() {
            if w.is_zero() {
                return Err(Error::Json(format!("atom {i} has zero weight")));
            }
            if atoms[..i].iter().any(|(x2, _)| x2 == x) {
                return Err(Error::RepeatedPoint);
            }
        }
        Ok(DiscreteMeasure { atoms })
    }

    pub fn atoms(&self) -> &[(Rat, Rat)] {
        &self.atoms
    }

    /// Parse `{"atoms":[{"x":"1","w":"1/2"}, ...]}`.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .get("atoms")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::Json("expected an object with an \"atoms\" array".into()))?;
        let mut atoms = Vec::with_capacity(arr.len());
        for (i, a) in arr.iter().enumerate() {
            let field = |key: &str| -> Result<Rat> {
                a.get(key)
                    .and_then(|v| v.as_str())
                    .ok_or_else(|| Error::Json(format!("atom {i}: missing string field {key}")))
                    .and_then(crate::rational::parse_rational)
            };
            atoms.push((field("x")?, field("w")?));
        }
        DiscreteMeasure::new(atoms)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "atoms": self
                .atoms
                .iter()
                .map(|(x, w)| {
                    serde_json::json!({
                        "x": crate::rational::format_rational(x),
                        "w": crate::rational::format_rational(w),
                    })
                })
                .collect::<Vec<_>>()
        })
    }
}

/// Moments `nu_s = sum_a w_a u_a^s` for `s = 0 .. count-1`.
pub fn measure_moments(m: &DiscreteMeasure, count: usize) -> MomentSequence {
    let mut powers: Vec<Rat> = m.atoms.iter().map(|_| rat(1)).collect();
    let mut values = Vec::with_capacity(count);
    for _ in 0..count {
        let mut acc = Rat::zero();
        for ((_, w), p) in m.atoms.iter().zip(powers.iter()) {
            acc += w * p;
        }
        values.push(acc);
        for ((x, _), p) in m.atoms.iter().zip(powers.iter_mut()) {
            *p *= x;
        }
    }
    MomentSequence::new(values, MomentSource::FromMeasure)
}

/// Brute-force Heine sum: `(1/n!) sum prod_(i<j)(u_i-u_j)^2 prod w_i` over
/// all `n`-tuples of atoms. Guarded by [`ENUMERATION_BUDGET`]; enumeration
/// above the budget is an error, never a truncation.
pub fn heine_multisum(m: &DiscreteMeasure, n: usize) -> Result<Rat> {
    if n == 0 {
        return Ok(rat(1));
    }
    let k = m.atoms.len() as u128;
    let required = k.checked_pow(n as u32).unwrap_or(u128::MAX);
    if required > ENUMERATION_BUDGET {
        return Err(Error::BudgetExceeded {
            required,
            limit: ENUMERATION_BUDGET,
        });
    }
    if m.atoms.is_empty() {
        return Ok(Rat::zero());
    }
    // a repeated location makes the squared Vandermonde vanish
    if n > m.atoms.len() {
        return Ok(Rat::zero());
    }
    let mut total = Rat::zero();
    let mut index = vec![0usize; n];
    loop {
        let mut term = rat(1);
        'tuple: {
            for i in 0..n {
                for j in i + 1..n {
                    if index[i] == index[j] {
                        term = Rat::zero();
                        break 'tuple;
                    }
                    let diff = &m.atoms[index[i]].0 - &m.atoms[index[j]].0;
                    term *= &diff * &diff;
                }
            }
            for &a in &index {
                term *= &m.atoms[a].1;
            }
        }
        total += term;
        // odometer
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(total / Rat::from_integer(factorial(n)));
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < m.atoms.len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// Multiply each weight by `prod_l (x_l - u)^(m_l)` evaluated at the atom
/// location `u`; atoms whose new weight vanishes are dropped.
pub fn twist_measure(m: &DiscreteMeasure, cfg: &PointConfiguration) -> DiscreteMeasure {
    let atoms = m
        .atoms
        .iter()
        .filter_map(|(u, w)| {
            let mut factor = rat(1);
            for (x, mult) in cfg.points() {
                factor *= rat_pow(&(x - u), *mult as i64);
            }
            let w2 = w * &factor;
            if w2.is_zero() {
                None
            } else {
                Some((u.clone(), w2))
            }
        })
        .collect();
    DiscreteMeasure { atoms }
}

/// Bridge check: the Hankel determinant of the combined moments
/// `L(u^(i+j) prod_l (x_l - u))` equals the Heine multisum of the twisted
/// measure. Returns the comparison (always true); both sides are computed
/// along independent routes.
pub fn heine_check(m: &DiscreteMeasure, cfg: &PointConfiguration, n: usize) -> Result<bool> {
    let d = cfg.degree();
    let moments = measure_moments(m, 2 * n.max(1) + d);
    // prod_l (x_l - u) = (-1)^d prod_l (u + (-x_l)); fold the sign into the
    // determinant row by row.
    let negated = PointConfiguration::new(
        cfg.points()
            .iter()
            .map(|(x, mult)| (-x, *mult))
            .collect(),
    )
    .expect("negation preserves distinctness");
    let lc = LinearCombination::from_points(&negated);
    let mut lhs = combined_hankel_det(&moments, &lc, n)?;
    if (n * d) % 2 == 1 {
        lhs = -lhs;
    }
    let rhs = heine_multisum(&twist_measure(m, cfg), n)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::{det_rat, Matrix};
    use crate::rational::ratio;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rrat(rng: &mut ChaCha8Rng) -> Rat {
        ratio(rng.gen_range(-9..=9), rng.gen_range(1..=9))
    }

    fn random_measure(rng: &mut ChaCha8Rng, k: usize) -> DiscreteMeasure {
        let mut atoms: Vec<(Rat, Rat)> = Vec::new();
        while atoms.len() < k {
            let x = rrat(rng);
            if atoms.iter().any(|(x2, _)| *x2 == x) {
                continue;
            }
            let w = loop {
                let w = rrat(rng);
                if !w.is_zero() {
                    break w;
                }
            };
            atoms.push((x, w));
        }
        DiscreteMeasure::new(atoms).unwrap()
    }

    #[test]
    fn moments_of_simple_measures() {
        let single = DiscreteMeasure::new(vec![(rat(3), ratio(1, 2))]).unwrap();
        let m = measure_moments(&single, 4);
        assert_eq!(
            m.values(),
            &[ratio(1, 2), ratio(3, 2), ratio(9, 2), ratio(27, 2)]
        );
        let parity = DiscreteMeasure::new(vec![(rat(1), rat(1)), (rat(-1), rat(1))]).unwrap();
        let m = measure_moments(&parity, 4);
        assert_eq!(m.values(), &[rat(2), rat(0), rat(2), rat(0)]);
        let three =
            DiscreteMeasure::new(vec![(rat(0), rat(1)), (rat(1), rat(2)), (rat(2), rat(3))])
                .unwrap();
        let m = measure_moments(&three, 3);
        assert_eq!(m.values(), &[rat(6), rat(8), rat(14)]);
    }

    #[test]
    fn multisum_equals_hankel_determinant() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..15 {
            let k = rng.gen_range(1..=4);
            let m = random_measure(&mut rng, k);
            let moments = measure_moments(&m, 9);
            for n in 0..=4usize {
                let h =
                    det_rat(&Matrix::from_fn(n, n, |i, j| moments.values()[i + j].clone()))
                        .unwrap();
                assert_eq!(heine_multisum(&m, n).unwrap(), h, "k={k} n={n}");
            }
        }
    }

    #[test]
    fn multisum_edges() {
        let m = random_measure(&mut ChaCha8Rng::seed_from_u64(32), 3);
        // n = 1: sum of weights
        let total: Rat = m.atoms().iter().map(|(_, w)| w.clone()).sum();
        assert_eq!(heine_multisum(&m, 1).unwrap(), total);
        // more factors than atoms: zero
        assert_eq!(heine_multisum(&m, 4).unwrap(), rat(0));
        assert_eq!(heine_multisum(&m, 0).unwrap(), rat(1));
    }

    #[test]
    fn budget_guard() {
        let m = random_measure(&mut ChaCha8Rng::seed_from_u64(33), 4);
        // 4^13 ≈ 6.7e7 exceeds the 1e7 budget
        assert!(matches!(
            heine_multisum(&m, 13),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn twist_examples() {
        let m = DiscreteMeasure::new(vec![(rat(1), rat(2)), (rat(3), rat(1))]).unwrap();
        // empty configuration: unchanged
        assert_eq!(twist_measure(&m, &PointConfiguration::empty()), m);
        // a point at an atom location drops that atom
        let cfg = PointConfiguration::from_points(&[rat(1)]);
        let t = twist_measure(&m, &cfg);
        assert_eq!(t.atoms().len(), 1);
        assert_eq!(t.atoms()[0], (rat(3), rat(-2))); // (1 - 3) * 1
    }

    #[test]
    fn twisted_moments_are_combined_moments() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..10 {
            let m = random_measure(&mut rng, 3);
            let d = rng.gen_range(0..=2);
            let mut pts = Vec::new();
            while pts.len() < d {
                let v = rrat(&mut rng);
                if !pts.contains(&v) {
                    pts.push(v);
                }
            }
            let cfg = PointConfiguration::from_points(&pts);
            let twisted = measure_moments(&twist_measure(&m, &cfg), 5);
            let plain = measure_moments(&m, 5 + d);
            // coefficients of prod (x_l - u) in u
            let mut coeffs = vec![rat(1)];
            for x in &pts {
                let mut next = vec![Rat::zero(); coeffs.len() + 1];
                for (k, c) in coeffs.iter().enumerate() {
                    next[k] += c * x;
                    next[k + 1] -= c;
                }
                coeffs = next;
            }
            for s in 0..5 {
                let expect: Rat = coeffs
                    .iter()
                    .enumerate()
                    .map(|(k, c)| c * &plain.values()[s + k])
                    .sum();
                assert_eq!(twisted.values()[s], expect);
            }
        }
    }

    #[test]
    fn heine_check_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        // empty configuration (the multisum identity itself)
        for _ in 0..10 {
            let k = rng.gen_range(1..=4);
            let m = random_measure(&mut rng, k);
            for n in 0..=3 {
                assert!(heine_check(&m, &PointConfiguration::empty(), n).unwrap());
            }
        }
        // twisted instances
        for _ in 0..20 {
            let m = random_measure(&mut rng, 4);
            let d = rng.gen_range(0..=2);
            let mut pts = Vec::new();
            while pts.len() < d {
                let v = rrat(&mut rng);
                if !pts.contains(&v) {
                    pts.push(v);
                }
            }
            let cfg = PointConfiguration::from_points(&pts);
            for n in 0..=3 {
                assert!(heine_check(&m, &cfg, n).unwrap(), "n={n} d={d}");
            }
        }
    }

    #[test]
    fn measure_json_round_trip() {
        let m = DiscreteMeasure::new(vec![(rat(1), ratio(1, 2)), (rat(-2), rat(3))]).unwrap();
        assert_eq!(DiscreteMeasure::from_json(&m.to_json()).unwrap(), m);
        assert!(DiscreteMeasure::from_json(&serde_json::json!({"atoms": [{"x": "1"}]})).is_err());
        assert_eq!(
            DiscreteMeasure::new(vec![(rat(1), rat(1)), (rat(1), rat(2))]),
            Err(Error::RepeatedPoint)
        );
    }
}
