//! Arithmetic of `(1,a,b)`-blowups of a smooth point on a threefold.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;
use num_traits::Signed;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graded_poly::GradedPolynomial;
use crate::Rational;

/// The weighted blowup with weights `(1, a, b)`, stored with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedBlowup {
    a: u64,
    b: u64,
}

impl WeightedBlowup {
    /// Rejects non-coprime or zero weights. The two weights are swapped into
    /// increasing order.
    pub fn new(a: u64, b: u64) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidBlowup {
                a,
                b,
                reason: "weights must be positive",
            });
        }
        if a.gcd(&b) != 1 {
            return Err(Error::InvalidBlowup {
                a,
                b,
                reason: "weights must be coprime",
            });
        }
        Ok(WeightedBlowup {
            a: a.min(b),
            b: a.max(b),
        })
    }

    /// Parses `"a,b"`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [a, b] = parts.as_slice() else {
            return Err(Error::InvalidWeights(format!("expected a,b, got {s:?}")));
        };
        let num = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::InvalidWeights(format!("{t:?} is not a positive integer")))
        };
        Self::new(num(a)?, num(b)?)
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    /// The full weight vector `(1, a, b)`.
    pub fn weights(&self) -> Vec<u32> {
        vec![1, self.a as u32, self.b as u32]
    }

    /// Coefficient of `E` in `K_X - pi^* K_Y`.
    pub fn discrepancy(&self) -> u64 {
        self.a + self.b
    }

    /// `E . C~ = v_E(f1) v_E(f2) / (ab)` for the strict transform of the curve
    /// cut out by `f1 = f2 = 0` near the center.
    ///
    /// Whether `f1, f2` really define a curve is not checked.
    pub fn exceptional_intersection(&self, f1: &GradedPolynomial, f2: &GradedPolynomial) -> Result<Rational> {
        let w = self.weights();
        for f in [f1, f2] {
            if f.weights() != w.as_slice() {
                return Err(Error::WeightMismatch {
                    expected: w,
                    found: f.weights().to_vec(),
                });
            }
        }
        let v1 = f1.weighted_valuation()?;
        let v2 = f2.weighted_valuation()?;
        Ok(Rational::new(
            (v1 as u128 * v2 as u128).into(),
            (self.a as u128 * self.b as u128).into(),
        ))
    }

    /// `n (2 - (a+b)^2/(ab) v_H)`: the anticanonical degree of the strict
    /// transform of a curve in `n` times the anticanonical class when the
    /// hyperplane section through the center has valuation `v_H`.
    pub fn anticanonical_defect(&self, v_h: u64, n: u64) -> Rational {
        let s = (self.a + self.b) as u128;
        let ab = (self.a * self.b) as u128;
        let r = Rational::from_integer(2.into()) - Rational::new((s * s * v_h as u128).into(), ab.into());
        r * Rational::from_integer(n.into())
    }

    /// `(a+b)^2/(ab)`.
    pub fn discrepancy_ratio(&self) -> Rational {
        let s = (self.a + self.b) as u128;
        Rational::new((s * s).into(), ((self.a * self.b) as u128).into())
    }

    /// Certifies `(a+b)^2/(ab) > 2`.
    ///
    /// `gap` is `(a+b)^2/(ab) - 2 = (a^2+b^2)/(ab)`. Since `(a+b)^2 >= 4ab`
    /// the ratio is in fact at least 4, and `excess_over_four` records
    /// `(a+b)^2/(ab) - 4 = (a-b)^2/(ab)`.
    pub fn strict_positivity_check(&self) -> PositivityCertificate {
        let ratio = self.discrepancy_ratio();
        let gap = &ratio - Rational::from_integer(2.into());
        PositivityCertificate {
            holds: gap.is_positive(),
            gap,
            excess_over_four: ratio - Rational::from_integer(4.into()),
        }
    }
}

impl fmt::Display for WeightedBlowup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1,{},{})", self.a, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PositivityCertificate {
    pub holds: bool,
    pub gap: Rational,
    pub excess_over_four: Rational,
}

/// Splitting types `(a, b)` of the normal bundle `O(a) + O(b)` of a flopped
/// rational curve: `a + b = sum` and `a - b = diff`. `None` when parity
/// forbids an integer solution.
pub fn solve_normal_bundle(sum: i64, diff: i64) -> Option<(i64, i64)> {
    let twice_a = sum + diff;
    if twice_a.is_odd() {
        return None;
    }
    let a = twice_a / 2;
    Some((a, sum - a))
}

/// All integer solutions of `a + b = -2` with `a - b` in `{0, 1, 2}`.
pub fn flopped_normal_bundles() -> BTreeSet<(i64, i64)> {
    (0..=2).filter_map(|diff| solve_normal_bundle(-2, diff)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn squared_difference_ratio(bl: &WeightedBlowup) -> Rational {
        let d = (bl.a() as i128 - bl.b() as i128).abs();
        Rational::new((d * d).into(), ((bl.a() * bl.b()) as i128).into())
    }

    fn bl(a: u64, b: u64) -> WeightedBlowup {
        WeightedBlowup::new(a, b).unwrap()
    }

    fn poly(s: &str, b: &WeightedBlowup) -> GradedPolynomial {
        GradedPolynomial::parse(s, &b.weights()).unwrap()
    }

    #[test]
    fn construction() {
        assert!(matches!(
            WeightedBlowup::new(2, 4),
            Err(Error::InvalidBlowup {
                reason: "weights must be coprime",
                ..
            })
        ));
        assert!(WeightedBlowup::new(0, 1).is_err());
        let s = bl(3, 2);
        assert_eq!((s.a(), s.b()), (2, 3));
        assert_eq!(s.to_string(), "(1,2,3)");
        assert_eq!(WeightedBlowup::parse("3, 2").unwrap(), s);
        assert!(WeightedBlowup::parse("3").is_err());
    }

    #[test]
    fn discrepancy_examples() {
        assert_eq!(bl(1, 1).discrepancy(), 2);
        assert_eq!(bl(1, 2).discrepancy(), 3);
        assert_eq!(bl(2, 3).discrepancy(), 5);
    }

    #[test]
    fn exceptional_intersection_examples() {
        let b = bl(1, 1);
        assert_eq!(
            b.exceptional_intersection(&poly("x2", &b), &poly("x3", &b)).unwrap(),
            q(1, 1)
        );
        let b = bl(2, 3);
        assert_eq!(
            b.exceptional_intersection(&poly("x2", &b), &poly("x3", &b)).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            b.exceptional_intersection(&poly("x1^2", &b), &poly("x3", &b)).unwrap(),
            q(1, 1)
        );
        assert_eq!(
            b.exceptional_intersection(&poly("x1", &b), &poly("x2", &b)).unwrap(),
            q(1, 3)
        );
    }

    #[test]
    fn exceptional_intersection_errors() {
        let b = bl(2, 3);
        let zero = GradedPolynomial::zero(&b.weights()).unwrap();
        assert_eq!(
            b.exceptional_intersection(&zero, &poly("x3", &b)),
            Err(Error::ZeroPolynomial)
        );
        let wrong = GradedPolynomial::parse("x2", &[1, 1, 1]).unwrap();
        assert!(matches!(
            b.exceptional_intersection(&wrong, &poly("x3", &b)),
            Err(Error::WeightMismatch { .. })
        ));
    }

    #[test]
    fn defect_examples() {
        assert_eq!(bl(1, 1).anticanonical_defect(1, 1), q(-2, 1));
        // 2 - 25/6
        assert_eq!(bl(2, 3).anticanonical_defect(1, 1), q(-13, 6));
        assert_eq!(bl(1, 2).anticanonical_defect(2, 3), q(-21, 1));
    }

    #[test]
    fn positivity_examples() {
        let c = bl(1, 1).strict_positivity_check();
        assert_eq!(
            c,
            PositivityCertificate {
                holds: true,
                gap: q(2, 1),
                excess_over_four: q(0, 1)
            }
        );
        let c = bl(2, 3).strict_positivity_check();
        assert_eq!((c.gap, c.excess_over_four), (q(13, 6), q(1, 6)));
        let c = bl(1, 5).strict_positivity_check();
        assert_eq!((c.gap, c.excess_over_four), (q(26, 5), q(16, 5)));
    }

    #[test]
    fn normal_bundles() {
        assert_eq!(
            flopped_normal_bundles().into_iter().collect::<Vec<_>>(),
            vec![(-1, -1), (0, -2)]
        );
        assert_eq!(solve_normal_bundle(-2, 0), Some((-1, -1)));
        assert_eq!(solve_normal_bundle(-2, 1), None);
        assert_eq!(solve_normal_bundle(-2, 2), Some((0, -2)));
    }

    fn coprime_pair() -> impl Strategy<Value = WeightedBlowup> {
        (1u64..40, 1u64..40)
            .prop_filter("coprime", |(a, b)| a.gcd(b) == 1)
            .prop_map(|(a, b)| bl(a, b))
    }

    proptest! {
        #[test]
        fn defect_is_negative(b in coprime_pair(), vh in 1u64..10, n in 1u64..10) {
            prop_assert!(b.anticanonical_defect(vh, n).is_negative());
        }

        #[test]
        fn gap_matches_squared_difference(b in coprime_pair()) {
            let cert = b.strict_positivity_check();
            prop_assert!(cert.holds);
            prop_assert_eq!(&cert.excess_over_four, &squared_difference_ratio(&b));
            prop_assert_eq!(cert.gap, cert.excess_over_four + q(2, 1));
        }

        #[test]
        fn intersection_symmetric_and_multiplicative(
            b in coprime_pair(),
            e1 in (0u32..4, 0u32..4, 0u32..4),
            e2 in (0u32..4, 0u32..4, 0u32..4),
            e3 in (0u32..4, 0u32..4, 0u32..4),
        ) {
            let w = b.weights();
            let m = |e: (u32, u32, u32)| {
                GradedPolynomial::monomial(&w, Rational::from_integer(1.into()), &[e.0, e.1, e.2]).unwrap()
            };
            let (f, g, h) = (m(e1), m(e2), m(e3));
            let fg = b.exceptional_intersection(&f, &g).unwrap();
            prop_assert_eq!(&fg, &b.exceptional_intersection(&g, &f).unwrap());
            let fh_g = b.exceptional_intersection(&(&f * &h), &g).unwrap();
            prop_assert_eq!(fh_g, fg + b.exceptional_intersection(&h, &g).unwrap());
        }
    }
}
