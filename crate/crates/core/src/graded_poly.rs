//! Sparse multivariate polynomials over Q with a positive integer weight per
//! variable.
//!
//! The weighted degree of `x^e` is `sum(e_i * w_i)`. The divisorial valuation
//! of the exceptional divisor of the weighted blowup with weights `w` is the
//! minimum weighted degree over the support, which is what
//! [`GradedPolynomial::weighted_valuation`] returns.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::Rational;

pub type Exponents = Vec<u32>;

/// Exact-coefficient polynomial in `weights.len()` variables.
///
/// No stored coefficient is ever zero, so the zero polynomial is the empty
/// term map.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GradedPolynomial {
    weights: Vec<u32>,
    terms: BTreeMap<Exponents, Rational>,
}

/// Result of substituting `x_i -> u^{w_i} x_i` and factoring out `u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChartPullback {
    /// Largest `k` with `u^k` dividing the substituted polynomial.
    pub power: u64,
    /// Polynomial in `(u, x_1, .., x_n)`, not divisible by `u`. The variable
    /// `u` carries weight 1.
    pub strict_transform: GradedPolynomial,
}

fn check_weights(weights: &[u32]) -> Result<()> {
    if weights.is_empty() {
        return Err(Error::InvalidWeights("at least one variable is required".into()));
    }
    if weights.contains(&0) {
        return Err(Error::InvalidWeights("weights must be positive".into()));
    }
    Ok(())
}

/// Parse `"1,2,3"` into a weight vector.
pub fn parse_weights(s: &str) -> Result<Vec<u32>> {
    let weights = s
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u32>()
                .map_err(|_| Error::InvalidWeights(format!("{:?} is not a positive integer", p.trim())))
        })
        .collect::<Result<Vec<_>>>()?;
    check_weights(&weights)?;
    Ok(weights)
}

impl GradedPolynomial {
    pub fn zero(weights: &[u32]) -> Result<Self> {
        check_weights(weights)?;
        Ok(GradedPolynomial {
            weights: weights.to_vec(),
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(weights: &[u32], c: Rational) -> Result<Self> {
        let mut p = Self::zero(weights)?;
        if !c.is_zero() {
            p.terms.insert(vec![0; weights.len()], c);
        }
        Ok(p)
    }

    /// The coordinate `x_{index+1}`.
    pub fn variable(weights: &[u32], index: usize) -> Result<Self> {
        Self::monomial(weights, Rational::one(), &unit(weights.len(), index)?)
    }

    pub fn monomial(weights: &[u32], coeff: Rational, exponents: &[u32]) -> Result<Self> {
        Self::from_terms(weights, [(exponents.to_vec(), coeff)])
    }

    /// Collects terms, summing repeated exponent vectors and dropping zeros.
    pub fn from_terms<I>(weights: &[u32], terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Exponents, Rational)>,
    {
        let mut p = Self::zero(weights)?;
        for (e, c) in terms {
            if e.len() != weights.len() {
                return Err(Error::InvalidWeights(format!(
                    "exponent vector of length {} for {} variables",
                    e.len(),
                    weights.len()
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Exponents, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn num_vars(&self) -> usize {
        self.weights.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(exponents).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn weighted_degree_of(&self, exponents: &[u32]) -> u64 {
        exponents
            .iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as u64 * w as u64)
            .sum()
    }

    /// Same terms, new grading.
    pub fn with_weights(&self, weights: &[u32]) -> Result<Self> {
        check_weights(weights)?;
        if weights.len() != self.weights.len() {
            return Err(Error::WeightMismatch {
                expected: self.weights.clone(),
                found: weights.to_vec(),
            });
        }
        Ok(GradedPolynomial {
            weights: weights.to_vec(),
            terms: self.terms.clone(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|e| self.weighted_degree_of(e));
        match degrees.next() {
            None => true,
            Some(first) => degrees.all(|d| d == first),
        }
    }

    /// Minimum weighted degree over the support: `v_E(f)` for the exceptional
    /// divisor of the weighted blowup with these weights.
    pub fn weighted_valuation(&self) -> Result<u64> {
        self.terms
            .keys()
            .map(|e| self.weighted_degree_of(e))
            .min()
            .ok_or(Error::ZeroPolynomial)
    }

    /// Splits into weighted-homogeneous parts, by strictly increasing degree.
    pub fn homogeneous_decomposition(&self) -> Result<Vec<(u64, GradedPolynomial)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut parts: BTreeMap<u64, GradedPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let d = self.weighted_degree_of(e);
            parts
                .entry(d)
                .or_insert_with(|| GradedPolynomial {
                    weights: self.weights.clone(),
                    terms: BTreeMap::new(),
                })
                .terms
                .insert(e.clone(), c.clone());
        }
        Ok(parts.into_iter().collect())
    }

    /// Pulls back along `x_i -> u^{w_i} x_i` by explicit substitution and
    /// divides out the largest power of `u`.
    pub fn chart_pullback(&self) -> Result<ChartPullback> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let n = self.num_vars();
        let mut target_weights = Vec::with_capacity(n + 1);
        target_weights.push(1);
        target_weights.extend_from_slice(&self.weights);

        let u = GradedPolynomial::variable(&target_weights, 0)?;
        let images = (0..n)
            .map(|i| {
                let xi = GradedPolynomial::variable(&target_weights, i + 1)?;
                Ok(&u.pow(self.weights[i]) * &xi)
            })
            .collect::<Result<Vec<_>>>()?;
        let pulled = self.substitute(&images)?;

        let power = pulled
            .terms
            .keys()
            .map(|e| e[0] as u64)
            .min()
            .expect("substitution of a nonzero polynomial is nonzero");
        let strict_transform = GradedPolynomial {
            weights: target_weights,
            terms: pulled
                .terms
                .into_iter()
                .map(|(mut e, c)| {
                    e[0] -= power as u32;
                    (e, c)
                })
                .collect(),
        };
        Ok(ChartPullback {
            power,
            strict_transform,
        })
    }

    /// Composition `f(p_1, .., p_n)`. All images must share one grading,
    /// which becomes the grading of the result.
    pub fn substitute(&self, images: &[GradedPolynomial]) -> Result<GradedPolynomial> {
        if images.len() != self.num_vars() {
            return Err(Error::InvalidWeights(format!(
                "substitution needs {} images, got {}",
                self.num_vars(),
                images.len()
            )));
        }
        let target = images[0].weights.clone();
        if let Some(bad) = images.iter().find(|p| p.weights != target) {
            return Err(Error::WeightMismatch {
                expected: target,
                found: bad.weights.clone(),
            });
        }
        let one = GradedPolynomial::constant(&target, Rational::one())?;
        // powers[i][k] = images[i]^k, filled lazily
        let mut powers: Vec<Vec<GradedPolynomial>> = vec![vec![one.clone()]; images.len()];
        let mut out = GradedPolynomial::zero(&target)?;
        for (e, c) in &self.terms {
            let mut term = GradedPolynomial::constant(&target, c.clone())?;
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                if k > 0 {
                    term = &term * &powers[i][k as usize];
                }
            }
            out = &out + &term;
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> GradedPolynomial {
        let mut acc = GradedPolynomial {
            weights: self.weights.clone(),
            terms: BTreeMap::from([(vec![0; self.num_vars()], Rational::one())]),
        };
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn scale(&self, c: &Rational) -> GradedPolynomial {
        if c.is_zero() {
            return GradedPolynomial {
                weights: self.weights.clone(),
                terms: BTreeMap::new(),
            };
        }
        GradedPolynomial {
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn partial_derivative(&self, var: usize) -> GradedPolynomial {
        assert!(var < self.num_vars(), "variable index out of range");
        let mut out = GradedPolynomial {
            weights: self.weights.clone(),
            terms: BTreeMap::new(),
        };
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = e.clone();
            d[var] -= 1;
            out.add_term(d, c * Rational::from_integer(BigInt::from(e[var])));
        }
        out
    }

    /// Terms in canonical order: increasing weighted degree, then
    /// lexicographically decreasing exponents.
    pub fn sorted_terms(&self) -> Vec<(&Exponents, &Rational)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|(a, _), (b, _)| self.canonical_cmp(a, b));
        v
    }

    fn canonical_cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        self.weighted_degree_of(a)
            .cmp(&self.weighted_degree_of(b))
            .then_with(|| b.cmp(a))
    }

    pub fn display_with<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        NamedDisplay { poly: self, names }
    }

    pub fn parse(literal: &str, weights: &[u32]) -> Result<Self> {
        check_weights(weights)?;
        Parser {
            src: literal.as_bytes(),
            pos: 0,
            weights,
        }
        .parse()
    }
}

fn unit(n: usize, index: usize) -> Result<Exponents> {
    if index >= n {
        return Err(Error::InvalidWeights(format!(
            "variable x{} out of range for {} variables",
            index + 1,
            n
        )));
    }
    let mut e = vec![0; n];
    e[index] = 1;
    Ok(e)
}

fn assert_same_grading(a: &GradedPolynomial, b: &GradedPolynomial) {
    assert_eq!(
        a.weights, b.weights,
        "polynomials with different gradings cannot be combined"
    );
}

impl Add for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn add(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        assert_same_grading(self, rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn sub(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        self + &(-rhs)
    }
}

impl Neg for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn neg(self) -> GradedPolynomial {
        GradedPolynomial {
            weights: self.weights.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Mul for &GradedPolynomial {
    type Output = GradedPolynomial;

    fn mul(self, rhs: &GradedPolynomial) -> GradedPolynomial {
        assert_same_grading(self, rhs);
        let mut out = GradedPolynomial {
            weights: self.weights.clone(),
            terms: BTreeMap::new(),
        };
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(exponent_sum(ea, eb), ca * cb);
            }
        }
        out
    }
}

fn exponent_sum(a: &[u32], b: &[u32]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

struct NamedDisplay<'a> {
    poly: &'a GradedPolynomial,
    names: &'a [String],
}

impl fmt::Display for NamedDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.poly, |i| self.names[i].clone())
    }
}

fn write_poly(f: &mut fmt::Formatter<'_>, p: &GradedPolynomial, name: impl Fn(usize) -> String) -> fmt::Result {
    if p.is_zero() {
        return f.write_str("0");
    }
    for (k, (e, c)) in p.sorted_terms().into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        match (k, neg) {
            (0, true) => f.write_str("-")?,
            (0, false) => {}
            (_, true) => f.write_str(" - ")?,
            (_, false) => f.write_str(" + ")?,
        }
        let factors: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { name(i) } else { format!("{}^{}", name(i), k) })
            .collect();
        if factors.is_empty() {
            write!(f, "{abs}")?;
        } else {
            if !abs.is_one() {
                write!(f, "{abs}*")?;
            }
            f.write_str(&factors.join("*"))?;
        }
    }
    Ok(())
}

impl fmt::Display for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self, |i| format!("x{}", i + 1))
    }
}

impl fmt::Display for ChartPullback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, &self.strict_transform, |i| {
            if i == 0 {
                "u".to_string()
            } else {
                format!("x{i}")
            }
        })
    }
}

impl fmt::Debug for GradedPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedPolynomial({} ; weights {:?})", self, self.weights)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    weights: &'a [u32],
}

impl Parser<'_> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::PolyParse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn parse(mut self) -> Result<GradedPolynomial> {
        let mut out = GradedPolynomial::zero(self.weights)?;
        if self.peek().is_none() {
            return self.err("empty polynomial");
        }
        let mut first = true;
        loop {
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                Some(_) if first => false,
                Some(c) => return self.err(format!("expected '+' or '-', found {:?}", c as char)),
                None => break,
            };
            first = false;
            let (e, c) = self.term()?;
            out.add_term(e, if negative { -c } else { c });
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Exponents, Rational)> {
        let mut exps = vec![0u32; self.weights.len()];
        let mut coeff = Rational::one();
        loop {
            match self.peek() {
                Some(c) if c.is_ascii_digit() => coeff *= self.number()?,
                Some(b'x') => {
                    self.pos += 1;
                    let idx = self.unsigned()?;
                    if idx == 0 || idx as usize > self.weights.len() {
                        return self.err(format!(
                            "variable x{idx} out of range for {} variables",
                            self.weights.len()
                        ));
                    }
                    let mut k = 1;
                    if self.peek() == Some(b'^') {
                        self.pos += 1;
                        self.skip_ws();
                        k = u32::try_from(self.unsigned()?).or_else(|_| self.err("exponent too large"))?;
                    }
                    let slot = &mut exps[idx as usize - 1];
                    *slot = slot.checked_add(k).map_or_else(|| self.err("exponent too large"), Ok)?;
                }
                Some(c) => return self.err(format!("unexpected character {:?}", c as char)),
                None => return self.err("unexpected end of input"),
            }
            if self.peek() == Some(b'*') {
                self.pos += 1;
            } else {
                return Ok((exps, coeff));
            }
        }
    }

    fn unsigned(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .or_else(|_| self.err("integer too large"))
    }

    fn digits(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .unwrap()
            .parse()
            .unwrap())
    }

    fn number(&mut self) -> Result<Rational> {
        let num = self.digits()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            self.skip_ws();
            let den = self.digits()?;
            if den.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const W123: &[u32] = &[1, 2, 3];

    fn p(s: &str) -> GradedPolynomial {
        GradedPolynomial::parse(s, W123).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p("x2").weighted_valuation().unwrap(), 2);
        assert_eq!(p("x1^2 + x2").weighted_valuation().unwrap(), 2);
        assert_eq!(p("x1*x2 - x3 + x1^5").weighted_valuation().unwrap(), 3);
    }

    #[test]
    fn zero_is_rejected() {
        let z = GradedPolynomial::zero(W123).unwrap();
        assert_eq!(z.weighted_valuation(), Err(Error::ZeroPolynomial));
        assert_eq!(z.homogeneous_decomposition(), Err(Error::ZeroPolynomial));
        assert_eq!(z.chart_pullback(), Err(Error::ZeroPolynomial));
        assert_eq!(Error::ZeroPolynomial.to_string(), "valuation of zero undefined");
        assert!(p("x1 - x1").is_zero());
    }

    #[test]
    fn decomposition_examples() {
        let d = p("x1 + x2").homogeneous_decomposition().unwrap();
        assert_eq!(d, vec![(1, p("x1")), (2, p("x2"))]);
        let d = p("x1*x2 - x3").homogeneous_decomposition().unwrap();
        assert_eq!(d, vec![(3, p("x1*x2 - x3"))]);
        let d = p("x1^3 + x2 + x3").homogeneous_decomposition().unwrap();
        assert_eq!(d, vec![(2, p("x2")), (3, p("x1^3 + x3"))]);
    }

    #[test]
    fn pullback_examples() {
        let lift = |s: &str| {
            let f = p(s);
            let mut w = vec![1];
            w.extend_from_slice(W123);
            GradedPolynomial::from_terms(
                &w,
                f.terms().map(|(e, c)| {
                    let mut v = vec![0];
                    v.extend_from_slice(e);
                    (v, c.clone())
                }),
            )
            .unwrap()
        };
        let r = p("x1").chart_pullback().unwrap();
        assert_eq!((r.power, r.strict_transform), (1, lift("x1")));
        let r = p("x1*x2 - x3").chart_pullback().unwrap();
        assert_eq!((r.power, r.strict_transform.clone()), (3, lift("x1*x2 - x3")));
        assert_eq!(r.to_string(), "x1*x2 - x3");
        let r = p("x2^2 + x1*x3").chart_pullback().unwrap();
        assert_eq!((r.power, r.strict_transform), (4, lift("x2^2 + x1*x3")));

        // mixed degrees keep a u-dependence in the strict transform
        let r = p("x2 + x1^3").chart_pullback().unwrap();
        assert_eq!(r.power, 2);
        assert_eq!(r.to_string(), "x2 + u*x1^3");
    }

    #[test]
    fn parse_and_print() {
        let f = GradedPolynomial::parse("x1*x2 - x3 + 1/2*x1^5", W123).unwrap();
        assert_eq!(f.coefficient(&[5, 0, 0]), q(1, 2));
        assert_eq!(f.coefficient(&[0, 0, 1]), q(-1, 1));
        assert_eq!(f.to_string(), "x1*x2 - x3 + 1/2*x1^5");
        assert_eq!(p("-3 + x1*x1").to_string(), "-3 + x1^2");
        assert_eq!(p("2/4*x3*3").to_string(), "3/2*x3");
        assert_eq!(p("x3 + x1*x2").to_string(), "x1*x2 + x3");
        assert_eq!(GradedPolynomial::zero(W123).unwrap().to_string(), "0");
    }

    #[test]
    fn parse_errors() {
        for bad in ["", "x4", "x0", "x1 x2", "x1 +", "1/0*x1", "y1", "x1^"] {
            assert!(
                matches!(GradedPolynomial::parse(bad, W123), Err(Error::PolyParse { .. })),
                "{bad:?} should not parse"
            );
        }
        assert!(parse_weights("1,0,2").is_err());
        assert!(parse_weights("1,a").is_err());
        assert_eq!(parse_weights(" 1, 2,3").unwrap(), vec![1, 2, 3]);
    }

    #[test]
    fn derivative_and_substitution() {
        let f = p("x1^3*x2 + 5*x3");
        assert_eq!(f.partial_derivative(0), p("3*x1^2*x2"));
        assert_eq!(f.partial_derivative(2), p("5"));
        let g = f.substitute(&[p("x1 + 1"), p("x2"), p("x1")]).unwrap();
        assert_eq!(g, p("x1^3*x2 + 3*x1^2*x2 + 3*x1*x2 + x2 + 5*x1"));
    }

    fn arb_poly() -> impl Strategy<Value = GradedPolynomial> {
        proptest::collection::vec(((0u32..4, 0u32..4, 0u32..4), -5i64..=5), 1..6).prop_map(|ts| {
            GradedPolynomial::from_terms(
                W123,
                ts.into_iter()
                    .map(|((a, b, c), k)| (vec![a, b, c], Rational::from_integer(k.into()))),
            )
            .unwrap()
        })
    }

    proptest! {
        #[test]
        fn valuation_is_additive_on_products(f in arb_poly(), g in arb_poly()) {
            prop_assume!(!f.is_zero() && !g.is_zero());
            let fg = &f * &g;
            prop_assert_eq!(
                fg.weighted_valuation().unwrap(),
                f.weighted_valuation().unwrap() + g.weighted_valuation().unwrap()
            );
        }

        #[test]
        fn valuation_of_sum_is_at_least_min(f in arb_poly(), g in arb_poly()) {
            let s = &f + &g;
            prop_assume!(!s.is_zero() && !f.is_zero() && !g.is_zero());
            let m = f.weighted_valuation().unwrap().min(g.weighted_valuation().unwrap());
            prop_assert!(s.weighted_valuation().unwrap() >= m);
        }

        #[test]
        fn pullback_power_is_valuation(f in arb_poly()) {
            prop_assume!(!f.is_zero());
            prop_assert_eq!(f.chart_pullback().unwrap().power, f.weighted_valuation().unwrap());
        }

        #[test]
        fn decomposition_resums(f in arb_poly()) {
            prop_assume!(!f.is_zero());
            let parts = f.homogeneous_decomposition().unwrap();
            prop_assert_eq!(parts[0].0, f.weighted_valuation().unwrap());
            prop_assert!(parts.windows(2).all(|w| w[0].0 < w[1].0));
            let mut sum = GradedPolynomial::zero(W123).unwrap();
            for (d, part) in &parts {
                prop_assert!(part.is_homogeneous());
                prop_assert_eq!(part.weighted_valuation().unwrap(), *d);
                sum = &sum + part;
            }
            prop_assert_eq!(sum, f);
        }

        #[test]
        fn print_parse_roundtrip(f in arb_poly()) {
            let printed = f.to_string();
            prop_assert_eq!(GradedPolynomial::parse(&printed, W123).unwrap(), f);
        }
    }
}
