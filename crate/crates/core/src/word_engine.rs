//! Words in the free product `G * (*_J Z/2)`.
//!
//! `G` is modeled as the free group on opaque symbols, so the whole group is
//! a free product of infinite cyclic factors (one per G-symbol) and factors
//! of order two (one per curve label `j`, generated by `chi_j`). A word is in
//! normal form when no two adjacent letters lie in the same factor.
//!
//! Word literals are whitespace-separated letters: `g:<symbol>^<exp>` (the
//! exponent defaults to 1) and `chi:<label>`. The identity prints as `1`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::Serialize;

use crate::curve_catalog::{is_valid_label, Catalog};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Letter {
    /// `symbol^exponent` in the free group `G`. The exponent is nonzero.
    G { symbol: String, exponent: i64 },
    /// The involution attached to a curve label.
    Chi(String),
}

impl Letter {
    pub fn g(symbol: impl Into<String>, exponent: i64) -> Letter {
        assert_ne!(exponent, 0, "g-letters have nonzero exponent");
        Letter::G {
            symbol: symbol.into(),
            exponent,
        }
    }

    pub fn chi(label: impl Into<String>) -> Letter {
        Letter::Chi(label.into())
    }

    pub fn inverse(&self) -> Letter {
        match self {
            Letter::G { symbol, exponent } => Letter::G {
                symbol: symbol.clone(),
                exponent: -exponent,
            },
            Letter::Chi(_) => self.clone(),
        }
    }

    fn same_factor(&self, other: &Letter) -> bool {
        match (self, other) {
            (Letter::G { symbol: a, .. }, Letter::G { symbol: b, .. }) => a == b,
            (Letter::Chi(a), Letter::Chi(b)) => a == b,
            _ => false,
        }
    }

    /// Product of two letters in the same factor; `None` is the identity.
    fn merge(&self, other: &Letter) -> Option<Letter> {
        debug_assert!(self.same_factor(other));
        match (self, other) {
            (Letter::G { symbol, exponent: x }, Letter::G { exponent: y, .. }) => {
                let e = x + y;
                (e != 0).then(|| Letter::G {
                    symbol: symbol.clone(),
                    exponent: e,
                })
            }
            _ => None,
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::G { symbol, exponent: 1 } => write!(f, "g:{symbol}"),
            Letter::G { symbol, exponent } => write!(f, "g:{symbol}^{exponent}"),
            Letter::Chi(label) => write!(f, "chi:{label}"),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Letter> {
        if let Some(label) = s.strip_prefix("chi:") {
            if !is_valid_label(label) {
                return Err(Error::WordParse(format!("invalid chi label in {s:?}")));
            }
            return Ok(Letter::Chi(label.to_string()));
        }
        if let Some(body) = s.strip_prefix("g:") {
            let (symbol, exponent) = match body.split_once('^') {
                Some((sym, exp)) => (
                    sym,
                    exp.parse::<i64>()
                        .map_err(|_| Error::WordParse(format!("invalid exponent in {s:?}")))?,
                ),
                None => (body, 1),
            };
            if !is_valid_label(symbol) || symbol.contains('^') {
                return Err(Error::WordParse(format!("invalid g symbol in {s:?}")));
            }
            if exponent == 0 {
                return Err(Error::WordParse(format!("zero exponent in {s:?}")));
            }
            return Ok(Letter::g(symbol, exponent));
        }
        Err(Error::WordParse(format!(
            "{s:?} is not a letter (expected g:<symbol>^<exp> or chi:<label>)"
        )))
    }
}

/// A finite sequence of letters, not necessarily reduced.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn has_g_letters(&self) -> bool {
        self.0.iter().any(|l| matches!(l, Letter::G { .. }))
    }

    pub fn chi_labels(&self) -> impl Iterator<Item = &str> {
        self.0.iter().filter_map(|l| match l {
            Letter::Chi(j) => Some(j.as_str()),
            Letter::G { .. } => None,
        })
    }

    /// True when no two adjacent letters lie in the same factor.
    pub fn is_reduced(&self) -> bool {
        self.0.windows(2).all(|w| !w[0].same_factor(&w[1]))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let trimmed = s.trim();
        if trimmed == "1" || trimmed.is_empty() {
            return Ok(Word::identity());
        }
        trimmed
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_>>()
            .map(Word)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// Stack reduction: merge or cancel each incoming letter against the top.
fn reduce(letters: impl IntoIterator<Item = Letter>) -> Word {
    let mut stack: Vec<Letter> = Vec::new();
    for letter in letters {
        match stack.last() {
            Some(top) if top.same_factor(&letter) => {
                let merged = top.merge(&letter);
                stack.pop();
                stack.extend(merged);
            }
            _ => stack.push(letter),
        }
    }
    Word(stack)
}

/// Conjugates a reduced word until its first and last letters lie in
/// different factors (or it has at most one letter).
pub fn cyclic_reduction(w: &Word) -> Word {
    let mut d: VecDeque<Letter> = w.0.iter().cloned().collect();
    while d.len() >= 2 && d.front().unwrap().same_factor(d.back().unwrap()) {
        let first = d.pop_front().unwrap();
        let last = d.pop_back().unwrap();
        d.extend(last.merge(&first));
    }
    Word(d.into())
}

fn is_rotation(u: &[Letter], v: &[Letter]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    if u.is_empty() {
        return true;
    }
    (0..u.len()).any(|shift| u[shift..].iter().chain(&u[..shift]).eq(v.iter()))
}

/// A bijection on a finite set of labels, written in cycle notation as
/// `(a b)(c d e)`. Fixed points are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct IndexPermutation {
    map: BTreeMap<String, String>,
}

impl IndexPermutation {
    pub fn identity() -> Self {
        Self::default()
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles<S: AsRef<str>>(cycles: &[Vec<S>]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        let mut map = BTreeMap::new();
        for cycle in cycles {
            for label in cycle {
                let label = label.as_ref();
                if !is_valid_label(label) {
                    return Err(Error::PermParse(format!("invalid label {label:?}")));
                }
                if !seen.insert(label.to_string()) {
                    return Err(Error::PermParse(format!("label {label:?} appears twice")));
                }
            }
            if cycle.len() < 2 {
                continue;
            }
            for (i, label) in cycle.iter().enumerate() {
                let next = &cycle[(i + 1) % cycle.len()];
                map.insert(label.as_ref().to_string(), next.as_ref().to_string());
            }
        }
        Ok(IndexPermutation { map })
    }

    pub fn apply<'a>(&'a self, label: &'a str) -> &'a str {
        self.map.get(label).map_or(label, String::as_str)
    }

    pub fn inverse(&self) -> IndexPermutation {
        IndexPermutation {
            map: self.map.iter().map(|(k, v)| (v.clone(), k.clone())).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Labels not fixed, in sorted order.
    pub fn moved(&self) -> impl Iterator<Item = &str> {
        self.map.keys().map(String::as_str)
    }

    /// Non-trivial cycles, each starting at its smallest label, ordered by
    /// that label.
    pub fn cycles(&self) -> Vec<Vec<String>> {
        let mut done = BTreeSet::new();
        let mut out = Vec::new();
        for start in self.map.keys() {
            if done.contains(start) {
                continue;
            }
            let mut cycle = vec![start.clone()];
            done.insert(start.clone());
            let mut cur = &self.map[start];
            while cur != start {
                done.insert(cur.clone());
                cycle.push(cur.clone());
                cur = &self.map[cur];
            }
            out.push(cycle);
        }
        out
    }

    /// Least common multiple of the cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| acc.lcm(&(c.len() as u64)))
    }
}

impl fmt::Display for IndexPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            write!(f, "({})", c.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for IndexPermutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut cycles: Vec<Vec<String>> = Vec::new();
        let mut rest = s.trim();
        while !rest.is_empty() {
            let Some(body) = rest.strip_prefix('(') else {
                return Err(Error::PermParse(format!("expected '(' at {rest:?}")));
            };
            let Some(close) = body.find(')') else {
                return Err(Error::PermParse("unclosed cycle".into()));
            };
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(Error::PermParse("nested '('".into()));
            }
            cycles.push(
                inner
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|t| !t.is_empty())
                    .map(str::to_string)
                    .collect(),
            );
            rest = body[close + 1..].trim_start();
        }
        IndexPermutation::from_cycles(&cycles)
    }
}

/// Outcome of [`WordEngine::non_inner_certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum NonInnerCertificate {
    Certified {
        /// A label `j0` moved by the permutation.
        witness: String,
        image: String,
        /// Whether `chi_{j0}` and `chi_{rho(j0)}` are conjugate; always false
        /// for a certificate.
        conjugate: bool,
        /// The two curves have different `(g, d)`, so no field automorphism
        /// can carry one to the other either.
        field_automorphism_obstruction: bool,
    },
    Refused {
        reason: String,
    },
}

/// Word operations, optionally restricted to the labels of a catalog.
#[derive(Debug, Clone, Default)]
pub struct WordEngine {
    labels: Option<BTreeSet<String>>,
}

impl WordEngine {
    /// Accepts every chi label.
    pub fn permissive() -> Self {
        WordEngine { labels: None }
    }

    pub fn with_catalog(catalog: &Catalog) -> Self {
        Self::with_labels(catalog.labels())
    }

    pub fn with_labels<I, S>(labels: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        WordEngine {
            labels: Some(labels.into_iter().map(Into::into).collect()),
        }
    }

    fn check_label(&self, label: &str) -> Result<()> {
        match &self.labels {
            Some(set) if !set.contains(label) => Err(Error::UnknownLabel(label.to_string())),
            _ => Ok(()),
        }
    }

    fn check(&self, w: &Word) -> Result<()> {
        w.chi_labels().try_for_each(|j| self.check_label(j))
    }

    /// The unique reduced form: adjacent g-letters with the same symbol are
    /// merged and `chi_j chi_j` cancels.
    pub fn normalize(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        Ok(reduce(w.0.iter().cloned()))
    }

    pub fn multiply(&self, w1: &Word, w2: &Word) -> Result<Word> {
        self.normalize(&w1.concat(w2))
    }

    pub fn invert(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        Ok(reduce(w.0.iter().rev().map(Letter::inverse)))
    }

    /// The projection onto `*_J Z/2`: g-letters die, chi letters survive.
    pub fn psi(&self, w: &Word) -> Result<Word> {
        self.check(w)?;
        Ok(reduce(w.0.iter().filter(|l| matches!(l, Letter::Chi(_))).cloned()))
    }

    /// Inclusion `*_J Z/2 -> G * (*_J Z/2)`, sending `1_j` to `chi_j`.
    pub fn section(&self, v: &Word) -> Result<Word> {
        if let Some(Letter::G { symbol, exponent }) = v.0.iter().find(|l| matches!(l, Letter::G { .. })) {
            return Err(Error::NotChiWord(Letter::g(symbol.clone(), *exponent).to_string()));
        }
        self.normalize(v)
    }

    /// Splits `w = n s` with `s = section(psi(w))` and `psi(n) = 1`.
    pub fn kernel_decompose(&self, w: &Word) -> Result<(Word, Word)> {
        let s = self.section(&self.psi(w)?)?;
        let n = self.multiply(w, &self.invert(&s)?)?;
        Ok((n, s))
    }

    /// The automorphism permuting the order-two factors by `rho` and fixing
    /// `G`.
    pub fn phi_automorphism(&self, rho: &IndexPermutation, w: &Word) -> Result<Word> {
        self.check(w)?;
        for j in rho.moved() {
            self.check_label(j)?;
        }
        Ok(reduce(w.0.iter().map(|l| match l {
            Letter::Chi(j) => Letter::Chi(rho.apply(j).to_string()),
            g => g.clone(),
        })))
    }

    pub fn automorphism_order(&self, rho: &IndexPermutation) -> u64 {
        rho.order()
    }

    /// Conjugacy in the free product: cyclically reduce both words, then
    /// compare up to rotation. Single letters are conjugate only when equal,
    /// since every factor is abelian.
    pub fn conjugate_in_free_product(&self, w1: &Word, w2: &Word) -> Result<bool> {
        let u = cyclic_reduction(&self.normalize(w1)?);
        let v = cyclic_reduction(&self.normalize(w2)?);
        Ok(is_rotation(&u.0, &v.0))
    }

    /// Shows that `phi(rho)` is not inner: it sends `chi_{j0}` to
    /// `chi_{rho(j0)}`, which lies in a different conjugacy class.
    ///
    /// Every label moved by `rho` must be in the catalog and flagged
    /// automorphism-free.
    pub fn non_inner_certificate(&self, rho: &IndexPermutation, catalog: &Catalog) -> Result<NonInnerCertificate> {
        let refuse = |reason: String| Ok(NonInnerCertificate::Refused { reason });
        if rho.is_identity() {
            return refuse("trivial permutation".into());
        }
        for j in rho.moved() {
            match catalog.get(j) {
                None => return refuse(format!("label {j} is not in the catalog")),
                Some(e) if !e.automorphism_free => {
                    return refuse(format!("label {j} is not flagged automorphism_free"))
                }
                Some(_) => {}
            }
        }
        let witness = rho.moved().next().expect("non-identity").to_string();
        let image = rho.apply(&witness).to_string();
        let conjugate =
            self.conjugate_in_free_product(&Word(vec![Letter::chi(&witness)]), &Word(vec![Letter::chi(&image)]))?;
        let (c0, c1) = (
            &catalog.get(&witness).unwrap().curve,
            &catalog.get(&image).unwrap().curve,
        );
        Ok(NonInnerCertificate::Certified {
            witness,
            image,
            conjugate,
            field_automorphism_obstruction: (c0.genus, c0.degree) != (c1.genus, c1.degree),
        })
    }
}
