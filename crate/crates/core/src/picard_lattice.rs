//! The rank-2 Néron–Severi lattice of the blowup `X -> Y` of `P^3` or a
//! smooth cubic threefold along a curve of genus `g` and degree `d`.
//!
//! Classes are written in the basis `(H, E)` where `H` is the pullback of the
//! hyperplane (section) class and `E` the exceptional divisor. The trilinear
//! form is
//!
//! ```text
//! H^3 = H^3_Y    H^2 E = 0    H E^2 = -d    E^3 = -r d + 2 - 2g
//! ```
//!
//! and `K_X = -r H + E`, with `r` the index of `Y`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::Rational;

/// `P^3` or a smooth cubic threefold in `P^4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AmbientSpace {
    #[serde(rename = "p3")]
    ProjectiveThreeSpace,
    #[serde(rename = "cubic")]
    CubicThreefold,
}

const P3_PAIRS: &[(u32, u32)] = &[(2, 8), (6, 9), (10, 10), (14, 11)];
const CUBIC_PAIRS: &[(u32, u32)] = &[(0, 5), (2, 6)];

impl AmbientSpace {
    pub const ALL: [AmbientSpace; 2] = [AmbientSpace::ProjectiveThreeSpace, AmbientSpace::CubicThreefold];

    /// Fano index `r`, with `-K_Y = r H`.
    pub fn index(self) -> i64 {
        match self {
            AmbientSpace::ProjectiveThreeSpace => 4,
            AmbientSpace::CubicThreefold => 2,
        }
    }

    pub fn hyperplane_cube(self) -> i64 {
        match self {
            AmbientSpace::ProjectiveThreeSpace => 1,
            AmbientSpace::CubicThreefold => 3,
        }
    }

    /// Dimension of `Aut(Y)`.
    pub fn aut_dimension(self) -> i64 {
        match self {
            AmbientSpace::ProjectiveThreeSpace => 15,
            AmbientSpace::CubicThreefold => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            AmbientSpace::ProjectiveThreeSpace => "p3",
            AmbientSpace::CubicThreefold => "cubic",
        }
    }

    /// Genus/degree pairs whose blowup has a sextic double solid as its
    /// anticanonical model.
    pub fn admissible_pairs(self) -> &'static [(u32, u32)] {
        match self {
            AmbientSpace::ProjectiveThreeSpace => P3_PAIRS,
            AmbientSpace::CubicThreefold => CUBIC_PAIRS,
        }
    }

    pub fn is_admissible(self, genus: u32, degree: u32) -> bool {
        self.admissible_pairs().contains(&(genus, degree))
    }

    pub(crate) fn inadmissible(self, genus: u32, degree: u32) -> Error {
        Error::Inadmissible {
            space: self.name(),
            genus,
            degree,
            admissible: self
                .admissible_pairs()
                .iter()
                .map(|(g, d)| format!("({g},{d})"))
                .collect::<Vec<_>>()
                .join(", "),
        }
    }
}

impl fmt::Display for AmbientSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AmbientSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p3" => Ok(AmbientSpace::ProjectiveThreeSpace),
            "cubic" => Ok(AmbientSpace::CubicThreefold),
            _ => Err(Error::UnknownSpace(s.to_string())),
        }
    }
}

/// A divisor class `h H + e E` with rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    pub h: Rational,
    pub e: Rational,
}

impl DivisorClass {
    pub fn new(h: Rational, e: Rational) -> Self {
        DivisorClass { h, e }
    }

    pub fn from_integers(h: i64, e: i64) -> Self {
        DivisorClass::new(Rational::from_integer(h.into()), Rational::from_integer(e.into()))
    }

    pub fn hyperplane() -> Self {
        Self::from_integers(1, 0)
    }

    pub fn exceptional() -> Self {
        Self::from_integers(0, 1)
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.h + &rhs.h, &self.e + &rhs.e)
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(&self.h - &rhs.h, &self.e - &rhs.e)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass::new(-&self.h, -&self.e)
    }
}

impl Mul<&DivisorClass> for &Rational {
    type Output = DivisorClass;

    fn mul(self, rhs: &DivisorClass) -> DivisorClass {
        DivisorClass::new(self * &rhs.h, self * &rhs.e)
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})H + ({})E", self.h, self.e)
    }
}

/// `N^1(X)` for the blowup of `ambient` along a curve of the given genus and
/// degree. Any `(genus, degree)` is accepted here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BlowupLattice {
    pub ambient: AmbientSpace,
    pub genus: u32,
    pub degree: u32,
}

/// The pullback action of the flop on `N^1(X)` in the basis `(K_X, H)`.
/// Column `j` holds the image of the `j`-th basis vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct FlopMatrix(pub [[i64; 2]; 2]);

impl FlopMatrix {
    pub const IDENTITY: FlopMatrix = FlopMatrix([[1, 0], [0, 1]]);

    pub fn compose(&self, other: &FlopMatrix) -> FlopMatrix {
        let (m, n) = (&self.0, &other.0);
        let mut out = [[0; 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = m[i][0] * n[0][j] + m[i][1] * n[1][j];
            }
        }
        FlopMatrix(out)
    }

    /// Image of `k K_X + h H`, as `(k', h')`.
    pub fn apply(&self, k: i64, h: i64) -> (i64, i64) {
        let m = &self.0;
        (m[0][0] * k + m[0][1] * h, m[1][0] * k + m[1][1] * h)
    }
}

impl fmt::Display for FlopMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let m = &self.0;
        write!(f, "[[{}, {}], [{}, {}]]", m[0][0], m[0][1], m[1][0], m[1][1])
    }
}

impl BlowupLattice {
    pub fn new(ambient: AmbientSpace, genus: u32, degree: u32) -> Self {
        BlowupLattice { ambient, genus, degree }
    }

    fn r(&self) -> i64 {
        self.ambient.index()
    }

    /// `[H^3, H^2 E, H E^2, E^3]`.
    pub fn basis_form(&self) -> [i64; 4] {
        let d = self.degree as i64;
        let g = self.genus as i64;
        [self.ambient.hyperplane_cube(), 0, -d, -self.r() * d + 2 - 2 * g]
    }

    pub fn canonical(&self) -> DivisorClass {
        DivisorClass::from_integers(-self.r(), 1)
    }

    pub fn anticanonical(&self) -> DivisorClass {
        -&self.canonical()
    }

    /// Trilinear extension of the basis form.
    pub fn intersection_number(&self, d1: &DivisorClass, d2: &DivisorClass, d3: &DivisorClass) -> Rational {
        let form = self.basis_form();
        let coords = |d: &DivisorClass| [d.h.clone(), d.e.clone()];
        let (c1, c2, c3) = (coords(d1), coords(d2), coords(d3));
        let mut total = Rational::zero();
        for (i, x) in c1.iter().enumerate() {
            for (j, y) in c2.iter().enumerate() {
                for (k, z) in c3.iter().enumerate() {
                    let coefficient = form[i + j + k];
                    if coefficient != 0 {
                        total += x * y * z * Rational::from_integer(coefficient.into());
                    }
                }
            }
        }
        total
    }

    pub fn anticanonical_cube(&self) -> i64 {
        anticanonical_cube(self.ambient, self.genus, self.degree)
    }

    /// Flop action `[[1, a], [0, -1]]` with `a = -(r^2 H^3 - d)`.
    ///
    /// Only defined when `(-K_X)^3 = 2`, the setting in which the flop over
    /// the double solid exists.
    pub fn flop_action(&self) -> Result<FlopMatrix> {
        let cube = self.anticanonical_cube();
        if cube != 2 {
            return Err(Error::NotDegreeTwo { cube });
        }
        let r = self.r();
        let a = -(r * r * self.ambient.hyperplane_cube() - self.degree as i64);
        Ok(FlopMatrix([[1, a], [0, -1]]))
    }

    /// `phi^* H` expanded in the basis `(H, E)`.
    pub fn flop_image_of_hyperplane(&self) -> Result<DivisorClass> {
        let (k, h) = self.flop_action()?.apply(0, 1);
        // k K_X + h H = (h - r k) H + k E
        Ok(DivisorClass::from_integers(h - self.r() * k, k))
    }

    /// `h^0(X, -n K_X) = n(n+1)(2n+1)/12 (-K_X)^3 + 2n + 1`.
    pub fn rr_dimension(&self, n: u32) -> Result<i128> {
        rr_value(self.anticanonical_cube(), n)
    }

    /// Builds the generator and relation degrees of the anticanonical ring
    /// degree by degree, comparing `h^0(-nK)` with the degree-`n` part of
    /// the free algebra on the generators found so far, modulo the relations
    /// found so far.
    ///
    /// The ideal dimension is `sum over relations of count(n - deg)`, which
    /// is exact for at most one relation. Further relations are reported but
    /// the free dimensions after them are not meaningful.
    pub fn graded_ring_profile(&self, n_max: u32) -> Result<RingProfile> {
        if n_max < MIN_PROFILE_DEGREE {
            return Err(Error::ProfileTooShort {
                min: MIN_PROFILE_DEGREE,
                got: n_max,
            });
        }
        let mut generators = DegreeMultiset::default();
        let mut relations = DegreeMultiset::default();
        let mut rows = Vec::with_capacity(n_max as usize);
        for n in 1..=n_max {
            let rr = self.rr_dimension(n)?;
            let counts = generators.monomial_counts(n)?;
            let mut free = counts[n as usize] as i128;
            for &(deg, mult) in &relations.0 {
                if deg <= n {
                    let shifted = counts[(n - deg) as usize] as i128;
                    free = shifted
                        .checked_mul(mult as i128)
                        .and_then(|s| free.checked_sub(s))
                        .ok_or(Error::Overflow("relation ideal dimension"))?;
                }
            }
            let surplus = rr - free;
            let (gens, rels) = if surplus >= 0 {
                (surplus as u64, 0)
            } else {
                (0, surplus.unsigned_abs() as u64)
            };
            generators.push(n, gens);
            relations.push(n, rels);
            rows.push(ProfileRow {
                n,
                rr,
                free,
                gens,
                rels,
            });
        }
        Ok(RingProfile {
            rows,
            generator_degrees: generators.0,
            relation_degrees: relations.0,
        })
    }

    /// True iff the profile up to degree 12 has generators in degrees
    /// `(1,1,1,1,3)` and a single relation in degree 6, i.e. the ring looks
    /// like `C[x_0..x_3, t]/(t^2 - f_6)`.
    pub fn sextic_double_solid_certificate(&self) -> bool {
        match self.graded_ring_profile(CERTIFICATE_DEGREE) {
            Ok(profile) => profile.generator_degrees == [(1, 4), (3, 1)] && profile.relation_degrees == [(6, 1)],
            Err(_) => false,
        }
    }
}

const MIN_PROFILE_DEGREE: u32 = 7;
const CERTIFICATE_DEGREE: u32 = 12;

/// `(-K_X)^3 = r^3 H^3 - 2 r d + 2g - 2`.
pub fn anticanonical_cube(ambient: AmbientSpace, genus: u32, degree: u32) -> i64 {
    let r = ambient.index();
    r * r * r * ambient.hyperplane_cube() - 2 * r * degree as i64 + 2 * genus as i64 - 2
}

/// Degree of the involution `chi_C` with respect to `H`:
/// `(r^2 H^3 - d) r - 1`. Only defined for the admissible pairs.
pub fn link_degree(ambient: AmbientSpace, genus: u32, degree: u32) -> Result<i64> {
    if !ambient.is_admissible(genus, degree) {
        return Err(ambient.inadmissible(genus, degree));
    }
    let r = ambient.index();
    Ok((r * r * ambient.hyperplane_cube() - degree as i64) * r - 1)
}

fn rr_value(cube: i64, n: u32) -> Result<i128> {
    let n = n as i128;
    let numerator = n * (n + 1) * (2 * n + 1) * cube as i128;
    if numerator % 12 != 0 {
        return Err(Error::NonIntegralRiemannRoch { n: n as u32, numerator });
    }
    Ok(numerator / 12 + 2 * n + 1)
}

/// Number of monomials of weighted degree exactly `n` in variables of the
/// given positive degrees.
pub fn weighted_monomial_count(variable_degrees: &[u32], n: u32) -> Result<u128> {
    let mut set = DegreeMultiset::default();
    for &d in variable_degrees {
        set.push(d, 1);
    }
    Ok(set.monomial_counts(n)?[n as usize])
}

/// Sorted `(degree, multiplicity)` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct DegreeMultiset(Vec<(u32, u64)>);

impl DegreeMultiset {
    fn push(&mut self, degree: u32, mult: u64) {
        if mult == 0 {
            return;
        }
        match self.0.binary_search_by_key(&degree, |&(d, _)| d) {
            Ok(i) => self.0[i].1 += mult,
            Err(i) => self.0.insert(i, (degree, mult)),
        }
    }

    /// Coefficients `0..=n_max` of `prod_d (1 - t^d)^{-m_d}`.
    fn monomial_counts(&self, n_max: u32) -> Result<Vec<u128>> {
        let len = n_max as usize + 1;
        let mut series = vec![0u128; len];
        series[0] = 1;
        for &(deg, mult) in &self.0 {
            assert!(deg > 0, "variable degrees must be positive");
            let deg = deg as usize;
            // (1 - t^deg)^{-mult} = sum_k C(mult + k - 1, k) t^{deg k}
            let mut factor = vec![0u128; len];
            let mut binom: u128 = 1;
            let mut k = 0usize;
            loop {
                factor[k * deg] = binom;
                k += 1;
                if k * deg >= len {
                    break;
                }
                binom = binom
                    .checked_mul(mult as u128 + k as u128 - 1)
                    .ok_or(Error::Overflow("monomial count"))?
                    / k as u128;
            }
            series = convolve(&series, &factor)?;
        }
        Ok(series)
    }
}

fn convolve(a: &[u128], b: &[u128]) -> Result<Vec<u128>> {
    let mut out = vec![0u128; a.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate().take(a.len() - i) {
            if y == 0 {
                continue;
            }
            out[i + j] = x
                .checked_mul(y)
                .and_then(|p| out[i + j].checked_add(p))
                .ok_or(Error::Overflow("monomial count"))?;
        }
    }
    Ok(out)
}

/// One degree of [`BlowupLattice::graded_ring_profile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileRow {
    pub n: u32,
    /// `h^0(X, -n K_X)`.
    pub rr: i128,
    /// Degree-`n` part of the algebra generated so far.
    pub free: i128,
    pub gens: u64,
    pub rels: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RingProfile {
    pub rows: Vec<ProfileRow>,
    /// `(degree, multiplicity)`, sorted by degree.
    pub generator_degrees: Vec<(u32, u64)>,
    pub relation_degrees: Vec<(u32, u64)>,
}

impl RingProfile {
    pub fn row(&self, n: u32) -> Option<&ProfileRow> {
        self.rows.iter().find(|r| r.n == n)
    }

    /// Degrees with repetition, e.g. `[1, 1, 1, 1, 3]`.
    pub fn generator_list(&self) -> Vec<u32> {
        expand(&self.generator_degrees)
    }

    pub fn relation_list(&self) -> Vec<u32> {
        expand(&self.relation_degrees)
    }
}

fn expand(set: &[(u32, u64)]) -> Vec<u32> {
    set.iter()
        .flat_map(|&(d, m)| std::iter::repeat_n(d, m as usize))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use AmbientSpace::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    #[test]
    fn ambient_data() {
        assert_eq!(
            (
                ProjectiveThreeSpace.index(),
                ProjectiveThreeSpace.hyperplane_cube(),
                ProjectiveThreeSpace.aut_dimension()
            ),
            (4, 1, 15)
        );
        assert_eq!(
            (
                CubicThreefold.index(),
                CubicThreefold.hyperplane_cube(),
                CubicThreefold.aut_dimension()
            ),
            (2, 3, 0)
        );
        assert_eq!("P3".parse::<AmbientSpace>().unwrap(), ProjectiveThreeSpace);
        assert!("p4".parse::<AmbientSpace>().is_err());
    }

    #[test]
    fn intersection_examples() {
        let l = BlowupLattice::new(ProjectiveThreeSpace, 2, 8);
        let k = l.canonical();
        let h = DivisorClass::hyperplane();
        let e = DivisorClass::exceptional();
        assert_eq!(l.intersection_number(&k, &k, &h), q(8));
        assert_eq!(l.intersection_number(&h, &h, &e), q(0));
        let m = l.anticanonical();
        assert_eq!(l.intersection_number(&m, &m, &m), q(2));
    }

    #[test]
    fn canonical_squared_hyperplane_formula() {
        for ambient in AmbientSpace::ALL {
            for d in 1..15 {
                let l = BlowupLattice::new(ambient, 3, d);
                let k = l.canonical();
                let r = ambient.index();
                assert_eq!(
                    l.intersection_number(&k, &k, &DivisorClass::hyperplane()),
                    q(r * r * ambient.hyperplane_cube() - d as i64)
                );
            }
        }
    }

    #[test]
    fn cube_examples() {
        assert_eq!(anticanonical_cube(ProjectiveThreeSpace, 14, 11), 2);
        assert_eq!(anticanonical_cube(CubicThreefold, 0, 5), 2);
        // the empty curve has chi(O) = 0, i.e. g = 1, and leaves (-K_P3)^3
        assert_eq!(anticanonical_cube(ProjectiveThreeSpace, 1, 0), 64);
        assert_eq!(anticanonical_cube(ProjectiveThreeSpace, 0, 0), 62);
        assert_eq!(anticanonical_cube(ProjectiveThreeSpace, 0, 1), 54);
    }

    #[test]
    fn flop_examples() {
        let m = BlowupLattice::new(ProjectiveThreeSpace, 14, 11).flop_action().unwrap();
        assert_eq!(m, FlopMatrix([[1, -5], [0, -1]]));
        assert_eq!(m.compose(&m), FlopMatrix::IDENTITY);
        let m = BlowupLattice::new(CubicThreefold, 2, 6).flop_action().unwrap();
        assert_eq!(m, FlopMatrix([[1, -6], [0, -1]]));
        assert_eq!(m.compose(&m), FlopMatrix::IDENTITY);
        assert_eq!(m.apply(1, 0), (1, 0));
        assert_eq!(
            BlowupLattice::new(ProjectiveThreeSpace, 0, 1).flop_action(),
            Err(Error::NotDegreeTwo { cube: 54 })
        );
        assert!(Error::NotDegreeTwo { cube: 54 }
            .to_string()
            .starts_with("not an anticanonical-degree-2 blowup"));
    }

    #[test]
    fn flop_image_has_link_degree() {
        for ambient in AmbientSpace::ALL {
            for &(g, d) in ambient.admissible_pairs() {
                let l = BlowupLattice::new(ambient, g, d);
                let image = l.flop_image_of_hyperplane().unwrap();
                assert_eq!(image.h, q(link_degree(ambient, g, d).unwrap()));
                let r = ambient.index();
                assert_eq!(image.e, q(-(r * r * ambient.hyperplane_cube() - d as i64)));
            }
        }
    }

    #[test]
    fn link_degree_examples() {
        assert_eq!(link_degree(ProjectiveThreeSpace, 2, 8).unwrap(), 31);
        assert_eq!(link_degree(ProjectiveThreeSpace, 14, 11).unwrap(), 19);
        assert_eq!(link_degree(CubicThreefold, 2, 6).unwrap(), 11);
        let err = link_degree(ProjectiveThreeSpace, 3, 7).unwrap_err();
        assert!(err.to_string().contains("(2,8), (6,9), (10,10), (14,11)"), "{err}");
    }

    #[test]
    fn rr_examples() {
        let l = BlowupLattice::new(ProjectiveThreeSpace, 10, 10);
        assert_eq!(l.rr_dimension(1).unwrap(), 4);
        assert_eq!(l.rr_dimension(2).unwrap(), 10);
        // 3*4*7/6 + 7
        assert_eq!(l.rr_dimension(3).unwrap(), 21);
        assert_eq!(l.rr_dimension(6).unwrap(), 104);
        // r^3 H^3 - 2rd + 2g - 2 is always even, so only a raw odd cube
        // can make the value non-integral
        assert_eq!(
            rr_value(3, 1),
            Err(Error::NonIntegralRiemannRoch { n: 1, numerator: 18 })
        );
        assert_eq!(rr_value(54, 1).unwrap(), 30);
    }

    #[test]
    fn monomial_count_examples() {
        assert_eq!(weighted_monomial_count(&[1, 1, 1, 1], 2).unwrap(), 10);
        assert_eq!(weighted_monomial_count(&[1, 1, 1, 1, 3], 6).unwrap(), 105);
        assert_eq!(weighted_monomial_count(&[1, 1, 1, 1, 3], 0).unwrap(), 1);
        assert_eq!(weighted_monomial_count(&[], 0).unwrap(), 1);
        assert_eq!(weighted_monomial_count(&[2], 3).unwrap(), 0);
    }

    #[test]
    fn profile_rows() {
        let l = BlowupLattice::new(ProjectiveThreeSpace, 10, 10);
        let p = l.graded_ring_profile(12).unwrap();
        let row = |n| *p.row(n).unwrap();
        assert_eq!(
            row(2),
            ProfileRow {
                n: 2,
                rr: 10,
                free: 10,
                gens: 0,
                rels: 0
            }
        );
        assert_eq!(
            row(3),
            ProfileRow {
                n: 3,
                rr: 21,
                free: 20,
                gens: 1,
                rels: 0
            }
        );
        assert_eq!(
            row(6),
            ProfileRow {
                n: 6,
                rr: 104,
                free: 105,
                gens: 0,
                rels: 1
            }
        );
        assert_eq!(
            row(7),
            ProfileRow {
                n: 7,
                rr: 155,
                free: 155,
                gens: 0,
                rels: 0
            }
        );
        assert_eq!(p.generator_list(), vec![1, 1, 1, 1, 3]);
        assert_eq!(p.relation_list(), vec![6]);
        assert_eq!(l.graded_ring_profile(6), Err(Error::ProfileTooShort { min: 7, got: 6 }));
    }

    #[test]
    fn certificate_examples() {
        assert!(BlowupLattice::new(ProjectiveThreeSpace, 10, 10).sextic_double_solid_certificate());
        assert!(BlowupLattice::new(CubicThreefold, 0, 5).sextic_double_solid_certificate());
        assert!(!BlowupLattice::new(ProjectiveThreeSpace, 0, 1).sextic_double_solid_certificate());
    }
}
