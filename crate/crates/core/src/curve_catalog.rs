//! Admissible curve classes, their normal-bundle numerics, and catalogs of
//! labeled classes used as free-product indices.
//!
//! Catalog files hold one curve per line:
//!
//! ```text
//! # ambient genus degree label [automorphism_free]
//! p3 2 8 c-alpha automorphism_free
//! cubic 0 5 twisted-quintic
//! ```

use std::fmt;
use std::io::{BufRead, Write};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::picard_lattice::AmbientSpace;

const AUTOMORPHISM_FREE: &str = "automorphism_free";

/// The six admissible `(g, d)` pairs for `ambient`.
pub fn admissible_pairs(ambient: AmbientSpace) -> Vec<(u32, u32)> {
    ambient.admissible_pairs().to_vec()
}

/// A labeled curve class `C` in `Y`.
///
/// As a free-product index a class is identified by all four fields; within a
/// catalog the label alone is unique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CurveClass {
    pub ambient: AmbientSpace,
    pub genus: u32,
    pub degree: u32,
    pub label: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HilbertBounds {
    pub lower: i64,
    pub upper: i64,
    pub exceeds_aut: bool,
}

impl CurveClass {
    pub fn new(ambient: AmbientSpace, genus: u32, degree: u32, label: impl Into<String>) -> Self {
        CurveClass {
            ambient,
            genus,
            degree,
            label: label.into(),
        }
    }

    /// `-K_Y . C = r d`.
    pub fn anticanonical_degree(&self) -> i64 {
        self.ambient.index() * self.degree as i64
    }

    /// `chi(N_{C/Y}) = deg N + 2(1 - g)`, with `deg N = r d + 2g - 2`.
    pub fn normal_bundle_euler(&self) -> i64 {
        let g = self.genus as i64;
        let deg_normal = self.anticanonical_degree() + 2 * g - 2;
        deg_normal + 2 * (1 - g)
    }

    /// `2g - 2 + K_Y . C`; negative values force `h^1(N_{C/Y}) = 0`.
    pub fn serre_dual_degree(&self) -> i64 {
        2 * self.genus as i64 - 2 - self.anticanonical_degree()
    }

    /// `r d <= dim S <= r d + 1`, and whether the lower bound exceeds
    /// `dim Aut(Y)`.
    pub fn hilbert_dim_bounds(&self) -> Result<HilbertBounds> {
        if !self.ambient.is_admissible(self.genus, self.degree) {
            return Err(self.ambient.inadmissible(self.genus, self.degree));
        }
        let lower = self.anticanonical_degree();
        Ok(HilbertBounds {
            lower,
            upper: lower + 1,
            exceeds_aut: lower > self.ambient.aut_dimension(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub curve: CurveClass,
    /// Asserted by the user: no non-trivial automorphism of `Y` fixes the
    /// curve.
    pub automorphism_free: bool,
}

/// An ordered set of labeled curve classes.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn new() -> Self {
        Self::default()
    }

    /// Rejects duplicate labels and inadmissible pairs. `line` is only used
    /// for error messages.
    fn insert_at(&mut self, entry: CatalogEntry, line: usize) -> Result<()> {
        let c = &entry.curve;
        if self.get(&c.label).is_some() {
            return Err(Error::DuplicateLabel {
                line,
                label: c.label.clone(),
            });
        }
        if !c.ambient.is_admissible(c.genus, c.degree) {
            return Err(Error::CatalogInadmissible {
                line,
                space: c.ambient.name(),
                genus: c.genus,
                degree: c.degree,
            });
        }
        self.entries.push(entry);
        Ok(())
    }

    pub fn insert(&mut self, curve: CurveClass, automorphism_free: bool) -> Result<()> {
        let line = self.entries.len() + 1;
        if !is_valid_label(&curve.label) {
            return Err(Error::CatalogParse {
                line,
                msg: format!("invalid label {:?}", curve.label),
            });
        }
        self.insert_at(
            CatalogEntry {
                curve,
                automorphism_free,
            },
            line,
        )
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, label: &str) -> Option<&CatalogEntry> {
        self.entries.iter().find(|e| e.curve.label == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.get(label).is_some()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|e| e.curve.label.as_str())
    }

    pub fn load<R: BufRead>(reader: R) -> Result<Catalog> {
        let mut catalog = Catalog::new();
        for (idx, line) in reader.lines().enumerate() {
            let line_no = idx + 1;
            let line = line?;
            let content = line.split('#').next().unwrap_or("");
            let fields: Vec<&str> = content.split_whitespace().collect();
            if fields.is_empty() {
                continue;
            }
            let parse_err = |msg: String| Error::CatalogParse { line: line_no, msg };
            if !(4..=5).contains(&fields.len()) {
                return Err(parse_err(format!(
                    "expected `ambient genus degree label [automorphism_free]`, got {} fields",
                    fields.len()
                )));
            }
            let ambient: AmbientSpace = fields[0].parse().map_err(|e: Error| parse_err(e.to_string()))?;
            let genus = fields[1]
                .parse()
                .map_err(|_| parse_err(format!("invalid genus {:?}", fields[1])))?;
            let degree = fields[2]
                .parse()
                .map_err(|_| parse_err(format!("invalid degree {:?}", fields[2])))?;
            let label = fields[3].to_string();
            if !is_valid_label(&label) {
                return Err(parse_err(format!("invalid label {label:?}")));
            }
            let automorphism_free = match fields.get(4) {
                None => false,
                Some(&AUTOMORPHISM_FREE) => true,
                Some(other) => {
                    return Err(parse_err(format!(
                        "unknown flag {other:?} (expected {AUTOMORPHISM_FREE})"
                    )))
                }
            };
            catalog.insert_at(
                CatalogEntry {
                    curve: CurveClass::new(ambient, genus, degree, label),
                    automorphism_free,
                },
                line_no,
            )?;
        }
        Ok(catalog)
    }

    pub fn load_path(path: &std::path::Path) -> Result<Catalog> {
        let file =
            std::fs::File::open(path).map_err(|e| Error::Io(format!("cannot open catalog {}: {e}", path.display())))?;
        Catalog::load(std::io::BufReader::new(file))
    }

    pub fn save<W: Write>(&self, mut writer: W) -> Result<()> {
        write!(writer, "{self}")?;
        Ok(())
    }
}

/// Labels appear in catalog files, word literals and cycle notation, so they
/// must be non-empty and free of whitespace, `#`, `(`, `)` and `:`.
pub fn is_valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '#' | '(' | ')' | ':'))
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            let c = &e.curve;
            write!(f, "{} {} {} {}", c.ambient, c.genus, c.degree, c.label)?;
            if e.automorphism_free {
                write!(f, " {AUTOMORPHISM_FREE}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
