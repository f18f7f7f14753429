//! Numeric reproduction sweep behind `bircalc verify`.
//!
//! Each check compares a computed value with a reference value and records
//! both. Checks are independent and run on worker threads.

use std::fmt::Display;
use std::thread;

use num_integer::Integer;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::curve_catalog::{Catalog, CurveClass};
use crate::graded_poly::GradedPolynomial;
use crate::picard_lattice::{anticanonical_cube, link_degree, AmbientSpace, BlowupLattice};
use crate::weighted_blowup::{flopped_normal_bundles, WeightedBlowup};
use crate::word_engine::{IndexPermutation, Letter, NonInnerCertificate, Word, WordEngine};
use crate::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub check: String,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
}

impl Check {
    fn compare<T: PartialEq + Display>(name: &str, expected: T, actual: T) -> Check {
        Check {
            check: name.to_string(),
            pass: expected == actual,
            expected: expected.to_string(),
            actual: actual.to_string(),
        }
    }

    fn holds(name: &str, description: &str, ok: bool) -> Check {
        Check {
            check: name.to_string(),
            expected: description.to_string(),
            actual: if ok {
                description.to_string()
            } else {
                format!("violated: {description}")
            },
            pass: ok,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn all_pairs() -> Vec<(AmbientSpace, u32, u32)> {
    AmbientSpace::ALL
        .iter()
        .flat_map(|&a| a.admissible_pairs().iter().map(move |&(g, d)| (a, g, d)))
        .collect()
}

fn joined<T: Display>(v: impl IntoIterator<Item = T>) -> String {
    v.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn degree_checks() -> Vec<Check> {
    let actual = joined(
        all_pairs()
            .into_iter()
            .map(|(a, g, d)| link_degree(a, g, d).map_or_else(|e| e.to_string(), |v| v.to_string())),
    );
    let cubes = joined(all_pairs().into_iter().map(|(a, g, d)| anticanonical_cube(a, g, d)));
    let mut lattice_agrees = true;
    for ambient in AmbientSpace::ALL {
        for g in 0..=20 {
            for d in 1..=15 {
                let l = BlowupLattice::new(ambient, g, d);
                let m = l.anticanonical();
                lattice_agrees &=
                    l.intersection_number(&m, &m, &m) == Rational::from_integer(l.anticanonical_cube().into());
            }
        }
    }
    let flops_ok = all_pairs().into_iter().all(|(a, g, d)| {
        let l = BlowupLattice::new(a, g, d);
        match (l.flop_action(), l.flop_image_of_hyperplane()) {
            (Ok(m), Ok(image)) => {
                m.compose(&m) == crate::FlopMatrix::IDENTITY
                    && image.h == Rational::from_integer(link_degree(a, g, d).unwrap().into())
            }
            _ => false,
        }
    });
    vec![
        Check::compare("degree table (6 values)", "31 27 23 19 13 11".to_string(), actual),
        Check::compare("(-K_X)^3 = 2 for the six pairs", "2 2 2 2 2 2".to_string(), cubes),
        Check::holds(
            "(-K_X)^3 closed form = trilinear form",
            "equal for g in 0..=20, d in 1..=15, both ambients",
            lattice_agrees,
        ),
        Check::holds(
            "flop action is an involution carrying H to deg(chi_C) H + ...",
            "M^2 = id and H-coefficient = link degree",
            flops_ok,
        ),
    ]
}

fn ring_checks() -> Vec<Check> {
    let l = BlowupLattice::new(AmbientSpace::ProjectiveThreeSpace, 10, 10);
    let rr = |n| l.rr_dimension(n).map_or_else(|e| e.to_string(), |v| v.to_string());
    let mut out = vec![
        Check::compare("h0(−K)=4", "4".to_string(), rr(1)),
        Check::compare("h0(−2K)=10", "10".to_string(), rr(2)),
        Check::compare("h0(−3K)=15", "15".to_string(), rr(3)),
        Check::compare("h0(−6K)=104", "104".to_string(), rr(6)),
    ];
    let shapes = all_pairs()
        .into_iter()
        .map(|(a, g, d)| {
            let profile = BlowupLattice::new(a, g, d).graded_ring_profile(12);
            match profile {
                Ok(p) => format!("{:?}/{:?}", p.generator_list(), p.relation_list()),
                Err(e) => e.to_string(),
            }
        })
        .collect::<Vec<_>>();
    out.push(Check::compare(
        "ring profile to n=12: generators (1,1,1,1,3), one relation in degree 6",
        vec!["[1, 1, 1, 1, 3]/[6]".to_string(); 6].join("; "),
        shapes.join("; "),
    ));
    let certs = joined(
        all_pairs()
            .into_iter()
            .map(|(a, g, d)| BlowupLattice::new(a, g, d).sextic_double_solid_certificate()),
    );
    out.push(Check::compare(
        "sextic double solid certificate (six pairs)",
        "true true true true true true".to_string(),
        certs,
    ));
    out.push(Check::compare(
        "sextic double solid certificate (p3, g=0, d=1)",
        false,
        BlowupLattice::new(AmbientSpace::ProjectiveThreeSpace, 0, 1).sextic_double_solid_certificate(),
    ));
    out
}

fn blowup_checks() -> Vec<Check> {
    let mut disc_ok = true;
    let mut defect_ok = true;
    for a in 1..=12u64 {
        for b in a..=12u64 {
            if a.gcd(&b) != 1 {
                continue;
            }
            let bl = WeightedBlowup::new(a, b).unwrap();
            disc_ok &= bl.discrepancy() == a + b && bl.strict_positivity_check().holds;
            for vh in 1..=3 {
                for n in 1..=3 {
                    defect_ok &= bl.anticanonical_defect(vh, n) < Rational::from_integer(0.into());
                }
            }
        }
    }
    let bl = WeightedBlowup::new(2, 3).unwrap();
    let w = bl.weights();
    let exc = bl
        .exceptional_intersection(
            &GradedPolynomial::parse("x2", &w).unwrap(),
            &GradedPolynomial::parse("x3", &w).unwrap(),
        )
        .unwrap();
    vec![
        Check::holds("discrepancy = a + b", "all coprime 1 <= a <= b <= 12", disc_ok),
        Check::compare(
            "E.C for (1,2,3), f1 = x2, f2 = x3",
            Rational::from_integer(1.into()),
            exc,
        ),
        Check::holds(
            "(-K_W).Gamma_W < 0",
            "all coprime 1 <= a <= b <= 12, v_H, n in 1..=3",
            defect_ok,
        ),
        Check::compare(
            "flopped curve normal bundles",
            "(-1, -1) (0, -2)".to_string(),
            joined(flopped_normal_bundles().into_iter().map(|(a, b)| format!("({a}, {b})"))),
        ),
    ]
}

fn valuation_check() -> Check {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let weight_sets: [&[u32]; 4] = [&[1, 1, 1], &[1, 1, 2], &[1, 2, 3], &[1, 3, 5]];
    let mut agree = 0;
    let total = 200;
    for _ in 0..total {
        let w = weight_sets[rng.gen_range(0..weight_sets.len())];
        let terms = (0..rng.gen_range(1..=8)).map(|_| {
            (
                (0..3).map(|_| rng.gen_range(0..=6)).collect::<Vec<u32>>(),
                Rational::from_integer(rng.gen_range(-9i64..=9).into()),
            )
        });
        let f = GradedPolynomial::from_terms(w, terms).unwrap();
        if f.is_zero() {
            agree += 1;
            continue;
        }
        if f.weighted_valuation().ok() == f.chart_pullback().ok().map(|p| p.power) {
            agree += 1;
        }
    }
    Check::compare(
        "weighted valuation = chart pullback exponent",
        format!("{total}/{total}"),
        format!("{agree}/{total}"),
    )
}

fn curve_checks() -> Vec<Check> {
    let curves: Vec<CurveClass> = all_pairs()
        .into_iter()
        .map(|(a, g, d)| CurveClass::new(a, g, d, format!("{a}-{g}-{d}")))
        .collect();
    let bounds = joined(curves.iter().map(|c| match c.hilbert_dim_bounds() {
        Ok(b) => format!("({},{},{})", b.lower, b.upper, b.exceeds_aut),
        Err(e) => e.to_string(),
    }));
    vec![
        Check::compare(
            "2g - 2 + K.C (six pairs)",
            "-30 -26 -22 -18 -12 -10".to_string(),
            joined(curves.iter().map(CurveClass::serre_dual_degree)),
        ),
        Check::compare(
            "Hilbert scheme dimension bounds",
            "(32,33,true) (36,37,true) (40,41,true) (44,45,true) (10,11,true) (12,13,true)".to_string(),
            bounds,
        ),
    ]
}

fn word_checks() -> Vec<Check> {
    let mut rng = StdRng::seed_from_u64(0xc4e1);
    let labels = ["a", "b", "c", "d"];
    let symbols = ["g", "h", "k", "m"];
    let engine = WordEngine::with_labels(labels);
    let random_word = |rng: &mut StdRng| -> Word {
        (0..rng.gen_range(0..=20))
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Letter::chi(labels[rng.gen_range(0..labels.len())])
                } else {
                    let e = if rng.gen_bool(0.5) { 1 } else { -1 } * rng.gen_range(1..=3);
                    Letter::g(symbols[rng.gen_range(0..symbols.len())], e)
                }
            })
            .collect()
    };
    let mut ok = true;
    for _ in 0..200 {
        let w1 = random_word(&mut rng);
        let w2 = random_word(&mut rng);
        let n1 = engine.normalize(&w1).unwrap();
        ok &= engine.normalize(&n1).unwrap() == n1 && n1.is_reduced();
        let lhs = engine.psi(&engine.multiply(&w1, &w2).unwrap()).unwrap();
        let rhs = engine
            .multiply(&engine.psi(&w1).unwrap(), &engine.psi(&w2).unwrap())
            .unwrap();
        ok &= lhs == rhs;
        let (n, s) = engine.kernel_decompose(&w1).unwrap();
        ok &= engine.psi(&n).unwrap().is_empty() && engine.multiply(&n, &s).unwrap() == n1;
        let v = engine.psi(&w1).unwrap();
        ok &= engine.psi(&engine.section(&v).unwrap()).unwrap() == v;
    }
    let rho: IndexPermutation = "(a b)(c d)".parse().unwrap();
    let mut catalog = Catalog::new();
    catalog
        .insert(CurveClass::new(AmbientSpace::ProjectiveThreeSpace, 2, 8, "a"), true)
        .unwrap();
    catalog
        .insert(CurveClass::new(AmbientSpace::ProjectiveThreeSpace, 6, 9, "b"), true)
        .unwrap();
    let cert = WordEngine::with_catalog(&catalog)
        .non_inner_certificate(&"(a b)".parse().unwrap(), &catalog)
        .unwrap();
    let cert_ok = matches!(
        cert,
        NonInnerCertificate::Certified {
            conjugate: false,
            field_automorphism_obstruction: true,
            ..
        }
    );
    vec![
        Check::holds(
            "word engine: normal form, psi homomorphism, section, decomposition",
            "200 random word pairs",
            ok,
        ),
        Check::compare("order of phi((a b)(c d))", 2, engine.automorphism_order(&rho)),
        Check::compare(
            "chi_a not conjugate to chi_b",
            false,
            engine
                .conjugate_in_free_product(&"chi:a".parse().unwrap(), &"chi:b".parse().unwrap())
                .unwrap(),
        ),
        Check::holds(
            "phi((a b)) is not inner, genera differ",
            "certificate with field automorphism obstruction",
            cert_ok,
        ),
    ]
}

/// Runs every check. Groups run concurrently; order of the result is fixed.
pub fn run() -> Report {
    let groups: Vec<fn() -> Vec<Check>> = vec![
        degree_checks,
        ring_checks,
        blowup_checks,
        || vec![valuation_check()],
        curve_checks,
        word_checks,
    ];
    let checks = thread::scope(|s| {
        let handles: Vec<_> = groups.into_iter().map(|g| s.spawn(g)).collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verify check panicked"))
            .collect()
    });
    Report { checks }
}
