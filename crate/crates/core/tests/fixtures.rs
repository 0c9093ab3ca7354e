//! Shipped fixture families checked against brute-force enumeration and
//! against each other.

use std::path::PathBuf;

use num_bigint::BigInt;

use embedlimits_core::analytics::{crosscap_euler_gap, euler_from_parts, EmbeddingDistribution};
use embedlimits_core::chain::oracle_verify;
use embedlimits_core::document::{FamilyDocument, GraphDocument};
use embedlimits_core::enumerator::{census, partial_distributions, MultiGraph, SurfaceKind, DEFAULT_BUDGET};
use embedlimits_core::poly::IntPolynomial;
use embedlimits_core::recurrence::{pathlike_matrix, recurrence_from_matrix, Family, FamilySpec};
use embedlimits_core::spectral::{analyze, DEFAULT_TOLERANCE};

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn document(file: &str) -> FamilyDocument {
    FamilyDocument::parse(&std::fs::read_to_string(root().join("families").join(file)).unwrap()).unwrap()
}

fn family(file: &str) -> Family {
    document(file).family(DEFAULT_BUDGET).unwrap()
}

fn graph(file: &str) -> GraphDocument {
    GraphDocument::parse(&std::fs::read_to_string(root().join("graphs").join(file)).unwrap()).unwrap()
}

fn all_families() -> Vec<(String, Family)> {
    let mut names: Vec<String> =
        std::fs::read_dir(root().join("families")).unwrap().map(|e| e.unwrap().file_name().into_string().unwrap()).collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), family(&n))).collect()
}

/// Grid and circular-ladder genus run one step past their enumerated seeds;
/// the Euler recurrences only to their seeds.
#[test]
fn chains_reproduce_enumeration() {
    for (file, n_max) in [
        ("claw-genus.json", 4),
        ("claw-euler.json", 3),
        ("grid-genus.json", 6),
        ("grid-euler.json", 3),
        ("ladders-genus.json", 8),
        ("ladders-euler.json", 5),
        ("ladder-euler-matrix.json", 3),
    ] {
        let doc = document(file);
        let rows = oracle_verify(&doc.family(DEFAULT_BUDGET).unwrap(), doc.chain().unwrap(), n_max, DEFAULT_BUDGET)
            .unwrap_or_else(|e| panic!("{file}: {e}"));
        assert_eq!(rows.len(), n_max);
    }
}

/// The grid Euler recurrence cannot be checked by enumeration beyond its
/// seeds in reasonable time; these are the checks that remain cheap at n = 6.
#[test]
fn grid_euler_beyond_its_seeds() {
    let genus = family("grid-genus.json").polynomial(6).unwrap();
    let euler = family("grid-euler.json").polynomial(6).unwrap();
    let g6 = document("grid-euler.json").chain().unwrap().build(6).unwrap();
    assert_eq!(euler.eval_at_one(), genus.eval_at_one() << g6.cycle_rank());
    assert_eq!(euler.coeff(0), genus.coeff(0));
    assert_eq!(euler.coeff(0), BigInt::from(2));
}

#[test]
fn matrix_and_recurrence_engines_agree() {
    for (file, fam) in all_families() {
        let Family::Transfer(spec) = &fam else { continue };
        let rec = recurrence_from_matrix(spec);
        assert_eq!(spec.totals(12), rec.polynomials(12), "{file}");
    }
}

#[test]
fn coefficients_stay_nonnegative() {
    for (file, fam) in all_families() {
        for (i, p) in fam.polynomials(50).iter().enumerate() {
            assert!(p.has_nonnegative_coeffs(), "{file}: P_{} has a negative coefficient", i + 1);
            assert!(!p.is_zero(), "{file}: P_{} vanishes", i + 1);
        }
    }
}

#[test]
fn totals_grow_by_d() {
    for (file, fam) in all_families() {
        let report = analyze(&fam, DEFAULT_TOLERANCE).unwrap();
        let d = report.d.to_integer();
        let totals: Vec<BigInt> = fam.polynomials(30).iter().map(IntPolynomial::eval_at_one).collect();
        for n in 12..30 {
            assert_eq!(&totals[n], &(&totals[n - 1] * &d), "{file}: n = {}", n + 1);
        }
    }
}

#[test]
fn variance_slope_nonnegative() {
    for (file, fam) in all_families() {
        let report = analyze(&fam, DEFAULT_TOLERANCE).unwrap();
        if let Some(v) = report.v {
            assert!(!num_traits::Signed::is_negative(&v), "{file}: v = {v}");
        }
    }
}

#[test]
fn moments_match_definitions_to_thirty() {
    for (file, fam) in all_families() {
        for (i, p) in fam.polynomials(30).iter().enumerate() {
            let d = EmbeddingDistribution::from_polynomial(p, fam.embedding_kind(), i + 1).unwrap();
            assert_eq!(d.moments(), d.moments_by_definition(), "{file}: n = {}", i + 1);
        }
    }
}

/// Copies of a graph with pendant roots `u`, `v`, chained `v_i = u_{i+1}`.
fn pendant_chain(h: &MultiGraph, u: usize, v: usize, n: usize) -> (MultiGraph, usize) {
    let (mut g, mut right) = (h.clone(), v);
    for _ in 1..n {
        let (next, map) = g.amalgamate(h, &[(right, u)]).unwrap();
        right = map[v];
        g = next;
    }
    (g, right)
}

#[test]
fn pathlike_partials_follow_the_amalgamation_rule() {
    let doc = graph("c3-pendants.json");
    let h = doc.graph().unwrap();
    let [u, v] = doc.roots.unwrap();
    for surface in [SurfaceKind::Genus, SurfaceKind::Euler] {
        let (d, s) = partial_distributions(&h, u, v, surface, DEFAULT_BUDGET).unwrap();
        assert!(!d.is_zero() && !s.is_zero());
        let m = pathlike_matrix(&d, &s).unwrap();
        let mut predicted = vec![d.clone(), s.clone()];
        for n in 2..=3 {
            predicted = m.apply(&predicted);
            let (g, right) = pendant_chain(&h, u, v, n);
            let (dn, sn) = partial_distributions(&g, u, right, surface, DEFAULT_BUDGET).unwrap();
            assert_eq!(vec![dn, sn], predicted, "{surface:?}, n = {n}");
        }
        let kind = match surface {
            SurfaceKind::Genus => embedlimits_core::analytics::EmbeddingKind::Genus,
            SurfaceKind::Euler => embedlimits_core::analytics::EmbeddingKind::EulerGenus,
        };
        let spec = FamilySpec::new("pendant C3", kind, m, vec![d, s], None).unwrap();
        let (g4, _) = pendant_chain(&h, u, v, 4);
        let c = census(&g4, DEFAULT_BUDGET).unwrap();
        let expected = if surface == SurfaceKind::Genus { c.genus } else { c.euler };
        assert_eq!(spec.total_polynomial(4).unwrap(), expected);
    }
}

#[test]
fn euler_identity_and_gap_on_fixture_graphs() {
    for name in ["c3", "bouquet2", "dipole3", "c3-pendants", "k4", "prism"] {
        let g = graph(&format!("{name}.json")).graph().unwrap();
        let c = census(&g, DEFAULT_BUDGET).unwrap();
        assert_eq!(euler_from_parts(&c.genus, &c.crosscap), c.euler, "{name}");
        let gap = crosscap_euler_gap(&c.genus, &c.crosscap).unwrap();
        assert!(gap.gap <= gap.bound, "{name}: {} > {}", gap.gap, gap.bound);
    }
}
