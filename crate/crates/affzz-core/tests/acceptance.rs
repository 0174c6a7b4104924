//! Release gate: one test per acceptance criterion. Each prints a single
//! `ACCEPTANCE <k> <name>: PASS` line (visible with `--nocapture`), so the
//! whole checklist can be read off one run of
//! `cargo test --test acceptance -- --nocapture`.

use std::collections::BTreeMap;

use affzz_core::braid::{random_word, BraidGen, BraidWord};
use affzz_core::complexes::{identify, Identification, ProjComplex};
use affzz_core::curves::TrigradedCurve;
use affzz_core::laurent::LaurentPoly;
use affzz_core::linrep::{aks_to_rh_substitution, LinRep, RepMatrix, RepTag};
use num_bigint::BigInt;
use rayon::prelude::*;

const NS: [usize; 4] = [3, 4, 5, 6];

fn pass(k: usize, name: &str, cases: usize) {
    println!("ACCEPTANCE {k} {name}: PASS ({cases} cases)");
}

fn word(n: usize, s: &str) -> BraidWord {
    BraidWord::parse(n, s).unwrap()
}

fn all_gens(n: usize) -> Vec<BraidGen> {
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 1..=n {
        out.push(BraidGen::Sigma(i));
        out.push(BraidGen::SigmaInv(i));
    }
    out.push(BraidGen::Rho);
    out.push(BraidGen::RhoInv);
    out
}

fn gen_tokens(n: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(2 * n + 2);
    for i in 1..=n {
        out.push(format!("s{i}"));
        out.push(format!("s{i}^-1"));
    }
    out.push("r".to_string());
    out.push("r^-1".to_string());
    out
}

fn words_up_to(n: usize, maxlen: usize) -> Vec<String> {
    let gens = gen_tokens(n);
    let mut out = vec![String::new()];
    let mut layer = vec![String::new()];
    for _ in 0..maxlen {
        let mut next = Vec::with_capacity(layer.len() * gens.len());
        for w in &layer {
            for g in &gens {
                next.push(if w.is_empty() { g.clone() } else { format!("{w} {g}") });
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

fn expect_rows(m: &RepMatrix, rows: &[Vec<String>], label: &str) {
    assert_eq!(m.size(), rows.len(), "{label}: size");
    for (r, row) in rows.iter().enumerate() {
        for (c, text) in row.iter().enumerate() {
            let want = LaurentPoly::parse(m.varset(), text).unwrap();
            assert_eq!(m.get(r, c), &want, "{label}: entry ({r},{c})");
        }
    }
}

fn identity_rows(size: usize) -> Vec<Vec<String>> {
    (0..size)
        .map(|r| (0..size).map(|c| if r == c { "1" } else { "0" }.to_string()).collect())
        .collect()
}

fn zero_rows(size: usize) -> Vec<Vec<String>> {
    vec![vec!["0".to_string(); size]; size]
}

fn h_sigma_rows(n: usize, i: usize) -> Vec<Vec<String>> {
    let mut rows = identity_rows(n + 1);
    rows[i][i] = "0".into();
    rows[i][i + 1] = "t".into();
    rows[i + 1][i] = "1".into();
    rows[i + 1][i + 1] = "1 - t".into();
    rows
}

fn h_rho_rows(n: usize) -> Vec<Vec<String>> {
    let mut rows = zero_rows(n + 1);
    rows[0][0] = "t".into();
    rows[1][0] = "1 - q".into();
    for j in 1..n {
        rows[j + 1][j] = "1".into();
    }
    rows[0][n] = format!("t^{} - t^{}", n, n + 1);
    rows[1][n] = format!("t^{} - t^{} + q*t^{}", n - 1, n, n);
    for j in 2..n {
        rows[j][n] = format!("t^{} - t^{}", n - j, n - j + 1);
    }
    rows[n][n] = "1 - t".into();
    rows
}

fn arc_sigma_rows(n: usize, i: usize, corner: &str, wrap: &str) -> Vec<Vec<String>> {
    let mut rows = identity_rows(n);
    if i == 1 {
        rows[0][0] = "-t".into();
        rows[0][1] = "t".into();
        rows[0][n - 1] = corner.into();
    } else if i < n {
        rows[i - 1][i - 2] = "1".into();
        rows[i - 1][i - 1] = "-t".into();
        rows[i - 1][i] = "t".into();
    } else {
        rows[n - 1][0] = wrap.into();
        rows[n - 1][n - 2] = "1".into();
        rows[n - 1][n - 1] = "-t".into();
    }
    rows
}

fn arc_rho_rows(n: usize, corner: &str) -> Vec<Vec<String>> {
    let mut rows = zero_rows(n);
    for k in 1..n {
        rows[k][k - 1] = "1".into();
    }
    rows[0][n - 1] = corner.into();
    rows
}

fn aks_rho_inv_rows(n: usize) -> Vec<Vec<String>> {
    let mut rows = zero_rows(n);
    for j in 1..n {
        rows[j - 1][j] = "1".into();
    }
    rows[n - 1][0] = "s".into();
    rows
}

#[test]
fn c1_generator_matrix_fidelity() {
    let mut cases = 0;
    for n in NS {
        let corner = format!("q*t^{n}");
        let h = LinRep::new(RepTag::H, n).unwrap();
        for i in 1..n {
            expect_rows(h.generator_matrix(BraidGen::Sigma(i)), &h_sigma_rows(n, i), "H sigma");
            cases += 1;
        }
        expect_rows(h.generator_matrix(BraidGen::Rho), &h_rho_rows(n), "H rho");
        cases += 1;

        let rh = LinRep::new(RepTag::RH, n).unwrap();
        for i in 1..n {
            expect_rows(
                rh.generator_matrix(BraidGen::Sigma(i)),
                &arc_sigma_rows(n, i, &corner, ""),
                "RH sigma",
            );
            cases += 1;
        }
        expect_rows(rh.generator_matrix(BraidGen::Rho), &arc_rho_rows(n, &corner), "RH rho");
        cases += 1;

        let aks = LinRep::new(RepTag::AKS, n).unwrap();
        for i in 1..=n {
            expect_rows(
                aks.generator_matrix(BraidGen::Sigma(i)),
                &arc_sigma_rows(n, i, "s^-1", "t*s"),
                "AKS sigma",
            );
            cases += 1;
        }
        expect_rows(aks.generator_matrix(BraidGen::Rho), &arc_rho_rows(n, "s^-1"), "AKS rho");
        expect_rows(aks.generator_matrix(BraidGen::RhoInv), &aks_rho_inv_rows(n), "AKS rho^-1");
        cases += 2;

        for rep in [&h, &rh, &aks] {
            let id = rep.word_matrix(&word(n, "")).unwrap();
            assert_eq!(rep.word_matrix(&word(n, "r r^-1")).unwrap(), id, "rho cancels");
            assert_eq!(rep.word_matrix(&word(n, "r^-1 r")).unwrap(), id, "rho cancels");
            cases += 2;
        }
    }
    pass(1, "generator-matrix-fidelity", cases);
}

fn relation_word_pairs(n: usize) -> Vec<(String, String)> {
    let mut pairs = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let adjacent = j == i % n + 1 || i == j % n + 1;
            if !adjacent {
                pairs.push((format!("s{i} s{j}"), format!("s{j} s{i}")));
            }
        }
        let j = i % n + 1;
        pairs.push((format!("s{i} s{j} s{i}"), format!("s{j} s{i} s{j}")));
        pairs.push((format!("r s{i} r^-1"), format!("s{j}")));
    }
    pairs
}

#[test]
fn c2_relation_suite() {
    let mut cases = 0;
    for n in NS {
        for tag in [RepTag::H, RepTag::RH, RepTag::AKS] {
            let rep = LinRep::new(tag, n).unwrap();
            for (wa, wb) in relation_word_pairs(n) {
                let ma = rep.word_matrix(&word(n, &wa)).unwrap();
                let mb = rep.word_matrix(&word(n, &wb)).unwrap();
                assert_eq!(ma, mb, "n={n} {tag:?}: {wa:?} vs {wb:?}");
                cases += 1;
            }
        }
    }
    pass(2, "relation-suite", cases);
}

#[test]
fn c3_specialization_identity() {
    let cases: Vec<(usize, u64)> = NS.iter().flat_map(|&n| (0..100).map(move |s| (n, s))).collect();
    cases.par_iter().for_each(|&(n, s)| {
        let w = random_word(n, s, 8);
        let aks = LinRep::new(RepTag::AKS, n).unwrap();
        let rh = LinRep::new(RepTag::RH, n).unwrap();
        let (target, subst) = aks_to_rh_substitution(n);
        let lhs = aks.word_matrix(&w).unwrap().specialize(&target, &subst).unwrap();
        let rhs = rh.word_matrix(&w).unwrap();
        assert_eq!(lhs, rhs, "n={n} seed={s} word {w}");
    });
    pass(3, "specialization-identity", cases.len());
}

#[test]
fn c4_inverses_and_center() {
    let mut cases = 0;
    for n in NS {
        for i in 1..=n {
            let p = ProjComplex::projective(n, i);
            for g in all_gens(n) {
                for letters in [vec![g, g.inverse()], vec![g.inverse(), g]] {
                    let w = BraidWord::new(n, letters).unwrap();
                    assert_eq!(p.apply_word(&w).minimize(), p, "n={n} {w} on P{i}");
                    cases += 1;
                }
            }
            let full = BraidWord::new(n, vec![BraidGen::Rho; n]).unwrap();
            let c = p.apply_word(&full);
            let mut expect = BTreeMap::new();
            expect.insert((0i64, i, 0i64, -1i64), 1usize);
            assert_eq!(c.summand_multiset(), expect, "n={n} full rotation on P{i}");
            assert_eq!(c.differential().count(), 0, "n={n} full rotation on P{i}");
            cases += 1;
        }
        let full = BraidWord::new(n, vec![BraidGen::Rho; n]).unwrap();
        assert!(
            matches!(identify(&full).unwrap(), Identification::CentralPower { power: 1 }),
            "n={n} identify(r^{n})"
        );
        cases += 1;
    }
    pass(4, "inverses-and-center", cases);
}

#[test]
fn c5_categorified_braid_relations() {
    let cases: Vec<(usize, usize, String, String)> = NS
        .iter()
        .flat_map(|&n| {
            relation_word_pairs(n)
                .into_iter()
                .flat_map(move |(wa, wb)| (1..=n).map(move |i| (n, i, wa.clone(), wb.clone())))
        })
        .collect();
    cases.par_iter().for_each(|(n, i, wa, wb)| {
        let lhs = ProjComplex::projective(*n, *i).apply_word(&word(*n, wa));
        let rhs = ProjComplex::projective(*n, *i).apply_word(&word(*n, wb));
        assert_eq!(
            lhs.summand_multiset(),
            rhs.summand_multiset(),
            "n={n} P{i}: {wa:?} vs {wb:?} summands"
        );
        assert_eq!(
            lhs.hom_table().unwrap(),
            rhs.hom_table().unwrap(),
            "n={n} P{i}: {wa:?} vs {wb:?} hom tables"
        );
    });
    pass(5, "categorified-braid-relations", cases.len());
}

#[test]
fn c6_decategorification_square() {
    let cases: Vec<(usize, u64)> =
        NS.iter().flat_map(|&n| (0..50).map(move |s| (n, 10_000 + s))).collect();
    cases.par_iter().for_each(|&(n, s)| {
        let w = random_word(n, s, 8);
        let rep = LinRep::new(RepTag::AKS, n).unwrap();
        let m = rep.word_matrix(&w).unwrap();
        for i in 1..=n {
            let classes = ProjComplex::projective(n, i).apply_word(&w).k_class();
            for v in 1..=n {
                assert_eq!(
                    &classes[v - 1],
                    m.get(v - 1, i - 1),
                    "n={n} seed={s} word {w}: class of P{i} at row {v}"
                );
            }
        }
    });
    pass(6, "decategorification-square", cases.len());
}

#[test]
fn c7_dual_pipeline_equality() {
    let mut cases: Vec<(usize, String, usize)> = Vec::new();
    for n in NS {
        let mut words = words_up_to(n, 3);
        for s in 0..20 {
            words.push(random_word(n, 20_000 + s, 6).to_string());
        }
        for w in words {
            for l in 1..=n {
                cases.push((n, w.clone(), l));
            }
        }
    }
    cases.par_iter().for_each(|(n, w, l)| {
        let bw = word(*n, w);
        let complex = ProjComplex::projective(*n, *l).apply_word(&bw);
        let curve = TrigradedCurve::basic_curve(*n, *l).unwrap().twist_word(&bw).unwrap();
        for k in 1..=*n {
            let hom = complex.hom_poincare(k).unwrap();
            let itri = curve.trigraded_intersection_with_basic(k).unwrap();
            assert_eq!(hom, itri, "n={n} word {w:?} l={l} k={k}");
            let geo = curve.geometric_intersection_with_basic(k).unwrap();
            assert_eq!(
                BigInt::from(geo.twice),
                itri.eval_at_one(),
                "n={n} word {w:?} l={l} k={k}: geometric number vs q=1"
            );
        }
    });
    pass(7, "dual-pipeline-equality", cases.len());
}

#[test]
fn c8_faithfulness_smoke() {
    let nontrivial = [
        "s1 s2^-1",
        "s1 s1",
        "r",
        "r s1 r^-1 s1^-1",
        "s1",
        "s2^-1",
        "s1 s2",
        "s3 s3 s3",
        "r s1",
        "s1 s2 s3 s4",
    ];
    let trivial = [
        "",
        "s1 s1^-1",
        "s2^-1 s2",
        "s1 s3 s1^-1 s3^-1",
        "s1 s2 s1 s2^-1 s1^-1 s2^-1",
        "s2 s3 s2 s3^-1 s2^-1 s3^-1",
        "r s1 r^-1 s2^-1",
        "r s3 r^-1 s4^-1",
        "r r^-1",
        "s4 s1 s4 s1^-1 s4^-1 s1^-1",
    ];
    for w in nontrivial {
        match identify(&word(4, w)).unwrap() {
            Identification::NonTrivial { .. } => {}
            other => panic!("expected {w:?} to act nontrivially, got {other:?}"),
        }
    }
    for w in trivial {
        match identify(&word(4, w)).unwrap() {
            Identification::Identity => {}
            other => panic!("expected {w:?} to act trivially, got {other:?}"),
        }
    }
    pass(8, "faithfulness-smoke", nontrivial.len() + trivial.len());
}

#[test]
fn c9_hom_freeness() {
    let cases: Vec<(usize, u64)> =
        NS.iter().flat_map(|&n| (0..30).map(move |s| (n, 30_000 + s))).collect();
    cases.par_iter().for_each(|&(n, s)| {
        let w = random_word(n, s, 8);
        for l in 1..=n {
            let complex = ProjComplex::projective(n, l).apply_word(&w);
            complex
                .hom_table()
                .unwrap_or_else(|e| panic!("n={n} word {w} P{l} functor side: {e}"));
            let curve = TrigradedCurve::basic_curve(n, l).unwrap().twist_word(&w).unwrap();
            curve
                .complex()
                .unwrap_or_else(|e| panic!("n={n} word {w} arc {l} curve side: {e}"))
                .hom_table()
                .unwrap_or_else(|e| panic!("n={n} word {w} arc {l} curve side: {e}"));
        }
    });
    pass(9, "hom-freeness", cases.len());
}
