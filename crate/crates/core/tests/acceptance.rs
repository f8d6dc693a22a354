//! Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_bigint::BigInt;
use num_traits::Signed;
use orbimilnor::catalog::{pairs, run, CatalogBounds, PairSummary};
use orbimilnor::diagsym::{parse_group, DiagonalGroup};
use orbimilnor::fixtures::builtin;
use orbimilnor::matrix::IntMatrix;
use orbimilnor::milnor::{a_series_seifert, brieskorn_pham, derived_forms};
use orbimilnor::orblattice::{assemble, assemble_partial, AssemblyOptions};
use orbimilnor::polyring::InvertiblePolynomial;
use orbimilnor::rootlattice::recognize;
use orbimilnor::spectra::{duality_report, sector_dimensions, SpectraOptions};

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn pair(f: &str, g: &str) -> (InvertiblePolynomial, DiagonalGroup) {
    let f = InvertiblePolynomial::parse(f).unwrap();
    let g = parse_group(&f, g).unwrap();
    (f, g)
}

fn tensor_cycle(i: usize, j: usize) -> Vec<i64> {
    let e: Vec<i64> = if i == 3 { vec![-1, -1] } else { (1..=2).map(|k| (k == i) as i64).collect() };
    let f: Vec<i64> = if j == 6 { vec![-1; 5] } else { (1..=5).map(|k| (k == j) as i64).collect() };
    e.iter().flat_map(|a| f.iter().map(move |b| a * b)).collect()
}

fn cycle_sum(terms: &[(usize, usize)]) -> Vec<i64> {
    terms.iter().fold(vec![0; 10], |acc, &(i, j)| acc.iter().zip(tensor_cycle(i, j)).map(|(a, b)| a + b).collect())
}

fn gabrielov_pipeline() -> Outcome {
    let (_, g) = pair("x^3 + y^6", "1/3,2/3");
    let m = brieskorn_pham(&[3, 6], &g).unwrap();
    let inv = m.invariant_part();
    let w = IntMatrix::from_columns(
        10,
        &[
            cycle_sum(&[(2, 2), (3, 6), (1, 4)]),
            cycle_sum(&[(2, 3), (3, 1), (1, 5)]),
            cycle_sum(&[(2, 4), (3, 2), (1, 6)]),
            cycle_sum(&[(1, 2), (1, 3), (1, 4), (1, 5), (1, 6), (2, 2), (2, 3), (2, 4), (3, 2)]),
        ],
    );
    let printed = builtin("chain_4_3_order3").unwrap().1.invariant_gram();
    let change = inv.basis.to_rat().solve(&w.to_rat());
    let unimodular = change.as_ref().is_some_and(|x| x.is_integral() && x.det().numer().abs() == BigInt::from(1));
    let congruent = unimodular && m.seifert.congruence(&w) == printed;
    outcome(
        inv.rank == 4 && inv.det == BigInt::from(27) && congruent,
        format!("rank {}, det {}, unimodular change to printed basis: {}", inv.rank, inv.det, congruent),
    )
}

fn fixture_determinants() -> Outcome {
    let mut ok = true;
    let mut got = Vec::new();
    for (name, det) in [("loop_3_5_grading", -49), ("loop_3_5_involution", 128), ("chain_3_4_grading", -16), ("chain_4_3_order3", 27)] {
        let d = derived_forms(&builtin(name).unwrap().1.invariant_gram(), 2).unwrap().det;
        ok &= d == BigInt::from(det);
        got.push(d.to_string());
    }
    outcome(ok, format!("determinants {}", got.join(", ")))
}

fn sector_counts() -> Outcome {
    let mut ok = true;
    let mut got = Vec::new();
    for (f, g, id, rest) in [
        ("x^3*y + x*y^5", "J", 3, 6),
        ("x^3*y + x*y^5", "1/2,1/2", 8, 1),
        ("x^3*y + y^4", "J", 3, 3),
        ("x^3 + y^6", "1/3,2/3", 4, 2),
    ] {
        let (f, g) = pair(f, g);
        let dims = sector_dimensions(&f, &g, SpectraOptions::default()).unwrap();
        let other: usize = dims[1..].iter().map(|d| d.1).sum();
        ok &= dims[0].1 == id && other == rest;
        got.push(format!("{}+{}", dims[0].1, other));
    }
    outcome(ok, format!("identity+other {}", got.join(", ")))
}

fn mirror_ranks(rows: &[PairSummary]) -> Outcome {
    let bad = rows.iter().filter(|r| !r.rank_equal).count();
    let mut named = Vec::new();
    for (f, g) in [("x^2*y + y^5", "max"), ("x^3*y + x*y^5", "J"), ("x^3*y + y^4", "J")] {
        let (f, g) = pair(f, g);
        let r = duality_report(&f, &g, SpectraOptions::default()).unwrap();
        named.push((r.rank, r.dual_rank));
    }
    let named_ok = named == [(9, 9), (9, 9), (6, 6)];
    outcome(
        bad == 0 && named_ok,
        format!("{} pairs, {} rank mismatches; named pairs {:?}", rows.len(), bad, named),
    )
}

fn bp_rows(rows: &[PairSummary]) -> Vec<&PairSummary> {
    rows.iter().filter(|r| r.brieskorn_pham_data).collect()
}

fn lattice_invariance(rows: &[PairSummary]) -> Outcome {
    let bp = bp_rows(rows);
    let bad: Vec<String> = bp.iter().filter(|r| !r.monodromy_integral).map(|r| format!("{} [{}]", r.polynomial, r.group)).collect();
    let other = rows.iter().filter(|r| r.complete && !r.brieskorn_pham_data).count();
    let other_ok = rows.iter().filter(|r| r.complete && !r.brieskorn_pham_data && r.monodromy_integral).count();
    outcome(
        bad.is_empty() && !bp.is_empty(),
        format!("{} pairs with Brieskorn-Pham data, non-integral: {:?}; other complete pairs integral {}/{}", bp.len(), bad, other_ok, other),
    )
}

fn seifert_monodromy_identity(rows: &[PairSummary]) -> Outcome {
    let ring_bad = rows.iter().filter(|r| !r.groupring_identities).count();
    let mut ledger: BTreeMap<(usize, i64), usize> = BTreeMap::new();
    for r in rows {
        for s in &r.sigma {
            *ledger.entry((s.n_fixed % 2, s.sigma)).or_default() += 1;
        }
    }
    let even_ok = ledger.keys().all(|&(parity, sigma)| parity == 1 || sigma == 1);
    let defined = ledger.keys().all(|&(_, sigma)| sigma != 0);
    let summary: Vec<String> = ledger.iter().map(|((p, s), n)| format!("n_K {} sigma {:+}: {}", if *p == 0 { "even" } else { "odd" }, s, n)).collect();
    outcome(
        ring_bad == 0 && even_ok && defined,
        format!("group ring failures {}; sign ledger [{}]", ring_bad, summary.join(", ")),
    )
}

fn evenness(rows: &[PairSummary]) -> Outcome {
    let bad = rows.iter().filter(|r| !r.forms_even).count();
    outcome(bad == 0, format!("{} pairs, {} with odd or asymmetric S_orb/S_qua", rows.len(), bad))
}

fn zeta_cross_check(rows: &[PairSummary]) -> Outcome {
    let bp = bp_rows(rows);
    let cp_bad = bp.iter().filter(|r| r.charpoly_matches_zeta != Some(true)).count();
    let dual_bad = rows.iter().filter(|r| !r.zeta_identity).count();
    let other: Vec<String> = rows
        .iter()
        .filter(|r| !r.brieskorn_pham_data && r.charpoly_matches_zeta == Some(false))
        .map(|r| format!("{} [{}]", r.polynomial, r.group))
        .collect();
    outcome(
        cp_bad == 0 && dual_bad == 0 && !bp.is_empty(),
        format!(
            "charpoly mismatches {}/{} Brieskorn-Pham pairs; zeta duality failures {}/{}; outside the criterion: {:?}",
            cp_bad,
            bp.len(),
            dual_bad,
            rows.len(),
            other
        ),
    )
}

fn e_function_duality(rows: &[PairSummary]) -> Outcome {
    let bad = rows.iter().filter(|r| !r.e_function_identity).count();
    outcome(bad == 0, format!("{} pairs, {} failures", rows.len(), bad))
}

fn root_lattices() -> Outcome {
    let opts = AssemblyOptions::default();
    let (f, g) = pair("x^3*y + x*y^5", "J");
    let ol = assemble(&f, &g, &opts).unwrap();
    let forms = ol.forms().unwrap();
    let coords = &ol.blocks[1].seifert.coords;
    let u = IntMatrix::from_fn(6, 6, |r, c| coords[(r, c)]);
    let a6 = (0..6).all(|c| coords[(6, c)] == 0)
        && u.det().abs() == BigInt::from(1)
        && forms.blocks[1].seifert == a_series_seifert(7).congruence(&u).neg()
        && recognize(&forms.blocks[1].s_orb).is_some_and(|r| r.label() == "A6");

    let (f, g) = pair("x^3*y + y^4", "J");
    let ol = assemble(&f, &g, &opts).unwrap();
    let s = ol.forms().unwrap().blocks[1].s_orb.clone();
    let rank_one = orthogonal_split(&s);
    let diag: Vec<i64> = rank_one.as_ref().map(|d| (0..3).map(|i| d[(i, i)]).collect()).unwrap_or_default();
    let three_rank_one = ol.blocks[1].e_rank() == 3 && rank_one.is_some();

    let (f, g) = pair("x^2*y + y^5", "max");
    let ol = assemble_partial(&f, &g, &opts).unwrap();
    let forms = ol.forms().unwrap();
    let label = forms.blocks.iter().find(|b| b.seifert.rows() == 8).and_then(|b| recognize(&b.s_orb)).map(|r| r.label());
    let a4a4 = label.as_deref() == Some("A4+A4");
    outcome(
        a6 && three_rank_one && a4a4,
        format!(
            "A6 block congruent to -(A6 Seifert): {}; twisted block of x^3*y + y^4 splits as {:?} (A1+A1+A1 would be [-2,-2,-2]); 8-dim block recognised as {:?}",
            a6, diag, label
        ),
    )
}

/// Diagonal form of `s` under a unimodular change of basis with entries in
/// `{−1, 0, 1}`, if one exists.
fn orthogonal_split(s: &IntMatrix) -> Option<IntMatrix> {
    let n = s.rows();
    let vecs: Vec<Vec<i64>> = (0..3usize.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let d = (k % 3) as i64 - 1;
                    k /= 3;
                    d
                })
                .collect()
        })
        .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
        .collect();
    let mut chosen: Vec<Vec<i64>> = Vec::new();
    fn extend(s: &IntMatrix, vecs: &[Vec<i64>], chosen: &mut Vec<Vec<i64>>) -> Option<IntMatrix> {
        let n = s.rows();
        if chosen.len() == n {
            let u = IntMatrix::from_columns(n, chosen);
            return (u.det().abs() == BigInt::from(1)).then(|| s.congruence(&u));
        }
        for v in vecs {
            let orthogonal = chosen.iter().all(|c| {
                let sv = s.mul_vec(v);
                c.iter().zip(&sv).map(|(a, b)| a * b).sum::<i64>() == 0
            });
            if orthogonal {
                chosen.push(v.clone());
                if let Some(d) = extend(s, vecs, chosen) {
                    return Some(d);
                }
                chosen.pop();
            }
        }
        None
    }
    extend(s, &vecs, &mut chosen)
}

fn main() -> ExitCode {
    let rows = run(&pairs(CatalogBounds { max_vars: 2, max_det: 15 }), &AssemblyOptions::default()).unwrap();
    let results = [
        ("Gabrielov pipeline", gabrielov_pipeline()),
        ("fixture determinants", fixture_determinants()),
        ("sector dimensions", sector_counts()),
        ("mirror rank equality", mirror_ranks(&rows)),
        ("lattice invariance", lattice_invariance(&rows)),
        ("Seifert-monodromy identity", seifert_monodromy_identity(&rows)),
        ("evenness", evenness(&rows)),
        ("zeta cross-check", zeta_cross_check(&rows)),
        ("E-function duality", e_function_duality(&rows)),
        ("root-lattice recognition", root_lattices()),
    ];
    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!("criterion {:>2} {}: {} ({})", i + 1, if o.pass { "PASS" } else { "FAIL" }, name, o.detail);
        failed += (!o.pass) as usize;
    }
    println!("acceptance: {}/{} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
