//! Graded character series of Milnor algebras against a brute-force
//! computation: for each weighted degree, the quotient of the monomial
//! space by the degree part of the Jacobian ideal, split by `G`-character.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use orbimilnor::diagsym::{parse_group, Character, DiagonalGroup};
use orbimilnor::matrix::RatMatrix;
use orbimilnor::polyring::InvertiblePolynomial;
use orbimilnor::spectra::{equivariant_series, sector_dimensions, SpectraOptions};
use proptest::prelude::*;

fn monomials_of_degree(weights: &[i64], deg: i64) -> Vec<Vec<i64>> {
    fn rec(w: &[i64], deg: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if w.is_empty() {
            if deg == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for k in 0..=deg / w[0] {
            prefix.push(k);
            rec(&w[1..], deg - k * w[0], prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if deg >= 0 {
        rec(weights, deg, &mut Vec::new(), &mut out);
    }
    out
}

fn monomial_character(g: &DiagonalGroup, m: &[i64]) -> Character {
    m.iter()
        .enumerate()
        .fold(Character::trivial(g.order()), |acc, (j, &k)| acc.mul(&g.coordinate_character(j).pow(k)))
}

/// `(degree, character) ↦ dimension` of the Milnor algebra.
fn brute_force(f: &InvertiblePolynomial, g: &DiagonalGroup) -> BTreeMap<(i64, Character), i64> {
    let ws = f.weight_system().unwrap();
    let (w, d) = (ws.weights.clone(), ws.degree);
    let n = f.n_vars();
    let e = f.exponents().to_rows();
    let top: i64 = w.iter().map(|wj| d - 2 * wj).sum();
    let mut out = BTreeMap::new();
    for deg in 0..=top + 1 {
        let basis = monomials_of_degree(&w, deg);
        let index: BTreeMap<Vec<i64>, usize> = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut rows_by_char: BTreeMap<Character, Vec<Vec<BigRational>>> = BTreeMap::new();
        for j in 0..n {
            for m in monomials_of_degree(&w, deg - (d - w[j])) {
                let mut row = vec![BigRational::zero(); basis.len()];
                for mono in &e {
                    if mono[j] == 0 {
                        continue;
                    }
                    let t: Vec<i64> = (0..n).map(|k| m[k] + mono[k] - (k == j) as i64).collect();
                    row[index[&t]] += BigRational::from_integer(mono[j].into());
                }
                let chi = monomial_character(g, &m).mul(&monomial_character(g, &e[0])).mul(&g.coordinate_character(j).inv());
                rows_by_char.entry(chi).or_default().push(row);
            }
        }
        let mut count: BTreeMap<Character, i64> = BTreeMap::new();
        let mut cols_by_char: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
        for (i, m) in basis.iter().enumerate() {
            let chi = monomial_character(g, m);
            *count.entry(chi.clone()).or_default() += 1;
            cols_by_char.entry(chi).or_default().push(i);
        }
        for (chi, c) in count {
            let cols = &cols_by_char[&chi];
            let rows: Vec<Vec<BigRational>> = rows_by_char
                .get(&chi)
                .map(|rs| rs.iter().map(|r| cols.iter().map(|&i| r[i].clone()).collect()).collect())
                .unwrap_or_default();
            let rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(rows).rank() };
            let dim = c - rank as i64;
            assert!(deg <= top || dim == 0, "Milnor algebra not finite in degree {deg}");
            if dim > 0 {
                out.insert((deg, chi), dim);
            }
        }
    }
    out
}

fn from_series(f: &InvertiblePolynomial, g: &DiagonalGroup) -> BTreeMap<(i64, Character), i64> {
    let all: Vec<usize> = (0..f.n_vars()).collect();
    let s = equivariant_series(f, g, &all).unwrap();
    let mut out = BTreeMap::new();
    for (k, t) in s.terms.iter().enumerate() {
        for (chi, &m) in t {
            if m != 0 {
                out.insert((k as i64, chi.clone()), m);
            }
        }
    }
    out
}

fn check(poly: &str, group: &str) {
    let f = InvertiblePolynomial::parse(poly).unwrap();
    let g = parse_group(&f, group).unwrap();
    let brute = brute_force(&f, &g);
    assert_eq!(from_series(&f, &g), brute, "{poly} with {group}");
    assert_eq!(brute.values().sum::<i64>(), f.milnor_number().unwrap(), "{poly}");
}

#[test]
fn brieskorn_pham_series_match_monomial_enumeration() {
    for (p, g) in [("y^5", "trivial"), ("x^3 + y^4", "max"), ("x^2 + y^2 + z^3", "max"), ("x^3 + y^6", "1/3,2/3"), ("x^4 + y^4", "J")] {
        check(p, g);
    }
}

#[test]
fn chain_and_loop_series_match_monomial_enumeration() {
    for (p, g) in [
        ("x^3*y + y^4", "J"),
        ("x^2*y + y^5", "max"),
        ("x^3 + x*y^4", "1/3,2/3"),
        ("x^3*y + x*y^5", "J"),
        ("x^3*y + x*y^5", "1/2,1/2"),
        ("x^2*y + y^3*z + z^4", "max"),
        ("x^2*y + y^2*z + z^2*x", "max"),
    ] {
        check(p, g);
    }
}

#[test]
fn chain_with_grading_reproduces_box_basis() {
    // x^i y^j with i, j ≤ 2 is a monomial basis of x³y + y⁴
    let f = InvertiblePolynomial::parse("x^3*y + y^4").unwrap();
    let g = parse_group(&f, "J").unwrap();
    let mut expected: BTreeMap<(i64, Character), i64> = BTreeMap::new();
    for i in 0..=2 {
        for j in 0..=2 {
            *expected.entry((i + j, monomial_character(&g, &[i, j]))).or_default() += 1;
        }
    }
    assert_eq!(from_series(&f, &g), expected);
}

#[test]
fn identity_sector_dimension_counts_twisted_invariants() {
    // loop x³y + xy⁵ with J: monomials x²,xy²,y⁴ survive 2m₁+m₂+3 ≡ 0 mod 7
    let f = InvertiblePolynomial::parse("x^3*y + x*y^5").unwrap();
    let g = parse_group(&f, "J").unwrap();
    let brute = brute_force(&f, &DiagonalGroup::trivial(2));
    let twisted: i64 = brute.iter().filter(|((deg, _), _)| (deg + 3) % 7 == 0).map(|(_, m)| m).sum();
    let dims = sector_dimensions(&f, &g, SpectraOptions::default()).unwrap();
    assert_eq!(dims[0].1 as i64, twisted);
    assert_eq!(twisted, 3);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_fermat_sums(a in 2i64..6, b in 2i64..6, k in 0usize..4) {
        let f = InvertiblePolynomial::from_exponents(vec![vec![a, 0], vec![0, b]]).unwrap();
        let subs = DiagonalGroup::maximal(&f).subgroups();
        let g = &subs[k % subs.len()];
        prop_assert_eq!(from_series(&f, g), brute_force(&f, g));
    }

    #[test]
    fn random_chains(a in 2i64..5, b in 2i64..6) {
        let f = InvertiblePolynomial::from_exponents(vec![vec![a, 1], vec![0, b]]).unwrap();
        let g = DiagonalGroup::maximal(&f);
        prop_assert_eq!(from_series(&f, &g), brute_force(&f, &g));
    }
}
