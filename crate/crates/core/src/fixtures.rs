//! Built-in Milnor fixtures for chain and loop polynomials whose invariant
//! Seifert forms come from real morsifications.

use crate::diagsym::{parse_group, DiagonalGroup};
use crate::error::Result;
use crate::milnor::{fixture_data, load_milnor_fixture, FixtureData, MilnorFixture};
use crate::polyring::InvertiblePolynomial;

pub const BUILTIN: [(&str, &str); 4] = [
    ("loop_3_5_grading", include_str!("../fixtures/loop_3_5_grading.json")),
    ("loop_3_5_involution", include_str!("../fixtures/loop_3_5_involution.json")),
    ("chain_3_4_grading", include_str!("../fixtures/chain_3_4_grading.json")),
    ("chain_4_3_order3", include_str!("../fixtures/chain_4_3_order3.json")),
];

/// Loads a built-in fixture by name.
pub fn builtin(name: &str) -> Option<(MilnorFixture, FixtureData)> {
    BUILTIN
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, doc)| load_milnor_fixture(doc).expect("built-in fixture is valid"))
}

pub fn all_builtin() -> Vec<(MilnorFixture, FixtureData)> {
    BUILTIN.iter().map(|(_, doc)| load_milnor_fixture(doc).expect("built-in fixture is valid")).collect()
}

/// Whether a fixture describes the pair `(f, g)`: same exponent matrix
/// and the same group.
pub fn fixture_matches(fx: &MilnorFixture, f: &InvertiblePolynomial, g: &DiagonalGroup) -> bool {
    let (Some(poly), Some(group)) = (&fx.polynomial, &fx.group) else {
        return false;
    };
    let Ok(fp) = InvertiblePolynomial::parse(poly) else {
        return false;
    };
    if fp.exponents() != f.exponents() {
        return false;
    }
    parse_group(&fp, group).is_ok_and(|h| &h == g)
}

/// First fixture among `extra` then the built-ins matching `(f, g)`.
pub fn find_fixture(
    extra: &[MilnorFixture],
    f: &InvertiblePolynomial,
    g: &DiagonalGroup,
) -> Result<Option<(MilnorFixture, FixtureData)>> {
    for fx in extra {
        if fixture_matches(fx, f, g) {
            return Ok(Some((fx.clone(), fixture_data(fx)?)));
        }
    }
    Ok(all_builtin().into_iter().find(|(fx, _)| fixture_matches(fx, f, g)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn builtins_load_with_recorded_determinants() {
        let dets: Vec<BigInt> = all_builtin().iter().map(|(_, d)| d.invariant_gram().det()).collect();
        assert_eq!(dets, [-49, 128, -16, 27].map(BigInt::from).to_vec());
    }

    #[test]
    fn lookup_by_pair() {
        let f = InvertiblePolynomial::parse("x^3*y + x*y^5").unwrap();
        let g = DiagonalGroup::grading(&f);
        let (fx, _) = find_fixture(&[], &f, &g).unwrap().unwrap();
        assert_eq!(fx.name.as_deref(), Some("loop_3_5_grading"));
        assert!(find_fixture(&[], &f, &DiagonalGroup::maximal(&f)).unwrap().is_none());
    }
}
