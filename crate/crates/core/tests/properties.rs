//! Invariants over randomly chosen pairs `(f, G)` from the small catalog.

use std::sync::OnceLock;

use num_integer::Integer;
use num_traits::Signed;
use orbimilnor::arith::sign_pow;
use orbimilnor::catalog::{polynomials, CatalogBounds};
use orbimilnor::diagsym::{age, dual_group, DiagonalGroup};
use orbimilnor::milnor::brieskorn_pham;
use orbimilnor::orblattice::{assemble, assemble_partial, AssemblyOptions};
use orbimilnor::polyring::InvertiblePolynomial;
use orbimilnor::spectra::{e_functions, sector_spectra, total_dimension, zeta_functions, SpectraOptions};
use proptest::prelude::*;

fn catalog() -> &'static [InvertiblePolynomial] {
    static POLYS: OnceLock<Vec<InvertiblePolynomial>> = OnceLock::new();
    POLYS.get_or_init(|| polynomials(CatalogBounds { max_vars: 2, max_det: 12 }))
}

fn pick(i: usize, j: usize) -> (InvertiblePolynomial, DiagonalGroup) {
    let f = catalog()[i % catalog().len()].clone();
    let subs = DiagonalGroup::maximal(&f).subgroups();
    let g = subs[j % subs.len()].clone();
    (f, g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_group_is_an_involution(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let gt = dual_group(&f, &g);
        prop_assert_eq!(g.order() * gt.order(), DiagonalGroup::maximal(&f).order());
        prop_assert_eq!(dual_group(&f.transpose_dual(), &gt), g);
    }

    #[test]
    fn group_ring_identities_hold_on_every_block(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let ol = assemble_partial(&f, &g, &AssemblyOptions::default()).unwrap();
        for b in &ol.blocks {
            let rep = b.seifert.check_identities(&b.ring).unwrap();
            prop_assert!(rep.all(), "{} {:?}", f, rep);
            prop_assert_eq!(b.e_rank(), b.interior.len());
        }
    }

    #[test]
    fn intersection_form_symmetries(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let forms = assemble_partial(&f, &g, &AssemblyOptions::default()).unwrap().forms().unwrap();
        for b in &forms.blocks {
            let sign = sign_pow(b.n_fixed as i64 + 1);
            prop_assert_eq!(b.s_mix.transpose(), b.s_mix.scale(&sign));
            prop_assert!(b.s_orb.is_symmetric() && b.s_qua.is_symmetric());
            // sign exponents differ by n_K + 1
            prop_assert_eq!(&b.s_orb, &b.s_qua.scale(&sign));
        }
    }

    #[test]
    fn lattice_rank_matches_sector_count(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let ol = assemble_partial(&f, &g, &AssemblyOptions::default()).unwrap();
        let sp = sector_spectra(&f, &g, SpectraOptions::default()).unwrap();
        if let Some(r) = ol.total_rank() {
            prop_assert_eq!(r, total_dimension(&sp));
        }
    }

    #[test]
    fn e_function_keys_sit_on_the_age_line(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let sp = sector_spectra(&f, &g, SpectraOptions::default()).unwrap();
        let d = f.weight_system().unwrap().degree;
        let bound = g.order() as i64 * d;
        let e = e_functions(&sp);
        prop_assert_eq!(e.total() as usize, total_dimension(&sp));
        for &(parity, p, q) in e.0.keys() {
            let on_line = sp.iter().any(|s| {
                (s.n_fixed % 2) as u8 == parity
                    && p + q == orbimilnor::arith::Q::from_integer(s.n_fixed as i64) + s.age * 2
            });
            prop_assert!(on_line);
            prop_assert!(bound.is_multiple_of(p.denom()) && bound.is_multiple_of(q.denom()));
        }
    }

    #[test]
    fn reduced_zeta_degree_is_signed_dimension(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let sp = sector_spectra(&f, &g, SpectraOptions::default()).unwrap();
        let signed: i64 = sp.iter().map(|s| sign_pow(s.n_fixed as i64 - 1) * s.dim() as i64).sum();
        prop_assert_eq!(zeta_functions(&sp).reduced.degree(), signed);
        for s in &sp {
            prop_assert_eq!(s.age, age(&s.element));
        }
    }

    #[test]
    fn assembly_is_deterministic(i in 0usize..1000, j in 0usize..1000) {
        let (f, g) = pick(i, j);
        let a = assemble_partial(&f, &g, &AssemblyOptions::default()).unwrap().forms().unwrap();
        let b = assemble_partial(&f, &g, &AssemblyOptions::default()).unwrap().forms().unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn trivial_group_recovers_classical_seifert_form(a in 2i64..7, b in 2i64..7) {
        let f = InvertiblePolynomial::from_exponents(vec![vec![a, 0], vec![0, b]]).unwrap();
        let g = DiagonalGroup::trivial(2);
        let forms = assemble(&f, &g, &AssemblyOptions::default()).unwrap().forms().unwrap();
        let m = brieskorn_pham(&[a, b], &g).unwrap();
        prop_assert_eq!(forms.seifert(), m.seifert.scale(&-1));
        prop_assert_eq!(forms.monodromy(), m.derived_forms().unwrap().monodromy);
        prop_assert_eq!(forms.seifert().det().abs(), m.seifert.det().abs());
    }
}
