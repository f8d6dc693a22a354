//! Enumeration of invertible polynomials and their diagonal symmetry groups,
//! and the per-pair summary used by catalog sweeps.
//!
//! Polynomials are listed up to simultaneous permutation of variables and
//! monomials, ordered by `(n, |det E|, exponent matrix)`; the representative
//! of each class is its lexicographically smallest exponent matrix.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::fmt_rational;
use crate::diagsym::{dual_group, parse_group, DiagonalGroup};
use crate::error::{Error, Result};
use crate::orblattice::{assemble_partial, AssemblyOptions};
use crate::polyring::{from_atoms, AtomKind, InvertiblePolynomial};
use crate::spectra;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CatalogBounds {
    pub max_vars: usize,
    pub max_det: i64,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Smallest exponent matrix `P E Pᵀ` over permutations `P`.
pub fn canonical_exponents(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    permutations(n)
        .into_iter()
        .map(|p| (0..n).map(|i| (0..n).map(|j| rows[p[i]][p[j]]).collect()).collect())
        .min()
        .unwrap_or_default()
}

fn atom_sizes(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in atom_sizes(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn exponent_vectors(len: usize, budget: i64) -> Vec<Vec<i64>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for a in 2..=budget {
        for mut rest in exponent_vectors(len - 1, budget / a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

/// Every invertible polynomial within the bounds with all exponents `a_i ≥ 2`.
pub fn polynomials(bounds: CatalogBounds) -> Vec<InvertiblePolynomial> {
    let mut seen: BTreeSet<(usize, i64, Vec<Vec<i64>>)> = BTreeSet::new();
    for n in 1..=bounds.max_vars.min(crate::diagsym::MAX_VARS) {
        for sizes in atom_sizes(n) {
            let kinds: Vec<Vec<AtomKind>> = sizes
                .iter()
                .map(|&k| if k == 1 { vec![AtomKind::Fermat] } else { vec![AtomKind::Chain, AtomKind::Loop] })
                .collect();
            let mut choices: Vec<Vec<AtomKind>> = vec![Vec::new()];
            for ks in &kinds {
                choices = choices
                    .into_iter()
                    .flat_map(|c| ks.iter().map(move |k| [c.clone(), vec![*k]].concat()))
                    .collect();
            }
            for exps in exponent_vectors(n, bounds.max_det + 1) {
                for kinds in &choices {
                    let mut off = 0;
                    let atoms: Vec<(AtomKind, Vec<i64>)> = sizes
                        .iter()
                        .zip(kinds)
                        .map(|(&k, &kind)| {
                            let a = (kind, exps[off..off + k].to_vec());
                            off += k;
                            a
                        })
                        .collect();
                    let Ok(f) = from_atoms(&atoms) else { continue };
                    let det = f.exponent_det().abs();
                    if det > bounds.max_det {
                        continue;
                    }
                    seen.insert((n, det, canonical_exponents(&f.exponents().to_rows())));
                }
            }
        }
    }
    seen.into_iter()
        .filter_map(|(_, _, rows)| InvertiblePolynomial::from_exponents(rows).ok())
        .collect()
}

/// Group description accepted by `parse_group`.
pub fn group_spec(g: &DiagonalGroup) -> String {
    if g.is_trivial() {
        return "trivial".into();
    }
    g.generators()
        .iter()
        .map(|x| x.iter().map(fmt_rational).collect::<Vec<_>>().join(","))
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub polynomial: String,
    pub group: String,
}

impl CatalogEntry {
    pub fn new(f: &InvertiblePolynomial, g: &DiagonalGroup) -> Self {
        CatalogEntry { polynomial: f.to_string(), group: group_spec(g) }
    }

    pub fn resolve(&self) -> Result<(InvertiblePolynomial, DiagonalGroup)> {
        let f = InvertiblePolynomial::parse(&self.polynomial)?;
        let g = parse_group(&f, &self.group)?;
        Ok((f, g))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogFile {
    pub description: String,
    pub entries: Vec<CatalogEntry>,
}

impl CatalogFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))
    }
}

/// All pairs `(f, G)` with `G` running over the subgroups of `G_f`.
pub fn pairs(bounds: CatalogBounds) -> Vec<CatalogEntry> {
    polynomials(bounds)
        .iter()
        .flat_map(|f| {
            DiagonalGroup::maximal(f)
                .subgroups()
                .into_iter()
                .map(|g| CatalogEntry::new(f, &g))
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Pairs whose polynomial is a sum of Fermat monomials.
pub fn brieskorn_pham_catalog(bounds: CatalogBounds) -> CatalogFile {
    let entries = pairs(bounds)
        .into_iter()
        .filter(|e| e.resolve().map(|(f, _)| f.fermat_exponents().is_some()).unwrap_or(false))
        .collect();
    CatalogFile {
        description: format!(
            "Brieskorn-Pham polynomials with at most {} variables and |det E| <= {}, all subgroups of G_f",
            bounds.max_vars, bounds.max_det
        ),
        entries,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SignEntry {
    pub order: usize,
    pub n_fixed: usize,
    pub sigma: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairSummary {
    pub polynomial: String,
    pub atoms: String,
    pub n_vars: usize,
    pub det: i64,
    pub group: String,
    pub group_order: usize,
    pub dual_polynomial: String,
    pub dual_group: String,
    pub dual_group_order: usize,
    pub rank: usize,
    pub dual_rank: usize,
    pub rank_equal: bool,
    pub zeta_identity: bool,
    pub e_function_identity: bool,
    /// Every block has classical data.
    pub complete: bool,
    /// Every classical block comes from a Brieskorn–Pham or zero-variable lattice.
    pub brieskorn_pham_data: bool,
    pub sources: Vec<String>,
    pub lattice_rank: Option<usize>,
    pub monodromy_integral: bool,
    pub groupring_identities: bool,
    pub sigma: Vec<SignEntry>,
    pub sigma_ledger_ok: bool,
    pub forms_even: bool,
    pub seifert_nondegenerate: bool,
    pub rank_matches_spectra: Option<bool>,
    pub charpoly_matches_zeta: Option<bool>,
}

impl PairSummary {
    pub fn dual_check_passed(&self) -> bool {
        self.rank_equal && self.zeta_identity && self.e_function_identity
    }

    /// Failed identities that are asserted for this pair. Monodromy and
    /// characteristic polynomial checks are asserted only with
    /// Brieskorn–Pham data.
    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        let mut push = |ok: bool, what: &str| {
            if !ok {
                out.push(what.to_string());
            }
        };
        push(self.rank_equal, "rank differs from dual rank");
        push(self.zeta_identity, "reduced zeta duality");
        push(self.e_function_identity, "E-function duality");
        push(self.groupring_identities, "group ring identity");
        push(self.forms_even, "evenness of S_orb/S_qua");
        push(self.seifert_nondegenerate, "degenerate orbifold Seifert form");
        push(self.rank_matches_spectra.unwrap_or(true), "lattice rank differs from sector count");
        if self.brieskorn_pham_data {
            push(self.monodromy_integral, "orbifold monodromy not integral");
            push(self.sigma_ledger_ok, "sign ledger");
            push(self.charpoly_matches_zeta.unwrap_or(false), "characteristic polynomial vs reduced zeta");
        }
        out
    }
}

pub fn summarize(f: &InvertiblePolynomial, g: &DiagonalGroup, opts: &AssemblyOptions) -> Result<PairSummary> {
    let ft = f.transpose_dual();
    let gt = dual_group(f, g);
    let dual = spectra::duality_report(f, g, opts.spectra)?;
    let ol = assemble_partial(f, g, opts)?;
    let rep = ol.verify(f, g, opts)?;
    let mut sources: Vec<String> = ol
        .blocks
        .iter()
        .map(|b| b.classical.as_ref().map(|c| c.source.clone()).unwrap_or_else(|| "missing".into()))
        .collect();
    let bp = ol.is_complete() && sources.iter().all(|s| s == "brieskorn-pham" || s == "point");
    sources.sort();
    sources.dedup();
    let sigma: Vec<SignEntry> = rep
        .blocks
        .iter()
        .filter(|c| c.rank > 0)
        .map(|c| SignEntry { order: c.order, n_fixed: c.n_fixed, sigma: c.sigma })
        .collect();
    Ok(PairSummary {
        polynomial: f.to_string(),
        atoms: f.atoms()?.to_string(),
        n_vars: f.n_vars(),
        det: f.exponent_det().abs(),
        group: group_spec(g),
        group_order: g.order(),
        dual_polynomial: ft.to_string(),
        dual_group: group_spec(&gt),
        dual_group_order: gt.order(),
        rank: dual.rank,
        dual_rank: dual.dual_rank,
        rank_equal: dual.rank_equal,
        zeta_identity: dual.zeta_identity,
        e_function_identity: dual.e_function_identity,
        complete: ol.is_complete(),
        brieskorn_pham_data: bp,
        sources,
        lattice_rank: ol.total_rank(),
        monodromy_integral: rep.monodromy_integral,
        groupring_identities: rep.groupring_identities,
        sigma,
        sigma_ledger_ok: rep.sigma_ledger_ok,
        forms_even: rep.forms_even,
        seifert_nondegenerate: rep.seifert_nondegenerate,
        rank_matches_spectra: rep.rank_matches_spectra,
        charpoly_matches_zeta: rep.charpoly_matches_zeta,
    })
}

/// Summaries in input order; entries are processed concurrently.
pub fn run(entries: &[CatalogEntry], opts: &AssemblyOptions) -> Result<Vec<PairSummary>> {
    entries
        .par_iter()
        .map(|e| {
            let (f, g) = e.resolve()?;
            summarize(&f, &g, opts)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_two_variable_families() {
        let polys = polynomials(CatalogBounds { max_vars: 2, max_det: 15 });
        let names: Vec<String> = polys.iter().map(|f| f.to_string()).collect();
        for s in ["x^2 + y^5", "x^3*y + x*y^5", "x^3*y + y^4", "x^3 + x*y^4", "x^2*y + y^5", "x^2 + x*y^5", "x^15"] {
            let want = InvertiblePolynomial::parse(s).unwrap();
            let canon = canonical_exponents(&want.exponents().to_rows());
            assert!(polys.iter().any(|f| f.exponents().to_rows() == canon), "{s} missing from {names:?}");
        }
        assert!(polys.iter().all(|f| f.exponent_det().abs() <= 15));
        let keys: Vec<(usize, i64)> = polys.iter().map(|f| (f.n_vars(), f.exponent_det().abs())).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        // 14 one-variable, 9 Fermat pairs, 16 chains, 11 loops
        assert_eq!(polys.len(), 14 + 9 + 16 + 11);
    }

    #[test]
    fn empty_bounds_give_nothing() {
        assert!(pairs(CatalogBounds { max_vars: 0, max_det: 30 }).is_empty());
        assert!(pairs(CatalogBounds { max_vars: 2, max_det: 1 }).is_empty());
    }

    #[test]
    fn group_spec_round_trips() {
        let f = InvertiblePolynomial::parse("x^2 + y^4").unwrap();
        for g in DiagonalGroup::maximal(&f).subgroups() {
            let e = CatalogEntry::new(&f, &g);
            assert_eq!(e.resolve().unwrap().1, g);
        }
    }

    #[test]
    fn canonical_form_is_permutation_invariant() {
        let a = canonical_exponents(&[vec![3, 1], vec![1, 5]]);
        let b = canonical_exponents(&[vec![5, 1], vec![1, 3]]);
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![3, 1], vec![1, 5]]);
    }
}
