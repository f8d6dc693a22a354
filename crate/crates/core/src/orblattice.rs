//! The orbifold Milnor lattice `Λ = ⊕_K E_K^Z ⊗ ℋ_K^Z`, its Seifert form,
//! orbifold monodromy and intersection forms, and the verification of the
//! identities relating them.
//!
//! Blocks are ordered by `(|K|, elements of K)`; inside a block the tensor
//! index is `e * rank(ℋ_K) + h`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::arith::{sign_pow, Q};
use crate::cyclo::{cyclotomic_factorization, exponents_of_factorization};
use crate::diagsym::{DiagonalGroup, Phase};
use crate::error::{Error, Result};
use crate::fixtures::find_fixture;
use crate::groupring::{GroupRing, IdentityReport, SeifertBlock};
use crate::matrix::{IntMatrix, RatMatrix};
use crate::milnor::{brieskorn_pham_with, point, ActionDirection, MilnorFixture, SectorLattice};
use crate::polyring::InvertiblePolynomial;
use crate::spectra::{self, SpectraOptions};

#[derive(Clone, Debug)]
pub struct AssemblyOptions {
    pub direction: ActionDirection,
    /// Seifert matrix `(sign)` of the zero-variable lattice.
    pub point_sign: i64,
    pub fixtures: Vec<MilnorFixture>,
    pub spectra: SpectraOptions,
}

impl Default for AssemblyOptions {
    fn default() -> Self {
        AssemblyOptions { direction: ActionDirection::Forward, point_sign: -1, fixtures: Vec::new(), spectra: SpectraOptions::default() }
    }
}

/// Restriction of `g` to the coordinates `vars`.
pub fn project_group(g: &DiagonalGroup, vars: &[usize]) -> DiagonalGroup {
    let gens: Vec<Phase> = g.generators().iter().map(|x| vars.iter().map(|&j| x[j]).collect()).collect();
    DiagonalGroup::generated_by(vars.len(), &gens)
}

/// Classical invariant lattice of `f` restricted to `fixed`, with the
/// symmetries of `g`. Tries, in order: Brieskorn–Pham, fixtures, and a
/// Brieskorn–Pham polynomial with the same weights. `None` if none apply.
pub fn classical_sector(
    f: &InvertiblePolynomial,
    g: &DiagonalGroup,
    fixed: &[usize],
    opts: &AssemblyOptions,
) -> Result<Option<SectorLattice>> {
    if fixed.is_empty() {
        let p = point(opts.point_sign, 0);
        return SectorLattice::from_data(&p, "point").map(Some);
    }
    let Some(fk) = f.restrict(fixed) else {
        return Ok(None);
    };
    let gk = project_group(g, fixed);
    if let Some(exps) = fk.fermat_exponents() {
        let m = brieskorn_pham_with(&exps, &gk, opts.direction, opts.point_sign)?;
        return SectorLattice::from_data(&m, "brieskorn-pham").map(Some);
    }
    if fixed.len() == f.n_vars() {
        if let Some((fx, data)) = find_fixture(&opts.fixtures, f, g)? {
            let name = fx.name.unwrap_or_else(|| "fixture".into());
            return data.sector_lattice(&format!("fixture:{name}")).map(Some);
        }
    }
    let ws = fk.weight_system()?;
    if ws.weights.iter().all(|w| ws.degree % w == 0) {
        let exps: Vec<i64> = ws.weights.iter().map(|w| ws.degree / w).collect();
        if let Ok(m) = brieskorn_pham_with(&exps, &gk, opts.direction, opts.point_sign) {
            let label = exps.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(",");
            return SectorLattice::from_data(&m, &format!("surrogate:{label}")).map(Some);
        }
    }
    Ok(None)
}

#[derive(Clone, Debug)]
pub struct LatticeBlock {
    pub group: DiagonalGroup,
    pub fixed: Vec<usize>,
    pub interior: Vec<Phase>,
    pub ring: GroupRing,
    pub seifert: SeifertBlock,
    pub classical: Option<SectorLattice>,
}

impl LatticeBlock {
    pub fn n_fixed(&self) -> usize {
        self.fixed.len()
    }

    pub fn e_rank(&self) -> usize {
        self.seifert.rank()
    }

    pub fn rank(&self) -> Option<usize> {
        self.classical.as_ref().map(|c| c.rank() * self.e_rank())
    }
}

#[derive(Clone, Debug)]
pub struct OrbifoldLattice {
    pub n_vars: usize,
    pub blocks: Vec<LatticeBlock>,
}

/// Builds all blocks; classical data may be missing.
pub fn assemble_partial(f: &InvertiblePolynomial, g: &DiagonalGroup, opts: &AssemblyOptions) -> Result<OrbifoldLattice> {
    let iso = g.isotropy_subgroups();
    let sectors = g.isotropy_sectors();
    let blocks = sectors
        .into_par_iter()
        .map(|s| {
            let ring = GroupRing::new(&s.group);
            let seifert = SeifertBlock::build(&ring, &iso)?;
            let classical = classical_sector(f, g, &s.fixed, opts)?;
            Ok(LatticeBlock { group: s.group, fixed: s.fixed, interior: s.interior, ring, seifert, classical })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(OrbifoldLattice { n_vars: f.n_vars(), blocks })
}

/// Builds all blocks, failing if some classical lattice is unavailable.
pub fn assemble(f: &InvertiblePolynomial, g: &DiagonalGroup, opts: &AssemblyOptions) -> Result<OrbifoldLattice> {
    let ol = assemble_partial(f, g, opts)?;
    if let Some(b) = ol.blocks.iter().find(|b| b.classical.is_none()) {
        return Err(Error::MissingClassicalData { order: b.group.order(), fixed: b.fixed.clone() });
    }
    Ok(ol)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockForms {
    pub n_fixed: usize,
    pub seifert: IntMatrix,
    pub monodromy: RatMatrix,
    pub s_mix: IntMatrix,
    pub s_orb: IntMatrix,
    pub s_qua: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbifoldForms {
    pub blocks: Vec<BlockForms>,
}

impl OrbifoldForms {
    pub fn seifert(&self) -> IntMatrix {
        IntMatrix::block_diagonal(&self.blocks.iter().map(|b| b.seifert.clone()).collect::<Vec<_>>())
    }

    pub fn monodromy(&self) -> RatMatrix {
        RatMatrix::block_diagonal(&self.blocks.iter().map(|b| b.monodromy.clone()).collect::<Vec<_>>())
    }

    pub fn s_mix(&self) -> IntMatrix {
        IntMatrix::block_diagonal(&self.blocks.iter().map(|b| b.s_mix.clone()).collect::<Vec<_>>())
    }

    pub fn s_orb(&self) -> IntMatrix {
        IntMatrix::block_diagonal(&self.blocks.iter().map(|b| b.s_orb.clone()).collect::<Vec<_>>())
    }

    pub fn s_qua(&self) -> IntMatrix {
        IntMatrix::block_diagonal(&self.blocks.iter().map(|b| b.s_qua.clone()).collect::<Vec<_>>())
    }
}

/// `(−1)^{n_K} ℓ_K ⊗ L^G`.
pub fn block_seifert(b: &LatticeBlock, c: &SectorLattice) -> IntMatrix {
    b.seifert.gram_restricted.kron(&c.gram).scale(&sign_pow(b.n_fixed() as i64))
}

fn symmetric_part_signed(l: &IntMatrix, exp: i64) -> IntMatrix {
    l.neg().sub(&l.transpose()).scale(&sign_pow(exp))
}

pub fn block_forms(b: &LatticeBlock, c: &SectorLattice) -> Result<BlockForms> {
    let nk = b.n_fixed() as i64;
    let l = block_seifert(b, c);
    let psi = b.ring.psi(&b.ring.age_character())?.to_rat();
    let x_psi = b
        .seifert
        .on_lattice(&psi)
        .ok_or_else(|| Error::InvariantViolation("ψ_α does not preserve E_K".into()))?;
    let monodromy = x_psi.kron(&c.monodromy);
    let s_mix = l.neg().add(&l.transpose().scale(&sign_pow(nk)));
    let s_orb = symmetric_part_signed(&l, nk * (nk + 1) / 2);
    let s_qua = symmetric_part_signed(&l, (nk - 2) * (nk + 1) / 2);
    Ok(BlockForms { n_fixed: b.n_fixed(), seifert: l, monodromy, s_mix, s_orb, s_qua })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockCheck {
    pub order: usize,
    pub n_fixed: usize,
    pub rank: usize,
    /// `+1`/`−1` if the monodromy equals `±(−I) L⁻¹Lᵀ` on the block, `0` otherwise.
    pub sigma: i64,
    pub identities: IdentityReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub monodromy_integral: bool,
    pub sigma_ledger_ok: bool,
    pub forms_even: bool,
    pub seifert_nondegenerate: bool,
    pub groupring_identities: bool,
    pub rank_matches_spectra: Option<bool>,
    pub charpoly_matches_zeta: Option<bool>,
    pub blocks: Vec<BlockCheck>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.monodromy_integral
            && self.sigma_ledger_ok
            && self.forms_even
            && self.seifert_nondegenerate
            && self.groupring_identities
            && self.rank_matches_spectra.unwrap_or(true)
            && self.charpoly_matches_zeta.unwrap_or(true)
    }

    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (ok, name) in [
            (self.monodromy_integral, "orbifold monodromy is not integral"),
            (self.sigma_ledger_ok, "sign ledger has an undetermined or odd sign for even n_K"),
            (self.forms_even, "S_orb or S_qua is not symmetric and even"),
            (self.seifert_nondegenerate, "orbifold Seifert form is degenerate"),
            (self.groupring_identities, "group ring identity fails"),
            (self.rank_matches_spectra.unwrap_or(true), "lattice rank differs from the sector count"),
            (self.charpoly_matches_zeta.unwrap_or(true), "characteristic polynomial differs from the reduced zeta function"),
        ] {
            if !ok {
                out.push(name);
            }
        }
        out
    }
}

fn is_even_symmetric(m: &IntMatrix) -> bool {
    m.is_symmetric() && (0..m.rows()).all(|i| m[(i, i)] % 2 == 0)
}

/// Eigenvalue exponents `c ∈ [0,1)` of a matrix whose eigenvalues are roots
/// of unity, from the cyclotomic factorisation of its characteristic
/// polynomial.
pub fn eigenvalue_exponents(m: &RatMatrix) -> Option<BTreeMap<Q, i64>> {
    if m.rows() == 0 {
        return Some(BTreeMap::new());
    }
    cyclotomic_factorization(&m.charpoly()).map(|f| exponents_of_factorization(&f))
}

impl OrbifoldLattice {
    pub fn is_complete(&self) -> bool {
        self.blocks.iter().all(|b| b.classical.is_some())
    }

    pub fn total_rank(&self) -> Option<usize> {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    /// Forms of every block with classical data.
    pub fn forms(&self) -> Result<OrbifoldForms> {
        let blocks = self
            .blocks
            .par_iter()
            .filter_map(|b| b.classical.as_ref().map(|c| block_forms(b, c)))
            .collect::<Result<Vec<_>>>()?;
        Ok(OrbifoldForms { blocks })
    }

    /// Runs every identity check; blocks without classical data only enter
    /// the group ring checks.
    pub fn verify(&self, f: &InvertiblePolynomial, g: &DiagonalGroup, opts: &AssemblyOptions) -> Result<VerificationReport> {
        let mut checks = Vec::new();
        let mut integral = true;
        let mut even = true;
        let mut nondeg = true;
        let mut ring_ok = true;
        let mut eigen_blocks = Vec::new();
        let mut eigen_missing = false;
        let mut eigen_cyclotomic = true;
        for b in &self.blocks {
            let identities = b.seifert.check_identities(&b.ring)?;
            ring_ok &= identities.all();
            let Some(c) = &b.classical else {
                eigen_missing = true;
                checks.push(BlockCheck { order: b.group.order(), n_fixed: b.n_fixed(), rank: 0, sigma: 0, identities });
                continue;
            };
            let bf = block_forms(b, c)?;
            integral &= bf.monodromy.is_integral();
            even &= is_even_symmetric(&bf.s_orb) && is_even_symmetric(&bf.s_qua);
            nondeg &= !bf.seifert.det().is_zero();
            let sigma = block_sigma(b, &bf);
            match eigenvalue_exponents(&bf.monodromy) {
                Some(e) => eigen_blocks.push((b.n_fixed(), e)),
                None => eigen_cyclotomic = false,
            }
            checks.push(BlockCheck { order: b.group.order(), n_fixed: b.n_fixed(), rank: bf.seifert.rows(), sigma, identities });
        }
        let sigma_ok = checks
            .iter()
            .filter(|c| c.rank > 0)
            .all(|c| c.sigma != 0 && (c.n_fixed % 2 == 1 || c.sigma == 1));
        let sp = spectra::sector_spectra(f, g, opts.spectra)?;
        let rank_ok = self.total_rank().map(|r| r == spectra::total_dimension(&sp));
        let charpoly = if eigen_missing {
            None
        } else if !eigen_cyclotomic {
            Some(false)
        } else {
            let zeta = spectra::zeta_functions(&sp).reduced;
            Some(spectra::signed_eigenvalue_count(&eigen_blocks) == zeta)
        };
        Ok(VerificationReport {
            monodromy_integral: integral,
            sigma_ledger_ok: sigma_ok,
            forms_even: even,
            seifert_nondegenerate: nondeg,
            groupring_identities: ring_ok,
            rank_matches_spectra: rank_ok,
            charpoly_matches_zeta: charpoly,
            blocks: checks,
        })
    }
}

/// Sign `σ` with `ψ ⊗ φ̂ = σ·(−I ⊗ 1)(Lᵀ)⁻¹L` on one block.
pub fn block_sigma(b: &LatticeBlock, bf: &BlockForms) -> i64 {
    if bf.seifert.rows() == 0 {
        return 1;
    }
    let Some(x_i) = b.seifert.on_lattice(&b.seifert.i_operator_e()) else {
        return 0;
    };
    let rank_h = bf.seifert.rows() / b.e_rank();
    let i_full = x_i.kron(&RatMatrix::identity(rank_h));
    let l = bf.seifert.to_rat();
    let Some(lt_inv) = l.transpose().inverse() else {
        return 0;
    };
    let rhs = i_full.mul(&lt_inv).mul(&l).neg();
    if bf.monodromy == rhs {
        1
    } else if bf.monodromy == rhs.neg() {
        -1
    } else {
        0
    }
}

/// Determinant of a block-diagonal Gram matrix from its blocks.
pub fn block_det(blocks: &[IntMatrix]) -> BigInt {
    blocks.iter().fold(BigInt::one(), |acc, b| acc * b.det())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagsym::parse_group;

    fn pair(s: &str, grp: &str) -> (InvertiblePolynomial, DiagonalGroup) {
        let f = InvertiblePolynomial::parse(s).unwrap();
        let g = parse_group(&f, grp).unwrap();
        (f, g)
    }

    #[test]
    fn trivial_group_gives_classical_lattice() {
        let (f, g) = pair("x^3 + y^4", "trivial");
        let ol = assemble(&f, &g, &AssemblyOptions::default()).unwrap();
        assert_eq!(ol.blocks.len(), 1);
        let forms = ol.forms().unwrap();
        let m = crate::milnor::brieskorn_pham(&[3, 4], &g).unwrap();
        assert_eq!(forms.seifert(), m.seifert.scale(&-1));
        assert_eq!(forms.monodromy(), m.derived_forms().unwrap().monodromy);
        let rep = ol.verify(&f, &g, &AssemblyOptions::default()).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures());
        assert_eq!(rep.blocks[0].sigma, 1);
    }

    #[test]
    fn loop_with_grading_group() {
        let (f, g) = pair("x^3*y + x*y^5", "J");
        let ol = assemble(&f, &g, &AssemblyOptions::default()).unwrap();
        let ranks: Vec<(usize, usize)> = ol.blocks.iter().map(|b| (b.e_rank(), b.classical.as_ref().unwrap().rank())).collect();
        assert_eq!(ranks, vec![(1, 3), (6, 1)]);
        assert_eq!(ol.total_rank(), Some(9));
        let rep = ol.verify(&f, &g, &AssemblyOptions::default()).unwrap();
        assert!(rep.passed(), "{:?} {:?}", rep.failures(), rep.blocks);
    }

    #[test]
    fn chain_without_data_is_partial() {
        let (f, g) = pair("x^2*y + y^5", "max");
        assert!(matches!(assemble(&f, &g, &AssemblyOptions::default()), Err(Error::MissingClassicalData { order: 1, .. })));
        let ol = assemble_partial(&f, &g, &AssemblyOptions::default()).unwrap();
        assert_eq!(ol.blocks.iter().map(|b| b.e_rank()).collect::<Vec<_>>(), vec![1, 1, 8]);
    }

    #[test]
    fn surrogate_sector_for_x3_xy4() {
        let (f, g) = pair("x^3 + x*y^4", "1/3,2/3");
        let opts = AssemblyOptions::default();
        let c = classical_sector(&f, &g, &[0, 1], &opts).unwrap().unwrap();
        assert_eq!(c.rank(), 4);
        assert_eq!(c.gram.det(), BigInt::from(27));
    }
}
