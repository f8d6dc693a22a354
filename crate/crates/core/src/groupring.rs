//! The group ring `C[K*]` of the character group of an isotropy subgroup:
//! the ê basis, the operators `ψ_β`, restriction maps, the subspace `E_K`
//! with its integral lattice, and the Seifert block `ℓ̂_K`.
//!
//! Everything is computed in ê coordinates, where `ψ_β` and the
//! restrictions are permutation-like integer matrices.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::bq;
use crate::cyclo::{Cyclotomic, CyclotomicMatrix};
use crate::diagsym::{Character, DiagonalGroup};
use crate::error::{Error, Result};
use crate::matrix::{big_rows_to_columns, congruence_sublattice, integer_kernel, lattice_basis, IntMatrix, RatMatrix};
use crate::milnor::a_series_seifert;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRing {
    pub group: DiagonalGroup,
    pub characters: Vec<Character>,
}

/// A lattice inside `Z[K*]` given by basis columns in ê coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceLattice {
    pub ambient_dim: usize,
    pub basis: IntMatrix,
}

impl SubspaceLattice {
    pub fn rank(&self) -> usize {
        self.basis.cols()
    }
}

fn columns_to_lattice(dim: usize, rows: &[Vec<BigInt>]) -> SubspaceLattice {
    let hnf = lattice_basis(dim, rows);
    SubspaceLattice { ambient_dim: dim, basis: big_rows_to_columns(dim, &hnf).expect("small lattice entries") }
}

impl GroupRing {
    pub fn new(group: &DiagonalGroup) -> Self {
        GroupRing { group: group.clone(), characters: group.characters() }
    }

    pub fn dim(&self) -> usize {
        self.characters.len()
    }

    pub fn index_of(&self, chi: &Character) -> Option<usize> {
        self.characters.binary_search(chi).ok()
    }

    /// `α_K`: the age character restricted to `K`.
    pub fn age_character(&self) -> Character {
        self.group.age_character()
    }

    /// Order `p_K` of `α_K`.
    pub fn age_order(&self) -> usize {
        self.age_character().order() as usize
    }

    /// Exponent of the group: the field `Q(ζ_N)` holding all character values.
    pub fn exponent(&self) -> u64 {
        self.characters.iter().map(|c| c.order()).fold(1, num_integer::lcm) as u64
    }

    /// Change of basis matrices: columns of the first are `ê_α` in e
    /// coordinates (`ê_α = Σ_g α(g)⁻¹ e_g`); columns of the second are
    /// `e_g` in ê coordinates (`e_g = |K|⁻¹ Σ_α α(g) ê_α`).
    pub fn basis_change(&self) -> (CyclotomicMatrix, CyclotomicMatrix) {
        let n = self.exponent();
        let d = self.dim();
        let inv_order = Cyclotomic::rational(n, bq(1) / bq(d as i64));
        let e_to_hat = (0..d * d)
            .map(|i| {
                let (g, a) = (i / d, i % d);
                Cyclotomic::root_of_unity(n, -self.characters[a].values[g])
            })
            .collect();
        let hat_to_e = (0..d * d)
            .map(|i| {
                let (a, g) = (i / d, i % d);
                Cyclotomic::root_of_unity(n, self.characters[a].values[g]).mul(&inv_order)
            })
            .collect();
        (
            CyclotomicMatrix { n, dim: d, data: e_to_hat },
            CyclotomicMatrix { n, dim: d, data: hat_to_e },
        )
    }

    /// `ψ_β(ê_α) = ê_{αβ⁻¹}` as a permutation matrix.
    pub fn psi(&self, beta: &Character) -> Result<IntMatrix> {
        if beta.values.len() != self.dim() || self.index_of(beta).is_none() {
            return Err(Error::CharacterNotOfK);
        }
        let binv = beta.inv();
        let mut m = IntMatrix::zeros(self.dim(), self.dim());
        for (a, alpha) in self.characters.iter().enumerate() {
            let target = self.index_of(&alpha.mul(&binv)).ok_or(Error::CharacterNotOfK)?;
            m[(target, a)] = 1;
        }
        Ok(m)
    }

    /// `r^K_H(ê_α) = ê_{α|_H}`, a `|H*| × |K*|` matrix.
    pub fn restriction(&self, h: &GroupRing) -> Result<IntMatrix> {
        if !h.group.is_subgroup_of(&self.group) {
            return Err(Error::SubgroupNotInIso);
        }
        let mut m = IntMatrix::zeros(h.dim(), self.dim());
        for (a, alpha) in self.characters.iter().enumerate() {
            let r = self.group.restrict(alpha, &h.group)?;
            let idx = h.index_of(&r).ok_or(Error::CharacterNotOfK)?;
            m[(idx, a)] = 1;
        }
        Ok(m)
    }

    /// The lattice `E_K ∩ Z[K*]` cut out by all restrictions to proper
    /// isotropy subgroups of `K`.
    pub fn e_k_integral(&self, iso: &[DiagonalGroup]) -> Result<SubspaceLattice> {
        if !iso.contains(&self.group) {
            return Err(Error::SubgroupNotInIso);
        }
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for h in iso {
            if h == &self.group || !h.is_subgroup_of(&self.group) {
                continue;
            }
            let r = self.restriction(&GroupRing::new(h))?;
            for i in 0..r.rows() {
                rows.push(r.row(i).iter().map(|&x| BigInt::from(x)).collect());
            }
        }
        let ker = integer_kernel(&rows, self.dim());
        Ok(columns_to_lattice(self.dim(), &ker))
    }

    /// Orbits of `K*` under multiplication by `α_K`, each listed as
    /// `[a, aα, aα², …]` starting from the least character shifted by
    /// `shifts[i]` steps.
    pub fn age_orbits(&self, shifts: Option<&[usize]>) -> Vec<Vec<usize>> {
        let alpha = self.age_character();
        let mut seen = vec![false; self.dim()];
        let mut out = Vec::new();
        for start in 0..self.dim() {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut cur = self.characters[start].mul(&alpha);
            loop {
                let i = self.index_of(&cur).expect("closed under α");
                if i == start {
                    break;
                }
                seen[i] = true;
                orbit.push(i);
                cur = cur.mul(&alpha);
            }
            if let Some(s) = shifts {
                let k = s.get(out.len()).copied().unwrap_or(0) % orbit.len();
                orbit.rotate_left(k);
            }
            out.push(orbit);
        }
        out
    }

    /// `E_K^Z = E_K ∩ Z^{(p)}[K*]`: orbit sums divisible by `p_K`.
    pub fn e_k_lattice(&self, iso: &[DiagonalGroup]) -> Result<SubspaceLattice> {
        let ek = self.e_k_integral(iso)?;
        let p = BigInt::from(self.age_order() as i64);
        let orbits = self.age_orbits(None);
        let b = &ek.basis;
        let mm: Vec<Vec<BigInt>> = orbits
            .iter()
            .map(|o| (0..b.cols()).map(|c| BigInt::from(o.iter().map(|&i| b[(i, c)]).sum::<i64>())).collect())
            .collect();
        let ys = congruence_sublattice(&mm, b.cols(), &p);
        let vectors: Vec<Vec<BigInt>> = ys
            .iter()
            .map(|y| {
                (0..self.dim())
                    .map(|r| (0..b.cols()).fold(BigInt::zero(), |acc, c| acc + &y[c] * BigInt::from(b[(r, c)])))
                    .collect()
            })
            .collect();
        Ok(columns_to_lattice(self.dim(), &vectors))
    }
}

/// The Seifert block of one isotropy subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeifertBlock {
    pub p: usize,
    pub orbits: Vec<Vec<usize>>,
    /// Columns: `δ_1..δ_{p−1}, Σ` per orbit, in ê coordinates.
    pub orbit_basis: IntMatrix,
    /// `ℓ̂_K` on the orbit basis: `A_{p−1}` Seifert ⊕ `(−1)` per orbit.
    pub gram_hat: IntMatrix,
    pub i_diag: Vec<i64>,
    /// `E_K^Z` basis in orbit-basis coordinates.
    pub coords: IntMatrix,
    pub lattice: SubspaceLattice,
    /// `ℓ_K` on the `E_K^Z` basis.
    pub gram_restricted: IntMatrix,
}

impl SeifertBlock {
    pub fn build(ring: &GroupRing, iso: &[DiagonalGroup]) -> Result<Self> {
        Self::build_with_shifts(ring, iso, None)
    }

    /// Same as `build` with non-default orbit representatives.
    pub fn build_with_shifts(ring: &GroupRing, iso: &[DiagonalGroup], shifts: Option<&[usize]>) -> Result<Self> {
        let p = ring.age_order();
        let orbits = ring.age_orbits(shifts);
        let d = ring.dim();
        let mut cols: Vec<Vec<i64>> = Vec::with_capacity(d);
        let mut blocks = Vec::new();
        let mut i_diag = Vec::with_capacity(d);
        for orbit in &orbits {
            for j in 1..p {
                let mut v = vec![0i64; d];
                v[orbit[j]] += 1;
                v[orbit[j - 1]] -= 1;
                cols.push(v);
                i_diag.push(1);
            }
            let mut v = vec![0i64; d];
            for &i in orbit {
                v[i] = 1;
            }
            cols.push(v);
            i_diag.push(-1);
            blocks.push(a_series_seifert(p));
            blocks.push(IntMatrix::from_rows(vec![vec![-1]]));
        }
        let orbit_basis = IntMatrix::from_columns(d, &cols);
        let gram_hat = IntMatrix::block_diagonal(&blocks);
        let lattice = ring.e_k_lattice(iso)?;
        let coords = orbit_basis
            .to_rat()
            .solve(&lattice.basis.to_rat())
            .and_then(|c| c.to_int())
            .ok_or_else(|| Error::InvariantViolation("E_K lattice is not integral in the orbit basis".into()))?;
        let gram_restricted = gram_hat.congruence(&coords);
        if gram_restricted.det().is_zero() {
            return Err(Error::DegenerateRestriction);
        }
        Ok(SeifertBlock { p, orbits, orbit_basis, gram_hat, i_diag, coords, lattice, gram_restricted })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    fn t_inverse(&self) -> RatMatrix {
        self.orbit_basis.to_rat().inverse().expect("orbit basis is invertible")
    }

    /// `ℓ̂_K` in ê coordinates.
    pub fn gram_hat_e(&self) -> RatMatrix {
        let ti = self.t_inverse();
        self.gram_hat.to_rat().congruence(&ti)
    }

    /// The operator `I` in ê coordinates.
    pub fn i_operator_e(&self) -> RatMatrix {
        let t = self.orbit_basis.to_rat();
        let diag = RatMatrix::from_fn(self.i_diag.len(), self.i_diag.len(), |r, c| {
            if r == c {
                bq(self.i_diag[r])
            } else {
                bq(0)
            }
        });
        t.mul(&diag).mul(&self.t_inverse())
    }

    /// An operator `op` (ê coordinates) expressed on the `E_K^Z` basis, if
    /// it preserves the lattice span.
    pub fn on_lattice(&self, op: &RatMatrix) -> Option<RatMatrix> {
        let b = self.lattice.basis.to_rat();
        b.solve(&op.mul(&b))
    }

    /// `−I (Gᵀ)⁻¹ G` for a Gram matrix `G` and an operator `I` in the same basis.
    pub fn seifert_operator(i_op: &RatMatrix, gram: &RatMatrix) -> Option<RatMatrix> {
        Some(i_op.mul(&gram.transpose().inverse()?).mul(gram).neg())
    }

    /// Checks `ψ_{α_K} = −I ℓ̂⁻¹ ℓ̂ᵀ` on `C[K*]` and the same identity for
    /// `ℓ_K` on `E_K`.
    pub fn check_identities(&self, ring: &GroupRing) -> Result<IdentityReport> {
        let psi = ring.psi(&ring.age_character())?.to_rat();
        let i_op = self.i_operator_e();
        let on_ring = Self::seifert_operator(&i_op, &self.gram_hat_e()) == Some(psi.clone());
        let x_psi = self.on_lattice(&psi);
        let x_i = self.on_lattice(&i_op);
        let psi_integral = x_psi.as_ref().is_some_and(|x| x.is_integral());
        let on_lattice = match (&x_psi, &x_i) {
            (Some(xp), Some(xi)) => Self::seifert_operator(xi, &self.gram_restricted.to_rat()).as_ref() == Some(xp),
            _ => false,
        };
        Ok(IdentityReport { on_ring, on_lattice, psi_integral, i_preserves: x_i.is_some() })
    }

    /// `ψ_{α_K}` on the `E_K^Z` basis.
    pub fn psi_on_lattice(&self, ring: &GroupRing) -> Result<IntMatrix> {
        let psi = ring.psi(&ring.age_character())?.to_rat();
        self.on_lattice(&psi)
            .and_then(|x| x.to_int())
            .ok_or_else(|| Error::InvariantViolation("ψ_α does not preserve E_K^Z".into()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub on_ring: bool,
    pub on_lattice: bool,
    pub psi_integral: bool,
    pub i_preserves: bool,
}

impl IdentityReport {
    pub fn all(&self) -> bool {
        self.on_ring && self.on_lattice && self.psi_integral && self.i_preserves
    }
}

pub fn is_mutually_inverse(a: &CyclotomicMatrix, b: &CyclotomicMatrix) -> bool {
    a.mul(b).is_identity() && b.mul(a).is_identity()
}
