//! Classical equivariant Milnor lattices: A-series building blocks,
//! Sebastiani–Thom products, invariant sublattices and fixtures.
//!
//! Gram matrices follow `gram[i][j] = L(b_i, b_j)`; the monodromy in the
//! same basis is `(−1)^n (gramᵀ)⁻¹ gram`, which acts on A-series cycles as
//! `Δ_j ↦ Δ_{j−1}`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{fmt_rational, parse_rational, sign_pow, Q};
use crate::diagsym::{DiagonalGroup, Phase};
use crate::error::{Error, Result};
use crate::matrix::{big_rows_to_columns, integer_kernel, IntMatrix, RatMatrix};

/// Which power of the cyclic shift the phase `k/p` acts by on `A_{p−1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum ActionDirection {
    /// `shift^k`
    #[default]
    Forward,
    /// `shift^{−k}`
    Reverse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAction {
    pub element: Phase,
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantMilnorData {
    pub n_vars: usize,
    pub seifert: IntMatrix,
    pub actions: Vec<GroupAction>,
    pub labels: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantRestriction {
    pub rank: usize,
    /// Columns are the invariant lattice basis.
    pub basis: IntMatrix,
    pub gram: IntMatrix,
    pub det: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedForms {
    pub monodromy: RatMatrix,
    pub intersection: IntMatrix,
    pub det: BigInt,
}

/// Cyclic shift on `A_{p−1}`: `Δ_j ↦ Δ_{j−1}`, `Δ_1 ↦ −ΣΔ_j`.
pub fn a_series_shift(p: usize) -> IntMatrix {
    let mu = p.saturating_sub(1);
    IntMatrix::from_fn(mu, mu, |r, c| {
        if c == 0 {
            -1
        } else if r + 1 == c {
            1
        } else {
            0
        }
    })
}

/// Seifert matrix of `A_{p−1}`: `−1` on the diagonal, `+1` just above it.
pub fn a_series_seifert(p: usize) -> IntMatrix {
    let mu = p.saturating_sub(1);
    IntMatrix::from_fn(mu, mu, |r, c| {
        if r == c {
            -1
        } else if r + 1 == c {
            1
        } else {
            0
        }
    })
}

fn shift_power(p: usize, phase: Q, dir: ActionDirection) -> Result<IntMatrix> {
    let k = phase * Q::from_integer(p as i64);
    if !k.is_integer() {
        return Err(Error::PhaseDenominatorMismatch { phase: fmt_rational(&phase), exponent: p as u32 });
    }
    let k = k.to_integer().rem_euclid(p as i64) as u32;
    let k = match dir {
        ActionDirection::Forward => k,
        ActionDirection::Reverse => (p as u32 - k) % p as u32,
    };
    Ok(a_series_shift(p).pow(k))
}

/// `z^p` with the symmetries of the given phases.
pub fn a_singularity_with(p: usize, phases: &[Q], dir: ActionDirection) -> Result<EquivariantMilnorData> {
    assert!(p >= 1);
    let actions = phases
        .iter()
        .map(|&ph| Ok(GroupAction { element: vec![crate::arith::frac(ph)], matrix: shift_power(p, ph, dir)? }))
        .collect::<Result<_>>()?;
    Ok(EquivariantMilnorData {
        n_vars: 1,
        seifert: a_series_seifert(p),
        actions,
        labels: (1..p).map(|j| format!("d{j}")).collect(),
    })
}

/// `z^p` with the single symmetry `phase`.
pub fn a_singularity(p: usize, phase: Q) -> Result<EquivariantMilnorData> {
    a_singularity_with(p, &[phase], ActionDirection::Forward)
}

/// The rank-one lattice attached to zero variables, with Seifert matrix
/// `(sign)` and trivial actions.
pub fn point(sign: i64, n_actions: usize) -> EquivariantMilnorData {
    EquivariantMilnorData {
        n_vars: 0,
        seifert: IntMatrix::from_rows(vec![vec![sign]]),
        actions: (0..n_actions).map(|_| GroupAction { element: Vec::new(), matrix: IntMatrix::identity(1) }).collect(),
        labels: vec!["pt".to_string()],
    }
}

/// Sebastiani–Thom sum: tensor basis in row-major order and Seifert matrix
/// `(−1)^{mn} L₁ ⊗ L₂`.
pub fn sebastiani_thom(a: &EquivariantMilnorData, b: &EquivariantMilnorData) -> Result<EquivariantMilnorData> {
    if a.actions.len() != b.actions.len() {
        return Err(Error::ActionGroupMismatch);
    }
    let sign = sign_pow((a.n_vars * b.n_vars) as i64);
    let actions = a
        .actions
        .iter()
        .zip(&b.actions)
        .map(|(x, y)| {
            let mut element = x.element.clone();
            element.extend(y.element.iter().cloned());
            GroupAction { element, matrix: x.matrix.kron(&y.matrix) }
        })
        .collect();
    let labels = a
        .labels
        .iter()
        .flat_map(|x| b.labels.iter().map(move |y| format!("{x}*{y}")))
        .collect();
    Ok(EquivariantMilnorData {
        n_vars: a.n_vars + b.n_vars,
        seifert: a.seifert.kron(&b.seifert).scale(&sign),
        actions,
        labels,
    })
}

/// `Σ z_j^{a_j}` with the symmetries of `g`, one action per generator.
pub fn brieskorn_pham_with(
    exponents: &[i64],
    g: &DiagonalGroup,
    dir: ActionDirection,
    empty_sign: i64,
) -> Result<EquivariantMilnorData> {
    let gens = g.generators();
    if exponents.is_empty() {
        return Ok(point(empty_sign, gens.len()));
    }
    if g.n_vars() != exponents.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} exponents for a group on {} variables",
            exponents.len(),
            g.n_vars()
        )));
    }
    let factor = |j: usize| {
        let phases: Vec<Q> = gens.iter().map(|x| x[j]).collect();
        a_singularity_with(exponents[j] as usize, &phases, dir)
    };
    let mut acc = factor(0)?;
    for j in 1..exponents.len() {
        acc = sebastiani_thom(&acc, &factor(j)?)?;
    }
    Ok(acc)
}

pub fn brieskorn_pham(exponents: &[i64], g: &DiagonalGroup) -> Result<EquivariantMilnorData> {
    brieskorn_pham_with(exponents, g, ActionDirection::Forward, -1)
}

/// `(−1)^n (Lᵀ)⁻¹ L`, `−L + (−1)^n Lᵀ` and `det L` for a Gram matrix `L`.
pub fn derived_forms(seifert: &IntMatrix, n_vars: usize) -> Result<DerivedForms> {
    let det = seifert.det();
    if det.is_zero() {
        return Err(Error::SingularSeifertMatrix);
    }
    let s = sign_pow(n_vars as i64);
    let l = seifert.to_rat();
    let monodromy = l
        .transpose()
        .inverse()
        .ok_or(Error::SingularSeifertMatrix)?
        .mul(&l)
        .scale(&crate::arith::bq(s));
    let intersection = seifert.neg().add(&seifert.transpose().scale(&s));
    Ok(DerivedForms { monodromy, intersection, det })
}

impl EquivariantMilnorData {
    pub fn mu(&self) -> usize {
        self.seifert.rows()
    }

    pub fn derived_forms(&self) -> Result<DerivedForms> {
        derived_forms(&self.seifert, self.n_vars)
    }

    /// Checks shapes, that actions commute pairwise and with the monodromy.
    pub fn validate(&self) -> Result<()> {
        let mu = self.mu();
        if !self.seifert.is_square() {
            return Err(Error::InvariantViolation("Seifert matrix is not square".into()));
        }
        if !self.labels.is_empty() && self.labels.len() != mu {
            return Err(Error::InvariantViolation(format!("{} labels for rank {mu}", self.labels.len())));
        }
        for a in &self.actions {
            if a.matrix.rows() != mu || a.matrix.cols() != mu {
                return Err(Error::InvariantViolation("action matrix has wrong size".into()));
            }
            if a.matrix.det().is_zero() {
                return Err(Error::InvariantViolation("action matrix is singular".into()));
            }
            if self.seifert.congruence(&a.matrix) != self.seifert {
                return Err(Error::InvariantViolation("action does not preserve the Seifert form".into()));
            }
        }
        for a in &self.actions {
            for b in &self.actions {
                if a.matrix.mul(&b.matrix) != b.matrix.mul(&a.matrix) {
                    return Err(Error::InvariantViolation("actions do not commute".into()));
                }
            }
        }
        let phi = self.derived_forms()?.monodromy;
        for a in &self.actions {
            let m = a.matrix.to_rat();
            if m.mul(&phi) != phi.mul(&m) {
                return Err(Error::InvariantViolation("action does not commute with the monodromy".into()));
            }
        }
        Ok(())
    }

    /// Saturated lattice of vectors fixed by every action, with the
    /// restricted Seifert form.
    pub fn invariant_part(&self) -> InvariantRestriction {
        let mu = self.mu();
        let mut rows: Vec<Vec<BigInt>> = Vec::new();
        for a in &self.actions {
            for r in 0..mu {
                rows.push((0..mu).map(|c| BigInt::from(a.matrix[(r, c)] - (r == c) as i64)).collect());
            }
        }
        let kernel = integer_kernel(&rows, mu);
        let basis = big_rows_to_columns(mu, &kernel).expect("kernel entries fit in i64");
        let gram = self.seifert.congruence(&basis);
        let det = gram.det();
        InvariantRestriction { rank: basis.cols(), basis, gram, det }
    }

    /// The monodromy restricted to the invariant lattice, in its basis.
    pub fn restricted_monodromy(&self, inv: &InvariantRestriction) -> Result<RatMatrix> {
        let phi = self.derived_forms()?.monodromy;
        let b = inv.basis.to_rat();
        b.solve(&phi.mul(&b))
            .ok_or_else(|| Error::InvariantViolation("monodromy does not preserve the invariant part".into()))
    }
}

/// Monodromy of a Gram matrix alone: `(−1)^n (Gᵀ)⁻¹ G`.
pub fn monodromy_of_gram(gram: &IntMatrix, n_vars: usize) -> Result<RatMatrix> {
    Ok(derived_forms(gram, n_vars)?.monodromy)
}

/// Classical data of one isotropy sector, reduced to what the orbifold
/// assembly needs: the invariant Seifert Gram matrix and the monodromy on
/// the invariant lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorLattice {
    pub n_vars: usize,
    pub gram: IntMatrix,
    pub monodromy: RatMatrix,
    pub source: String,
}

impl SectorLattice {
    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn from_gram(n_vars: usize, gram: IntMatrix, source: &str) -> Result<Self> {
        let monodromy = monodromy_of_gram(&gram, n_vars)?;
        Ok(SectorLattice { n_vars, gram, monodromy, source: source.to_string() })
    }

    pub fn from_data(m: &EquivariantMilnorData, source: &str) -> Result<Self> {
        let inv = m.invariant_part();
        let monodromy = m.restricted_monodromy(&inv)?;
        Ok(SectorLattice { n_vars: m.n_vars, gram: inv.gram, monodromy, source: source.to_string() })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureAction {
    pub element: Vec<String>,
    pub matrix: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureInvariant {
    pub gram: Vec<Vec<i64>>,
    pub rank: usize,
}

/// On-disk fixture document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MilnorFixture {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub polynomial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    pub n_vars: usize,
    pub mu: usize,
    #[serde(default)]
    pub seifert: Vec<Vec<i64>>,
    #[serde(default)]
    pub actions: Vec<FixtureAction>,
    #[serde(default)]
    pub labels: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariant_only: Option<FixtureInvariant>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expected_det: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixtureData {
    Full(EquivariantMilnorData),
    InvariantOnly { n_vars: usize, mu: usize, gram: IntMatrix },
}

impl FixtureData {
    pub fn n_vars(&self) -> usize {
        match self {
            FixtureData::Full(m) => m.n_vars,
            FixtureData::InvariantOnly { n_vars, .. } => *n_vars,
        }
    }

    /// Gram matrix of the Seifert form on the invariant lattice.
    pub fn invariant_gram(&self) -> IntMatrix {
        match self {
            FixtureData::Full(m) => m.invariant_part().gram,
            FixtureData::InvariantOnly { gram, .. } => gram.clone(),
        }
    }

    pub fn sector_lattice(&self, source: &str) -> Result<SectorLattice> {
        match self {
            FixtureData::Full(m) => SectorLattice::from_data(m, source),
            FixtureData::InvariantOnly { n_vars, gram, .. } => SectorLattice::from_gram(*n_vars, gram.clone(), source),
        }
    }
}

fn int_matrix(rows: &[Vec<i64>], what: &str) -> Result<IntMatrix> {
    IntMatrix::try_from_rows(rows.to_vec()).map_err(|e| Error::Schema(format!("{what}: {e}")))
}

/// Parses and validates a fixture document.
pub fn load_milnor_fixture(doc: &str) -> Result<(MilnorFixture, FixtureData)> {
    let fx: MilnorFixture = serde_json::from_str(doc).map_err(|e| Error::Schema(e.to_string()))?;
    let data = fixture_data(&fx)?;
    Ok((fx, data))
}

pub fn fixture_data(fx: &MilnorFixture) -> Result<FixtureData> {
    if let Some(inv) = &fx.invariant_only {
        let gram = int_matrix(&inv.gram, "invariant_only.gram")?;
        if !gram.is_square() || gram.rows() != inv.rank {
            return Err(Error::Schema(format!("invariant gram is not {0}×{0}", inv.rank)));
        }
        if inv.rank > fx.mu {
            return Err(Error::InvariantViolation(format!("invariant rank {} exceeds mu {}", inv.rank, fx.mu)));
        }
        let det = gram.det();
        if det.is_zero() {
            return Err(Error::InvariantViolation("invariant Gram matrix is singular".into()));
        }
        if let Some(e) = fx.expected_det {
            if det != BigInt::from(e) {
                return Err(Error::InvariantViolation(format!("determinant {det} differs from recorded {e}")));
            }
        }
        return Ok(FixtureData::InvariantOnly { n_vars: fx.n_vars, mu: fx.mu, gram });
    }
    let seifert = int_matrix(&fx.seifert, "seifert")?;
    if !seifert.is_square() || seifert.rows() != fx.mu {
        return Err(Error::Schema(format!("seifert is not {0}×{0}", fx.mu)));
    }
    let actions = fx
        .actions
        .iter()
        .map(|a| {
            let element = a
                .element
                .iter()
                .map(|s| parse_rational(s).ok_or_else(|| Error::Schema(format!("bad rational {s:?}"))))
                .collect::<Result<_>>()?;
            Ok(GroupAction { element, matrix: int_matrix(&a.matrix, "action")? })
        })
        .collect::<Result<_>>()?;
    let m = EquivariantMilnorData { n_vars: fx.n_vars, seifert, actions, labels: fx.labels.clone() };
    m.validate()?;
    if let Some(e) = fx.expected_det {
        let det = m.invariant_part().det;
        if det != BigInt::from(e) {
            return Err(Error::InvariantViolation(format!("determinant {det} differs from recorded {e}")));
        }
    }
    Ok(FixtureData::Full(m))
}

/// Serialises full data back into the fixture schema.
pub fn save_milnor_fixture(m: &EquivariantMilnorData) -> MilnorFixture {
    MilnorFixture {
        name: None,
        polynomial: None,
        group: None,
        n_vars: m.n_vars,
        mu: m.mu(),
        seifert: m.seifert.to_rows(),
        actions: m
            .actions
            .iter()
            .map(|a| FixtureAction { element: a.element.iter().map(fmt_rational).collect(), matrix: a.matrix.to_rows() })
            .collect(),
        labels: m.labels.clone(),
        invariant_only: None,
        expected_det: None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: Vec<Vec<i64>>) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn a1_and_a2() {
        let a1 = a_singularity(2, Q::from_integer(0)).unwrap();
        assert_eq!(a1.seifert, im(vec![vec![-1]]));
        assert_eq!(a1.derived_forms().unwrap().monodromy, im(vec![vec![-1]]).to_rat());
        let a2 = a_singularity(3, Q::from_integer(0)).unwrap();
        assert_eq!(a2.seifert, im(vec![vec![-1, 1], vec![0, -1]]));
        assert_eq!(a2.actions[0].matrix, IntMatrix::identity(2));
    }

    #[test]
    fn a4_shift_action() {
        let a4 = a_singularity(5, Q::new(1, 5)).unwrap();
        let m = &a4.actions[0].matrix;
        assert_eq!(m.column(1), vec![1, 0, 0, 0]);
        assert_eq!(m.column(0), vec![-1, -1, -1, -1]);
        assert!(matches!(a_singularity(5, Q::new(1, 3)), Err(Error::PhaseDenominatorMismatch { .. })));
    }

    #[test]
    fn a_series_monodromy_is_the_shift() {
        for p in 2..8 {
            let m = a_singularity(p, Q::from_integer(0)).unwrap();
            let phi = m.derived_forms().unwrap().monodromy;
            assert_eq!(phi, a_series_shift(p).to_rat());
            assert_eq!(phi.order(20), Some(p as u32));
        }
    }

    #[test]
    fn gabrielov_pattern_for_x3_y6() {
        let g = DiagonalGroup::generated_by(2, &[vec![Q::new(1, 3), Q::new(2, 3)]]);
        let m = brieskorn_pham(&[3, 6], &g).unwrap();
        assert_eq!(m.mu(), 10);
        m.validate().unwrap();
        let idx = |i: usize, j: usize| i * 5 + j;
        let l = &m.seifert;
        assert_eq!(l[(idx(0, 0), idx(0, 0))], -1);
        assert_eq!(l[(idx(0, 2), idx(1, 2))], 1);
        assert_eq!(l[(idx(0, 2), idx(0, 3))], 1);
        assert_eq!(l[(idx(0, 2), idx(1, 3))], -1);
        assert_eq!(l[(idx(1, 2), idx(0, 2))], 0);
        let inv = m.invariant_part();
        assert_eq!(inv.rank, 4);
        assert_eq!(inv.det, BigInt::from(27));
    }

    #[test]
    fn full_cyclic_action_on_a5_has_no_invariants() {
        let m = a_singularity(6, Q::new(1, 6)).unwrap();
        let inv = m.invariant_part();
        assert_eq!(inv.rank, 0);
        assert_eq!(inv.det, BigInt::from(1));
    }

    #[test]
    fn restricted_monodromy_matches_gram_formula() {
        let g = DiagonalGroup::generated_by(2, &[vec![Q::new(1, 3), Q::new(2, 3)]]);
        let m = brieskorn_pham(&[3, 6], &g).unwrap();
        let inv = m.invariant_part();
        let x = m.restricted_monodromy(&inv).unwrap();
        assert_eq!(x, monodromy_of_gram(&inv.gram, 2).unwrap());
    }

    #[test]
    fn fixture_round_trip() {
        let g = DiagonalGroup::generated_by(2, &[vec![Q::new(1, 2), Q::from_integer(0)]]);
        let m = brieskorn_pham(&[2, 5], &g).unwrap();
        let doc = serde_json::to_string(&save_milnor_fixture(&m)).unwrap();
        let (_, data) = load_milnor_fixture(&doc).unwrap();
        assert_eq!(data, FixtureData::Full(m));
    }

    #[test]
    fn fixture_errors() {
        assert!(matches!(load_milnor_fixture("{"), Err(Error::Schema(_))));
        let bad = r#"{"n_vars":1,"mu":1,"seifert":[],"invariant_only":{"gram":[[0]],"rank":1}}"#;
        assert!(matches!(load_milnor_fixture(bad), Err(Error::InvariantViolation(_))));
    }
}
