//! Equivariant spectral data: graded character series of Milnor algebras,
//! sector dimensions, monodromy zeta functions and E-functions.
//!
//! A sector state is a pair `(g, ℓ)` with `ℓ = (k + Σ_{Fix g} w_j)/d` for a
//! `G`-invariant (volume-twisted) class of degree `k` in the Milnor algebra
//! of `f` restricted to the fixed locus of `g`.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use crate::arith::{frac, Q};
use crate::diagsym::{age, fixed_coordinates, Character, DiagonalGroup, Phase};
use crate::error::{Error, Result};
use crate::polyring::InvertiblePolynomial;

/// `Σ_k Σ_χ m_{k,χ} χ T^k`, indexed by degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivariantSeries {
    pub terms: Vec<BTreeMap<Character, i64>>,
}

impl EquivariantSeries {
    pub fn total_dimension(&self) -> i64 {
        self.terms.iter().flat_map(|t| t.values()).sum()
    }

    pub fn degree_dimensions(&self) -> Vec<i64> {
        self.terms.iter().map(|t| t.values().sum()).collect()
    }
}

type Poly = Vec<BTreeMap<Character, i64>>;

fn add_term(p: &mut Poly, k: usize, chi: Character, m: i64) {
    if m == 0 {
        return;
    }
    if p.len() <= k {
        p.resize(k + 1, BTreeMap::new());
    }
    *p[k].entry(chi).or_insert(0) += m;
    p[k].retain(|_, v| *v != 0);
}

/// `p · (1 − c T^w)`.
fn mul_binomial(p: &Poly, c: &Character, w: usize) -> Poly {
    let mut out = p.clone();
    for (k, t) in p.iter().enumerate() {
        for (chi, m) in t {
            add_term(&mut out, k + w, chi.mul(c), -m);
        }
    }
    out
}

/// `p / (1 − c T^w)`, if exact.
fn div_binomial(p: &Poly, c: &Character, w: usize) -> Option<Poly> {
    let mut q: Poly = vec![BTreeMap::new(); p.len()];
    for k in 0..p.len() {
        let mut t = p[k].clone();
        if k >= w {
            for (chi, m) in &q[k - w] {
                *t.entry(chi.mul(c)).or_insert(0) += m;
            }
        }
        t.retain(|_, m| *m != 0);
        q[k] = t;
    }
    let deg = p.len().checked_sub(1)?;
    if (deg + 1).saturating_sub(w) < q.len() && q[(deg + 1).saturating_sub(w)..].iter().any(|t| !t.is_empty()) {
        return None;
    }
    q.truncate((deg + 1).saturating_sub(w).max(1));
    Some(q)
}

/// Graded `G`-character series of the Milnor algebra of `f` restricted to
/// the coordinates `vars`, using the weights of `f`.
pub fn equivariant_series(f: &InvertiblePolynomial, g: &DiagonalGroup, vars: &[usize]) -> Result<EquivariantSeries> {
    let ws = f.weight_system()?;
    let d = ws.degree as usize;
    let triv = Character::trivial(g.order());
    let mut p: Poly = vec![BTreeMap::from([(triv, 1)])];
    for &j in vars {
        let chi = g.coordinate_character(j);
        p = mul_binomial(&p, &chi.inv(), d - ws.weights[j] as usize);
    }
    for &j in vars {
        let chi = g.coordinate_character(j);
        p = div_binomial(&p, &chi, ws.weights[j] as usize).ok_or(Error::NonIsolatedSingularity)?;
    }
    if p.iter().flat_map(|t| t.values()).any(|&m| m < 0) {
        return Err(Error::NonIsolatedSingularity);
    }
    Ok(EquivariantSeries { terms: p })
}

/// Options that select between conventions the theory leaves open.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpectraOptions {
    /// Count `H⁰` of a zero-dimensional Milnor fibre unreduced.
    pub unreduced_curves: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SectorSpectrum {
    #[serde(serialize_with = "ser_phase")]
    pub element: Phase,
    #[serde(serialize_with = "ser_q")]
    pub age: Q,
    pub n_fixed: usize,
    pub fixed: Vec<usize>,
    /// Exponents `ℓ` of the invariant states.
    #[serde(serialize_with = "ser_qs")]
    pub exponents: Vec<Q>,
}

fn ser_q<S: serde::Serializer>(x: &Q, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&crate::arith::fmt_rational(x))
}

fn ser_qs<S: serde::Serializer>(x: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(x.iter().map(crate::arith::fmt_rational))
}

fn ser_phase<S: serde::Serializer>(x: &Phase, s: S) -> std::result::Result<S::Ok, S::Error> {
    ser_qs(x, s)
}

impl SectorSpectrum {
    pub fn dim(&self) -> usize {
        self.exponents.len()
    }
}

/// Exponents of the `G`-invariant states on the fixed locus `fixed`.
pub fn invariant_exponents(
    f: &InvertiblePolynomial,
    g: &DiagonalGroup,
    fixed: &[usize],
    opts: SpectraOptions,
) -> Result<Vec<Q>> {
    if fixed.is_empty() {
        return Ok(vec![Q::zero()]);
    }
    let ws = f.weight_system()?;
    let series = equivariant_series(f, g, fixed)?;
    let twist = fixed
        .iter()
        .fold(Character::trivial(g.order()), |acc, &j| acc.mul(&g.coordinate_character(j)));
    let shift: i64 = fixed.iter().map(|&j| ws.weights[j]).sum();
    let mut out = Vec::new();
    for (k, t) in series.terms.iter().enumerate() {
        for (chi, &m) in t {
            if chi.mul(&twist).is_trivial() {
                for _ in 0..m {
                    out.push(Q::new(k as i64 + shift, ws.degree));
                }
            }
        }
    }
    if opts.unreduced_curves && fixed.len() == 1 {
        out.insert(0, Q::zero());
    }
    Ok(out)
}

/// Invariant states of every sector `g ∈ G`, in element order.
pub fn sector_spectra(f: &InvertiblePolynomial, g: &DiagonalGroup, opts: SpectraOptions) -> Result<Vec<SectorSpectrum>> {
    let mut cache: HashMap<Vec<usize>, Vec<Q>> = HashMap::new();
    let mut out = Vec::with_capacity(g.order());
    for x in g.elements() {
        let fixed = fixed_coordinates(x);
        let exps = match cache.get(&fixed) {
            Some(e) => e.clone(),
            None => {
                let e = invariant_exponents(f, g, &fixed, opts)?;
                cache.insert(fixed.clone(), e.clone());
                e
            }
        };
        out.push(SectorSpectrum { element: x.clone(), age: age(x), n_fixed: fixed.len(), fixed, exponents: exps });
    }
    Ok(out)
}

pub fn sector_dimensions(f: &InvertiblePolynomial, g: &DiagonalGroup, opts: SpectraOptions) -> Result<Vec<(Phase, usize)>> {
    Ok(sector_spectra(f, g, opts)?.into_iter().map(|s| (s.element.clone(), s.dim())).collect())
}

pub fn total_dimension(spectra: &[SectorSpectrum]) -> usize {
    spectra.iter().map(|s| s.dim()).sum()
}

/// `Π_c (1 − e^{2πic} t)^{m_c}` stored as `c ↦ m_c`, `c ∈ [0,1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CyclotomicCount(#[serde(serialize_with = "ser_count")] pub BTreeMap<Q, i64>);

fn ser_count<S: serde::Serializer>(x: &BTreeMap<Q, i64>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(x.iter().map(|(k, v)| (crate::arith::fmt_rational(k), v)))
}

impl CyclotomicCount {
    pub fn add(&mut self, c: Q, m: i64) {
        let e = self.0.entry(frac(c)).or_insert(0);
        *e += m;
        if *e == 0 {
            self.0.remove(&frac(c));
        }
    }

    pub fn merge(&mut self, o: &CyclotomicCount) {
        for (&c, &m) in &o.0 {
            self.add(c, m);
        }
    }

    /// `t ↦ e^{2πia} t`.
    pub fn shifted(&self, a: Q) -> CyclotomicCount {
        let mut out = CyclotomicCount::default();
        for (&c, &m) in &self.0 {
            out.add(c + a, m);
        }
        out
    }

    pub fn inverse(&self) -> CyclotomicCount {
        CyclotomicCount(self.0.iter().map(|(&c, &m)| (c, -m)).collect())
    }

    pub fn degree(&self) -> i64 {
        self.0.values().sum()
    }
}

/// Zeta function of one sector: `(1 − t)` for `H⁰` and the middle states
/// with sign `(−1)^{n_g−1}`; empty for `n_g = 0`.
pub fn sector_zeta(s: &SectorSpectrum) -> CyclotomicCount {
    let mut z = CyclotomicCount::default();
    if s.n_fixed == 0 {
        return z;
    }
    z.add(Q::zero(), 1);
    let sign = crate::arith::sign_pow(s.n_fixed as i64 - 1);
    for &l in &s.exponents {
        z.add(l, sign);
    }
    z
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZetaReport {
    pub sectors: Vec<CyclotomicCount>,
    pub orbifold: CyclotomicCount,
    pub reduced: CyclotomicCount,
}

pub fn zeta_functions(spectra: &[SectorSpectrum]) -> ZetaReport {
    let sectors: Vec<CyclotomicCount> = spectra.iter().map(sector_zeta).collect();
    let mut orbifold = CyclotomicCount::default();
    let mut reduced = CyclotomicCount::default();
    for (s, z) in spectra.iter().zip(&sectors) {
        let shifted = z.shifted(-s.age);
        orbifold.merge(&shifted);
        reduced.merge(&shifted);
        reduced.add(-s.age, -1);
    }
    ZetaReport { sectors, orbifold, reduced }
}

/// `(parity, p, q) ↦ multiplicity`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BigradedCount(pub BTreeMap<(u8, Q, Q), i64>);

impl BigradedCount {
    pub fn total(&self) -> i64 {
        self.0.values().sum()
    }

    /// `t ↦ t⁻¹`: `(p, q) ↦ (n − p, q)`, swapping parity when `n` is odd.
    pub fn dual_image(&self, n: usize) -> BigradedCount {
        let nq = Q::from_integer(n as i64);
        let mut out = BTreeMap::new();
        for (&(i, p, q), &m) in &self.0 {
            let j = if n % 2 == 1 { 1 - i } else { i };
            *out.entry((j, nq - p, q)).or_insert(0) += m;
        }
        BigradedCount(out)
    }
}

impl Serialize for BigradedCount {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Entry {
            parity: u8,
            p: String,
            q: String,
            mult: i64,
        }
        s.collect_seq(self.0.iter().map(|(&(parity, p, q), &mult)| Entry {
            parity,
            p: crate::arith::fmt_rational(&p),
            q: crate::arith::fmt_rational(&q),
            mult,
        }))
    }
}

/// States at `(n_g − ℓ + age, ℓ + age)` in parity class `n_g mod 2`.
pub fn e_functions(spectra: &[SectorSpectrum]) -> BigradedCount {
    let mut out = BTreeMap::new();
    for s in spectra {
        let ng = Q::from_integer(s.n_fixed as i64);
        let parity = (s.n_fixed % 2) as u8;
        for &l in &s.exponents {
            let key = if s.n_fixed == 0 { (parity, s.age, s.age) } else { (parity, ng - l + s.age, l + s.age) };
            *out.entry(key).or_insert(0) += 1;
        }
    }
    BigradedCount(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub rank: usize,
    pub dual_rank: usize,
    pub rank_equal: bool,
    pub e_function_identity: bool,
    pub zeta_identity: bool,
}

impl DualityReport {
    pub fn all(&self) -> bool {
        self.rank_equal && self.e_function_identity && self.zeta_identity
    }
}

/// Compares `(f, G)` with `(f̃, G̃)`.
pub fn duality_report(
    f: &InvertiblePolynomial,
    g: &DiagonalGroup,
    opts: SpectraOptions,
) -> Result<DualityReport> {
    let ft = f.transpose_dual();
    let gt = crate::diagsym::dual_group(f, g);
    let s1 = sector_spectra(f, g, opts)?;
    let s2 = sector_spectra(&ft, &gt, opts)?;
    let n = f.n_vars();
    let (r1, r2) = (total_dimension(&s1), total_dimension(&s2));
    let e_ok = e_functions(&s1).dual_image(n) == e_functions(&s2);
    let z1 = zeta_functions(&s1).reduced;
    let z2 = zeta_functions(&s2).reduced;
    let zeta_ok = if n.is_multiple_of(2) { z1 == z2 } else { z1.inverse() == z2 };
    Ok(DualityReport { rank: r1, dual_rank: r2, rank_equal: r1 == r2, e_function_identity: e_ok, zeta_identity: zeta_ok })
}

/// `ζ̄` multiset predicted by the characteristic polynomials of monodromy
/// blocks: each block's eigenvalue exponents enter with sign `(−1)^{n_K−1}`.
pub fn signed_eigenvalue_count(blocks: &[(usize, BTreeMap<Q, i64>)]) -> CyclotomicCount {
    let mut out = CyclotomicCount::default();
    for (n_k, exps) in blocks {
        let sign = crate::arith::sign_pow(*n_k as i64 - 1);
        for (&c, &m) in exps {
            out.add(c, sign * m);
        }
    }
    out
}

/// Helper for tests and reports: `Σ` of a count restricted to one key.
pub fn multiplicity(c: &CyclotomicCount, key: Q) -> i64 {
    c.0.get(&frac(key)).copied().unwrap_or(0)
}
