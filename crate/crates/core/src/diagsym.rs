//! Finite groups of diagonal symmetries, their characters, ages and
//! isotropy stratification.
//!
//! A group element is a phase vector `r ∈ [0,1)^n` acting by
//! `z_j ↦ exp(2πi r_j) z_j`. Characters of a group are stored as their
//! values in `Q/Z` on the group's sorted element list.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::arith::{frac, lcm_all, q_to_big, Q};
use crate::error::{Error, Result};
use crate::polyring::InvertiblePolynomial;

pub const MAX_VARS: usize = 8;

pub type Phase = Vec<Q>;

pub fn phase_add(a: &[Q], b: &[Q]) -> Phase {
    a.iter().zip(b).map(|(x, y)| frac(x + y)).collect()
}

pub fn phase_neg(a: &[Q]) -> Phase {
    a.iter().map(|x| frac(-x)).collect()
}

pub fn phase_to_string(g: &[Q]) -> String {
    let parts: Vec<String> = g.iter().map(crate::arith::fmt_rational).collect();
    format!("({})", parts.join(","))
}

/// Coordinates fixed by `g`.
pub fn fixed_coordinates(g: &[Q]) -> Vec<usize> {
    (0..g.len()).filter(|&j| g[j].is_zero()).collect()
}

/// Age `Σ r_j`.
pub fn age(g: &[Q]) -> Q {
    g.iter().fold(Q::zero(), |a, x| a + x)
}

/// Order of a phase vector.
pub fn element_order(g: &[Q]) -> i64 {
    lcm_all(g.iter().map(|x| *x.denom()))
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DiagonalGroup {
    n: usize,
    elements: Vec<Phase>,
}

impl fmt::Debug for DiagonalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|g| phase_to_string(g)).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

impl DiagonalGroup {
    pub fn trivial(n: usize) -> Self {
        DiagonalGroup { n, elements: vec![vec![Q::zero(); n]] }
    }

    /// Subgroup of the torus generated by the given phase vectors.
    pub fn generated_by(n: usize, gens: &[Phase]) -> Self {
        let gens: Vec<Phase> = gens.iter().map(|g| g.iter().map(|x| frac(*x)).collect()).collect();
        let zero = vec![Q::zero(); n];
        let mut seen: BTreeSet<Phase> = BTreeSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = phase_add(&x, g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        DiagonalGroup { n, elements: seen.into_iter().collect() }
    }

    /// Maximal group `G_f = {r : E·r ∈ Z^n}`, generated by the columns of `E⁻¹`.
    pub fn maximal(f: &InvertiblePolynomial) -> Self {
        let n = f.n_vars();
        let inv = f.exponents().to_rat().inverse().expect("nonsingular exponent matrix");
        let gens: Vec<Phase> = (0..n)
            .map(|c| (0..n).map(|r| crate::arith::big_rat_to_q(&inv[(r, c)]).unwrap()).collect())
            .collect();
        let g = Self::generated_by(n, &gens);
        debug_assert_eq!(g.order() as i64, f.exponent_det().abs());
        g
    }

    /// Cyclic group generated by the exponential grading operator
    /// `(q_1, …, q_n)`.
    pub fn grading(f: &InvertiblePolynomial) -> Self {
        Self::generated_by(f.n_vars(), &[grading_element(f)])
    }

    pub fn n_vars(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Phase] {
        &self.elements
    }

    pub fn index_of(&self, g: &[Q]) -> Option<usize> {
        self.elements.binary_search_by(|e| e.as_slice().cmp(g)).ok()
    }

    pub fn contains(&self, g: &[Q]) -> bool {
        self.index_of(g).is_some()
    }

    pub fn is_subgroup_of(&self, other: &DiagonalGroup) -> bool {
        self.elements.iter().all(|g| other.contains(g))
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// Coordinates fixed by every element.
    pub fn fixed_coordinates(&self) -> Vec<usize> {
        (0..self.n).filter(|&j| self.elements.iter().all(|g| g[j].is_zero())).collect()
    }

    /// The subgroup `{g : r_j = 0 for j ∈ s}`.
    pub fn pointwise_stabilizer(&self, s: &[usize]) -> DiagonalGroup {
        DiagonalGroup {
            n: self.n,
            elements: self.elements.iter().filter(|g| s.iter().all(|&j| g[j].is_zero())).cloned().collect(),
        }
    }

    /// A generating set, chosen greedily in element order.
    pub fn generators(&self) -> Vec<Phase> {
        let mut gens: Vec<Phase> = Vec::new();
        let mut span = DiagonalGroup::trivial(self.n);
        for g in &self.elements {
            if !span.contains(g) {
                gens.push(g.clone());
                span = DiagonalGroup::generated_by(self.n, &gens);
            }
        }
        gens
    }

    pub fn is_cyclic(&self) -> bool {
        let ord = self.order() as i64;
        self.elements.iter().any(|g| element_order(g) == ord)
    }

    /// Coordinate characters `g ↦ r_j(g)`.
    pub fn coordinate_character(&self, j: usize) -> Character {
        Character { values: self.elements.iter().map(|g| g[j]).collect() }
    }

    /// The age character `g ↦ age(g) mod 1`.
    pub fn age_character(&self) -> Character {
        Character { values: self.elements.iter().map(|g| frac(age(g))).collect() }
    }

    /// All characters, sorted, with the trivial one first.
    pub fn characters(&self) -> Vec<Character> {
        let gens: Vec<Character> = (0..self.n).map(|j| self.coordinate_character(j)).collect();
        let triv = Character::trivial(self.order());
        let mut seen: BTreeSet<Character> = BTreeSet::from([triv.clone()]);
        let mut queue = VecDeque::from([triv]);
        while let Some(x) = queue.pop_front() {
            for g in &gens {
                let y = x.mul(g);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        debug_assert_eq!(seen.len(), self.order());
        seen.into_iter().collect()
    }

    /// Restriction of a character of `self` to a subgroup.
    pub fn restrict(&self, chi: &Character, sub: &DiagonalGroup) -> Result<Character> {
        if chi.values.len() != self.order() {
            return Err(Error::CharacterNotOfK);
        }
        let values = sub
            .elements
            .iter()
            .map(|h| self.index_of(h).map(|i| chi.values[i]).ok_or(Error::GroupNotSubgroupOfGf))
            .collect::<Result<_>>()?;
        Ok(Character { values })
    }

    /// Isotropy subgroups `K_S = {g : r_j = 0, j ∈ S}` over all coordinate
    /// subsets, deduplicated and sorted by `(|K|, elements)`.
    pub fn isotropy_subgroups(&self) -> Vec<DiagonalGroup> {
        let mut out: BTreeSet<(usize, DiagonalGroup)> = BTreeSet::new();
        for mask in 0u32..(1 << self.n) {
            let s: Vec<usize> = (0..self.n).filter(|j| mask >> j & 1 == 1).collect();
            let k = self.pointwise_stabilizer(&s);
            out.insert((k.order(), k));
        }
        out.into_iter().map(|(_, k)| k).collect()
    }

    /// Isotropy sectors: each subgroup `K` with the elements `g` whose
    /// fixed locus has isotropy exactly `K`.
    pub fn isotropy_sectors(&self) -> Vec<IsotropySector> {
        self.isotropy_subgroups()
            .into_iter()
            .filter_map(|k| {
                let fixed = k.fixed_coordinates();
                let interior: Vec<Phase> = self
                    .elements
                    .iter()
                    .filter(|g| self.pointwise_stabilizer(&fixed_coordinates(g)) == k)
                    .cloned()
                    .collect();
                (!interior.is_empty()).then_some(IsotropySector { group: k, fixed, interior })
            })
            .collect()
    }

    /// All subgroups, sorted by `(|H|, elements)`.
    pub fn subgroups(&self) -> Vec<DiagonalGroup> {
        let mut found: BTreeSet<(usize, DiagonalGroup)> = BTreeSet::new();
        let triv = DiagonalGroup::trivial(self.n);
        found.insert((1, triv.clone()));
        let mut queue = VecDeque::from([triv]);
        while let Some(h) = queue.pop_front() {
            for g in &self.elements {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.elements.clone();
                gens.push(g.clone());
                let k = DiagonalGroup::generated_by(self.n, &gens);
                if found.insert((k.order(), k.clone())) {
                    queue.push_back(k);
                }
            }
        }
        found.into_iter().map(|(_, k)| k).collect()
    }
}

/// Exponential grading element `(q_1, …, q_n)`.
pub fn grading_element(f: &InvertiblePolynomial) -> Phase {
    f.q_weights()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsotropySector {
    pub group: DiagonalGroup,
    pub fixed: Vec<usize>,
    pub interior: Vec<Phase>,
}

impl IsotropySector {
    pub fn n_fixed(&self) -> usize {
        self.fixed.len()
    }
}

/// A character, as its values in `Q/Z` on the sorted element list of its
/// group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub values: Vec<Q>,
}

impl Character {
    pub fn trivial(order: usize) -> Self {
        Character { values: vec![Q::zero(); order] }
    }

    pub fn mul(&self, o: &Character) -> Character {
        Character { values: self.values.iter().zip(&o.values).map(|(a, b)| frac(a + b)).collect() }
    }

    pub fn inv(&self) -> Character {
        Character { values: self.values.iter().map(|a| frac(-a)).collect() }
    }

    pub fn pow(&self, k: i64) -> Character {
        Character { values: self.values.iter().map(|a| frac(a * Q::from_integer(k))).collect() }
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(Zero::is_zero)
    }

    pub fn order(&self) -> i64 {
        element_order(&self.values)
    }
}

/// Berglund–Hübsch–Henningson dual group
/// `{h ∈ G_{fᵀ} : hᵀ·E·g ∈ Z for all g ∈ G}`.
pub fn dual_group(f: &InvertiblePolynomial, g: &DiagonalGroup) -> DiagonalGroup {
    let ft = f.transpose_dual();
    let e = f.exponents().to_rat();
    let gmax = DiagonalGroup::maximal(&ft);
    let images: Vec<Vec<num_rational::BigRational>> = g
        .elements
        .iter()
        .map(|x| e.mul_vec(&x.iter().map(q_to_big).collect::<Vec<_>>()))
        .collect();
    let elements = gmax
        .elements
        .iter()
        .filter(|h| {
            images.iter().all(|eg| {
                let s = h
                    .iter()
                    .zip(eg)
                    .fold(num_rational::BigRational::zero(), |acc, (a, b)| acc + q_to_big(a) * b);
                s.is_integer()
            })
        })
        .cloned()
        .collect();
    DiagonalGroup { n: g.n, elements }
}

/// Parses a group description against `f`: `max`, `J`, `trivial`, or a
/// `;`-separated list of generators such as `1/2,0; 2/5,1/5`.
pub fn parse_group(f: &InvertiblePolynomial, text: &str) -> Result<DiagonalGroup> {
    let gmax = DiagonalGroup::maximal(f);
    let n = f.n_vars();
    match text.trim() {
        "max" | "G_f" => return Ok(gmax),
        "J" => return Ok(DiagonalGroup::grading(f)),
        "trivial" | "1" => return Ok(DiagonalGroup::trivial(n)),
        _ => {}
    }
    let mut gens = Vec::new();
    for part in text.split(';') {
        let g: Vec<Q> = part
            .split(',')
            .map(|s| {
                crate::arith::parse_rational(s)
                    .map(frac)
                    .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("bad phase {s:?}") })
            })
            .collect::<Result<_>>()?;
        if g.len() != n {
            return Err(Error::DimensionMismatch(format!("generator {} has {} entries, expected {n}", part.trim(), g.len())));
        }
        if !gmax.contains(&g) {
            return Err(Error::GeneratorNotInGf(phase_to_string(&g)));
        }
        gens.push(g);
    }
    Ok(DiagonalGroup::generated_by(n, &gens))
}
