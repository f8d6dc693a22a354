//! Invertible polynomials: parsing, weight systems, Milnor numbers, atom
//! classification and the Berglund–Hübsch transpose.
//!
//! Coefficients are always 1; a polynomial is its variable list plus the
//! square exponent matrix whose row `i` is the exponent vector of monomial `i`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{big_rat_to_q, lcm_all, Q};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvertiblePolynomial {
    var_names: Vec<String>,
    exponents: IntMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightSystem {
    pub weights: Vec<i64>,
    pub degree: i64,
}

impl WeightSystem {
    /// Normalised weight `w_j / d`.
    pub fn q(&self, j: usize) -> Q {
        Q::new(self.weights[j], self.degree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AtomKind {
    Fermat,
    Chain,
    Loop,
}

/// One Kreuzer–Skarke block. `vars[i]` carries the exponent `exponents[i]`
/// in monomial `rows[i]`; for chains the tail of `vars[i]` is `vars[i+1]`,
/// for loops it wraps around.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub exponents: Vec<i64>,
    pub vars: Vec<usize>,
    pub rows: Vec<usize>,
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            AtomKind::Fermat => "Fermat",
            AtomKind::Chain => "Chain",
            AtomKind::Loop => "Loop",
        };
        let e: Vec<String> = self.exponents.iter().map(|x| x.to_string()).collect();
        write!(f, "{name}({})", e.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomDecomposition {
    pub atoms: Vec<Atom>,
}

impl fmt::Display for AtomDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join("+"))
    }
}

const DEFAULT_NAMES: [&str; 8] = ["x", "y", "z", "w", "u", "v", "s", "t"];

impl InvertiblePolynomial {
    /// Validates the exponent matrix: square, nonsingular, at most two
    /// nonzero entries per row, a Fermat/chain/loop decomposition and a
    /// positive weight system.
    pub fn new(var_names: Vec<String>, exponents: IntMatrix) -> Result<Self> {
        if !exponents.is_square() || exponents.rows() != var_names.len() {
            return Err(Error::MonomialCountMismatch {
                monomials: exponents.rows(),
                vars: var_names.len(),
            });
        }
        if var_names.len() > crate::diagsym::MAX_VARS {
            return Err(Error::TooManyVariables(var_names.len()));
        }
        if exponents.entries().any(|&e| e < 0) {
            return Err(Error::NotInvertibleType);
        }
        if exponents.det().is_zero() {
            return Err(Error::SingularExponentMatrix);
        }
        let f = InvertiblePolynomial { var_names, exponents };
        f.weight_system()?;
        f.atoms()?;
        Ok(f)
    }

    /// Polynomial with default variable names `x, y, z, …`.
    pub fn from_exponents(rows: Vec<Vec<i64>>) -> Result<Self> {
        let n = rows.len();
        let names = DEFAULT_NAMES.iter().take(n).map(|s| s.to_string()).collect();
        let m = IntMatrix::try_from_rows(rows).map_err(Error::Schema)?;
        Self::new(names, m)
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_polynomial(text)
    }

    pub fn n_vars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn exponents(&self) -> &IntMatrix {
        &self.exponents
    }

    pub fn exponent_det(&self) -> i64 {
        use num_traits::ToPrimitive;
        self.exponents.det().to_i64().expect("small determinant")
    }

    /// Unique primitive positive solution of `E·w = d·(1,…,1)`.
    pub fn weight_system(&self) -> Result<WeightSystem> {
        let n = self.n_vars();
        let ones = crate::matrix::RatMatrix::from_fn(n, 1, |_, _| BigRational::one());
        let sol = self
            .exponents
            .to_rat()
            .solve(&ones)
            .ok_or(Error::SingularExponentMatrix)?;
        let q: Vec<Q> = (0..n)
            .map(|j| big_rat_to_q(&sol[(j, 0)]).ok_or(Error::NoPositiveSolution))
            .collect::<Result<_>>()?;
        if q.iter().any(|x| *x <= Q::zero()) {
            return Err(Error::NoPositiveSolution);
        }
        let degree = lcm_all(q.iter().map(|x| *x.denom()));
        let weights = q.iter().map(|x| (x * Q::from_integer(degree)).to_integer()).collect();
        Ok(WeightSystem { weights, degree })
    }

    /// Normalised weights `q_j = w_j / d`.
    pub fn q_weights(&self) -> Vec<Q> {
        let ws = self.weight_system().expect("validated polynomial");
        (0..self.n_vars()).map(|j| ws.q(j)).collect()
    }

    /// Milnor number `Π (1/q_j − 1)`.
    pub fn milnor_number(&self) -> Result<i64> {
        let mu = self
            .q_weights()
            .iter()
            .fold(Q::one(), |acc, q| acc * (q.recip() - Q::one()));
        if !mu.is_integer() || mu <= Q::zero() {
            return Err(Error::NonIntegerMilnorNumber(crate::arith::fmt_rational(&mu)));
        }
        Ok(mu.to_integer())
    }

    pub fn milnor_number_and_atoms(&self) -> Result<(i64, AtomDecomposition)> {
        Ok((self.milnor_number()?, self.atoms()?))
    }

    /// Berglund–Hübsch transpose: exponent matrix transposed, same names.
    pub fn transpose_dual(&self) -> InvertiblePolynomial {
        InvertiblePolynomial {
            var_names: self.var_names.clone(),
            exponents: self.exponents.transpose(),
        }
    }

    /// Restriction to the coordinate subspace spanned by `vars` (sorted
    /// indices). Only monomials supported on `vars` survive; for an
    /// invariant fixed-point subspace of a diagonal symmetry there are
    /// exactly `|vars|` of them.
    pub fn restrict(&self, vars: &[usize]) -> Option<InvertiblePolynomial> {
        let rows: Vec<usize> = (0..self.n_vars())
            .filter(|&i| {
                (0..self.n_vars()).all(|j| self.exponents[(i, j)] == 0 || vars.contains(&j))
                    && (0..self.n_vars()).any(|j| self.exponents[(i, j)] != 0)
            })
            .collect();
        if rows.len() != vars.len() {
            return None;
        }
        let m = IntMatrix::from_fn(rows.len(), vars.len(), |r, c| self.exponents[(rows[r], vars[c])]);
        let names = vars.iter().map(|&j| self.var_names[j].clone()).collect();
        InvertiblePolynomial::new(names, m).ok()
    }

    /// Exponents `a_j` (in variable order) when every monomial is a pure
    /// power `z_j^{a_j}`.
    pub fn fermat_exponents(&self) -> Option<Vec<i64>> {
        let n = self.n_vars();
        let mut out = vec![0; n];
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| self.exponents[(i, j)] != 0).collect();
            if nz.len() != 1 {
                return None;
            }
            out[nz[0]] = self.exponents[(i, nz[0])];
        }
        Some(out)
    }

    /// Classifies the polynomial into Fermat, chain and loop blocks by
    /// following "monomial ↦ tail variable" pointers.
    pub fn atoms(&self) -> Result<AtomDecomposition> {
        let n = self.n_vars();
        let e = &self.exponents;
        // per row: list of (main, tail) candidates
        let mut options: Vec<Vec<(usize, Option<usize>)>> = Vec::with_capacity(n);
        for i in 0..n {
            let nz: Vec<usize> = (0..n).filter(|&j| e[(i, j)] != 0).collect();
            let opts = match nz.as_slice() {
                [u] => vec![(*u, None)],
                [u, v] => {
                    let mut o = Vec::new();
                    if e[(i, *v)] == 1 {
                        o.push((*u, Some(*v)));
                    }
                    if e[(i, *u)] == 1 {
                        o.push((*v, Some(*u)));
                    }
                    // prefer the assignment whose main exponent is larger
                    o.sort_by_key(|&(m, _)| std::cmp::Reverse(e[(i, m)]));
                    o
                }
                _ => Vec::new(),
            };
            if opts.is_empty() {
                return Err(Error::NotInvertibleType);
            }
            options.push(opts);
        }
        let choice = search_assignment(&options, 0, &mut vec![None; n], &mut vec![false; n], &mut vec![false; n])
            .ok_or(Error::NotInvertibleType)?;

        let main_row: Vec<usize> = {
            let mut v = vec![0; n];
            for (i, &(m, _)) in choice.iter().enumerate() {
                v[m] = i;
            }
            v
        };
        let tail_of = |var: usize| choice[main_row[var]].1;
        let mut has_pred = vec![false; n];
        for &(_, t) in &choice {
            if let Some(t) = t {
                has_pred[t] = true;
            }
        }
        let mut seen = vec![false; n];
        let mut atoms = Vec::new();
        // chains and Fermat blocks start at variables without predecessor
        for start in 0..n {
            if has_pred[start] || seen[start] {
                continue;
            }
            let mut vars = vec![start];
            seen[start] = true;
            let mut cur = start;
            while let Some(t) = tail_of(cur) {
                vars.push(t);
                seen[t] = true;
                cur = t;
            }
            let kind = if vars.len() == 1 { AtomKind::Fermat } else { AtomKind::Chain };
            atoms.push(make_atom(kind, vars, &main_row, e));
        }
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut vars = vec![start];
            seen[start] = true;
            let mut cur = start;
            while let Some(t) = tail_of(cur) {
                if t == start {
                    break;
                }
                vars.push(t);
                seen[t] = true;
                cur = t;
            }
            atoms.push(make_atom(AtomKind::Loop, vars, &main_row, e));
        }
        atoms.sort_by_key(|a| *a.vars.iter().min().unwrap());
        Ok(AtomDecomposition { atoms })
    }
}

fn make_atom(kind: AtomKind, vars: Vec<usize>, main_row: &[usize], e: &IntMatrix) -> Atom {
    let rows: Vec<usize> = vars.iter().map(|&v| main_row[v]).collect();
    let exponents = vars.iter().zip(&rows).map(|(&v, &r)| e[(r, v)]).collect();
    Atom { kind, exponents, vars, rows }
}

fn search_assignment(
    options: &[Vec<(usize, Option<usize>)>],
    i: usize,
    chosen: &mut Vec<Option<(usize, Option<usize>)>>,
    main_used: &mut Vec<bool>,
    tail_used: &mut Vec<bool>,
) -> Option<Vec<(usize, Option<usize>)>> {
    if i == options.len() {
        return Some(chosen.iter().map(|c| c.unwrap()).collect());
    }
    for &(m, t) in &options[i] {
        if main_used[m] || t.is_some_and(|t| tail_used[t]) {
            continue;
        }
        main_used[m] = true;
        if let Some(t) = t {
            tail_used[t] = true;
        }
        chosen[i] = Some((m, t));
        if let Some(r) = search_assignment(options, i + 1, chosen, main_used, tail_used) {
            return Some(r);
        }
        main_used[m] = false;
        if let Some(t) = t {
            tail_used[t] = false;
        }
        chosen[i] = None;
    }
    None
}

impl fmt::Display for InvertiblePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n_vars();
        let monos: Vec<String> = (0..n)
            .map(|i| {
                let factors: Vec<String> = (0..n)
                    .filter(|&j| self.exponents[(i, j)] != 0)
                    .map(|j| match self.exponents[(i, j)] {
                        1 => self.var_names[j].clone(),
                        k => format!("{}^{}", self.var_names[j], k),
                    })
                    .collect();
                factors.join("*")
            })
            .collect();
        write!(f, "{}", monos.join(" + "))
    }
}

/// Builds a polynomial from atoms given as `(kind, exponents)`; blocks are
/// laid out consecutively with default variable names.
pub fn from_atoms(atoms: &[(AtomKind, Vec<i64>)]) -> Result<InvertiblePolynomial> {
    let n: usize = atoms.iter().map(|(_, e)| e.len()).sum();
    let mut rows = vec![vec![0i64; n]; n];
    let mut off = 0;
    for (kind, exps) in atoms {
        let k = exps.len();
        for (i, &a) in exps.iter().enumerate() {
            rows[off + i][off + i] = a;
            match kind {
                AtomKind::Fermat => {}
                AtomKind::Chain => {
                    if i + 1 < k {
                        rows[off + i][off + i + 1] = 1;
                    }
                }
                AtomKind::Loop => {
                    rows[off + i][off + (i + 1) % k] += 1;
                }
            }
        }
        off += k;
    }
    InvertiblePolynomial::from_exponents(rows)
}

/// Parses `monomial (+ monomial)*`, each monomial a `*`-product of `v` or
/// `v^k`. Variables are ordered by first appearance.
pub fn parse_polynomial(text: &str) -> Result<InvertiblePolynomial> {
    let mut names: Vec<String> = Vec::new();
    let mut monomials: Vec<Vec<(usize, i64)>> = Vec::new();
    let bytes = text.as_bytes();
    let mut pos = 0usize;
    let err = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        let mut mono = Vec::new();
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            if start == pos || bytes[start].is_ascii_digit() {
                return Err(err(start, "expected variable name"));
            }
            let name = &text[start..pos];
            skip_ws(&mut pos);
            let mut exp = 1i64;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                skip_ws(&mut pos);
                let s = pos;
                while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                    pos += 1;
                }
                exp = text[s..pos].parse().map_err(|_| err(s, "expected exponent"))?;
                if exp < 1 {
                    return Err(err(s, "exponent must be at least 1"));
                }
                skip_ws(&mut pos);
            }
            let idx = match names.iter().position(|n| n == name) {
                Some(i) => i,
                None => {
                    names.push(name.to_string());
                    names.len() - 1
                }
            };
            mono.push((idx, exp));
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                continue;
            }
            break;
        }
        monomials.push(mono);
        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'+' {
            return Err(err(pos, "expected '+', '*' or end of input"));
        }
        pos += 1;
    }
    let n = names.len();
    if monomials.len() != n {
        return Err(Error::MonomialCountMismatch { monomials: monomials.len(), vars: n });
    }
    let mut rows = vec![vec![0i64; n]; n];
    for (i, mono) in monomials.iter().enumerate() {
        for &(j, e) in mono {
            rows[i][j] += e;
        }
    }
    if rows.iter().enumerate().any(|(i, r)| rows[..i].contains(r)) {
        return Err(Error::SingularExponentMatrix);
    }
    let m = IntMatrix::from_rows(rows);
    InvertiblePolynomial::new(names, m)
}

/// `|det E|` as a big integer (the order of the maximal symmetry group).
pub fn exponent_det_abs(f: &InvertiblePolynomial) -> BigInt {
    use num_traits::Signed;
    f.exponents().det().abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(f: &InvertiblePolynomial) -> Vec<Vec<i64>> {
        f.exponents().to_rows()
    }

    #[test]
    fn parses_loop_and_chain_examples() {
        assert_eq!(rows(&parse_polynomial("x^2*y + y^5").unwrap()), vec![vec![2, 1], vec![0, 5]]);
        assert_eq!(rows(&parse_polynomial("x^3*y + x*y^5").unwrap()), vec![vec![3, 1], vec![1, 5]]);
        assert_eq!(rows(&parse_polynomial("x^2").unwrap()), vec![vec![2]]);
        assert_eq!(rows(&parse_polynomial(" y^5+x^2 * y ").unwrap()), vec![vec![5, 0], vec![1, 2]]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_polynomial("x^2 + "), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^2 + y^3 + x*y"), Err(Error::MonomialCountMismatch { .. })));
        assert!(matches!(parse_polynomial("x^2*y^2 + x*y"), Err(Error::SingularExponentMatrix)));
        assert!(matches!(parse_polynomial("2*x"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^0"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_polynomial("x^2 - y"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn weight_systems() {
        let ws = parse_polynomial("x^2*y + y^5").unwrap().weight_system().unwrap();
        assert_eq!((ws.weights.clone(), ws.degree), (vec![2, 1], 5));
        let ws = parse_polynomial("x^3*y + x*y^5").unwrap().weight_system().unwrap();
        assert_eq!((ws.weights.clone(), ws.degree), (vec![2, 1], 7));
        let ws = parse_polynomial("x^3*y + y^4").unwrap().weight_system().unwrap();
        assert_eq!((ws.weights.clone(), ws.degree), (vec![1, 1], 4));
    }

    #[test]
    fn transposes() {
        let f = parse_polynomial("x^2*y + y^5").unwrap();
        assert_eq!(f.transpose_dual().to_string(), "x^2 + x*y^5");
        let f = parse_polynomial("x^3*y + x*y^5").unwrap();
        assert_eq!(f.transpose_dual(), f);
        let f = parse_polynomial("x^3*y + y^4").unwrap();
        assert_eq!(f.transpose_dual().to_string(), "x^3 + x*y^4");
    }

    #[test]
    fn milnor_numbers_and_atoms() {
        let (mu, a) = parse_polynomial("x^3*y + x*y^5").unwrap().milnor_number_and_atoms().unwrap();
        assert_eq!((mu, a.to_string()), (15, "Loop(3,5)".to_string()));
        let (mu, a) = parse_polynomial("x^2*y + y^5").unwrap().milnor_number_and_atoms().unwrap();
        assert_eq!((mu, a.to_string()), (6, "Chain(2,5)".to_string()));
        let (mu, a) = parse_polynomial("x^3 + y^6").unwrap().milnor_number_and_atoms().unwrap();
        assert_eq!((mu, a.to_string()), (10, "Fermat(3)+Fermat(6)".to_string()));
        let (_, a) = parse_polynomial("x^3 + x*y^4").unwrap().milnor_number_and_atoms().unwrap();
        assert_eq!(a.to_string(), "Chain(4,3)");
    }

    #[test]
    fn from_atoms_round_trip() {
        let f = from_atoms(&[(AtomKind::Loop, vec![3, 5])]).unwrap();
        assert_eq!(f, parse_polynomial("x^3*y + x*y^5").unwrap());
        let f = from_atoms(&[(AtomKind::Fermat, vec![2]), (AtomKind::Chain, vec![2, 3])]).unwrap();
        assert_eq!(f.atoms().unwrap().to_string(), "Fermat(2)+Chain(2,3)");
    }

    #[test]
    fn restriction_to_fixed_coordinates() {
        let f = parse_polynomial("x^2*y + y^5").unwrap();
        assert_eq!(f.restrict(&[1]).unwrap().to_string(), "y^5");
        assert!(f.restrict(&[0]).is_none());
        assert_eq!(f.restrict(&[0, 1]).unwrap(), f);
    }
}
