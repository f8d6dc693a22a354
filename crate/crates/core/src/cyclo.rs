//! Cyclotomic polynomials, cyclotomic factorisation of characteristic
//! polynomials, and exact arithmetic in `Q(ζ_N)`.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::Q;

/// Dense polynomial over `Q`, coefficients from degree 0 upward.
pub type RatPoly = Vec<BigRational>;

fn trim(p: &mut RatPoly) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

pub fn poly_mul(a: &RatPoly, b: &RatPoly) -> RatPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

/// Division with remainder by a nonzero polynomial.
pub fn poly_divrem(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly) {
    let mut r = a.clone();
    trim(&mut r);
    let mut b = b.clone();
    trim(&mut b);
    assert!(!b.is_empty(), "division by zero polynomial");
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            let v = &r[shift + i] - &f * c;
            r[shift + i] = v;
        }
        q[shift] = f;
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// The `n`-th cyclotomic polynomial `Φ_n`, by dividing `x^n − 1` by `Φ_d`
/// for every proper divisor `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> RatPoly {
    assert!(n >= 1);
    let mut p: RatPoly = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            p = poly_divrem(&p, &cyclotomic_poly(d)).0;
        }
    }
    p
}

/// Multiplicities of `Φ_d` in a monic polynomial whose roots are all roots
/// of unity. Returns `None` if some factor is not cyclotomic.
pub fn cyclotomic_factorization(poly: &RatPoly) -> Option<BTreeMap<u64, usize>> {
    let mut p = poly.clone();
    trim(&mut p);
    let mut out = BTreeMap::new();
    let mut d = 1u64;
    while p.len() > 1 {
        // φ(d) ≤ deg p forces d ≤ 2·deg² for the degrees in play
        if d > 4 * (p.len() as u64).pow(2) + 8 {
            return None;
        }
        let phi = cyclotomic_poly(d);
        loop {
            let (q, r) = poly_divrem(&p, &phi);
            if !r.is_empty() {
                break;
            }
            p = q;
            *out.entry(d).or_insert(0) += 1;
        }
        d += 1;
    }
    Some(out)
}

/// Expands `Φ_d` multiplicities into eigenvalue exponents `k/d` in `[0,1)`.
pub fn exponents_of_factorization(f: &BTreeMap<u64, usize>) -> BTreeMap<Q, i64> {
    let mut out = BTreeMap::new();
    for (&d, &m) in f {
        for k in 0..d {
            if k.gcd(&d) == 1 {
                *out.entry(Q::new(k as i64, d as i64)).or_insert(0) += m as i64;
            }
        }
    }
    out
}

/// An element of `Q(ζ_N)`, stored as a polynomial in `ζ_N` reduced modulo
/// `Φ_N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    n: u64,
    coeffs: RatPoly,
}

impl Cyclotomic {
    pub fn zero(n: u64) -> Self {
        Cyclotomic { n, coeffs: Vec::new() }
    }

    pub fn rational(n: u64, x: BigRational) -> Self {
        let mut c = vec![x];
        trim(&mut c);
        Cyclotomic { n, coeffs: c }
    }

    /// `exp(2πi·x)` for a phase `x` whose denominator divides `n`.
    pub fn root_of_unity(n: u64, x: Q) -> Self {
        let k = crate::arith::frac(x) * Q::from_integer(n as i64);
        assert!(k.is_integer(), "phase denominator must divide the field order");
        let mut c = vec![BigRational::zero(); k.to_integer() as usize + 1];
        c[k.to_integer() as usize] = BigRational::one();
        Cyclotomic { n, coeffs: c }.reduced()
    }

    fn reduced(mut self) -> Self {
        self.coeffs = poly_divrem(&self.coeffs, &cyclotomic_poly(self.n)).1;
        self
    }

    pub fn add(&self, o: &Self) -> Self {
        let len = self.coeffs.len().max(o.coeffs.len());
        let mut c = vec![BigRational::zero(); len];
        for (i, x) in self.coeffs.iter().enumerate() {
            c[i] += x;
        }
        for (i, x) in o.coeffs.iter().enumerate() {
            c[i] += x;
        }
        trim(&mut c);
        Cyclotomic { n: self.n, coeffs: c }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Cyclotomic { n: self.n, coeffs: poly_mul(&self.coeffs, &o.coeffs) }.reduced()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }
}

/// Square matrix over `Q(ζ_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicMatrix {
    pub n: u64,
    pub dim: usize,
    pub data: Vec<Cyclotomic>,
}

impl CyclotomicMatrix {
    pub fn get(&self, r: usize, c: usize) -> &Cyclotomic {
        &self.data[r * self.dim + c]
    }

    pub fn mul(&self, o: &Self) -> Self {
        let d = self.dim;
        let mut data = Vec::with_capacity(d * d);
        for r in 0..d {
            for c in 0..d {
                let mut acc = Cyclotomic::zero(self.n);
                for k in 0..d {
                    acc = acc.add(&self.get(r, k).mul(o.get(k, c)));
                }
                data.push(acc);
            }
        }
        CyclotomicMatrix { n: self.n, dim: d, data }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|r| {
            (0..self.dim).all(|c| {
                let x = self.get(r, c);
                if r == c {
                    x.is_one()
                } else {
                    x.is_zero()
                }
            })
        })
    }
}
