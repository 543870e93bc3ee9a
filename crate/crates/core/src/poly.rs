//! Polynomials over the rationals.
//!
//! Coefficient index equals degree, trailing zeros are trimmed, and the zero
//! polynomial has an empty coefficient vector. Includes the characteristic
//! polynomial (Faddeev-LeVerrier, division-free up to one exact scalar
//! division per step) and exhaustive rational root extraction with
//! multiplicities via the rational root theorem and exact deflation.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rational::Rational;
use num::bigint::BigInt;
use num::traits::{One, Signed, Zero};
use num::Integer;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Dense univariate rational polynomial.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// The monomial `c * x^deg`.
    pub fn monomial(deg: usize, c: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); deg + 1];
        coeffs[deg] = c;
        Polynomial::from_coeffs(coeffs)
    }

    /// Builds from coefficients (index = degree), trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Horner evaluation at a rational point.
    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc * x + c;
        }
        acc
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix(&self, m: &Matrix) -> Matrix {
        assert!(m.is_square(), "polynomial of a non-square matrix");
        let n = m.rows();
        let mut acc = Matrix::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * m) + &Matrix::identity(n).scale(c);
        }
        acc
    }

    /// Monic rescaling; the zero polynomial stays zero.
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => Polynomial::zero(),
        }
    }

    /// Euclidean division: returns `(q, r)` with `self = q * d + r` and
    /// `deg r < deg d`. Panics if `d` is zero.
    pub fn div_rem(&self, d: &Polynomial) -> (Polynomial, Polynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        let lead_inv = d.leading().unwrap().recip();
        let mut rem = self.clone();
        let mut q = vec![Rational::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let factor = rem.leading().unwrap() * &lead_inv;
            let shift = rd - dd;
            q[shift] = factor.clone();
            let mut new = rem.coeffs.clone();
            for (k, c) in d.coeffs.iter().enumerate() {
                new[shift + k] = &new[shift + k] - &(c * &factor);
            }
            rem = Polynomial::from_coeffs(new);
        }
        (Polynomial::from_coeffs(q), rem)
    }

    /// Synthetic division by `(x - r)`: returns the quotient and the
    /// remainder scalar `self(r)`.
    pub fn deflate(&self, r: &Rational) -> (Polynomial, Rational) {
        if self.is_zero() {
            return (Polynomial::zero(), Rational::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![Rational::zero(); n - 1];
        let mut carry = Rational::zero();
        for k in (0..n).rev() {
            let v = &self.coeffs[k] + &(&carry * r);
            if k == 0 {
                return (Polynomial::from_coeffs(q), v);
            }
            q[k - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::from_coeffs((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Polynomial::from_coeffs(coeffs)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})x")?,
                _ => write!(f, "({c})x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Extended Euclid over `Q[x]`: returns `(g, u, v)` with `u*a + v*b = g`
/// and `g` monic (or zero when both inputs are zero).
pub fn extended_gcd(a: &Polynomial, b: &Polynomial) -> (Polynomial, Polynomial, Polynomial) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (Polynomial::one(), Polynomial::zero());
    let (mut t0, mut t1) = (Polynomial::zero(), Polynomial::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
        (t0, t1) = (t1, t);
    }
    match r0.leading() {
        Some(l) => {
            let inv = l.recip();
            (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
        }
        None => (r0, s0, t0),
    }
}

impl Matrix {
    /// Characteristic polynomial `det(xI - M)`, monic of degree `n`, by the
    /// Faddeev-LeVerrier recurrence.
    pub fn char_poly(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows(),
                cols: self.cols(),
            });
        }
        let n = self.rows();
        let mut coeffs = vec![Rational::zero(); n + 1];
        coeffs[n] = Rational::one();
        let mut m = Matrix::identity(n);
        for k in 1..=n {
            let prod = self * &m;
            let c = -(prod.trace() / Rational::from_integer(BigInt::from(k as i64)));
            m = &prod + &Matrix::identity(n).scale(&c);
            coeffs[n - k] = c;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// All rational roots of a nonzero polynomial, with multiplicities, sorted
/// ascending. Constants (and the zero polynomial) have no reported roots.
pub fn rational_roots(p: &Polynomial) -> Vec<(Rational, usize)> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }

    let mut roots: Vec<(Rational, usize)> = Vec::new();
    let mut work = p.clone();

    // peel off x^k first so the constant term below is nonzero
    let low = work
        .coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .expect("nonzero polynomial");
    if low > 0 {
        roots.push((Rational::zero(), low));
        work = Polynomial::from_coeffs(work.coeffs()[low..].to_vec());
    }

    if work.degree() == Some(0) {
        return roots;
    }

    // integerize: clear denominators and content
    let denom_lcm = work
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = work
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    let content = ints
        .iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let ints: Vec<BigInt> = ints.iter().map(|c| c / &content).collect();

    let lead = ints.last().unwrap().abs();
    let consts = ints.first().unwrap().abs();
    let mut candidates: Vec<Rational> = Vec::new();
    for p_div in divisors(&consts) {
        for q_div in divisors(&lead) {
            let c = Rational::new(p_div.clone(), q_div.clone());
            for cand in [c.clone(), -c] {
                if !candidates.contains(&cand) {
                    candidates.push(cand);
                }
            }
        }
    }
    candidates.sort();

    for cand in candidates {
        let mut mult = 0;
        while work.degree().is_some_and(|d| d >= 1) {
            let (q, rem) = work.deflate(&cand);
            if !rem.is_zero() {
                break;
            }
            work = q;
            mult += 1;
        }
        if mult > 0 {
            roots.push((cand, mult));
        }
        if work.degree().is_none_or(|d| d == 0) {
            break;
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    roots
}

/// Positive divisors of `|n|` (trial division; composite tails beyond the
/// trial bound are treated as prime, which can only widen the candidate set
/// for moderate inputs).
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut n = n.abs();
    if n.is_zero() {
        return vec![BigInt::one()];
    }
    let mut factors: Vec<(BigInt, u32)> = Vec::new();
    let mut d = BigInt::from(2u32);
    let bound = BigInt::from(1u64 << 21);
    while &(&d * &d) <= &n && d < bound {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n = &n / &d;
            e += 1;
        }
        if e > 0 {
            factors.push((d.clone(), e));
        }
        d += 1u32;
    }
    if n > BigInt::one() {
        factors.push((n, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let mut next = Vec::new();
        for d in &divs {
            let mut pk = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pk);
                pk = &pk * &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    divs
}
