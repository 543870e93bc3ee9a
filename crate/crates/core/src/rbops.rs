//! Truncated Rota-Baxter operators on `k[x]` and `x k[x]`, and the module
//! axiom connecting them to matrix pairs.
//!
//! A monomial operator of weight `λ` on the polynomial ring is one of four
//! families (plus the restriction to polynomials without constant term):
//!
//! * `P1`: `x^n -> (-λ)^(1-n) b^n` for a nonzero parameter `b`,
//! * `P2`: `x^n -> -λ x^n`,
//! * `P3`: like `P2` but killing constants,
//! * `P4`: `1 -> -λ`, everything else to zero,
//! * `XKx`: `x^n -> -λ x^n` on `x k[x]` (no constants allowed).
//!
//! All images have degree at most `n`, so the Rota-Baxter identity and the
//! module axiom close inside the degree-`N` truncation and every check below
//! is exact, not approximate.
//!
//! A module over the pair is a matrix pair `(A, B)`: `A` is the action of
//! `x`, `B` the action of the operator on the module side. The axiom
//! `P(r)p(v) = p(P(r)v) + p(r p(v)) + λ p(r v)` instantiated at `r = x^m`
//! becomes the matrix identity `C_m B = B C_m + B A^m B + λ B A^m`, where
//! `C_m` is the image of `x^m` evaluated at `A`.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::Polynomial;
use crate::rational::{display, Rational};
use num::traits::{One, Zero};

/// Default truncation degree for identity and axiom sweeps.
pub const DEFAULT_TRUNCATION: usize = 12;

/// The five monomial operator families of nonzero weight.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorFamily {
    P1,
    P2,
    P3,
    P4,
    XKx,
}

impl OperatorFamily {
    pub fn name(&self) -> &'static str {
        match self {
            OperatorFamily::P1 => "P1",
            OperatorFamily::P2 => "P2",
            OperatorFamily::P3 => "P3",
            OperatorFamily::P4 => "P4",
            OperatorFamily::XKx => "XKx",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "p1" => Ok(OperatorFamily::P1),
            "p2" => Ok(OperatorFamily::P2),
            "p3" => Ok(OperatorFamily::P3),
            "p4" => Ok(OperatorFamily::P4),
            "xkx" => Ok(OperatorFamily::XKx),
            other => Err(Error::Parse(format!("unknown operator family {other:?}"))),
        }
    }

    /// Smallest monomial degree in the operator's domain (1 on `x k[x]`).
    pub fn min_degree(&self) -> usize {
        match self {
            OperatorFamily::XKx => 1,
            _ => 0,
        }
    }

    /// Only `P1` carries the scalar parameter `b`.
    pub fn needs_b(&self) -> bool {
        matches!(self, OperatorFamily::P1)
    }
}

/// Anything that sends monomials to polynomials of no larger degree.
///
/// [`verify_rb_identity`] is written against this trait rather than
/// [`RbOperator`] so the test suite can feed it deliberately broken
/// operators and watch it fail.
pub trait MonomialOperator {
    fn weight(&self) -> Rational;
    fn truncation(&self) -> usize;
    /// Smallest degree in the domain (0, or 1 for `x k[x]` operators).
    fn min_degree(&self) -> usize;
    /// Image of `x^n`; only queried for `min_degree() <= n <= truncation()`.
    fn image(&self, n: usize) -> Polynomial;
}

/// A truncated monomial Rota-Baxter operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RbOperator {
    family: OperatorFamily,
    weight: Rational,
    b: Option<Rational>,
    truncation: usize,
}

impl RbOperator {
    /// Validates the family parameters: nonzero weight, `b` present and
    /// nonzero exactly for `P1`, truncation at least 1.
    pub fn new(
        family: OperatorFamily,
        weight: Rational,
        b: Option<Rational>,
        truncation: usize,
    ) -> Result<Self> {
        if weight.is_zero() {
            return Err(Error::ZeroWeight);
        }
        if truncation == 0 {
            return Err(Error::BadOperatorParameter(
                "truncation must be at least 1".into(),
            ));
        }
        match (&b, family.needs_b()) {
            (Some(v), true) if v.is_zero() => {
                return Err(Error::BadOperatorParameter(
                    "P1 requires a nonzero parameter b".into(),
                ))
            }
            (Some(_), true) | (None, false) => {}
            (None, true) => {
                return Err(Error::BadOperatorParameter(
                    "P1 requires the parameter b".into(),
                ))
            }
            (Some(_), false) => {
                return Err(Error::BadOperatorParameter(format!(
                    "family {} takes no parameter b",
                    family.name()
                )))
            }
        }
        Ok(RbOperator {
            family,
            weight,
            b,
            truncation,
        })
    }

    pub fn family(&self) -> OperatorFamily {
        self.family
    }

    pub fn weight_value(&self) -> &Rational {
        &self.weight
    }

    pub fn b_value(&self) -> Option<&Rational> {
        self.b.as_ref()
    }

    pub fn truncation_order(&self) -> usize {
        self.truncation
    }

    /// Image of the monomial `x^n` under the operator.
    pub fn monomial_image(&self, n: usize) -> Result<Polynomial> {
        if n > self.truncation {
            return Err(Error::TruncationExceeded {
                degree: n,
                truncation: self.truncation,
            });
        }
        if n < self.family.min_degree() {
            return Err(Error::ConstantTermNotAllowed);
        }
        let lam = &self.weight;
        Ok(match self.family {
            OperatorFamily::P1 => {
                let b = self.b.as_ref().expect("validated at construction");
                // (-λ)^(1-n) b^n = b^n * (-λ) / (-λ)^n
                let neg_lam = -lam.clone();
                let mut c = neg_lam.clone();
                for _ in 0..n {
                    c = c / &neg_lam;
                }
                for _ in 0..n {
                    c = c * b;
                }
                Polynomial::constant(c)
            }
            OperatorFamily::P2 | OperatorFamily::XKx => Polynomial::monomial(n, -lam.clone()),
            OperatorFamily::P3 => {
                if n == 0 {
                    Polynomial::zero()
                } else {
                    Polynomial::monomial(n, -lam.clone())
                }
            }
            OperatorFamily::P4 => {
                if n == 0 {
                    Polynomial::constant(-lam.clone())
                } else {
                    Polynomial::zero()
                }
            }
        })
    }

    /// Applies the operator to a polynomial by linearity.
    pub fn apply(&self, f: &Polynomial) -> Result<Polynomial> {
        if let Some(d) = f.degree() {
            if d > self.truncation {
                return Err(Error::TruncationExceeded {
                    degree: d,
                    truncation: self.truncation,
                });
            }
        }
        if self.family.min_degree() > 0 && !f.coeff(0).is_zero() {
            return Err(Error::ConstantTermNotAllowed);
        }
        let mut out = Polynomial::zero();
        for (n, c) in f.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            out = &out + &self.monomial_image(n)?.scale(c);
        }
        Ok(out)
    }
}

impl MonomialOperator for RbOperator {
    fn weight(&self) -> Rational {
        self.weight.clone()
    }

    fn truncation(&self) -> usize {
        self.truncation
    }

    fn min_degree(&self) -> usize {
        self.family.min_degree()
    }

    fn image(&self, n: usize) -> Polynomial {
        self.monomial_image(n)
            .expect("image queried within the operator domain")
    }
}

/// Result of sweeping the Rota-Baxter identity over monomial pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub holds: bool,
    /// First `(m, n)` in lexicographic order where the identity broke.
    pub first_failure: Option<(usize, usize)>,
    /// Number of monomial pairs checked.
    pub checked: usize,
}

fn apply_by_images(op: &dyn MonomialOperator, f: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (n, c) in f.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        out = &out + &op.image(n).scale(c);
    }
    out
}

/// Checks `P(f)P(g) = P(P(f)g) + P(fP(g)) + λP(fg)` for all monomial pairs
/// `f = x^m`, `g = x^n` with `m + n <= N`. Exhaustive and exact within the
/// truncation: every operator image has degree at most its argument, so no
/// instance escapes the truncated ring.
pub fn verify_rb_identity(op: &dyn MonomialOperator) -> IdentityReport {
    let lam = op.weight();
    let lo = op.min_degree();
    let n_max = op.truncation();
    let mut checked = 0;
    for m in lo..=n_max {
        for n in lo..=n_max.saturating_sub(m) {
            let xm = Polynomial::monomial(m, Rational::one());
            let xn = Polynomial::monomial(n, Rational::one());
            let pm = op.image(m);
            let pn = op.image(n);
            let lhs = &pm * &pn;
            let rhs = &(&apply_by_images(op, &(&pm * &xn))
                + &apply_by_images(op, &(&xm * &pn)))
                + &apply_by_images(op, &(&xm * &xn)).scale(&lam);
            checked += 1;
            if lhs != rhs {
                return IdentityReport {
                    holds: false,
                    first_failure: Some((m, n)),
                    checked,
                };
            }
        }
    }
    IdentityReport {
        holds: true,
        first_failure: None,
        checked,
    }
}

/// Which defining matrix equation a module pair must satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `B^2 = -B` and `BA = -BAB` (module of the `P1` operator algebra).
    KxP1,
    /// `B^2 = -B` and `AB = -BAB`.
    KxP2,
    /// Same equations as [`Flavor::KxP2`].
    KxP3,
    /// Same equations as [`Flavor::KxP1`].
    KxP4,
    /// `AB = -BAB` only (module over the constant-free subalgebra).
    XKx,
}

impl Flavor {
    pub const ALL: [Flavor; 5] = [
        Flavor::KxP1,
        Flavor::KxP2,
        Flavor::KxP3,
        Flavor::KxP4,
        Flavor::XKx,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Flavor::KxP1 => "kxp1",
            Flavor::KxP2 => "kxp2",
            Flavor::KxP3 => "kxp3",
            Flavor::KxP4 => "kxp4",
            Flavor::XKx => "xkx",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "kxp1" => Ok(Flavor::KxP1),
            "kxp2" => Ok(Flavor::KxP2),
            "kxp3" => Ok(Flavor::KxP3),
            "kxp4" => Ok(Flavor::KxP4),
            "xkx" => Ok(Flavor::XKx),
            other => Err(Error::Parse(format!("unknown flavor {other:?}"))),
        }
    }

    /// The operator family acting on the ring side.
    pub fn family(&self) -> OperatorFamily {
        match self {
            Flavor::KxP1 => OperatorFamily::P1,
            Flavor::KxP2 => OperatorFamily::P2,
            Flavor::KxP3 => OperatorFamily::P3,
            Flavor::KxP4 => OperatorFamily::P4,
            Flavor::XKx => OperatorFamily::XKx,
        }
    }

    /// Flavor matching an operator family (inverse of [`Flavor::family`]).
    pub fn of_family(family: OperatorFamily) -> Flavor {
        match family {
            OperatorFamily::P1 => Flavor::KxP1,
            OperatorFamily::P2 => Flavor::KxP2,
            OperatorFamily::P3 => Flavor::KxP3,
            OperatorFamily::P4 => Flavor::KxP4,
            OperatorFamily::XKx => Flavor::XKx,
        }
    }

    /// True when the defining equations include `B^2 = -B`.
    pub fn requires_quasi_idempotent(&self) -> bool {
        !matches!(self, Flavor::XKx)
    }

    /// True when the side condition is `BA = -BAB` (families 1 and 4);
    /// false when it is `AB = -BAB` (families 2, 3 and the subalgebra).
    pub fn operator_acts_left(&self) -> bool {
        matches!(self, Flavor::KxP1 | Flavor::KxP4)
    }
}

/// A candidate module: `A` acts as `x`, `B` as the operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePair {
    flavor: Flavor,
    a: Matrix,
    b: Matrix,
}

impl ModulePair {
    pub fn new(flavor: Flavor, a: Matrix, b: Matrix) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::NonSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if !b.is_square() {
            return Err(Error::NonSquare {
                rows: b.rows(),
                cols: b.cols(),
            });
        }
        if a.rows() != b.rows() {
            return Err(Error::DimMismatch {
                context: "module pair actions",
                left: format!("{}x{}", a.rows(), a.cols()),
                right: format!("{}x{}", b.rows(), b.cols()),
            });
        }
        Ok(ModulePair { flavor, a, b })
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b(&self) -> &Matrix {
        &self.b
    }

    /// The conjugated pair `(S A S^{-1}, S B S^{-1})`.
    pub fn conjugate(&self, s: &Matrix) -> Result<ModulePair> {
        let s_inv = s.inverse()?;
        ModulePair::new(
            self.flavor,
            &(s * &self.a) * &s_inv,
            &(s * &self.b) * &s_inv,
        )
    }
}

/// Result of the degree sweep of the module axiom.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub holds: bool,
    /// First degree `m` at which `C_m B = B C_m + B A^m B + λ B A^m` broke.
    pub first_failure: Option<usize>,
}

/// Checks the module axiom `C_m B = B C_m + B A^m B + λ B A^m` for all
/// `m <= N` in the operator's domain, where `C_m` is the image of `x^m`
/// evaluated at `A`. Exact for any nonzero weight; this is the brute-force
/// oracle the closed-form equation solvers are tested against.
pub fn verify_module_axiom(op: &RbOperator, mp: &ModulePair) -> Result<AxiomReport> {
    if Flavor::of_family(op.family()) != mp.flavor() {
        return Err(Error::FlavorMismatch {
            flavor: mp.flavor().name().into(),
            family: op.family().name().into(),
        });
    }
    let lam = op.weight_value();
    let mut a_pow = Matrix::identity(mp.dim());
    for _ in 0..op.family().min_degree() {
        a_pow = &a_pow * mp.a();
    }
    for m in op.family().min_degree()..=op.truncation_order() {
        let c_m = op.monomial_image(m)?.eval_matrix(mp.a());
        let lhs = &c_m * mp.b();
        let bam = mp.b() * &a_pow;
        let rhs = &(&(mp.b() * &c_m) + &(&bam * mp.b())) + &bam.scale(lam);
        if lhs != rhs {
            return Ok(AxiomReport {
                holds: false,
                first_failure: Some(m),
            });
        }
        a_pow = &a_pow * mp.a();
    }
    Ok(AxiomReport {
        holds: true,
        first_failure: None,
    })
}

/// Rescales a weight-λ operator and module to weight 1: the operator becomes
/// `λ^{-1}P` (for `P1` this moves the parameter to `b/λ`) and `B` becomes
/// `λ^{-1}B`. Exact and invertible.
pub fn normalize_weight(op: &RbOperator, mp: &ModulePair) -> Result<(RbOperator, ModulePair)> {
    let lam = op.weight_value().clone();
    let b_param = op.b_value().map(|b| b / &lam);
    let op1 = RbOperator::new(op.family(), Rational::one(), b_param, op.truncation_order())?;
    let mp1 = ModulePair::new(mp.flavor(), mp.a().clone(), mp.b().scale(&lam.recip()))?;
    Ok((op1, mp1))
}

/// Inverse of [`normalize_weight`]: rescales a weight-1 pair to weight `λ`.
pub fn denormalize_weight(
    op: &RbOperator,
    mp: &ModulePair,
    lam: &Rational,
) -> Result<(RbOperator, ModulePair)> {
    if lam.is_zero() {
        return Err(Error::ZeroWeight);
    }
    let b_param = op.b_value().map(|b| b * lam);
    let op_l = RbOperator::new(op.family(), lam.clone(), b_param, op.truncation_order())?;
    let mp_l = ModulePair::new(mp.flavor(), mp.a().clone(), mp.b().scale(lam))?;
    Ok((op_l, mp_l))
}

/// Semidirect-sum cross-check: verifies that `P ⊕ p` is a Rota-Baxter
/// operator on the truncated ring-plus-module algebra `R ⊕ M` with product
/// `(f, u)(g, v) = (fg, f v + g u)`, by expanding the definition on every
/// basis pair. Equivalent to (ring identity) + (module axiom), but computed
/// from scratch as an independent consistency check.
pub fn semidirect_sum_check(op: &RbOperator, mp: &ModulePair) -> Result<bool> {
    if Flavor::of_family(op.family()) != mp.flavor() {
        return Err(Error::FlavorMismatch {
            flavor: mp.flavor().name().into(),
            family: op.family().name().into(),
        });
    }
    let n = mp.dim();
    let lam = op.weight_value().clone();
    let lo = op.family().min_degree();
    let top = op.truncation_order();

    // an element is (ring part, module part)
    type Elt = (Polynomial, Vec<Rational>);
    let zero_vec = vec![Rational::zero(); n];
    let ring = |f: Polynomial| -> Elt { (f, zero_vec.clone()) };
    let module = |v: Vec<Rational>| -> Elt { (Polynomial::zero(), v) };

    let act = |f: &Polynomial, v: &[Rational]| -> Vec<Rational> {
        f.eval_matrix(mp.a()).mul_vec(v)
    };
    let mul = |x: &Elt, y: &Elt| -> Elt {
        let ring_part = &x.0 * &y.0;
        let mut mod_part = act(&x.0, &y.1);
        for (acc, extra) in mod_part.iter_mut().zip(act(&y.0, &x.1)) {
            *acc = &*acc + &extra;
        }
        (ring_part, mod_part)
    };
    let q = |x: &Elt| -> Result<Elt> { Ok((op.apply(&x.0)?, mp.b().mul_vec(&x.1))) };
    let add = |x: &Elt, y: &Elt| -> Elt {
        let mut v = x.1.clone();
        for (acc, extra) in v.iter_mut().zip(&y.1) {
            *acc = &*acc + extra;
        }
        (&x.0 + &y.0, v)
    };

    let mut basis: Vec<(usize, Elt)> = Vec::new();
    for m in lo..=top {
        basis.push((m, ring(Polynomial::monomial(m, Rational::one()))));
    }
    for j in 0..n {
        let mut v = zero_vec.clone();
        v[j] = Rational::one();
        basis.push((0, module(v)));
    }

    for (dx, x) in &basis {
        for (dy, y) in &basis {
            if dx + dy > top {
                continue;
            }
            let lhs = mul(&q(x)?, &q(y)?);
            let qx_y = q(&mul(&q(x)?, y))?;
            let x_qy = q(&mul(x, &q(y)?))?;
            let xy = q(&mul(x, y))?;
            let rhs = add(&add(&qx_y, &x_qy), &(xy.0.scale(&lam), {
                let mut v = xy.1.clone();
                for e in v.iter_mut() {
                    *e = &*e * &lam;
                }
                v
            }));
            if lhs != rhs {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.name())
    }
}

impl std::fmt::Display for RbOperator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}(weight {}", self.family.name(), display(&self.weight))?;
        if let Some(b) = &self.b {
            write!(f, ", b = {}", display(b))?;
        }
        write!(f, ", N = {})", self.truncation)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;
    use crate::rational::{int, ratio};

    fn op(family: OperatorFamily, weight: i64, b: Option<Rational>) -> RbOperator {
        RbOperator::new(family, int(weight), b, DEFAULT_TRUNCATION).unwrap()
    }

    #[test]
    fn construction_guards() {
        assert_eq!(
            RbOperator::new(OperatorFamily::P2, int(0), None, 12),
            Err(Error::ZeroWeight)
        );
        assert!(RbOperator::new(OperatorFamily::P1, int(1), None, 12).is_err());
        assert!(RbOperator::new(OperatorFamily::P1, int(1), Some(int(0)), 12).is_err());
        assert!(RbOperator::new(OperatorFamily::P2, int(1), Some(int(1)), 12).is_err());
        assert!(RbOperator::new(OperatorFamily::P2, int(1), None, 0).is_err());
    }

    #[test]
    fn monomial_images_weight_one() {
        let p1 = op(OperatorFamily::P1, 1, Some(int(1)));
        // x^2 -> (-1)^(1-2) * 1^2 = -1
        assert_eq!(p1.monomial_image(2).unwrap(), Polynomial::constant(int(-1)));
        // 1 -> (-1)^1 * 1^0 = -1
        assert_eq!(p1.monomial_image(0).unwrap(), Polynomial::constant(int(-1)));

        let p4 = op(OperatorFamily::P4, 1, None);
        assert_eq!(p4.monomial_image(0).unwrap(), Polynomial::constant(int(-1)));
        assert!(p4.monomial_image(3).unwrap().is_zero());

        let p3 = op(OperatorFamily::P3, 1, None);
        assert!(p3.monomial_image(0).unwrap().is_zero());
        assert_eq!(
            p3.monomial_image(2).unwrap(),
            Polynomial::monomial(2, int(-1))
        );
    }

    #[test]
    fn weighted_p1_images() {
        // (-λ)^(1-n) b^n with λ = 2, b = 3: n=0 -> -2, n=1 -> 3, n=2 -> -9/2
        let p1 = op(OperatorFamily::P1, 2, Some(int(3)));
        assert_eq!(p1.monomial_image(0).unwrap(), Polynomial::constant(int(-2)));
        assert_eq!(p1.monomial_image(1).unwrap(), Polynomial::constant(int(3)));
        assert_eq!(
            p1.monomial_image(2).unwrap(),
            Polynomial::constant(ratio(-9, 2))
        );
    }

    #[test]
    fn apply_by_linearity() {
        let p2 = op(OperatorFamily::P2, 1, None);
        let f = Polynomial::from_coeffs(vec![int(0), int(1), int(3)]); // 3x^2 + x
        assert_eq!(
            p2.apply(&f).unwrap(),
            Polynomial::from_coeffs(vec![int(0), int(-1), int(-3)])
        );

        let p4 = op(OperatorFamily::P4, 1, None);
        let g = Polynomial::from_coeffs(vec![int(5), int(0), int(0), int(1)]); // 5 + x^3
        assert_eq!(p4.apply(&g).unwrap(), Polynomial::constant(int(-5)));
    }

    #[test]
    fn domain_errors() {
        let xkx = op(OperatorFamily::XKx, 1, None);
        assert_eq!(
            xkx.apply(&Polynomial::constant(int(1))),
            Err(Error::ConstantTermNotAllowed)
        );
        assert_eq!(xkx.monomial_image(0), Err(Error::ConstantTermNotAllowed));
        let p2 = op(OperatorFamily::P2, 1, None);
        assert_eq!(
            p2.monomial_image(13),
            Err(Error::TruncationExceeded {
                degree: 13,
                truncation: 12
            })
        );
        assert!(p2.apply(&Polynomial::monomial(13, int(1))).is_err());
    }

    #[test]
    fn identity_holds_for_all_families() {
        for family in [
            OperatorFamily::P1,
            OperatorFamily::P2,
            OperatorFamily::P3,
            OperatorFamily::P4,
            OperatorFamily::XKx,
        ] {
            let b = family.needs_b().then(|| int(1));
            let o = op(family, 1, b);
            let report = verify_rb_identity(&o);
            assert!(report.holds, "family {} must satisfy the identity", family.name());
            assert!(report.checked > 0);
        }
    }

    #[test]
    fn identity_holds_for_nonunit_weight() {
        let o = RbOperator::new(OperatorFamily::P1, int(-3), Some(ratio(1, 2)), 10).unwrap();
        assert!(verify_rb_identity(&o).holds);
        let o = RbOperator::new(OperatorFamily::XKx, int(2), None, 10).unwrap();
        assert!(verify_rb_identity(&o).holds);
    }

    /// `P3` with the constant sent to 1 instead of 0.
    struct BrokenConstant(RbOperator);

    impl MonomialOperator for BrokenConstant {
        fn weight(&self) -> Rational {
            self.0.weight()
        }
        fn truncation(&self) -> usize {
            self.0.truncation()
        }
        fn min_degree(&self) -> usize {
            0
        }
        fn image(&self, n: usize) -> Polynomial {
            if n == 0 {
                Polynomial::one()
            } else {
                self.0.image(n)
            }
        }
    }

    /// `P2` with one image polluted by a lower-degree term.
    struct BrokenDegreeFive(RbOperator);

    impl MonomialOperator for BrokenDegreeFive {
        fn weight(&self) -> Rational {
            self.0.weight()
        }
        fn truncation(&self) -> usize {
            self.0.truncation()
        }
        fn min_degree(&self) -> usize {
            0
        }
        fn image(&self, n: usize) -> Polynomial {
            let base = self.0.image(n);
            if n == 5 {
                &base + &Polynomial::monomial(4, int(1))
            } else {
                base
            }
        }
    }

    #[test]
    fn identity_rejects_broken_operators() {
        let broken = BrokenConstant(RbOperator::new(OperatorFamily::P3, int(1), None, 4).unwrap());
        let report = verify_rb_identity(&broken);
        assert!(!report.holds);
        // P(1)P(1) = 1 but each right-hand term is P(1) = 1, so 1 vs 3
        assert_eq!(report.first_failure, Some((0, 0)));

        let broken = BrokenDegreeFive(op(OperatorFamily::P2, 1, None));
        let report = verify_rb_identity(&broken);
        assert!(!report.holds);
        assert_eq!(report.first_failure, Some((0, 5)));
    }

    #[test]
    fn module_pair_shape_guards() {
        let a = mat![[1, 2], [3, 4]];
        let b3 = Matrix::identity(3);
        assert!(ModulePair::new(Flavor::XKx, a.clone(), b3).is_err());
        assert!(ModulePair::new(Flavor::XKx, mat![[1, 2, 3], [4, 5, 6]], Matrix::identity(2)).is_err());
        assert!(ModulePair::new(Flavor::XKx, a.clone(), Matrix::identity(2)).is_ok());
    }

    #[test]
    fn axiom_accepts_known_module() {
        // first row of A free, B a full block at -1: a valid pair
        let mp = ModulePair::new(Flavor::XKx, mat![[3, 5], [0, 0]], mat![[-1, 1], [0, -1]]).unwrap();
        let o = RbOperator::new(OperatorFamily::XKx, int(1), None, 8).unwrap();
        let report = verify_module_axiom(&o, &mp).unwrap();
        assert!(report.holds);
        assert_eq!(report.first_failure, None);
    }

    #[test]
    fn axiom_rejects_perturbed_module() {
        let mp = ModulePair::new(Flavor::XKx, mat![[3, 5], [0, 1]], mat![[-1, 1], [0, -1]]).unwrap();
        let o = RbOperator::new(OperatorFamily::XKx, int(1), None, 8).unwrap();
        let report = verify_module_axiom(&o, &mp).unwrap();
        assert!(!report.holds);
        assert_eq!(report.first_failure, Some(1));
    }

    #[test]
    fn axiom_flavor_mismatch() {
        let mp = ModulePair::new(Flavor::KxP2, Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        let o = op(OperatorFamily::P1, 1, Some(int(1)));
        assert!(matches!(
            verify_module_axiom(&o, &mp),
            Err(Error::FlavorMismatch { .. })
        ));
    }

    #[test]
    fn axiom_for_quasi_idempotent_flavors() {
        // B = -I is quasi-idempotent and AB = -BAB holds for any A
        let mp = ModulePair::new(Flavor::KxP2, mat![[1, 0], [0, 2]], mat![[-1, 0], [0, -1]]).unwrap();
        let o = op(OperatorFamily::P2, 1, None);
        assert!(verify_module_axiom(&o, &mp).unwrap().holds);

        // B = diag(-1, 0) with lower-triangular A fails the upper flavor
        let mp = ModulePair::new(Flavor::KxP2, mat![[1, 0], [1, 1]], mat![[-1, 0], [0, 0]]).unwrap();
        let report = verify_module_axiom(&o, &mp).unwrap();
        assert!(!report.holds);
        assert_eq!(report.first_failure, Some(1));
    }

    #[test]
    fn p1_axiom_does_not_depend_on_b() {
        let valid = ModulePair::new(Flavor::KxP1, mat![[1, 0], [2, 3]], mat![[-1, 0], [0, 0]]).unwrap();
        let invalid =
            ModulePair::new(Flavor::KxP1, mat![[1, 5], [2, 3]], mat![[-1, 0], [0, 0]]).unwrap();
        let mut outcomes_valid = Vec::new();
        let mut outcomes_invalid = Vec::new();
        for b in [int(1), int(7), int(-2), ratio(1, 2)] {
            let o = RbOperator::new(OperatorFamily::P1, int(1), Some(b), 10).unwrap();
            outcomes_valid.push(verify_module_axiom(&o, &valid).unwrap().holds);
            outcomes_invalid.push(verify_module_axiom(&o, &invalid).unwrap().holds);
        }
        assert!(outcomes_valid.iter().all(|&h| h));
        assert!(outcomes_invalid.iter().all(|&h| !h));
    }

    #[test]
    fn normalize_weight_scales_operator_and_module() {
        let o = RbOperator::new(OperatorFamily::P2, int(2), None, 12).unwrap();
        let mp = ModulePair::new(
            Flavor::KxP2,
            Matrix::identity(2),
            Matrix::diag(&[int(-2), int(0)]),
        )
        .unwrap();
        let (o1, mp1) = normalize_weight(&o, &mp).unwrap();
        assert_eq!(o1.weight_value(), &int(1));
        assert_eq!(mp1.b(), &Matrix::diag(&[int(-1), int(0)]));

        let (o2, mp2) = denormalize_weight(&o1, &mp1, &int(2)).unwrap();
        assert_eq!(&o2, &o);
        assert_eq!(&mp2, &mp);
    }

    #[test]
    fn normalize_weight_moves_p1_parameter() {
        let o = RbOperator::new(OperatorFamily::P1, int(2), Some(int(3)), 12).unwrap();
        let mp = ModulePair::new(Flavor::KxP1, Matrix::identity(1), Matrix::zeros(1, 1)).unwrap();
        let (o1, _) = normalize_weight(&o, &mp).unwrap();
        assert_eq!(o1.b_value(), Some(&ratio(3, 2)));
        let (o2, _) = denormalize_weight(&o1, &mp, &int(2)).unwrap();
        assert_eq!(o2.b_value(), Some(&int(3)));
    }

    #[test]
    fn weight_one_normalization_is_identity() {
        let o = op(OperatorFamily::P3, 1, None);
        let mp = ModulePair::new(Flavor::KxP3, Matrix::identity(2), Matrix::zeros(2, 2)).unwrap();
        let (o1, mp1) = normalize_weight(&o, &mp).unwrap();
        assert_eq!(o1, o);
        assert_eq!(mp1, mp);
    }

    #[test]
    fn semidirect_check_agrees_with_verifiers() {
        let o = RbOperator::new(OperatorFamily::XKx, int(1), None, 6).unwrap();
        let good = ModulePair::new(Flavor::XKx, mat![[3, 5], [0, 0]], mat![[-1, 1], [0, -1]]).unwrap();
        assert!(semidirect_sum_check(&o, &good).unwrap());

        let bad = ModulePair::new(Flavor::XKx, mat![[3, 5], [0, 1]], mat![[-1, 1], [0, -1]]).unwrap();
        assert!(!semidirect_sum_check(&o, &bad).unwrap());

        let o = RbOperator::new(OperatorFamily::P4, int(1), None, 6).unwrap();
        let good = ModulePair::new(
            Flavor::KxP4,
            mat![[1, 0], [2, 3]],
            Matrix::diag(&[int(-1), int(0)]),
        )
        .unwrap();
        assert!(semidirect_sum_check(&o, &good).unwrap());
    }

    #[test]
    fn left_sided_flavors_reject_right_sided_solutions() {
        // upper-triangular A solves the 2/3 side but not the 1/4 side
        let a = mat![[1, 5], [0, 2]];
        let b = Matrix::diag(&[int(-1), int(0)]);
        let o2 = op(OperatorFamily::P2, 1, None);
        let o1 = op(OperatorFamily::P1, 1, Some(int(1)));
        let mp2 = ModulePair::new(Flavor::KxP2, a.clone(), b.clone()).unwrap();
        let mp1 = ModulePair::new(Flavor::KxP1, a, b).unwrap();
        assert!(verify_module_axiom(&o2, &mp2).unwrap().holds);
        assert!(!verify_module_axiom(&o1, &mp1).unwrap().holds);
    }
}
