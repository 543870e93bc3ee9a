//! Module-structure analysis: submodules, irreducibility, endomorphism
//! algebras, indecomposability certificates, and the catalog of small
//! modules.
//!
//! A one-dimensional submodule of a pair `(A, B)` is a common eigenvector:
//! `Au = μu`, `Bu = αu`. For a valid pair any such `u` lies inside an
//! eigenspace of `B`, and its span is `A`-invariant, so the search space for
//! each rational eigenvalue `α` of `B` is the largest `A`-invariant subspace
//! of `ker(B - αI)`. Scanning those subspaces for rational eigenvectors of
//! the restricted `A` either produces a witness or proves that every
//! candidate eigenvalue is irrational.
//!
//! Indecomposability is certified through the commutant: the algebra `E` of
//! matrices commuting with both `A` and `B`. The trace form `(C, D) ->
//! tr(CD)` has the Jacobson radical of `E` as its kernel (char 0), and
//! `dim(E / rad E) = 1` forces every idempotent to be trivial, hence an
//! indecomposable module. Conversely a nontrivial idempotent in `E` splits
//! the module; candidates are taken from spectral projectors of commutant
//! elements, computed exactly via a Bezout identity.

use crate::error::{Error, Result};
use crate::matrix::{independent_subset, Matrix};
use crate::matsolve::{classify_kx, representative, solution_space_xkx, verify_equation, ClassifyVariant};
use crate::poly::{extended_gcd, rational_roots, Polynomial};
use crate::rational::{display, int, Rational};
use crate::rbops::{Flavor, ModulePair};
use num::traits::{One, Zero};

/// Echelon-normalized basis of `ker(m - alpha I)`.
pub fn eigenspace(m: &Matrix, alpha: &Rational) -> Vec<Vec<Rational>> {
    assert!(m.is_square(), "eigenspace of a non-square matrix");
    (m - &Matrix::identity(m.rows()).scale(alpha)).kernel_basis()
}

/// Matrix of `a` restricted to the `a`-invariant span of `basis` columns.
fn restriction(a: &Matrix, basis: &[Vec<Rational>]) -> Matrix {
    let w = Matrix::from_columns(a.rows(), basis);
    let aw = a * &w;
    w.solve(&aw).expect("restriction of an invariant subspace")
}

/// Largest `a`-invariant subspace contained in the span of `basis`,
/// computed by shrinking `V -> {v in V : Av in V}` to its fixed point.
fn largest_invariant_subspace(a: &Matrix, basis: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = a.rows();
    let mut current = basis.to_vec();
    loop {
        if current.is_empty() {
            return current;
        }
        let w = Matrix::from_columns(n, &current);
        let aw = a * &w;
        let stacked = aw.hstack(&w.scale(&-Rational::one()));
        let shrunk: Vec<Vec<Rational>> = stacked
            .kernel_basis()
            .into_iter()
            .map(|v| w.mul_vec(&v[..current.len()]))
            .collect();
        let shrunk = independent_subset(n, shrunk);
        if shrunk.len() == current.len() {
            return current;
        }
        current = shrunk;
    }
}

/// A one-dimensional submodule: `A u = x_eigen * u`, `B u = p_eigen * u`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmoduleWitness {
    pub generator: Vec<Rational>,
    pub x_eigen: Rational,
    pub p_eigen: Rational,
}

impl SubmoduleWitness {
    /// Exact check that the generator spans a submodule of the pair.
    pub fn check(&self, mp: &ModulePair) -> bool {
        let u = &self.generator;
        if u.iter().all(|x| x.is_zero()) {
            return false;
        }
        let au = mp.a().mul_vec(u);
        let bu = mp.b().mul_vec(u);
        au.iter().zip(u).all(|(l, r)| l == &(r * &self.x_eigen))
            && bu.iter().zip(u).all(|(l, r)| l == &(r * &self.p_eigen))
    }
}

/// Finds a one-dimensional submodule with rational eigenvalues, or proves
/// there is none.
///
/// Scans the rational eigenvalues `α` of `B` (`-1` first, then ascending):
/// inside each eigenspace of `B` it takes the largest `A`-invariant
/// subspace and looks for a rational eigenvector of the restricted `A`.
/// Any rational witness must show up this way, so exhausting the scan
/// proves the obstruction is an irrational spectrum (of `B`, or of a
/// restriction of `A`), reported as [`Error::IrrationalSpectrum`].
pub fn find_onedim_submodule(mp: &ModulePair) -> Result<SubmoduleWitness> {
    if !verify_equation(mp) {
        return Err(Error::NotAModule);
    }
    let n = mp.dim();
    let b_roots = rational_roots(&mp.b().char_poly()?);
    let b_rational: usize = b_roots.iter().map(|(_, m)| m).sum();

    let minus_one = -Rational::one();
    let mut order: Vec<Rational> = Vec::new();
    if b_roots.iter().any(|(r, _)| r == &minus_one) {
        order.push(minus_one.clone());
    }
    order.extend(
        b_roots
            .iter()
            .map(|(r, _)| r.clone())
            .filter(|r| r != &minus_one),
    );

    let mut restriction_obstruction: Option<(usize, usize)> = None;
    for alpha in order {
        let eig = eigenspace(mp.b(), &alpha);
        let inv = largest_invariant_subspace(mp.a(), &eig);
        if inv.is_empty() {
            continue;
        }
        let r = restriction(mp.a(), &inv);
        let r_roots = rational_roots(&r.char_poly()?);
        if r_roots.is_empty() {
            if restriction_obstruction.is_none() {
                restriction_obstruction = Some((0, inv.len()));
            }
            continue;
        }
        let mu = r_roots[0].0.clone();
        let coeffs = (&r - &Matrix::identity(inv.len()).scale(&mu)).kernel_basis();
        let w = &coeffs[0];
        let generator = Matrix::from_columns(n, &inv).mul_vec(w);
        let witness = SubmoduleWitness {
            generator,
            x_eigen: mu,
            p_eigen: alpha,
        };
        assert!(witness.check(mp), "constructed witness must verify");
        return Ok(witness);
    }

    if b_rational < n {
        Err(Error::IrrationalSpectrum {
            found: b_rational,
            needed: n,
        })
    } else {
        let (found, needed) = restriction_obstruction.unwrap_or((0, n));
        Err(Error::IrrationalSpectrum { found, needed })
    }
}

/// Irreducibility verdict with the reducibility witness when one exists
/// over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityReport {
    pub irreducible: bool,
    pub witness: Option<SubmoduleWitness>,
    /// True when reducibility is forced by dimension but every candidate
    /// eigenvalue is irrational, so no rational witness exists.
    pub spectrum_obstruction: bool,
}

/// A pair is irreducible exactly when its dimension is one; for larger
/// dimensions a proper submodule always exists (over the algebraic closure),
/// and this reports a rational witness whenever there is one.
pub fn is_irreducible(mp: &ModulePair) -> Result<IrreducibilityReport> {
    if !verify_equation(mp) {
        return Err(Error::NotAModule);
    }
    if mp.dim() == 1 {
        return Ok(IrreducibilityReport {
            irreducible: true,
            witness: None,
            spectrum_obstruction: false,
        });
    }
    match find_onedim_submodule(mp) {
        Ok(w) => Ok(IrreducibilityReport {
            irreducible: false,
            witness: Some(w),
            spectrum_obstruction: false,
        }),
        Err(Error::IrrationalSpectrum { .. }) => Ok(IrreducibilityReport {
            irreducible: false,
            witness: None,
            spectrum_obstruction: true,
        }),
        Err(e) => Err(e),
    }
}

/// Splits a quasi-idempotent operator matrix (`B^2 = -λB`) into its
/// regular and singular projectors `(-B/λ, I + B/λ)`: complementary
/// idempotents commuting with `B`, with `B` acting as `-λ` on the image of
/// the first and as `0` on the image of the second.
pub fn regular_singular_projectors(b: &Matrix, lam: &Rational) -> Result<(Matrix, Matrix)> {
    if !b.is_square() {
        return Err(Error::NonSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    if lam.is_zero() {
        return Err(Error::ZeroWeight);
    }
    if &(b * b) != &b.scale(&-lam.clone()) {
        return Err(Error::NotQuasiIdempotent);
    }
    let regular = b.scale(&-(lam.recip()));
    let singular = &Matrix::identity(b.rows()) - &regular;
    Ok((regular, singular))
}

/// Echelon-normalized basis of the commutant `{C : CA = AC, CB = BC}`.
/// Always contains the identity; computed as the kernel of the stacked
/// vectorized commutator equations.
pub fn commutant(mp: &ModulePair) -> Vec<Matrix> {
    let n = mp.dim();
    let id = Matrix::identity(n);
    let block = |x: &Matrix| -> Matrix {
        let left = x.transpose().kron(&id);
        let right = id.kron(x);
        &left - &right
    };
    let system = block(mp.a()).vstack(&block(mp.b()));
    system
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::unvec(n, n, &v))
        .collect()
}

/// Indecomposability verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Indecomposable,
    Decomposable,
    Inconclusive,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Indecomposable => "yes",
            Verdict::Decomposable => "no",
            Verdict::Inconclusive => "inconclusive",
        }
    }
}

/// Endomorphism-algebra analysis of a pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndAlgebraReport {
    pub commutant_basis: Vec<Matrix>,
    pub radical_dim: usize,
    pub semisimple_quotient_dim: usize,
    pub verdict: Verdict,
    /// Present exactly when the verdict is [`Verdict::Decomposable`]: a
    /// nontrivial idempotent commuting with both actions.
    pub splitting_idempotent: Option<Matrix>,
}

/// Certifies indecomposability through the commutant `E`:
/// `dim(E / rad E) = 1` (local endomorphism algebra) proves the module
/// indecomposable; a nontrivial idempotent in `E` proves it decomposable.
/// When the commutant has rational but non-split structure beyond the
/// candidates searched, the verdict is inconclusive rather than guessed.
pub fn is_indecomposable(mp: &ModulePair) -> Result<EndAlgebraReport> {
    if !verify_equation(mp) {
        return Err(Error::NotAModule);
    }
    let n = mp.dim();
    let basis = commutant(mp);
    let d = basis.len();

    // Gram matrix of the trace form; its kernel is the radical in char 0
    let gram = Matrix::from_fn(d, d, |i, j| (&basis[i] * &basis[j]).trace());
    let radical_dim = d - gram.rank();
    let semisimple_quotient_dim = d - radical_dim;

    if semisimple_quotient_dim == 1 {
        return Ok(EndAlgebraReport {
            commutant_basis: basis,
            radical_dim,
            semisimple_quotient_dim,
            verdict: Verdict::Indecomposable,
            splitting_idempotent: None,
        });
    }

    // candidate commutant elements whose spectral projectors may split I
    let mut candidates: Vec<Matrix> = basis.clone();
    for i in 0..d {
        for j in (i + 1)..d {
            candidates.push(&basis[i] + &basis[j]);
        }
    }
    for i in 0..d {
        for j in (i + 1)..d {
            candidates.push(&basis[i] - &basis[j]);
        }
    }

    for c in &candidates {
        let p = c.char_poly()?;
        for (mu, mult) in rational_roots(&p) {
            if mult == n {
                continue;
            }
            let mut h1 = Polynomial::one();
            let lin = Polynomial::from_coeffs(vec![-mu.clone(), Rational::one()]);
            for _ in 0..mult {
                h1 = &h1 * &lin;
            }
            let (h2, rem) = p.div_rem(&h1);
            assert!(rem.is_zero(), "factor of the characteristic polynomial");
            let (g, _, v) = extended_gcd(&h1, &h2);
            // coprime factors, and the gcd is returned monic: g = 1,
            // so v*h2 is 1 modulo h1 and 0 modulo h2
            assert_eq!(g.degree(), Some(0), "coprime spectral factors");
            let e = (&v * &h2).eval_matrix(c);
            assert_eq!(&(&e * &e), &e, "spectral projector must be idempotent");
            if e.is_zero() || e == Matrix::identity(n) {
                continue;
            }
            assert_eq!(&(&e * mp.a()), &(mp.a() * &e));
            assert_eq!(&(&e * mp.b()), &(mp.b() * &e));
            return Ok(EndAlgebraReport {
                commutant_basis: basis,
                radical_dim,
                semisimple_quotient_dim,
                verdict: Verdict::Decomposable,
                splitting_idempotent: Some(e),
            });
        }
    }

    Ok(EndAlgebraReport {
        commutant_basis: basis,
        radical_dim,
        semisimple_quotient_dim,
        verdict: Verdict::Inconclusive,
        splitting_idempotent: None,
    })
}

/// Shape of the `x`-action for a single full Jordan block of the operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyCase {
    /// Block eigenvalue `-1`: first row of `A` free.
    FirstRow,
    /// Block eigenvalue `0`: last column of `A` free.
    LastColumn,
    /// Any other eigenvalue: `A = 0`.
    Zero,
}

/// The modules whose operator action is a single full Jordan block
/// `B = J_n(b)`: `A` carries free parameters in the first row (`b = -1`),
/// the last column (`b = 0`), or vanishes (other `b`). These pairs are
/// indecomposable for every `n`.
pub fn single_block_family(
    n: usize,
    case: FamilyCase,
    b: &Rational,
    params: &[Rational],
) -> Result<ModulePair> {
    if n == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let minus_one = -Rational::one();
    let expected_params = match case {
        FamilyCase::FirstRow | FamilyCase::LastColumn => n,
        FamilyCase::Zero => 0,
    };
    if params.len() != expected_params {
        return Err(Error::InvalidBlockParams(format!(
            "case {case:?} takes {expected_params} parameters, got {}",
            params.len()
        )));
    }
    match case {
        FamilyCase::FirstRow if b != &minus_one => {
            return Err(Error::InvalidBlockParams(
                "first-row case requires eigenvalue -1".into(),
            ))
        }
        FamilyCase::LastColumn if !b.is_zero() => {
            return Err(Error::InvalidBlockParams(
                "last-column case requires eigenvalue 0".into(),
            ))
        }
        FamilyCase::Zero if b == &minus_one || b.is_zero() => {
            return Err(Error::InvalidBlockParams(
                "zero case requires an eigenvalue other than -1 and 0".into(),
            ))
        }
        _ => {}
    }
    let mut a = Matrix::zeros(n, n);
    match case {
        FamilyCase::FirstRow => {
            for (j, t) in params.iter().enumerate() {
                a.set(0, j, t.clone());
            }
        }
        FamilyCase::LastColumn => {
            for (i, s) in params.iter().enumerate() {
                a.set(i, n - 1, s.clone());
            }
        }
        FamilyCase::Zero => {}
    }
    let mp = ModulePair::new(Flavor::XKx, a, Matrix::jordan_block(n, b))?;
    assert!(verify_equation(&mp), "single-block family must verify");
    Ok(mp)
}

/// A catalog module with its provenance description and the dimension of
/// the `A`-solution space for its representative `B`.
#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub description: String,
    pub pair: ModulePair,
    pub free_count: usize,
}

fn xkx_entry(id: &str, description: &str, b: Matrix) -> Result<CatalogEntry> {
    let space = solution_space_xkx(&b)?;
    let a = representative(&space);
    let pair = ModulePair::new(Flavor::XKx, a, b)?;
    assert!(verify_equation(&pair), "catalog entry must verify");
    Ok(CatalogEntry {
        id: id.into(),
        description: description.into(),
        pair,
        free_count: space.dim,
    })
}

/// The complete list of small module families with representative
/// parameter values. For the constant-free flavor, dimensions 1 to 3 are
/// supported (one entry per operator normal form, with the generic `A`
/// filled in from the solution space). For the quasi-idempotent flavors
/// the entries are `B = diag(-I_k, 0)` for `k = 0..=n` with the matching
/// block-triangular `A`.
pub fn catalog(n: usize, flavor: Flavor) -> Result<Vec<CatalogEntry>> {
    match flavor {
        Flavor::XKx => catalog_xkx(n),
        _ => catalog_quasi_idempotent(n, flavor),
    }
}

fn catalog_xkx(n: usize) -> Result<Vec<CatalogEntry>> {
    let d = |vals: &[i64]| Matrix::diag(&vals.iter().map(|&v| int(v)).collect::<Vec<_>>());
    match n {
        1 => Ok(vec![
            xkx_entry("1a", "B = 0, any scalar A", d(&[0]))?,
            xkx_entry("1b", "B = -1, any scalar A", d(&[-1]))?,
            xkx_entry("1c", "B generic (sample 3), A = 0", d(&[3]))?,
        ]),
        2 => Ok(vec![
            xkx_entry("2a", "B = 0, any A", d(&[0, 0]))?,
            xkx_entry("2b", "B = -I, any A", d(&[-1, -1]))?,
            xkx_entry("2c", "B generic diagonal (sample 2, 3), A = 0", d(&[2, 3]))?,
            xkx_entry("2d", "B = diag(0, b), b generic (sample 5): first column of A free", d(&[0, 5]))?,
            xkx_entry("2e", "B = diag(-1, 0): upper-triangular A", d(&[-1, 0]))?,
            xkx_entry("2f", "B = diag(-1, b), b generic (sample 5): first row of A free", d(&[-1, 5]))?,
            xkx_entry(
                "2g",
                "B a full nilpotent block: last column of A free",
                Matrix::jordan_block(2, &int(0)),
            )?,
            xkx_entry(
                "2h",
                "B a full block at -1: first row of A free",
                Matrix::jordan_block(2, &int(-1)),
            )?,
        ]),
        3 => Ok(vec![
            xkx_entry(
                "3a",
                "B = diag(-1, -1, b), b generic (sample 2): top two rows of A free",
                d(&[-1, -1, 2]),
            )?,
            xkx_entry(
                "3b",
                "B = J2(-1) + (b), b generic (sample 2): first row of A free",
                Matrix::block_diag(&[Matrix::jordan_block(2, &int(-1)), d(&[2])]),
            )?,
            xkx_entry(
                "3c",
                "B = diag(-1, b2, b3), generic samples 2, 3: first row of A free",
                d(&[-1, 2, 3]),
            )?,
            xkx_entry(
                "3d",
                "B a full block at -1: first row of A free",
                Matrix::jordan_block(3, &int(-1)),
            )?,
            xkx_entry(
                "3e",
                "B = diag(0, b2, b3), generic samples 2, 3: first column of A free",
                d(&[0, 2, 3]),
            )?,
            xkx_entry(
                "3f",
                "B = J2(0) + (b), b generic (sample 2): second column of A free",
                Matrix::block_diag(&[Matrix::jordan_block(2, &int(0)), d(&[2])]),
            )?,
            xkx_entry(
                "3g",
                "B triangular with generic diagonal (samples 2, 2, 5): A = 0",
                Matrix::block_diag(&[Matrix::jordan_block(2, &int(2)), d(&[5])]),
            )?,
            xkx_entry(
                "3h",
                "B = J2(-1) + (0): first row and corner of A free",
                Matrix::block_diag(&[Matrix::jordan_block(2, &int(-1)), d(&[0])]),
            )?,
            xkx_entry(
                "3i",
                "B = (-1) + J2(0): first row and last column of A free",
                Matrix::block_diag(&[d(&[-1]), Matrix::jordan_block(2, &int(0))]),
            )?,
            xkx_entry(
                "3j",
                "B = diag(-1, b, 0), b generic (sample 2): hook-shaped A",
                d(&[-1, 2, 0]),
            )?,
            xkx_entry(
                "3k",
                "B with a lower-superdiagonal block at generic b (sample 2) and a zero: last column of A free",
                Matrix::from_rows(vec![
                    vec![int(2), int(-1), int(0)],
                    vec![int(0), int(2), int(0)],
                    vec![int(0), int(0), int(0)],
                ])
                .expect("fixed 3x3"),
            )?,
            xkx_entry(
                "3l",
                "B a full nilpotent block: last column of A free",
                Matrix::jordan_block(3, &int(0)),
            )?,
        ]),
        other => Err(Error::UnsupportedDimension(other)),
    }
}

fn catalog_quasi_idempotent(n: usize, flavor: Flavor) -> Result<Vec<CatalogEntry>> {
    if n == 0 {
        return Err(Error::UnsupportedDimension(0));
    }
    let variant = ClassifyVariant::of_flavor(flavor).expect("quasi-idempotent flavor");
    let mut entries = Vec::new();
    for k in 0..=n {
        let diag: Vec<Rational> = (0..n)
            .map(|i| if i < k { -Rational::one() } else { Rational::zero() })
            .collect();
        let b = Matrix::diag(&diag);
        let space = classify_kx(&b, variant)?;
        let a = representative(&space);
        let pair = ModulePair::new(flavor, a, b)?;
        assert!(verify_equation(&pair), "catalog entry must verify");
        let side = match variant {
            ClassifyVariant::I14 => "block lower-triangular",
            ClassifyVariant::I23 => "block upper-triangular",
        };
        entries.push(CatalogEntry {
            id: format!("k{k}"),
            description: format!("B = diag(-I_{k}, 0_{}), {side} A", n - k),
            pair,
            free_count: space.dim,
        });
    }
    Ok(entries)
}

/// Human-readable one-line summary of a witness (used by reports).
pub fn witness_summary(w: &SubmoduleWitness) -> String {
    let coords: Vec<String> = w.generator.iter().map(display).collect();
    format!(
        "span[{}] with x-eigenvalue {} and operator eigenvalue {}",
        coords.join(", "),
        display(&w.x_eigen),
        display(&w.p_eigen)
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mat;
    use crate::matrix::span_equal_vectors;
    use crate::rational::ratio;

    fn xkx(a: Matrix, b: Matrix) -> ModulePair {
        ModulePair::new(Flavor::XKx, a, b).unwrap()
    }

    #[test]
    fn eigenspace_of_diagonal() {
        let m = Matrix::diag(&[int(2), int(2), int(5)]);
        let e2 = eigenspace(&m, &int(2));
        assert_eq!(e2.len(), 2);
        assert!(span_equal_vectors(
            3,
            &e2,
            &[vec![int(1), int(0), int(0)], vec![int(0), int(1), int(0)]]
        ));
        assert!(eigenspace(&m, &int(7)).is_empty());
    }

    #[test]
    fn invariant_subspace_shrinks_to_fixed_point() {
        // A maps e2 -> e1, e1 -> e1; inside span{e2, e3} only e3 stays invariant
        let a = mat![[1, 1, 0], [0, 0, 0], [0, 0, 2]];
        let basis = vec![vec![int(0), int(1), int(0)], vec![int(0), int(0), int(1)]];
        let inv = largest_invariant_subspace(&a, &basis);
        assert_eq!(inv.len(), 1);
        assert!(span_equal_vectors(3, &inv, &[vec![int(0), int(0), int(1)]]));
    }

    #[test]
    fn witness_for_block_family() {
        // B = J2(-1), A with free first row: e1 is a common eigenvector
        let mp = xkx(mat![[3, 5], [0, 0]], mat![[-1, 1], [0, -1]]);
        let w = find_onedim_submodule(&mp).unwrap();
        assert!(w.check(&mp));
        assert_eq!(w.p_eigen, int(-1));
        assert_eq!(w.x_eigen, int(3));
    }

    #[test]
    fn witness_for_nilpotent_full_block() {
        // B = J3(0) with last-column A: the witness lives in the nilpotent
        // eigenspace and both eigenvalues come out zero
        let mp = xkx(
            mat![[0, 0, 1], [0, 0, 2], [0, 0, 3]],
            Matrix::jordan_block(3, &int(0)),
        );
        let w = find_onedim_submodule(&mp).unwrap();
        assert!(w.check(&mp));
        assert_eq!(w.p_eigen, int(0));
        assert_eq!(w.x_eigen, int(0));
    }

    #[test]
    fn witness_survives_irrational_restriction_on_one_eigenspace() {
        // on the -1 eigenspace A acts as a rotation (irrational spectrum),
        // but the 0 eigenspace still carries a rational witness
        let a = mat![[0, -1, 0], [1, 0, 0], [0, 0, 4]];
        let b = Matrix::diag(&[int(-1), int(-1), int(0)]);
        let mp = xkx(a, b);
        assert!(verify_equation(&mp));
        let w = find_onedim_submodule(&mp).unwrap();
        assert_eq!(w.p_eigen, int(0));
        assert_eq!(w.x_eigen, int(4));
    }

    #[test]
    fn no_rational_witness_reported_as_irrational() {
        // B = 0 makes every A valid; a rotation A has no rational eigenvector
        let mp = xkx(mat![[0, -1], [1, 0]], Matrix::zeros(2, 2));
        assert!(matches!(
            find_onedim_submodule(&mp),
            Err(Error::IrrationalSpectrum { .. })
        ));
    }

    #[test]
    fn invalid_pair_rejected() {
        let mp = xkx(mat![[1, 0], [0, 1]], mat![[-1, 0], [0, 5]]);
        assert!(!verify_equation(&mp));
        assert_eq!(find_onedim_submodule(&mp), Err(Error::NotAModule));
    }

    #[test]
    fn irreducibility_only_in_dimension_one() {
        let one = xkx(mat![[7]], mat![[-1]]);
        let r = is_irreducible(&one).unwrap();
        assert!(r.irreducible);

        let two = xkx(mat![[3, 5], [0, 0]], mat![[-1, 1], [0, -1]]);
        let r = is_irreducible(&two).unwrap();
        assert!(!r.irreducible);
        assert!(r.witness.is_some());

        let blocked = xkx(mat![[0, -1], [1, 0]], Matrix::zeros(2, 2));
        let r = is_irreducible(&blocked).unwrap();
        assert!(!r.irreducible);
        assert!(r.witness.is_none());
        assert!(r.spectrum_obstruction);
    }

    #[test]
    fn projectors_split_quasi_idempotent_operator() {
        let b = Matrix::diag(&[int(-2), int(-2), int(0)]);
        let (e, f) = regular_singular_projectors(&b, &int(2)).unwrap();
        assert_eq!(e.rank(), 2);
        assert_eq!(f.rank(), 1);
        assert_eq!(&e * &e, e);
        assert_eq!(&f * &f, f);
        assert!((&e * &f).is_zero());
        assert_eq!(&e + &f, Matrix::identity(3));

        assert_eq!(
            regular_singular_projectors(&Matrix::diag(&[int(1)]), &int(2)),
            Err(Error::NotQuasiIdempotent)
        );
        let half = regular_singular_projectors(&Matrix::diag(&[ratio(-1, 2), int(0)]), &ratio(1, 2));
        assert!(half.is_ok());
    }

    #[test]
    fn commutant_contains_identity_and_respects_both_actions() {
        let mp = xkx(mat![[2, 1], [0, 2]], Matrix::diag(&[int(-1), int(0)]));
        let basis = commutant(&mp);
        assert_eq!(basis.len(), 1);
        // the only commuting matrices are scalars
        assert!(span_equal_vectors(
            4,
            &basis.iter().map(|m| m.vec_cols()).collect::<Vec<_>>(),
            &[Matrix::identity(2).vec_cols()]
        ));
    }

    #[test]
    fn counterexample_pairs_are_indecomposable() {
        // operator diagonalizable yet the module does not split
        let mp = xkx(mat![[2, 1], [0, 2]], Matrix::diag(&[int(-1), int(0)]));
        let report = is_indecomposable(&mp).unwrap();
        assert_eq!(report.verdict, Verdict::Indecomposable);
        assert_eq!(report.semisimple_quotient_dim, 1);

        let mp = xkx(
            mat![[0, 0, 0], [0, 0, 1], [0, 0, 0]],
            mat![[-1, 1, 0], [0, -1, 0], [0, 0, 0]],
        );
        assert!(verify_equation(&mp));
        let report = is_indecomposable(&mp).unwrap();
        assert_eq!(report.verdict, Verdict::Indecomposable);
    }

    #[test]
    fn trivial_pair_splits_with_explicit_idempotent() {
        let mp = xkx(Matrix::zeros(2, 2), Matrix::zeros(2, 2));
        let report = is_indecomposable(&mp).unwrap();
        assert_eq!(report.verdict, Verdict::Decomposable);
        assert_eq!(report.commutant_basis.len(), 4);
        assert_eq!(report.radical_dim, 0);
        let e = report.splitting_idempotent.unwrap();
        assert_eq!(&(&e * &e), &e);
        assert!(!e.is_zero());
        assert_ne!(e, Matrix::identity(2));
    }

    #[test]
    fn direct_sum_is_detected_as_decomposable() {
        // two single-block modules glued diagonally
        let m1 = single_block_family(2, FamilyCase::FirstRow, &int(-1), &[int(1), int(2)]).unwrap();
        let m2 = single_block_family(1, FamilyCase::LastColumn, &int(0), &[int(4)]).unwrap();
        let a = Matrix::block_diag(&[m1.a().clone(), m2.a().clone()]);
        let b = Matrix::block_diag(&[m1.b().clone(), m2.b().clone()]);
        let mp = xkx(a, b);
        assert!(verify_equation(&mp));
        let report = is_indecomposable(&mp).unwrap();
        assert_eq!(report.verdict, Verdict::Decomposable);
        assert!(report.semisimple_quotient_dim >= 2);
    }

    #[test]
    fn single_block_families_verify_and_guard() {
        let first = single_block_family(4, FamilyCase::FirstRow, &int(-1), &[int(1), int(2), int(3), int(4)]).unwrap();
        assert_eq!(first.a().get(0, 3), &int(4));
        assert!(verify_equation(&first));

        let last = single_block_family(3, FamilyCase::LastColumn, &int(0), &[int(5), int(6), int(7)]).unwrap();
        assert_eq!(last.a().get(2, 2), &int(7));

        let zero = single_block_family(3, FamilyCase::Zero, &int(2), &[]).unwrap();
        assert!(zero.a().is_zero());

        assert!(single_block_family(3, FamilyCase::FirstRow, &int(0), &[int(1), int(1), int(1)]).is_err());
        assert!(single_block_family(3, FamilyCase::LastColumn, &int(-1), &[int(1), int(1), int(1)]).is_err());
        assert!(single_block_family(3, FamilyCase::Zero, &int(0), &[]).is_err());
        assert!(single_block_family(2, FamilyCase::FirstRow, &int(-1), &[int(1)]).is_err());
    }

    #[test]
    fn catalog_counts_frozen() {
        let expected_1 = vec![("1a", 1), ("1b", 1), ("1c", 0)];
        let got = catalog(1, Flavor::XKx).unwrap();
        assert_eq!(
            got.iter().map(|e| (e.id.as_str(), e.free_count)).collect::<Vec<_>>(),
            expected_1
        );

        let expected_2 = vec![
            ("2a", 4),
            ("2b", 4),
            ("2c", 0),
            ("2d", 2),
            ("2e", 3),
            ("2f", 2),
            ("2g", 2),
            ("2h", 2),
        ];
        let got = catalog(2, Flavor::XKx).unwrap();
        assert_eq!(
            got.iter().map(|e| (e.id.as_str(), e.free_count)).collect::<Vec<_>>(),
            expected_2
        );

        let expected_3 = vec![
            ("3a", 6),
            ("3b", 3),
            ("3c", 3),
            ("3d", 3),
            ("3e", 3),
            ("3f", 3),
            ("3g", 0),
            ("3h", 5),
            ("3i", 5),
            ("3j", 5),
            ("3k", 3),
            ("3l", 3),
        ];
        let got = catalog(3, Flavor::XKx).unwrap();
        assert_eq!(
            got.iter().map(|e| (e.id.as_str(), e.free_count)).collect::<Vec<_>>(),
            expected_3
        );

        assert!(catalog(4, Flavor::XKx).is_err());
    }

    #[test]
    fn quasi_idempotent_catalog_counts() {
        let got = catalog(3, Flavor::KxP1).unwrap();
        let counts: Vec<usize> = got.iter().map(|e| e.free_count).collect();
        // k^2 + (n-k)^2 + k(n-k) for k = 0..=3
        assert_eq!(counts, vec![9, 7, 7, 9]);
        for e in &got {
            assert!(verify_equation(&e.pair), "entry {}", e.id);
        }
        let got = catalog(2, Flavor::KxP3).unwrap();
        let counts: Vec<usize> = got.iter().map(|e| e.free_count).collect();
        assert_eq!(counts, vec![4, 3, 4]);
    }

    #[test]
    fn every_catalog_pair_has_a_witness_or_obstruction() {
        // representatives with a large solution space can have irrational
        // x-spectra; anything else must yield a checked witness
        for n in 1..=3 {
            for entry in catalog(n, Flavor::XKx).unwrap() {
                match find_onedim_submodule(&entry.pair) {
                    Ok(w) => assert!(w.check(&entry.pair), "entry {}", entry.id),
                    Err(Error::IrrationalSpectrum { .. }) => {}
                    Err(e) => panic!("entry {} unexpectedly failed: {e}", entry.id),
                }
            }
        }
    }
}
