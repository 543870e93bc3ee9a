//! Closed-form solution spaces for the defining matrix equations, with
//! brute-force Kronecker oracles to check them against.
//!
//! For the constant-free flavor the equation is `AB = -BAB` with `B` fixed.
//! Conjugating `B` into Jordan form splits `A` into blocks `X` indexed by
//! ordered pairs of Jordan blocks `(J_s(b1), J_t(b2))`, each satisfying
//! `X J_t(b2) = -J_s(b1) X J_t(b2)`. The solutions follow a four-way case
//! split on `(b1 = -1, b2 = 0)`:
//!
//! 1. `b1 = -1, b2 = 0`: first row and last column of `X` free (`s + t - 1`
//!    parameters),
//! 2. `b1 = -1, b2 != 0`: first row free (`t`),
//! 3. `b1 != -1, b2 = 0`: last column free (`s`),
//! 4. otherwise only `X = 0`.
//!
//! For the quasi-idempotent flavors `B` is conjugated to `diag(-I_k, 0)` and
//! `A` becomes block lower-triangular (`BA = -BAB` side) or block
//! upper-triangular (`AB = -BAB` side), `k^2 + (n-k)^2 + k(n-k)` parameters
//! either way.
//!
//! Every closed form here is cross-checked by vectorizing the equation:
//! `(I + B) A B = 0` has solution space `ker(B^T ⊗ (I + B))`, and
//! `B A (I + B) = 0` has `ker((I + B)^T ⊗ B)`. The oracles know nothing
//! about Jordan theory, which is what makes the comparison meaningful.

use crate::error::{Error, Result};
use crate::exec::ordered_map;
use crate::jordan::jordan_form;
use crate::matrix::Matrix;
use crate::rational::{int, Rational};
use crate::rbops::{Flavor, ModulePair};
use num::traits::{One, Zero};

/// Shape of the solution set for one Jordan block pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BlockCase {
    /// First row and last column free.
    RowAndColumn,
    /// First row free.
    Row,
    /// Last column free.
    Column,
    /// Only the zero block.
    Zero,
    /// Every cell free (used by the eigenspace-grid classification).
    Full,
}

impl BlockCase {
    /// Wire label; the four Jordan-pair cases keep their traditional numbers.
    pub fn label(&self) -> &'static str {
        match self {
            BlockCase::RowAndColumn => "(1)",
            BlockCase::Row => "(2)",
            BlockCase::Column => "(3)",
            BlockCase::Zero => "(4)",
            BlockCase::Full => "full",
        }
    }
}

/// Free-cell pattern for a single `s x t` block, 1-based cells in row-major
/// order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockPattern {
    pub rows: usize,
    pub cols: usize,
    pub case: BlockCase,
    pub free_cells: Vec<(usize, usize)>,
}

impl BlockPattern {
    /// Number of free parameters.
    pub fn dim(&self) -> usize {
        self.free_cells.len()
    }

    /// Unit-matrix basis of the pattern, one `rows x cols` matrix per free
    /// cell, in cell order.
    pub fn basis(&self) -> Vec<Matrix> {
        self.free_cells
            .iter()
            .map(|&(r, c)| Matrix::unit(self.rows, self.cols, r - 1, c - 1))
            .collect()
    }
}

/// Closed-form solution pattern of `X J_t(b2) = -J_s(b1) X J_t(b2)`.
pub fn solve_block(s: usize, t: usize, b1: &Rational, b2: &Rational) -> Result<BlockPattern> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidBlockParams(format!(
            "block sizes must be positive, got {s} x {t}"
        )));
    }
    let row_special = b1 == &-Rational::one();
    let col_special = b2.is_zero();
    let (case, free_cells) = match (row_special, col_special) {
        (true, true) => {
            let mut cells: Vec<(usize, usize)> = (1..=t).map(|c| (1, c)).collect();
            cells.extend((2..=s).map(|r| (r, t)));
            (BlockCase::RowAndColumn, cells)
        }
        (true, false) => (BlockCase::Row, (1..=t).map(|c| (1, c)).collect()),
        (false, true) => (BlockCase::Column, (1..=s).map(|r| (r, t)).collect()),
        (false, false) => (BlockCase::Zero, Vec::new()),
    };
    Ok(BlockPattern {
        rows: s,
        cols: t,
        case,
        free_cells,
    })
}

/// Brute-force twin of [`solve_block`]: the echelon-normalized kernel of
/// `J_t(b2)^T ⊗ (I_s + J_s(b1))`, returned as `s x t` matrices.
pub fn oracle_block_kernel(
    s: usize,
    t: usize,
    b1: &Rational,
    b2: &Rational,
) -> Result<Vec<Matrix>> {
    if s == 0 || t == 0 {
        return Err(Error::InvalidBlockParams(format!(
            "block sizes must be positive, got {s} x {t}"
        )));
    }
    let js = Matrix::jordan_block(s, b1);
    let jt = Matrix::jordan_block(t, b2);
    let system = jt
        .transpose()
        .kron(&(&Matrix::identity(s) + &js));
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::unvec(s, t, &v))
        .collect())
}

/// Pattern attached to an ordered pair of diagonal blocks (1-based indices).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPattern {
    pub block_row: usize,
    pub block_col: usize,
    pub pattern: BlockPattern,
}

/// Full solution space of a defining equation for a fixed `B`.
///
/// `basis` lives in the original coordinates of `B` (the conjugation by
/// `basis_change` is already applied). `blocks` are the diagonal blocks of
/// the normal form the patterns refer to: Jordan blocks for the
/// constant-free flavor, the `-1` and `0` eigenspace blocks for the
/// quasi-idempotent classification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionSpace {
    pub dim: usize,
    pub basis: Vec<Matrix>,
    pub blocks: Vec<(Rational, usize)>,
    pub pairs: Vec<PairPattern>,
    pub basis_change: Matrix,
}

/// Closed-form solution space of `AB = -BAB` for a fixed `B` with rational
/// spectrum: Jordan-decomposes `B`, solves every block pair, and conjugates
/// the unit-cell basis back. Deterministic basis order: block pairs
/// row-major, cells row-major within each pattern.
pub fn solution_space_xkx(b: &Matrix) -> Result<SolutionSpace> {
    let jd = jordan_form(b)?;
    let s = jd.basis.clone();
    let s_inv = s.inverse().expect("Jordan basis is invertible");
    let n = b.rows();

    let offsets: Vec<usize> = jd
        .blocks
        .iter()
        .scan(0, |acc, (_, size)| {
            let here = *acc;
            *acc += size;
            Some(here)
        })
        .collect();

    let mut pairs = Vec::new();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for (i, (b1, p1)) in jd.blocks.iter().enumerate() {
        for (j, (b2, p2)) in jd.blocks.iter().enumerate() {
            let pattern = solve_block(*p1, *p2, b1, b2)?;
            for &(r, c) in &pattern.free_cells {
                cells.push((offsets[i] + r - 1, offsets[j] + c - 1));
            }
            pairs.push(PairPattern {
                block_row: i + 1,
                block_col: j + 1,
                pattern,
            });
        }
    }

    let basis = ordered_map(cells, |(r, c)| {
        let unit = Matrix::unit(n, n, r, c);
        &(&s * &unit) * &s_inv
    });

    let space = SolutionSpace {
        dim: basis.len(),
        basis,
        blocks: jd.blocks.clone(),
        pairs,
        basis_change: s,
    };
    debug_assert_eq!(space.dim, dim_formula(&space.blocks));
    Ok(space)
}

/// Sum of the case counts over all ordered Jordan block pairs; the dimension
/// of the space produced by [`solution_space_xkx`] without constructing it.
pub fn dim_formula(blocks: &[(Rational, usize)]) -> usize {
    let minus_one = -Rational::one();
    let mut total = 0;
    for (b1, p1) in blocks {
        for (b2, p2) in blocks {
            total += match (b1 == &minus_one, b2.is_zero()) {
                (true, true) => p1 + p2 - 1,
                (true, false) => *p2,
                (false, true) => *p1,
                (false, false) => 0,
            };
        }
    }
    total
}

/// Which side condition the triangular classification solves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassifyVariant {
    /// `BA = -BAB` (operator families 1 and 4): block lower-triangular `A`.
    I14,
    /// `AB = -BAB` (operator families 2 and 3): block upper-triangular `A`.
    I23,
}

impl ClassifyVariant {
    pub fn name(&self) -> &'static str {
        match self {
            ClassifyVariant::I14 => "i14",
            ClassifyVariant::I23 => "i23",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "i14" => Ok(ClassifyVariant::I14),
            "i23" => Ok(ClassifyVariant::I23),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }

    /// Variant matching a module flavor, if the flavor is quasi-idempotent.
    pub fn of_flavor(flavor: Flavor) -> Option<ClassifyVariant> {
        match flavor {
            Flavor::KxP1 | Flavor::KxP4 => Some(ClassifyVariant::I14),
            Flavor::KxP2 | Flavor::KxP3 => Some(ClassifyVariant::I23),
            Flavor::XKx => None,
        }
    }
}

/// Classification for quasi-idempotent `B` (`B^2 = -B`): diagonalizes `B`
/// to `diag(-I_k, 0)` and returns the block-triangular `A`-space for the
/// requested side, `k^2 + (n-k)^2 + k(n-k)` dimensional.
pub fn classify_kx(b: &Matrix, variant: ClassifyVariant) -> Result<SolutionSpace> {
    if !b.is_square() {
        return Err(Error::NonSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let n = b.rows();
    if &(b * b) != &(-b) {
        return Err(Error::NotQuasiIdempotent);
    }
    let minus_part = (b + &Matrix::identity(n)).kernel_basis();
    let zero_part = b.kernel_basis();
    let k = minus_part.len();
    assert_eq!(
        k + zero_part.len(),
        n,
        "quasi-idempotent matrices are diagonalizable"
    );
    let mut columns = minus_part;
    columns.extend(zero_part);
    let s = Matrix::from_columns(n, &columns);
    let s_inv = s.inverse().expect("eigenvector basis is invertible");

    let mut blocks = Vec::new();
    if k > 0 {
        blocks.push((-Rational::one(), k));
    }
    if n - k > 0 {
        blocks.push((Rational::zero(), n - k));
    }

    let offsets: Vec<usize> = blocks
        .iter()
        .scan(0, |acc, (_, size)| {
            let here = *acc;
            *acc += size;
            Some(here)
        })
        .collect();

    let mut pairs = Vec::new();
    let mut cells = Vec::new();
    for (i, (b1, p1)) in blocks.iter().enumerate() {
        for (j, (b2, p2)) in blocks.iter().enumerate() {
            let forced_zero = match variant {
                ClassifyVariant::I14 => b1 == &-Rational::one() && b2.is_zero(),
                ClassifyVariant::I23 => b1.is_zero() && b2 == &-Rational::one(),
            };
            let (case, free_cells) = if forced_zero {
                (BlockCase::Zero, Vec::new())
            } else {
                let all: Vec<(usize, usize)> = (1..=*p1)
                    .flat_map(|r| (1..=*p2).map(move |c| (r, c)))
                    .collect();
                (BlockCase::Full, all)
            };
            for &(r, c) in &free_cells {
                cells.push((offsets[i] + r - 1, offsets[j] + c - 1));
            }
            pairs.push(PairPattern {
                block_row: i + 1,
                block_col: j + 1,
                pattern: BlockPattern {
                    rows: *p1,
                    cols: *p2,
                    case,
                    free_cells,
                },
            });
        }
    }

    let basis = ordered_map(cells, |(r, c)| {
        let unit = Matrix::unit(n, n, r, c);
        &(&s * &unit) * &s_inv
    });

    assert_eq!(basis.len(), k * k + (n - k) * (n - k) + k * (n - k));
    Ok(SolutionSpace {
        dim: basis.len(),
        basis,
        blocks,
        pairs,
        basis_change: s,
    })
}

/// Brute-force solution space of the flavor's side condition for a fixed
/// `B`: the kernel of the Kronecker-vectorized linear system, with no Jordan
/// theory involved. (For the quasi-idempotent flavors this is just the side
/// condition; `B^2 = -B` is a property of `B` alone and is checked
/// separately by [`verify_equation`].)
pub fn oracle_full_kernel(b: &Matrix, flavor: Flavor) -> Result<Vec<Matrix>> {
    if !b.is_square() {
        return Err(Error::NonSquare {
            rows: b.rows(),
            cols: b.cols(),
        });
    }
    let n = b.rows();
    let i_plus_b = &Matrix::identity(n) + b;
    let system = if flavor.operator_acts_left() {
        // B A (I + B) = 0
        i_plus_b.transpose().kron(b)
    } else {
        // (I + B) A B = 0
        b.transpose().kron(&i_plus_b)
    };
    Ok(system
        .kernel_basis()
        .into_iter()
        .map(|v| Matrix::unvec(n, n, &v))
        .collect())
}

/// Checks the defining matrix equation of the pair's flavor directly:
/// `B^2 = -B` where required, plus `BA = -BAB` or `AB = -BAB` per side.
pub fn verify_equation(mp: &ModulePair) -> bool {
    let a = mp.a();
    let b = mp.b();
    if mp.flavor().requires_quasi_idempotent() && &(b * b) != &(-b) {
        return false;
    }
    let bab = &(b * a) * b;
    if mp.flavor().operator_acts_left() {
        b * a == -&bab
    } else {
        a * b == -&bab
    }
}

/// Representative `A` with every free cell of the pattern set to a distinct
/// nonzero integer, in the original coordinates of the space.
pub fn representative(space: &SolutionSpace) -> Matrix {
    let n = space.basis_change.rows();
    let mut acc = Matrix::zeros(n, n);
    for (idx, elem) in space.basis.iter().enumerate() {
        acc = &acc + &elem.scale(&int(idx as i64 + 1));
    }
    acc
}
