//! Exact Jordan decomposition for matrices with rational spectrum.
//!
//! Block sizes come from the kernel dimensions of powers of `M - eig*I`, and
//! the change of basis from Jordan chains grown top-down: a chain of height
//! `h` contributes columns `N^{h-1}t, ..., Nt, t`. Matrices whose
//! characteristic polynomial does not split over `Q` are rejected with
//! [`Error::IrrationalSpectrum`]; nothing is ever approximated.

use crate::error::{Error, Result};
use crate::matrix::{rank_of_vectors, Matrix};
use crate::poly::rational_roots;
use crate::rational::Rational;

/// Jordan form data: `M = basis * J * basis^{-1}` where `J` is the
/// block-diagonal assembly of `blocks`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanDecomposition {
    /// Change of basis `S`, columns are the Jordan chains.
    pub basis: Matrix,
    /// `(eigenvalue, size)` pairs, sorted by eigenvalue ascending and then
    /// size descending.
    pub blocks: Vec<(Rational, usize)>,
}

impl JordanDecomposition {
    /// Assembles the block-diagonal Jordan matrix `J`.
    pub fn jordan_matrix(&self) -> Matrix {
        let blocks: Vec<Matrix> = self
            .blocks
            .iter()
            .map(|(eig, size)| Matrix::jordan_block(*size, eig))
            .collect();
        Matrix::block_diag(&blocks)
    }

    /// Total dimension covered by the blocks.
    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|(_, s)| s).sum()
    }
}

/// Computes the Jordan decomposition of a square matrix with rational
/// spectrum.
pub fn jordan_form(m: &Matrix) -> Result<JordanDecomposition> {
    if !m.is_square() {
        return Err(Error::NonSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let roots = rational_roots(&m.char_poly()?);
    let found: usize = roots.iter().map(|(_, k)| k).sum();
    if found < n {
        return Err(Error::IrrationalSpectrum { found, needed: n });
    }

    let mut blocks = Vec::new();
    let mut columns: Vec<Vec<Rational>> = Vec::new();

    for (eig, alg_mult) in roots {
        let nil = m - &Matrix::identity(n).scale(&eig);
        // powers[j] = nil^j and kernels[j] = basis of ker nil^j
        let mut powers = vec![Matrix::identity(n)];
        let mut kernels: Vec<Vec<Vec<Rational>>> = vec![Vec::new()];
        loop {
            let next = powers.last().unwrap() * &nil;
            let ker = next.kernel_basis();
            let dim = ker.len();
            powers.push(next);
            kernels.push(ker);
            assert!(powers.len() <= n + 1, "kernel growth must stabilize");
            if dim == alg_mult {
                break;
            }
        }
        let max_height = powers.len() - 1;

        // grow chains from the tallest level down, extending what lower
        // kernels and existing chains already cover
        let mut chains: Vec<(usize, Vec<Rational>)> = Vec::new();
        for level in (1..=max_height).rev() {
            let mut covered: Vec<Vec<Rational>> = kernels[level - 1].clone();
            for (height, top) in &chains {
                covered.push(powers[height - level].mul_vec(top));
            }
            let mut rank = rank_of_vectors(n, &covered);
            for cand in &kernels[level] {
                let mut trial = covered.clone();
                trial.push(cand.clone());
                let r = rank_of_vectors(n, &trial);
                if r > rank {
                    rank = r;
                    covered = trial;
                    chains.push((level, cand.clone()));
                }
            }
            assert_eq!(rank, kernels[level].len(), "chain tops must span the level");
        }

        let mut total = 0;
        for (height, top) in &chains {
            blocks.push((eig.clone(), *height));
            for step in (0..*height).rev() {
                columns.push(powers[step].mul_vec(top));
            }
            total += height;
        }
        assert_eq!(total, alg_mult, "chains must fill the generalized eigenspace");
    }

    Ok(JordanDecomposition {
        basis: Matrix::from_columns(n, &columns),
        blocks,
    })
}
