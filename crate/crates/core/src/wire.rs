//! JSON wire formats shared by the command-line tool and test fixtures.
//!
//! Every rational travels as a string (an integer or `"p/q"` fraction) so
//! round trips are exact; matrices are arrays of row arrays, polynomials
//! are coefficient arrays indexed by degree.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::matsolve::SolutionSpace;
use crate::poly::Polynomial;
use crate::rational::{self, display};
use crate::rbops::{Flavor, ModulePair, OperatorFamily, RbOperator, DEFAULT_TRUNCATION};
use crate::structure::{
    commutant, find_onedim_submodule, is_indecomposable, is_irreducible, SubmoduleWitness,
};
use serde::{Deserialize, Serialize};

/// Serializes a matrix as rows of exact rational strings.
pub fn matrix_to_rows(m: &Matrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| display(m.get(i, j))).collect())
        .collect()
}

/// Parses a matrix from rows of rational strings.
pub fn matrix_from_rows(rows: &[Vec<String>]) -> Result<Matrix> {
    let mut parsed = Vec::with_capacity(rows.len());
    for row in rows {
        let mut out = Vec::with_capacity(row.len());
        for cell in row {
            out.push(rational::parse(cell)?);
        }
        parsed.push(out);
    }
    Matrix::from_rows(parsed)
}

/// Serializes a polynomial as its coefficient strings, index = degree.
pub fn poly_to_coeffs(p: &Polynomial) -> Vec<String> {
    p.coeffs().iter().map(display).collect()
}

/// Parses a polynomial from coefficient strings, index = degree.
pub fn poly_from_coeffs(coeffs: &[String]) -> Result<Polynomial> {
    let parsed = coeffs
        .iter()
        .map(|c| rational::parse(c))
        .collect::<Result<Vec<_>>>()?;
    Ok(Polynomial::from_coeffs(parsed))
}

fn default_truncation() -> usize {
    DEFAULT_TRUNCATION
}

/// Wire form of an operator: `{"family":"P2","weight":"1","b":null,"truncation":12}`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct OperatorSpec {
    pub family: String,
    pub weight: String,
    #[serde(default)]
    pub b: Option<String>,
    #[serde(default = "default_truncation")]
    pub truncation: usize,
}

impl OperatorSpec {
    pub fn from_operator(op: &RbOperator) -> Self {
        OperatorSpec {
            family: op.family().name().to_string(),
            weight: display(op.weight_value()),
            b: op.b_value().map(display),
            truncation: op.truncation_order(),
        }
    }

    pub fn to_operator(&self) -> Result<RbOperator> {
        let family = OperatorFamily::from_name(&self.family)?;
        let weight = rational::parse(&self.weight)?;
        let b = self.b.as_deref().map(rational::parse).transpose()?;
        RbOperator::new(family, weight, b, self.truncation)
    }
}

/// Wire form of a module pair: flavor name plus the two matrices.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PairSpec {
    pub flavor: String,
    pub a: Vec<Vec<String>>,
    pub b: Vec<Vec<String>>,
}

impl PairSpec {
    pub fn from_pair(mp: &ModulePair) -> Self {
        PairSpec {
            flavor: mp.flavor().name().to_string(),
            a: matrix_to_rows(mp.a()),
            b: matrix_to_rows(mp.b()),
        }
    }

    pub fn to_pair(&self) -> Result<ModulePair> {
        let flavor = Flavor::from_name(&self.flavor)?;
        let a = matrix_from_rows(&self.a)?;
        let b = matrix_from_rows(&self.b)?;
        ModulePair::new(flavor, a, b)
    }
}

/// One block pair of a solution-space pattern; indices and cells are 1-based.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PatternDto {
    pub block_row: usize,
    pub block_col: usize,
    pub case: String,
    pub free_cells: Vec<(usize, usize)>,
}

/// Wire form of a solution space: dimension, basis matrices, and the
/// blockwise free-cell pattern.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct SolutionSpaceDto {
    pub dim: usize,
    pub basis: Vec<Vec<Vec<String>>>,
    pub pattern: Vec<PatternDto>,
}

impl SolutionSpaceDto {
    pub fn from_space(space: &SolutionSpace) -> Self {
        SolutionSpaceDto {
            dim: space.dim,
            basis: space.basis.iter().map(matrix_to_rows).collect(),
            pattern: space
                .pairs
                .iter()
                .map(|p| PatternDto {
                    block_row: p.block_row,
                    block_col: p.block_col,
                    case: p.pattern.case.label().to_string(),
                    free_cells: p.pattern.free_cells.clone(),
                })
                .collect(),
        }
    }
}

/// Wire form of a one-dimensional submodule witness.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessDto {
    pub generator: Vec<String>,
    pub x_eigen: String,
    pub p_eigen: String,
}

impl WitnessDto {
    pub fn from_witness(w: &SubmoduleWitness) -> Self {
        WitnessDto {
            generator: w.generator.iter().map(display).collect(),
            x_eigen: display(&w.x_eigen),
            p_eigen: display(&w.p_eigen),
        }
    }
}

/// Full structure report for one module pair.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct AnalysisReport {
    pub module: PairSpec,
    pub valid: bool,
    pub irreducible: bool,
    pub submodule_witness: Option<WitnessDto>,
    /// `"yes"`, `"no"`, or `"inconclusive"`.
    pub indecomposable: String,
    pub commutant_dim: usize,
    /// Rank of the regular projector when the operator matrix is
    /// quasi-idempotent, absent otherwise.
    pub regular_rank: Option<usize>,
}

impl AnalysisReport {
    /// Runs the full structure analysis. Invalid pairs get a report with
    /// `valid: false` and neutral structure fields rather than an error.
    pub fn build(mp: &ModulePair) -> Result<Self> {
        let module = PairSpec::from_pair(mp);
        let commutant_dim = commutant(mp).len();
        let b = mp.b();
        let quasi = (b * b) == b.scale(&rational::int(-1));
        let regular_rank = quasi.then(|| b.rank());

        let valid = crate::matsolve::verify_equation(mp);
        if !valid {
            return Ok(AnalysisReport {
                module,
                valid,
                irreducible: false,
                submodule_witness: None,
                indecomposable: "inconclusive".to_string(),
                commutant_dim,
                regular_rank,
            });
        }

        let irr = is_irreducible(mp)?;
        let witness = match find_onedim_submodule(mp) {
            Ok(w) => Some(WitnessDto::from_witness(&w)),
            Err(Error::IrrationalSpectrum { .. }) => None,
            Err(e) => return Err(e),
        };
        let end = is_indecomposable(mp)?;
        Ok(AnalysisReport {
            module,
            valid,
            irreducible: irr.irreducible,
            submodule_witness: witness,
            indecomposable: end.verdict.label().to_string(),
            commutant_dim,
            regular_rank,
        })
    }

    /// True when some verdict could not be decided over the rationals:
    /// no witness despite dimension at least two, or an inconclusive
    /// indecomposability check.
    pub fn undecided(&self) -> bool {
        (self.valid && self.module.a.len() >= 2 && self.submodule_witness.is_none())
            || self.indecomposable == "inconclusive"
    }
}
