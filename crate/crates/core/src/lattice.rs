//! Intersection arithmetic on the numerical lattice of a surface, plus the
//! Chern calculus of short exact sequences truncated in degree 2.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("intersection form needs at least one basis element")]
    EmptyBasis,
    #[error("basis has {labels} labels but the matrix has {rows} rows")]
    LabelCount { labels: usize, rows: usize },
    #[error("row {row} of the intersection matrix has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("intersection matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("divisor class has {found} coefficients but the lattice has rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("class with C^2 + K.C = {value} (odd) is not represented by a curve")]
    NonCurveClass { value: BigInt },
    #[error("rank must be positive, got {0}")]
    NonPositiveRank(BigInt),
    #[error("a line bundle has c2 = 0, got c2 = {0}")]
    LineBundleSecondClass(BigInt),
    #[error("subbundle rank {sub} is not smaller than the total rank {total}")]
    RankNotSmaller { sub: BigInt, total: BigInt },
    #[error("inconsistent sequence: {0}")]
    InconsistentSequence(String),
}

/// Symmetric integer pairing on a rank-k divisor lattice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionForm {
    basis: Vec<String>,
    matrix: Vec<Vec<BigInt>>,
}

impl IntersectionForm {
    pub fn new<S: Into<String>>(
        basis: Vec<S>,
        matrix: Vec<Vec<BigInt>>,
    ) -> Result<Self, LatticeError> {
        let basis: Vec<String> = basis.into_iter().map(Into::into).collect();
        let k = matrix.len();
        if k == 0 {
            return Err(LatticeError::EmptyBasis);
        }
        if basis.len() != k {
            return Err(LatticeError::LabelCount {
                labels: basis.len(),
                rows: k,
            });
        }
        for (row, entries) in matrix.iter().enumerate() {
            if entries.len() != k {
                return Err(LatticeError::NotSquare {
                    row,
                    len: entries.len(),
                    expected: k,
                });
            }
        }
        for (i, row) in matrix.iter().enumerate() {
            for (j, entry) in row.iter().enumerate().skip(i + 1) {
                if *entry != matrix[j][i] {
                    return Err(LatticeError::NotSymmetric { i, j });
                }
            }
        }
        Ok(Self { basis, matrix })
    }

    /// Rank-one lattice spanned by a single class of the given self-intersection.
    pub fn rank_one(label: impl Into<String>, self_intersection: BigInt) -> Self {
        Self {
            basis: vec![label.into()],
            matrix: vec![vec![self_intersection]],
        }
    }

    /// Rank-two lattice with isotropic generators meeting in `pairing` points.
    pub fn hyperbolic(
        first: impl Into<String>,
        second: impl Into<String>,
        pairing: BigInt,
    ) -> Self {
        Self {
            basis: vec![first.into(), second.into()],
            matrix: vec![
                vec![BigInt::zero(), pairing.clone()],
                vec![pairing, BigInt::zero()],
            ],
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[String] {
        &self.basis
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.matrix[i][j]
    }

    fn check(&self, class: &DivisorClass) -> Result<(), LatticeError> {
        if class.rank() != self.rank() {
            return Err(LatticeError::DimensionMismatch {
                expected: self.rank(),
                found: class.rank(),
            });
        }
        Ok(())
    }

    /// `d1ᵀ · M · d2`.
    pub fn intersect(&self, d1: &DivisorClass, d2: &DivisorClass) -> Result<BigInt, LatticeError> {
        self.check(d1)?;
        self.check(d2)?;
        let mut total = BigInt::zero();
        for (i, a) in d1.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in d2.coefficients.iter().enumerate() {
                total += a * &self.matrix[i][j] * b;
            }
        }
        Ok(total)
    }

    pub fn square(&self, class: &DivisorClass) -> Result<BigInt, LatticeError> {
        self.intersect(class, class)
    }

    /// Arithmetic genus `1 + (C² + K·C)/2` of a curve in the class `curve`.
    pub fn adjunction_genus(
        &self,
        curve: &DivisorClass,
        canonical: &DivisorClass,
    ) -> Result<BigInt, LatticeError> {
        let value = self.square(curve)? + self.intersect(canonical, curve)?;
        if value.is_odd() {
            return Err(LatticeError::NonCurveClass { value });
        }
        Ok(BigInt::one() + value / 2)
    }

    /// `μ_H = (c1 · H) / rank` as an exact rational.
    pub fn slope(
        &self,
        c1: &DivisorClass,
        rank: &BigInt,
        polarization: &DivisorClass,
    ) -> Result<BigRational, LatticeError> {
        if !rank.is_positive() {
            return Err(LatticeError::NonPositiveRank(rank.clone()));
        }
        let degree = self.intersect(c1, polarization)?;
        Ok(BigRational::new(degree, rank.clone()))
    }

    /// Renders a class over the basis labels, e.g. `2A + 2B` or `-3K`.
    pub fn format_class(&self, class: &DivisorClass) -> String {
        let mut out = String::new();
        for (coeff, label) in class.coefficients.iter().zip(&self.basis) {
            if coeff.is_zero() {
                continue;
            }
            let magnitude = coeff.abs();
            if out.is_empty() {
                if coeff.is_negative() {
                    out.push('-');
                }
            } else if coeff.is_negative() {
                out.push_str(" - ");
            } else {
                out.push_str(" + ");
            }
            if !magnitude.is_one() {
                out.push_str(&magnitude.to_string());
            }
            out.push_str(label);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// Integer coefficient vector relative to the basis of an [`IntersectionForm`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    coefficients: Vec<BigInt>,
}

impl DivisorClass {
    pub fn new(coefficients: Vec<BigInt>) -> Self {
        Self { coefficients }
    }

    pub fn from_ints(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().copied().map(BigInt::from).collect())
    }

    pub fn zero(rank: usize) -> Self {
        Self::new(vec![BigInt::zero(); rank])
    }

    pub fn rank(&self) -> usize {
        self.coefficients.len()
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(Zero::is_zero)
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        Self::new(self.coefficients.iter().map(|c| c * factor).collect())
    }
}

impl fmt::Display for DivisorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coefficients.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl Add for &DivisorClass {
    type Output = DivisorClass;

    fn add(self, rhs: &DivisorClass) -> DivisorClass {
        assert_eq!(
            self.rank(),
            rhs.rank(),
            "divisor classes from different lattices"
        );
        DivisorClass::new(
            self.coefficients
                .iter()
                .zip(&rhs.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &DivisorClass {
    type Output = DivisorClass;

    fn sub(self, rhs: &DivisorClass) -> DivisorClass {
        self + &(-rhs)
    }
}

impl Neg for &DivisorClass {
    type Output = DivisorClass;

    fn neg(self) -> DivisorClass {
        DivisorClass::new(self.coefficients.iter().map(|c| -c).collect())
    }
}

/// Total Chern class `1 + c1 + c2` of a bundle on a surface, with its rank.
///
/// The ring is truncated in degree 2, so `c2` is a multiple of the point
/// class and products of three or more divisor classes vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernTotal {
    rank: BigInt,
    c1: DivisorClass,
    c2: BigInt,
}

impl ChernTotal {
    pub fn new(rank: BigInt, c1: DivisorClass, c2: BigInt) -> Result<Self, LatticeError> {
        if !rank.is_positive() {
            return Err(LatticeError::NonPositiveRank(rank));
        }
        if rank.is_one() && !c2.is_zero() {
            return Err(LatticeError::LineBundleSecondClass(c2));
        }
        Ok(Self { rank, c1, c2 })
    }

    pub fn trivial(rank: BigInt, lattice_rank: usize) -> Result<Self, LatticeError> {
        Self::new(rank, DivisorClass::zero(lattice_rank), BigInt::zero())
    }

    pub fn line_bundle(c1: DivisorClass) -> Self {
        Self {
            rank: BigInt::one(),
            c1,
            c2: BigInt::zero(),
        }
    }

    pub fn rank(&self) -> &BigInt {
        &self.rank
    }

    pub fn c1(&self) -> &DivisorClass {
        &self.c1
    }

    pub fn c2(&self) -> &BigInt {
        &self.c2
    }

    /// Whitney sum formula: `c(A ⊕ B) = c(A) · c(B)`.
    pub fn whitney_product(
        &self,
        other: &ChernTotal,
        form: &IntersectionForm,
    ) -> Result<ChernTotal, LatticeError> {
        let cross = form.intersect(&self.c1, &other.c1)?;
        Ok(ChernTotal {
            rank: &self.rank + &other.rank,
            c1: &self.c1 + &other.c1,
            c2: &self.c2 + cross + &other.c2,
        })
    }

    /// Solves `c(sub) · c(Q) = c(self)` for the quotient `Q` of a short
    /// exact sequence `0 → sub → self → Q → 0`.
    ///
    /// `c(sub)` is inverted in the truncated ring:
    /// `(1 + s1 + s2)⁻¹ = 1 - s1 + (s1² - s2)`.
    pub fn quotient_by(
        &self,
        sub: &ChernTotal,
        form: &IntersectionForm,
    ) -> Result<ChernTotal, LatticeError> {
        if sub.rank >= self.rank {
            return Err(LatticeError::RankNotSmaller {
                sub: sub.rank.clone(),
                total: self.rank.clone(),
            });
        }
        let rank = &self.rank - &sub.rank;
        let c1 = &self.c1 - &sub.c1;
        let c2 = &self.c2 - form.intersect(&sub.c1, &c1)? - &sub.c2;
        if rank.is_one() && !c2.is_zero() {
            return Err(LatticeError::InconsistentSequence(format!(
                "the quotient is a line bundle but would need c2 = {c2}"
            )));
        }
        Ok(ChernTotal { rank, c1, c2 })
    }

    /// Chern classes of the dual bundle: `c_k ↦ (-1)^k c_k`.
    pub fn dual(&self) -> ChernTotal {
        ChernTotal {
            rank: self.rank.clone(),
            c1: -&self.c1,
            c2: self.c2.clone(),
        }
    }
}

/// `c(Q)` for `0 → sub → total → Q → 0`.
pub fn whitney_solve_sub(
    total: &ChernTotal,
    sub: &ChernTotal,
    form: &IntersectionForm,
) -> Result<ChernTotal, LatticeError> {
    total.quotient_by(sub, form)
}

pub fn chern_dual(c: &ChernTotal) -> ChernTotal {
    c.dual()
}
