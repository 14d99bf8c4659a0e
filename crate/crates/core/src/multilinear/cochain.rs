use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::combinatorics::{binomial, sort_with_sign, subset_rank, subsets};
use crate::error::{check_dim, Error};
use crate::linalg::{add_scaled, is_zero_vec, zero_vec, Matrix, Rational};

/// Alternating multilinear map `∧^arity ℚ^source_dim → ℚ^target_dim`.
///
/// Only values on increasing basis subsets are stored, subset-major in
/// lexicographic order: `coeffs[rank(I) * target_dim + k]` is the `k`-th
/// coordinate of the value on `e_I`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cochain {
    arity: usize,
    source_dim: usize,
    target_dim: usize,
    coeffs: Vec<Rational>,
}

impl Cochain {
    /// Number of coordinates of the space of such cochains.
    pub fn space_dim(arity: usize, source_dim: usize, target_dim: usize) -> usize {
        binomial(source_dim, arity) * target_dim
    }

    pub fn zero(arity: usize, source_dim: usize, target_dim: usize) -> Self {
        Cochain {
            arity,
            source_dim,
            target_dim,
            coeffs: zero_vec(Cochain::space_dim(arity, source_dim, target_dim)),
        }
    }

    pub fn from_coeffs(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        coeffs: Vec<Rational>,
    ) -> Result<Self, Error> {
        check_dim(
            "cochain coefficients",
            Cochain::space_dim(arity, source_dim, target_dim),
            coeffs.len(),
        )?;
        Ok(Cochain {
            arity,
            source_dim,
            target_dim,
            coeffs,
        })
    }

    /// Builds a cochain from its values on increasing basis subsets.
    pub fn from_fn(
        arity: usize,
        source_dim: usize,
        target_dim: usize,
        mut f: impl FnMut(&[usize]) -> Vec<Rational>,
    ) -> Self {
        let mut coeffs = Vec::with_capacity(Cochain::space_dim(arity, source_dim, target_dim));
        for s in subsets(source_dim, arity) {
            let v = f(&s);
            assert_eq!(v.len(), target_dim, "cochain value has wrong length");
            coeffs.extend(v);
        }
        Cochain {
            arity,
            source_dim,
            target_dim,
            coeffs,
        }
    }

    /// The `idx`-th coordinate basis element.
    pub fn unit(arity: usize, source_dim: usize, target_dim: usize, idx: usize) -> Self {
        let mut c = Cochain::zero(arity, source_dim, target_dim);
        c.coeffs[idx] = Rational::one();
        c
    }

    /// Arity-0 cochain on a space of dimension `source_dim`: a single
    /// target vector.
    pub fn element(source_dim: usize, v: Vec<Rational>) -> Self {
        Cochain {
            arity: 0,
            source_dim,
            target_dim: v.len(),
            coeffs: v,
        }
    }

    /// Linear map whose `j`-th column is the image of `e_j`.
    pub fn from_matrix(m: &Matrix) -> Self {
        Cochain::from_fn(1, m.cols(), m.rows(), |s| m.column(s[0]))
    }

    pub fn identity(n: usize) -> Self {
        Cochain::from_matrix(&Matrix::identity(n))
    }

    /// Matrix of an arity-1 cochain; panics on other arities.
    pub fn to_matrix(&self) -> Matrix {
        assert_eq!(self.arity, 1, "only linear maps have a matrix");
        Matrix::from_fn(self.target_dim, self.source_dim, |r, c| {
            self.coeffs[c * self.target_dim + r].clone()
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Graded degree `arity - 1`.
    pub fn degree(&self) -> isize {
        self.arity as isize - 1
    }

    pub fn source_dim(&self) -> usize {
        self.source_dim
    }

    pub fn target_dim(&self) -> usize {
        self.target_dim
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coeffs)
    }

    pub fn same_shape(&self, other: &Cochain) -> bool {
        self.arity == other.arity
            && self.source_dim == other.source_dim
            && self.target_dim == other.target_dim
    }

    fn check_shape(&self, other: &Cochain) -> Result<(), Error> {
        check_dim("cochain arity", self.arity, other.arity)?;
        check_dim("cochain source", self.source_dim, other.source_dim)?;
        check_dim("cochain target", self.target_dim, other.target_dim)
    }

    /// Value on the increasing subset with the given rank.
    pub fn value_at_rank(&self, rank: usize) -> &[Rational] {
        &self.coeffs[rank * self.target_dim..(rank + 1) * self.target_dim]
    }

    /// Value on an increasing basis subset.
    pub fn value(&self, subset: &[usize]) -> &[Rational] {
        self.value_at_rank(subset_rank(self.source_dim, subset))
    }

    pub fn set_value(&mut self, subset: &[usize], v: &[Rational]) {
        let r = subset_rank(self.source_dim, subset);
        let t = self.target_dim;
        self.coeffs[r * t..(r + 1) * t].clone_from_slice(v);
    }

    /// Value on basis vectors in arbitrary order: sign of the sorting
    /// permutation times the stored value, zero on repeated indices.
    pub fn eval_basis(&self, args: &[usize]) -> Vec<Rational> {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        match sort_with_sign(args) {
            None => zero_vec(self.target_dim),
            Some((sorted, sign)) => {
                let v = self.value(&sorted);
                if sign > 0 {
                    v.to_vec()
                } else {
                    v.iter().map(|x| -x).collect()
                }
            }
        }
    }

    /// Adds `scale * self(e_args)` into `acc`.
    pub fn accumulate_basis(&self, acc: &mut [Rational], scale: &Rational, args: &[usize]) {
        if let Some((sorted, sign)) = sort_with_sign(args) {
            let s = if sign > 0 { scale.clone() } else { -scale };
            add_scaled(acc, &s, self.value(&sorted));
        }
    }

    /// Value on arbitrary vectors: `Σ_I det(A_I) · self(e_I)` where `A_I` is
    /// the minor of the argument matrix on rows `I`.
    pub fn eval(&self, args: &[Vec<Rational>]) -> Vec<Rational> {
        assert_eq!(args.len(), self.arity, "wrong number of arguments");
        let mut out = zero_vec(self.target_dim);
        for (r, s) in subsets(self.source_dim, self.arity).iter().enumerate() {
            let v = self.value_at_rank(r);
            if is_zero_vec(v) {
                continue;
            }
            let minor = Matrix::from_fn(self.arity, self.arity, |a, b| args[b][s[a]].clone());
            add_scaled(&mut out, &minor.determinant(), v);
        }
        out
    }

    /// `x ↦ target_map · self(source_map x_1, …, source_map x_p)`.
    pub fn transform(&self, source_map: &Matrix, target_map: &Matrix) -> Cochain {
        assert_eq!(source_map.rows(), self.source_dim);
        assert_eq!(target_map.cols(), self.target_dim);
        let cols: Vec<Vec<Rational>> = (0..source_map.cols()).map(|c| source_map.column(c)).collect();
        Cochain::from_fn(self.arity, source_map.cols(), target_map.rows(), |s| {
            let args: Vec<Vec<Rational>> = s.iter().map(|&i| cols[i].clone()).collect();
            target_map.mul_vec(&self.eval(&args))
        })
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain, Error> {
        self.check_shape(other)?;
        Ok(self.zip(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Cochain) -> Result<Cochain, Error> {
        self.check_shape(other)?;
        Ok(self.zip(other, |a, b| a - b))
    }

    fn zip(&self, other: &Cochain, f: impl Fn(&Rational, &Rational) -> Rational) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| f(a, b)).collect(),
            ..self.clone_shape()
        }
    }

    fn clone_shape(&self) -> Cochain {
        Cochain {
            arity: self.arity,
            source_dim: self.source_dim,
            target_dim: self.target_dim,
            coeffs: Vec::new(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|a| a * s).collect(),
            ..self.clone_shape()
        }
    }

    pub fn neg(&self) -> Cochain {
        Cochain {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
            ..self.clone_shape()
        }
    }

    pub fn add_assign_scaled(&mut self, s: &Rational, other: &Cochain) {
        assert!(self.same_shape(other), "cochain shape mismatch");
        add_scaled(&mut self.coeffs, s, &other.coeffs);
    }

    /// Lexicographically first increasing subset with a nonzero value.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, Vec<Rational>)> {
        subsets(self.source_dim, self.arity)
            .into_iter()
            .enumerate()
            .find(|(r, _)| !is_zero_vec(self.value_at_rank(*r)))
            .map(|(r, s)| (s, self.value_at_rank(r).to_vec()))
    }

    /// Number of nonzero coefficients.
    pub fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}
