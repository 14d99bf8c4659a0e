//! The Lie–Poisson representation on polynomial functions on `g*`, truncated
//! to total degree `D`.
//!
//! Coordinates are the linear functions `ξ_i = l_{e_i}`. Each bracket acts
//! by the derivation `f ↦ {l_x, f}` with `{l_x, l_y} = l_{[x,y]}`, so on the
//! degree-1 block `ρ(e_i)` is the adjoint matrix `ad(e_i)` itself.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::ops::Range;

use num_traits::Zero;

use crate::cohomology::{reduced_cohomology_dim, CohomologyGroup};
use crate::compat::{CompatiblePair, LieBracket, RepPair};
use crate::error::Error;
use crate::linalg::{rat, Matrix};
use crate::multilinear::binomial;

/// Monomials `ξ^a` with `|a| ≤ D` in graded lexicographic order: by total
/// degree, then lexicographically descending in the exponent vector
/// (`ξ₁² > ξ₁ξ₂ > ξ₂²`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyBasis {
    vars: usize,
    max_degree: usize,
    monomials: Vec<Vec<usize>>,
    index: BTreeMap<Vec<usize>, usize>,
}

fn monomials_of_degree(vars: usize, d: usize) -> Vec<Vec<usize>> {
    if vars == 0 {
        return if d == 0 { alloc::vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in monomials_of_degree(vars - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

impl PolyBasis {
    pub fn new(vars: usize, max_degree: usize) -> Self {
        let monomials: Vec<Vec<usize>> = (0..=max_degree)
            .flat_map(|d| monomials_of_degree(vars, d))
            .collect();
        let index = monomials.iter().enumerate().map(|(i, a)| (a.clone(), i)).collect();
        PolyBasis {
            vars,
            max_degree,
            monomials,
            index,
        }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Vec<usize>] {
        &self.monomials
    }

    pub fn index_of(&self, exponents: &[usize]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Positions of the degree-`d` monomials.
    pub fn degree_range(&self, d: usize) -> Range<usize> {
        assert!(d <= self.max_degree, "degree beyond the truncation");
        let start = if d == 0 { 0 } else { binomial(self.vars + d - 1, d - 1) };
        start..binomial(self.vars + d, d)
    }

    /// Total degree of the monomial at position `i`.
    pub fn degree_of(&self, i: usize) -> usize {
        self.monomials[i].iter().sum()
    }

    /// Product of two monomials, if within the truncation.
    pub fn multiply(&self, i: usize, j: usize) -> Option<usize> {
        let a: Vec<usize> = self.monomials[i]
            .iter()
            .zip(&self.monomials[j])
            .map(|(x, y)| x + y)
            .collect();
        self.index_of(&a)
    }
}

/// The two actions on a [`PolyBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRep {
    basis: PolyBasis,
    rep: RepPair,
}

impl PolyRep {
    pub fn basis(&self) -> &PolyBasis {
        &self.basis
    }

    pub fn rep(&self) -> &RepPair {
        &self.rep
    }

    /// Restriction to the degree-`d` monomials, which form a submodule.
    pub fn block(&self, d: usize) -> RepPair {
        let r = self.basis.degree_range(d);
        let cut = |ms: &[Matrix]| -> Vec<Matrix> {
            ms.iter()
                .map(|a| Matrix::from_fn(r.len(), r.len(), |i, j| a.get(r.start + i, r.start + j).clone()))
                .collect()
        };
        RepPair::new(r.len(), cut(self.rep.rho()), cut(self.rep.mu())).expect("square blocks")
    }

    /// Whether every matrix maps each degree block into itself.
    pub fn is_degree_preserving(&self) -> bool {
        let b = &self.basis;
        self.rep.rho().iter().chain(self.rep.mu()).all(|a| {
            (0..a.rows()).all(|i| (0..a.cols()).all(|j| a.get(i, j).is_zero() || b.degree_of(i) == b.degree_of(j)))
        })
    }
}

fn derivation_matrices(pi: &LieBracket, basis: &PolyBasis) -> Vec<Matrix> {
    let n = pi.dim();
    (0..n)
        .map(|i| {
            let mut out = Matrix::zeros(basis.len(), basis.len());
            for (col, a) in basis.monomials().iter().enumerate() {
                for j in 0..n {
                    if a[j] == 0 {
                        continue;
                    }
                    let br = pi.apply_basis(i, j);
                    for (k, c) in br.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let mut b = a.clone();
                        b[j] -= 1;
                        b[k] += 1;
                        let row = basis.index_of(&b).expect("same degree");
                        let v = out.get(row, col) + c * rat(a[j] as i64);
                        out.set(row, col, v);
                    }
                }
            }
            out
        })
        .collect()
}

/// `ρ(x) f = {l_x, f}₁` and `μ(x) f = {l_x, f}₂` on polynomials of degree
/// at most `max_degree`.
pub fn lie_poisson_rep(pair: &CompatiblePair, max_degree: usize) -> PolyRep {
    let basis = PolyBasis::new(pair.dim(), max_degree);
    let rho = derivation_matrices(pair.pi1(), &basis);
    let mu = derivation_matrices(pair.pi2(), &basis);
    let rep = RepPair::new(basis.len(), rho, mu).expect("square matrices of the basis size");
    PolyRep { basis, rep }
}

/// Reduced cohomology dimensions with coefficients in each degree block:
/// `table[d][k]` for polynomial degree `d ≤ max_degree` and cochain degree
/// `k ≤ max_cochain_degree`.
pub fn reduced_bihamiltonian_dims(
    pair: &CompatiblePair,
    max_degree: usize,
    max_cochain_degree: usize,
) -> Result<Vec<Vec<usize>>, Error> {
    let poly = lie_poisson_rep(pair, max_degree);
    (0..=max_degree)
        .map(|d| {
            let block = poly.block(d);
            (0..=max_cochain_degree)
                .map(|k| reduced_cohomology_dim(pair, &block, k).map(|g: CohomologyGroup| g.dim))
                .collect()
        })
        .collect()
}
