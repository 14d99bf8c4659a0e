//! The staircase cochain complex of a compatible pair with coefficients in
//! a representation.
//!
//! In degree `n ≥ 1` a cochain is a tuple `(ω_1, …, ω_n)` of `n`-cochains
//! with values in the module. With `D1 = d_{π₁+ρ}` and `D2 = d_{π₂+μ}` the
//! coboundary is
//!
//! ```text
//! δ(ω_1, …, ω_n) = (D1 ω_1, D2 ω_1 + D1 ω_2, …, D2 ω_{n-1} + D1 ω_n, D2 ω_n)
//! ```
//!
//! In degree 0 the cochains are the module elements with `ρ(x)v = μ(x)v`
//! for all `x`, and `δv = D1 v = D2 v`.
//!
//! Flattened coordinates are component-major, then lexicographic subset,
//! then target index.

use alloc::vec::Vec;

use crate::compat::{adjoint_rep, CompatiblePair, RepPair};
use crate::error::{check_dim, Error};
use crate::linalg::{Matrix, Rational, SubspaceBasis};
use crate::multilinear::{ce_coboundary, ce_matrix, nr_bracket, Cochain};

/// An element of the degree-`n` staircase space: `n` cochains of arity `n`
/// (one module element when `n = 0`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CochainTuple {
    degree: usize,
    components: Vec<Cochain>,
}

impl CochainTuple {
    pub fn new(degree: usize, components: Vec<Cochain>) -> Result<Self, Error> {
        check_dim("tuple length", degree.max(1), components.len())?;
        let first = &components[0];
        for c in &components {
            check_dim("tuple component arity", degree, c.arity())?;
            check_dim("tuple component source", first.source_dim(), c.source_dim())?;
            check_dim("tuple component target", first.target_dim(), c.target_dim())?;
        }
        Ok(CochainTuple { degree, components })
    }

    pub fn zero(degree: usize, g_dim: usize, module_dim: usize) -> Self {
        CochainTuple {
            degree,
            components: alloc::vec![Cochain::zero(degree, g_dim, module_dim); degree.max(1)],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Cochain] {
        &self.components
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Cochain::is_zero)
    }

    pub fn flatten(&self) -> Vec<Rational> {
        self.components.iter().flat_map(|c| c.coeffs().iter().cloned()).collect()
    }

    pub fn from_flat(degree: usize, g_dim: usize, module_dim: usize, coeffs: &[Rational]) -> Result<Self, Error> {
        let per = Cochain::space_dim(degree, g_dim, module_dim);
        let count = degree.max(1);
        check_dim("flattened tuple", per * count, coeffs.len())?;
        let components = (0..count)
            .map(|i| Cochain::from_coeffs(degree, g_dim, module_dim, coeffs[i * per..(i + 1) * per].to_vec()))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(CochainTuple { degree, components })
    }
}

/// Ambient dimension of the degree-`n` space: `n · C(g_dim, n) · m`, and the
/// module dimension in degree 0 (before cutting down to the 0-cochains).
pub fn ambient_dim(n: usize, g_dim: usize, module_dim: usize) -> usize {
    n.max(1) * Cochain::space_dim(n, g_dim, module_dim)
}

/// How each arm `D_i` is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Formulation {
    /// Explicit Chevalley–Eilenberg sum with the given representation.
    Ce,
    /// Adjoint coefficients only: `D_i ω = (−1)^{n−1} [π_i, ω]_NR`.
    AdjointNr,
}

fn check_rep(pair: &CompatiblePair, rep: &RepPair) -> Result<(), Error> {
    check_dim("representation base", pair.dim(), rep.g_dim())
}

/// `{v : ρ(x)v = μ(x)v for all x}`.
pub fn c0_basis(pair: &CompatiblePair, rep: &RepPair) -> Result<SubspaceBasis, Error> {
    check_rep(pair, rep)?;
    let diffs: Vec<Matrix> = rep.rho().iter().zip(rep.mu()).map(|(a, b)| a.sub(b)).collect();
    Ok(Matrix::vstack(&diffs, rep.module_dim()).kernel_basis())
}

fn arm(
    pair: &CompatiblePair,
    rep: &RepPair,
    which: usize,
    f: &Cochain,
    formulation: Formulation,
) -> Result<Cochain, Error> {
    let (pi, action) = if which == 1 {
        (pair.pi1(), rep.rho())
    } else {
        (pair.pi2(), rep.mu())
    };
    match formulation {
        Formulation::Ce => ce_coboundary(pi.cochain(), action, f),
        Formulation::AdjointNr => {
            let b = nr_bracket(pi.cochain(), f)?;
            Ok(if f.arity() % 2 == 1 { b } else { b.neg() })
        }
    }
}

/// The staircase coboundary of a tuple.
pub fn staircase_coboundary(
    pair: &CompatiblePair,
    rep: &RepPair,
    t: &CochainTuple,
    formulation: Formulation,
) -> Result<CochainTuple, Error> {
    check_rep(pair, rep)?;
    let n = t.degree;
    let comps = &t.components;
    check_dim("tuple source", pair.dim(), comps[0].source_dim())?;
    check_dim("tuple target", rep.module_dim(), comps[0].target_dim())?;
    if n == 0 {
        let c0 = c0_basis(pair, rep)?;
        if c0.in_span(comps[0].coeffs())?.is_none() {
            return Err(Error::NotInZeroCochains);
        }
        let d = arm(pair, rep, 1, &comps[0], formulation)?;
        return CochainTuple::new(1, alloc::vec![d]);
    }
    let d1: Vec<Cochain> = comps
        .iter()
        .map(|c| arm(pair, rep, 1, c, formulation))
        .collect::<Result<_, _>>()?;
    let d2: Vec<Cochain> = comps
        .iter()
        .map(|c| arm(pair, rep, 2, c, formulation))
        .collect::<Result<_, _>>()?;
    let mut out = Vec::with_capacity(n + 1);
    out.push(d1[0].clone());
    for i in 1..n {
        out.push(d2[i - 1].add(&d1[i])?);
    }
    out.push(d2[n - 1].clone());
    CochainTuple::new(n + 1, out)
}

/// Degree-`n` piece of a complex: a basis of the cochain space (a subspace
/// of the ambient coordinates) and the matrix of the coboundary on the
/// ambient coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexSlice {
    pub degree: usize,
    pub basis: SubspaceBasis,
    pub coboundary_matrix: Matrix,
}

impl ComplexSlice {
    /// The coboundary restricted to the basis: columns are images of basis
    /// vectors.
    pub fn restricted(&self) -> Matrix {
        self.coboundary_matrix.mul(&self.basis.to_matrix())
    }
}

/// Arm matrices `D1`, `D2` from arity `n` to arity `n+1`.
pub fn arm_matrices(pair: &CompatiblePair, rep: &RepPair, n: usize) -> Result<(Matrix, Matrix), Error> {
    check_rep(pair, rep)?;
    Ok((
        ce_matrix(pair.pi1().cochain(), rep.rho(), n)?,
        ce_matrix(pair.pi2().cochain(), rep.mu(), n)?,
    ))
}

/// Matrix of `δⁿ` in flattened coordinates.
pub fn coboundary_matrix(pair: &CompatiblePair, rep: &RepPair, n: usize) -> Result<ComplexSlice, Error> {
    let (d1, d2) = arm_matrices(pair, rep, n)?;
    let m = rep.module_dim();
    if n == 0 {
        return Ok(ComplexSlice {
            degree: 0,
            basis: c0_basis(pair, rep)?,
            coboundary_matrix: d1,
        });
    }
    let (r, c) = (d1.rows(), d1.cols());
    let mut out = Matrix::zeros(r * (n + 1), c * n);
    for j in 0..n {
        for (block, dst) in [(&d1, j), (&d2, j + 1)] {
            for a in 0..r {
                for b in 0..c {
                    let v = block.get(a, b);
                    if !num_traits::Zero::is_zero(v) {
                        out.set(dst * r + a, j * c + b, v.clone());
                    }
                }
            }
        }
    }
    Ok(ComplexSlice {
        degree: n,
        basis: SubspaceBasis::full(ambient_dim(n, pair.dim(), m)),
        coboundary_matrix: out,
    })
}

/// Same matrix assembled column by column from [`staircase_coboundary`].
pub fn coboundary_matrix_by_columns(
    pair: &CompatiblePair,
    rep: &RepPair,
    n: usize,
    formulation: Formulation,
) -> Result<Matrix, Error> {
    let (g, m) = (pair.dim(), rep.module_dim());
    let cols = ambient_dim(n, g, m);
    let rows = ambient_dim(n + 1, g, m);
    let mut out = Matrix::zeros(rows, cols);
    for c in 0..cols {
        let mut e = crate::linalg::zero_vec(cols);
        e[c] = crate::compat::one();
        let t = CochainTuple::from_flat(n, g, m, &e)?;
        let image = if n == 0 {
            // a unit vector need not lie in the 0-cochains; apply the first arm
            let d = arm(pair, rep, 1, &t.components[0], formulation)?;
            d.into_coeffs()
        } else {
            staircase_coboundary(pair, rep, &t, formulation)?.flatten()
        };
        for (r, v) in image.into_iter().enumerate() {
            out.set(r, c, v);
        }
    }
    Ok(out)
}

/// Cohomology in one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyGroup {
    pub degree: usize,
    pub dim: usize,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    /// Cocycles completing a basis of the coboundaries to a basis of the
    /// cocycles, in ambient coordinates.
    pub representatives: SubspaceBasis,
}

/// Cohomology from the current slice and the previous one (if any).
pub fn slice_cohomology(current: &ComplexSlice, previous: Option<&ComplexSlice>) -> Result<CohomologyGroup, Error> {
    let basis = current.basis.to_matrix();
    let kernel_coeffs = current.restricted().kernel_basis();
    let ambient = current.basis.ambient_dim();
    let cocycles: Vec<Vec<Rational>> = kernel_coeffs.vectors().iter().map(|c| basis.mul_vec(c)).collect();
    let image = match previous {
        Some(p) => p.restricted().column_space(),
        None => SubspaceBasis::zero(ambient),
    };
    check_dim("consecutive slices", ambient, image.ambient_dim())?;
    let reps = image.complete_with(&cocycles);
    Ok(CohomologyGroup {
        degree: current.degree,
        dim: cocycles.len() - image.dim(),
        cocycle_dim: cocycles.len(),
        coboundary_dim: image.dim(),
        representatives: SubspaceBasis::new(ambient, reps)?,
    })
}

pub fn cohomology_dim(pair: &CompatiblePair, rep: &RepPair, n: usize) -> Result<CohomologyGroup, Error> {
    let current = coboundary_matrix(pair, rep, n)?;
    let previous = if n == 0 {
        None
    } else {
        Some(coboundary_matrix(pair, rep, n - 1)?)
    };
    slice_cohomology(&current, previous.as_ref())
}

/// Joint derivations of both brackets and the inner ones, as subspaces of
/// flattened linear maps `g → g` (column `j` of the map at offset `j·n`).
pub fn derivation_spaces(pair: &CompatiblePair) -> Result<(SubspaceBasis, SubspaceBasis), Error> {
    let rep = adjoint_rep(pair);
    let d0 = coboundary_matrix(pair, &rep, 0)?;
    let d1 = coboundary_matrix(pair, &rep, 1)?;
    Ok((d1.coboundary_matrix.kernel_basis(), d0.restricted().column_space()))
}

/// Reduced complex in degree `n`: the cochains killed by `D1`, with `D2`
/// (which preserves them) as coboundary.
pub fn reduced_slice(pair: &CompatiblePair, rep: &RepPair, n: usize) -> Result<ComplexSlice, Error> {
    let (d1, d2) = arm_matrices(pair, rep, n)?;
    let basis = d1.kernel_basis();
    let slice = ComplexSlice {
        degree: n,
        basis,
        coboundary_matrix: d2,
    };
    let (next_d1, _) = arm_matrices(pair, rep, n + 1)?;
    assert!(
        next_d1.mul(&slice.restricted()).is_zero(),
        "second arm does not preserve the reduced cochains; inputs were not a valid representation"
    );
    Ok(slice)
}

pub fn reduced_cohomology_dim(pair: &CompatiblePair, rep: &RepPair, n: usize) -> Result<CohomologyGroup, Error> {
    let current = reduced_slice(pair, rep, n)?;
    let previous = if n == 0 {
        None
    } else {
        Some(reduced_slice(pair, rep, n - 1)?)
    };
    slice_cohomology(&current, previous.as_ref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::LieBracket;
    use crate::linalg::rat;
    use crate::multilinear::binomial;
    use alloc::vec;

    fn sl2() -> LieBracket {
        LieBracket::from_constants(3, &[(0, 1, 1, rat(2)), (0, 2, 2, rat(-2)), (1, 2, 0, rat(1))]).unwrap()
    }

    fn n2() -> LieBracket {
        LieBracket::from_constants(2, &[(0, 1, 1, rat(1))]).unwrap()
    }

    #[test]
    fn c0_examples() {
        let ab = CompatiblePair::new(LieBracket::abelian(2), LieBracket::abelian(2)).unwrap();
        assert_eq!(c0_basis(&ab, &adjoint_rep(&ab)).unwrap().dim(), 2);
        let ss = CompatiblePair::new(sl2(), sl2()).unwrap();
        assert_eq!(c0_basis(&ss, &adjoint_rep(&ss)).unwrap().dim(), 3);
        let nz = CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap();
        assert_eq!(c0_basis(&nz, &adjoint_rep(&nz)).unwrap().dim(), 0);
    }

    #[test]
    fn identity_maps_to_the_brackets() {
        for pair in [
            CompatiblePair::new(sl2(), sl2().scale(&rat(2))).unwrap(),
            CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap(),
        ] {
            let rep = adjoint_rep(&pair);
            let t = CochainTuple::new(1, vec![Cochain::identity(pair.dim())]).unwrap();
            for f in [Formulation::Ce, Formulation::AdjointNr] {
                let d = staircase_coboundary(&pair, &rep, &t, f).unwrap();
                assert_eq!(d.components(), &[pair.pi1().cochain().clone(), pair.pi2().cochain().clone()]);
            }
        }
    }

    #[test]
    fn diagonal_on_n2() {
        let pair = CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap();
        let rep = adjoint_rep(&pair);
        let f = Cochain::from_matrix(&Matrix::from_int_rows(&[&[1, 0], &[0, 0]]));
        let d = staircase_coboundary(&pair, &rep, &CochainTuple::new(1, vec![f]).unwrap(), Formulation::Ce).unwrap();
        assert_eq!(d.components()[0].value(&[0, 1]), &[rat(0), rat(1)]);
        assert!(d.components()[1].is_zero());
    }

    #[test]
    fn degree_zero_needs_a_zero_cochain() {
        let pair = CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap();
        let rep = adjoint_rep(&pair);
        let t = CochainTuple::new(0, vec![Cochain::element(2, vec![rat(1), rat(0)])]).unwrap();
        assert_eq!(
            staircase_coboundary(&pair, &rep, &t, Formulation::Ce),
            Err(Error::NotInZeroCochains)
        );
    }

    #[test]
    fn formulations_agree_on_adjoint() {
        let pair = CompatiblePair::new(sl2(), sl2()).unwrap();
        let rep = adjoint_rep(&pair);
        for n in 0..3 {
            let ce = coboundary_matrix_by_columns(&pair, &rep, n, Formulation::Ce).unwrap();
            let nr = coboundary_matrix_by_columns(&pair, &rep, n, Formulation::AdjointNr).unwrap();
            assert_eq!(ce, nr);
            assert_eq!(ce, coboundary_matrix(&pair, &rep, n).unwrap().coboundary_matrix);
        }
    }

    #[test]
    fn counting_and_shapes() {
        let pair = CompatiblePair::new(sl2(), sl2()).unwrap();
        let rep = adjoint_rep(&pair);
        let s2 = coboundary_matrix(&pair, &rep, 2).unwrap();
        assert_eq!(s2.coboundary_matrix.cols(), 2 * binomial(3, 2) * 3);
        let s1 = coboundary_matrix(&pair, &rep, 1).unwrap();
        assert_eq!((s1.coboundary_matrix.rows(), s1.coboundary_matrix.cols()), (18, 9));
        assert_eq!(s1.coboundary_matrix.kernel_basis().dim(), 3);
    }

    #[test]
    fn abelian_cohomology_is_everything() {
        let pair = CompatiblePair::new(LieBracket::abelian(2), LieBracket::abelian(2)).unwrap();
        let rep = adjoint_rep(&pair);
        let dims: Vec<usize> = (0..3).map(|n| cohomology_dim(&pair, &rep, n).unwrap().dim).collect();
        assert_eq!(dims, [2, 4, 4]);
        let (der, ider) = derivation_spaces(&pair).unwrap();
        assert_eq!((der.dim(), ider.dim()), (4, 0));
    }

    #[test]
    fn sl2_cohomology() {
        let pair = CompatiblePair::new(sl2(), sl2()).unwrap();
        let rep = adjoint_rep(&pair);
        let h0 = cohomology_dim(&pair, &rep, 0).unwrap();
        let h1 = cohomology_dim(&pair, &rep, 1).unwrap();
        assert_eq!((h0.dim, h1.dim), (0, 0));
        assert_eq!((h1.cocycle_dim, h1.coboundary_dim), (3, 3));
        let (der, ider) = derivation_spaces(&pair).unwrap();
        assert_eq!((der.dim(), ider.dim()), (3, 3));
    }

    #[test]
    fn n2_with_zero_second_bracket() {
        let pair = CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap();
        let rep = adjoint_rep(&pair);
        assert_eq!(cohomology_dim(&pair, &rep, 0).unwrap().dim, 0);
        let (der, ider) = derivation_spaces(&pair).unwrap();
        assert_eq!((der.dim(), ider.dim()), (2, 0));
    }

    #[test]
    fn reduced_examples() {
        let pair = CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap();
        let trivial = RepPair::zero(2, 1);
        let s1 = reduced_slice(&pair, &trivial, 1).unwrap();
        assert_eq!(s1.basis.dim(), 1);
        // f(e2) = 0 for the single basis vector
        assert_eq!(s1.basis.vectors()[0], vec![rat(1), rat(0)]);
        let rep = adjoint_rep(&pair);
        assert_eq!(reduced_cohomology_dim(&pair, &rep, 0).unwrap().dim, 0);

        let ab = CompatiblePair::new(LieBracket::abelian(2), LieBracket::abelian(2)).unwrap();
        let z = RepPair::zero(2, 2);
        for n in 0..3 {
            let s = reduced_slice(&ab, &z, n).unwrap();
            assert_eq!(s.basis.dim(), Cochain::space_dim(n, 2, 2));
            assert!(s.coboundary_matrix.is_zero());
            assert_eq!(reduced_cohomology_dim(&ab, &z, n).unwrap().dim, s.basis.dim());
        }
    }
}
