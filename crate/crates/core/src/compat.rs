//! Lie brackets, compatible pairs and their representations.
//!
//! Matrix convention: the action of a basis vector `e_i` on a module is the
//! matrix whose `j`-th column is the image of the `j`-th module basis vector.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{check_dim, Error, Verdict, Witness};
use crate::linalg::{add_scaled, is_zero_vec, zero_vec, Matrix, Rational};
use crate::multilinear::{adjoint_action, nr_bracket_first_nonzero, subsets, Cochain};

/// Antisymmetric bilinear bracket on `ℚ^n`, given by its values on pairs
/// `e_i, e_j` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LieBracket {
    cochain: Cochain,
}

impl LieBracket {
    pub fn from_cochain(cochain: Cochain) -> Result<Self, Error> {
        check_dim("bracket arity", 2, cochain.arity())?;
        check_dim("bracket target", cochain.source_dim(), cochain.target_dim())?;
        Ok(LieBracket { cochain })
    }

    /// The zero bracket.
    pub fn abelian(dim: usize) -> Self {
        LieBracket {
            cochain: Cochain::zero(2, dim, dim),
        }
    }

    /// Bracket from entries `(i, j, k, c)` meaning `[e_i, e_j]` has `c` as its
    /// `k`-th coordinate (0-based). Entries with `i > j` are stored negated,
    /// repeated entries add up, `i == j` is rejected as a dimension error.
    pub fn from_constants(dim: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self, Error> {
        let mut c = Cochain::zero(2, dim, dim);
        for (i, j, k, v) in entries {
            for idx in [i, j, k] {
                if *idx >= dim {
                    return Err(Error::DimensionMismatch {
                        context: "structure constant index",
                        expected: dim,
                        found: *idx + 1,
                    });
                }
            }
            if i == j {
                return Err(Error::DimensionMismatch {
                    context: "structure constant with equal indices",
                    expected: 0,
                    found: *i + 1,
                });
            }
            let (a, b, s) = if i < j { (*i, *j, v.clone()) } else { (*j, *i, -v) };
            let mut val = c.value(&[a, b]).to_vec();
            val[*k] += s;
            c.set_value(&[a, b], &val);
        }
        Ok(LieBracket { cochain: c })
    }

    pub fn dim(&self) -> usize {
        self.cochain.source_dim()
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn into_cochain(self) -> Cochain {
        self.cochain
    }

    pub fn is_abelian(&self) -> bool {
        self.cochain.is_zero()
    }

    /// `[e_i, e_j]` for any `i`, `j`.
    pub fn apply_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        self.cochain.eval_basis(&[i, j])
    }

    /// `[x, y]` for arbitrary vectors.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = zero_vec(n);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                add_scaled(&mut out, &(a * b), &self.apply_basis(i, j));
            }
        }
        out
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Rational {
        self.apply_basis(i, j)[k].clone()
    }

    /// Nonzero constants `(i, j, k, c)` with `i < j`, in lexicographic order.
    pub fn nonzero_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for s in subsets(self.dim(), 2) {
            for (k, c) in self.cochain.value(&s).iter().enumerate() {
                if !c.is_zero() {
                    out.push((s[0], s[1], k, c.clone()));
                }
            }
        }
        out
    }

    /// `k1 * self + k2 * other`, not validated.
    pub fn combine(&self, k1: &Rational, other: &LieBracket, k2: &Rational) -> LieBracket {
        let mut c = self.cochain.scale(k1);
        c.add_assign_scaled(k2, &other.cochain);
        LieBracket { cochain: c }
    }

    pub fn scale(&self, s: &Rational) -> LieBracket {
        LieBracket {
            cochain: self.cochain.scale(s),
        }
    }

    /// Bracket transported along the basis change `p`: `[x,y]' = p⁻¹[px, py]`.
    pub fn transform(&self, p: &Matrix) -> Result<LieBracket, Error> {
        check_dim("basis change", self.dim(), p.rows())?;
        let inv = p.inverse().ok_or(Error::LinearlyDependent)?;
        Ok(LieBracket {
            cochain: self.cochain.transform(p, &inv),
        })
    }

    /// `[[x,y],z] + [[y,z],x] + [[z,x],y]` on basis vectors.
    pub fn jacobiator(&self, i: usize, j: usize, k: usize) -> Vec<Rational> {
        let mut out = zero_vec(self.dim());
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            let inner = self.apply_basis(a, b);
            add_scaled_bracket(&mut out, &self.cochain, &inner, c);
        }
        out
    }

    /// Adjoint action matrices.
    pub fn ad(&self) -> Vec<Matrix> {
        adjoint_action(&self.cochain)
    }
}

fn add_scaled_bracket(out: &mut [Rational], c: &Cochain, inner: &[Rational], last: usize) {
    for (t, x) in inner.iter().enumerate() {
        if !x.is_zero() {
            c.accumulate_basis(out, x, &[t, last]);
        }
    }
}

/// Checks the Jacobi identity through `[π,π]_NR = 0`. The residual is the
/// Jacobiator, which is half the NR bracket.
pub fn validate_bracket(pi: &LieBracket) -> Verdict {
    nr_check(pi.cochain(), pi.cochain(), "jacobi", true)
}

fn nr_check(a: &Cochain, b: &Cochain, label: &str, halve: bool) -> Verdict {
    match nr_bracket_first_nonzero(a, b) {
        None => Verdict::Ok,
        Some((args, mut v)) => {
            if halve {
                let half = Rational::new(1.into(), 2.into());
                v.iter_mut().for_each(|x| *x *= &half);
            }
            Verdict::Fail(Witness::new(label, args, v))
        }
    }
}

/// Checks `[π₁,π₁] = [π₂,π₂] = [π₁,π₂] = 0` under the NR bracket.
pub fn validate_pair(pi1: &LieBracket, pi2: &LieBracket) -> Result<Verdict, Error> {
    check_dim("pair dimension", pi1.dim(), pi2.dim())?;
    Ok(nr_check(pi1.cochain(), pi1.cochain(), "jacobi(pi1)", true)
        .and_then(|| nr_check(pi2.cochain(), pi2.cochain(), "jacobi(pi2)", true))
        .and_then(|| nr_check(pi1.cochain(), pi2.cochain(), "compatibility", false)))
}

/// Two Lie brackets on the same space whose sum is again a Lie bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    pi1: LieBracket,
    pi2: LieBracket,
}

impl CompatiblePair {
    pub fn new(pi1: LieBracket, pi2: LieBracket) -> Result<Self, Error> {
        validate_pair(&pi1, &pi2)?.into_result(Error::InvalidPair)?;
        Ok(CompatiblePair { pi1, pi2 })
    }

    /// Skips validation; for inner loops where the pair is known to be valid.
    pub fn new_unchecked(pi1: LieBracket, pi2: LieBracket) -> Self {
        CompatiblePair { pi1, pi2 }
    }

    pub fn dim(&self) -> usize {
        self.pi1.dim()
    }

    pub fn pi1(&self) -> &LieBracket {
        &self.pi1
    }

    pub fn pi2(&self) -> &LieBracket {
        &self.pi2
    }

    /// `k1 π₁ + k2 π₂`.
    pub fn pencil(&self, k1: &Rational, k2: &Rational) -> LieBracket {
        self.pi1.combine(k1, &self.pi2, k2)
    }

    pub fn transform(&self, p: &Matrix) -> Result<CompatiblePair, Error> {
        Ok(CompatiblePair {
            pi1: self.pi1.transform(p)?,
            pi2: self.pi2.transform(p)?,
        })
    }

    /// The pair `(π₂, π₁)`.
    pub fn swapped(&self) -> CompatiblePair {
        CompatiblePair {
            pi1: self.pi2.clone(),
            pi2: self.pi1.clone(),
        }
    }
}

pub fn pencil(pair: &CompatiblePair, k1: &Rational, k2: &Rational) -> LieBracket {
    pair.pencil(k1, k2)
}

/// Actions `ρ` (for `π₁`) and `μ` (for `π₂`) of `g` on a module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepPair {
    module_dim: usize,
    rho: Vec<Matrix>,
    mu: Vec<Matrix>,
}

impl RepPair {
    /// Checks shapes only; use [`validate_rep`] for the axioms.
    pub fn new(module_dim: usize, rho: Vec<Matrix>, mu: Vec<Matrix>) -> Result<Self, Error> {
        check_dim("number of mu matrices", rho.len(), mu.len())?;
        for m in rho.iter().chain(&mu) {
            check_dim("action matrix rows", module_dim, m.rows())?;
            check_dim("action matrix cols", module_dim, m.cols())?;
        }
        Ok(RepPair { module_dim, rho, mu })
    }

    pub fn zero(g_dim: usize, module_dim: usize) -> Self {
        RepPair {
            module_dim,
            rho: alloc::vec![Matrix::zeros(module_dim, module_dim); g_dim],
            mu: alloc::vec![Matrix::zeros(module_dim, module_dim); g_dim],
        }
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn g_dim(&self) -> usize {
        self.rho.len()
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn mu(&self) -> &[Matrix] {
        &self.mu
    }

    /// `ρ(x)` for an arbitrary vector `x`.
    pub fn rho_of(&self, x: &[Rational]) -> Matrix {
        action_of(&self.rho, x, self.module_dim)
    }

    pub fn mu_of(&self, x: &[Rational]) -> Matrix {
        action_of(&self.mu, x, self.module_dim)
    }

    /// Direct sum of two module structures.
    pub fn direct_sum(&self, other: &RepPair) -> Result<RepPair, Error> {
        check_dim("direct sum base", self.g_dim(), other.g_dim())?;
        let m = self.module_dim + other.module_dim;
        let block = |a: &Matrix, b: &Matrix| {
            Matrix::from_fn(m, m, |r, c| {
                let (ra, ca) = (r < self.module_dim, c < self.module_dim);
                match (ra, ca) {
                    (true, true) => a.get(r, c).clone(),
                    (false, false) => b.get(r - self.module_dim, c - self.module_dim).clone(),
                    _ => Rational::zero(),
                }
            })
        };
        Ok(RepPair {
            module_dim: m,
            rho: self.rho.iter().zip(&other.rho).map(|(a, b)| block(a, b)).collect(),
            mu: self.mu.iter().zip(&other.mu).map(|(a, b)| block(a, b)).collect(),
        })
    }
}

/// `Σ x_i A_i`.
pub fn action_of(action: &[Matrix], x: &[Rational], module_dim: usize) -> Matrix {
    let mut out = Matrix::zeros(module_dim, module_dim);
    for (a, c) in action.iter().zip(x) {
        if !c.is_zero() {
            out = out.add(&a.scale(c));
        }
    }
    out
}

fn flat_residual(m: &Matrix) -> Vec<Rational> {
    m.entries().to_vec()
}

/// Checks `A([e_i,e_j]) = [A(e_i), A(e_j)]` for `i < j`.
pub fn is_representation(pi: &LieBracket, action: &[Matrix], label: &str) -> Result<Verdict, Error> {
    check_dim("action matrices", pi.dim(), action.len())?;
    let m = action.first().map_or(0, Matrix::rows);
    for s in subsets(pi.dim(), 2) {
        let lhs = action_of(action, &pi.apply_basis(s[0], s[1]), m);
        let rhs = action[s[0]].commutator(&action[s[1]]);
        let diff = lhs.sub(&rhs);
        if !diff.is_zero() {
            return Ok(Verdict::Fail(Witness::new(label, s, flat_residual(&diff))));
        }
    }
    Ok(Verdict::Ok)
}

/// Checks that `ρ` represents `π₁`, `μ` represents `π₂`, and
/// `ρ({x,y}) + μ([x,y]) = [ρ(x),μ(y)] − [ρ(y),μ(x)]` on basis pairs.
pub fn validate_rep(pair: &CompatiblePair, rep: &RepPair) -> Result<Verdict, Error> {
    check_dim("representation base", pair.dim(), rep.g_dim())?;
    let v = is_representation(pair.pi1(), rep.rho(), "rho")?;
    if !v.is_ok() {
        return Ok(v);
    }
    let v = is_representation(pair.pi2(), rep.mu(), "mu")?;
    if !v.is_ok() {
        return Ok(v);
    }
    let m = rep.module_dim();
    for s in subsets(pair.dim(), 2) {
        let (i, j) = (s[0], s[1]);
        let lhs = action_of(rep.rho(), &pair.pi2().apply_basis(i, j), m)
            .add(&action_of(rep.mu(), &pair.pi1().apply_basis(i, j), m));
        let rhs = rep.rho()[i]
            .commutator(&rep.mu()[j])
            .sub(&rep.rho()[j].commutator(&rep.mu()[i]));
        let diff = lhs.sub(&rhs);
        if !diff.is_zero() {
            return Ok(Verdict::Fail(Witness::new("mixed", s, flat_residual(&diff))));
        }
    }
    Ok(Verdict::Ok)
}

/// `(ad, 𝔞𝔡)`: each bracket acting on `g` itself.
pub fn adjoint_rep(pair: &CompatiblePair) -> RepPair {
    RepPair {
        module_dim: pair.dim(),
        rho: pair.pi1().ad(),
        mu: pair.pi2().ad(),
    }
}

pub(crate) fn one() -> Rational {
    Rational::one()
}

/// Checks `f([x,y]_from) = [f x, f y]_to` on basis pairs.
pub fn is_homomorphism(f: &Matrix, from: &LieBracket, to: &LieBracket) -> Result<Verdict, Error> {
    check_dim("homomorphism source", from.dim(), f.cols())?;
    check_dim("homomorphism target", to.dim(), f.rows())?;
    for s in subsets(from.dim(), 2) {
        let lhs = f.mul_vec(&from.apply_basis(s[0], s[1]));
        let rhs = to.apply(&f.column(s[0]), &f.column(s[1]));
        let diff: Vec<Rational> = lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect();
        if !is_zero_vec(&diff) {
            return Ok(Verdict::Fail(Witness::new("homomorphism", s, diff)));
        }
    }
    Ok(Verdict::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat;
    use alloc::vec;

    pub(crate) fn sl2() -> LieBracket {
        LieBracket::from_constants(
            3,
            &[(0, 1, 1, rat(2)), (0, 2, 2, rat(-2)), (1, 2, 0, rat(1))],
        )
        .unwrap()
    }

    fn n2() -> LieBracket {
        LieBracket::from_constants(2, &[(0, 1, 1, rat(1))]).unwrap()
    }

    #[test]
    fn bracket_examples() {
        assert!(validate_bracket(&LieBracket::abelian(3)).is_ok());
        assert!(validate_bracket(&sl2()).is_ok());
        // [e1,e2] = e3 + e1, [e1,e3] = e2
        let bad = LieBracket::from_constants(
            3,
            &[(0, 1, 2, rat(1)), (0, 2, 1, rat(1)), (0, 1, 0, rat(1))],
        )
        .unwrap();
        let v = validate_bracket(&bad);
        let w = v.witness().expect("Jacobi must fail");
        assert_eq!(w.args, [0, 1, 2]);
        assert_eq!(w.residual, bad.jacobiator(0, 1, 2));
    }

    #[test]
    fn pair_examples() {
        let s = sl2();
        assert!(validate_pair(&s, &s).unwrap().is_ok());
        assert!(validate_pair(&s, &LieBracket::abelian(3)).unwrap().is_ok());
        let a = LieBracket::from_constants(2, &[(0, 1, 0, rat(1))]).unwrap();
        let b = n2();
        assert!(validate_pair(&a, &b).unwrap().is_ok());
        let pair = CompatiblePair::new(a, b).unwrap();
        let p = pair.pencil(&rat(1), &rat(1));
        assert_eq!(p.apply_basis(0, 1), vec![rat(1), rat(1)]);
        assert!(validate_bracket(&p).is_ok());
        assert_eq!(&pair.pencil(&rat(1), &rat(0)), pair.pi1());
        assert!(pair.pencil(&rat(0), &rat(0)).is_abelian());
        assert!(validate_pair(&s, &LieBracket::abelian(2)).is_err());
    }

    #[test]
    fn adjoint_examples() {
        let pair = CompatiblePair::new(n2(), LieBracket::abelian(2)).unwrap();
        let ad = adjoint_rep(&pair);
        assert_eq!(ad.rho()[0], Matrix::from_int_rows(&[&[0, 0], &[0, 1]]));
        assert_eq!(ad.rho()[1], Matrix::from_int_rows(&[&[0, 0], &[-1, 0]]));
        assert!(ad.mu().iter().all(Matrix::is_zero));
        assert!(validate_rep(&pair, &ad).unwrap().is_ok());

        let pair = CompatiblePair::new(sl2(), sl2()).unwrap();
        let ad = adjoint_rep(&pair);
        assert_eq!(ad.rho()[0], Matrix::from_int_rows(&[&[0, 0, 0], &[0, 2, 0], &[0, 0, -2]]));
        assert!(validate_rep(&pair, &ad).unwrap().is_ok());
        assert!(validate_rep(&pair, &RepPair::zero(3, 2)).unwrap().is_ok());
    }

    #[test]
    fn doubled_mu_fails_mixed_condition() {
        let pair = CompatiblePair::new(n2(), n2()).unwrap();
        let ad = n2().ad();
        let mu: Vec<Matrix> = ad.iter().map(|m| m.scale(&rat(2))).collect();
        let rep = RepPair::new(2, ad.clone(), mu).unwrap();
        let v = validate_rep(&pair, &rep).unwrap();
        let w = v.witness().expect("must fail");
        assert_eq!(w.condition, "mu");
        assert_eq!(w.args, [0, 1]);
    }

    #[test]
    fn zero_mu_fails_mixed_condition() {
        let pair = CompatiblePair::new(n2(), n2()).unwrap();
        let rep = RepPair::new(2, n2().ad(), vec![Matrix::zeros(2, 2); 2]).unwrap();
        let v = validate_rep(&pair, &rep).unwrap();
        let w = v.witness().expect("must fail");
        assert_eq!(w.condition, "mixed");
        assert_eq!(w.args, [0, 1]);
    }

    #[test]
    fn basis_change_preserves_validity() {
        let p = Matrix::from_int_rows(&[&[1, 1, 0], &[0, 1, 2], &[1, 0, 1]]);
        let t = sl2().transform(&p).unwrap();
        assert!(validate_bracket(&t).is_ok());
        assert!(validate_pair(&t, &t.scale(&rat(3))).unwrap().is_ok());
    }

    #[test]
    fn homomorphism_check() {
        let id = Matrix::identity(3);
        assert!(is_homomorphism(&id, &sl2(), &sl2()).unwrap().is_ok());
        let twice = id.scale(&rat(2));
        assert!(!is_homomorphism(&twice, &sl2(), &sl2()).unwrap().is_ok());
    }
}
