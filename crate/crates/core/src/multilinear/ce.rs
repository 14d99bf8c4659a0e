//! Chevalley–Eilenberg coboundary of a Lie algebra with coefficients in a
//! module, computed two ways: by the explicit alternating sum and through
//! the NR bracket of lifts on `g ⊕ V`.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::cochain::Cochain;
use super::lift::{lift, MixedMap, Side};
use crate::error::{check_dim, Error};
use crate::linalg::{add_scaled, zero_vec, Matrix, Rational};

fn check_inputs(bracket: &Cochain, action: &[Matrix], f: &Cochain) -> Result<(usize, usize), Error> {
    let n = bracket.source_dim();
    check_dim("bracket arity", 2, bracket.arity())?;
    check_dim("bracket target", n, bracket.target_dim())?;
    check_dim("action matrices", n, action.len())?;
    let m = f.target_dim();
    for a in action {
        check_dim("action matrix rows", m, a.rows())?;
        check_dim("action matrix cols", m, a.cols())?;
    }
    check_dim("cochain source", n, f.source_dim())?;
    Ok((n, m))
}

fn sign(i: usize) -> Rational {
    if i % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// `d f(x_0..x_p) = Σ_i (−1)^i ρ(x_i) f(…x̂_i…) + Σ_{i<j} (−1)^{i+j} f([x_i,x_j], …x̂_i…x̂_j…)`.
pub fn ce_coboundary(bracket: &Cochain, action: &[Matrix], f: &Cochain) -> Result<Cochain, Error> {
    let (n, m) = check_inputs(bracket, action, f)?;
    let p = f.arity();
    let mut rest = Vec::with_capacity(p);
    let mut args = Vec::with_capacity(p);
    Ok(Cochain::from_fn(p + 1, n, m, |x| {
        let mut out = zero_vec(m);
        for i in 0..=p {
            rest.clear();
            rest.extend(x.iter().enumerate().filter(|&(t, _)| t != i).map(|(_, &e)| e));
            let val = f.value(&rest);
            add_scaled(&mut out, &sign(i), &action[x[i]].mul_vec(val));
        }
        for i in 0..=p {
            for j in i + 1..=p {
                let br = bracket.value(&[x[i], x[j]]);
                let s = sign(i + j);
                for (t, c) in br.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    args.clear();
                    args.push(t);
                    args.extend(
                        x.iter()
                            .enumerate()
                            .filter(|&(u, _)| u != i && u != j)
                            .map(|(_, &e)| e),
                    );
                    f.accumulate_basis(&mut out, &(&s * c), &args);
                }
            }
        }
        out
    }))
}

/// The same coboundary as `(−1)^{p−1} [π̂ + ρ̂, f̂]` restricted to `g`-only
/// arguments and projected to `V`.
pub fn ce_coboundary_via_nr(bracket: &Cochain, action: &[Matrix], f: &Cochain) -> Result<Cochain, Error> {
    let (n, m) = check_inputs(bracket, action, f)?;
    let pi = lift(&MixedMap::from_g_cochain(bracket, m, Side::G)?);
    let rho = lift(&MixedMap::from_action(n, action)?);
    let fh = lift(&MixedMap::from_g_cochain(f, m, Side::V)?);
    let p = f.arity();
    let b = pi.add(&rho)?.nr_bracket(&fh)?;
    let restricted = b
        .restrict(p + 1, 0, Side::V)?
        .to_g_cochain()
        .expect("restriction has no V arguments");
    Ok(if p % 2 == 1 { restricted } else { restricted.neg() })
}

/// Matrix of the coboundary from arity-`p` cochains to arity-`p+1` cochains
/// in coefficient coordinates.
pub fn ce_matrix(bracket: &Cochain, action: &[Matrix], p: usize) -> Result<Matrix, Error> {
    let n = bracket.source_dim();
    let m = action.first().map_or(0, Matrix::rows);
    let cols = Cochain::space_dim(p, n, m);
    let rows = Cochain::space_dim(p + 1, n, m);
    let mut out = Matrix::zeros(rows, cols);
    for c in 0..cols {
        let d = ce_coboundary(bracket, action, &Cochain::unit(p, n, m, c))?;
        for (r, v) in d.coeffs().iter().enumerate() {
            if !v.is_zero() {
                out.set(r, c, v.clone());
            }
        }
    }
    Ok(out)
}

/// Adjoint action matrices `ad(e_i)`, column `j` being `[e_i, e_j]`.
pub fn adjoint_action(bracket: &Cochain) -> Vec<Matrix> {
    let n = bracket.source_dim();
    (0..n)
        .map(|i| Matrix::from_fn(n, n, |r, c| bracket.eval_basis(&[i, c])[r].clone()))
        .collect()
}
