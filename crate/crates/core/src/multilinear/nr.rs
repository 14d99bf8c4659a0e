//! The Nijenhuis–Richardson bracket on endomorphism-valued cochains.

use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::cochain::Cochain;
use super::combinatorics::{subsets, unshuffles};
use crate::error::{check_dim, Error};
use crate::linalg::{zero_vec, Rational};

fn check_endo(c: &Cochain, dim: usize) -> Result<(), Error> {
    check_dim("cochain source", dim, c.source_dim())?;
    check_dim("cochain target", dim, c.target_dim())
}

/// `P∘Q(x_1, …) = Σ_σ sgn σ · P(Q(x_σ(1), …, x_σ(q+1)), x_σ(q+2), …)`, the sum
/// over `(q+1, p)`-unshuffles. Zero when `P` has arity 0.
pub fn nr_compose(p: &Cochain, q: &Cochain) -> Result<Cochain, Error> {
    let n = p.source_dim();
    check_endo(p, n)?;
    check_endo(q, n)?;
    let (a, b) = (p.arity(), q.arity());
    if a + b == 0 {
        return Err(Error::ArityOutOfRange);
    }
    let arity = a + b - 1;
    if a == 0 {
        return Ok(Cochain::zero(arity, n, n));
    }
    let shuffles = unshuffles(b, arity);
    let mut args = Vec::with_capacity(a);
    Ok(Cochain::from_fn(arity, n, n, |x| {
        let mut out = zero_vec(n);
        for sh in &shuffles {
            let inner_args: Vec<usize> = sh.perm[..b].iter().map(|&t| x[t]).collect();
            let inner = q.eval_basis(&inner_args);
            let sign = if sh.sign > 0 {
                Rational::one()
            } else {
                -Rational::one()
            };
            for (t, c) in inner.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                args.clear();
                args.push(t);
                args.extend(sh.perm[b..].iter().map(|&s| x[s]));
                p.accumulate_basis(&mut out, &(&sign * c), &args);
            }
        }
        out
    }))
}

/// `[P,Q] = P∘Q − (−1)^{pq} Q∘P` with `p`, `q` the degrees (arity − 1).
pub fn nr_bracket(p: &Cochain, q: &Cochain) -> Result<Cochain, Error> {
    let pq = p.degree() * q.degree();
    let pq_c = nr_compose(p, q)?;
    let qp_c = nr_compose(q, p)?;
    if pq.rem_euclid(2) == 0 {
        pq_c.sub(&qp_c)
    } else {
        pq_c.add(&qp_c)
    }
}

/// Value of `[P,Q]` on one increasing subset, without building the whole
/// cochain. Used by validators that stop at the first failure.
pub(crate) fn nr_bracket_at(p: &Cochain, q: &Cochain, x: &[usize]) -> Vec<Rational> {
    let n = p.source_dim();
    let mut out = zero_vec(n);
    let sign_pq = if (p.degree() * q.degree()).rem_euclid(2) == 0 {
        -Rational::one()
    } else {
        Rational::one()
    };
    compose_at(p, q, x, &Rational::one(), &mut out);
    compose_at(q, p, x, &sign_pq, &mut out);
    out
}

fn compose_at(p: &Cochain, q: &Cochain, x: &[usize], scale: &Rational, out: &mut [Rational]) {
    let (a, b) = (p.arity(), q.arity());
    if a == 0 {
        return;
    }
    let mut args = Vec::with_capacity(a);
    for sh in unshuffles(b, x.len()) {
        let inner_args: Vec<usize> = sh.perm[..b].iter().map(|&t| x[t]).collect();
        let inner = q.eval_basis(&inner_args);
        let sign = if sh.sign > 0 { scale.clone() } else { -scale };
        for (t, c) in inner.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            args.clear();
            args.push(t);
            args.extend(sh.perm[b..].iter().map(|&s| x[s]));
            p.accumulate_basis(out, &(&sign * c), &args);
        }
    }
}

/// Lexicographically first increasing subset where `[P,Q]` is nonzero.
pub(crate) fn nr_bracket_first_nonzero(p: &Cochain, q: &Cochain) -> Option<(Vec<usize>, Vec<Rational>)> {
    let arity = (p.arity() + q.arity()).checked_sub(1)?;
    subsets(p.source_dim(), arity).into_iter().find_map(|x| {
        let v = nr_bracket_at(p, q, &x);
        if v.iter().all(Zero::is_zero) {
            None
        } else {
            Some((x, v))
        }
    })
}
