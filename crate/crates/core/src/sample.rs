//! Seeded generators of small validated instances for property tests.
//!
//! Nothing here is uniform in any sense. Generators combine a catalog of
//! small Lie algebras, integer basis changes with integer inverses, and
//! rejection sampling with small integer entries, and every returned object
//! has passed the corresponding validator.

use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cohomology::coboundary_matrix;
use crate::compat::{adjoint_rep, validate_pair, validate_rep, CompatiblePair, LieBracket, RepPair};
use crate::deformation::{deformed_bracket, is_nijenhuis};
use crate::extension::{check_nine_equations, gauge_transform, ExtensionDatum};
use crate::linalg::{rat, Matrix, Rational};
use crate::multilinear::{nr_bracket, Cochain};

/// One of `−2, −1, 1, 2`.
pub fn small_nonzero<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    *[-2, -1, 1, 2].choose(rng).expect("nonempty")
}

/// An integer in `−2..=2`.
pub fn small_int<R: Rng + ?Sized>(rng: &mut R) -> i64 {
    rng.gen_range(-2..=2)
}

/// Product of random elementary matrices and a permutation: integer
/// entries, determinant `±1`.
pub fn unimodular<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut m = Matrix::from_fn(n, n, |r, c| rat((perm[c] == r) as i64));
    if n < 2 {
        return m;
    }
    for _ in 0..n + 1 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let s = rat(rng.gen_range(-1..=1));
        let e = Matrix::from_fn(n, n, |r, c| {
            if r == c {
                rat(1)
            } else if r == i && c == j {
                s.clone()
            } else {
                rat(0)
            }
        });
        m = m.mul(&e);
    }
    m
}

fn mk(dim: usize, entries: &[(usize, usize, usize, i64)]) -> LieBracket {
    let e: Vec<(usize, usize, usize, Rational)> = entries.iter().map(|&(i, j, k, c)| (i, j, k, rat(c))).collect();
    LieBracket::from_constants(dim, &e).expect("catalog entries are well formed")
}

/// Small Lie algebras of the given dimension, in a fixed order.
pub fn catalog(dim: usize) -> Vec<LieBracket> {
    let mut out = alloc::vec![LieBracket::abelian(dim)];
    match dim {
        2 => out.push(mk(2, &[(0, 1, 1, 1)])),
        3 => {
            out.push(mk(3, &[(0, 1, 1, 1)]));
            out.push(mk(3, &[(0, 1, 2, 1)]));
            out.push(mk(3, &[(0, 1, 1, 1), (0, 2, 2, 1)]));
            out.push(mk(3, &[(0, 1, 1, 1), (0, 2, 2, -1)]));
            out.push(mk(3, &[(0, 1, 1, 1), (0, 2, 1, 1), (0, 2, 2, 1)]));
            out.push(mk(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]));
            out.push(mk(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (0, 2, 1, -1)]));
        }
        4 => {
            out.push(mk(4, &[(0, 1, 1, 1), (2, 3, 3, 1)]));
            out.push(mk(4, &[(0, 1, 2, 1)]));
            out.push(mk(4, &[(0, 1, 2, 1), (0, 2, 3, 1)]));
            out.push(mk(4, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]));
            out.push(mk(4, &[(0, 1, 1, 1), (0, 2, 2, 1), (0, 3, 3, 1)]));
            out.push(mk(4, &[(0, 1, 2, 1), (0, 3, 3, 1)]));
        }
        _ => {}
    }
    out
}

/// A catalog algebra in a random integer basis.
pub fn random_lie_bracket<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> LieBracket {
    let b = catalog(dim).choose(rng).expect("catalog is never empty").clone();
    b.transform(&unimodular(rng, dim)).expect("unimodular is invertible")
}

/// A bracket-shaped cochain with `nonzero` random structure constants.
fn sparse_bracket<R: Rng + ?Sized>(rng: &mut R, dim: usize, nonzero: usize) -> LieBracket {
    let pairs = dim * (dim - 1) / 2;
    let mut c = Cochain::zero(2, dim, dim);
    for _ in 0..nonzero {
        let rank = rng.gen_range(0..pairs);
        let k = rng.gen_range(0..dim);
        let mut v = c.value_at_rank(rank).to_vec();
        v[k] = rat(small_nonzero(rng));
        let subset = crate::multilinear::subsets(dim, 2)[rank].clone();
        c.set_value(&subset, &v);
    }
    LieBracket::from_cochain(c).expect("square arity-2 cochain")
}

/// A validated compatible pair of dimension `dim ≥ 2`.
///
/// Strategies: a catalog bracket with a sparse random partner found by
/// rejection, a Nijenhuis deformation `(π, [π,N])`, or an invertible integer
/// recombination of either.
pub fn random_pair<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> CompatiblePair {
    let p = unimodular(rng, dim);
    let pi1 = random_lie_bracket(rng, dim);
    let base = match rng.gen_range(0..3) {
        0 => {
            let mut found = None;
            for _ in 0..200 {
                let k = rng.gen_range(1..=3);
                let pi2 = sparse_bracket(rng, dim, k);
                if validate_pair(&pi1, &pi2).expect("same dims").is_ok() {
                    found = Some(pi2);
                    break;
                }
            }
            CompatiblePair::new_unchecked(pi1.clone(), found.unwrap_or_else(|| pi1.scale(&rat(2))))
        }
        1 => {
            let mut found = None;
            for _ in 0..50 {
                let n = Matrix::from_fn(dim, dim, |_, _| rat(small_int(rng)));
                let single = CompatiblePair::new_unchecked(pi1.clone(), LieBracket::abelian(dim));
                if is_nijenhuis(&single, &n).expect("square operator").is_ok() {
                    let d = nr_bracket(pi1.cochain(), &Cochain::from_matrix(&n)).expect("same dims");
                    found = Some(LieBracket::from_cochain(d).expect("arity 2"));
                    break;
                }
            }
            CompatiblePair::new_unchecked(pi1.clone(), found.unwrap_or_else(|| LieBracket::abelian(dim)))
        }
        _ => {
            let other = sparse_bracket(rng, dim, 1);
            if validate_pair(&pi1, &other).expect("same dims").is_ok() {
                CompatiblePair::new_unchecked(pi1.clone(), other)
            } else {
                CompatiblePair::new_unchecked(pi1.clone(), LieBracket::abelian(dim))
            }
        }
    };
    let (a, b, c, d) = loop {
        let t = (small_int(rng), small_int(rng), small_int(rng), small_int(rng));
        if t.0 * t.3 - t.1 * t.2 != 0 {
            break t;
        }
    };
    let q1 = base.pencil(&rat(a), &rat(b));
    let q2 = base.pencil(&rat(c), &rat(d));
    let q1 = q1.transform(&p).expect("unimodular");
    let q2 = q2.transform(&p).expect("unimodular");
    CompatiblePair::new(q1, q2).expect("recombinations of a compatible pair are compatible")
}

/// One-dimensional representations `(λ, κ)`: functionals vanishing on the
/// derived algebras with `λ({x,y}) + κ([x,y]) = 0`.
pub fn characters(pair: &CompatiblePair) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let n = pair.dim();
    let pairs = crate::multilinear::subsets(n, 2);
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    for s in &pairs {
        let b1 = pair.pi1().apply_basis(s[0], s[1]);
        let b2 = pair.pi2().apply_basis(s[0], s[1]);
        let mut r = b1.clone();
        r.extend(crate::linalg::zero_vec(n));
        rows.push(r);
        let mut r = crate::linalg::zero_vec(n);
        r.extend(b2.clone());
        rows.push(r);
        let mut r = b2;
        r.extend(b1);
        rows.push(r);
    }
    if rows.is_empty() {
        rows.push(crate::linalg::zero_vec(2 * n));
    }
    let m = Matrix::from_rows(rows).expect("rows have equal length");
    m.kernel_basis()
        .vectors()
        .iter()
        .map(|v| (v[..n].to_vec(), v[n..].to_vec()))
        .collect()
}

fn character_rep<R: Rng + ?Sized>(rng: &mut R, pair: &CompatiblePair) -> RepPair {
    let n = pair.dim();
    let basis = characters(pair);
    let mut lam = crate::linalg::zero_vec(n);
    let mut kap = crate::linalg::zero_vec(n);
    for (l, k) in &basis {
        let c = rat(small_int(rng));
        crate::linalg::add_scaled(&mut lam, &c, l);
        crate::linalg::add_scaled(&mut kap, &c, k);
    }
    let one = |v: &[Rational]| -> Vec<Matrix> { v.iter().map(|c| Matrix::from_fn(1, 1, |_, _| c.clone())).collect() };
    RepPair::new(1, one(&lam), one(&kap)).expect("1x1 matrices")
}

/// A validated representation of module dimension at most `max_module_dim`:
/// the adjoint one when it fits, zero ones, characters, and direct sums of
/// these, conjugated by an integer basis change.
pub fn random_rep<R: Rng + ?Sized>(rng: &mut R, pair: &CompatiblePair, max_module_dim: usize) -> RepPair {
    assert!(max_module_dim >= 1, "module dimension at least 1");
    let n = pair.dim();
    let rep = if n <= max_module_dim && rng.gen_bool(0.3) {
        adjoint_rep(pair)
    } else {
        let target = rng.gen_range(1..=max_module_dim);
        let mut rep = character_rep(rng, pair);
        while rep.module_dim() < target {
            let next = if rng.gen_bool(0.25) {
                RepPair::zero(n, 1)
            } else {
                character_rep(rng, pair)
            };
            rep = rep.direct_sum(&next).expect("same base");
        }
        rep
    };
    let m = rep.module_dim();
    let p = unimodular(rng, m);
    let p_inv = p.inverse().expect("unimodular");
    let conj = |ms: &[Matrix]| -> Vec<Matrix> { ms.iter().map(|a| p_inv.mul(a).mul(&p)).collect() };
    let out = RepPair::new(m, conj(rep.rho()), conj(rep.mu())).expect("square matrices");
    debug_assert!(validate_rep(pair, &out).expect("same base").is_ok());
    out
}

/// Random cochain with entries in `−2..=2`.
pub fn random_cochain<R: Rng + ?Sized>(rng: &mut R, arity: usize, source_dim: usize, target_dim: usize) -> Cochain {
    let len = Cochain::space_dim(arity, source_dim, target_dim);
    let coeffs = (0..len).map(|_| rat(small_int(rng))).collect();
    Cochain::from_coeffs(arity, source_dim, target_dim, coeffs).expect("length matches")
}

/// Random integer matrix with entries in `−2..=2`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rat(small_int(rng)))
}

/// A random 2-cocycle of the staircase complex: an integer combination of
/// a kernel basis of `δ²`.
pub fn random_cocycle<R: Rng + ?Sized>(rng: &mut R, pair: &CompatiblePair, rep: &RepPair) -> (Cochain, Cochain) {
    let (n, m) = (pair.dim(), rep.module_dim());
    let d2 = coboundary_matrix(pair, rep, 2).expect("valid representation");
    let mut v = crate::linalg::zero_vec(d2.coboundary_matrix.cols());
    for b in d2.coboundary_matrix.kernel_basis().vectors() {
        crate::linalg::add_scaled(&mut v, &rat(small_int(rng)), b);
    }
    let half = Cochain::space_dim(2, n, m);
    (
        Cochain::from_coeffs(2, n, m, v[..half].to_vec()).expect("length matches"),
        Cochain::from_coeffs(2, n, m, v[half..].to_vec()).expect("length matches"),
    )
}

/// A Nijenhuis seed on a three-dimensional algebra, from a fixed list.
pub fn nijenhuis_seeds() -> Vec<(LieBracket, Matrix)> {
    alloc::vec![
        (
            mk(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)]),
            Matrix::from_int_rows(&[&[2, -1, 0], &[2, 1, 1], &[0, 0, 0]]),
        ),
        (
            mk(3, &[(0, 1, 1, 1), (0, 2, 2, 1)]),
            Matrix::from_int_rows(&[&[2, 0, 0], &[2, -1, 0], &[1, 1, 0]]),
        ),
        (
            mk(3, &[(0, 1, 2, 1)]),
            Matrix::from_int_rows(&[&[1, 1, 0], &[0, 0, 0], &[0, 2, 0]]),
        ),
    ]
}

/// A validated pair with a Nijenhuis operator for both brackets: a
/// polynomial `a₀ + a₁N + a₂N²` in a seed on `(π, [π,N])`, or a diagonal
/// operator on `([e₁,e₂] = e₂, 0)`.
pub fn random_nijenhuis<R: Rng + ?Sized>(rng: &mut R) -> (CompatiblePair, Matrix) {
    loop {
        if rng.gen_bool(0.25) {
            let pi = mk(2, &[(0, 1, 1, 1)]);
            let pair = CompatiblePair::new(pi, LieBracket::abelian(2)).expect("valid");
            let d = Matrix::from_fn(2, 2, |r, c| if r == c { rat(small_int(rng)) } else { rat(0) });
            return (pair, d);
        }
        let seeds = nijenhuis_seeds();
        let (pi, n) = seeds.choose(rng).expect("nonempty").clone();
        let pi_n = deformed_bracket(&pi, &n).expect("seed is Nijenhuis");
        let Ok(pair) = CompatiblePair::new(pi, pi_n) else {
            continue;
        };
        let (a0, a1, a2) = (small_int(rng), small_int(rng), small_int(rng));
        let op = Matrix::identity(3)
            .scale(&rat(a0))
            .add(&n.scale(&rat(a1)))
            .add(&n.mul(&n).scale(&rat(a2)));
        if is_nijenhuis(&pair, &op).expect("square operator").is_ok() {
            return (pair, op);
        }
    }
}

/// A datum on `g` of dimension `2..=max_dim` and `h` of dimension
/// `1..=max_dim`. Half are abelian with a random cocycle, half are gauge
/// transforms of a product with nonabelian `h`; 40% of either kind get a
/// single entry perturbed, which is usually invalid.
pub fn random_extension_datum<R: Rng + ?Sized>(rng: &mut R, max_dim: usize) -> ExtensionDatum {
    let n = rng.gen_range(2..=max_dim);
    let g = random_pair(rng, n);
    let valid = if rng.gen_bool(0.5) {
        let rep = random_rep(rng, &g, max_dim.min(2));
        let (w1, w2) = random_cocycle(rng, &g, &rep);
        ExtensionDatum::abelian(g, &rep, w1, w2).expect("shapes match")
    } else {
        let m = rng.gen_range(2..=max_dim);
        let h = random_pair(rng, m);
        let xi = random_matrix(rng, m, n);
        gauge_transform(&ExtensionDatum::product(g, h), &xi).expect("product datum is valid")
    };
    debug_assert!(check_nine_equations(&valid).is_ok());
    if rng.gen_bool(0.6) {
        return valid;
    }
    perturb(rng, &valid)
}

/// The same datum with one entry of `ρ`, `μ`, `ω₁` or `ω₂` shifted by a
/// nonzero integer.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, d: &ExtensionDatum) -> ExtensionDatum {
    let (n, m) = (d.g_dim(), d.h_dim());
    let mut rho = d.rho().to_vec();
    let mut mu = d.mu().to_vec();
    let mut w1 = d.omega1().clone();
    let mut w2 = d.omega2().clone();
    let shift = rat(small_nonzero(rng));
    match rng.gen_range(0..4) {
        k @ (0 | 1) => {
            let target = if k == 0 { &mut rho } else { &mut mu };
            let (x, r, c) = (rng.gen_range(0..n), rng.gen_range(0..m), rng.gen_range(0..m));
            let v = target[x].get(r, c) + &shift;
            target[x].set(r, c, v);
        }
        k => {
            let target = if k == 2 { &mut w1 } else { &mut w2 };
            let mut coeffs = target.coeffs().to_vec();
            let i = rng.gen_range(0..coeffs.len());
            coeffs[i] = &coeffs[i] + &shift;
            *target = Cochain::from_coeffs(2, n, m, coeffs).expect("length unchanged");
        }
    }
    ExtensionDatum::new(d.g().clone(), d.h().clone(), rho, mu, w1, w2).expect("shapes unchanged")
}
