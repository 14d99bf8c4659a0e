//! Extensions `0 → h → E → g → 0` of compatible pairs with a chosen linear
//! section, described by a datum `(ρ, μ, ω₁, ω₂)`.
//!
//! On `E = g ⊕ h` (g first) the two brackets are
//!
//! ```text
//! [(x,u),(y,v)] = ([x,y], ρ(x)v − ρ(y)u + ω₁(x,y) + [u,v])
//! {(x,u),(y,v)} = ({x,y}, μ(x)v − μ(y)u + ω₂(x,y) + {u,v})
//! ```
//!
//! and they form a compatible pair exactly when the nine equations checked
//! by [`check_nine_equations`] hold. The same condition is checked a second
//! way in [`maurer_cartan_check`] through lifts and the NR bracket.

use alloc::vec::Vec;

use num_traits::Zero;

use crate::cohomology::{coboundary_matrix, staircase_coboundary, CochainTuple, Formulation};
use crate::compat::{action_of, is_homomorphism, CompatiblePair, LieBracket, RepPair};
use crate::error::{check_dim, Error, Verdict, Witness};
use crate::linalg::{add_scaled, is_zero_vec, rat, ratio, sub_vec, unit_vec, zero_vec, Matrix, Rational};
use crate::multilinear::{lift, subsets, Cochain, LiftedCochain, MixedMap, Side};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtensionDatum {
    g: CompatiblePair,
    h: CompatiblePair,
    rho: Vec<Matrix>,
    mu: Vec<Matrix>,
    omega1: Cochain,
    omega2: Cochain,
}

impl ExtensionDatum {
    /// Checks shapes only; see [`check_nine_equations`] for validity.
    pub fn new(
        g: CompatiblePair,
        h: CompatiblePair,
        rho: Vec<Matrix>,
        mu: Vec<Matrix>,
        omega1: Cochain,
        omega2: Cochain,
    ) -> Result<Self, Error> {
        let (n, m) = (g.dim(), h.dim());
        check_dim("rho matrices", n, rho.len())?;
        check_dim("mu matrices", n, mu.len())?;
        for a in rho.iter().chain(&mu) {
            check_dim("action matrix rows", m, a.rows())?;
            check_dim("action matrix cols", m, a.cols())?;
        }
        for w in [&omega1, &omega2] {
            check_dim("cocycle arity", 2, w.arity())?;
            check_dim("cocycle source", n, w.source_dim())?;
            check_dim("cocycle target", m, w.target_dim())?;
        }
        Ok(ExtensionDatum {
            g,
            h,
            rho,
            mu,
            omega1,
            omega2,
        })
    }

    /// Datum with abelian kernel.
    pub fn abelian(g: CompatiblePair, rep: &RepPair, omega1: Cochain, omega2: Cochain) -> Result<Self, Error> {
        let m = rep.module_dim();
        let h = CompatiblePair::new_unchecked(LieBracket::abelian(m), LieBracket::abelian(m));
        ExtensionDatum::new(g, h, rep.rho().to_vec(), rep.mu().to_vec(), omega1, omega2)
    }

    /// The product `g ⊕ h` with both factors commuting.
    pub fn product(g: CompatiblePair, h: CompatiblePair) -> Self {
        let (n, m) = (g.dim(), h.dim());
        ExtensionDatum {
            g,
            h,
            rho: alloc::vec![Matrix::zeros(m, m); n],
            mu: alloc::vec![Matrix::zeros(m, m); n],
            omega1: Cochain::zero(2, n, m),
            omega2: Cochain::zero(2, n, m),
        }
    }

    pub fn g(&self) -> &CompatiblePair {
        &self.g
    }

    pub fn h(&self) -> &CompatiblePair {
        &self.h
    }

    pub fn g_dim(&self) -> usize {
        self.g.dim()
    }

    pub fn h_dim(&self) -> usize {
        self.h.dim()
    }

    pub fn rho(&self) -> &[Matrix] {
        &self.rho
    }

    pub fn mu(&self) -> &[Matrix] {
        &self.mu
    }

    pub fn omega1(&self) -> &Cochain {
        &self.omega1
    }

    pub fn omega2(&self) -> &Cochain {
        &self.omega2
    }

    pub fn is_abelian(&self) -> bool {
        self.h.pi1().is_abelian() && self.h.pi2().is_abelian()
    }

    pub fn rep(&self) -> RepPair {
        RepPair::new(self.h_dim(), self.rho.clone(), self.mu.clone()).expect("shapes checked on construction")
    }

    pub fn with_omegas(&self, omega1: Cochain, omega2: Cochain) -> Result<Self, Error> {
        ExtensionDatum::new(
            self.g.clone(),
            self.h.clone(),
            self.rho.clone(),
            self.mu.clone(),
            omega1,
            omega2,
        )
    }
}

/// `Σ_k a_k ω(e_k, e_z)`.
fn omega_left(omega: &Cochain, a: &[Rational], z: usize) -> Vec<Rational> {
    let mut out = zero_vec(omega.target_dim());
    for (k, c) in a.iter().enumerate() {
        if !c.is_zero() {
            omega.accumulate_basis(&mut out, c, &[k, z]);
        }
    }
    out
}

fn add_into(acc: &mut [Rational], v: &[Rational]) {
    add_scaled(acc, &rat(1), v);
}

fn sub_into(acc: &mut [Rational], v: &[Rational]) {
    add_scaled(acc, &rat(-1), v);
}

/// One bracket of `g`, of `h`, its action and its cocycle.
struct Arm<'a> {
    g: &'a LieBracket,
    h: &'a LieBracket,
    act: &'a [Matrix],
    omega: &'a Cochain,
}

impl Arm<'_> {
    fn act_on(&self, x: &[Rational], v: &[Rational]) -> Vec<Rational> {
        action_of(self.act, x, self.h.dim()).mul_vec(v)
    }
}

impl ExtensionDatum {
    fn arms(&self) -> [Arm<'_>; 2] {
        [
            Arm {
                g: self.g.pi1(),
                h: self.h.pi1(),
                act: &self.rho,
                omega: &self.omega1,
            },
            Arm {
                g: self.g.pi2(),
                h: self.h.pi2(),
                act: &self.mu,
                omega: &self.omega2,
            },
        ]
    }
}

/// `A([x,y]) v − A(x)A(y)v + A(y)A(x)v + [ω(x,y), v]`.
fn rep_defect(a: &Arm, x: usize, y: usize, v: usize) -> Vec<Rational> {
    let m = a.h.dim();
    let ev = unit_vec(m, v);
    let mut out = a.act_on(&a.g.apply_basis(x, y), &ev);
    sub_into(&mut out, &a.act[x].mul_vec(&a.act[y].mul_vec(&ev)));
    add_into(&mut out, &a.act[y].mul_vec(&a.act[x].mul_vec(&ev)));
    add_into(&mut out, &a.h.apply(a.omega.value(&[x, y]), &ev));
    out
}

/// `A(x)[u,v] − [A(x)u, v] − [u, A(x)v]`.
fn derivation_defect(act: &[Matrix], h: &LieBracket, x: usize, u: usize, v: usize) -> Vec<Rational> {
    let m = h.dim();
    let (eu, ev) = (unit_vec(m, u), unit_vec(m, v));
    let mut out = act[x].mul_vec(&h.apply_basis(u, v));
    sub_into(&mut out, &h.apply(&act[x].column(u), &ev));
    sub_into(&mut out, &h.apply(&eu, &act[x].column(v)));
    out
}

/// `Σ_cyc A(z) ω(x,y) − ω([x,y], z)`.
fn cocycle_defect(a: &Arm, x: usize, y: usize, z: usize) -> Vec<Rational> {
    let mut out = zero_vec(a.h.dim());
    for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
        add_into(&mut out, &a.act[r].mul_vec(&a.omega.eval_basis(&[p, q])));
        sub_into(&mut out, &omega_left(a.omega, &a.g.apply_basis(p, q), r));
    }
    out
}

fn mixed_rep_defect(d: &ExtensionDatum, x: usize, y: usize, v: usize) -> Vec<Rational> {
    let [a1, a2] = d.arms();
    let ev = unit_vec(d.h_dim(), v);
    let mut out = a1.act_on(&a2.g.apply_basis(x, y), &ev);
    add_into(&mut out, &a2.act_on(&a1.g.apply_basis(x, y), &ev));
    for (p, q, s) in [(x, y, -1), (y, x, 1)] {
        let s = rat(s);
        add_scaled(&mut out, &s, &a1.act[p].mul_vec(&a2.act[q].mul_vec(&ev)));
        add_scaled(&mut out, &s, &a2.act[p].mul_vec(&a1.act[q].mul_vec(&ev)));
    }
    add_into(&mut out, &a1.h.apply(a2.omega.value(&[x, y]), &ev));
    add_into(&mut out, &a2.h.apply(a1.omega.value(&[x, y]), &ev));
    out
}

fn mixed_derivation_defect(d: &ExtensionDatum, x: usize, u: usize, v: usize) -> Vec<Rational> {
    let [a1, a2] = d.arms();
    let mut out = derivation_defect(a1.act, a2.h, x, u, v);
    add_into(&mut out, &derivation_defect(a2.act, a1.h, x, u, v));
    out
}

fn mixed_cocycle_defect(d: &ExtensionDatum, x: usize, y: usize, z: usize) -> Vec<Rational> {
    let [a1, a2] = d.arms();
    let mut out = zero_vec(d.h_dim());
    for (p, q, r) in [(x, y, z), (y, z, x), (z, x, y)] {
        add_into(&mut out, &a1.act[r].mul_vec(&a2.omega.eval_basis(&[p, q])));
        add_into(&mut out, &a2.act[r].mul_vec(&a1.omega.eval_basis(&[p, q])));
        sub_into(&mut out, &omega_left(a1.omega, &a2.g.apply_basis(p, q), r));
        sub_into(&mut out, &omega_left(a2.omega, &a1.g.apply_basis(p, q), r));
    }
    out
}

fn first_failure(label: &str, tuples: impl IntoIterator<Item = Vec<usize>>, f: impl Fn(&[usize]) -> Vec<Rational>) -> Verdict {
    for t in tuples {
        let r = f(&t);
        if !is_zero_vec(&r) {
            return Verdict::Fail(Witness::new(label, t, r));
        }
    }
    Verdict::Ok
}

/// Index tuples `(x, y, v)` with `x < y` in `g` and `v` in `h`.
fn pairs_then(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for s in subsets(n, 2) {
        for v in 0..m {
            out.push(alloc::vec![s[0], s[1], v]);
        }
    }
    out
}

/// Index tuples `(x, u, v)` with `x` in `g` and `u < v` in `h`.
fn one_then_pairs(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for x in 0..n {
        for s in subsets(m, 2) {
            out.push(alloc::vec![x, s[0], s[1]]);
        }
    }
    out
}

/// Labels of the nine equations, in checking order.
pub const EQUATION_LABELS: [&str; 9] = [
    "equation 1", "equation 2", "equation 3", "equation 4", "equation 5", "equation 6", "equation 7", "equation 8",
    "equation 9",
];

/// The nine conditions for the two brackets on `g ⊕ h` to form a compatible
/// pair, with `ad` and `𝔞𝔡` the adjoint actions of the two brackets of `h`:
///
/// 1. `ρ([x,y]) = [ρ(x),ρ(y)] − ad_{ω₁(x,y)}`
/// 2. `μ({x,y}) = [μ(x),μ(y)] − 𝔞𝔡_{ω₂(x,y)}`
/// 3. `ρ(x)` is a derivation of `[,]_h`
/// 4. `μ(x)` is a derivation of `{,}_h`
/// 5. `ρ({x,y}) + μ([x,y]) = [ρ(x),μ(y)] + [μ(x),ρ(y)] − ad_{ω₂(x,y)} − 𝔞𝔡_{ω₁(x,y)}`
/// 6. `ρ(x){u,v} + μ(x)[u,v] = {ρ(x)u,v} + {u,ρ(x)v} + [μ(x)u,v] + [u,μ(x)v]`
/// 7. `Σ_cyc ρ(z)ω₁(x,y) = Σ_cyc ω₁([x,y],z)`
/// 8. `Σ_cyc μ(z)ω₂(x,y) = Σ_cyc ω₂({x,y},z)`
/// 9. `Σ_cyc ρ(z)ω₂(x,y) + μ(z)ω₁(x,y) = Σ_cyc ω₁({x,y},z) + ω₂([x,y],z)`
///
/// A failure reports the equation label, the basis tuple (indices into `g`
/// then `h` as the equation reads) and `lhs − rhs`.
pub fn check_nine_equations(d: &ExtensionDatum) -> Verdict {
    let (n, m) = (d.g_dim(), d.h_dim());
    let [a1, a2] = d.arms();
    let triples = subsets(n, 3);
    first_failure(EQUATION_LABELS[0], pairs_then(n, m), |t| rep_defect(&a1, t[0], t[1], t[2]))
        .and_then(|| first_failure(EQUATION_LABELS[1], pairs_then(n, m), |t| rep_defect(&a2, t[0], t[1], t[2])))
        .and_then(|| {
            first_failure(EQUATION_LABELS[2], one_then_pairs(n, m), |t| {
                derivation_defect(a1.act, a1.h, t[0], t[1], t[2])
            })
        })
        .and_then(|| {
            first_failure(EQUATION_LABELS[3], one_then_pairs(n, m), |t| {
                derivation_defect(a2.act, a2.h, t[0], t[1], t[2])
            })
        })
        .and_then(|| {
            first_failure(EQUATION_LABELS[4], pairs_then(n, m), |t| mixed_rep_defect(d, t[0], t[1], t[2]))
        })
        .and_then(|| {
            first_failure(EQUATION_LABELS[5], one_then_pairs(n, m), |t| {
                mixed_derivation_defect(d, t[0], t[1], t[2])
            })
        })
        .and_then(|| first_failure(EQUATION_LABELS[6], triples.clone(), |t| cocycle_defect(&a1, t[0], t[1], t[2])))
        .and_then(|| first_failure(EQUATION_LABELS[7], triples.clone(), |t| cocycle_defect(&a2, t[0], t[1], t[2])))
        .and_then(|| first_failure(EQUATION_LABELS[8], triples.clone(), |t| mixed_cocycle_defect(d, t[0], t[1], t[2])))
}

fn assemble(a: &Arm, n: usize, m: usize) -> LieBracket {
    let c = Cochain::from_fn(2, n + m, n + m, |s| {
        let (i, j) = (s[0], s[1]);
        let mut out = zero_vec(n + m);
        if j < n {
            out[..n].clone_from_slice(&a.g.apply_basis(i, j));
            out[n..].clone_from_slice(a.omega.value(&[i, j]));
        } else if i < n {
            out[n..].clone_from_slice(&a.act[i].column(j - n));
        } else {
            out[n..].clone_from_slice(&a.h.apply_basis(i - n, j - n));
        }
        out
    });
    LieBracket::from_cochain(c).expect("square arity-2 cochain")
}

/// The two brackets on `g ⊕ h`, not validated.
pub fn assemble_brackets(d: &ExtensionDatum) -> (LieBracket, LieBracket) {
    let (n, m) = (d.g_dim(), d.h_dim());
    let [a1, a2] = d.arms();
    (assemble(&a1, n, m), assemble(&a2, n, m))
}

/// The extension as a compatible pair on `g ⊕ h`.
pub fn build_extension(d: &ExtensionDatum) -> Result<CompatiblePair, Error> {
    check_nine_equations(d).into_result(Error::InvalidExtension)?;
    let (b1, b2) = assemble_brackets(d);
    CompatiblePair::new(b1, b2)
}

/// Lifts `π̂_i + ϑ̂_i` of the brackets of `g` and `h` to `g ⊕ h`.
fn base_lifts(d: &ExtensionDatum) -> [LiftedCochain; 2] {
    let (n, m) = (d.g_dim(), d.h_dim());
    let one = |g: &LieBracket, h: &LieBracket| {
        let pg = lift(&MixedMap::from_g_cochain(g.cochain(), m, Side::G).expect("g-valued"));
        let ph = lift(&MixedMap::from_v_cochain(h.cochain(), n).expect("h-valued"));
        pg.add(&ph).expect("same split")
    };
    [one(d.g.pi1(), d.h.pi1()), one(d.g.pi2(), d.h.pi2())]
}

/// Lifts `ρ̂ + ω̂₁` and `μ̂ + ω̂₂`.
pub fn lifted_datum(d: &ExtensionDatum) -> [LiftedCochain; 2] {
    let (n, m) = (d.g_dim(), d.h_dim());
    let one = |act: &[Matrix], omega: &Cochain| {
        let a = lift(&MixedMap::from_action(n, act).expect("shapes checked"));
        let w = lift(&MixedMap::from_g_cochain(omega, m, Side::V).expect("shapes checked"));
        a.add(&w).expect("same split")
    };
    [one(&d.rho, &d.omega1), one(&d.mu, &d.omega2)]
}

fn first_nonzero_lifted(label: &str, c: &LiftedCochain) -> Verdict {
    match c.cochain().first_nonzero() {
        None => Verdict::Ok,
        Some((args, v)) => Verdict::Fail(Witness::new(label, args, v)),
    }
}

/// The three Maurer–Cartan equations for `(P₁, P₂)` with differentials
/// `∂_i = [π̂_i + ϑ̂_i, −]`:
///
/// `∂₁P₁ + ½[P₁,P₁] = 0`, `∂₂P₂ + ½[P₂,P₂] = 0`, `∂₁P₂ + ∂₂P₁ + [P₁,P₂] = 0`.
///
/// Witness arguments index the basis of `g ⊕ h`.
pub fn maurer_cartan_check(d: &ExtensionDatum) -> Verdict {
    let [b1, b2] = base_lifts(d);
    let [p1, p2] = lifted_datum(d);
    let half = ratio(1, 2);
    let br = |a: &LiftedCochain, b: &LiftedCochain| a.nr_bracket(b).expect("arity-2 lifts");
    let plus = |a: &LiftedCochain, b: &LiftedCochain| a.add(b).expect("same split");
    let mc1 = plus(&br(&b1, &p1), &br(&p1, &p1).scale(&half));
    let mc2 = plus(&br(&b2, &p2), &br(&p2, &p2).scale(&half));
    let mc12 = plus(&plus(&br(&b1, &p2), &br(&b2, &p1)), &br(&p1, &p2));
    first_nonzero_lifted("maurer-cartan(1)", &mc1)
        .and_then(|| first_nonzero_lifted("maurer-cartan(2)", &mc2))
        .and_then(|| first_nonzero_lifted("maurer-cartan(mixed)", &mc12))
}

/// Whether a cochain on `g ⊕ h` takes values in `h` and vanishes whenever
/// all arguments lie in `h`. Such cochains are closed under the NR bracket
/// and the differentials `∂_i`.
pub fn is_g_supported(c: &LiftedCochain) -> bool {
    let n = c.g_dim();
    let coch = c.cochain();
    subsets(coch.source_dim(), coch.arity())
        .iter()
        .enumerate()
        .all(|(rank, s)| {
            let v = coch.value_at_rank(rank);
            let pure_h = s.iter().all(|&i| i >= n);
            v[..n].iter().all(Zero::is_zero) && (!pure_h || v.iter().all(Zero::is_zero))
        })
}

/// Matrix of `∂_i` (or its twist `∂_i + [P_i, −]`) from arity `p` to arity
/// `p + 1` on all cochains of `g ⊕ h` valued in `g ⊕ h`.
pub fn differential_matrix(d: &ExtensionDatum, which: usize, p: usize, twisted: bool) -> Result<Matrix, Error> {
    assert!(which == 1 || which == 2, "differential index is 1 or 2");
    let (n, m) = (d.g_dim(), d.h_dim());
    let e = n + m;
    let idx = which - 1;
    let mut op = base_lifts(d)[idx].clone();
    if twisted {
        op = op.add(&lifted_datum(d)[idx])?;
    }
    let cols = Cochain::space_dim(p, e, e);
    let rows = Cochain::space_dim(p + 1, e, e);
    let mut out = Matrix::zeros(rows, cols);
    for c in 0..cols {
        let q = LiftedCochain::new(Cochain::unit(p, e, e, c), n)?;
        let image = op.nr_bracket(&q)?;
        for (r, v) in image.cochain().coeffs().iter().enumerate() {
            if !v.is_zero() {
                out.set(r, c, v.clone());
            }
        }
    }
    Ok(out)
}

/// `∂₁∂₂ + ∂₂∂₁` from arity `p` to arity `p + 2`.
pub fn anticommutator_defect(d: &ExtensionDatum, p: usize, twisted: bool) -> Result<Matrix, Error> {
    let a1 = differential_matrix(d, 1, p, twisted)?;
    let a2 = differential_matrix(d, 2, p, twisted)?;
    let b1 = differential_matrix(d, 1, p + 1, twisted)?;
    let b2 = differential_matrix(d, 2, p + 1, twisted)?;
    Ok(b1.mul(&a2).add(&b2.mul(&a1)))
}

/// A linear section `σ: g → E` of a projection `p: E → g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    sigma: Matrix,
}

impl Section {
    pub fn new(sigma: Matrix, proj: &Matrix) -> Result<Self, Error> {
        check_dim("section rows", proj.cols(), sigma.rows())?;
        check_dim("section cols", proj.rows(), sigma.cols())?;
        if proj.mul(&sigma) != Matrix::identity(sigma.cols()) {
            return Err(Error::InvalidSection("projection after section is not the identity"));
        }
        Ok(Section { sigma })
    }

    pub fn matrix(&self) -> &Matrix {
        &self.sigma
    }
}

/// `[σ | embed]`, the map `(x, u) ↦ σ(x) + embed(u)` from `g ⊕ h` to `E`.
pub fn splitting_map(embed: &Matrix, section: &Section) -> Matrix {
    let (e, n, m) = (embed.rows(), section.sigma.cols(), embed.cols());
    Matrix::from_fn(e, n + m, |r, c| {
        if c < n {
            section.sigma.get(r, c).clone()
        } else {
            embed.get(r, c - n).clone()
        }
    })
}

/// Reads the datum off an extension through a section:
/// `ρ(x)u = [σx, u]`, `ω₁(x,y) = [σx, σy] − σ[x,y]`, and likewise for the
/// second bracket, with `h` identified with the image of `embed`.
pub fn extract_datum(
    ext: &CompatiblePair,
    embed: &Matrix,
    proj: &Matrix,
    section: &Section,
) -> Result<ExtensionDatum, Error> {
    let e = ext.dim();
    check_dim("embedding rows", e, embed.rows())?;
    check_dim("projection cols", e, proj.cols())?;
    check_dim("section rows", e, section.sigma.rows())?;
    check_dim("section cols", proj.rows(), section.sigma.cols())?;
    let (n, m) = (proj.rows(), embed.cols());
    if proj.mul(&section.sigma) != Matrix::identity(n) {
        return Err(Error::InvalidSection("projection after section is not the identity"));
    }
    if n + m != e || embed.rank() != m || !proj.mul(embed).is_zero() {
        return Err(Error::InvalidSection("embedding is not the kernel of the projection"));
    }
    let s = splitting_map(embed, section);
    let s_inv = s.inverse().expect("section and kernel span the extension");
    for b in [ext.pi1(), ext.pi2()] {
        for i in 0..e {
            for u in 0..m {
                let w = b.apply(&unit_vec(e, i), &embed.column(u));
                if !is_zero_vec(&proj.mul_vec(&w)) {
                    return Err(Error::InvalidSection("kernel of the projection is not an ideal"));
                }
            }
        }
    }
    let coords = |v: &[Rational]| s_inv.mul_vec(v);
    let read = |b: &LieBracket| {
        let g_bracket = Cochain::from_fn(2, n, n, |p| {
            coords(&b.apply(&section.sigma.column(p[0]), &section.sigma.column(p[1])))[..n].to_vec()
        });
        let h_bracket = Cochain::from_fn(2, m, m, |p| {
            coords(&b.apply(&embed.column(p[0]), &embed.column(p[1])))[n..].to_vec()
        });
        let action: Vec<Matrix> = (0..n)
            .map(|x| {
                Matrix::from_fn(m, m, |r, u| {
                    coords(&b.apply(&section.sigma.column(x), &embed.column(u)))[n + r].clone()
                })
            })
            .collect();
        let omega = Cochain::from_fn(2, n, m, |p| {
            coords(&b.apply(&section.sigma.column(p[0]), &section.sigma.column(p[1])))[n..].to_vec()
        });
        (g_bracket, h_bracket, action, omega)
    };
    let (g1, h1, rho, omega1) = read(ext.pi1());
    let (g2, h2, mu, omega2) = read(ext.pi2());
    let g = CompatiblePair::new(LieBracket::from_cochain(g1)?, LieBracket::from_cochain(g2)?)?;
    let h = CompatiblePair::new(LieBracket::from_cochain(h1)?, LieBracket::from_cochain(h2)?)?;
    ExtensionDatum::new(g, h, rho, mu, omega1, omega2)
}

/// Checks that `(x, u) ↦ σ(x) + embed(u)` maps the extension built from
/// `d` onto `ext`, bracket by bracket.
pub fn round_trip_check(
    d: &ExtensionDatum,
    ext: &CompatiblePair,
    embed: &Matrix,
    section: &Section,
) -> Result<Verdict, Error> {
    let (b1, b2) = assemble_brackets(d);
    let s = splitting_map(embed, section);
    Ok(is_homomorphism(&s, &b1, ext.pi1())?.and_then(|| {
        is_homomorphism(&s, &b2, ext.pi2()).unwrap_or_else(|_| unreachable!("dimensions already matched"))
    }))
}

fn cocycle_tuple(pair: &CompatiblePair, rep: &RepPair, w: (&Cochain, &Cochain)) -> Result<CochainTuple, Error> {
    let t = CochainTuple::new(2, alloc::vec![w.0.clone(), w.1.clone()])?;
    check_dim("cocycle source", pair.dim(), w.0.source_dim())?;
    check_dim("cocycle target", rep.module_dim(), w.0.target_dim())?;
    let d = staircase_coboundary(pair, rep, &t, Formulation::Ce)?;
    for (i, c) in d.components().iter().enumerate() {
        if let Some((args, v)) = c.first_nonzero() {
            let label = ["cocycle(1)", "cocycle(mixed)", "cocycle(2)"][i];
            return Err(Error::NotACocycle(Witness::new(label, args, v)));
        }
    }
    Ok(t)
}

/// Whether two 2-cocycles differ by `δ¹φ`, returning `φ` (an `m × n`
/// matrix) with `δ¹φ = (ω₁ − ω₁′, ω₂ − ω₂′)` when they do.
pub fn cocycles_cohomologous(
    pair: &CompatiblePair,
    rep: &RepPair,
    w: (&Cochain, &Cochain),
    w_prime: (&Cochain, &Cochain),
) -> Result<Option<Matrix>, Error> {
    let a = cocycle_tuple(pair, rep, w)?.flatten();
    let b = cocycle_tuple(pair, rep, w_prime)?.flatten();
    let target: Vec<Rational> = sub_vec(&a, &b);
    let slice = coboundary_matrix(pair, rep, 1)?;
    Ok(slice.coboundary_matrix.solve(&target)?.map(|coeffs| {
        Cochain::from_coeffs(1, pair.dim(), rep.module_dim(), coeffs)
            .expect("degree-1 coordinates")
            .to_matrix()
    }))
}

fn check_xi(d: &ExtensionDatum, xi: &Matrix) -> Result<(), Error> {
    check_dim("gauge map rows", d.h_dim(), xi.rows())?;
    check_dim("gauge map cols", d.g_dim(), xi.cols())
}

/// The datum transported along `ξ: g → h`:
///
/// ```text
/// ρ′(x)   = ρ(x) + ad_{ξx}
/// ω₁′(x,y) = ω₁(x,y) + ρ(x)ξy − ρ(y)ξx − ξ[x,y] + [ξx, ξy]
/// ```
///
/// and the same with the second brackets. It is the datum read off the same
/// extension through the section `σ + ξ`.
pub fn gauge_transform(d: &ExtensionDatum, xi: &Matrix) -> Result<ExtensionDatum, Error> {
    check_nine_equations(d).into_result(Error::InvalidExtension)?;
    check_xi(d, xi)?;
    let (n, m) = (d.g_dim(), d.h_dim());
    let transport = |a: &Arm| {
        let ad = a.h.ad();
        let act: Vec<Matrix> = (0..n)
            .map(|x| a.act[x].add(&action_of(&ad, &xi.column(x), m)))
            .collect();
        let omega = Cochain::from_fn(2, n, m, |s| {
            let (x, y) = (s[0], s[1]);
            let (xx, xy) = (xi.column(x), xi.column(y));
            let mut out = a.omega.value(s).to_vec();
            add_into(&mut out, &a.act[x].mul_vec(&xy));
            sub_into(&mut out, &a.act[y].mul_vec(&xx));
            sub_into(&mut out, &xi.mul_vec(&a.g.apply_basis(x, y)));
            add_into(&mut out, &a.h.apply(&xx, &xy));
            out
        });
        (act, omega)
    };
    let [a1, a2] = d.arms();
    let (rho, omega1) = transport(&a1);
    let (mu, omega2) = transport(&a2);
    ExtensionDatum::new(d.g.clone(), d.h.clone(), rho, mu, omega1, omega2)
}

fn lifted_gauge(d: &ExtensionDatum, xi: &Matrix) -> LiftedCochain {
    let m = d.h_dim();
    let neg = Cochain::from_matrix(&xi.scale(&rat(-1)));
    lift(&MixedMap::from_g_cochain(&neg, m, Side::V).expect("shape checked"))
}

fn datum_from_lifts(d: &ExtensionDatum, p: [LiftedCochain; 2]) -> Result<ExtensionDatum, Error> {
    let read = |c: &LiftedCochain| -> Result<(Vec<Matrix>, Cochain), Error> {
        let act = c.restrict(1, 1, Side::V)?.to_action().expect("one argument on each side");
        let omega = c.restrict(2, 0, Side::V)?.to_g_cochain().expect("no h arguments");
        let rebuilt = lift(&MixedMap::from_action(d.g_dim(), &act)?)
            .add(&lift(&MixedMap::from_g_cochain(&omega, d.h_dim(), Side::V)?))?;
        assert_eq!(rebuilt.cochain(), c.cochain(), "gauge image left the datum shape");
        Ok((act, omega))
    };
    let [p1, p2] = p;
    let (rho, omega1) = read(&p1)?;
    let (mu, omega2) = read(&p2)?;
    ExtensionDatum::new(d.g.clone(), d.h.clone(), rho, mu, omega1, omega2)
}

/// [`gauge_transform`] computed on the lifts,
/// `P′ = P + [ζ, P] − ∂ζ − ½[ζ, ∂ζ]` with `ζ` the lift of `−ξ`.
pub fn gauge_transform_mc(d: &ExtensionDatum, xi: &Matrix) -> Result<ExtensionDatum, Error> {
    check_nine_equations(d).into_result(Error::InvalidExtension)?;
    check_xi(d, xi)?;
    let zeta = lifted_gauge(d, xi);
    let base = base_lifts(d);
    let p = lifted_datum(d);
    let half = ratio(1, 2);
    let step = |i: usize| -> Result<LiftedCochain, Error> {
        let dz = base[i].nr_bracket(&zeta)?;
        p[i].add(&zeta.nr_bracket(&p[i])?)?
            .sub(&dz)?
            .sub(&zeta.nr_bracket(&dz)?.scale(&half))
    };
    datum_from_lifts(d, [step(0)?, step(1)?])
}

/// The exponential gauge action summed to `terms` terms,
/// `P′ = Σ_k ad_ζᵏ P / k! − Σ_k ad_ζᵏ ∂ζ / (k+1)!`. Agrees with
/// [`gauge_transform_mc`] once `terms ≥ 3`.
pub fn gauge_transform_series(d: &ExtensionDatum, xi: &Matrix, terms: usize) -> Result<ExtensionDatum, Error> {
    check_nine_equations(d).into_result(Error::InvalidExtension)?;
    check_xi(d, xi)?;
    let zeta = lifted_gauge(d, xi);
    let base = base_lifts(d);
    let p = lifted_datum(d);
    let step = |i: usize| -> Result<LiftedCochain, Error> {
        let mut acc = LiftedCochain::zero(2, d.g_dim(), d.h_dim());
        let mut pk = p[i].clone();
        let mut dk = base[i].nr_bracket(&zeta)?;
        let mut fact = Rational::from_integer(1.into());
        for k in 0..terms {
            let next_fact = &fact * Rational::from_integer((k as i64 + 1).into());
            acc = acc.add(&pk.scale(&fact.recip()))?.sub(&dk.scale(&next_fact.recip()))?;
            pk = zeta.nr_bracket(&pk)?;
            dk = zeta.nr_bracket(&dk)?;
            fact = next_fact;
        }
        Ok(acc)
    };
    datum_from_lifts(d, [step(0)?, step(1)?])
}

/// Checks the four transport equations of [`gauge_transform`] for `ξ`
/// between `d` and `d_prime`; on success also checks that
/// `θ(x,u) = (x, u − ξx)` maps the extension of `d` onto that of `d_prime`
/// for both brackets.
pub fn extensions_isomorphic_under(
    d: &ExtensionDatum,
    d_prime: &ExtensionDatum,
    xi: &Matrix,
) -> Result<Verdict, Error> {
    check_xi(d, xi)?;
    check_dim("g dims", d.g_dim(), d_prime.g_dim())?;
    check_dim("h dims", d.h_dim(), d_prime.h_dim())?;
    let (n, m) = (d.g_dim(), d.h_dim());
    let [a1, a2] = d.arms();
    let [b1, b2] = d_prime.arms();
    for (label, a, b) in [("isomorphism 1", &a1, &b1), ("isomorphism 2", &a2, &b2)] {
        let ad = a.h.ad();
        for x in 0..n {
            let diff = b.act[x].sub(&a.act[x]).sub(&action_of(&ad, &xi.column(x), m));
            if !diff.is_zero() {
                return Ok(Verdict::Fail(Witness::new(label, alloc::vec![x], diff.entries().to_vec())));
            }
        }
    }
    for (label, a, b) in [("isomorphism 3", &a1, &b1), ("isomorphism 4", &a2, &b2)] {
        for s in subsets(n, 2) {
            let (x, y) = (s[0], s[1]);
            let (xx, xy) = (xi.column(x), xi.column(y));
            let mut r = b.omega.value(&s).to_vec();
            sub_into(&mut r, a.omega.value(&s));
            sub_into(&mut r, &a.act[x].mul_vec(&xy));
            add_into(&mut r, &a.act[y].mul_vec(&xx));
            add_into(&mut r, &xi.mul_vec(&a.g.apply_basis(x, y)));
            sub_into(&mut r, &a.h.apply(&xx, &xy));
            if !is_zero_vec(&r) {
                return Ok(Verdict::Fail(Witness::new(label, s, r)));
            }
        }
    }
    let theta = Matrix::from_fn(n + m, n + m, |r, c| {
        if r == c {
            rat(1)
        } else if r >= n && c < n {
            -xi.get(r - n, c).clone()
        } else {
            Rational::zero()
        }
    });
    let (e1, e2) = assemble_brackets(d);
    let (f1, f2) = assemble_brackets(d_prime);
    let v = is_homomorphism(&theta, &e1, &f1)?;
    if !v.is_ok() {
        return Ok(relabel(v, "theta(1)"));
    }
    Ok(relabel(is_homomorphism(&theta, &e2, &f2)?, "theta(2)"))
}

fn relabel(v: Verdict, label: &str) -> Verdict {
    match v {
        Verdict::Ok => Verdict::Ok,
        Verdict::Fail(w) => Verdict::Fail(Witness::new(label, w.args, w.residual)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::compat::validate_pair;
    use alloc::vec;

    fn abelian_pair(n: usize) -> CompatiblePair {
        CompatiblePair::new_unchecked(LieBracket::abelian(n), LieBracket::abelian(n))
    }

    fn n2_pair() -> CompatiblePair {
        let n2 = LieBracket::from_constants(2, &[(0, 1, 1, rat(1))]).unwrap();
        CompatiblePair::new(n2, LieBracket::abelian(2)).unwrap()
    }

    fn heisenberg_datum() -> ExtensionDatum {
        let w1 = Cochain::from_fn(2, 2, 1, |_| vec![rat(1)]);
        ExtensionDatum::abelian(abelian_pair(2), &RepPair::zero(2, 1), w1, Cochain::zero(2, 2, 1)).unwrap()
    }

    fn heisenberg_ext() -> CompatiblePair {
        let h = LieBracket::from_constants(3, &[(0, 1, 2, rat(1))]).unwrap();
        CompatiblePair::new(h, LieBracket::abelian(3)).unwrap()
    }

    fn heisenberg_maps() -> (Matrix, Matrix) {
        let embed = Matrix::from_int_rows(&[&[0], &[0], &[1]]);
        let proj = Matrix::from_int_rows(&[&[1, 0, 0], &[0, 1, 0]]);
        (embed, proj)
    }

    #[test]
    fn product_is_valid() {
        let d = ExtensionDatum::product(n2_pair(), abelian_pair(1));
        let e = build_extension(&d).unwrap();
        assert_eq!(e.dim(), 3);
        assert!(maurer_cartan_check(&d).is_ok());
    }

    #[test]
    fn semidirect_n2() {
        let rep = RepPair::new(1, vec![Matrix::from_int_rows(&[&[1]]), Matrix::zeros(1, 1)], vec![Matrix::zeros(1, 1); 2]).unwrap();
        assert!(crate::compat::validate_rep(&n2_pair(), &rep).unwrap().is_ok());
        let d = ExtensionDatum::abelian(n2_pair(), &rep, Cochain::zero(2, 2, 1), Cochain::zero(2, 2, 1)).unwrap();
        let e = build_extension(&d).unwrap();
        assert!(validate_pair(e.pi1(), e.pi2()).unwrap().is_ok());
        assert!(maurer_cartan_check(&d).is_ok());
    }

    #[test]
    fn heisenberg_builds_and_extracts() {
        let d = heisenberg_datum();
        assert_eq!(build_extension(&d).unwrap(), heisenberg_ext());
        let (embed, proj) = heisenberg_maps();
        let sigma = Section::new(Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[0, 0]]), &proj).unwrap();
        let back = extract_datum(&heisenberg_ext(), &embed, &proj, &sigma).unwrap();
        assert_eq!(back, d);
        assert!(round_trip_check(&back, &heisenberg_ext(), &embed, &sigma).unwrap().is_ok());
    }

    #[test]
    fn section_change_is_a_gauge_transform() {
        let d = heisenberg_datum();
        let (embed, proj) = heisenberg_maps();
        let shifted = Section::new(Matrix::from_int_rows(&[&[1, 0], &[0, 1], &[1, 0]]), &proj).unwrap();
        let d2 = extract_datum(&heisenberg_ext(), &embed, &proj, &shifted).unwrap();
        let xi = Matrix::from_int_rows(&[&[1, 0]]);
        assert_eq!(gauge_transform(&d, &xi).unwrap(), d2);
        assert_eq!(gauge_transform_mc(&d, &xi).unwrap(), d2);
        assert_eq!(gauge_transform_series(&d, &xi, 4).unwrap(), d2);
        let phi = cocycles_cohomologous(d.g(), &d.rep(), (d.omega1(), d.omega2()), (d2.omega1(), d2.omega2()))
            .unwrap()
            .unwrap();
        assert!(phi.is_zero());
        assert!(extensions_isomorphic_under(&d, &d2, &xi).unwrap().is_ok());
    }

    #[test]
    fn not_cohomologous_on_abelian() {
        let d = heisenberg_datum();
        let z = Cochain::zero(2, 2, 1);
        let rep = d.rep();
        assert!(cocycles_cohomologous(d.g(), &rep, (d.omega1(), &z), (&z, &z)).unwrap().is_none());
        let same = cocycles_cohomologous(d.g(), &rep, (d.omega1(), &z), (d.omega1(), &z)).unwrap().unwrap();
        assert!(same.is_zero());
    }

    #[test]
    fn non_cocycle_is_an_error() {
        let r = LieBracket::from_constants(3, &[(0, 1, 1, rat(1)), (0, 2, 2, rat(1))]).unwrap();
        let g = CompatiblePair::new(r, LieBracket::abelian(3)).unwrap();
        let w = Cochain::from_fn(2, 3, 1, |s| vec![rat((s == [1, 2]) as i64)]);
        let z = Cochain::zero(2, 3, 1);
        let err = cocycles_cohomologous(&g, &RepPair::zero(3, 1), (&w, &z), (&z, &z));
        assert!(matches!(err, Err(Error::NotACocycle(_))));
    }

    #[test]
    fn broken_datum_reports_equation() {
        let rep = RepPair::new(1, vec![Matrix::from_int_rows(&[&[1]]), Matrix::from_int_rows(&[&[1]])], vec![Matrix::zeros(1, 1); 2]).unwrap();
        let d = ExtensionDatum::abelian(n2_pair(), &rep, Cochain::zero(2, 2, 1), Cochain::zero(2, 2, 1)).unwrap();
        let v = check_nine_equations(&d);
        assert_eq!(v.witness().unwrap().condition, "equation 1");
        assert!(!maurer_cartan_check(&d).is_ok());
        assert!(matches!(build_extension(&d), Err(Error::InvalidExtension(_))));
        let (b1, b2) = assemble_brackets(&d);
        assert!(!validate_pair(&b1, &b2).unwrap().is_ok());
    }

    #[test]
    fn nonabelian_gauge_paths_agree() {
        let sl2 = LieBracket::from_constants(3, &[(0, 1, 1, rat(2)), (0, 2, 2, rat(-2)), (1, 2, 0, rat(1))]).unwrap();
        let g = n2_pair();
        let h = CompatiblePair::new(sl2.clone(), LieBracket::abelian(3)).unwrap();
        let d = ExtensionDatum::product(g, h);
        let xi = Matrix::from_int_rows(&[&[1, 0], &[0, 2], &[-1, 1]]);
        let t = gauge_transform(&d, &xi).unwrap();
        assert!(check_nine_equations(&t).is_ok());
        assert_eq!(gauge_transform_mc(&d, &xi).unwrap(), t);
        assert_eq!(gauge_transform_series(&d, &xi, 4).unwrap(), t);
        assert!(extensions_isomorphic_under(&d, &t, &xi).unwrap().is_ok());
        assert!(maurer_cartan_check(&t).is_ok());
    }

    #[test]
    fn differentials_anticommute() {
        let d = heisenberg_datum();
        for p in 0..2 {
            assert!(anticommutator_defect(&d, p, false).unwrap().is_zero());
            assert!(anticommutator_defect(&d, p, true).unwrap().is_zero());
        }
    }

    #[test]
    fn g_supported_closure() {
        let d = heisenberg_datum();
        let [p1, p2] = lifted_datum(&d);
        assert!(is_g_supported(&p1) && is_g_supported(&p2));
        let b = p1.nr_bracket(&p2).unwrap();
        assert!(is_g_supported(&b));
        let [d1, _] = base_lifts(&d);
        assert!(is_g_supported(&d1.nr_bracket(&p1).unwrap()));
        let n2 = ExtensionDatum::product(n2_pair(), abelian_pair(1));
        assert!(!is_g_supported(&base_lifts(&n2)[0]));
    }
}
