//! First-order deformations `π_i + t ω_i` of a compatible pair and
//! Nijenhuis operators.
//!
//! The parameter `t` is never symbolic. Every condition in `t` checked here
//! is a polynomial of degree at most 3 vanishing at `t = 0`, so agreement at
//! the probes `t = 1, 2, 3` is agreement as polynomials.

use alloc::vec::Vec;

use crate::cohomology::{staircase_coboundary, CochainTuple, Formulation, coboundary_matrix};
use crate::compat::{adjoint_rep, is_homomorphism, CompatiblePair, LieBracket};
use crate::error::{check_dim, Error, Verdict, Witness};
use crate::linalg::{rat, Matrix, Rational, SubspaceBasis};
use crate::multilinear::{nr_bracket, nr_bracket_first_nonzero, nr_compose, Cochain};

/// Probe values of the deformation parameter.
pub const PROBES: [i64; 3] = [1, 2, 3];

/// A pair of bracket-shaped cochains `(ω₁, ω₂)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeformationDatum {
    omega1: Cochain,
    omega2: Cochain,
}

impl DeformationDatum {
    pub fn new(omega1: Cochain, omega2: Cochain) -> Result<Self, Error> {
        for w in [&omega1, &omega2] {
            check_dim("deformation arity", 2, w.arity())?;
            check_dim("deformation target", w.source_dim(), w.target_dim())?;
        }
        check_dim("deformation dims", omega1.source_dim(), omega2.source_dim())?;
        Ok(DeformationDatum { omega1, omega2 })
    }

    pub fn zero(dim: usize) -> Self {
        DeformationDatum {
            omega1: Cochain::zero(2, dim, dim),
            omega2: Cochain::zero(2, dim, dim),
        }
    }

    pub fn dim(&self) -> usize {
        self.omega1.source_dim()
    }

    pub fn omega1(&self) -> &Cochain {
        &self.omega1
    }

    pub fn omega2(&self) -> &Cochain {
        &self.omega2
    }

    /// `(ω₁, ω₂)` as a degree-2 staircase cochain.
    pub fn to_tuple(&self) -> CochainTuple {
        CochainTuple::new(2, alloc::vec![self.omega1.clone(), self.omega2.clone()]).expect("shapes checked")
    }

    pub fn sub(&self, other: &DeformationDatum) -> Result<DeformationDatum, Error> {
        Ok(DeformationDatum {
            omega1: self.omega1.sub(&other.omega1)?,
            omega2: self.omega2.sub(&other.omega2)?,
        })
    }
}

fn first_fail(checks: &[(&str, &Cochain, &Cochain, Option<(&Cochain, &Cochain)>)]) -> Verdict {
    for (label, a, b, extra) in checks {
        let hit = match extra {
            None => nr_bracket_first_nonzero(a, b),
            Some((c, d)) => {
                let sum = nr_bracket(a, b)
                    .and_then(|x| x.add(&nr_bracket(c, d)?))
                    .expect("shapes checked");
                sum.first_nonzero()
            }
        };
        if let Some((args, v)) = hit {
            return Verdict::Fail(Witness::new(*label, args, v));
        }
    }
    Verdict::Ok
}

/// The six NR conditions: `(ω₁, ω₂)` is a 2-cocycle and is itself a
/// compatible pair.
pub fn is_infinitesimal_deformation(pair: &CompatiblePair, d: &DeformationDatum) -> Result<Verdict, Error> {
    check_dim("deformation dims", pair.dim(), d.dim())?;
    let (p1, p2) = (pair.pi1().cochain(), pair.pi2().cochain());
    let (w1, w2) = (&d.omega1, &d.omega2);
    Ok(first_fail(&[
        ("cocycle(pi1,omega1)", p1, w1, None),
        ("cocycle(mixed)", p1, w2, Some((p2, w1))),
        ("cocycle(pi2,omega2)", p2, w2, None),
        ("jacobi(omega1)", w1, w1, None),
        ("compatibility(omega1,omega2)", w1, w2, None),
        ("jacobi(omega2)", w2, w2, None),
    ]))
}

/// The pair `(π₁ + tω₁, π₂ + tω₂)`, validated.
pub fn deformed_pair(pair: &CompatiblePair, d: &DeformationDatum, t: &Rational) -> Result<CompatiblePair, Error> {
    is_infinitesimal_deformation(pair, d)?.into_result(Error::NotADeformation)?;
    let one = rat(1);
    let b1 = pair.pi1().combine(&one, &LieBracket::from_cochain(d.omega1.clone())?, t);
    let b2 = pair.pi2().combine(&one, &LieBracket::from_cochain(d.omega2.clone())?, t);
    CompatiblePair::new(b1, b2)
}

/// `N([x,y]_N) − [Nx, Ny]` with `[x,y]_N = [Nx,y] + [x,Ny] − N[x,y]`.
pub fn nijenhuis_torsion_direct(pi: &LieBracket, n: &Matrix) -> Result<Cochain, Error> {
    check_dim("operator size", pi.dim(), n.rows())?;
    check_dim("operator size", pi.dim(), n.cols())?;
    let dim = pi.dim();
    Ok(Cochain::from_fn(2, dim, dim, |s| {
        let (x, y) = (s[0], s[1]);
        let (nx, ny) = (n.column(x), n.column(y));
        let ex = crate::linalg::unit_vec(dim, x);
        let ey = crate::linalg::unit_vec(dim, y);
        let mut def = pi.apply(&nx, &ey);
        crate::linalg::add_scaled(&mut def, &rat(1), &pi.apply(&ex, &ny));
        crate::linalg::add_scaled(&mut def, &rat(-1), &n.mul_vec(&pi.apply_basis(x, y)));
        let lhs = n.mul_vec(&def);
        crate::linalg::sub_vec(&lhs, &pi.apply(&nx, &ny))
    }))
}

/// `½([π, N∘N] + [N, [π, N]])` under the NR bracket.
pub fn nijenhuis_torsion_nr(pi: &LieBracket, n: &Matrix) -> Result<Cochain, Error> {
    check_dim("operator size", pi.dim(), n.rows())?;
    let nc = Cochain::from_matrix(n);
    let nn = nr_compose(&nc, &nc)?;
    let a = nr_bracket(pi.cochain(), &nn)?;
    let b = nr_bracket(&nc, &nr_bracket(pi.cochain(), &nc)?)?;
    Ok(a.add(&b)?.scale(&Rational::new(1.into(), 2.into())))
}

/// Nijenhuis torsion, computed both ways; panics if the two disagree.
pub fn nijenhuis_torsion(pi: &LieBracket, n: &Matrix) -> Result<Cochain, Error> {
    let direct = nijenhuis_torsion_direct(pi, n)?;
    let nr = nijenhuis_torsion_nr(pi, n)?;
    assert_eq!(direct, nr, "torsion formulas disagree");
    Ok(direct)
}

/// Torsion of `N` vanishes for both brackets (hence for the whole pencil).
pub fn is_nijenhuis(pair: &CompatiblePair, n: &Matrix) -> Result<Verdict, Error> {
    for (label, pi) in [("torsion(pi1)", pair.pi1()), ("torsion(pi2)", pair.pi2())] {
        let t = nijenhuis_torsion(pi, n)?;
        if let Some((args, v)) = t.first_nonzero() {
            return Ok(Verdict::Fail(Witness::new(label, args, v)));
        }
    }
    Ok(Verdict::Ok)
}

/// `[π, N]_NR`, i.e. `[x,y]_N = [Nx,y] + [x,Ny] − N[x,y]`.
pub fn deformed_bracket(pi: &LieBracket, n: &Matrix) -> Result<LieBracket, Error> {
    LieBracket::from_cochain(nr_bracket(pi.cochain(), &Cochain::from_matrix(n))?)
}

/// The pair `([−,−]_N, {−,−}_N)` of a Nijenhuis operator, validated, after
/// checking that `N` maps it homomorphically onto the original pair.
pub fn nijenhuis_deformed_pair(pair: &CompatiblePair, n: &Matrix) -> Result<CompatiblePair, Error> {
    is_nijenhuis(pair, n)?.into_result(Error::NotNijenhuis)?;
    let b1 = deformed_bracket(pair.pi1(), n)?;
    let b2 = deformed_bracket(pair.pi2(), n)?;
    is_homomorphism(n, &b1, pair.pi1())?.into_result(Error::NotNijenhuis)?;
    is_homomorphism(n, &b2, pair.pi2())?.into_result(Error::NotNijenhuis)?;
    CompatiblePair::new(b1, b2)
}

/// `(ω₁, ω₂) = ([π₁,N], [π₂,N])`, the deformation generated by a Nijenhuis
/// operator.
pub fn trivial_deformation_from_nijenhuis(pair: &CompatiblePair, n: &Matrix) -> Result<DeformationDatum, Error> {
    is_nijenhuis(pair, n)?.into_result(Error::NotNijenhuis)?;
    DeformationDatum::new(
        deformed_bracket(pair.pi1(), n)?.into_cochain(),
        deformed_bracket(pair.pi2(), n)?.into_cochain(),
    )
}

/// `δ¹N` for the adjoint staircase complex.
pub fn coboundary_of_operator(pair: &CompatiblePair, n: &Matrix) -> Result<DeformationDatum, Error> {
    let t = CochainTuple::new(1, alloc::vec![Cochain::from_matrix(n)])?;
    let d = staircase_coboundary(pair, &adjoint_rep(pair), &t, Formulation::AdjointNr)?;
    DeformationDatum::new(d.components()[0].clone(), d.components()[1].clone())
}

fn bracket_eval(c: &Cochain, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    c.eval(&[x.to_vec(), y.to_vec()])
}

/// Checks the six equations saying `Id + tN` maps the deformation by `d`
/// homomorphically onto the deformation by `d_prime`:
///
/// * `ω_i − ω'_i = [π_i, N]`,
/// * `N ω_i(x,y) = ω'_i(Nx, y) + ω'_i(x, Ny) + π_i(Nx, Ny)`,
/// * `ω'_i(Nx, Ny) = 0`.
///
/// On success the difference `d − d_prime` is checked to be `δ¹N`, so the
/// two classes agree.
pub fn deformations_equivalent(
    pair: &CompatiblePair,
    d: &DeformationDatum,
    d_prime: &DeformationDatum,
    n: &Matrix,
) -> Result<Verdict, Error> {
    check_dim("deformation dims", pair.dim(), d.dim())?;
    check_dim("deformation dims", pair.dim(), d_prime.dim())?;
    check_dim("operator size", pair.dim(), n.rows())?;
    let dim = pair.dim();
    let arms = [
        (1, pair.pi1(), &d.omega1, &d_prime.omega1),
        (2, pair.pi2(), &d.omega2, &d_prime.omega2),
    ];
    const LABELS: [[&str; 3]; 2] = [
        ["difference(1)", "integrality(1)", "vanishing(1)"],
        ["difference(2)", "integrality(2)", "vanishing(2)"],
    ];
    for (which, pi, w, wp) in arms {
        let labels = LABELS[which - 1];
        let pin = nr_bracket(pi.cochain(), &Cochain::from_matrix(n))?;
        let diff = w.sub(wp)?.sub(&pin)?;
        if let Some((args, v)) = diff.first_nonzero() {
            return Ok(Verdict::Fail(Witness::new(labels[0], args, v)));
        }
        for (kind, label) in [(1, labels[1]), (2, labels[2])] {
            let c = Cochain::from_fn(2, dim, dim, |s| {
                let (x, y) = (crate::linalg::unit_vec(dim, s[0]), crate::linalg::unit_vec(dim, s[1]));
                let (nx, ny) = (n.column(s[0]), n.column(s[1]));
                if kind == 1 {
                    let lhs = n.mul_vec(w.value(s));
                    let mut rhs = bracket_eval(wp, &x, &ny);
                    crate::linalg::add_scaled(&mut rhs, &rat(1), &bracket_eval(wp, &nx, &y));
                    crate::linalg::add_scaled(&mut rhs, &rat(1), &pi.apply(&nx, &ny));
                    crate::linalg::sub_vec(&lhs, &rhs)
                } else {
                    bracket_eval(wp, &nx, &ny)
                }
            });
            if let Some((args, v)) = c.first_nonzero() {
                return Ok(Verdict::Fail(Witness::new(label, args, v)));
            }
        }
    }
    let delta = coboundary_of_operator(pair, n)?;
    assert_eq!(d.sub(d_prime)?, delta, "difference equations hold but differ from the coboundary");
    Ok(Verdict::Ok)
}

/// Whether `Id + tN` is a homomorphism from the deformation by `d` to the
/// deformation by `d_prime` at each probe `t`. Independent of
/// [`deformations_equivalent`], which checks coefficientwise.
pub fn equivalence_by_probing(
    pair: &CompatiblePair,
    d: &DeformationDatum,
    d_prime: &DeformationDatum,
    n: &Matrix,
) -> Result<Verdict, Error> {
    let one = rat(1);
    for t in PROBES {
        let t = rat(t);
        let phi = Matrix::identity(pair.dim()).add(&n.scale(&t));
        for (pi, w, wp) in [
            (pair.pi1(), &d.omega1, &d_prime.omega1),
            (pair.pi2(), &d.omega2, &d_prime.omega2),
        ] {
            let from = pi.combine(&one, &LieBracket::from_cochain(w.clone())?, &t);
            let to = pi.combine(&one, &LieBracket::from_cochain(wp.clone())?, &t);
            let v = is_homomorphism(&phi, &from, &to)?;
            if !v.is_ok() {
                return Ok(v);
            }
        }
    }
    Ok(Verdict::Ok)
}

/// Linear part of the equivalence problem: some `N` with `δ¹N = d − d_prime`,
/// if the difference is a coboundary.
pub fn coboundary_witness(
    pair: &CompatiblePair,
    d: &DeformationDatum,
    d_prime: &DeformationDatum,
) -> Result<Option<Matrix>, Error> {
    let slice = coboundary_matrix(pair, &adjoint_rep(pair), 1)?;
    let target = d.sub(d_prime)?.to_tuple().flatten();
    let dim = pair.dim();
    Ok(slice.coboundary_matrix.solve(&target)?.map(|coeffs| {
        Cochain::from_coeffs(1, dim, dim, coeffs)
            .expect("degree-1 coordinates")
            .to_matrix()
    }))
}

/// Image of `δ¹` in flattened degree-2 coordinates.
pub fn coboundaries_in_degree_two(pair: &CompatiblePair) -> Result<SubspaceBasis, Error> {
    Ok(coboundary_matrix(pair, &adjoint_rep(pair), 1)?.coboundary_matrix.column_space())
}
