//! Maps on `g ⊕ V` built from mixed maps `∧^k g ⊗ ∧^l V → g or V`.
//!
//! In the direct sum the first `g_dim` basis vectors span `g` and the next
//! `v_dim` span `V`.

use alloc::vec::Vec;
use core::fmt;

use super::cochain::Cochain;
use super::combinatorics::{binomial, sort_with_sign, subset_rank, subsets};
use super::nr::nr_bracket;
use crate::error::{check_dim, Error};
use crate::linalg::{add_scaled, zero_vec, Matrix, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    G,
    V,
}

/// Bidegree `k|l`: the map sends `k+1` elements of `g` and `l` of `V` into
/// `g`, and `k` of `g` and `l+1` of `V` into `V`, and vanishes elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Bidegree {
    pub k: isize,
    pub l: isize,
}

impl Bidegree {
    pub fn new(k: isize, l: isize) -> Self {
        Bidegree { k, l }
    }

    pub fn arity(&self) -> isize {
        self.k + self.l + 1
    }
}

impl core::ops::Add for Bidegree {
    type Output = Bidegree;
    fn add(self, o: Bidegree) -> Bidegree {
        Bidegree::new(self.k + o.k, self.l + o.l)
    }
}

impl fmt::Display for Bidegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.k, self.l)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Bidegree(Bidegree),
    NotHomogeneous,
}

/// Map `∧^g_args g ⊗ ∧^v_args V → g` (side `G`) or `→ V` (side `V`),
/// alternating in each group separately. Storage is indexed by
/// (rank of the g-subset, rank of the V-subset, target coordinate).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedMap {
    g_dim: usize,
    v_dim: usize,
    g_args: usize,
    v_args: usize,
    side: Side,
    coeffs: Vec<Rational>,
}

impl MixedMap {
    pub fn target_dim_for(side: Side, g_dim: usize, v_dim: usize) -> usize {
        match side {
            Side::G => g_dim,
            Side::V => v_dim,
        }
    }

    pub fn from_fn(
        g_dim: usize,
        v_dim: usize,
        g_args: usize,
        v_args: usize,
        side: Side,
        mut f: impl FnMut(&[usize], &[usize]) -> Vec<Rational>,
    ) -> Self {
        let t = MixedMap::target_dim_for(side, g_dim, v_dim);
        let mut coeffs = Vec::with_capacity(binomial(g_dim, g_args) * binomial(v_dim, v_args) * t);
        let vs = subsets(v_dim, v_args);
        for gs in subsets(g_dim, g_args) {
            for v in &vs {
                let val = f(&gs, v);
                assert_eq!(val.len(), t, "mixed map value has wrong length");
                coeffs.extend(val);
            }
        }
        MixedMap {
            g_dim,
            v_dim,
            g_args,
            v_args,
            side,
            coeffs,
        }
    }

    pub fn zero(g_dim: usize, v_dim: usize, g_args: usize, v_args: usize, side: Side) -> Self {
        let t = MixedMap::target_dim_for(side, g_dim, v_dim);
        MixedMap::from_fn(g_dim, v_dim, g_args, v_args, side, |_, _| zero_vec(t))
    }

    /// A cochain on `g` (no `V` arguments) valued in `g` or `V`.
    pub fn from_g_cochain(c: &Cochain, v_dim: usize, side: Side) -> Result<Self, Error> {
        check_dim(
            "mixed map target",
            MixedMap::target_dim_for(side, c.source_dim(), v_dim),
            c.target_dim(),
        )?;
        Ok(MixedMap::from_fn(c.source_dim(), v_dim, c.arity(), 0, side, |g, _| {
            c.value(g).to_vec()
        }))
    }

    /// A cochain on `V` (no `g` arguments) valued in `V`.
    pub fn from_v_cochain(c: &Cochain, g_dim: usize) -> Result<Self, Error> {
        check_dim("mixed map target", c.source_dim(), c.target_dim())?;
        Ok(MixedMap::from_fn(g_dim, c.source_dim(), 0, c.arity(), Side::V, |_, v| {
            c.value(v).to_vec()
        }))
    }

    /// `(x, v) ↦ ρ(x) v` for one matrix per basis vector of `g`.
    pub fn from_action(g_dim: usize, action: &[Matrix]) -> Result<Self, Error> {
        check_dim("action matrices", g_dim, action.len())?;
        let v_dim = action.first().map_or(0, Matrix::rows);
        for m in action {
            check_dim("action matrix rows", v_dim, m.rows())?;
            check_dim("action matrix cols", v_dim, m.cols())?;
        }
        Ok(MixedMap::from_fn(g_dim, v_dim, 1, 1, Side::V, |g, v| action[g[0]].column(v[0])))
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn v_dim(&self) -> usize {
        self.v_dim
    }

    pub fn g_args(&self) -> usize {
        self.g_args
    }

    pub fn v_args(&self) -> usize {
        self.v_args
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn target_dim(&self) -> usize {
        MixedMap::target_dim_for(self.side, self.g_dim, self.v_dim)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        crate::linalg::is_zero_vec(&self.coeffs)
    }

    fn offset(&self, g: &[usize], v: &[usize]) -> usize {
        let nv = binomial(self.v_dim, self.v_args);
        (subset_rank(self.g_dim, g) * nv + subset_rank(self.v_dim, v)) * self.target_dim()
    }

    /// Value on increasing subsets.
    pub fn value(&self, g: &[usize], v: &[usize]) -> &[Rational] {
        let o = self.offset(g, v);
        &self.coeffs[o..o + self.target_dim()]
    }

    /// Value on basis vectors in arbitrary order within each group.
    pub fn eval_basis(&self, g: &[usize], v: &[usize]) -> Vec<Rational> {
        let mut out = zero_vec(self.target_dim());
        if let (Some((gs, s1)), Some((vs, s2))) = (sort_with_sign(g), sort_with_sign(v)) {
            let s = if s1 * s2 > 0 {
                Rational::from_integer(1.into())
            } else {
                Rational::from_integer((-1).into())
            };
            add_scaled(&mut out, &s, self.value(&gs, &vs));
        }
        out
    }

    /// The underlying cochain on `g` when there are no `V` arguments.
    pub fn to_g_cochain(&self) -> Option<Cochain> {
        if self.v_args != 0 {
            return None;
        }
        Some(Cochain::from_fn(self.g_args, self.g_dim, self.target_dim(), |g| {
            self.value(g, &[]).to_vec()
        }))
    }

    /// Action matrices `x ↦ f(x, −)` of a `g ⊗ V → V` map.
    pub fn to_action(&self) -> Option<Vec<Matrix>> {
        if (self.g_args, self.v_args, self.side) != (1, 1, Side::V) {
            return None;
        }
        Some(
            (0..self.g_dim)
                .map(|i| Matrix::from_fn(self.v_dim, self.v_dim, |r, c| self.value(&[i], &[c])[r].clone()))
                .collect(),
        )
    }

    /// The bidegree carried by the lift of this map.
    pub fn bidegree(&self) -> Bidegree {
        let (k, l) = (self.g_args as isize, self.v_args as isize);
        match self.side {
            Side::G => Bidegree::new(k - 1, l),
            Side::V => Bidegree::new(k, l - 1),
        }
    }
}

/// Cochain on `g ⊕ V` valued in `g ⊕ V`, optionally tagged with a bidegree
/// it is known to have.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCochain {
    cochain: Cochain,
    g_dim: usize,
    tag: Option<Bidegree>,
}

impl LiftedCochain {
    pub fn new(cochain: Cochain, g_dim: usize) -> Result<Self, Error> {
        check_dim("lifted cochain", cochain.source_dim(), cochain.target_dim())?;
        if g_dim > cochain.source_dim() {
            return Err(Error::DimensionMismatch {
                context: "g block of lifted cochain",
                expected: cochain.source_dim(),
                found: g_dim,
            });
        }
        Ok(LiftedCochain {
            cochain,
            g_dim,
            tag: None,
        })
    }

    pub fn zero(arity: usize, g_dim: usize, v_dim: usize) -> Self {
        LiftedCochain {
            cochain: Cochain::zero(arity, g_dim + v_dim, g_dim + v_dim),
            g_dim,
            tag: None,
        }
    }

    pub fn cochain(&self) -> &Cochain {
        &self.cochain
    }

    pub fn g_dim(&self) -> usize {
        self.g_dim
    }

    pub fn v_dim(&self) -> usize {
        self.cochain.source_dim() - self.g_dim
    }

    pub fn arity(&self) -> usize {
        self.cochain.arity()
    }

    pub fn tag(&self) -> Option<Bidegree> {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.cochain.is_zero()
    }

    /// Sum; the tag survives only if both summands carry the same tag.
    pub fn add(&self, other: &LiftedCochain) -> Result<LiftedCochain, Error> {
        check_dim("lifted cochain split", self.g_dim, other.g_dim)?;
        Ok(LiftedCochain {
            cochain: self.cochain.add(&other.cochain)?,
            g_dim: self.g_dim,
            tag: if self.tag == other.tag { self.tag } else { None },
        })
    }

    pub fn sub(&self, other: &LiftedCochain) -> Result<LiftedCochain, Error> {
        self.add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn scale(&self, s: &Rational) -> LiftedCochain {
        LiftedCochain {
            cochain: self.cochain.scale(s),
            g_dim: self.g_dim,
            tag: self.tag,
        }
    }

    pub fn nr_bracket(&self, other: &LiftedCochain) -> Result<LiftedCochain, Error> {
        check_dim("lifted cochain split", self.g_dim, other.g_dim)?;
        Ok(LiftedCochain {
            cochain: nr_bracket(&self.cochain, &other.cochain)?,
            g_dim: self.g_dim,
            tag: None,
        })
    }

    /// Restriction to `g_args` arguments from `g` and `v_args` from `V`,
    /// projected to one side.
    pub fn restrict(&self, g_args: usize, v_args: usize, side: Side) -> Result<MixedMap, Error> {
        check_dim("restriction arity", self.arity(), g_args + v_args)?;
        let (n, m) = (self.g_dim, self.v_dim());
        let range = match side {
            Side::G => 0..n,
            Side::V => n..n + m,
        };
        Ok(MixedMap::from_fn(n, m, g_args, v_args, side, |g, v| {
            let mut args: Vec<usize> = g.to_vec();
            args.extend(v.iter().map(|&j| j + n));
            self.cochain.value(&args)[range.clone()].to_vec()
        }))
    }

    /// Bidegree read off from where the map is nonzero.
    pub fn bidegree_of(&self) -> Homogeneity {
        let n = self.g_dim;
        let r = self.arity();
        let mut found: Option<isize> = None;
        for (rank, x) in subsets(self.cochain.source_dim(), r).iter().enumerate() {
            let g_count = x.iter().filter(|&&i| i < n).count() as isize;
            let val = self.cochain.value_at_rank(rank);
            for (t, c) in val.iter().enumerate() {
                if num_traits::Zero::is_zero(c) {
                    continue;
                }
                let k = if t < n { g_count - 1 } else { g_count };
                match found {
                    None => found = Some(k),
                    Some(k0) if k0 == k => {}
                    Some(_) => return Homogeneity::NotHomogeneous,
                }
            }
        }
        match found {
            None => Homogeneity::Zero,
            Some(k) => Homogeneity::Bidegree(Bidegree::new(k, r as isize - 1 - k)),
        }
    }
}

/// Lift of a mixed map to `g ⊕ V`: on a basis subset with exactly `g_args`
/// elements from `g`, the value is the map on the `g` part and the `V` part,
/// placed on the target side; zero on every other subset.
pub fn lift(f: &MixedMap) -> LiftedCochain {
    let (n, m) = (f.g_dim, f.v_dim);
    let arity = f.g_args + f.v_args;
    let offset = match f.side {
        Side::G => 0,
        Side::V => n,
    };
    let cochain = Cochain::from_fn(arity, n + m, n + m, |x| {
        let mut out = zero_vec(n + m);
        let g_count = x.iter().filter(|&&i| i < n).count();
        if g_count == f.g_args {
            let v: Vec<usize> = x[g_count..].iter().map(|&j| j - n).collect();
            for (t, c) in f.value(&x[..g_count], &v).iter().enumerate() {
                out[offset + t] = c.clone();
            }
        }
        out
    });
    LiftedCochain {
        cochain,
        g_dim: n,
        tag: Some(f.bidegree()),
    }
}
