use compat_lie_core::linalg::rat;
use compat_lie_core::multilinear::{
    ce_coboundary, ce_coboundary_via_nr, lift, nr_bracket, unshuffles, Homogeneity, MixedMap, Side,
};
use compat_lie_core::sample::{random_cochain, random_pair, random_rep};
use compat_lie_core::Cochain;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn sign(p: usize, q: usize) -> i64 {
    if (p * q) % 2 == 0 {
        1
    } else {
        -1
    }
}

fn degree(c: &Cochain) -> usize {
    c.arity() - 1
}

#[test]
fn graded_antisymmetry_and_jacobi() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let n = rng.gen_range(1..=3);
        let c: Vec<Cochain> = (0..3)
            .map(|_| {
                let a = rng.gen_range(1..=2);
                random_cochain(&mut rng, a, n, n)
            })
            .collect();
        let (p, q, r) = (&c[0], &c[1], &c[2]);
        let (dp, dq) = (degree(p), degree(q));
        let pq = nr_bracket(p, q).unwrap();
        let qp = nr_bracket(q, p).unwrap();
        assert_eq!(pq, qp.scale(&rat(-sign(dp, dq))));
        let lhs = nr_bracket(p, &nr_bracket(q, r).unwrap()).unwrap();
        let rhs = nr_bracket(&pq, r)
            .unwrap()
            .add(&nr_bracket(q, &nr_bracket(p, r).unwrap()).unwrap().scale(&rat(sign(dp, dq))))
            .unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn arity_zero_against_arity_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let v = random_cochain(&mut rng, 0, 3, 3);
    let f = random_cochain(&mut rng, 1, 3, 3);
    let b = nr_bracket(&f, &v).unwrap();
    assert_eq!(b.coeffs(), f.to_matrix().mul_vec(v.coeffs()).as_slice());
    assert!(nr_bracket(&v, &v).is_err());
}

#[test]
fn unshuffle_counts_and_signs() {
    for n in 0..6 {
        for i in 0..=n {
            let u = unshuffles(i, n);
            assert_eq!(u.len(), compat_lie_core::multilinear::binomial(n, i));
            for s in &u {
                let mut inversions = 0;
                for a in 0..n {
                    for b in a + 1..n {
                        if s.perm[a] > s.perm[b] {
                            inversions += 1;
                        }
                    }
                }
                assert_eq!(s.sign as i64, if inversions % 2 == 0 { 1 } else { -1 });
            }
        }
    }
}

#[test]
fn bidegrees_add_under_the_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let mut checked = 0;
    while checked < 60 {
        let (n, m) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
        let mk = |rng: &mut ChaCha8Rng| {
            let (k, l) = (rng.gen_range(0..=2usize), rng.gen_range(0..=2usize));
            let side = if rng.gen_bool(0.5) { Side::G } else { Side::V };
            let t = if side == Side::G { n } else { m };
            MixedMap::from_fn(n, m, k, l, side, |_, _| (0..t).map(|_| rat(rng.gen_range(-2..=2))).collect())
        };
        let (f, g) = (mk(&mut rng), mk(&mut rng));
        if f.g_args() + f.v_args() + g.g_args() + g.v_args() < 2 {
            continue;
        }
        let (lf, lg) = (lift(&f), lift(&g));
        for (x, b) in [(&lf, f.bidegree()), (&lg, g.bidegree())] {
            let h = x.bidegree_of();
            assert!(h == Homogeneity::Zero || h == Homogeneity::Bidegree(b));
        }
        let br = lf.nr_bracket(&lg).unwrap();
        let h = br.bidegree_of();
        assert!(
            h == Homogeneity::Zero || h == Homogeneity::Bidegree(f.bidegree() + g.bidegree()),
            "{:?} vs {}",
            h,
            f.bidegree() + g.bidegree()
        );
        checked += 1;
    }
}

#[test]
fn explicit_coboundary_matches_lifted_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let n = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, n);
        let rep = random_rep(&mut rng, &pair, 3);
        let p = rng.gen_range(0..=2);
        let f = random_cochain(&mut rng, p, n, rep.module_dim());
        for (pi, act) in [(pair.pi1(), rep.rho()), (pair.pi2(), rep.mu())] {
            let a = ce_coboundary(pi.cochain(), act, &f).unwrap();
            let b = ce_coboundary_via_nr(pi.cochain(), act, &f).unwrap();
            assert_eq!(a, b);
        }
    }
}
