use compat_lie_core::cohomology::reduced_cohomology_dim;
use compat_lie_core::compat::{adjoint_rep, validate_rep};
use compat_lie_core::linalg::rat;
use compat_lie_core::multilinear::binomial;
use compat_lie_core::poisson::{lie_poisson_rep, reduced_bihamiltonian_dims};
use compat_lie_core::sample::random_pair;
use compat_lie_core::{CompatiblePair, LieBracket, RepPair};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn poisson_rep_is_valid_and_graded() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, n);
        for d in 0..=3 {
            let p = lie_poisson_rep(&pair, d);
            assert!(validate_rep(&pair, p.rep()).unwrap().is_ok());
            assert!(p.is_degree_preserving());
            if d >= 1 {
                let ad = adjoint_rep(&pair);
                assert_eq!(p.block(1).rho(), ad.rho());
                assert_eq!(p.block(1).mu(), ad.mu());
            }
        }
    }
}

#[test]
fn leibniz_rule() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    let pair = random_pair(&mut rng, 3);
    let p = lie_poisson_rep(&pair, 3);
    let b = p.basis();
    for _ in 0..40 {
        let (i, j) = (rng.gen_range(0..b.len()), rng.gen_range(0..b.len()));
        let Some(k) = b.multiply(i, j) else { continue };
        for a in p.rep().rho().iter().chain(p.rep().mu()) {
            let mut expect = vec![rat(0); b.len()];
            for (r, c) in a.column(i).iter().enumerate() {
                if *c != rat(0) {
                    let t = b.multiply(r, j).unwrap();
                    expect[t] += c;
                }
            }
            for (r, c) in a.column(j).iter().enumerate() {
                if *c != rat(0) {
                    let t = b.multiply(i, r).unwrap();
                    expect[t] += c;
                }
            }
            assert_eq!(a.column(k), expect);
        }
    }
}

#[test]
fn constant_block_is_trivial_module() {
    let mut rng = ChaCha8Rng::seed_from_u64(63);
    let pair = random_pair(&mut rng, 3);
    let table = reduced_bihamiltonian_dims(&pair, 1, 2).unwrap();
    for (k, dim) in table[0].iter().enumerate() {
        assert_eq!(*dim, reduced_cohomology_dim(&pair, &RepPair::zero(3, 1), k).unwrap().dim);
    }
}

#[test]
fn abelian_table_is_full_cochains() {
    for n in 1..=3 {
        let pair = CompatiblePair::new(LieBracket::abelian(n), LieBracket::abelian(n)).unwrap();
        let table = reduced_bihamiltonian_dims(&pair, 2, 2).unwrap();
        for (d, row) in table.iter().enumerate() {
            let block = binomial(n + d - 1, d);
            for (k, dim) in row.iter().enumerate() {
                assert_eq!(*dim, binomial(n, k) * block);
            }
        }
    }
}

#[test]
fn n2_table_regression() {
    use compat_lie_core::cohomology::reduced_slice;
    let n2 = LieBracket::from_constants(2, &[(0, 1, 1, rat(1))]).unwrap();
    let pair = CompatiblePair::new(n2, LieBracket::abelian(2)).unwrap();
    let expected = vec![vec![1, 1, 1], vec![0, 2, 2]];
    assert_eq!(reduced_bihamiltonian_dims(&pair, 1, 2).unwrap(), expected);

    let poly = lie_poisson_rep(&pair, 1);
    for (d, row) in expected.iter().enumerate() {
        let block = poly.block(d);
        let mut previous_rank = 0;
        for (k, dim) in row.iter().enumerate() {
            let slice = reduced_slice(&pair, &block, k).unwrap();
            let rank = slice.restricted().rank_fraction_free();
            assert_eq!(slice.basis.dim() - rank - previous_rank, *dim);
            previous_rank = rank;
        }
    }
}
