use compat_lie_core::cohomology::{
    coboundary_matrix, coboundary_matrix_by_columns, cohomology_dim, reduced_cohomology_dim, reduced_slice, Formulation,
};
use compat_lie_core::compat::{adjoint_rep, validate_pair, validate_rep, CompatiblePair, LieBracket, RepPair};
use compat_lie_core::linalg::rat;
use compat_lie_core::multilinear::binomial;
use compat_lie_core::sample::{random_pair, random_rep};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn random_pairs_and_reps_validate() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..40 {
        let n = rng.gen_range(2..=4);
        let pair = random_pair(&mut rng, n);
        assert!(validate_pair(pair.pi1(), pair.pi2()).unwrap().is_ok());
        for k in [-2, -1, 1, 3] {
            let pencil = pair.pencil(&rat(k), &rat(1));
            assert!(compat_lie_core::compat::validate_bracket(&pencil).is_ok());
        }
        let rep = random_rep(&mut rng, &pair, 3);
        assert!(validate_rep(&pair, &rep).unwrap().is_ok());
    }
}

#[test]
fn coboundary_squares_to_zero() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..15 {
        let n = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, n);
        for rep in [adjoint_rep(&pair), random_rep(&mut rng, &pair, 2)] {
            for k in 0..=2 {
                let a = coboundary_matrix(&pair, &rep, k).unwrap();
                let b = coboundary_matrix(&pair, &rep, k + 1).unwrap();
                assert!(b.coboundary_matrix.mul(&a.restricted()).is_zero());
            }
        }
    }
}

#[test]
fn matrix_assemblies_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, n);
        let rep = adjoint_rep(&pair);
        for k in 1..=2 {
            let block = coboundary_matrix(&pair, &rep, k).unwrap().coboundary_matrix;
            assert_eq!(coboundary_matrix_by_columns(&pair, &rep, k, Formulation::Ce).unwrap(), block);
            assert_eq!(coboundary_matrix_by_columns(&pair, &rep, k, Formulation::AdjointNr).unwrap(), block);
        }
    }
}

#[test]
fn abelian_closed_form() {
    for m in 1..=3 {
        let pair = CompatiblePair::new(LieBracket::abelian(m), LieBracket::abelian(m)).unwrap();
        let rep = RepPair::zero(m, m);
        assert_eq!(cohomology_dim(&pair, &rep, 0).unwrap().dim, m);
        for n in 1..=m {
            assert_eq!(cohomology_dim(&pair, &rep, n).unwrap().dim, n * binomial(m, n) * m);
        }
    }
}

#[test]
fn reduced_complex_is_a_complex() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..10 {
        let n = rng.gen_range(2..=3);
        let pair = random_pair(&mut rng, n);
        let rep = random_rep(&mut rng, &pair, 2);
        for k in 0..2 {
            let a = reduced_slice(&pair, &rep, k).unwrap();
            let b = reduced_slice(&pair, &rep, k + 1).unwrap();
            assert!(b.coboundary_matrix.mul(&a.restricted()).is_zero());
            reduced_cohomology_dim(&pair, &rep, k).unwrap();
        }
    }
}
