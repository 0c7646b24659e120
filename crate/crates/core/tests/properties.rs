use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use witt_diamond::lie::{pbw_normalize, Generator};
use witt_diamond::linalg;
use witt_diamond::module::LModule;
use witt_diamond::omega::{omega_reduce_to_one, OmegaModule};
use witt_diamond::oracle::free_word_oracle;
use witt_diamond::poly::{signature, SparsePoly, Var};
use witt_diamond::sample;
use witt_diamond::scalar::{frac, Scalar};
use witt_diamond::tensor::{canonical_form, TensorModule};

fn generator() -> impl Strategy<Value = Generator> {
    (0..5usize, -2i64..=2).prop_map(|(f, n)| match f {
        0 => Generator::l(n),
        1 => Generator::a(n),
        2 => Generator::b(n),
        3 => Generator::c(n),
        _ => Generator::d(n),
    })
}

fn scalar() -> impl Strategy<Value = Scalar> {
    (-9i64..=9, 1i64..=4).prop_map(|(p, q)| frac(p, q))
}

fn laurent_poly() -> impl Strategy<Value = SparsePoly> {
    prop::collection::vec(((-2i64..=2, 0i64..=2), scalar()), 0..5).prop_map(|terms| {
        let sig = signature(vec![Var::laurent("x"), Var::poly("y")]);
        SparsePoly::from_terms(&sig, terms.into_iter().map(|((a, b), c)| (vec![a, b], c)))
    })
}

fn matrix() -> impl Strategy<Value = Vec<Vec<Scalar>>> {
    (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-3i64..=3, c), r))
        .prop_map(|m| m.into_iter().map(|row| row.into_iter().map(|x| frac(x, 1)).collect()).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pbw_matches_free_word_oracle(word in prop::collection::vec(generator(), 0..=3)) {
        prop_assert_eq!(pbw_normalize(&word), free_word_oracle(&word));
    }

    #[test]
    fn poly_ring_axioms(p in laurent_poly(), q in laurent_poly(), r in laurent_poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p + &(-&p)).is_zero());
    }

    #[test]
    fn leibniz_rule(p in laurent_poly(), q in laurent_poly()) {
        let lhs = (&p * &q).derive(1).unwrap();
        let rhs = &(&p.derive(1).unwrap() * &q) + &(&p * &q.derive(1).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(m in matrix()) {
        let cols = m[0].len();
        let null = linalg::nullspace(&m);
        prop_assert_eq!(linalg::rank(&m) + null.len(), cols);
        for v in &null {
            for row in &m {
                let dot: Scalar = row.iter().zip(v).map(|(a, b)| a * b).sum();
                prop_assert_eq!(dot, frac(0, 1));
            }
        }
    }

    #[test]
    fn canonical_form_ignores_factor_order(seed in any::<u64>(), rot in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f: Vec<_> = (0..3).map(|k| sample::omega_params(&mut rng, k % 2)).collect();
        // distinct lambdas
        for (k, p) in f.iter_mut().enumerate() {
            p.lambda = frac(k as i64 + 1, 1);
        }
        let a = TensorModule::new(f.clone()).unwrap();
        f.rotate_left(rot);
        let b = TensorModule::new(f).unwrap();
        prop_assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn omega_certificates_replay(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let o = OmegaModule::new(sample::omega_params(&mut rng, 1));
        let v = sample::vector(&mut rng, &o.signature(), 2);
        prop_assume!(!v.is_zero());
        let c = omega_reduce_to_one(&o, &v).unwrap();
        prop_assert!(c.replay(&o).is_ok());
        prop_assert_eq!(o.act_free(&c.combined_op(), &v).unwrap(), o.one());
    }
}
