use grsse_core::channel::{asymptotic_ball_capacity, is_normalized, NoiseModel};
use grsse_core::codes::Distance;
use grsse_core::gf::Modulus;
use grsse_core::scalar::Param;
use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const B: Modulus = Modulus::BINARY;

fn h2(p: f64) -> f64 {
    if p == 0.0 || p == 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

fn binom(n: u64, k: u64) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn ball_masses_are_exact() {
    let d = NoiseModel::ball(3, B, 1).unwrap().type_distribution::<BigRational>().unwrap();
    assert_eq!(d.masses(), &[rat(1, 4), rat(3, 4), rat(0, 1), rat(0, 1)]);
    assert!((d.noise_entropy() - 2.0).abs() < 1e-12);
    let g = NoiseModel::ball(24, B, 3).unwrap().type_distribution::<BigRational>().unwrap();
    assert_eq!(g.mass(3), &rat(2024, 2325));
    assert!(is_normalized(&g));
    assert!((g.capacity() - (24.0 - 2325f64.log2())).abs() < 1e-9);
    assert!((g.capacity() - 12.817).abs() < 1e-3);
    assert_eq!(g.tail_beyond_half(&Distance::finite(8)), rat(0, 1));
    assert_eq!(g.tail_weight_probability(Ratio::from_integer(0)), rat(1, 1));
}

#[test]
fn symmetric_channel_values() {
    let zero = NoiseModel::symmetric(24, B, Param::Rational(rat(0, 1))).unwrap().type_distribution::<BigRational>().unwrap();
    assert_eq!(zero.mass(0), &rat(1, 1));
    assert_eq!(zero.noise_entropy(), 0.0);
    assert!((zero.capacity() - 24.0).abs() < 1e-12);

    let half = NoiseModel::symmetric(24, B, "1/2".parse().unwrap()).unwrap().type_distribution::<f64>().unwrap();
    assert!(half.capacity().abs() < 1e-9);

    let d = NoiseModel::symmetric(24, B, "0.11".parse().unwrap()).unwrap().type_distribution::<f64>().unwrap();
    assert!((d.noise_entropy() - 24.0 * h2(0.11)).abs() < 1e-9);
    assert!((d.noise_entropy() - 11.997983).abs() < 1e-5);

    let d = NoiseModel::symmetric(24, B, Param::Float(0.05)).unwrap().type_distribution::<f64>().unwrap();
    let head: f64 = (0..4).map(|w| binom(24, w) * 0.05f64.powi(w as i32) * 0.95f64.powi(24 - w as i32)).sum();
    assert!((d.tail_beyond_half(&Distance::finite(8)) - (1.0 - head)).abs() < 1e-12);
    assert!((d.tail_weight_probability(Ratio::from_integer(4)) - 0.029782).abs() < 1e-6);
}

#[test]
fn float_parameter_rejects_exact_backend() {
    let m = NoiseModel::symmetric(8, B, Param::Float(0.1)).unwrap();
    assert!(!m.is_rational());
    assert!(m.type_distribution::<BigRational>().is_err());
}

#[test]
fn invalid_parameters() {
    assert!(NoiseModel::ball(4, B, 5).is_err());
    assert!(NoiseModel::symmetric(4, B, "3/2".parse().unwrap()).is_err());
    assert!(NoiseModel::parse("ball", 4, B, None, None).is_err());
    assert!(NoiseModel::parse("bogus", 4, B, Some(1), None).is_err());
    assert!(asymptotic_ball_capacity(0.6, B).is_err());
}

#[test]
fn asymptotic_capacity_values() {
    assert!((asymptotic_ball_capacity(0.0, B).unwrap() - 1.0).abs() < 1e-15);
    assert!(asymptotic_ball_capacity(0.5, B).unwrap().abs() < 1e-15);
    assert!((asymptotic_ball_capacity(0.125, B).unwrap() - (1.0 - h2(0.125))).abs() < 1e-12);
    assert!((asymptotic_ball_capacity(0.125, B).unwrap() - 0.45644).abs() < 1e-5);
    let q3 = Modulus::new(3).unwrap();
    assert!((asymptotic_ball_capacity(0.0, q3).unwrap() - 3f64.log2()).abs() < 1e-12);
}

#[test]
fn ball_capacity_approaches_asymptote() {
    let alpha = 0.125;
    let limit = asymptotic_ball_capacity(alpha, B).unwrap();
    let gaps: Vec<f64> = [24u32, 48, 96]
        .iter()
        .map(|&n| {
            let w = (alpha * n as f64).floor() as u32;
            let c = NoiseModel::ball(n, B, w).unwrap().type_distribution::<f64>().unwrap().capacity();
            (c / n as f64 - limit).abs()
        })
        .collect();
    assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
    assert!(gaps[2] < 0.05, "{gaps:?}");
}

#[test]
fn json_round_trip() {
    for m in [
        NoiseModel::ball(24, B, 3).unwrap(),
        NoiseModel::constant_weight(10, Modulus::new(3).unwrap(), 2).unwrap(),
        NoiseModel::symmetric(24, B, "11/100".parse().unwrap()).unwrap(),
        NoiseModel::symmetric(24, B, Param::Float(0.1)).unwrap(),
    ] {
        assert_eq!(NoiseModel::from_json(&m.to_json()).unwrap(), m);
    }
}

#[test]
fn sampled_weights_follow_the_model() {
    let m = NoiseModel::ball(24, B, 3).unwrap();
    let sampler = m.sampler().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut hist = [0u32; 25];
    for _ in 0..20000 {
        hist[m.sample(&sampler, &mut rng).weight() as usize] += 1;
    }
    assert_eq!(hist[4..].iter().sum::<u32>(), 0);
    let frac = hist[3] as f64 / 20000.0;
    assert!((frac - 2024.0 / 2325.0).abs() < 0.01);
    let cw = NoiseModel::constant_weight(10, B, 4).unwrap();
    let s = cw.sampler().unwrap();
    assert!((0..100).all(|_| cw.sample(&s, &mut rng).weight() == 4));
}

proptest! {
    #[test]
    fn distributions_are_normalized(n in 1u32..16, w in 0u32..16, num in 0i64..=20, q in prop::sample::select(vec![2u32, 3, 5])) {
        let q = Modulus::new(q).unwrap();
        let w = w.min(n);
        let models = [
            NoiseModel::ball(n, q, w).unwrap(),
            NoiseModel::constant_weight(n, q, w).unwrap(),
            NoiseModel::symmetric(n, q, Param::Rational(rat(num, 20))).unwrap(),
        ];
        for m in models {
            let exact = m.type_distribution::<BigRational>().unwrap();
            prop_assert!(is_normalized(&exact));
            let float = m.type_distribution::<f64>().unwrap();
            prop_assert!(is_normalized(&float));
            let c = float.capacity();
            let max = n as f64 * (q.order() as f64).log2();
            prop_assert!(c >= -1e-9 && c <= max + 1e-9);
        }
    }

    #[test]
    fn symmetric_entropy_is_additive(n in 1u32..30, a in 0.0f64..1.0) {
        let q3 = Modulus::new(3).unwrap();
        let d = NoiseModel::symmetric(n, q3, Param::Float(a)).unwrap().type_distribution::<f64>().unwrap();
        let per = h2(a) + a * 2f64.log2();
        prop_assert!((d.noise_entropy() - n as f64 * per).abs() < 1e-9);
    }
}
