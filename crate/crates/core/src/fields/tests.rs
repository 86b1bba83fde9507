use super::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn fq(field: &FieldSpec, v: i64) -> Scalar {
    field.from_i64(v)
}

#[test]
fn prime_field_has_identity_modulus() {
    let f = make_field(FieldKind::Finite, 7, 1).unwrap();
    let ff = f.finite_field().unwrap();
    assert_eq!(ff.order(), 7);
    assert_eq!(ff.modulus(), &[0, 1]);
}

#[test]
fn small_characteristic_rejected() {
    assert_eq!(FieldSpec::finite(5, 1), Err(Error::CharTooSmall(5)));
    assert_eq!(FieldSpec::finite(3, 2), Err(Error::CharTooSmall(3)));
    assert_eq!(FieldSpec::finite(9, 1), Err(Error::NonPrime(9)));
    assert!(matches!(
        FieldSpec::finite(7, 40),
        Err(Error::ExtensionTooLarge { .. })
    ));
    assert!(matches!(
        FieldSpec::finite(2_147_483_659, 1),
        Err(Error::PrimeTooLarge(_))
    ));
}

#[test]
fn quadratic_extension_modulus_is_irreducible() {
    let f = FieldSpec::finite(11, 2).unwrap();
    let ff = f.finite_field().unwrap();
    assert_eq!(ff.order(), 121);
    let m = ff.modulus();
    assert_eq!(m.len(), 3);
    assert_eq!(m[2], 1);
    // a monic quadratic is irreducible iff it has no root in F_11
    for x in 0..11u64 {
        let v = (m[0] as u64 + m[1] as u64 * x + x * x) % 11;
        assert_ne!(v, 0, "modulus has root {x}");
    }
    // and it is the first such quadratic in lexicographic order
    let first = (0..121u32)
        .map(|n| (n / 11, n % 11))
        .find(|&(c0, c1)| (0..11u32).all(|x| (c0 + c1 * x + x * x) % 11 != 0))
        .unwrap();
    assert_eq!((m[0], m[1]), first);
    assert_eq!(FieldSpec::finite(11, 2).unwrap(), f);
}

#[test]
fn cubic_extension_has_all_elements_invertible() {
    let f = FiniteField::new(7, 3).unwrap();
    for a in f.elements().skip(1) {
        let inv = f.inv(&a).unwrap();
        assert_eq!(f.mul(&a, &inv), f.one());
    }
}

#[test]
fn sqrt_examples() {
    let f11 = FieldSpec::prime(11).unwrap();
    assert_eq!(f11.sqrt(&fq(&f11, 0)), Some(fq(&f11, 0)));
    assert_eq!(f11.sqrt(&fq(&f11, 5)), Some(fq(&f11, 4)));
    let f7 = FieldSpec::prime(7).unwrap();
    // both 3 and 4 square to 2; the canonical root is the smaller one
    let s = f7.sqrt(&fq(&f7, 2)).unwrap();
    assert_eq!(f7.mul(&s, &s), fq(&f7, 2));
    assert_eq!(s, fq(&f7, 3));
    assert_eq!(f7.sqrt(&fq(&f7, 3)), None);

    let q = FieldSpec::Rational;
    let r = |n: i64, d: i64| Scalar::Rational(BigRational::new(n.into(), d.into()));
    assert_eq!(q.sqrt(&r(9, 4)), Some(r(3, 2)));
    assert_eq!(q.sqrt(&r(5, 1)), None);
    assert_eq!(q.sqrt(&r(-4, 1)), None);
}

#[test]
fn sqrt_exists_for_exactly_half_plus_one() {
    for (p, k) in [
        (7, 1),
        (11, 1),
        (13, 1),
        (7, 2),
        (11, 2),
        (31, 1),
        (29, 2),
        (7, 3),
    ] {
        let f = FiniteField::new(p, k).unwrap();
        let q = f.order();
        if q > 1000 {
            continue;
        }
        let mut count = 0;
        for a in f.elements() {
            if let Some(s) = f.sqrt(&a) {
                assert_eq!(f.mul(&s, &s), a);
                assert!(s <= f.neg(&s));
                count += 1;
            }
        }
        assert_eq!(count as u128, (q + 1) / 2, "F_{p}^{k}");
    }
}

#[test]
fn sampling_is_deterministic() {
    let f = FieldSpec::prime(7).unwrap();
    let a = f.sample_uniform(&mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    let b = f.sample_uniform(&mut ChaCha8Rng::seed_from_u64(0)).unwrap();
    assert_eq!(a, b);
    let draws = |seed| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..16)
            .map(|_| f.sample_uniform(&mut rng).unwrap())
            .collect::<Vec<_>>()
    };
    assert_ne!(draws(0), draws(1));
    assert_eq!(
        FieldSpec::Rational.sample_uniform(&mut ChaCha8Rng::seed_from_u64(0)),
        Err(Error::RationalSamplingUnsupported)
    );
}

#[test]
fn sampling_is_uniform() {
    let f = FieldSpec::prime(7).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let n = 10_000;
    let mut counts = [0u32; 7];
    for _ in 0..n {
        let s = f.sample_uniform(&mut rng).unwrap();
        counts[s.as_fq().unwrap().coeffs(1)[0] as usize] += 1;
    }
    let pr = 1.0 / 7.0;
    let mean = n as f64 * pr;
    let sigma = (n as f64 * pr * (1.0 - pr)).sqrt();
    for c in counts {
        assert!((c as f64 - mean).abs() <= 5.0 * sigma, "{counts:?}");
    }
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - mean).powi(2) / mean).sum();
    // 6 degrees of freedom, 99.9% quantile
    assert!(chi2 < 22.46, "chi2 = {chi2}");
}

#[test]
fn field_spec_text_roundtrip() {
    for text in ["rational", "p=101", "p=11,k=2"] {
        let f: FieldSpec = text.parse().unwrap();
        assert_eq!(f.to_string(), text);
    }
    assert!(matches!("p=x".parse::<FieldSpec>(), Err(Error::BadFieldSpec(_))));
    assert!(matches!("q=7".parse::<FieldSpec>(), Err(Error::BadFieldSpec(_))));
    assert_eq!("p=5".parse::<FieldSpec>(), Err(Error::CharTooSmall(5)));
}

#[test]
fn embedding_respects_arithmetic() {
    let small = Arc::new(FiniteField::new(7, 2).unwrap());
    let big = Arc::new(FiniteField::new(7, 4).unwrap());
    let all = Embedding::all(&small, &big);
    assert_eq!(all.len(), 2);
    let e = &all[0];
    for a in small.elements().step_by(5) {
        for b in small.elements().step_by(7) {
            assert_eq!(e.map(&small.mul(&a, &b)), big.mul(&e.map(&a), &e.map(&b)));
            assert_eq!(e.map(&small.add(&a, &b)), big.add(&e.map(&a), &e.map(&b)));
        }
    }
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(FieldSpec::prime(7).unwrap()),
        Just(FieldSpec::prime(101).unwrap()),
        Just(FieldSpec::prime(2_147_483_647).unwrap()),
        Just(FieldSpec::finite(11, 2).unwrap()),
        Just(FieldSpec::finite(7, 3).unwrap()),
        Just(FieldSpec::Rational),
    ]
}

fn element(field: &FieldSpec, seed: u64) -> Scalar {
    match field {
        FieldSpec::Rational => {
            let n = (seed % 2001) as i64 - 1000;
            let d = (seed / 2001 % 97) as i64 + 1;
            Scalar::Rational(BigRational::new(n.into(), d.into()))
        }
        _ => field
            .sample_uniform(&mut ChaCha8Rng::seed_from_u64(seed))
            .unwrap(),
    }
}

proptest! {
    #[test]
    fn field_axioms(field in field_strategy(), sa: u64, sb: u64, sc: u64) {
        let (a, b, c) = (element(&field, sa), element(&field, sb), element(&field, sc));
        let f = &field;
        prop_assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
        prop_assert_eq!(f.add(&f.add(&a, &b), &c), f.add(&a, &f.add(&b, &c)));
        prop_assert_eq!(f.mul(&a, &f.add(&b, &c)), f.add(&f.mul(&a, &b), &f.mul(&a, &c)));
        prop_assert_eq!(f.mul(&a, &b), f.mul(&b, &a));
        prop_assert_eq!(f.add(&a, &f.neg(&a)), f.zero());
        if !f.is_zero(&a) {
            let inv = f.inv(&a).unwrap();
            prop_assert_eq!(f.mul(&a, &inv), f.one());
        }
    }

    #[test]
    fn rational_reduction_commutes(n1 in -500i64..500, d1 in 1i64..60, n2 in -500i64..500, d2 in 1i64..60) {
        let p = 101;
        let fp = FieldSpec::prime(p).unwrap();
        let q = FieldSpec::Rational;
        let a = BigRational::new(n1.into(), d1.into());
        let b = BigRational::new(n2.into(), d2.into());
        let red = |r: &BigRational| fp.from_rational(r).unwrap();
        let (ra, rb) = (Scalar::Rational(a.clone()), Scalar::Rational(b.clone()));
        // (a*b + a - b) * a
        let expr = |f: &FieldSpec, x: &Scalar, y: &Scalar| {
            f.mul(&f.sub(&f.add(&f.mul(x, y), x), y), x)
        };
        let over_q = expr(&q, &ra, &rb);
        let over_p = expr(&fp, &red(&a), &red(&b));
        prop_assert_eq!(red(over_q.as_rational().unwrap()), over_p);
    }
}

#[test]
fn formatting() {
    let f = FieldSpec::finite(7, 2).unwrap();
    let t = f.generator().unwrap();
    let x = f.add(&f.mul(&t, &fq(&f, 3)), &fq(&f, 2));
    assert_eq!(f.format_scalar(&x), "(2 + 3*t)");
    assert_eq!(f.format_scalar(&t), "t");
    let q = FieldSpec::Rational;
    assert_eq!(
        q.format_scalar(&Scalar::Rational(BigRational::new((-3).into(), 6.into()))),
        "-1/2"
    );
}
