use super::*;
use alloc::string::ToString;
use alloc::vec;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const FOUR_POINT_LINE: &str = "x^6 + x*y^5 + y^6 + (x + y)*(z^5 - 2*z*w^4) + y*(z^4 - 2*w^4)*(z - 3*w)";

fn fp(p: u64) -> FieldSpec {
    FieldSpec::prime(p).unwrap()
}

fn point(field: &FieldSpec, c: [i64; 4]) -> ProjPoint {
    ProjPoint::from_ints(field, c).unwrap()
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn monomial_counts_and_order() {
    assert_eq!(monomials_of_degree::<4>(5).len(), 56);
    assert_eq!(monomials_of_degree::<4>(6).len(), 84);
    assert_eq!(monomials_of_degree::<4>(0), vec![Monomial([0; 4])]);
    for d in 0..8 {
        let ms = monomials_of_degree::<4>(d);
        assert_eq!(ms.len(), binomial(d + 3, 3));
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
    }
    let quintics = monomials_of_degree::<4>(5);
    assert_eq!(quintics[0], Monomial([5, 0, 0, 0]));
    assert_eq!(quintics[1], Monomial([4, 1, 0, 0]));
    assert_eq!(quintics[55], Monomial([0, 0, 0, 5]));
}

#[test]
fn evaluation_basics() {
    let f = fp(7);
    let x6 = HomoPoly::parse(&f, "x^6").unwrap();
    let one = f.one();
    let zero = f.zero();
    let e = x6
        .evaluate(&[one.clone(), zero.clone(), zero.clone(), zero.clone()])
        .unwrap();
    assert_eq!(e, one);
    let q = FieldSpec::Rational;
    assert_eq!(
        x6.evaluate(&[q.one(), q.zero(), q.zero(), q.zero()]),
        Err(Error::FieldMismatch)
    );
}

#[test]
fn four_point_sextic_vanishes_on_its_line() {
    let f = fp(73);
    let s = HomoPoly::parse(&f, FOUR_POINT_LINE).unwrap();
    assert_eq!(s.degree(), 6);
    for (z, w) in [(1, 0), (0, 1), (5, 9), (72, 3)] {
        let v = s
            .evaluate(&[f.zero(), f.zero(), f.from_i64(z), f.from_i64(w)])
            .unwrap();
        assert!(f.is_zero(&v));
    }
    let form = s
        .restrict_to_line(&point(&f, [0, 0, 1, 0]), &point(&f, [0, 0, 0, 1]))
        .unwrap();
    assert!(form.is_zero());
}

#[test]
fn partial_derivatives() {
    let f = fp(11);
    let x6 = HomoPoly::parse(&f, "x^6").unwrap();
    assert_eq!(x6.partial(0), HomoPoly::parse(&f, "6*x^5").unwrap());
    assert!(x6.partial(1).is_zero());
    assert_eq!(x6.partial(1).degree(), 5);
    let c = HomoPoly::parse(&f, "3").unwrap();
    assert!(c.partial(0).is_zero());
    assert_eq!(c.partial(0).degree(), 0);
}

#[test]
fn hessian_examples() {
    let f = fp(7);
    let pt = [f.zero(), f.zero(), f.zero(), f.one()];
    let a = HomoPoly::parse(&f, "x^2*w^4 + y^2*w^4 + z^2*w^4").unwrap();
    let h = a.hessian_at(&pt).unwrap();
    for i in 0..4 {
        for j in 0..4 {
            let expect = if i == j && i < 3 { 2 } else { 0 };
            assert_eq!(h.get(i, j), &f.from_i64(expect), "entry {i},{j}");
        }
    }
    let b = HomoPoly::parse(&f, "x^3*w^3 + y^2*w^4 + z^2*w^4").unwrap();
    assert_eq!(linalg::rank(&f, &b.hessian_at(&pt).unwrap()), 2);
}

#[test]
fn line_restriction_examples() {
    let f = fp(13);
    let x6 = HomoPoly::parse(&f, "x^6").unwrap();
    let p0 = point(&f, [1, 0, 0, 0]);
    let p1 = point(&f, [0, 0, 0, 1]);
    let form = x6.restrict_to_line(&p0, &p1).unwrap();
    let mut expect = vec![f.zero(); 7];
    expect[0] = f.one();
    assert_eq!(form.coeffs(), &expect[..]);
    assert_eq!(form.to_string(), "s^6");
    assert_eq!(x6.restrict_to_line(&p0, &p0), Err(Error::DegeneratePair));
}

#[test]
fn plane_restriction_rejects_dependent_basis() {
    let f = fp(13);
    let s = HomoPoly::parse(&f, FOUR_POINT_LINE).unwrap();
    let a = point(&f, [1, 0, 0, 0]);
    let b = point(&f, [0, 1, 0, 0]);
    let c = point(&f, [1, 1, 0, 0]);
    assert_eq!(s.restrict_to_plane([&a, &b, &c]), Err(Error::DegenerateBasis));
}

#[test]
fn division_by_linear_forms() {
    let f = fp(31);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let l = HomoPoly::<3>::random(&f, 1, &mut rng).unwrap();
        if l.is_zero() {
            continue;
        }
        let q = HomoPoly::<3>::random(&f, 5, &mut rng).unwrap();
        let g = &l * &q;
        assert_eq!(g.divide_by_linear(&l).unwrap(), q);
    }
    let g = HomoPoly::<3>::var(&f, 0).pow(2);
    let l = HomoPoly::<3>::var(&f, 1);
    assert_eq!(g.divide_by_linear(&l), Err(Error::NotDivisible));
}

#[test]
fn four_point_plane_section_contains_the_line() {
    // the plane 2x = 3y, with basis (3:2:0:0), (0:0:1:0), (0:0:0:1)
    let f = fp(73);
    let s = HomoPoly::parse(&f, FOUR_POINT_LINE).unwrap();
    let basis = [
        point(&f, [0, 0, 1, 0]),
        point(&f, [0, 0, 0, 1]),
        point(&f, [3, 2, 0, 0]),
    ];
    let g = s.restrict_to_plane([&basis[0], &basis[1], &basis[2]]).unwrap();
    // the line x = y = 0 is the third plane coordinate's zero locus
    let c = HomoPoly::<3>::var(&f, 2);
    let quintic = g.divide_by_linear(&c).unwrap();
    assert_eq!(quintic.degree(), 5);
    assert_eq!(&quintic * &c, g);
}

#[test]
fn parser_canonical_text() {
    let f = fp(7);
    let p = HomoPoly::parse(&f, " 2 x^2 y - (x+y)^3 + 8*y^3 ").unwrap();
    assert_eq!(p.to_string(), "6*x^3 + 6*x^2*y + 4*x*y^2");
    assert_eq!(HomoPoly::parse(&f, &p.to_string()).unwrap(), p);

    let q = FieldSpec::Rational;
    let r = HomoPoly::parse(&q, "x^2/2 - 3*y^2 + x*y").unwrap();
    assert_eq!(r.to_string(), "1/2*x^2 + x*y - 3*y^2");
    assert_eq!(HomoPoly::parse(&q, &r.to_string()).unwrap(), r);

    let f49 = FieldSpec::finite(7, 2).unwrap();
    let e = HomoPoly::parse(&f49, "(2 + 3*t)*x + t*y - w").unwrap();
    assert_eq!(e.to_string(), "(2 + 3*t)*x + t*y + 6*w");
    assert_eq!(HomoPoly::parse(&f49, &e.to_string()).unwrap(), e);
}

#[test]
fn parser_errors_carry_positions() {
    let f = fp(7);
    let pos = |text: &str| match HomoPoly::parse(&f, text) {
        Err(Error::Parse { position, .. }) => position,
        other => panic!("expected parse error, got {other:?}"),
    };
    assert_eq!(pos("x^2 + q*y"), 6);
    assert_eq!(pos("(x + y"), 6);
    assert_eq!(pos("x^"), 2);
    assert_eq!(pos("x / y"), 4);
    assert_eq!(pos("t*x"), 0);
    assert_eq!(pos(""), 0);
    assert_eq!(pos("x + y)"), 5);
    assert_eq!(HomoPoly::parse(&f, "x^2 + y"), Err(Error::NotHomogeneous));
}

#[test]
fn binary_form_roots() {
    let f = fp(11);
    // (s - 2t)^2 (s + t) t = roots (2:1) twice -> (1:6), (1:-1) = (1:10), (1:0)
    let p = HomoPoly::<2>::parse_binary(&f, "(s - 2*t)^2*(s + t)*t");
    let form = BinaryForm::from_homogeneous(&p);
    let roots = form.roots().unwrap();
    let aff = |a: i64| BinaryRoot::affine(&f, f.from_i64(a));
    assert_eq!(roots, vec![(aff(0), 1), (aff(6), 2), (aff(10), 1)]);
    assert_eq!(form.multiplicity_at(&aff(6)), Some(2));
    assert!(!form.is_squarefree());
    let reduced = form.divide_by_root(&aff(6)).unwrap();
    assert!(reduced.is_squarefree());
    assert_eq!(reduced.multiplicity_at(&aff(6)), Some(1));
    assert_eq!(form.divide_by_root(&aff(3)), Err(Error::NotDivisible));

    // s^2 vanishes to order 2 at (0:1)
    let q = BinaryForm::from_homogeneous(&HomoPoly::<2>::parse_binary(&f, "s^2*t"));
    let inf = BinaryRoot::infinity(&f);
    assert_eq!(q.multiplicity_at(&inf), Some(2));
    assert_eq!(q.roots().unwrap(), vec![(aff(0), 1), (inf.clone(), 2)]);
    let g = q.divide_by_root(&inf).unwrap();
    assert_eq!(g.multiplicity_at(&inf), Some(1));
    assert_eq!(q.factor_profile().unwrap(), vec![(1, 1), (1, 2)]);
}

impl HomoPoly<2> {
    /// Test helper: parse a binary form written in `s, t` by renaming to `x, y`.
    fn parse_binary(field: &FieldSpec, text: &str) -> HomoPoly<2> {
        let p = HomoPoly::parse(field, &text.replace('s', "x").replace('t', "y")).unwrap();
        let images = [
            HomoPoly::<2>::var(field, 0),
            HomoPoly::<2>::var(field, 1),
            HomoPoly::<2>::var(field, 0),
            HomoPoly::<2>::var(field, 1),
        ];
        p.substitute(&images)
    }
}

fn field_strategy() -> impl Strategy<Value = FieldSpec> {
    prop_oneof![
        Just(fp(7)),
        Just(fp(101)),
        Just(FieldSpec::finite(11, 2).unwrap()),
    ]
}

fn random_point(field: &FieldSpec, rng: &mut ChaCha8Rng) -> [Scalar; 4] {
    core::array::from_fn(|_| field.sample_uniform(rng).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn homogeneity(field in field_strategy(), seed: u64, d in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = HomoPoly::<4>::random(&field, d, &mut rng).unwrap();
        let pt = random_point(&field, &mut rng);
        let lambda = field.sample_nonzero(&mut rng).unwrap();
        let scaled: [Scalar; 4] = core::array::from_fn(|i| field.mul(&lambda, &pt[i]));
        let lhs = p.evaluate(&scaled).unwrap();
        let rhs = field.mul(&field.pow(&lambda, d as u64), &p.evaluate(&pt).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn euler_identity(field in field_strategy(), seed: u64, d in 1usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = HomoPoly::<4>::random(&field, d, &mut rng).unwrap();
        let mut sum = HomoPoly::zero(&field, d);
        for i in 0..4 {
            sum = &sum + &(&HomoPoly::var(&field, i) * &p.partial(i));
        }
        prop_assert_eq!(sum, p.scale(&field.from_i64(d as i64)));
    }

    #[test]
    fn mixed_partials_commute(field in field_strategy(), seed: u64, i in 0usize..4, j in 0usize..4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = HomoPoly::<4>::random(&field, 6, &mut rng).unwrap();
        prop_assert_eq!(p.partial(i).partial(j), p.partial(j).partial(i));
    }

    #[test]
    fn restriction_matches_evaluation(field in field_strategy(), seed: u64) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = HomoPoly::<4>::random(&field, 6, &mut rng).unwrap();
        let q = HomoPoly::<4>::random(&field, 6, &mut rng).unwrap();
        let (a, b) = (random_point(&field, &mut rng), random_point(&field, &mut rng));
        let (Ok(p0), Ok(p1)) = (ProjPoint::new(&field, a), ProjPoint::new(&field, b)) else {
            return Ok(());
        };
        let Ok(form) = p.restrict_to_line(&p0, &p1) else {
            return Ok(());
        };
        // linear in F
        let sum_form = (&p + &q).restrict_to_line(&p0, &p1).unwrap();
        let q_form = q.restrict_to_line(&p0, &p1).unwrap();
        for i in 0..7 {
            prop_assert_eq!(
                &sum_form.coeffs()[i],
                &field.add(&form.coeffs()[i], &q_form.coeffs()[i])
            );
        }
        // and evaluating the form at 7 parameters matches F on the line
        for k in 0..7 {
            let (s, t) = (field.one(), field.from_i64(k));
            let x: [Scalar; 4] = core::array::from_fn(|i| {
                field.add(&p0.coords()[i], &field.mul(&t, &p1.coords()[i]))
            });
            prop_assert_eq!(form.evaluate(&s, &t), p.evaluate(&x).unwrap());
        }
    }

    #[test]
    fn multiply_then_divide(field in field_strategy(), seed: u64, d in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let l = HomoPoly::<4>::random(&field, 1, &mut rng).unwrap();
        let q = HomoPoly::<4>::random(&field, d, &mut rng).unwrap();
        prop_assume!(!l.is_zero());
        prop_assert_eq!((&l * &q).divide_by_linear(&l).unwrap(), q);
    }

    #[test]
    fn text_roundtrip(field in field_strategy(), seed: u64, d in 0usize..7) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = HomoPoly::<4>::random(&field, d, &mut rng).unwrap();
        prop_assume!(!p.is_zero());
        prop_assert_eq!(HomoPoly::parse(&field, &p.to_string()).unwrap(), p);
    }
}
