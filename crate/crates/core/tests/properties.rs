mod common;

use common::{rank, Gen};
use folham::calculus::{d_components, differential, exterior_d, schouten, vf_bracket};
use folham::cli::Spec;
use folham::cohomology::{binomial, RationalMatrix, TruncatedComplex};
use folham::expr::{integer, parse, Monomial, Poly, Rational};
use folham::foliation::{pairing, BigradedForm, Chart, Multivector, VectorField};
use folham::hamiltonian::{classify, omega1_bracket, poisson_bracket};
use proptest::prelude::*;
use rand::Rng;

const NAMES: [&str; 3] = ["x", "y", "z"];

fn poly_strategy() -> impl Strategy<Value = Poly> {
    prop::collection::vec((0u32..3, 0u32..3, 0u32..3, -6i64..=6, 1i64..=3), 0..5).prop_map(|terms| {
        terms.into_iter().fold(Poly::zero(3), |acc, (a, b, c, num, den)| {
            acc + Poly::monomial(
                Monomial::from_exponents(vec![a, b, c]),
                Rational::new(num.into(), den.into()),
            )
        })
    })
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn ring_axioms(f in poly_strategy(), g in poly_strategy(), h in poly_strategy()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Poly::one(3), f.clone());
    }

    #[test]
    fn partials_obey_leibniz_and_commute(f in poly_strategy(), g in poly_strategy(), i in 0usize..3, j in 0usize..3) {
        prop_assert_eq!((&f * &g).partial(i), &f.partial(i) * &g + &f * &g.partial(i));
        prop_assert_eq!(f.partial(i).partial(j), f.partial(j).partial(i));
    }

    #[test]
    fn print_then_parse_is_identity(f in poly_strategy()) {
        let text = f.display(&NAMES).to_string();
        prop_assert_eq!(parse(&text, &NAMES).unwrap(), f);
    }

    #[test]
    fn evaluation_is_a_ring_map(f in poly_strategy(), g in poly_strategy(), pt in prop::collection::vec(-4i64..=4, 3)) {
        let pt: Vec<Rational> = pt.into_iter().map(integer).collect();
        let (a, b) = (f.eval(&pt).unwrap(), g.eval(&pt).unwrap());
        prop_assert_eq!((&f * &g).eval(&pt).unwrap(), &a * &b);
        prop_assert_eq!((&f + &g).eval(&pt).unwrap(), a + b);
    }

    #[test]
    fn matrix_rank_agrees_with_plain_elimination(
        rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 0..6),
    ) {
        let rows: Vec<Vec<Rational>> = rows.into_iter().map(|r| r.into_iter().map(integer).collect()).collect();
        let m = RationalMatrix::from_rows(rows.clone(), 5);
        let r = m.rank();
        prop_assert_eq!(r, rank(rows));
        prop_assert_eq!(m.rref().1.len(), r);
        prop_assert_eq!(m.transpose().rank(), r);
        prop_assert_eq!(m.nullity(), 5 - r);
        for v in m.kernel_basis() {
            prop_assert!(m.mul(&RationalMatrix::from_columns(&[v], 5)).is_zero());
        }
    }

    #[test]
    fn exterior_derivative_squares_to_zero(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (q, p) = (g.rng.gen_range(1..=3), g.rng.gen_range(0..=2));
        let flat = g.rng.gen_bool(0.3);
        let chart = g.chart(q, p, flat);
        let w = g.mixed_form(&chart);
        prop_assert!(exterior_d(&chart, &exterior_d(&chart, &w)).is_zero());
        let parts = d_components(&chart, &w);
        prop_assert_eq!(parts.d_prime + parts.d_second + parts.partial, exterior_d(&chart, &w));
    }

    #[test]
    fn bracket_of_fields_is_antisymmetric_and_acts_as_commutator(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let chart = g.chart(2, 1, false);
        let (x, y, f) = (g.field(&chart), g.field(&chart), g.poly(&chart, 2));
        let xy = vf_bracket(&chart, &x, &y);
        prop_assert!((xy.clone() + vf_bracket(&chart, &y, &x)).is_zero());
        let commutator = x.apply(&chart, &y.apply(&chart, &f)) - y.apply(&chart, &x.apply(&chart, &f));
        prop_assert_eq!(xy.apply(&chart, &f), commutator);
    }

    #[test]
    fn frame_coordinate_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let chart = g.chart(2, 2, false);
        let v = g.field(&chart);
        prop_assert_eq!(VectorField::from_coordinate(&chart, &v.to_coordinate(&chart)), v);
        let w = g.mixed_form(&chart);
        prop_assert_eq!(BigradedForm::from_coordinate(&w.to_coordinate(&chart), &chart), w);
        let m: Multivector = g.alternating(&chart, 2, |g| g.poly(&chart, 1));
        prop_assert_eq!(Multivector::from_coordinate(&m.to_coordinate(&chart), &chart), m);
    }

    #[test]
    fn schouten_graded_antisymmetry(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let chart = g.chart(2, 1, false);
        let (kp, kq) = (g.rng.gen_range(1..=2), g.rng.gen_range(1..=2));
        let p: Multivector = g.alternating(&chart, kp, |g| g.poly(&chart, 1));
        let r: Multivector = g.alternating(&chart, kq, |g| g.poly(&chart, 1));
        let sign = if (kp * kq) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(schouten(&chart, &p, &r), schouten(&chart, &r, &p).scale(&chart.constant(sign)));
    }

    #[test]
    fn structure_is_skew(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let chart = g.chart(3, 1, false);
        let hs = g.structure(&chart, 0.5, 0.5);
        let a = g.one_form(&chart, |g| g.poly(&chart, 1));
        let b = g.one_form(&chart, |g| g.poly(&chart, 1));
        let ab = pairing(&a, &hs.apply(&b).unwrap()).unwrap();
        let ba = pairing(&b, &hs.apply(&a).unwrap()).unwrap();
        prop_assert!((ab + ba).is_zero());
    }

    #[test]
    fn bracket_of_differentials(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let chart = g.chart(3, 1, false);
        let hs = g.structure(&chart, 1.0, 0.5);
        let (f, k) = (g.foliated(&chart, 2), g.foliated(&chart, 2));
        let lhs = omega1_bracket(&hs, &differential(&chart, &f), &differential(&chart, &k)).unwrap();
        let fk = poisson_bracket(&hs, &f, &k).unwrap();
        prop_assert_eq!(lhs, differential(&chart, &fk));
        prop_assert!((fk + poisson_bracket(&hs, &k, &f).unwrap()).is_zero());
    }

    #[test]
    fn classification_implications(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let flat = g.rng.gen_bool(0.5);
        let chart = g.chart(2, 1, flat);
        let hs = g.structure(&chart, 0.8, 0.3);
        let c = classify(&hs).unwrap();
        if c.strong.passed() {
            prop_assert!(c.hamiltonian.passed());
        }
        if c.tame.passed() {
            prop_assert!(c.strong.passed() && c.transversal.passed());
        }
        if c.strong.passed() && c.transversal.passed() {
            prop_assert!(c.tame.passed());
        }
    }

    #[test]
    fn cochain_dimensions(q in 1usize..=3, p in 0usize..=2, k in 0usize..=3, d in 0u32..=2) {
        let chart = Chart::new(
            (1..=q).map(|i| format!("x{i}")).collect(),
            (1..=p).map(|i| format!("y{i}")).collect(),
            vec![vec![Poly::zero(q + p); p]; q],
        ).unwrap();
        let hs = folham::hamiltonian::HamStructure::new(
            chart, vec![vec![Poly::zero(q + p); q]; q], vec![vec![Poly::zero(q + p); p]; q],
        ).unwrap();
        let complex = TruncatedComplex::new(hs, d).unwrap();
        let monomials = binomial(q + p + d as usize, d as usize);
        prop_assert_eq!(complex.dimension(k), binomial(q, k) * monomials);
        prop_assert_eq!(complex.basis(k).len(), complex.dimension(k));
    }

    #[test]
    fn spec_round_trip(seed in any::<u64>()) {
        let mut g = Gen::new(seed);
        let (q, p) = (g.rng.gen_range(1..=3), g.rng.gen_range(0..=2));
        let flat = g.rng.gen_bool(0.5);
        let chart = g.chart(q, p, flat);
        let structure = g.structure(&chart, 0.5, 0.5);
        let spec = Spec {
            name: Some(format!("random {seed}")),
            description: None,
            structure,
            points: vec![vec![Rational::new(1.into(), 2.into()); chart.n()]],
            test_functions: vec![g.poly(&chart, 2), chart.coord(0)],
            fundamental_form: None,
        };
        prop_assert_eq!(Spec::parse(&spec.to_json()).unwrap(), spec);
    }
}
