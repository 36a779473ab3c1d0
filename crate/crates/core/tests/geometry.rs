use hendecagon_core::geom::{
    distance, incident, intersect, line_through, reflect_line, reflect_point, Line, Point,
};
use hendecagon_core::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..=60, 1i64..=12).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn exact_point() -> impl Strategy<Value = Point<Rational>> {
    (rational(), rational()).prop_map(|(x, y)| Point::new(x, y))
}

fn exact_line() -> impl Strategy<Value = Line<Rational>> {
    (exact_point(), exact_point())
        .prop_filter("distinct points", |(p, q)| p != q)
        .prop_map(|(p, q)| line_through(&p, &q).unwrap())
}

fn float_point() -> impl Strategy<Value = Point<f64>> {
    (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(x, y)| Point::new(x, y))
}

fn float_line() -> impl Strategy<Value = Line<f64>> {
    (float_point(), float_point())
        .prop_filter("well separated", |(p, q)| p.distance_squared(q) > 1e-2)
        .prop_map(|(p, q)| line_through(&p, &q).unwrap())
}

proptest! {
    #[test]
    fn exact_reflection_is_an_involution(p in exact_point(), axis in exact_line()) {
        prop_assert_eq!(reflect_point(&reflect_point(&p, &axis), &axis), p);
    }

    #[test]
    fn exact_reflection_is_an_isometry(p in exact_point(), q in exact_point(), axis in exact_line()) {
        let (rp, rq) = (reflect_point(&p, &axis), reflect_point(&q, &axis));
        prop_assert_eq!(rp.distance_squared(&rq), p.distance_squared(&q));
    }

    #[test]
    fn exact_reflection_fixes_the_axis(axis in exact_line(), l in exact_line()) {
        if let Ok(x) = intersect(&axis, &l) {
            prop_assert_eq!(reflect_point(&x, &axis), x.clone());
            prop_assert!(incident(&x, &reflect_line(&l, &axis), &Rational::from_integer(0.into())));
        }
        prop_assert_eq!(reflect_line(&reflect_line(&l, &axis), &axis), l);
    }

    #[test]
    fn float_reflection_is_an_involution(p in float_point(), axis in float_line()) {
        let back = reflect_point(&reflect_point(&p, &axis), &axis);
        prop_assert!(back.distance_squared(&p).sqrt() <= 1e-12, "drift {}", back.distance_squared(&p).sqrt());
    }

    #[test]
    fn float_reflection_is_an_isometry(p in float_point(), q in float_point(), axis in float_line()) {
        let (rp, rq) = (reflect_point(&p, &axis), reflect_point(&q, &axis));
        let before = p.distance_squared(&q).sqrt();
        let after = rp.distance_squared(&rq).sqrt();
        prop_assert!((before - after).abs() <= 1e-12, "{} vs {}", before, after);
    }

    #[test]
    fn float_reflection_preserves_distance_to_axis(p in float_point(), axis in float_line()) {
        let d = distance(&p, &axis).unwrap();
        let rd = distance(&reflect_point(&p, &axis), &axis).unwrap();
        prop_assert!((d - rd).abs() <= 1e-12);
    }
}

#[test]
fn exact_and_float_agree() {
    let p = Point::new(
        Rational::new((-5).into(), 2.into()),
        Rational::from_integer((-3).into()),
    );
    let axis = line_through(
        &Point::new(
            Rational::from_integer(0.into()),
            Rational::from_integer(1.into()),
        ),
        &Point::new(
            Rational::from_integer(3.into()),
            Rational::from_integer((-1).into()),
        ),
    )
    .unwrap();
    let exact = reflect_point(&p, &axis).to_f64();
    let float = reflect_point(&p.to_f64(), &axis.to_f64());
    assert!(exact.distance_squared(&float).sqrt() < 1e-14);
}
