use cbsemi::oracle::oracle_apery_with;
use cbsemi::structure::{vertex_escape, PolygonStructure};
use cbsemi::{
    apery_intersection, check_cm, check_gorenstein, cone_rays, enumerate, expected_apery, gorenstein_triangle,
    integer_in_interval, lattice_points_in, random_polygon, random_triangle, ray_body_interval, BodySemigroup,
    CheckOptions, ConvexBody, ConvexRegion, LatticeBox, LatticeRegion, LatticePoint, Point, RandomBounds, RaySide,
    Rational, Verdict,
};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;

fn polygon(seed: u64, n: usize) -> BodySemigroup {
    BodySemigroup::new(random_polygon(seed, RandomBounds::default(), n).unwrap()).unwrap()
}

fn rational() -> impl Strategy<Value = Rational> {
    (0i64..=24, 1i64..=4).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn point() -> impl Strategy<Value = Point> {
    (rational(), rational()).prop_map(|(x, y)| Point::new(x, y))
}

fn body() -> impl Strategy<Value = BodySemigroup> {
    prop_oneof![
        (any::<u64>(), 3usize..=5).prop_map(|(seed, n)| polygon(seed, n)),
        (2u64..=6).prop_map(|k| BodySemigroup::new(gorenstein_triangle(k).unwrap()).unwrap()),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closed_under_addition(s in body(), a in (0u64..30, 0u64..30), b in (0u64..30, 0u64..30)) {
        let (a, b) = (LatticePoint::new(a.0, a.1), LatticePoint::new(b.0, b.1));
        if s.is_member(&a) && s.is_member(&b) {
            prop_assert!(s.is_member(&(a + b)));
        }
    }

    #[test]
    fn membership_paths_agree(s in body()) {
        let bx = LatticeBox::new(24, 24);
        let members = enumerate(s.body(), bx);
        for p in bx.points() {
            let a = s.contains(&p);
            prop_assert_eq!(a, s.contains_via_interval(&p), "{}", p);
            prop_assert_eq!(a.is_some(), members.contains(&p), "{}", p);
            if let Some(w) = a {
                prop_assert!(p.is_origin() || s.body().contains_lattice_scaled(&p, w.k));
                prop_assert!((1..w.k).all(|k| !s.body().contains_lattice_scaled(&p, k)));
            }
        }
    }

    #[test]
    fn interval_least_integer(p in (1u64..40, 0u64..40), s in body()) {
        let p = LatticePoint::new(p.0, p.1);
        let iv = ray_body_interval(s.body(), &p.to_point());
        match integer_in_interval(&iv) {
            Some(k) => {
                let k = k.to_u64().unwrap();
                prop_assert!(k >= 1);
                prop_assert!(s.body().contains_lattice_scaled(&p, k));
                prop_assert!((1..k).all(|j| !s.body().contains_lattice_scaled(&p, j)));
            }
            None => prop_assert!((1..60).all(|j| !s.body().contains_lattice_scaled(&p, j))),
        }
    }

    #[test]
    fn scaling_representation_is_irrelevant(p in point(), q in point(), r in point(), m in 2i64..7) {
        let Ok(a) = ConvexBody::polygon(vec![p.clone(), q.clone(), r.clone()]) else { return Ok(()); };
        let scale = |pt: &Point| {
            let m = BigInt::from(m);
            Point::new(
                Rational::new_raw(pt.x.numer() * &m, pt.x.denom() * &m),
                Rational::new_raw(pt.y.numer() * &m, pt.y.denom() * &m),
            )
        };
        let b = ConvexBody::polygon(vec![scale(&p), scale(&q), scale(&r)]).unwrap();
        prop_assert_eq!(cone_rays(&a).ok(), cone_rays(&b).ok());
        for x in 0..12u64 {
            for y in 0..12u64 {
                let l = LatticePoint::new(x, y);
                prop_assert_eq!(a.contains_lattice_scaled(&l, 2), b.contains_lattice_scaled(&l, 2));
            }
        }
    }

    #[test]
    fn rays_bracket_the_body(s in body()) {
        let (t1, t2) = (s.tau(RaySide::Upper), s.tau(RaySide::Lower));
        prop_assert!(t2.cross(&t1) > 0);
        if let ConvexBody::Polygon(poly) = s.body() {
            for v in poly.vertices() {
                prop_assert!(!t1.cross_point(v).is_positive());
                prop_assert!(!t2.cross_point(v).is_negative());
            }
        }
    }

    #[test]
    fn lattice_points_match_double_loop(a in point(), b in point(), c in point()) {
        let region = ConvexRegion::closed_hull(&[a.clone(), b.clone(), c.clone()]);
        let Ok(found) = lattice_points_in(&LatticeRegion::new(region.clone())) else { return Ok(()); };
        let mut direct = Vec::new();
        for y in 0..=24u64 {
            for x in 0..=24u64 {
                let l = LatticePoint::new(x, y);
                if region.contains(&l.to_point()) {
                    direct.push(l);
                }
            }
        }
        let mut found = found;
        found.sort_by_key(|p| (p.y, p.x));
        direct.sort_by_key(|p| (p.y, p.x));
        prop_assert_eq!(found, direct);
    }

    #[test]
    fn verdicts_and_witnesses(s in body()) {
        let cm = check_cm(&s, CheckOptions::default()).unwrap();
        for g in &cm.witnesses.gaps {
            prop_assert!(s.in_cone(g) && !s.is_member(g));
            prop_assert!(s.is_member(&(*g + s.n1())) && s.is_member(&(*g + s.n2())));
        }
        prop_assert_eq!(cm.verdict == Verdict::No, !cm.witnesses.gaps.is_empty());
        let g = check_gorenstein(&s, CheckOptions::default()).unwrap();
        if g.verdict == Verdict::Yes {
            prop_assert_eq!(cm.verdict, Verdict::Yes);
        }
    }

    #[test]
    fn apery_invariants(s in body()) {
        let Ok(ap) = apery_intersection(&s, CheckOptions::default()) else { return Ok(()); };
        prop_assert!(!ap.maximals.is_empty());
        prop_assert!(ap.points.contains(&LatticePoint::new(0, 0)));
        for p in &ap.points {
            prop_assert!(s.is_member(p));
            for n in [s.n1(), s.n2()] {
                prop_assert!(!matches!(p.checked_sub(&n), Some(d) if s.is_member(&d)));
            }
        }
        for m in &ap.maximals {
            prop_assert!(ap.points.contains(m));
            prop_assert!(!ap.points.iter().any(|q| q != m && s.leq_s(m, q)));
        }
        let far = ap.points.iter().fold((0, 0), |acc, p| (acc.0.max(p.x), acc.1.max(p.y)));
        let bx = LatticeBox::new(far.0 + s.n1().x + s.n2().x, far.1 + s.n1().y + s.n2().y);
        let members = enumerate(s.body(), bx);
        let a1 = oracle_apery_with(&members, s.n1()).unwrap();
        let a2 = oracle_apery_with(&members, s.n2()).unwrap();
        let mut both: Vec<LatticePoint> = a1.into_iter().filter(|p| a2.contains(p)).collect();
        let mut ours = ap.points.clone();
        both.sort_by_key(|p| (p.y, p.x));
        ours.sort_by_key(|p| (p.y, p.x));
        prop_assert_eq!(ours, both);
    }

    #[test]
    fn escape_lines(s in (any::<u64>(), 3usize..=5).prop_map(|(seed, n)| polygon(seed, n))) {
        for side in RaySide::BOTH {
            if !s.contact(side).is_point() {
                continue;
            }
            let e = vertex_escape(&s, side).unwrap();
            prop_assert_eq!(&e.v, &e.meeting_point(e.j));
            prop_assert_eq!(e.j1, e.j + e.period);
            prop_assert_eq!(e.vertex.scale_int(e.period).to_lattice(), Some(s.n(side)));
            for h in e.j..e.j + 4 {
                let m = e.meeting_point(h);
                prop_assert!(e.nu.contains(&m));
                let along_far = &m - &e.vertex.scale_int(h);
                let along_near = &m - &e.vertex.scale_int(h + 1);
                prop_assert!(along_far.cross(&(&e.far - &e.vertex)).is_zero());
                prop_assert!(along_near.cross(&(&e.near - &e.vertex)).is_zero());
            }
        }
        if let Ok(st) = PolygonStructure::build(&s) {
            let q = st.apex.q.clone();
            prop_assert!(s.in_cone_point(&q) || st.both_segments());
        }
    }

    #[test]
    fn random_triangles_are_cm(seed in any::<u64>()) {
        let s = BodySemigroup::new(random_triangle(seed, RandomBounds::default()).unwrap()).unwrap();
        prop_assert_eq!(check_cm(&s, CheckOptions::default()).unwrap().verdict, Verdict::Yes);
    }
}

#[test]
fn family_law() {
    for k in 2..=10u64 {
        let s = BodySemigroup::new(gorenstein_triangle(k).unwrap()).unwrap();
        let g = check_gorenstein(&s, CheckOptions::default()).unwrap();
        assert_eq!(g.verdict, Verdict::Yes, "k = {k}");
        let mut ap = apery_intersection(&s, CheckOptions::default()).unwrap().points;
        let mut want = expected_apery(k).unwrap();
        ap.sort_by_key(|p| (p.y, p.x));
        want.sort_by_key(|p| (p.y, p.x));
        assert_eq!(ap, want, "k = {k}");
        assert_eq!(ap.len() as u64, 4 * k);
    }
}
