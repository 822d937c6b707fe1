mod support;

use billiard_polygons::arrangement::build_subdivision;
use billiard_polygons::gaps::{gap_census, three_gap_points};
use billiard_polygons::orbit::{fold_orbit, TruncationSpec};
use billiard_polygons::sweep::sample_alphas;
use billiard_polygons::Scalar;
use support::{brute_force, convergents, raster_faces, GapTracker};

fn compare(alpha: Scalar, n: u32) {
    let orbit = fold_orbit(&TruncationSpec::squares(alpha.clone(), n)).unwrap();
    let sub = build_subdivision(&orbit).unwrap();
    let segs: Vec<_> = orbit
        .segments
        .iter()
        .map(|s| (s.start.clone(), s.end.clone()))
        .collect();
    let oracle = brute_force(&segs);
    assert_eq!(sub.faces.len(), oracle.faces, "alpha = {alpha}, N = {n}");
    let mut areas: Vec<Scalar> = sub.faces.iter().map(|f| f.area.clone()).collect();
    areas.sort_by(Scalar::compare);
    assert_eq!(areas, oracle.areas, "alpha = {alpha}, N = {n}");
    // Euler for the oracle's own graph, outer face included.
    assert_eq!(
        oracle.vertices as i64 - oracle.edges as i64 + oracle.faces as i64 + 1,
        2
    );
}

#[test]
fn small_truncations_match_brute_force() {
    let mut alphas = vec![
        Scalar::sqrt_int(3) - Scalar::one(),
        Scalar::sqrt_int(10) / Scalar::int(7),
        Scalar::ratio(2, 7),
    ];
    alphas.extend(sample_alphas(3, 6));
    alphas.push(Scalar::sqrt_int(7) / Scalar::int(2));
    for alpha in alphas {
        for n in 1..=4 {
            compare(alpha.clone(), n);
        }
    }
}

#[test]
fn raster_sees_the_same_number_of_faces() {
    let alpha = Scalar::sqrt_int(3) - Scalar::one();
    let orbit = fold_orbit(&TruncationSpec::squares(alpha, 3)).unwrap();
    let segs: Vec<_> = orbit
        .segments
        .iter()
        .map(|s| (s.start.clone(), s.end.clone()))
        .collect();
    let oracle = brute_force(&segs);
    assert_eq!(raster_faces(&oracle.edge_f64, 800), oracle.faces);
}

#[test]
fn oracle_on_hand_made_cases() {
    let p = |x: i64, y: i64| {
        billiard_polygons::geometry::Point::new(Scalar::ratio(x, 8), Scalar::ratio(y, 8))
    };
    // Both diagonals: four triangles of area 1/16.
    let o = brute_force(&[(p(0, 0), p(4, 4)), (p(0, 4), p(4, 0))]);
    assert_eq!(o.faces, 4);
    assert!(o.areas.iter().all(|a| *a == Scalar::ratio(1, 16)));
    assert_eq!(raster_faces(&o.edge_f64, 200), 4);
    // No segments: the square itself.
    let o = brute_force(&[]);
    assert_eq!((o.faces, o.areas[0].clone()), (1, Scalar::ratio(1, 4)));
}

#[test]
fn convergents_of_known_values() {
    let c = convergents(&Scalar::sqrt_int(2), 5);
    assert_eq!(c, [(1, 1), (3, 2), (7, 5), (17, 12), (41, 29)]);
    assert_eq!(
        convergents(&Scalar::ratio(3, 5), 10),
        [(0, 1), (1, 1), (1, 2), (3, 5)]
    );
}

#[test]
fn gap_tracker_agrees_with_census() {
    let alpha = Scalar::sqrt_int(5) - Scalar::int(2);
    let mut t = GapTracker::new(Scalar::zero(), Scalar::one());
    let mut p = Scalar::zero();
    for n in 1..=60u32 {
        p = (&p + &alpha).frac();
        t.insert(p.clone());
        assert_eq!(
            t.lengths(),
            gap_census(&three_gap_points(&alpha, n).unwrap()).lengths,
            "n = {n}"
        );
    }
}
