use freecurve::arrangement::{search_deformation, tjurina_drop_check};
use freecurve::report::{analyze_arrangement, deformation_report};
use freecurve::{catalog, Error, LinearForm, MdrOptions, ProjectivePoint, Scalar, WeakCombinatorics};

#[test]
fn deleting_any_dual_hesse_line_gives_mac_lane_combinatorics() {
    let hesse = catalog("DualHesse9").unwrap();
    for i in 0..9 {
        let arr = hesse.delete_line(i).unwrap();
        assert_eq!(arr.weak_combinatorics(), WeakCombinatorics::nodes_and_triples(8, 4, 8), "line {i}");
        let r = analyze_arrangement(&arr, "minus one", MdrOptions::default()).unwrap();
        assert!(r.verdict.is_nearly_free(), "line {i}: {}", r.verdict);
        assert_eq!((r.mdr, r.eta, r.tau), (Some(4), Some(37), 36));
    }
}

#[test]
fn deleting_down_to_one_line_skips_the_verdict() {
    let two = catalog("A4_generic").unwrap().delete_line(0).unwrap().delete_line(0).unwrap();
    assert!(two.singular_points().len() == 1);
    let one = two.delete_line(1).unwrap();
    assert!(one.singular_points().is_empty());
    let r = analyze_arrangement(&one, "one", MdrOptions::default()).unwrap();
    assert_eq!(r.mdr, None);
    assert!(!r.notes.is_empty());
    assert!(matches!(catalog("A4_generic").unwrap().delete_line(4), Err(Error::IndexOutOfRange { index: 4, len: 4 })));
}

#[test]
fn moving_a_b7_line_through_a_node_is_rejected() {
    // x - y - 2(x - z) = -(x + y - 2z) passes through the node (1:-1:0).
    let b7 = catalog("B7_free").unwrap();
    let p = ProjectivePoint::from_ints(-1, -1, 1).unwrap();
    let dir = LinearForm::parse("x-z").unwrap();
    let bad = b7.deform_triple_point(&p, 5, &dir, &Scalar::from_int(-2));
    assert!(matches!(bad, Err(Error::NonGenericDeformation(_))), "{bad:?}");
    let node = ProjectivePoint::from_ints(1, -1, 0).unwrap();
    assert_eq!(b7.lines_through(&node).len(), 2);
}

#[test]
fn free_catalog_entries_deform_to_nearly_free_ones() {
    for name in ["A4_free", "A5_free", "A1_6", "B7_free"] {
        let arr = catalog(name).unwrap();
        let triples: Vec<_> = arr.singular_points().into_iter().filter(|p| p.multiplicity == 3).collect();
        assert!(!triples.is_empty());
        let sp = &triples[0];
        let line = sp.incident_lines[0];
        let found = search_deformation(&arr, &sp.point, line).unwrap();
        assert!(tjurina_drop_check(&arr, &found.result));
        let rep =
            deformation_report(&arr, &found.result, &sp.point, line, &found.eps, name, MdrOptions::default()).unwrap();
        assert!(rep.tau_drop);
        assert!(rep.before.verdict.is_free());
        if rep.eta_preserved && 2 * rep.after.mdr.unwrap() <= rep.after.d {
            assert!(rep.after.verdict.is_nearly_free(), "{name}: {}", rep.after.verdict);
            assert!(rep.hypotheses_hold);
        }
    }
}

#[test]
fn dual_hesse_triple_points_cannot_be_split() {
    let hesse = catalog("DualHesse9").unwrap();
    let sp = hesse.singular_points().into_iter().next().unwrap();
    for &i in &sp.incident_lines {
        assert!(matches!(search_deformation(&hesse, &sp.point, i), Err(Error::NonGenericDeformation(_))));
    }
}
