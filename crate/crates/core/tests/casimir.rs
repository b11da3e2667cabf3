use qosp::linalg::Dense;
use qosp::rep::{central_quadratic_search, CentralityKind, Classification};
use qosp::scalar::{parse_rational, rational, Rational};

fn lambda(report: &qosp::rep::CasimirReport) -> Vec<Vec<Rational>> {
    report
        .scalars
        .iter()
        .map(|row| row.iter().map(|v| parse_rational(v).unwrap()).collect())
        .collect()
}

#[test]
fn classical_commuting_values_are_squares_of_the_graded_ones() {
    // In undeformed osp(1,2) the quadratic Casimir is the square of the
    // graded-central element up to a constant, so ((2n+1)/4)^2 must lie in
    // the span of the commuting scalar sequences.
    let ns = [1, 2, 3, 4, 5];
    let r = central_quadratic_search(&ns, &rational(1, 1), CentralityKind::Commuting).unwrap();
    let mut rows = lambda(&r);
    let before = Dense::from_rows(rows.clone()).rank();
    rows.push(
        ns.iter()
            .map(|&n| rational((2 * n as i64 + 1).pow(2), 16))
            .collect(),
    );
    assert_eq!(Dense::from_rows(rows).rank(), before);
    assert_eq!(before, 2);
    assert_eq!(r.classification, Classification::Mismatch);
}

#[test]
fn deformed_families_are_trivial() {
    for q in [rational(2, 1), rational(3, 1), rational(1, 3)] {
        let commuting =
            central_quadratic_search(&[1, 2, 3], &q, CentralityKind::Commuting).unwrap();
        assert_eq!(commuting.representatives, ["1"], "q={q}");
        let graded = central_quadratic_search(&[1, 2, 3], &q, CentralityKind::Graded).unwrap();
        assert!(graded.representatives.is_empty(), "q={q}");
        assert_eq!(graded.classification, Classification::Mismatch);
        // each grade on its own still has a non-identity central element
        assert!(commuting
            .per_n
            .iter()
            .all(|g| g.nonidentity_element.is_some()));
    }
}

#[test]
fn single_grade_comparison_is_underdetermined() {
    let r = central_quadratic_search(&[2], &rational(2, 1), CentralityKind::Commuting).unwrap();
    assert!(!r.determined);
}
