mod common;

#[test]
fn snf_recomposition() {
    common::snf_suite(200).unwrap();
}

#[test]
fn coboundary_squares_to_zero() {
    common::dd_suite(100).unwrap();
}

#[test]
fn connecting_map_ignores_section() {
    common::section_suite(20).unwrap();
}

#[test]
fn inflation_restriction_degree_one() {
    let checked = common::inflation_restriction_suite().unwrap();
    assert_eq!(checked, 10 * 3 * 3);
}
