use gorenstein::monomial::default_vars;
use gorenstein::{parse_poly, Field, GradedIdeal};

fn datum(ci: &str, f: &str) -> (usize, usize, usize) {
    let vars = default_vars(3);
    let ci = GradedIdeal::parse(ci, &vars, Field::Rational).unwrap();
    let f = parse_poly(f, &vars, Field::Rational).unwrap();
    let colon = ci.colon_form(&f, None).unwrap();
    assert!(colon.complete);
    let report = colon.ideal.socle_report().unwrap();
    assert!(report.is_gorenstein);
    let d = colon.ideal.virtual_datum().unwrap();
    assert_eq!(report.socle_degree, 2 * d.d + d.d_prime - 3);
    (d.d, d.r, d.d_prime)
}

const QUADRICS_SQUARED: &str = "(x^2 - y*z)^2, (y^2 - x*z)^2, (z^2 + x*y)^2";

#[test]
fn colon_of_squared_quadrics() {
    assert_eq!(datum(QUADRICS_SQUARED, "x^2 + y^2 + z^2"), (4, 5, 2));
    assert_eq!(datum(QUADRICS_SQUARED, "x^3 + y^3 + z^3"), (4, 9, 1));
}

#[test]
fn sum_power_family_has_skew_degree_two() {
    for d in [2usize, 4, 6] {
        let m = d + 1;
        let ci = format!("x^{m}, y^{m}, z^{m}");
        assert_eq!(datum(&ci, &format!("(x + y + z)^{m}")), (d, d + 1, 2));
    }
}

#[test]
fn other_sextic_and_quartic_choices() {
    assert_eq!(datum("x^6, y^6, z^6", "(x + y + z)^4"), (6, 7, 2));
    assert_eq!(datum("x^7, y^7, z^7", "(x^2*y^2 + x^2*z^2 + y^2*z^2)^3"), (4, 9, 1));
}
