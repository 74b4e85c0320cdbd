mod common;

use common::two_pass;
use jssp_bio::stats::{relative_error, summarize};
use proptest::prelude::*;

proptest! {
    #[test]
    fn summarize_matches_two_pass(values in prop::collection::vec(-1e4f64..1e4, 1..200)) {
        let s = summarize(&values).unwrap();
        let (mean, var) = two_pass(&values);
        prop_assert!((s.mean - mean).abs() <= 1e-12 * mean.abs().max(1.0));
        prop_assert!((s.variance - var).abs() <= 1e-12 * var.abs().max(1.0) * 1e3);
        prop_assert!((s.stddev - var.sqrt()).abs() <= 1e-9 * var.sqrt().max(1.0));
    }

    #[test]
    fn relative_error_is_increasing(bks in 1i64..5000, a in 0i64..5000, b in 0i64..5000) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(lo != hi);
        prop_assert!(relative_error(bks + lo, bks) < relative_error(bks + hi, bks));
        prop_assert_eq!(relative_error(bks, bks), 0.0);
    }
}
