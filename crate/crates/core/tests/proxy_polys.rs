//! The no-root constraints ship with user-declared group models; these tests
//! run the verification route for the two bundled defaults, checking each
//! polynomial's empirical factor-type distribution against its claimed model.

use primescan::constraints::{build_subbase_g, dedekind_compare, fip_report};
use primescan::groups::GroupModel;
use primescan::polyarith::IntPoly;
use primescan::primes::sieve;
use primescan::Verdict;

#[test]
fn cubic_matches_s3() {
    let table = sieve(100_000).unwrap();
    let f = IntPoly::from_i64(&[-1, -1, 0, 1]);
    let report = dedekind_compare(&f, &GroupModel::Symmetric(3), 100_000, &table).unwrap();
    assert!(report.linf < 0.02, "linf = {}", report.linf);
    // every observed cycle type is one the model predicts
    assert_eq!(report.rows.len(), 3);
}

#[test]
fn quintic_matches_a5() {
    // x^5 + 20x + 16: discriminant 32000^2, factor statistics of A_5
    let table = sieve(100_000).unwrap();
    let f = IntPoly::from_i64(&[16, 20, 0, 0, 0, 1]);
    let disc = primescan::polyarith::discriminant(&f).unwrap();
    assert_eq!(disc, num_bigint::BigInt::from(32_000i64 * 32_000));
    let report = dedekind_compare(&f, &GroupModel::Alternating(5), 100_000, &table).unwrap();
    assert!(report.linf < 0.02, "linf = {}", report.linf);
    // odd cycle types would betray a group bigger than A_5
    assert_eq!(report.rows.len(), 4);
    assert!(report.rows.iter().all(|r| r.observed > 0));
}

#[test]
fn subbase_with_quintic_keeps_growing() {
    let table = sieve(100_000).unwrap();
    let polys = vec![(
        IntPoly::from_i64(&[16, 20, 0, 0, 0, 1]),
        GroupModel::Alternating(5),
    )];
    let specs = build_subbase_g(8, &[5], &polys).unwrap();
    let fip = fip_report(&specs, &[1_000, 10_000, 100_000], &table).unwrap();
    assert_eq!(fip.verdict, Verdict::Pass, "counts: {:?}", fip.report.checkpoints);
}
